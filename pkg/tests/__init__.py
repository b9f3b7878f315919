"""Tests for stringycli."""
