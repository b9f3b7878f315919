"""stringycli - exact stringy invariants of log-terminal singularities."""

__version__ = "0.1.0"
