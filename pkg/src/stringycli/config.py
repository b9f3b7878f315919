"""Configuration for stringycli."""

from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

# Load .env file if it exists
dotenv_path = Path.cwd() / ".env"
if dotenv_path.exists():
    load_dotenv(dotenv_path)


class Settings(BaseModel):
    """Effective settings after environment overrides."""

    default_qs: list[int] = Field(default_factory=lambda: [2, 3, 5, 7])
    oracle_cutoff: int = Field(default=64, ge=1)
    corpus_dir: Path
    brute_budget: int = Field(default=2_000_000, ge=1)

    @field_validator("default_qs", mode="before")
    @classmethod
    def split_list(cls, value: object) -> object:
        if isinstance(value, str):
            return [int(part) for part in value.split(",") if part.strip()]
        return value


class Config:
    """Configuration manager."""

    package_dir: Path = Path(__file__).resolve().parent
    corpus_dir: Path = package_dir / "corpus"

    @classmethod
    def settings(cls) -> Settings:
        """Read settings from the environment (STRINGY_* variables)."""
        values: dict[str, object] = {
            "corpus_dir": os.getenv("STRINGY_CORPUS") or cls.corpus_dir,
        }
        if qs := os.getenv("STRINGY_QS"):
            values["default_qs"] = qs
        if cutoff := os.getenv("STRINGY_CUTOFF"):
            values["oracle_cutoff"] = cutoff
        if budget := os.getenv("STRINGY_BRUTE_BUDGET"):
            values["brute_budget"] = budget
        return Settings(**values)

    @classmethod
    def corpus_files(cls) -> list[Path]:
        """Bundled (or configured) scenario files, sorted by name."""
        return sorted(cls.settings().corpus_dir.glob("*.json"))

    @classmethod
    def resolve_scenario(cls, name: str | Path) -> Path:
        """A local path, or a bare name looked up in the corpus directory."""
        path = Path(name)
        if path.exists():
            return path
        candidate = cls.settings().corpus_dir / path.name
        if candidate.exists():
            return candidate
        if not path.suffix:
            candidate = candidate.with_suffix(".json")
            if candidate.exists():
                return candidate
        return path
