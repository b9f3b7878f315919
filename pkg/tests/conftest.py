"""Pytest configuration and fixtures."""

import json
import random
from fractions import Fraction

import pytest
from click.testing import CliRunner

from stringycli.arith import EPoly
from stringycli.config import Config
from stringycli.count import blowup_strata
from stringycli.scenario import load_scenario
from stringycli.strata import Divisor, Flavor, ResolutionData, StratumTable


def w(*coeffs: int, den: int = 1) -> EPoly:
    """sum_k coeffs[k] (uv)^(k/den)."""
    return EPoly.from_w(coeffs, den)


@pytest.fixture
def rng():
    """Seeded random source for property tests."""
    return random.Random(20240617)


@pytest.fixture
def runner():
    """Click test runner."""
    return CliRunner()


@pytest.fixture
def corpus_scenario():
    """Load a bundled scenario by name."""

    def load(name: str):
        return load_scenario(Config.corpus_dir / f"{name}.json")

    return load


@pytest.fixture
def blowup_a2():
    """Bl_0(A^2) -> A^2 with its stratum counts."""
    return blowup_strata(2)


@pytest.fixture
def a1_crepant():
    """Minimal resolution of the A_1 cone: one (-2)-curve, discrepancy 0."""
    return ResolutionData(
        name="crepant",
        dimension=2,
        divisors=(Divisor(label="E", discrepancy=0),),
        strata=StratumTable(
            flavor=Flavor.OPEN, width=1, entries={0: w(-1, 0, 1), 1: w(1, 1)}
        ),
    )


@pytest.fixture
def third_quotient():
    """Minimal resolution of 1/3(1,1): one (-3)-curve, discrepancy -1/3."""
    return ResolutionData(
        name="minimal",
        dimension=2,
        divisors=(Divisor(label="E", discrepancy=Fraction(-1, 3)),),
        strata=StratumTable(
            flavor=Flavor.OPEN, width=1, entries={0: w(-1, 0, 1), 1: w(1, 1)}
        ),
    )


@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario document to a temporary file."""

    def write(doc: dict | str, name: str = "scenario.json"):
        path = tmp_path / name
        text = doc if isinstance(doc, str) else json.dumps(doc, indent=2)
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def blowup_doc():
    """A minimal two-resolution scenario document for A^2."""
    return {
        "name": "tmp_blowup",
        "dimension": 2,
        "resolutions": [
            {
                "name": "identity",
                "divisors": [],
                "strata": {"flavor": "open", "entries": [{"subset": [], "E": [[2, 2, 1]]}]},
            },
            {
                "name": "blowup",
                "divisors": [{"label": "E", "discrepancy": "1"}],
                "strata": {
                    "flavor": "open",
                    "entries": [
                        {"subset": [], "E": [[0, 0, -1], [2, 2, 1]]},
                        {"subset": ["E"], "E": [[0, 0, 1], [1, 1, 1]]},
                    ],
                },
            },
        ],
    }
