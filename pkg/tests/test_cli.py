"""Basic CLI tests."""

import json

from stringycli.cli import cli


def test_cli_version(runner):
    """Test --version flag."""
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "stringy" in result.output
    assert "0.1.0" in result.output


def test_cli_help(runner):
    """Test --help flag."""
    result = runner.invoke(cli, ["-h"])
    assert result.exit_code == 0
    assert "stringy" in result.output.lower()
    for name in ["compute", "verify", "hodge", "integrate", "count", "corpus"]:
        assert name in result.output


def test_verify_help(runner):
    result = runner.invoke(cli, ["verify", "--help"])
    assert result.exit_code == 0
    assert "--root" in result.output


def test_compute_table(runner):
    result = runner.invoke(cli, ["compute", "--scenario", "blowup_a2"])
    assert result.exit_code == 0
    assert "all checks agree" in result.output


def test_compute_json(runner):
    result = runner.invoke(cli, ["compute", "-s", "third_quotient", "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["mode"] == "compute"
    assert data["resolutions"][0]["polynomiality"] == "granularity 3 only"


def test_compute_several_scenarios(runner):
    result = runner.invoke(cli, ["compute", "-s", "blowup_a2", "-s", "a1_cone", "--format", "json"])
    assert result.exit_code == 0
    assert [r["scenario"] for r in json.loads(result.output)] == ["blowup_a2", "a1_cone"]


def test_verify_agrees(runner):
    result = runner.invoke(
        cli, ["verify", "--scenario", "blowup_a2", "--q", "2,3,5,7", "--format", "json"]
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["all_agree"]
    assert [row["n_st"] for row in data["resolutions"][1]["points"]] == ["4", "9", "25", "49"]


def test_verify_with_roots(runner):
    result = runner.invoke(
        cli, ["verify", "-s", "third_quotient", "--q", "8,27", "--root", "2,3", "--format", "json"]
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["resolutions"][0]["points"][0]["n_st"] == "84"


def test_verify_missing_root(runner):
    result = runner.invoke(cli, ["verify", "-s", "third_quotient", "--q", "2"])
    assert result.exit_code == 2
    assert "root" in result.output


def test_verify_root_count_mismatch(runner):
    result = runner.invoke(cli, ["verify", "-s", "third_quotient", "--q", "8,27", "--root", "2"])
    assert result.exit_code == 2


def test_verify_needs_scenario(runner):
    result = runner.invoke(cli, ["verify"])
    assert result.exit_code == 2


def test_verify_disagreement(runner, write_scenario, blowup_doc):
    blowup_doc["resolutions"][1]["divisors"][0]["discrepancy"] = "2"
    path = write_scenario(blowup_doc)
    result = runner.invoke(cli, ["verify", "-s", str(path), "--q", "2,3"])
    assert result.exit_code == 1
    assert "disagreement found" in result.output


def test_verify_invalid_scenario(runner, write_scenario, blowup_doc):
    blowup_doc["resolutions"][1]["divisors"][0]["discrepancy"] = "-3/2"
    result = runner.invoke(cli, ["verify", "-s", str(write_scenario(blowup_doc))])
    assert result.exit_code == 2
    assert "log-terminal" in result.output


def test_verify_corpus_to_file(runner, tmp_path):
    out = tmp_path / "corpus.json"
    result = runner.invoke(cli, ["verify", "--corpus", "--output", str(out)])
    assert result.exit_code == 0
    reports = json.loads(out.read_text(encoding="utf-8"))
    assert {r["scenario"] for r in reports} >= {"blowup_a2", "third_quotient", "minimal_pair"}
    assert all(r["all_agree"] for r in reports)


def test_hodge(runner):
    result = runner.invoke(cli, ["hodge", "-s", "a1_cone", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["crepant"] == [{"i": 1, "j": 1, "h": 1}, {"i": 2, "j": 2, "h": 1}]


def test_hodge_fractional_has_no_table(runner):
    result = runner.invoke(cli, ["hodge", "-s", "third_quotient", "--json"])
    assert result.exit_code == 0
    assert json.loads(result.output) == {"minimal": None, "blowup_on_E": None}


def test_corpus_listing(runner):
    result = runner.invoke(cli, ["corpus", "--json"])
    assert result.exit_code == 0
    names = {row["name"] for row in json.loads(result.output)}
    assert names == {
        "a1_cone",
        "blowup_a2",
        "blowup_a3",
        "minimal_pair",
        "smooth_identity",
        "third_quotient",
    }


def test_integrate_json(runner):
    result = runner.invoke(
        cli, ["integrate", "--exp=-1/2,1", "--q", "9", "--root", "3", "--oracle", "--json"]
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["value"] == "2/405"
    assert data["den"] == 2
    assert data["oracle"]["brackets"]


def test_integrate_finds_integral_root(runner):
    result = runner.invoke(cli, ["integrate", "--exp=-1/2,1", "--q", "9", "--json"])
    assert result.exit_code == 0
    assert json.loads(result.output)["root"] == "3"


def test_integrate_over_r(runner):
    result = runner.invoke(cli, ["integrate", "--exp", "1", "--q", "5", "--domain", "R", "--json"])
    assert result.exit_code == 0
    assert json.loads(result.output)["value"] == "5/6"


def test_integrate_divergent(runner):
    result = runner.invoke(cli, ["integrate", "--exp=1,-1", "--q", "3"])
    assert result.exit_code == 1
    assert "diverges" in result.output


def test_integrate_missing_root(runner):
    result = runner.invoke(cli, ["integrate", "--exp=1/2", "--q", "2"])
    assert result.exit_code == 2


def test_integrate_oracle_needs_m(runner):
    result = runner.invoke(cli, ["integrate", "--exp", "1", "--q", "5", "--domain", "R", "--oracle"])
    assert result.exit_code == 2


def test_count_brute(runner):
    result = runner.invoke(
        cli, ["count", "--scheme", "blowup_origin_affine(2)", "--q", "2,3", "--brute", "--json"]
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["counts"] == [
        {"q": 2, "count": 6, "brute": 6},
        {"q": 3, "count": 12, "brute": 12},
    ]
    assert data["E"] == "(uv) + (uv)^2"


def test_count_catalog_name(runner):
    result = runner.invoke(cli, ["count", "--scheme", "p1_times_p1", "--q", "3"])
    assert result.exit_code == 0
    assert "16" in result.output


def test_count_bad_scheme(runner):
    result = runner.invoke(cli, ["count", "--scheme", "sphere(2)", "--q", "3"])
    assert result.exit_code == 2


def test_count_brute_refuses_large_field(runner):
    result = runner.invoke(cli, ["count", "--scheme", "affine(1)", "--q", "17", "--brute"])
    assert result.exit_code == 2


def test_count_catalog_listing(runner):
    result = runner.invoke(cli, ["count", "--catalog", "--json"])
    assert result.exit_code == 0
    assert json.loads(result.output)["projective_line"] == "q + 1"
