"""Command-line layer: envelopes, exit codes, chaining, determinism."""

import io
import json
import sys

import pytest

from carpetdim.cli import load_config, parse_columns, parse_gamma, run

GL3_CONFIG = {"maps": [
    {"r1": [1, 2], "r2": [1, 4], "d1": 0, "d2": 0},
    {"r1": [1, 2], "r2": [1, 4], "d1": 0, "d2": [1, 2]},
    {"r1": [1, 2], "r2": [1, 4], "d1": [1, 2], "d2": 0},
]}
SQUARE4_CONFIG = {"maps": [
    {"r1": [1, 3], "r2": [1, 3], "d1": 0, "d2": 0},
    {"r1": [1, 3], "r2": [1, 3], "d1": [2, 3], "d2": 0},
    {"r1": [1, 3], "r2": [1, 3], "d1": 0, "d2": [2, 3]},
    {"r1": [1, 3], "r2": [1, 3], "d1": [2, 3], "d2": [2, 3]},
]}

ENVELOPE_KEYS = {"command", "input_digest", "results", "diagnostics",
                 "warnings"}


def invoke(capsys, monkeypatch, argv, stdin=None):
    """Run the CLI in-process; returns (exit code, parsed stdout, stderr)."""
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    captured = capsys.readouterr()
    parsed = json.loads(captured.out) if captured.out else None
    return code, parsed, captured.err


def config_file(tmp_path, config, name="system.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config))
    return str(path)


def test_parse_gamma_forms():
    word = parse_gamma(":(0)")
    assert word.preperiod == () and word.period == (0,)
    word = parse_gamma("2,1:(0,3)")
    assert word.preperiod == (2, 1) and word.period == (0, 3)
    word = parse_gamma(" 10 : ( 4 , 5 ) ")
    assert word.preperiod == (10,) and word.period == (4, 5)


@pytest.mark.parametrize("bad", ["(0)", ":()", "a:(0)", "1;(0)", ":", ""])
def test_parse_gamma_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_gamma(bad)


def test_load_config_accepts_bare_and_envelope():
    assert load_config(json.dumps(GL3_CONFIG)) == GL3_CONFIG
    envelope = {"command": "example-baranski", "results":
                {"system": GL3_CONFIG}}
    assert load_config(json.dumps(envelope)) == GL3_CONFIG


def test_parse_columns_rational_and_float_entries():
    seq = parse_columns(json.dumps(
        {"preperiod": [[0.5]], "period": [[[1, 4], 0.25], [[1, 4]]]}))
    assert seq.preperiod == ((0.5,),)
    assert seq.period == ((0.25, 0.25), (0.25,))


def test_validate_reports_classification(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    code, envelope, _ = invoke(capsys, monkeypatch,
                               ["--input", path, "validate"])
    assert code == 0
    assert set(envelope) == ENVELOPE_KEYS
    results = envelope["results"]
    assert results["klass"] == "GatzourasLalley"
    assert results["map_count"] == 3
    assert results["columns"] == 2 and results["rows"] == 2
    assert results["eta1_ssc"] is False and results["eta2_ssc"] is True
    assert results["exact"] is True
    assert envelope["diagnostics"]["seed"] == 0


def test_dims_gl_results(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    code, envelope, _ = invoke(capsys, monkeypatch,
                               ["--input", path, "dims"])
    assert code == 0
    results = envelope["results"]
    assert results["dimH"] == pytest.approx(1.271553303163612, abs=1e-9)
    assert results["dimB"] == pytest.approx(1.292481250360578, abs=1e-9)
    assert results["dimA"] == pytest.approx(1.5, abs=1e-9)
    assert results["dimL"] == pytest.approx(1.0, abs=1e-9)
    assert len(results["hausdorff_argmax"]) == 3


def test_example_pipeline_reduction_dimh(capsys, monkeypatch):
    code, made, _ = invoke(capsys, monkeypatch,
                           ["example-baranski", "--delta", "0"])
    assert code == 0
    assert made["results"]["delta"] == "0"
    # widths 1/3 x4 and 1/6 x8, heights 1/4, all exact rationals
    assert made["results"]["system"]["maps"][0]["r1"] == [1, 3]

    code, envelope, _ = invoke(capsys, monkeypatch, ["dims"],
                               stdin=json.dumps(made))
    assert code == 0
    results = envelope["results"]
    assert results["dimH"] == pytest.approx(1.722629596943400, abs=1e-6)
    reduction = results["reduction"]
    assert reduction["sup_D1"] == pytest.approx(0.489536, abs=1e-4)
    assert reduction["sup_D2"] == pytest.approx(0.529533, abs=1e-4)
    assert reduction["dimH"] == pytest.approx(0.529533, abs=1e-4)
    assert reduction["p0"] < reduction["argmax_D2"] < 1.0


def test_dims_byte_identical_between_runs(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    run(["--input", path, "dims"])
    first = capsys.readouterr().out
    run(["--input", path, "dims"])
    second = capsys.readouterr().out
    assert first == second


def test_pointwise_cli_gl(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    code, envelope, _ = invoke(
        capsys, monkeypatch,
        ["--input", path, "pointwise", "--gamma", ":(0)"])
    assert code == 0
    results = envelope["results"]
    assert results["pointwise_assouad"] == pytest.approx(1.5, abs=1e-9)
    assert results["axis"] == 1
    assert results["omega_class"] == "Omega1"

    code, envelope, _ = invoke(
        capsys, monkeypatch,
        ["--input", path, "pointwise", "--gamma", ":(2)", "--axis", "2"])
    assert code == 0
    results = envelope["results"]
    assert results["tangent_dim"] == pytest.approx(1.0, abs=1e-9)
    assert results["pointwise_assouad"] == pytest.approx(1.292481250360578,
                                                         abs=1e-6)
    assert results["requested_axis"]["axis"] == 2


def test_levelset_cli(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    code, envelope, _ = invoke(
        capsys, monkeypatch, ["--input", path, "levelset", "--alpha", "1.4"])
    assert code == 0
    assert envelope["results"]["dim"] == pytest.approx(1.271553303163612,
                                                       abs=1e-9)
    assert envelope["results"]["full_measure"] is False

    code, envelope, _ = invoke(
        capsys, monkeypatch, ["--input", path, "levelset", "--alpha", "1.5"])
    assert envelope["results"]["full_measure"] is True

    code, envelope, _ = invoke(
        capsys, monkeypatch, ["--input", path, "levelset", "--alpha", "0.9"])
    assert code == 0
    assert envelope["results"]["dim"] is None


def test_fiber_cli(tmp_path, capsys, monkeypatch):
    path = tmp_path / "cols.json"
    path.write_text(json.dumps(
        {"preperiod": [[0.5]], "period": [[[1, 4], [1, 4]], [[1, 4]]]}))
    code, envelope, _ = invoke(capsys, monkeypatch,
                               ["fiber", "--columns", str(path)])
    assert code == 0
    assert envelope["results"]["assouad"] == pytest.approx(0.25, abs=1e-12)
    sups = {entry["m"]: entry["sup"]
            for entry in envelope["results"]["window_sups"]}
    assert sups[2] >= sups[32] >= envelope["results"]["assouad"] - 1e-12


def test_boxcount_cli_writes_csv(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    out = tmp_path / "counts.csv"
    code, envelope, _ = invoke(
        capsys, monkeypatch,
        ["--input", path, "boxcount", "--scales", "4,5,6", "--out",
         str(out)])
    assert code == 0
    counts = envelope["results"]["counts"]
    assert [row["scale"] for row in counts] == [2.0 ** -4, 2.0 ** -5,
                                                2.0 ** -6]
    assert all(row["count"] > 0 for row in counts)
    assert 1.0 < envelope["results"]["fit_slope"] < 1.6
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "scale,count"
    assert len(lines) == 4


def test_render_cli_depth_zero_unit_square(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    out = tmp_path / "cover.svg"
    code, envelope, _ = invoke(
        capsys, monkeypatch,
        ["--input", path, "render", "--depth", "0", "--out", str(out)])
    assert code == 0
    assert envelope["results"]["rectangles"] == 1
    svg = out.read_text()
    assert svg.count("<rect") == 1
    assert 'width="1.0000" height="1.0000"' in svg


def test_estimate_cli(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    code, envelope, _ = invoke(capsys, monkeypatch,
                               ["--input", path, "estimate"])
    assert code == 0
    results = envelope["results"]
    low, high = results["band"]
    assert low <= results["dimB_estimate"] <= high
    assert results["dimB_estimate"] == pytest.approx(1.292481250360578,
                                                     abs=0.05)


def test_exit_code_validation_failure(capsys, monkeypatch):
    code, envelope, err = invoke(capsys, monkeypatch, ["dims"],
                                 stdin="not json")
    assert code == 2
    assert envelope["results"] == {}
    assert envelope["diagnostics"]["error"] == "InvalidSystem"
    assert err != ""


def test_exit_code_bad_gamma(tmp_path, capsys, monkeypatch):
    path = config_file(tmp_path, GL3_CONFIG)
    code, _, err = invoke(
        capsys, monkeypatch,
        ["--input", path, "pointwise", "--gamma", "oops"])
    assert code == 2 and "gamma" in err

    code, _, err = invoke(
        capsys, monkeypatch,
        ["--input", path, "pointwise", "--gamma", ":(9)"])
    assert code == 2


def test_exit_code_unsupported(tmp_path, capsys, monkeypatch):
    # level sets only have a closed form in the wider-than-tall class
    path = config_file(tmp_path, SQUARE4_CONFIG, "square.json")
    code, envelope, _ = invoke(
        capsys, monkeypatch, ["--input", path, "levelset", "--alpha", "1.0"])
    assert code == 3
    assert envelope["diagnostics"]["error"] == "WrongClass"

    # every word of the square system contracts equally in both directions
    code, envelope, _ = invoke(
        capsys, monkeypatch,
        ["--input", path, "pointwise", "--gamma", ":(0)"])
    assert code == 3
    assert envelope["diagnostics"]["error"] == "Unsupported"


def test_exit_code_range_failures(capsys, monkeypatch):
    code, _, _ = invoke(capsys, monkeypatch,
                        ["example-baranski", "--delta", "0.2"])
    assert code == 2
    code, _, _ = invoke(capsys, monkeypatch,
                        ["fiber", "--columns", "/nonexistent/cols.json"])
    assert code == 2


def test_help_and_missing_command_codes(capsys, monkeypatch):
    assert run(["--help"]) == 0
    capsys.readouterr()
    assert run([]) == 2
    capsys.readouterr()
