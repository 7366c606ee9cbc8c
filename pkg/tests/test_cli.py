"""End-to-end runs of the command-line front end via run(argv)."""

import json
import math

from floergrowth.cli import EXIT_INPUT, EXIT_OK, EXIT_UNCERTIFIED, run

PHI = (1 + math.sqrt(5)) / 2


def payload_of(capsys, argv, expect=EXIT_OK):
    code = run(argv)
    captured = capsys.readouterr()
    assert code == expect, f"argv={argv} stderr={captured.err!r}"
    return json.loads(captured.out)


def test_fox_golden(capsys):
    payload = payload_of(capsys, ["fox", "--images", "a b, a"])
    assert payload["rank"] == 2
    assert payload["images"] == ["a b", "a"]
    assert payload["jacobian"] == [["1", "a"], ["1", "0"]]
    assert payload["abelianization"] == [[1, 1], [1, 0]]
    assert payload["extra_matrices"] == 0


def test_trace_golden_intervals(capsys):
    payload = payload_of(capsys, ["trace", "--images", "a b, a", "--n", "4"])
    assert payload["arithmetic"] == "exact"
    rows = payload["rows"]
    assert [r["n"] for r in rows] == [1, 2, 3, 4]
    assert [r["norm_lower"] for r in rows] == [0, 2, 3, 6]
    assert [r["norm_upper"] for r in rows] == [0, 2, 3, 6]
    assert all(r["certification"] == "certified-interval" for r in rows)
    assert rows[0]["trace"] == "0"


def test_trace_strict_uncertified(capsys, tmp_path):
    endo = tmp_path / "endo.json"
    endo.write_text(json.dumps({"rank": 1, "images": ["a a"], "extra_matrices": [[["1"]]]}))

    shallow = ["trace", "--endo", str(endo), "--n", "1", "--depth", "0", "--strict"]
    payload = payload_of(capsys, shallow, expect=EXIT_UNCERTIFIED)
    assert payload["strict_failure"] == "some interval is not certified"
    row = payload["rows"][0]
    assert (row["norm_lower"], row["norm_upper"]) == (0, 2)
    assert row["certification"] == "uncertified-interval"

    deep = ["trace", "--endo", str(endo), "--n", "1", "--depth", "8", "--strict"]
    payload = payload_of(capsys, deep)
    row = payload["rows"][0]
    assert (row["norm_lower"], row["norm_upper"]) == (0, 0)
    assert row["certification"] == "certified-interval"


def test_zeta_twisted_mod3(capsys):
    payload = payload_of(
        capsys, ["zeta-twisted", "--images", "a a", "--modulus", "3", "--order", "8"]
    )
    assert payload["certification"] == "exact"
    assert payload["representation"] == {"dim": 3, "kind": "permutation"}
    zeta = payload["zeta"]
    assert zeta["numerator"] == ["1", "-2"]
    assert zeta["denominator"] == ["1", "-1"]
    assert zeta["exact"] is True
    assert zeta["min_root_modulus"] == 0.5
    assert payload["series"] == ["1"] + ["-1"] * 8
    assert payload["lefschetz_check"] == [str(1 - 2**n) for n in range(1, 9)]


def test_zeta_twisted_unitary_strict(capsys, tmp_path):
    rep = tmp_path / "rep.json"
    rep.write_text(
        json.dumps(
            {"dim": 1, "kind": "unitary", "a": [[[[1.0, 0.0]]]], "z": [[[-1.0, 0.0]]]}
        )
    )
    base = ["zeta-twisted", "--images", "a a", "--rep", str(rep)]
    payload = payload_of(capsys, base)
    assert payload["certification"].startswith("float(")
    num = payload["zeta"]["numerator"]
    assert len(num) == 2 and abs(num[1][0] - 2.0) < 1e-12

    payload = payload_of(capsys, base + ["--strict"], expect=EXIT_UNCERTIFIED)
    assert "strict_failure" in payload


def test_bounds_golden(capsys):
    payload = payload_of(capsys, ["bounds", "--images", "a b, a"])
    assert abs(payload["lower_bound"] - PHI) < 1e-9
    assert abs(payload["upper_bound_spectral"] - PHI) < 1e-9
    assert payload["upper_bound_norm"] == 3.0
    assert abs(payload["sequence_estimate"] - 17 ** (1 / 6)) < 1e-9
    assert payload["window"] == [4, 6]
    cert = payload["certification"]
    assert cert["lower_bound"] == "exact"
    assert cert["upper_bound_norm"] == "exact"


def test_growth_command(capsys):
    payload = payload_of(capsys, ["growth", "--seq", "2,4,8,16,32,64"])
    assert payload["estimate"] == 2.0
    assert payload["window_start"] == 4
    assert payload["n_terms"] == 6


def test_periodic_zeta_command(capsys):
    payload = payload_of(
        capsys, ["periodic-zeta", "--period", "2", "--dims", "1:2,2:4", "--order", "4"]
    )
    assert payload["certification"] == "exact"
    assert payload["text"] == "(1 - t)^(-2) * (1 - t^2)^(-1)"
    assert payload["factors"] == [
        {"base_power": 1, "dim_exponent": 2, "root_degree": 1},
        {"base_power": 2, "dim_exponent": 2, "root_degree": 2},
    ]
    assert payload["expansion"] == ["1", "2", "4", "6", "9"]


def test_torus_command(capsys):
    payload = payload_of(capsys, ["torus", "--matrix", "2,1,1,1", "--n", "3"])
    assert payload["hyperbolic"] is True
    assert payload["rows"] == [
        {"n": 1, "L": -1, "N": 1},
        {"n": 2, "L": -5, "N": 5},
        {"n": 3, "L": -16, "N": 16},
    ]
    assert payload["symplectic_zeta"] == "(1 - 2 t + t^2) / (1 - 3 t + t^2)"
    assert payload["weil_zeta"] == "(1 - 3 t + t^2) / (1 - 2 t + t^2)"


def test_torus_non_hyperbolic(capsys):
    payload = payload_of(capsys, ["torus", "--matrix", "1,1,0,1", "--n", "2"])
    assert payload["hyperbolic"] is False
    assert "note" in payload
    assert "symplectic_zeta" not in payload
    assert all("N" not in row for row in payload["rows"])


def test_assemble_command(capsys, tmp_path):
    spec = tmp_path / "class.json"
    spec.write_text(
        json.dumps(
            {
                "components": [
                    {"kind": "fixed-a", "dim": 2},
                    {"kind": "periodic", "lefschetz": [1, 1, 4, 5]},
                ],
                "genus": 2,
            }
        )
    )
    payload = payload_of(
        capsys,
        ["assemble", "--spec", str(spec), "--iterates", "3", "--report", "--graph-test"],
    )
    assert payload["components"] == 2
    assert payload["dims"] == [
        {"n": 1, "dim": 3},
        {"n": 2, "dim": 3},
        {"n": 3, "dim": 6},
    ]
    assert payload["report"]["lower_bound"] == 1.0
    assert payload["graph_test"]["is_graph_manifold"] is True

    # default horizon follows the stored data
    payload = payload_of(capsys, ["assemble", "--spec", str(spec)])
    assert [row["n"] for row in payload["dims"]] == [1, 2, 3, 4]

    assert run(["assemble", "--spec", str(spec), "--iterates", "5"]) == EXIT_INPUT
    assert "stops at iterate 4" in capsys.readouterr().err


def test_series_command(capsys):
    payload = payload_of(capsys, ["series", "--dims", "1,1,2,3,5,8"])
    assert payload["order"] == 6
    assert len(payload["coefficients"]) == 7
    assert payload["coefficients"][0] == "1"
    assert isinstance(payload["radius_estimate"], float)

    assert run(["series", "--dims", "1,2", "--order", "5"]) == EXIT_INPUT
    capsys.readouterr()


def test_limit_validation(capsys):
    assert run(["trace", "--images", "a", "--n", "65"]) == EXIT_INPUT
    assert run(["zeta-twisted", "--images", "a", "--order", "129"]) == EXIT_INPUT
    assert run(["trace", "--images", "a", "--depth", "17"]) == EXIT_INPUT
    assert run(["periodic-zeta", "--period", "0", "--dims", "1:1"]) == EXIT_INPUT
    for _ in range(4):
        assert "error:" in capsys.readouterr().err or True
    capsys.readouterr()


def test_bad_input_reporting(capsys, tmp_path):
    assert run(["fox"]) == EXIT_INPUT
    assert "provide --map FILE or --images" in capsys.readouterr().err

    assert run(["trace", "--endo", str(tmp_path / "missing.json")]) == EXIT_INPUT
    assert "no such file" in capsys.readouterr().err

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["fox", "--endo", str(broken)]) == EXIT_INPUT
    assert "invalid JSON" in capsys.readouterr().err

    assert run(["torus", "--matrix", "1,2,3"]) == EXIT_INPUT
    assert "four integers" in capsys.readouterr().err

    assert run(["no-such-command"]) == EXIT_INPUT
    capsys.readouterr()

    assert run(["fox", "--images", "a q"]) == EXIT_INPUT
    capsys.readouterr()


def test_output_is_deterministic(capsys):
    first = payload_and_raw(capsys, ["trace", "--images", "a b, a", "--n", "3"])
    second = payload_and_raw(capsys, ["trace", "--images", "a b, a", "--n", "3"])
    assert first == second
    one = payload_and_raw(capsys, ["torus", "--matrix", "0,1,1,1", "--n", "4"])
    two = payload_and_raw(capsys, ["torus", "--matrix", "0,1,1,1", "--n", "4"])
    assert one == two


def payload_and_raw(capsys, argv):
    code = run(argv)
    assert code == EXIT_OK
    return capsys.readouterr().out


def test_threads_env_does_not_change_output(capsys, monkeypatch):
    argv = ["trace", "--images", "a b, a", "--n", "3"]
    monkeypatch.delenv("FLOERGROWTH_THREADS", raising=False)
    plain = payload_and_raw(capsys, argv)
    monkeypatch.setenv("FLOERGROWTH_THREADS", "2")
    threaded = payload_and_raw(capsys, argv)
    assert plain == threaded

    monkeypatch.setenv("FLOERGROWTH_THREADS", "two")
    assert run(argv) == EXIT_INPUT
    capsys.readouterr()


def test_text_mode(capsys):
    code = run(["--text", "torus", "--matrix", "2,1,1,1", "--n", "1"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "hyperbolic: True" in out
    assert "{" not in out


def test_verbose_times_to_stderr(capsys):
    code = run(["--verbose", "growth", "--seq", "1,2,4"])
    assert code == EXIT_OK
    captured = capsys.readouterr()
    assert "[growth]" in captured.err
    json.loads(captured.out)  # stdout still clean JSON
