import json
import subprocess
import sys

import pytest

from fermat_twists import cli
from fermat_twists.descent import enumerate_classes
from helpers import ALPHA, BETA, EXAMPLE_COUNTS, EXAMPLE_FORM, F49, F2401

EXAMPLE_ARGS = ["--m", "3", "--n", "6", "--q", "7",
                "--datum", '[{"degree":4,"x":"beta^2"},{"degree":2,"x":"alpha"}]']


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jacobi_command(capsys):
    code, out, _ = run(capsys, "jacobi", "--m", "3", "--n", "6", "--q", "7", "--a", "1,1,1,1,1,1")
    assert code == 0 and out == "-56-21z\n"
    code, out, _ = run(capsys, "jacobi", "--m", "3", "--q", "7", "--a", "1,1,1,2,2,2", "--method", "fast", "--json")
    assert json.loads(out)["text"] == "49"


def test_zeta_command(capsys):
    code, out, _ = run(capsys, "zeta", *EXAMPLE_ARGS, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["point_counts"] == EXAMPLE_COUNTS
    assert payload["denominator_extra_factors"][0] == [1, -1]
    code, out, _ = run(capsys, "zeta", *EXAMPLE_ARGS)
    assert "b_f = (2,1,1,1,4,1)·[1234][56]" in out
    assert "exp(2710/1·t+5897984/2·t^2+" in out


def test_classify_command(capsys):
    code, out, _ = run(capsys, "classify", "--m", "3", "--n", "2", "--q", "7", "--json")
    assert code == 0
    rows = json.loads(out)["classes"]
    assert [r["datum"] for r in rows] == [d.to_json() for d in enumerate_classes(3, 2, 7)]
    code, out, _ = run(capsys, "classify", "--m", "3", "--n", "2", "--q", "7", "--forms")
    assert out.startswith("3 classes") and "X1^3+X2^3" in out


def test_synth_command(capsys):
    code, out, _ = run(capsys, "synth", "--m", "3", "--q", "7", "--names", "abcdxy", "--check",
                       "--datum", '[{"degree":4,"x":"1/beta"},{"degree":2,"x":"1/alpha^2"}]')
    assert code == 0
    assert out.splitlines() == [EXAMPLE_FORM, "form of the Fermat equation: True"]


def test_count_command(capsys):
    code, out, _ = run(capsys, "count", "--m", "3", "--q", "7", "--poly", "X1^3+X2^3", "--json")
    assert code == 0 and json.loads(out)["count"] == 3
    code, out, _ = run(capsys, "count", *EXAMPLE_ARGS, "--json")
    assert json.loads(out)["count"] == 2710


def test_verify_and_fermat_zeta_commands(capsys):
    code, out, _ = run(capsys, "verify", "--m", "3", "--n", "2", "--q", "7", "--all", "--depth", "3", "--json")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "fermat-zeta", "--m", "3", "--n", "3", "--q", "5", "--points", "3", "--json")
    assert json.loads(out)["point_counts"] == [6, 36, 126]


def test_json_output_is_reproducible(capsys):
    args = ["verify", "--m", "3", "--n", "3", "--q", "7", "--depth", "2", "--seed", "5", "--json",
            "--datum", '[{"degree":2,"x":"g^4"},{"degree":1,"x":3}]']
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second and first


def test_progress_report_with_long(capsys):
    code, _, err = run(capsys, "count", "--m", "3", "--n", "3", "--q", "7", "--long")
    assert code == 0 and "chart 3/3 done" in err


@pytest.mark.parametrize("argv,code", [
    (["count", *EXAMPLE_ARGS, "--ext", "2", "--budget", "1000"], cli.EXIT_BUDGET),
    (["zeta", "--m", "3", "--n", "3", "--q", "5"], cli.EXIT_INPUT),
    (["zeta", "--m", "7", "--n", "3", "--q", "5"], cli.EXIT_INPUT),
    (["jacobi", "--m", "3", "--q", "7", "--a", "1,1,2"], cli.EXIT_SPECTRAL),
    (["synth", "--m", "3", "--q", "7", "--datum", '[{"degree":2,"x":"0"}]'], cli.EXIT_DESCENT),
    (["synth", "--m", "3", "--q", "7", "--datum", '[{"degree":2,"x":"gamma"}]'], cli.EXIT_INPUT),
    (["synth", "--m", "3", "--q", "7", "--datum", "not json"], cli.EXIT_INPUT),
    (["synth", "--m", "3", "--q", "6", "--n", "2"], cli.EXIT_FIELD),
    (["jacobi", "--m", "3", "--q", "7", "--a", "1,1,1", "--chi-generator", "2"], cli.EXIT_FIELD),
    (["verify", "--m", "3", "--n", "3", "--q", "7", "--iota", "2",
      "--datum", '[{"degree":2,"x":"t"},{"degree":1,"x":2}]'], cli.EXIT_MISMATCH),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("error:") or code == cli.EXIT_MISMATCH
    if code != cli.EXIT_MISMATCH:
        assert len(err.strip().splitlines()) == 1


def test_exit_codes_are_distinct():
    codes = [cli.EXIT_USAGE, cli.EXIT_FIELD, cli.EXIT_DESCENT, cli.EXIT_SPECTRAL, cli.EXIT_NONINTEGRAL,
             cli.EXIT_BUDGET, cli.EXIT_INCONSISTENT, cli.EXIT_MISMATCH, cli.EXIT_INPUT]
    assert len(set(codes)) == len(codes) and 0 not in codes


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        cli.main(["zeta", "--n", "3"])
    assert err.value.code == cli.EXIT_USAGE


def test_element_expressions():
    assert cli.parse_element("beta^2", F2401) == BETA**2
    assert cli.parse_element("1/beta", F2401) == BETA.inverse()
    assert cli.parse_element("1/alpha^2", F49) == ALPHA.inverse() ** 2
    assert cli.parse_element("alpha^-2", F49) == ALPHA.inverse() ** 2
    assert cli.parse_element("3*alpha", F49) == ALPHA * 3
    assert cli.parse_element("g^17", F49) == F49.generator**17
    assert cli.parse_element([1, 2], F49) == F49([1, 2])
    for bad in ("", "/alpha", "alpha beta", "delta"):
        with pytest.raises(cli.InputError):
            cli.parse_element(bad, F49)


def test_named_elements_select_example_presentations():
    d = cli.parse_datum(EXAMPLE_ARGS[-1], 3, 7)
    assert d.algebra.factors == (F2401, F49)
    d = cli.parse_datum('[{"degree":2,"x":"t"}]', 3, 7)
    assert d.algebra.factors[0].modulus == (1, 0, 1)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fermat_twists", "jacobi", "--m", "3", "--n", "6", "--q", "7",
                           "--a", "2,2,2,2,2,2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "-35+21z"
