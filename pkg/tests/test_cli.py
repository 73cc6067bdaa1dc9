import json

import pytest
from pydantic import ValidationError

from app.cli import RESPONSE_MODELS, main, parse_config, render, validate_payload
from app.services.verify import wishart_limit_functional


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_goe_moments_json(capsys):
    code, out, _ = run_cli(capsys, "goe-moments", "--n", "8")
    payload = json.loads(out)

    assert code == 0
    assert payload["limit"] == "14"
    assert payload["infinitesimal"] == "93"
    assert payload["variables"] == ["N"]


def test_goe_moments_pretty(capsys):
    code, out, _ = run_cli(capsys, "goe-moments", "--n", "4", "--pretty")

    assert code == 0
    assert out.strip() == "2 + 5N⁻¹ + 5N⁻²"


def test_wishart_moments_with_limits(capsys):
    code, out, _ = run_cli(capsys, "wishart-moments", "--word", "1,1", "--c", "2", "--cprime", "3")
    payload = json.loads(out)

    assert code == 0
    assert payload["coefficients"] == {"M^2 N^-2": "1", "M^1 N^-1": "1"}
    assert (payload["limit"], payload["infinitesimal"]) == ("6", "15")


def test_enumerate_count_pretty(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "nc2delta", "--n", "6", "--count", "--pretty")

    assert code == 0
    assert out.strip() == "22"


def test_enumerate_items(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "nc2delta", "--n", "4")
    payload = json.loads(out)

    assert code == 0
    assert payload["count"] == 5
    assert len(payload["items"]) == 5


def test_cumulants_from_file(tmp_path, capsys):
    path = tmp_path / "moments.json"
    path.write_text(json.dumps({"values": {"x": ["0", "0"], "x x": ["1", "1"], "x x x": ["0", "0"], "x x x x": ["2", "5"]}}))

    code, out, _ = run_cli(capsys, "cumulants", "--moments-file", str(path))
    assert code == 0
    assert json.loads(out)["values"] == {"x": "0", "x x": "1", "x x x": "0", "x x x x": "0"}

    code, out, _ = run_cli(capsys, "cumulants", "--moments-file", str(path), "--infinitesimal")
    assert json.loads(out)["values"]["x x x x"] == ["0", "1"]


def test_cumulants_missing_file_is_invalid_input(tmp_path, capsys):
    code, _, err = run_cli(capsys, "cumulants", "--moments-file", str(tmp_path / "missing.json"))

    assert code == 2
    assert err.startswith("error:")


def test_transform_csv(capsys):
    code, out, _ = run_cli(capsys, "transform", "g-from-r", "--ensemble", "goe", "--order", "8", "--csv")
    lines = out.strip().splitlines()

    assert code == 0
    assert lines[0] == "index,value,derivative"
    assert "3,1,0" in lines
    assert "7,22,0" in lines


def test_density_csv(capsys):
    code, out, _ = run_cli(capsys, "density", "--ensemble", "wishart", "--c", "3", "--grid", "5", "--csv")
    lines = out.strip().splitlines()

    assert code == 0
    assert lines[0] == "x,mu,mu_prime"
    assert len(lines) == 6


def test_simulate_single_size(capsys):
    code, out, _ = run_cli(capsys, "simulate", "goe", "--n", "2", "--N", "10", "--samples", "500", "--seed", "3")
    payload = json.loads(out)

    assert code == 0
    assert payload["exact"] == "11/10"
    assert payload["samples"] == 500
    assert abs(payload["z_score"]) < 5


def test_verify_suites(capsys):
    code, out, _ = run_cli(capsys, "verify", "universal-rule", "--lambda", "2", "--n", "2")
    assert code == 0
    assert json.loads(out)["rhs"] == "3"

    code, out, _ = run_cli(capsys, "verify", "non-freeness", "--n", "4")
    assert code == 0
    assert json.loads(out)["kappa_prime_free_prediction"] == "1/2"


def test_exit_codes(capsys):
    code, out, err = run_cli(capsys, "density", "--grid", "0")
    assert code == 2
    assert out == ""
    assert "grid" in err

    code, _, err = run_cli(capsys, "goe-moments", "--n", "100")
    assert code == 3
    assert "GOE_MAX_N" in err

    code, _, _ = run_cli(capsys, "transform", "r-from-g", "--order", "1000")
    assert code == 3


def test_argparse_errors_exit_with_two(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["goe-moments"])
    assert excinfo.value.code == 2

    with pytest.raises(SystemExit):
        main(["verify", "universal-rule", "--lambda", "two"])


def test_parse_config_and_render():
    config = parse_config(["enumerate", "nc", "--n", "4", "--count", "--csv"])

    assert config.subcommand == "enumerate"
    assert config.output_format == "csv"
    assert config.params == {"kind": "nc", "n": 4, "count": True}
    assert render({"kind": "nc", "n": 4, "count": 14}, "csv") == "key,value\nkind,nc\nn,4\ncount,14"


@pytest.mark.parametrize(
    "argv",
    [
        ("goe-moments", "--n", "6"),
        ("wishart-moments", "--word", "1,2,1,2", "--c", "1", "--cprime", "1"),
        ("enumerate", "ncc2", "--n", "4"),
        ("enumerate", "nc2delta", "--n", "6", "--count"),
        ("transform", "r-from-g", "--ensemble", "wishart", "--order", "6"),
        ("density", "--ensemble", "goe", "--grid", "4"),
        ("simulate", "wishart", "--n", "2", "--sizes", "4,8", "--c", "1", "--samples", "50", "--seed", "1"),
        ("verify", "wishart-freeness", "--order", "4"),
    ],
)
def test_json_payloads_match_their_schemas(capsys, argv):
    code, out, _ = run_cli(capsys, *argv)

    assert code == 0
    RESPONSE_MODELS[argv[0]].model_validate(json.loads(out))


def test_cumulant_payloads_match_their_schema(tmp_path, capsys):
    path = tmp_path / "moments.json"
    path.write_text(json.dumps(wishart_limit_functional(2, 3, 4).to_dict()))

    for extra in ((), ("--infinitesimal", "--groups", "x|y")):
        code, out, _ = run_cli(capsys, "cumulants", "--moments-file", str(path), *extra)
        assert code == 0
        RESPONSE_MODELS["cumulants"].model_validate(json.loads(out))


def test_schema_subcommand_and_rejected_payloads(capsys):
    code, out, _ = run_cli(capsys, "schema", "goe-moments")
    schema = json.loads(out)

    assert code == 0
    assert schema["title"] == "MomentPolyResponse"
    assert {"word", "variables", "coefficients", "text"} <= set(schema["required"])

    with pytest.raises(ValidationError):
        validate_payload("goe-moments", {"word": "x^2", "variables": ["N"], "text": "1"})
    with pytest.raises(ValidationError):
        validate_payload("verify", {"suite": "non-freeness"})
    assert validate_payload("verify", {"suite": "non-freeness", "passed": True, "n": 4})["n"] == 4
