import json
from fractions import Fraction

import pytest

from qmeasure.checks import coin_theory, three_path_theory
from qmeasure.cli import main
from qmeasure.core import theory_to_json


@pytest.fixture()
def three_path_file(tmp_path):
    path = tmp_path / "t3.json"
    path.write_text(json.dumps(theory_to_json(three_path_theory())))
    return str(path)


@pytest.fixture()
def coin_file(tmp_path):
    path = tmp_path / "coin.json"
    path.write_text(json.dumps(theory_to_json(coin_theory(Fraction(1, 3)))))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_valid(capsys, three_path_file):
    code, out, _ = run(capsys, "validate", "--theory", three_path_file)
    assert code == 0
    assert "valid" in out


def test_validate_invalid_exits_one(capsys, tmp_path):
    doc = {
        "histories": ["a", "b"],
        "measure": {"type": "table",
                    "values": {"0x0": "0", "0x1": "-1", "0x2": "1", "0x3": "1"}},
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", "--theory", str(path))
    assert code == 1
    assert "positivity" in out


def test_validate_missing_file(capsys):
    code, _, err = run(capsys, "validate", "--theory", "/no/such/file.json")
    assert code == 1
    assert "error" in err


def test_malformed_json_exits_one(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", "--theory", str(path))
    assert code == 1


def test_measure_outputs(capsys, three_path_file):
    code, out, _ = run(
        capsys, "measure", "--theory", three_path_file,
        "--mu", "0x5", "--mu", "0x3",
        "--interference", "0x2,0x4", "--level", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["mu"] == {"0x5": "4", "0x3": "0"}
    assert doc["interference"] == [{"events": "0x2,0x4", "value": "-2"}]
    assert doc["level"] == 2


def test_measure_requires_a_request(capsys, three_path_file):
    code, _, err = run(capsys, "measure", "--theory", three_path_file)
    assert code == 1


def test_primitives_three_path(capsys, three_path_file):
    code, out, _ = run(capsys, "primitives", "--theory", three_path_file, "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"dual": "0x5"}]


def test_primitives_cap_exceeded_exits_two(capsys, tmp_path):
    n = 17
    doc = {
        "histories": [f"g{i}" for i in range(n)],
        "measure": {
            "type": "decoherence",
            "matrix": [
                [[f"1/{n}" if i == j else "0", "0"] for j in range(n)]
                for i in range(n)
            ],
        },
    }
    path = tmp_path / "big.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "primitives", "--theory", str(path))
    assert code == 2


def test_partition_checks(capsys, three_path_file):
    code, out, _ = run(
        capsys, "partition", "--theory", three_path_file,
        "--blocks", "0x5,0x2", "--check", "classical-m", "--format", "json",
    )
    assert code == 0
    assert json.loads(out) == {"classical-m": True}
    code, out, _ = run(
        capsys, "partition", "--theory", three_path_file,
        "--blocks", "0x3,0x4", "--check", "classical-m", "--format", "json",
    )
    assert json.loads(out) == {"classical-m": False}
    code, out, _ = run(
        capsys, "partition", "--theory", three_path_file,
        "--blocks", "0x5,0x2", "--check", "decoherent", "--format", "json",
    )
    assert json.loads(out) == {"decoherent": False}


def test_partition_principle(capsys, three_path_file):
    code, out, _ = run(
        capsys, "partition", "--theory", three_path_file, "--principle", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["blocks"] == ["0x5", "0x2"]
    assert doc["fat_duals"] == ["0x5"]
    assert doc["uncovered"] == ["0x2"]


def test_partition_needs_a_mode(capsys, three_path_file):
    code, _, err = run(capsys, "partition", "--theory", three_path_file)
    assert code == 1


def test_coin_h_epsilon(capsys):
    code, out, _ = run(
        capsys, "coin", "h-epsilon", "--n", "1000", "--p", "1/2", "--eps", "1/1000",
    )
    assert code == 0
    assert out.strip() == "450"


def test_coin_h_epsilon_none(capsys):
    code, out, _ = run(capsys, "coin", "h-epsilon", "--n", "2", "--p", "1/2", "--eps", "1/1000")
    assert code == 0
    assert out.strip() == "none"


def test_coin_straddle(capsys):
    code, out, _ = run(capsys, "coin", "straddle", "--n", "10", "--p", "1/2", "--eps", "1/1000")
    assert code == 0
    assert out.strip() == "1"


def test_coin_tail_csv(capsys):
    code, out, _ = run(capsys, "coin", "tail", "--n", "4", "--p", "1/2", "--eps", "1/1000")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "H,P_N,P_L"
    assert lines[1] == "0,1/16,1/16"
    assert lines[3] == "2,3/8,11/16"
    assert lines[-1] == "4,1/16,1"


def test_coin_even_odd(capsys):
    code, out, _ = run(
        capsys, "coin", "even-odd", "--n", "8", "--p", "1/2", "--eps", "5/64",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["cutoff"] == 0
    assert doc["primitive_cardinality"] == 20
    assert doc["witness_supported"] is True


def test_coin_rejects_bad_rational(capsys):
    code, _, err = run(capsys, "coin", "h-epsilon", "--n", "4", "--p", "x", "--eps", "1/4")
    assert code == 1


def test_feasibility_solve_and_max(capsys, coin_file):
    code, out, _ = run(
        capsys, "feasibility", "solve", "--theory", coin_file,
        "--duals", "0x1,0x2", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc == {"status": "feasible", "assignment": {"0x1": "1/3", "0x2": "2/3"}}
    code, out, _ = run(
        capsys, "feasibility", "max", "--theory", coin_file,
        "--duals", "0x1,0x2,0x3", "--phi", "0x3", "--format", "json",
    )
    assert json.loads(out) == {"max_probability": "0"}


def test_feasibility_build(capsys, coin_file):
    code, out, _ = run(
        capsys, "feasibility", "build", "--theory", coin_file,
        "--duals", "0x1,0x2", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["coevents"] == [{"dual": "0x1"}, {"dual": "0x2"}]
    assert doc["rows"][3] == {"event": "0x3", "coefficients": [1, 1], "rhs": "1"}


def test_hypothesis_with_sequence(capsys):
    code, out, _ = run(
        capsys, "hypothesis", "--p0", "1/2", "--eps", "1/1000",
        "--sequence", "t" * 20, "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["decision"] == "Reject"
    assert doc["cumulative"] == "1/1048576"


def test_hypothesis_simulated_deterministic(capsys):
    args = ("hypothesis", "--n", "50", "--p0", "1/2", "--eps", "1/100",
            "--seed", "9", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_byte_identical_reruns(capsys, three_path_file):
    outputs = []
    for _ in range(2):
        code, out, err = run(
            capsys, "partition", "--theory", three_path_file, "--principle",
            "--format", "json",
        )
        assert code == 0
        outputs.append(out + err)
    assert outputs[0] == outputs[1]


def test_unknown_command_exits_one(capsys):
    assert main(["no-such-command"]) == 1
    capsys.readouterr()


def test_threads_flag_accepted(capsys, three_path_file):
    code, out, _ = run(
        capsys, "primitives", "--theory", three_path_file, "--threads", "4",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out) == [{"dual": "0x5"}]
    code, _, err = run(capsys, "primitives", "--theory", three_path_file, "--threads", "0")
    assert code == 1
