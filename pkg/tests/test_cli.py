import numpy as np
import pytest

from fkemu import cli
from fkemu.cli import ChainParseError, load_chain, main, parse_chain, parse_qformat
from fkemu.cordic import DomainError
from fkemu.fixedpoint import QFormat

IDENTITY_CHAIN = "joint R 0 0 0 0\n"

DEMO = """\
# little two-joint arm
name demo
joint R 0.4 0.1 0.2 -0.9
joint P 0.0 0.3 0.0 0.5
point 0.1 0.0 0.2
"""


def write_chain(tmp_path, text, name="chain.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_chain_full():
    cf = parse_chain(DEMO, "demo")
    assert cf.name == "demo"
    assert len(cf.joints) == 2
    assert cf.joints[0].kind == "rotary"
    assert cf.joints[1].kind == "prismatic"
    assert cf.point.x == 0.1


def test_parse_errors_carry_line_and_column():
    with pytest.raises(ChainParseError) as e:
        parse_chain("joint Q 0 0 0 0\n", "f")
    assert e.value.line == 1 and e.value.col == 7
    with pytest.raises(ChainParseError) as e:
        parse_chain("joint R 0 zero 0 0\n", "f")
    assert e.value.line == 1
    with pytest.raises(ChainParseError) as e:
        parse_chain("# only comments\n", "f")
    assert e.value.line == 1
    with pytest.raises(ChainParseError):
        parse_chain("joint R 0 0 0\n", "f")  # too few numbers
    with pytest.raises(ChainParseError):
        parse_chain("joint R nan 0 0 0\n", "f")
    with pytest.raises(ChainParseError):
        parse_chain("pivot R 0 0 0 0\n", "f")


def test_load_chain_missing_file():
    with pytest.raises(ChainParseError):
        load_chain("/nonexistent/anywhere.chain")


def test_builtin_demo_chain():
    cf = load_chain("puma560")
    assert cf.name == "puma560"
    assert len(cf.joints) == 6


def test_parse_qformat():
    assert parse_qformat("Q8.24") == QFormat(32, 24)
    assert parse_qformat("q1.15") == QFormat(16, 15)
    import argparse
    with pytest.raises(argparse.ArgumentTypeError):
        parse_qformat("wide")


@pytest.mark.parametrize("backend", ["matrix", "cordic", "taylor", "lut", "cfr"])
def test_solve_identity_chain(tmp_path, capsys, backend):
    path = write_chain(tmp_path, IDENTITY_CHAIN)
    assert main(["solve", path, "--backend", backend]) == 0
    out = capsys.readouterr().out
    rows = [line.split() for line in out.splitlines()[2:6]]
    pose = np.array([[float(v) for v in row] for row in rows])
    assert np.abs(pose - np.eye(4)).max() < 1e-4


def test_solve_puma_cordic_deviation(tmp_path, capsys):
    assert main(["solve", "puma560", "--backend", "cordic"]) == 0
    out = capsys.readouterr().out
    dev = float(out.split("max deviation vs matrix oracle:")[1].split()[0])
    assert dev <= 1e-4


def test_solve_malformed_file_exits_2(tmp_path, capsys):
    path = write_chain(tmp_path, "joint R broken 0 0 0\n")
    assert main(["solve", path]) == 2
    assert "bad number" in capsys.readouterr().err


def test_solve_domain_error_exits_3(tmp_path, monkeypatch, capsys):
    def boom(chain):
        raise DomainError("angle out of range")

    path = write_chain(tmp_path, IDENTITY_CHAIN)
    monkeypatch.setattr(cli, "chain_pose", boom)
    assert main(["solve", path, "--backend", "matrix"]) == 3
    assert "domain error" in capsys.readouterr().err


def test_bench_deterministic_and_orderings(tmp_path, capsys):
    assert main(["bench", "puma560", "--trials", "6", "--seed", "9"]) == 0
    first = capsys.readouterr().out
    assert main(["bench", "puma560", "--trials", "6", "--seed", "9"]) == 0
    second = capsys.readouterr().out
    assert first == second  # byte-identical under a fixed seed
    rows = {line.split(",")[0]: line.split(",") for line in first.strip().splitlines()[1:]}
    assert int(rows["lut"][3]) < int(rows["cordic"][3])
    assert float(rows["cordic"][1]) < float(rows["lut"][1])


def test_bench_different_seed_changes_output(capsys):
    assert main(["bench", "puma560", "--trials", "4", "--seed", "1"]) == 0
    a = capsys.readouterr().out
    assert main(["bench", "puma560", "--trials", "4", "--seed", "2"]) == 0
    b = capsys.readouterr().out
    assert a != b


def test_bench_rejects_unknown_backend(capsys):
    assert main(["bench", "puma560", "--backends", "matrix,warp"]) == 2


def test_pipeline_table(capsys):
    assert main(["pipeline", "--links", "10"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n_links,processors,latency_us"
    assert lines[1] == "1,4,2.000000e+02"
    assert lines[6] == "6,24,6.000000e+02"
    assert lines[10] == "10,40,9.200000e+02"


def test_vm_zero_angles(capsys):
    assert main(["vm", "--angles", "0", "0", "0", "0"]) == 0
    out = capsys.readouterr().out
    assert "instructions: 30" in out
    assert "arithmetic ops: 24 (naive 57)" in out
    rows = [line.split() for line in out.splitlines()[0:4]]
    pose = np.array([[float(v) for v in row] for row in rows])
    assert pose[0, 0] == 1.0 and pose[1, 2] == -1.0 and pose[2, 1] == 1.0


def test_vm_half_sized_exits_4(capsys):
    assert main(["vm", "--angles", "0", "0", "0", "0", "--half-sized"]) == 4
    assert "capacity error" in capsys.readouterr().err


def test_vm_dump_program(capsys):
    assert main(["vm", "--angles", "0.1", "0.2", "0.3", "0.4", "--dump-program"]) == 0
    out = capsys.readouterr().out
    assert "LOADK r4 k0" in out
    assert "SINCOS r12 r0" in out


def test_env_default_backend(tmp_path, capsys, monkeypatch):
    path = write_chain(tmp_path, IDENTITY_CHAIN)
    monkeypatch.setenv("FK_DEFAULT_BACKEND", "lut")
    assert main(["solve", path]) == 0
    assert "backend: lut" in capsys.readouterr().out


def test_env_invalid_backend_rejected(tmp_path, capsys, monkeypatch):
    path = write_chain(tmp_path, IDENTITY_CHAIN)
    monkeypatch.setenv("FK_DEFAULT_BACKEND", "abacus")
    assert main(["solve", path]) == 2


def test_solve_prints_transformed_point(tmp_path, capsys):
    path = write_chain(tmp_path, DEMO)
    assert main(["solve", path]) == 0
    out = capsys.readouterr().out
    assert "point:" in out


def test_bench_sweeps_prismatic_joints(tmp_path, capsys):
    path = write_chain(tmp_path, DEMO)
    argv = ["bench", path, "--trials", "4", "--seed", "5", "--table-mode", "linear"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert first == capsys.readouterr().out
    assert "mode=linear" in first


def test_solve_custom_format_and_iters(tmp_path, capsys):
    assert main(["solve", "puma560", "--backend", "cordic", "--format", "Q4.12", "--iters", "14"]) == 0
    out = capsys.readouterr().out
    dev = float(out.split("max deviation vs matrix oracle:")[1].split()[0])
    assert dev < 1e-2


def test_solve_incompatible_iters_exits_2(capsys):
    # 24 iterations exceed what a 12-fraction-bit datapath resolves
    assert main(["solve", "puma560", "--backend", "cordic", "--format", "Q4.12"]) == 2
