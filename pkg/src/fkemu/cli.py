"""Command-line front end: chain ingestion, pose solving with backend
selection, seeded accuracy/op-count benchmarking, pipeline latency tables,
and the FK-processor VM.

Chain files are line oriented so they diff cleanly:

    # comment
    name my-arm
    joint R <theta> <d> <a> <alpha>
    joint P <theta> <d> <a> <alpha>
    point <x> <y> <z>

Angles are radians, lengths meters.  The special chain name "puma560"
loads a built-in six-revolute demo profile.  Exit codes: 0 success,
2 parse failure, 3 numeric domain error, 4 register capacity error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import ccm, cfr, lut, taylor, umdh
from .cordic import CordicConfig, DomainError
from .dh import DhJoint, PRISMATIC, ROTARY, PumaParams, Vec4, chain_pose, link_from_trig
from .fixedpoint import QFormat
from .umdh import CapacityError, UmdhParams

BACKENDS = ("matrix", "cordic", "taylor", "lut", "cfr")

# Demo profile only; the library itself takes link constants as inputs.
PUMA560 = PumaParams(d2=0.14909, d4=0.43307, d6=0.05625, a2=0.4318, a3=-0.02032)

DEMO_THUMB = UmdhParams(a0=0.05, a1=0.04, a2=0.03, a3=0.025, d1=0.02)

CSV_HEADER = "backend,max_err,rms_err,ops_per_pose,model_latency_us,params"


class ChainParseError(ValueError):
    def __init__(self, filename: str, line: int, col: int, msg: str) -> None:
        super().__init__(f"{filename}:{line}:{col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class ChainFile:
    name: str
    joints: tuple[DhJoint, ...]
    point: Vec4 | None


def _demo_chain_text() -> str:
    p = PUMA560
    return (
        "name puma560\n"
        f"joint R 0.0 0.0 0.0 {-math.pi / 2}\n"
        f"joint R 0.0 {p.d2} {p.a2} 0.0\n"
        f"joint R 0.0 0.0 {p.a3} {math.pi / 2}\n"
        f"joint R 0.0 {p.d4} 0.0 {-math.pi / 2}\n"
        f"joint R 0.0 0.0 0.0 {math.pi / 2}\n"
        f"joint R 0.0 {p.d6} 0.0 0.0\n"
        "point 0.0 0.0 0.0\n"
    )


def parse_chain(text: str, filename: str = "<chain>") -> ChainFile:
    name = "chain"
    joints: list[DhJoint] = []
    point: Vec4 | None = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue

        def _floats(count: int, start: int) -> list[float]:
            vals = []
            for k in range(count):
                idx = start + k
                if idx >= len(tokens):
                    col = len(line.rstrip()) + 1
                    raise ChainParseError(filename, lineno, col, f"expected {count} numbers")
                try:
                    value = float(tokens[idx])
                except ValueError:
                    col = line.index(tokens[idx]) + 1
                    raise ChainParseError(
                        filename, lineno, col, f"bad number {tokens[idx]!r}"
                    ) from None
                if not math.isfinite(value):
                    col = line.index(tokens[idx]) + 1
                    raise ChainParseError(filename, lineno, col, "number must be finite")
                vals.append(value)
            return vals

        key = tokens[0]
        if key == "name":
            if len(tokens) < 2:
                raise ChainParseError(filename, lineno, len(line.rstrip()) + 1, "missing name")
            name = tokens[1]
        elif key == "joint":
            if len(tokens) < 2 or tokens[1] not in ("R", "P"):
                col = line.index(tokens[1]) + 1 if len(tokens) > 1 else len(line.rstrip()) + 1
                raise ChainParseError(filename, lineno, col, "joint kind must be R or P")
            kind = ROTARY if tokens[1] == "R" else PRISMATIC
            theta, d, a, alpha = _floats(4, 2)
            joints.append(DhJoint(kind, theta, d, a, alpha))
        elif key == "point":
            x, y, z = _floats(3, 1)
            point = Vec4(x, y, z)
        else:
            col = line.index(key) + 1
            raise ChainParseError(filename, lineno, col, f"unknown directive {key!r}")
    if not joints:
        raise ChainParseError(filename, 1, 1, "chain has no joints")
    return ChainFile(name, tuple(joints), point)


def load_chain(path: str) -> ChainFile:
    if path == "puma560":
        return parse_chain(_demo_chain_text(), "puma560")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ChainParseError(path, 1, 1, str(e)) from None
    return parse_chain(text, path)


def parse_qformat(text: str) -> QFormat:
    try:
        m, n = text.lstrip("Qq").split(".")
        return QFormat(int(m) + int(n), int(n))
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"bad Q format {text!r}, expected like Q8.24") from None


def _taylor_pose(chain, cfg: taylor.TaylorConfig) -> np.ndarray:
    pose = None
    for j in chain:
        ct, st = taylor.taylor_sincos(j.theta, cfg)
        ca, sa = taylor.taylor_sincos(j.alpha, cfg)
        link = link_from_trig(ct, st, ca, sa, j.a_eff, j.d)
        pose = link if pose is None else pose @ link
    return pose


def _cfr_pose(chain, cfg: CordicConfig) -> np.ndarray:
    cols = []
    for v in (Vec4(1, 0, 0, 0.0), Vec4(0, 1, 0, 0.0), Vec4(0, 0, 1, 0.0), Vec4(0, 0, 0, 1.0)):
        p = v
        for j in reversed(chain):
            p = cfr.macro_pe_apply(j, p, cfg)
        cols.append([p.x, p.y, p.z, p.w])
    return np.array(cols).T


@dataclass(frozen=True)
class Report:
    """One benchmark row; every numeric field stays finite."""

    backend: str
    max_err: float
    rms_err: float
    ops_per_pose: int
    model_latency_us: float
    params: str

    def csv_row(self) -> str:
        return (
            f"{self.backend},{self.max_err:.6e},{self.rms_err:.6e},"
            f"{self.ops_per_pose},{self.model_latency_us:.6e},{self.params}"
        )


@dataclass(frozen=True)
class _Backend:
    pose: Callable  # chain -> 4x4 ndarray
    ops: Callable  # n_links -> int
    latency: Callable  # n_links -> float
    params: str


def _make_backends(args) -> dict[str, _Backend]:
    ccfg = CordicConfig(args.iters, args.format)
    tcfg = taylor.TaylorConfig()
    table = lut.build_table(args.table_size, mode=args.table_mode)

    def taylor_ops(n):
        return n * (2 * taylor.sincos_op_count(tcfg) + 6 + 112)

    def matrix_ops(n):
        return n * (2 + 6 + 112)

    return {
        "matrix": _Backend(chain_pose, matrix_ops, lambda n: 0.0, ""),
        "cordic": _Backend(
            lambda c: ccm.ccm_pose(c, ccfg),
            lambda n: ccm.pose_op_count(n, ccfg),
            lambda n: ccm.latency_us(ccm.PipelineModel(n)),
            f"iters={args.iters};fmt={args.format}",
        ),
        "taylor": _Backend(
            lambda c: _taylor_pose(c, tcfg),
            taylor_ops,
            lambda n: 0.0,
            f"terms={tcfg.n_terms};fmt={tcfg.operand_fmt}",
        ),
        "lut": _Backend(
            lambda c: lut.lut_fk_pose(c, table),
            lambda n: lut.pose_op_count(n, table),
            lambda n: 0.0,
            f"entries={args.table_size};mode={args.table_mode}",
        ),
        "cfr": _Backend(
            lambda c: _cfr_pose(c, ccfg),
            lambda n: ccm.pose_op_count(n, ccfg),
            lambda n: 0.0,
            f"iters={args.iters};fmt={args.format}",
        ),
    }


def _print_pose(pose: np.ndarray) -> None:
    for row in pose:
        print("  " + "  ".join(f"{v: .9f}" for v in row))


def cmd_solve(args) -> int:
    chain_file = load_chain(args.chain)
    backends = _make_backends(args)
    backend = backends[args.backend]
    pose = backend.pose(chain_file.joints)
    print(f"chain: {chain_file.name} ({len(chain_file.joints)} joints)")
    print(f"backend: {args.backend}")
    _print_pose(pose)
    if args.backend != "matrix":
        oracle = chain_pose(chain_file.joints)
        dev = float(np.abs(pose - oracle).max())
        print(f"max deviation vs matrix oracle: {dev:.6e}")
    if chain_file.point is not None:
        moved = pose @ chain_file.point.as_array()
        print("point: " + "  ".join(f"{v: .9f}" for v in moved[:3]))
    return 0


def cmd_bench(args) -> int:
    chain_file = load_chain(args.chain)
    names = [b.strip() for b in args.backends.split(",") if b.strip()]
    for b in names:
        if b not in BACKENDS:
            raise ChainParseError("<backends>", 1, 1, f"unknown backend {b!r}")
    backends = _make_backends(args)
    rng = np.random.default_rng(args.seed)
    variants = []
    for _ in range(args.trials):
        joints = []
        for j in chain_file.joints:
            if j.kind == ROTARY:
                joints.append(DhJoint(j.kind, float(rng.uniform(-math.pi, math.pi)), j.d, j.a, j.alpha))
            else:
                joints.append(DhJoint(j.kind, j.theta, float(rng.uniform(0.0, 1.0)), j.a, j.alpha))
        variants.append(tuple(joints))
    oracles = [chain_pose(v) for v in variants]

    print(CSV_HEADER)
    n = len(chain_file.joints)
    for name in names:
        backend = backends[name]
        max_err = 0.0
        sq_sum = 0.0
        count = 0
        for variant, oracle in zip(variants, oracles):
            diff = np.abs(backend.pose(variant) - oracle)
            max_err = max(max_err, float(diff.max()))
            sq_sum += float((diff**2).sum())
            count += diff.size
        report = Report(
            name, max_err, math.sqrt(sq_sum / count),
            backend.ops(n), backend.latency(n), backend.params,
        )
        print(report.csv_row())
    return 0


def cmd_pipeline(args) -> int:
    print("n_links,processors,latency_us")
    for n in range(1, args.links + 1):
        model = ccm.PipelineModel(n)
        print(f"{n},{4 * n},{ccm.latency_us(model):.6e}")
    return 0


def cmd_vm(args) -> int:
    params = UmdhParams(*args.params)
    prog = umdh.umdh_program(params)
    hw = umdh.VmConfig(half_sized=args.half_sized, sincos_cycles=args.sincos_cycles)
    if args.dump_program:
        print(prog.to_text(), end="")
    pose, cycles = umdh.vm_run(prog, *args.angles, params, hw)
    _print_pose(pose)
    naive_ops = umdh.umdh_t04_naive(*args.angles, params)[1]
    print(f"instructions: {len(prog.instrs)}")
    print(f"arithmetic ops: {prog.arith_ops} (naive {naive_ops})")
    print(f"cycles: {cycles}")
    print(f"time at {args.clock_mhz} MHz: {umdh.clock_time(cycles, args.clock_mhz):.6f} us")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fkemu", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_backend_opts(p):
        p.add_argument("--iters", type=int, default=24, help="CORDIC iteration count")
        p.add_argument("--table-size", type=int, default=1024, help="lookup table entries")
        p.add_argument("--table-mode", choices=(lut.NEAREST, lut.LINEAR), default=lut.NEAREST)
        p.add_argument("--format", type=parse_qformat, default=QFormat(32, 24), help="datapath Q format, e.g. Q8.24")

    p_solve = sub.add_parser("solve", help="print the pose of a chain")
    p_solve.add_argument("chain", help="chain file path, or 'puma560' for the demo")
    p_solve.add_argument(
        "--backend",
        choices=BACKENDS,
        default=os.environ.get("FK_DEFAULT_BACKEND", "matrix"),
    )
    add_backend_opts(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="seeded accuracy/op-count sweep as CSV")
    p_bench.add_argument("chain")
    p_bench.add_argument("--backends", default="cordic,taylor,lut,cfr")
    p_bench.add_argument("--trials", type=int, default=16)
    p_bench.add_argument("--seed", type=int, default=0)
    add_backend_opts(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_pipe = sub.add_parser("pipeline", help="latency table for 1..n links")
    p_pipe.add_argument("--links", type=int, default=6)
    p_pipe.set_defaults(func=cmd_pipeline)

    p_vm = sub.add_parser("vm", help="run the thumb FK program on the VM")
    p_vm.add_argument("--angles", type=float, nargs=4, required=True, metavar="T")
    p_vm.add_argument(
        "--params", type=float, nargs=5,
        default=[DEMO_THUMB.a0, DEMO_THUMB.a1, DEMO_THUMB.a2, DEMO_THUMB.a3, DEMO_THUMB.d1],
        metavar="K", help="a0 a1 a2 a3 d1",
    )
    p_vm.add_argument("--half-sized", action="store_true", help="halve the register file")
    p_vm.add_argument("--sincos-cycles", type=int, default=1)
    p_vm.add_argument("--clock-mhz", type=float, default=10.3)
    p_vm.add_argument("--dump-program", action="store_true")
    p_vm.set_defaults(func=cmd_vm)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "backend", None) is not None and args.backend not in BACKENDS:
        print(f"fkemu: unknown backend {args.backend!r}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ChainParseError as e:
        print(f"fkemu: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"fkemu: domain error: {e}", file=sys.stderr)
        return 3
    except CapacityError as e:
        print(f"fkemu: capacity error: {e}", file=sys.stderr)
        return 4
    except ValueError as e:
        print(f"fkemu: {e}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
