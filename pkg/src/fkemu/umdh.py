"""Four-joint thumb forward kinematics and a micro-coded FK-processor VM.

The pose matrix has twelve non-constant entries (the top three rows); the
naive path evaluates each entry independently, while the scheduled program
reuses the compound angles t2+t3 and t2+t3+t4, the four sin/cos pairs, and
the shared reach term, cutting the arithmetic-operation count by more than
half.  Operation counting convention, used by both paths: one fused
(cos, sin) pair costs 1, each add/subtract/multiply costs 1, each unary
negation costs 1 (it executes as a subtract from the zero register), and
data movement (LOADK/MOV/STORE) costs 0.

The VM is single-issue: one functional-unit dispatch per cycle, with a
configurable cycle cost for the cosine/sine unit.  SINCOS writes cos to
dst and sin to dst+1.  Registers r0..r3 hold the four joint angles at
entry; the constant pool holds the five loaded constants plus 0.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dh import DhJoint, ROTARY

HALF_PI = math.pi / 2


class CapacityError(RuntimeError):
    """Program needs more registers than the configured file provides."""


@dataclass(frozen=True)
class UmdhParams:
    """The five constants loaded before execution."""

    a0: float
    a1: float
    a2: float
    a3: float
    d1: float

    def pool(self) -> tuple[float, ...]:
        return (self.a0, self.a1, self.a2, self.a3, self.d1, 0.0)


CONST_NAMES = ("a0", "a1", "a2", "a3", "d1", "zero")

LOADK = "LOADK"
SINCOS = "SINCOS"
ADD = "ADD"
SUB = "SUB"
MUL = "MUL"
MOV = "MOV"
STORE = "STORE"

_ARITH = frozenset((SINCOS, ADD, SUB, MUL))


@dataclass(frozen=True)
class FkInstr:
    op: str
    dst: int
    src1: int = 0
    src2: int = 0

    def text(self) -> str:
        if self.op == LOADK:
            return f"LOADK r{self.dst} k{self.src1}"
        if self.op == SINCOS:
            return f"SINCOS r{self.dst} r{self.src1}"
        if self.op == MOV:
            return f"MOV r{self.dst} r{self.src1}"
        if self.op == STORE:
            return f"STORE m{self.dst} r{self.src1}"
        return f"{self.op} r{self.dst} r{self.src1} r{self.src2}"


@dataclass(frozen=True)
class FkProgram:
    """Straight-line instruction sequence plus the output register map.

    outputs lists twelve register ids, row-major over the top three rows
    of the pose matrix.
    """

    instrs: tuple[FkInstr, ...]
    outputs: tuple[int, ...]

    @property
    def arith_ops(self) -> int:
        return sum(1 for i in self.instrs if i.op in _ARITH)

    @property
    def max_register(self) -> int:
        top = 3  # r0..r3 carry the angles
        for ins in self.instrs:
            top = max(top, ins.dst + (1 if ins.op == SINCOS else 0))
            if ins.op not in (LOADK, STORE):
                top = max(top, ins.src1)
            if ins.op in (ADD, SUB, MUL):
                top = max(top, ins.src2)
            if ins.op == SINCOS:
                top = max(top, ins.src1 + 0)
        return max(top, max(self.outputs))

    def to_text(self) -> str:
        lines = ["# four-joint thumb pose, straight-line schedule"]
        lines += [ins.text() for ins in self.instrs]
        lines.append("# outputs " + " ".join(f"r{r}" for r in self.outputs))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class VmConfig:
    registers: int = 32
    half_sized: bool = False
    sincos_cycles: int = 1
    trig: str = "exact"  # exact | cordic | taylor | lut
    table: object = None  # SinTable when trig == "lut"

    @property
    def capacity(self) -> int:
        return self.registers // 2 if self.half_sized else self.registers


class _OpCounter:
    """Scalar evaluation with the declared operation-counting convention."""

    def __init__(self) -> None:
        self.count = 0

    def sincos(self, a: float) -> tuple[float, float]:
        self.count += 1
        return math.cos(a), math.sin(a)

    def add(self, a: float, b: float) -> float:
        self.count += 1
        return a + b

    def mul(self, a: float, b: float) -> float:
        self.count += 1
        return a * b

    def neg(self, a: float) -> float:
        self.count += 1
        return -a


def umdh_t04_naive(
    t1: float, t2: float, t3: float, t4: float, p: UmdhParams
) -> tuple[np.ndarray, int]:
    """Per-entry evaluation with no term sharing; returns (pose, op count)."""
    ops = _OpCounter()

    def c234_pair():
        return ops.sincos(ops.add(ops.add(t2, t3), t4))

    def reach(c1):
        _, _ = None, None
        c2, _ = ops.sincos(t2)
        c23, _ = ops.sincos(ops.add(t2, t3))
        inner = ops.add(ops.add(p.a1, ops.mul(p.a2, c2)), ops.mul(p.a3, c23))
        return ops.mul(c1, inner)

    # row 0
    c1, _ = ops.sincos(t1)
    c234, _ = c234_pair()
    r00 = ops.mul(c1, c234)

    c1, _ = ops.sincos(t1)
    _, s234 = c234_pair()
    r01 = ops.neg(ops.mul(c1, s234))

    _, s1 = ops.sincos(t1)
    r02 = s1

    c1, _ = ops.sincos(t1)
    r03 = ops.add(p.a0, reach(c1))

    # row 1
    _, s1 = ops.sincos(t1)
    c234, _ = c234_pair()
    r10 = ops.mul(s1, c234)

    _, s1 = ops.sincos(t1)
    _, s234 = c234_pair()
    r11 = ops.neg(ops.mul(s1, s234))

    c1, _ = ops.sincos(t1)
    r12 = ops.neg(c1)

    _, s1 = ops.sincos(t1)
    r13 = reach(s1)

    # row 2
    _, s234 = c234_pair()
    r20 = s234

    c234, _ = c234_pair()
    r21 = c234

    _, s2 = ops.sincos(t2)
    _, s23 = ops.sincos(ops.add(t2, t3))
    r23 = ops.add(ops.add(ops.mul(p.a2, s2), ops.mul(p.a3, s23)), p.d1)

    pose = np.array([
        [r00, r01, r02, r03],
        [r10, r11, r12, r13],
        [r20, r21, 0.0, r23],
        [0.0, 0.0, 0.0, 1.0],
    ])
    return pose, ops.count


def umdh_program(p: UmdhParams) -> FkProgram:
    """Shared-term schedule: 24 arithmetic ops in 30 instructions.

    Emission is value-independent; the params bind at run time through
    the constant pool.
    """
    del p  # constants bind by slot at execution
    k = [FkInstr(LOADK, 4 + slot, slot) for slot in range(6)]
    body = [
        FkInstr(ADD, 10, 1, 2),      # t23
        FkInstr(ADD, 11, 10, 3),     # t234
        FkInstr(SINCOS, 12, 0),      # c1/s1
        FkInstr(SINCOS, 14, 1),      # c2/s2
        FkInstr(SINCOS, 16, 10),     # c23/s23
        FkInstr(SINCOS, 18, 11),     # c234/s234
        FkInstr(MUL, 20, 12, 18),    # c1*c234
        FkInstr(MUL, 21, 12, 19),
        FkInstr(SUB, 21, 9, 21),     # -c1*s234
        FkInstr(MUL, 22, 13, 18),    # s1*c234
        FkInstr(MUL, 23, 13, 19),
        FkInstr(SUB, 23, 9, 23),     # -s1*s234
        FkInstr(SUB, 24, 9, 12),     # -c1
        FkInstr(MUL, 25, 6, 14),     # a2*c2
        FkInstr(MUL, 26, 7, 16),     # a3*c23
        FkInstr(ADD, 27, 5, 25),
        FkInstr(ADD, 27, 27, 26),    # reach = a1 + a2*c2 + a3*c23
        FkInstr(MUL, 28, 12, 27),
        FkInstr(ADD, 28, 4, 28),     # a0 + c1*reach
        FkInstr(MUL, 29, 13, 27),    # s1*reach
        FkInstr(MUL, 25, 6, 15),     # a2*s2 (register reuse)
        FkInstr(MUL, 26, 7, 17),     # a3*s23
        FkInstr(ADD, 30, 25, 26),
        FkInstr(ADD, 30, 30, 8),     # a2*s2 + a3*s23 + d1
    ]
    outputs = (20, 21, 13, 28, 22, 23, 24, 29, 19, 18, 9, 30)
    return FkProgram(tuple(k + body), outputs)


def _trig(hw: VmConfig, angle: float) -> tuple[float, float]:
    if hw.trig == "exact":
        return math.cos(angle), math.sin(angle)
    if hw.trig == "cordic":
        from .cordic import DEFAULT_CONFIG, sincos_cordic
        from .fixedpoint import fx_from_real

        c, s = sincos_cordic(fx_from_real(angle, DEFAULT_CONFIG.fmt))
        return c.real, s.real
    if hw.trig == "taylor":
        from .taylor import taylor_sincos

        return taylor_sincos(angle)
    if hw.trig == "lut":
        from .lut import lut_sincos

        if hw.table is None:
            raise ValueError("lut trig needs a table")
        return lut_sincos(angle, hw.table)
    raise ValueError(f"bad trig backend {hw.trig!r}")


def vm_run(
    prog: FkProgram,
    t1: float,
    t2: float,
    t3: float,
    t4: float,
    p: UmdhParams,
    hw: VmConfig = VmConfig(),
) -> tuple[np.ndarray, int]:
    """Execute a program: one dispatch per cycle, returns (pose, cycles)."""
    need = prog.max_register + 1
    if need > hw.capacity:
        raise CapacityError(
            f"program needs {need} registers, file provides {hw.capacity}"
            f"{' (half-sized)' if hw.half_sized else ''}"
        )
    pool = p.pool()
    regs = [0.0] * hw.capacity
    regs[0:4] = [t1, t2, t3, t4]
    mem: dict[int, float] = {}
    cycles = 0
    for ins in prog.instrs:
        if ins.op == LOADK:
            regs[ins.dst] = pool[ins.src1]
        elif ins.op == SINCOS:
            c, s = _trig(hw, regs[ins.src1])
            regs[ins.dst] = c
            regs[ins.dst + 1] = s
            cycles += hw.sincos_cycles - 1
        elif ins.op == ADD:
            regs[ins.dst] = regs[ins.src1] + regs[ins.src2]
        elif ins.op == SUB:
            regs[ins.dst] = regs[ins.src1] - regs[ins.src2]
        elif ins.op == MUL:
            regs[ins.dst] = regs[ins.src1] * regs[ins.src2]
        elif ins.op == MOV:
            regs[ins.dst] = regs[ins.src1]
        elif ins.op == STORE:
            mem[ins.dst] = regs[ins.src1]
        else:
            raise ValueError(f"bad opcode {ins.op!r}")
        cycles += 1
    vals = [regs[r] for r in prog.outputs]
    pose = np.array([
        vals[0:4],
        vals[4:8],
        vals[8:12],
        [0.0, 0.0, 0.0, 1.0],
    ])
    return pose, cycles


def clock_time(cycles: int, f_mhz: float = 10.3) -> float:
    """Microseconds for a cycle count at the given clock."""
    if cycles < 0:
        raise ValueError("cycles must be >= 0")
    return cycles / f_mhz


def umdh_chain(t1: float, t2: float, t3: float, t4: float, p: UmdhParams) -> list[DhJoint]:
    """DH chain reproducing the closed-form pose: a fixed base offset of a0
    along x, then theta1 with a half-turn twist, then three planar joints."""
    return [
        DhJoint(ROTARY, 0.0, 0.0, p.a0, 0.0),
        DhJoint(ROTARY, t1, p.d1, p.a1, HALF_PI),
        DhJoint(ROTARY, t2, 0.0, p.a2, 0.0),
        DhJoint(ROTARY, t3, 0.0, p.a3, 0.0),
        DhJoint(ROTARY, t4, 0.0, 0.0, 0.0),
    ]
