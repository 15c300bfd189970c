"""Denavit-Hartenberg chain model in double precision.

Link transforms, the four-factor decomposition Tran(z,d)*Rot(z,theta)*
Tran(x,a)*Rot(x,alpha), chain products, and the six-joint closed-form pose
used as the arm-level oracle.  Everything here is the reference arithmetic
the emulated backends are measured against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

ROTARY = "rotary"
PRISMATIC = "prismatic"

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class DhJoint:
    """One link: joint kind plus (theta, d, a, alpha).

    Rotary joints vary theta, prismatic joints vary d; the other three are
    fixed link constants.  A prismatic link carries no a-offset in its
    translation column.
    """

    kind: str
    theta: float
    d: float
    a: float
    alpha: float

    def __post_init__(self) -> None:
        if self.kind not in (ROTARY, PRISMATIC):
            raise ValueError(f"bad joint kind {self.kind!r}")

    @property
    def a_eff(self) -> float:
        return self.a if self.kind == ROTARY else 0.0


DhChain = Sequence[DhJoint]


@dataclass(frozen=True)
class Vec4:
    """Homogeneous point (w=1) or free direction vector (w=0)."""

    x: float
    y: float
    z: float
    w: float = 1.0

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.w])

    @staticmethod
    def from_array(v: np.ndarray) -> "Vec4":
        return Vec4(float(v[0]), float(v[1]), float(v[2]), float(v[3]))


def link_from_trig(ct: float, st: float, ca: float, sa: float, a: float, d: float) -> np.ndarray:
    """Link matrix assembled from already-computed trig values."""
    return np.array([
        [ct, -ca * st, sa * st, a * ct],
        [st, ca * ct, -sa * ct, a * st],
        [0.0, sa, ca, d],
        [0.0, 0.0, 0.0, 1.0],
    ])


def link_transform(j: DhJoint) -> np.ndarray:
    """Canonical 4x4 link matrix for one joint."""
    return link_from_trig(
        math.cos(j.theta), math.sin(j.theta),
        math.cos(j.alpha), math.sin(j.alpha),
        j.a_eff, j.d,
    )


def tran(axis: str, t: float) -> np.ndarray:
    m = np.eye(4)
    m["xyz".index(axis), 3] = t
    return m


def rot(axis: str, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    m = np.eye(4)
    if axis == "z":
        m[0, 0], m[0, 1], m[1, 0], m[1, 1] = c, -s, s, c
    elif axis == "x":
        m[1, 1], m[1, 2], m[2, 1], m[2, 2] = c, -s, s, c
    elif axis == "y":
        m[0, 0], m[0, 2], m[2, 0], m[2, 2] = c, s, -s, c
    else:
        raise ValueError(f"bad axis {axis!r}")
    return m


def decompose(j: DhJoint) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Four elementary factors whose product equals link_transform(j)."""
    return (
        tran("z", j.d),
        rot("z", j.theta),
        tran("x", j.a_eff),
        rot("x", j.alpha),
    )


def chain_pose(chain: DhChain) -> np.ndarray:
    """Left-to-right product of link transforms: the end-effector pose."""
    if len(chain) == 0:
        raise ValueError("empty chain")
    pose = link_transform(chain[0])
    for j in chain[1:]:
        pose = pose @ link_transform(j)
    return pose


def apply_point(mat: np.ndarray, p: Vec4) -> Vec4:
    return Vec4.from_array(mat @ p.as_array())


@dataclass(frozen=True)
class PumaParams:
    """The five link constants of the six-revolute arm."""

    d2: float
    d4: float
    d6: float
    a2: float
    a3: float


def puma_chain(thetas: Sequence[float], params: PumaParams) -> list[DhJoint]:
    """Six-joint chain whose product the closed form must reproduce."""
    if len(thetas) != 6:
        raise ValueError("need six joint angles")
    t1, t2, t3, t4, t5, t6 = thetas
    return [
        DhJoint(ROTARY, t1, 0.0, 0.0, -HALF_PI),
        DhJoint(ROTARY, t2, params.d2, params.a2, 0.0),
        DhJoint(ROTARY, t3, 0.0, params.a3, HALF_PI),
        DhJoint(ROTARY, t4, params.d4, 0.0, -HALF_PI),
        DhJoint(ROTARY, t5, 0.0, 0.0, HALF_PI),
        DhJoint(ROTARY, t6, params.d6, 0.0, 0.0),
    ]


def puma_closed_form(thetas: Sequence[float], params: PumaParams) -> np.ndarray:
    """Closed-form pose of the six-revolute arm.

    Uses the compound-angle abbreviations C23 = cos(theta2 + theta3) etc.
    Must match chain_pose(puma_chain(...)) to double-precision noise.
    """
    if len(thetas) != 6:
        raise ValueError("need six joint angles")
    t1, t2, t3, t4, t5, t6 = thetas
    c1, s1 = math.cos(t1), math.sin(t1)
    c2, s2 = math.cos(t2), math.sin(t2)
    c23, s23 = math.cos(t2 + t3), math.sin(t2 + t3)
    c4, s4 = math.cos(t4), math.sin(t4)
    c5, s5 = math.cos(t5), math.sin(t5)
    c6, s6 = math.cos(t6), math.sin(t6)
    d2, d4, d6, a2, a3 = params.d2, params.d4, params.d6, params.a2, params.a3

    nx = c1 * (c23 * (c4 * c5 * c6 - s4 * s6) - s23 * s5 * c6) - s1 * (s4 * c5 * c6 + c4 * s6)
    ny = s1 * (c23 * (c4 * c5 * c6 - s4 * s6) - s23 * s5 * c6) + c1 * (s4 * c5 * c6 + c4 * s6)
    nz = -s23 * (c4 * c5 * c6 - s4 * s6) - c23 * s5 * c6

    sx = c1 * (-c23 * (c4 * c5 * s6 + s4 * c6) + s23 * s5 * s6) - s1 * (-s4 * c5 * s6 + c4 * c6)
    sy = s1 * (-c23 * (c4 * c5 * s6 + s4 * c6) + s23 * s5 * s6) + c1 * (-s4 * c5 * s6 + c4 * c6)
    sz = s23 * (c4 * c5 * s6 + s4 * c6) + c23 * s5 * s6

    ax = c1 * (c23 * c4 * s5 + s23 * c5) - s1 * s4 * s5
    ay = s1 * (c23 * c4 * s5 + s23 * c5) + c1 * s4 * s5
    az = -s23 * c4 * s5 + c23 * c5

    reach = d6 * (c23 * c4 * s5 + s23 * c5) + s23 * d4 + a3 * c23 + a2 * c2
    px = c1 * reach - s1 * (d6 * s4 * s5 + d2)
    py = s1 * reach + c1 * (d6 * s4 * s5 + d2)
    pz = d6 * (c23 * c5 - s23 * c4 * s5) + c23 * d4 - a3 * s23 - a2 * s2

    return np.array([
        [nx, sx, ax, px],
        [ny, sy, ay, py],
        [nz, sz, az, pz],
        [0.0, 0.0, 0.0, 1.0],
    ])
