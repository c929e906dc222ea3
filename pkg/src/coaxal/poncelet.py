"""Tangent chains, closure and interscribed polygons."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .elliptic import HALF_PI, incomplete_f
from .errors import ClosureInconsistency
from .pencil import Pencil, circle_at, group_op, parameter_of_order
from .tangent_map import (
    CirclePoint,
    apply,
    chord_tangency_residual,
    psi,
    psi_from_parameter,
)

ANALYTIC_TOL = 1e-10
EMPIRICAL_TOL = 1e-8
TANGENCY_TOL = 1e-9


@dataclass(frozen=True)
class Trajectory:
    start: CirclePoint
    alphas: tuple
    vertices: tuple

    @property
    def closure_residual(self) -> float:
        return abs(self.vertices[-1].z - self.vertices[0].z)

    def to_dict(self) -> dict:
        return {
            "start": self.start.to_dict(),
            "alphas": list(self.alphas),
            "vertices": [
                {"theta": v.theta, "x": v.xy[0], "y": v.xy[1]} for v in self.vertices
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Trajectory":
        return cls(
            CirclePoint.from_dict(d["start"]),
            tuple(float(a) for a in d["alphas"]),
            tuple(CirclePoint(float(v["theta"])) for v in d["vertices"]),
        )


@dataclass(frozen=True)
class ClosureReport:
    closes: bool
    n: int
    h: Optional[int]
    max_residual: float
    gamma: Optional[float]
    analytic_residual: float = field(default=0.0)

    def to_dict(self) -> dict:
        return {
            "closes": self.closes,
            "n": self.n,
            "h": self.h,
            "max_residual": self.max_residual,
            "gamma": self.gamma,
            "analytic_residual": self.analytic_residual,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClosureReport":
        return cls(
            bool(d["closes"]),
            int(d["n"]),
            None if d["h"] is None else int(d["h"]),
            float(d["max_residual"]),
            None if d["gamma"] is None else float(d["gamma"]),
            float(d.get("analytic_residual", 0.0)),
        )


def _check_alphas(alphas):
    for a in alphas:
        if not -HALF_PI < a <= HALF_PI:
            raise ValueError(f"alpha {a!r} outside (-pi/2, pi/2]")


def trajectory(p: Pencil, start: CirclePoint, alphas: Sequence[float]) -> Trajectory:
    """Vertices P_0 = start, P_j = psi_{alpha_j}(P_{j-1})."""
    _check_alphas(alphas)
    verts = [start]
    for alpha in alphas:
        verts.append(apply(psi(p, alpha), verts[-1]))
    return Trajectory(start, tuple(float(a) for a in alphas), tuple(verts))


def composite_parameter(p: Pencil, alphas: Sequence[float]) -> float:
    c = 0.0
    for alpha in alphas:
        c = group_op(p, c, incomplete_f(alpha, p.m))
    return c


def composite_gamma(p: Pencil, alphas: Sequence[float]) -> float:
    """gamma with psi_{alpha_n} o ... o psi_{alpha_1} = psi_gamma."""
    _check_alphas(alphas)
    return psi_from_parameter(p, composite_parameter(p, alphas)).alpha


def sample_starts(count: int, seed: Optional[int] = None) -> List[CirclePoint]:
    """Start points on T.

    Without a seed: ``count`` evenly spaced thetas (offset off the grid) plus
    three starts at and next to the chart boundary theta = +-pi/2. With a
    seed: ``count`` uniform random thetas from that seed.
    """
    if seed is not None:
        rng = random.Random(seed)
        return [CirclePoint(rng.uniform(-HALF_PI, HALF_PI)) for _ in range(count)]
    pts = [CirclePoint(-HALF_PI + math.pi * (i + 0.5 * math.sqrt(2.0) - 0.5) / count) for i in range(count)]
    pts += [CirclePoint(HALF_PI), CirclePoint(HALF_PI - 1e-12), CirclePoint(-HALF_PI + 1e-12)]
    return pts


def closure_test(
    p: Pencil,
    alpha: float,
    n: int,
    starts: int = 50,
    tol: float = EMPIRICAL_TOL,
    *,
    analytic_tol: float = ANALYTIC_TOL,
    seed: Optional[int] = None,
) -> ClosureReport:
    """Decide whether n steps of psi_alpha close up.

    The analytic verdict asks n F(alpha) = 0 mod 2K; the empirical verdict
    iterates the map n times from every sampled start. They must agree.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0.0 < alpha <= HALF_PI:
        raise ValueError(f"alpha must lie in (0, pi/2], got {alpha!r}")
    f = psi(p, alpha)
    total = n * f.a
    analytic_residual = abs(math.remainder(total, 2.0 * p.K))
    analytic = analytic_residual <= analytic_tol

    worst = 0.0
    for z0 in sample_starts(starts, seed):
        z = z0
        for _ in range(n):
            z = apply(f, z)
        worst = max(worst, abs(z.z - z0.z))
    empirical = worst <= tol

    if analytic != empirical:
        raise ClosureInconsistency(
            f"closure verdicts disagree for alpha={alpha!r}, n={n}: "
            f"analytic residual {analytic_residual:.3e}, empirical {worst:.3e}"
        )
    gamma = psi_from_parameter(p, total).alpha
    h = round(total / (2.0 * p.K)) if analytic else None
    return ClosureReport(analytic, n, h, worst, gamma, analytic_residual)


def interscribed_ngon(p: Pencil, n: int, h: int, start: CirclePoint) -> Trajectory:
    """Closed n-gon inscribed in T whose sides touch C_{2hK/n}."""
    a = parameter_of_order(p, n, h)
    alpha = psi_from_parameter(p, a).alpha
    return trajectory(p, start, [alpha] * n)


def side_residuals(p: Pencil, polygon: Trajectory) -> List[float]:
    out = []
    for alpha, z1, z2 in zip(polygon.alphas, polygon.vertices, polygon.vertices[1:]):
        circle = circle_at(p, incomplete_f(alpha, p.m))
        out.append(chord_tangency_residual(z1, z2, circle))
    return out


def _common_alpha(polygon: Trajectory) -> float:
    if not polygon.alphas or any(a != polygon.alphas[0] for a in polygon.alphas):
        raise ValueError("polygon must be built from a single repeated alpha")
    return polygon.alphas[0]


def diagonal_residuals(p: Pencil, polygon: Trajectory, step: int) -> tuple:
    """(c, residuals): parameter of the step-th diagonal circle and the
    tangency residual of each vertex-to-(vertex + step) chord."""
    alpha = _common_alpha(polygon)
    n = len(polygon.alphas)
    if not 1 <= step < n:
        raise ValueError(f"step must lie in [1, {n - 1}], got {step}")
    if polygon.closure_residual > EMPIRICAL_TOL:
        raise ValueError(f"polygon is not closed (residual {polygon.closure_residual:.3e})")
    a = incomplete_f(alpha, p.m)
    c = 0.0
    for _ in range(step):
        c = group_op(p, c, a)
    circle = circle_at(p, c)
    ring = polygon.vertices[:-1]
    res = [chord_tangency_residual(ring[i], ring[(i + step) % n], circle) for i in range(n)]
    return c, res


def diagonal_tangency(p: Pencil, polygon: Trajectory, step: int, tol: float = TANGENCY_TOL) -> float:
    """Parameter c of the pencil circle touched by every step-th diagonal."""
    c, res = diagonal_residuals(p, polygon, step)
    worst = max(res)
    if worst > tol:
        raise ClosureInconsistency(f"step-{step} diagonals miss C_c by {worst:.3e}")
    return c


def jacobi_ratio(p: Pencil, alpha: float) -> float:
    """F(alpha, k) / F(pi, k); equals h/n exactly at closing parameters."""
    return incomplete_f(alpha, p.m) / (2.0 * p.K)
