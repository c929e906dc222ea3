"""Real-argument Jacobi elliptic kernel.

``incomplete_f`` is the elliptic integral of the first kind

    F(theta, k) = int_0^theta dt / sqrt(1 - k^2 sin^2 t)

evaluated through Carlson's symmetric form R_F after reducing ``theta``
to [-pi/2, pi/2] with the quasi-period law F(theta + n pi) = F(theta) + 2nK.
``amplitude`` inverts it, and sn/cn/dn are read off the amplitude.

``oracle_f_quadrature`` integrates the same integrand by adaptive Simpson
and shares no code with the fast path; tests use it as the reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

HALF_PI = 0.5 * math.pi

_RF_ERRTOL = (3.0 * 2.220446049250313e-16) ** (-1.0 / 6.0)


class QuadratureError(ArithmeticError):
    """Adaptive quadrature exhausted its depth or interval budget."""


@dataclass(frozen=True)
class Modulus:
    """Modulus pair (k, k') with k^2 + k'^2 = 1.

    Both members are stored so that the one supplied by the caller keeps
    full precision; the other is formed as sqrt((1 - x)(1 + x)).
    """

    k: float
    k_comp: float

    def __post_init__(self):
        for name in ("k", "k_comp"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0 or v > 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
        if abs(self.k * self.k + self.k_comp * self.k_comp - 1.0) > 4e-15:
            raise ValueError(f"k^2 + k'^2 != 1 for ({self.k!r}, {self.k_comp!r})")

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        k = float(k)
        if not 0.0 <= k <= 1.0:
            raise ValueError(f"k must lie in [0, 1], got {k!r}")
        return cls(k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_k_comp(cls, k_comp: float) -> "Modulus":
        k_comp = float(k_comp)
        if not 0.0 <= k_comp <= 1.0:
            raise ValueError(f"k' must lie in [0, 1], got {k_comp!r}")
        return cls(math.sqrt((1.0 - k_comp) * (1.0 + k_comp)), k_comp)

    def to_dict(self) -> dict:
        return {"k": self.k, "k_comp": self.k_comp}

    @classmethod
    def from_dict(cls, d: dict) -> "Modulus":
        return cls(float(d["k"]), float(d["k_comp"]))


ModulusLike = Union[Modulus, float]


def as_modulus(m: ModulusLike) -> Modulus:
    if isinstance(m, Modulus):
        return m
    return Modulus.from_k(m)


def _check_open(m: Modulus) -> None:
    # k = 1 is the tangent pencil; it has no finite K and lives in tangent_map.a1_*
    if m.k_comp == 0.0:
        raise ValueError("k = 1 is not supported here (K diverges); use the A_1 maps")


def _check_finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class JacobiTriple:
    cn: float
    sn: float
    dn: float


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral R_F(x, y, z) for nonnegative arguments,
    at most one of which is zero."""
    if min(x, y, z) < 0.0:
        raise ValueError("R_F arguments must be nonnegative")
    if (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise ValueError("R_F diverges with two zero arguments")
    x0, y0 = x, y
    a0 = (x + y + z) / 3.0
    q = _RF_ERRTOL * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    scale = 1.0
    while q * scale >= abs(a):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        scale *= 0.25
    dx = (a0 - x0) * scale / a
    dy = (a0 - y0) * scale / a
    dz = -(dx + dy)
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (
        1.0
        - e2 / 10.0
        + e3 / 14.0
        + e2 * e2 / 24.0
        - 3.0 * e2 * e3 / 44.0
        - 5.0 * e2 * e2 * e2 / 208.0
        + 3.0 * e3 * e3 / 104.0
        + e2 * e2 * e3 / 16.0
    ) / math.sqrt(a)


def _delta2(s: float, c: float, m: Modulus) -> float:
    """1 - k^2 sin^2; the c^2 + k'^2 s^2 form keeps precision as k -> 1."""
    if m.k * m.k <= 0.5:
        return 1.0 - (m.k * s) ** 2
    return c * c + (m.k_comp * s) ** 2


def _f_principal(phi: float, m: Modulus) -> float:
    """F(phi, k) for |phi| <= pi/2."""
    s = math.sin(phi)
    c = math.cos(phi)
    if s == 0.0:
        return 0.0
    return s * carlson_rf(c * c, _delta2(s, c, m), 1.0)


def quarter_period(m: ModulusLike) -> float:
    """Complete integral K(k) = pi / (2 AGM(1, k'))."""
    m = as_modulus(m)
    _check_open(m)
    a, b = 1.0, m.k_comp
    for _ in range(64):
        if abs(a - b) <= 1e-15 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


def incomplete_f(theta: float, m: ModulusLike) -> float:
    """F(theta, k) for any finite real theta and 0 <= k < 1."""
    m = as_modulus(m)
    _check_open(m)
    theta = _check_finite(theta, "theta")
    n = round(theta / math.pi)
    r = theta - n * math.pi
    # r can land a hair outside [-pi/2, pi/2] through rounding; F is smooth there
    r = min(max(r, -HALF_PI), HALF_PI)
    f = _f_principal(r, m)
    if n:
        f += 2.0 * n * quarter_period(m)
    return f


def _dn_of_angle(theta: float, m: Modulus) -> float:
    return math.sqrt(_delta2(math.sin(theta), math.cos(theta), m))


def amplitude(u: float, m: ModulusLike, *, K: float | None = None) -> float:
    """am(u): the angle theta with F(theta, k) = u.

    The argument is reduced to [-K, K] with am(u + 2nK) = am(u) + n pi and
    the principal branch is solved by safeguarded Newton on F(theta) - u,
    whose derivative 1/dn is bounded by 1/k'.
    """
    m = as_modulus(m)
    _check_open(m)
    u = _check_finite(u, "u")
    if K is None:
        K = quarter_period(m)
    n = round(u / (2.0 * K))
    v = u - 2.0 * n * K
    if v == 0.0:
        return n * math.pi
    if m.k == 0.0:
        return n * math.pi + v

    lo, hi = -HALF_PI, HALF_PI
    theta = HALF_PI * v / K
    theta = min(max(theta, lo), hi)
    for _ in range(100):
        resid = _f_principal(theta, m) - v
        if resid > 0.0:
            hi = theta
        elif resid < 0.0:
            lo = theta
        else:
            break
        step = resid * _dn_of_angle(theta, m)
        nxt = theta - step
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - theta) <= 1e-16 * max(1.0, abs(theta)):
            theta = nxt
            break
        theta = nxt
    return n * math.pi + theta


def jacobi(u: float, m: ModulusLike, *, K: float | None = None) -> JacobiTriple:
    """(cn u, sn u, dn u) via the amplitude."""
    m = as_modulus(m)
    theta = amplitude(u, m, K=K)
    s = math.sin(theta)
    c = math.cos(theta)
    return JacobiTriple(cn=c, sn=s, dn=math.sqrt(_delta2(s, c, m)))


def _addition_parts(u, v, m):
    m = as_modulus(m)
    ju = jacobi(u, m)
    jv = jacobi(v, m)
    den = 1.0 - m.k * m.k * ju.sn * ju.sn * jv.sn * jv.sn
    return ju, jv, den


def addition_cn(u: float, v: float, m: ModulusLike) -> float:
    """cn(u + v) from the addition law."""
    ju, jv, den = _addition_parts(u, v, m)
    return (ju.cn * jv.cn - ju.sn * jv.sn * ju.dn * jv.dn) / den


def addition_sn(u: float, v: float, m: ModulusLike) -> float:
    """sn(u + v) from the addition law."""
    ju, jv, den = _addition_parts(u, v, m)
    return (ju.sn * jv.cn * jv.dn + jv.sn * ju.cn * ju.dn) / den


def oracle_f_quadrature(
    theta: float, m: ModulusLike, tol: float = 1e-12, max_depth: int = 60
) -> float:
    """Adaptive Simpson quadrature of the first-kind integrand on [0, theta].

    Reference implementation for tests only: no range reduction, no Carlson
    forms. Every active panel of a bisection level is processed at once.
    A panel is accepted when its Simpson refinement changes by at most
    15 times its share of ``tol``; acceptance waits until depth 4 so that
    a coarse grid cannot alias the periodic integrand.
    """
    m = as_modulus(m)
    _check_open(m)
    theta = _check_finite(theta, "theta")
    if tol < 1e-14:
        raise ValueError("tol must be >= 1e-14")
    if theta == 0.0:
        return 0.0
    sign = 1.0 if theta > 0 else -1.0
    span = abs(theta)
    k2 = m.k * m.k

    def f(t):
        s = np.sin(t)
        return 1.0 / np.sqrt(1.0 - k2 * s * s)

    a = np.array([0.0])
    b = np.array([span])
    fa, fb = f(a), f(b)
    c = 0.5 * (a + b)
    fc = f(c)
    whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb)
    ptol = np.array([tol])
    total = 0.0
    for depth in range(max_depth + 1):
        lm = 0.5 * (a + c)
        rm = 0.5 * (c + b)
        flm, frm = f(lm), f(rm)
        left = (c - a) / 6.0 * (fa + 4.0 * flm + fc)
        right = (b - c) / 6.0 * (fc + 4.0 * frm + fb)
        err = left + right - whole
        done = np.abs(err) <= 15.0 * ptol if depth >= 4 else np.zeros(a.shape, bool)
        if done.any():
            total += float(np.sum((left + right + err / 15.0)[done]))
        todo = ~done
        if not todo.any():
            return sign * total
        if todo.sum() > 2_000_000:
            raise QuadratureError("interval budget exhausted")
        a, c, b = a[todo], c[todo], b[todo]
        fa, fc, fb = fa[todo], fc[todo], fb[todo]
        lm, rm, flm, frm = lm[todo], rm[todo], flm[todo], frm[todo]
        left, right, ptol = left[todo], right[todo], ptol[todo]
        a = np.concatenate([a, c])
        b = np.concatenate([c, b])
        c = np.concatenate([lm, rm])
        fa, fb = np.concatenate([fa, fc]), np.concatenate([fc, fb])
        fc = np.concatenate([flm, frm])
        whole = np.concatenate([left, right])
        ptol = np.concatenate([ptol, ptol]) * 0.5
    raise QuadratureError(f"no convergence within depth {max_depth}")
