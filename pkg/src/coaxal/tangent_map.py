"""Circle-induced homeomorphisms of the unit circle T.

A point of T is stored as theta with z = exp(2 i theta), theta in
(-pi/2, pi/2]. For a pencil with modulus k, the map psi_alpha sends theta to
am(F(theta) + F(alpha)); its chords (z, psi_alpha z) all touch the pencil
member C_a, a = F(alpha). The conjugated maps z -> conj(psi_alpha z) are
involutions whose chords touch a circle outside T.

For the tangent pencil (the k -> 1 limit) the maps are algebraic; see the
``a1_*`` functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .elliptic import HALF_PI, amplitude, incomplete_f, jacobi
from .pencil import NEGATIVE, POSITIVE, UNORIENTED, OrientedCircle, Pencil, circle_at

_SAME_POINT_TOL = 1e-12


def reduce_theta(theta: float) -> float:
    """Representative of theta mod pi in (-pi/2, pi/2]."""
    r = math.remainder(theta, math.pi)
    if r <= -HALF_PI + 1e-15:
        r = HALF_PI
    return r


@dataclass(frozen=True)
class CirclePoint:
    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")
        object.__setattr__(self, "theta", reduce_theta(self.theta))

    @property
    def z(self) -> complex:
        return cmath.exp(2j * self.theta)

    @property
    def xy(self) -> tuple:
        z = self.z
        return (z.real, z.imag)

    @classmethod
    def from_complex(cls, z: complex) -> "CirclePoint":
        return cls(0.5 * cmath.phase(z))

    def to_dict(self) -> dict:
        return {"theta": self.theta}

    @classmethod
    def from_dict(cls, d: dict) -> "CirclePoint":
        return cls(float(d["theta"]))


@dataclass(frozen=True)
class TangentMap:
    """psi_alpha (or its conjugate) for one pencil.

    ``a`` is the pencil parameter F(alpha); both are kept so that maps built
    by composition carry their parameter exactly rather than through an
    am/F round trip.
    """

    pencil: Pencil
    alpha: float
    a: float
    conjugated: bool = False

    def __call__(self, z: CirclePoint) -> CirclePoint:
        return apply(self, z)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "a": self.a, "conjugated": self.conjugated}

    @classmethod
    def from_dict(cls, d: dict, pencil: Pencil) -> "TangentMap":
        return cls(pencil, float(d["alpha"]), float(d["a"]), bool(d["conjugated"]))


def psi(p: Pencil, alpha: float, conjugated: bool = False) -> TangentMap:
    """The map psi_alpha, alpha taken mod pi."""
    alpha = reduce_theta(alpha)
    return TangentMap(p, alpha, p.normalize(incomplete_f(alpha, p.m)), conjugated)


def psi_from_parameter(p: Pencil, a: float, conjugated: bool = False) -> TangentMap:
    """The map whose tangency circle is C_a."""
    a = p.normalize(a)
    alpha = HALF_PI if a == p.K else amplitude(a, p.m, K=p.K)
    return TangentMap(p, alpha, a, conjugated)


def identity(p: Pencil) -> TangentMap:
    return TangentMap(p, 0.0, 0.0, False)


def apply(f: TangentMap, z: CirclePoint) -> CirclePoint:
    p = f.pencil
    u = incomplete_f(z.theta, p.m)
    theta = amplitude(u + f.a, p.m, K=p.K)
    return CirclePoint(-theta if f.conjugated else theta)


def compose(f: TangentMap, g: TangentMap) -> TangentMap:
    """f o g (g applied first), in closed form.

    With P_a the plain map and Q_a = conj o P_a, the reflection identity
    P_a(conj w) = conj P_{-a}(w) gives
        P_a o P_b = P_{a+b},   Q_a o P_b = Q_{a+b},
        P_a o Q_b = Q_{b-a},   Q_a o Q_b = P_{b-a}.
    """
    if f.pencil != g.pencil:
        raise ValueError("cannot compose maps from different pencils")
    if not f.conjugated:
        c = g.a + f.a if not g.conjugated else g.a - f.a
    else:
        c = f.a + g.a if not g.conjugated else g.a - f.a
    conj = f.conjugated != g.conjugated
    return psi_from_parameter(f.pencil, c, conj)


def compose_all(p: Pencil, maps) -> TangentMap:
    """maps[-1] o ... o maps[0]."""
    out = identity(p)
    for f in maps:
        out = compose(f, out)
    return out


def inverse(f: TangentMap) -> TangentMap:
    if f.conjugated:
        return f
    return psi_from_parameter(f.pencil, -f.a)


def chord_distance(z1: CirclePoint, z2: CirclePoint, x3: float) -> float:
    """Distance from the real point x3 to the line through z1, z2 on T."""
    if abs(math.remainder(z1.theta - z2.theta, math.pi)) <= _SAME_POINT_TOL:
        raise ValueError("chord endpoints coincide")
    w1, w2 = z1.z, z2.z
    return 0.5 * abs(x3 * (1.0 + w1 * w2) - (w1 + w2))


def _cross(u: complex, v: complex) -> float:
    return u.real * v.imag - u.imag * v.real


def chord_tangency_residual(z1: CirclePoint, z2: CirclePoint, circle: OrientedCircle) -> float:
    """|distance(center, chord line) - radius| for a circle centered on the real axis."""
    return abs(chord_distance(z1, z2, circle.center[0]) - circle.radius)


@dataclass(frozen=True)
class TangencyReport:
    """Outcome of checking one chord (z, f z) against C_a.

    ``side`` is "right" when the directed chord runs along the right-hand
    side of the positively oriented circle C_a, which puts the center to the
    left of the chord (``cross`` > 0). ``cross`` is
    (z2 - z1) x (center - z1).
    """

    distance_error: float
    side: str
    cross: float
    ok: bool


def side_of_chord(z1: CirclePoint, z2: CirclePoint, circle: OrientedCircle) -> tuple:
    w1, w2 = z1.z, z2.z
    cr = _cross(w2 - w1, complex(*circle.center) - w1)
    return ("right" if cr > 0 else "left"), cr


def tangency_check(f: TangentMap, z: CirclePoint, tol: float = 1e-9, *, reverse: bool = False) -> TangencyReport:
    """Check that the chord (z, f z) touches C_a with the circle on its left.

    ``reverse`` checks the chord (f z, z) instead; it is tangent as well but
    lies on the other side.
    """
    if f.conjugated:
        raise ValueError("tangency_check applies to plain maps; see conjugate_tangency_circle")
    if not 0.0 < f.alpha <= HALF_PI:
        raise ValueError(f"alpha must lie in (0, pi/2], got {f.alpha!r}")
    circle = circle_at(f.pencil, f.a)
    z1, z2 = z, apply(f, z)
    if reverse:
        z1, z2 = z2, z1
    err = chord_tangency_residual(z1, z2, circle)
    side, cr = side_of_chord(z1, z2, circle)
    ok = err <= tol and (side == "right" or circle.radius == 0.0)
    return TangencyReport(err, side, cr, ok)


def tangent_chord_endpoint(z1: CirclePoint, circle: OrientedCircle) -> CirclePoint:
    """Second intersection with T of a tangent from z1 to ``circle``.

    A positively oriented circle gets the tangent that keeps it on the left
    of the directed chord, a negatively oriented one the tangent that keeps
    it on the right. A point circle gets the line through it.
    """
    P = z1.z
    c = complex(*circle.center)
    r = circle.radius
    if r == 0.0:
        touch = c
    else:
        dv = P - c
        dist = abs(dv)
        if dist <= r:
            raise ValueError("start point is not outside the circle")
        phi = cmath.phase(dv)
        beta = math.acos(r / dist)
        want = -1.0 if circle.orientation == NEGATIVE else 1.0
        touch = None
        for s in (1.0, -1.0):
            t = c + r * cmath.exp(1j * (phi + s * beta))
            if _cross(t - P, c - P) * want > 0:
                touch = t
                break
        if touch is None:
            raise ValueError("degenerate tangent construction")
    d = touch - P
    t = -2.0 * (P.conjugate() * d).real / (abs(d) ** 2)
    return CirclePoint.from_complex(P + t * d)


def conjugate_tangency_circle(p: Pencil, a: float) -> OrientedCircle:
    """Circle touched by every chord (z, conj(psi_alpha z)), a = F(alpha).

    Center (dn a + 1)/(dn a - 1) on the real axis, radius 2 cn a / (1 - dn a);
    it lies outside T, beyond the radical axis.
    """
    a = p.normalize(a)
    if a == 0.0:
        raise ValueError("a = 0 has no conjugate tangency circle (dn a = 1)")
    j = jacobi(a, p.m, K=p.K)
    one_minus_dn = (p.k * j.sn) ** 2 / (1.0 + j.dn)
    center = (-(1.0 + j.dn) / one_minus_dn, 0.0)
    radius = 2.0 * abs(j.cn) / one_minus_dn
    return OrientedCircle(center, radius, POSITIVE if a > 0 else NEGATIVE)


# --- tangent pencil (k = 1 limit) -----------------------------------------


def _check_a1_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not -HALF_PI < alpha < HALF_PI:
        raise ValueError(f"A_1 parameter must lie in (-pi/2, pi/2), got {alpha!r}")
    return alpha


def a1_apply(alpha: float, z: CirclePoint) -> CirclePoint:
    """Tangent-pencil map: cos t' = cos a cos t / (1 + sin a sin t),
    sin t' = (sin a + sin t) / (1 + sin a sin t)."""
    alpha = _check_a1_alpha(alpha)
    sa, ca = math.sin(alpha), math.cos(alpha)
    st, ct = math.sin(z.theta), math.cos(z.theta)
    den = 1.0 + sa * st
    return CirclePoint(math.atan2((sa + st) / den, ca * ct / den))


def a1_compose(alpha: float, beta: float) -> float:
    """gamma with psi_gamma = psi_alpha o psi_beta in the tangent pencil."""
    alpha = _check_a1_alpha(alpha)
    beta = _check_a1_alpha(beta)
    sa, ca = math.sin(alpha), math.cos(alpha)
    sb, cb = math.sin(beta), math.cos(beta)
    # the common positive denominator 1 + sa sb cancels inside atan2
    return math.atan2(sa + sb, ca * cb)


def a1_circle(alpha: float) -> OrientedCircle:
    """C_{1,alpha}: internally tangent to T at (-1, 0)."""
    alpha = _check_a1_alpha(alpha)
    if alpha == 0.0:
        return OrientedCircle((0.0, 0.0), 1.0, UNORIENTED)
    c = math.cos(alpha)
    return OrientedCircle(((c - 1.0) / (c + 1.0), 0.0), 2.0 * c / (c + 1.0), POSITIVE if alpha > 0 else NEGATIVE)
