"""Hyperbolic coaxal pencil through the unit circle T.

The pencil is fixed by its limit point L = (k' - 1)/(k' + 1) inside T. Its
oriented members are indexed by a in (-K, K]:

    C_a: center ((dn a - 1)/(dn a + 1), 0), radius 2 cn a / (1 + dn a)

with C_0 = T and C_K the point circle at L. Adding parameters mod 2K turns
the set of oriented members into a cyclic group.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .elliptic import Modulus, ModulusLike, as_modulus, incomplete_f, jacobi, quarter_period
from .errors import (
    ConcentricCircles,
    IntersectingCircles,
    NotInPencil,
    PencilError,
    TangentPencil,
)

Point = Tuple[float, float]

POSITIVE = "positive"
NEGATIVE = "negative"
UNORIENTED = "unoriented"
_ORIENTATIONS = (POSITIVE, NEGATIVE, UNORIENTED)

# frame classification tolerance, relative to the outer radius
_FRAME_TOL = 1e-12


@dataclass(frozen=True)
class OrientedCircle:
    center: Point
    radius: float
    orientation: str = UNORIENTED

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius!r}")
        if self.orientation not in _ORIENTATIONS:
            raise ValueError(f"unknown orientation {self.orientation!r}")

    @property
    def sign(self) -> int:
        return {POSITIVE: 1, NEGATIVE: -1, UNORIENTED: 0}[self.orientation]

    def to_dict(self) -> dict:
        return {
            "center": [self.center[0], self.center[1]],
            "radius": self.radius,
            "orientation": self.orientation,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OrientedCircle":
        cx, cy = d["center"]
        return cls((float(cx), float(cy)), float(d["radius"]), d.get("orientation", UNORIENTED))


UNIT_CIRCLE = OrientedCircle((0.0, 0.0), 1.0, UNORIENTED)


@dataclass(frozen=True)
class Pencil:
    m: Modulus
    K: float
    L: float
    radical_axis_x: float

    @classmethod
    def from_modulus(cls, m: ModulusLike) -> "Pencil":
        """Pencil for a given modulus. k = 0 gives the concentric family
        (L = 0, radical axis at infinity), on which the maps are rotations."""
        m = as_modulus(m)
        K = quarter_period(m)
        L = (m.k_comp - 1.0) / (m.k_comp + 1.0)
        axis = (L * L + 1.0) / (2.0 * L) if L != 0.0 else -math.inf
        return cls(m, K, L, axis)

    @property
    def k(self) -> float:
        return self.m.k

    @property
    def k_comp(self) -> float:
        return self.m.k_comp

    def normalize(self, a: float) -> float:
        return normalize_parameter(a, self.K)

    def to_dict(self) -> dict:
        return {
            "m": self.m.to_dict(),
            "K": self.K,
            "L": self.L,
            "radical_axis_x": None if math.isinf(self.radical_axis_x) else self.radical_axis_x,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Pencil":
        axis = d["radical_axis_x"]
        return cls(
            Modulus.from_dict(d["m"]),
            float(d["K"]),
            float(d["L"]),
            -math.inf if axis is None else float(axis),
        )


def normalize_parameter(a: float, K: float) -> float:
    """Representative of a mod 2K in (-K, K]; values within 1e-12 of -K map to K."""
    r = math.remainder(a, 2.0 * K)
    if r <= -K + 1e-12 * max(1.0, K):
        r = K
    return r


def pencil_from_limit_point(L: float) -> Pencil:
    L = float(L)
    if not -1.0 < L < 0.0:
        if L == 0.0:
            raise ConcentricCircles("limit point at the origin: concentric pencil (k = 0)")
        raise PencilError(f"limit point must lie in (-1, 0), got {L!r}")
    return Pencil.from_modulus(Modulus.from_k_comp((1.0 + L) / (1.0 - L)))


def circle_at(p: Pencil, a: float) -> OrientedCircle:
    """The oriented member C_a."""
    a = p.normalize(a)
    if a == 0.0:
        return UNIT_CIRCLE
    j = jacobi(a, p.m, K=p.K)
    # (dn - 1)/(dn + 1) with dn - 1 = -k^2 sn^2 / (1 + dn); no cancellation near a = 0
    center = (-(p.k * j.sn) ** 2 / (1.0 + j.dn) ** 2, 0.0)
    radius = 2.0 * abs(j.cn) / (1.0 + j.dn)
    return OrientedCircle(center, radius, POSITIVE if a > 0 else NEGATIVE)


def parameter_of(p: Pencil, c: OrientedCircle, tol: float = 1e-8) -> float:
    """Inverse of ``circle_at``. Raises NotInPencil for foreign circles."""
    x, y = c.center
    r = c.radius
    scale = max(1.0, abs(x), r)
    if abs(y) > tol * scale:
        raise NotInPencil(f"center {c.center} is off the line of centers")
    if x > 0.0:
        if x > 1e-12:
            raise NotInPencil(f"center x = {x!r} is right of the origin")
        x = 0.0
    if x < p.L - 1e-12:
        raise NotInPencil(f"center x = {x!r} is left of the limit point {p.L!r}")
    dn = (1.0 + x) / (1.0 - x)
    cn = r / (1.0 - x)
    resid = dn * dn + p.k * p.k * (1.0 - cn * cn) - 1.0
    if abs(resid) > tol:
        raise NotInPencil(f"dn^2 + k^2 sn^2 - 1 = {resid:.3e}: circle is not in this pencil")
    if p.k == 0.0:
        theta = math.acos(min(1.0, cn))
    else:
        # sn and cn share the positive factor 1/(1 - x), which drops out
        theta = math.atan2(2.0 * math.sqrt(-x) / p.k, r)
    a = incomplete_f(theta, p.m)
    if c.orientation == NEGATIVE:
        a = -a
    return p.normalize(a)


def power_of_point(x: Point, c: OrientedCircle) -> float:
    dx = x[0] - c.center[0]
    dy = x[1] - c.center[1]
    return dx * dx + dy * dy - c.radius * c.radius


def group_op(p: Pencil, a: float, b: float) -> float:
    """C_a o C_b = C_c with c = a + b mod 2K."""
    return p.normalize(a + b)


def group_inverse(p: Pencil, a: float) -> float:
    return p.normalize(-a)


def convergents(x: float, q_max: int) -> Iterator[Tuple[int, int]]:
    """Continued-fraction convergents p/q of x with q <= q_max."""
    a0 = math.floor(x)
    p_prev, q_prev, p, q = 1, 0, a0, 1
    yield p, q
    frac = x - a0
    while frac > 1e-16:
        x = 1.0 / frac
        ai = math.floor(x)
        frac = x - ai
        p, p_prev = ai * p + p_prev, p
        q, q_prev = ai * q + q_prev, q
        if q > q_max:
            return
        yield p, q


def order_of(p: Pencil, a: float, n_max: int, tol: float = 1e-9) -> Optional[Tuple[int, int]]:
    """Smallest n <= n_max with n a = 0 mod 2K (to within ``tol``), plus the
    winding h = round(n a / 2K). None if there is no such n."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    a = p.normalize(a)
    period = 2.0 * p.K

    def hit(n):
        return abs(math.remainder(n * a, period)) <= tol

    if n_max <= 1000:
        candidates = range(1, n_max + 1)
    else:
        # the first n to reach the tolerance is a best approximation,
        # hence a convergent denominator
        candidates = (q for _, q in convergents(a / period, n_max))
    for n in candidates:
        if hit(n):
            return n, round(n * a / period)
    return None


def _validate_order(n: int, h: int) -> None:
    if n < 2 or h < 1:
        raise ValueError(f"need n >= 2 and h >= 1, got (n, h) = ({n}, {h})")
    if n == 2:
        if h != 1:
            raise ValueError("the only element of order 2 has h = 1")
        return
    if math.gcd(h, n) != 1:
        raise ValueError(f"gcd(h, n) must be 1, got gcd({h}, {n}) = {math.gcd(h, n)}")
    if 2 * h >= n:
        raise ValueError(f"need 2h < n, got (n, h) = ({n}, {h})")


def valid_orders(n_max: int, n_min: int = 2) -> list:
    """All admissible (n, h) with n_min <= n <= n_max, sorted."""
    out = []
    for n in range(max(2, n_min), n_max + 1):
        for h in range(1, n):
            try:
                _validate_order(n, h)
            except ValueError:
                continue
            out.append((n, h))
    return out


def parameter_of_order(p: Pencil, n: int, h: int) -> float:
    """The pencil parameter a = 2hK/n of an element of order n, winding h."""
    _validate_order(n, h)
    return p.normalize(2.0 * h * p.K / n)


@dataclass(frozen=True)
class SimilarityTransform:
    """z -> scale * exp(i rotation) * z + translation."""

    rotation: float
    scale: float
    translation: Point

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @property
    def _mult(self) -> complex:
        return self.scale * cmath.exp(1j * self.rotation)

    def apply(self, pt: Point) -> Point:
        w = self._mult * complex(*pt) + complex(*self.translation)
        return (w.real, w.imag)

    def apply_circle(self, c: OrientedCircle) -> OrientedCircle:
        return OrientedCircle(self.apply(c.center), c.radius * self.scale, c.orientation)

    def inverse(self) -> "SimilarityTransform":
        inv = 1.0 / self._mult
        t = -inv * complex(*self.translation)
        return SimilarityTransform(-self.rotation, 1.0 / self.scale, (t.real, t.imag))

    def to_dict(self) -> dict:
        return {
            "rotation": self.rotation,
            "scale": self.scale,
            "translation": [self.translation[0], self.translation[1]],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SimilarityTransform":
        tx, ty = d["translation"]
        return cls(float(d["rotation"]), float(d["scale"]), (float(tx), float(ty)))


IDENTITY = SimilarityTransform(0.0, 1.0, (0.0, 0.0))


def canonical_frame(
    outer: OrientedCircle, inner: OrientedCircle
) -> Tuple[SimilarityTransform, Pencil, float]:
    """Move ``outer`` onto T and ``inner``'s center onto the negative real axis.

    Returns the transform, the pencil through the transformed pair and the
    parameter of the transformed inner circle. An unoriented inner circle is
    treated as positively oriented.
    """
    if outer.radius <= 0:
        raise PencilError("outer circle must have positive radius")
    R = outer.radius
    w = (complex(*inner.center) - complex(*outer.center)) / R
    d = abs(w)
    r = inner.radius / R
    gap = 1.0 - d - r
    if gap < -_FRAME_TOL:
        raise IntersectingCircles("inner circle is not inside the outer circle")
    if d <= _FRAME_TOL:
        raise ConcentricCircles("concentric circles: the maps reduce to rotations (k = 0)")
    if abs(gap) <= _FRAME_TOL:
        cos_alpha = (1.0 - d) / (1.0 + d)
        raise TangentPencil(
            "circles are internally tangent: tangent pencil, use the A_1 maps",
            alpha=math.acos(cos_alpha),
        )
    rotation = math.pi - cmath.phase(w)
    mult = cmath.exp(1j * rotation) / R
    t = -mult * complex(*outer.center)
    transform = SimilarityTransform(rotation, 1.0 / R, (t.real, t.imag))

    x_r = (r * r - d * d - 1.0) / (2.0 * d)
    L = 1.0 / (x_r - math.sqrt(x_r * x_r - 1.0))
    pencil = pencil_from_limit_point(L)
    orient = NEGATIVE if inner.orientation == NEGATIVE else POSITIVE
    a = parameter_of(pencil, OrientedCircle((-d, 0.0), r, orient))
    return transform, pencil, a
