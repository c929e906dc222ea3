"""Command-line front end.

Subcommands print one JSON document on stdout; diagnostics go to stderr.
Exit codes: 0 success, 2 invalid input, 3 numerical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from typing import List, Optional

from . import elliptic
from .elliptic import Modulus, amplitude, incomplete_f, jacobi, quarter_period
from .errors import ClosureInconsistency, PencilError, TangentPencil
from .pencil import (
    OrientedCircle,
    Pencil,
    canonical_frame,
    circle_at,
    order_of,
    parameter_of_order,
    pencil_from_limit_point,
    valid_orders,
)
from .poncelet import (
    EMPIRICAL_TOL,
    TANGENCY_TOL,
    closure_test,
    diagonal_residuals,
    interscribed_ngon,
    jacobi_ratio,
    side_residuals,
)
from .svg import RenderSpec, build_scene, render_svg
from .tangent_map import (
    CirclePoint,
    a1_apply,
    a1_circle,
    apply,
    chord_tangency_residual,
    conjugate_tangency_circle,
    psi,
    psi_from_parameter,
    tangency_check,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

# options whose values may legitimately start with '-'
_VALUE_OPTS = {"--outer", "--inner", "--limit-point", "--theta", "--u", "--alpha", "--start-theta", "--conjugate"}

_K_MULTIPLE = re.compile(r"^\s*([+-])?\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*K\s*$")


class InputError(ValueError):
    kind = "invalid_input"


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _sig16(x: float) -> float:
    return float(f"{x:.16g}")


def _modulus(k: float) -> Modulus:
    if not 0.0 <= k < 1.0:
        raise InputError(f"--k must lie in [0, 1), got {k!r}")
    return Modulus.from_k(k)


def _parse_circle(text: str) -> OrientedCircle:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError(f"circle must be 'cx,cy,r', got {text!r}")
    try:
        cx, cy, r = (float(s) for s in parts)
    except ValueError:
        raise InputError(f"circle must be 'cx,cy,r', got {text!r}") from None
    if r < 0 or not all(math.isfinite(v) for v in (cx, cy, r)):
        raise InputError(f"bad circle {text!r}")
    return OrientedCircle((cx, cy), r)


def _parse_u(text: str, K: float) -> float:
    """A float, or a multiple of the quarter period such as 'K', '0.5K', '-2*K'."""
    m = _K_MULTIPLE.match(text)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        return sign * float(m.group(2) or 1.0) * K
    try:
        return float(text)
    except ValueError:
        raise InputError(f"cannot parse elliptic argument {text!r}") from None


def _point_json(z: CirclePoint) -> dict:
    x, y = z.xy
    return {"theta": z.theta, "x": x, "y": y}


def cmd_ell(args) -> int:
    m = _modulus(args.k)
    K = quarter_period(m)
    fn = args.fn
    if fn == "K":
        value = K
    elif fn == "F":
        if args.theta is None:
            raise InputError("--fn F needs --theta")
        value = incomplete_f(args.theta, m)
    else:
        if args.u is None:
            raise InputError(f"--fn {fn} needs --u")
        u = _parse_u(args.u, K)
        if fn == "am":
            value = amplitude(u, m, K=K)
        else:
            value = getattr(jacobi(u, m, K=K), fn)
    _emit({"fn": fn, "k": m.k, "value": _sig16(value)})
    return EXIT_OK


def cmd_pencil(args) -> int:
    out = {}
    if args.limit_point is not None:
        if args.outer or args.inner:
            raise InputError("give either --limit-point or --outer/--inner")
        p = pencil_from_limit_point(args.limit_point)
    else:
        if not (args.outer and args.inner):
            raise InputError("need --limit-point or both --outer and --inner")
        outer, inner = _parse_circle(args.outer), _parse_circle(args.inner)
        transform, p, a = canonical_frame(outer, inner)
        out["transform"] = transform.to_dict()
        out["inner"] = {
            "a": a,
            "a_over_K": a / p.K,
            "circle": circle_at(p, a).to_dict(),
            "alpha": psi_from_parameter(p, a).alpha,
        }
        hit = order_of(p, a, args.n_max, args.tol)
        out["order"] = None if hit is None else {"n": hit[0], "h": hit[1]}
    out = {"pencil": p.to_dict(), "k": p.k, "k'": p.k_comp, **out}
    _emit(out)
    return EXIT_OK


def cmd_map(args) -> int:
    z = CirclePoint(args.theta)
    if args.a1:
        w = z
        for _ in range(args.steps):
            w = a1_apply(args.alpha, w)
        out = {"group": "A_1", "alpha": args.alpha, "input": _point_json(z), "output": _point_json(w)}
        if args.alpha != 0.0 and args.steps == 1 and w.theta != z.theta:
            out["tangency_residual"] = chord_tangency_residual(z, w, a1_circle(args.alpha))
        _emit(out)
        return EXIT_OK
    p = Pencil.from_modulus(_modulus(args.k))
    f = psi(p, args.alpha, conjugated=args.conjugate)
    w = z
    for _ in range(args.steps):
        w = apply(f, w)
    out = {
        "group": "B_k" if args.conjugate else "A_k",
        "pencil": p.to_dict(),
        "map": f.to_dict(),
        "input": _point_json(z),
        "output": _point_json(w),
    }
    if args.steps == 1 and f.a != 0.0:
        if f.conjugated:
            c = conjugate_tangency_circle(p, f.a)
            out["tangent_circle"] = c.to_dict()
            out["tangency_residual"] = chord_tangency_residual(z, w, c)
        elif f.alpha > 0.0:
            rep = tangency_check(f, z)
            out["tangent_circle"] = circle_at(p, f.a).to_dict()
            out["tangency_residual"] = rep.distance_error
            out["side"] = rep.side
    _emit(out)
    return EXIT_OK


def _diagonal_report(p: Pencil, poly, n: int) -> list:
    rows = []
    for step in range(2, n - 1):
        c, res = diagonal_residuals(p, poly, step)
        rows.append(
            {
                "step": step,
                "c": c,
                "c_over_K": c / p.K,
                "max_residual": max(res),
                "through_limit_point": abs(abs(c) - p.K) <= 1e-12 * p.K,
            }
        )
    return rows


def cmd_ngon(args) -> int:
    p = Pencil.from_modulus(_modulus(args.k))
    try:
        a = parameter_of_order(p, args.n, args.h)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    poly = interscribed_ngon(p, args.n, args.h, CirclePoint(args.start_theta))
    sides = side_residuals(p, poly)
    out = {
        "pencil": p.to_dict(),
        "n": args.n,
        "h": args.h,
        "a": a,
        "alpha": poly.alphas[0],
        "jacobi_ratio": jacobi_ratio(p, poly.alphas[0]),
        "inner_circle": circle_at(p, a).to_dict(),
        "polygon": poly.to_dict(),
        "closure_residual": poly.closure_residual,
        "max_side_residual": max(sides),
    }
    status = EXIT_OK
    if poly.closure_residual > EMPIRICAL_TOL or max(sides) > TANGENCY_TOL:
        status = EXIT_NUMERICAL
    elif args.diagonals:
        out["diagonals"] = _diagonal_report(p, poly, args.n)
        if any(d["max_residual"] > TANGENCY_TOL for d in out["diagonals"]):
            status = EXIT_NUMERICAL
    if args.svg:
        scene = build_scene(p, inner_a=a, polygon=poly, diagonals=args.diagonals, limit_points=True)
        out["svg"] = render_svg(scene, RenderSpec(args.svg, size=args.size))
    _emit(out)
    if status != EXIT_OK:
        print("polygon failed its closure/tangency checks", file=sys.stderr)
    return status


def cmd_scan(args) -> int:
    p = Pencil.from_modulus(_modulus(args.k))
    rows = []
    for n, h in valid_orders(args.n_max):
        a = parameter_of_order(p, n, h)
        alpha = psi_from_parameter(p, a).alpha
        rep = closure_test(p, alpha, n, starts=args.samples, tol=args.tol, seed=args.seed)
        rows.append(
            {
                "n": n,
                "h": h,
                "alpha": alpha,
                "jacobi_ratio": jacobi_ratio(p, alpha),
                "closes": rep.closes,
                "max_residual": rep.max_residual,
            }
        )
    _emit({"pencil": p.to_dict(), "seed": args.seed, "samples": args.samples, "rows": rows})
    return EXIT_OK


def cmd_render(args) -> int:
    inner_a = None
    if args.outer or args.inner:
        if not (args.outer and args.inner):
            raise InputError("--outer and --inner go together")
        _, p, inner_a = canonical_frame(_parse_circle(args.outer), _parse_circle(args.inner))
    else:
        p = Pencil.from_modulus(_modulus(args.k))
    poly = None
    if args.n is not None:
        try:
            inner_a = parameter_of_order(p, args.n, args.h)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        poly = interscribed_ngon(p, args.n, args.h, CirclePoint(args.start_theta))
    conj = None
    if args.conjugate is not None:
        ca = _parse_u(args.conjugate, p.K)
        circle = conjugate_tangency_circle(p, ca)
        f = psi_from_parameter(p, ca, conjugated=True)
        chords = []
        for i in range(args.chords):
            z = CirclePoint(-math.pi / 2 + math.pi * (i + 0.5) / args.chords)
            chords.append((z.xy, apply(f, z).xy))
        conj = (circle, chords)
    scene = build_scene(
        p,
        inner_a=inner_a,
        polygon=poly,
        diagonals=args.diagonals,
        pencil_circles=args.pencil_circles,
        radical_axis=args.radical_axis,
        limit_points=args.limit_points,
        conjugate=conj,
    )
    path = render_svg(scene, RenderSpec(args.out, size=args.size))
    _emit(
        {
            "svg": path,
            "pencil": p.to_dict(),
            "circles": len(scene.circles),
            "segments": len(scene.segments),
            "points": len(scene.points),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coaxal", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ell", help="evaluate F, am, sn, cn, dn or K")
    p.add_argument("--fn", required=True, choices=["F", "am", "sn", "cn", "dn", "K"])
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--theta", type=float)
    p.add_argument("--u", help="elliptic argument; accepts multiples of K such as '0.5K'")
    p.set_defaults(func=cmd_ell)

    p = sub.add_parser("pencil", help="pencil from a limit point or from two circles")
    p.add_argument("--limit-point", type=float)
    p.add_argument("--outer", help="outer circle as cx,cy,r")
    p.add_argument("--inner", help="inner circle as cx,cy,r")
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("map", help="apply psi_alpha, its conjugate or an A_1 map")
    p.add_argument("--k", type=float, default=0.5)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--steps", type=int, default=1)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--conjugate", action="store_true")
    g.add_argument("--a1", action="store_true", help="tangent pencil (k = 1)")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("ngon", help="interscribed n-gon with winding h")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--start-theta", type=float, default=0.0)
    p.add_argument("--diagonals", action="store_true")
    p.add_argument("--svg")
    p.add_argument("--size", type=int, default=600)
    p.set_defaults(func=cmd_ngon)

    p = sub.add_parser("scan", help="closure check over all valid (n, h)")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--tol", type=float, default=EMPIRICAL_TOL)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("render", help="SVG figure of a pencil scene")
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=float, default=0.6)
    p.add_argument("--outer")
    p.add_argument("--inner")
    p.add_argument("--n", type=int)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--start-theta", type=float, default=0.0)
    p.add_argument("--diagonals", action="store_true")
    p.add_argument("--pencil-circles", type=int, default=0)
    p.add_argument("--radical-axis", action="store_true")
    p.add_argument("--limit-points", action="store_true")
    p.add_argument("--conjugate", help="draw the conjugate tangency circle for this parameter (e.g. 0.5K)")
    p.add_argument("--chords", type=int, default=12)
    p.add_argument("--size", type=int, default=600)
    p.set_defaults(func=cmd_render)
    return parser


def _glue_negative_values(argv: List[str]) -> List[str]:
    # argparse reads "-0.5,0,0.5" as an option flag; bind it to its option instead
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and re.match(r"^-[\d.]", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except TangentPencil as exc:
        _emit({"error": exc.kind, "message": str(exc), "a1_alpha": exc.alpha})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (PencilError, InputError) as exc:
        _emit({"error": exc.kind, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ClosureInconsistency as exc:
        _emit({"error": exc.kind, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        _emit({"error": "io", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, elliptic.QuadratureError) as exc:
        _emit({"error": "invalid_input", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
