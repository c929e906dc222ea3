"""Acceptance gate. Each test prints one PASS/FAIL line and asserts it."""

import json
import math
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from coaxal.cli import main
from coaxal.elliptic import (
    Modulus,
    addition_cn,
    addition_sn,
    amplitude,
    incomplete_f,
    jacobi,
    oracle_f_quadrature,
)
from coaxal.pencil import (
    OrientedCircle,
    Pencil,
    circle_at,
    group_op,
    order_of,
    parameter_of,
    parameter_of_order,
    power_of_point,
    valid_orders,
)
from coaxal.poncelet import closure_test, interscribed_ngon, jacobi_ratio, sample_starts, side_residuals
from coaxal.tangent_map import (
    CirclePoint,
    a1_apply,
    a1_circle,
    a1_compose,
    apply,
    chord_distance,
    chord_tangency_residual,
    compose,
    conjugate_tangency_circle,
    psi,
)

HALF_PI = math.pi / 2
KS = [0.2, 0.5, 0.8, 0.95]
SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")
        assert ok, detail

    return emit


def cross(u: complex, v: complex) -> float:
    return u.real * v.imag - u.imag * v.real


def test_criterion_1_kernel_against_oracle(report):
    rng = np.random.default_rng(1)
    thetas = rng.uniform(-10, 10, 10_000)
    ks = rng.uniform(0, 0.99, 10_000)
    t0 = time.perf_counter()
    err_f = err_rt = 0.0
    for theta, k in zip(thetas, ks):
        u = incomplete_f(theta, k)
        err_f = max(err_f, abs(u - oracle_f_quadrature(theta, k)))
        err_rt = max(err_rt, abs(amplitude(u, k) - theta))
    elapsed = time.perf_counter() - t0
    ok = err_f <= 1e-10 and err_rt <= 1e-10 and elapsed <= 10.0
    report(1, "kernel vs quadrature oracle", ok,
           f"max|F-oracle|={err_f:.2e}, max am round trip={err_rt:.2e}, {elapsed:.1f} s")


def test_criterion_2_identities(report):
    rng = np.random.default_rng(2)
    n = 10_000
    us, vs = rng.uniform(-20, 20, n), rng.uniform(-20, 20, n)
    ks = rng.uniform(0, 0.99, n)
    thetas, shifts = rng.uniform(-10, 10, n), rng.integers(-5, 6, n)
    pyth = delta = quasi = add = 0.0
    for u, v, k, theta, s in zip(us, vs, ks, thetas, shifts):
        m = Modulus.from_k(k)
        j = jacobi(u, m)
        pyth = max(pyth, abs(j.cn ** 2 + j.sn ** 2 - 1))
        delta = max(delta, abs(j.dn ** 2 + k * k * j.sn ** 2 - 1))
        K = incomplete_f(HALF_PI, m)
        quasi = max(quasi, abs(incomplete_f(theta + s * math.pi, m) - incomplete_f(theta, m) - 2 * s * K))
        direct = jacobi(u + v, m)
        add = max(add, abs(addition_cn(u, v, m) - direct.cn), abs(addition_sn(u, v, m) - direct.sn))
    ok = pyth <= 1e-12 and delta <= 1e-12 and quasi <= 1e-10 and add <= 1e-9
    report(2, "identity suite", ok,
           f"cn2+sn2 {pyth:.1e}, dn2+k2sn2 {delta:.1e}, quasi-period {quasi:.1e}, addition {add:.1e}")


def test_criterion_3_radical_axis_power(report):
    rng = np.random.default_rng(3)
    worst = ends = 0.0
    for k in KS:
        p = Pencil.from_modulus(k)
        target = ((p.L ** 2 - 1) / (2 * p.L)) ** 2
        x = (p.radical_axis_x, 0.0)
        for a in rng.uniform(-p.K, p.K, 1000):
            worst = max(worst, abs(power_of_point(x, circle_at(p, a)) - target))
        t, lp = circle_at(p, 0.0), circle_at(p, p.K)
        ends = max(ends, abs(t.center[0]), abs(t.center[1]), abs(t.radius - 1),
                   abs(lp.center[0] - p.L), abs(lp.center[1]), lp.radius)
    ok = worst <= 1e-9 and ends <= 1e-12
    report(3, "equal power on the radical axis", ok, f"power error {worst:.1e}, C_0/C_K error {ends:.1e}")


def _tangency_samples(seed):
    rng = np.random.default_rng(seed)
    for k in KS:
        p = Pencil.from_modulus(k)
        for alpha, theta in zip(rng.uniform(0, HALF_PI, 1000), rng.uniform(-HALF_PI, HALF_PI, 1000)):
            if alpha == 0.0:
                continue
            f = psi(p, alpha)
            z = CirclePoint(theta)
            yield p, f, z, apply(f, z)


def test_criterion_4_tangency_distance(report):
    worst = 0.0
    for p, f, z, w in _tangency_samples(4):
        j = jacobi(f.a, p.m)
        radius = 2 * j.cn / (1 + j.dn)
        center = circle_at(p, f.a).center[0]
        worst = max(worst, abs(chord_distance(z, w, center) - radius))
    report("4a", "chord distance equals 2cn a/(1+dn a)", worst <= 1e-9, f"max error {worst:.1e}")


def test_criterion_4_half_turn_through_limit_point(report):
    rng = np.random.default_rng(41)
    worst = 0.0
    for k in KS:
        p = Pencil.from_modulus(k)
        f = psi(p, HALF_PI)
        for theta in rng.uniform(-HALF_PI, HALF_PI, 1000):
            z = CirclePoint(theta)
            worst = max(worst, chord_distance(z, apply(f, z), p.L))
    report("4b", "psi_{pi/2} chords pass through L", worst <= 1e-9, f"max distance {worst:.1e}")


def test_criterion_4_center_right_of_chord(report):
    # literal reading: (z2 - z1) x (center - z1) < 0 in the standard orientation
    right = total = 0
    for p, f, z, w in _tangency_samples(4):
        c = circle_at(p, f.a).center
        total += 1
        right += cross(w.z - z.z, complex(*c) - z.z) < 0
    report("4c", "center strictly right of the directed chord", right == total,
           f"{right}/{total} samples have the center on the right")


def _pencil_tangent_parameter(p, z, w):
    """Parameter of the pencil circle inside T tangent to chord zw, found
    from the coaxal equation x^2 + y^2 - 2cx + c(L^2+1)/L - 1 = 0."""
    d = w.z - z.z
    nrm = complex(-d.imag, d.real) / abs(d)
    # signed distance from (c, 0) to the line is A c + B
    A, B = nrm.real, -(nrm.real * z.z.real + nrm.imag * z.z.imag)
    s = (p.L ** 2 + 1) / p.L
    qa, qb, qc = 1 - A * A, -(2 * A * B + s), 1 - B * B
    disc = max(qb * qb - 4 * qa * qc, 0.0)
    best = None
    for c in ((-qb + math.sqrt(disc)) / (2 * qa), (-qb - math.sqrt(disc)) / (2 * qa)):
        r2 = c * c - c * s + 1
        r = math.sqrt(max(r2, 0.0))
        if abs(c) + r <= 1 + 1e-12 and (best is None or abs(abs(A * c + B) - r) < best[2]):
            best = (c, r, abs(abs(A * c + B) - r))
    c, r, _ = best
    sign = cross(d, complex(c, 0.0) - z.z)
    orientation = "positive" if sign > 0 else "negative"
    return parameter_of(p, OrientedCircle((c, 0.0), r, orientation), tol=1e-6)


def test_criterion_5_group_isomorphism(report):
    rng = np.random.default_rng(5)
    pointwise = direct = param = 0.0
    checked = 0
    for i in range(1000):
        p = Pencil.from_modulus(KS[i % 4])
        al, be = rng.uniform(-HALF_PI, HALF_PI, 2)
        cf, cg = rng.integers(0, 2, 2)
        f, g = psi(p, al, bool(cf)), psi(p, be, bool(cg))
        z = CirclePoint(rng.uniform(-HALF_PI, HALF_PI))
        pointwise = max(pointwise, abs(apply(compose(f, g), z).z - apply(f, apply(g, z)).z))
        if cf or cg:
            continue
        expected = group_op(p, incomplete_f(al, p.m), incomplete_f(be, p.m))
        direct = max(direct, abs(math.remainder(compose(f, g).a - expected, 2 * p.K)))
        # chords near T or through L leave the circle poorly determined
        if not 0.05 * p.K < abs(expected) < 0.95 * p.K:
            continue
        w = apply(f, apply(g, z))
        got = _pencil_tangent_parameter(p, z, w)
        param = max(param, abs(math.remainder(got - expected, 2 * p.K)))
        checked += 1
    ok = pointwise <= 1e-9 and direct <= 1e-9 and param <= 1e-9
    report(5, "compose vs sequential and group isomorphism", ok,
           f"pointwise {pointwise:.1e}, composite parameter {direct:.1e}, "
           f"parameter recovered from the chord {param:.1e} over {checked} composites")


def test_criterion_6_poncelet_closure(report):
    t0 = time.perf_counter()
    closed = sides = ratio = 0.0
    cases = 0
    for k in KS:
        p = Pencil.from_modulus(k)
        starts = sample_starts(50)
        for n, h in valid_orders(12, 3):
            a = parameter_of_order(p, n, h)
            for z in starts:
                poly = interscribed_ngon(p, n, h, z)
                closed = max(closed, poly.closure_residual)
                sides = max(sides, max(side_residuals(p, poly)))
            ratio = max(ratio, abs(jacobi_ratio(p, amplitude(a, p.m)) - h / n))
            cases += 1
    rng = np.random.default_rng(6)
    tested = 0
    min_open = math.inf
    k_cycle = iter(KS * 1000)
    while tested < 100:
        p = Pencil.from_modulus(next(k_cycle))
        alpha = rng.uniform(0, HALF_PI)
        if alpha == 0.0 or order_of(p, incomplete_f(alpha, p.m), 12) is not None:
            continue
        for n in range(3, 13):
            rep = closure_test(p, alpha, n, starts=50)
            min_open = min(min_open, rep.max_residual)
        tested += 1
    elapsed = time.perf_counter() - t0
    ok = closed <= 1e-8 and sides <= 1e-9 and ratio <= 1e-10 and min_open > 1e-4 and elapsed <= 60
    report(6, "Poncelet closure and Jacobi condition", ok,
           f"{cases} (k,n,h) cases: closure {closed:.1e}, sides {sides:.1e}, ratio {ratio:.1e}; "
           f"non-closing alphas min residual {min_open:.2e}; {elapsed:.1f} s")


def test_criterion_7_tangent_pencil(report):
    rng = np.random.default_rng(7)
    axioms = tangency = 0.0
    for _ in range(1000):
        al, be, ga = rng.uniform(-1.5, 1.5, 3)
        z = CirclePoint(rng.uniform(-HALF_PI, HALF_PI))
        errs = [
            abs(a1_apply(0.0, z).z - z.z),
            abs(a1_apply(-al, a1_apply(al, z)).z - z.z),
            abs(a1_apply(a1_compose(al, be), z).z - a1_apply(al, a1_apply(be, z)).z),
            abs(a1_compose(a1_compose(al, be), ga) - a1_compose(al, a1_compose(be, ga))),
            abs(a1_compose(al, be) - a1_compose(be, al)),
        ]
        axioms = max(axioms, *errs)
        w = a1_apply(al, z)
        if abs(w.z - z.z) > 1e-6:
            tangency = max(tangency, chord_tangency_residual(z, w, a1_circle(al)))
    fixed = max(abs(a1_apply(al, CirclePoint(HALF_PI)).z - (-1)) for al in (-1.4, -0.3, 0.8, 1.5))
    ok = axioms <= 1e-10 and tangency <= 1e-9 and fixed <= 1e-10
    report(7, "A_1 group", ok, f"axioms {axioms:.1e}, tangency {tangency:.1e}, fixed point {fixed:.1e}")


def test_criterion_8_conjugated_maps(report):
    rng = np.random.default_rng(8)
    inv = conj = tangency = relative = 0.0
    misses = []
    for i in range(1000):
        p = Pencil.from_modulus(KS[i % 4])
        al, be = rng.uniform(-HALF_PI, HALF_PI, 2)
        z = CirclePoint(rng.uniform(-HALF_PI, HALF_PI))
        cb = psi(p, be, conjugated=True)
        w = apply(cb, z)
        inv = max(inv, abs(apply(cb, w).z - z.z))
        lhs = apply(cb, apply(psi(p, al), w))
        conj = max(conj, abs(lhs.z - apply(psi(p, -al), z).z))
        if cb.a != 0.0 and abs(w.z - z.z) > 1e-6:
            circle = conjugate_tangency_circle(p, cb.a)
            res = chord_tangency_residual(z, w, circle)
            tangency = max(tangency, res)
            relative = max(relative, res / circle.radius)
            if res > 1e-9:
                misses.append(f"a/K={cb.a / p.K:.1e} radius={circle.radius:.1e}")
    ok = inv <= 1e-10 and conj <= 1e-9 and tangency <= 1e-9
    report(8, "B_k conjugated maps", ok,
           f"involution {inv:.1e}, conjugation {conj:.1e}, tangency {tangency:.1e} "
           f"(max residual/radius {relative:.1e}; over 1e-9: {misses or 'none'})")


def test_criterion_9_cli(report, capsys, tmp_path):
    argv = ["scan", "--k", "0.8", "--n-max", "9", "--seed", "42", "--samples", "30"]
    outs = []
    for _ in range(3):
        main(argv)
        outs.append(capsys.readouterr().out)
    same = len(set(outs)) == 1
    counts = []
    for n, h in ((3, 1), (5, 2), (8, 3)):
        path = tmp_path / f"ngon{n}.svg"
        code = main(["ngon", "--k", "0.6", "--n", str(n), "--h", str(h), "--svg", str(path)])
        json.loads(capsys.readouterr().out)
        root = ET.parse(path).getroot()
        vertices = sum(e.get("class") == "vertex" for e in root.iter(SVG + "circle"))
        sides = sum(e.get("class") == "side" for e in root.iter(SVG + "line"))
        counts.append(code == 0 and root.tag == SVG + "svg" and vertices == n and sides == n)
    ok = same and all(counts)
    report(9, "CLI determinism and SVG", ok, f"scan byte-identical: {same}; svg n-gons well formed: {counts}")
