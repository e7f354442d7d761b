"""The explicit surface models in characteristic 2 and their checks.

Each ``*_check`` / ``*_report`` function returns a ``Report``; the helpers
below them are usable on their own.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .. import planegeom
from ..graphs import IncidenceGraph
from ..report import Report
from .fields import F2, F4, F16, F64, Field, embedding
from .poly import FqPolynomial, monomials, projective_points


class NonsingularPoint(ValueError):
    pass


class NotOnHypersurface(ValueError):
    pass


EXTENSION_FIELDS = {1: (F4,), 2: (F4, F16), 3: (F4, F16, F64)}
A = 2          # the element a of F_4 (a^2 = a + 1 is 3)
A2 = 3


# ---------------------------------------------------------------------------
# The equations
# ---------------------------------------------------------------------------

def sextic() -> FqPolynomial:
    """x0 x1 x2 (x0^3 + x1^3 + x2^3) over F_2."""
    x0, x1, x2 = FqPolynomial.gens(F2, 3)
    return x0 * x1 * x2 * (x0 ** 3 + x1 ** 3 + x2 ** 3)


def dickson_quartic(nvars: int = 3) -> FqPolynomial:
    """The PGL(3,2)-invariant plane quartic, optionally in a ring with more variables."""
    x0, x1, x2 = FqPolynomial.gens(F2, nvars)[:3]
    return (x0 ** 4 + x1 ** 4 + x2 ** 4 + x0 ** 2 * x1 ** 2 + x0 ** 2 * x2 ** 2
            + x1 ** 2 * x2 ** 2 + x0 * x1 * x2 * (x0 + x1 + x2))


def quartic_surface() -> FqPolynomial:
    """x3^4 + F_4(x0, x1, x2) in P^3."""
    x3 = FqPolynomial.var(F2, 4, 3)
    return x3 ** 4 + dickson_quartic(4)


QUARTIC_SINGULAR_POINTS = (
    (1, 1, 0, 1), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1),
    (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1),
)

QUINTIC_SPAN_EXPONENTS = (
    ((4, 1, 0), (1, 4, 0)),     # x0^4 x1 + x1^4 x0
    ((4, 0, 1), (1, 0, 4)),     # x0^4 x2 + x2^4 x0
    ((0, 1, 4), (0, 4, 1)),     # x2^4 x1 + x1^4 x2
)


# ---------------------------------------------------------------------------
# Point scans
# ---------------------------------------------------------------------------

def common_partial_zeros(p: FqPolynomial, field: Field, projective: bool = True,
                         with_p: bool = False) -> list[tuple[int, ...]]:
    """Points over ``field`` where every partial derivative of ``p`` vanishes.

    ``with_p`` also requires ``p = 0``.  Points are normalized projective
    points when ``projective`` (``p`` must then be homogeneous), otherwise
    all affine points.
    """
    if projective and not p.is_homogeneous():
        raise ValueError("projective scan needs a homogeneous polynomial")
    q = p.over(field)
    eqs = [q.partial(i) for i in range(q.nvars)]
    eqs = [e for e in eqs if e]
    if with_p:
        eqs.append(q)
    pts = projective_points(field, q.nvars) if projective else list(product(field.elements(), repeat=q.nvars))
    return [pt for pt in pts if all(e.evaluate(pt) == 0 for e in eqs)]


def singular_points(p: FqPolynomial, field: Field) -> list[tuple[int, ...]]:
    """Singular points of the projective hypersurface ``p = 0``.

    Euler's relation ``sum x_i dp/dx_i = deg(p) p`` only recovers ``p = 0``
    from the partials when the degree is odd, so for even degree the
    equation itself is added.
    """
    return common_partial_zeros(p, field, True, with_p=p.degree() % 2 == 0)


def pull_back(points: Sequence[Sequence[int]], small: Field, big: Field) -> list[tuple[int, ...]] | None:
    """Express points of the big field in the subfield, or ``None`` if some are not rational."""
    img = embedding(small, big)
    back = {v: k for k, v in enumerate(img)}
    out = []
    for pt in points:
        if any(c not in back for c in pt):
            return None
        out.append(tuple(back[c] for c in pt))
    return out


def sextic_report(ext_degree: int = 3) -> Report:
    rep = Report("surfaces.sextic", True)
    canon = sorted(planegeom.enumerate_points())
    F = sextic()
    found = {}
    for field in EXTENSION_FIELDS[ext_degree]:
        pts = common_partial_zeros(F, field)
        back = pull_back(pts, F4, field)
        found[field.name()] = len(pts)
        if back is None or sorted(back) != canon:
            rep.fail(f"partials of F6 over {field.name()} vanish at {len(pts)} points, "
                     "not exactly the points of PG(2,4)")
    rep.details.update(zero_counts=found)
    return rep


# ---------------------------------------------------------------------------
# Quintics through the 21 points
# ---------------------------------------------------------------------------

def rank_over(field: Field, rows: Sequence[Sequence[int]]) -> int:
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = field.inv(M[rank][c])
        M[rank] = [field.mul(inv, x) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [x ^ field.mul(f, y) for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def quintic_kernel_dim(points: Sequence[Sequence[int]] | None = None) -> Report:
    """Quintics vanishing at the 21 points: rank of evaluation, kernel, spanning set."""
    pts = list(points) if points is not None else planegeom.enumerate_points()
    mons = monomials(3, 5)
    polys = [FqPolynomial.make(F4, 3, {e: 1 for e in pair}) for pair in QUINTIC_SPAN_EXPONENTS]
    # rows: points; columns: monomials
    M = [[FqPolynomial.make(F4, 3, {m: 1}).evaluate(p) for m in mons] for p in pts]
    rank = rank_over(F4, M)
    kernel_dim = len(mons) - rank
    vanish = all(f.evaluate(p) == 0 for f in polys for p in pts)
    coeffs = [[f.coefficient(m) for m in mons] for f in polys]
    independent = rank_over(F4, coeffs) == len(polys)
    rep = Report("surfaces.quintics", True)
    rep.details.update(monomials=len(mons), points=len(pts), rank=rank, kernel_dim=kernel_dim,
                       listed_vanish=vanish, listed_independent=independent)
    if kernel_dim != 3 or rank != 18:
        rep.fail(f"kernel dimension {kernel_dim}, rank {rank}")
    if not (vanish and independent):
        rep.fail("listed quintics do not span the kernel")
    return rep


# ---------------------------------------------------------------------------
# The Dickson quartic and the quartic surface
# ---------------------------------------------------------------------------

def gl3_f2() -> list[tuple[tuple[int, ...], ...]]:
    mats = []
    for bits in range(1 << 9):
        M = tuple(tuple(bits >> (3 * r + c) & 1 for c in range(3)) for r in range(3))
        if rank_over(F2, M) == 3:
            mats.append(M)
    return mats


def act(p: FqPolynomial, M: Sequence[Sequence[int]]) -> FqPolynomial:
    """``p(M x)`` for a 3x3 matrix over the coefficient field."""
    xs = FqPolynomial.gens(p.field, 3)
    images = []
    for row in M:
        acc = FqPolynomial.zero(p.field, 3)
        for c, x in zip(row, xs):
            if c:
                acc = acc + c * x
        images.append(acc)
    return p.substitute(images)


def dickson_invariance() -> Report:
    F = dickson_quartic()
    group = gl3_f2()
    bad = [M for M in group if act(F, M) != F]
    rep = Report("surfaces.dickson", not bad)
    rep.details.update(group_order=len(group), non_invariant=len(bad))
    if len(group) != 168:
        rep.fail(f"|GL(3,2)| enumerated as {len(group)}")
    if bad:
        rep.failures.append(f"{len(bad)} matrices change the quartic")
    return rep


def quartic_singularities(ext_degree: int = 2) -> Report:
    Y = quartic_surface()
    rep = Report("surfaces.quartic_singular", True)
    listed = sorted(QUARTIC_SINGULAR_POINTS)
    base = sorted(singular_points(Y, F2))
    counts = {"F2": len(base)}
    if base != listed:
        rep.fail(f"singular points over F2 are {base}")
    for field in (F4, F16)[:max(1, min(ext_degree, 2))]:
        pts = singular_points(Y, field)
        counts[field.name()] = len(pts)
        back = pull_back(pts, F2, field)
        if back is None or sorted(back) != listed:
            rep.fail(f"new singular points appear over {field.name()}")
    cones = []
    for pt in listed:
        mult, rank = tangent_cone_rank(Y, pt)
        cones.append([mult, rank])
        if (mult, rank) != (2, 2):
            rep.fail(f"tangent cone at {pt}: multiplicity {mult}, rank {rank}")
    rep.details.update(counts=counts, tangent_cones=cones)
    return rep


def _line_substitution(a: Sequence[int], field: Field, nvars: int) -> list[FqPolynomial]:
    """Images of x_i parametrizing the hyperplane ``sum a_i x_i = 0``.

    The last variable with a nonzero coefficient is solved for.
    """
    xs = FqPolynomial.gens(field, nvars)
    k = max(i for i, c in enumerate(a) if c)
    inv = field.inv(a[k])
    solved = FqPolynomial.zero(field, nvars)
    for i, c in enumerate(a):
        if c and i != k:
            solved = solved + field.mul(inv, c) * xs[i]
    return [solved if i == k else xs[i] for i in range(nvars)]


CONIC_EXPONENTS = ((2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2),
                         (1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0))


def plane_double_conic() -> Report:
    """Each plane over a line of PG(2,2) meets the quartic in a double conic."""
    Y = quartic_surface()
    rep = Report("surfaces.double_conics", True)
    rows = []
    for a in projective_points(F2, 3):
        sub = _line_substitution(a, F2, 4)
        restricted = Y.substitute(sub)
        root = restricted.square_root()
        if root is None:
            rep.fail(f"plane {a}: restriction is not a square")
            continue
        conic = root
        on = [P for P in QUARTIC_SINGULAR_POINTS
              if sum(x * y for x, y in zip(a, P)) % 2 == 0 and conic.evaluate(P) == 0]
        rows.append({"plane": list(a), "conic": conic.to_records(), "singular_points": len(on)})
        if len(on) != 3:
            rep.fail(f"conic in plane {a} passes through {len(on)} singular points")
        if tuple(a) == (1, 1, 1):
            printed = FqPolynomial.make(F2, 4, {e: 1 for e in CONIC_EXPONENTS}).substitute(sub)
            if printed != conic:
                rep.fail("the conic in x0+x1+x2 = 0 differs from the stated one")
    rep.details.update(planes=len(rows), identities=sum(1 for r in rows if r["singular_points"] == 3))
    if len(rows) != 7:
        rep.fail(f"only {len(rows)} planes produced a double conic")
    return rep


def quartic_split() -> Report:
    """Restriction to x1 + x3 = 0 factors as Q1' Q2' over F_4."""
    Y = quartic_surface().over(F4)
    x0, x1, x2, x3 = FqPolynomial.gens(F4, 4)
    restricted = Y.substitute([x0, x1, x2, x1])
    q1 = x0 ** 2 + A * x2 ** 2 + x0 * x1 + A * x1 * x2
    q2 = x0 ** 2 + A2 * x2 ** 2 + x0 * x1 + A2 * x1 * x2
    rep = Report("surfaces.quartic_split", True)
    P = [(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1), (1, 1, 1, 1)]
    q1pt, q2pt = (1, 0, A, 0), (1, 0, A2, 0)
    checks = {
        "product": q1 * q2 == restricted,
        "frobenius_swaps": q1.frobenius() == q2 and q2.frobenius() == q1,
        "Q1_through_P": all(q1.evaluate(p) == 0 for p in P),
        "Q2_through_P": all(q2.evaluate(p) == 0 for p in P),
        "q1_on_Q1": q1.evaluate(q1pt) == 0,
        "q2_on_Q2": q2.evaluate(q2pt) == 0,
        "q_on_plane": all(p[1] ^ p[3] == 0 for p in (q1pt, q2pt)),
    }
    # C': x0^2 + x2^2 + x3^2 + x0 x2 = x1 = 0 passes through q1 and q2
    c = x0 ** 2 + x2 ** 2 + x3 ** 2 + x0 * x2
    checks["q_on_C'"] = all(c.evaluate(p) == 0 and p[1] == 0 for p in (q1pt, q2pt))
    rep.details.update(checks)
    for k, v in checks.items():
        if not v:
            rep.fail(k)
    return rep


def quadratic_form_rank(q: FqPolynomial) -> int:
    """Rank of a quadratic form in characteristic 2.

    rank = rank of the alternating polar matrix, plus one if the form is
    nonzero on its radical.
    """
    F = q.field
    n = q.nvars
    B = [[0] * n for _ in range(n)]
    for e, c in q.terms:
        if sum(e) != 2:
            raise ValueError("not a quadratic form")
        idx = [i for i, k in enumerate(e) if k]
        if len(idx) == 2:
            i, j = idx
            B[i][j] = B[j][i] = c
    r = rank_over(F, B)
    # q is additive on the radical (B vanishes there) and q(cv) = c^2 q(v),
    # so it is nonzero on the radical iff it is nonzero on a basis of it
    rad = _kernel_basis(F, B)
    nonzero = any(q.evaluate(v) for v in rad)
    return r + int(nonzero)


def _kernel_basis(F: Field, M: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(M[0]) if M else 0
    R = [list(r) for r in M]
    pivots = []
    row = 0
    for c in range(n):
        p = next((i for i in range(row, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[row], R[p] = R[p], R[row]
        inv = F.inv(R[row][c])
        R[row] = [F.mul(inv, x) for x in R[row]]
        for i in range(len(R)):
            if i != row and R[i][c]:
                f = R[i][c]
                R[i] = [x ^ F.mul(f, y) for x, y in zip(R[i], R[row])]
        pivots.append(c)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = R[i][f]   # char 2: -x = x
        basis.append(v)
    return basis


def tangent_cone_rank(p: FqPolynomial, point: Sequence[int]) -> tuple[int, int]:
    """(multiplicity, rank of the quadratic part) at a point of ``p = 0``.

    Works in the affine chart of the last nonzero coordinate.
    """
    F = p.field
    point = list(point)
    k = max(i for i, c in enumerate(point) if c)
    inv = F.inv(point[k])
    point = [F.mul(inv, c) for c in point]
    if p.evaluate(point):
        raise NotOnHypersurface(f"{point} is not on the hypersurface")
    n = p.nvars
    m = n - 1
    ys = FqPolynomial.gens(F, m)
    one = FqPolynomial.const(F, m, 1)
    images = []
    j = 0
    for i in range(n):
        if i == k:
            images.append(one)
        else:
            images.append(ys[j] + point[i])
            j += 1
    local = p.substitute(images)
    mult = local.lowest_degree()
    if mult == 1:
        raise NonsingularPoint(f"{point} is a smooth point")
    rank = quadratic_form_rank(local.homogeneous_part(2)) if mult == 2 else 0
    return mult, rank


# ---------------------------------------------------------------------------
# Mukai's model in P^2 x P^2
# ---------------------------------------------------------------------------

def _mukai_values(F: Field, x: Sequence[int], y: Sequence[int]) -> tuple[int, int]:
    v1 = v2 = 0
    for xi, yi in zip(x, y):
        v1 ^= F.mul(F.mul(xi, xi), yi)
        v2 ^= F.mul(xi, F.mul(yi, yi))
    return v1, v2


def _curve_contained(a: Sequence[int], switched: bool) -> bool:
    """Symbolic containment of the curve over ``a`` in both equations.

    The curve ``x = a, sum a_i y_i^2 = 0`` is the double line
    ``sum a_i^2 y_i = 0`` (since ``a^4 = a`` on F_4).  Parametrize that
    line, substitute into both equations and require zero polynomials.
    """
    F = F4
    line = [F.mul(c, c) for c in a]
    ys = _line_substitution(line, F, 3)
    xs = [FqPolynomial.const(F, 3, c) for c in a]
    e1 = FqPolynomial.zero(F, 3)
    e2 = FqPolynomial.zero(F, 3)
    for xi, yi in zip(xs, ys):
        # (x, y) -> (y, x) exchanges the two equations
        e1 = e1 + (xi * xi * yi if not switched else xi * yi * yi)
        e2 = e2 + (xi * yi * yi if not switched else xi * xi * yi)
    # the reduced curve's square is the stated conic: (sum a_i^2 y_i)^2 = sum a_i y_i^2
    conic = FqPolynomial.zero(F, 3)
    lin = FqPolynomial.zero(F, 3)
    for c, y in zip(a, FqPolynomial.gens(F, 3)):
        conic = conic + c * y * y
        lin = lin + F.mul(c, c) * y
    return not e1 and not e2 and lin * lin == conic


def mukai_curve_check() -> Report:
    pts = planegeom.enumerate_points()
    rep = Report("surfaces.mukai", True)
    contained = sum(_curve_contained(a, False) for a in pts) + sum(_curve_contained(a, True) for a in pts)
    if contained != 42:
        rep.fail(f"only {contained} of 42 curves lie on both hypersurfaces")
    # incidence over F16: A_a = {a} x {sum a_i y_i^2 = 0}, B_b = {sum b_i x_i^2 = 0} x {b}
    e = embedding(F4, F16)
    big = [tuple(e[c] for c in p) for p in pts]
    n = len(pts)
    edges = []
    for i, a in enumerate(big):
        for j, b in enumerate(big):
            # the only candidate meeting point is (a, b); it must lie on both curves
            on_a = sum_sq(F16, a, b) == 0
            on_b = sum_sq(F16, b, a) == 0
            if on_a != on_b:
                rep.fail("curve incidences are not symmetric")
            if on_a and on_b:
                if _mukai_values(F16, a, b) != (0, 0):
                    rep.fail("meeting point is not on X")
                edges.append((i, n + j))
    g = IncidenceGraph.from_edges(2 * n, edges, parts=[0] * n + [1] * n)
    degrees = sorted({g.degree(v) for v in range(g.n)})
    phi = planegeom.find_isomorphism(g, planegeom.build_incidence())
    rep.details.update(curves=contained, edges=len(edges), degrees=degrees,
                       isomorphic_to_plane=phi is not None)
    if degrees != [5] or phi is None:
        rep.fail("Mukai curve incidence does not match PG(2,4)")
    return rep


def sum_sq(F: Field, a: Sequence[int], y: Sequence[int]) -> int:
    """sum a_i y_i^2."""
    acc = 0
    for c, v in zip(a, y):
        acc ^= F.mul(c, F.mul(v, v))
    return acc


# ---------------------------------------------------------------------------
# Weierstrass model y^2 + x^3 + t^11
# ---------------------------------------------------------------------------

def weierstrass_checks() -> Report:
    rep = Report("surfaces.weierstrass", True)
    x, y, t = FqPolynomial.gens(F2, 3)
    f = y ** 2 + x ** 3 + t ** 11
    dx, dy, dt = f.partial(0), f.partial(1), f.partial(2)
    partials_ok = dx == x ** 2 and not dy and dt == t ** 10
    # affine singular points over F16: must be the origin only
    sing = common_partial_zeros(f, F16, projective=False, with_p=True)
    # transform: (t, tau, x, y) ring
    T, tau, X, Y = FqPolynomial.gens(F2, 4)
    g = f.substitute([T ** 4 * X, T ** 6 * Y, T])
    target = T ** 12 * (Y ** 2 + X ** 3 + tau)
    diff = g - target
    identity_ok = diff == T ** 11 * (T * tau + 1)
    h = Y ** 2 + X ** 3 + tau
    smooth_ok = h.partial(1) == FqPolynomial.const(F2, 4, 1)
    rep.details.update(partials=partials_ok, affine_singular_points=[list(p) for p in sing],
                       transform_identity=identity_ok, tau_model_smooth=smooth_ok)
    if not partials_ok:
        rep.fail("partials of y^2+x^3+t^11 are not (x^2, 0, t^10)")
    if sing != [(0, 0, 0)]:
        rep.fail(f"affine singular locus {sing}")
    if not identity_ok:
        rep.fail("f(t^4x, t^6y, t) - t^12(y^2+x^3+tau) is not t^11(t tau + 1)")
    if not smooth_ok:
        rep.fail("y^2+x^3+tau has a vanishing tau-derivative")
    return rep
