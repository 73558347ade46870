"""Triangulated polygons, laminations, shear coordinates, and cutting.

Surfaces are disjoint unions of convex polygons (unpunctured disks)
with vertices numbered counterclockwise.  A triangulation is a maximal
set of noncrossing diagonals; a lamination curve is recorded purely
combinatorially by its pair of boundary-segment endpoints.  Cutting a
polygon along a diagonal splits it in two, clips the curves, and in
freeze mode inserts the pair of companion curves hugging the cut side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import SeedError
from .seeds import ExtendedExchangeMatrix, Seed
from .homs import SubSeedSpec, mixing_subseed

__all__ = [
    "SurfaceData",
    "make_surface",
    "validate_surface",
    "triangles_of",
    "diagonals_cross",
    "curve_crosses",
    "shear_contribution",
    "b_matrix_from_triangulation",
    "shear_coordinates",
    "seed_from_surface",
    "cut_along",
    "paunched_surface",
    "check_theorem_sur",
    "surface_iso",
    "enumerate_triangulations",
]

# Curve = (component index, (segment, segment)); Diagonal = (a, b) with a < b.


@dataclass(frozen=True)
class SurfaceData:
    """Polygon sizes, labeled diagonals, and labeled multi-laminations.

    components[c] is the vertex count of polygon c.  diagonals maps a
    label to (component, (a, b)); laminations maps a label to a sorted
    tuple of curves (parallel copies allowed, hence tuples not sets).
    """

    components: tuple[int, ...]
    diagonals: tuple[tuple[str, tuple[int, tuple[int, int]]], ...]
    laminations: tuple[tuple[str, tuple[tuple[int, tuple[int, int]], ...]], ...]

    def diagonal_map(self) -> dict[str, tuple[int, tuple[int, int]]]:
        return dict(self.diagonals)

    def lamination_map(self):
        return dict(self.laminations)

    def diagonal_labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.diagonals)

    def lamination_labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.laminations)


def _norm_curve(comp: int, s: int, t: int):
    return (comp, (min(s, t), max(s, t)))


def make_surface(N: int, diagonals, laminations=()) -> SurfaceData:
    """Single-polygon surface with default labels d{a}_{b} and L{i}."""
    diag = tuple(
        (f"d{min(a, b)}_{max(a, b)}", (0, (min(a, b), max(a, b))))
        for a, b in sorted(tuple(sorted(d)) for d in diagonals)
    )
    lams = tuple(
        (f"L{i}", tuple(sorted(_norm_curve(0, s, t) for s, t in curves)))
        for i, curves in enumerate(laminations)
    )
    return validate_surface(SurfaceData((N,), diag, lams))


def diagonals_cross(d1: tuple[int, int], d2: tuple[int, int], N: int) -> bool:
    a, b = d1
    c, d = d2
    if {a, b} & {c, d}:
        return False
    inside = lambda v: a < v < b
    return inside(c) != inside(d)


def validate_surface(data: SurfaceData) -> SurfaceData:
    for N in data.components:
        if N < 3:
            raise SeedError(f"polygon with {N} vertices is not allowed")
    labels = data.diagonal_labels() + data.lamination_labels()
    if len(set(labels)) != len(labels):
        raise SeedError("diagonal and lamination labels must be distinct")
    per_comp: dict[int, list[tuple[int, int]]] = {c: [] for c in range(len(data.components))}
    for lbl, (c, (a, b)) in data.diagonals:
        if c not in per_comp:
            raise SeedError(f"diagonal {lbl!r} names unknown component {c}")
        N = data.components[c]
        if not (0 <= a < b < N):
            raise SeedError(f"diagonal {lbl!r}: endpoints ({a},{b}) out of range")
        if b - a == 1 or (a == 0 and b == N - 1):
            raise SeedError(f"diagonal {lbl!r} joins adjacent vertices")
        per_comp[c].append((a, b))
    for c, diags in per_comp.items():
        N = data.components[c]
        if len(set(diags)) != len(diags):
            raise SeedError(f"component {c} repeats a diagonal")
        for d1, d2 in itertools.combinations(diags, 2):
            if diagonals_cross(d1, d2, N):
                raise SeedError(f"diagonals {d1} and {d2} cross in component {c}")
        if len(diags) != N - 3:
            raise SeedError(
                f"component {c}: {len(diags)} diagonals, a triangulation needs {N - 3}"
            )
    for lbl, curves in data.laminations:
        for c, (s, t) in curves:
            if not 0 <= c < len(data.components):
                raise SeedError(f"lamination {lbl!r} names unknown component {c}")
            N = data.components[c]
            if not (0 <= s < N and 0 <= t < N):
                raise SeedError(f"lamination {lbl!r}: segment out of range")
            if s == t:
                raise SeedError(f"lamination {lbl!r} has a boundary-parallel curve")
    return data


def triangles_of(N: int, diagonals) -> list[tuple[int, int, int]]:
    """Faces of the triangulated N-gon as vertex triples u < v < w.

    For a maximal noncrossing diagonal family the 3-cliques of the
    side graph (boundary plus diagonals) are exactly the faces; the
    count is checked.
    """
    return _triangles_cached(N, tuple(sorted(tuple(d) for d in diagonals)))


@lru_cache(maxsize=4096)
def _triangles_cached(N: int, diagonals) -> list[tuple[int, int, int]]:
    edges = {(i, (i + 1) % N) for i in range(N)}
    edges = {(min(a, b), max(a, b)) for a, b in edges}
    edges |= {tuple(d) for d in diagonals}
    adj: dict[int, set[int]] = {v: set() for v in range(N)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    faces = []
    for u in range(N):
        for v in sorted(adj[u]):
            if v <= u:
                continue
            for w in sorted(adj[u] & adj[v]):
                if w > v:
                    faces.append((u, v, w))
    if len(faces) != N - 2:
        raise SeedError(f"{len(faces)} triangles in an {N}-gon, expected {N - 2}")
    return faces


def b_matrix_from_triangulation(data: SurfaceData) -> tuple[tuple[str, ...], list[list[int]]]:
    """Skew-symmetric matrix over the diagonals: within each triangle,
    consecutive counterclockwise diagonal sides (x, y) add b_xy += 1."""
    labels = sorted(data.diagonal_labels())
    pos = {lbl: i for i, lbl in enumerate(labels)}
    by_geom = {(c, d): lbl for lbl, (c, d) in data.diagonals}
    k = len(labels)
    B = [[0] * k for _ in range(k)]
    for c, N in enumerate(data.components):
        diags = [d for _, (cc, d) in data.diagonals if cc == c]
        for u, v, w in triangles_of(N, diags):
            sides = [(u, v), (v, w), (min(u, w), max(u, w))]
            for i in range(3):
                x = by_geom.get((c, sides[i]))
                y = by_geom.get((c, sides[(i + 1) % 3]))
                if x is not None and y is not None:
                    B[pos[x]][pos[y]] += 1
                    B[pos[y]][pos[x]] -= 1
    return tuple(labels), B


def curve_crosses(curve, comp: int, diag: tuple[int, int]) -> bool:
    c, (s, t) = curve
    if c != comp:
        return False
    a, b = diag
    return (a <= s < b) != (a <= t < b)


def _quadrilateral(N: int, diagonals, diag: tuple[int, int]) -> tuple[int, int]:
    """Apexes (p, q) of the two triangles adjacent to diag: p inside the
    counterclockwise arc a..b, q outside."""
    a, b = diag
    p = q = None
    for u, v, w in triangles_of(N, diagonals):
        tri = {u, v, w}
        if a in tri and b in tri:
            (apex,) = tri - {a, b}
            if a < apex < b:
                p = apex
            else:
                q = apex
    if p is None or q is None:
        raise SeedError(f"diagonal {diag} is not in the triangulation")
    return p, q


def shear_contribution(N: int, diagonals, diag: tuple[int, int], curve) -> int:
    """Signed crossing of one curve with one diagonal's quadrilateral.

    With quadrilateral corners a, p, b, q in counterclockwise order,
    a curve leaving through sides (a,p) and (b,q) contributes -1, one
    leaving through (p,b) and (q,a) contributes +1, and a curve using
    two adjacent sides contributes 0.  The convention is pinned by the
    companion-curve row identity after a freeze cut.
    """
    comp_of_curve, (s, t) = curve
    a, b = diag
    if not ((a <= s < b) != (a <= t < b)):
        return 0
    p, q = _quadrilateral(N, diagonals, diag)
    inner, outer = (s, t) if a <= s < b else (t, s)
    near_a_inner = a <= inner < p  # curve leaves through side (a, p)
    near_b_outer = (outer - b) % N < (q - b) % N  # side (b, q), cyclic arc b..q
    if near_a_inner and near_b_outer:
        return -1
    if not near_a_inner and not near_b_outer:
        return 1
    return 0


def shear_coordinates(data: SurfaceData, curves) -> dict[str, int]:
    """Shear row of one lamination: diagonal label -> summed contribution."""
    row: dict[str, int] = {}
    for lbl, (c, d) in data.diagonals:
        N = data.components[c]
        diags = [dd for _, (cc, dd) in data.diagonals if cc == c]
        row[lbl] = sum(
            shear_contribution(N, diags, d, curve) for curve in curves if curve[0] == c
        )
    return row


def seed_from_surface(data: SurfaceData) -> Seed:
    """Seed with diagonals exchangeable and laminations frozen."""
    validate_surface(data)
    ex_labels, B = b_matrix_from_triangulation(data)
    fr_labels = tuple(sorted(data.lamination_labels()))
    lam = data.lamination_map()
    rows = []
    shear_by_lam = {lbl: shear_coordinates(data, lam[lbl]) for lbl in fr_labels}
    for i, x in enumerate(ex_labels):
        rows.append(tuple(B[i]) + tuple(shear_by_lam[lbl][x] for lbl in fr_labels))
    matrix = ExtendedExchangeMatrix(n=len(ex_labels), m=len(fr_labels), entries=tuple(rows))
    return Seed(ex_labels, fr_labels, matrix)


def cut_along(data: SurfaceData, x: str, mode: str = "delete") -> SurfaceData:
    """Split the component of diagonal x along it into two polygons.

    Side 1 carries the vertices a..b of the cut diagonal (a < b), side 2
    the complementary arc; each gains the copy of x as its last boundary
    segment.  Curves crossing x are clipped into one fragment per side,
    ending on the cut segment.  In freeze mode the label of x becomes a
    new lamination holding one curve per side that hugs the cut segment.
    """
    if mode not in ("delete", "freeze"):
        raise SeedError(f"unknown cut mode {mode!r}")
    dmap = data.diagonal_map()
    if x not in dmap:
        raise SeedError(f"{x!r} is not a diagonal of the surface")
    c, (a, b) = dmap[x]
    N = data.components[c]
    k1 = b - a + 1  # side-1 vertex count; cut segment k1-1
    k2 = N - (b - a) + 1  # side-2 vertex count; cut segment k2-1

    comps = list(data.components)
    comps[c : c + 1] = [k1, k2]
    side2 = c + 1

    def map_comp(cc: int) -> int:
        return cc if cc < c else cc + 1

    def on_side1(v: int) -> bool:
        return a <= v <= b

    def map_vertex(v: int):
        if on_side1(v):
            return c, v - a
        return side2, (v - b) % N

    def seg_side1(s: int) -> bool:
        return a <= s < b

    def map_segment(s: int):
        if seg_side1(s):
            return c, s - a
        return side2, (s - b) % N

    new_diagonals = []
    for lbl, (cc, (u, v)) in data.diagonals:
        if lbl == x:
            continue
        if cc != c:
            new_diagonals.append((lbl, (map_comp(cc), (u, v))))
            continue
        if on_side1(u) and on_side1(v) and not (u == a and v == b):
            nu, nv = u - a, v - a
            new_diagonals.append((lbl, (c, (min(nu, nv), max(nu, nv)))))
        else:
            nu, nv = (u - b) % N, (v - b) % N
            new_diagonals.append((lbl, (side2, (min(nu, nv), max(nu, nv)))))

    def clip(curve):
        cc, (s, t) = curve
        if cc != c:
            return [(map_comp(cc), (s, t))]
        if seg_side1(s) == seg_side1(t):
            (c1, s1), (c2, t1) = map_segment(s), map_segment(t)
            return [_norm_curve(c1, s1, t1)]
        inner, outer = (s, t) if seg_side1(s) else (t, s)
        return [
            _norm_curve(c, inner - a, k1 - 1),
            _norm_curve(side2, (outer - b) % N, k2 - 1),
        ]

    new_laminations = []
    for lbl, curves in data.laminations:
        clipped = sorted(itertools.chain.from_iterable(clip(cv) for cv in curves))
        new_laminations.append((lbl, tuple(clipped)))
    if mode == "freeze":
        hug = sorted([_norm_curve(c, 0, k1 - 2), _norm_curve(side2, 0, k2 - 2)])
        new_laminations.append((x, tuple(hug)))
    return validate_surface(
        SurfaceData(tuple(comps), tuple(new_diagonals), tuple(sorted(new_laminations)))
    )


def paunched_surface(data: SurfaceData, I0, I1) -> SurfaceData:
    """Cut freeze-style along I0 diagonals, delete I1 diagonals, and
    drop I1 laminations."""
    I0, I1 = frozenset(I0), frozenset(I1)
    if I0 & I1:
        raise SeedError("I0 and I1 overlap")
    dlabels = set(data.diagonal_labels())
    llabels = set(data.lamination_labels())
    if not I0 <= dlabels:
        raise SeedError(f"I0 contains non-diagonals: {sorted(I0 - dlabels)}")
    if not I1 <= dlabels | llabels:
        raise SeedError(f"unknown labels in I1: {sorted(I1 - dlabels - llabels)}")
    out = SurfaceData(
        data.components,
        data.diagonals,
        tuple((lbl, cv) for lbl, cv in data.laminations if lbl not in I1),
    )
    for x in sorted((I0 | I1) & dlabels):
        out = cut_along(out, x, mode="freeze" if x in I0 else "delete")
    return out


def check_theorem_sur(data: SurfaceData, I0, I1) -> bool:
    """Sub-seed of the surface seed vs seed of the paunched surface,
    compared through the canonical label correspondence."""
    base = seed_from_surface(data)
    left = mixing_subseed(base, SubSeedSpec(frozenset(I0), frozenset(I1)))
    right = seed_from_surface(paunched_surface(data, I0, I1))
    if set(left.exchangeable_labels) != set(right.exchangeable_labels):
        return False
    if set(left.frozen_labels) != set(right.frozen_labels):
        return False
    return all(
        left.b(xx, yy) == right.b(xx, yy)
        for xx in left.exchangeable_labels
        for yy in left.labels
    )


def _dihedral_maps(N: int):
    for r in range(N):
        yield (lambda v, r=r: (v + r) % N, lambda s, r=r: (s + r) % N)
        yield (lambda v, r=r: (r - v) % N, lambda s, r=r: (r - s - 1) % N)


def surface_iso(a: SurfaceData, b: SurfaceData) -> bool:
    """Combinatorial isomorphism: a bijection of components with a
    rotation or reflection of each polygon matching triangulations and
    matching the multi-laminations as unlabeled families of curve sets."""
    validate_surface(a)
    validate_surface(b)
    if sorted(a.components) != sorted(b.components):
        return False
    if len(a.diagonals) != len(b.diagonals) or len(a.laminations) != len(b.laminations):
        return False
    nc = len(a.components)
    b_diag_by_comp = [
        frozenset(d for _, (cc, d) in b.diagonals if cc == c) for c in range(nc)
    ]
    b_lams = sorted(cv for _, cv in b.laminations)
    for perm in itertools.permutations(range(nc)):
        if any(a.components[c] != b.components[perm[c]] for c in range(nc)):
            continue
        map_choices = [list(_dihedral_maps(a.components[c])) for c in range(nc)]
        for choice in itertools.product(*map_choices):
            ok = True
            for c in range(nc):
                vmap = choice[c][0]
                diag_img = frozenset(
                    (min(vmap(u), vmap(v)), max(vmap(u), vmap(v)))
                    for _, (cc, (u, v)) in a.diagonals
                    if cc == c
                )
                if diag_img != b_diag_by_comp[perm[c]]:
                    ok = False
                    break
            if not ok:
                continue
            lam_img = sorted(
                tuple(
                    sorted(
                        _norm_curve(perm[cc], choice[cc][1](s), choice[cc][1](t))
                        for cc, (s, t) in curves
                    )
                )
                for _, curves in a.laminations
            )
            if lam_img == b_lams:
                return True
    return False


def enumerate_triangulations(N: int) -> list[frozenset[tuple[int, int]]]:
    """All triangulations of the convex N-gon as diagonal sets."""

    def rec(vertices: tuple[int, ...]):
        if len(vertices) < 3:
            return [frozenset()]
        v0, vlast = vertices[0], vertices[-1]
        out = []
        for i in range(1, len(vertices) - 1):
            apex = vertices[i]
            for left in rec(vertices[: i + 1]):
                for right in rec(vertices[i:]):
                    diags = set(left) | set(right)
                    for u, v in ((v0, apex), (apex, vlast)):
                        u, v = min(u, v), max(u, v)
                        if v - u not in (1, N - 1):
                            diags.add((u, v))
                    out.append(frozenset(diags))
        return out

    seen = set()
    result = []
    for t in rec(tuple(range(N))):
        if t not in seen:
            seen.add(t)
            result.append(t)
    return result
