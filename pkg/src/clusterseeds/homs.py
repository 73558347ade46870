"""Mixing-type sub-seeds, (partial) seed homomorphisms, and isomorphisms.

A sub-seed specification (I0, I1) freezes the exchangeable variables in
I0 and deletes the variables in I1.  A partial seed homomorphism is a
seed homomorphism defined on such a sub-seed of its source; the empty
homomorphism has I1 equal to the whole extended cluster.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import HomError, SpecError
from .seeds import ExtendedExchangeMatrix, Seed

__all__ = [
    "SubSeedSpec",
    "PartialSeedHom",
    "mixing_subseed",
    "identity_inclusion",
    "empty_hom",
    "check_partial_hom",
    "require_hom",
    "compose",
    "image_spec",
    "image_seed",
    "find_seed_iso",
    "enumerate_seed_isos",
    "is_seed_iso",
    "inverse_iso",
    "automorphism_group",
    "factor_through_image",
    "is_retraction",
]


@dataclass(frozen=True)
class SubSeedSpec:
    """A pair (I0, I1): I0 exchangeable labels to freeze, I1 labels to delete."""

    I0: frozenset[str]
    I1: frozenset[str]

    @staticmethod
    def of(I0, I1) -> "SubSeedSpec":
        return SubSeedSpec(frozenset(I0), frozenset(I1))

    def validate(self, seed: Seed) -> None:
        bad = self.I0 - set(seed.exchangeable_labels)
        if bad:
            raise SpecError(f"I0 labels not exchangeable in the seed: {sorted(bad)}")
        bad = self.I1 - set(seed.labels)
        if bad:
            raise SpecError(f"I1 labels not in the extended cluster: {sorted(bad)}")
        both = self.I0 & self.I1
        if both:
            raise SpecError(f"I0 and I1 overlap: {sorted(both)}")

    def sort_key(self, seed: Seed):
        """Lexicographic key in the seed's label order, I0 before I1."""
        order = {x: i for i, x in enumerate(seed.labels)}
        return (
            len(self.I0),
            sorted(order[x] for x in self.I0),
            len(self.I1),
            sorted(order[x] for x in self.I1),
        )


EMPTY_SPEC = SubSeedSpec(frozenset(), frozenset())


def mixing_subseed(seed: Seed, spec: SubSeedSpec) -> Seed:
    """The (I0, I1)-type sub-seed of the given seed.

    Exchangeable variables X minus (I0 union I1), frozen variables
    (X_fr union I0) minus I1, matrix the entrywise restriction.  The
    frozen order lists newly frozen I0 variables first.
    """
    spec.validate(seed)
    ex = tuple(x for x in seed.exchangeable_labels if x not in spec.I0 and x not in spec.I1)
    fr = tuple(x for x in seed.exchangeable_labels if x in spec.I0) + tuple(
        x for x in seed.frozen_labels if x not in spec.I1
    )
    cols = ex + fr
    rows = tuple(tuple(seed.b(x, y) for y in cols) for x in ex)
    matrix = ExtendedExchangeMatrix(n=len(ex), m=len(fr), entries=rows)
    return Seed(ex, fr, matrix)


@dataclass(frozen=True)
class PartialSeedHom:
    """A variable map defined on the (I0, I1) sub-seed of the source.

    mapping[i] is the target label of source.labels[i], or None when
    source.labels[i] lies in I1 (outside the domain).
    """

    source: Seed
    spec: SubSeedSpec
    target: Seed
    mapping: tuple[str | None, ...]

    @staticmethod
    def from_dict(source: Seed, spec: SubSeedSpec, target: Seed, map_dict) -> "PartialSeedHom":
        mapping = tuple(
            None if x in spec.I1 else map_dict.get(x) for x in source.labels
        )
        return PartialSeedHom(source, spec, target, mapping)

    def __call__(self, label: str) -> str:
        v = self.mapping[self.source.index(label)]
        if v is None:
            raise HomError(f"{label!r} is outside the domain")
        return v

    def map_dict(self) -> dict[str, str]:
        return {
            x: v for x, v in zip(self.source.labels, self.mapping) if v is not None
        }

    @property
    def dom_ex(self) -> tuple[str, ...]:
        """Exchangeable part of the domain: X minus (I0 union I1)."""
        return tuple(
            x
            for x in self.source.exchangeable_labels
            if x not in self.spec.I0 and x not in self.spec.I1
        )

    @property
    def dom_fr(self) -> tuple[str, ...]:
        """Frozen part of the domain: (X_fr union I0) minus I1."""
        return tuple(x for x in self.source.exchangeable_labels if x in self.spec.I0) + tuple(
            x for x in self.source.frozen_labels if x not in self.spec.I1
        )

    @property
    def domain(self) -> tuple[str, ...]:
        return tuple(x for x in self.source.labels if x not in self.spec.I1)

    def is_empty(self) -> bool:
        return all(v is None for v in self.mapping) and len(self.spec.I1) == len(
            self.source.labels
        )

    def source_subseed(self) -> Seed:
        return mixing_subseed(self.source, self.spec)


def identity_inclusion(seed: Seed, spec: SubSeedSpec) -> PartialSeedHom:
    """The natural inclusion of the (I0, I1) sub-seed into the seed."""
    spec.validate(seed)
    mapping = tuple(None if x in spec.I1 else x for x in seed.labels)
    return PartialSeedHom(seed, spec, seed, mapping)


def empty_hom(seed: Seed, target: Seed | None = None) -> PartialSeedHom:
    spec = SubSeedSpec(frozenset(), frozenset(seed.labels))
    return PartialSeedHom(seed, spec, target if target is not None else seed, (None,) * len(seed.labels))


def check_partial_hom(candidate: PartialSeedHom) -> tuple[bool, str | None]:
    """Validate the homomorphism conditions; returns (ok, first violation).

    Condition (a): exchangeable domain variables map to exchangeable
    target variables.  Condition (b): over all adjacent pairs (x, y),
    (z, w) of the sub-seed (x = z or b_xz nonzero), the products
    b'_{f(x)f(y)} b_{xy} never take opposite signs, and magnitudes never
    shrink.  Per row the condition collapses to a single sign.
    """
    src, spec, tgt = candidate.source, candidate.spec, candidate.target
    try:
        spec.validate(src)
    except SpecError as exc:
        return False, str(exc)
    tgt_labels = set(tgt.labels)
    for x, v in zip(src.labels, candidate.mapping):
        if x in spec.I1:
            if v is not None:
                return False, f"{x!r} lies in I1 but is mapped"
        elif v is None:
            return False, f"{x!r} lies in the domain but is unmapped"
        elif v not in tgt_labels:
            return False, f"{x!r} maps to unknown target label {v!r}"
    sub = candidate.source_subseed()
    f = candidate.map_dict()
    dom_ex = candidate.dom_ex
    for x in dom_ex:
        if not tgt.is_exchangeable(f[x]):
            return False, f"condition (a): exchangeable {x!r} maps to frozen {f[x]!r}"
    # per-row sign of b'_{f(x)f(y)} * b_{xy}, and the magnitude condition
    row_sign: dict[str, int] = {}
    for x in dom_ex:
        sign = 0
        for y in sub.labels:
            bxy = sub.b(x, y)
            bpq = tgt.b(f[x], f[y])
            if abs(bpq) < abs(bxy):
                return False, (
                    f"magnitude: |b'_({f[x]},{f[y]})|={abs(bpq)} < |b_({x},{y})|={abs(bxy)}"
                )
            s = bpq * bxy
            if s > 0:
                if sign < 0:
                    return False, f"sign coherence fails within row {x!r}"
                sign = 1
            elif s < 0:
                if sign > 0:
                    return False, f"sign coherence fails within row {x!r}"
                sign = -1
        row_sign[x] = sign
    for x, z in itertools.combinations(dom_ex, 2):
        if sub.b(x, z) != 0 and row_sign[x] * row_sign[z] < 0:
            return False, f"sign coherence fails across adjacent rows {x!r}, {z!r}"
    return True, None


def require_hom(candidate: PartialSeedHom) -> PartialSeedHom:
    ok, why = check_partial_hom(candidate)
    if not ok:
        raise HomError(why)
    return candidate


def compose(g: PartialSeedHom, f: PartialSeedHom) -> PartialSeedHom:
    """g after f, with the domain-filtered composition rule.

    x survives in the exchangeable part iff x is exchangeable for f and
    f(x) is exchangeable for g, and similarly for the frozen part.  An
    empty surviving domain gives the empty homomorphism.
    """
    if f.target != g.source:
        raise HomError("target of the inner map differs from source of the outer map")
    g_ex = set(g.dom_ex)
    g_fr = set(g.dom_fr)
    new_ex = [x for x in f.dom_ex if f(x) in g_ex]
    new_fr = [x for x in f.dom_fr if f(x) in g_fr]
    dom = set(new_ex) | set(new_fr)
    I1 = frozenset(x for x in f.source.labels if x not in dom)
    I0 = frozenset(x for x in new_fr if f.source.is_exchangeable(x))
    mapping = tuple(
        g(f(x)) if x in dom else None for x in f.source.labels
    )
    return PartialSeedHom(f.source, SubSeedSpec(I0, I1), g.target, mapping)


def image_spec(f: PartialSeedHom) -> SubSeedSpec:
    """The (I0', I1') spec cutting the image seed out of the target."""
    values = {f(x) for x in f.domain}
    ex_values = {f(x) for x in f.dom_ex}
    I1 = frozenset(y for y in f.target.labels if y not in values)
    I0 = frozenset(
        y for y in values - ex_values if f.target.is_exchangeable(y)
    )
    return SubSeedSpec(I0, I1)


def image_seed(f: PartialSeedHom) -> Seed:
    """Restriction of the target to the image, exchangeable part f(dom_ex)."""
    return mixing_subseed(f.target, image_spec(f))


def _vertex_signature(seed: Seed, x: str):
    i = seed.index(x)
    n = seed.n
    e = seed.matrix.entries
    if i < n:
        out_ex = sorted(abs(e[i][j]) for j in range(n))
        out_fr = sorted(abs(e[i][j]) for j in range(n, n + seed.m))
        return ("ex", tuple(out_ex), tuple(out_fr))
    col = sorted(abs(e[j][i]) for j in range(n))
    return ("fr", tuple(col))


def enumerate_seed_isos(a: Seed, b: Seed):
    """All seed isomorphisms a -> b (magnitude-preserving sign-coherent
    bijections sending exchangeable to exchangeable).

    Backtracking over exchangeable labels first, pruned by per-vertex
    weight multisets; each completed bijection is re-validated.
    """
    if a.n != b.n or a.m != b.m:
        return
    sig_a = {x: _vertex_signature(a, x) for x in a.labels}
    sig_b = {x: _vertex_signature(b, x) for x in b.labels}
    order = list(a.exchangeable_labels) + list(a.frozen_labels)
    candidates = {
        x: [y for y in (b.exchangeable_labels if a.is_exchangeable(x) else b.frozen_labels)
            if sig_b[y] == sig_a[x]]
        for x in order
    }
    if any(not candidates[x] for x in order):
        return

    assignment: dict[str, str] = {}
    used: set[str] = set()

    def consistent(x: str, y: str) -> bool:
        for u, v in assignment.items():
            if abs(a.b_or_zero(x, u)) != abs(b.b_or_zero(y, v)):
                return False
            if abs(a.b_or_zero(u, x)) != abs(b.b_or_zero(v, y)):
                return False
        return True

    def backtrack(i: int):
        if i == len(order):
            hom = PartialSeedHom.from_dict(a, EMPTY_SPEC, b, assignment)
            ok, _ = check_partial_hom(hom)
            if ok and all(
                abs(b.b(assignment[x], assignment[y])) == abs(a.b(x, y))
                for x in a.exchangeable_labels
                for y in a.labels
            ):
                yield hom
            return
        x = order[i]
        for y in candidates[x]:
            if y in used or not consistent(x, y):
                continue
            assignment[x] = y
            used.add(y)
            yield from backtrack(i + 1)
            del assignment[x]
            used.discard(y)

    yield from backtrack(0)


def find_seed_iso(a: Seed, b: Seed) -> PartialSeedHom | None:
    return next(enumerate_seed_isos(a, b), None)


def is_seed_iso(hom: PartialSeedHom) -> bool:
    if hom.spec != EMPTY_SPEC:
        return False
    a, b = hom.source, hom.target
    values = [hom(x) for x in a.labels]
    if len(set(values)) != len(values) or set(values) != set(b.labels):
        return False
    if {hom(x) for x in a.exchangeable_labels} != set(b.exchangeable_labels):
        return False
    ok, _ = check_partial_hom(hom)
    return ok and all(
        abs(b.b(hom(x), hom(y))) == abs(a.b(x, y))
        for x in a.exchangeable_labels
        for y in a.labels
    )


def inverse_iso(iso: PartialSeedHom) -> PartialSeedHom:
    if not is_seed_iso(iso):
        raise HomError("not a seed isomorphism")
    inv = {iso(x): x for x in iso.source.labels}
    return PartialSeedHom.from_dict(iso.target, EMPTY_SPEC, iso.source, inv)


def automorphism_group(seed: Seed) -> list[PartialSeedHom]:
    return list(enumerate_seed_isos(seed, seed))


def factor_through_image(f: PartialSeedHom) -> tuple[PartialSeedHom, PartialSeedHom]:
    """Split f as inclusion after a surjection onto its image seed."""
    img_spec = image_spec(f)
    img = mixing_subseed(f.target, img_spec)
    f1 = PartialSeedHom(f.source, f.spec, img, f.mapping)
    inclusion = identity_inclusion(f.target, img_spec)
    return f1, inclusion


def is_retraction(f1: PartialSeedHom, onto: Seed | None = None) -> PartialSeedHom | None:
    """A right inverse g with f1 composed with g the identity, or None.

    f1 should be surjective onto its target (the image-seed factor);
    the search runs over all sections of the fibers.
    """
    img = f1.target if onto is None else onto
    fibers: dict[str, list[str]] = {y: [] for y in img.labels}
    for x in f1.domain:
        v = f1(x)
        if v in fibers:
            fibers[v].append(x)
    if any(not fibers[y] for y in img.labels):
        return None
    ident = identity_inclusion(img, EMPTY_SPEC)
    labels = list(img.labels)
    for choice in itertools.product(*(fibers[y] for y in labels)):
        g = PartialSeedHom.from_dict(
            img, EMPTY_SPEC, f1.source, dict(zip(labels, choice))
        )
        ok, _ = check_partial_hom(g)
        if not ok:
            continue
        composed = compose(f1, g)
        if composed.spec == ident.spec and composed.mapping == ident.mapping:
            return g
    return None
