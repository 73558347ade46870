"""Exact integer seeds and matrix mutation.

A seed is an ordered family of exchangeable and frozen variable labels
together with an n x (n+m) integer matrix whose rows are indexed by the
exchangeable variables and whose columns are indexed by all variables
(exchangeable first).  Labels are the identity of variables; matrix
indices are an internal ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import SeedError

__all__ = [
    "ExtendedExchangeMatrix",
    "Seed",
    "ValidationReport",
    "validate_seed",
    "matrix_mutation",
    "is_connected",
    "find_symmetrizer",
]


@dataclass(frozen=True)
class ExtendedExchangeMatrix:
    """Integer matrix of shape n x (n+m); entries[i][j] = b_{ij}."""

    n: int
    m: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise SeedError("n and m must be nonnegative")
        if len(self.entries) != self.n:
            raise SeedError(f"expected {self.n} rows, got {len(self.entries)}")
        width = self.n + self.m
        for i, row in enumerate(self.entries):
            if len(row) != width:
                raise SeedError(f"row {i} has length {len(row)}, expected {width}")
            if not all(isinstance(v, int) for v in row):
                raise SeedError(f"row {i} contains non-integer entries")

    @staticmethod
    def from_rows(rows, m: int = 0) -> "ExtendedExchangeMatrix":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        return ExtendedExchangeMatrix(n=n, m=m, entries=rows)

    def principal(self) -> tuple[tuple[int, ...], ...]:
        return tuple(row[: self.n] for row in self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class Seed:
    """A pair (cluster, extended exchange matrix) with named variables."""

    exchangeable_labels: tuple[str, ...]
    frozen_labels: tuple[str, ...]
    matrix: ExtendedExchangeMatrix

    def __post_init__(self):
        labels = self.exchangeable_labels + self.frozen_labels
        if len(set(labels)) != len(labels):
            raise SeedError("variable labels must be pairwise distinct")
        if self.matrix.n != len(self.exchangeable_labels):
            raise SeedError("matrix row count does not match exchangeable labels")
        if self.matrix.m != len(self.frozen_labels):
            raise SeedError("matrix frozen-column count does not match frozen labels")

    @staticmethod
    def from_data(exchangeable, frozen, rows) -> "Seed":
        ex = tuple(str(x) for x in exchangeable)
        fr = tuple(str(x) for x in frozen)
        mat = ExtendedExchangeMatrix(
            n=len(ex), m=len(fr), entries=tuple(tuple(int(v) for v in row) for row in rows)
        )
        return Seed(ex, fr, mat)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def labels(self) -> tuple[str, ...]:
        """All variables, exchangeable first (the extended cluster)."""
        return self.exchangeable_labels + self.frozen_labels

    def is_trivial(self) -> bool:
        return self.n == 0

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SeedError(f"unknown variable {label!r}") from None

    def is_exchangeable(self, label: str) -> bool:
        return label in self.exchangeable_labels

    def b(self, x: str, y: str) -> int:
        """Entry b_{xy}; defined whenever x is exchangeable."""
        i = self.index(x)
        if i >= self.n:
            raise SeedError(f"b_({x},{y}) undefined: {x!r} is frozen")
        return self.matrix.entries[i][self.index(y)]

    def b_or_zero(self, x: str, y: str) -> int:
        """b_{xy} when defined, else 0 (frozen row)."""
        i = self.index(x)
        if i >= self.n:
            return 0
        return self.matrix.entries[i][self.index(y)]


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    symmetrizer: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def find_symmetrizer(principal) -> tuple[int, ...] | None:
    """Positive integers d with d_i b_ij = -d_j b_ji, or None.

    d is propagated along a spanning forest of the nonzero-entry graph,
    then every edge is verified.  Disconnected principal parts get
    per-component values, each normalized by gcd.
    """
    n = len(principal)
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        component = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if d[j] is not None:
                    continue
                bij, bji = principal[i][j], principal[j][i]
                if bij == 0 and bji == 0:
                    continue
                if bij == 0 or bji == 0:
                    return None  # sign-skew-symmetry already broken
                # d_i b_ij = -d_j b_ji
                d[j] = -d[i] * Fraction(bij, bji)
                if d[j] <= 0:
                    return None
                component.append(j)
                stack.append(j)
        denom = lcm(*(f.denominator for f in (d[i] for i in component))) if component else 1
        ints = [int(d[i] * denom) for i in component]
        g = gcd(*ints) if ints else 1
        for i, v in zip(component, ints):
            d[i] = Fraction(v // g)
    di = tuple(int(f) for f in d)
    for i in range(n):
        for j in range(n):
            if di[i] * principal[i][j] != -di[j] * principal[j][i]:
                return None
    return di


def validate_seed(seed: Seed) -> ValidationReport:
    """Report-style check of sign-skew-symmetry and skew-symmetrizability."""
    violations = []
    principal = seed.matrix.principal()
    n = seed.n
    for i in range(n):
        for j in range(i, n):
            bij, bji = principal[i][j], principal[j][i]
            if not (bij == bji == 0 or bij * bji < 0):
                violations.append(
                    f"sign-skew-symmetry violated at ({i},{j})/({j},{i}): "
                    f"b={bij}, b'={bji}"
                )
    symmetrizer = None
    if not violations:
        symmetrizer = find_symmetrizer(principal)
        if symmetrizer is None:
            violations.append("no positive integer skew-symmetrizer exists")
    return ValidationReport(ok=not violations, violations=violations, symmetrizer=symmetrizer)


def require_valid(seed: Seed) -> Seed:
    report = validate_seed(seed)
    if not report.ok:
        raise SeedError("; ".join(report.violations))
    return seed


def matrix_mutation(matrix: ExtendedExchangeMatrix, k: int) -> ExtendedExchangeMatrix:
    """Matrix mutation in exchangeable direction k (an involution)."""
    n, m = matrix.n, matrix.m
    if not 0 <= k < n:
        raise IndexError(f"mutation direction {k} out of range 0..{n - 1}")
    a = matrix.entries
    rows = []
    for j in range(n):
        row = []
        for l in range(n + m):
            if j == k or l == k:
                row.append(-a[j][l])
            else:
                row.append(a[j][l] + (abs(a[j][k]) * a[k][l] + a[j][k] * abs(a[k][l])) // 2)
        rows.append(tuple(row))
    return ExtendedExchangeMatrix(n=n, m=m, entries=tuple(rows))


def mutate_seed_matrix(seed: Seed, k: int) -> Seed:
    return Seed(seed.exchangeable_labels, seed.frozen_labels, matrix_mutation(seed.matrix, k))


def is_connected(seed: Seed) -> bool:
    """True iff the extended cluster is joined up by connected pairs.

    (x, y) is a connected pair when x = y, or x != y with
    b_{xy}^2 + b_{yx}^2 != 0 and at least one of x, y exchangeable.
    """
    total = seed.n + seed.m
    if total <= 1:
        return True
    entries = seed.matrix.entries
    n = seed.n

    def linked(x: int, y: int) -> bool:
        bxy = entries[x][y] if x < n else 0
        byx = entries[y][x] if y < n else 0
        return (bxy != 0 or byx != 0) and (x < n or y < n)

    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in range(total):
            if y not in seen and linked(x, y):
                seen.add(y)
                stack.append(y)
    return len(seen) == total
