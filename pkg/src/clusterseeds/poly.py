"""Exact rational-function arithmetic over the initial extended cluster.

Polynomials are dictionaries from exponent vectors to integer
coefficients.  Fractions are kept in a Laurent normal form: the largest
common monomial and the integer content are divided out, and a
non-monomial denominator is eliminated by exact polynomial division.
Cluster exchange relations only ever need monomial denominators, so a
failed exact division aborts the run instead of returning a wrong value.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import LaurentViolation, ResourceCapExceeded, SeedError
from .seeds import ExtendedExchangeMatrix, Seed, matrix_mutation

__all__ = [
    "MultiPoly",
    "RationalFunction",
    "LabeledSeedState",
    "initial_state",
    "exchange",
    "mutate_state",
    "enumerate_clusters",
    "ClusterEnumeration",
]

MAX_TERMS = 10**6


def _grlex_key(exponents):
    return (sum(exponents), exponents)


class MultiPoly:
    """Integer polynomial in the ordered variables of an extended cluster."""

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: tuple[str, ...], terms: dict[tuple[int, ...], int]):
        self.context = context
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    @staticmethod
    def constant(context, value: int) -> "MultiPoly":
        if value == 0:
            return MultiPoly(context, {})
        return MultiPoly(context, {(0,) * len(context): value})

    @staticmethod
    def generator(context, label: str) -> "MultiPoly":
        i = context.index(label)
        exp = tuple(1 if j == i else 0 for j in range(len(context)))
        return MultiPoly(context, {exp: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.context == other.context and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, tuple(sorted(self.terms.items()))))
        return self._hash

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.context, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.context, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if len(out) > MAX_TERMS:
            raise ResourceCapExceeded(
                f"polynomial exceeded {MAX_TERMS} terms", partial_count=len(out)
            )
        return MultiPoly(self.context, out)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power on a polynomial")
        result = MultiPoly.constant(self.context, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    def leading(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def min_exponents(self) -> tuple[int, ...]:
        its = iter(self.terms)
        first = next(its)
        mins = list(first)
        for e in its:
            for i, v in enumerate(e):
                if v < mins[i]:
                    mins[i] = v
        return tuple(mins)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def divide_monomial(self, exponents, divisor: int = 1) -> "MultiPoly":
        return MultiPoly(
            self.context,
            {
                tuple(a - b for a, b in zip(e, exponents)): c // divisor
                for e, c in self.terms.items()
            },
        )

    def exact_div(self, other: "MultiPoly") -> "MultiPoly | None":
        """Quotient self/other over Z if the division is exact, else None."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quot: dict[tuple[int, ...], int] = {}
        rem = self
        le, lc = other.leading()
        while not rem.is_zero():
            re, rc = rem.leading()
            q, r = divmod(rc, lc)
            if r != 0 or any(a < b for a, b in zip(re, le)):
                return None
            e = tuple(a - b for a, b in zip(re, le))
            quot[e] = q
            rem = rem - MultiPoly(self.context, {e: q}) * other
        return MultiPoly(self.context, quot)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = [
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.context, e)
                if k
            ]
            body = "*".join(factors)
            if not body:
                mono = str(abs(c))
            elif abs(c) == 1:
                mono = body
            else:
                mono = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = (first if first_sign == "+" else f"-{first}")
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    __repr__ = __str__


class RationalFunction:
    """Reduced fraction of two MultiPoly values (Laurent normal form)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = self._reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _reduce(num, den):
        context = num.context
        if num.is_zero():
            return num, MultiPoly.constant(context, 1)
        shift = tuple(min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents()))
        if any(shift):
            num = num.divide_monomial(shift)
            den = den.divide_monomial(shift)
        if not den.is_monomial():
            # den = c * x^dmin * D with D primitive; Laurent form needs D | num
            dmin = den.min_exponents()
            c = den.content()
            D = den.divide_monomial(dmin, divisor=c)
            quot = num.exact_div(D)
            if quot is None:
                raise LaurentViolation(
                    "the non-monomial part of the denominator does not divide the numerator"
                )
            num, den = quot, MultiPoly(context, {dmin: c})
            extra = tuple(
                min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents())
            )
            if any(extra):
                num = num.divide_monomial(extra)
                den = den.divide_monomial(extra)
        g = gcd(num.content(), den.content())
        if den.leading()[1] < 0:
            g = -g
        if g != 1:
            num = MultiPoly(context, {e: c // g for e, c in num.terms.items()})
            den = MultiPoly(context, {e: c // g for e, c in den.terms.items()})
        return num, den

    @staticmethod
    def from_poly(p: MultiPoly) -> "RationalFunction":
        return RationalFunction(p, MultiPoly.constant(p.context, 1))

    @staticmethod
    def generator(context, label: str) -> "RationalFunction":
        return RationalFunction.from_poly(MultiPoly.generator(context, label))

    @staticmethod
    def one(context) -> "RationalFunction":
        return RationalFunction.from_poly(MultiPoly.constant(context, 1))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction(self.den**-k, self.num**-k)
        return RationalFunction(self.num**k, self.den**k)

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def __str__(self) -> str:
        if self.den.is_monomial() and self.den.terms == {(0,) * len(self.den.context): 1}:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    __repr__ = __str__


@dataclass(frozen=True)
class LabeledSeedState:
    """A labeled seed reached from the base seed by mutations.

    Exchangeable slot i currently holds assignment[i]; frozen slots
    always hold their own generator.
    """

    seed: Seed
    matrix: ExtendedExchangeMatrix
    assignment: tuple[RationalFunction, ...]

    def cluster(self) -> frozenset[RationalFunction]:
        return frozenset(self.assignment)

    def variable(self, t: int) -> RationalFunction:
        """Current value of column t (exchangeable slot or frozen generator)."""
        if t < self.seed.n:
            return self.assignment[t]
        return RationalFunction.generator(self.seed.labels, self.seed.labels[t])


def initial_state(seed: Seed) -> LabeledSeedState:
    context = seed.labels
    assignment = tuple(
        RationalFunction.generator(context, x) for x in seed.exchangeable_labels
    )
    return LabeledSeedState(seed=seed, matrix=seed.matrix, assignment=assignment)


def exchange(state: LabeledSeedState, k: int) -> RationalFunction:
    """The exchange relation in direction k on the current assignment."""
    n, m = state.matrix.n, state.matrix.m
    if not 0 <= k < n:
        raise IndexError(f"exchange direction {k} out of range 0..{n - 1}")
    context = state.seed.labels
    plus = RationalFunction.one(context)
    minus = RationalFunction.one(context)
    row = state.matrix.entries[k]
    for t in range(n + m):
        b = row[t]
        if b > 0:
            plus = plus * state.variable(t) ** b
        elif b < 0:
            minus = minus * state.variable(t) ** (-b)
    result = (plus + minus) / state.assignment[k]
    if not result.is_laurent():
        raise LaurentViolation(f"exchange at slot {k} produced a non-Laurent value")
    return result


def mutate_state(state: LabeledSeedState, k: int) -> LabeledSeedState:
    new_value = exchange(state, k)
    assignment = tuple(
        new_value if i == k else v for i, v in enumerate(state.assignment)
    )
    return LabeledSeedState(
        seed=state.seed, matrix=matrix_mutation(state.matrix, k), assignment=assignment
    )


@dataclass
class ClusterEnumeration:
    clusters: list[frozenset[RationalFunction]]
    status: str  # "closed" | "truncated"


def enumerate_clusters(
    seed: Seed, max_depth: int, max_states: int = 100_000
) -> ClusterEnumeration:
    """Breadth-first closure of labeled seed states up to max_depth.

    Clusters are deduplicated as unordered sets of reduced fractions.
    The status is "closed" only when the state graph was exhausted within
    the depth and state caps.
    """
    start = initial_state(seed)
    seen_states = {(start.assignment, start.matrix.entries)}
    clusters = {start.cluster()}
    order = [start.cluster()]
    frontier = [start]
    status = "closed" if seed.n == 0 else None
    depth = 0
    while frontier and status is None:
        if depth >= max_depth:
            status = "truncated"
            break
        depth += 1
        new_frontier = []
        for state in frontier:
            for k in range(seed.n):
                nxt = mutate_state(state, k)
                key = (nxt.assignment, nxt.matrix.entries)
                if key in seen_states:
                    continue
                if len(seen_states) >= max_states:
                    return ClusterEnumeration(order, "truncated")
                seen_states.add(key)
                new_frontier.append(nxt)
                c = nxt.cluster()
                if c not in clusters:
                    clusters.add(c)
                    order.append(c)
        if not new_frontier:
            status = "closed"
        frontier = new_frontier
    return ClusterEnumeration(order, status or "closed")
