"""Partial summation oracles: the carrier types, the instances, and homomorphisms.

A summation oracle is a total function from finite indexed families to
either a value or a refusal.  Everything downstream (categories, the
Cauchy product, the law suite) is written against this one surface.
"""

from __future__ import annotations

import cmath
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Callable, Iterable, Mapping

from .errors import (
    CarrierMismatchError,
    NonFiniteError,
    NotAMonoidError,
    NotCommutativeError,
)
from .family import IndexedFamily, family_of, make_family
from .report import format_complex

DEFAULT_TOLERANCE = 1e-9


# --------------------------------------------------------------------------
# carrier element types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Residue:
    """An integer reduced to the canonical range [0, modulus)."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "Residue") -> None:
        if not isinstance(other, Residue) or other.modulus != self.modulus:
            raise CarrierMismatchError(f"mixed moduli: {self} vs {other}")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


@dataclass(frozen=True)
class PartialFn:
    """A partial function on {0..n-1}, stored as its graph."""

    graph: frozenset[tuple[int, int]]

    @staticmethod
    def of(mapping: Mapping[int, int]) -> "PartialFn":
        return PartialFn(frozenset(mapping.items()))

    def __post_init__(self):
        keys = [k for k, _ in self.graph]
        if len(set(keys)) != len(keys):
            raise ValueError("graph is not functional")

    @cached_property
    def mapping(self) -> dict[int, int]:
        return dict(sorted(self.graph))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(k for k, _ in self.graph)

    def is_injective(self) -> bool:
        values = [v for _, v in self.graph]
        return len(set(values)) == len(values)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def compose(self, inner: "PartialFn") -> "PartialFn":
        """self after inner."""
        out = {}
        for x, y in inner.graph:
            if y in self.mapping:
                out[x] = self.mapping[y]
        return PartialFn.of(out)

    def __str__(self) -> str:
        inner = ",".join(f"{k}>{v}" for k, v in sorted(self.graph))
        return "{" + inner + "}"


@dataclass(frozen=True)
class Relation:
    """A relation between {0..n-1} and {0..m-1}, stored as a pair set."""

    pairs: frozenset[tuple[int, int]]

    @staticmethod
    def of(pairs: Iterable[tuple[int, int]]) -> "Relation":
        return Relation(frozenset(tuple(p) for p in pairs))

    def compose(self, inner: "Relation") -> "Relation":
        """self after inner."""
        out = set()
        for a, b in inner.pairs:
            for c, d in self.pairs:
                if b == c:
                    out.add((a, d))
        return Relation(frozenset(out))

    def union(self, other: "Relation") -> "Relation":
        return Relation(self.pairs | other.pairs)

    @staticmethod
    def identity(n: int) -> "Relation":
        return Relation(frozenset((i, i) for i in range(n)))

    def __str__(self) -> str:
        inner = ",".join(f"({a},{b})" for a, b in sorted(self.pairs))
        return "{" + inner + "}"


@dataclass(frozen=True)
class Vec:
    """A vector of exact rationals."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def of(*coords) -> "Vec":
        return Vec(tuple(Fraction(c) for c in coords))

    def __add__(self, other: "Vec") -> "Vec":
        if len(self.coords) != len(other.coords):
            raise CarrierMismatchError("vector dimensions differ")
        return Vec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def l1_norm(self) -> Fraction:
        return sum((abs(c) for c in self.coords), Fraction(0))

    def linf_norm(self) -> Fraction:
        return max((abs(c) for c in self.coords), default=Fraction(0))

    def squared_l2_norm(self) -> Fraction:
        return sum((c * c for c in self.coords), Fraction(0))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def format_element(x) -> str:
    if isinstance(x, complex):
        return format_complex(x)
    return str(x)


# --------------------------------------------------------------------------
# exact comparison of sums of square roots (for the l2 ball)
# --------------------------------------------------------------------------


def _exact_sqrt(q: Fraction) -> Fraction | None:
    """The rational square root of q, or None if q is not a perfect square."""
    if q < 0:
        raise ValueError("negative radicand")
    p, d = q.numerator, q.denominator
    rp, rd = isqrt(p), isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


def compare_sqrt_sum(squares: Iterable[Fraction], bound: Fraction) -> int:
    """Sign of (sum of sqrt(q) for q in squares) - bound, computed exactly.

    Splits off perfect squares; a nonempty sum of irrational square roots
    of rationals is itself irrational, so the residual comparison is strict
    and interval refinement with integer square roots terminates.
    """
    rational_part = Fraction(0)
    irrational: list[Fraction] = []
    for q in squares:
        root = _exact_sqrt(Fraction(q))
        if root is None:
            irrational.append(Fraction(q))
        else:
            rational_part += root
    target = bound - rational_part
    if not irrational:
        return (0 > target) - (0 < target)
    if target <= 0:
        return 1
    shift = 32
    while True:
        scale = 1 << shift
        lo = Fraction(0)
        hi = Fraction(0)
        for q in irrational:
            n = q.numerator * q.denominator
            r = isqrt(n * scale * scale)
            lo += Fraction(r, q.denominator * scale)
            hi += Fraction(r + 1, q.denominator * scale)
        if lo > target:
            return 1
        if hi < target:
            return -1
        shift += 32


# --------------------------------------------------------------------------
# the summation abstraction
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Summable:
    """A family admitted by the oracle, with its sum."""

    value: object


@dataclass(frozen=True)
class NotSummable:
    """A family refused by the oracle."""


NOT_SUMMABLE = NotSummable()


def exact_eq(a, b) -> bool:
    return a == b


def complex_close(tol: float) -> Callable:
    def close(a: complex, b: complex) -> bool:
        return abs(a.real - b.real) <= tol and abs(a.imag - b.imag) <= tol

    return close


@dataclass(frozen=True, eq=False)
class Pcm:
    """A carrier together with a total summation oracle over finite families.

    ``sample_elements`` is the instance's desk-scale element grid;
    ``family_grid`` is the (possibly smaller) subset that exhaustive
    family sweeps enumerate multisets over.
    """

    name: str
    contains: Callable[[object], bool]
    oracle: Callable[[IndexedFamily], Summable | NotSummable]
    sample_elements: tuple = ()
    family_grid: tuple = ()
    close: Callable[[object, object], bool] = exact_eq

    def sum(self, fam: IndexedFamily) -> Summable | NotSummable:
        for label, value in fam.entries:
            if not self.contains(value):
                raise CarrierMismatchError(
                    f"{self.name}: entry {label!r} = {format_element(value)} "
                    "is outside the carrier"
                )
        return self.oracle(fam)

    @cached_property
    def zero(self):
        result = self.sum(make_family([]))
        if not isinstance(result, Summable):
            raise NotAMonoidError(f"{self.name}: empty family must be summable")
        return result.value

    @property
    def grid(self) -> tuple:
        return self.family_grid or self.sample_elements


def zero(p: Pcm):
    """The sum of the empty family."""
    return p.zero


def sum_family(p: Pcm, fam: IndexedFamily) -> Summable | NotSummable:
    return p.sum(fam)


# --------------------------------------------------------------------------
# commutative monoid descriptors (for finite-families / K-bounded summation)
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Monoid:
    """A commutative monoid given by its unit and binary operation."""

    name: str
    unit: object
    op: Callable
    contains: Callable[[object], bool]
    sample: tuple = ()
    close: Callable = exact_eq


def validate_monoid(monoid: Monoid, trials: int = 1000, seed: str = "monoid") -> None:
    """Spot-check commutativity, associativity, and the unit on sampled triples."""
    if not monoid.sample:
        return
    rng = random.Random(f"{seed}:{monoid.name}")
    for _ in range(trials):
        a, b, c = (rng.choice(monoid.sample) for _ in range(3))
        if not monoid.close(monoid.op(a, b), monoid.op(b, a)):
            raise NotCommutativeError(f"{monoid.name}: {a} op {b} != {b} op {a}")
        left = monoid.op(monoid.op(a, b), c)
        right = monoid.op(a, monoid.op(b, c))
        if not monoid.close(left, right):
            raise NotAMonoidError(f"{monoid.name}: associativity fails on ({a},{b},{c})")
        if not monoid.close(monoid.op(a, monoid.unit), a):
            raise NotAMonoidError(f"{monoid.name}: unit law fails on {a}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


# magnitude-first order keeps canonical witnesses small
INT_ADD = Monoid(
    name="(Z,+)",
    unit=0,
    op=lambda a, b: a + b,
    contains=_is_int,
    sample=(0, 1, -1, 2, -2, 3, -3),
)

RATIONAL_ADD = Monoid(
    name="(Q,+)",
    unit=Fraction(0),
    op=lambda a, b: a + b,
    contains=lambda x: isinstance(x, Fraction),
    sample=tuple(
        sorted(
            {Fraction(p, q) for q in (1, 2, 3, 4) for p in range(-q - 1, q + 2)},
            key=lambda f: (f, f.denominator),
        )
    ),
)


def mod_add(n: int) -> Monoid:
    return Monoid(
        name=f"(Z mod {n},+)",
        unit=Residue(0, n),
        op=lambda a, b: a + b,
        contains=lambda x: isinstance(x, Residue) and x.modulus == n,
        sample=tuple(Residue(k, n) for k in range(n)),
    )


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------


def make_finite_families_pcm(monoid: Monoid, family_grid: tuple = ()) -> Pcm:
    """Every finite family is summable; the sum folds the monoid operation."""
    validate_monoid(monoid)

    def oracle(fam: IndexedFamily):
        total = monoid.unit
        for _, value in fam.entries:
            total = monoid.op(total, value)
        return Summable(total)

    return Pcm(
        name=f"finite-families[{monoid.name}]",
        contains=monoid.contains,
        oracle=oracle,
        sample_elements=monoid.sample,
        family_grid=family_grid,
        close=monoid.close,
    )


def make_k_bounded_pcm(monoid: Monoid, k: int, family_grid: tuple = ()) -> Pcm:
    """Summable exactly when at most k entries differ from the unit."""
    if k < 1:
        raise ValueError("k must be positive")
    validate_monoid(monoid)

    def oracle(fam: IndexedFamily):
        nonzero = sum(1 for _, value in fam.entries if value != monoid.unit)
        if nonzero > k:
            return NOT_SUMMABLE
        total = monoid.unit
        for _, value in fam.entries:
            total = monoid.op(total, value)
        return Summable(total)

    return Pcm(
        name=f"{k}-bounded[{monoid.name}]",
        contains=monoid.contains,
        oracle=oracle,
        sample_elements=monoid.sample,
        family_grid=family_grid,
        close=monoid.close,
    )


def all_partial_fns(n: int) -> tuple[PartialFn, ...]:
    """Every partial function on {0..n-1}, in a fixed order."""
    out = []
    for choice in itertools.product(range(n + 1), repeat=n):
        out.append(PartialFn.of({x: y for x, y in enumerate(choice) if y < n}))
    return tuple(out)


def all_partial_injections(n: int) -> tuple[PartialFn, ...]:
    return tuple(f for f in all_partial_fns(n) if f.is_injective())


def _disjoint_union(fam: IndexedFamily) -> PartialFn | None:
    union: dict[int, int] = {}
    for _, f in fam.entries:
        for x, y in f.graph:
            if x in union:
                return None
            union[x] = y
    return PartialFn.of(union)


def _overlap_union(fam: IndexedFamily) -> PartialFn | None:
    union: dict[int, int] = {}
    for _, f in fam.entries:
        for x, y in f.graph:
            if x in union and union[x] != y:
                return None
            union[x] = y
    return PartialFn.of(union)


def make_partial_fn_pcm(n: int, family_grid: tuple = ()) -> Pcm:
    """Partial functions on n points; summable when domains are pairwise disjoint."""

    def contains(x):
        return isinstance(x, PartialFn) and all(
            0 <= a < n and 0 <= b < n for a, b in x.graph
        )

    def oracle(fam: IndexedFamily):
        union = _disjoint_union(fam)
        return Summable(union) if union is not None else NOT_SUMMABLE

    return Pcm(
        name=f"partial-fns[{n}]",
        contains=contains,
        oracle=oracle,
        sample_elements=all_partial_fns(n),
        family_grid=family_grid,
    )


def make_partial_injection_pcm(n: int, mode: str, family_grid: tuple = ()) -> Pcm:
    """Partial injections on n points, with disjointness or overlap summation.

    Either way the oracle also insists the union is injective, so malformed
    combinations are refused rather than silently leaving the carrier.
    """
    if mode not in ("disjoint", "overlap"):
        raise ValueError(f"unknown mode {mode!r}")
    merge = _disjoint_union if mode == "disjoint" else _overlap_union

    def contains(x):
        return (
            isinstance(x, PartialFn)
            and x.is_injective()
            and all(0 <= a < n and 0 <= b < n for a, b in x.graph)
        )

    def oracle(fam: IndexedFamily):
        union = merge(fam)
        if union is None or not union.is_injective():
            return NOT_SUMMABLE
        return Summable(union)

    return Pcm(
        name=f"partial-injections-{mode}[{n}]",
        contains=contains,
        oracle=oracle,
        sample_elements=all_partial_injections(n),
        family_grid=family_grid,
    )


def all_relations(n: int, m: int) -> tuple[Relation, ...]:
    cells = [(a, b) for a in range(n) for b in range(m)]
    out = []
    for picks in itertools.product((False, True), repeat=len(cells)):
        out.append(Relation(frozenset(c for c, keep in zip(cells, picks) if keep)))
    return tuple(out)


def make_relations_pcm(n: int, m: int, family_grid: tuple = ()) -> Pcm:
    """Relations between {0..n-1} and {0..m-1}; every family sums to the union."""

    def contains(x):
        return isinstance(x, Relation) and all(
            0 <= a < n and 0 <= b < m for a, b in x.pairs
        )

    def oracle(fam: IndexedFamily):
        pairs: frozenset = frozenset()
        for _, rel in fam.entries:
            pairs |= rel.pairs
        return Summable(Relation(pairs))

    return Pcm(
        name=f"relations[{n}x{m}]",
        contains=contains,
        oracle=oracle,
        sample_elements=all_relations(n, m),
        family_grid=family_grid,
    )


COMPLEX_SAMPLE = (
    0j,
    1 + 0j,
    -1 + 0j,
    1j,
    -1j,
    0.5 + 0.5j,
    cmath.exp(2j * cmath.pi / 3),
)


def make_abs_convergence_pcm(tolerance: float = DEFAULT_TOLERANCE) -> Pcm:
    """Complex scalars; every finite family is summable.

    Floating addition is not associative, so entries are folded in ascending
    label order to make results bit-reproducible.
    """

    def oracle(fam: IndexedFamily):
        total = 0j
        for _, value in sorted(fam.entries, key=lambda e: e[0]):
            if not (cmath.isfinite(value)):
                raise NonFiniteError(f"non-finite component in {value!r}")
            total += value
        return Summable(total)

    return Pcm(
        name="abs-convergence[C]",
        contains=lambda x: isinstance(x, complex),
        oracle=oracle,
        sample_elements=COMPLEX_SAMPLE,
        close=complex_close(tolerance),
    )


def _unit_ball_samples(dim: int, norm: str) -> tuple[Vec, ...]:
    if dim == 1:
        return tuple(Vec.of(c) for c in (0, 1, -1, Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3)))
    base = [
        Vec.of(*([0] * dim)),
        Vec.of(1, *([0] * (dim - 1))),
        Vec.of(*([0] * (dim - 1)), -1),
        Vec.of(Fraction(1, 2), *([0] * (dim - 1))),
        Vec.of(Fraction(-1, 2), *([0] * (dim - 1))),
        Vec.of(*([Fraction(1, 2)] * dim)),
        Vec.of(Fraction(3, 10), Fraction(4, 10), *([0] * (dim - 2))),
        Vec.of(Fraction(1, 4), Fraction(-1, 4), *([0] * (dim - 2))),
    ]
    if norm == "l2":
        base.append(Vec.of(Fraction(3, 5), Fraction(4, 5), *([0] * (dim - 2))))
    seen, out = set(), []
    for v in base:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return tuple(out)


def make_unit_ball_pcm(dim: int, norm: str = "l1", family_grid: tuple = ()) -> Pcm:
    """Vectors of rationals; summable exactly when the norms sum to at most 1."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if norm not in ("l1", "l2", "linf"):
        raise ValueError(f"unknown norm {norm!r}")

    def contains(x):
        return isinstance(x, Vec) and len(x.coords) == dim

    def within_ball(fam: IndexedFamily) -> bool:
        if norm == "l1":
            return sum((v.l1_norm() for _, v in fam.entries), Fraction(0)) <= 1
        if norm == "linf":
            return sum((v.linf_norm() for _, v in fam.entries), Fraction(0)) <= 1
        squares = [v.squared_l2_norm() for _, v in fam.entries]
        return compare_sqrt_sum(squares, Fraction(1)) <= 0

    def oracle(fam: IndexedFamily):
        if not within_ball(fam):
            return NOT_SUMMABLE
        total = Vec(tuple(Fraction(0) for _ in range(dim)))
        for _, v in fam.entries:
            total = total + v
        return Summable(total)

    return Pcm(
        name=f"unit-ball[{norm},dim {dim}]",
        contains=contains,
        oracle=oracle,
        sample_elements=_unit_ball_samples(dim, norm),
        family_grid=family_grid,
    )


# --------------------------------------------------------------------------
# homomorphisms
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PcmHom:
    """A map of carriers intended to preserve summable families and sums."""

    source: Pcm
    target: Pcm
    map: Callable


def identity_hom(p: Pcm) -> PcmHom:
    return PcmHom(p, p, lambda x: x)


def compose_homs(g: PcmHom, f: PcmHom) -> PcmHom:
    return PcmHom(f.source, g.target, lambda x: g.map(f.map(x)))


def _families_over(grid: tuple, max_size: int):
    for size in range(max_size + 1):
        for combo in itertools.combinations_with_replacement(grid, size):
            yield family_of(combo)


def check_hom(h: PcmHom, max_size: int = 3):
    """Brute-force the homomorphism law over families drawn from the source grid.

    Returns a Report: PASS when every tested summable source family maps to
    a summable image family with the matching sum.
    """
    from .report import failing, passing

    name = f"hom[{h.source.name}->{h.target.name}]"
    for fam in _families_over(h.source.grid, max_size):
        result = h.source.sum(fam)
        if not isinstance(result, Summable):
            continue
        image = make_family([(label, h.map(value)) for label, value in fam.entries])
        image_result = h.target.sum(image)
        if not isinstance(image_result, Summable):
            return failing(name, fam, detail="image family not summable")
        if not h.target.close(h.map(result.value), image_result.value):
            return failing(name, fam, detail="sums disagree")
    return passing(name)
