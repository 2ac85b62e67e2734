"""Categories whose hom-sets carry summation oracles, and their law checkers.

Composition must distribute jointly over summation: for summable families
{f_i} and {g_j} of composable arrows, the doubly-indexed product family is
summable and sums to (sum g)(sum f).  Builders for the stock instances are
certified by the test suite; user-supplied instances are checked, never
trusted.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import ParseError, ShapeMismatchError
from .family import IndexedFamily, family_of, make_family
from .pcm import (
    DEFAULT_TOLERANCE,
    INT_ADD,
    RATIONAL_ADD,
    NotSummable,
    PartialFn,
    Pcm,
    Relation,
    Residue,
    Summable,
    Vec,
    all_partial_fns,
    all_partial_injections,
    all_relations,
    complex_close,
    exact_eq,
    make_abs_convergence_pcm,
    make_finite_families_pcm,
    make_k_bounded_pcm,
    make_partial_fn_pcm,
    make_partial_injection_pcm,
    make_relations_pcm,
    make_unit_ball_pcm,
    mod_add,
)
from .report import Report, failing, passing


class PcmCategory:
    """A category with a summation oracle on every hom-set."""

    def __init__(self, name, objects, hom_pcm, compose, identity, arrow_hom=None):
        self.name = name
        self.objects = tuple(objects)
        self._hom_pcm = hom_pcm
        self._compose = compose
        self._identity = identity
        self.arrow_hom = arrow_hom
        self._hom_cache: dict = {}

    def hom_pcm(self, x, y) -> Pcm:
        key = (x, y)
        if key not in self._hom_cache:
            self._hom_cache[key] = self._hom_pcm(x, y)
        return self._hom_cache[key]

    def compose(self, g, f):
        return self._compose(g, f)

    def identity(self, x):
        return self._identity(x)

    def __repr__(self):
        return f"PcmCategory({self.name!r})"


def zero_arrow(cat, x, y):
    """The empty-family sum in hom(x, y)."""
    return cat.hom_pcm(x, y).zero


# --------------------------------------------------------------------------
# builders
# --------------------------------------------------------------------------


def _one_object(name, pcm: Pcm, multiply, one) -> PcmCategory:
    return PcmCategory(
        name=name,
        objects=("*",),
        hom_pcm=lambda x, y: pcm,
        compose=multiply,
        identity=lambda x: one,
        arrow_hom=lambda f: ("*", "*"),
    )


def from_semiring(descriptor: str, tolerance: float = DEFAULT_TOLERANCE) -> PcmCategory:
    """One-object categories: composition is the semiring multiplication."""
    if descriptor == "int":
        return _one_object("int", make_finite_families_pcm(INT_ADD), lambda g, f: g * f, 1)
    if descriptor == "rational":
        pcm = make_finite_families_pcm(
            RATIONAL_ADD,
            family_grid=(
                Fraction(0), Fraction(1), Fraction(-1),
                Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(3, 4),
            ),
        )
        return _one_object("rational", pcm, lambda g, f: g * f, Fraction(1))
    if descriptor.startswith("mod:"):
        n = int(descriptor.split(":", 1)[1])
        pcm = make_finite_families_pcm(mod_add(n))
        return _one_object(f"mod:{n}", pcm, lambda g, f: g * f, Residue(1, n))
    if descriptor == "complex":
        pcm = make_abs_convergence_pcm(tolerance)
        return _one_object("complex", pcm, lambda g, f: g * f, 1 + 0j)
    raise ParseError(f"unknown semiring descriptor {descriptor!r}")


def k_bounded_category(k: int) -> PcmCategory:
    """Integers under multiplication with k-bounded summation.

    For k >= 2 this is the stock counterexample: each hom-set is a valid
    summation carrier, yet strong distributivity fails because a product
    family can hold k*k nonzero entries.
    """
    pcm = make_k_bounded_pcm(INT_ADD, k, family_grid=(0, 1, -1, 2, -2))
    return _one_object(f"kbounded:{k}", pcm, lambda g, f: g * f, 1)


@dataclass(frozen=True)
class Matrix:
    """A dense matrix over exact rationals or complex floats."""

    rows: tuple[tuple, ...]

    @staticmethod
    def of(rows: Iterable[Iterable]) -> "Matrix":
        return Matrix(tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ShapeMismatchError(f"cannot compose {self.shape} with {other.shape}")
        return Matrix(
            tuple(
                tuple(sum(self.rows[i][t] * other.rows[t][j] for t in range(k)) for j in range(m))
                for i in range(n)
            )
        )

    @staticmethod
    def zero(n: int, m: int, scalar_zero) -> "Matrix":
        return Matrix(tuple(tuple(scalar_zero for _ in range(m)) for _ in range(n)))

    @staticmethod
    def identity(n: int, scalar_zero, scalar_one) -> "Matrix":
        return Matrix(
            tuple(tuple(scalar_one if i == j else scalar_zero for j in range(n)) for i in range(n))
        )

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(str(v) for v in row) + "]" for row in self.rows) + "]"


def _matrix_samples(n: int, m: int, scalar: str) -> tuple[Matrix, ...]:
    if scalar == "rational":
        zero_s, one_s = Fraction(0), Fraction(1)
        entries = (Fraction(0), Fraction(1), Fraction(-1))
    else:
        zero_s, one_s = 0j, 1 + 0j
        entries = (0j, 1 + 0j, 1j)
    samples: list[Matrix] = [Matrix.zero(n, m, zero_s)]
    if n == m:
        samples.append(Matrix.identity(n, zero_s, one_s))
    cells = list(itertools.product(entries, repeat=n * m))
    for flat in cells[:: max(1, len(cells) // 16)]:
        matrix = Matrix.of([flat[i * m : (i + 1) * m] for i in range(n)])
        if matrix not in samples:
            samples.append(matrix)
        if len(samples) >= 16:
            break
    return tuple(samples)


def matrix_category(dims: Iterable[int], scalar: str = "rational",
                    tolerance: float = DEFAULT_TOLERANCE) -> PcmCategory:
    """Objects are dimensions; hom(m, n) is the n-by-m matrices; every family sums."""
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError("dims must be a nonempty list of positive integers")
    if scalar == "rational":
        zero_s, one_s = Fraction(0), Fraction(1)
        scalar_ok = lambda v: isinstance(v, Fraction)
        close = exact_eq
    elif scalar == "complex":
        zero_s, one_s = 0j, 1 + 0j
        scalar_ok = lambda v: isinstance(v, complex)
        ctol = complex_close(tolerance)

        def close(a: Matrix, b: Matrix) -> bool:
            return a.shape == b.shape and all(
                ctol(x, y) for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb)
            )
    else:
        raise ValueError(f"unknown scalar kind {scalar!r}")

    def hom_pcm(x, y) -> Pcm:
        n, m = y, x  # hom(m, n) holds n-by-m matrices

        def contains(v):
            return (
                isinstance(v, Matrix)
                and v.shape == (n, m)
                and all(scalar_ok(c) for row in v.rows for c in row)
            )

        def oracle(fam: IndexedFamily):
            total = Matrix.zero(n, m, zero_s)
            entries = fam.entries
            if scalar == "complex":
                entries = sorted(entries, key=lambda e: e[0])
            for _, v in entries:
                total = total + v
            return Summable(total)

        return Pcm(
            name=f"matrices[{n}x{m},{scalar}]",
            contains=contains,
            oracle=oracle,
            sample_elements=_matrix_samples(n, m, scalar),
            family_grid=_matrix_samples(n, m, scalar)[:5],
            close=close,
        )

    def identity(x):
        return Matrix.identity(x, zero_s, one_s)

    def arrow_hom(v: Matrix):
        n, m = v.shape
        return (m, n)

    return PcmCategory(
        name=f"matrix:{','.join(str(d) for d in dims)}" + ("" if scalar == "rational" else ":complex"),
        objects=dims,
        hom_pcm=hom_pcm,
        compose=lambda g, f: g @ f,
        identity=identity,
        arrow_hom=arrow_hom,
    )


def relations_category(n: int) -> PcmCategory:
    """Relations on n points under relational composition and union summation."""
    pcm = make_relations_pcm(n, n, family_grid=all_relations(n, n)[:6])
    return _one_object(f"rel:{n}", pcm, lambda g, f: g.compose(f), Relation.identity(n))


def partial_fn_category(n: int) -> PcmCategory:
    grid = all_partial_fns(n)[:6] if n >= 3 else all_partial_fns(n)
    pcm = make_partial_fn_pcm(n, family_grid=grid)
    identity = PartialFn.of({i: i for i in range(n)})
    return _one_object(f"pfn:{n}", pcm, lambda g, f: g.compose(f), identity)


def partial_injection_category(n: int, mode: str = "overlap") -> PcmCategory:
    grid = all_partial_injections(n)[:6] if n >= 3 else all_partial_injections(n)
    pcm = make_partial_injection_pcm(n, mode, family_grid=grid)
    identity = PartialFn.of({i: i for i in range(n)})
    return _one_object(f"pinj-{mode}:{n}", pcm, lambda g, f: g.compose(f), identity)


def resolve_base(descriptor: str, tolerance: float = DEFAULT_TOLERANCE):
    """Map a base descriptor string to a category or, for unitball, a bare Pcm."""
    if descriptor in ("int", "rational", "complex") or descriptor.startswith("mod:"):
        return from_semiring(descriptor, tolerance)
    if descriptor.startswith("matrix:"):
        dims = [int(d) for d in descriptor.split(":", 1)[1].split(",")]
        return matrix_category(dims)
    if descriptor.startswith("rel:"):
        return relations_category(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("pfn:"):
        return partial_fn_category(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("pinj-overlap:"):
        return partial_injection_category(int(descriptor.split(":", 1)[1]), "overlap")
    if descriptor.startswith("pinj-disjoint:"):
        return partial_injection_category(int(descriptor.split(":", 1)[1]), "disjoint")
    if descriptor.startswith("kbounded:"):
        return k_bounded_category(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("unitball:"):
        parts = descriptor.split(":")
        if len(parts) != 3:
            raise ParseError(f"expected unitball:<dim>:<norm>, got {descriptor!r}")
        return make_unit_ball_pcm(int(parts[1]), parts[2])
    raise ParseError(f"unknown base descriptor {descriptor!r}")


BUILTIN_BASES = (
    "int", "rational", "mod:4", "mod:5", "complex", "matrix:2",
    "pfn:2", "pfn:3", "pinj-overlap:3", "pinj-disjoint:3", "rel:2",
    "kbounded:1", "kbounded:2",
    "unitball:1:l1", "unitball:2:l2", "unitball:2:linf",
)

_PFN3_GRID = (
    PartialFn.of({}),
    PartialFn.of({0: 1}),
    PartialFn.of({1: 2}),
    PartialFn.of({2: 0}),
    PartialFn.of({0: 0, 1: 1}),
    PartialFn.of({0: 2}),
)

_PINJ3_GRID = (
    PartialFn.of({}),
    PartialFn.of({0: 1}),
    PartialFn.of({0: 1, 1: 2}),
    PartialFn.of({0: 2}),
    PartialFn.of({1: 0}),
    PartialFn.of({0: 0, 1: 1, 2: 2}),
)

_REL22_GRID = (
    Relation.of([]),
    Relation.of([(0, 0)]),
    Relation.of([(0, 1)]),
    Relation.of([(1, 0), (1, 1)]),
    Relation.of([(0, 0), (1, 1)]),
    Relation.of([(0, 1), (1, 0)]),
)

_UNITBALL2_L2_GRID = (
    Vec.of(0, 0),
    Vec.of(1, 0),
    Vec.of(Fraction(1, 2), 0),
    Vec.of(Fraction(1, 2), Fraction(1, 2)),
    Vec.of(Fraction(3, 10), Fraction(4, 10)),
    Vec.of(Fraction(3, 5), Fraction(4, 5)),
)


def shipped_pcm_instances() -> tuple[Pcm, ...]:
    """The stock summation carriers the law suites certify.

    Large-carrier instances get a hand-picked family grid so exhaustive
    family sweeps stay at desk scale; the full element grid still feeds the
    unary and relabeling checks.
    """
    rational_grid = (
        Fraction(0), Fraction(1), Fraction(-1),
        Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(3, 4),
    )
    return (
        make_finite_families_pcm(INT_ADD),
        make_finite_families_pcm(RATIONAL_ADD, family_grid=rational_grid),
        make_finite_families_pcm(mod_add(4)),
        make_finite_families_pcm(mod_add(5)),
        make_k_bounded_pcm(INT_ADD, 1, family_grid=(0, 1, -1, 2, -2)),
        make_k_bounded_pcm(INT_ADD, 2, family_grid=(0, 1, -1, 2, -2)),
        make_partial_fn_pcm(2, family_grid=all_partial_fns(2)[:6]),
        make_partial_fn_pcm(3, family_grid=_PFN3_GRID),
        make_partial_injection_pcm(3, "disjoint", family_grid=_PINJ3_GRID),
        make_partial_injection_pcm(3, "overlap", family_grid=_PINJ3_GRID),
        make_relations_pcm(2, 2, family_grid=_REL22_GRID),
        make_abs_convergence_pcm(),
        make_unit_ball_pcm(1, "l1"),
        make_unit_ball_pcm(2, "linf"),
        make_unit_ball_pcm(2, "l2", family_grid=_UNITBALL2_L2_GRID),
        matrix_category([2]).hom_pcm(2, 2),
    )


def shipped_categories() -> tuple[PcmCategory, ...]:
    """The stock composition-carrying instances (kbounded:2 is the broken one)."""
    return tuple(
        resolve_base(descriptor)
        for descriptor in (
            "int", "rational", "mod:4", "mod:5", "complex", "matrix:2",
            "rel:2", "pfn:2", "pfn:3", "pinj-overlap:2", "pinj-overlap:3",
            "pinj-disjoint:3", "kbounded:1",
        )
    )


# --------------------------------------------------------------------------
# sampling helpers shared by the category-level checks
# --------------------------------------------------------------------------


def _object_triples(cat):
    return itertools.product(cat.objects, repeat=3)


def _small_families(grid, max_size):
    for size in range(max_size + 1):
        for combo in itertools.combinations_with_replacement(grid, size):
            yield family_of(combo)


def _random_family(grid, max_size, rng, prefix="r"):
    size = rng.randint(0, max_size)
    return family_of([rng.choice(grid) for _ in range(size)], prefix=prefix)


def _product_family(cat, fam_g: IndexedFamily, fam_f: IndexedFamily) -> IndexedFamily:
    entries = []
    for j, g in fam_g.entries:
        for i, f in fam_f.entries:
            entries.append((f"{j}.{i}", cat.compose(g, f)))
    return IndexedFamily(tuple(entries))


# --------------------------------------------------------------------------
# strong distributivity
# --------------------------------------------------------------------------


def check_strong_distributivity(cat, max_family: int = 4, trials: int = 200,
                                seed: int = 0, exhaustive_grid: int = 3,
                                exhaustive_size: int = 2) -> Report:
    """Search for (f-family, g-family) pairs violating joint distributivity.

    Exhausts small families over a grid prefix first (so the canonical
    witness of a broken instance is stable), then runs seeded random trials.
    """
    name = f"strong-distributivity[{cat.name}]"

    def violation(x, y, z, fam_f, fam_g):
        pf, pg, pp = cat.hom_pcm(x, y), cat.hom_pcm(y, z), cat.hom_pcm(x, z)
        rf, rg = pf.sum(fam_f), pg.sum(fam_g)
        if not (isinstance(rf, Summable) and isinstance(rg, Summable)):
            return False
        prod = _product_family(cat, fam_g, fam_f)
        rp = pp.sum(prod)
        if not isinstance(rp, Summable):
            return True
        return not pp.close(rp.value, cat.compose(rg.value, rf.value))

    for x, y, z in _object_triples(cat):
        grid_f = cat.hom_pcm(x, y).grid[:exhaustive_grid]
        grid_g = cat.hom_pcm(y, z).grid[:exhaustive_grid]
        for fam_f in _small_families(grid_f, exhaustive_size):
            for fam_g in _small_families(grid_g, exhaustive_size):
                if violation(x, y, z, fam_f, fam_g):
                    def recheck(witness, _ctx=(x, y, z)):
                        wf, wg = witness
                        return violation(*_ctx, wf, wg)

                    return failing(name, (fam_f, fam_g),
                                   detail=f"hom ({x},{y},{z})", recheck=recheck)
    rng = random.Random(f"{seed}:strong-dist:{cat.name}")
    triples = list(_object_triples(cat))
    for _ in range(trials):
        x, y, z = rng.choice(triples)
        fam_f = _random_family(cat.hom_pcm(x, y).grid, max_family, rng, prefix="f")
        fam_g = _random_family(cat.hom_pcm(y, z).grid, max_family, rng, prefix="g")
        if violation(x, y, z, fam_f, fam_g):
            def recheck(witness, _ctx=(x, y, z)):
                wf, wg = witness
                return violation(*_ctx, wf, wg)

            return failing(name, (fam_f, fam_g), detail=f"hom ({x},{y},{z})",
                           recheck=recheck)
    return passing(name)


# --------------------------------------------------------------------------
# derived laws
# --------------------------------------------------------------------------


def _summable_families(pcm: Pcm, max_size: int, limit: int = 40):
    found = 0
    for fam in _small_families(pcm.grid, max_size):
        if isinstance(pcm.sum(fam), Summable):
            yield fam
            found += 1
            if found >= limit:
                return


def check_left_right_distributivity(cat, max_size: int = 3) -> Report:
    name = f"left-right-distributivity[{cat.name}]"
    for x, y, z in _object_triples(cat):
        pf, pg = cat.hom_pcm(x, y), cat.hom_pcm(y, z)
        for fam in _summable_families(pf, max_size, limit=12):
            total = pf.sum(fam).value
            for h in pg.grid[:4]:
                mapped = make_family([(lbl, cat.compose(h, v)) for lbl, v in fam.entries])
                result = cat.hom_pcm(x, z).sum(mapped)
                if not isinstance(result, Summable):
                    return failing(name, fam, detail=f"left family not summable, h={h}")
                if not cat.hom_pcm(x, z).close(result.value, cat.compose(h, total)):
                    return failing(name, fam, detail=f"left distributivity fails, h={h}")
        for fam in _summable_families(pg, max_size, limit=12):
            total = pg.sum(fam).value
            for h in pf.grid[:4]:
                mapped = make_family([(lbl, cat.compose(v, h)) for lbl, v in fam.entries])
                result = cat.hom_pcm(x, z).sum(mapped)
                if not isinstance(result, Summable):
                    return failing(name, fam, detail=f"right family not summable, h={h}")
                if not cat.hom_pcm(x, z).close(result.value, cat.compose(total, h)):
                    return failing(name, fam, detail=f"right distributivity fails, h={h}")
    return passing(name)


def check_reordering(cat, max_size: int = 3) -> Report:
    """Iterated sums of a rectangular product family agree in either order."""
    name = f"reordering[{cat.name}]"
    for x, y, z in _object_triples(cat):
        pf, pg, pp = cat.hom_pcm(x, y), cat.hom_pcm(y, z), cat.hom_pcm(x, z)
        for fam_f in _summable_families(pf, max_size, limit=6):
            for fam_g in _summable_families(pg, max_size, limit=6):
                rows = []  # for fixed i, sum over j
                for i, f in fam_f.entries:
                    row = make_family([(j, cat.compose(g, f)) for j, g in fam_g.entries])
                    result = pp.sum(row)
                    if not isinstance(result, Summable):
                        return failing(name, (fam_f, fam_g), detail="row not summable")
                    rows.append((i, result.value))
                cols = []
                for j, g in fam_g.entries:
                    col = make_family([(i, cat.compose(g, f)) for i, f in fam_f.entries])
                    result = pp.sum(col)
                    if not isinstance(result, Summable):
                        return failing(name, (fam_f, fam_g), detail="column not summable")
                    cols.append((j, result.value))
                by_rows = pp.sum(IndexedFamily(tuple(rows)))
                by_cols = pp.sum(IndexedFamily(tuple(cols)))
                whole = pp.sum(_product_family(cat, fam_g, fam_f))
                if not (
                    isinstance(by_rows, Summable)
                    and isinstance(by_cols, Summable)
                    and isinstance(whole, Summable)
                    and pp.close(by_rows.value, whole.value)
                    and pp.close(by_cols.value, whole.value)
                ):
                    return failing(name, (fam_f, fam_g), detail="iterated sums disagree")
    return passing(name)


def check_composing_sums(cat, max_power: int = 3) -> Report:
    """Powers of a summable endo-family stay summable."""
    name = f"composing-sums[{cat.name}]"
    for x in cat.objects:
        pcm = cat.hom_pcm(x, x)
        for fam in _summable_families(pcm, 2, limit=6):
            if len(fam) == 0:
                continue
            for n in range(2, max_power + 1):
                entries = []
                for combo in itertools.product(fam.entries, repeat=n):
                    label = "*".join(lbl for lbl, _ in combo)
                    value = combo[0][1]
                    for _, nxt in combo[1:]:
                        value = cat.compose(value, nxt)
                    entries.append((label, value))
                result = pcm.sum(IndexedFamily(tuple(entries)))
                if not isinstance(result, Summable):
                    return failing(name, fam, detail=f"power {n} not summable")
    return passing(name)


def _find_identity_word(cat, x, others, identity, pcm, max_len: int = 4):
    """A word over the non-identity members composing to the identity, if any."""
    for length in range(1, max_len + 1):
        for word in itertools.product(others, repeat=length):
            value = word[0]
            for nxt in word[1:]:
                value = cat.compose(value, nxt)
            if pcm.close(value, identity):
                return word
    return None


def check_monoid_sums(cat, bound: int = 8) -> Report:
    """Repeated identities are summable whenever some word of non-identity
    members of a summable identity-containing family composes to the identity."""
    name = f"monoid-sums[{cat.name}]"
    applied = False
    for x in cat.objects:
        pcm = cat.hom_pcm(x, x)
        identity = cat.identity(x)
        for fam in _summable_families(pcm, 3, limit=30):
            values = list(fam.values)
            if not any(pcm.close(v, identity) for v in values):
                continue
            others = [v for v in values if not pcm.close(v, identity)]
            if not others:
                continue
            word = _find_identity_word(cat, x, others, identity, pcm)
            if word is None:
                continue
            applied = True
            for m in range(1, bound + 1):
                repeated = family_of([identity] * m, prefix="one")
                if not isinstance(pcm.sum(repeated), Summable):
                    return failing(name, fam, detail=f"sum of {m} identities refused")
            for y in cat.objects:
                out = cat.hom_pcm(x, y)
                for f in out.grid[:3]:
                    repeated = family_of([f] * bound, prefix="f")
                    if not isinstance(out.sum(repeated), Summable):
                        return failing(name, fam, detail=f"sum of {bound} copies refused")
    detail = "" if applied else "no identity-word family found; vacuous"
    return passing(name, detail=detail)


def check_zero_absorption(cat, max_arrows: int = 50) -> Report:
    name = f"zero-absorption[{cat.name}]"
    for x, y, z in _object_triples(cat):
        zero_xy = zero_arrow(cat, x, y)
        pp = cat.hom_pcm(x, z)
        for f in cat.hom_pcm(y, z).sample_elements[:max_arrows]:
            if not pp.close(cat.compose(f, zero_xy), zero_arrow(cat, x, z)):
                return failing(name, f, detail=f"f o 0 != 0 at ({x},{y},{z})")
        zero_yz = zero_arrow(cat, y, z)
        for g in cat.hom_pcm(x, y).sample_elements[:max_arrows]:
            if not pp.close(cat.compose(zero_yz, g), zero_arrow(cat, x, z)):
                return failing(name, g, detail=f"0 o g != 0 at ({x},{y},{z})")
    return passing(name)


def derived_laws(cat, bound: int = 8) -> list[Report]:
    """The consequences of strong distributivity, checked on sampled data."""
    return [
        check_left_right_distributivity(cat),
        check_reordering(cat),
        check_composing_sums(cat),
        check_monoid_sums(cat, bound=bound),
        check_zero_absorption(cat),
    ]


# --------------------------------------------------------------------------
# functors between summation categories
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PcmFunctor:
    """Object and arrow maps intended to preserve composition and sums."""

    obj_map: Callable
    arr_map: Callable

    def on_obj(self, x):
        return self.obj_map(x)

    def on_arr(self, f):
        return self.arr_map(f)


def identity_pcm_functor() -> PcmFunctor:
    return PcmFunctor(lambda x: x, lambda f: f)


def compose_pcm_functors(g: PcmFunctor, f: PcmFunctor) -> PcmFunctor:
    return PcmFunctor(lambda x: g.obj_map(f.obj_map(x)), lambda a: g.arr_map(f.arr_map(a)))


def check_pcm_functor(functor: PcmFunctor, source, target, bound: int = 3,
                      trials: int = 100, seed: int = 0) -> Report:
    """PASS when the maps preserve identities, sampled composites, and sums."""
    name = f"pcm-functor[{source.name}->{target.name}]"
    for x in source.objects:
        fx = functor.on_obj(x)
        image = functor.on_arr(source.identity(x))
        if not target.hom_pcm(fx, fx).close(image, target.identity(fx)):
            return failing(name, x, detail="identity not preserved")
    rng = random.Random(f"{seed}:functor:{source.name}->{target.name}")
    triples = list(_object_triples(source))
    for _ in range(trials):
        x, y, z = rng.choice(triples)
        grid_f, grid_g = source.hom_pcm(x, y).grid, source.hom_pcm(y, z).grid
        if not grid_f or not grid_g:
            continue
        f, g = rng.choice(grid_f), rng.choice(grid_g)
        lhs = functor.on_arr(source.compose(g, f))
        rhs = target.compose(functor.on_arr(g), functor.on_arr(f))
        if not target.hom_pcm(functor.on_obj(x), functor.on_obj(z)).close(lhs, rhs):
            return failing(name, (g, f), detail="composite not preserved")
    for x, y in itertools.product(source.objects, repeat=2):
        pcm = source.hom_pcm(x, y)
        out = target.hom_pcm(functor.on_obj(x), functor.on_obj(y))
        for fam in _summable_families(pcm, bound, limit=20):
            total = pcm.sum(fam).value
            image = make_family([(lbl, functor.on_arr(v)) for lbl, v in fam.entries])
            result = out.sum(image)
            if not isinstance(result, Summable):
                return failing(name, fam, detail="image family not summable")
            if not out.close(result.value, functor.on_arr(total)):
                return failing(name, fam, detail="sum not preserved")
    return passing(name)


# --------------------------------------------------------------------------
# finite products
# --------------------------------------------------------------------------


def _product_pcm(pa: Pcm, pb: Pcm) -> Pcm:
    def contains(v):
        return isinstance(v, tuple) and len(v) == 2 and pa.contains(v[0]) and pb.contains(v[1])

    def oracle(fam: IndexedFamily):
        first = make_family([(lbl, v[0]) for lbl, v in fam.entries])
        second = make_family([(lbl, v[1]) for lbl, v in fam.entries])
        ra, rb = pa.sum(first), pb.sum(second)
        if isinstance(ra, Summable) and isinstance(rb, Summable):
            return Summable((ra.value, rb.value))
        return NotSummable()

    paired = tuple(zip(pa.sample_elements, pb.sample_elements))
    if len(paired) < 4:
        paired = tuple(itertools.islice(itertools.product(pa.sample_elements, pb.sample_elements), 8))
    grid = tuple(zip(pa.grid, pb.grid)) or paired

    def close(u, v):
        return pa.close(u[0], v[0]) and pb.close(u[1], v[1])

    return Pcm(
        name=f"({pa.name})x({pb.name})",
        contains=contains,
        oracle=oracle,
        sample_elements=paired,
        family_grid=grid[:5],
        close=close,
    )


def pcm_product(a, b) -> PcmCategory:
    """The product category with componentwise composition and pairwise sums."""
    objects = tuple(itertools.product(a.objects, b.objects))

    def hom_pcm(x, y):
        return _product_pcm(a.hom_pcm(x[0], y[0]), b.hom_pcm(x[1], y[1]))

    return PcmCategory(
        name=f"({a.name})x({b.name})",
        objects=objects,
        hom_pcm=hom_pcm,
        compose=lambda g, f: (a.compose(g[0], f[0]), b.compose(g[1], f[1])),
        identity=lambda x: (a.identity(x[0]), b.identity(x[1])),
    )


def product_projections() -> tuple[PcmFunctor, PcmFunctor]:
    first = PcmFunctor(lambda x: x[0], lambda f: f[0])
    second = PcmFunctor(lambda x: x[1], lambda f: f[1])
    return first, second


def pairing(f1: PcmFunctor, f2: PcmFunctor) -> PcmFunctor:
    """The mediating functor into a product, given functors into both factors."""
    return PcmFunctor(
        lambda x: (f1.obj_map(x), f2.obj_map(x)),
        lambda a: (f1.arr_map(a), f2.arr_map(a)),
    )
