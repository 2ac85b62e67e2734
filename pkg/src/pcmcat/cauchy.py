"""Convolution categories: coefficient maps over an index category's hom-sets.

An arrow (X,U) -> (Y,V) is a total map from the index hom-set D(U,V) into
the base hom-set C(X,Y) whose value family is summable.  Composition
convolves over factorizations c = b.a in the index category; each hom-set
inherits a summation computed on the flattened coefficient family.

The summability checks stay on even where the construction guarantees
success: a refusal here means the base instance is broken, and is raised
rather than swallowed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping

from .category import PcmCategory, PcmFunctor
from .errors import (
    CarrierMismatchError,
    NotSummableError,
    UnboundedStreamError,
    ValidationError,
)
from .family import IndexedFamily
from .fincat import FinCategory, Functor, validate_category
from .pcm import NOT_SUMMABLE, Pcm, Summable, format_element
from .report import Report, failing, passing


@dataclass(frozen=True)
class CauchyArrow:
    """A coefficient map: one base arrow per index arrow, stored sorted."""

    src: tuple
    tgt: tuple
    coeffs: tuple[tuple[str, object], ...]

    @cached_property
    def _table(self) -> dict:
        return dict(self.coeffs)

    def coeff(self, index_arrow: str):
        return self._table[index_arrow]

    @property
    def coeff_family(self) -> IndexedFamily:
        return IndexedFamily(self.coeffs)

    def __str__(self) -> str:
        inner = ",".join(f"{a}={format_element(v)}" for a, v in self.coeffs)
        return "{" + inner + "}"


def _arrow_close(base_close: Callable) -> Callable:
    def close(a: CauchyArrow, b: CauchyArrow) -> bool:
        if a.src != b.src or a.tgt != b.tgt:
            return False
        if tuple(k for k, _ in a.coeffs) != tuple(k for k, _ in b.coeffs):
            return False
        return all(base_close(x, y) for (_, x), (_, y) in zip(a.coeffs, b.coeffs))

    return close


class CauchyCategory:
    """The convolution category of a summation base over a finite index."""

    def __init__(self, base: PcmCategory, index: FinCategory):
        report = validate_category(index)
        if not report.passed:
            raise ValidationError(f"index category invalid: {report.line()}")
        self.base = base
        self.index = index
        self.name = f"{base.name}[{index.name}]"
        self.objects = tuple(
            (x, u) for x in base.objects for u in index.objects
        )
        self._fact: dict = {}
        self._hom_cache: dict = {}
        self._sample_cache: dict = {}
        self.arrow_hom = lambda arrow: (arrow.src, arrow.tgt)

    # -- structure ---------------------------------------------------------

    def _factorizations(self, u: str, v: str, w: str) -> dict[str, tuple]:
        """c -> all (b, a) with b in D(v,w), a in D(u,v), c = b.a."""
        key = (u, v, w)
        if key not in self._fact:
            table: dict[str, list] = {c: [] for c in self.index.hom(u, w)}
            for b in self.index.hom(v, w):
                for a in self.index.hom(u, v):
                    table[self.index.compose(b, a)].append((b, a))
            self._fact[key] = {c: tuple(pairs) for c, pairs in table.items()}
        return self._fact[key]

    def make_arrow(self, src, tgt, coeffs: Mapping[str, object]) -> CauchyArrow:
        """Build and defensively validate an arrow; missing coefficients are zero."""
        if src not in self.objects or tgt not in self.objects:
            raise ValidationError(f"unknown object pair {src} or {tgt}")
        (x, u), (y, v) = src, tgt
        hom = self.index.hom(u, v)
        unknown = set(coeffs) - set(hom)
        if unknown:
            raise ValidationError(f"coefficients for arrows outside D({u},{v}): {sorted(unknown)}")
        base_pcm = self.base.hom_pcm(x, y)
        filled = tuple(
            (a, coeffs.get(a, base_pcm.zero)) for a in sorted(hom)
        )
        arrow = CauchyArrow(src, tgt, filled)
        if not isinstance(base_pcm.sum(arrow.coeff_family), Summable):
            raise NotSummableError(
                f"coefficient family of {arrow} is not summable in {base_pcm.name}"
            )
        return arrow

    def identity(self, obj) -> CauchyArrow:
        x, u = obj
        one = self.index.identity_of[u]
        return self.make_arrow(obj, obj, {one: self.base.identity(x)})

    def zero(self, src, tgt) -> CauchyArrow:
        return self.make_arrow(src, tgt, {})

    def compose(self, g: CauchyArrow, f: CauchyArrow) -> CauchyArrow:
        """Convolution: (g f)(c) sums g(b) f(a) over all factorizations c = b.a."""
        if f.tgt != g.src:
            raise CarrierMismatchError(f"cannot compose {g.tgt}<-{g.src} after {f.tgt}<-{f.src}")
        (x, u) = f.src
        (y, v) = f.tgt
        (z, w) = g.tgt
        target_pcm = self.base.hom_pcm(x, z)
        coeffs = {}
        for c, pairs in self._factorizations(u, v, w).items():
            entries = tuple(
                (f"{b}*{a}", self.base.compose(g.coeff(b), f.coeff(a))) for b, a in pairs
            )
            result = target_pcm.sum(IndexedFamily(entries))
            if not isinstance(result, Summable):
                raise NotSummableError(
                    f"convolution coefficient at {c} refused by {target_pcm.name}; "
                    "the base instance violates its composition law"
                )
            coeffs[c] = result.value
        return self.make_arrow(f.src, g.tgt, coeffs)

    def sum_arrows(self, fam: IndexedFamily, src=None, tgt=None):
        """Summable exactly when the flattened coefficient family is; pointwise sums."""
        if len(fam) == 0:
            if src is None or tgt is None:
                raise ValidationError("summing an empty arrow family needs src and tgt")
        else:
            heads = {(arrow.src, arrow.tgt) for _, arrow in fam.entries}
            if len(heads) > 1:
                raise CarrierMismatchError("arrows in a family must share src and tgt")
            src, tgt = next(iter(heads))
        (x, u), (y, v) = src, tgt
        base_pcm = self.base.hom_pcm(x, y)
        hom = self.index.hom(u, v)
        flattened = tuple(
            (f"{i}|{a}", arrow.coeff(a)) for i, arrow in fam.entries for a in hom
        )
        if not isinstance(base_pcm.sum(IndexedFamily(flattened)), Summable):
            return NOT_SUMMABLE
        coeffs = {}
        for a in hom:
            column = IndexedFamily(tuple((i, arrow.coeff(a)) for i, arrow in fam.entries))
            result = base_pcm.sum(column)
            if not isinstance(result, Summable):
                raise NotSummableError(
                    f"pointwise sum at {a} refused although the flattened family "
                    "was admitted; the base instance violates the partition law"
                )
            coeffs[a] = result.value
        return Summable(self.make_arrow(src, tgt, coeffs))

    # -- hom summation surface ----------------------------------------------

    def _sample_arrows(self, src, tgt) -> tuple[CauchyArrow, ...]:
        key = (src, tgt)
        if key in self._sample_cache:
            return self._sample_cache[key]
        (x, u), (y, v) = src, tgt
        base_pcm = self.base.hom_pcm(x, y)
        hom = sorted(self.index.hom(u, v))
        pool = [base_pcm.zero]
        for value in base_pcm.grid:
            if value not in pool:
                pool.append(value)
            if len(pool) >= 4:
                break
        arrows: list[CauchyArrow] = []

        def push(coeffs):
            arrow = self.make_arrow(src, tgt, coeffs)
            if arrow not in arrows:
                arrows.append(arrow)

        if not hom:
            push({})
        elif len(pool) ** len(hom) <= 32:
            for values in itertools.product(pool, repeat=len(hom)):
                push(dict(zip(hom, values)))
        else:
            rng = random.Random(f"cauchy-samples:{self.name}:{src}:{tgt}")
            push({})
            for value in pool[1:3]:
                for a in hom:
                    push({a: value})
            while len(arrows) < 24:
                push({a: rng.choice(pool) for a in hom})
        if src == tgt:
            ident = self.identity(src)
            if ident not in arrows:
                arrows.insert(0, ident)
        self._sample_cache[key] = tuple(arrows)
        return self._sample_cache[key]

    def hom_pcm(self, src, tgt) -> Pcm:
        key = (src, tgt)
        if key in self._hom_cache:
            return self._hom_cache[key]
        (x, u), (y, v) = src, tgt
        base_pcm = self.base.hom_pcm(x, y)
        hom = set(self.index.hom(u, v))

        def contains(arrow):
            return (
                isinstance(arrow, CauchyArrow)
                and arrow.src == src
                and arrow.tgt == tgt
                and set(arrow._table) == hom
            )

        samples = self._sample_arrows(src, tgt)
        pcm = Pcm(
            name=f"hom[{self.name} {src}->{tgt}]",
            contains=contains,
            oracle=lambda fam: self.sum_arrows(fam, src=src, tgt=tgt),
            sample_elements=samples,
            family_grid=samples[:4],
            close=_arrow_close(base_pcm.close),
        )
        self._hom_cache[key] = pcm
        return pcm

    def __repr__(self):
        return f"CauchyCategory({self.name!r})"


def cauchy_product(base: PcmCategory, index: FinCategory) -> CauchyCategory:
    return CauchyCategory(base, index)


def convolve(g: CauchyArrow, f: CauchyArrow, cc: CauchyCategory) -> CauchyArrow:
    return cc.compose(g, f)


def identity_arrow(cc: CauchyCategory, obj) -> CauchyArrow:
    return cc.identity(obj)


def sum_arrows(cc: CauchyCategory, fam: IndexedFamily, src=None, tgt=None):
    return cc.sum_arrows(fam, src=src, tgt=tgt)


# --------------------------------------------------------------------------
# category validation (for constructed instances)
# --------------------------------------------------------------------------


def check_identity_laws(cc: CauchyCategory) -> Report:
    name = f"identity-laws[{cc.name}]"
    for src, tgt in itertools.product(cc.objects, repeat=2):
        close = cc.hom_pcm(src, tgt).close
        id_src, id_tgt = cc.identity(src), cc.identity(tgt)
        for f in cc.hom_pcm(src, tgt).sample_elements:
            if not close(cc.compose(f, id_src), f):
                return failing(name, f, detail="right identity law fails")
            if not close(cc.compose(id_tgt, f), f):
                return failing(name, f, detail="left identity law fails")
    return passing(name)


def check_associativity(cc: CauchyCategory, exhaustive_limit: int = 512,
                        sampled: int = 500, seed: int = 0) -> Report:
    """Exhaustive over sample arrows when cheap, else seeded sampled triples."""
    name = f"associativity[{cc.name}]"
    paths = []
    total = 0
    for o1, o2, o3, o4 in itertools.product(cc.objects, repeat=4):
        fs = cc.hom_pcm(o1, o2).sample_elements
        gs = cc.hom_pcm(o2, o3).sample_elements
        hs = cc.hom_pcm(o3, o4).sample_elements
        if fs and gs and hs:
            paths.append((fs, gs, hs, cc.hom_pcm(o1, o4).close))
            total += len(fs) * len(gs) * len(hs)

    def holds(h, g, f, close):
        return close(cc.compose(cc.compose(h, g), f), cc.compose(h, cc.compose(g, f)))

    if total <= exhaustive_limit:
        for fs, gs, hs, close in paths:
            for h, g, f in itertools.product(hs, gs, fs):
                if not holds(h, g, f, close):
                    return failing(name, (h, g, f))
        return passing(name, detail=f"exhaustive over {total} triples")
    rng = random.Random(f"{seed}:assoc:{cc.name}")
    for _ in range(sampled):
        fs, gs, hs, close = rng.choice(paths)
        h, g, f = rng.choice(hs), rng.choice(gs), rng.choice(fs)
        if not holds(h, g, f, close):
            return failing(name, (h, g, f))
    return passing(name, detail=f"{sampled} sampled triples")


# --------------------------------------------------------------------------
# the structural functors
# --------------------------------------------------------------------------


def sigma_functor(cc: CauchyCategory) -> PcmFunctor:
    """Forget the index: send an arrow to the sum of all its coefficients."""

    def on_arr(arrow: CauchyArrow):
        (x, _), (y, _) = arrow.src, arrow.tgt
        result = cc.base.hom_pcm(x, y).sum(arrow.coeff_family)
        if not isinstance(result, Summable):
            raise NotSummableError("arrow coefficients are not summable; invalid arrow")
        return result.value

    return PcmFunctor(lambda obj: obj[0], on_arr)


def _base_arrow_hom(cc: CauchyCategory, h):
    if cc.base.arrow_hom is not None:
        return cc.base.arrow_hom(h)
    if len(cc.base.objects) == 1:
        only = cc.base.objects[0]
        return (only, only)
    raise ValidationError("cannot infer the hom of a base arrow; multi-object base")


def eta_functor(cc: CauchyCategory, u) -> PcmFunctor:
    """Embed the base at index object u: the coefficient sits at the identity."""
    if u not in cc.index.objects:
        raise ValidationError(f"unknown index object {u!r}")
    one = cc.index.identity_of[u]

    def on_arr(h):
        x, y = _base_arrow_hom(cc, h)
        return cc.make_arrow((x, u), (y, u), {one: h})

    return PcmFunctor(lambda x: (x, u), on_arr)


def gamma_functor(cc: CauchyCategory, x) -> PcmFunctor:
    """Embed the index at base object x: coefficient 1_x on the named arrow."""
    if x not in cc.base.objects:
        raise ValidationError(f"unknown base object {x!r}")

    def on_arr(h: str):
        u, v = cc.index.src(h), cc.index.tgt(h)
        return cc.make_arrow((x, u), (x, v), {h: cc.base.identity(x)})

    return PcmFunctor(lambda u: (x, u), on_arr)


def star_embed(cc: CauchyCategory, f, g: str) -> CauchyArrow:
    """The arrow with coefficient f on index arrow g and zero elsewhere."""
    x, y = _base_arrow_hom(cc, f)
    u, v = cc.index.src(g), cc.index.tgt(g)
    return cc.make_arrow((x, u), (y, v), {g: f})


# --------------------------------------------------------------------------
# functorial actions on the two arguments
# --------------------------------------------------------------------------


def map_base(gamma: PcmFunctor, source: CauchyCategory, target: CauchyCategory) -> PcmFunctor:
    """Lift a base functor: coefficients are mapped pointwise."""

    def on_obj(obj):
        x, u = obj
        return (gamma.on_obj(x), u)

    def on_arr(arrow: CauchyArrow):
        coeffs = {a: gamma.on_arr(value) for a, value in arrow.coeffs}
        return target.make_arrow(on_obj(arrow.src), on_obj(arrow.tgt), coeffs)

    return PcmFunctor(on_obj, on_arr)


def map_index(source: CauchyCategory, target: CauchyCategory, lam: Functor) -> PcmFunctor:
    """Reindex along a functor of index categories: coefficients sum over fibers."""

    def on_obj(obj):
        x, u = obj
        return (x, lam.on_obj(u))

    def on_arr(arrow: CauchyArrow):
        (x, u), (y, v) = arrow.src, arrow.tgt
        base_pcm = source.base.hom_pcm(x, y)
        image_hom = target.index.hom(lam.on_obj(u), lam.on_obj(v))
        coeffs = {}
        for image in image_hom:
            fiber = tuple(
                (a, value) for a, value in arrow.coeffs if lam.on_arr(a) == image
            )
            result = base_pcm.sum(IndexedFamily(fiber))
            if not isinstance(result, Summable):
                raise NotSummableError(
                    f"fiber over {image} refused by {base_pcm.name}; "
                    "the base instance violates the partition law"
                )
            coeffs[image] = result.value
        return target.make_arrow(on_obj(arrow.src), on_obj(arrow.tgt), coeffs)

    return PcmFunctor(on_obj, on_arr)


# --------------------------------------------------------------------------
# truncated power-series convolution for the additive-naturals index
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundedStream:
    """Coefficients with a declared geometric envelope |a_n| <= scale * ratio**n."""

    coeff: Callable[[int], Fraction]
    scale: Fraction
    ratio: Fraction

    def __post_init__(self):
        if not (0 <= self.ratio < 1):
            raise ValueError("ratio must satisfy 0 <= ratio < 1")
        if self.scale < 0:
            raise ValueError("scale must be nonnegative")


def geometric_stream(scale, ratio) -> BoundedStream:
    scale, ratio = Fraction(scale), Fraction(ratio)
    return BoundedStream(lambda n: scale * ratio**n, scale, ratio)


@dataclass(frozen=True)
class SeriesProduct:
    coeffs: tuple[Fraction, ...]
    tail_bound: Fraction


def _coeff_at(stream, n: int) -> Fraction:
    if isinstance(stream, BoundedStream):
        return Fraction(stream.coeff(n))
    return Fraction(stream[n]) if n < len(stream) else Fraction(0)


def _envelope(stream, ratio: Fraction) -> Fraction:
    """A scale C with |a_n| <= C * ratio**n for the given stream."""
    if isinstance(stream, BoundedStream):
        return stream.scale
    best = Fraction(0)
    for n, value in enumerate(stream):
        if value == 0:
            continue
        if ratio == 0:
            if n > 0:
                raise UnboundedStreamError("zero ratio cannot envelope higher terms")
            best = max(best, abs(Fraction(value)))
        else:
            best = max(best, abs(Fraction(value)) / ratio**n)
    return best


def series_convolve(p, q, order: int) -> SeriesProduct:
    """Coefficients 0..order of the product series, with an exact tail bound.

    Finite-support inputs give an exact result (tail bound 0 once past both
    supports).  Bounded streams get the crude (n+1) * ratio**n majorant,
    summed in closed form: an over-estimate, not a sharp constant.
    """
    for stream in (p, q):
        if not isinstance(stream, (BoundedStream, list, tuple)):
            raise UnboundedStreamError(
                "streams must be finite-support sequences or carry a declared bound"
            )
    coeffs = tuple(
        sum((_coeff_at(p, k) * _coeff_at(q, n - k) for k in range(n + 1)), Fraction(0))
        for n in range(order + 1)
    )
    if not isinstance(p, BoundedStream) and not isinstance(q, BoundedStream):
        degree = max(len(p) - 1, 0) + max(len(q) - 1, 0)
        tail = sum(
            (
                abs(sum((_coeff_at(p, k) * _coeff_at(q, n - k) for k in range(n + 1)), Fraction(0)))
                for n in range(order + 1, degree + 1)
            ),
            Fraction(0),
        )
        return SeriesProduct(coeffs, tail)
    ratio = Fraction(0)
    if isinstance(p, BoundedStream):
        ratio = max(ratio, p.ratio)
    if isinstance(q, BoundedStream):
        ratio = max(ratio, q.ratio)
    scale = _envelope(p, ratio) * _envelope(q, ratio)
    return SeriesProduct(coeffs, _tail_majorant(scale, ratio, order))


def _tail_majorant(scale: Fraction, ratio: Fraction, order: int) -> Fraction:
    """scale * sum_{n > order} (n+1) * ratio**n, in closed form."""
    if ratio == 0:
        return Fraction(0)
    n = order
    tail = ratio ** (n + 1) * ((n + 2) - (n + 1) * ratio) / (1 - ratio) ** 2
    return scale * tail
