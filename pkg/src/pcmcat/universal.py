"""Substitution homomorphisms out of one-object convolution categories.

Given a scalar homomorphism f out of the base and a monoid homomorphism g
out of the index, the induced map evaluates a coefficient arrow by
h(alpha) = sum over m of f(alpha(m)) * g(m), interpreting the formal index
variable at a concrete value.  The character sum into the complex plane is
the stock instance.  In the multi-object setting no such family of maps can
exist unless both object maps are constant and agree, which the obstruction
check reports.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from typing import Callable, Mapping

from .category import PcmCategory, from_semiring
from .cauchy import CauchyArrow, CauchyCategory, cauchy_product, eta_functor, gamma_functor
from .errors import BadResidueError, NotPrimeError, NotSummableError, ValidationError
from .family import IndexedFamily, family_of
from .fincat import FinCategory, cyclic_category
from .pcm import Summable
from .report import Report, failing, passing


@dataclass(frozen=True, eq=False)
class SubstitutionData:
    """A scalar hom out of the base and a monoid hom out of the index."""

    source: PcmCategory        # one-object base A
    index: FinCategory         # one-object finite monoid M
    target: PcmCategory        # one-object target B
    scalar_map: Callable       # f : A -> B
    monoid_map: Mapping[str, object]  # g : arrows of M -> B

    def __post_init__(self):
        for cat, label in ((self.source, "source"), (self.target, "target")):
            if len(cat.objects) != 1:
                raise ValidationError(f"{label} must have a single object")
        if len(self.index.objects) != 1:
            raise ValidationError("index must be a one-object category")


def validate_substitution_data(data: SubstitutionData, seed: int = 0) -> Report:
    """Spot-check that f is a semiring hom and g a monoid hom."""
    name = "substitution-data"
    a_obj = data.source.objects[0]
    b_obj = data.target.objects[0]
    a_pcm = data.source.hom_pcm(a_obj, a_obj)
    b_pcm = data.target.hom_pcm(b_obj, b_obj)
    f = data.scalar_map
    if not b_pcm.close(f(a_pcm.zero), b_pcm.zero):
        return failing(name, a_pcm.zero, detail="zero not preserved")
    if not b_pcm.close(f(data.source.identity(a_obj)), data.target.identity(b_obj)):
        return failing(name, None, detail="unit not preserved")
    rng = random.Random(f"{seed}:substitution")
    for _ in range(200):
        x, y = rng.choice(a_pcm.grid), rng.choice(a_pcm.grid)
        added = a_pcm.sum(family_of([x, y]))
        if isinstance(added, Summable):
            image = b_pcm.sum(family_of([f(x), f(y)]))
            if not isinstance(image, Summable) or not b_pcm.close(image.value, f(added.value)):
                return failing(name, (x, y), detail="addition not preserved")
        lhs = f(data.source.compose(x, y))
        rhs = data.target.compose(f(x), f(y))
        if not b_pcm.close(lhs, rhs):
            return failing(name, (x, y), detail="multiplication not preserved")
    unit = data.index.identity_of[data.index.objects[0]]
    if not b_pcm.close(data.monoid_map[unit], data.target.identity(b_obj)):
        return failing(name, unit, detail="monoid unit not preserved")
    for m in data.index.arrows:
        for k in data.index.arrows:
            lhs = data.monoid_map[data.index.compose(m, k)]
            rhs = data.target.compose(data.monoid_map[m], data.monoid_map[k])
            if not b_pcm.close(lhs, rhs):
                return failing(name, (m, k), detail="monoid product not preserved")
    return passing(name)


def substitution_hom(data: SubstitutionData, alpha: CauchyArrow):
    """Evaluate h(alpha) = sum over m of f(alpha(m)) * g(m) in the target."""
    b_obj = data.target.objects[0]
    b_pcm = data.target.hom_pcm(b_obj, b_obj)
    terms = IndexedFamily(
        tuple(
            (m, data.target.compose(data.scalar_map(value), data.monoid_map[m]))
            for m, value in alpha.coeffs
        )
    )
    result = b_pcm.sum(terms)
    if not isinstance(result, Summable):
        raise NotSummableError(f"target refused the substitution family {terms.entries}")
    return result.value


def substitution_category(data: SubstitutionData) -> CauchyCategory:
    """The convolution category the substitution map is defined on."""
    return cauchy_product(data.source, data.index)


def dft_substitute(p: int, s: int, alpha: list[int]) -> complex:
    """Character sum: evaluate integer coefficients at the p-th roots of unity.

    Specializes the substitution map with the canonical inclusion into the
    complex plane and the character m -> exp(2 pi i m s / p).
    """
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise NotPrimeError(f"{p} is not prime")
    if not 0 < s < p:
        raise BadResidueError(f"s must lie strictly between 0 and {p}")
    if len(alpha) != p or any(a < 0 for a in alpha):
        raise ValidationError(f"alpha must be {p} nonnegative integers")
    data = SubstitutionData(
        source=from_semiring("int"),
        index=cyclic_category(p),
        target=from_semiring("complex"),
        scalar_map=lambda n: complex(n),
        monoid_map={f"z{m}": cmath.exp(2j * cmath.pi * m * s / p) for m in range(p)},
    )
    cc = substitution_category(data)
    obj = cc.objects[0]
    arrow = cc.make_arrow(obj, obj, {f"z{m}": int(a) for m, a in enumerate(alpha)})
    return substitution_hom(data, arrow)


def check_triangles(data: SubstitutionData) -> Report:
    """h composed with the two embeddings restricts to f and g."""
    name = "substitution-triangles"
    cc = substitution_category(data)
    b_obj = data.target.objects[0]
    b_pcm = data.target.hom_pcm(b_obj, b_obj)
    a_obj = data.source.objects[0]
    eta = eta_functor(cc, data.index.objects[0])
    for value in data.source.hom_pcm(a_obj, a_obj).sample_elements:
        if not b_pcm.close(substitution_hom(data, eta.on_arr(value)), data.scalar_map(value)):
            return failing(name, value, detail="h after eta differs from f")
    gamma = gamma_functor(cc, a_obj)
    for m in data.index.arrows:
        if not b_pcm.close(substitution_hom(data, gamma.on_arr(m)), data.monoid_map[m]):
            return failing(name, m, detail="h after gamma differs from g")
    return passing(name)


def check_hom_property(data: SubstitutionData, trials: int = 100, bound: int = 3,
                       seed: int = 0) -> Report:
    """h is additive and multiplicative on sampled pairs, and is forced by
    its values on the embedded generators (extensional uniqueness)."""
    name = "substitution-hom"
    cc = substitution_category(data)
    obj = cc.objects[0]
    b_obj = data.target.objects[0]
    b_pcm = data.target.hom_pcm(b_obj, b_obj)
    a_obj = data.source.objects[0]
    a_grid = [v for v in data.source.hom_pcm(a_obj, a_obj).grid][: 2 * bound + 1]
    rng = random.Random(f"{seed}:hom-property")
    eta = eta_functor(cc, data.index.objects[0])
    gamma = gamma_functor(cc, a_obj)

    def random_arrow():
        return cc.make_arrow(obj, obj, {m: rng.choice(a_grid) for m in data.index.arrows})

    for _ in range(trials):
        alpha, beta = random_arrow(), random_arrow()
        total = cc.sum_arrows(family_of([alpha, beta]))
        if isinstance(total, Summable):
            lhs = substitution_hom(data, total.value)
            rhs = b_pcm.sum(
                family_of([substitution_hom(data, alpha), substitution_hom(data, beta)])
            )
            if not isinstance(rhs, Summable) or not b_pcm.close(lhs, rhs.value):
                return failing(name, (alpha, beta), detail="additivity fails")
        lhs = substitution_hom(data, cc.compose(alpha, beta))
        rhs = data.target.compose(
            substitution_hom(data, alpha), substitution_hom(data, beta)
        )
        if not b_pcm.close(lhs, rhs):
            return failing(name, (alpha, beta), detail="multiplicativity fails")
        # uniqueness on samples: alpha decomposes along the embeddings, so any
        # additive multiplicative map agreeing with f and g is forced to h's value
        pieces = [
            cc.compose(eta.on_arr(value), gamma.on_arr(m)) for m, value in alpha.coeffs
        ]
        rebuilt = cc.sum_arrows(family_of(pieces), src=obj, tgt=obj)
        if not isinstance(rebuilt, Summable) or not cc.hom_pcm(obj, obj).close(
            rebuilt.value, alpha
        ):
            return failing(name, alpha, detail="arrow does not decompose along embeddings")
        forced_terms = family_of(
            [
                data.target.compose(
                    substitution_hom(data, eta.on_arr(value)),
                    substitution_hom(data, gamma.on_arr(m)),
                )
                for m, value in alpha.coeffs
            ]
        )
        forced = b_pcm.sum(forced_terms)
        if not isinstance(forced, Summable) or not b_pcm.close(
            forced.value, substitution_hom(data, alpha)
        ):
            return failing(name, alpha, detail="value not forced by the embeddings")
    return passing(name)


# --------------------------------------------------------------------------
# the multi-object obstruction
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionResult:
    consistent: bool
    forced: tuple
    witness: tuple | None = None


def object_obstruction(gamma_objects: Mapping, delta_objects: Mapping) -> ObstructionResult:
    """Forced equalities between the two object maps into a common target.

    Commutation with both embeddings forces the images of every base object
    and every index object to coincide; the maps are consistent only when
    both are constant at the same target object.
    """
    forced = tuple(
        (x, u, gamma_objects[x], delta_objects[u])
        for x in sorted(gamma_objects)
        for u in sorted(delta_objects)
    )
    for x, u, gx, du in forced:
        if gx != du:
            return ObstructionResult(False, forced, witness=(x, u))
    return ObstructionResult(True, forced)
