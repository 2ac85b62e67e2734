import itertools

import pytest

from pcmcat.errors import NotAMonoidError
from pcmcat.fincat import (
    FinCategory,
    compose_functors,
    constant_functor,
    cyclic_category,
    cyclic_reduction_functor,
    from_monoid,
    identity_functor,
    product_category,
    projections,
    trivial_category,
    two_object_five_arrow_category,
    two_object_parallel_pair,
    validate_category,
    validate_functor,
)


def test_trivial_category_is_valid():
    assert validate_category(trivial_category()).passed


def test_cyclic_z2_valid_and_exhaustively_associative():
    z2 = cyclic_category(2)
    assert validate_category(z2).passed
    for h, g, f in itertools.product(z2.arrows, repeat=3):
        assert z2.compose(z2.compose(h, g), f) == z2.compose(h, z2.compose(g, f))


def test_z3_shape():
    z3 = cyclic_category(3)
    assert len(z3.objects) == 1
    assert len(z3.arrows) == 3
    assert z3.compose("z1", "z2") == "z0"


def test_broken_associativity_reported_with_triple():
    # z*z=e, z*e=z, e*z=z, e*e=z breaks both unit and associativity
    cat = FinCategory(
        objects=("*",),
        arrows=(("e", "*", "*"), ("z", "*", "*")),
        compositions={
            ("z", "z"): "e",
            ("z", "e"): "z",
            ("e", "z"): "z",
            ("e", "e"): "z",
        },
        identities={"*": "e"},
    )
    report = validate_category(cat)
    assert not report.passed
    assert report.witness is not None


def test_missing_composite_fails_validation():
    cat = FinCategory(
        objects=("*",),
        arrows=(("f", "*", "*"),),
        compositions={},
    )
    report = validate_category(cat)
    assert not report.passed
    assert report.detail == "composite missing"


def test_from_monoid_accepts_z3_table():
    table = {(f"g{a}", f"g{b}"): f"g{(a+b) % 3}" for a in range(3) for b in range(3)}
    cat = from_monoid([f"g{k}" for k in range(3)], table, "g0")
    assert len(cat.objects) == 1
    assert len(cat.arrows) == 3


def test_from_monoid_rejects_non_associative_table():
    elements = ("e", "x", "y")
    table = {}
    for a in elements:
        table[(a, "e")] = a
        table[("e", a)] = a
    table.update({("x", "x"): "y", ("x", "y"): "e", ("y", "x"): "x",
                  ("y", "y"): "x"})
    with pytest.raises(NotAMonoidError):
        from_monoid(elements, table, "e")


def test_product_with_trivial_is_isomorphic_to_factor():
    z2 = cyclic_category(2)
    prod = product_category(z2, trivial_category())
    assert validate_category(prod).passed
    assert len(prod.objects) == 1
    assert len(prod.arrows) == 2


def test_product_z2_z3_is_z6_like():
    prod = product_category(cyclic_category(2), cyclic_category(3))
    assert validate_category(prod).passed
    assert len(prod.arrows) == 6
    # the generator pair has order 6
    gen = "(z1,z1)"
    power, seen = gen, 1
    while power != prod.identity_of[prod.objects[0]]:
        power = prod.compose(gen, power)
        seen += 1
    assert seen == 6


def test_product_hom_sizes_multiply():
    five = two_object_five_arrow_category()
    prod = product_category(five, cyclic_category(2))
    assert validate_category(prod).passed
    for u, v in itertools.product(five.objects, repeat=2):
        assert len(prod.hom(f"({u},*)", f"({v},*)")) == len(five.hom(u, v)) * 2


def test_projections_are_functors():
    a, b = cyclic_category(2), cyclic_category(3)
    prod = product_category(a, b)
    p1, p2 = projections(a, b, prod)
    assert validate_functor(p1, prod, a).passed
    assert validate_functor(p2, prod, b).passed


def test_identity_functor_passes():
    z4 = cyclic_category(4)
    assert validate_functor(identity_functor(z4), z4, z4).passed


def test_z4_to_z2_reduction_passes_exhaustively():
    z4, z2 = cyclic_category(4), cyclic_category(2)
    functor = cyclic_reduction_functor(4, 2)
    assert validate_functor(functor, z4, z2).passed


def test_functor_with_broken_composite_fails():
    from pcmcat.fincat import Functor

    z3 = cyclic_category(3)
    bad = Functor({"*": "*"}, {"z0": "z0", "z1": "z1", "z2": "z0"})
    report = validate_functor(bad, z3, z3)
    assert not report.passed
    assert report.detail == "composite not preserved"


def test_two_object_categories_are_valid():
    assert validate_category(two_object_parallel_pair()).passed
    five = two_object_five_arrow_category()
    assert validate_category(five).passed
    assert len(five.arrows) == 5


def test_constant_functor_to_trivial():
    five = two_object_five_arrow_category()
    triv = trivial_category()
    functor = constant_functor(five, triv, "*")
    assert validate_functor(functor, five, triv).passed


def test_compose_functors():
    z4, z2 = cyclic_category(4), cyclic_category(2)
    down = cyclic_reduction_functor(4, 2)
    identity = identity_functor(z2)
    composite = compose_functors(identity, down)
    assert validate_functor(composite, z4, z2).passed
