import cmath
import itertools

import pytest

from pcmcat.category import from_semiring
from pcmcat.cauchy import eta_functor, gamma_functor
from pcmcat.errors import BadResidueError, NotPrimeError, ValidationError
from pcmcat.fincat import cyclic_category
from pcmcat.pcm import Residue
from pcmcat.universal import (
    ObstructionResult,
    SubstitutionData,
    check_hom_property,
    check_triangles,
    dft_substitute,
    object_obstruction,
    substitution_category,
    substitution_hom,
    validate_substitution_data,
)

TOL = 1e-9


def sign_character_data():
    """Integer coefficients over the order-2 monoid, evaluated at -1."""
    return SubstitutionData(
        source=from_semiring("int"),
        index=cyclic_category(2),
        target=from_semiring("complex"),
        scalar_map=lambda n: complex(n),
        monoid_map={"z0": 1 + 0j, "z1": -1 + 0j},
    )


def mod7_data():
    """Order-3 subgroup {1,2,4} of the units mod 7 as the character target."""
    return SubstitutionData(
        source=from_semiring("int"),
        index=cyclic_category(3),
        target=from_semiring("mod:7"),
        scalar_map=lambda n: Residue(n, 7),
        monoid_map={f"z{m}": Residue(2**m, 7) for m in range(3)},
    )


def test_validate_substitution_data():
    assert validate_substitution_data(sign_character_data()).passed
    assert validate_substitution_data(mod7_data()).passed


def test_validate_rejects_broken_monoid_map():
    broken = SubstitutionData(
        source=from_semiring("int"),
        index=cyclic_category(3),
        target=from_semiring("mod:7"),
        scalar_map=lambda n: Residue(n, 7),
        monoid_map={"z0": Residue(1, 7), "z1": Residue(3, 7), "z2": Residue(4, 7)},
    )
    report = validate_substitution_data(broken)
    assert not report.passed
    assert report.detail == "monoid product not preserved"


def test_substitution_evaluates_sign_character():
    data = sign_character_data()
    cc = substitution_category(data)
    obj = cc.objects[0]
    one_plus_z = cc.make_arrow(obj, obj, {"z0": 1, "z1": 1})
    assert abs(substitution_hom(data, one_plus_z)) <= TOL


def test_substitution_restricts_to_f_on_eta_images():
    data = mod7_data()
    cc = substitution_category(data)
    eta = eta_functor(cc, "*")
    for n in range(-3, 4):
        assert substitution_hom(data, eta.on_arr(n)) == Residue(n, 7)


def test_substitution_restricts_to_g_on_gamma_images():
    data = mod7_data()
    cc = substitution_category(data)
    gamma = gamma_functor(cc, "*")
    for m in range(3):
        assert substitution_hom(data, gamma.on_arr(f"z{m}")) == Residue(2**m, 7)


def test_triangles_for_small_primes():
    for p in (2, 3, 5, 7):
        data = SubstitutionData(
            source=from_semiring("int"),
            index=cyclic_category(p),
            target=from_semiring("complex"),
            scalar_map=lambda n: complex(n),
            monoid_map={
                f"z{m}": cmath.exp(2j * cmath.pi * m / p) for m in range(p)
            },
        )
        assert check_triangles(data).passed


def test_hom_property_sign_character():
    assert check_hom_property(sign_character_data(), trials=100).passed


def test_hom_property_mod7():
    assert check_hom_property(mod7_data(), trials=100).passed


def test_hom_property_detects_broken_character():
    broken = SubstitutionData(
        source=from_semiring("int"),
        index=cyclic_category(2),
        target=from_semiring("complex"),
        scalar_map=lambda n: complex(n),
        monoid_map={"z0": 1 + 0j, "z1": 2 + 0j},  # not a monoid hom
    )
    report = check_hom_property(broken, trials=50)
    assert not report.passed
    assert report.detail == "multiplicativity fails"


def test_dft_all_ones_vanishes():
    assert abs(dft_substitute(5, 1, [1, 1, 1, 1, 1])) <= TOL


def test_dft_constant_term_only():
    assert abs(dft_substitute(3, 1, [1, 0, 0]) - 1) <= TOL


def test_dft_two_point():
    assert abs(dft_substitute(2, 1, [1, 1])) <= TOL


def test_dft_orthogonality_for_small_primes():
    for p in (2, 3, 5, 7, 11, 13):
        for s in range(1, p):
            assert abs(dft_substitute(p, s, [1] * p)) <= TOL


def test_dft_supported_at_zero_is_exact():
    for p in (3, 5):
        value = dft_substitute(p, 2, [4] + [0] * (p - 1))
        assert value == 4 + 0j


def test_dft_rejects_composite_modulus():
    with pytest.raises(NotPrimeError):
        dft_substitute(4, 1, [1, 1, 1, 1])


def test_dft_rejects_bad_residue():
    with pytest.raises(BadResidueError):
        dft_substitute(5, 0, [1] * 5)
    with pytest.raises(BadResidueError):
        dft_substitute(5, 5, [1] * 5)


def test_dft_rejects_wrong_length():
    with pytest.raises(ValidationError):
        dft_substitute(3, 1, [1, 1])


def test_substitution_with_identity_scalars_matches_total_sum():
    int_cat = from_semiring("int")
    data = SubstitutionData(
        source=int_cat,
        index=cyclic_category(3),
        target=int_cat,
        scalar_map=lambda n: n,
        monoid_map={f"z{m}": 1 for m in range(3)},
    )
    cc = substitution_category(data)
    from pcmcat.cauchy import sigma_functor

    sigma = sigma_functor(cc)
    obj = cc.objects[0]
    for coeffs in itertools.product((0, 1, 2), repeat=3):
        arrow = cc.make_arrow(obj, obj, dict(zip(("z0", "z1", "z2"), coeffs)))
        assert substitution_hom(data, arrow) == sigma.on_arr(arrow)


def test_obstruction_consistent_for_agreeing_constants():
    result = object_obstruction({"X": "E"}, {"U": "E", "V": "E"})
    assert result == ObstructionResult(True, result.forced)


def test_obstruction_for_distinct_constants():
    result = object_obstruction({"X": "E1"}, {"U": "E2"})
    assert not result.consistent
    assert result.witness == ("X", "U")


def test_obstruction_for_nonconstant_map():
    result = object_obstruction({"X": "E1", "Y": "E2"}, {"U": "E1"})
    assert not result.consistent


def test_obstruction_exhaustive_over_small_object_maps():
    objects = ("e0", "e1", "e2")
    for gamma_values in itertools.product(objects, repeat=2):
        for delta_values in itertools.product(objects, repeat=2):
            gamma = dict(zip(("X", "Y"), gamma_values))
            delta = dict(zip(("U", "V"), delta_values))
            result = object_obstruction(gamma, delta)
            constants = set(gamma.values()) | set(delta.values())
            assert result.consistent == (len(constants) == 1)
