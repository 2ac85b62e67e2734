import pytest

from pcmcat.errors import NotFailingError
from pcmcat.family import Partition, enumerate_partitions, family_of
from pcmcat.pcm import (
    INT_ADD,
    NOT_SUMMABLE,
    Pcm,
    Summable,
    make_abs_convergence_pcm,
    make_finite_families_pcm,
    make_k_bounded_pcm,
    make_partial_fn_pcm,
    make_partial_injection_pcm,
    make_relations_pcm,
)
from pcmcat.category import check_strong_distributivity, k_bounded_category
from pcmcat.laws import (
    NONPOSITIVE,
    POSITIVE,
    SIGMA_COMPATIBLE,
    WPA_ONLY,
    check_full_pa,
    check_positivity,
    check_reindexing,
    check_subfamilies,
    check_unary,
    check_wpa,
    check_zero_laws,
    classify_full_pa,
    minimize,
    oracle_convolution,
    run_pcm_suite,
)

INT_FF = make_finite_families_pcm(INT_ADD)


def test_unary_passes_on_shipped_instance():
    assert check_unary(INT_FF).passed


def test_unary_fails_on_mutated_oracle():
    broken = Pcm(
        name="broken",
        contains=INT_FF.contains,
        oracle=lambda fam: NOT_SUMMABLE if len(fam) == 1 else INT_FF.oracle(fam),
        sample_elements=INT_FF.sample_elements,
    )
    assert not check_unary(broken).passed


def test_unary_vacuous_on_empty_sample():
    assert check_unary(INT_FF, samples=()).passed


def test_wpa_int_triple_all_partitions_agree():
    fam = family_of([1, 2, 3])
    assert len(enumerate_partitions(fam.labels)) == 5
    assert check_wpa(INT_FF, fam).passed


def test_wpa_complex_within_tolerance():
    pcm = make_abs_convergence_pcm()
    fam = family_of([1 + 0j, -1 + 0j, 1j])
    assert check_wpa(pcm, fam).passed


def test_wpa_vacuous_for_unsummable_family():
    pcm = make_k_bounded_pcm(INT_ADD, 1)
    report = check_wpa(pcm, family_of([1, 2]))
    assert report.passed
    assert "vacuous" in report.detail


def test_subfamilies_of_summable_families():
    pcm = make_k_bounded_pcm(INT_ADD, 2)
    assert check_subfamilies(pcm, family_of([1, 2, 0])).passed


def test_full_pa_compatible_for_partial_fns():
    pcm = make_partial_fn_pcm(2)
    assert classify_full_pa(pcm, max_size=3).verdict == SIGMA_COMPATIBLE


def test_full_pa_k1_bounded_pair_is_not_a_counterexample():
    # blocks are summable but the block-sum family {1,1} is refused, so the
    # two-way law's premise fails and nothing is witnessed
    pcm = make_k_bounded_pcm(INT_ADD, 1)
    report = check_full_pa(pcm, family_of([1, 1]))
    assert report.verdict == SIGMA_COMPATIBLE


def test_full_pa_k2_bounded_has_witness():
    pcm = make_k_bounded_pcm(INT_ADD, 2)
    report = check_full_pa(pcm, family_of([1, 1, -2]))
    assert report.verdict == WPA_ONLY
    fam, part = report.witness
    assert fam.values == (1, 1, -2)
    assert isinstance(part, Partition)


def test_full_pa_int_compatible_at_desk_scale():
    assert classify_full_pa(INT_FF, max_size=4).verdict == SIGMA_COMPATIBLE


def test_positivity_fails_on_int_with_inverse_pair():
    report = check_positivity(INT_FF)
    assert report.verdict == NONPOSITIVE
    assert set(report.witness.values) == {1, -1}


def test_positivity_holds_for_relations_and_partial_fns():
    assert check_positivity(make_relations_pcm(2, 2)).verdict == POSITIVE
    assert check_positivity(make_partial_fn_pcm(2)).verdict == POSITIVE
    assert check_positivity(make_partial_injection_pcm(2, "disjoint")).verdict == POSITIVE


def test_reindexing_invariance():
    assert check_reindexing(INT_FF, trials=100).passed
    assert check_reindexing(make_k_bounded_pcm(INT_ADD, 1), trials=100).passed


def test_zero_laws():
    assert check_zero_laws(INT_FF).passed
    assert check_zero_laws(make_relations_pcm(2, 2)).passed


def test_run_pcm_suite_is_all_pass_for_int():
    for report in run_pcm_suite(INT_FF, family_size=3, trials=50):
        assert report.passed, report.line()


def test_oracle_convolution_z2_all_ones():
    table = {("z0", "z0"): "z0", ("z0", "z1"): "z1",
             ("z1", "z0"): "z1", ("z1", "z1"): "z0"}
    alpha = {"z0": 1, "z1": 1}
    out = oracle_convolution(lambda a, b: a * b, lambda a, b: a + b, 0, table, alpha, alpha)
    assert out == {"z0": 2, "z1": 2}


def test_oracle_convolution_unit_is_neutral():
    table = {(f"z{a}", f"z{b}"): f"z{(a+b) % 3}" for a in range(3) for b in range(3)}
    alpha = {"z0": 5, "z1": 7, "z2": -2}
    unit = {"z0": 1, "z1": 0, "z2": 0}
    out = oracle_convolution(lambda a, b: a * b, lambda a, b: a + b, 0, table, alpha, unit)
    assert out == alpha


def test_oracle_convolution_z3_shift():
    table = {(f"z{a}", f"z{b}"): f"z{(a+b) % 3}" for a in range(3) for b in range(3)}
    alpha = {"z0": 0, "z1": 0, "z2": 1}
    beta = {"z0": 0, "z1": 1, "z2": 0}
    out = oracle_convolution(lambda a, b: a * b, lambda a, b: a + b, 0, table, alpha, beta)
    assert out == {"z0": 1, "z1": 0, "z2": 0}


def test_minimize_shrinks_strong_distributivity_witness():
    cat = k_bounded_category(2)
    report = check_strong_distributivity(cat, max_family=3, trials=10,
                                         exhaustive_grid=3, exhaustive_size=3)
    assert not report.passed
    small = minimize(report)
    fam_f, fam_g = small.witness
    assert len(fam_f) == 2 and len(fam_g) == 2
    assert small.recheck(small.witness)


def test_minimize_rejects_passing_report():
    from pcmcat.report import passing

    with pytest.raises(NotFailingError):
        minimize(passing("nothing"))


def test_minimize_keeps_already_minimal_witness():
    cat = k_bounded_category(2)
    report = check_strong_distributivity(cat, trials=10)
    small = minimize(report)
    assert tuple(f.values for f in small.witness) == ((1, 1), (1, 1))
