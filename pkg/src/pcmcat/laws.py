"""Brute-force law checkers: axioms, classifiers, and counterexample shrinking.

Everything here works by enumeration over desk-scale grids.  Checks are
one-sided where the axioms are: a family the oracle refuses never witnesses
a partition-law failure, only the classifier records what the refusal rules
out.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable

from .errors import NotFailingError
from .family import (
    IndexedFamily,
    enumerate_partitions,
    family_of,
    make_family,
    reindex,
    subfamily,
)
from .pcm import Pcm, Summable
from .report import Report, failing, passing

SIGMA_COMPATIBLE = "SIGMA_MONOID_COMPATIBLE"
WPA_ONLY = "WPA_ONLY"
POSITIVE = "POSITIVE"
NONPOSITIVE = "NONPOSITIVE"


def families_over(grid: tuple, max_size: int) -> Iterable[IndexedFamily]:
    """All multiset families over the grid, sizes 0..max_size, fixed order."""
    for size in range(max_size + 1):
        for combo in itertools.combinations_with_replacement(grid, size):
            yield family_of(combo)


def check_unary(pcm: Pcm, samples: tuple | None = None) -> Report:
    """Singleton families must be summable, with the member as their sum."""
    name = f"unary[{pcm.name}]"
    for x in samples if samples is not None else pcm.sample_elements:
        result = pcm.sum(family_of([x]))
        if not isinstance(result, Summable) or not pcm.close(result.value, x):
            return failing(name, family_of([x]))
    return passing(name)


def check_zero_laws(pcm: Pcm, samples: tuple | None = None) -> Report:
    """The empty family sums to zero; zeros pad any element without effect."""
    name = f"zero[{pcm.name}]"
    empty = pcm.sum(make_family([]))
    if not isinstance(empty, Summable):
        return failing(name, make_family([]), detail="empty family refused")
    z = empty.value
    for size in (1, 3, 5):
        result = pcm.sum(family_of([z] * size))
        if not isinstance(result, Summable) or not pcm.close(result.value, z):
            return failing(name, family_of([z] * size), detail="zeros do not sum to zero")
    for x in samples if samples is not None else pcm.sample_elements:
        padded = pcm.sum(family_of([x, z, z]))
        if not isinstance(padded, Summable) or not pcm.close(padded.value, x):
            return failing(name, family_of([x, z, z]), detail="zero padding changes the sum")
    return passing(name)


def check_wpa(pcm: Pcm, fam: IndexedFamily) -> Report:
    """One-way partition law for a single family, over all of its partitions."""
    name = f"wpa[{pcm.name}]"
    total = pcm.sum(fam)
    if not isinstance(total, Summable):
        return passing(name, detail="family not summable; vacuous")
    for part in enumerate_partitions(fam.labels):
        block_sums = []
        for k, block in enumerate(part.blocks):
            result = pcm.sum(subfamily(fam, block))
            if not isinstance(result, Summable):
                return failing(name, (fam, part), detail="block not summable")
            block_sums.append((f"b{k}", result.value))
        regrouped = pcm.sum(IndexedFamily(tuple(block_sums)))
        if not isinstance(regrouped, Summable):
            return failing(name, (fam, part), detail="block sums not summable")
        if not pcm.close(regrouped.value, total.value):
            return failing(name, (fam, part), detail="block sums disagree with total")
    return passing(name)


def check_subfamilies(pcm: Pcm, fam: IndexedFamily) -> Report:
    """Every subfamily of a summable family must be summable."""
    name = f"subfamilies[{pcm.name}]"
    if not isinstance(pcm.sum(fam), Summable):
        return passing(name, detail="family not summable; vacuous")
    labels = fam.labels
    for size in range(len(labels) + 1):
        for keep in itertools.combinations(labels, size):
            if not isinstance(pcm.sum(subfamily(fam, keep)), Summable):
                return failing(name, (fam, keep), detail="subfamily refused")
    return passing(name)


def check_full_pa(pcm: Pcm, fam: IndexedFamily) -> Report:
    """Two-way partition law for one family; FAILs only in the converse direction.

    Verdict names whether the tested data is compatible with the two-way law
    (the one-way direction is check_wpa's job).
    """
    name = f"full-pa[{pcm.name}]"
    fam_summable = isinstance(pcm.sum(fam), Summable)
    if fam_summable:
        wpa = check_wpa(pcm, fam)
        if not wpa.passed:
            return Report(name, "FAIL", wpa.witness, detail=wpa.detail)
        return Report(name, SIGMA_COMPATIBLE)
    for part in enumerate_partitions(fam.labels):
        block_sums = []
        for k, block in enumerate(part.blocks):
            result = pcm.sum(subfamily(fam, block))
            if not isinstance(result, Summable):
                break
            block_sums.append((f"b{k}", result.value))
        else:
            regrouped = pcm.sum(IndexedFamily(tuple(block_sums)))
            if isinstance(regrouped, Summable):
                # blocks and block sums are admitted but the whole family is
                # not: the two-way law fails here
                return Report(name, WPA_ONLY, witness=(fam, part))
    return Report(name, SIGMA_COMPATIBLE)


def classify_full_pa(pcm: Pcm, max_size: int = 4) -> Report:
    """Aggregate check_full_pa over the family grid."""
    name = f"full-pa[{pcm.name}]"
    for fam in families_over(pcm.grid, max_size):
        report = check_full_pa(pcm, fam)
        if report.verdict != SIGMA_COMPATIBLE:
            return report
    return Report(name, SIGMA_COMPATIBLE, detail="on tested families")


def check_positivity(pcm: Pcm, samples: tuple | None = None, max_size: int = 3) -> Report:
    """Does a zero total force every member to be zero, on tested families?"""
    name = f"positivity[{pcm.name}]"
    grid = samples if samples is not None else pcm.grid
    z = pcm.zero
    for fam in families_over(tuple(grid), max_size):
        result = pcm.sum(fam)
        if not isinstance(result, Summable) or not pcm.close(result.value, z):
            continue
        if any(not pcm.close(v, z) for v in fam.values):
            return Report(name, NONPOSITIVE, witness=fam)
    return Report(name, POSITIVE, detail="on tested families")


def check_reindexing(pcm: Pcm, trials: int = 200, max_size: int = 5,
                     seed: int = 0) -> Report:
    """Summability and sums must be invariant under label bijections."""
    name = f"reindex[{pcm.name}]"
    rng = random.Random(f"{seed}:reindex:{pcm.name}")
    grid = pcm.grid
    for k in range(trials):
        size = rng.randint(0, max_size)
        fam = family_of([rng.choice(grid) for _ in range(size)])
        fresh = [f"n{k}.{j}" for j in range(size)]
        rng.shuffle(fresh)
        relabeled = reindex(fam, dict(zip(fam.labels, fresh)))
        before, after = pcm.sum(fam), pcm.sum(relabeled)
        if isinstance(before, Summable) != isinstance(after, Summable):
            return failing(name, fam, detail="summability changed under relabeling")
        if isinstance(before, Summable) and not pcm.close(before.value, after.value):
            return failing(name, fam, detail="sum changed under relabeling")
    return passing(name)


def run_pcm_suite(pcm: Pcm, family_size: int = 4, trials: int = 200,
                  seed: int = 0) -> list[Report]:
    """The whole per-instance battery, in a fixed order."""
    reports = [check_unary(pcm), check_zero_laws(pcm)]
    wpa_name = f"wpa[{pcm.name}]"
    sub_name = f"subfamilies[{pcm.name}]"
    wpa_report, sub_report = passing(wpa_name), passing(sub_name)
    for fam in families_over(pcm.grid, family_size):
        report = check_wpa(pcm, fam)
        if not report.passed:
            wpa_report = report
            break
        if len(fam) <= 4:
            sub = check_subfamilies(pcm, fam)
            if not sub.passed:
                sub_report = sub
                break
    reports.append(wpa_report)
    reports.append(sub_report)
    reports.append(check_reindexing(pcm, trials=trials, seed=seed))
    reports.append(classify_full_pa(pcm, max_size=min(4, family_size)))
    reports.append(check_positivity(pcm))
    return reports


def run_category_suite(cat, family_size: int = 4, trials: int = 200,
                       seed: int = 0) -> list[Report]:
    """Per-hom axiom batteries plus the composition laws."""
    from .category import check_strong_distributivity, derived_laws

    reports: list[Report] = []
    for x, y in itertools.product(cat.objects, repeat=2):
        reports.extend(
            run_pcm_suite(cat.hom_pcm(x, y), family_size=family_size,
                          trials=trials, seed=seed)
        )
    reports.append(
        check_strong_distributivity(cat, max_family=family_size, trials=trials, seed=seed)
    )
    reports.extend(derived_laws(cat))
    return reports


# --------------------------------------------------------------------------
# independent convolution oracle
# --------------------------------------------------------------------------


def oracle_convolution(
    scalar_mul: Callable,
    scalar_add: Callable,
    scalar_zero,
    monoid_table: dict[tuple[str, str], str],
    alpha: dict[str, object],
    beta: dict[str, object],
) -> dict[str, object]:
    """Double-loop product of coefficient maps over a finite monoid.

    Deliberately independent of the factorization-index path used by the
    composition code: it walks all (q, p) pairs and accumulates with plain
    scalar operations.
    """
    elements = sorted({m for pair in monoid_table for m in pair})
    out = {m: scalar_zero for m in elements}
    for q in elements:
        for p in elements:
            target = monoid_table[(q, p)]
            out[target] = scalar_add(out[target], scalar_mul(alpha[q], beta[p]))
    return out


# --------------------------------------------------------------------------
# counterexample shrinking
# --------------------------------------------------------------------------


def _drop_entry(fam: IndexedFamily, index: int) -> IndexedFamily:
    return IndexedFamily(fam.entries[:index] + fam.entries[index + 1 :])


def minimize(report: Report) -> Report:
    """Greedily drop family entries from a FAIL witness while it still fails.

    The report must carry a ``recheck`` callback returning True when a
    candidate witness still exhibits the failure.
    """
    if report.passed:
        raise NotFailingError("cannot minimize a passing report")
    if report.recheck is None or report.witness is None:
        raise NotFailingError("report carries no re-checkable witness")
    witness = report.witness
    single = isinstance(witness, IndexedFamily)
    fams = [witness] if single else list(witness)
    changed = True
    while changed:
        changed = False
        for which, fam in enumerate(fams):
            for k in range(len(fam)):
                candidate = list(fams)
                candidate[which] = _drop_entry(fam, k)
                packed = candidate[0] if single else tuple(candidate)
                if report.recheck(packed):
                    fams = candidate
                    changed = True
                    break
            if changed:
                break
    final = fams[0] if single else tuple(fams)
    return Report(report.name, report.verdict, witness=final,
                  detail=report.detail + " (minimized)", recheck=report.recheck)
