import pytest

from legcob import (DGA, BudgetExceeded, build_dga, stabilized_unknot_grid,
                    torus_knot_grid, unknot_grid)
from legcob.augment import (augmentation_report, augmentations, lch_dims,
                            lch_euler)
from legcob.resolve import resolve

from oracles import (STAB_UNKNOT_AUG_COUNT, TREFOIL_AUGS, TREFOIL_AUG_COUNT,
                     TREFOIL_LCH, UNKNOT_AUG_COUNT, UNKNOT_LCH,
                     lch_dims_oracle)


def test_unknot_single_augmentation():
    dga = build_dga(resolve(unknot_grid()))
    augs = augmentations(dga)
    assert len(augs) == UNKNOT_AUG_COUNT
    assert augs == [{"a1": 0}]
    assert lch_dims(dga, augs[0]) == UNKNOT_LCH


def test_trefoil_augmentations_match_hand_table():
    dga = build_dga(resolve(torus_knot_grid(1)))
    augs = augmentations(dga)
    assert len(augs) == TREFOIL_AUG_COUNT
    got = sorted(tuple(sorted((k, v) for k, v in a.items()
                              if k.startswith("c"))) for a in augs)
    want = sorted(tuple(sorted(a.items())) for a in TREFOIL_AUGS)
    assert got == want
    # loop chords are graded away from zero, never augmented
    assert all(a["a1"] == 0 and a["a2"] == 0 for a in augs)
    for eps in augs:
        assert lch_dims(dga, eps) == TREFOIL_LCH


def test_stabilized_unknot_has_no_augmentations():
    dga = build_dga(resolve(stabilized_unknot_grid()))
    assert len(augmentations(dga)) == STAB_UNKNOT_AUG_COUNT


def test_torus_family_augmentation_counts():
    # geometric sums of powers of four: 5, 21, 85
    want = {1: 5, 2: 21, 3: 85}
    for k, n in want.items():
        dga = build_dga(resolve(torus_knot_grid(k)))
        assert len(augmentations(dga)) == n, k


def test_augmentations_really_kill_the_differential(word_corpus):
    for name, word in word_corpus:
        dga = build_dga(word)
        for eps in augmentations(dga):
            for gen, _ in dga.generators:
                hits = 0
                for mono in dga.d[gen]:
                    if all(eps[letter] for letter in mono):
                        hits += 1
                assert hits % 2 == 0, (name, gen)


def test_lch_against_set_elimination_oracle(word_corpus):
    for name, word in word_corpus:
        dga = build_dga(word)
        for eps in augmentations(dga):
            assert lch_dims(dga, eps) == lch_dims_oracle(dga, eps), name


def test_lch_euler_equals_tb(word_corpus):
    for name, word in word_corpus:
        if word.grading().modulus != 0:
            continue
        dga = build_dga(word)
        for eps in augmentations(dga):
            assert lch_euler(lch_dims(dga, eps)) == word.tb(), name


def test_augmentation_search_budget():
    gens = [("z%d" % i, 0) for i in range(23)]
    dga = DGA(gens, 0, {n: [] for n, _ in gens}, {n: 1 for n, _ in gens})
    with pytest.raises(BudgetExceeded, match="beyond the augmentation"):
        augmentations(dga)


def test_augmentation_report_schema():
    report = augmentation_report(build_dga(resolve(unknot_grid())))
    assert report == {"augmentations": 1,
                      "poincare": [{"aug": {"a1": 0}, "dims": {"1": 1}}]}
    empty = augmentation_report(build_dga(resolve(stabilized_unknot_grid())))
    assert empty == {"augmentations": 0, "poincare": []}
