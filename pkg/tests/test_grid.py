import random

import pytest

from legcob import (GridDiagram, InputError, parse_grid, random_grid,
                    slack_unknot_grid, stabilized_unknot_grid,
                    torus_knot_grid, unknot_grid)
from legcob.grid import NE, NW, SE, SW

from oracles import CLASSICAL, rotation_cusps, tb_pushoff


def test_rejects_non_permutations():
    with pytest.raises(InputError, match="x_cells not a permutation"):
        GridDiagram([0, 0], [1, 0])
    with pytest.raises(InputError, match="x_cells not a permutation"):
        GridDiagram([0, 2], [1, 0])
    with pytest.raises(InputError, match="o_cells not a permutation"):
        GridDiagram([1, 0], [1, 1])
    with pytest.raises(InputError, match="x_cells not a permutation"):
        parse_grid({"g": 3, "x": [1, 0], "o": [0, 1]})


def test_rejects_marker_collisions_and_tiny_grids():
    with pytest.raises(InputError, match="collide"):
        GridDiagram([0, 1], [0, 1])
    with pytest.raises(InputError, match="at least 2"):
        GridDiagram([0], [0])
    with pytest.raises(InputError, match="orientation"):
        GridDiagram([1, 0], [0, 1], "widdershins")


def test_unknot_structure():
    g = unknot_grid()
    assert g.g == 2
    assert g.is_knot()
    assert g.crossings() == []
    kinds = sorted(c.kind for c in g.corners())
    assert kinds == [NE, NW, SE, SW]


def test_classical_invariants_on_stock_grids(named_grids):
    for name, grid in named_grids.items():
        want = CLASSICAL[name]
        assert grid.thurston_bennequin() == want["tb"], name
        assert grid.rotation_number() == want["rotation"], name


def test_tb_against_pushoff_oracle(named_grids):
    for name, grid in named_grids.items():
        assert tb_pushoff(grid) == grid.thurston_bennequin(), name


def test_rotation_against_cusp_oracle(named_grids):
    for name, grid in named_grids.items():
        assert rotation_cusps(grid) == grid.rotation_number(), name


def test_random_grids_agree_with_oracles(random_corpus):
    for grid in random_corpus:
        assert tb_pushoff(grid) == grid.thurston_bennequin()
        assert rotation_cusps(grid) == grid.rotation_number()


def test_link_tb_matches_the_pushoff():
    split = GridDiagram([1, 0, 3, 2], [0, 1, 2, 3])
    assert split.component_count() == 2
    assert split.thurston_bennequin() == tb_pushoff(split) == -2
    laced = GridDiagram([2, 3, 0, 1], [0, 1, 2, 3])
    assert laced.component_count() == 2
    assert laced.thurston_bennequin() == tb_pushoff(laced) == -4
    with pytest.raises(InputError, match="needs a knot"):
        laced.rotation_number()


def test_reversed_orientation_flips_rotation():
    plain = stabilized_unknot_grid()
    flipped = GridDiagram(plain.x_cells, plain.o_cells, "reversed")
    assert plain.rotation_number() == -1
    assert flipped.rotation_number() == 1
    assert rotation_cusps(flipped) == 1
    # tb does not see the orientation
    assert flipped.thurston_bennequin() == plain.thurston_bennequin()


def test_torus_family_parameters():
    for k in (1, 2, 3, 4):
        grid = torus_knot_grid(k)
        assert grid.g == 2 * k + 3
        assert grid.is_knot()
        assert grid.thurston_bennequin() == 2 * k - 1
    with pytest.raises(InputError, match="integer >= 1"):
        torus_knot_grid(0)
    with pytest.raises(InputError, match="integer >= 1"):
        torus_knot_grid("3")


def test_commutation_legality_and_involution():
    g = slack_unknot_grid()
    cols = [i for i in range(g.g - 1) if g.can_commute_columns(i)]
    rows = [j for j in range(g.g - 1) if g.can_commute_rows(j)]
    assert cols == [0]
    assert rows == [2]
    moved = g.commute_columns(0)
    assert moved != g
    assert moved.commute_columns(0) == g
    assert moved.thurston_bennequin() == g.thurston_bennequin()
    assert moved.rotation_number() == g.rotation_number()
    back = g.commute_rows(2).commute_rows(2)
    assert back == g


def test_tight_grids_admit_no_commutations(named_grids):
    for name in ("unknot", "stab", "trefoil", "torus2", "torus3", "torus4"):
        grid = named_grids[name]
        for i in range(grid.g - 1):
            assert not grid.can_commute_columns(i), (name, i)
            assert not grid.can_commute_rows(i), (name, i)


def test_illegal_commutation_raises():
    g = torus_knot_grid(1)
    with pytest.raises(InputError, match="do not commute"):
        g.commute_columns(0)


def test_json_roundtrip(named_grids):
    for grid in named_grids.values():
        data = grid.to_jsonable()
        assert sorted(data) == ["g", "o", "orientation", "x"]
        assert parse_grid(data) == grid


def test_random_grid_is_seeded_and_knotted():
    a = [random_grid(random.Random(5)) for _ in range(10)]
    b = [random_grid(random.Random(5)) for _ in range(10)]
    assert a == b
    assert all(g.is_knot() and 2 <= g.g <= 8 for g in a)
