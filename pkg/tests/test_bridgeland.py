import random
from fractions import Fraction
from itertools import combinations

import pytest

from hilbnef import (
    ChernChar,
    DegenerateWall,
    E,
    F,
    H,
    VerticalWall,
    Wall,
    ZERO,
    central_charge,
    delta_ap,
    divisor,
    fiber_orthogonal_lift,
    ideal_points_char,
    is_minus_one_class,
    line_bundle_char,
    mu_ap,
    nef_from_wall,
    numerical_wall,
    quoted_rank_one_center,
    radical_sign,
    rank1_candidates,
    rank2_radius_bound,
    rank2_radius_bound_exact,
    rank_one_center,
    slice_a1,
    slice_a2,
    twist,
    wall_contains,
    wall_oracle,
    wall_strictly_contains,
)

FIBER_WALL = Wall(Fraction(-1), Fraction(1))

# frozen candidate census at degree bound 3
CANDIDATE_TOTAL = 34162
ELIMINATED_A1_N3 = {"slope": 19428, "fiber_degree": 0, "fiber_component": 14688, "ruling_excess": 0}
ELIMINATED_A2_N3 = {"slope": 21863, "fiber_degree": 359, "fiber_component": 9360, "ruling_excess": 840}
ELIMINATED_A2_N4 = {"slope": 23945, "fiber_degree": 0, "fiber_component": 9360, "ruling_excess": 840}

# frozen rank-2 exclusion bounds
RANK2_QUOTED_A1 = {3: Fraction(21, 121), 4: Fraction(279, 2809), 5: Fraction(369, 5329), 12: Fraction(111, 5041)}
RANK2_EXACT_A1 = {3: Fraction(69, 800), 4: Fraction(963, 19208), 5: Fraction(1305, 36992), 12: Fraction(411, 35912)}
RANK2_A2 = {3: Fraction(7, 72), 4: Fraction(11, 200), 5: Fraction(15, 392), 12: Fraction(43, 3528)}


def test_chern_char_construction():
    ch = ideal_points_char(3)
    assert (ch.rank, ch.c1, ch.ch2) == (1, ZERO, -3)
    lb = line_bundle_char(H)
    assert lb.ch2 == Fraction(1, 2)
    with pytest.raises(ValueError):
        ideal_points_char(0)


def test_twist_matches_line_bundle():
    # twisting O by q matches ch(O(-q)) read off directly
    for q in (F, H, H - E[0]):
        assert twist(line_bundle_char(ZERO), q) == line_bundle_char(-q)


def test_slice_invariants(a1_slice_3, a2_slice_3):
    assert a1_slice_3.a_squared == 10
    assert a2_slice_3.a_squared == 9
    assert a1_slice_3.quoted_self_intersection == Fraction(11, 2)
    assert a2_slice_3.quoted_self_intersection == 9
    with pytest.raises(ValueError):
        slice_a1(2)


def test_twisted_slope_and_discriminant(a1_slice_3):
    ideal = ideal_points_char(3)
    # c1 - r*P = F for the twisted ideal, and A.F = 3
    assert mu_ap(a1_slice_3, ideal) == Fraction(3, 10)
    assert mu_ap(a1_slice_3, ChernChar(0, F, Fraction(0))) is None
    with pytest.raises(ValueError):
        delta_ap(a1_slice_3, ChernChar(0, F, Fraction(0)))


def test_central_charge_frozen_values(a1_slice_3):
    ideal = ideal_points_char(3)
    assert central_charge(a1_slice_3, Fraction(-1), Fraction(1), ideal) == (0, 13)
    assert central_charge(a1_slice_3, Fraction(0), Fraction(2), line_bundle_char(-F)) == (10, 0)
    with pytest.raises(ValueError):
        central_charge(a1_slice_3, Fraction(0), Fraction(0), ideal)


@pytest.mark.parametrize("n", range(3, 13))
@pytest.mark.parametrize("make", [slice_a1, slice_a2])
def test_fiber_wall_frozen(make, n):
    sl = make(n)
    w = numerical_wall(sl, line_bundle_char(-F), ideal_points_char(n))
    assert w == FIBER_WALL


def test_exceptional_walls(a1_slice_3, a2_slice_3):
    ideal = ideal_points_char(3)
    for i in range(9):
        w = numerical_wall(a1_slice_3, line_bundle_char(-E[i]), ideal)
        assert w == FIBER_WALL  # coincides exactly on the H-family slice
    w2 = numerical_wall(a2_slice_3, line_bundle_char(-E[0]), ideal)
    assert w2 == Wall(Fraction(-1, 2), Fraction(-1, 12))
    assert w2.is_empty


def test_conic_wall_and_negative_control(a1_slice_3):
    ideal = ideal_points_char(3)
    w = numerical_wall(a1_slice_3, line_bundle_char(-(H - E[0] - E[1])), ideal)
    assert w == Wall(Fraction(-3, 5), Fraction(3, 25))
    assert wall_contains(FIBER_WALL, w)
    assert wall_strictly_contains(FIBER_WALL, w)
    # inside the fiber wall only because effectivity filtering removes it
    bad = numerical_wall(a1_slice_3, line_bundle_char(-(H - E[0] - E[1] - E[2])), ideal)
    assert bad == Wall(Fraction(-2), Fraction(23, 5))
    assert not wall_contains(FIBER_WALL, bad)


def test_equal_slope_walls(a1_slice_3):
    ideal = ideal_points_char(3)
    w = numerical_wall(a1_slice_3, ChernChar(2, ZERO, Fraction(-1)), ideal)
    assert isinstance(w, VerticalWall)
    assert w.s == mu_ap(a1_slice_3, ideal)
    w2 = numerical_wall(a1_slice_3, ideal, ideal)
    assert isinstance(w2, DegenerateWall)
    with pytest.raises(ValueError):
        numerical_wall(a1_slice_3, ChernChar(0, F, Fraction(0)), ideal)


def test_rank_one_center_formulas(a1_slice_3, a2_slice_3):
    # center of the E1 wall, general formula vs the commonly quoted variant
    assert rank_one_center(a1_slice_3, -E[0]) == -1
    assert quoted_rank_one_center(a1_slice_3, -E[0]) == Fraction(-4, 3)
    assert rank_one_center(a2_slice_3, -E[0]) == Fraction(-1, 2)
    assert quoted_rank_one_center(a2_slice_3, -E[0]) == Fraction(-2, 3)
    assert rank_one_center(a1_slice_3, -F) == -1


@pytest.mark.parametrize("make", [slice_a1, slice_a2])
def test_oracle_agreement_random_rank_one(make):
    sl = make(3)
    rng = random.Random(11)
    ideal = ideal_points_char(3)
    agree = 0
    for _ in range(100):
        c1 = divisor(rng.randint(-3, 3), [rng.randint(-2, 2) for _ in range(9)])
        ch = line_bundle_char(c1, rng.randint(0, 4))
        if mu_ap(sl, ch) == mu_ap(sl, ideal):
            continue  # vertical walls carry no circle to compare
        assert numerical_wall(sl, ch, ideal) == wall_oracle(sl, ch, ideal)
        agree += 1
    assert agree >= 80


def test_radical_sign_cases():
    assert radical_sign(Fraction(9, 4), Fraction(1, 4), Fraction(1)) == 0
    assert radical_sign(Fraction(2), Fraction(2), Fraction(0)) == 0
    assert radical_sign(Fraction(50), Fraction(2), Fraction(28, 5)) == 1
    assert radical_sign(Fraction(50), Fraction(2), Fraction(17, 3)) == -1
    assert radical_sign(Fraction(4), Fraction(1), Fraction(1)) == 0


def test_wall_containment_conventions():
    inner = Wall(Fraction(-3, 5), Fraction(3, 25))
    empty = Wall(Fraction(0), Fraction(-1))
    assert wall_contains(FIBER_WALL, inner)
    assert wall_contains(FIBER_WALL, FIBER_WALL)
    assert not wall_strictly_contains(FIBER_WALL, FIBER_WALL)
    assert wall_contains(FIBER_WALL, empty)  # empty walls sit inside everything
    assert not wall_contains(empty, FIBER_WALL)
    assert not wall_contains(inner, FIBER_WALL)


def test_candidate_census_a1_n3(gieseker_a1_3):
    _, cert = gieseker_a1_3
    assert cert.candidate_count == CANDIDATE_TOTAL
    assert dict(cert.eliminated) == ELIMINATED_A1_N3
    assert cert.survivor_count == 46
    assert cert.empty_survivor_walls == 0
    assert cert.walls_equal_to_fiber_wall == 10


def test_survivor_shapes_a1_n3(a1_slice_3):
    surv = [c.shape_class() for c in rank1_candidates(a1_slice_3, 3) if c.filtered_by is None]
    assert len(surv) == 46
    assert sum(1 for d in surv if d in set(E)) == 9
    assert sum(1 for d in surv if d == F) == 1
    conics = [d for d in surv if d.h == 1]
    assert len(conics) == 36
    assert all(is_minus_one_class(d) for d in conics)


def test_candidate_census_a2_n3(gieseker_a2_3):
    _, cert = gieseker_a2_3
    assert cert.candidate_count == CANDIDATE_TOTAL
    assert dict(cert.eliminated) == ELIMINATED_A2_N3
    assert cert.survivor_count == 1740
    assert cert.empty_survivor_walls == 1695
    assert cert.walls_equal_to_fiber_wall == 17


def test_candidate_census_a2_n4():
    from hilbnef import gieseker_wall

    _, cert = gieseker_wall(slice_a2(4), 3)
    assert dict(cert.eliminated) == ELIMINATED_A2_N4
    assert cert.survivor_count == 17
    assert cert.certified


def test_gieseker_wall_certified(gieseker_a1_3, gieseker_a2_3):
    for wall, cert in (gieseker_a1_3, gieseker_a2_3):
        assert wall == FIBER_WALL
        assert cert.certified
        assert cert.min_survivor_center == -1
        assert cert.rank2_bound_quoted < 1
        assert cert.rank2_bound_exact < 1


def test_gieseker_json_toggle(gieseker_a1_3):
    _, cert = gieseker_a1_3
    slim = cert.to_json(include_candidates=False)
    assert "candidates" not in slim
    full = cert.to_json()
    assert len(full["candidates"]) == CANDIDATE_TOTAL
    assert slim["fiber_wall"] == {"center": "-1", "radius_sq": "1"}


def test_nonempty_survivor_walls_nest_by_side(a1_slice_3, a2_slice_3):
    ideal3 = ideal_points_char(3)
    for sl in (a1_slice_3, a2_slice_3):
        mu_v = mu_ap(sl, ideal3)
        walls = [
            c.wall
            for c in rank1_candidates(sl, 3)
            if c.filtered_by is None and isinstance(c.wall, Wall) and not c.wall.is_empty
        ]
        left = [w for w in walls if w.center < mu_v]
        for w1, w2 in combinations(left, 2):
            lo, hi = (w1, w2) if w1.center <= w2.center else (w2, w1)
            assert wall_contains(lo, hi)
        assert all(wall_contains(FIBER_WALL, w) for w in left)


def test_right_side_walls_a2_n3(a2_slice_3):
    # boundary shapes admitted by the non-strict slope filter produce one
    # wall to the right of the vertical wall; harmless for the left chamber
    walls = [
        c.wall
        for c in rank1_candidates(a2_slice_3, 3)
        if c.filtered_by is None and isinstance(c.wall, Wall) and not c.wall.is_empty
    ]
    right = [w for w in walls if w.center > mu_ap(a2_slice_3, ideal_points_char(3))]
    assert len(right) == 28
    assert set(right) == {Wall(Fraction(3, 2), Fraction(7, 12))}


@pytest.mark.parametrize("n,quoted", sorted(RANK2_QUOTED_A1.items()))
def test_rank2_bound_quoted_a1(n, quoted):
    assert rank2_radius_bound(slice_a1(n)) == quoted


@pytest.mark.parametrize("n,exact", sorted(RANK2_EXACT_A1.items()))
def test_rank2_bound_exact_a1(n, exact):
    assert rank2_radius_bound_exact(slice_a1(n)) == exact


@pytest.mark.parametrize("n,value", sorted(RANK2_A2.items()))
def test_rank2_bound_a2(n, value):
    assert rank2_radius_bound(slice_a2(n)) == value
    assert rank2_radius_bound_exact(slice_a2(n)) == value


@pytest.mark.parametrize("n", range(3, 13))
def test_nef_from_wall_matches_orthogonal_lifts(n):
    d1 = nef_from_wall(slice_a1(n), Fraction(-1))
    assert d1 == fiber_orthogonal_lift(H, n)
    d2 = nef_from_wall(slice_a2(n), Fraction(-1))
    assert d2 == fiber_orthogonal_lift(H - E[0], n)


def test_nef_from_wall_at_zero(a1_slice_3):
    d = nef_from_wall(a1_slice_3, Fraction(0))
    assert d.surf == Fraction(1, 2) * F
    assert d.b_half == -1
