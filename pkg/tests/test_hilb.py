import random
from fractions import Fraction

import pytest

from hilbnef import (
    B_CLASS,
    C0,
    DecompositionError,
    E,
    F,
    H,
    HilbDivisor,
    InducedCurve,
    ZERO,
    b_negative_ray,
    bounding_cone_decompose,
    bounding_cone_membership,
    fiber_orthogonal_lift,
    intersect,
    lift,
    pair_hilb,
    recompose,
)

# frozen duality scan facts at n=3, degree bound 3
DUALITY_NEF_CANDIDATES = 2709
DUALITY_CURVES = 425
DUALITY_PAIRINGS = 1151325


def test_pairing_table_against_ray():
    d = b_negative_ray(3)
    assert pair_hilb(d, C0, 3) == 1
    assert pair_hilb(d, InducedCurve(F), 3) == -3
    assert pair_hilb(d, InducedCurve(E[8]), 3) == 0


def test_contracted_pairing_is_minus_b_half():
    assert pair_hilb(B_CLASS, C0, 4) == -2
    assert pair_hilb(lift(H), C0, 4) == 0


def test_induced_pairing_uses_genus():
    d = HilbDivisor(H, Fraction(-1))
    # g(F) = 1 so the B term contributes -n; g(E_i) = 0 contributes -(n-1)
    assert pair_hilb(d, InducedCurve(F), 5) == 3 - 5
    assert pair_hilb(d, InducedCurve(E[0]), 5) == 0 - 4


def test_pairing_needs_n_at_least_two():
    with pytest.raises(ValueError):
        pair_hilb(lift(H), C0, 1)


def test_fiber_orthogonal_lift_examples():
    eh = fiber_orthogonal_lift(H, 3)
    assert eh.surf == 7 * H - 2 * sum(E[1:], E[0])
    assert eh.b_half == -1
    assert pair_hilb(eh, InducedCurve(F), 3) == 0

    er = fiber_orthogonal_lift(H - E[0], 3)
    assert er.surf == Fraction(3, 2) * (H - E[0]) + 2 * F
    assert pair_hilb(er, InducedCurve(F), 3) == 0


def test_fiber_orthogonal_lift_rejects_fiber_orthogonal_input():
    with pytest.raises(ValueError):
        fiber_orthogonal_lift(F, 3)  # F.F = 0
    with pytest.raises(ValueError):
        fiber_orthogonal_lift(E[0] - E[1], 3)


def test_membership_members():
    for d in (lift(F), fiber_orthogonal_lift(H, 3), fiber_orthogonal_lift(H - E[0], 3)):
        cert = bounding_cone_membership(d, 3)
        assert cert.in_cone, d


def test_membership_rejects_ray():
    cert = bounding_cone_membership(b_negative_ray(3), 3)
    assert not cert.in_cone
    assert pair_hilb(b_negative_ray(3), InducedCurve(F), 3) == -3


def test_membership_rejects_positive_b():
    cert = bounding_cone_membership(HilbDivisor(2 * F, Fraction(1)), 3)
    assert not cert.in_cone
    assert pair_hilb(HilbDivisor(2 * F, Fraction(1)), C0, 3) == -1
    assert any("contracted" in v for v in cert.to_json()["violations"])


def test_decompose_fixture_classes():
    nef_part, t = bounding_cone_decompose(fiber_orthogonal_lift(H, 3), 3)
    assert nef_part == H
    assert t == 1
    assert recompose(nef_part, t, 3) == fiber_orthogonal_lift(H, 3)

    # the ray itself decomposes with zero nef part
    assert bounding_cone_decompose(b_negative_ray(3), 3) == (ZERO, 1)


def test_decompose_failure_witnesses():
    with pytest.raises(DecompositionError) as exc:
        bounding_cone_decompose(HilbDivisor(H, Fraction(-1)), 3)
    assert exc.value.witness == E[8]
    assert exc.value.pairing == -2

    with pytest.raises(DecompositionError) as exc:
        bounding_cone_decompose(HilbDivisor(2 * F, Fraction(1)), 3)
    assert exc.value.witness is None

    with pytest.raises(DecompositionError) as exc:
        bounding_cone_decompose(lift(E[0]), 3)
    assert exc.value.witness == E[0]
    assert exc.value.pairing == -1


def test_decompose_recompose_random_members():
    rng = random.Random(0)
    pool = [lift(F), fiber_orthogonal_lift(H, 3), fiber_orthogonal_lift(H - E[0], 3)]
    for _ in range(100):
        d = HilbDivisor(ZERO, Fraction(0))
        for p in pool:
            d = d + rng.randint(0, 3) * p
        nef_part, t = bounding_cone_decompose(d, 3)
        assert recompose(nef_part, t, 3) == d
        assert t == -d.b_half


def test_duality_report_frozen_counts(duality_3):
    rep = duality_3
    assert rep.passed
    assert rep.nef_candidate_count == DUALITY_NEF_CANDIDATES
    assert rep.curve_candidate_count == DUALITY_CURVES
    assert rep.pairings_checked == DUALITY_PAIRINGS
    assert rep.min_pairing == 0
    assert rep.violations == ()
    assert rep.unwitnessed_curves == ()


def test_duality_rows_cover_every_curve(duality_3):
    rows = duality_3.curve_rows
    assert len(rows) == DUALITY_CURVES
    for row in rows:
        assert row.min_pairing >= 0
        assert row.zero_count >= 1
        assert row.witness is not None


def test_duality_json_shapes(duality_3):
    full = duality_3.to_json()
    assert len(full["curves"]) == DUALITY_CURVES
    slim = duality_3.to_json(include_curves=False)
    assert "curves" not in slim
    assert slim["min_pairing"] == "0"


def test_hilb_divisor_arithmetic():
    d = lift(H) + Fraction(1, 2) * B_CLASS
    assert d.surf == H
    assert d.b_half == 1
    assert (d - d).surf == ZERO
    assert intersect((2 * d).surf, F) == 6
