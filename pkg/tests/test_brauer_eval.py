import random
from fractions import Fraction

import pytest

from symmetroid.brauer_eval import (PrecisionError, _conic_invariant,
                                    certify_wa_failure, evaluate_invariant,
                                    find_real_point_with_invariant,
                                    lift_to_y)
from symmetroid.linalg import mat_mul, random_unimodular, transpose
from symmetroid.localfields import INV_HALF, INV_ZERO, REAL
from symmetroid.pencil import Pencil
from symmetroid.quadform import QuadricForm

HALF = Fraction(1, 2)


def test_lift_examples(thm_pencil, q3_pencil):
    assert len(lift_to_y(thm_pencil, (1, 0, 0, 0, 0), REAL)) == 2
    assert len(lift_to_y(q3_pencil, (1, 0, 0, 0, 0), 3)) == 2
    with pytest.raises(ValueError):
        lift_to_y(thm_pencil, (0, 0, 1, 0, 0), REAL)  # [Q2] is nonsingular


def test_lift_square_class_failure():
    # rank-4 member with base disc -3: nonsquare at 5 and at infinity
    qs = ["x0^2 + x1^2 + x2^2 - 3*x3^2", "x0*x1 + x3*x4", "x0*x2 + x4^2",
          "x1*x2 + x2*x3 + x0^2", "x2*x4 + x1^2"]
    P = Pencil([QuadricForm.from_string(s) for s in qs])
    assert lift_to_y(P, (1, 0, 0, 0, 0), 5) == []
    assert lift_to_y(P, (1, 0, 0, 0, 0), REAL) == []
    # ... while at 13, -3 is a square (4^2 = 16 = 3 + 13)
    assert len(lift_to_y(P, (1, 0, 0, 0, 0), 13)) == 2


def test_rank3_unique_ruling():
    qs = ["x0^2 + x1^2 - x2^2", "x0*x3 + x1*x4", "x3^2 + x0*x1 - x4^2",
          "x3*x4 + x2^2", "x2*x4 + x1^2 + x0*x2"]
    P = Pencil([QuadricForm.from_string(s) for s in qs])
    pts = lift_to_y(P, (1, 0, 0, 0, 0), REAL)
    assert len(pts) == 1 and pts[0].ruling == "unique" and pts[0].rank == 3
    # indefinite rank-3 cone has smooth real points: invariant 0
    assert evaluate_invariant(P, pts[0]) == INV_ZERO


def test_invariants_paper_values(thm_pencil, q3_pencil):
    y = lift_to_y(q3_pencil, (1, 0, 0, 0, 0), 3)[0]
    assert evaluate_invariant(q3_pencil, y) == HALF
    y2 = lift_to_y(q3_pencil, (0, 1, 0, 0, 0), 3)[0]
    assert evaluate_invariant(q3_pencil, y2) == INV_ZERO
    yr = lift_to_y(thm_pencil, (0, 1, 0, 0, 0), REAL)[0]
    assert evaluate_invariant(thm_pencil, yr) == HALF
    y0 = lift_to_y(thm_pencil, (1, 0, 0, 0, 0), REAL)[0]
    assert evaluate_invariant(thm_pencil, y0) == INV_ZERO


def _random_pencil_with_square_disc_member(rng):
    """A pencil whose first member is rank 4 with square base discriminant
    (so it lifts to Y over every completion)."""
    while True:
        d = [rng.choice([1, 2, 3, -1, -2, -3]) for _ in range(3)]
        d4 = d[0] * d[1] * d[2]
        D = [[0] * 5 for _ in range(5)]
        for i, di in enumerate(d + [d4]):
            D[i][i] = 2 * di
        T = random_unimodular(5, rng, size=1)
        B0 = mat_mul(mat_mul(transpose(T), D), T)
        Q0 = QuadricForm.from_gram(B0)
        others = [QuadricForm([rng.randint(-3, 3) for _ in range(15)])
                  for _ in range(4)]
        try:
            return Pencil([Q0] + others)
        except ValueError:
            continue


def test_path_agreement_200_points():
    # smooth-point route vs quaternion-conic route at sampled H-points:
    # evaluate_invariant raises on any disagreement
    rng = random.Random(99)
    places = [REAL, 2, 3, 5, 7, 11, 13]
    checked = 0
    while checked < 200:
        P = _random_pencil_with_square_disc_member(rng)
        t = (1, 0, 0, 0, 0)
        minors = [P.leading_minor_poly(k) for k in (1, 2, 3)]
        if any(m.evaluate(list(t)) == 0 for m in minors):
            continue
        for v in places:
            pts = lift_to_y(P, t, v)
            assert len(pts) == 2  # square disc lifts everywhere
            inv = evaluate_invariant(P, pts[0], cross_check=True)
            other = _conic_invariant(P, list(t), v)
            assert other is None or other == inv
            checked += 1
            if checked >= 200:
                break


def test_real_search_targets(thm_pencil):
    y0 = find_real_point_with_invariant(thm_pencil, 0, seed=3)
    assert evaluate_invariant(thm_pencil, y0) == INV_ZERO
    yh = find_real_point_with_invariant(thm_pencil, HALF, seed=3)
    assert evaluate_invariant(thm_pencil, yh) == HALF
    with pytest.raises(ValueError):
        find_real_point_with_invariant(thm_pencil, Fraction(1, 3))


def test_real_search_line_machinery():
    # diagonal pencil: every member is diagonal, mixed signs are everywhere;
    # the distinguished members are rank-1 cones so the line search must be
    # exercised for a certified rank-4 root
    qs = ["x0^2 + x1^2 + x2^2 + x3^2 - x4^2", "x0*x1 + x2*x4",
          "x0*x2 - x3*x4 + x1^2", "x1*x3 + x0*x4 + x2^2",
          "x1*x4 + x0^2 - x3^2"]
    P = Pencil([QuadricForm.from_string(s) for s in qs])
    y = find_real_point_with_invariant(P, 0, seed=5)
    assert evaluate_invariant(P, y) == INV_ZERO
    if y.kind == "real-algebraic":
        assert y.signature == (2, 2)
        assert y.interval is not None and y.minor_signs is not None


def test_real_search_interval_certificates(cor_pencil):
    # force the line scanner (skip the rational shortcut) by searching a
    # pencil whose members do not immediately give target 0
    y = find_real_point_with_invariant(cor_pencil, 0, seed=11)
    assert evaluate_invariant(cor_pencil, y) == INV_ZERO
    yh = find_real_point_with_invariant(cor_pencil, HALF, seed=11)
    npos, nneg = yh.signature
    assert (npos, nneg) in (((4, 0)), ((0, 4)), ((3, 0)), ((0, 3)))


def test_padic_lift_precision(q3_pencil):
    # [Q0] of the q3 pencil: certifying minor 576 = 2^6 * 3^2 at p = 3
    pts = lift_to_y(q3_pencil, (1, 0, 0, 0, 0), 3, padic_precision=6)
    assert len(pts) == 2
    with pytest.raises(PrecisionError):
        lift_to_y(q3_pencil, (1, 0, 0, 0, 0), 3, padic_precision=4)


def test_padic_lift_nonsquare():
    qs = ["x0^2 + x1^2 + x2^2 - 3*x3^2", "x0*x1 + x3*x4", "x0*x2 + x4^2",
          "x1*x2 + x2*x3 + x0^2", "x2*x4 + x1^2"]
    P = Pencil([QuadricForm.from_string(s) for s in qs])
    # disc class -3: nonsquare at 5
    assert lift_to_y(P, (1, 0, 0, 0, 0), 5, padic_precision=7) == []


def test_wa_certificates(thm_pencil, q3_pencil, thm_regularity,
                         q3_regularity):
    cert = certify_wa_failure(thm_pencil, "real", regularity=thm_regularity)
    assert cert.place == REAL
    assert cert.validate(thm_pencil)
    assert cert.witnesses[0]["type"] == "global-rational-point"
    c3 = certify_wa_failure(q3_pencil, 3, regularity=q3_regularity)
    assert c3.place == 3
    assert c3.validate(q3_pencil)
    js = c3.as_json()
    assert js["invariant_half_point"]["t"] == [1, 0, 0, 0, 0]


def test_ramification_counts(thm_pencil):
    # rank-4 lifts come in pairs (or none); both rulings carried
    pts = lift_to_y(thm_pencil, (1, 0, 0, 0, 0), REAL)
    assert {p.ruling for p in pts} == {"first", "second"}
