import random
from fractions import Fraction

import pytest

from symmetroid.linalg import det_bareiss, mat_vec
from symmetroid.pencil import (Pencil, alpha_symbol, parse_pencil_text,
                               rank_le2_minor_ideal, universal_gram,
                               x_point_from_singular_member)
from symmetroid.polys import parse_poly
from symmetroid.quadform import QuadricForm, diagonalize_symmetric

T_NAMES = ["t%d" % i for i in range(5)]

DIAG = [QuadricForm.from_string("x%d^2" % i) for i in range(5)]


def test_universal_gram_examples(thm_pencil):
    m1 = thm_pencil.leading_minor_poly(1)
    assert m1 == parse_poly("2*t1 + 2*t2 + 8*t3 + 2*t4", T_NAMES)
    Pd = universal_gram(DIAG)
    det = Pd.det_poly()
    assert det == parse_poly("32*t0*t1*t2*t3*t4", T_NAMES)
    with pytest.raises(ValueError):
        universal_gram(DIAG[:4] + [DIAG[0]])
    # Q4 = Q0 + Q1 dependence
    dep = DIAG[:4] + [QuadricForm.from_string("x0^2 + x1^2")]
    with pytest.raises(ValueError):
        universal_gram(dep)


def test_det_homogeneous_and_matches_matrix_det(thm_pencil):
    det = thm_pencil.det_poly()
    assert det.is_homogeneous() and det.total_degree() == 5
    rng = random.Random(2)
    for _ in range(100):
        t = [rng.randint(-6, 6) for _ in range(5)]
        if all(x == 0 for x in t):
            continue
        assert det.evaluate(t) == det_bareiss(thm_pencil.gram_at(t))


def test_alpha_symbol_diagonal_pencil():
    Pd = universal_gram(DIAG)
    sym = alpha_symbol(Pd)
    a_num, a_den = sym.first
    b_num, b_den = sym.second
    t = [1, 2, 3, 4, 5]
    # (M2/M1^2, M3/(M2 M1)) = (t1/t0, t2/t0) exactly on the diagonal pencil
    assert Fraction(a_num.evaluate(t), a_den.evaluate(t)) == Fraction(2, 1)
    assert Fraction(b_num.evaluate(t), b_den.evaluate(t)) == Fraction(3, 1)


def test_alpha_symbol_needs_basis_change():
    # no generator involves x0^2, so M1 = B00 = 0 identically
    qs = ["x0*x1 + x2*x3", "x0*x2 + x3*x4", "x0*x3 + x1*x4",
          "x0*x4 + x1*x2", "x1*x3 + x2*x4"]
    P = Pencil([QuadricForm.from_string(s) for s in qs])
    assert P.leading_minor_poly(1).is_zero()
    sym = alpha_symbol(P, seed=0)
    assert sym.basis_change is not None
    assert all(not m.is_zero() for m in sym.minors)
    assert sym.witness_point is not None


def test_gram_schmidt_minor_identity(thm_pencil):
    # at rational points with all minors nonzero, LDL diagonalisation gives
    # the diagonal (M1, M2/M1, M3/M2, M4/M3)
    rng = random.Random(14)
    minors = [thm_pencil.leading_minor_poly(k) for k in (1, 2, 3, 4)]
    done = 0
    while done < 50:
        t = [rng.randint(-9, 9) for _ in range(5)]
        vals = [Fraction(m.evaluate(t)) for m in minors]
        if any(v == 0 for v in vals):
            continue
        B = thm_pencil.gram_at(t)
        diag, _ = diagonalize_symmetric(B)
        expect = [vals[0], vals[1] / vals[0], vals[2] / vals[1],
                  vals[3] / vals[2]]
        assert diag[:4] == expect
        done += 1


def test_cramer_kernel_vector_on_H(thm_pencil):
    # (B_{4,0}, -B_{4,1}, B_{4,2}, -B_{4,3}, B_{4,4}) is killed by B(t*)
    # at H-points over F_p
    from symmetroid.brauer_eval import _restrict_to_line
    from symmetroid.polys import poly_matrix_det
    p = 211
    det = thm_pencil.det_poly()
    rng = random.Random(20)
    mat = thm_pencil.gram_matrix_poly()
    # 4x4 minors deleting row 4 and column j
    minors = []
    for j in range(5):
        sub = [[mat[r][c] for c in range(5) if c != j] for r in range(4)]
        minors.append(poly_matrix_det(sub).reduce_mod(p))
    found = 0
    while found < 50:
        a = [rng.randrange(p) for _ in range(5)]
        b = [rng.randrange(p) for _ in range(5)]
        coeffs = [c % p for c in _restrict_to_line(det, a, b)]
        for s in range(p):
            val = 0
            for c in reversed(coeffs):
                val = (val * s + c) % p
            if val:
                continue
            t = [(ai + s * bi) % p for ai, bi in zip(a, b)]
            if all(x == 0 for x in t):
                continue
            v = [minors[j].evaluate(t) * (-1) ** j % p for j in range(5)]
            if all(x == 0 for x in v):
                break
            B = [[x % p for x in row] for row in thm_pencil.gram_at(t)]
            Bv = [sum(B[i][j] * v[j] for j in range(5)) % p
                  for i in range(5)]
            assert Bv == [0] * 5, t
            found += 1
            break


def test_x_point_construction(thm_pencil):
    xp = x_point_from_singular_member(thm_pencil, (1, 0, 0, 0, 0),
                                      v=(0, 0, 0, 0, 1))
    assert not xp["degenerate"]
    v, w = xp["v"], xp["w"]
    for B in thm_pencil.grams:
        assert sum(wi * x for wi, x in zip(w, mat_vec(B, v))) == 0
    # v not in the kernel is rejected
    with pytest.raises(ValueError):
        x_point_from_singular_member(thm_pencil, (1, 0, 0, 0, 0),
                                     v=(1, 0, 0, 0, 0))
    # automatic kernel vector discovery agrees
    xp2 = x_point_from_singular_member(thm_pencil, (1, 0, 0, 0, 0))
    assert xp2["v"] == [0, 0, 0, 0, 1]


def test_pencil_file_parsing(thm_pencil):
    text = "\n".join(thm_pencil.to_lines())
    P2 = parse_pencil_text(text)
    assert [q.coeffs for q in P2.quadrics] == \
        [q.coeffs for q in thm_pencil.quadrics]
    with pytest.raises(ValueError):
        parse_pencil_text("x0^2\nx1^2\nx2^2\nx3^2")  # four lines
    with pytest.raises(ValueError):
        parse_pencil_text("\n".join(["x0^2"] * 5))  # dependent


def test_minor_ideal_shape(thm_pencil):
    ideal = rank_le2_minor_ideal(thm_pencil)
    assert len(ideal.generators) == 55
    assert all(g.total_degree() == 3 for g in ideal.generators)
    assert all(g.is_homogeneous() for g in ideal.generators)
