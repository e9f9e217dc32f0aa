"""Four-dimensional linear systems of quadrics in P^4.

A pencil (in the paper's wide sense: a 4-dimensional linear system) is
spanned by five independent quadrics Q0..Q4.  Attached to it are the
universal Gram matrix B(t) = sum t_i B_i over Z[t0..t4], the discriminant
quintic det B(t) cutting out the locus H of singular members, the leading
principal minors M1..M4 whose quotients give the quaternion representative
of the 2-torsion Brauer class, and the companion X-variety point
construction from singular members.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .linalg import (det_bareiss, kernel_rational, mat_mul, mat_vec,
                     rank_rational, random_unimodular, transpose, is_prime)
from .polys import MultiPoly, poly_matrix_det
from .quadform import QuadricForm, parse_quadric_line, quadric_to_line

T_NAMES = tuple("t%d" % i for i in range(5))


class Pencil:
    """Five independent quadrics and their universal Gram matrix."""

    def __init__(self, quadrics):
        quadrics = list(quadrics)
        if len(quadrics) != 5:
            raise ValueError("a pencil needs exactly five quadrics")
        coeff_rows = [list(Q.coeffs) for Q in quadrics]
        if rank_rational(coeff_rows) != 5:
            raise ValueError("the five quadrics are linearly dependent")
        self.quadrics = quadrics
        self.grams = [Q.gram() for Q in quadrics]
        self._det = None
        self._minor_cache = {}

    # -- universal Gram -------------------------------------------------

    def gram_poly(self, i, j):
        """Entry (i,j) of B(t): a linear form in t0..t4 over Z."""
        terms = {}
        for k, B in enumerate(self.grams):
            c = B[i][j]
            if c:
                e = [0] * 5
                e[k] = 1
                terms[tuple(e)] = c
        return MultiPoly(5, terms)

    def gram_matrix_poly(self):
        return [[self.gram_poly(i, j) for j in range(5)] for i in range(5)]

    def det_poly(self):
        """det B(t): the quintic cutting out H (cached)."""
        if self._det is None:
            self._det = poly_matrix_det(self.gram_matrix_poly())
        return self._det

    def leading_minor_poly(self, k, basis_change=None):
        """Leading principal k x k minor of B(t) (after optional x-basis
        change T, which replaces every B_i by T^t B_i T)."""
        key = (k, None if basis_change is None
               else tuple(tuple(r) for r in basis_change))
        if key in self._minor_cache:
            return self._minor_cache[key]
        mat = self.gram_matrix_poly()
        if basis_change is not None:
            mat = _congruence_poly(mat, basis_change)
        sub = [row[:k] for row in mat[:k]]
        m = poly_matrix_det(sub)
        self._minor_cache[key] = m
        return m

    # -- members ---------------------------------------------------------

    def member(self, t):
        """The quadric at parameter t (rational tuple, cleared to ints)."""
        t = _clear_denominators(t)
        coeffs = [sum(ti * Q.coeffs[k] for ti, Q in zip(t, self.quadrics))
                  for k in range(15)]
        return QuadricForm(coeffs)

    def gram_at(self, t):
        t = list(t)
        return [[sum(ti * B[i][j] for ti, B in zip(t, self.grams))
                 for j in range(5)] for i in range(5)]

    def det_at(self, t):
        return det_bareiss([[int(x) for x in row]
                            for row in self.gram_at(_clear_denominators(t))])

    # -- serialization ----------------------------------------------------

    def to_lines(self):
        return [quadric_to_line(Q) for Q in self.quadrics]

    def as_json(self):
        return {"quadrics": [Q.to_string() for Q in self.quadrics],
                "coefficients": [list(Q.coeffs) for Q in self.quadrics]}

    def __repr__(self):
        return "Pencil([%s])" % ", ".join(Q.to_string()
                                          for Q in self.quadrics)


def universal_gram(quadrics):
    """Assemble a Pencil; raises on linear dependence."""
    return Pencil(quadrics)


def _clear_denominators(t):
    fr = [Fraction(x) for x in t]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    out = [int(x * den) for x in fr]
    g = 0
    for x in out:
        g = gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return out


def _congruence_poly(mat, T):
    """T^t * mat * T for a matrix of polynomials and an integer matrix."""
    n = len(mat)
    zero = MultiPoly.zero(5)
    TM = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if T[k][i]:
                    acc = acc + mat[k][j].scale(T[k][i])
            TM[i][j] = acc
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if T[k][j]:
                    acc = acc + TM[i][k].scale(T[k][j])
            out[i][j] = acc
    return out


# ---------------------------------------------------------------------------
# the quaternion representative


@dataclass
class AlphaSymbol:
    """Leading principal minors M1..M4 of B(t) and the formal symbol

        ( M2 / M1^2 , M3 / (M2 * M1) )

    as quotient pairs of polynomials.  ``basis_change`` records the
    unimodular x-substitution applied when the raw minors vanished on H.
    """
    minors: list                       # [M1, M2, M3, M4] MultiPoly
    basis_change: list | None          # 5x5 integer matrix or None
    witness_point: tuple | None        # H-point mod p with all minors != 0
    witness_prime: int | None

    @property
    def first(self):
        return (self.minors[1], self.minors[0] * self.minors[0])

    @property
    def second(self):
        return (self.minors[2], self.minors[1] * self.minors[0])

    def evaluate(self, t):
        """Concrete quaternion pair (two Fractions) at a rational H-point
        with all minors nonzero there."""
        vals = [Fraction(m.evaluate([Fraction(x) for x in t]))
                for m in self.minors]
        if any(v == 0 for v in vals[:3]):
            raise ValueError("a minor vanishes at the evaluation point")
        m1, m2, m3, _ = vals
        return (m2 / m1 ** 2, m3 / (m2 * m1))

    def as_json(self):
        return {
            "minors": [m.to_string(T_NAMES) for m in self.minors],
            "symbol": {
                "a_num": self.first[0].to_string(T_NAMES),
                "a_den": self.first[1].to_string(T_NAMES),
                "b_num": self.second[0].to_string(T_NAMES),
                "b_den": self.second[1].to_string(T_NAMES),
            },
            "basis_change": self.basis_change,
            "witness_prime": self.witness_prime,
            "witness_point": list(self.witness_point)
            if self.witness_point else None,
        }


def alpha_symbol(P, seed=0, max_tries=100):
    """Quaternion representative of the Brauer class of Y_P.

    Requires the four leading principal minors of B(t) to be nonzero on H.
    Since deg M_k < deg det B(t), nonvanishing on H is equivalent to
    nonvanishing as a polynomial whenever H is reduced; a sampled H-point
    over a finite field where all four minors are nonzero is recorded as a
    positive certificate.  If the hypothesis fails for the given basis, a
    seeded random unimodular change of the x-basis is applied and recorded.
    """
    rng = random.Random(seed)
    basis_change = None
    for attempt in range(max_tries):
        minors = [P.leading_minor_poly(k, basis_change) for k in (1, 2, 3, 4)]
        if all(not m.is_zero() for m in minors):
            witness = _sample_h_point_with_minors(P, minors)
            if witness is not None:
                point, prime = witness
                return AlphaSymbol(minors=minors, basis_change=basis_change,
                                   witness_point=point, witness_prime=prime)
        basis_change = random_unimodular(5, rng, size=1)
    raise RuntimeError("no x-basis change made all minors nonzero on H "
                       "(%d attempts)" % max_tries)


def _sample_h_point_with_minors(P, minors, primes=(10007, 10009, 10037)):
    """Find t over F_p with det B(t) = 0 and all minors nonzero.

    Scans lines through F_p^5: restricted to a line, det B is a univariate
    quintic whose roots are found by brute scan of the parameter.
    """
    det = P.det_poly()
    for p in primes:
        rng = random.Random(p)
        detp = det.reduce_mod(p)
        minorsp = [m.reduce_mod(p) for m in minors]
        for _ in range(60):
            a = [rng.randrange(p) for _ in range(5)]
            b = [rng.randrange(p) for _ in range(5)]
            # restrict to the line a + s*b; scan s
            for s in range(p):
                t = [(ai + s * bi) % p for ai, bi in zip(a, b)]
                if all(x == 0 for x in t):
                    continue
                if detp.evaluate(t) % p == 0:
                    if all(mp.evaluate(t) % p != 0 for mp in minorsp):
                        return tuple(t), p
                    break  # try another line: keeps the scan cheap
    return None


# ---------------------------------------------------------------------------
# X-variety points from singular members (Lemma 4.4 construction)


def x_point_from_singular_member(P, t_star, v=None):
    """A Q-point of X_P from a singular member of the pencil.

    ``t_star`` picks the member Q_{t*} (rank <= 4 required); ``v`` must be a
    rational kernel vector of its Gram matrix (found automatically when
    omitted).  Returns the unordered pair (v, w) with w^t B_i v = 0 for all
    generators, certified exactly.  A forced w parallel to v is flagged, as
    it contradicts diagonal avoidance for regular pencils.
    """
    t_star = _clear_denominators(t_star)
    B = P.gram_at(t_star)
    if v is None:
        ker = kernel_rational(B)
        if not ker:
            raise ValueError("member has full rank; no kernel vector")
        v = ker[0]
    else:
        v = _clear_denominators(v)
        if any(x != 0 for x in mat_vec(B, v)):
            raise ValueError("v is not in the kernel of the member's Gram")
    rows = [mat_vec(Bi, v) for Bi in P.grams]
    ker_w = kernel_rational(rows)
    if not ker_w:
        raise AssertionError("B_i v span a space of dimension 5; "
                             "contradicts the kernel relation")
    w = None
    for cand in ker_w:
        if not _parallel(cand, v):
            w = cand
            break
    degenerate = w is None
    if degenerate:
        w = ker_w[0]
    for Bi in P.grams:
        if sum(wi * x for wi, x in zip(w, mat_vec(Bi, v))) != 0:
            raise AssertionError("bilinear vanishing failed")
    return {"v": v, "w": w, "degenerate": degenerate, "t": t_star}


def _parallel(a, b):
    return all(a[i] * b[j] == a[j] * b[i]
               for i in range(5) for j in range(i + 1, 5))


# ---------------------------------------------------------------------------
# ideals attached to the pencil


def rank_le2_minor_ideal(P):
    """The 3x3 minors of B(t) restricted to the pencil, over Z.

    Their common zero locus inside the parameter space is the set of
    members whose Gram matrix has rank at most 2.  Minors are symmetric in
    (rows, cols), so only the 55 distinct ones are listed.
    """
    from itertools import combinations

    from .nullstellensatz import HomIdealPresentation

    mat = P.gram_matrix_poly()
    gens = []
    seen = set()
    for I in combinations(range(5), 3):
        for J in combinations(range(5), 3):
            if (J, I) in seen:
                continue
            seen.add((I, J))
            sub = [[mat[i][j] for j in J] for i in I]
            m = poly_matrix_det(sub)
            if not m.is_zero():
                gens.append(m)
    return HomIdealPresentation(nvars=5, generators=gens)


def diagonal_avoidance_ideal(P, p):
    """The five quadrics as an ideal over F_p in the x-variables; emptiness
    means the pencil is base-point free on the diagonal."""
    from .nullstellensatz import HomIdealPresentation

    gens = [Q.to_poly(mod=p) for Q in P.quadrics]
    return HomIdealPresentation(nvars=5, generators=gens)


def singular_locus_ideal(P, p):
    """Bihomogeneous ideal of the singular locus of the (1,1)-divisor
    intersection in P^4 x P^4 over F_p: the five bilinear forms plus all
    5x5 minors of their 5x10 Jacobian."""
    from itertools import combinations

    from .nullstellensatz import HomIdealPresentation

    zero = MultiPoly.zero(10, p)
    forms = []
    for B in P.grams:
        terms = {}
        for i in range(5):
            for j in range(5):
                c = B[i][j]
                if c % p:
                    e = [0] * 10
                    e[i] += 1
                    e[5 + j] += 1
                    key = tuple(e)
                    terms[key] = (terms.get(key, 0) + c) % p
        forms.append(MultiPoly(10, terms, p))
    gens = [f for f in forms]
    bidegrees = [(1, 1)] * len(gens)
    # Jacobian columns: d/dx_j -> (B_i y)_j of bidegree (0,1);
    #                   d/dy_j -> (B_i x)_j of bidegree (1,0)
    jac = []
    for B in P.grams:
        row = []
        for j in range(5):
            terms = {}
            for k in range(5):
                c = B[j][k] % p
                if c:
                    e = [0] * 10
                    e[5 + k] = 1
                    terms[tuple(e)] = c
            row.append(MultiPoly(10, terms, p))
        for j in range(5):
            terms = {}
            for k in range(5):
                c = B[k][j] % p
                if c:
                    e = [0] * 10
                    e[k] = 1
                    terms[tuple(e)] = c
            row.append(MultiPoly(10, terms, p))
        jac.append(row)
    for cols in combinations(range(10), 5):
        sub = [[jac[i][c] for c in cols] for i in range(5)]
        m = poly_matrix_det(sub)
        if m.is_zero():
            continue
        k = sum(1 for c in cols if c < 5)  # x-partials contribute (0,1)
        gens.append(m)
        bidegrees.append((5 - k, k))
    return HomIdealPresentation(nvars=10, generators=gens,
                                bidegrees=bidegrees, nx=5, ny=5)


@dataclass
class RegularityCertificate:
    prime: int
    diagonal_avoidance: object        # EmptinessCertificate
    smoothness: object                # EmptinessCertificate (bihomogeneous)

    @property
    def certified(self):
        return bool(self.diagonal_avoidance) and bool(self.smoothness)

    def as_json(self):
        return {
            "prime": self.prime,
            "certified": self.certified,
            "diagonal_avoidance": self.diagonal_avoidance.as_json(),
            "smoothness": self.smoothness.as_json(),
        }


def regularity_certificate(P, p, d_max_diag=8, d_max_bi=(4, 4)):
    """Certify regularity of the pencil by special-fiber smoothness at p.

    Both checks run over F_pbar: (a) the five quadrics have no common
    projective zero (so the (1,1)-divisors avoid the diagonal), and (b)
    the bihomogeneous singular locus of their intersection is empty.  The
    subschemes involved are proper over Z, so an empty fiber at any single
    prime forces the Q-fiber to be empty too: the pencil is regular.
    Either check exhausting its degree cap yields "inconclusive", never a
    false positive.
    """
    from .nullstellensatz import Inconclusive, empty_bihomogeneous, \
        empty_over_fpbar

    if not is_prime(p):
        raise ValueError("witness prime required")
    diag = empty_over_fpbar(diagonal_avoidance_ideal(P, p), d_max_diag, p)
    if isinstance(diag, Inconclusive):
        return RegularityCertificate(prime=p, diagonal_avoidance=diag,
                                     smoothness=Inconclusive(
                                         "skipped: diagonal check failed",
                                         d_max_bi))
    smooth = empty_bihomogeneous(singular_locus_ideal(P, p), d_max_bi, p)
    return RegularityCertificate(prime=p, diagonal_avoidance=diag,
                                 smoothness=smooth)


# ---------------------------------------------------------------------------
# pencil files


def parse_pencil_text(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) != 5:
        raise ValueError("a pencil file needs exactly 5 quadric lines "
                         "(got %d)" % len(lines))
    return Pencil([parse_quadric_line(ln) for ln in lines])


def parse_pencil_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pencil_text(fh.read())
