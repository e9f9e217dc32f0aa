"""Local points of the double symmetroid Y and evaluation of its Brauer
class.

A point of Y over a local field is a singular member of the pencil (a
point of the discriminant quintic H) together with a choice of ruling of
2-planes.  Rank-3 members carry a unique ruling; rank-4 members lift
exactly when the base quadric surface has square discriminant, and then
they lift twice.

The local invariant of the Brauer class at such a point is 0 when the
member quadric has a smooth point over the local field and 1/2 otherwise;
that smooth-point criterion is the authoritative evaluation path, with
the quaternion-conic route kept as a cross-check (any disagreement is a
hard error, never silently resolved).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .intervals import RatInterval
from .linalg import det_bareiss, random_unimodular
from .localfields import (INV_HALF, INV_ZERO, REAL, hilbert_symbol,
                          is_square_at, normalize_place, square_class)
from .pencil import _clear_denominators, _congruence_poly
from .polys import MultiPoly
from .quadform import (classify, has_smooth_point_qp, has_smooth_point_real,
                       ruling_disc)
from .roots import isolate_real_roots, refine_root


@dataclass
class LocalYPoint:
    place: object                      # REAL or a prime
    kind: str                          # "rational" | "padic" | "real-algebraic"
    t: tuple | None = None             # projective integer coords (rational)
    padic: tuple | None = None         # (coords mod p^N, N)
    line: tuple | None = None          # (anchor u, direction w) for real roots
    interval: RatInterval | None = None
    rank: int | None = None
    ruling: str = "unique"             # "first" | "second" | "unique"
    disc_class: object = None          # SquareClass of the base disc at place
    signature: tuple | None = None     # (n+, n-) of the nondegenerate part
    minor_signs: tuple | None = None   # certified signs of M1..M4 (real pts)
    basis_change: list | None = None

    def as_json(self):
        out = {"place": "inf" if self.place == REAL else self.place,
               "kind": self.kind, "rank": self.rank, "ruling": self.ruling}
        if self.t is not None:
            out["t"] = [int(x) for x in self.t]
        if self.padic is not None:
            coords, N = self.padic
            out["padic"] = {"coords": [int(c) for c in coords],
                            "precision": N}
        if self.line is not None:
            out["line"] = {"anchor": list(self.line[0]),
                           "direction": list(self.line[1])}
        if self.interval is not None:
            out["interval"] = [str(self.interval.lo), str(self.interval.hi)]
        if self.disc_class is not None:
            out["disc_class"] = self.disc_class.as_json()
        if self.signature is not None:
            out["signature"] = list(self.signature)
        if self.minor_signs is not None:
            out["minor_signs"] = list(self.minor_signs)
        if self.basis_change is not None:
            out["basis_change"] = self.basis_change
        return out


class PrecisionError(ValueError):
    """p-adic input does not carry enough digits to certify the result."""


def lift_to_y(P, t_star, v, padic_precision=None):
    """Lift a point of H to points of Y over Q_v.

    Returns 0, 1 or 2 LocalYPoints.  Rank-3 members lift once (ramification
    locus); rank-4 members lift twice exactly when the ruling discriminant
    is a square in Q_v.  Exact rational points are decided exactly; p-adic
    approximations must satisfy the precision bound pinning the square
    class, otherwise PrecisionError is raised.
    """
    v = normalize_place(v)
    if padic_precision is not None:
        return _lift_padic(P, t_star, v, padic_precision)
    t = _clear_denominators(t_star)
    if P.det_at(t) != 0:
        raise ValueError("t* is not on the discriminant quintic H")
    Q = P.member(t)
    cls = classify(Q, "Q")
    if cls.rank <= 2:
        raise ValueError("member has rank <= 2: pencil is not regular")
    if cls.rank == 5:
        raise ValueError("member is nonsingular (excluded by det = 0)")
    if cls.rank == 3:
        return [LocalYPoint(place=v, kind="rational", t=tuple(t), rank=3,
                            ruling="unique")]
    disc = ruling_disc(Q)
    sq = square_class(disc, v)
    if not sq.is_square():
        return []
    return [LocalYPoint(place=v, kind="rational", t=tuple(t), rank=4,
                        ruling=r, disc_class=sq)
            for r in ("first", "second")]


def _lift_padic(P, t_star, p, N):
    """Lift for approximate p-adic parameter coordinates mod p^N."""
    if p == REAL:
        raise ValueError("p-adic lift needs a finite place")
    pN = p ** N
    t = [int(x) % pN for x in t_star]
    if all(x % p == 0 for x in t):
        raise ValueError("coordinates must include a unit")
    B = P.gram_at(t)
    if det_bareiss(B) % pN != 0:
        raise ValueError("t* is not on H to the working precision")
    guard = 3 if p == 2 else 1
    best = None
    for i in range(5):
        sub = [[B[r][c] for c in range(5) if c != i]
               for r in range(5) if r != i]
        m = det_bareiss(sub) % pN
        if m == 0:
            continue
        val = 0
        mm = m
        while mm % p == 0:
            mm //= p
            val += 1
        if best is None or val < best[0]:
            best = (val, mm, i)
    if best is None:
        raise PrecisionError("all principal 4x4 minors vanish mod p^N; "
                             "cannot certify rank 4 (raise the precision)")
    val, unit, idx = best
    if N <= 2 * val + guard:
        raise PrecisionError(
            "precision %d insufficient: needs N > 2*%d + %d to pin the "
            "disc square class" % (N, val, guard))
    if val % 2 == 1:
        sq_is_square = False
    elif p == 2:
        sq_is_square = unit % 8 == 1
    else:
        sq_is_square = pow(unit % p, (p - 1) // 2, p) == 1
    point = LocalYPoint(place=p, kind="padic", padic=(tuple(t), N), rank=4,
                        disc_class=None)
    if not sq_is_square:
        return []
    return [LocalYPoint(place=p, kind="padic", padic=(tuple(t), N), rank=4,
                        ruling=r) for r in ("first", "second")]


def evaluate_invariant(P, y, cross_check=True, alpha=None):
    """inv_v of the Brauer class at a local point of Y: 0 or 1/2.

    Authoritative path: 1/2 exactly when the member quadric has no smooth
    point over Q_v (the ruling tag never matters).  When the alpha-symbol
    minors are all nonzero at the point, the quaternion conic gives an
    independent evaluation; disagreement raises AssertionError.
    """
    v = normalize_place(y.place)
    if y.kind == "real-algebraic":
        npos, nneg = y.signature
        primary = INV_ZERO if (npos >= 1 and nneg >= 1) else INV_HALF
        return primary
    if y.kind == "padic":
        coords, N = y.padic
        Q = P.member([int(c) for c in coords])
        primary = INV_ZERO if has_smooth_point_qp(Q, v) else INV_HALF
        return primary
    t = list(y.t)
    Q = P.member(t)
    if v == REAL:
        primary = INV_ZERO if has_smooth_point_real(Q) else INV_HALF
    else:
        primary = INV_ZERO if has_smooth_point_qp(Q, v) else INV_HALF
    if cross_check:
        other = _conic_invariant(P, t, v, alpha=alpha)
        if other is not None and other != primary:
            raise AssertionError(
                "smooth-point and conic evaluations disagree at t=%s, v=%s"
                % (t, v))
    return primary


def _conic_invariant(P, t, v, alpha=None):
    """Invariant via the conic <M1, M2/M1, M3/M2> evaluated at t.

    Returns None when a minor vanishes at t (cross-check unavailable).
    """
    if alpha is not None and alpha.basis_change is not None:
        minors = [P.leading_minor_poly(k, alpha.basis_change)
                  for k in (1, 2, 3)]
    else:
        minors = [P.leading_minor_poly(k) for k in (1, 2, 3)]
    vals = [Fraction(m.evaluate([Fraction(x) for x in t])) for m in minors]
    if any(val == 0 for val in vals):
        return None
    d1 = vals[0]
    d2 = vals[1] / vals[0]
    d3 = vals[2] / vals[1]
    if v == REAL:
        isotropic = not (d1 > 0 and d2 > 0 and d3 > 0
                         or d1 < 0 and d2 < 0 and d3 < 0)
    else:
        isotropic = hilbert_symbol(-d1 * d3, -d2 * d3, v) == 1
    return INV_ZERO if isotropic else INV_HALF


# ---------------------------------------------------------------------------
# the real-point search


def find_real_point_with_invariant(P, target, seed=0, line_budget=200,
                                   refine_cap=80):
    """A point of Y(R) with the requested invariant (0 or 1/2).

    Distinguished members of the pencil are tried first (exact rational
    points).  Then seeded rational lines in the parameter space are
    scanned: the restricted discriminant quintic has odd degree, so real
    roots abound; each isolated root is certified by interval arithmetic
    on the leading principal minors (nonvanishing pins both the rank and,
    via Jacobi's sign rule, the signature).  Exhausting the budget raises
    LookupError: a search failure is never a nonexistence claim.
    """
    target = Fraction(target)
    if target not in (INV_ZERO, INV_HALF):
        raise ValueError("target invariant must be 0 or 1/2")
    # distinguished members first
    for i in range(5):
        t = [0] * 5
        t[i] = 1
        if P.det_at(t) != 0:
            continue
        Q = P.member(t)
        cls = classify(Q, "R")
        npos, nneg, _ = cls.signature
        rank = npos + nneg
        if rank == 4:
            disc = ruling_disc(Q)
            if disc < 0:
                continue  # no real lift above this member
            inv = INV_HALF if (npos == 4 or nneg == 4) else INV_ZERO
            if inv == target:
                pts = lift_to_y(P, t, REAL)
                pt = pts[0]
                pt.signature = (npos, nneg)
                return pt
        elif rank == 3:
            inv = INV_HALF if (npos == 3 or nneg == 3) else INV_ZERO
            if inv == target:
                pts = lift_to_y(P, t, REAL)
                pt = pts[0]
                pt.signature = (npos, nneg)
                return pt
    rng = random.Random(seed)
    det = P.det_poly()
    for line_index in range(line_budget):
        u = [rng.randint(-3, 3) for _ in range(5)]
        w = [rng.randint(-3, 3) for _ in range(5)]
        if all(x == 0 for x in w) or all(x == 0 for x in u):
            continue
        pt = _scan_line(P, det, u, w, target, rng, refine_cap)
        if pt is not None:
            return pt
    raise LookupError("real-point search budget exhausted "
                      "(%d lines); not a nonexistence claim" % line_budget)


def _restrict_to_line(poly, u, w):
    """Coefficients of poly(u + s*w) as a univariate list in s."""
    s_poly = [MultiPoly(1, {(0,): ui}) + MultiPoly(1, {(1,): wi})
              for ui, wi in zip(u, w)]
    uni = poly.substitute_linear(s_poly)
    deg = uni.total_degree()
    coeffs = [0] * (deg + 1)
    for e, c in uni.terms.items():
        coeffs[e[0]] = c
    return coeffs

def _scan_line(P, det, u, w, target, rng, refine_cap):
    coeffs = _restrict_to_line(det, u, w)
    if not any(coeffs):
        return None
    try:
        roots = isolate_real_roots(coeffs)
    except ValueError:
        return None
    for iv in roots:
        got = _certify_root(P, coeffs, u, w, iv, rng, refine_cap)
        if got is None:
            continue
        signature, interval, minor_signs, basis_change = got
        npos, nneg = signature
        inv = INV_HALF if (npos == 4 or nneg == 4) else INV_ZERO
        if inv != target:
            continue
        if npos == nneg == 2 or npos == 4 or nneg == 4:
            # base disc is automatically positive: the point lifts to Y(R)
            return LocalYPoint(place=REAL, kind="real-algebraic",
                               line=(tuple(u), tuple(w)), interval=interval,
                               rank=4, ruling="first", signature=signature,
                               minor_signs=minor_signs,
                               basis_change=basis_change)
    return None


def _certify_root(P, det_coeffs, u, w, interval, rng, refine_cap):
    """Certify rank 4 and the signature at the root of det on the line.

    Returns (signature, refined_interval, minor_signs, basis_change) or
    None when certification fails within the refinement budget (e.g. the
    root is a rank-3 point, where every 4x4 minor vanishes).
    """
    for attempt in range(6):
        basis_change = None if attempt == 0 else \
            random_unimodular(5, rng, size=1)
        minor_coeffs = []
        for k in (1, 2, 3, 4):
            mk = P.leading_minor_poly(k, basis_change)
            minor_coeffs.append(_restrict_to_line(mk, u, w))
        iv = interval
        ok = True
        signs = []
        for cycle in range(refine_cap):
            signs = []
            box = RatInterval(iv.lo, iv.hi)
            for mc in minor_coeffs:
                val = _eval_interval(mc, box)
                signs.append(val.sign())
            if all(s is not None for s in signs):
                break
            iv = refine_root(det_coeffs, iv, rounds=1)
            if iv.lo == iv.hi:
                # rational root: evaluate minors exactly
                signs = []
                for mc in minor_coeffs:
                    val = _eval_exact(mc, iv.lo)
                    signs.append(None if val == 0 else (1 if val > 0 else -1))
                break
        if not all(s is not None for s in signs):
            continue  # try a basis change
        # Jacobi: number of negative eigenvalues of the rank-4 part equals
        # sign changes in 1, M1, M2, M3, M4
        seq = [1] + signs
        nneg = sum(1 for a, b in zip(seq, seq[1:]) if a != b)
        npos = 4 - nneg
        return (npos, nneg), iv, tuple(signs), basis_change
    return None


def _eval_interval(coeffs, box):
    total = RatInterval(0)
    for c in reversed(coeffs):
        total = total * box + RatInterval(c)
    return total


def _eval_exact(coeffs, x):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


# ---------------------------------------------------------------------------
# weak-approximation failure certificates


@dataclass
class WACertificate:
    place: object
    point_zero: LocalYPoint
    point_half: LocalYPoint
    witnesses: list                    # local-solubility witnesses
    regularity: object                 # RegularityCertificate
    pencil_lines: list
    notes: dict = field(default_factory=dict)

    def as_json(self):
        return {
            "schema": "wa-certificate/1",
            "place": "inf" if self.place == REAL else self.place,
            "invariant_zero_point": self.point_zero.as_json(),
            "invariant_half_point": self.point_half.as_json(),
            "witnesses": self.witnesses,
            "regularity": self.regularity.as_json()
            if self.regularity is not None else None,
            "pencil": self.pencil_lines,
            "notes": self.notes,
        }

    def validate(self, P):
        """Re-evaluate both stored points; True when invariants differ as
        recorded (the self-validating property of the obstruction)."""
        inv0 = evaluate_invariant(P, self.point_zero)
        inv1 = evaluate_invariant(P, self.point_half)
        return inv0 == INV_ZERO and inv1 == INV_HALF


def _rational_y_point(P):
    """A rational point of Y among the distinguished members, if any:
    a rank-3 singular member, or a rank-4 one with square discriminant."""
    for i in range(5):
        t = [0] * 5
        t[i] = 1
        if P.det_at(t) != 0:
            continue
        Q = P.member(t)
        cls = classify(Q, "Q")
        if cls.rank == 3:
            return t, 3, None
        if cls.rank == 4:
            disc = ruling_disc(Q)
            f = Fraction(disc)
            n = f.numerator * f.denominator
            if n > 0 and isqrt(n) ** 2 == n:
                return t, 4, disc
    return None


def certify_wa_failure(P, strategy, regularity=None, seed=0,
                       regularity_primes=(7, 3, 11, 5, 13)):
    """Certify that the Brauer class obstructs weak approximation on Y_P.

    ``strategy`` is "real" or a finite prime p.  The certificate packages
    a regularity certificate, two local points at the chosen place whose
    invariants are 0 and 1/2, and local-solubility witnesses (a rational
    point of Y covers every place at once; otherwise per-place witnesses
    at the critical set would be required, and failing that the
    certificate is refused).
    """
    from .pencil import regularity_certificate

    if regularity is None:
        for p in regularity_primes:
            cert = regularity_certificate(P, p)
            if cert.certified:
                regularity = cert
                break
        else:
            raise RuntimeError("could not certify regularity at primes %s"
                               % (regularity_primes,))
    if not regularity.certified:
        raise ValueError("regularity certificate is not valid")

    if strategy == "real":
        place = REAL
        point_half = find_real_point_with_invariant(P, INV_HALF, seed=seed)
        point_zero = find_real_point_with_invariant(P, INV_ZERO, seed=seed)
    else:
        place = normalize_place(strategy)
        point_zero = point_half = None
        for i in range(5):
            t = [0] * 5
            t[i] = 1
            if P.det_at(t) != 0:
                continue
            lifts = lift_to_y(P, t, place)
            if not lifts:
                continue
            inv = evaluate_invariant(P, lifts[0])
            if inv == INV_ZERO and point_zero is None:
                point_zero = lifts[0]
            elif inv == INV_HALF and point_half is None:
                point_half = lifts[0]
            if point_zero is not None and point_half is not None:
                break
        if point_zero is None or point_half is None:
            raise RuntimeError(
                "could not realize both invariants at p=%s among the "
                "distinguished members" % place)

    witnesses = []
    notes = {}
    rat = _rational_y_point(P)
    if rat is not None:
        t, rank, disc = rat
        witnesses.append({
            "type": "global-rational-point",
            "t": [int(x) for x in t],
            "rank": rank,
            "disc": None if disc is None else int(disc),
            "covers": "all places",
        })
        notes["local_solubility"] = (
            "Y has a rational point over the recorded singular member, so "
            "it is everywhere locally soluble")
    else:
        raise RuntimeError(
            "no rational Y-point among distinguished members; per-place "
            "witness assembly for general pencils is not attempted")

    cert = WACertificate(place=place, point_zero=point_zero,
                         point_half=point_half, witnesses=witnesses,
                         regularity=regularity,
                         pencil_lines=P.to_lines(), notes=notes)
    if not cert.validate(P):
        raise AssertionError("certificate failed self-validation")
    return cert
