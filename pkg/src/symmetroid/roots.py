"""Univariate real-root isolation via Sturm sequences.

Polynomials are coefficient lists in ascending degree order with int or
Fraction entries.  Sturm chains are computed over Q and renormalised to
primitive integer polynomials at every step (positive scaling only, which
preserves signs) to keep coefficients small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .intervals import RatInterval


def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_degree(c):
    c = poly_trim(c)
    return len(c) - 1 if c else -1


def poly_eval(c, x):
    """Horner evaluation; works for Fraction, int or RatInterval x."""
    total = 0
    for a in reversed(poly_trim(c)):
        total = total * x + a
    return total


def poly_derivative(c):
    return [i * a for i, a in enumerate(c)][1:]


def poly_primitive(c, normalize_sign=True):
    """Clear denominators and content (positive scaling; exact).

    With ``normalize_sign`` the leading coefficient is made positive, which
    changes signs and must NOT be used inside Sturm chains.
    """
    c = poly_trim(c)
    if not c:
        return []
    den = 1
    for a in c:
        f = Fraction(a)
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(Fraction(a) * den) for a in c]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g:
        ints = [a // g for a in ints]
    if normalize_sign and ints[-1] < 0:
        ints = [-a for a in ints]
    return ints


def _poly_rem(f, g):
    """Remainder of f by g over Q (g nonzero)."""
    f = [Fraction(a) for a in poly_trim(f)]
    g = [Fraction(a) for a in poly_trim(g)]
    while len(f) >= len(g) and f:
        coef = f[-1] / g[-1]
        shift = len(f) - len(g)
        for i, b in enumerate(g):
            f[i + shift] -= coef * b
        f = poly_trim(f)
    return f


def poly_gcd(f, g):
    """Primitive integer gcd of two polynomials over Q."""
    a, b = poly_trim(f), poly_trim(g)
    while b:
        a, b = b, _poly_rem(a, b)
    return poly_primitive(a)


def poly_divexact(f, g):
    """Exact quotient f / g over Q (raises if not exact)."""
    f = [Fraction(a) for a in poly_trim(f)]
    g = [Fraction(a) for a in poly_trim(g)]
    if not g:
        raise ZeroDivisionError
    q = [Fraction(0)] * (len(f) - len(g) + 1) if len(f) >= len(g) else []
    while len(f) >= len(g) and f:
        coef = f[-1] / g[-1]
        shift = len(f) - len(g)
        q[shift] = coef
        for i, b in enumerate(g):
            f[i + shift] -= coef * b
        f = poly_trim(f)
    if f:
        raise ValueError("division not exact")
    return q


def squarefree_part(f):
    f = poly_primitive(f)
    if poly_degree(f) < 1:
        return f
    g = poly_gcd(f, poly_derivative(f))
    if poly_degree(g) < 1:
        return f
    return poly_primitive(poly_divexact(f, g))


def sturm_chain(f):
    """Sturm sequence of a squarefree polynomial.

    Every element is rescaled to a primitive integer polynomial by a
    positive constant, which keeps coefficients small without touching the
    sign pattern Sturm's theorem depends on.
    """
    chain = [poly_primitive(f, normalize_sign=False)]
    d = poly_derivative(chain[0])
    if poly_trim(d):
        chain.append(poly_primitive(d, normalize_sign=False))
    while poly_degree(chain[-1]) > 0:
        r = _poly_rem(chain[-2], chain[-1])
        r = poly_trim(r)
        if not r:
            break
        chain.append(poly_primitive([-a for a in r], normalize_sign=False))
    return chain


def _sign_variations(values):
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_variations_at(chain, x):
    return _sign_variations([poly_eval(c, Fraction(x)) for c in chain])


def sturm_variations_at_inf(chain, positive=True):
    vals = []
    for c in chain:
        c = poly_trim(c)
        if not c:
            continue
        lead = c[-1]
        deg = len(c) - 1
        if positive:
            vals.append(lead)
        else:
            vals.append(lead if deg % 2 == 0 else -lead)
    return _sign_variations(vals)


def count_roots_halfopen(chain, a, b):
    """Number of distinct real roots in (a, b] for the chain's polynomial."""
    return sturm_variations_at(chain, a) - sturm_variations_at(chain, b)


def root_bound(f):
    """Cauchy bound: all real roots lie in (-B, B]."""
    c = poly_primitive(f)
    lead = abs(c[-1])
    m = max(abs(a) for a in c[:-1]) if len(c) > 1 else 0
    return Fraction(m, lead) + 1


def isolate_real_roots(f):
    """Disjoint rational intervals, one per distinct real root of f.

    f must be nonzero.  Point intervals [r, r] mark exact rational roots;
    all other intervals are half-open caches (lo, hi] with exactly one root
    certified by Sturm counts, returned as closed RatIntervals whose
    endpoints are themselves non-roots.
    """
    c = poly_trim(f)
    if not c:
        raise ValueError("zero polynomial has no isolated roots")
    if len(c) == 1:
        return []
    sf = squarefree_part(c)
    if poly_degree(sf) < 1:
        return []
    chain = sturm_chain(sf)
    B = root_bound(sf)
    total = count_roots_halfopen(chain, -B, B)
    out = []

    def recurse(a, b, count):
        if count == 0:
            return
        if count == 1:
            out.append(_shrink_away_from_root(chain, sf, a, b))
            return
        mid = (a + b) / 2
        if poly_eval(sf, mid) == 0:
            out_mid = RatInterval(mid, mid)
            left = count_roots_halfopen(chain, a, mid)
            # mid itself is counted in (a, mid]
            recurse_left_count = left - 1
            right = count - left
            recurse(a, mid, recurse_left_count) if recurse_left_count else None
            out.append(out_mid)
            recurse(mid, b, right)
        else:
            left = count_roots_halfopen(chain, a, mid)
            recurse(a, mid, left)
            recurse(mid, b, count - left)

    recurse(-B, B, total)
    out.sort(key=lambda iv: iv.lo)
    return out


def _shrink_away_from_root(chain, sf, a, b):
    """Interval (a, b] with one root; return closed interval with non-root
    endpoints still containing exactly that root."""
    # b may be the root itself (rational); check
    if poly_eval(sf, b) == 0:
        return RatInterval(b, b)
    # a is not a root of the half-open interval by construction; if
    # poly_eval(sf, a) == 0, the root at `a` belongs to the neighbour, so
    # nudge a to the right while keeping the count at 1.
    if poly_eval(sf, a) == 0:
        lo, hi = a, b
        while True:
            mid = (lo + hi) / 2
            if poly_eval(sf, mid) == 0:
                return RatInterval(mid, mid)
            if count_roots_halfopen(chain, mid, b) == 1:
                return RatInterval(mid, b)
            hi = mid
    return RatInterval(a, b)


def refine_root(f, interval, max_width=None, rounds=1):
    """Shrink an isolating interval by bisection, never losing the root."""
    sf = squarefree_part(f)
    chain = sturm_chain(sf)
    lo, hi = interval.lo, interval.hi
    if lo == hi:
        return interval
    done_rounds = 0
    while True:
        if max_width is not None and hi - lo <= max_width:
            break
        if max_width is None and done_rounds >= rounds:
            break
        mid = (lo + hi) / 2
        if poly_eval(sf, mid) == 0:
            return RatInterval(mid, mid)
        if count_roots_halfopen(chain, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
        done_rounds += 1
    return RatInterval(lo, hi)


def count_distinct_real_roots(f):
    sf = squarefree_part(f)
    if poly_degree(sf) < 1:
        return 0
    chain = sturm_chain(sf)
    B = root_bound(sf)
    return count_roots_halfopen(chain, -B, B)
