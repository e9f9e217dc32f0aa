"""Sparse multivariate polynomials with exact integer or F_p coefficients.

Monomials are exponent tuples; the canonical term order is graded
lexicographic with the first variable strongest (x0 > x1 > ... within a
degree, higher total degree first).  All arithmetic is exact; nothing here
ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction


def grlex_key(expvec):
    """Sort key for graded-lex order (ascending); reverse for display."""
    return (sum(expvec), expvec)


class MultiPoly:
    """A polynomial in ``nvars`` variables over Z (mod=None) or F_p (mod=p).

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    treated as immutable; every operation returns a fresh polynomial.
    """

    __slots__ = ("nvars", "mod", "terms")

    def __init__(self, nvars, terms=None, mod=None):
        self.nvars = nvars
        self.mod = mod
        clean = {}
        if terms:
            for e, c in terms.items():
                if mod is not None:
                    c %= mod
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars, mod=None):
        return cls(nvars, {}, mod)

    @classmethod
    def constant(cls, nvars, c, mod=None):
        return cls(nvars, {(0,) * nvars: c}, mod)

    @classmethod
    def variable(cls, nvars, i, mod=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, mod)

    @classmethod
    def monomial(cls, nvars, expvec, c=1, mod=None):
        return cls(nvars, {tuple(expvec): c}, mod)

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Degree of the zero polynomial is -1 by convention."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self):
        """(exponent, coefficient) of the graded-lex largest monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coefficient(self, expvec):
        return self.terms.get(tuple(expvec), 0)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.mod == other.mod
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.mod, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations ----------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars or self.mod != other.mod:
            raise ValueError("polynomial ring mismatch")

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other, self.mod)
        self._check(other)
        terms = dict(self.terms)
        mod = self.mod
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if mod is not None:
                v %= mod
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.mod, out.terms = self.nvars, mod, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        mod = self.mod
        if mod is None:
            terms = {e: -c for e, c in self.terms.items()}
        else:
            terms = {e: (mod - c) % mod for e, c in self.terms.items()}
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.mod, out.terms = self.nvars, mod, terms
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other, self.mod)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        mod = self.mod
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                terms[e] = v
        if mod is not None:
            terms = {e: v % mod for e, v in terms.items()}
        terms = {e: v for e, v in terms.items() if v}
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.mod, out.terms = self.nvars, mod, terms
        return out

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        mod = self.mod
        if mod is not None:
            c %= mod
        if c == 0:
            return MultiPoly.zero(self.nvars, mod)
        if mod is None:
            terms = {e: c * v for e, v in self.terms.items()}
        else:
            terms = {e: (c * v) % mod for e, v in self.terms.items()}
            terms = {e: v for e, v in terms.items() if v}
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.mod, out.terms = self.nvars, mod, terms
        return out

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1, self.mod)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, expvec):
        """Multiply by the monomial with exponent vector ``expvec``."""
        e0 = tuple(expvec)
        terms = {tuple(a + b for a, b in zip(e, e0)): c
                 for e, c in self.terms.items()}
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.mod, out.terms = self.nvars, self.mod, terms
        return out

    # -- change of coefficients / variables ----------------------------

    def reduce_mod(self, p):
        return MultiPoly(self.nvars, self.terms, mod=p)

    def content(self):
        from math import gcd
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def map_coeffs(self, f):
        return MultiPoly(self.nvars, {e: f(c) for e, c in self.terms.items()},
                         self.mod)

    def evaluate(self, values):
        """Evaluate at a point; values may be ints, Fractions or intervals."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                for _ in range(k):
                    term = term * v
            total = total + term
        if self.mod is not None and isinstance(total, int):
            total %= self.mod
        return total

    def substitute_linear(self, forms):
        """Substitute variable i -> forms[i] (each a MultiPoly); returns a
        polynomial in the ring of the forms."""
        if len(forms) != self.nvars:
            raise ValueError("need one form per variable")
        tgt = forms[0]
        result = MultiPoly.zero(tgt.nvars, tgt.mod)
        for e, c in self.terms.items():
            term = MultiPoly.constant(tgt.nvars, c, tgt.mod)
            for f, k in zip(forms, e):
                for _ in range(k):
                    term = term * f
            result = result + term
        return result

    # -- canonical presentation -----------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]),
                      reverse=True)

    def to_string(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = ["x%d" % i for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append("%s^%d" % (names[i], k))
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "MultiPoly(%s)" % self.to_string()


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\d*)|(\^|\*\*)|(\*)|(\+)|(-)|(\())|(\))")


def parse_poly(s, names, mod=None):
    """Parse an integer-coefficient polynomial in the given variables.

    Accepts forms like ``x0*x1 + 3*x2^2 - x3**2`` and juxtaposed products
    like ``4x0x1``.  No parentheses; signs only as term separators or a
    leading sign.
    """
    nvars = len(names)
    index = {n: i for i, n in enumerate(names)}
    # tokenize
    tokens = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse polynomial near %r" % s[pos:pos + 12])
        pos = m.end()
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            name = m.group(2)
            if name not in index:
                raise ValueError("unknown variable %r (expected one of %s)"
                                 % (name, ", ".join(names)))
            tokens.append(("var", index[name]))
        elif m.group(3):
            tokens.append(("pow", None))
        elif m.group(4):
            tokens.append(("mul", None))
        elif m.group(5):
            tokens.append(("plus", None))
        elif m.group(6):
            tokens.append(("minus", None))
        else:
            raise ValueError("parentheses not supported in quadric strings")
    # split into terms on +/- separators
    poly = MultiPoly.zero(nvars, mod)
    sign = 1
    term_coeff = None
    term_exp = [0] * nvars
    started = False

    def flush():
        nonlocal poly, term_coeff, term_exp, started, sign
        if not started:
            raise ValueError("empty term in polynomial string")
        c = sign * (1 if term_coeff is None else term_coeff)
        poly = poly + MultiPoly.monomial(nvars, term_exp, c, mod)
        term_coeff = None
        term_exp = [0] * nvars
        started = False
        sign = 1

    i = 0
    expect_exp_for = None
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "pow":
            if expect_exp_for is None:
                raise ValueError("misplaced exponent")
            if i + 1 >= len(tokens) or tokens[i + 1][0] != "int":
                raise ValueError("exponent must be an integer")
            term_exp[expect_exp_for] += tokens[i + 1][1] - 1
            expect_exp_for = None
            i += 2
            continue
        expect_exp_for = None
        if kind == "int":
            if term_coeff is None:
                term_coeff = val
            else:
                term_coeff *= val
            started = True
        elif kind == "var":
            term_exp[val] += 1
            expect_exp_for = val
            started = True
        elif kind == "mul":
            pass
        elif kind in ("plus", "minus"):
            if started:
                flush()
            if kind == "minus":
                sign = -sign
        i += 1
    if started:
        flush()
    elif tokens:
        raise ValueError("trailing operator in polynomial string")
    return poly


def poly_matrix_det(rows):
    """Determinant of a square matrix of MultiPoly entries (Laplace)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    det = None
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        sub = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = a * poly_matrix_det(sub)
        if j % 2:
            term = -term
        det = term if det is None else det + term
    if det is None:
        some = rows[0][0]
        return MultiPoly.zero(some.nvars, some.mod)
    return det


def monomials_of_degree(nvars, d):
    """All exponent vectors of total degree d, descending graded-lex."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + (k,), remaining - k, slots - 1)

    rec((), d, nvars)
    return out


def eval_fraction(poly, values):
    """Evaluate with Fraction output (values rational or int)."""
    return poly.evaluate([Fraction(v) for v in values])
