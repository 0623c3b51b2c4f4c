"""Homogeneous forms over Q in one of two dual polynomial rings.

Ring "S" has variables x1..xn, ring "T" has variables y1..yn.  A monomial
is an exponent tuple of length n; a form is a dict from monomials to
nonzero Fractions, tagged with its ring and degree.  Everything is exact.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

Scalar = Fraction

Mono = tuple  # exponent tuple, length n

_VAR_LETTER = {"S": "x", "T": "y"}
_LETTER_RING = {"x": "S", "y": "T"}


def dual_ring(ring):
    return "T" if ring == "S" else "S"


# ---------------------------------------------------------------------------
# monomial helpers

def mono_degree(m):
    return sum(m)


def mono_mul(a, b):
    return tuple(i + j for i, j in zip(a, b))


def mono_divides(a, b):
    """True when x^a divides x^b."""
    return all(i <= j for i, j in zip(a, b))


def mono_div(b, a):
    """Exponent tuple of x^b / x^a; caller guarantees divisibility."""
    return tuple(j - i for i, j in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(i, j) for i, j in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders, as sort-key functions (bigger key = bigger monomial)

def grevlex_key(m):
    """Graded reverse lexicographic: degree first, then the last nonzero
    entry of the difference decides (negative entry wins)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m):
    return tuple(m)


def weighted_key(w):
    """Order refining the weight w: higher <w, m> first, grevlex ties."""

    def key(m):
        return (sum(m), sum(wi * ei for wi, ei in zip(w, m)), tuple(-e for e in reversed(m)))

    return key


def grevlex_last_key(i, n):
    """Grevlex on variables reordered so that variable index i comes last.

    Used for saturation by a single variable: with x_i last, x_i-divisibility
    of an ideal is visible on a reduced basis.
    """
    perm = [j for j in range(n) if j != i] + [i]

    def key(m):
        pm = tuple(m[j] for j in perm)
        return (sum(m), tuple(-e for e in reversed(pm)))

    return key


def monomials(n, d, key=grevlex_key):
    """All degree-d monomials in n variables, descending in the given order."""
    if d < 0:
        return []
    out = []
    for bars in itertools.combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in bars:
            m[i] += 1
        out.append(tuple(m))
    out.sort(key=key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# forms

class Form:
    """A homogeneous polynomial with exact rational coefficients."""

    __slots__ = ("ring", "n", "degree", "terms")

    def __init__(self, ring, n, degree, terms):
        if ring not in ("S", "T"):
            raise ValueError("ring must be 'S' or 'T'")
        self.ring = ring
        self.n = n
        self.degree = degree
        clean = {}
        for m, c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            if len(m) != n:
                raise ValueError("monomial length does not match n")
            if sum(m) != degree:
                raise ValueError(
                    "non-homogeneous term %r in degree-%d form" % (m, degree)
                )
            clean[tuple(m)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring, n, degree=0):
        return cls(ring, n, degree, {})

    @classmethod
    def monomial(cls, ring, n, m, coeff=1):
        return cls(ring, n, sum(m), {tuple(m): Fraction(coeff)})

    @classmethod
    def variable(cls, ring, n, i):
        """The variable with index i (0-based)."""
        m = [0] * n
        m[i] = 1
        return cls.monomial(ring, n, tuple(m))

    @classmethod
    def constant(cls, ring, n, c):
        return cls(ring, n, 0, {(0,) * n: Fraction(c)})

    @classmethod
    def from_vector(cls, ring, n, degree, vec, monos=None):
        if monos is None:
            monos = monomials(n, degree)
        return cls(ring, n, degree, dict(zip(monos, vec)))

    # -- basic queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, m):
        return self.terms.get(tuple(m), Fraction(0))

    def vector(self, monos=None):
        if monos is None:
            monos = monomials(self.n, self.degree)
        return [self.terms.get(m, Fraction(0)) for m in monos]

    def leading_monomial(self, key=grevlex_key):
        if not self.terms:
            raise ValueError("zero form has no leading monomial")
        return max(self.terms, key=key)

    def leading_coeff(self, key=grevlex_key):
        return self.terms[self.leading_monomial(key)]

    def monic(self, key=grevlex_key):
        if self.is_zero():
            return self
        return self * (1 / self.leading_coeff(key))

    def as_scalar(self):
        """The coefficient of a degree-0 form."""
        if self.degree != 0:
            raise ValueError("not a degree-0 form")
        return self.terms.get((0,) * self.n, Fraction(0))

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other):
        if self.ring != other.ring or self.n != other.n:
            raise ValueError("forms live in different rings")

    def __add__(self, other):
        self._check_compatible(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Form(self.ring, self.n, self.degree, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Form(self.ring, self.n, self.degree,
                    {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            self._check_compatible(other)
            terms = {}
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    m = mono_mul(ma, mb)
                    terms[m] = terms.get(m, Fraction(0)) + ca * cb
            return Form(self.ring, self.n, self.degree + other.degree, terms)
        c = Fraction(other)
        return Form(self.ring, self.n, self.degree,
                    {m: co * c for m, co in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / Fraction(c))

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.ring == other.ring and self.n == other.n
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, self.n, frozenset(self.terms.items())))

    # -- printing ------------------------------------------------------------

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return "Form(%s, n=%d, %s)" % (self.ring, self.n, format_form(self))


def _format_mono(m, letter):
    parts = []
    for i, e in enumerate(m):
        if e == 0:
            continue
        if e == 1:
            parts.append("%s%d" % (letter, i + 1))
        else:
            parts.append("%s%d^%d" % (letter, i + 1, e))
    return "*".join(parts)


def format_form(f, key=grevlex_key):
    """Canonical text for a form: terms in descending order, exact
    coefficients, unit coefficients omitted.  parse_form inverts this."""
    if f.is_zero():
        return "0"
    letter = _VAR_LETTER[f.ring]
    pieces = []
    for m in sorted(f.terms, key=key, reverse=True):
        c = f.terms[m]
        mono = _format_mono(m, letter)
        if not mono:  # constant term
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = "%s*%s" % (abs(c), mono)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[xy]\d+)"
                    r"|(?P<op>[\^\*\+\-]))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError("cannot parse %r at position %d" % (text, pos))
        pos = m.end()
        if m.group("num") is not None:
            out.append(("num", Fraction(m.group("num"))))
        elif m.group("var") is not None:
            out.append(("var", m.group("var")))
        else:
            out.append(("op", m.group("op")))
    return out


def parse_form(text, ring=None, n=None):
    """Parse e.g. '3/2*x1^2*x3 - x2*x4' into a Form.

    The ring is inferred from the variable letter (x -> S, y -> T) unless
    given; n is inferred from the largest index unless given.  The form
    must be homogeneous.  Exact inverse of format_form.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial")

    # split into terms at +/- that are not exponents
    terms = []  # list of (sign, [factor tokens])
    sign, cur = 1, []
    i = 0
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-" and not cur:
            if val == "-":
                sign = -sign
            i += 1
            continue
        if kind == "op" and val in "+-":
            terms.append((sign, cur))
            sign, cur = (1 if val == "+" else -1), []
            i += 1
            continue
        cur.append((kind, val))
        i += 1
    if cur:
        terms.append((sign, cur))
    elif not terms:
        raise ValueError("empty polynomial")

    seen_vars = []
    raw_terms = []  # (sign, coeff, [(idx, exp), ...])
    for tsign, toks in terms:
        coeff = Fraction(1)
        powers = []
        j = 0
        while j < len(toks):
            kind, val = toks[j]
            if kind == "num":
                coeff *= val
                j += 1
            elif kind == "var":
                letter, idx = val[0], int(val[1:]) - 1
                if idx < 0:
                    raise ValueError("variable indices start at 1")
                seen_vars.append(letter)
                exp = 1
                if j + 2 < len(toks) and toks[j + 1] == ("op", "^"):
                    ekind, eval_ = toks[j + 2]
                    if ekind != "num" or eval_.denominator != 1:
                        raise ValueError("exponent must be an integer")
                    exp = int(eval_)
                    j += 3
                elif j + 1 < len(toks) and toks[j + 1] == ("op", "^"):
                    raise ValueError("dangling '^' in %r" % text)
                else:
                    j += 1
                powers.append((idx, exp))
            elif (kind, val) == ("op", "*"):
                j += 1
            else:
                raise ValueError("unexpected token %r in %r" % (val, text))
        raw_terms.append((tsign, coeff, powers))

    letters = set(seen_vars)
    if len(letters) > 1:
        raise ValueError("mixed x and y variables in one form")
    if ring is None:
        ring = _LETTER_RING[letters.pop()] if letters else "S"
    elif letters and _LETTER_RING[next(iter(letters))] != ring:
        raise ValueError("variable letter does not match ring %s" % ring)

    max_idx = max((i for _, _, ps in raw_terms for i, _ in ps), default=-1)
    if n is None:
        n = max_idx + 1 if max_idx >= 0 else 1
    elif max_idx >= n:
        raise ValueError("variable index %d exceeds n=%d" % (max_idx + 1, n))

    acc = {}
    degree = None
    for tsign, coeff, powers in raw_terms:
        m = [0] * n
        for idx, exp in powers:
            m[idx] += exp
        m = tuple(m)
        d = sum(m)
        if coeff == 0:
            continue
        if degree is None:
            degree = d
        elif d != degree and (acc or coeff != 0):
            raise ValueError("form %r is not homogeneous" % text)
        acc[m] = acc.get(m, Fraction(0)) + tsign * coeff
    if degree is None:
        degree = 0
    f = Form(ring, n, degree, acc)
    return f


def parse_forms(texts, ring=None, n=None):
    return [parse_form(t, ring=ring, n=n) for t in texts]


def partial(f, i):
    """Derivative of f with respect to its i-th variable (same ring)."""
    if f.degree == 0:
        return Form.zero(f.ring, f.n, 0)
    terms = {}
    for m, c in f.terms.items():
        if m[i] == 0:
            continue
        mm = list(m)
        mm[i] -= 1
        mm = tuple(mm)
        terms[mm] = terms.get(mm, Fraction(0)) + c * m[i]
    return Form(f.ring, f.n, f.degree - 1, terms)


def evaluate(f, point):
    """Value of f at a rational coordinate vector."""
    total = Fraction(0)
    for m, c in f.terms.items():
        v = c
        for e, p in zip(m, point):
            if e:
                v *= Fraction(p) ** e
        total += v
    return total
