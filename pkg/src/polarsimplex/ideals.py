"""Graded ideals handled degree by degree, exactly.

A GradedIdeal is backed by homogeneous generators; each graded piece is
realized as a canonical rref basis over the descending grevlex monomial
list of its degree.  Hilbert functions, membership, intersections, minimal
generators and the file format all live here.

Piece dimensions and membership at degrees beyond the cached pieces are
answered through a lazily computed reduced Groebner basis (counting
standard monomials, reducing to normal form) instead of large rational
matrices; the two routes agree and the tests cross-check them.
"""

from __future__ import annotations

import bisect
import math
from fractions import Fraction

from . import grobner, linalg
from .rings import (Form, format_form, grevlex_key, mono_mul, monomials,
                    parse_form)


class GradedIdeal:
    """Homogeneous ideal of S = k[x1..xn] or T = k[y1..yn].

    Treat instances as immutable: the generator list is fixed at
    construction and Groebner/piece data are cached on first use.
    """

    def __init__(self, ring, n, generators=()):
        self.ring = ring
        self.n = n
        gens = []
        for g in generators:
            if g.is_zero():
                continue
            if g.ring != ring or g.n != n:
                raise ValueError("generator from a different ring")
            gens.append(g)
        self.generators = gens
        self._piece_data = {}  # degree -> (rref rows, pivots)
        self._gb = None
        self._leads = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_strings(cls, ring, n, texts):
        return cls(ring, n, [parse_form(t, ring=ring, n=n) for t in texts])

    @classmethod
    def from_pieces(cls, ring, n, pieces):
        """Build from explicit graded pieces {d: [Form, ...]} for all d up
        to some bound, extracting minimal generators on the way.

        The pieces must really be the pieces of an ideal (S_1-stable);
        generators found by complementing S_1 * piece(d-1) inside piece(d).
        """
        maxd = max(pieces) if pieces else 0
        gens = []
        ideal = cls(ring, n, [])
        for d in range(1, maxd + 1):
            target = pieces.get(d, [])
            if not target:
                continue
            monos = monomials(n, d)
            have, hpiv = ideal._data(d)
            R = [row[:] for row in have]
            piv = list(hpiv)
            added = False
            for f in target:
                v = linalg.reduce_vector(R, piv, f.vector(monos))
                lead = next((j for j, c in enumerate(v) if c != 0), None)
                if lead is None:
                    continue
                v = [c / v[lead] for c in v]
                gens.append(Form.from_vector(ring, n, d, v, monos))
                # The residual has zeros at every current pivot column, so
                # slotting it in by pivot keeps R echelon and the span
                # current; no need to rebuild the ideal per generator.
                at = bisect.bisect_left(piv, lead)
                R.insert(at, v)
                piv.insert(at, lead)
                added = True
            if added:
                ideal = cls(ring, n, gens)
        # ideal already holds the final generators and warm piece caches
        out = ideal
        # sanity: the declared pieces must be reproduced exactly
        for d, forms in pieces.items():
            declared = linalg.row_basis(
                [f.vector(monomials(n, d)) for f in forms if not f.is_zero()])
            if declared != out._data(d)[0]:
                raise ValueError("pieces are not the pieces of an ideal")
        return out

    # -- Groebner view --------------------------------------------------------

    def groebner(self):
        """Reduced grevlex Groebner basis, cached."""
        if self._gb is None:
            self._gb = grobner.buchberger(self.generators)
        return self._gb

    def lead_monomials(self):
        if self._leads is None:
            self._leads = [g.leading_monomial() for g in self.groebner()]
        return self._leads

    # -- graded pieces --------------------------------------------------------

    def _data(self, d):
        """(rref rows, pivot columns) of the degree-d piece.

        Built incrementally from the previous cached piece when possible:
        S_1 * I_(d-1) together with the degree-d generators spans I_d.
        """
        if d in self._piece_data:
            return self._piece_data[d]
        monos = monomials(self.n, d)
        index = {m: j for j, m in enumerate(monos)}
        rows = []
        prev = self._piece_data.get(d - 1)
        if prev is not None and d >= 1:
            lower = monomials(self.n, d - 1)
            for i in range(self.n):
                shift = [index[mono_mul(m, tuple(1 if k == i else 0
                                                 for k in range(self.n)))]
                         for m in lower]
                for row in prev[0]:
                    new = [Fraction(0)] * len(monos)
                    for j, c in enumerate(row):
                        if c:
                            new[shift[j]] += c
                    rows.append(new)
            for g in self.generators:
                if g.degree == d:
                    rows.append([g.terms.get(mm, Fraction(0)) for mm in monos])
        else:
            for g in self.generators:
                e = d - g.degree
                if e < 0:
                    continue
                for m in monomials(self.n, e):
                    prod = {}
                    for mg, c in g.terms.items():
                        prod[mono_mul(m, mg)] = c
                    rows.append([prod.get(mm, Fraction(0)) for mm in monos])
        R, rk, piv = linalg.rref(rows)
        data = (R[:rk], piv)
        self._piece_data[d] = data
        return data

    def piece(self, d):
        """Canonical basis (rref rows as Forms) of the degree-d piece."""
        monos = monomials(self.n, d)
        rows, _ = self._data(d)
        return [Form.from_vector(self.ring, self.n, d, row, monos)
                for row in rows]

    def dim_piece(self, d):
        if d < 0:
            return 0
        if not self.generators:
            return 0
        if d in self._piece_data:
            return len(self._piece_data[d][0])
        if d <= self.max_generator_degree() + 1:
            return len(self._data(d)[0])
        return grobner.piece_dimension_from_leads(self.lead_monomials(),
                                                  self.n, d)

    def hilbert(self, d):
        """Hilbert function of the quotient ring at degree d."""
        if d < 0:
            return 0
        return math.comb(self.n - 1 + d, d) - self.dim_piece(d)

    def contains(self, f):
        if f.ring != self.ring or f.n != self.n:
            return False
        if f.is_zero():
            return True
        if not self.generators:
            return False
        if f.degree in self._piece_data:
            R, piv = self._piece_data[f.degree]
            return linalg.in_row_space(R, piv, f.vector())
        return grobner.normal_form(f, self.groebner()).is_zero()

    def contains_ideal(self, other):
        """Ideal containment; deciding on generators is enough."""
        return all(self.contains(g) for g in other.generators)

    def equals(self, other):
        """Exact equality as ideals (mutual containment of generators)."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def agrees_to(self, other, dmax):
        """Do the graded pieces agree for every degree <= dmax?

        Pieces in degree d only involve generators of degree <= d, so
        mutual membership of those generators decides.
        """
        return (all(self.contains(g) for g in other.generators
                    if g.degree <= dmax)
                and all(other.contains(g) for g in self.generators
                        if g.degree <= dmax))

    def max_generator_degree(self):
        return max((g.degree for g in self.generators), default=0)

    def determinacy_bound(self):
        """Degree by which saturation-type comparisons are decided:
        Gotzmann bound for a constant Hilbert polynomial (= n) plus the
        maximal generator degree."""
        return self.n + max(self.max_generator_degree(), 1)

    # -- derived ideals -------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return GradedIdeal(self.ring, self.n, self.generators + other.generators)

    def _check(self, other):
        if other.ring != self.ring or other.n != self.n:
            raise ValueError("ideals live in different rings")

    def intersect(self, other, dmax=None):
        """Intersection, generated degree by degree.

        Piece dimensions of self, other and their sum are counted from
        Groebner lead monomials, so dim (self_d intersect other_d) is known
        for every degree; explicit rational elimination only runs at the
        degrees where new generators actually appear.  Correct as an ideal
        provided the intersection is generated in degrees <= dmax (the
        default takes the larger determinacy bound).
        """
        self._check(other)
        if not self.generators or not other.generators:
            return GradedIdeal(self.ring, self.n, [])
        if dmax is None:
            dmax = max(self.determinacy_bound(), other.determinacy_bound())
        n = self.n
        sum_leads = [g.leading_monomial()
                     for g in grobner.buchberger(self.generators
                                                 + other.generators)]
        gens = []
        K = GradedIdeal(self.ring, n, [])
        for d in range(1, dmax + 1):
            total = len(monomials(n, d))
            a = self.dim_piece(d)
            b = other.dim_piece(d)
            s = grobner.piece_dimension_from_leads(sum_leads, n, d, total)
            want = a + b - s
            have = K.dim_piece(d)
            if have == want:
                continue
            if have > want:
                raise AssertionError("intersection piece overshoot")
            monos = monomials(n, d)
            W = linalg.intersect_row_spaces(self._data(d)[0],
                                            other._data(d)[0])
            R, piv = K._data(d)
            R = [row[:] for row in R]
            piv = list(piv)
            for w in W:
                v = linalg.reduce_vector(R, piv, w)
                lead = next((j for j, c in enumerate(v) if c != 0), None)
                if lead is None:
                    continue
                v = [c / v[lead] for c in v]
                gens.append(Form.from_vector(self.ring, n, d, v, monos))
                K = GradedIdeal(self.ring, n, gens)
                R, piv = K._data(d)
                R = [row[:] for row in R]
                piv = list(piv)
            if K.dim_piece(d) != want:
                raise AssertionError("intersection piece mismatch")
        return K

    def multiply(self, other):
        """The product ideal, generated by pairwise generator products."""
        self._check(other)
        return GradedIdeal(self.ring, self.n,
                           [f * g for f in self.generators
                            for g in other.generators])

    def minimal_generators(self, dmax=None):
        """Minimal homogeneous generators up to dmax, canonical basis.

        Per degree these complement S_1 * I_(d-1) inside I_d.
        """
        if dmax is None:
            dmax = self.max_generator_degree()
        sub = GradedIdeal(self.ring, self.n, [])
        out = []
        for d in range(1, dmax + 1):
            if self.dim_piece(d) == 0:
                continue
            monos = monomials(self.n, d)
            R, piv = sub._data(d)
            R = [row[:] for row in R]
            piv = list(piv)
            for f in self.piece(d):
                v = linalg.reduce_vector(R, piv, f.vector(monos))
                lead = next((j for j, c in enumerate(v) if c != 0), None)
                if lead is None:
                    continue
                v = [c / v[lead] for c in v]
                out.append(Form.from_vector(self.ring, self.n, d, v, monos))
                sub = GradedIdeal(self.ring, self.n, out)
                R, piv = sub._data(d)
                R = [row[:] for row in R]
                piv = list(piv)
        return out

    def minimalized(self, dmax=None):
        return GradedIdeal(self.ring, self.n, self.minimal_generators(dmax))

    # -- misc -----------------------------------------------------------------

    def __repr__(self):
        return "GradedIdeal(%s, n=%d, %d generators)" % (
            self.ring, self.n, len(self.generators))


class HilbertFunction:
    """Values h(0..dmax) of a quotient Hilbert function, with the
    eventual constant detected when three consecutive values agree past
    the last generator degree."""

    def __init__(self, values, eventual=None):
        self.values = list(values)
        self.eventual = eventual

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, d):
        if d < len(self.values):
            return self.values[d]
        if self.eventual is not None:
            return self.eventual
        raise IndexError("Hilbert function only computed through %d"
                         % (len(self.values) - 1))

    def __eq__(self, other):
        if isinstance(other, HilbertFunction):
            return (self.values == other.values
                    and self.eventual == other.eventual)
        return self.values == list(other)

    def __repr__(self):
        tail = ", ..." if self.eventual is not None else ""
        return "(%s%s)" % (", ".join(map(str, self.values)), tail)


def hilbert_function(ideal, dmax=None):
    """Quotient Hilbert function of a graded ideal.

    With dmax=None the function is computed through the determinacy bound
    plus two and the eventual constant is reported; an explicit dmax just
    lists the values. Stabilization means three equal consecutive values
    at degrees past the maximal generator degree.
    """
    if dmax is None:
        top = ideal.determinacy_bound() + 2
    else:
        top = dmax
    values = [ideal.hilbert(d) for d in range(top + 1)]
    eventual = None
    lo = ideal.max_generator_degree()
    for d in range(max(lo, 1), len(values) - 2):
        if values[d] == values[d + 1] == values[d + 2]:
            eventual = values[d]
            break
    return HilbertFunction(values, eventual)


# ---------------------------------------------------------------------------
# the ideal file format:
#
#     ring S n=4
#     # optional comments
#     x1*x3 - x2^2
#     x3^2
#
# one generator per line, exact coefficients, header first.

def ideal_to_text(ideal):
    lines = ["ring %s n=%d" % (ideal.ring, ideal.n)]
    lines += [format_form(g) for g in ideal.generators]
    return "\n".join(lines) + "\n"


def ideal_from_text(text):
    ring = n = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            parts = line.split()
            if (len(parts) != 3 or parts[0] != "ring"
                    or parts[1] not in ("S", "T")
                    or not parts[2].startswith("n=")):
                raise ValueError("expected header 'ring S n=<n>', got %r" % raw)
            ring = parts[1]
            n = int(parts[2][2:])
            continue
        gens.append(parse_form(line, ring=ring, n=n))
    if ring is None:
        raise ValueError("missing 'ring' header line")
    return GradedIdeal(ring, n, gens)


def read_ideal(path):
    with open(path, "r", encoding="utf-8") as fh:
        return ideal_from_text(fh.read())


def write_ideal(path, ideal):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(ideal_to_text(ideal))
