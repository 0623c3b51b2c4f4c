"""Tangent spaces to loci of graded ideals, by exact linear algebra.

A degree-0 homomorphism I -> S/I is pinned down by its values on
generators, and relations among the generators cut out the admissible
value tuples.  For the chart ideal (V) + S_{>=4} only the linear
syzygies of V matter; for a full multigraded Hilbert scheme point the
constraints come from a generating set of syzygies of the Groebner
basis.  Torus-weight decompositions refine the dimension at fixed
points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import grobner, linalg
from .errors import DomainError, Unstable
from .ideals import GradedIdeal, hilbert_function
from .rings import Form, monomials

TORUS_PRESETS = {
    # the diagonal torus of the SL_2 embedding acting on x1..x4 by
    # diag(a, a, 1/a, 1/a)
    "sl2-n4": (1, 1, -1, -1),
}


@dataclass
class TangentReport:
    """Dimension, an explicit basis of generator-image tuples, and the
    bookkeeping torus_weights needs to split the space at a fixed
    point."""

    dimension: int
    basis: list
    truncation_degree: int
    weights: list | None = None
    generators: list = field(default_factory=list)
    unknowns: list = field(default_factory=list)   # (gen index, monomial)
    constraints: list = field(default_factory=list)

    def as_dict(self):
        out = {
            "dimension": self.dimension,
            "truncation_degree": self.truncation_degree,
            "generators": [str(g) for g in self.generators],
            "basis": [[str(im) for im in tup] for tup in self.basis],
        }
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out


def _residual_positions(vec, std):
    return [vec[s] for s in std]


def syz_tangent(V, n=None, ambient=None):
    """Tangent dimension of the syzygy chart at a subspace V of S_2.

    The chart ideal is (V) + S_{>=4}; a tangent vector is a map
    phi: V -> (A/V)_2 with sum l_i phi(v_i) = 0 in (S/(V))_3 for every
    linear syzygy sum l_i v_i = 0.  The ambient A defaults to all of
    S_2 (the multigraded Hilbert scheme chart); for loci confined to a
    Grassmannian of apolar subspaces, pass the ambient space of
    quadrics (a list of forms, or a Quadric whose degree-2 apolar piece
    is meant) and images are restricted to it.  Valid when
    H_{S/(V)}(3) = n, which is checked.
    """
    if isinstance(V, GradedIdeal):
        forms = V.piece(2)
    else:
        forms = list(V)
    if not forms:
        raise DomainError("empty subspace")
    ring = forms[0].ring
    nn = forms[0].n
    if n is not None and n != nn:
        raise DomainError("n mismatch")
    n = nn
    if any(f.degree != 2 for f in forms):
        raise DomainError("syz_tangent expects degree-2 forms")
    monos2 = monomials(n, 2)
    monos3 = monomials(n, 3)
    R2, rk2, piv2 = linalg.rref([f.vector(monos2) for f in forms])
    basis = [Form.from_vector(ring, n, 2, r, monos2) for r in R2[:rk2]]
    k = len(basis)
    xs = [Form.variable(ring, n, i) for i in range(n)]
    prod_rows = [(x * v).vector(monos3) for v in basis for x in xs]
    R3, rk3, piv3 = linalg.rref(prod_rows)
    if len(monos3) - rk3 != n:
        raise DomainError(
            "H(3) = %d but the chart needs %d" % (len(monos3) - rk3, n))
    std2 = [j for j in range(len(monos2)) if j not in piv2]
    std3 = [j for j in range(len(monos3)) if j not in piv3]
    if ambient is None:
        mu = [Form.monomial(ring, n, monos2[j]) for j in std2]
    else:
        if hasattr(ambient, "perp"):
            amb_forms = ambient.perp().piece(2)
        elif isinstance(ambient, GradedIdeal):
            amb_forms = ambient.piece(2)
        else:
            amb_forms = list(ambient)
        RA, rkA, pivA = linalg.rref([a.vector(monos2) for a in amb_forms])
        if any(a.degree != 2 for a in amb_forms):
            raise DomainError("ambient must consist of quadrics")
        if not all(linalg.in_row_space(RA[:rkA], pivA, f.vector(monos2))
                   for f in basis):
            raise DomainError("V is not contained in the ambient space")
        residuals = [linalg.reduce_vector(R2[:rk2], piv2, r)
                     for r in RA[:rkA]]
        mu = [Form.from_vector(ring, n, 2, r, monos2)
              for r in linalg.row_basis(residuals)]
    # T[i][t] = class of x_i * mu_t in (S/(V))_3, in std3 coordinates
    T = [[_residual_positions(
            linalg.reduce_vector(R3[:rk3], piv3, (x * m).vector(monos3)),
            std3) for m in mu] for x in xs]
    syzygies = grobner.linear_syzygies(basis)
    rows = []
    for syz in syzygies:
        coeff = [h.vector() if not h.is_zero() else [Fraction(0)] * n
                 for h in syz]
        for c in range(len(std3)):
            row = []
            for j in range(k):
                for t in range(len(mu)):
                    row.append(sum(coeff[j][i] * T[i][t][c]
                                   for i in range(n)))
            rows.append(row)
    nunk = k * len(mu)
    kernel = linalg.kernel_basis(rows, nunk) if rows else \
        linalg.identity(nunk)
    basis_tuples = []
    for vec in kernel:
        images = []
        for j in range(k):
            f = Form.zero(ring, n, 2)
            for t, m in enumerate(mu):
                c = vec[j * len(mu) + t]
                if c:
                    f = f + m * c
            images.append(f)
        basis_tuples.append(tuple(images))
    unknowns = [(j, mu[t]) for j in range(k) for t in range(len(mu))]
    return TangentReport(dimension=len(kernel), basis=basis_tuples,
                         truncation_degree=3, generators=basis,
                         unknowns=unknowns, constraints=rows)


def hilb_tangent(ideal):
    """dim Hom_S(I, S/I)_0, the multigraded Hilbert scheme tangent space.

    Values are assigned on the reduced Groebner basis and constrained by
    a generating set of its syzygies (s-pair relations), reduced in the
    quotient by normal forms.  The input must have Hilbert function
    (1, n, n, ...).
    """
    n = ideal.n
    hf = hilbert_function(ideal)
    D = ideal.determinacy_bound()
    if not (hf[0] == 1 and all(hf[d] == n for d in range(1, D + 1))):
        raise DomainError("Hilbert function is not (1, n, n, ...)")
    G = ideal.groebner()
    leads = [g.leading_monomial() for g in G]
    syzygies = grobner.syzygy_generators(G)
    cap = 2 * max(g.degree for g in G) + 4
    sdegs = [max(h.degree + g.degree for h, g in zip(s, G)
                 if not h.is_zero()) for s in syzygies]
    if sdegs and max(sdegs) > cap:
        raise Unstable("syzygy constraints reach degree %d beyond cap %d"
                       % (max(sdegs), cap))
    # unknowns: the class of phi(g_j) in (S/I)_{deg g_j}, coordinates on
    # the standard monomials of that degree
    std = {}
    for g in G:
        d = g.degree
        if d not in std:
            std[d] = grobner.standard_monomials(leads, n, d)
    unknowns = []
    offsets = []
    for j, g in enumerate(G):
        offsets.append(len(unknowns))
        unknowns.extend((j, Form.monomial(ideal.ring, n, m))
                        for m in std[g.degree])
    nunk = len(unknowns)

    def quotient_coords(f, e):
        nf = grobner.normal_form(f, G)
        basis_mon = grobner.standard_monomials(leads, n, e)
        return [nf.terms.get(m, Fraction(0)) for m in basis_mon]

    rows = []
    for syz, e in zip(syzygies, sdegs):
        std_e = grobner.standard_monomials(leads, n, e)
        cols = []
        for j, (h, g) in enumerate(zip(syz, G)):
            for m in std[g.degree]:
                if h.is_zero():
                    cols.append([Fraction(0)] * len(std_e))
                else:
                    cols.append(quotient_coords(h * Form.monomial(
                        ideal.ring, n, m), e))
        for c in range(len(std_e)):
            rows.append([cols[u][c] for u in range(nunk)])
    kernel = linalg.kernel_basis(rows, nunk) if rows else \
        linalg.identity(nunk)
    basis_tuples = []
    for vec in kernel:
        images = []
        for j, g in enumerate(G):
            f = Form.zero(ideal.ring, n, g.degree)
            for t, m in enumerate(std[g.degree]):
                c = vec[offsets[j] + t]
                if c:
                    f = f + Form.monomial(ideal.ring, n, m, c)
            images.append(f)
        basis_tuples.append(tuple(images))
    return TangentReport(dimension=len(kernel), basis=basis_tuples,
                         truncation_degree=max(sdegs) if sdegs else 0,
                         generators=list(G), unknowns=unknowns,
                         constraints=rows)


def _mono_weight(m, w):
    return sum(e * wi for e, wi in zip(m, w))


def _form_weight(f, w):
    ws = {_mono_weight(m, w) for m in f.terms}
    if len(ws) != 1:
        return None
    return ws.pop()


def torus_weights(report, action):
    """Multiset of torus weights on the tangent space of a fixed point.

    action is an integer weight per variable or a named preset.  Every
    generator must be weight-homogeneous (else the point is not fixed
    and DomainError is raised).  The unknown coordinates are graded by
    wt(image monomial) - wt(generator); the tangent space splits into
    the graded pieces, whose dimensions give the multiplicities.
    """
    if isinstance(action, str):
        try:
            w = TORUS_PRESETS[action]
        except KeyError:
            raise DomainError("unknown torus preset %r" % action)
    else:
        w = tuple(int(c) for c in action)
    gen_weights = []
    for g in report.generators:
        gw = _form_weight(g, w)
        if gw is None:
            raise DomainError("point is not fixed by this torus")
        gen_weights.append(gw)
    unk_weights = []
    for j, m in report.unknowns:
        mw = _form_weight(m, w) if isinstance(m, Form) else _mono_weight(m, w)
        if mw is None:
            raise DomainError("image space is not torus-stable")
        unk_weights.append(mw - gen_weights[j])
    weights = []
    for uw in sorted(set(unk_weights)):
        cols = [u for u, x in enumerate(unk_weights) if x == uw]
        if report.constraints:
            sub = [[row[u] for u in cols] for row in report.constraints]
            dim = len(linalg.kernel_basis(sub, len(cols)))
        else:
            dim = len(cols)
        weights.extend([uw] * dim)
    if len(weights) != report.dimension:
        raise DomainError("tangent space does not split by weight; "
                          "the point is not torus-fixed")
    report.weights = sorted(weights)
    return report.weights


def piece_weights(forms, action):
    """Weights (with multiplicity) of a torus-stable space of forms."""
    if isinstance(action, str):
        w = TORUS_PRESETS[action]
    else:
        w = tuple(int(c) for c in action)
    out = []
    for f in forms:
        fw = _form_weight(f, w)
        if fw is None:
            raise DomainError("space is not torus-stable")
        out.append(fw)
    return sorted(out)


def excess_degree_arithmetic(hc, c1N):
    """Excess-intersection bookkeeping for the degree count.

    per_curve = 6*hc - c1N is the excess degree contributed by one
    ruling curve, total adds twice that to the 310 transverse points,
    and adjunction = c1N - 2*hc is the Fano-index consistency value.
    """
    per_curve = 6 * hc - c1N
    return {
        "per_curve": per_curve,
        "total": 310 + 2 * per_curve,
        "adjunction": c1N - 2 * hc,
    }
