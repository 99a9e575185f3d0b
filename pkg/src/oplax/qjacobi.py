"""Quantum Bianchi algebras, the quantum Jacobi operator, and its
semiclassical reductions.

Structure constants become operator-valued: the deformation entries keep
their closed forms with (q, p, Q, P) promoted to letters of the quasi-CCR
algebra.  Two alphabet conventions exist:

  * "PQ"   -- two letters; the operator momentum and position enter through
              p := (P^2 - Q^2)/2 and omega*q := (PQ + QP)/2 read as
              definitions (the semiclassical constraints);
  * "qpPQ" -- four letters with q, p commuting with P, Q.

The quantum bracket [x, y] has components mu^i_{jk} x^j y^k; since the
inner bracket of a nested Jacobiator is operator-valued, the placement of
the structure constant against it matters, so both "left" and "right"
conventions are implemented and compared against the claimed closed forms.

Scalars sqrt(2H) and omega/(2 sqrt(2H)) are the central symbols h and eps;
sqrt(2 p0) is the radical r with r^2 = 2 p0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .bianchi import BianchiType, UnsupportedLabelError
from .ncalg import CoeffPoly, CommutationTable, NCPoly, commutator, \
    quasi_ccr_table

PQ_TABLE = quasi_ccr_table(("P", "Q"))
QPPQ_TABLE = quasi_ccr_table(("q", "p", "P", "Q"))

_TABLES = {"PQ": PQ_TABLE, "qpPQ": QPPQ_TABLE}

_DEFORMABLE = (BianchiType.VIIA, BianchiType.IIIA1, BianchiType.VIA)


def table_for(alphabet: str) -> CommutationTable:
    try:
        return _TABLES[alphabet]
    except KeyError:
        raise ValueError(f"unknown alphabet {alphabet!r}") from None


def _sym(name: str, exp: int = 1) -> CoeffPoly:
    return CoeffPoly.symbol(name, exp)


def momentum_poly(table: CommutationTable) -> NCPoly:
    """The operator p: the letter itself, or (P^2 - Q^2)/2."""
    if "p" in table.order:
        return NCPoly.letter(table, "p")
    return NCPoly(table, {("P", "P"): Fraction(1, 2),
                          ("Q", "Q"): Fraction(-1, 2)})


def omega_q_poly(table: CommutationTable) -> NCPoly:
    """The operator omega*q: omega times the letter, or (PQ + QP)/2."""
    if "q" in table.order:
        return NCPoly(table, {("q",): _sym("omega")})
    return NCPoly(table, {("P", "Q"): Fraction(1, 2),
                          ("Q", "P"): Fraction(1, 2)})


def _a_factor(btype: BianchiType) -> CoeffPoly:
    if btype is BianchiType.IIIA1:
        return CoeffPoly.one()
    return _sym("a")


def q_structure(btype: BianchiType, table: CommutationTable = PQ_TABLE):
    """3x3x3 nested list of NCPoly operator structure constants."""
    if btype not in _DEFORMABLE:
        raise UnsupportedLabelError(
            f"type {btype.value} has no quantum counterpart here"
        )
    a = _a_factor(btype)
    n3 = 1 if btype is BianchiType.VIIA else -1
    inv2p0 = CoeffPoly.monomial(Fraction(1, 2), {"p0": -1})
    inv_r = CoeffPoly.monomial(1, {"r": -1})
    P = NCPoly.letter(table, "P")
    Q = NCPoly.letter(table, "Q")
    p_op = momentum_poly(table)
    wq_op = omega_q_poly(table)
    half = NCPoly.scalar(table, Fraction(1, 2))

    mu = [[[NCPoly.zero(table) for _ in range(3)] for _ in range(3)]
          for _ in range(3)]

    def put(i, j, k, value):
        mu[i][j][k] = value
        mu[i][k][j] = -value

    put(0, 0, 1, Q * (a * inv_r))                    # mu^1_12 = a Q / r
    put(1, 0, 1, -(P * (a * inv_r)))                 # mu^2_12 = -a P / r
    put(2, 0, 1, NCPoly.scalar(table, n3))           # mu^3_12
    put(0, 1, 2, half - p_op * inv2p0)               # mu^1_23 = (p0 - p)/(2p0)
    put(1, 1, 2, -(wq_op * inv2p0))                  # mu^2_23
    put(2, 1, 2, -(Q * (a * inv_r)))                 # mu^3_23
    put(0, 2, 0, -(wq_op * inv2p0))                  # mu^1_31
    put(1, 2, 0, p_op * inv2p0 + half)               # mu^2_31 = (p + p0)/(2p0)
    put(2, 2, 0, P * (a * inv_r))                    # mu^3_31
    return mu


@dataclass(frozen=True)
class QElement:
    """Vector with three operator-valued (or scalar) components."""

    components: tuple

    def __post_init__(self):
        if len(self.components) != 3:
            raise ValueError("QElement needs exactly 3 components")


def q_bracket(x: QElement, y: QElement, qsc, conv: str = "left") -> QElement:
    """[x, y] with components sum_{jk} mu^i_{jk} * x^j y^k; conv fixes the
    placement of the structure constant against the component product."""
    if conv not in ("left", "right"):
        raise ValueError(f"unknown convention {conv!r}")
    table = qsc[0][0][1].table
    comps = []
    for i in range(3):
        acc = NCPoly.zero(table)
        for j in range(3):
            for k in range(3):
                m = qsc[i][j][k]
                if m.is_zero:
                    continue
                prod = x.components[j] * y.components[k]
                acc = acc + (m * prod if conv == "left" else prod * m)
        comps.append(acc)
    return QElement(tuple(comps))


def q_jacobiator(x: QElement, y: QElement, z: QElement, qsc,
                 conv: str = "left") -> QElement:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]] with the quantum bracket."""
    out = None
    for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
        term = q_bracket(u, q_bracket(v, w, qsc, conv), qsc, conv)
        if out is None:
            out = term
        else:
            out = QElement(tuple(a + b for a, b in
                                 zip(out.components, term.components)))
    return out


def symbolic_coordinates(table: CommutationTable):
    """Three generic vectors with central coordinate symbols."""
    def vec(prefix):
        return QElement(tuple(
            NCPoly.scalar(table, _sym(f"{prefix}{i}")) for i in (1, 2, 3)
        ))
    return vec("x"), vec("y"), vec("z")


def det_poly() -> CoeffPoly:
    """Determinant of the coordinate rows (x, y, z) as a scalar polynomial."""
    out = CoeffPoly.zero()
    for perm in permutations((1, 2, 3)):
        sign = _perm_sign(perm)
        mono = _sym(f"x{perm[0]}") * _sym(f"y{perm[1]}") * _sym(f"z{perm[2]}")
        out = out + CoeffPoly.number(sign) * mono
    return out


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(3) for j in range(i + 1, 3)
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


_UNIT_COORDS = {
    "x1": 1, "x2": 0, "x3": 0,
    "y1": 0, "y2": 1, "y3": 0,
    "z1": 0, "z2": 0, "z3": 1,
}


def xi_polys(table: CommutationTable) -> tuple[NCPoly, NCPoly]:
    """xi1 = omega*q Q + (p - p0) P and xi2 = omega*q P - (p + p0) Q."""
    P = NCPoly.letter(table, "P")
    Q = NCPoly.letter(table, "Q")
    p_op = momentum_poly(table)
    wq_op = omega_q_poly(table)
    p0 = NCPoly.scalar(table, _sym("p0"))
    xi1 = wq_op * Q + (p_op - p0) * P
    xi2 = wq_op * P - (p_op + p0) * Q
    return xi1, xi2


@dataclass(frozen=True)
class TheoremReport:
    """Machine comparison of the computed Jacobiator against the claimed
    closed forms, per component."""

    btype: BianchiType
    convention: str
    alphabet: str
    exact: tuple
    residuals: tuple
    delta_divisible: tuple

    @property
    def all_exact(self) -> bool:
        return all(self.exact)


def verify_theorem_q(btype: BianchiType, conv: str = "left",
                     alphabet: str = "PQ") -> TheoremReport:
    """Compute the Jacobiator on symbolic coordinates and compare it, as an
    exact polynomial identity, with the claimed components

        J^1 = -(a D / (r p0)) xi1,  J^2 = -(a D / (r p0)) xi2,
        J^3 = (a^2 D / p0) (PQ - QP),

    D being the coordinate determinant.  Also checks that every computed
    component is divisible by D with a coordinate-free quotient.
    """
    table = table_for(alphabet)
    qsc = q_structure(btype, table)
    x, y, z = symbolic_coordinates(table)
    J = q_jacobiator(x, y, z, qsc, conv)

    a = _a_factor(btype)
    D = det_poly()
    inv_rp0 = CoeffPoly.monomial(1, {"r": -1, "p0": -1})
    xi1, xi2 = xi_polys(table)
    P = NCPoly.letter(table, "P")
    Q = NCPoly.letter(table, "Q")
    expected = (
        xi1 * (-(a * D * inv_rp0)),
        xi2 * (-(a * D * inv_rp0)),
        commutator(P, Q) * (a * a * D * CoeffPoly.monomial(1, {"p0": -1})),
    )
    exact, residuals, divisible = [], [], []
    for comp, exp in zip(J.components, expected):
        res = comp - exp
        exact.append(res.is_zero)
        residuals.append(res)
        quotient = comp.substitute_symbols(_UNIT_COORDS)
        divisible.append(comp == quotient * D)
    return TheoremReport(
        btype=btype, convention=conv, alphabet=alphabet,
        exact=tuple(exact), residuals=tuple(residuals),
        delta_divisible=tuple(divisible),
    )


def semiclassical_xi() -> tuple[NCPoly, NCPoly]:
    """xi1, xi2 with the semiclassical constraints read as definitions of
    p and omega*q in the two-letter algebra, normal-ordered."""
    return xi_polys(PQ_TABLE)


def xi_hform() -> tuple[NCPoly, NCPoly]:
    """The semiclassical xi operators with sqrt(2H) kept as the central
    symbol h:

        xi1 = (lambda/2) eps Q + P (h - p0),
        xi2 = -(lambda/2) eps P + Q (h - p0).
    """
    lam_eps_half = _sym("lambda") * _sym("eps") * Fraction(1, 2)
    h_minus_p0 = _sym("h") - _sym("p0")
    xi1 = NCPoly(PQ_TABLE, {("Q",): lam_eps_half, ("P",): h_minus_p0})
    xi2 = NCPoly(PQ_TABLE, {("P",): -lam_eps_half, ("Q",): h_minus_p0})
    return xi1, xi2


from .ncalg import _SYM_INDEX as _NCALG_SYM_INDEX  # noqa: E402

_H_INDEX = _NCALG_SYM_INDEX["h"]


def expand_energy_symbol(x: NCPoly) -> NCPoly:
    """Replace the central symbol h by (P^2 + Q^2)/2 multiplied on the
    RIGHT of each word (the definitional placement; h is central only as a
    symbol, so placement must be fixed before expanding)."""
    table = x.table
    h_op = NCPoly(table, {("P", "P"): Fraction(1, 2),
                          ("Q", "Q"): Fraction(1, 2)})
    out = NCPoly.zero(table)
    for word, coeff in x.terms.items():
        for exps, c in coeff.terms.items():
            k = exps[_H_INDEX]
            if k < 0:
                raise ValueError("negative h-exponent cannot be expanded")
            base = list(exps)
            base[_H_INDEX] = 0
            acc = NCPoly(table, {word: CoeffPoly({tuple(base): c})})
            for _ in range(k):
                acc = acc * h_op
            out = out + acc
    return out


def _jacobi_coefficient(btype: BianchiType) -> CoeffPoly:
    """-(a Delta) / (r p0) with Delta the abstract determinant symbol."""
    a = _a_factor(btype)
    return -(a * _sym("Delta") * CoeffPoly.monomial(1, {"r": -1, "p0": -1}))


def semiclassical_jacobi(btype: BianchiType) -> list[NCPoly]:
    """Jacobiator components in the semiclassical two-letter calculus,
    proportional to the abstract determinant symbol Delta."""
    if btype not in _DEFORMABLE:
        raise UnsupportedLabelError(
            f"type {btype.value} has no quantum counterpart here"
        )
    coef = _jacobi_coefficient(btype)
    xi1, xi2 = semiclassical_xi()
    a = _a_factor(btype)
    j3 = NCPoly.scalar(
        PQ_TABLE,
        _sym("lambda") * _sym("eps") * a * a * _sym("Delta")
        * CoeffPoly.monomial(1, {"p0": -1}),
    )
    return [xi1 * coef, xi2 * coef, j3]


def semiclassical_jacobi_hform(btype: BianchiType) -> list[NCPoly]:
    """Same components with sqrt(2H) kept central (input to the H = E
    reduction)."""
    if btype not in _DEFORMABLE:
        raise UnsupportedLabelError(
            f"type {btype.value} has no quantum counterpart here"
        )
    coef = _jacobi_coefficient(btype)
    xi1, xi2 = xi_hform()
    return [xi1 * coef, xi2 * coef, semiclassical_jacobi(btype)[2]]


_H_EQ_E = {"h": CoeffPoly.symbol("p0"),
           "eps": CoeffPoly.monomial(Fraction(1, 2),
                                     {"omega": 1, "p0": -1})}


def corollary_HE(btype: BianchiType) -> list[NCPoly]:
    """Jacobiator components under energy conservation: h -> p0 and
    eps -> omega/(2 p0)."""
    return [c.substitute_symbols(_H_EQ_E)
            for c in semiclassical_jacobi_hform(btype)]


@dataclass(frozen=True)
class DerivativeAlgebraReport:
    """Commutator structure of the reduced Jacobiator components."""

    btype: BianchiType
    C: CoeffPoly
    beta_sq: CoeffPoly
    bracket_13_zero: bool
    bracket_23_zero: bool
    bracket_12_matches: bool
    basis_brackets_ok: bool
    rescaled_mu23_1: Fraction

    @property
    def heisenberg_ok(self) -> bool:
        """The rescaled basis reproduces the Heisenberg (type II) table."""
        return (self.bracket_13_zero and self.bracket_23_zero
                and self.bracket_12_matches and self.basis_brackets_ok
                and self.rescaled_mu23_1 == 1)


def _reduce_he(x: NCPoly) -> NCPoly:
    # fresh eps factors appear from QP swaps after the reduction
    return x.substitute_symbols({"eps": _H_EQ_E["eps"]})


def derivative_algebra(btype: BianchiType) -> DerivativeAlgebraReport:
    """Commutators of the H = E Jacobiator components.

    [J1, J3] = 0 = [J2, J3] and [J1, J2] = C J3 with
    C = lambda^2 omega^2 Delta / (32 p0^4); the basis e1 = -Delta J3,
    e2 = -Delta J1, e3 = -Delta J2 then satisfies [e2, e3] = beta^2 e1 with
    beta^2 = -C Delta, i.e. the Heisenberg table up to the beta scaling
    (removed by dividing e2, e3 by beta).
    """
    j1, j2, j3 = corollary_HE(btype)
    br12 = _reduce_he(commutator(j1, j2))
    br13 = _reduce_he(commutator(j1, j3))
    br23 = _reduce_he(commutator(j2, j3))
    C = br12.scalar_part() / j3.scalar_part()
    beta_sq = -(C * _sym("Delta"))
    minus_delta = -_sym("Delta")
    e1 = j3 * minus_delta
    e2 = j1 * minus_delta
    e3 = j2 * minus_delta
    br_e23 = _reduce_he(commutator(e2, e3))
    br_e12 = _reduce_he(commutator(e1, e2))
    br_e13 = _reduce_he(commutator(e1, e3))
    basis_ok = (br_e23 == e1 * beta_sq) and br_e12.is_zero \
        and br_e13.is_zero
    if basis_ok:
        # [e2/beta, e3/beta] = e1 * (this ratio): explicit isomorphism check
        ratio = (br_e23.scalar_part()
                 / (beta_sq * e1.scalar_part())).constant_value()
    else:
        ratio = Fraction(0)
    return DerivativeAlgebraReport(
        btype=btype,
        C=C,
        beta_sq=beta_sq,
        bracket_13_zero=br13.is_zero,
        bracket_23_zero=br23.is_zero,
        bracket_12_matches=(br12 == j3 * C),
        basis_brackets_ok=basis_ok,
        rescaled_mu23_1=ratio,
    )


def spectrum_determinant(n: int) -> float:
    """|determinant| selected by the oscillator spectrum: 4 sqrt(2) (2n+1)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return 4 * math.sqrt(2) * (2 * n + 1)
