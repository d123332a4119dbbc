"""Exact polynomial-matrix computations on the dual side.

Covers symplectic-similitude membership, E(v)-elementary-divisor
patterns, Iwahori shape decomposition, the algebraic monodromy
condition, the regular colength-one universal family, and the torus
fixed-point set constructors.  Characteristic-0 computations run over
exact rationals with the prime p an ordinary scalar and E(v) = v + p;
special-fiber computations run over F_q, where E(v) = v.  No floating
point anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .base import FiniteWeyl, W_ALL, W_E, W_LONG, W_S1, W_S2, Weight, std_character
from .affine import (
    HIGHEST_RESTRICTED,
    W0,
    ExtAffine,
    alcove_of,
    bruhat_lower_interval,
    compose,
    compose_all,
    dominant_down_set,
    elem_of_alcove,
    finite,
    in_omega,
    invert,
    is_restricted_element,
    omega_part,
    star,
    translation,
)
from .exactalg import LaurentPoly, PrimeField, RatFunc, e_valuation

__all__ = [
    "PolyMat",
    "MonodromyParams",
    "MonodromyDefect",
    "RegColOneParams",
    "SimilitudeResult",
    "e_poly",
    "j_matrix",
    "weyl_matrix",
    "monomial_matrix",
    "symplectic_similitude",
    "e_divisor_pattern",
    "dominance_leq",
    "shape_of",
    "monodromy_defect",
    "build_regcolone_matrix",
    "regcolone_relation_holds",
    "regcolone_coordinates",
    "fixed_point_set_T",
    "fixed_point_set_colone",
    "random_iwahori",
]


# ---------------------------------------------------------------------------
# 4x4 matrices of Laurent polynomials


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def _adjugate(rows):
    n = len(rows)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            cof = _det(minor)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof
    return out


class PolyMat:
    """4x4 matrix of Laurent polynomials over a fixed field."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(self._coerce_entry(field, x) for x in row) for row in rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("PolyMat needs a 4x4 entry array")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)

    @staticmethod
    def _coerce_entry(field, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            if x.field != field:
                raise TypeError("entry field mismatch")
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(field, x)
        raise TypeError("cannot use %r as a matrix entry" % (x,))

    def __setattr__(self, name, value):
        raise AttributeError("PolyMat is immutable")

    @staticmethod
    def identity(field) -> "PolyMat":
        one = LaurentPoly.one(field)
        zero = LaurentPoly.zero(field)
        return PolyMat(field, [[one if i == j else zero for j in range(4)]
                               for i in range(4)])

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def transpose(self) -> "PolyMat":
        return PolyMat(self.field, tuple(zip(*self.rows)))

    def __mul__(self, other):
        if isinstance(other, PolyMat):
            if other.field != self.field:
                raise TypeError("matrix field mismatch")
            rows = [[sum((self.rows[i][k] * other.rows[k][j] for k in range(4)),
                         LaurentPoly.zero(self.field)) for j in range(4)]
                    for i in range(4)]
            return PolyMat(self.field, rows)
        if isinstance(other, (LaurentPoly, int, Fraction)):
            c = self._coerce_entry(self.field, other)
            return PolyMat(self.field, [[e * c for e in row] for row in self.rows])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self * other
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, PolyMat) or other.field != self.field:
            return NotImplemented
        return PolyMat(self.field, [[a + b for a, b in zip(r1, r2)]
                                    for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, PolyMat) or other.field != self.field:
            return NotImplemented
        return PolyMat(self.field, [[a - b for a, b in zip(r1, r2)]
                                    for r1, r2 in zip(self.rows, other.rows)])

    def __eq__(self, other):
        if not isinstance(other, PolyMat):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def det(self) -> LaurentPoly:
        return _det([list(r) for r in self.rows])

    def adjugate(self) -> "PolyMat":
        return PolyMat(self.field, _adjugate([list(r) for r in self.rows]))

    def derivative(self) -> "PolyMat":
        return PolyMat(self.field, [[e.derivative() for e in row] for row in self.rows])

    def inverse_unit_det(self) -> "PolyMat":
        """Inverse when det is a unit of the Laurent ring (a monomial)."""
        d = self.det()
        if d.is_zero:
            raise ValueError("matrix is singular")
        if not d.is_monomial:
            raise ValueError("determinant %s is not a unit" % d.display())
        exp, coef = d.coeffs[0]
        dinv = LaurentPoly(self.field, {-exp: self.field.inv(coef)})
        return self.adjugate() * dinv

    def to_json_obj(self) -> list:
        return [[{"coeffs": e.to_coeff_json()} for e in row] for row in self.rows]

    @staticmethod
    def from_json_obj(field, obj) -> "PolyMat":
        rows = [[LaurentPoly.from_coeff_json(field, cell["coeffs"]) for cell in row]
                for row in obj]
        return PolyMat(field, rows)

    def display(self) -> str:
        cells = [[e.display() for e in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + " | ".join(c.rjust(width) for c in row) + " ]"
                         for row in cells)

    def __repr__(self):
        return "PolyMat over %r:\n%s" % (self.field, self.display())


def e_poly(field, p: int) -> LaurentPoly:
    """E(v) = v + p; over F_p this is just v."""
    return LaurentPoly(field, {1: field.one, 0: field.coerce(p)})


# the symplectic form: antidiagonal (1, 1, -1, -1)
_J_SUPPORT = ((0, 3, 1), (1, 2, 1), (2, 1, -1), (3, 0, -1))


def j_matrix(field) -> PolyMat:
    rows = [[LaurentPoly.zero(field)] * 4 for _ in range(4)]
    for i, j, s in _J_SUPPORT:
        rows[i][j] = LaurentPoly.const(field, s)
    return PolyMat(field, rows)


# Weyl generators acting on the character-exponent coordinates: s1 is
# the middle swap, s2 the outer double swap (the conjugation identity
# w diag(v^t) w^-1 = diag(v^(w t)) forces this assignment; signs keep
# the form).
_GEN_ROWS = {
    "1": ((1, 0, 0, 0), (0, 0, 1, 0), (0, -1, 0, 0), (0, 0, 0, 1)),
    "2": ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)),
}


def weyl_matrix(w: FiniteWeyl, field) -> PolyMat:
    out = PolyMat.identity(field)
    for ch in w.word:
        out = out * PolyMat(field, _GEN_ROWS[ch])
    return out


def monomial_matrix(z: ExtAffine, field) -> PolyMat:
    """Monomial representative of the dual element z = t_nu w:
    diag(v^(std exponents of nu)) times the Weyl matrix of w."""
    exps = std_character(z.nu)
    wm = weyl_matrix(z.w, field)
    rows = [[wm.rows[i][j].shift(exps[i]) for j in range(4)] for i in range(4)]
    return PolyMat(field, rows)


# ---------------------------------------------------------------------------
# symplectic similitude


@dataclass(frozen=True)
class SimilitudeResult:
    ok: bool
    scalar: LaurentPoly | None
    failed_entry: tuple[int, int] | None
    v_order: int | None = None
    e_order: int | None = None
    unit_form: bool = False


def symplectic_similitude(A: PolyMat, p: int | None = None) -> SimilitudeResult:
    """Check transpose(A) * J * A == c * J and report the similitude c.

    When c factors exactly as scalar * v^a * E(v)^b the orders a, b are
    reported and unit_form is set (over F_q any E-power is a v-power, so
    unit_form there just means c is a monomial).
    """
    if A.det().is_zero:
        raise ValueError("matrix is singular")
    field = A.field
    S = A.transpose() * j_matrix(field) * A
    c = S.entry(0, 3)
    jrows = j_matrix(field).rows
    for i in range(4):
        for j in range(4):
            if S.rows[i][j] != c * jrows[i][j]:
                return SimilitudeResult(False, None, (i, j))
    v_ord = c.low_degree
    e_ord = None
    unit = False
    stripped = c.shift(-v_ord)
    if field.char != 0:
        e_ord = v_ord
        unit = stripped.is_constant
    elif p is not None:
        e_ord = e_valuation(c, p)
        rest = stripped
        ep = e_poly(field, p)
        for _ in range(e_ord):
            rest = _exact_quotient(rest, ep)
        unit = rest.is_constant
    else:
        unit = stripped.is_constant
    return SimilitudeResult(True, c, None, v_ord, e_ord, unit)


def _exact_quotient(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    from .exactalg import exact_div

    q = exact_div(a, b)
    assert q is not None, "division claimed exact was not"
    return q


# ---------------------------------------------------------------------------
# elementary divisor patterns


def e_divisor_pattern(A: PolyMat, p: int) -> tuple[int, int, int, int]:
    """Exponents of the E(v)-elementary divisors, sorted decreasingly.

    d_k is the minimum E-adic valuation over all k x k minors; the
    returned tuple is (d1, d2-d1, d3-d2, d4-d3) sorted in decreasing
    order.  E-adic means order of vanishing at v = -p over the
    rationals and plain v-adic valuation over F_q.
    """
    if A.det().is_zero:
        raise ValueError("matrix is singular")
    rows = [list(r) for r in A.rows]
    d = []
    for k in range(1, 5):
        best = None
        for ri in itertools.combinations(range(4), k):
            for ci in itertools.combinations(range(4), k):
                minor = _det([[rows[i][j] for j in ci] for i in ri])
                if minor.is_zero:
                    continue
                val = e_valuation(minor, p)
                if best is None or val < best:
                    best = val
        assert best is not None, "nonsingular matrix with all k-minors zero"
        d.append(best)
    steps = (d[0], d[1] - d[0], d[2] - d[1], d[3] - d[2])
    return tuple(sorted(steps, reverse=True))


def dominance_leq(mu, lam) -> bool:
    """Dominance comparison of decreasing integer tuples: every partial
    sum of mu is at most the corresponding partial sum of lam."""
    smu = slam = 0
    for x, y in zip(mu, lam):
        smu += x
        slam += y
        if smu > slam:
            return False
    return True


# ---------------------------------------------------------------------------
# Iwahori shapes


@lru_cache(maxsize=1)
def _weyl_patterns() -> dict:
    from .exactalg import QQ

    out = {}
    for w in W_ALL:
        m = weyl_matrix(w, QQ)
        support = frozenset((i, j) for i in range(4) for j in range(4)
                            if not m.rows[i][j].is_zero)
        out[support] = w
    return out


def _series_div(num: LaurentPoly, piv: LaurentPoly, prec: int) -> LaurentPoly:
    """num / piv as a truncated Laurent series mod v^prec."""
    field = num.field
    m = piv.low_degree
    lead = piv.trailing_coeff
    q = LaurentPoly.zero(field)
    rem = num
    while not rem.is_zero:
        k = rem.low_degree
        if k - m >= prec:
            break
        c = field.div(rem.trailing_coeff, lead)
        t = LaurentPoly(field, {k - m: c})
        q = q + t
        rem = (rem - t * piv).truncate(prec + m)
    return q


def shape_of(A: PolyMat) -> ExtAffine:
    """The element z with A in I z I for the Iwahori I (integral, upper
    triangular mod v), over a prime field.

    Valuation-pivot elimination: repeatedly pick the entry minimizing
    (v-adic valuation, bottom-most row, left-most column), then clear
    its row and column with Iwahori-allowed operations.  The final
    monomial pattern is asserted to lie in the GSp4 torus normalizer.
    """
    field = A.field
    if not isinstance(field, PrimeField):
        raise ValueError("shape is computed on the special fiber; use a prime field")
    det = A.det()
    if det.is_zero:
        raise ValueError("matrix is singular")
    # normalize entries to nonnegative valuation; a global v-power is a
    # central translation which we restore at the end
    low = min(e.low_degree for row in A.rows for e in row if not e.is_zero)
    shift = -min(low, 0)
    work = [[e.shift(shift) for e in row] for row in A.rows]
    dval = det.low_degree + 4 * shift
    maxdeg = max(e.degree for row in work for e in row if not e.is_zero)
    prec = dval + maxdeg + 4
    rows_left = {0, 1, 2, 3}
    cols_left = {0, 1, 2, 3}
    pivots = {}
    for _ in range(4):
        best = None
        for r in rows_left:
            for c in cols_left:
                e = work[r][c]
                if e.is_zero:
                    continue
                key = (e.low_degree, -r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            raise ValueError("matrix is singular")
        _, r, c = best
        piv = work[r][c]
        for i in rows_left:
            if i == r or work[i][c].is_zero:
                continue
            q = _series_div(work[i][c], piv, prec)
            assert q.is_zero or q.low_degree >= (1 if i > r else 0), \
                "pivot rule produced a non-Iwahori row operation"
            for j in cols_left:
                work[i][j] = (work[i][j] - q * work[r][j]).truncate(prec)
        for j in cols_left:
            if j == c or work[r][j].is_zero:
                continue
            q = _series_div(work[r][j], piv, prec)
            assert q.is_zero or q.low_degree >= (1 if j < c else 0), \
                "pivot rule produced a non-Iwahori column operation"
            for i in rows_left:
                work[i][j] = (work[i][j] - q * work[i][c]).truncate(prec)
        pivots[r] = (c, piv.low_degree)
        rows_left.remove(r)
        cols_left.remove(c)
    support = frozenset((r, pivots[r][0]) for r in pivots)
    w = _weyl_patterns().get(support)
    assert w is not None, \
        "shape elimination did not produce a symplectic monomial pattern"
    t = tuple(pivots[r][1] for r in range(4))
    cc = t[3]
    bb = t[2] - cc
    aa = t[1] - cc
    assert t[0] == aa + bb + cc, \
        "shape elimination produced incompatible monomial exponents"
    z = compose(translation(Weight(aa, bb, cc)), finite(w))
    if shift:
        # undo the global v^shift normalization: a central translation
        z = compose(translation(Weight(0, 0, -shift)), z)
    return z


# ---------------------------------------------------------------------------
# the algebraic monodromy condition


@dataclass(frozen=True)
class MonodromyParams:
    """The parameter triple of the monodromy operator, with the prime."""

    field: object
    a: tuple
    p: int

    @staticmethod
    def make(field, a1, a2, a3, p: int) -> "MonodromyParams":
        a = tuple(field.coerce(x) for x in (a1, a2, a3))
        return MonodromyParams(field, a, p)

    def diag_values(self) -> tuple:
        a1, a2, a3 = self.a
        f = self.field
        return (a1, a2, f.sub(a3, a2), f.sub(a3, a1))

    def diag_matrix(self) -> PolyMat:
        zero = LaurentPoly.zero(self.field)
        vals = [LaurentPoly.const(self.field, x) for x in self.diag_values()]
        return PolyMat(self.field, [[vals[i] if i == j else zero for j in range(4)]
                                    for i in range(4)])

    def _int_values(self) -> tuple[int, int, int]:
        out = []
        for x in self.a:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("genericity needs integer parameter values")
                out.append(x.numerator)
            else:
                out.append(int(x))
        return tuple(out)

    def is_generic(self, m: int) -> bool:
        """m-genericity: every root pairing stays m away from pZ."""
        a1, a2, a3 = self._int_values()
        for val in (a1 - a2, 2 * a2 - a3, a1 + a2 - a3, 2 * a1 - a3):
            r = val % self.p
            if not (m < r < self.p - m):
                return False
        return True

    def act(self, w: FiniteWeyl) -> "MonodromyParams":
        """Weyl action on the parameter triple matching conjugation by
        the matrix of w (the character-exponent realization crosses the
        two generators relative to the coweight coordinates)."""
        d, e, f = self.a
        fld = self.field
        for ch in reversed(w.word):
            if ch == "1":
                e = fld.sub(f, e)
            else:
                d, e = e, d
        return MonodromyParams(fld, (d, e, f), self.p)


@dataclass(frozen=True)
class MonodromyDefect:
    clause: int
    entry: tuple[int, int] | None
    detail: str

    def display(self) -> str:
        where = "" if self.entry is None else " at entry (%d,%d)" % self.entry
        return "clause (%s)%s: %s" % ("i" * self.clause, where, self.detail)


def monodromy_defect(A: PolyMat, params: MonodromyParams):
    """Test the algebraic monodromy condition; None means PASS.

    M = v*(dA/dv)*A^-1 + A*Diag(std exponents of a)*A^-1 must satisfy,
    after clearing the single allowed pole: X = (v+p)*M has
    (i) unit denominators only, (ii) transpose(X)*J + J*X scalar * J,
    (iii) reduction mod v upper triangular (the Borel reading).
    """
    if A.field != params.field:
        raise TypeError("matrix and parameters live over different fields")
    field = A.field
    det = A.det()
    if det.is_zero:
        raise ValueError("matrix is singular")
    vpoly = LaurentPoly.v_power(field, 1)
    num = (vpoly * A.derivative() + A * params.diag_matrix()) * A.adjugate()
    ep = e_poly(field, params.p)
    x = [[RatFunc(ep * num.rows[i][j], det) for j in range(4)] for i in range(4)]
    for i in range(4):
        for j in range(4):
            if not x[i][j].is_laurent:
                return MonodromyDefect(
                    1, (i, j),
                    "denominator %s is not a unit" % x[i][j].den.display())
    xm = PolyMat(field, [[e.num for e in row] for row in x])
    jm = j_matrix(field)
    s = xm.transpose() * jm + jm * xm
    scalar = s.entry(0, 3)
    for i in range(4):
        for j in range(4):
            if s.rows[i][j] != scalar * jm.rows[i][j]:
                return MonodromyDefect(
                    2, (i, j), "X^t J + J X is not a multiple of J")
    for i in range(4):
        for j in range(4):
            e = xm.rows[i][j]
            if e.is_zero:
                continue
            if e.low_degree < 0:
                return MonodromyDefect(3, (i, j), "pole at v = 0")
            if i > j and not field.is_zero(e.constant_term):
                return MonodromyDefect(
                    3, (i, j), "reduction mod v is not upper triangular")
    return None


# ---------------------------------------------------------------------------
# the regular colength-one universal family


@dataclass(frozen=True)
class RegColOneParams:
    """Scalar parameters of the regular colength-one universal matrix.

    The c's are the matrix coordinates; a0..a3 and e are the opaque
    weight parameters entering only through the solved relation.
    """

    field: object
    c00: object
    c21: object
    c13: object
    c31: object
    c31p: object
    c33: object
    c33p: object
    c33pp: object
    a0: object
    a1: object
    a2: object
    a3: object
    e: object

    @staticmethod
    def make(field, **vals) -> "RegColOneParams":
        names = ("c00", "c21", "c13", "c31", "c31p", "c33", "c33p", "c33pp",
                 "a0", "a1", "a2", "a3", "e")
        missing = [n for n in names if n not in vals]
        if missing:
            raise ValueError("missing parameters: %s" % ", ".join(missing))
        extra = [n for n in vals if n not in names]
        if extra:
            raise ValueError("unknown parameters: %s" % ", ".join(extra))
        coerced = {n: field.coerce(vals[n]) for n in names}
        params = RegColOneParams(field, **coerced)
        f = field
        den = f.sub(f.sub(f.add(params.e, params.a0), params.a3), f.one)
        if f.is_zero(den):
            raise ValueError("denominator e + a0 - a3 - 1 vanishes")
        return params

    @staticmethod
    def admissible(field, p: int, c00, c21, c13, c31, c31p, c33, c33p,
                   a0=1, a1=2, a2=3, a3=1, e=5) -> "RegColOneParams":
        """Symplectic member of the family: c33'' is pinned by the
        similitude condition c00*(c33'' + p*c33' + p^2*c33) = p^3."""
        f = field
        c00 = f.coerce(c00)
        if f.is_zero(c00):
            raise ValueError("c00 must be invertible")
        c33 = f.coerce(c33)
        c33p = f.coerce(c33p)
        pc = f.coerce(p)
        c33pp = f.sub(f.sub(f.div(f.mul(pc, f.mul(pc, pc)), c00),
                            f.mul(c33, f.mul(pc, pc))),
                      f.mul(c33p, pc))
        return RegColOneParams.make(
            field, c00=c00, c21=c21, c13=c13, c31=c31, c31p=c31p,
            c33=c33, c33p=c33p, c33pp=c33pp, a0=a0, a1=a1, a2=a2, a3=a3, e=e)

    @staticmethod
    def solved(field, p: int, c00, c21, c13, c31, a) -> "RegColOneParams":
        """Monodromy-satisfying instance: c33 from the solved relation,
        then c31', c33', c33'' eliminated per the monodromy condition.

        ``a`` is the monodromy parameter triple (a1, a2, a3); the opaque
        display parameters are derived from it."""
        f = field
        a1m, a2m, a3m = (f.coerce(x) for x in a)
        c00 = f.coerce(c00)
        c21 = f.coerce(c21)
        c13 = f.coerce(c13)
        c31 = f.coerce(c31)
        pc = f.coerce(p)
        if f.is_zero(c00):
            raise ValueError("c00 must be invertible")
        big_x = f.sub(a3m, f.add(a1m, a1m))
        big_y = f.sub(a3m, f.add(a2m, a2m))
        for d in (f.sub(a1m, a2m), big_x, f.sub(big_x, f.one), f.add(big_x, f.one)):
            if f.is_zero(d):
                raise ValueError("denominator vanishing: parameters not generic enough")
        # c33 from the solved relation c00*[(Y-1) c13 c31 + (X+1) c33] = p (X-1)
        c33 = f.div(
            f.sub(f.div(f.mul(pc, f.sub(big_x, f.one)), c00),
                  f.mul(f.sub(big_y, f.one), f.mul(c13, c31))),
            f.add(big_x, f.one))
        # the three eliminated variables
        c31p = f.neg(f.div(
            f.mul(pc, f.add(f.mul(f.mul(c13, c21),
                                  f.sub(f.add(a1m, a2m), a3m)), c31)),
            f.sub(a1m, a2m)))
        two = f.coerce(2)
        c33p = f.div(
            f.sub(f.sub(f.mul(f.mul(two, pc), c33),
                        f.mul(f.mul(c13, c31p), big_y)),
                  f.mul(f.mul(pc, f.mul(c13, c31)),
                        f.add(f.neg(big_y), two))),
            big_x)
        c33pp = f.sub(f.sub(f.div(f.mul(pc, f.mul(pc, pc)), c00),
                            f.mul(c33, f.mul(pc, pc))),
                      f.mul(c33p, pc))
        # display parameters via the dictionary fixed by the derivation
        a0 = f.add(f.sub(a3m, a1m), f.one)
        a1 = f.sub(a3m, a2m)
        a2 = f.add(a2m, f.one)
        a3 = a1m
        e = f.neg(f.one)
        return RegColOneParams.make(
            field, c00=c00, c21=c21, c13=c13, c31=c31, c31p=c31p,
            c33=c33, c33p=c33p, c33pp=c33pp, a0=a0, a1=a1, a2=a2, a3=a3, e=e)


def monodromy_params_of(params: RegColOneParams, p: int) -> MonodromyParams:
    """Invert the display dictionary back to the monodromy triple."""
    f = params.field
    a1m = params.a3
    a2m = f.sub(params.a2, f.one)
    a3m = f.sub(f.add(params.a1, params.a2), f.one)
    if params.e != f.neg(f.one):
        raise ValueError("parameters are not in the image of the display dictionary")
    if params.a0 != f.sub(f.add(params.a1, params.a2), params.a3):
        raise ValueError("parameters are not in the image of the display dictionary")
    return MonodromyParams(f, (a1m, a2m, a3m), p)


def build_regcolone_matrix(params: RegColOneParams, p: int) -> PolyMat:
    """The displayed universal matrix of the regular colength-one locus,
    with E(v) = v + p."""
    f = params.field
    pc = f.coerce(p)
    ep = e_poly(f, p)
    vp = LaurentPoly.v_power(f, 1)
    c = LaurentPoly.const

    def ct(x):
        return c(f, x)

    c00, c21, c13, c31 = params.c00, params.c21, params.c13, params.c31
    c31p, c33, c33p, c33pp = params.c31p, params.c33, params.c33p, params.c33pp
    rows = [
        [ct(c00),
         ct(c00) * (ct(c31p) + ct(c31) * ep),
         ct(f.mul(c00, c13)),
         ct(f.sub(f.add(f.mul(c00, c33p), f.mul(pc, f.mul(c00, c33))),
                  f.mul(pc, pc)))
         + ct(f.sub(f.mul(c00, c33), pc)) * ep - ep * ep],
        [ct(f.zero), ep * ep, ct(f.zero), ct(c13) * ep * ep],
        [ct(f.zero),
         ct(c21) * vp * ep,
         ep,
         -(ct(c31p) + ct(f.mul(pc, f.mul(c13, c21)))) * ep
         + ct(f.sub(f.mul(c13, c21), c31)) * ep * ep],
        [vp,
         ct(c31p) * vp + ct(c31) * vp * ep,
         ct(c13) * vp,
         ct(c33pp) + ct(c33p) * ep + ct(c33) * ep * ep],
    ]
    return PolyMat(f, rows)


def regcolone_relation_holds(params: RegColOneParams, p: int) -> bool:
    """The solved relation from the proof, in the display parameters:
    c00*[(e+a1-a2+1)/(e+a0-a3-1) c13 c31 + (a0-a3-1-e)/(e+a0-a3-1) c33] = p."""
    f = params.field
    y = regcolone_coordinates(params, p)["y"]
    return f.mul(params.c00, y) == f.coerce(p)


def regcolone_coordinates(params: RegColOneParams, p: int) -> dict:
    """Free coordinates of the solved family: three affine coordinates
    and the X_p pair (x, y) with x*y = p."""
    f = params.field
    den = f.sub(f.sub(f.add(params.e, params.a0), params.a3), f.one)
    num1 = f.add(f.sub(f.add(params.e, params.a1), params.a2), f.one)
    num2 = f.sub(f.sub(f.sub(params.a0, params.a3), f.one), params.e)
    y = f.add(f.div(f.mul(num1, f.mul(params.c13, params.c31)), den),
              f.div(f.mul(num2, params.c33), den))
    return {
        "z1": params.c21,
        "z2": params.c13,
        "z3": params.c31,
        "x": params.c00,
        "y": y,
        "xy": f.mul(params.c00, y),
    }


# free-parameter counts of the parabolic factorization: the torus case
# is a 4-dimensional affine space; the colength-one case contributes 3
# affine coordinates plus the X_p fiber {x*y = p}
FREE_PARAMS_T = 4
REGCOLONE_AFFINE_COORDS = ("c21", "c13", "c31")
REGCOLONE_XP_COORDS = ("c00", "y")


# ---------------------------------------------------------------------------
# torus fixed-point sets


@lru_cache(maxsize=1)
def _ap_prime_slot_pairs() -> frozenset:
    from .weights import enumerate_ap_prime

    return frozenset((pr.w1[0], pr.w2[0]) for pr in enumerate_ap_prime(1))


def _as_slots(x):
    if isinstance(x, ExtAffine):
        return (x,), True
    return tuple(x), False


def fixed_point_set_T(w1, w2):
    """Torus fixed points {star(w2^-1 wh^-1 w) : w Bruhat-below w0 w1},
    per embedding.  Accepts bare elements or f-tuples."""
    slots1, bare1 = _as_slots(w1)
    slots2, bare2 = _as_slots(w2)
    if len(slots1) != len(slots2) or bare1 != bare2:
        raise ValueError("malformed pair: mismatched embeddings")
    valid = _ap_prime_slot_pairs()
    out = []
    for j, (a, b) in enumerate(zip(slots1, slots2)):
        if (a, b) not in valid:
            raise ValueError("malformed pair at embedding %d: not an AP' position" % j)
        interval = bruhat_lower_interval(compose(W0, a))
        out.append(frozenset(
            star(compose_all(invert(b), invert(HIGHEST_RESTRICTED), wt))
            for wt in interval))
    return out[0] if bare1 else tuple(out)


_SIMPLE_BY_INDEX = {1: W_S1, 2: W_S2}


def fixed_point_set_colone(w1, s: int):
    """Colength-one fixed points {star(w1^-1 wh^-1 s w0 w) : w arrow-below
    w1 in the dominant range}; for s = s2 the length-zero w are excluded."""
    if s not in _SIMPLE_BY_INDEX:
        raise ValueError("s must be 1 or 2")
    slots, bare = _as_slots(w1)
    sw = finite(_SIMPLE_BY_INDEX[s])
    out = []
    for j, a in enumerate(slots):
        if not is_restricted_element(a):
            raise ValueError("w1 must be restricted at embedding %d" % j)
        omega = omega_part(a)
        found = set()
        for alc in dominant_down_set(alcove_of(a)):
            wt = compose(elem_of_alcove(alc), omega)
            if s == 2 and in_omega(wt):
                continue
            found.add(star(compose_all(
                invert(a), invert(HIGHEST_RESTRICTED), sw, W0, wt)))
        out.append(frozenset(found))
    return out[0] if bare else tuple(out)


# ---------------------------------------------------------------------------
# random Iwahori elements (symplectic)


# positive root groups: positions and signs making t(x) J x = J
_ROOT_POSITIONS = (
    (((0, 1), 1), ((2, 3), -1)),   # alpha1
    (((1, 2), 1),),                # alpha2
    (((0, 2), 1), ((1, 3), 1)),    # alpha1+alpha2
    (((0, 3), 1),),                # 2*alpha1+alpha2
)


def _root_matrix(field, spots, coeff: LaurentPoly, lower: bool) -> PolyMat:
    rows = [[LaurentPoly.one(field) if i == j else LaurentPoly.zero(field)
             for j in range(4)] for i in range(4)]
    for (i, j), sign in spots:
        if lower:
            i, j = j, i
        rows[i][j] = coeff if sign == 1 else -coeff
    return PolyMat(field, rows)


def _random_poly(field, rng, min_exp: int, max_exp: int) -> LaurentPoly:
    q = field.char
    return LaurentPoly(field, {e: rng.randrange(q) for e in range(min_exp, max_exp + 1)})


def random_iwahori(field: PrimeField, rng, max_deg: int = 2) -> PolyMat:
    """Random element of the symplectic Iwahori over F_q: integral
    entries, upper triangular mod v."""
    if not isinstance(field, PrimeField):
        raise ValueError("Iwahori sampling runs over a prime field")
    q = field.char
    t1 = rng.randrange(1, q)
    t2 = rng.randrange(1, q)
    t3 = rng.randrange(1, q)
    t4 = field.div(field.mul(t2, t3), t1)
    zero = LaurentPoly.zero(field)
    diag = [field.coerce(x) for x in (t1, t2, t3, t4)]
    out = PolyMat(field, [[LaurentPoly.const(field, diag[i]) if i == j else zero
                           for j in range(4)] for i in range(4)])
    for lower in (False, True, False):
        for spots in _ROOT_POSITIONS:
            coeff = _random_poly(field, rng, 1 if lower else 0, max_deg)
            if coeff.is_zero:
                continue
            out = out * _root_matrix(field, spots, coeff, lower)
    return out


def _selfcheck() -> None:
    from .exactalg import QQ

    jq = j_matrix(QQ)
    for w in W_ALL:
        m = weyl_matrix(w, QQ)
        assert m.transpose() * jq * m == jq, "Weyl matrix breaks the form"
    z = compose(translation(Weight(2, 1, 0)), finite(W_E))
    assert monomial_matrix(z, QQ).det().low_degree == 6
    ep = e_poly(PrimeField(5), 5)
    assert ep == LaurentPoly.v_power(PrimeField(5), 1)


_selfcheck()
