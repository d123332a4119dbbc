"""Cycle bookkeeping on component labels and the explicit cycle formulas.

Cycles are finitely supported integer combinations of Serre weights, one
basis label per irreducible component.  The module provides the two-term
cycle attached to a weight with a second-alcove embedding, Weyl-module
classes in the Grothendieck group, the upper-arrow support bound, and the
component count for extremal and colength-one configurations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .base import ETA, W_ALL, Weight
from .admissible import irregular_family
from .affine import (
    HIGHEST_RESTRICTED,
    RESTRICTED_ALCOVES,
    W0,
    alcove_of,
    compose_all,
    diamond,
    elem_of_alcove,
    in_omega,
    invert,
    orbit_weight,
    restricted_alcove_index,
    translation,
    weight_alcove_index,
    weight_arrow_leq,
)
from .weights import (
    GenericityError,
    SerreWeight,
    TamePresentation,
    compat_element,
    enumerate_ap_prime,
    intersect_w_jh,
    is_p_restricted,
    jh_set,
    type_from_target,
    w_question_set,
    weight_class_arrow_leq,
)

log = logging.getLogger(__name__)

ZERO = Weight(0, 0, 0)


# --- formal sums ------------------------------------------------------------


class FormalSum:
    """Finitely supported integer combination of Serre weights."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        data: dict[SerreWeight, int] = {}
        if coeffs is not None:
            items = coeffs.items() if hasattr(coeffs, "items") else coeffs
            for sigma, n in items:
                if not isinstance(sigma, SerreWeight):
                    raise TypeError("keys must be Serre weights")
                data[sigma] = data.get(sigma, 0) + int(n)
        self._coeffs = {k: v for k, v in data.items() if v != 0}

    def coeff(self, sigma: SerreWeight) -> int:
        return self._coeffs.get(sigma, 0)

    def support(self) -> tuple[SerreWeight, ...]:
        return tuple(sorted(self._coeffs, key=lambda s: s.sort_key()))

    def items(self) -> tuple[tuple[SerreWeight, int], ...]:
        return tuple((s, self._coeffs[s]) for s in self.support())

    def is_effective(self) -> bool:
        return all(v >= 0 for v in self._coeffs.values())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.items())))

    def _same_kind(self, other):
        if type(self) is not type(other):
            raise TypeError(
                "cannot combine %s with %s"
                % (type(self).__name__, type(other).__name__)
            )

    def __add__(self, other):
        self._same_kind(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return type(self)(out)

    def __sub__(self, other):
        self._same_kind(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) - v
        return type(self)(out)

    def __rmul__(self, n: int):
        return type(self)({k: n * v for k, v in self._coeffs.items()})

    def __neg__(self):
        return -1 * self

    def display(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join("%d*%s" % (n, s.display()) for s, n in self.items())

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self.display())


class Cycle(FormalSum):
    """Integer combination of component labels."""


class GrothendieckClass(FormalSum):
    """Integer combination of irreducible-representation labels."""


# --- the two-term cycle formula ---------------------------------------------


def _lowest_companion(lam: Weight, p: int) -> Weight:
    """The unique restricted bottom-alcove orbit point arrow-below a
    second-alcove weight."""
    candidates = []
    for alc in RESTRICTED_ALCOVES:
        kappa = orbit_weight(lam, p, elem_of_alcove(alc))
        if (
            weight_alcove_index(kappa, p) == 0
            and is_p_restricted(kappa, p)
            and weight_arrow_leq(kappa, lam, p)
        ):
            candidates.append(kappa)
    if len(candidates) != 1:
        raise AssertionError(
            "expected a unique bottom-alcove companion, found %d" % len(candidates)
        )
    return candidates[0]


def bm_cycle(sigma: SerreWeight, p: int | None = None) -> Cycle:
    """The cycle attached to a 3-deep weight: one term per choice of
    embedding data, where a second-alcove embedding may be replaced by its
    unique bottom-alcove companion.  All coefficients are 1 and the support
    has size 2^(number of second-alcove embeddings)."""
    if p is None:
        p = sigma.p
    if p != sigma.p:
        raise ValueError("p does not match the weight")
    if sigma.depth() < 3:
        raise GenericityError("cycle formula needs a 3-deep weight")
    options = []
    doubled = 0
    for lam in sigma.parts:
        if weight_alcove_index(lam, p) == 2:
            options.append((lam, _lowest_companion(lam, p)))
            doubled += 1
        else:
            options.append((lam,))
    cycle = Cycle(
        {SerreWeight.make(p, combo): 1 for combo in product(*options)}
    )
    if len(cycle.support()) != 2**doubled:
        raise AssertionError("companion weights collided after normalization")
    return cycle


# --- Weyl-module classes ----------------------------------------------------


def restricted_chain(lam: Weight, p: int) -> tuple[Weight, ...]:
    """Orbit points of lam in the restricted alcoves 0..i where i is lam's
    own alcove; consecutive points are in arrow order."""
    idx = weight_alcove_index(lam, p)
    if idx is None:
        raise ValueError("weight does not lie inside a restricted alcove")
    pts = [orbit_weight(lam, p, elem_of_alcove(RESTRICTED_ALCOVES[k])) for k in range(idx + 1)]
    assert pts[idx] == lam
    for a, b in zip(pts, pts[1:]):
        assert weight_arrow_leq(a, b, p)
    return tuple(pts)


def weyl_class(lam, p: int) -> GrothendieckClass:
    """Class of the reduced Weyl module of highest weight lam (one
    embedding): irreducible in the bottom alcove, two factors above, the
    second being the predecessor along the restricted alcove chain."""
    if not isinstance(lam, Weight):
        if len(lam) != 1:
            raise ValueError("Weyl-module classes are computed for one embedding")
        lam = lam[0]
    if not is_p_restricted(lam, p):
        raise ValueError("weight must be p-restricted")
    chain = restricted_chain(lam, p)
    if len(chain) == 1:
        return GrothendieckClass({SerreWeight.make(p, (lam,)): 1})
    return GrothendieckClass(
        {
            SerreWeight.make(p, (chain[-1],)): 1,
            SerreWeight.make(p, (chain[-2],)): 1,
        }
    )


# --- support bound ----------------------------------------------------------


def support_upper_bound(sigma: SerreWeight) -> frozenset[SerreWeight]:
    """All p-restricted weights arrow-below sigma: per embedding, the orbit
    points in the restricted alcoves below its own."""
    p = sigma.p
    per_part = []
    for lam in sigma.parts:
        cand = [
            kappa
            for kappa in restricted_chain(lam, p)
            if is_p_restricted(kappa, p)
        ]
        per_part.append(tuple(cand))
    out = set()
    for combo in product(*per_part):
        kappa = SerreWeight.make(p, combo)
        assert weight_class_arrow_leq(kappa, sigma)
        out.add(kappa)
    return frozenset(out)


# --- colength-one component counts ------------------------------------------


@lru_cache(maxsize=None)
def _case_tables() -> tuple[frozenset, frozenset, frozenset]:
    case1 = frozenset(translation(w.act(ETA)) for w in W_ALL)
    case2 = irregular_family()
    case3 = frozenset(
        compose_all(invert(pr.w2[0]), invert(HIGHEST_RESTRICTED), W0, pr.w1[0])
        for pr in enumerate_ap_prime(1)
        if in_omega(pr.w1[0]) and restricted_alcove_index(alcove_of(pr.w2[0])) == 1
    )
    assert len(case1) == 8 and len(case2) == 8 and len(case3) == 2
    assert not (case1 & case2) and not (case1 & case3) and not (case2 & case3)
    return case1, case2, case3


def classify_embedding_shape(g) -> int:
    """1 for a translation of an extreme weight, 2 for the irregular
    colength-one family, 3 for the regular colength-one family; raises if
    the element is none of these."""
    case1, case2, case3 = _case_tables()
    if g in case1:
        return 1
    if g in case2:
        return 2
    if g in case3:
        return 3
    raise ValueError("not a colength-one/extremal configuration: %s" % g.display())


@dataclass(frozen=True)
class ColengthOneReport:
    weights: frozenset[SerreWeight]
    cases: tuple[int, ...]

    @property
    def j2(self) -> tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.cases) if c in (2, 3))

    @property
    def count(self) -> int:
        return len(self.weights)


def colength_one_components(
    rhobar: TamePresentation, tau: TamePresentation
) -> ColengthOneReport:
    """Component count for a pair whose compatibility element is extremal
    or colength-one at every embedding: the intersection of the predicted
    set with the JH set has exactly 2^(#case-2/3 embeddings) weights."""
    g = compat_element(rhobar, tau)
    cases = tuple(classify_embedding_shape(gj) for gj in g)
    if tau.depth() < 6:
        log.warning("type depth %d below 6; count relies on deeper input", tau.depth())
    inter = intersect_w_jh(rhobar, tau)
    expected = 2 ** sum(1 for c in cases if c in (2, 3))
    if len(inter) != expected:
        raise AssertionError(
            "expected %d components for cases %s, found %d"
            % (expected, cases, len(inter))
        )
    return ColengthOneReport(inter, cases)


# --- multiplicity sums ------------------------------------------------------


@dataclass(frozen=True)
class BMSumResult:
    cycle: Cycle
    assumptions: tuple[str, ...]


def bm_sum(lam, tau: TamePresentation, n_table=None) -> BMSumResult:
    """Sum of per-weight cycles against a multiplicity table.

    For lam = 0 (or None) the default table is multiplicity one on the JH
    set of the type; this is an assumption recorded in the result, not a
    computed fact.  Tables for nonzero lam must be supplied by the caller.
    """
    if tau.kind != "type":
        raise ValueError("bm_sum expects a type presentation")
    zero_lam = lam is None or all(m == ZERO for m in lam)
    if lam is not None and len(lam) != tau.f:
        raise ValueError("lambda must have one weight per embedding")
    assumptions: tuple[str, ...] = ()
    if n_table is None:
        if not zero_lam:
            raise ValueError("a multiplicity table is required for nonzero lambda")
        n_table = {sigma: 1 for sigma in jh_set(tau)}
        assumptions = (
            "default multiplicity one on the JH set (assumed, not computed)",
        )
    else:
        allowed = jh_set(tau) if zero_lam else None
        for sigma, n in n_table.items():
            if not isinstance(sigma, SerreWeight) or sigma.p != tau.p:
                raise ValueError("table keys must be Serre weights for the same p")
            if int(n) < 0:
                raise ValueError("negative multiplicity for %s" % sigma.display())
            if allowed is not None and int(n) > 0 and sigma not in allowed:
                raise ValueError(
                    "multiplicities must be supported on the JH set for lambda = 0"
                )
    total = Cycle()
    for sigma in sorted(n_table, key=lambda s: s.sort_key()):
        n = int(n_table[sigma])
        if n:
            total = total + n * bm_cycle(sigma)
    return BMSumResult(total, assumptions)


@dataclass(frozen=True)
class ObviousConsistencyReport:
    expected: frozenset[SerreWeight]
    restricted_support: frozenset[SerreWeight]

    @property
    def discrepancy(self) -> frozenset[SerreWeight]:
        return self.restricted_support - self.expected


def obvious_bm_report(rhobar: TamePresentation, ws) -> ObviousConsistencyReport:
    """Consistency of the default-multiplicity sum with the single-component
    count for the obvious type of a finite Weyl tuple: the predicted part of
    the sum's support must contain the singleton intersection.  Any surplus
    is reported, never asserted away."""
    g = tuple(
        compose_all(invert(diamond(w)), invert(HIGHEST_RESTRICTED), W0, diamond(w))
        for w in ws
    )
    tau = type_from_target(rhobar, g)
    expected = intersect_w_jh(rhobar, tau)
    if len(expected) != 1:
        raise AssertionError("obvious type must meet the predicted set once")
    res = bm_sum(None, tau)
    restricted = frozenset(res.cycle.support()) & w_question_set(rhobar)
    if not expected <= restricted:
        raise AssertionError("the obvious weight is missing from the cycle sum")
    return ObviousConsistencyReport(expected, restricted)
