"""Extended affine Weyl group of GSp4 with exact alcove geometry.

Elements are written t_nu * w with nu in the character lattice and w in
the finite Weyl group.  The group acts on the plane spanned by the
first two weight coordinates; alcoves are tracked by their exact
rational barycenters.  The base alcove has barycenter (1/2, 1/6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

from .base import (
    ETA,
    POSITIVE_COROOTS,
    POSITIVE_ROOTS,
    W_ALL,
    W_E,
    W_LONG,
    W_S1,
    W_S2,
    FiniteWeyl,
    Weight,
    weyl_from_word,
    weyl_inv,
    weyl_mul,
)


class Alcove(NamedTuple):
    """Barycenter of an alcove, exact coordinates."""

    x: Fraction
    y: Fraction


Point = Alcove  # same representation for arbitrary plane points

BASE_ALCOVE = Alcove(Fraction(1, 2), Fraction(1, 6))
DUAL_BASE_ALCOVE = Alcove(Fraction(-1, 2), Fraction(-1, 6))

# Linear functionals attached to the positive coroots (f-component is 0
# for all of them, so only the plane coordinates matter), and the plane
# directions of the corresponding roots.
_FUNCTIONALS = tuple((cov.d, cov.e) for cov in POSITIVE_COROOTS)
_ROOT_VECS = tuple((r.a, r.b) for r in POSITIVE_ROOTS)


def functional(i: int, pt: Point) -> Fraction:
    d, e = _FUNCTIONALS[i]
    return d * pt.x + e * pt.y


def functional_values(pt: Point) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    return tuple(functional(i, pt) for i in range(4))  # type: ignore[return-value]


@dataclass(frozen=True)
class ExtAffine:
    """t_nu * w, acting as x -> nu + w(x)."""

    nu: Weight
    w: FiniteWeyl

    def __repr__(self):
        return "E[%s]" % (self.display(),)

    def display(self) -> str:
        if self.nu == Weight(0, 0, 0):
            return self.w.display()
        t = "t(%d,%d,%d)" % (self.nu.a, self.nu.b, self.nu.c)
        if self.w is W_E:
            return t
        return t + "*" + self.w.display()


IDENTITY = ExtAffine(Weight(0, 0, 0), W_E)


def translation(nu: Weight) -> ExtAffine:
    return ExtAffine(nu, W_E)


def finite(w: FiniteWeyl) -> ExtAffine:
    return ExtAffine(Weight(0, 0, 0), w)


def compose(x: ExtAffine, y: ExtAffine) -> ExtAffine:
    return ExtAffine(x.nu + x.w.act(y.nu), weyl_mul(x.w, y.w))


def compose_all(*xs: ExtAffine) -> ExtAffine:
    acc = IDENTITY
    for x in xs:
        acc = compose(acc, x)
    return acc


def invert(x: ExtAffine) -> ExtAffine:
    wi = weyl_inv(x.w)
    return ExtAffine(-wi.act(x.nu), wi)


def star(x: ExtAffine) -> ExtAffine:
    """The involution t_nu * w -> w^(-1) * t_nu."""
    wi = weyl_inv(x.w)
    return ExtAffine(wi.act(x.nu), wi)


_PLANE_ACTION = {w: (w.act(Weight(1, 0, 0)), w.act(Weight(0, 1, 0))) for w in W_ALL}


def act_on_point(x: ExtAffine, pt: Point) -> Point:
    ia, ib = _PLANE_ACTION[x.w]
    return Point(x.nu.a + pt.x * ia.a + pt.y * ib.a, x.nu.b + pt.x * ia.b + pt.y * ib.b)


def alcove_of(x: ExtAffine) -> Alcove:
    return act_on_point(x, BASE_ALCOVE)


def _count_strictly_between(a: Fraction, b: Fraction) -> int:
    if a == b:
        return 0
    lo, hi = (a, b) if a < b else (b, a)
    return math.ceil(hi) - math.floor(lo) - 1


@lru_cache(maxsize=None)
def length(x: ExtAffine) -> int:
    """Number of affine root hyperplanes separating the base alcove from its image."""
    img = alcove_of(x)
    return sum(
        _count_strictly_between(functional(i, BASE_ALCOVE), functional(i, img))
        for i in range(4)
    )


@lru_cache(maxsize=None)
def dual_length(x: ExtAffine) -> int:
    """Length relative to the antidominant base alcove."""
    base = DUAL_BASE_ALCOVE
    img = act_on_point(x, base)
    return sum(
        _count_strictly_between(functional(i, base), functional(i, img)) for i in range(4)
    )


# affine simple reflections: walls x - y = 0, y = 0, x + y = 1
S1 = finite(W_S1)
S2 = finite(W_S2)
S0 = ExtAffine(Weight(1, 1, -1), weyl_from_word("212"))
AFFINE_SIMPLES = (S0, S1, S2)

W0 = finite(W_LONG)
# highest element of the restricted range: w0 * t_(-eta)
HIGHEST_RESTRICTED = compose(W0, translation(-ETA))


def omega_class(x: ExtAffine) -> int:
    """Image in the length-zero quotient; kernel is the affine Weyl group."""
    return x.nu.a + x.nu.b + 2 * x.nu.c


@lru_cache(maxsize=None)
def omega_split(x: ExtAffine) -> tuple[tuple[int, ...], ExtAffine]:
    """Greedy reduced word: x = S[i1] ... S[ik] * delta with length(delta) = 0."""
    word: list[int] = []
    cur = x
    n = length(cur)
    while n > 0:
        for i, s in enumerate(AFFINE_SIMPLES):
            nxt = compose(s, cur)
            if length(nxt) < n:
                word.append(i)
                cur, n = nxt, length(nxt)
                break
        else:
            raise AssertionError("positive length but no left descent: %r" % (x,))
    return tuple(word), cur


def reduced_word(x: ExtAffine) -> tuple[int, ...]:
    return omega_split(x)[0]


def omega_part(x: ExtAffine) -> ExtAffine:
    return omega_split(x)[1]


def in_omega(x: ExtAffine) -> bool:
    return length(x) == 0


def normalize_c(x: ExtAffine) -> tuple[ExtAffine, int]:
    """Remove the central similitude translation: returns (x', k) with
    x = t_(0,0,k) * x' and x' having c-coordinate 0."""
    k = x.nu.c
    return ExtAffine(Weight(x.nu.a, x.nu.b, 0), x.w), k


# --- Bruhat order -------------------------------------------------------

_BRUHAT_CACHE: dict[tuple[ExtAffine, ExtAffine], bool] = {}


def _first_left_descent(x: ExtAffine) -> ExtAffine | None:
    n = length(x)
    for s in AFFINE_SIMPLES:
        if length(compose(s, x)) < n:
            return s
    return None


def bruhat_leq(x: ExtAffine, y: ExtAffine) -> bool:
    """Bruhat order on the extended group; different cosets are incomparable."""
    if omega_class(x) != omega_class(y):
        return False
    return _bruhat_leq_coset(x, y)


def _bruhat_leq_coset(x: ExtAffine, y: ExtAffine) -> bool:
    if x == y:
        return True
    if length(x) >= length(y):
        return False
    key = (x, y)
    cached = _BRUHAT_CACHE.get(key)
    if cached is not None:
        return cached
    s = _first_left_descent(y)
    assert s is not None
    sy = compose(s, y)
    sx = compose(s, x)
    if length(sx) < length(x):
        res = _bruhat_leq_coset(sx, sy)
    else:
        res = _bruhat_leq_coset(x, sy) or _bruhat_leq_coset(sx, sy)
    _BRUHAT_CACHE[key] = res
    return res


def bruhat_lower_interval(y: ExtAffine) -> frozenset[ExtAffine]:
    """All x <= y, via subword products of one reduced word (independent oracle)."""
    word, delta = omega_split(y)
    prods: set[ExtAffine] = {IDENTITY}
    for i in word:
        s = AFFINE_SIMPLES[i]
        prods |= {compose(q, s) for q in prods}
    return frozenset(compose(q, delta) for q in prods)


def bruhat_leq_oracle(x: ExtAffine, y: ExtAffine) -> bool:
    return x in bruhat_lower_interval(y)


def coset_ball(delta: ExtAffine, max_len: int) -> frozenset[ExtAffine]:
    """All elements of W_aff * delta with length <= max_len."""
    seen = {delta}
    frontier = [delta]
    while frontier:
        nxt = []
        for x in frontier:
            for s in AFFINE_SIMPLES:
                y = compose(s, x)
                if length(y) <= max_len and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


# --- upper arrow order --------------------------------------------------


def reflect_alcove(pt: Point, i: int, m: int) -> Point:
    """Affine reflection in the hyperplane functional_i = m."""
    t = functional(i, pt)
    va, vb = _ROOT_VECS[i]
    # s_{alpha,m}(pt) = pt - (t - m) * alpha_vec / <alpha, alpha^vee> * 2
    # with our normalization <alpha_vec, functional> = 2, the formula is
    # pt + (m - t) * alpha_vec
    return Point(pt.x + (m - t) * va, pt.y + (m - t) * vb)


def up_step_targets(pt: Point, x_max: Fraction, s_max: Fraction) -> Iterator[Point]:
    """Single arrow steps from pt, pruned by x <= x_max and x + y <= s_max."""
    for i in range(4):
        t = functional(i, pt)
        m = math.floor(t) + 1
        while True:
            q = reflect_alcove(pt, i, m)
            if q.x > x_max or q.x + q.y > s_max:
                break
            yield q
            m += 1


def upper_arrow_leq_alcove(a: Alcove, b: Alcove) -> bool:
    """Decide a arrow-below b exactly.

    Each arrow step moves the barycenter by a positive multiple of a
    positive root, so x and x+y never decrease while 2x+y strictly
    increases; the search space pruned by the target's x and x+y values
    is finite and complete.
    """
    if a == b:
        return True
    x_max, s_max = b.x, b.x + b.y
    if a.x > x_max or a.x + a.y > s_max:
        return False
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for pt in frontier:
            for q in up_step_targets(pt, x_max, s_max):
                if q == b:
                    return True
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return False


def upper_arrow_leq(x: ExtAffine, y: ExtAffine) -> bool:
    """Arrow order on elements: same length-zero part, alcoves arrow-related."""
    if omega_class(x) != omega_class(y):
        return False
    return upper_arrow_leq_alcove(alcove_of(x), alcove_of(y))


def arrow_down_region(b: Alcove, min_x: Fraction, min_s: Fraction) -> frozenset[Alcove]:
    """All alcoves a arrow-below b with a.x >= min_x and a.x+a.y >= min_s.

    Along any arrow chain both x and x+y are monotone, so every chain
    from such an a to b stays inside the rectangle [min_x, b.x] x
    [min_s, b.x+b.y]; the downward search over that rectangle is
    therefore complete, not just a truncation.
    """
    result = {b}
    frontier = [b]
    while frontier:
        nxt = []
        for pt in frontier:
            for i in range(4):
                t = functional(i, pt)
                m = math.ceil(t) - 1
                while True:
                    q = reflect_alcove(pt, i, m)
                    if q.x < min_x or q.x + q.y < min_s:
                        break
                    if q not in result:
                        result.add(q)
                        nxt.append(q)
                    m -= 1
        frontier = nxt
    return frozenset(result)


def is_dominant_point(pt: Point) -> bool:
    return functional(0, pt) > 0 and functional(1, pt) > 0


def dominant_down_set(b: Alcove) -> frozenset[Alcove]:
    """Dominant alcoves arrow-below b.

    Finite, with no truncation: a dominant alcove has x > 0 and
    x + y > 0, and chains keep those bounds.
    """
    if not is_dominant_point(b):
        return frozenset()
    region = arrow_down_region(b, Fraction(0), Fraction(0))
    return frozenset(a for a in region if is_dominant_point(a))


def box_down_set(b: Alcove, radius: int) -> frozenset[Alcove]:
    """Alcoves arrow-below b with all four functional values in [-radius, radius].

    The full arrow down-set is infinite; the box is the documented
    truncation.  Within the box the answer is exact since chains between
    box alcoves stay in the enclosing rectangle.
    """
    if not all(abs(functional(i, b)) <= radius for i in range(4)):
        raise ValueError("target alcove outside the search box")
    region = arrow_down_region(b, Fraction(-radius), Fraction(-2 * radius))
    return frozenset(
        a for a in region if all(abs(functional(i, a)) <= radius for i in range(4))
    )


# --- locating alcoves and points ----------------------------------------


def locate_point(pt: Point, max_steps: int = 100000) -> ExtAffine:
    """The element u of the affine Weyl group with pt in u(base alcove).

    Raises ValueError for points on a wall.
    """
    g = IDENTITY
    cur = pt
    for _ in range(max_steps):
        f1 = functional(0, cur)
        f2 = functional(1, cur)
        f3 = functional(2, cur)
        if f1 == 0 or f2 == 0 or f3 == 0 or functional(3, cur) in (0, 1):
            raise ValueError("point lies on a wall: %r" % (pt,))
        if f1 < 0:
            r = S1
        elif f2 < 0:
            r = S2
        elif f3 > 1:
            r = S0
        elif f3 < 1:
            return invert(g)
        else:
            raise ValueError("point lies on a wall: %r" % (pt,))
        cur = act_on_point(r, cur)
        g = compose(r, g)
    raise AssertionError("folding did not terminate")


def elem_of_alcove(a: Alcove) -> ExtAffine:
    """The affine Weyl group element mapping the base alcove to a."""
    u = locate_point(a)
    assert alcove_of(u) == a
    return u


def is_restricted_alcove(a: Alcove) -> bool:
    f1, f2 = functional(0, a), functional(1, a)
    return 0 < f1 < 1 and 0 < f2 < 1


def _build_restricted_chain() -> tuple[Alcove, Alcove, Alcove, Alcove]:
    a0 = BASE_ALCOVE
    a1 = reflect_alcove(a0, 2, 1)
    a2 = reflect_alcove(a1, 3, 1)
    a3 = reflect_alcove(a2, 2, 2)
    chain = (a0, a1, a2, a3)
    assert all(is_restricted_alcove(a) for a in chain)
    assert len(set(chain)) == 4
    return chain


RESTRICTED_ALCOVES = _build_restricted_chain()


def restricted_alcove_index(a: Alcove) -> int | None:
    try:
        return RESTRICTED_ALCOVES.index(a)
    except ValueError:
        return None


def is_restricted_element(x: ExtAffine) -> bool:
    return is_restricted_alcove(alcove_of(x))


def is_dominant_element(x: ExtAffine) -> bool:
    return is_dominant_point(alcove_of(x))


@lru_cache(maxsize=None)
def diamond(w: FiniteWeyl) -> ExtAffine:
    """The unique restricted t_(a,b,0) * w."""
    found = []
    for a in range(-4, 5):
        for b in range(-4, 5):
            x = ExtAffine(Weight(a, b, 0), w)
            if is_restricted_element(x):
                found.append(x)
    assert len(found) == 1, (w, found)
    return found[0]


def restricted_lift(x: ExtAffine) -> ExtAffine:
    """The restricted element with c = 0 sharing the finite part of x.

    For a fixed finite part there is exactly one choice of the first two
    translation coordinates landing in the restricted range.
    """
    return diamond(x.w)


# --- dot action ----------------------------------------------------------


def p_dot(x: ExtAffine, lam: Weight, p: int) -> Weight:
    """(t_nu w) . lam = w(lam + eta) + p*nu - eta."""
    return x.w.act(lam + ETA) + x.nu.scale(p) - ETA


def scaled_point(lam: Weight, p: int) -> Point:
    """(lam + eta)/p in plane coordinates."""
    mu = lam + ETA
    return Point(Fraction(mu.a, p), Fraction(mu.b, p))


def locate_weight(lam: Weight, p: int) -> ExtAffine:
    """u in the affine Weyl group with (lam+eta)/p inside u(base alcove)."""
    return locate_point(scaled_point(lam, p))


def orbit_weight(lam: Weight, p: int, target: ExtAffine) -> Weight:
    """The linkage orbit point of lam lying in target's alcove."""
    u = locate_weight(lam, p)
    move = compose(target, invert(u))
    res = p_dot(move, lam, p)
    assert alcove_of(locate_weight(res, p)) == alcove_of(target)
    return res


def weight_alcove_index(lam: Weight, p: int) -> int | None:
    """Index of the restricted alcove containing (lam+eta)/p, if any."""
    return restricted_alcove_index(alcove_of(locate_weight(lam, p)))


def weight_arrow_leq(kappa: Weight, lam: Weight, p: int) -> bool:
    """kappa arrow-below lam in the p-dilated linkage order."""
    u = locate_weight(kappa, p)
    v = locate_weight(lam, p)
    if p_dot(compose(v, invert(u)), kappa, p) != lam:
        return False
    return upper_arrow_leq_alcove(alcove_of(u), alcove_of(v))


def _selfcheck() -> None:
    assert length(translation(ETA)) == 7
    assert alcove_of(HIGHEST_RESTRICTED) == RESTRICTED_ALCOVES[3]
    assert compose(invert(HIGHEST_RESTRICTED), W0) == translation(ETA)
    assert omega_class(translation(ETA)) == 3


_selfcheck()
