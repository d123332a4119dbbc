"""Root datum of GSp4 and the finite Weyl group.

Characters of the diagonal torus are written (a, b; c), sending
diag(x, y, z/y, z/x) to x^a y^b z^c.  Cocharacters use the same
coordinates, with (d, e; f) mapping x to diag(x^d, x^e, x^(f-e), x^(f-d)).
The symplectic form is antidiagonal: J = antidiag(1, 1, -1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple


class Weight(NamedTuple):
    a: int
    b: int
    c: int

    def __add__(self, other):  # type: ignore[override]
        return Weight(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other):
        return Weight(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self):
        return Weight(-self.a, -self.b, -self.c)

    def scale(self, n: int) -> "Weight":
        return Weight(n * self.a, n * self.b, n * self.c)


class Coweight(NamedTuple):
    d: int
    e: int
    f: int

    def __add__(self, other):  # type: ignore[override]
        return Coweight(self.d + other.d, self.e + other.e, self.f + other.f)

    def __neg__(self):
        return Coweight(-self.d, -self.e, -self.f)


ZERO = Weight(0, 0, 0)
ETA = Weight(2, 1, 0)

# Simple roots first, then the other positive roots: alpha1, alpha2,
# alpha1+alpha2, 2*alpha1+alpha2.
POSITIVE_ROOTS = (
    Weight(1, -1, 0),
    Weight(0, 2, -1),
    Weight(1, 1, -1),
    Weight(2, 0, -1),
)
POSITIVE_COROOTS = (
    Coweight(1, -1, 0),
    Coweight(0, 1, 0),
    Coweight(1, 1, 0),
    Coweight(1, 0, 0),
)
ALPHA1, ALPHA2, ALPHA12, ALPHA112 = POSITIVE_ROOTS
SIMPLE_INDICES = (0, 1)


def pairing(lam: Weight, cov: Coweight) -> int:
    """Natural pairing of a character with a cocharacter."""
    return lam.a * cov.d + lam.b * cov.e + lam.c * cov.f


def std_character(lam: Weight) -> tuple[int, int, int, int]:
    """Exponents of (a, b; c) on the 4-dimensional standard torus."""
    return (lam.a + lam.b + lam.c, lam.a + lam.c, lam.b + lam.c, lam.c)


def std_coweight(cov: Coweight) -> tuple[int, int, int, int]:
    """Diagonal entries' exponents of the cocharacter (d, e; f)."""
    return (cov.d, cov.e, cov.f - cov.e, cov.f - cov.d)


# --- finite Weyl group -------------------------------------------------

def _act1(lam: Weight) -> Weight:
    return Weight(lam.b, lam.a, lam.c)


def _act2(lam: Weight) -> Weight:
    return Weight(lam.a, -lam.b, lam.b + lam.c)


def _coact1(cov: Coweight) -> Coweight:
    return Coweight(cov.e, cov.d, cov.f)


def _coact2(cov: Coweight) -> Coweight:
    # Adjoint of _act2 under the pairing; the coordinate formula differs
    # from the character side.
    return Coweight(cov.d, cov.f - cov.e, cov.f)


@dataclass(frozen=True)
class FiniteWeyl:
    """Element of the Weyl group W of GSp4 (dihedral of order 8).

    ``word`` is the canonical reduced word, letters '1' and '2'.
    """

    word: str

    def __repr__(self):
        return "W[%s]" % (self.display(),)

    def display(self) -> str:
        if not self.word:
            return "e"
        return "".join("s" + ch for ch in self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, lam: Weight) -> Weight:
        for ch in reversed(self.word):
            lam = _act1(lam) if ch == "1" else _act2(lam)
        return lam

    def act_coweight(self, cov: Coweight) -> Coweight:
        for ch in reversed(self.word):
            cov = _coact1(cov) if ch == "1" else _coact2(cov)
        return cov


def _basis_images(word: str) -> tuple[Weight, Weight, Weight]:
    w = FiniteWeyl(word)
    return (w.act(Weight(1, 0, 0)), w.act(Weight(0, 1, 0)), w.act(Weight(0, 0, 1)))


_CANONICAL_WORDS = ("", "1", "2", "12", "21", "121", "212", "1212")
W_ALL = tuple(FiniteWeyl(word) for word in _CANONICAL_WORDS)
W_E, W_S1, W_S2 = W_ALL[0], W_ALL[1], W_ALL[2]
W_LONG = W_ALL[7]

_IMAGE_TO_CANON = {_basis_images(w.word): w for w in W_ALL}
assert len(_IMAGE_TO_CANON) == 8


def weyl_mul(w: FiniteWeyl, u: FiniteWeyl) -> FiniteWeyl:
    """Product w*u, acting as w(u(.)); result uses the canonical word."""
    word = w.word + u.word
    v = FiniteWeyl(word)
    return _IMAGE_TO_CANON[(v.act(Weight(1, 0, 0)), v.act(Weight(0, 1, 0)), v.act(Weight(0, 0, 1)))]


def weyl_inv(w: FiniteWeyl) -> FiniteWeyl:
    for u in W_ALL:
        if weyl_mul(w, u) is W_E:
            return u
    raise AssertionError("group without inverses")


def weyl_from_word(word: str) -> FiniteWeyl:
    """Canonical element for an arbitrary word in letters '1', '2'."""
    v = FiniteWeyl(word)
    return _IMAGE_TO_CANON[(v.act(Weight(1, 0, 0)), v.act(Weight(0, 1, 0)), v.act(Weight(0, 0, 1)))]


# Reflections attached to the four positive roots, in the same order.
REFLECTIONS = (
    weyl_from_word("1"),
    weyl_from_word("2"),
    weyl_from_word("212"),
    weyl_from_word("121"),
)


def reflection_of_root(i: int) -> FiniteWeyl:
    return REFLECTIONS[i]


def dominant(lam: Weight) -> bool:
    return all(pairing(lam, POSITIVE_COROOTS[i]) >= 0 for i in SIMPLE_INDICES)


def dominant_representative(lam: Weight) -> tuple[Weight, FiniteWeyl]:
    """The dominant Weyl orbit representative, with a w such that w(rep) = lam."""
    for w in W_ALL:
        mu = weyl_inv(w).act(lam)
        if dominant(mu):
            return mu, w
    raise AssertionError("orbit misses the dominant chamber")


# --- depth and genericity ----------------------------------------------

def is_m_deep(lam: Weight, p: int, m: int) -> bool:
    """Whether lam lies m-deep in its alcove (relative to the shifted origin).

    For each positive root there must be an integer k with
    p*k + m < <lam + eta, coroot> < p*(k + 1) - m.
    """
    if m < 0:
        raise ValueError("depth must be nonnegative")
    for cov in POSITIVE_COROOTS:
        v = pairing(lam + ETA, cov)
        ok = False
        for k in range(v // p - 1, v // p + 2):
            if p * k + m < v < p * (k + 1) - m:
                ok = True
                break
        if not ok:
            return False
    return True


def depth(lam: Weight, p: int) -> int:
    """Largest m with lam m-deep, or -1 if lam lies on a wall."""
    best = p
    for cov in POSITIVE_COROOTS:
        r = pairing(lam + ETA, cov) % p
        best = min(best, r, p - r)
    return best - 1


def lowest_alcove_depth(lam: Weight, p: int) -> int:
    """Depth of lam inside the lowest alcove: the largest m with
    m < <lam + eta, coroot> < p - m for every positive coroot, or -1
    when lam is not inside the lowest alcove at all."""
    best = p
    for cov in POSITIVE_COROOTS:
        v = pairing(lam + ETA, cov)
        if not 0 < v < p:
            return -1
        best = min(best, v, p - v)
    return best - 1


def is_m_generic(lam: Weight, p: int, m: int) -> bool:
    """Whether |<lam, coroot> + p*k| > m for every root and integer k."""
    if m < 0:
        raise ValueError("genericity bound must be nonnegative")
    for cov in POSITIVE_COROOTS:
        v = pairing(lam, cov)
        for sv in (v, -v):
            k0 = -sv // p
            for k in range(k0 - 1, k0 + 2):
                if abs(sv + p * k) <= m:
                    return False
    return True


def max_presentation_depth(p: int) -> int:
    """Largest m so that some m-deep p-restricted weight exists.

    The four pairing values v satisfy v3 = v1 + 2*v2, which forces
    3*(m+1) <= v3 <= p - m - 1, i.e. m <= (p - 4) / 4.
    """
    return (p - 4) // 4


def deep_weight_example(p: int, m: int) -> Weight:
    """A concrete m-deep weight with b = m, a = 2m, c = 0."""
    lam = Weight(2 * m, m, 0)
    if not is_m_deep(lam, p, m):
        raise ValueError("no weight of the standard shape is %d-deep for p=%d" % (m, p))
    return lam


def _selfcheck() -> None:
    for i in range(4):
        assert pairing(POSITIVE_ROOTS[i], POSITIVE_COROOTS[i]) == 2
    assert pairing(ALPHA1, POSITIVE_COROOTS[1]) == -1
    assert pairing(ALPHA2, POSITIVE_COROOTS[0]) == -2
    assert tuple(pairing(ETA, cov) for cov in POSITIVE_COROOTS) == (1, 1, 3, 2)
    assert std_character(ETA) == (3, 2, 1, 0)
    assert W_LONG.act(Weight(1, 2, 3)) == Weight(-1, -2, 6)
    # reflection formula s_alpha(lam) = lam - <lam, coroot> alpha
    for i in range(4):
        s = REFLECTIONS[i]
        for lam in (ETA, Weight(1, 2, 3), Weight(-1, 4, 2)):
            expect = lam - POSITIVE_ROOTS[i].scale(pairing(lam, POSITIVE_COROOTS[i]))
            assert s.act(lam) == expect
    # the coweight action is the adjoint one
    basis_w = (Weight(1, 0, 0), Weight(0, 1, 0), Weight(0, 0, 1))
    basis_c = (Coweight(1, 0, 0), Coweight(0, 1, 0), Coweight(0, 0, 1))
    for w in W_ALL:
        wi = weyl_inv(w)
        for lam in basis_w:
            for cov in basis_c:
                assert pairing(w.act(lam), cov) == pairing(lam, wi.act_coweight(cov))


_selfcheck()
