"""The two-layer semigroup F2 over its abelianisation, and the closed
inverse submonoid that is finitely generated yet has infinite index.

Elements live on layer 1 (reduced words over x, y in the free group) or
layer 0 (exponent vectors in Z^2); cross-layer products abelianise the
top factor first.  The distinguished submonoid pairs the commutator
subgroup with the trivial bottom group: membership on layer 1 is "both
exponent sums vanish", which makes everything here decidable in O(word
length) and lets the demo certify 10^4 pairwise-distinct cosets without
pairwise products.
"""

from __future__ import annotations

from dataclasses import dataclass

from invco.errors import UsageError
from invco.munn import check_word, invert_word, reduce_word


def exponent_sums(word: str) -> tuple[int, int]:
    m = word.count("x") - word.count("X")
    n = word.count("y") - word.count("Y")
    return m, n


class AbElement:
    """layer 1: reduced word over {x,y}; layer 0: vector in Z^2."""

    __slots__ = ("layer", "word", "vec")

    def __init__(self, layer: int, payload):
        if layer == 1:
            check_word(payload, "xy")
            self.word = reduce_word(payload)
            self.vec = None
        elif layer == 0:
            m, n = payload
            self.word = None
            self.vec = (int(m), int(n))
        else:
            raise UsageError("layer must be 0 or 1")
        self.layer = layer

    @classmethod
    def top(cls, word: str) -> "AbElement":
        return cls(1, word)

    @classmethod
    def bottom(cls, m: int, n: int) -> "AbElement":
        return cls(0, (m, n))

    @classmethod
    def zero(cls) -> "AbElement":
        """The identity of the bottom group (the paper's 0)."""
        return cls(0, (0, 0))

    def abelianized(self) -> tuple[int, int]:
        return self.vec if self.layer == 0 else exponent_sums(self.word)

    def multiply(self, other: "AbElement") -> "AbElement":
        if self.layer == 1 and other.layer == 1:
            return AbElement(1, self.word + other.word)
        m1, n1 = self.abelianized()
        m2, n2 = other.abelianized()
        return AbElement(0, (m1 + m2, n1 + n2))

    def inverse(self) -> "AbElement":
        if self.layer == 1:
            return AbElement(1, invert_word(self.word))
        m, n = self.vec
        return AbElement(0, (-m, -n))

    def is_idempotent(self) -> bool:
        return self.multiply(self) == self

    def __eq__(self, other):
        return (
            isinstance(other, AbElement)
            and self.layer == other.layer
            and self.word == other.word
            and self.vec == other.vec
        )

    def __hash__(self):
        return hash((self.layer, self.word, self.vec))

    def __repr__(self):
        if self.layer == 1:
            return "(1, %s)" % (self.word or "1")
        return "(0, %d,%d)" % self.vec


IDEMPOTENTS = (AbElement.top(""), AbElement.zero())


def in_k(el: AbElement) -> bool:
    """Membership in K = commutator subgroup on top, trivial group below."""
    return el.abelianized() == (0, 0)


def member_by_witness(el: AbElement) -> bool:
    """Membership in the closed submonoid generated by the bottom identity,
    decided from the definition: some product of the generator lies below
    el, i.e. e*el equals the generator for an idempotent e."""
    zero = AbElement.zero()
    return any(e.multiply(el) == zero for e in IDEMPOTENTS)


def same_k_coset(a: AbElement, b: AbElement) -> bool:
    """a b^-1 in K; every element determines a coset here since K is full."""
    return in_k(a.multiply(b.inverse()))


@dataclass
class DemoReport:
    count: int
    representatives: list
    all_distinct: bool
    distinct_vectors: int


def distinct_coset_representatives(n: int) -> DemoReport:
    """n pairwise-distinct cosets of K: the powers x^0 .. x^(n-1).

    Distinctness is certified through the abelianisation vectors (two
    representatives share a coset iff their vectors agree), which keeps
    the check linear; a small prefix is additionally checked pairwise
    with actual products.
    """
    if n < 1:
        raise UsageError("need n >= 1")
    reps = [AbElement.top("x" * k) for k in range(n)]
    vectors = {r.abelianized() for r in reps}
    spot = reps[: min(n, 40)]
    pairwise_ok = all(
        not same_k_coset(a, b)
        for i, a in enumerate(spot)
        for b in spot[i + 1 :]
    )
    return DemoReport(
        count=n,
        representatives=[r.word or "1" for r in reps[: min(n, 10)]],
        all_distinct=len(vectors) == n and pairwise_ok,
        distinct_vectors=len(vectors),
    )
