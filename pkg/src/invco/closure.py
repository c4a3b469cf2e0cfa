"""Upward closure, generated closed inverse subsemigroups, and the
closed / atlas / coset / full predicates.

The finite side works on explicit member bitsets of a
FiniteInverseSemigroup.  The free-inverse-monoid side represents a
finitely generated closed inverse submonoid by the folded automaton of
its generator bouquet; membership is readability plus acceptance.
"""

from __future__ import annotations

from invco import _core
from invco.automata import Bouquet, InverseAutomaton, fold
from invco.errors import UsageError
from invco.munn import MunnTree, check_word
from invco.semigroups import FiniteInverseSemigroup


def up_closure_bits(S: FiniteInverseSemigroup, bits: int) -> int:
    ups = S.upsets()
    out = 0
    for a in _core.iter_bits(bits):
        out |= ups[a]
    return out


def up_closure(S: FiniteInverseSemigroup, subset) -> frozenset:
    """{s : s >= a for some a in the subset}; extensive and idempotent."""
    return frozenset(_core.iter_bits(up_closure_bits(S, _core.bits_of(subset))))


def _closed_violation(S: FiniteInverseSemigroup, bits: int):
    """First reason `bits` is not a closed inverse subsemigroup, or None."""
    if not bits:
        return "empty"
    ids = list(_core.iter_bits(bits))
    for a in ids:
        if not bits >> S.inv[a] & 1:
            return "inverse of %s missing" % S.name_of(a)
        for b in ids:
            if not bits >> S.multiply(a, b) & 1:
                return "product %s*%s missing" % (S.name_of(a), S.name_of(b))
    if up_closure_bits(S, bits) != bits:
        return "not upward closed"
    return None


def is_closed_inverse_sub(S: FiniteInverseSemigroup, subset) -> bool:
    return _closed_violation(S, _core.bits_of(subset)) is None


class ClosedInverseSub:
    """A closed inverse subsemigroup of a finite inverse semigroup."""

    __slots__ = ("semigroup", "bits", "_members")

    def __init__(self, semigroup: FiniteInverseSemigroup, members, _trusted=False):
        bits = members if isinstance(members, int) else _core.bits_of(members)
        if bits >= 1 << semigroup.order or bits < 0:
            raise UsageError("member ids out of range")
        if not _trusted:
            reason = _closed_violation(semigroup, bits)
            if reason is not None:
                raise UsageError("not a closed inverse subsemigroup: " + reason)
        self.semigroup = semigroup
        self.bits = bits
        self._members = None

    @property
    def members(self) -> frozenset:
        if self._members is None:
            self._members = frozenset(_core.iter_bits(self.bits))
        return self._members

    def __contains__(self, a: int) -> bool:
        return 0 <= a < self.semigroup.order and self.bits >> a & 1

    def __iter__(self):
        return _core.iter_bits(self.bits)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (
            isinstance(other, ClosedInverseSub)
            and self.semigroup is other.semigroup
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((id(self.semigroup), self.bits))

    def is_full(self) -> bool:
        """Does it contain every idempotent of the parent semigroup?"""
        return all(e in self for e in self.semigroup.idempotents)

    def names(self) -> list[str]:
        return [self.semigroup.name_of(a) for a in self]

    def __repr__(self):
        return "ClosedInverseSub(%s)" % ", ".join(self.names())


def generate_closed(S: FiniteInverseSemigroup, generators) -> ClosedInverseSub:
    """Smallest closed inverse subsemigroup containing the generators.

    One product/inverse closure pass followed by one upward closure
    suffices: the upward closure of an inverse subsemigroup is again one,
    because multiplication respects the natural order.  A final check
    guards that argument at runtime.
    """
    seed = _core.bits_of(generators)
    if not seed:
        if S.identity is None:
            raise UsageError("empty generating set in a semigroup without identity")
        seed = 1 << S.identity
    sub_bits = _core.close_bits(S._flat, S.inv, S.order, seed)
    bits = up_closure_bits(S, sub_bits)
    reason = _closed_violation(S, bits)
    if reason is not None:  # would mean the single-pass argument is wrong
        raise AssertionError("generated set is not closed: " + reason)
    return ClosedInverseSub(S, bits, _trusted=True)


def is_atlas(S: FiniteInverseSemigroup, subset) -> bool:
    """Closed under the heap <a,b,c> = a b^-1 c."""
    ids = sorted(set(subset))
    if not ids:
        raise UsageError("empty subset")
    bits = _core.bits_of(ids)
    for a in ids:
        for b in ids:
            ab = S.multiply(a, S.inv[b])
            for c in ids:
                if not bits >> S.multiply(ab, c) & 1:
                    return False
    return True


def is_coset(S: FiniteInverseSemigroup, subset) -> bool:
    """A coset is a closed atlas."""
    ids = sorted(set(subset))
    if not ids:
        raise UsageError("empty subset")
    bits = _core.bits_of(ids)
    return is_atlas(S, ids) and up_closure_bits(S, bits) == bits


def is_full(S: FiniteInverseSemigroup, subset) -> bool:
    if isinstance(subset, ClosedInverseSub):
        return subset.is_full()
    bits = _core.bits_of(subset)
    return all(bits >> e & 1 for e in S.idempotents)


# -- finitely generated closed inverse submonoids of FIM(X) ----------------


class FimClosedSub:
    """Closed inverse submonoid of FIM(alphabet), via its folded automaton.

    The automaton is connected and inverse, with the base state (0 after
    canonical renumbering) both initial and the only final; its states
    are in bijection with the right cosets.
    """

    def __init__(self, alphabet: str, generators, automaton: InverseAutomaton):
        self.alphabet = alphabet
        self.generators = tuple(generators)
        self.automaton = automaton

    @classmethod
    def from_generators(cls, alphabet: str, words) -> "FimClosedSub":
        alphabet = "".join(sorted(set(alphabet)))
        for ch in alphabet:
            if not ("a" <= ch <= "z"):
                raise UsageError("alphabet letters must be a-z, got %r" % ch)
        words = [check_word(w, alphabet) for w in words]
        return cls(alphabet, words, fold(Bouquet.from_words(words)))

    @property
    def index(self) -> int:
        return self.automaton.n_states

    def contains_word(self, word: str) -> bool:
        """Does the element spelled by `word` belong to the submonoid?"""
        check_word(word, self.alphabet)
        return self.automaton.accepts(word)

    def contains_tree(self, t: MunnTree) -> bool:
        return fim_membership(self, t)

    def is_full(self) -> bool:
        """Full means every idempotent tree is readable: total transitions."""
        aut = self.automaton
        for s in range(aut.n_states):
            for ch in self.alphabet:
                if aut.step(s, ch) is None or aut.step(s, ch.upper()) is None:
                    return False
        return True

    def __repr__(self):
        return "FimClosedSub(alphabet=%r, generators=%s, index=%d)" % (
            self.alphabet,
            list(self.generators),
            self.index,
        )


def fim_membership(K: FimClosedSub, t: MunnTree) -> bool:
    """Element (vertices, mark) lies in K iff every vertex is readable
    from the base state and the mark runs back to it."""
    aut = K.automaton
    for v in t.vertices:
        check_word(v, K.alphabet)
        if aut.run(v) is None:
            return False
    return aut.run(t.mark) == aut.initial


def fim_subset(K: FimClosedSub, H: FimClosedSub) -> bool:
    """K <= H as subsets of FIM: no word lands in K but misses H.

    Walks the product of K's automaton with H's (H completed by a dead
    state); reaching K's final with H dead or non-final is a witness
    against inclusion.
    """
    if K.alphabet != H.alphabet:
        raise UsageError("alphabet mismatch")
    dead = -1
    start = (K.automaton.initial, H.automaton.initial)
    seen = {start}
    queue = [start]
    letters = K.alphabet + K.alphabet.upper()
    while queue:
        ks, hs = queue.pop(0)
        if ks in K.automaton.finals and hs != H.automaton.initial:
            return False
        for ch in letters:
            kt = K.automaton.step(ks, ch)
            if kt is None:
                continue
            ht = dead if hs == dead else H.automaton.step(hs, ch)
            ht = dead if ht is None else ht
            pair = (kt, ht)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True
