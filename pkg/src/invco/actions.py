"""Actions on cosets, the homomorphism into a symmetric inverse monoid,
coset automata, and enumeration of closed inverse subsemigroups of fixed
index (the finiteness behind Hall's theorem).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from invco import _core
from invco.automata import InverseAutomaton
from invco.closure import (
    ClosedInverseSub,
    FimClosedSub,
    _closed_violation,
)
from invco.cosets import Coset, _fim_cosets, coset_of, enumerate_cosets
from invco.errors import UsageError
from invco.semigroups import FiniteInverseSemigroup, GeneratorMap, PartialBijection


def coset_action(L, C: Coset, u):
    """C acted on by u: defined iff s u u^-1 s^-1 lies in L for the
    representative s (a representative-independent condition), with value
    the coset of s u.  Returns None when undefined."""
    if isinstance(L, FimClosedSub):
        from invco import munn

        word = munn.traversal_word(u) if isinstance(u, munn.MunnTree) else u
        state = L.automaton.run_from(C.key, word)
        if state is None:
            return None
        return _fim_cosets(L)[state]
    S = L.semigroup
    s = C.representative
    uu = S.multiply(u, S.inv[u])
    if S.multiply(S.multiply(s, uu), S.inv[s]) not in L:
        return None
    return coset_of(L, S.multiply(s, u))


@dataclass
class CosetActionTable:
    """phi_L: each generator letter acts as a partial bijection on the
    coset indices D = {1..d}, with index 1 the coset L itself."""

    sub: ClosedInverseSub
    cosets: tuple
    maps: dict

    @property
    def degree(self) -> int:
        return len(self.cosets)

    def image(self, u: int) -> PartialBijection:
        """The partial bijection of D induced by an arbitrary element."""
        L = self.sub
        d = len(self.cosets)
        m = [0] * d
        pos = {c.key: j for j, c in enumerate(self.cosets)}
        for j, c in enumerate(self.cosets):
            out = coset_action(L, c, u)
            if out is not None:
                m[j] = pos[out.key] + 1
        return PartialBijection(d, m)

    def stab_of_base(self) -> frozenset:
        """Elements whose action fixes point 1; pulls back to exactly L."""
        S = self.sub.semigroup
        keep = []
        for u in range(S.order):
            pb = self.image(u)
            if pb(1) == 1:
                keep.append(u)
        return frozenset(keep)


def phi_hom(S: FiniteInverseSemigroup, gm: GeneratorMap, L: ClosedInverseSub) -> CosetActionTable:
    if not gm.generates():
        raise UsageError("generator map does not generate the semigroup")
    cosets, _ = enumerate_cosets(L)
    table = CosetActionTable(L, tuple(cosets), {})
    for letter in gm.alphabet:
        table.maps[letter] = table.image(gm.image(letter))
    return table


def phi_is_homomorphism(table: CosetActionTable) -> bool:
    """Exhaustive check that u -> phi(u) respects products."""
    S = table.sub.semigroup
    images = [table.image(u) for u in range(S.order)]
    for u in range(S.order):
        for v in range(S.order):
            if images[S.multiply(u, v)] != images[u].compose(images[v]):
                return False
    return True


def coset_automaton(M, gm: GeneratorMap | None, L) -> InverseAutomaton:
    """States are the cosets of L, initial = only final = L, and letters
    act by the coset action.  For a FIM submonoid this is its folded
    automaton."""
    if isinstance(L, FimClosedSub):
        return L.automaton
    if not gm.generates():
        raise UsageError("generator map does not generate the semigroup")
    cosets, d = enumerate_cosets(L)
    pos = {c.key: j for j, c in enumerate(cosets)}
    delta = {}
    for j, c in enumerate(cosets):
        for letter in gm.signed_letters():
            out = coset_action(L, c, gm.image(letter))
            if out is not None:
                delta[(j, letter)] = pos[out.key]
    return InverseAutomaton(d, delta, 0, frozenset([0]))


def enumerate_closed_subs(S: FiniteInverseSemigroup, max_generators=None):
    """All closed inverse subsemigroups of S.

    Strategy A (order <= 20, the default): filter every nonempty subset;
    complete by construction.  Strategy B: closures of generator subsets
    up to `max_generators` (default 3), deduplicated and flagged possibly
    incomplete.  Returns (subs, complete).
    """
    if max_generators is None and S.order <= 20:
        subs = []
        for bits in range(1, 1 << S.order):
            if _closed_violation(S, bits) is None:
                subs.append(ClosedInverseSub(S, bits, _trusted=True))
        return subs, True
    from invco.closure import generate_closed

    bound = 3 if max_generators is None else max_generators
    seen = {}
    pool = list(range(S.order))
    sizes = range(0 if S.identity is not None else 1, bound + 1)
    for k in sizes:
        for gens in combinations(pool, k):
            L = generate_closed(S, gens)
            seen.setdefault(L.bits, L)
    return list(seen.values()), False


def enumerate_closed_of_index(S: FiniteInverseSemigroup, d: int, max_generators=None):
    """Closed inverse subsemigroups with exactly d cosets.

    Returns (subs, complete); complete is False under Strategy B.
    """
    if d < 1:
        raise UsageError("index must be >= 1")
    subs, complete = enumerate_closed_subs(S, max_generators)
    hits = [L for L in subs if enumerate_cosets(L)[1] == d]
    hits.sort(key=lambda L: (len(L.members), L.bits))
    return hits, complete
