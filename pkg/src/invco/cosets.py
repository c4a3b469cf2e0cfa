"""Right cosets of closed inverse subsemigroups.

A coset of L is the upward closure of L*s for an s with s s^-1 in L; it
is compared by a canonical key (member bitset in the finite case, folded
automaton state in the FIM case), never by representative.  Enumeration,
transversals, Schreier-style generators, the index formula, coset unions
and the maximum group image all live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from invco import _core, munn
from invco.closure import (
    ClosedInverseSub,
    FimClosedSub,
    _closed_violation,
    fim_subset,
    generate_closed,
    is_coset,
    up_closure_bits,
)
from invco.errors import UsageError
from invco.semigroups import FiniteInverseSemigroup, GeneratorMap, subsemigroup


class Coset:
    """key: member bitset (finite) or automaton state (FIM);
    representative: least member id / shortlex state word."""

    __slots__ = ("sub", "key", "representative")

    def __init__(self, sub, key, representative):
        self.sub = sub
        self.key = key
        self.representative = representative

    def members(self) -> frozenset:
        if not isinstance(self.sub, ClosedInverseSub):
            raise UsageError("FIM cosets have no finite member listing")
        return frozenset(_core.iter_bits(self.key))

    def __eq__(self, other):
        return (
            isinstance(other, Coset)
            and self.sub == other.sub
            and self.key == other.key
        )

    def __hash__(self):
        return hash((self.key,))

    def __repr__(self):
        if isinstance(self.sub, ClosedInverseSub):
            S = self.sub.semigroup
            return "Coset{%s}" % ", ".join(S.name_of(a) for a in _core.iter_bits(self.key))
        return "Coset(state=%d, rep=%r)" % (self.key, self.representative)


def _product_bits(S: FiniteInverseSemigroup, bits: int, s: int) -> int:
    out = 0
    for a in _core.iter_bits(bits):
        out |= 1 << S.multiply(a, s)
    return out


def coset_of(L, s):
    """The coset of s, or None when s s^-1 is not in L."""
    if isinstance(L, FimClosedSub):
        return _fim_coset_of(L, s)
    S = L.semigroup
    if S.multiply(s, S.inv[s]) not in L:
        return None
    key = up_closure_bits(S, _product_bits(S, L.bits, s))
    rep = next(_core.iter_bits(key))
    return Coset(L, key, rep)


def same_coset(L, a, b) -> bool:
    """a and b lie in one coset of L iff a b^-1 lies in L."""
    if isinstance(L, FimClosedSub):
        return _fim_same_coset(L, a, b)
    S = L.semigroup
    for s in (a, b):
        if S.multiply(s, S.inv[s]) not in L:
            raise UsageError("coset of %s undefined" % S.name_of(s))
    return S.multiply(a, S.inv[b]) in L


def enumerate_cosets(L, within: ClosedInverseSub | None = None):
    """All cosets of L (restricted to a closed `within` if given) and the
    index.  L's own coset comes first; the rest ascend by representative."""
    if isinstance(L, FimClosedSub):
        cosets = _fim_cosets(L)
        return cosets, len(cosets)
    S = L.semigroup
    if within is not None:
        if within.semigroup is not S:
            raise UsageError("ambient subsemigroup from a different semigroup")
        if L.bits & within.bits != L.bits:
            raise UsageError("L must be contained in the ambient subsemigroup")
    amb = within.bits if within is not None else (1 << S.order) - 1
    seen = {}
    order = []
    for s in _core.iter_bits(amb):
        if S.multiply(s, S.inv[s]) not in L:
            continue
        key = up_closure_bits(S, _product_bits(S, L.bits, s)) & amb
        if key not in seen:
            c = Coset(L, key, s)
            seen[key] = c
            order.append(c)
    own = L.bits & amb
    order.sort(key=lambda c: (c.key != own, c.representative))
    return order, len(order)


def coset_to_subsemigroup(S: FiniteInverseSemigroup, subset) -> ClosedInverseSub:
    """up(C C^-1); for a coset of L this recovers L exactly."""
    ids = sorted(set(subset))
    if not is_coset(S, ids):
        raise UsageError("subset is not a coset")
    prod = 0
    for a in ids:
        for b in ids:
            prod |= 1 << S.multiply(a, S.inv[b])
    return ClosedInverseSub(S, up_closure_bits(S, prod), _trusted=True)


@dataclass
class CosetUnionReport:
    union: frozenset
    equals_semigroup: bool
    sub_is_full: bool
    direct_subsemigroup: bool
    criterion_subsemigroup: bool
    first_criterion_failure: tuple | None

    @property
    def consistent(self) -> bool:
        return self.direct_subsemigroup == self.criterion_subsemigroup


def coset_union(L: ClosedInverseSub) -> CosetUnionReport:
    """U = {s : s s^-1 in L}, the union of all cosets of L.

    Tests whether U is a closed inverse subsemigroup twice: directly, and
    through the conjugation + idempotent criterion; the two must agree.
    """
    S = L.semigroup
    u_bits = 0
    for s in range(S.order):
        if S.multiply(s, S.inv[s]) in L:
            u_bits |= 1 << s
    union = frozenset(_core.iter_bits(u_bits))
    direct = _closed_violation(S, u_bits) is None
    failure = None
    crit = True
    for e in sorted(S.idempotents & L.members):
        for s in union:
            c = S.multiply(S.multiply(s, e), S.inv[s])
            if not u_bits >> c & 1:
                crit = False
                failure = ("conjugation", s, e)
                break
        if not crit:
            break
    if crit:
        for s in union:
            if S.multiply(S.inv[s], s) not in L:
                crit = False
                failure = ("inverse_idempotent", s)
                break
    return CosetUnionReport(
        union=union,
        equals_semigroup=u_bits == (1 << S.order) - 1,
        sub_is_full=L.is_full(),
        direct_subsemigroup=direct,
        criterion_subsemigroup=crit,
        first_criterion_failure=failure,
    )


@dataclass
class Transversal:
    """One representative per coset; the identity stands for L itself
    whenever L contains it, least member / shortlex word otherwise."""

    sub: object
    pairs: tuple
    _by_key: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        for coset, rep in self.pairs:
            self._by_key[coset.key] = rep

    def representatives(self):
        return [rep for _, rep in self.pairs]

    def rep_of(self, coset: Coset):
        return self._by_key[coset.key]


def transversal(L) -> Transversal:
    if isinstance(L, FimClosedSub):
        cosets = _fim_cosets(L)
        return Transversal(L, tuple((c, c.representative) for c in cosets))
    S = L.semigroup
    cosets, _ = enumerate_cosets(L)
    pairs = []
    for c in cosets:
        rep = c.representative
        if c.key == L.bits and S.identity is not None and S.identity in L:
            rep = S.identity
        pairs.append((c, rep))
    return Transversal(L, tuple(pairs))


def delta(L, T: Transversal, r, s):
    """delta(r, s) = rs (rep of coset of rs)^-1, or None when the coset
    of rs is undefined.  Always lands in L when defined."""
    if isinstance(L, FimClosedSub):
        return _fim_delta(L, T, r, s)
    S = L.semigroup
    rs = S.multiply(r, s)
    c = coset_of(L, rs)
    if c is None:
        return None
    return S.multiply(rs, S.inv[T.rep_of(c)])


def schreier_generators(M, gm: GeneratorMap | None, L):
    """All defined delta(r, a) over the transversal and signed letters,
    plus a verification that they generate L back.

    Returns (generators, verified).  Finite case: generators are element
    ids and verification re-runs generate_closed.  FIM case: generators
    are Munn trees and verification folds them and compares automata.
    """
    if isinstance(L, FimClosedSub):
        return _fim_schreier(L)
    S = L.semigroup
    T = transversal(L)
    out = set()
    for _, r in T.pairs:
        for letter in gm.signed_letters():
            d = delta(L, T, r, gm.image(letter))
            if d is not None:
                out.add(d)
    verified = generate_closed(S, out).bits == L.bits
    return frozenset(out), verified


@dataclass
class IndexReport:
    index_s_k: int
    index_s_h: int
    index_h_k: int
    k_full: bool
    h_full: bool
    notes: tuple = ()

    @property
    def verdict(self) -> str:
        return "holds" if self.index_s_k == self.index_s_h * self.index_h_k else "fails"

    def as_dict(self) -> dict:
        return {
            "[S:K]": self.index_s_k,
            "[S:H]": self.index_s_h,
            "[H:K]": self.index_h_k,
            "K_full": self.k_full,
            "H_full": self.h_full,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def check_index_formula(S, H, K) -> IndexReport:
    """[S:K] versus [S:H][H:K]; guaranteed to hold when K is full."""
    if isinstance(H, FimClosedSub) or isinstance(K, FimClosedSub):
        if not (isinstance(H, FimClosedSub) and isinstance(K, FimClosedSub)):
            raise UsageError("H and K must both be finite or both FIM")
        if not fim_subset(K, H):
            raise UsageError("K is not contained in H")
        s_k, s_h = K.index, H.index
        h_k = _fim_relative_index(H, K)
        k_full, h_full = K.is_full(), H.is_full()
    else:
        if K.bits & H.bits != K.bits:
            raise UsageError("K is not contained in H")
        _, s_k = enumerate_cosets(K)
        _, s_h = enumerate_cosets(H)
        _, h_k = enumerate_cosets(K, within=H)
        k_full, h_full = K.is_full(), H.is_full()
    notes = []
    if not k_full:
        notes.append("K not full")
    report = IndexReport(s_k, s_h, h_k, k_full, h_full, tuple(notes))
    return report


# -- E-unitary structure -----------------------------------------------------


def is_e_unitary(S: FiniteInverseSemigroup) -> bool:
    """E(S) closed upward, i.e. anything above an idempotent is one."""
    e_bits = _core.bits_of(S.idempotents)
    return up_closure_bits(S, e_bits) == e_bits


def sigma_classes(S: FiniteInverseSemigroup) -> list[frozenset]:
    """Partition by the minimum group congruence: s ~ t iff es = et for
    some idempotent e.  Classes are sorted by least member."""
    parent = list(range(S.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    idems = sorted(S.idempotents)
    for s in range(S.order):
        for t in range(s + 1, S.order):
            if find(s) == find(t):
                continue
            if any(S.multiply(e, s) == S.multiply(e, t) for e in idems):
                parent[find(t)] = find(s)
    groups = {}
    for s in range(S.order):
        groups.setdefault(find(s), []).append(s)
    return [frozenset(g) for g in sorted(groups.values(), key=min)]


def max_group_image(S: FiniteInverseSemigroup) -> FiniteInverseSemigroup:
    """Quotient by sigma; always a group, asserted after construction."""
    classes = sigma_classes(S)
    cls_of = {}
    for i, cl in enumerate(classes):
        for s in cl:
            cls_of[s] = i
    reps = [min(cl) for cl in classes]
    table = [
        [cls_of[S.multiply(a, b)] for b in reps] for a in reps
    ]
    names = ["[%s]" % S.name_of(r) for r in reps]
    G = FiniteInverseSemigroup(names, table)
    if len(G.idempotents) != 1 or G.identity is None:
        raise AssertionError("sigma quotient is not a group: bad congruence")
    return G


def max_group_image_of_sub(L: ClosedInverseSub) -> FiniteInverseSemigroup:
    """Maximum group image of L viewed as a semigroup of its own."""
    T, _ = subsemigroup(L.semigroup, L.members)
    return max_group_image(T)


# -- FIM specifics -----------------------------------------------------------


def _state_words(aut) -> list[str]:
    """Shortlex-least word reaching each state (BFS in letter order)."""
    letters = sorted(
        {ch for _, ch in aut.delta}, key=lambda c: (c.lower(), c.isupper())
    )
    words = {aut.initial: ""}
    queue = [aut.initial]
    while queue:
        s = queue.pop(0)
        for ch in letters:
            t = aut.step(s, ch)
            if t is not None and t not in words:
                words[t] = words[s] + ch
                queue.append(t)
    return [words[s] for s in sorted(words)]


def _fim_cosets(K: FimClosedSub) -> list[Coset]:
    words = _state_words(K.automaton)
    return [Coset(K, s, words[s]) for s in range(K.automaton.n_states)]


def _fim_coset_of(K: FimClosedSub, s):
    """s may be a word or a MunnTree; None when s s^-1 is outside K."""
    if isinstance(s, munn.MunnTree):
        aut = K.automaton
        for v in s.vertices:
            munn.check_word(v, K.alphabet)
            if aut.run(v) is None:
                return None
        state = aut.run(s.mark)
        return _fim_cosets(K)[state]
    munn.check_word(s, K.alphabet)
    state = K.automaton.run(s)
    if state is None:
        return None
    return _fim_cosets(K)[state]


def _fim_same_coset(K: FimClosedSub, a, b) -> bool:
    ca, cb = _fim_coset_of(K, a), _fim_coset_of(K, b)
    if ca is None or cb is None:
        raise UsageError("coset undefined")
    return ca.key == cb.key


def _fim_relative_index(H: FimClosedSub, K: FimClosedSub) -> int:
    """Number of cosets of K with a representative inside H.

    Product reachability: pairs (K-state, H-state) where both runs are
    alive; a K-state counts when it is reachable with the H-run back at
    the base, i.e. by a word spelling an element of H whose idempotent
    part lies in K.
    """
    if H.alphabet != K.alphabet:
        raise UsageError("alphabet mismatch")
    letters = K.alphabet + K.alphabet.upper()
    start = (K.automaton.initial, H.automaton.initial)
    seen = {start}
    queue = [start]
    while queue:
        ks, hs = queue.pop(0)
        for ch in letters:
            kt = K.automaton.step(ks, ch)
            ht = H.automaton.step(hs, ch)
            if kt is None or ht is None:
                continue
            if (kt, ht) not in seen:
                seen.add((kt, ht))
                queue.append((kt, ht))
    return len({ks for ks, hs in seen if hs == H.automaton.initial})


def _fim_delta(K: FimClosedSub, T: Transversal, r: str, s: str):
    """delta on FIM: tree of rs times the inverse of its coset
    representative's tree; None when the coset of rs is undefined."""
    word = r + s
    munn.check_word(word, K.alphabet)
    state = K.automaton.run(word)
    if state is None:
        return None
    rep_word = _state_words(K.automaton)[state]
    t = munn.munn_tree(word)
    return munn.mt_multiply(t, munn.mt_inverse(munn.munn_tree(rep_word)))


def _fim_schreier(K: FimClosedSub):
    """delta(r, a) over state words and signed letters; verified by
    folding the deltas back and comparing coset automata."""
    from invco.automata import Bouquet, fold

    T = transversal(K)
    trees = []
    seen = set()
    for _, r in T.pairs:
        for ch in K.alphabet + K.alphabet.upper():
            d = _fim_delta(K, T, r, ch)
            if d is not None and (d.vertices, d.mark) not in seen:
                seen.add((d.vertices, d.mark))
                trees.append(d)
    words = [munn.traversal_word(t) for t in trees]
    regenerated = fold(Bouquet.from_words(words))
    verified = regenerated.canonical_key() == K.automaton.canonical_key()
    return trees, verified
