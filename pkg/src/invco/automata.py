"""Partial deterministic automata over an involutive alphabet.

Positive letters are a-z; the matching uppercase letter acts as the
inverse direction of the same edge.  An automaton here is *dual* when
every transition has its reverse, and *inverse* when additionally each
letter acts injectively; folding a bouquet of generator loops always
lands in that class.
"""

from __future__ import annotations

import json
import os

from invco.errors import ResourceError, UsageError

DEFAULT_STATE_CAP = 10_000


def _state_cap() -> int:
    raw = os.environ.get("INVCO_STATE_CAP")
    if not raw:
        return DEFAULT_STATE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError("INVCO_STATE_CAP must be an integer, got %r" % raw)
    if cap < 1:
        raise UsageError("INVCO_STATE_CAP must be positive")
    return cap


def _letter_order(ch: str):
    # x < X < y < Y ...: shortlex tie-break expands positive direction first
    return (ch.lower(), ch.isupper())


class InverseAutomaton:
    """Partial DFA with dual edges; states are 0..n-1."""

    def __init__(self, n_states: int, delta: dict, initial: int, finals):
        self.n_states = n_states
        self.delta = dict(delta)
        self.initial = initial
        self.finals = frozenset(finals)
        for (s, ch), t in self.delta.items():
            if not (0 <= s < n_states and 0 <= t < n_states):
                raise UsageError("transition (%r,%r)->%r out of range" % (s, ch, t))
        if not 0 <= initial < n_states:
            raise UsageError("initial state out of range")
        for f in self.finals:
            if not 0 <= f < n_states:
                raise UsageError("final state out of range")

    @property
    def alphabet(self) -> str:
        return "".join(sorted({ch.lower() for _, ch in self.delta}))

    def step(self, state: int, letter: str):
        return self.delta.get((state, letter))

    def run(self, word: str):
        """Thread the partial transitions; None as soon as one is missing."""
        return self.run_from(self.initial, word)

    def run_from(self, state: int, word: str):
        for ch in word:
            state = self.delta.get((state, ch))
            if state is None:
                return None
        return state

    def accepts(self, word: str) -> bool:
        state = self.run(word)
        return state is not None and state in self.finals

    def edges(self):
        """Positive-letter transitions, sorted."""
        return sorted(
            (s, ch, t) for (s, ch), t in self.delta.items() if ch.islower()
        )

    def canonical_key(self):
        """Isomorphism key: BFS renumbering from the initial state.

        Only reachable states participate, so two connected automata are
        isomorphic (respecting initial/finals/labels) iff keys are equal.
        """
        letters = sorted({ch for _, ch in self.delta}, key=_letter_order)
        number = {self.initial: 0}
        queue = [self.initial]
        while queue:
            s = queue.pop(0)
            for ch in letters:
                t = self.delta.get((s, ch))
                if t is not None and t not in number:
                    number[t] = len(number)
                    queue.append(t)
        edges = sorted(
            (number[s], ch, number[t])
            for (s, ch), t in self.delta.items()
            if ch.islower() and s in number and t in number
        )
        finals = tuple(sorted(number[f] for f in self.finals if f in number))
        return (len(number), finals, tuple(edges))

    def renumbered(self) -> "InverseAutomaton":
        """The canonical BFS renumbering as a new automaton (initial = 0)."""
        n, finals, edges = self.canonical_key()
        delta = {}
        for s, ch, t in edges:
            delta[(s, ch)] = t
            delta[(t, ch.upper())] = s
        return InverseAutomaton(n, delta, 0, finals)

    def __repr__(self):
        return "InverseAutomaton(states=%d, edges=%d, finals=%s)" % (
            self.n_states,
            len(self.edges()),
            sorted(self.finals),
        )


def is_inverse_automaton(aut) -> bool:
    """Dual edges present and each letter a partial injection.

    Accepts an InverseAutomaton or a raw Bouquet; a nondeterministic
    bouquet fails.
    """
    if isinstance(aut, Bouquet):
        by_src = {}
        dedup = set(aut.edge_list)
        for u, ch, v in dedup:
            key = (u, ch)
            if key in by_src and by_src[key] != v:
                return False  # nondeterministic
            by_src[key] = v
        for u, ch, v in dedup:
            if (v, ch.swapcase(), u) not in dedup:
                return False
        by_tgt = {}
        for u, ch, v in dedup:
            key = (ch, v)
            if key in by_tgt and by_tgt[key] != u:
                return False
            by_tgt[key] = u
        return True
    seen_target = {}
    for (s, ch), t in aut.delta.items():
        if aut.delta.get((t, ch.swapcase())) != s:
            return False
        key = (ch, t)
        if key in seen_target and seen_target[key] != s:
            return False
        seen_target[key] = s
    return True


class Bouquet:
    """Loops of generator words glued at a base vertex (pre-folding)."""

    def __init__(self):
        self.n_vertices = 1  # vertex 0 is the base
        self.edge_list = []  # signed edges, duals included

    def _add_edge(self, u: int, ch: str, v: int):
        self.edge_list.append((u, ch, v))
        self.edge_list.append((v, ch.swapcase(), u))

    def add_loop(self, word: str):
        """Glue a fresh path spelling `word` from the base back to itself."""
        if not word:
            return
        cur = 0
        for i, ch in enumerate(word):
            nxt = 0 if i == len(word) - 1 else self.n_vertices
            if nxt:
                self.n_vertices += 1
            self._add_edge(cur, ch, nxt)
            cur = nxt

    @classmethod
    def from_words(cls, words) -> "Bouquet":
        b = cls()
        for w in words:
            b.add_loop(w)
        return b


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra


def fold(bouquet: Bouquet, rng=None) -> InverseAutomaton:
    """Merge targets of equally-labelled co-initial edges to a fixpoint.

    The result is independent of merge order; passing an rng shuffles the
    scan order, which the confluence tests exploit.  Initial and the only
    final state are the image of the base vertex.
    """
    cap = _state_cap()
    if bouquet.n_vertices > cap:
        raise ResourceError(
            "bouquet has %d vertices, cap is %d (set INVCO_STATE_CAP)"
            % (bouquet.n_vertices, cap)
        )
    uf = _UnionFind(bouquet.n_vertices)
    edges = list(bouquet.edge_list)
    changed = True
    while changed:
        changed = False
        if rng is not None:
            rng.shuffle(edges)
        head = {}
        for u, ch, v in edges:
            key = (uf.find(u), ch)
            known = head.get(key)
            if known is None:
                head[key] = uf.find(v)
            elif uf.find(known) != uf.find(v):
                uf.union(known, v)
                changed = True
    delta = {}
    for u, ch, v in edges:
        delta[(uf.find(u), ch)] = uf.find(v)
    base = uf.find(0)
    return InverseAutomaton(
        bouquet.n_vertices,
        delta,
        base,
        frozenset([base]),
    ).renumbered()


def minimize(aut: InverseAutomaton) -> InverseAutomaton:
    """Partition refinement on the partial transition structure.

    States stay partial: being undefined on a letter is itself a
    distinguishing observation, so no sink is ever added.  Unreachable
    states are dropped first.
    """
    letters = sorted({ch for _, ch in aut.delta}, key=_letter_order)
    reachable = {aut.initial}
    queue = [aut.initial]
    while queue:
        s = queue.pop(0)
        for ch in letters:
            t = aut.delta.get((s, ch))
            if t is not None and t not in reachable:
                reachable.add(t)
                queue.append(t)
    block = {s: (s in aut.finals) for s in reachable}
    while True:
        sigs = {}
        for s in reachable:
            sigs[s] = (
                block[s],
                tuple(
                    block.get(aut.delta.get((s, ch)))
                    if aut.delta.get((s, ch)) in reachable
                    else None
                    for ch in letters
                ),
            )
        relabel = {}
        new_block = {}
        for s in sorted(reachable):
            sig = sigs[s]
            if sig not in relabel:
                relabel[sig] = len(relabel)
            new_block[s] = relabel[sig]
        if new_block == block:
            break
        block = new_block
    delta = {}
    for (s, ch), t in aut.delta.items():
        if s in reachable and t in reachable:
            delta[(block[s], ch)] = block[t]
    quotient = InverseAutomaton(
        len(set(block.values())),
        delta,
        block[aut.initial],
        frozenset(block[f] for f in aut.finals if f in reachable),
    )
    return quotient.renumbered()


def state_equivalent(aut: InverseAutomaton, u: str, v: str) -> bool:
    """Do two words end in the same state (both undefined counts)."""
    return aut.run(u) == aut.run(v)


# -- interchange formats ----------------------------------------------------


def to_dot(aut: InverseAutomaton, name: str = "inverse_automaton") -> str:
    """DOT with BFS-canonical state numbering; only positive edges drawn."""
    canon = aut.renumbered()
    lines = [
        "digraph %s {" % name,
        "  rankdir=LR;",
        '  start [shape=none, label=""];',
    ]
    for s in range(canon.n_states):
        shape = "doublecircle" if s in canon.finals else "circle"
        lines.append("  %d [shape=%s];" % (s, shape))
    lines.append("  start -> %d;" % canon.initial)
    for s, ch, t in canon.edges():
        lines.append('  %d -> %d [label="%s"];' % (s, t, ch))
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(aut: InverseAutomaton) -> dict:
    canon = aut.renumbered()
    return {
        "states": canon.n_states,
        "initial": canon.initial,
        "finals": sorted(canon.finals),
        "edges": [[s, ch, t] for s, ch, t in canon.edges()],
    }


def from_json_dict(data) -> InverseAutomaton:
    try:
        n = data["states"]
        initial = data["initial"]
        finals = data["finals"]
        edges = data["edges"]
    except (TypeError, KeyError) as exc:
        raise UsageError(
            "automaton JSON needs 'states', 'initial', 'finals', 'edges'"
        ) from exc
    delta = {}
    for s, ch, t in edges:
        if not (isinstance(ch, str) and len(ch) == 1 and ch.islower()):
            raise UsageError("edge letters must be single a-z, got %r" % ch)
        delta[(s, ch)] = t
        delta[(t, ch.upper())] = s
    return InverseAutomaton(n, delta, initial, finals)


def dumps(aut: InverseAutomaton) -> str:
    return json.dumps(to_json_dict(aut), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> InverseAutomaton:
    return from_json_dict(json.loads(text))
