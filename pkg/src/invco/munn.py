"""The free inverse monoid via Munn trees.

A word over a-z (generators) and A-Z (formal inverses) denotes an element
of FIM(alphabet); its Munn tree is the set of reduced prefixes together
with the reduced word itself as the mark.  Two words denote the same
element exactly when their trees coincide, which makes the tree the
canonical form.
"""

from __future__ import annotations

import json

from invco import _core
from invco.errors import UsageError


def check_word(word: str, alphabet: str | None = None) -> str:
    """Reject non-letters and, when an alphabet is given, foreign letters."""
    for ch in word:
        low = ch.lower()
        if not ("a" <= low <= "z"):
            raise UsageError("invalid letter %r in word %r" % (ch, word))
        if alphabet is not None and low not in alphabet:
            raise UsageError(
                "letter %r outside alphabet %r" % (ch, alphabet)
            )
    return word


def invert_word(word: str) -> str:
    return word[::-1].swapcase()


def reduce_word(word: str, alphabet: str | None = None) -> str:
    """Freely reduce: cancel adjacent xX / Xx pairs to a fixpoint."""
    check_word(word, alphabet)
    return _core.reduce_word(word)


class MunnTree:
    """Canonical form (vertices, mark) of an element of FIM(X).

    vertices is a shortlex-sorted tuple of reduced words, prefix-closed
    and containing "" and the mark.
    """

    __slots__ = ("vertices", "mark")

    def __init__(self, vertices, mark: str):
        vertices = tuple(sorted(set(vertices), key=lambda v: (len(v), v)))
        vset = set(vertices)
        if "" not in vset:
            raise UsageError("tree must contain the empty word")
        if mark not in vset:
            raise UsageError("mark %r not a vertex" % mark)
        for v in vertices:
            if _core.reduce_word(v) != v:
                raise UsageError("vertex %r is not reduced" % v)
            if v and v[:-1] not in vset:
                raise UsageError("vertex set not prefix-closed at %r" % v)
        self.vertices = vertices
        self.mark = mark

    def __eq__(self, other):
        return (
            isinstance(other, MunnTree)
            and self.mark == other.mark
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.vertices, self.mark))

    def __repr__(self):
        return "MunnTree(%r, mark=%r)" % (list(self.vertices), self.mark)

    def is_idempotent(self) -> bool:
        return self.mark == ""


def munn_tree(word: str, alphabet: str | None = None) -> MunnTree:
    """Trace the word from the root: vertices are its reduced prefixes."""
    check_word(word, alphabet)
    vertices, mark = _core.munn_key(word)
    t = MunnTree.__new__(MunnTree)
    t.vertices = vertices
    t.mark = mark
    return t


def mt_multiply(t1: MunnTree, t2: MunnTree) -> MunnTree:
    """(P, w)(Q, v) = (P united with wQ, wv)."""
    verts = set(t1.vertices)
    for q in t2.vertices:
        verts.add(_core.reduce_word(t1.mark + q))
    return MunnTree(verts, _core.reduce_word(t1.mark + t2.mark))


def mt_inverse(t: MunnTree) -> MunnTree:
    """(P, w)^-1 = (w^-1 P, w^-1)."""
    minv = invert_word(t.mark)
    verts = [_core.reduce_word(minv + p) for p in t.vertices]
    return MunnTree(verts, minv)


def mt_leq(t1: MunnTree, t2: MunnTree) -> bool:
    """t1 <= t2: same mark and t1 carries at least t2's constraints."""
    return t1.mark == t2.mark and set(t2.vertices) <= set(t1.vertices)


def mt_equal(word1: str, word2: str, alphabet: str | None = None) -> bool:
    """Word problem for FIM: equal Munn trees."""
    check_word(word1, alphabet)
    check_word(word2, alphabet)
    return _core.munn_key(word1) == _core.munn_key(word2)


def traversal_word(t: MunnTree) -> str:
    """A word evaluating to t: depth-first tour of the tree, then the mark.

    The tour visits every vertex and cancels to the empty word, so the
    traced tree is exactly (vertices, mark).
    """
    vset = set(t.vertices)
    letters = sorted({ch for v in t.vertices for ch in v})

    def tour(v: str) -> str:
        out = []
        for ch in letters:
            w = _core.reduce_word(v + ch)
            # only walk edges away from the root: proper children
            if len(w) > len(v) and w in vset:
                out.append(ch + tour(w) + ch.swapcase())
        return "".join(out)

    return tour("") + t.mark


def to_json_dict(t: MunnTree) -> dict:
    return {"vertices": list(t.vertices), "mark": t.mark}


def from_json_dict(data) -> MunnTree:
    try:
        return MunnTree(data["vertices"], data["mark"])
    except (TypeError, KeyError) as exc:
        raise UsageError("tree JSON needs 'vertices' and 'mark'") from exc


def dumps(t: MunnTree) -> str:
    return json.dumps(to_json_dict(t), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> MunnTree:
    return from_json_dict(json.loads(text))
