"""Finite inverse semigroups as validated multiplication tables.

Elements are small integer ids into the element list; the table is dense,
so products are O(1) everywhere downstream.  Partial bijections compose
left to right (x under s then t), matching the right actions used by the
coset machinery.
"""

from __future__ import annotations

import itertools
import json
from array import array

from invco import _core
from invco.errors import ResourceError, TableError, UsageError

# Full axiom validation is exhaustive (O(n^3) associativity); above this
# order the family constructors trust their own construction instead.
_CHECK_CAP = 600


class PartialBijection:
    """A partial injective map on {1..degree}.

    Stored as a tuple where entry x-1 is the image of x, or 0 when x is
    outside the domain.
    """

    __slots__ = ("degree", "mapping")

    def __init__(self, degree: int, mapping):
        mapping = tuple(mapping)
        if len(mapping) != degree:
            raise UsageError("mapping length %d != degree %d" % (len(mapping), degree))
        seen = set()
        for y in mapping:
            if y < 0 or y > degree:
                raise UsageError("image %r out of range 1..%d" % (y, degree))
            if y:
                if y in seen:
                    raise UsageError("not injective: image %d repeated" % y)
                seen.add(y)
        self.degree = degree
        self.mapping = mapping

    @classmethod
    def from_pairs(cls, degree: int, pairs) -> "PartialBijection":
        m = [0] * degree
        for x, y in pairs:
            if not 1 <= x <= degree:
                raise UsageError("point %r out of range 1..%d" % (x, degree))
            if m[x - 1]:
                raise UsageError("point %d mapped twice" % x)
            m[x - 1] = y
        return cls(degree, m)

    @classmethod
    def identity(cls, degree: int) -> "PartialBijection":
        return cls(degree, range(1, degree + 1))

    @classmethod
    def empty(cls, degree: int) -> "PartialBijection":
        return cls(degree, [0] * degree)

    def __call__(self, x: int):
        y = self.mapping[x - 1]
        return y if y else None

    def domain(self) -> tuple[int, ...]:
        return tuple(x for x in range(1, self.degree + 1) if self.mapping[x - 1])

    def compose(self, other: "PartialBijection") -> "PartialBijection":
        """self then other: x(st) = (xs)t."""
        if other.degree != self.degree:
            raise UsageError("degree mismatch")
        m = [0] * self.degree
        for x in range(self.degree):
            y = self.mapping[x]
            if y:
                m[x] = other.mapping[y - 1]
        return PartialBijection(self.degree, m)

    def inverse(self) -> "PartialBijection":
        m = [0] * self.degree
        for x in range(self.degree):
            y = self.mapping[x]
            if y:
                m[y - 1] = x + 1
        return PartialBijection(self.degree, m)

    def rank(self) -> int:
        return sum(1 for y in self.mapping if y)

    def name(self) -> str:
        inside = ",".join(
            "%d:%d" % (x, self.mapping[x - 1])
            for x in range(1, self.degree + 1)
            if self.mapping[x - 1]
        )
        return "{%s}" % inside

    def __eq__(self, other):
        return (
            isinstance(other, PartialBijection)
            and self.degree == other.degree
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.degree, self.mapping))

    def __repr__(self):
        return "PartialBijection(%d, %s)" % (self.degree, self.name())


def validate_table(table, inv=None):
    """Check the inverse-semigroup axioms on a square table.

    Returns a list of violations, empty when the table is fine.  Each
    violation is a tuple whose first entry names the broken axiom and
    whose remaining entries name the offending elements.  When `inv` is
    given it is cross-checked against the computed inverses.
    """
    n = len(table)
    violations = []
    flat = array("i")
    for a, row in enumerate(table):
        if len(row) != n:
            return [("shape", a, "row length %d != %d" % (len(row), n))]
        for b in row:
            if not 0 <= b < n:
                return [("range", a, b)]
        flat.extend(row)
    found_inv, bad = _core.find_inverses(flat, n)
    for a, first, second in bad:
        if first < 0:
            violations.append(("no_inverse", a))
        else:
            violations.append(("inverse_not_unique", a, first, second))
    if not bad:
        for a in range(n):
            if found_inv[found_inv[a]] != a:
                violations.append(("inverse_not_involutive", a))
        if inv is not None and list(inv) != found_inv:
            violations.append(("inverse_map_mismatch",))
    for triple in _core.assoc_violations(flat, n):
        violations.append(("associativity",) + tuple(triple))
    idems = [a for a in range(n) if flat[a * n + a] == a]
    for e, f in itertools.combinations(idems, 2):
        if flat[e * n + f] != flat[f * n + e]:
            violations.append(("idempotents_do_not_commute", e, f))
    return violations


class FiniteInverseSemigroup:
    """An inverse semigroup given by its multiplication table.

    Inverses, idempotents, the identity and the natural partial order are
    computed from the table; names are display-only.
    """

    def __init__(self, elements, table, check=True):
        elements = tuple(str(e) for e in elements)
        n = len(elements)
        if n == 0:
            raise UsageError("empty semigroup")
        if len(set(elements)) != n:
            raise UsageError("element names must be unique")
        if len(table) != n:
            raise UsageError("table has %d rows for %d elements" % (len(table), n))
        if check:
            violations = validate_table(table)
            if violations:
                raise TableError(violations)
        flat = array("i")
        for row in table:
            flat.extend(row)
        self.elements = elements
        self.order = n
        self._flat = flat
        inv, bad = _core.find_inverses(flat, n)
        if bad:
            # check=False trusts associativity, never broken inverses
            raise TableError([("no_unique_inverse", a) for a, _, _ in bad])
        self.inv = tuple(inv)
        self.idempotents = frozenset(a for a in range(n) if flat[a * n + a] == a)
        self.identity = self._find_identity()
        self._ids = {name: i for i, name in enumerate(elements)}
        self._upsets = None

    def _find_identity(self):
        n, flat = self.order, self._flat
        for e in range(n):
            if flat[e * n] != 0:
                continue
            if all(flat[e * n + s] == s for s in range(n)) and all(
                flat[s * n + e] == s for s in range(n)
            ):
                return e
        return None

    # -- basic operations ------------------------------------------------

    def _check_id(self, a: int):
        if not 0 <= a < self.order:
            raise UsageError("element id %r out of range 0..%d" % (a, self.order - 1))

    def multiply(self, a: int, b: int) -> int:
        self._check_id(a)
        self._check_id(b)
        return self._flat[a * self.order + b]

    def inverse(self, a: int) -> int:
        self._check_id(a)
        return self.inv[a]

    def heap(self, a: int, b: int, c: int) -> int:
        """Ternary <a,b,c> = a b^-1 c."""
        n = self._flat
        o = self.order
        return n[n[a * o + self.inv[b]] * o + c]

    def natural_leq(self, a: int, b: int) -> bool:
        """a <= b in the natural partial order: a = (a a^-1) b."""
        self._check_id(a)
        self._check_id(b)
        f, o = self._flat, self.order
        return a == f[f[a * o + self.inv[a]] * o + b]

    def is_idempotent(self, a: int) -> bool:
        return a in self.idempotents

    def upsets(self):
        """Bitset per element a of {b : a <= b}, cached."""
        if self._upsets is None:
            self._upsets = _core.leq_bitsets(self._flat, self.inv, self.order)
        return self._upsets

    # -- naming ----------------------------------------------------------

    def name_of(self, a: int) -> str:
        self._check_id(a)
        return self.elements[a]

    def id_of(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UsageError("no element named %r" % name) from None

    def row(self, a: int) -> tuple[int, ...]:
        o = self.order
        return tuple(self._flat[a * o : (a + 1) * o])

    def table_rows(self) -> list[list[int]]:
        return [list(self.row(a)) for a in range(self.order)]

    def __repr__(self):
        return "FiniteInverseSemigroup(order=%d, idempotents=%d)" % (
            self.order,
            len(self.idempotents),
        )


def subsemigroup(S: FiniteInverseSemigroup, members):
    """Restrict S to a product-closed member set.

    Returns (T, to_parent) where T is the restriction as a semigroup of
    its own and to_parent maps T's ids back into S.
    """
    ids = sorted(set(members))
    pos = {a: i for i, a in enumerate(ids)}
    table = []
    for a in ids:
        row = []
        for b in ids:
            c = S.multiply(a, b)
            if c not in pos:
                raise UsageError(
                    "member set not closed under products: %s * %s = %s"
                    % (S.name_of(a), S.name_of(b), S.name_of(c))
                )
            row.append(pos[c])
        table.append(row)
    T = FiniteInverseSemigroup([S.name_of(a) for a in ids], table, check=False)
    return T, tuple(ids)


# -- generator maps and word evaluation -----------------------------------


class GeneratorMap:
    """Letters -> elements; an uppercase letter spells the formal inverse."""

    def __init__(self, S: FiniteInverseSemigroup, images: dict):
        for letter in images:
            if len(letter) != 1 or not ("a" <= letter <= "z"):
                raise UsageError("generator letters must be single a-z, got %r" % letter)
        for a in images.values():
            S._check_id(a)
        self.semigroup = S
        self.alphabet = "".join(sorted(images))
        self.images = dict(images)

    def image(self, letter: str) -> int:
        if "a" <= letter <= "z":
            if letter not in self.images:
                raise UsageError("letter %r not in alphabet %r" % (letter, self.alphabet))
            return self.images[letter]
        if "A" <= letter <= "Z":
            low = letter.lower()
            if low not in self.images:
                raise UsageError("letter %r not in alphabet %r" % (letter, self.alphabet))
            return self.semigroup.inv[self.images[low]]
        raise UsageError("invalid letter %r" % letter)

    def signed_letters(self) -> str:
        return self.alphabet + self.alphabet.upper()

    def generates(self) -> bool:
        """Does the closure of the images under product/inverse cover S?"""
        S = self.semigroup
        seed = _core.bits_of(
            list(self.images.values()) + [S.inv[a] for a in self.images.values()]
        )
        bits = _core.close_bits(S._flat, S.inv, S.order, seed)
        if S.identity is not None:
            bits |= 1 << S.identity
        return bits == (1 << S.order) - 1


def evaluate_word(S: FiniteInverseSemigroup, gm: GeneratorMap, word: str) -> int:
    """Image of a word under the homomorphism induced by gm."""
    if not word:
        if S.identity is None:
            raise UsageError("empty word in a semigroup without identity")
        return S.identity
    acc = None
    for letter in word:
        a = gm.image(letter)
        acc = a if acc is None else S.multiply(acc, a)
    return acc


# -- standard families -----------------------------------------------------


def symmetric_inverse_monoid(n: int) -> FiniteInverseSemigroup:
    """All partial injections on {1..n}, composed left to right."""
    if n < 1:
        raise UsageError("need n >= 1")
    if n > 6:
        raise ResourceError("symmetric inverse monoid beyond n=6 is not desk scale")
    maps = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(1, n + 1), k):
            for img in itertools.permutations(range(1, n + 1), k):
                maps.append(PartialBijection.from_pairs(n, zip(dom, img)))
    index = {pb: i for i, pb in enumerate(maps)}
    table = [[index[a.compose(b)] for b in maps] for a in maps]
    S = FiniteInverseSemigroup(
        [pb.name() for pb in maps], table, check=len(maps) <= _CHECK_CAP
    )
    S.partial_bijections = tuple(maps)
    return S


def brandt(n: int) -> FiniteInverseSemigroup:
    """Brandt semigroup on pairs over {1..n} plus a zero."""
    if n < 1:
        raise UsageError("need n >= 1")
    names = ["(%d,%d)" % (x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
    names.append("0")
    zero = n * n
    pid = lambda x, y: (x - 1) * n + (y - 1)
    size = n * n + 1
    table = [[zero] * size for _ in range(size)]
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            for y in range(1, n + 1):
                table[pid(u, v)][pid(v, y)] = pid(u, y)
    return FiniteInverseSemigroup(names, table, check=size <= _CHECK_CAP)


def cyclic_group(n: int, sym: str = "g") -> FiniteInverseSemigroup:
    if n < 1:
        raise UsageError("need n >= 1")
    names = ["e"] + [sym if k == 1 else "%s%d" % (sym, k) for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteInverseSemigroup(names, table)


def direct_product(A: FiniteInverseSemigroup, B: FiniteInverseSemigroup):
    """Componentwise product; element (a,b) has id a*|B| + b."""
    names = [
        "%s|%s" % (na, nb) for na in A.elements for nb in B.elements
    ]
    nb = B.order
    table = []
    for a in range(A.order):
        for b in range(B.order):
            row = []
            for c in range(A.order):
                ac = A.multiply(a, c)
                arow = ac * nb
                for d in range(B.order):
                    row.append(arow + B.multiply(b, d))
            table.append(row)
    return FiniteInverseSemigroup(names, table, check=len(names) <= _CHECK_CAP)


def clifford(
    g1: FiniteInverseSemigroup, g0: FiniteInverseSemigroup, alpha
) -> FiniteInverseSemigroup:
    """Semilattice of groups over 1 > 0 with linking homomorphism alpha.

    Cross-layer products land in the bottom group through alpha; the
    natural order puts (0, alpha(g)) below (1, g).
    """
    for G, which in ((g1, "top"), (g0, "bottom")):
        if len(G.idempotents) != 1 or G.identity is None:
            raise UsageError("%s factor is not a group" % which)
    alpha = tuple(alpha)
    if len(alpha) != g1.order:
        raise UsageError("alpha must map every top-group element")
    for a in alpha:
        g0._check_id(a)
    for a in range(g1.order):
        for b in range(g1.order):
            if alpha[g1.multiply(a, b)] != g0.multiply(alpha[a], alpha[b]):
                raise UsageError(
                    "alpha is not a homomorphism at (%s, %s)"
                    % (g1.name_of(a), g1.name_of(b))
                )
    n1 = g1.order
    names = ["1:%s" % s for s in g1.elements] + ["0:%s" % s for s in g0.elements]
    size = n1 + g0.order
    table = []
    for a in range(size):
        row = []
        for b in range(size):
            if a < n1 and b < n1:
                row.append(g1.multiply(a, b))
            elif a < n1:
                row.append(n1 + g0.multiply(alpha[a], b - n1))
            elif b < n1:
                row.append(n1 + g0.multiply(a - n1, alpha[b]))
            else:
                row.append(n1 + g0.multiply(a - n1, b - n1))
        table.append(row)
    return FiniteInverseSemigroup(names, table, check=size <= _CHECK_CAP)


# -- JSON interchange -------------------------------------------------------


def to_json_dict(S: FiniteInverseSemigroup) -> dict:
    return {
        "elements": list(S.elements),
        "table": S.table_rows(),
        "identity": S.identity,
    }


def from_json_dict(data) -> FiniteInverseSemigroup:
    """Build from the JSON semigroup format; axioms are re-checked and the
    claimed identity is never trusted."""
    try:
        elements = data["elements"]
        table = data["table"]
    except (TypeError, KeyError) as exc:
        raise UsageError("semigroup JSON needs 'elements' and 'table'") from exc
    S = FiniteInverseSemigroup(elements, table, check=True)
    claimed = data.get("identity")
    if claimed is not None and claimed != S.identity:
        raise UsageError(
            "claimed identity %r but computed %r" % (claimed, S.identity)
        )
    return S


def dumps(S: FiniteInverseSemigroup) -> str:
    """Canonical (byte-stable) JSON serialization."""
    return json.dumps(to_json_dict(S), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> FiniteInverseSemigroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError("invalid JSON: %s" % exc) from exc
    return from_json_dict(data)
