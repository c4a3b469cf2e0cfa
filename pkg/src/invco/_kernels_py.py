"""Pure-Python kernels.

Same contract as the compiled module ``invco._speedups``; which one a
process uses is decided once, in :mod:`invco._core`.  Tables arrive as a
flat row-major sequence of ints (``table[a*n + b]`` is the product), and
element subsets travel as int bitsets keyed by element id.
"""

IMPL = "pure"


def assoc_violations(table, n, limit=16):
    """Collect up to `limit` triples (a,b,c) with (ab)c != a(bc)."""
    out = []
    for a in range(n):
        an = a * n
        for b in range(n):
            ab_n = table[an + b] * n
            bn = b * n
            for c in range(n):
                if table[ab_n + c] != table[an + table[bn + c]]:
                    out.append((a, b, c))
                    if len(out) >= limit:
                        return out
    return out


def find_inverses(table, n):
    """Return (inv, bad): the unique generalized inverse per element.

    ``inv[a]`` is the b with aba=a and bab=b, or -1 when none exists.
    ``bad`` lists (a, first, second) for duplicates and (a, -1, -1) for
    missing inverses.
    """
    inv = [-1] * n
    bad = []
    for a in range(n):
        an = a * n
        found = -1
        for b in range(n):
            if table[table[an + b] * n + a] == a and table[table[b * n + a] * n + b] == b:
                if found >= 0:
                    bad.append((a, found, b))
                    break
                found = b
        if found < 0:
            bad.append((a, -1, -1))
        inv[a] = found
    return inv, bad


def leq_bitsets(table, inv, n):
    """Up-set bitsets for the natural partial order.

    Entry a is the bitset of {b : a = (a a^-1) b}, i.e. of all b >= a.
    """
    ups = []
    for a in range(n):
        row = table[a * n + inv[a]] * n
        bits = 0
        for b in range(n):
            if table[row + b] == a:
                bits |= 1 << b
        ups.append(bits)
    return ups


def close_bits(table, inv, n, seed_bits):
    """Close a bitset under products and inverses (worklist fixpoint)."""
    bits = 0
    work = []
    x = 0
    s = seed_bits
    while s:
        if s & 1:
            bits |= 1 << x
            work.append(x)
        s >>= 1
        x += 1
    done = []
    while work:
        x = work.pop()
        xn = x * n
        for y in (inv[x], table[xn + x]):
            m = 1 << y
            if not bits & m:
                bits |= m
                work.append(y)
        for y in done:
            for z in (table[xn + y], table[y * n + x]):
                m = 1 << z
                if not bits & m:
                    bits |= m
                    work.append(z)
        done.append(x)
    return bits


def reduce_word(word):
    """Freely reduce a word; inverses are spelled by case-swapping."""
    out = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def munn_key(word):
    """Canonical Munn-tree key of a word.

    Returns (vertices, mark) where vertices is the shortlex-sorted tuple
    of reduced prefixes of the word and mark its full reduction.  Two
    words get equal keys exactly when they agree in the free inverse
    monoid over the word's alphabet.
    """
    verts = {""}
    cur = []
    for ch in word:
        if cur and cur[-1] == ch.swapcase():
            cur.pop()
        else:
            cur.append(ch)
        verts.add("".join(cur))
    return tuple(sorted(verts, key=lambda v: (len(v), v))), "".join(cur)
