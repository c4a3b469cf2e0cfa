"""Named semigroups and generator macros for the CLI and the test suites."""

from __future__ import annotations

from invco.errors import UsageError
from invco.semigroups import (
    FiniteInverseSemigroup,
    brandt,
    clifford,
    cyclic_group,
    symmetric_inverse_monoid,
)

BUILTIN_NAMES = ("I2", "I3", "B2", "B3", "cliffordC2", "cliffordC4")


def builtin_semigroup(name: str) -> tuple[FiniteInverseSemigroup, dict]:
    """Returns (semigroup, macros); macros name useful generating sets."""
    if name in ("I2", "I3"):
        n = int(name[1])
        S = symmetric_inverse_monoid(n)
        stab1 = frozenset(
            i for i, pb in enumerate(S.partial_bijections) if pb(1) == 1
        )
        return S, {"stab1": stab1}
    if name in ("B2", "B3"):
        S = brandt(int(name[1]))
        macros = {
            "E%d" % x: frozenset([S.id_of("(%d,%d)" % (x, x))])
            for x in range(1, int(name[1]) + 1)
        }
        return S, macros
    if name in ("cliffordC2", "cliffordC4"):
        k = int(name[-1])
        G = cyclic_group(k)
        S = clifford(G, G, range(k))
        macros = {}
        if k == 4:
            macros["H"] = frozenset(
                S.id_of(n) for n in ("1:e", "1:g2", "0:e", "0:g2")
            )
        return S, macros
    raise UsageError(
        "unknown builtin semigroup %r (known: %s)" % (name, ", ".join(BUILTIN_NAMES))
    )


def resolve_generators(S: FiniteInverseSemigroup, macros: dict, spec: str) -> frozenset:
    """Comma-separated element names and macro names; 'E' always means the
    idempotents.  The empty string is the empty generating set."""
    out = set()
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token == "E":
            out |= S.idempotents
        elif token in macros:
            out |= macros[token]
        else:
            out.add(S.id_of(token))
    return frozenset(out)
