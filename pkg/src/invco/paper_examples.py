"""End-to-end reproduction of the worked desk-scale constants.

Each check recomputes a value from scratch through the public API and
compares it against the pinned constant in EXPECTED.  The CLI command
`invco paper-examples` runs all of them and fails (exit 1) on the first
discrepancy; the test harness corrupts EXPECTED entries to exercise that
path.
"""

from __future__ import annotations

from dataclasses import dataclass

from invco.actions import enumerate_closed_of_index
from invco.builtins import builtin_semigroup
from invco.closure import ClosedInverseSub, FimClosedSub, generate_closed
from invco.cosets import (
    check_index_formula,
    coset_of,
    coset_union,
    enumerate_cosets,
    is_e_unitary,
    max_group_image,
)

EXPECTED = {
    "B2.product.same_middle": "(1,1)",
    "B2.product.mismatch_is_zero": "0",
    "B2.idempotents": ("(1,1)", "(2,2)", "0"),
    "B2.order.pairs_incomparable": False,
    "B2.proper_closed_subs": (("(1,1)",), ("(2,2)",)),
    "B2.coset_of_12": ("(1,2)",),
    "B2.index_E1": 2,
    "B2.union_E1": ("(1,1)", "(1,2)"),
    "B2.union_is_subsemigroup": False,
    "I3.stab1_size": 7,
    "I3.index_stab1": 3,
    "I3.cosets_are_level_sets": True,
    "I3.index_K_in_stab1": 1,
    "I3.index_K_in_I3": 3,
    "I3.index_formula": "holds",
    "FIM.index_K": 2,
    "FIM.index_H": 3,
    "FIM.index_K_in_H": 1,
    "FIM.index_formula": "fails",
    "FIM.K_full": False,
    "cliffordC4.e_unitary": True,
    "cliffordC4.index_E": 4,
    "cliffordC4.max_group_order": 4,
    "cliffordC4.index_H": 2,
    "cliffordC4.index_E_in_H": 2,
    "cliffordC4.index_formula": "holds",
}


@dataclass
class CheckResult:
    name: str
    claim: str
    computed: object
    expected: object
    passed: bool

    def as_dict(self) -> dict:
        tidy = lambda v: list(v) if isinstance(v, tuple) else v
        return {
            "name": self.name,
            "claim": self.claim,
            "computed": tidy(self.computed),
            "expected": tidy(self.expected),
            "passed": self.passed,
        }


@dataclass
class PaperExampleReport:
    results: list

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]


def _brandt_checks(add):
    S, macros = builtin_semigroup("B2")
    a, b = S.id_of("(1,2)"), S.id_of("(2,1)")
    add(
        "B2.product.same_middle",
        "(1,2)(2,1) multiplies to (1,1)",
        S.name_of(S.multiply(a, b)),
    )
    add(
        "B2.product.mismatch_is_zero",
        "(1,2)(1,2) collapses to zero",
        S.name_of(S.multiply(a, a)),
    )
    add(
        "B2.idempotents",
        "idempotents are the diagonal pairs and zero",
        tuple(sorted(S.name_of(e) for e in S.idempotents)),
        normalize=lambda v: tuple(sorted(v)),
    )
    add(
        "B2.order.pairs_incomparable",
        "distinct nonzero pairs are incomparable",
        S.natural_leq(S.id_of("(1,2)"), S.id_of("(2,2)")),
    )
    subs, complete = enumerate_closed_of_index(S, 2)
    assert complete
    proper = [
        tuple(L.names()) for L in subs if L.bits != (1 << S.order) - 1
    ]
    add(
        "B2.proper_closed_subs",
        "the only proper closed inverse subsemigroups are the E_x",
        tuple(sorted(proper)),
        normalize=lambda v: tuple(sorted(v)),
    )
    E1 = ClosedInverseSub(S, macros["E1"])
    c = coset_of(E1, a)
    add(
        "B2.coset_of_12",
        "the coset of (1,2) over E_1 is the singleton {(1,2)}",
        tuple(sorted(S.name_of(m) for m in c.members())),
    )
    add("B2.index_E1", "E_1 has two cosets", enumerate_cosets(E1)[1])
    report = coset_union(E1)
    add(
        "B2.union_E1",
        "the union of the E_1-cosets is the first row",
        tuple(sorted(S.name_of(m) for m in report.union)),
        normalize=lambda v: tuple(sorted(v)),
    )
    add(
        "B2.union_is_subsemigroup",
        "that union is not an inverse subsemigroup",
        report.direct_subsemigroup,
    )


def _i3_checks(add):
    S, macros = builtin_semigroup("I3")
    L = ClosedInverseSub(S, macros["stab1"])
    add("I3.stab1_size", "stab(1) has 7 elements", len(L))
    cosets, idx = enumerate_cosets(L)
    add("I3.index_stab1", "stab(1) has 3 cosets", idx)
    level_sets = {
        k: frozenset(
            i for i, pb in enumerate(S.partial_bijections) if pb(1) == k
        )
        for k in (1, 2, 3)
    }
    add(
        "I3.cosets_are_level_sets",
        "the cosets are the sets {sigma : 1 sigma = k}",
        sorted(c.members() for c in cosets) == sorted(level_sets.values()),
    )
    perm_id = next(
        i for i, pb in enumerate(S.partial_bijections) if pb.mapping == (1, 2, 3)
    )
    perm_23 = next(
        i for i, pb in enumerate(S.partial_bijections) if pb.mapping == (1, 3, 2)
    )
    K = ClosedInverseSub(S, [perm_id, perm_23])
    add(
        "I3.index_K_in_stab1",
        "K has a single coset inside stab(1)",
        enumerate_cosets(K, within=L)[1],
    )
    add("I3.index_K_in_I3", "K has 3 cosets in the whole monoid", enumerate_cosets(K)[1])
    add(
        "I3.index_formula",
        "3 = 3 * 1 even though K is not full",
        check_index_formula(S, L, K).verdict,
    )


def _fim_checks(add):
    K = FimClosedSub.from_generators("xy", ["xx"])
    H = FimClosedSub.from_generators("xy", ["xx", "yy"])
    add("FIM.index_K", "up<x^2> has two cosets", K.index)
    add("FIM.index_H", "up<x^2,y^2> has three cosets", H.index)
    report = check_index_formula(None, H, K)
    add("FIM.index_K_in_H", "K has one coset inside H", report.index_h_k)
    add(
        "FIM.index_formula",
        "2 differs from 3 * 1: the index formula fails here",
        report.verdict,
    )
    add("FIM.K_full", "because K is not full", report.k_full)


def _clifford_checks(add):
    S, macros = builtin_semigroup("cliffordC4")
    add("cliffordC4.e_unitary", "the linked C4 pair is E-unitary", is_e_unitary(S))
    E = generate_closed(S, S.idempotents)
    add("cliffordC4.index_E", "the idempotents have 4 cosets", enumerate_cosets(E)[1])
    add(
        "cliffordC4.max_group_order",
        "matching the maximum group image",
        max_group_image(S).order,
    )
    H = ClosedInverseSub(S, macros["H"])
    report = check_index_formula(S, H, E)
    add("cliffordC4.index_H", "[S:H] = 2", report.index_s_h)
    add("cliffordC4.index_E_in_H", "[H:E] = 2", report.index_h_k)
    add("cliffordC4.index_formula", "4 = 2 * 2", report.verdict)


def run_paper_examples() -> PaperExampleReport:
    results = []

    def add(name, claim, computed, normalize=None):
        expected = EXPECTED[name]
        if normalize is not None:
            expected = normalize(expected)
        results.append(
            CheckResult(name, claim, computed, expected, computed == expected)
        )

    _brandt_checks(add)
    _i3_checks(add)
    _fim_checks(add)
    _clifford_checks(add)
    return PaperExampleReport(results)
