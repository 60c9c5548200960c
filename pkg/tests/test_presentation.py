import itertools
from collections import Counter

import pytest

from wiremono.diagrams import all_matchings, permutation_of
from wiremono.monoid import H, T, evaluate_generator_word, pm_twisted_brauer, twisted_brauer
from wiremono.presentation import (
    RelationInstance,
    check_relations,
    derived_d_commutations,
    relation_suite,
    verify_relations,
)


def family_counts(n):
    return Counter(r.name.rstrip("ab") for r in relation_suite(n))


def test_counts_n3():
    # per-relation counts; they sum to 20
    assert family_counts(3) == Counter({"M1": 2, "M3": 2, "C": 2, "TL2": 2, "TL3": 4, "Mix1": 4, "Mix3": 4})
    assert len(relation_suite(3)) == 20


def test_counts_n2():
    assert family_counts(2) == Counter({"M1": 1, "C": 1, "TL3": 2, "Mix1": 2})
    assert len(relation_suite(2)) == 6


def test_far_relations_appear_from_n4():
    c = family_counts(4)
    assert c["M2"] == c["TL1"] == c["Mix2"] == 2


def test_inverse_pair():
    inv = [r for r in relation_suite(3, include_d=True) if r.name == "Inv"]
    assert len(inv) == 2


@pytest.mark.parametrize("n", range(2, 7))
def test_suites_hold(n):
    assert verify_relations(twisted_brauer(n)).ok
    rep = verify_relations(pm_twisted_brauer(n))
    assert rep.ok
    assert rep.checked == len(relation_suite(n, include_d=True)) + len(derived_d_commutations(n))


def test_mutant_fails_with_witness():
    rep = check_relations(twisted_brauer(3), [RelationInstance("bad", (H(1), H(2), H(1)), (H(2),))])
    f = rep.first_failure
    assert f is not None and f.lhs_value != f.rhs_value
    assert f.lhs_value.diagram != f.rhs_value.diagram


def test_printing():
    r = relation_suite(3)[0]
    assert str(r) == "t1 t1 = 1"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_transpositions_give_the_units(n):
    kind = twisted_brauer(n)
    reached = set()
    for length in range(1, n * (n - 1) // 2 + 2):
        for word in itertools.product([T(i) for i in range(1, n)], repeat=length):
            x = evaluate_generator_word(kind, word)
            assert x.s == 0
            reached.add(x.diagram)
    perms = {m for m in all_matchings(n) if m.is_permutation()}
    assert len(perms) == len({permutation_of(m) for m in perms})
    assert reached == perms
