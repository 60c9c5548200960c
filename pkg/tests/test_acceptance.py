"""Acceptance criteria 1-11, one PASS/FAIL line each.

Criterion 12 (the asymptotic hardness claim) is not checkable by computation
and is covered constructively by criteria 8-10.
"""

from __future__ import annotations

import io
import random
import time

import pytest

from oracles import (
    FIG1,
    FIG4_NEW_CIRCLES,
    FIG4_PRODUCT,
    FIG4_SECOND,
    PART_CIRCLES,
    PART_FIRST,
    PART_PRODUCT,
    PART_SECOND,
    fig5_matchings,
    part,
)
from wiremono.cli import run
from wiremono.diagrams import Matching, brauer_multiply, partition_multiply
from wiremono.green import (
    SubgroupCoordinates,
    brute_force_green_oracle,
    find_idempotent_in_h_class,
    h_related,
    j_class_count,
    j_related,
    l_related,
    r_related,
    regular_witness,
    subgroup_coordinates,
    subgroup_element,
    subgroup_inverse,
)
from wiremono.identities import (
    Identity,
    Outcome,
    RandomIdentityFactory,
    balance_witness,
    check_symmetric_group,
    evaluate,
    is_balanced,
    search_counterexample,
    verify_certificate,
)
from wiremono.monoid import (
    H,
    T,
    TwistedElement,
    multiply,
    pm_twisted_brauer,
    random_element,
    twisted_brauer,
)
from wiremono.perms import Perm
from wiremono.presentation import RelationInstance, check_relations, verify_relations
from wiremono.reduction import (
    ReductionPlan,
    TrapFailure,
    almeida_trap,
    build_reduced_identity,
    g_words,
    lift_counterexample,
    reduce_phi_power_at,
    seed_lengths,
)


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


def _cli(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def test_criterion_01_enumeration(report):
    t0 = time.perf_counter()
    counts = []
    for n in range(1, 5):
        code, text = _cli("enumerate", "--brauer", str(n))
        assert code == 0
        counts.append(len(text.splitlines()))
    _, text = _cli("enumerate", "--brauer", "3")
    listed = {Matching.parse(line) for line in text.splitlines()}
    same = listed == set(fig5_matchings())
    dt = time.perf_counter() - t0
    ok = counts == [1, 3, 15, 105] and same and dt < 1
    report(1, ok, f"counts {counts}, n=3 list equals figure set: {same}, {dt:.2f}s")


def test_criterion_02_fig4_product(report):
    t0 = time.perf_counter()
    x = TwistedElement(twisted_brauer(9), Matching.parse(FIG1[0]), FIG1[1])
    y = TwistedElement(twisted_brauer(9), Matching.parse(FIG4_SECOND[0]), FIG4_SECOND[1])
    xy = multiply(x, y)
    _, circles = brauer_multiply(x.diagram, y.diagram)
    d = xy.diagram
    t_wire = d.partner[0] == 9 + 2  # 1 -- 3'
    l_wire = d.partner[5] == 7  # 6 -- 8
    ok = (
        t_wire
        and l_wire
        and circles == FIG4_NEW_CIRCLES
        and xy.s == 3 + 1 + circles
        and d == Matching.parse(FIG4_PRODUCT)
        and time.perf_counter() - t0 < 1
    )
    report(2, ok, f"product {xy.format()}, new circles {circles}")


def test_criterion_03_partition_example(report):
    prod, circles = partition_multiply(part(PART_FIRST), part(PART_SECOND))
    ok = prod == part(PART_PRODUCT) and circles == PART_CIRCLES
    report(3, ok, f"product {prod.format()}, circles {circles}")


def test_criterion_04_relations(report):
    t0 = time.perf_counter()
    results = []
    for n in range(2, 7):
        for kind in (twisted_brauer(n), pm_twisted_brauer(n)):
            results.append(verify_relations(kind).ok)
    # mutations: drop a letter from each side in turn, they must fail
    kind = twisted_brauer(4)
    mutated = [
        RelationInstance("M1*", (T(1),), ()),
        RelationInstance("TL2*", (H(1), H(2), H(1)), (H(2),)),
        RelationInstance("TL3*", (H(1), H(1)), (H(1),)),
        RelationInstance("Mix1*", (H(1), T(1)), (T(1),)),
        RelationInstance("M2*", (T(1), T(2)), (T(2), T(1))),
    ]
    mrep = check_relations(kind, mutated)
    witnessed = len(mrep.failures) == len(mutated) and all(
        f.lhs_value != f.rhs_value for f in mrep.failures
    )
    dt = time.perf_counter() - t0
    ok = all(results) and witnessed and dt < 5
    report(4, ok, f"{sum(results)}/{len(results)} suites pass, {len(mrep.failures)}/5 mutants refuted, {dt:.2f}s")


def test_criterion_05_regularity(report):
    t0 = time.perf_counter()
    rng = random.Random(5)
    bad = 0
    for n in range(1, 7):
        kind = pm_twisted_brauer(n)
        for _ in range(1000):
            x = random_element(kind, rng.randint(0, 20), rng)
            if multiply(multiply(x, regular_witness(x)), x) != x:
                bad += 1
    dt = time.perf_counter() - t0
    report(5, bad == 0 and dt < 5, f"{bad} failures over 6000 elements, {dt:.2f}s")


def test_criterion_06_green_oracle(report):
    t0 = time.perf_counter()
    preds = {"L": l_related, "R": r_related, "H": h_related, "J": j_related, "D": j_related}
    mismatches, pairs = 0, 0
    for n in range(1, 5):
        oracle = brute_force_green_oracle(n)
        kind = pm_twisted_brauer(n)
        lifted = [TwistedElement(kind, m, 0) for m in oracle.elements]
        for rel, pred in preds.items():
            lab = oracle.classes[rel]
            for i, a in enumerate(lifted):
                for j, b in enumerate(lifted):
                    pairs += 1
                    if pred(a, b) != (lab[i] == lab[j]):
                        mismatches += 1
    dt = time.perf_counter() - t0
    report(6, mismatches == 0 and dt < 30, f"{mismatches} mismatches over {pairs} relation pairs, {dt:.2f}s")


def test_criterion_07_subgroups(report):
    rng = random.Random(7)
    kind = pm_twisted_brauer(5)
    per_k: dict[int, int] = {}
    members = 0
    failures = []
    attempts = 0
    while members < 100 and attempts < 100_000:
        attempts += 1
        x = random_element(kind, rng.randint(0, 12), rng)
        desc = find_idempotent_in_h_class(x)
        if desc is None:
            continue
        # spread the sample over J-classes
        if per_k.get(desc.k, 0) >= 40:
            continue
        members += 1
        per_k[desc.k] = per_k.get(desc.k, 0) + 1
        e = desc.idempotent
        cx = subgroup_coordinates(desc, x)
        other = SubgroupCoordinates(Perm(tuple(rng.sample(range(desc.k), desc.k))), rng.randint(-4, 4))
        y = subgroup_element(desc, other)
        checks = [
            multiply(e, e) == e,
            subgroup_element(desc, cx) == x,
            subgroup_coordinates(desc, y) == other,
            subgroup_coordinates(desc, multiply(x, y)) == cx * other,
            multiply(x, subgroup_inverse(desc, x)) == e,
            multiply(subgroup_inverse(desc, x), x) == e,
        ]
        if not all(checks):
            failures.append((x, checks))
    ok = members == 100 and not failures and set(per_k) == {5, 3, 1} and j_class_count(5) == 3
    report(7, ok, f"{members} members, members per k {dict(sorted(per_k.items()))}, {len(failures)} failures, N(5)={j_class_count(5)}")


def test_criterion_08_trap(report):
    t0 = time.perf_counter()
    rng = random.Random(8)
    n = 3
    kind = pm_twisted_brauer(n)
    failures = 0
    for trial in range(200):
        m = 2 + trial % 2 if trial % 3 else 1
        sub = {i: random_element(kind, rng.randint(0, 10), rng) for i in range(1, m + 1)}
        try:
            trap = almeida_trap(kind, sub, m, n)
            e = trap.descriptor.idempotent
            if multiply(e, e) != e or not all(h_related(v, e) for v in trap.values):
                failures += 1
        except TrapFailure:
            failures += 1
    dt = time.perf_counter() - t0
    plan = ReductionPlan(3, n)
    longest = max(seed_lengths(3, plan.k))
    ok = failures == 0 and plan.k == 4 and longest <= 5**4 and dt < 60
    report(8, ok, f"{failures}/200 substitutions escaped one group H-class, 2N={plan.k}, {dt:.2f}s")


def test_criterion_09_free_group_inversion(report):
    bad = []
    for m in (2, 3, 4):
        for n in (3, 5):
            g = g_words(m, n)
            back = reduce_phi_power_at(m, ReductionPlan(m, n).k, g)
            if back != [(i,) for i in range(1, m + 1)]:
                bad.append((m, n))
    report(9, not bad, f"failing (m, n): {bad}")


def test_criterion_10_end_to_end(report):
    t0 = time.perf_counter()
    n = 3
    ident = Identity.parse("xy = yx")
    red = build_reduced_identity(ident.lhs, ident.rhs, n)
    m = 2
    bound = max(len(ident.lhs), len(ident.rhs)) * (m + 2) ** ReductionPlan(m, n).k
    within = len(red.lhs) <= bound and len(red.rhs) <= bound
    witness = {"x": Perm.from_cycles(3, "(1 2)"), "y": Perm.from_cycles(3, "(2 3)")}
    zeta = lift_counterexample(n, ident.lhs, ident.rhs, witness)
    separated = evaluate(red.lhs, zeta) != evaluate(red.rhs, zeta)
    certified = verify_certificate(twisted_brauer(n), red, zeta)

    good = Identity.parse("x^2 y^2 = y^2 x^2")
    holds_s3 = check_symmetric_group(3, good).outcome is Outcome.HOLDS and is_balanced(good)
    red2 = build_reduced_identity(good.lhs, good.rhs, n)
    res = search_counterexample(twisted_brauer(n), red2, budget=100_000, seed=10)
    dt = time.perf_counter() - t0
    ok = within and separated and certified and holds_s3 and res.outcome is Outcome.EXHAUSTED and dt < 300
    report(
        10,
        ok,
        f"|U|={len(red.lhs)} <= {bound}: {within}, lifted certificate verified: {certified}, "
        f"x^2y^2=y^2x^2 holds in S_3: {holds_s3}, search: {res.outcome.value} after {res.tried}, {dt:.1f}s",
    )


def test_criterion_11_balancedness(report):
    t0 = time.perf_counter()
    kind = twisted_brauer(2)
    factory = RandomIdentityFactory(rng=random.Random(11))
    uncertified = 0
    for _ in range(1000):
        ident = factory.unbalanced()
        sub = balance_witness(kind, ident)
        if sub is None or not verify_certificate(kind, ident, sub):
            uncertified += 1
    found = 0
    for i in range(1000):
        ident = factory.balanced()
        res = search_counterexample(kind, ident, budget=10_000, seed=i)
        if res.found:
            found += 1
    dt = time.perf_counter() - t0
    ok = uncertified == 0 and found == 0
    report(
        11,
        ok,
        f"{1000 - uncertified}/1000 unbalanced certified, {found}/1000 balanced refuted in 10^4 tries each, {dt:.1f}s",
    )
