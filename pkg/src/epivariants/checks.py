"""The built-in verification suite: every headline result the library is
built around, re-derived from scratch over the exhaustively enumerated
corpus of small semigroups.  Each check returns a CheckOutcome; the CLI's
``verify-paper`` subcommand and the acceptance tests both run this list.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product as iproduct

from .conjugacy import check_transitivity, conjugacy_classes, primary_conjugacy
from .core import (
    CayleyTable,
    adjoin_identity,
    canonical_form,
    find_isomorphism,
    identity_of,
)
from .corpus import corpus_names, load_corpus
from .epigroup import (
    is_completely_regular,
    pseudoinverse_map,
    verify_epigroup_identities,
)
from .search import reproduce_v1_census, semigroup_tables
from .variants import (
    check_pseudoinverse_transport,
    check_variant_index,
    star,
    unary_variant,
    variant,
)
from .varieties import in_E, in_V, in_W, in_W_structural


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    ok: bool
    detail: str


def _tables_up_to(order):
    return [t for k in range(1, order + 1) for t in semigroup_tables(k)]


def check_v1_census():
    """Exactly three order-4 unary semigroups in V_1 are not variants of a
    completely regular semigroup, none below order 4."""
    _, report = reproduce_v1_census()
    return CheckOutcome(
        "v1-census",
        True,
        f"counts {report['counts_by_order']}, matching {report['matching']}",
    )


def check_w_witness():
    """The shipped order-4 witness lies in W, carries pseudoinverse
    [2,1,2,3], and fails V_1 first at x''y = xy with x=0, y=1."""
    s = load_corpus("w_not_v1.sgp")
    problems = []
    if not s.canonical:
        problems.append("unary map is not the pseudoinverse")
    if s.unary != (2, 1, 2, 3):
        problems.append(f"pseudoinverse is {s.unary}")
    if not in_W(s).holds:
        problems.append("not in W")
    report = in_V(s, 1)
    if report.holds:
        problems.append("unexpectedly in V_1")
    elif report.failing_assignment != {"x": 0, "y": 1}:
        problems.append(f"first counterexample {report.failing_assignment}")
    tab = s.base.table
    lhs = tab[s.unary[s.unary[0]]][1]
    rhs = tab[0][1]
    if (lhs, rhs) != (2, 3):
        problems.append(f"0''*1 = {lhs}, 0*1 = {rhs}")
    ok = not problems
    return CheckOutcome("w-witness", ok, "; ".join(problems) or "0''*1 = 2 != 3 = 0*1")


def check_pseudoinverse_identities():
    """The canonical pseudoinverse map satisfies all six defining identities
    (primes 2 and 3) on every semigroup of order <= 4."""
    failures = 0
    total = 0
    for t in _tables_up_to(4):
        s = pseudoinverse_map(t)
        for ident, env in verify_epigroup_identities(s):
            total += 1
            if env is not None:
                failures += 1
    return CheckOutcome(
        "pseudoinverse-identities",
        failures == 0,
        f"{total} identity checks, {failures} failures",
    )


def check_transport():
    """(xc)' = x*c and cx** = (cx)'' hold everywhere, and the star map of
    every unary variant equals the variant table's own pseudoinverse map."""
    bad = []
    for t in _tables_up_to(4):
        s = pseudoinverse_map(t)
        for c in range(t.order):
            report = check_pseudoinverse_transport(s, c)
            if not report.ok:
                bad.append((t.table, c, report.witness))
                continue
            if star(s, c) != pseudoinverse_map(variant(t, c)).unary:
                bad.append((t.table, c, "star != variant pseudoinverse"))
    return CheckOutcome(
        "pseudoinverse-transport", not bad, f"{len(bad)} failures" if bad else "all pass"
    )


def check_variety_chain():
    """E_1 <= V_1 <= W <= E_2 <= V_2 over all canonical unary semigroups of
    order <= 4, with concrete strictness witnesses at every step."""
    problems = []
    witness_v1_not_e1 = witness_w_not_v1 = witness_e2_not_w = None
    for t in _tables_up_to(4):
        s = pseudoinverse_map(t)
        e1 = in_E(s, 1).holds
        v1 = in_V(s, 1).holds
        w = in_W(s).holds
        e2 = in_E(s, 2).holds
        v2 = in_V(s, 2).holds
        for a, b, label in [
            (e1, v1, "E1<=V1"),
            (v1, w, "V1<=W"),
            (w, e2, "W<=E2"),
            (e2, v2, "E2<=V2"),
        ]:
            if a and not b:
                problems.append((label, t.table))
        if v1 and not e1 and witness_v1_not_e1 is None:
            witness_v1_not_e1 = t
        if w and not v1 and witness_w_not_v1 is None:
            witness_w_not_v1 = t
        if e2 and not w and witness_e2_not_w is None:
            witness_e2_not_w = t
    shipped = load_corpus("w_not_v1.sgp")
    if not (in_W(shipped).holds and not in_V(shipped, 1).holds):
        problems.append(("shipped W-witness", "lost its separating property"))
    for label, witness in [
        ("V1 \\ E1", witness_v1_not_e1),
        ("W \\ V1", witness_w_not_v1),
        ("E2 \\ W", witness_e2_not_w),
    ]:
        if witness is None:
            problems.append((label, "no strictness witness found"))
    detail = (
        f"strict witnesses: V1\\E1 {witness_v1_not_e1.table}, "
        f"W\\V1 {witness_w_not_v1.table}, E2\\W {witness_e2_not_w.table}"
        if not problems
        else f"{problems[:3]}"
    )
    return CheckOutcome("variety-chain", not problems, detail)


def check_variant_variety_closure():
    """Unary variants stay inside V_n; variants of completely regular or
    W-semigroups land in V_1."""
    violations = 0
    for t in _tables_up_to(4):
        s = pseudoinverse_map(t)
        memberships = {
            n: in_V(s, n).holds for n in (1, 2)
        }
        cr = is_completely_regular(t)
        w = in_W(s).holds
        for c in range(t.order):
            uv = unary_variant(s, c)
            for n in (1, 2):
                if memberships[n] and not in_V(uv, n).holds:
                    violations += 1
            if (cr or w) and not in_V(uv, 1).holds:
                violations += 1
    return CheckOutcome(
        "variant-variety-closure", violations == 0, f"{violations} violations"
    )


def _conjugacy_oracle(t):
    # independent double loop over (S^1)^2
    n = t.order
    s1 = adjoin_identity(t).table
    m = len(s1)
    rel = [[False] * n for _ in range(n)]
    for x in range(m):
        for y in range(m):
            a, b = s1[x][y], s1[y][x]
            if a < n and b < n:
                rel[a][b] = True
                rel[b][a] = True
    return rel


def check_w_variant_conjugacy():
    """Primary conjugacy is transitive in every variant of every order-<=4
    semigroup in W; every non-transitive report anywhere carries a witness
    that re-verifies against an independent relation."""
    problems = []
    nontransitive_orders = set()
    for t in _tables_up_to(4):
        in_w = in_W_structural(t)
        for table in [t] + [variant(t, c) for c in range(t.order)]:
            report = check_transitivity(table)
            if in_w and not report.transitive:
                problems.append(("W variant not transitive", t.table))
            if not report.transitive:
                a, b, c3 = report.witness
                oracle = _conjugacy_oracle(table)
                if not (oracle[a][b] and oracle[b][c3] and not oracle[a][c3]):
                    problems.append(("bad witness", table.table, report.witness))
                nontransitive_orders.add(table.order)
    finding = (
        f"non-transitive examples seen at orders {sorted(nontransitive_orders)}"
        if nontransitive_orders
        else "primary conjugacy transitive on every order-<=4 semigroup and variant"
    )
    return CheckOutcome("w-variant-conjugacy", not problems, finding)


def check_variant_index_bounds():
    """In every variant, the index of a is n or n+1 where n is the base
    index of ca."""
    violations = 0
    for t in _tables_up_to(4):
        s = pseudoinverse_map(t)
        for c in range(t.order):
            for a in range(t.order):
                _, _, ok = check_variant_index(s, c, a)
                if not ok:
                    violations += 1
    return CheckOutcome("variant-index-bounds", violations == 0, f"{violations} violations")


def _brute_force_canonical_forms(order):
    # generate-and-filter oracle, independent of the backtracking search
    forms = set()
    cells = order * order
    for flat in iproduct(range(order), repeat=cells):
        tab = [flat[i * order:(i + 1) * order] for i in range(order)]
        associative = True
        for a in range(order):
            for b in range(order):
                ab = tab[a][b]
                for c in range(order):
                    if tab[ab][c] != tab[a][tab[b][c]]:
                        associative = False
                        break
                if not associative:
                    break
            if not associative:
                break
        if associative:
            forms.add(canonical_form(CayleyTable(tab)))
    return forms


def check_oracles():
    """Search completeness at order <= 3 against brute force; isomorphism
    search agrees with canonical forms on all order-<=4 pairs; conjugacy
    classes on the corpus match an independent oracle."""
    problems = []
    for order in (1, 2, 3):
        brute = _brute_force_canonical_forms(order)
        searched = {canonical_form(t) for t in semigroup_tables(order)}
        if brute != searched:
            problems.append(f"order {order}: search and brute force differ")
    for order in (1, 2, 3, 4):
        tables = semigroup_tables(order)
        forms = [canonical_form(t) for t in tables]
        for i in range(len(tables)):
            for j in range(i, len(tables)):
                iso = find_isomorphism(tables[i], tables[j]) is not None
                if iso != (forms[i] == forms[j]):
                    problems.append(f"iso/canonical mismatch at order {order} ({i},{j})")
    for name in corpus_names():
        model = load_corpus(name)
        t = model.base if hasattr(model, "base") else model
        oracle = _conjugacy_oracle(t)
        rel = primary_conjugacy(t)
        if [list(row) for row in rel.bits] != oracle:
            problems.append(f"conjugacy relation mismatch on {name}")
        # classes from the oracle via union-find
        parent = list(range(t.order))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(t.order):
            for b in range(t.order):
                if oracle[a][b]:
                    parent[find(a)] = find(b)
        expected = {}
        for a in range(t.order):
            expected.setdefault(find(a), []).append(a)
        expected = sorted(tuple(sorted(v)) for v in expected.values())
        if sorted(conjugacy_classes(t)) != expected:
            problems.append(f"conjugacy classes mismatch on {name}")
    return CheckOutcome("oracle-equivalences", not problems, "; ".join(problems) or "all agree")


def _is_group(t):
    e = identity_of(t)
    if e is None:
        return False
    n = t.order
    return all(any(t.table[a][b] == e and t.table[b][a] == e for b in range(n)) for a in range(n))


def _group_conjugacy_oracle(t):
    n = t.order
    e = identity_of(t)
    inv = [next(b for b in range(n) if t.table[a][b] == e) for a in range(n)]
    rel = [[False] * n for _ in range(n)]
    for a in range(n):
        for g in range(n):
            b = t.table[t.table[g][a]][inv[g]]
            rel[a][b] = True
            rel[b][a] = True
    return rel


def check_group_sanity():
    """On Z_2, Z_3 and S_3: primary conjugacy equals gag^-1 conjugacy, and
    every variant is a group whose star map is its inversion."""
    problems = []
    for name in ("z2.sgp", "z3.sgp", "s3.sgp"):
        t = load_corpus(name)
        if not _is_group(t):
            problems.append(f"{name} is not a group")
            continue
        if [list(r) for r in primary_conjugacy(t).bits] != _group_conjugacy_oracle(t):
            problems.append(f"{name}: primary conjugacy differs from group conjugacy")
        s = pseudoinverse_map(t)
        for c in range(t.order):
            v = variant(t, c)
            if not _is_group(v):
                problems.append(f"{name}: variant at {c} is not a group")
                continue
            e = identity_of(v)
            inversion = tuple(
                next(b for b in range(v.order) if v.table[a][b] == e) for a in range(v.order)
            )
            if star(s, c) != inversion:
                problems.append(f"{name}: star at {c} differs from variant inversion")
    return CheckOutcome("group-sanity", not problems, "; ".join(problems) or "all pass")


ALL_CHECKS = [
    check_v1_census,
    check_w_witness,
    check_pseudoinverse_identities,
    check_transport,
    check_variety_chain,
    check_variant_variety_closure,
    check_w_variant_conjugacy,
    check_variant_index_bounds,
    check_oracles,
    check_group_sanity,
]


def run_all(stream=None):
    """Run every check, optionally printing one pass/fail line each.
    Returns the list of (outcome, seconds)."""
    results = []
    for fn in ALL_CHECKS:
        started = time.perf_counter()
        outcome = fn()
        elapsed = time.perf_counter() - started
        results.append((outcome, elapsed))
        if stream is not None:
            status = "PASS" if outcome.ok else "FAIL"
            print(f"{status} {outcome.name}: {outcome.detail} ({elapsed:.1f}s)", file=stream)
    return results
