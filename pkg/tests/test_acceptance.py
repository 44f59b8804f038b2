"""End-to-end acceptance checks: exact small-instance facts, oracle
equivalences, and family-wide cross-validation sweeps, each with a wall
clock budget.  Logs from every run accumulate in LOGS and are verified in
one place (test_a09)."""

import itertools
import random
import time

from amoebas import (
    Amoeba,
    CONFINING_REACHED,
    CaterpillarSpec,
    Tree,
    canonical_amoeba_code,
    canonical_code,
    classify,
    completion,
    copy_status,
    decide_caterpillar,
    degree_check,
    enumerate_amoebas,
    enumerate_copies,
    enumerate_free_trees,
    find_confining_tree,
    is_confining,
    minimal_growths,
    parse_caterpillar,
    run_generation,
    shift_step,
    verify_log,
)

import oracles

STAR_LEAF = Amoeba(Tree(4, ((0, 1), (0, 2), (0, 3))), (0, 1, 0, 0))
P3_MID = Amoeba(Tree(3, ((0, 1), (1, 2))), (0, 1, 0))
P2_ROOT = Amoeba(Tree(2, ((0, 1),)), (1, 0))
SPIDER222 = Tree(7, ((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)))

LOGS = []


def _family_members_8():
    """All caterpillar amoebas on <= 8 vertices with 0/1 multiplicities
    rooted on the central path, one representative per isomorphism class."""
    seen = set()
    out = []
    for length in range(2, 9):
        room = 8 - length
        for mid in itertools.product(range(room + 1), repeat=max(0, length - 2)):
            if sum(mid) > room:
                continue
            legs = (0,) + mid + (0,)
            for bits in range(1, 1 << length):
                roots = frozenset(i + 1 for i in range(length) if bits >> i & 1)
                a = CaterpillarSpec(legs, roots).to_amoeba()
                code = canonical_amoeba_code(a)
                if code in seen:
                    continue
                seen.add(code)
                out.append(a)
    return out


def test_a01_star_mortality():
    t0 = time.monotonic()
    c = classify(STAR_LEAF, 1)
    assert c.verdict == "Mortal"
    assert c.certificate.kind == "MortalByDegree"
    assert not c.certificate.report.verdicts["delta_le_1_plus_k"]  # 3 > 1+1
    r = run_generation(STAR_LEAF, 1)
    assert r.outcome == CONFINING_REACHED
    assert r.steps == 3
    final = r.state.current
    assert final.vertex_count == 7
    assert canonical_code(final) == canonical_code(SPIDER222)
    assert is_confining(final, STAR_LEAF, 1)
    LOGS.append(r.state.log)
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    print(f"a01 star mortality: PASS ({elapsed:.2f}s)")


def test_a02_p3_center_confinement():
    t0 = time.monotonic()
    r = run_generation(P3_MID, 1)
    assert r.outcome == CONFINING_REACHED
    assert r.steps == 1
    star4 = Tree(4, ((0, 1), (0, 2), (0, 3)))
    found = find_confining_tree(P3_MID, 1, 4)
    assert found is not None
    assert canonical_code(found) == canonical_code(star4)
    LOGS.append(r.state.log)
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    print(f"a02 P3 center confinement: PASS ({elapsed:.2f}s)")


def test_a03_shift_reproduction():
    s = parse_caterpillar("C(0,2,2,3,0) roots=1,3,4")
    assert shift_step(s).legs == (0, 0, 2, 3, 4, 0)
    print("a03 shift reproduction: PASS")


def test_a04_single_rooted_edge_immortal():
    t0 = time.monotonic()
    d = decide_caterpillar(P2_ROOT)
    assert d.status == "immortal"
    r = run_generation(P2_ROOT, 1, max_steps=200, max_vertices=512)
    assert r.steps >= 200
    assert find_confining_tree(P2_ROOT, 1, 9) is None
    LOGS.append(r.state.log)
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0
    print(f"a04 rooted edge immortal: PASS ({elapsed:.2f}s)")


def _random_amoeba(rng, n_max):
    n = rng.randint(1, n_max)
    shape = oracles.random_tree(rng, n)
    mult = [rng.choice((0, 0, 1, 1, 2)) for _ in range(n)]
    if not any(mult):
        mult[rng.randrange(n)] = 1
    return Amoeba(shape, tuple(mult))


def test_a05_growth_uniqueness_small_ell():
    t0 = time.monotonic()
    rng = random.Random(0xA3B1)
    checked = 0
    while checked < 500:
        a = _random_amoeba(rng, 6)
        host = oracles.random_tree(rng, rng.randint(a.shape.vertex_count, 12))
        copies = enumerate_copies(a, host)
        if not copies:
            continue
        c = copies[rng.randrange(len(copies))]
        ell = rng.choice((1, 2))
        if copy_status(c, host, ell).dead:
            continue
        gs = minimal_growths(c, host, ell)
        assert len(gs.results) == 1, (a, host, ell)
        checked += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    print(f"a05 growth uniqueness (500 draws): PASS ({elapsed:.2f}s)")


def test_a06_minimality_matches_supertree_oracle():
    # instances with min_cost <= 3 get full oracle set equality; the
    # oracle re-proves minimality by scanning every cheaper level too
    t0 = time.monotonic()
    hosts = [t for n in range(1, 11) for t in enumerate_free_trees(n)]
    checked = 0
    for a in enumerate_amoebas(5, 2):
        size = a.shape.vertex_count
        for host in hosts:
            if host.vertex_count < size:
                continue
            copies = enumerate_copies(a, host)
            if not copies:
                continue
            seen = set()
            for c in copies:
                labels = [0] * host.vertex_count
                for v, m in c.host_mult:
                    labels[v] = 1 + m
                key = canonical_code(host, tuple(labels))
                if key in seen:
                    continue
                seen.add(key)
                for ell in (1, 2, 3):
                    gs = minimal_growths(c, host, ell)
                    if gs.cost > 3:
                        continue
                    ocost, oreps = oracles.growth_search(c, host, ell, gs.cost)
                    assert ocost == gs.cost, (a, host, ell)
                    assert oracles.same_iso_classes(gs.results, oreps), (a, host, ell)
                    checked += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 600.0
    print(f"a06 minimality oracle ({checked} instances): PASS ({elapsed:.2f}s)")


def test_a07_completion_transfer():
    t0 = time.monotonic()
    transfers = 0
    agreements = 0
    for a in enumerate_amoebas(6, 2):
        comp = completion(a)
        for n in range(comp.shape.vertex_count, 9):
            for t in enumerate_free_trees(n):
                if is_confining(t, comp, 1):
                    assert is_confining(t, a, 1), (a, t)
                    transfers += 1
        ca = classify(a, 1, max_vertices=128)
        cc = classify(comp, 1, max_vertices=128)
        if ca.verdict != "Unknown" and cc.verdict != "Unknown":
            assert ca.verdict == cc.verdict, (a, ca.verdict, cc.verdict)
            agreements += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 600.0
    print(f"a07 completion transfer ({transfers} trees, {agreements} verdict pairs): "
          f"PASS ({elapsed:.2f}s)")


def test_a08_degree_conditions():
    t0 = time.monotonic()
    immortal = 0
    forced = 0
    for a in enumerate_amoebas(6, 2):
        rep = degree_check(a)
        c = classify(a, 1, max_vertices=128)
        if c.verdict == "Immortal":
            assert rep.q == rep.M, a
            assert max(a.shape.degrees) <= rep.M, a
            immortal += 1
        if max(a.shape.degrees) > 1 + sum(a.mult):
            r = run_generation(a, 1, max_steps=5000, max_vertices=64)
            assert r.outcome == CONFINING_REACHED, a
            LOGS.append(r.state.log)
            forced += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 600.0
    print(f"a08 degree conditions ({immortal} immortal, {forced} degree-forced): "
          f"PASS ({elapsed:.2f}s)")


def test_a09_all_logs_verify():
    t0 = time.monotonic()
    deep = [
        Amoeba(Tree(4, ((0, 1), (1, 2), (2, 3))), (1, 0, 0, 0)),
        Amoeba(Tree(5, ((0, 1), (1, 2), (2, 3), (3, 4))), (0, 0, 1, 0, 0)),
        Amoeba(SPIDER222, (1,) + (0,) * 6),
    ]
    for a in deep:
        r = run_generation(a, 3, max_steps=4, max_vertices=64)
        assert r.steps >= 1
        LOGS.append(r.state.log)
    assert len(LOGS) >= 6
    for log in LOGS:
        assert verify_log(log) == []
    elapsed = time.monotonic() - t0
    print(f"a09 log validity ({len(LOGS)} logs): PASS ({elapsed:.2f}s)")


def test_a10_caterpillar_cross_validation():
    t0 = time.monotonic()
    counts = {"mortal": 0, "immortal": 0, "not_applicable": 0}
    for a in _family_members_8():
        d = decide_caterpillar(a)
        counts[d.status] += 1
        if d.status == "mortal":
            r = run_generation(a, 1, max_steps=5000, max_vertices=128)
            assert r.outcome == CONFINING_REACHED, (a, d)
        elif d.status == "immortal":
            r = run_generation(a, 1, max_steps=200, max_vertices=400)
            assert r.steps >= 200, (a, d)
            assert find_confining_tree(a, 1, 9) is None, (a, d)
    assert counts["mortal"] and counts["immortal"]
    elapsed = time.monotonic() - t0
    assert elapsed < 1800.0
    print(f"a10 caterpillar cross-validation {counts}: PASS ({elapsed:.2f}s)")
