"""Acceptance suite: eight exact end-to-end checks, one test per criterion.

Every assertion is exact (tolerance 0).  Criteria with a runtime budget
assert the elapsed wall time as part of the criterion.
"""

import time

import numpy as np

from superspecial import (
    Disc,
    canonical_module,
    class_group,
    class_number,
    class_number_dirichlet,
    compose,
    count_superspecial,
    count_via_genus_sum,
    decompose,
    deuring_hprime,
    eichler_h,
    hecke_orbit_report,
    is_prime,
    kernels,
    principal_form,
    random_conjugate,
    split,
    sprime_small,
    type_number_check,
    unit_index,
)


def _primes(lo, hi):
    return [p for p in range(lo, hi) if is_prime(p)]


def test_criterion_1_count_matches_genus_sum():
    """Closed-form count equals the independent genus-by-genus sum for all
    primes p < 1000 and genus 1..6, in under 10 seconds."""
    t0 = time.perf_counter()
    checked = 0
    for p in _primes(2, 1000):
        for g in range(1, 7):
            report = count_superspecial(p, g)
            per_genus, total = count_via_genus_sum(p, g)
            assert report.total == total, (p, g)
            assert list(report.per_genus) == per_genus, (p, g)
            checked += 1
    elapsed = time.perf_counter() - t0
    assert checked == 168 * 6
    assert elapsed < 10.0, f"criterion 1 took {elapsed:.1f}s"
    print(f"PASS criterion 1: {checked} (p,g) cross-derivations agree "
          f"[{elapsed:.2f}s]")


def test_criterion_2_class_number_oracle():
    """Enumeration equals the character-sum oracle for every fundamental
    |D| < 50000 and every D = -4p with p = 3 mod 4, p < 10000, in under
    60 seconds."""
    t0 = time.perf_counter()
    fundamental = 0
    for d in range(-49999, -2):
        if d % 4 not in (0, 1):
            continue
        if Disc.from_value(d).conductor != 1:
            continue
        assert class_number(d) == class_number_dirichlet(d), d
        fundamental += 1
    conductor_two = 0
    for p in _primes(3, 10000):
        if p % 4 == 3:
            assert class_number(-4 * p) == class_number_dirichlet(-4 * p), p
            conductor_two += 1
    elapsed = time.perf_counter() - t0
    assert fundamental == 15195
    assert conductor_two == 619
    assert elapsed < 60.0, f"criterion 2 took {elapsed:.1f}s"
    print(f"PASS criterion 2: {fundamental} fundamental + {conductor_two} "
          f"conductor-2 oracle agreements [{elapsed:.2f}s]")


def test_criterion_3_unit_index_law():
    """h(-4p) = unit_index(p) * h(-p) for every p = 3 mod 4 below 10000."""
    checked = 0
    for p in _primes(3, 10000):
        if p % 4 != 3:
            continue
        assert class_number(-4 * p) == unit_index(p) * class_number(-p), p
        checked += 1
    assert checked == 619
    print(f"PASS criterion 3: unit-index law on {checked} primes")


def test_criterion_4_small_prime_counts():
    """The two closed-form values for p = 2 and p = 3."""
    assert sprime_small(2) == 3
    assert sprime_small(3) == 4
    print("PASS criterion 4: sprime_small(2) = 3 and sprime_small(3) = 4")


def test_criterion_5_deuring_suite():
    """For all 3 < p < 10000: h + h' is even, t >= 1, and the genus-1 count
    equals 2h', in under 60 seconds."""
    t0 = time.perf_counter()
    checked = 0
    for p in _primes(5, 10000):
        h = eichler_h(p)
        hp = deuring_hprime(p)
        assert (h + hp) % 2 == 0, p
        assert type_number_check(p) == (h + hp) // 2
        assert type_number_check(p) >= 1, p
        assert count_superspecial(p, 1).total == 2 * hp, p
        checked += 1
    elapsed = time.perf_counter() - t0
    assert checked == 1227
    assert elapsed < 60.0, f"criterion 5 took {elapsed:.1f}s"
    print(f"PASS criterion 5: Deuring suite on {checked} primes "
          f"[{elapsed:.2f}s]")


def _case_a_tuples(max_n=12):
    return [(r, s) for r in range(max_n // 2 + 1)
            for s in range(max_n // 2 + 1 - r) if r + s >= 1]


def _case_b_tuples(max_n=12):
    return [(r, s, t) for r in range(max_n // 2 + 1)
            for s in range(max_n + 1 - 2 * r)
            for t in range(max_n + 1 - 2 * r - s) if 2 * r + s + t >= 1]


def test_criterion_6_classifier_round_trip():
    """For (p,k) in {(3,6),(11,6),(7,6),(23,6)}, every invariant tuple with
    n <= 12, and 100 seeds each: decompose recovers the construction tuple
    and split returns a verified canonical conjugation, in under 30 s."""
    t0 = time.perf_counter()
    rounds = 0
    for p, k in ((3, 6), (11, 6), (7, 6), (23, 6)):
        case_a = p % 8 == 3
        tuples = _case_a_tuples() if case_a else _case_b_tuples()
        for args in tuples:
            base = canonical_module(p, k, *args)
            canon = base.W.entries
            for seed in range(100):
                m = random_conjugate(base, seed)
                inv = decompose(m)
                got = (inv.r, inv.s) if case_a else (inv.r, inv.s, inv.t)
                assert got == args, (p, k, args, seed)
                u, inv_split = split(m)
                assert inv_split == inv
                lhs = kernels.matmul2k(m.W.entries, u.entries, k)
                rhs = kernels.matmul2k(u.entries, canon, k)
                assert np.array_equal(lhs, rhs), (p, k, args, seed)
                rounds += 1
    elapsed = time.perf_counter() - t0
    assert rounds == (27 + 27 + 251 + 251) * 100
    assert elapsed < 30.0, f"criterion 6 took {elapsed:.1f}s"
    print(f"PASS criterion 6: {rounds} decompose/split round trips verified "
          f"[{elapsed:.2f}s]")


def test_criterion_7_hecke_orbit_guarantee():
    """At least 20 (p, ell) pairs with trivial localized Picard group report
    a guaranteed orbit total of g+1 for g in 1..5; the guarantee hypothesis
    is monotone on every report."""
    guaranteed_pairs = 0
    reports = 0
    for p in _primes(3, 120):
        if p % 4 != 3:
            continue
        for ell in (3, 5, 7, 11, 13, 17, 19):
            if ell == p:
                continue
            for g in range(1, 6):
                r = hecke_orbit_report(p, g, ell)
                reports += 1
                if r.pic_R_loc == 1:
                    assert r.pic_O_loc == 1, (p, ell)
                    assert r.guarantee
                    assert r.orbit_total_guaranteed == g + 1, (p, g, ell)
                    assert r.per_genus_quotients == (1,) * (g + 1)
                else:
                    assert not r.guarantee
                    assert r.orbit_total_guaranteed is None
            if hecke_orbit_report(p, 1, ell).pic_R_loc == 1:
                guaranteed_pairs += 1
    for p, ell in ((7, 3), (11, 3), (11, 5)):
        assert hecke_orbit_report(p, 1, ell).pic_R_loc == 1
    assert guaranteed_pairs >= 20
    print(f"PASS criterion 7: {guaranteed_pairs} guaranteed (p,ell) pairs, "
          f"{reports} reports monotone")


def test_criterion_8_class_group_axioms():
    """Identity, inverses, commutativity, associativity on all triples, and
    Lagrange order divisibility for five discriminants."""
    for d in (-23, -47, -44, -92, -163):
        grp = class_group(d)
        forms = grp.elements
        h = len(forms)
        assert h == class_number(d)
        e = principal_form(d)
        assert forms[0] == e
        for f in forms:
            assert compose(e, f) == f
            assert compose(f, f.inverse()) == e
        for f in forms:
            for g in forms:
                assert compose(f, g) == compose(g, f)
        for f in forms:
            for g in forms:
                fg = compose(f, g)
                for w in forms:
                    assert compose(fg, w) == compose(f, compose(g, w))
        for o in grp.orders:
            assert h % o == 0
    print("PASS criterion 8: class-group axioms on all triples for "
          "D in {-23,-47,-44,-92,-163}")
