"""Counting superspecial classes: closed form, genus-sum reconstruction,
unit index, and the Deuring/Eichler consistency suite."""

import pytest

from superspecial import (
    CountReport,
    InvariantViolation,
    class_number,
    count_superspecial,
    count_via_genus_sum,
    deuring_hprime,
    eichler_h,
    field_discriminant,
    is_prime,
    sprime_small,
    type_number_check,
    unit_index,
)


# ---------------------------------------------------------------------------
# count_superspecial / count_via_genus_sum
# ---------------------------------------------------------------------------

def test_count_pinned_totals():
    assert count_superspecial(2, 5).total == 1
    assert count_superspecial(3, 4).total == 5
    assert count_superspecial(11, 2).total == 5
    assert count_superspecial(13, 1).total == 2


def test_count_report_fields_for_11_2():
    r = count_superspecial(11, 2)
    assert (r.p, r.g, r.branch) == (11, 2, "3mod8")
    assert (r.h_field, r.h_order, r.unit_index) == (1, 3, 3)
    assert r.per_genus == (1, 1, 3)
    assert r.total == 5


def test_count_branch_labels():
    assert count_superspecial(2, 1).branch == "2or1mod4"
    assert count_superspecial(5, 1).branch == "2or1mod4"
    assert count_superspecial(13, 1).branch == "2or1mod4"
    assert count_superspecial(3, 1).branch == "7mod8or3"
    assert count_superspecial(7, 1).branch == "7mod8or3"
    assert count_superspecial(23, 1).branch == "7mod8or3"
    assert count_superspecial(11, 1).branch == "3mod8"
    assert count_superspecial(19, 1).branch == "3mod8"


def test_genus_sum_pinned_values():
    assert count_via_genus_sum(11, 2) == ([1, 1, 3], 5)
    assert count_via_genus_sum(3, 4) == ([1, 1, 1, 1, 1], 5)
    assert count_via_genus_sum(23, 1) == ([3, 3], 6)


def test_per_genus_length():
    for p, g in ((5, 3), (13, 2), (2, 4)):
        assert len(count_superspecial(p, g).per_genus) == 1
    for p, g in ((3, 3), (7, 2), (11, 5), (23, 1)):
        assert len(count_superspecial(p, g).per_genus) == g + 1


def test_count_rejects_bad_inputs():
    with pytest.raises(ValueError):
        count_superspecial(4, 1)
    with pytest.raises(ValueError):
        count_superspecial(1, 1)
    with pytest.raises(ValueError):
        count_superspecial(7, 0)
    with pytest.raises(ValueError):
        count_via_genus_sum(9, 1)


def test_cross_derivation_sampled():
    for p in (2, 3, 5, 7, 11, 13, 23, 43, 101, 103, 211, 499):
        for g in (1, 3, 6):
            r = count_superspecial(p, g)
            per, total = count_via_genus_sum(p, g)
            assert r.total == total, (p, g)
            assert list(r.per_genus) == per, (p, g)


def test_p2_total_independent_of_genus():
    totals = {count_superspecial(2, g).total for g in range(1, 11)}
    assert totals == {1}


def test_closed_form_branch_arithmetic():
    # 7 mod 8 (and p=3): (g+1) h; 3 mod 8, p != 3: (g+3) h
    for p in (7, 23, 31, 3):
        h = class_number(field_discriminant(p))
        for g in (1, 2, 5):
            assert count_superspecial(p, g).total == (g + 1) * h
    for p in (11, 19, 43, 59):
        h = class_number(field_discriminant(p))
        for g in (1, 2, 5):
            assert count_superspecial(p, g).total == (g + 3) * h


def test_count_report_invariants_enforced():
    with pytest.raises(InvariantViolation):
        CountReport(p=11, g=2, branch="3mod8", h_field=1, h_order=3,
                    unit_index=3, per_genus=(1, 1, 3), total=6)
    with pytest.raises(InvariantViolation):
        CountReport(p=11, g=2, branch="3mod8", h_field=1, h_order=2,
                    unit_index=3, per_genus=(1, 1, 2), total=4)


# ---------------------------------------------------------------------------
# field_discriminant / unit_index
# ---------------------------------------------------------------------------

def test_field_discriminant():
    assert field_discriminant(2) == -8
    assert field_discriminant(5) == -20
    assert field_discriminant(13) == -52
    assert field_discriminant(3) == -3
    assert field_discriminant(7) == -7
    assert field_discriminant(11) == -11


def test_unit_index_pinned():
    assert unit_index(7) == 1
    assert unit_index(3) == 1
    assert unit_index(11) == 3
    assert unit_index(19) == 3
    assert unit_index(23) == 1


def test_unit_index_rejects_other_residues():
    for p in (2, 5, 13, 17):
        with pytest.raises(ValueError):
            unit_index(p)


def test_unit_index_law_sampled():
    for p in range(3, 500):
        if is_prime(p) and p % 4 == 3:
            assert class_number(-4 * p) == unit_index(p) * class_number(-p), p


# ---------------------------------------------------------------------------
# Deuring / Eichler suite
# ---------------------------------------------------------------------------

def test_deuring_hprime_pinned():
    assert deuring_hprime(13) == 1
    assert deuring_hprime(7) == 1
    assert deuring_hprime(11) == 2


def test_eichler_h_pinned():
    assert eichler_h(5) == 1
    assert eichler_h(11) == 2
    assert eichler_h(13) == 1


def test_type_number_pinned():
    assert type_number_check(7) == 1
    assert type_number_check(11) == 2
    assert type_number_check(13) == 1


def test_deuring_suite_rejects_small_p():
    for fn in (deuring_hprime, eichler_h, type_number_check):
        for p in (2, 3):
            with pytest.raises(ValueError):
                fn(p)
        with pytest.raises(ValueError):
            fn(9)


def test_parity_and_two_models_sampled():
    for p in range(5, 600):
        if not is_prime(p):
            continue
        h = eichler_h(p)
        hp = deuring_hprime(p)
        assert (h + hp) % 2 == 0, p
        assert type_number_check(p) >= 1, p
        assert count_superspecial(p, 1).total == 2 * hp, p


def test_sprime_small():
    assert sprime_small(2) == 3
    assert sprime_small(3) == 4
    for p in (5, 7, 11):
        with pytest.raises(ValueError):
            sprime_small(p)
