"""Command-line front end: single queries, bulk tables, module
classification runs, and a deterministic self-test suite.

Exit codes: 0 success, 1 invariant violation or undecidable precision,
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import count as count_mod
from . import hecke as hecke_mod
from . import modclass, qform
from .arith import ResidueMatrix, hensel_alpha_roots, is_prime, kronecker, snf_mod2k
from .errors import InvariantViolation, PrecisionError
from .kernels import build_unimodular, get_backend

DEFAULT_SELFTEST_SEED = 20260814

CSV_HEADER = "p,g,branch,h_field,h_order,unit_index,total,genus_sum_total"


def _out(line: str) -> None:
    sys.stdout.write(line + "\n")


def _err(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _count_doc(rep) -> dict:
    return {
        "p": rep.p,
        "g": rep.g,
        "branch": rep.branch,
        "h_field": rep.h_field,
        "h_order": rep.h_order,
        "unit_index": rep.unit_index,
        "per_genus": list(rep.per_genus),
        "total": rep.total,
    }


def _cmd_count(args) -> int:
    rep = count_mod.count_superspecial(args.p, args.g)
    if args.json:
        _out(json.dumps(_count_doc(rep), separators=(",", ":")))
    else:
        for key, val in _count_doc(rep).items():
            if key == "per_genus":
                val = ",".join(str(x) for x in val)
            _out(f"{key}: {val}")
    return 0


def _primes_upto(n: int):
    return [p for p in range(2, n + 1) if is_prime(p)]


def _cmd_table(args) -> int:
    if args.pmax < 2:
        raise ValueError("pmax must be at least 2")
    rows = []
    for p in _primes_upto(args.pmax):
        rep = count_mod.count_superspecial(p, args.g)
        rows.append(
            {
                "p": rep.p,
                "g": rep.g,
                "branch": rep.branch,
                "h_field": rep.h_field,
                "h_order": rep.h_order,
                "unit_index": rep.unit_index,
                "total": rep.total,
                "genus_sum_total": sum(rep.per_genus),
            }
        )
    for row in rows:
        if row["total"] != row["genus_sum_total"]:
            raise InvariantViolation(f"genus sum mismatch at p={row['p']}")
    if args.format == "json":
        _out(json.dumps(rows, separators=(",", ":")))
    else:
        _out(CSV_HEADER)
        for row in rows:
            _out(",".join(str(row[k]) for k in CSV_HEADER.split(",")))
    return 0


def _cmd_classnum(args) -> int:
    h = qform.class_number(args.disc)
    if not args.oracle:
        _out(str(h))
        return 0
    oracle = qform.class_number_dirichlet(args.disc)
    if h != oracle:
        raise InvariantViolation(
            f"{h}, oracle {oracle}, disagree for D={args.disc}"
        )
    _out(f"{h}, oracle {oracle}, agree")
    return 0


def _cmd_classgroup(args) -> int:
    grp = qform.class_group(args.disc)
    doc = {
        "D": grp.D,
        "h": grp.h,
        "elements": [
            {"form": [f.a, f.b, f.c], "order": o}
            for f, o in zip(grp.elements, grp.orders)
        ],
    }
    _out(json.dumps(doc, separators=(",", ":")))
    return 0


def _cmd_decompose(args) -> int:
    try:
        m = modclass.load_module(args.file)
    except OSError as e:
        raise ValueError(f"cannot read module file: {e}") from e
    inv = modclass.decompose(m)
    doc = {"p": m.p, "k": m.k, "n": m.n, "case": inv.case, "r": inv.r, "s": inv.s}
    if inv.t is not None:
        doc["t"] = inv.t
    if args.split:
        U, _ = modclass.split(m)
        doc["U"] = U.to_lists()
        doc["verified"] = True
    _out(json.dumps(doc, separators=(",", ":")))
    return 0


def _cmd_hecke(args) -> int:
    rep = hecke_mod.hecke_orbit_report(args.p, args.g, args.ell)
    doc = {
        "p": rep.p,
        "g": rep.g,
        "ell": rep.ell,
        "pic_O_loc": rep.pic_O_loc,
        "pic_R_loc": rep.pic_R_loc,
        "guarantee": rep.guarantee,
        "orbit_total_guaranteed": rep.orbit_total_guaranteed,
        "per_genus_quotients": list(rep.per_genus_quotients),
        "extension_note": rep.extension_note,
    }
    _out(json.dumps(doc, separators=(",", ":")))
    return 0


def _cmd_deuring(args) -> int:
    if args.pmax <= 3:
        raise ValueError("pmax must exceed 3")
    _out("p,h,hprime,t,verdict")
    for p in _primes_upto(args.pmax):
        if p <= 3:
            continue
        h = count_mod.eichler_h(p)
        hprime = count_mod.deuring_hprime(p)
        t = count_mod.type_number_check(p)
        _out(f"{p},{h},{hprime},{t},ok")
    return 0


def _selftest_checks(seed: int):
    rng = np.random.default_rng(seed)

    def check_kronecker():
        discs = [-3, -4, -7, -8, -11, -15, -20, -23, -24, -163]
        for _ in range(60):
            D = int(discs[rng.integers(0, len(discs))])
            a = int(rng.integers(1, 400))
            b = int(rng.integers(1, 400))
            assert kronecker(D, a * b) == kronecker(D, a) * kronecker(D, b)

    def check_hensel():
        for p in (7, 23, 31, 47, 71):
            for k in (4, 6, 12, 30, 60):
                roots = hensel_alpha_roots(p, k)
                mod = 1 << k
                c = ((1 + p) // 4) % mod
                for a in (roots.alpha1, roots.alpha2):
                    assert (a * a + a + c) % mod == 0

    def check_snf_invariance():
        def random_unimodular(n, k):
            ops = []
            for _ in range(4 * n + 4):
                i = int(rng.integers(0, n))
                if rng.integers(0, 3) == 0 or n == 1:
                    ops.append((i, i, 2 * int(rng.integers(0, 1 << (k - 1))) + 1))
                else:
                    j = (i + 1 + int(rng.integers(0, n - 1))) % n
                    ops.append((i, j, int(rng.integers(0, 1 << k))))
            return build_unimodular(n, k, np.array(ops, dtype=np.int64))

        for _ in range(30):
            k = int(rng.integers(4, 31))
            n = int(rng.integers(1, 6))
            diag = [int(rng.integers(0, 1 << k)) for _ in range(n)]
            A = ResidueMatrix([[diag[i] if i == j else 0 for j in range(n)]
                               for i in range(n)], k)
            U = random_unimodular(n, k)
            V = random_unimodular(n, k)
            conj = (np.asarray(U) @ A.entries @ np.asarray(V)) & np.uint64((1 << k) - 1)
            assert snf_mod2k(A) == snf_mod2k(ResidueMatrix(conj, k))

    def check_class_numbers():
        cands = [D for D in range(-2000, -2) if D % 4 in (0, 1)
                 and qform.Disc.from_value(D).conductor <= 2]
        for _ in range(40):
            D = int(cands[rng.integers(0, len(cands))])
            assert qform.class_number(D) == qform.class_number_dirichlet(D)

    def check_composition():
        for D in (-23, -47, -44):
            grp = qform.class_group(D)
            e = grp.identity
            for f in grp.elements:
                assert qform.compose(f, e) == qform.reduce(f)
                assert qform.compose(f, f.inverse()) == e
            for _ in range(20):
                i, j, l = (int(rng.integers(0, grp.h)) for _ in range(3))
                f, g2, h2 = grp.elements[i], grp.elements[j], grp.elements[l]
                assert qform.compose(f, g2) == qform.compose(g2, f)
                assert (qform.compose(qform.compose(f, g2), h2)
                        == qform.compose(f, qform.compose(g2, h2)))

    def check_modclass():
        cases = [(3, 6, (1, 0, None)), (3, 6, (1, 2, None)), (11, 6, (0, 2, None)),
                 (7, 6, (1, 1, 1)), (7, 6, (0, 2, 1)), (23, 6, (2, 1, 0))]
        for p, k, (r, s, t) in cases:
            m = modclass.canonical_module(p, k, r, s, t)
            inv = modclass.decompose(m)
            assert (inv.r, inv.s, inv.t) == (r, s, t)
            for _ in range(3):
                c = modclass.random_conjugate(m, int(rng.integers(0, 1 << 30)))
                inv2 = modclass.decompose(c)
                assert (inv2.r, inv2.s, inv2.t) == (r, s, t)
                modclass.split(c)  # raises on any verification failure

    def check_counts():
        for p in _primes_upto(200):
            for g in (1, 2, 3):
                count_mod.count_superspecial(p, g)  # cross-check is built in
        for p in _primes_upto(300):
            if p > 3:
                count_mod.type_number_check(p)
        assert count_mod.sprime_small(2) == 3
        assert count_mod.sprime_small(3) == 4

    def check_hecke():
        assert hecke_mod.hecke_orbit_report(7, 3, 3).orbit_total_guaranteed == 4
        assert hecke_mod.hecke_orbit_report(11, 2, 3).orbit_total_guaranteed == 3
        assert hecke_mod.hecke_orbit_report(11, 2, 13).orbit_total_guaranteed is None

    return [
        ("kronecker multiplicativity", check_kronecker),
        ("hensel root identities", check_hensel),
        ("smith-form unimodular invariance", check_snf_invariance),
        ("class number vs character sum", check_class_numbers),
        ("composition group axioms", check_composition),
        ("module classification round trips", check_modclass),
        ("count cross-derivations", check_counts),
        ("hecke orbit guarantees", check_hecke),
    ]


def _cmd_selftest(args) -> int:
    checks = _selftest_checks(args.seed)
    failures = 0
    for name, fn in checks:
        try:
            fn()
        except Exception as e:  # noqa: BLE001 - report and continue
            failures += 1
            _out(f"FAIL - {name}: {e}")
        else:
            _out(f"ok - {name}")
    if failures:
        _out(f"selftest: {failures} of {len(checks)} checks failed")
        return 1
    _out(f"selftest: all {len(checks)} checks passed (backend={get_backend()})")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superspecial",
        description="Exact counts of superspecial abelian varieties with "
        "pi^2 = -p, class-group tooling, and 2-adic module classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count for one (p, g)")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--g", type=int, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=_cmd_count)

    t = sub.add_parser("table", help="one row per prime up to pmax")
    t.add_argument("--pmax", type=int, required=True)
    t.add_argument("--g", type=int, required=True)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.set_defaults(fn=_cmd_table)

    cn = sub.add_parser("classnum", help="class number of a discriminant")
    cn.add_argument("--disc", type=int, required=True)
    cn.add_argument("--oracle", action="store_true",
                    help="also evaluate the character-sum formula")
    cn.set_defaults(fn=_cmd_classnum)

    cg = sub.add_parser("classgroup", help="reduced forms with their orders")
    cg.add_argument("--disc", type=int, required=True)
    cg.set_defaults(fn=_cmd_classgroup)

    d = sub.add_parser("decompose", help="classify a module file")
    d.add_argument("--file", required=True)
    d.add_argument("--split", action="store_true",
                   help="also emit a verified splitting basis")
    d.set_defaults(fn=_cmd_decompose)

    hk = sub.add_parser("hecke", help="orbit report for (p, g, ell)")
    hk.add_argument("--p", type=int, required=True)
    hk.add_argument("--g", type=int, required=True)
    hk.add_argument("--ell", type=int, required=True)
    hk.set_defaults(fn=_cmd_hecke)

    de = sub.add_parser("deuring", help="(p, h, h', t) table with verdicts")
    de.add_argument("--pmax", type=int, required=True)
    de.set_defaults(fn=_cmd_deuring)

    st = sub.add_parser("selftest", help="run the invariant suite")
    st.add_argument("--seed", type=int, default=DEFAULT_SELFTEST_SEED)
    st.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except ValueError as e:
        _err(f"error: {e}")
        return 2
    except (InvariantViolation, PrecisionError) as e:
        _err(f"invariant violation: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
