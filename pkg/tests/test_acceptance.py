"""Acceptance gate: nine criteria, exact equality throughout.

All suites are executed once through a single ``check all --n 4`` invocation
of the CLI; each criterion then reads the suites it is made of from that
report and adds a few direct assertions.  One PASS/FAIL line is printed per
criterion.
"""

import contextlib
import io
import json

import pytest

from topohopf import checks as ck
from topohopf import golden
from topohopf import qposet as qp
from topohopf import setcomp as scm
from topohopf import topalg as ta
from topohopf.cli import main

CRITERIA = {
    1: ("golden expansions reproduce exactly", ["golden"]),
    2: ("Fubini numbers and two independent topology enumerators", ["fubini", "topology-count"]),
    3: (
        "exhaustive identity suite on topologies with n <= 4",
        [
            "gamma-coassoc", "gamma-counit", "gamma-mult", "delta-coassoc", "delta-mult", "compat",
            "quotient-duality", "restrict-quotient", "shrink", "classes", "connected-components",
            "transit-bijection", "admissible-transitivity", "gamma-grading",
        ],
    ),
    4: ("L is a surjective bialgebra morphism", ["L-product", "L-delta", "L-rho", "L-surjective"]),
    5: ("lambda and Lambda morphisms with internal coproducts", ["lambda-morphism", "Lambda-morphism", "word-projection"]),
    6: ("H_T compatibility counterexample", ["ht-compat-counterexample"]),
    7: ("antipode convolution identity on H", ["antipode"]),
    8: ("mould laws and the ten stability rules", ["mould-laws", "mould-stability"]),
    9: (
        "quasi-ormould characters and quasi-posetization",
        ["char-property", "char-identity", "char-distributivity", "qposetization"],
    ),
}


@pytest.fixture(scope="module")
def report():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["check", "all", "--n", "4", "--json"])
    obj = json.loads(buf.getvalue())
    return code, {r["suite"]: r for r in obj["reports"]}


def _extra(k: int) -> list[str]:
    """Direct oracle assertions per criterion; returns failure descriptions."""
    bad = []
    if k == 1:
        bad += [f"{f}:{n}" for f, n, got, exp in golden.all_cases() if got != exp]
    elif k == 2:
        if [len(scm.all_set_compositions(range(n))) for n in range(6)] != [1, 1, 3, 13, 75, 541]:
            bad.append("fubini")
        for n in range(5):
            a = {T for T in qp.all_topologies(range(n))}
            if a != set(qp.topologies_by_open_sets(range(n))) or len(a) != ck.TOPOLOGY_COUNTS[n]:
                bad.append(f"topologies n={n}")
    elif k == 4:
        if {C for T in qp.all_topologies(range(1, 5)) for C in scm.linear_extensions(T)} != set(
            scm.all_set_compositions(range(1, 5))
        ):
            bad.append("L not onto at n=4")
    elif k == 6:
        lhs, rhs, shared, lhs_only, rhs_only = golden.ht_counterexample()
        if not (lhs == shared + lhs_only and rhs == shared + rhs_only and len(shared) == 4 and lhs != rhs):
            bad.append("counterexample mismatch")
    elif k == 7:
        for n in range(5):
            for c in ta.iso_classes(n):
                want = 1 if n == 0 else 0
                got = ta.antipode_convolution(c)
                if got.coeff(ta.ISO_UNIT) != want or len(got) != want:
                    bad.append(str(c))
    return bad


@pytest.mark.slow
@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, report, capsys):
    code, reports = report
    desc, suites = CRITERIA[k]
    missing = [s for s in suites if s not in reports]
    failed = [s for s in suites if s in reports and not reports[s]["pass"]]
    extra = _extra(k)
    ok = not (missing or failed or extra)
    with capsys.disabled():
        counts = sum(reports[s]["instances"] for s in suites if s in reports)
        print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} - {desc} ({len(suites)} suite{'s' * (len(suites) != 1)}, {counts} instances)")
    assert not missing, missing
    assert not failed, [reports[s]["failures"][:2] for s in failed]
    assert not extra, extra


@pytest.mark.slow
def test_check_all_invocation(report, capsys):
    code, reports = report
    assert set(reports) == set(ck.suite_names())
    with capsys.disabled():
        print(f"\ncheck all --n 4: {'PASS' if code == 0 else 'FAIL'} ({len(reports)} suites)")
    assert code == 0
