"""The ten acceptance criteria, one test each.

Each test records a PASS/FAIL line through the ``criterion`` fixture; the
lines are printed together at the end of the pytest run.
"""

import random

from eotools.cli import run
from eotools.morava import verify_tk_lemma
from eotools.nilpotent import NilOperator, coproduct_chi_check, jordan_type
from eotools.orientation import known_orders_report, theta_sphere_valuation
from eotools.splitting import (
    finite_part_support, tate_transition, tate_transition_surjective, thom_shift_linearity,
    verify_free_generators,
)
from eotools.stunted import PkParams

import oracles


def test_1_ko_pattern(criterion, capsys):
    rep, code = run(["decompose", "--p", "2", "--k", "1", "--c", "0", "--top", "40", "--json"])
    capsys.readouterr()
    res = rep.results
    finite = [b for b in res["blocks"] if b["kind"] == "finite"]
    free = sorted(b["socle_degree"] for b in res["blocks"] if b["kind"] == "free")
    ok = (code == 0
          and len(finite) == 1 and finite[0]["size"] == 1 and finite[0]["socle_degree"] == 0
          and free == [4 * j - 2 for j in range(1, len(free) + 1)]
          and len(free) == 20)
    criterion("1 KO pattern", ok, f"finite={[(b['size'], b['socle_degree']) for b in finite]} "
                                  f"free bottoms={free[:4]}..{free[-1]}")


def test_2_free_generators(criterion):
    failures = []
    for p, k in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]:
        params = PkParams(p, k)
        for c in (0, p, 2 * p, -p):
            top = c + 4 * p * params.shift + p
            assert top >= 4 * p * params.shift
            if not verify_free_generators(params, c, top):
                failures.append((p, k, c, top))
    criterion("2 free-generator prediction", not failures, f"24 cases, failures={failures}")


def test_3_bound_identity(criterion):
    bad = []
    for p in (2, 3, 5, 7):
        for k in (1, 2, 3):
            n = PkParams(p, k).beta_hat - 1
            if theta_sphere_valuation(p, n) != p**k - 1:
                bad.append((p, k))
            # independent evaluation of the same maximum
            if oracles.atiyah_todd_brute(p, n) != p**k - 1:
                bad.append((p, k, "oracle"))
    criterion("3 main bound identity", not bad, f"12 cases, mismatches={bad}")


def test_4_thom_linearity(criterion):
    problems = []
    for p, k in [(2, 1), (3, 1), (2, 2)]:
        params = PkParams(p, k)
        for c in (p, 2 * p, -p):
            if not thom_shift_linearity(params, c, 30):
                problems.append((p, k, c, "not linear"))
        for r in range(1, p):
            if all(thom_shift_linearity(params, c, 30) for c in (r, r + p, r - p)):
                problems.append((p, k, r, "no failure in class"))
    criterion("4 Thom-shift linearity", not problems, f"problems={problems}")


def test_5_finite_support(criterion):
    rows, ok = [], True
    for p, k in [(2, 1), (2, 2), (3, 1)]:
        params = PkParams(p, k)
        s = finite_part_support(params, 0, 6 * params.beta_hat)
        ok &= s.within_skeleton
        rows.append(f"({p},{k}) max={s.max_degree} <= {s.skeleton_degree}: {s.within_skeleton}, "
                    f"alt {s.alt_skeleton_degree}: {s.within_alt_skeleton}")
    criterion("5 finite-part skeletal support", ok, "; ".join(rows))


def test_6_tate_transition(criterion):
    bad = []
    for p, k in [(2, 1), (3, 1), (2, 2)]:
        params = PkParams(p, k)
        top = 10 * params.beta_hat
        for i in range(5, 0, -1):
            s = -i * params.beta_hat
            tr = tate_transition(params, s, top)
            if not (tate_transition_surjective(params, s, top) and tr.free_part_covered):
                bad.append((p, k, s))
    criterion("6 Tate transition surjectivity", not bad, f"15 stage maps, failures={bad}")


def test_7_valuation_lemma(criterion):
    rows, ok = [], True
    for p, k in [(2, 1), (2, 2), (3, 1)]:
        n = k * (p - 1)
        rep = verify_tk_lemma(p, k, 3 * n + 1)
        ok &= rep.passed and rep.zeta_order_p and rep.vanishing_below_k and rep.unit_at_k
        rows.append(f"({p},{k}) v={rep.valuation} a_k={rep.tbar[k]}")
    criterion("7 order-p unit and valuation lemma", ok, "; ".join(rows))


def test_8_coproduct(criterion):
    results = {p: coproduct_chi_check(p).passed for p in (2, 3, 5)}
    criterion("8 coproduct primitivity", all(results.values()), str(results))


def test_9_oracle_equivalence(criterion):
    mismatches = 0
    rng = random.Random(20260418)
    for p in (2, 3, 5):
        for _ in range(50):
            N, seeded = oracles.random_nilpotent(p, 30, rng)
            ours = list(jordan_type(NilOperator.from_array(p, N)).blocks)
            if ours != oracles.chain_block_sizes(N, p) or ours != seeded:
                mismatches += 1
    criterion("9 Jordan type oracle equivalence", mismatches == 0, f"150 operators, mismatches={mismatches}")


def test_10_known_orders(criterion):
    rows, ok = [], True
    for p, k in [(2, 1), (2, 2), (2, 3), (3, 1), (5, 1)]:
        t = known_orders_report(p, k)
        vals = {r.label: r.valuation for r in t.rows}
        known = [r.valuation for r in t.rows if r.label in ("height p-1", "real Johnson-Wilson")]
        ok &= t.chain_holds and bool(known)
        ok &= all(k <= v <= vals["EO bound"] for v in known)
        ok &= vals["EO bound"] == p**k - 1 and vals["conjecture"] == k
        rows.append(f"({p},{k}) {k}|{known}|{vals['EO bound']}")
    criterion("10 known-orders divisibility", ok, "; ".join(rows))
