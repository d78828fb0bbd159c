"""Acceptance criteria 1-12, exact arithmetic throughout.

Each criterion records its sub-checks; a summary line per criterion is
printed at the end of the session. Sub-checks that cannot hold are kept as
strict expected failures so that they are still executed and reported.
"""

import functools
import itertools
import random
import time
from fractions import Fraction

import pytest

from genassoc.analysis import (Outcome, WitnessConfig, axiom_check, check_fcondition, check_sufficient,
                               fcondition_hypothesis, jfrak, oracle_t, sample_pairs)
from genassoc.decomposition import NotInClassF, decompose
from genassoc.numbers import INF, ExtRat
from genassoc.rangesets import Interval, RangeSet, set_algebra
from genassoc.report import build_report, computed_quantities, printed_findings, run_checks
from genassoc.specfile import fixture_names, load_fixture

from conftest import Q, R, record

FORCED = {"right_limit_violation_sum", "filled_gap_sum"}
CLASS_F = [n for n in fixture_names() if n not in FORCED]
SPAN_KEYS = {"union_I", "F(union_I,M)", "J1", "J2", "J3", "Jfrak"}


def require(criterion, label, ok, detail=""):
    return record(criterion, label, ok, detail)


def all_ok(results):
    assert all(results), results


@functools.lru_cache(maxsize=None)
def spec(name):
    return load_fixture(name)


@functools.lru_cache(maxsize=None)
def timed_oracle(name):
    s = spec(name).scenario
    t0 = time.perf_counter()
    v = oracle_t(s, spec(name).witness)
    return v, time.perf_counter() - t0


# -- 1 ----------------------------------------------------------------------------

def _gaps(d):
    return {(str(b), str(e)) for b, e in d.gaps}


def test_criterion_1_decomposition_fixtures():
    res = []
    cases = [
        ("plateaus_sum", {("2", "3"), ("3", "5"), ("5", "6"), ("7", "inf")}, {"3", "5", "6", "7"}),
        ("offset_plateaus_sum", {("0", "1"), ("4", "8"), ("8", "10"), ("10", "12"), ("20", "inf")},
         {"1", "8", "10", "20"}),
    ]
    for name, gaps, cs in cases:
        g = spec(name).generator
        best = float("inf")
        for _ in range(3):
            t0 = time.perf_counter()
            d = decompose(g)
            best = min(best, time.perf_counter() - t0)
        res.append(require(1, f"{name} gaps", _gaps(d) == gaps, str(_gaps(d))))
        res.append(require(1, f"{name} C", {str(c) for c in d.c_points} == cs))
        res.append(require(1, f"{name} under 100 ms", best < 0.1, f"{best * 1000:.1f} ms"))
    all_ok(res)


# -- 2 ----------------------------------------------------------------------------

def plateaus_gm(x):
    if Q("2") <= x <= Q("3"):
        return Q("3")
    if Q("3") < x <= Q("5"):
        return Q("5")
    if Q("5") < x <= Q("6"):
        return Q("6")
    return Q("7") if x >= Q("7") else x


def offset_gm(x):
    if x <= Q("1"):
        return Q("1")
    if Q("4") <= x <= Q("8"):
        return Q("8")
    if Q("8") < x <= Q("12"):
        return Q("10")
    return Q("20") if x >= Q("20") else x


def test_criterion_2_projection_tables():
    grid = [ExtRat(j, 8) for j in range(24 * 8 + 1)] + [INF]
    res = []
    for name, closed in (("plateaus_sum", plateaus_gm), ("offset_plateaus_sum", offset_gm)):
        s = spec(name).scenario
        bad = [x for x in grid if s.g_m(x) != closed(x)]
        res.append(require(2, f"{name} closed form on {len(grid)} points", not bad, f"first mismatch {bad[:1]}"))
    all_ok(res)


# -- 3 ----------------------------------------------------------------------------

def test_criterion_3_projection_through_pseudo_inverse():
    res = []
    for name in CLASS_F:
        s = spec(name).scenario
        top = min(s.g.eval(Q("1")), Q("24"))
        grid = [ExtRat(j, 64) for j in range(int(top.q * 64) + 1)] + [INF]
        bad = [x for x in grid if s.g_m(x) != s.g.eval(s.g.pseudo_inverse(x))]
        res.append(require(3, name, not bad, f"first mismatch {bad[:1]}"))
    all_ok(res)


# -- 4 ----------------------------------------------------------------------------

def test_criterion_4_right_limit_guard():
    g = spec("right_limit_violation_sum").generator
    ok, witness = g.class_f_membership()
    res = [require(4, "membership fails at 1/4", (ok, witness) == (False, Q("1/4")), str(witness))]
    try:
        decompose(g)
        refused = False
    except NotInClassF:
        refused = True
    res.append(require(4, "decomposition refused without force", refused))
    d = decompose(g, force=True)
    res.append(require(4, "forced: G_M(2) = 2", d.g_m(Q("2")) == Q("2")))
    res.append(require(4, "forced: f(f^-1(2)) = 1", g.eval(g.pseudo_inverse(Q("2"))) == Q("1")))
    all_ok(res)


# -- 5 ----------------------------------------------------------------------------

ASSOCIATIVE_CASES = ["identity_sum", "lower_plateau_prob_sum", "endpoint_jump_sum",
                     "half_plateau_scaled_product", "quarter_step_product", "endpoint_jump_max"]


def test_criterion_5_oracle_verdicts():
    res = []
    for name in ASSOCIATIVE_CASES:
        v, dt = timed_oracle(name)
        res.append(require(5, f"{name} associative", v.outcome is Outcome.ASSOCIATIVE, v.outcome.value))
        res.append(require(5, f"{name} under 5 s", dt < 5, f"{dt:.2f} s"))
    v, dt = timed_oracle("pole_shifted_sum")
    res.append(require(5, "pole_shifted_sum not associative with witness",
                       v.outcome is Outcome.NOT_ASSOCIATIVE and v.witness is not None))
    res.append(require(5, "pole_shifted_sum under 5 s", dt < 5, f"{dt:.2f} s"))
    v, dt = timed_oracle("quarter_plateau_sum")
    res.append(require(5, "quarter_plateau_sum not associative", v.outcome is Outcome.NOT_ASSOCIATIVE))
    res.append(require(5, "quarter_plateau_sum under 5 s", dt < 5, f"{dt:.2f} s"))
    all_ok(res)


def test_criterion_5_named_triple_is_a_genuine_failure():
    s = spec("quarter_plateau_sum").scenario
    x, y, z = Q("1/4"), Q("1/8"), Q("1/8")
    lhs, rhs = s.t_eval(s.t_eval(x, y), z), s.t_eval(x, s.t_eval(y, z))
    all_ok([require(5, "T(T(1/4,1/8),1/8) = 1 and T(1/4,T(1/8,1/8)) = 1/2",
                    (lhs, rhs) == (Q("1"), Q("1/2")), f"{lhs} vs {rhs}")])


@pytest.mark.xfail(strict=True, reason="the least failing triple on the cube is (0,1/16,1/2)")
def test_criterion_5_quarter_plateau_witness_is_named_triple():
    v, _ = timed_oracle("quarter_plateau_sum")
    w = tuple(v.witness)
    assert require(5, "quarter_plateau_sum witness is (1/4,1/8,1/8)",
                   w == (Q("1/4"), Q("1/8"), Q("1/8")), "emitted " + ",".join(map(str, w)))


@pytest.mark.xfail(strict=True, reason="T(T(0,1/16),1/2)=1 but T(0,T(1/16,1/2))=1/2")
def test_criterion_5_capped_identity_associative():
    v, dt = timed_oracle("capped_identity_sum")
    require(5, "capped_identity_sum under 5 s", dt < 5, f"{dt:.2f} s")
    w = ",".join(map(str, v.witness)) if v.witness else ""
    assert require(5, "capped_identity_sum associative", v.outcome is Outcome.ASSOCIATIVE,
                   f"{v.outcome.value} at ({w})")


# -- 6 ----------------------------------------------------------------------------

def test_criterion_6_sufficient_test_agreement():
    v = check_sufficient(spec("half_plateau_scaled_product").scenario)
    o, _ = timed_oracle("half_plateau_scaled_product")
    res = [require(6, "scaled product: associative", v.outcome is Outcome.ASSOCIATIVE),
           require(6, "scaled product: agrees with oracle", v.implies is o.outcome)]
    v = check_sufficient(spec("identity_sum").scenario)
    res.append(require(6, "identity: inconclusive", v.outcome is Outcome.INCONCLUSIVE, v.outcome.value))
    res.append(require(6, "identity: condition fails", not v.details["intersections"]["F(I,M)∩M"].is_empty))
    res.append(require(6, "identity: hypothesis fails", not v.details["hypotheses"]["F(M,M\\C) subset of M\\C"]))
    all_ok(res)


# -- 7 ----------------------------------------------------------------------------

def test_criterion_7_hypothesis_detection():
    v = check_sufficient(spec("lower_plateau_prob_sum").scenario)
    res = [require(7, "prob_sum flagged not cancellative", "not cancellative" in v.details["hypothesis_flags"])]
    s = spec("capped_identity_sum").scenario
    v = check_sufficient(s)
    h = v.details["hypotheses"]
    res.append(require(7, "F(M,M\\C) = [0,3/2)", h["F(M,M\\C)"] == R("[0,3/2)"), str(h["F(M,M\\C)"])))
    res.append(require(7, "F(M,M\\C) not inside M\\C", not h["F(M,M\\C) subset of M\\C"]))
    for name in ("quarter_step_product", "endpoint_jump_max"):
        ok = fcondition_hypothesis(spec(name).scenario)[0]
        res.append(require(7, f"{name}: F(C,M) u F(M,C) not inside M\\C", not ok))
        entries, _ = run_checks(spec(name), "fcondition")
        fc = entries[0]
        res.append(require(7, f"{name}: not applicable", fc["verdict"] == "not_applicable"))
        res.append(require(7, f"{name}: falls back to the oracle",
                           fc.get("fallback", {}).get("criterion") == "oracle_t"))
    all_ok(res)


# -- 8 ----------------------------------------------------------------------------

def test_criterion_8_jfrak_values():
    res = []
    for name, expected in (("endpoint_jump_sum", "[1,5)"), ("half_plateau_scaled_product", "{}"),
                           ("pole_shifted_sum", "[2,4) u (4,inf]")):
        got = jfrak(spec(name).scenario, spec(name).witness)
        res.append(require(8, f"{name}: Jfrak = {expected}", got == R(expected), str(got)))
    for name in fixture_names():
        sp = spec(name)
        keys = [k for k in sp.printed if k in SPAN_KEYS]
        if not keys:
            continue
        findings = {f["quantity"] for f in printed_findings(sp, None) if f["kind"] == "printed_value"}
        qty = computed_quantities(sp.scenario, sp.witness)
        for k in keys:
            differs = qty[k]() != R(sp.printed[k])
            res.append(require(8, f"{name} {k}: divergence reported", not differs or k in findings))
    all_ok(res)


@pytest.mark.xfail(strict=True, reason="J3 for the identity generator also differs at its left endpoint")
def test_criterion_8_divergences_only_at_right_endpoints():
    bad = []
    for name in fixture_names():
        for f in printed_findings(spec(name), None):
            if f["kind"] == "printed_value" and f["quantity"] in SPAN_KEYS and f["divergence"] != "open_right_endpoint":
                bad.append(f"{name} {f['quantity']}: printed {f['printed']}, computed {f['computed']}")
    assert require(8, "span divergences only at right endpoints", not bad, "; ".join(bad))


# -- 9 ----------------------------------------------------------------------------

def test_criterion_9_fcondition_path():
    s = spec("pole_shifted_sum").scenario
    ok, fcm, fmc = fcondition_hypothesis(s)
    res = [require(9, "hypothesis holds", ok, f"F(C,M)={fcm}, F(M,C)={fmc}")]
    v = check_fcondition(s, spec("pole_shifted_sum").witness)
    res.append(require(9, "checker says not associative", v.implies is Outcome.NOT_ASSOCIATIVE, v.outcome.value))
    o, _ = timed_oracle("pole_shifted_sum")
    res.append(require(9, "agrees with oracle", o.outcome is Outcome.NOT_ASSOCIATIVE))
    all_ok(res)


@pytest.mark.xfail(strict=True, reason="2 + [0,1) + 1 = [3,4) and 2 + [2,inf] + 1 = [5,inf]")
def test_criterion_9_image_of_c_is_half_line():
    fcm = fcondition_hypothesis(spec("pole_shifted_sum").scenario)[1]
    assert require(9, "F(C,M) = [3,inf]", fcm == R("[3,inf]"), f"computed {fcm}")


# -- 10 ---------------------------------------------------------------------------

def test_criterion_10_axiom_suites():
    w = WitnessConfig(16)
    v = axiom_check(spec("identity_sum").scenario.t_eval, "t-conorm", w)
    res = [require(10, "identity T is a t-conorm", v.outcome is Outcome.CONDITION_HOLDS, v.outcome.value)]
    s = spec("pole_min").scenario
    strictly = all(s.g.eval(ExtRat(j, 16)) < s.g.eval(ExtRat(j + 1, 16)) for j in range(16))
    res.append(require(10, "fixture strictly increasing with f(1) = inf", strictly and s.g.eval(Q("1")) == INF))
    v = axiom_check(s.t_modified, "t-norm", w)
    res.append(require(10, "modified T is a t-norm", v.outcome is Outcome.CONDITION_HOLDS, v.outcome.value))
    all_ok(res)


# -- 11 ---------------------------------------------------------------------------

def _points_of_m(s):
    grid = [ExtRat(j, 32) for j in range(32 * 24 + 1)] + [INF]
    pts = {p for p in grid if s.m.contains(p)}
    pts.update(WitnessConfig(16).y_witnesses(s))
    return sorted(pts)


def test_criterion_11_otimes_laws():
    res = []
    for i, name in enumerate(fixture_names()):
        s = spec(name).scenario
        pts = _points_of_m(s)
        pairs = sample_pairs(pts, 1000, seed=i)
        partners = sample_pairs(pts, 1000, seed=100 + i)
        closed = mono = True
        for (x, y), (_, z) in zip(pairs, partners):
            lo, hi = min(y, z), max(y, z)
            closed &= s.m.contains(s.otimes(x, y))
            mono &= s.otimes(x, lo) <= s.otimes(x, hi) and s.otimes(lo, x) <= s.otimes(hi, x)
        res.append(require(11, f"{name}: closure on 1000 pairs", closed))
        res.append(require(11, f"{name}: monotone on 1000 pairs", mono))
    all_ok(res)


def _rand_ext(rng, inf_rate=0.1):
    if rng.random() < inf_rate:
        return INF
    return ExtRat(Fraction(rng.randint(0, 40), rng.choice([1, 2, 3, 4, 8])))


def test_criterion_11_o_span_brute_force():
    rng = random.Random(11)
    bad = 0
    for _ in range(100):
        pts = [_rand_ext(rng) for _ in range(rng.randint(1, 20))]
        brute = RangeSet(Interval.make(min(a, b), max(a, b), True, False) for a, b in itertools.product(pts, repeat=2))
        bad += RangeSet.points(pts).o_span() != brute
    all_ok([require(11, "o_span matches pair union on 100 sets", bad == 0, f"{bad} mismatches")])


def _rand_set(rng):
    parts = []
    for _ in range(rng.randint(0, 4)):
        a, b = sorted([_rand_ext(rng), _rand_ext(rng)])
        parts.append(Interval(a, a) if a == b else Interval(a, b, rng.random() < .5, rng.random() < .5))
    return RangeSet(parts)


def test_criterion_11_set_algebra_pointwise():
    rng = random.Random(12)
    rules = {"union": lambda p, q: p or q, "intersect": lambda p, q: p and q,
             "difference": lambda p, q: p and not q, "complement": lambda p, q: not p}
    bad = 0
    for _ in range(1000):
        op = rng.choice(sorted(rules))
        a, b = _rand_set(rng), _rand_set(rng)
        out = set_algebra(op, a) if op == "complement" else set_algebra(op, a, b)
        probes = [_rand_ext(rng)] + a.endpoints()[:2] + b.endpoints()[:2]
        for x in probes:
            bad += out.contains(x) != rules[op](a.contains(x), b.contains(x))
    all_ok([require(11, "set algebra matches membership on 1000 queries", bad == 0, f"{bad} mismatches")])


# -- 12 ---------------------------------------------------------------------------

def test_criterion_12_t_versus_otimes_finding():
    rep = build_report(spec("quarter_plateau_sum"), "check", "all")
    hits = [f for f in rep["findings"] if f["kind"] == "t_vs_otimes"]
    ok = len(hits) == 1 and hits[0]["oracle_t"] == "not_associative" and hits[0]["oracle_otimes"] == "associative"
    all_ok([require(12, "t_vs_otimes finding present", ok, str(hits))])
