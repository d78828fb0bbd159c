"""Associativity of T(x,y) = f^(-1)(F(f(x), f(y))): criteria and brute-force oracles.

Every criterion here is computed with exact set algebra.  Quantifiers over
y in M are instantiated on a finite witness set (see :class:`WitnessConfig`);
violations found that way are genuine, while "holds" verdicts are relative
to the witnesses and carry a caveat saying so.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .decomposition import Decomposition, NotInM, decompose
from .generators import Generator
from .numbers import ONE, ZERO, ExtRat, as_ext
from .ops import AssocOp
from .rangesets import EMPTY, RangeSet


class Outcome(str, enum.Enum):
    ASSOCIATIVE = "associative"
    NOT_ASSOCIATIVE = "not_associative"
    CONDITION_HOLDS = "condition_holds"
    CONDITION_FAILS = "condition_fails"
    NOT_APPLICABLE = "not_applicable"
    INCONCLUSIVE = "inconclusive"


class NotInB(ValueError):
    pass


class ScenarioError(ValueError):
    pass


@dataclass
class Verdict:
    outcome: Outcome
    provenance: str
    witness: object = None
    caveat: str | None = None
    failed_hypothesis: str | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.outcome in (Outcome.NOT_ASSOCIATIVE, Outcome.CONDITION_FAILS) and self.witness is None:
            raise ValueError(f"{self.outcome.value} verdict without a witness")
        if self.outcome is Outcome.NOT_APPLICABLE and not self.failed_hypothesis:
            raise ValueError("not_applicable verdict must name the failed hypothesis")

    @property
    def implies(self) -> Outcome | None:
        """What the verdict says about associativity of T, if anything."""
        if self.outcome in (Outcome.ASSOCIATIVE, Outcome.CONDITION_HOLDS):
            return Outcome.ASSOCIATIVE
        if self.outcome in (Outcome.NOT_ASSOCIATIVE, Outcome.CONDITION_FAILS):
            return Outcome.NOT_ASSOCIATIVE
        return None

    def to_json(self) -> dict:
        out = {"criterion": self.provenance, "verdict": self.outcome.value}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.caveat:
            out["caveat"] = self.caveat
        if self.failed_hypothesis:
            out["failed_hypothesis"] = self.failed_hypothesis
        out.update({k: _jsonable(v) for k, v in self.details.items()})
        return out


def _jsonable(v):
    if isinstance(v, (ExtRat, RangeSet)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, Outcome):
        return v.value
    return v


class Scenario:
    """A generator paired with a base operation, with the derived decomposition."""

    def __init__(self, generator: Generator, op: AssocOp, force: bool = False):
        self.g = generator
        self.op = op
        self.d: Decomposition = decompose(generator, force=force)
        self.m = self.d.m
        if not self.m.issubset(op.valid):
            raise ScenarioError(f"range {self.m} leaves the valid domain {op.valid} of {op}")
        self.m_minus_c = self.d.m_minus_c
        self._t_cache: dict = {}

    @property
    def trivial(self) -> bool:
        return self.m.is_point

    def g_m(self, x) -> ExtRat:
        return self.d.g_m(x)

    def otimes(self, x, y) -> ExtRat:
        x, y = as_ext(x), as_ext(y)
        if not (self.m.contains(x) and self.m.contains(y)):
            raise NotInM(f"({x}, {y}) is not in M x M")
        return self.d.g_m(self.op.f_eval(x, y))

    def t_from_values(self, u: ExtRat, v: ExtRat) -> ExtRat:
        """f^(-1)(F(u, v)) for generator values u, v."""
        key = (u, v)
        r = self._t_cache.get(key)
        if r is None:
            r = self._t_cache[key] = self.g.pseudo_inverse(self.op.f_eval(u, v))
        return r

    def t_eval(self, x, y) -> ExtRat:
        return self.t_from_values(self.g.eval(x), self.g.eval(y))

    def t_modified(self, x, y) -> ExtRat:
        """t_eval on [0,1)^2, min(x, y) when either argument is 1."""
        x, y = as_ext(x), as_ext(y)
        if x == ONE or y == ONE:
            return min(x, y)
        return self.t_eval(x, y)

    def f_star(self, x) -> ExtRat:
        x = as_ext(x)
        if not self.g.in_b(x):
            raise NotInB(f"{x} is not in B")
        return self.g.eval(x)

    def f0_reduction(self, x, y) -> ExtRat:
        return self.g.pseudo_inverse(self.op.f_eval(self.f_star(x), self.f_star(y)))


@dataclass(frozen=True)
class WitnessConfig:
    grid_denominator: int = 16
    extra_points: tuple = ()

    def __post_init__(self):
        if self.grid_denominator < 1:
            raise ValueError("grid_denominator must be positive")
        object.__setattr__(self, "extra_points", tuple(as_ext(p) for p in self.extra_points))

    def y_witnesses(self, s: Scenario) -> list[ExtRat]:
        d = s.d
        cand = set(d.c_points) | set(d.anchors) | set(s.m.endpoints()) | set(s.m.sample_points())
        for b, dk in d.gaps:
            cand.update((b, dk))
        cand.update(self.extra_points)
        return sorted(p for p in cand if s.m.contains(p))

    def grid(self) -> list[ExtRat]:
        return [ExtRat(j, self.grid_denominator) for j in range(self.grid_denominator + 1)]


# -- spans over the gaps ----------------------------------------------------

def i_k_set(s: Scenario, k: int, fmm: RangeSet | None = None) -> RangeSet:
    """O({a_k} u (F(M, M) & punctured gap k))."""
    if fmm is None:
        fmm = s.op.f_image(s.m, s.m)
    hits = fmm.intersect(s.d.punctured_gap(k))
    return RangeSet.points([s.d.anchor(k)]).union(hits).o_span() if hits else EMPTY


def union_i(s: Scenario) -> RangeSet:
    fmm = s.op.f_image(s.m, s.m)
    return RangeSet().union(*(i_k_set(s, k, fmm) for k in range(len(s.d.gaps))))


def _trivial(provenance: str) -> Verdict:
    return Verdict(Outcome.ASSOCIATIVE, provenance, caveat="range is a single point")


def check_sufficient(s: Scenario) -> Verdict:
    """Span-image test: empty F(U, M) & M and F(M, U) & M (U the union of the
    gap spans) is sufficient; for cancellative F with F(M, M-C) inside M-C it
    is also necessary."""
    prov = "span_images"
    if s.trivial:
        return _trivial(prov)
    u = union_i(s)
    left = s.op.f_image(u, s.m).intersect(s.m)
    right = s.op.f_image(s.m, u).intersect(s.m)
    f_m_mc = s.op.f_image(s.m, s.m_minus_c)
    closed = f_m_mc.issubset(s.m_minus_c)
    failed = []
    if not s.op.cancellative:
        failed.append("not cancellative")
    if not closed:
        failed.append("F(M,M\\C) not a subset of M\\C")
    details = {
        "hypothesis_flags": failed,
        "union_I": u,
        "intersections": {"F(I,M)∩M": left, "F(M,I)∩M": right},
        "hypotheses": {"cancellative": s.op.cancellative,
                       "F(M,M\\C)": f_m_mc,
                       "F(M,M\\C) subset of M\\C": closed},
    }
    if left.is_empty and right.is_empty:
        return Verdict(Outcome.ASSOCIATIVE, prov, details=details)
    witness = min(left.union(right).sample_points())
    if s.op.cancellative and closed:
        return Verdict(Outcome.NOT_ASSOCIATIVE, prov, witness=witness, details=details)
    return Verdict(Outcome.INCONCLUSIVE, prov, witness=witness,
                   failed_hypothesis="; ".join(failed),
                   caveat="sufficient condition fails and the converse is unavailable",
                   details=details)


# -- the per-witness sets ----------------------------------------------------

@dataclass
class FConditionSets:
    y: ExtRat
    k: int
    l: int
    m_k_y: RangeSet
    m_y_k: RangeSet
    m_l_y: RangeSet
    m_y_l: RangeSet
    m_up_y: RangeSet
    m_down_y: RangeSet
    i_k_y: RangeSet
    i_y_k: RangeSet
    j_k_l_y: RangeSet
    h_k_y_empty: bool
    h_y_k_empty: bool
    h_k_l_y_empty: bool
    j1_part: RangeSet
    j2_part: RangeSet


def _uniform_in_first(op: AssocOp, us: RangeSet, a: ExtRat, zs: RangeSet) -> bool:
    """True iff F(u, z) = F(a, z) for every u in us and z in zs.

    ``us`` never contains ``a`` (it lies in a punctured gap, a in M).
    """
    if us.is_empty or zs.is_empty:
        return True
    if op.shape == "max":
        top = max(us.sup(), a)
        return zs.inf() >= top
    if op.shape == "min":
        bottom = min(us.inf(), a)
        return zs.sup() <= bottom
    # strictly monotone sections: equality forces u = a unless z absorbs
    return zs.issubset(RangeSet.points(op.absorbing))


class _SetCache:
    def __init__(self, s: Scenario):
        self.s = s
        self.gaps = [s.d.punctured_gap(k) for k in range(len(s.d.gaps))]
        self.anchors = s.d.anchors
        self._mem: dict = {}

    def get(self, key, fn):
        if key not in self._mem:
            self._mem[key] = fn()
        return self._mem[key]

    def m_gap(self, y, k, side):
        return self.get(("mg", y, k, side), lambda: self.s.m.intersect(
            self.s.op.f_section_preimage(y, self.gaps[k], side)))

    def m_reg(self, y, side):
        return self.get(("mr", y, side), lambda: self.s.m.intersect(
            self.s.op.f_section_preimage(y, self.s.m_minus_c, side)))


def fcondition_sets(s: Scenario, y, k: int, l: int, span_partner: str = "m_minus_c",
                    _cache: _SetCache | None = None) -> FConditionSets:
    """All per-(y, k, l) sets of the F-condition.

    ``span_partner`` picks the set the gap spans are combined with in the
    first two image families: ``"section"`` uses the section sets
    {x in M : F(y, x) in M-C} and {x in M : F(x, y) in M-C};
    ``"m_minus_c"`` uses M-C itself.
    """
    y = as_ext(y)
    if not s.m.contains(y):
        raise NotInM(f"{y} is not in M")
    c = _cache or _SetCache(s)
    op, ak, al = s.op, c.anchors[k], c.anchors[l]
    m_k_y, m_l_y = c.m_gap(y, k, "left"), c.m_gap(y, l, "left")
    m_y_k, m_y_l = c.m_gap(y, k, "right"), c.m_gap(y, l, "right")
    m_up, m_down = c.m_reg(y, "left"), c.m_reg(y, "right")

    img_k = op.image_point(m_k_y, y, "left")  # F(M_k^y, y)
    img_y_k = op.image_point(m_y_k, y, "right")  # F(y, M_y^k)
    i_k_y = RangeSet.points([ak]).union(img_k).o_span() if img_k else EMPTY
    i_y_k = RangeSet.points([ak]).union(img_y_k).o_span() if img_y_k else EMPTY
    if m_k_y and m_y_l:
        j = op.image_point(m_k_y, al, "left").union(op.image_point(m_y_l, ak, "right")).o_span()
    else:
        j = EMPTY

    h1 = _uniform_in_first(op, img_k, ak, m_down)
    h2 = _uniform_in_first(op, img_y_k, ak, m_up)
    if m_k_y and m_l_y:
        g1 = op.image_point(m_l_y, ak, "right")
        g2 = op.image_point(m_k_y, al, "left")
        h3 = g1 == g2 and g1.is_point
    else:
        h3 = True

    if span_partner == "section":
        p_right, p_left = m_down, m_up
    elif span_partner == "m_minus_c":
        p_right = p_left = s.m_minus_c
    else:
        raise ValueError(f"unknown span_partner {span_partner!r}")
    j1 = op.f_image(i_k_y, p_right)
    j2 = op.f_image(p_left, i_y_k)
    return FConditionSets(y, k, l, m_k_y, m_y_k, m_l_y, m_y_l, m_up, m_down, i_k_y, i_y_k, j,
                          h1, h2, h3, j1, j2)


def _iter_sets(s: Scenario, w: WitnessConfig, span_partner: str):
    cache = _SetCache(s)
    n = len(s.d.gaps)
    for y in w.y_witnesses(s):
        for k in range(n):
            for l in range(n):
                yield fcondition_sets(s, y, k, l, span_partner, cache)


def jfrak_parts(s: Scenario, w: WitnessConfig | None = None,
                span_partner: str = "m_minus_c") -> tuple[RangeSet, RangeSet, RangeSet]:
    w = w or WitnessConfig()
    j1, j2, j3 = [], [], []
    for fs in _iter_sets(s, w, span_partner):
        j1.append(fs.j1_part)
        j2.append(fs.j2_part)
        j3.append(fs.j_k_l_y)
    return RangeSet().union(*j1), RangeSet().union(*j2), RangeSet().union(*j3)


def jfrak(s: Scenario, w: WitnessConfig | None = None, span_partner: str = "m_minus_c") -> RangeSet:
    """Union of the three image families over witness y and all gap pairs."""
    return RangeSet().union(*jfrak_parts(s, w, span_partner))


def fcondition_hypothesis(s: Scenario) -> tuple[bool, RangeSet, RangeSet]:
    cset = RangeSet.points(s.d.c_points)
    fcm = s.op.f_image(cset, s.m)
    fmc = s.op.f_image(s.m, cset)
    return fcm.union(fmc).issubset(s.m_minus_c), fcm, fmc


def evaluate_fcondition(s: Scenario, w: WitnessConfig, span_partner: str = "m_minus_c"):
    """First violated condition as (name, y, k, l, offending set), or None."""
    mc = s.m_minus_c
    for fs in _iter_sets(s, w, span_partner):
        hit = fs.j1_part.intersect(mc)
        if not fs.h_k_y_empty and hit:
            return "C1", fs.y, fs.k, fs.l, hit
        hit = fs.j2_part.intersect(mc)
        if not fs.h_y_k_empty and hit:
            return "C2", fs.y, fs.k, fs.l, hit
        hit = fs.j_k_l_y.intersect(mc)
        if not fs.h_k_l_y_empty and hit:
            return "C3", fs.y, fs.k, fs.l, hit
    return None


def check_fcondition(s: Scenario, w: WitnessConfig | None = None,
                     span_partner: str = "m_minus_c") -> Verdict:
    w = w or WitnessConfig()
    prov = "f_condition"
    if s.trivial:
        return _trivial(prov)
    ok, fcm, fmc = fcondition_hypothesis(s)
    details = {"hypotheses": {"F(C,M)": fcm, "F(M,C)": fmc,
                              "F(C,M)∪F(M,C) subset of M\\C": ok},
               "span_partner": span_partner}
    violation = evaluate_fcondition(s, w, span_partner)
    if violation:
        name, y, k, l, hit = violation
        details["condition"] = {"violated": name, "y": y, "k": k, "l": l, "meets M\\C in": hit}
    else:
        details["condition"] = {"violated": None}
    if not ok:
        return Verdict(Outcome.NOT_APPLICABLE, prov,
                       failed_hypothesis="F(C,M)∪F(M,C) not a subset of M\\C", details=details)
    if violation:
        name, y, k, l, _ = violation
        return Verdict(Outcome.CONDITION_FAILS, prov, witness={"condition": name, "y": y, "k": k, "l": l},
                       details=details)
    return Verdict(Outcome.CONDITION_HOLDS, prov, caveat="verified on witness set", details=details)


# -- brute-force oracles ------------------------------------------------------

def _sweep(n: int, prod: np.ndarray, nu: int, left_fn, right_fn):
    """Least (i, j, k) with left_fn(prod[i, j], k) != right_fn(i, prod[j, k]), or None.

    ``prod`` holds ids into a list of nu intermediate results; both callbacks
    return ids from one shared numbering of final results.  Rows are swept in
    order, so the search stops at the first failing x.
    """
    rows: dict = {}
    ks = range(n)
    for i in range(n):
        left = np.empty((n, n), dtype=np.int64)
        for j in range(n):
            a = int(prod[i, j])
            row = rows.get(a)
            if row is None:
                row = rows[a] = np.fromiter((left_fn(a, k) for k in ks), dtype=np.int64, count=n)
            left[j] = row
        r_i = np.fromiter((right_fn(i, b) for b in range(nu)), dtype=np.int64, count=nu)
        bad = np.argwhere(left != r_i[prod])
        if len(bad):
            return i, int(bad[0][0]), int(bad[0][1])
    return None


class _Ids:
    def __init__(self):
        self.ids: dict = {}

    def __call__(self, v) -> int:
        i = self.ids.get(v)
        if i is None:
            i = self.ids[v] = len(self.ids)
        return i


def t_witness_points(s: Scenario, w: WitnessConfig) -> list[ExtRat]:
    base = set(w.grid()) | set(s.g.breakpoints)
    base.update(p for p in w.extra_points if p <= ONE)
    closure = {s.t_eval(x, y) for x in base for y in base}
    return sorted(base | closure)


def oracle_t(s: Scenario, w: WitnessConfig | None = None) -> Verdict:
    """Exhaustive exact check of T(T(x,y),z) = T(x,T(y,z)) on the witness cube.

    T depends on its arguments only through f, so the cube is reduced to one
    representative (the least point) per f-value; the least failing triple
    is always made of representatives.
    """
    w = w or WitnessConfig()
    prov = "oracle_t"
    xs = t_witness_points(s, w)
    reps, fvals, seen = [], [], set()
    for x in xs:
        v = s.g.eval(x)
        if v not in seen:
            seen.add(v)
            reps.append(x)
            fvals.append(v)
    n = len(reps)
    pid = _Ids()
    vid = _Ids()
    vlist = []
    ft = np.empty((n, n), dtype=np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        v = s.g.eval(s.t_from_values(fvals[i], fvals[j]))
        if v not in vid.ids:
            vlist.append(v)
        ft[i, j] = vid(v)
    bad = _sweep(n, ft, len(vlist),
                 lambda a, k: pid(s.t_from_values(vlist[a], fvals[k])),
                 lambda i, b: pid(s.t_from_values(fvals[i], vlist[b])))
    details = {"cube_size": len(xs) ** 3, "witness_points": len(xs), "representatives": n}
    if bad is None:
        return Verdict(Outcome.ASSOCIATIVE, prov, caveat="on witness cube", details=details)
    i, j, k = bad
    x, y, z = reps[i], reps[j], reps[k]
    lhs = s.t_eval(s.t_eval(x, y), z)
    rhs = s.t_eval(x, s.t_eval(y, z))
    details.update({"lhs": lhs, "rhs": rhs})
    return Verdict(Outcome.NOT_ASSOCIATIVE, prov, witness=(x, y, z), details=details)


def otimes_witness_points(s: Scenario, w: WitnessConfig) -> list[ExtRat]:
    base = set(w.y_witnesses(s))
    closure = {s.otimes(x, y) for x in base for y in base}
    return sorted(base | closure)


def oracle_otimes(s: Scenario, w: WitnessConfig | None = None) -> Verdict:
    """Exhaustive exact associativity check of the induced operation on a finite part of M."""
    w = w or WitnessConfig()
    prov = "oracle_otimes"
    if s.trivial:
        return _trivial(prov)
    ws = otimes_witness_points(s, w)
    n = len(ws)
    vid = _Ids()
    ulist = []
    prod = np.empty((n, n), dtype=np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        v = s.otimes(ws[i], ws[j])
        if v not in vid.ids:
            ulist.append(v)
        prod[i, j] = vid(v)
    pid = _Ids()
    bad = _sweep(n, prod, len(ulist),
                 lambda a, k: pid(s.otimes(ulist[a], ws[k])),
                 lambda i, b: pid(s.otimes(ws[i], ulist[b])))
    details = {"cube_size": n ** 3}
    if bad is None:
        return Verdict(Outcome.ASSOCIATIVE, prov, caveat="on witness cube", details=details)
    x, y, z = (ws[i] for i in bad)
    details.update({"lhs": s.otimes(s.otimes(x, y), z), "rhs": s.otimes(x, s.otimes(y, z))})
    return Verdict(Outcome.NOT_ASSOCIATIVE, prov, witness=(x, y, z), details=details)


# -- axioms ------------------------------------------------------------------

AXIOMS = {
    "t-norm": ("commutativity", "associativity", "monotonicity", "neutral 1"),
    "t-conorm": ("commutativity", "associativity", "monotonicity", "neutral 0"),
    "t-subnorm": ("commutativity", "associativity", "monotonicity", "below min"),
    "t-superconorm": ("commutativity", "associativity", "monotonicity", "above max"),
}


def axiom_check(fn: Callable, kind: str, w: WitnessConfig | None = None) -> Verdict:
    """Check the axioms of ``kind`` exhaustively on the grid j/D of [0,1]."""
    if kind not in AXIOMS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(AXIOMS)}")
    w = w or WitnessConfig()
    pts = w.grid()
    memo: dict = {}

    def t(x, y):
        r = memo.get((x, y))
        if r is None:
            r = memo[x, y] = as_ext(fn(x, y))
        return r

    prov = f"axioms:{kind}"
    for ax in AXIOMS[kind]:
        bad = _first_axiom_failure(ax, t, pts)
        if bad is not None:
            return Verdict(Outcome.NOT_ASSOCIATIVE if ax == "associativity" else Outcome.CONDITION_FAILS,
                           prov, witness=bad, details={"axiom": ax})
    return Verdict(Outcome.CONDITION_HOLDS, prov, caveat=f"on the grid of step 1/{w.grid_denominator}",
                   details={"axioms": list(AXIOMS[kind])})


def _first_axiom_failure(ax: str, t, pts):
    if ax == "commutativity":
        for x, y in itertools.product(pts, repeat=2):
            if t(x, y) != t(y, x):
                return (x, y)
    elif ax == "associativity":
        for x, y, z in itertools.product(pts, repeat=3):
            if t(t(x, y), z) != t(x, t(y, z)):
                return (x, y, z)
    elif ax == "monotonicity":
        for x, y, z in itertools.product(pts, repeat=3):
            if y <= z and t(x, y) > t(x, z):
                return (x, y, z)
    elif ax == "neutral 1":
        for x in pts:
            if t(x, ONE) != x:
                return (x, ONE)
    elif ax == "neutral 0":
        for x in pts:
            if t(x, ZERO) != x:
                return (x, ZERO)
    elif ax == "below min":
        for x, y in itertools.product(pts, repeat=2):
            if t(x, y) > min(x, y):
                return (x, y)
    elif ax == "above max":
        for x, y in itertools.product(pts, repeat=2):
            if t(x, y) < max(x, y):
                return (x, y)
    return None


def sample_pairs(points: Iterable, count: int, seed: int = 0) -> list:
    """Deterministic random pairs from ``points`` (used by property checks)."""
    pts = list(points)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(pts), size=(count, 2))
    return [(pts[i], pts[j]) for i, j in idx]
