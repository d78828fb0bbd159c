"""Deterministic JSON reports: decomposition, tables, verdicts and findings."""

from __future__ import annotations

import math

from . import __version__
from .analysis import (
    Scenario,
    Verdict,
    WitnessConfig,
    axiom_check,
    check_fcondition,
    check_sufficient,
    fcondition_hypothesis,
    jfrak_parts,
    oracle_otimes,
    oracle_t,
    union_i,
)
from .decomposition import check_invariants
from .numbers import INF, ExtRat, as_ext
from .rangesets import RangeSet, parse_rangeset
from .specfile import ScenarioSpec, render_doc

METHODS = ("sufficient", "fcondition", "oracle", "all")
TABLE_GRID = 8


class InvariantFailure(RuntimeError):
    """An internal consistency check failed; the report would be unreliable."""


# -- computed quantities that printed values may be compared against ----------

def computed_quantities(s: Scenario, w: WitnessConfig) -> dict:
    """Lazily evaluated named quantities of a scenario."""
    cset = RangeSet.points(s.d.c_points)

    def parts():
        return jfrak_parts(s, w)

    def jfrak_all():
        return RangeSet().union(*parts())

    return {
        "M": lambda: s.m,
        "C": lambda: cset,
        "M\\C": lambda: s.m_minus_c,
        "S": lambda: [[str(b), str(d)] for b, d in s.d.gaps],
        "union_I": lambda: union_i(s),
        "F(union_I,M)": lambda: s.op.f_image(union_i(s), s.m),
        "F(M,M\\C)": lambda: s.op.f_image(s.m, s.m_minus_c),
        "F(C,M)": lambda: fcondition_hypothesis(s)[1],
        "F(M,C)": lambda: fcondition_hypothesis(s)[2],
        "J1": lambda: parts()[0],
        "J2": lambda: parts()[1],
        "J3": lambda: parts()[2],
        "Jfrak": jfrak_all,
        "Jfrak∩(M\\C)": lambda: jfrak_all().intersect(s.m_minus_c),
    }


def _only_right_closure(printed: RangeSet, computed: RangeSet) -> bool:
    """True when the sets differ only in whether some right endpoints are included."""
    if len(printed) != len(computed):
        return False
    for a, b in zip(printed, computed):
        if (a.lo, a.hi, a.lo_closed) != (b.lo, b.hi, b.lo_closed):
            return False
    return True


def printed_findings(spec: ScenarioSpec, oracle: Verdict | None) -> list[dict]:
    out = []
    if not spec.printed:
        return out
    qty = computed_quantities(spec.scenario, spec.witness)
    for key in sorted(spec.printed):
        text = spec.printed[key]
        if key == "T":
            if oracle is None or oracle.outcome.value == text:
                continue
            out.append({"kind": "printed_verdict", "quantity": "T", "printed": text,
                        "computed": oracle.outcome.value,
                        "witness": oracle.to_json().get("witness")})
            continue
        if key not in qty:
            out.append({"kind": "unknown_printed_quantity", "quantity": key})
            continue
        value = qty[key]()
        if isinstance(value, RangeSet):
            if isinstance(text, list):
                printed = RangeSet.points([as_ext(p) for p in text])
            else:
                printed = parse_rangeset(text)
            if printed == value:
                continue
            kind = "open_right_endpoint" if _only_right_closure(printed, value) else "value"
            out.append({"kind": "printed_value", "divergence": kind, "quantity": key,
                        "printed": str(printed), "computed": str(value)})
        elif value != text:
            out.append({"kind": "printed_value", "divergence": "value", "quantity": key,
                        "printed": text, "computed": value})
    return out


# -- verdicts -----------------------------------------------------------------

def run_checks(spec: ScenarioSpec, method: str = "all") -> tuple[list[dict], list[dict]]:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    s, w = spec.scenario, spec.witness
    verdicts: dict[str, Verdict] = {}
    if method in ("sufficient", "all"):
        verdicts["sufficient"] = check_sufficient(s)
    if method in ("fcondition", "all"):
        verdicts["fcondition"] = check_fcondition(s, w)
    need_oracle = method in ("oracle", "all") or any(
        v.implies is None for v in verdicts.values())
    if need_oracle:
        verdicts["oracle_t"] = oracle_t(s, w)
    if method in ("oracle", "all"):
        verdicts["oracle_otimes"] = oracle_otimes(s, w)

    entries = []
    ref = verdicts.get("oracle_t")
    for key, v in verdicts.items():
        e = v.to_json()
        if key in ("sufficient", "fcondition") and v.implies is None and ref is not None:
            e["fallback"] = {"criterion": "oracle_t", "verdict": ref.outcome.value,
                             "cube_size": ref.details["cube_size"]}
        entries.append(e)

    findings = []
    if ref is not None:
        for key in ("sufficient", "fcondition"):
            v = verdicts.get(key)
            if v is not None and v.implies is not None and v.implies != ref.outcome:
                findings.append({"kind": "criterion_vs_oracle", "criterion": v.provenance,
                                 "criterion_verdict": v.outcome.value,
                                 "oracle_t": ref.outcome.value,
                                 "witness": ref.to_json().get("witness")})
    ot = verdicts.get("oracle_otimes")
    if ref is not None and ot is not None and ref.outcome != ot.outcome:
        findings.append({
            "kind": "t_vs_otimes",
            "message": "T and the induced operation on M disagree on associativity",
            "oracle_t": ref.outcome.value, "oracle_otimes": ot.outcome.value,
            "oracle_t_witness": ref.to_json().get("witness"),
            "oracle_otimes_witness": ot.to_json().get("witness"),
            "caveat": "oracle_otimes is relative to its witness set",
        })
    findings.extend(printed_findings(spec, ref))
    return entries, findings


def run_axioms(spec: ScenarioSpec, grid: int | None = None) -> list[dict]:
    s = spec.scenario
    w = WitnessConfig(grid or spec.witness.grid_denominator)
    out = []
    for kind in ("t-norm", "t-conorm", "t-subnorm", "t-superconorm"):
        e = axiom_check(s.t_eval, kind, w).to_json()
        e["function"] = "T"
        out.append(e)
    e = axiom_check(s.t_modified, "t-norm", w).to_json()
    e["function"] = "T_modified"
    out.append(e)
    return out


# -- tables -------------------------------------------------------------------

def _gm_grid(s: Scenario, denominator: int) -> list[ExtRat]:
    finite = [p for p in s.m.endpoints() + [b for b, _ in s.d.gaps] if not p.is_inf]
    top = math.ceil(max(finite, default=ExtRat(1)).q) + 1
    return [ExtRat(j, denominator) for j in range(top * denominator + 1)] + [INF]


def gm_table(s: Scenario, denominator: int = TABLE_GRID) -> list[list[str]]:
    return [[str(x), str(s.g_m(x))] for x in _gm_grid(s, denominator)]


def otimes_table(s: Scenario, w: WitnessConfig) -> dict:
    pts = w.y_witnesses(s)
    return {"points": [str(p) for p in pts],
            "rows": [[str(s.otimes(x, y)) for y in pts] for x in pts]}


def t_table(s: Scenario, denominator: int = TABLE_GRID) -> dict:
    pts = [ExtRat(j, denominator) for j in range(denominator + 1)]
    return {"points": [str(p) for p in pts],
            "rows": [[str(s.t_eval(x, y)) for y in pts] for x in pts]}


# -- assembly -----------------------------------------------------------------

def build_report(spec: ScenarioSpec, command: str, method: str = "all",
                 grid: int | None = None, at=None) -> dict:
    s = spec.scenario
    problems = check_invariants(s.d)
    if problems:
        raise InvariantFailure("; ".join(problems))
    report = {"scenario": render_doc(spec), "decomposition": s.d.to_json(),
              "tables": {}, "verdicts": [], "findings": [],
              "meta": {"tool": "genassoc", "version": __version__, "command": command}}
    if not s.d.valid:
        report["findings"].append({"kind": "outside_class",
                                   "message": "generator violates the right-limit class condition; "
                                              "results are computed on the forced decomposition"})
    if command == "decompose":
        pass
    elif command == "gm":
        if at is not None:
            x = as_ext(at)
            report["tables"]["gm"] = [[str(x), str(s.g_m(x))]]
        else:
            report["tables"]["gm"] = gm_table(s, grid or TABLE_GRID)
    elif command == "otimes-table":
        w = spec.witness if grid is None else WitnessConfig(grid, spec.witness.extra_points)
        report["tables"]["otimes"] = otimes_table(s, w)
    elif command == "t-table":
        report["tables"]["t"] = t_table(s, grid or TABLE_GRID)
    elif command == "check":
        if grid is not None:
            spec = ScenarioSpec(spec.generator, spec.op, WitnessConfig(grid, spec.witness.extra_points),
                                spec.commands, spec.force, spec.name, spec.printed, spec.scenario)
        report["meta"]["method"] = method
        verdicts, findings = run_checks(spec, method)
        report["verdicts"] = verdicts
        report["findings"].extend(findings)
    elif command == "axioms":
        report["verdicts"] = run_axioms(spec, grid)
    else:
        raise ValueError(f"unknown command {command!r}")
    report["meta"]["grid"] = grid or (spec.witness.grid_denominator if command == "check" else TABLE_GRID)
    return report


def summarize(report: dict) -> str:
    """Short human-readable digest of a report."""
    d = report["decomposition"]
    lines = [f"M = {d['M']}",
             "S = {" + ", ".join(f"[{b},{e}]" for b, e in d["S"]) + "}",
             "C = {" + ", ".join(d["C"]) + "}"]
    if "gm" in report["tables"]:
        for x, v in report["tables"]["gm"][:64]:
            lines.append(f"G_M({x}) = {v}")
    for v in report["verdicts"]:
        name = v.get("function", "") + (" " if v.get("function") else "") + v["criterion"]
        line = f"{name}: {v['verdict']}"
        if "witness" in v:
            line += f" witness={v['witness']}"
        if "fallback" in v:
            line += f" (oracle: {v['fallback']['verdict']})"
        lines.append(line)
    for f in report["findings"]:
        lines.append(f"finding [{f['kind']}]: " + ", ".join(
            f"{k}={v}" for k, v in f.items() if k != "kind"))
    return "\n".join(lines)
