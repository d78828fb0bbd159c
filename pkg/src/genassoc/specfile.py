"""Scenario documents: JSON <-> validated objects, with field-path diagnostics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .analysis import Scenario, ScenarioError, WitnessConfig
from .decomposition import NotInClassF
from .generators import Generator, GeneratorError, Piece, PieceExpr
from .numbers import ExtRat, NegativeValueError
from .ops import AssocOp, RegistrationError, UnknownOperation, op_from_json
from .rangesets import Interval

COMMANDS = ("decompose", "gm", "otimes-table", "t-table", "check", "axioms")


class SpecError(ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message


class ParseError(SpecError):
    """Malformed document or literal."""


class ValidationError(SpecError):
    """Well-formed document describing an invalid scenario."""


@dataclass(eq=False)
class ScenarioSpec:
    generator: Generator
    op: AssocOp
    witness: WitnessConfig = field(default_factory=WitnessConfig)
    commands: tuple = ()
    force: bool = False
    name: str = ""
    printed: dict = field(default_factory=dict)
    _scenario: Scenario | None = field(default=None, repr=False)

    @property
    def scenario(self) -> Scenario:
        if self._scenario is None:
            self._scenario = Scenario(self.generator, self.op, force=self.force)
        return self._scenario

    def __eq__(self, other):
        if not isinstance(other, ScenarioSpec):
            return NotImplemented
        return render_doc(self) == render_doc(other)


def _rat(v, path: str) -> ExtRat:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError(f"expected a rational string, got {v!r}", path)
    try:
        return ExtRat(v)
    except NegativeValueError:
        raise ValidationError(f"negative value {v!r}", path) from None
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {v!r}", path) from None


def _obj(v, path: str) -> dict:
    if not isinstance(v, dict):
        raise ParseError(f"expected an object, got {type(v).__name__}", path)
    return v


def _bool(v, path: str) -> bool:
    if not isinstance(v, bool):
        raise ParseError(f"expected true/false, got {v!r}", path)
    return v


def _coef(v, path) -> Fraction:
    """A signed finite rational coefficient."""
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError(f"expected a rational string, got {v!r}", path)
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {v!r}", path) from None


def _expr(doc, path: str) -> PieceExpr:
    doc = _obj(doc, path)
    kind = doc.get("kind")
    if kind == "constant":
        return PieceExpr.constant(_rat(doc.get("c"), f"{path}.c"))
    if kind == "affine":
        return PieceExpr.affine(_coef(doc.get("a", "0"), f"{path}.a"),
                                _coef(doc.get("b", "0"), f"{path}.b"))
    if kind == "mobius":
        return PieceExpr.mobius(*(_coef(doc.get(k), f"{path}.{k}") for k in "abcd"))
    raise ValidationError(f"unknown piece kind {kind!r}", f"{path}.kind")


def _piece(doc, path: str) -> Piece:
    doc = _obj(doc, path)
    dom = _obj(doc.get("domain"), f"{path}.domain")
    lo = _rat(dom.get("lo"), f"{path}.domain.lo")
    hi = _rat(dom.get("hi"), f"{path}.domain.hi")
    lc = _bool(dom.get("lo_closed", True), f"{path}.domain.lo_closed")
    hc = _bool(dom.get("hi_closed", True), f"{path}.domain.hi_closed")
    iv = Interval.make(lo, hi, lc, hc)
    if iv is None:
        raise ValidationError("empty domain", f"{path}.domain")
    return Piece(iv, _expr(doc.get("expr"), f"{path}.expr"))


def parse_generator(doc, path: str = "generator") -> Generator:
    doc = _obj(doc, path)
    pieces = doc.get("pieces")
    if not isinstance(pieces, list) or not pieces:
        raise ParseError("expected a non-empty list of pieces", f"{path}.pieces")
    parsed = [_piece(p, f"{path}.pieces[{i}]") for i, p in enumerate(pieces)]
    try:
        return Generator(parsed, name=str(doc.get("name", "")))
    except GeneratorError as exc:
        sub = exc.path or "pieces"
        raise ValidationError(str(exc), f"{path}.{sub}") from None


def parse_op(doc, path: str = "F") -> AssocOp:
    doc = _obj(doc, path)
    params = {}
    for k, v in doc.items():
        if k != "name":
            params[k] = _rat(v, f"{path}.{k}")
    try:
        return op_from_json({"name": doc.get("name"), **params})
    except UnknownOperation as exc:
        raise ValidationError(f"unknown operation {exc.args[0]!r}", f"{path}.name") from None
    except RegistrationError as exc:
        raise ValidationError(str(exc), path) from None


def parse_doc(doc) -> ScenarioSpec:
    doc = _obj(doc, "")
    known = {"name", "generator", "F", "witness", "commands", "force", "printed"}
    extra = sorted(set(doc) - known)
    if extra:
        raise ValidationError(f"unknown field(s) {extra}", extra[0])
    g = parse_generator(doc.get("generator"))
    op = parse_op(doc.get("F", {"name": "sum"}))
    wdoc = _obj(doc.get("witness", {}), "witness")
    grid = wdoc.get("grid_denominator", 16)
    if isinstance(grid, bool) or not isinstance(grid, int) or grid < 1:
        raise ValidationError("grid_denominator must be a positive integer", "witness.grid_denominator")
    extras_doc = wdoc.get("extra_points", [])
    if not isinstance(extras_doc, list):
        raise ParseError("expected a list", "witness.extra_points")
    extras = tuple(_rat(p, f"witness.extra_points[{i}]") for i, p in enumerate(extras_doc))
    cmds = doc.get("commands", [])
    if not isinstance(cmds, list):
        raise ParseError("expected a list", "commands")
    for i, c in enumerate(cmds):
        if c not in COMMANDS:
            raise ValidationError(f"unknown command {c!r}", f"commands[{i}]")
    printed = _obj(doc.get("printed", {}), "printed")
    spec = ScenarioSpec(g, op, WitnessConfig(grid, extras), tuple(cmds),
                        _bool(doc.get("force", False), "force"), str(doc.get("name", "")), dict(printed))
    try:
        spec.scenario
    except NotInClassF as exc:
        raise ValidationError(f"{exc} (set \"force\": true to analyse anyway)", "generator") from None
    except ScenarioError as exc:
        raise ValidationError(str(exc), "F") from None
    return spec


def parse_spec(text: str) -> ScenarioSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return parse_doc(doc)


def render_doc(spec: ScenarioSpec) -> dict:
    doc = {}
    if spec.name:
        doc["name"] = spec.name
    doc["generator"] = spec.generator.to_json()
    doc["F"] = spec.op.to_json()
    doc["witness"] = {"grid_denominator": spec.witness.grid_denominator,
                      "extra_points": [str(p) for p in spec.witness.extra_points]}
    if spec.commands:
        doc["commands"] = list(spec.commands)
    if spec.force:
        doc["force"] = True
    if spec.printed:
        doc["printed"] = spec.printed
    return doc


def render(spec: ScenarioSpec) -> str:
    return json.dumps(render_doc(spec), indent=2, ensure_ascii=False) + "\n"


def fixture_names() -> list[str]:
    root = resources.files("genassoc") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> ScenarioSpec:
    path = resources.files("genassoc") / "fixtures" / f"{name}.json"
    return parse_spec(path.read_text(encoding="utf-8"))
