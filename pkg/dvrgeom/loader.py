"""
Scheme description files.

Three syntaxes produce the same SchemeFile: the line grammar (``.scheme``
or no suffix), YAML and JSON. A line file reads::

    ring: Zmod(3^3)
    ambient: P2
    eq f1 = x0*x1 - 3*x2^2
    component Y1 = x0
    component Y2 = x1
    oq at (0:0:1) expect case=i order=1
    proper: true
    budget points=1000000
"""

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
import yaml
from dvrgeom.bertini import StratifiedModel
from dvrgeom.exceptions import (
    AlgebraException,
    DeclaredDataMismatchException,
    SchemeFileException,
    SchemeFileParseException,
    UnsupportedFileFormatException,
)
from dvrgeom.points import normalize_projective
from dvrgeom.poly import default_names
from dvrgeom.polyparse import format_point, parse_point, parse_polynomial
from dvrgeom.quadsing import (
    classify_field_point,
    classify_point,
    order,
    semistable_point_shape,
)
from dvrgeom.rings import parse_ring
from dvrgeom.schemes import SchemeModel
from dvrgeom.settings import Settings, load_settings
from dvrgeom.utils import debug_log
from dvrgeom.validation import check_file_exists

BUDGET_KEYS = tuple(Settings().to_dict())

_LINE_RULES = (
    ("ring", re.compile(r"ring\s*:\s*(.+)")),
    ("ambient", re.compile(r"ambient\s*:\s*(\S+)")),
    ("vars", re.compile(r"vars\s*:\s*(.+)")),
    ("eq", re.compile(r"eq\s+([A-Za-z_]\w*)\s*=\s*(.+)")),
    ("component", re.compile(r"component\s+([A-Za-z_]\w*)\s*=\s*(.+)")),
    ("oq", re.compile(r"oq\s+at\s+(\([^)]*\))(?:\s+expect\s+(.+))?")),
    ("proper", re.compile(r"proper\s*:\s*(\S+)")),
    ("budget", re.compile(r"budget\s+(.+)")),
)


@dataclass(frozen=True)
class DeclaredPoint:
    """A singular point declared ordinary quadratic, with optional expectations."""

    coords: tuple
    case: str = None
    order: int = None
    line: int = field(default=None, compare=False)

    def to_text(self, ring):
        text = f"oq at {format_point(self.coords, ring)}"
        expect = []
        if self.case is not None:
            expect.append(f"case={self.case}")
        if self.order is not None:
            expect.append(f"order={self.order}")
        return text + (" expect " + " ".join(expect) if expect else "")


@dataclass(frozen=True)
class SchemeFile:
    ring: object
    projective: bool
    names: tuple
    equations: tuple
    components: tuple = ()
    oq_points: tuple = ()
    proper: bool = False
    budgets: dict = field(default_factory=dict)
    source: str = ""

    @property
    def nvars(self):
        return len(self.names)

    @property
    def residue_field(self):
        return self.ring.residue_field() if self.ring.is_dvr else self.ring

    @property
    def model(self):
        equations = tuple(poly for _, poly in self.equations)
        return SchemeModel(self.ring, self.nvars, equations, self.projective, self.names,
                           Path(self.source).stem if self.source else "")

    @property
    def component_models(self):
        return tuple(
            SchemeModel(self.residue_field, self.nvars, polys, self.projective, self.names, name)
            for name, polys in self.components
        )

    @property
    def stratified(self):
        return StratifiedModel(self.model, self.component_models, self.proper)

    @property
    def declared_coords(self):
        return [point.coords for point in self.oq_points]

    def to_text(self):
        """Canonical line form; parsing it gives back an equal SchemeFile."""
        ring = self.ring
        ambient = ("P" if self.projective else "A") + str(
            self.nvars - 1 if self.projective else self.nvars
        )
        lines = [f"ring: {ring}", f"ambient: {ambient}", "vars: " + " ".join(self.names)]
        lines += [f"eq {name} = {poly.to_text()}" for name, poly in self.equations]
        lines += [
            f"component {name} = " + ", ".join(p.to_text() for p in polys)
            for name, polys in self.components
        ]
        lines += [point.to_text(self.residue_field) for point in self.oq_points]
        lines.append(f"proper: {'true' if self.proper else 'false'}")
        if self.budgets:
            lines.append(
                "budget " + " ".join(f"{k}={self.budgets[k]}" for k in BUDGET_KEYS
                                     if k in self.budgets)
            )
        return "\n".join(lines) + "\n"


# Raw descriptions


def _parse_lines(text):
    """Line grammar into a raw description; each entry keeps its line number."""
    raw = {"equations": [], "components": [], "oq": [], "budget": {}}
    for number, content in enumerate(text.splitlines(), start=1):
        stripped = content.split("#", 1)[0].strip()
        if not stripped:
            continue
        for key, pattern in _LINE_RULES:
            match = pattern.fullmatch(stripped)
            if match:
                break
        else:
            raise SchemeFileParseException(details=f"Unrecognized line: {stripped!r}",
                                           line=number)
        if key == "eq":
            raw["equations"].append((match.group(1), match.group(2), number))
        elif key == "component":
            raw["components"].append((match.group(1), match.group(2).split(","), number))
        elif key == "oq":
            raw["oq"].append((match.group(1), _expectations(match.group(2), number), number))
        elif key == "budget":
            raw["budget"].update(_key_values(match.group(1), number))
        elif key == "vars":
            raw["vars"] = (match.group(1).split(), number)
        else:
            raw[key] = (match.group(1).strip(), number)
    return raw


def _key_values(text, line):
    pairs = {}
    for part in text.split():
        key, sep, value = part.partition("=")
        if not sep:
            raise SchemeFileParseException(details=f"Expected key=value, got {part!r}",
                                           line=line)
        pairs[key] = value
    return pairs


def _expectations(text, line):
    if not text:
        return {}
    pairs = _key_values(text, line)
    unknown = set(pairs) - {"case", "order"}
    if unknown:
        raise SchemeFileParseException(details=f"Unknown expectation {sorted(unknown)}",
                                       line=line)
    return pairs


def _from_mapping(data):
    """YAML/JSON document into a raw description (no line numbers)."""
    if not isinstance(data, dict):
        raise SchemeFileParseException(details="Top level must be a mapping")
    raw = {"equations": [], "components": [], "oq": [], "budget": {}}
    for key in ("ring", "ambient", "proper"):
        if key in data:
            raw[key] = (str(data[key]).lower() if key == "proper" else str(data[key]), None)
    if "vars" in data:
        raw["vars"] = ([str(name) for name in data["vars"]], None)
    raw["equations"] = [(name, str(text), None) for name, text in _named(data.get("equations"), "f")]
    for name, body in _named(data.get("components"), "Y"):
        texts = body if isinstance(body, list) else str(body).split(",")
        raw["components"].append((name, [str(t) for t in texts], None))
    for entry in data.get("oq") or []:
        if not isinstance(entry, dict) or "at" not in entry:
            raise SchemeFileParseException(details=f"oq entries need 'at': {entry!r}")
        expect = {k: str(entry[k]) for k in ("case", "order") if k in entry}
        raw["oq"].append((str(entry["at"]), expect, None))
    raw["budget"] = {str(k): str(v) for k, v in (data.get("budget") or {}).items()}
    return raw


def _named(entries, prefix):
    if entries is None:
        return []
    if isinstance(entries, dict):
        return list(entries.items())
    return [(f"{prefix}{index}", text) for index, text in enumerate(entries, start=1)]


# Building


def _require(raw, key):
    if key not in raw:
        raise SchemeFileParseException(details=f"Missing '{key}:' entry")
    return raw[key]


def _ambient(text, line):
    match = re.fullmatch(r"([PA])(\d+)", text)
    if not match:
        raise SchemeFileParseException(details=f"Ambient must be Pn or An, got {text!r}",
                                       line=line)
    projective = match.group(1) == "P"
    dimension = int(match.group(2))
    return projective, dimension + 1 if projective else dimension


def build_scheme(raw, source=""):
    """Turn a raw description into a SchemeFile (no re-verification)."""
    ring_text, ring_line = _require(raw, "ring")
    try:
        ring = parse_ring(ring_text)
    except AlgebraException as e:
        raise SchemeFileParseException(details=str(e.details or e), line=ring_line) from e
    projective, nvars = _ambient(*_require(raw, "ambient"))
    names, names_line = raw.get("vars", (default_names(nvars), None))
    names = tuple(names)
    if len(names) != nvars:
        raise SchemeFileParseException(
            details=f"{len(names)} variable names for {nvars} coordinates", line=names_line
        )
    residue = ring.residue_field() if ring.is_dvr else ring
    equations = tuple(
        (name, parse_polynomial(text, ring, names, line=line))
        for name, text, line in raw["equations"]
    )
    if not equations:
        raise SchemeFileParseException(details="No 'eq' lines")
    components = tuple(
        (name, tuple(parse_polynomial(t.strip(), residue, names, line=line) for t in texts))
        for name, texts, line in raw["components"]
    )
    oq_points = []
    for text, expect, line in raw["oq"]:
        coords, is_projective = parse_point(text, residue, line)
        if is_projective != projective or len(coords) != nvars:
            raise SchemeFileParseException(details=f"Point {text} does not fit the ambient",
                                           line=line)
        if projective:
            coords = normalize_projective(coords, residue)
        try:
            expected_order = int(expect["order"]) if "order" in expect else None
        except ValueError as e:
            raise SchemeFileParseException(details="order must be an integer", line=line) from e
        oq_points.append(DeclaredPoint(coords, expect.get("case"), expected_order, line))
    proper_text, proper_line = raw.get("proper", ("false", None))
    if proper_text not in ("true", "false"):
        raise SchemeFileParseException(details="proper must be true or false", line=proper_line)
    budgets = {}
    for key, value in raw["budget"].items():
        if key not in BUDGET_KEYS:
            raise SchemeFileParseException(details=f"Unknown budget {key!r}")
        try:
            budgets[key] = int(value)
        except ValueError as e:
            raise SchemeFileParseException(details=f"budget {key} must be an integer") from e
        if budgets[key] <= 0:
            raise SchemeFileParseException(details=f"budget {key} must be positive")
    return SchemeFile(ring, projective, names, equations, components, tuple(oq_points),
                      proper_text == "true", budgets, str(source))


def parse_scheme_text(text, source=""):
    return build_scheme(_parse_lines(text), source)


# Re-verification


def declared_problems(scheme, settings=None):
    """
    Re-check declared components and ordinary quadratic points.

    :return: list of problem descriptions, empty when the declarations hold.
    """
    settings = settings or Settings()
    model = scheme.model
    ring = scheme.ring
    problems = []
    if scheme.components:
        problems += scheme.stratified.verify(settings.points, settings.steps)
    for point in scheme.oq_points:
        where = format_point(point.coords, scheme.residue_field)
        if ring.is_dvr:
            verdict = classify_point(model, point.coords, settings.jet)
        else:
            verdict = classify_field_point(model, point.coords, settings.jet)
        if not verdict.is_ordinary:
            problems.append(f"{where} is {verdict.summary()}")
            continue
        local = verdict.local_model
        if local is None:
            continue
        if point.case is not None and point.case != local.case:
            problems.append(f"{where} has case={local.case}, declared case={point.case}")
        if point.order is not None and point.order != order(local):
            problems.append(f"{where} has order={order(local)}, declared order={point.order}")
    if ring.is_dvr and scheme.components and model.codimension == 1:
        declared = set(scheme.declared_coords)
        for point in model.points(1, settings.points):
            if tuple(point) in declared:
                continue
            shape = semistable_point_shape(model, point)
            if not shape.passed:
                where = format_point(point, scheme.residue_field)
                problems.append(f"{where}: {shape.reason}")
    return problems


def verify_scheme(scheme, settings=None):
    """:raises DeclaredDataMismatchException: listing every failed declaration."""
    problems = declared_problems(scheme, settings)
    if problems:
        raise DeclaredDataMismatchException(details="; ".join(problems))
    return scheme


# Files


def _parse_file(file_path: Path):
    suffix = file_path.suffix
    with open(file_path, "r", encoding="utf-8") as f:
        text = f.read()
    if suffix in {".json"}:
        return text, _from_mapping(json.loads(text))
    if suffix in {".yaml", ".yml"}:
        return text, _from_mapping(yaml.safe_load(text))
    if suffix in {".scheme", ""}:
        return text, _parse_lines(text)
    raise UnsupportedFileFormatException(details=f"File format detected: {suffix}")


def load_scheme(file_path, verify=True, settings=None):
    """
    Load a scheme file, dispatching on its suffix.

    :param verify: re-check declared components and singular points.
    :return: ``(scheme, text)`` with the file text for report hashing.
    """
    check_file_exists(file_path)
    path = Path(file_path)
    try:
        text, raw = _parse_file(path)
        scheme = build_scheme(raw, path)
    except SchemeFileException:
        raise
    except AlgebraException:
        raise
    except Exception as e:
        raise SchemeFileException(
            "Failed to read the scheme file.", details=str(e)
        ) from e
    if verify:
        verify_scheme(scheme, (settings or Settings()).merged(**scheme.budgets))
    return scheme, text


def open_scheme(file_path, debug=False, **overrides):
    """
    Load and verify a scheme file for a command.

    Settings precedence: command-line overrides, then the file's budget
    line, then the environment, the dotenv file and the defaults.

    :return: ``(scheme, text, settings)``.
    """
    debug_log(f"Debug: loading scheme file {file_path}", debug)
    base = load_settings()
    scheme, text = load_scheme(file_path, verify=False)
    settings = base.merged(**scheme.budgets).merged(**overrides)
    debug_log(f"Debug: settings {settings.to_dict()}", debug)
    verify_scheme(scheme, settings)
    return scheme, text, settings
