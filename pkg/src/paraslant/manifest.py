"""Line-oriented manifest files describing a structure and its curves.

Format: INI-like sections with ``key = expression`` entries.

    # comment
    [chart]
    coordinates = x, y, z
    constraint = z            # repeatable; each expression must stay > 0
    box = -2, 2, -2, 2, 0.05, 2

    [metric]
    g11 = -2*z
    ...                       # all nine entries; symmetry is validated

    [phi]                     # mixed tensor, phiIJ = component I of phi(d_J)
    phi11 = 0
    ...

    [xi]
    xi1 = 0 ...

    [eta]
    eta1 = 0 ...

    [curve.NAME]
    x = ...
    y = ...
    z = ...
    interval = -4, -0.1       # 'inf' endpoints allowed

Parse errors carry the offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import Curve
from .errors import ParseError
from .expr import ScalarExpr, parse_expr, to_text
from .structure import Chart, DEFAULT_BOX, MetricTensor, ParacontactStructure


@dataclass
class Manifest:
    structure: ParacontactStructure
    curves: dict[str, Curve] = field(default_factory=dict)


def _parse_line_expr(text: str, line_no: int) -> ScalarExpr:
    try:
        return parse_expr(text)
    except ParseError as err:
        raise ParseError(str(err), line=line_no) from None


def _parse_floats(text: str, line_no: int, count: int | None = None) -> list[float]:
    cleaned = text.replace("(", " ").replace(")", " ")
    parts = [p.strip() for p in cleaned.split(",") if p.strip()]
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected numbers, found {text!r}", line=line_no) from None
    if count is not None and len(values) != count:
        raise ParseError(f"expected {count} numbers, found {len(values)}", line=line_no)
    return values


def parse_manifest(text: str, name: str = "manifest") -> Manifest:
    sections: dict[str, list[tuple[str, str, int]]] = {}
    order: list[str] = []
    current: str | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header", line=line_no)
            current = line[1:-1].strip()
            if not current:
                raise ParseError("empty section name", line=line_no)
            sections.setdefault(current, [])
            order.append(current)
            continue
        if current is None:
            raise ParseError("entry before any section header", line=line_no)
        if "=" not in line:
            raise ParseError("expected 'key = value'", line=line_no)
        key, value = line.split("=", 1)
        sections[current].append((key.strip(), value.strip(), line_no))

    for required in ("chart", "metric", "phi", "xi", "eta"):
        if required not in sections:
            raise ParseError(f"missing [{required}] section")

    chart = _build_chart(sections["chart"])
    coords = chart.coordinates
    metric = MetricTensor(coords, _build_matrix(sections["metric"], "g"))
    phi = _build_matrix(sections["phi"], "phi")
    xi = _build_vector(sections["xi"], "xi")
    eta = _build_vector(sections["eta"], "eta")
    structure = ParacontactStructure(
        name=name, chart=chart, metric=metric, phi=phi, xi=xi, eta=eta
    )

    curves: dict[str, Curve] = {}
    for section in order:
        if not section.startswith("curve."):
            continue
        curve_name = section[len("curve."):]
        entries = dict_with_lines(sections[section])
        for needed in ("x", "y", "z", "interval"):
            if needed not in entries:
                raise ParseError(f"curve '{curve_name}' is missing '{needed}'")
        components = tuple(
            _parse_line_expr(entries[k][0], entries[k][1]) for k in ("x", "y", "z")
        )
        iv_text, iv_line = entries["interval"]
        lo, hi = _parse_interval(iv_text, iv_line)
        curves[curve_name] = Curve(curve_name, structure, components, (lo, hi))  # type: ignore[arg-type]
    return Manifest(structure=structure, curves=curves)


def dict_with_lines(entries: list[tuple[str, str, int]]) -> dict[str, tuple[str, int]]:
    return {key: (value, line) for key, value, line in entries}


def _parse_interval(text: str, line_no: int) -> tuple[float, float]:
    cleaned = text.replace("(", " ").replace(")", " ")
    parts = [p.strip() for p in cleaned.split(",") if p.strip()]
    if len(parts) != 2:
        raise ParseError("interval needs two endpoints", line=line_no)
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad interval {text!r}", line=line_no) from None
    if not lo < hi:
        raise ParseError("interval endpoints must satisfy a < b", line=line_no)
    return lo, hi


def _build_chart(entries: list[tuple[str, str, int]]) -> Chart:
    coordinates: tuple[str, str, str] | None = None
    constraints: list[ScalarExpr] = []
    box = DEFAULT_BOX
    for key, value, line_no in entries:
        if key == "coordinates":
            names = tuple(p.strip() for p in value.split(","))
            if len(names) != 3 or not all(names):
                raise ParseError("coordinates needs three names", line=line_no)
            coordinates = names  # type: ignore[assignment]
        elif key == "constraint":
            constraints.append(_parse_line_expr(value, line_no))
        elif key == "box":
            values = _parse_floats(value, line_no, 6)
            box = tuple((values[2 * i], values[2 * i + 1]) for i in range(3))  # type: ignore[assignment]
        else:
            raise ParseError(f"unknown chart key '{key}'", line=line_no)
    if coordinates is None:
        raise ParseError("chart section needs a 'coordinates' entry")
    return Chart(coordinates, tuple(constraints), box)


def _build_matrix(entries: list[tuple[str, str, int]], prefix: str):
    table: dict[str, tuple[str, int]] = dict_with_lines(entries)
    rows = []
    for i in range(1, 4):
        row = []
        for j in range(1, 4):
            key = f"{prefix}{i}{j}"
            if key not in table:
                raise ParseError(f"missing entry '{key}'")
            value, line_no = table[key]
            row.append(_parse_line_expr(value, line_no))
        rows.append(tuple(row))
    return tuple(rows)


def _build_vector(entries: list[tuple[str, str, int]], prefix: str):
    table = dict_with_lines(entries)
    out = []
    for i in range(1, 4):
        key = f"{prefix}{i}"
        if key not in table:
            raise ParseError(f"missing entry '{key}'")
        value, line_no = table[key]
        out.append(_parse_line_expr(value, line_no))
    return tuple(out)


def dump_manifest(structure: ParacontactStructure, curves: dict[str, Curve] | None = None) -> str:
    """Emit manifest text that parses back to equal-valued fixtures."""
    chart = structure.chart
    lines = ["[chart]", f"coordinates = {', '.join(chart.coordinates)}"]
    for c in chart.constraints:
        lines.append(f"constraint = {to_text(c)}")
    flat_box = ", ".join(f"{v:g}" for pair in chart.box for v in pair)
    lines.append(f"box = {flat_box}")
    lines.append("")
    lines.append("[metric]")
    for i in range(3):
        for j in range(3):
            lines.append(f"g{i + 1}{j + 1} = {to_text(structure.metric.entries[i][j])}")
    lines.append("")
    lines.append("[phi]")
    for i in range(3):
        for j in range(3):
            lines.append(f"phi{i + 1}{j + 1} = {to_text(structure.phi[i][j])}")
    lines.append("")
    lines.append("[xi]")
    for i in range(3):
        lines.append(f"xi{i + 1} = {to_text(structure.xi[i])}")
    lines.append("")
    lines.append("[eta]")
    for i in range(3):
        lines.append(f"eta{i + 1} = {to_text(structure.eta[i])}")
    for name, curve in (curves or {}).items():
        lines.append("")
        lines.append(f"[curve.{name}]")
        for label, comp in zip(("x", "y", "z"), curve.components):
            lines.append(f"{label} = {to_text(comp)}")
        lo, hi = curve.interval
        lines.append(f"interval = {lo:g}, {hi:g}")
    return "\n".join(lines) + "\n"
