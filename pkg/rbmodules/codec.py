"""JSON encoding of matrices, operators, modules and reports.

Rationals travel as strings, either an integer or "p/q", so nothing passes
through floating point.

    >>> parse_matrix([["-1", "1"], ["0", "-1/2"]]).to_rows()[1]
    [Fraction(0, 1), Fraction(-1, 2)]
    >>> dump_scalar(Fraction(-3, 4))
    '-3/4'
"""

from __future__ import annotations

import json
import re
from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from .catalog import CatalogEntry
from .exactcore import DenseMatrix, DimensionMismatch, Polynomial
from .matsolve import BlockPattern, SolutionSpace
from .rbops import AxiomReport, Family, Flavor, IdentityReport, ModulePair, RBOperator
from .structure import AnalysisReport, SubmoduleWitness, Verdict

RATIONAL_RE = re.compile(r"^\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?P<den>\d+)\s*)?$")

VERDICT_NAMES = {
    Verdict.INDECOMPOSABLE: "yes",
    Verdict.DECOMPOSABLE: "no",
    Verdict.INCONCLUSIVE: "inconclusive",
}


class ParseError(ValueError):
    """Input that does not match the JSON formats."""


def loads(text: str, source: str = "input") -> Any:
    """Decode JSON text, reporting failures as ParseError."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source} is not valid JSON: {exc}") from exc


def dumps(data: object) -> str:
    """Deterministic JSON: sorted keys, two-space indent."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def parse_scalar(value: object, where: str = "value") -> Fraction:
    """An integer or a string "n" or "p/q"."""
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational string like '3' or '-1/2', got {value!r}")
    match = RATIONAL_RE.match(value)
    if not match:
        raise ParseError(f"{where}: {value!r} is not an integer or p/q fraction")
    den = int(match.group("den") or 1)
    if den == 0:
        raise ParseError(f"{where}: {value!r} has a zero denominator")
    return Fraction(int(match.group("num")), den)


def dump_scalar(value: Fraction) -> str:
    """'n' for integers, else 'p/q'."""
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_matrix(data: object, name: str = "matrix") -> DenseMatrix:
    """An array of equally long arrays of rationals."""
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParseError(f"{name}: expected an array of rows")
    width = len(data[0]) if data else 0
    rows = []
    for i, row in enumerate(data, start=1):
        if len(row) != width:
            raise ParseError(f"{name}: row {i} has {len(row)} entries, row 1 has {width}")
        rows.append([parse_scalar(e, f"{name}[row {i}, col {j}]") for j, e in enumerate(row, start=1)])
    return DenseMatrix(len(rows), width, (e for row in rows for e in row))


def dump_matrix(m: DenseMatrix) -> list[list[str]]:
    """Rows of rational strings."""
    return [[dump_scalar(e) for e in row] for row in m.to_rows()]


def parse_polynomial(data: object) -> Polynomial:
    """Coefficient array, index = degree."""
    if not isinstance(data, list):
        raise ParseError("polynomial: expected an array of coefficients")
    return Polynomial(parse_scalar(c, f"polynomial[degree {d}]") for d, c in enumerate(data))


def dump_polynomial(p: Polynomial) -> list[str]:
    """Coefficient strings, index = degree."""
    return [dump_scalar(c) for c in p.coefficients]


def parse_family(name: object) -> Family:
    """Case-insensitive operator family name."""
    if isinstance(name, str):
        for family in Family:
            if family.value.lower() == name.strip().lower():
                return family
    raise ParseError(f"unknown operator family {name!r}; expected P1, P2, P3, P4 or XKx")


def parse_flavor(name: object) -> Flavor:
    """Case-insensitive module flavor name."""
    if not isinstance(name, str):
        raise ParseError(f"flavor: expected a string, got {name!r}")
    try:
        return Flavor.parse(name)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _require_mapping(data: object, what: str) -> Mapping[str, Any]:
    if not isinstance(data, dict):
        raise ParseError(f"{what}: expected a JSON object")
    return data


def parse_operator(data: object, truncation: int | None = None) -> RBOperator:
    """{"family": "P2", "weight": "1", "b": null, "truncation": 12}."""
    obj = _require_mapping(data, "operator")
    if "family" not in obj:
        raise ParseError("operator: missing 'family'")
    b = obj.get("b")
    raw_truncation = obj.get("truncation")
    if truncation is None and raw_truncation is not None:
        if isinstance(raw_truncation, bool) or not isinstance(raw_truncation, int):
            raise ParseError(f"operator: truncation must be an integer, got {raw_truncation!r}")
        truncation = raw_truncation
    return RBOperator(
        parse_family(obj["family"]),
        parse_scalar(obj.get("weight", "1"), "operator weight"),
        None if b is None else parse_scalar(b, "operator b"),
        truncation,
    )


def dump_operator(op: RBOperator) -> dict[str, object]:
    """Inverse of `parse_operator`."""
    return {
        "family": op.family.value,
        "weight": dump_scalar(op.weight),
        "b": None if op.b is None else dump_scalar(op.b),
        "truncation": op.truncation,
    }


def parse_module(data: object, flavor: Flavor | None = None) -> ModulePair:
    """{"A": matrix, "B": matrix, "flavor": "xkx"}; `flavor` overrides the object's."""
    obj = _require_mapping(data, "module")
    for key in ("A", "B"):
        if key not in obj:
            raise ParseError(f"module: missing '{key}'")
    if flavor is None:
        if "flavor" not in obj:
            raise ParseError("module: missing 'flavor' and none given on the command line")
        flavor = parse_flavor(obj["flavor"])
    a, b = parse_matrix(obj["A"], "A"), parse_matrix(obj["B"], "B")
    try:
        return ModulePair(a, b, flavor)
    except DimensionMismatch as exc:
        raise ParseError(f"module: {exc}") from exc


def dump_module(mp: ModulePair) -> dict[str, object]:
    """Inverse of `parse_module`."""
    return {"A": dump_matrix(mp.a), "B": dump_matrix(mp.b), "flavor": mp.flavor.value}


def dump_pattern(pattern: BlockPattern) -> dict[str, object]:
    """A block pattern with 1-based free cells in row-major order."""
    return {
        "rows": pattern.rows,
        "cols": pattern.cols,
        "case": pattern.case,
        "count": pattern.count,
        "free_cells": [list(cell) for cell in pattern.sorted_cells()],
    }


def dump_solution_space(space: SolutionSpace) -> dict[str, object]:
    """{"dim": n, "free_parameters": k, "basis": [...], "pattern": [...], ...}."""
    out: dict[str, object] = {
        "dim": space.dim_ambient,
        "free_parameters": space.dim,
        "basis": [dump_matrix(m) for m in space.basis],
        "pattern": [],
    }
    desc = space.description
    if desc is not None:
        out["flavor"] = desc.flavor.value
        out["jordan_blocks"] = [[dump_scalar(value), size] for value, size in desc.blocks]
        out["change_of_basis"] = dump_matrix(desc.change_of_basis)
        out["pattern"] = [
            {
                "block_row": p.block_row,
                "block_col": p.block_col,
                "case": p.pattern.case,
                "free_cells": [list(cell) for cell in p.pattern.sorted_cells()],
            }
            for p in desc.placements
        ]
        if desc.variant is not None:
            out["variant"] = desc.variant.value
    return out


def dump_witness(witness: SubmoduleWitness | None) -> dict[str, object] | None:
    """Generator vector and the two eigenvalues."""
    if witness is None:
        return None
    return {
        "generator": [dump_scalar(e) for e in witness.generator],
        "x_eigen": dump_scalar(witness.x_eigen),
        "p_eigen": dump_scalar(witness.p_eigen),
    }


def dump_analysis(report: AnalysisReport) -> dict[str, object]:
    """The structure report of `structure.analyze`."""
    return {
        "module": dump_module(report.module),
        "valid": report.valid,
        "irreducible": report.irreducible,
        "submodule_witness": dump_witness(report.witness),
        "witness_note": report.witness_note,
        "indecomposable": None if report.verdict is None else VERDICT_NAMES[report.verdict],
        "commutant_dim": report.commutant_dim,
        "regular_rank": report.regular_rank,
    }


def dump_catalog_entry(entry: CatalogEntry) -> dict[str, object]:
    """Label, description, representative module and parameter count."""
    return {
        "label": entry.label,
        "description": entry.description,
        "module": dump_module(entry.module),
        "free_parameters": entry.free_parameters,
    }


def dump_identity_report(op: RBOperator, report: IdentityReport) -> dict[str, object]:
    """Result of `verify_rb_identity`."""
    return {
        "operator": dump_operator(op),
        "holds": report.holds,
        "first_failure": None if report.first_failure is None else list(report.first_failure),
        "pairs_checked": report.checked,
    }


def dump_axiom_report(report: AxiomReport) -> dict[str, object]:
    """Result of `verify_module_axiom`."""
    return {"holds": report.holds, "first_failure": report.first_failure}
