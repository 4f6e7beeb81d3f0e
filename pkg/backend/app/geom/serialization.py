"""
JSON encoding of charts, fields and forms

Expressions travel as strings in the parser grammar.
"""

from typing import Any, Dict, List, Sequence

from app.expr import DomainBox, parse

from .chart import Chart
from .fields import TwoForm, VectorField


def domain_to_dict(domain: DomainBox) -> Dict[str, Any]:
    return {
        "intervals": {name: [low, high] for name, (low, high) in domain.intervals.items()},
        "exclusions": [str(e) for e in domain.exclusions],
    }


def domain_from_dict(data: Dict[str, Any], symbols: Sequence[str]) -> DomainBox:
    return DomainBox(
        intervals={name: (float(low), float(high)) for name, (low, high) in data.get("intervals", {}).items()},
        exclusions=tuple(parse(src, symbols) for src in data.get("exclusions", [])),
    )


def chart_to_dict(chart: Chart) -> Dict[str, Any]:
    return {"chart": list(chart.symbols), "domain": domain_to_dict(chart.domain)}


def chart_from_dict(data: Dict[str, Any]) -> Chart:
    symbols = tuple(data["chart"])
    return Chart(symbols, domain_from_dict(data.get("domain", {}), symbols))


def field_to_dict(X: VectorField) -> Dict[str, Any]:
    return {"label": X.label, "components": [str(c) for c in X.components]}


def field_from_dict(chart: Chart, data: Dict[str, Any]) -> VectorField:
    return VectorField.from_strings(chart, data["components"], data.get("label", ""))


def form_to_entries(omega: TwoForm) -> List[Dict[str, Any]]:
    return [
        {"i": l, "j": m, "coeff": str(coeff)}
        for (l, m), coeff in sorted(omega.entries.items())
    ]


def form_from_entries(chart: Chart, entries: List[Dict[str, Any]], label: str = "") -> TwoForm:
    return TwoForm.from_strings(chart, {(e["i"], e["j"]): e["coeff"] for e in entries}, label)


def structure_to_dict(chart: Chart, forms: Sequence[TwoForm]) -> Dict[str, Any]:
    """{"chart": [...], "forms": [[{"i","j","coeff"}...]...], "domain": {...}}"""
    return {
        "chart": list(chart.symbols),
        "forms": [form_to_entries(omega) for omega in forms],
        "domain": domain_to_dict(chart.domain),
    }


def structure_from_dict(data: Dict[str, Any]) -> List[TwoForm]:
    chart = chart_from_dict(data)
    return [
        form_from_entries(chart, entries, f"omega{i + 1}")
        for i, entries in enumerate(data["forms"])
    ]
