"""
Built-in examples

Each record is plain expression data; ``ExampleRecord`` validates it and
compiles the geometric objects on construction.
"""

from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from app.motion.invariants import CROSS_RATIO_SOURCE, SCHWARZIAN_DEGENERACY, SCHWARZIAN_SOURCES

from .models import ExampleRecord

Pair = Tuple[int, int]


def _pair_sum(pairs: Sequence[Pair], template: str) -> str:
    """Sum a template over coordinate pairs; {i} and {j} are 1-based indices"""
    return " + ".join(template.format(i=i, j=j) for i, j in pairs)


def _pair_form(label: str, pairs: Sequence[Pair], kernel: Sequence[Sequence[str]] = ()) -> Dict:
    return {
        "label": label,
        "entries": [{"i": f"x{i}", "j": f"x{j}", "coeff": f"1/(x{i} - x{j})^2"} for i, j in pairs],
        "kernel": [list(z) for z in kernel],
    }


def _differences(n: int) -> str:
    return "*".join(f"(x{i} - x{j})" for i, j in combinations(range(1, n + 1), 2))


def _unit(n: int, index: int) -> List[str]:
    return ["1" if i == index else "0" for i in range(n)]


# Pairing x_i with x_j through dx_i ^ dx_j / (x_i - x_j)^2 gives these Hamiltonians
_PAIR_H1 = "1/(x{i} - x{j})"
_PAIR_H2 = "1/2*(x{i} + x{j})/(x{i} - x{j})"
_PAIR_H3 = "x{i}*x{j}/(x{i} - x{j})"

_SL2_TABLE = [
    ("1", "2", {"1": "-1"}),
    ("1", "3", {"2": "-2"}),
    ("2", "3", {"3": "-1"}),
]


def _relations(prefix: str, table: Sequence[Tuple[str, str, Dict[str, str]]]) -> List[Dict]:
    return [
        {
            "left": f"{prefix}{left}",
            "right": f"{prefix}{right}",
            "result": {f"{prefix}{label}": value for label, value in result.items()},
        }
        for left, right, result in table
    ]


SCHWARZ_3KS = ExampleRecord(
    id="schwarz3ks",
    title="Third-order Kummer-Schwarz equation",
    chart=["x", "v", "a"],
    domain={"intervals": {"v": (0.5, 2.0)}, "exclusions": ["v"]},
    basis=[
        {"label": "Y1", "components": ["0", "0", "2*v"]},
        {"label": "Y2", "components": ["0", "v", "2*a"]},
        {"label": "Y3", "components": ["v", "a", "3/2*a^2/v"]},
    ],
    forms=[
        {
            "label": "omega1",
            "entries": [{"i": "v", "j": "a", "coeff": "1/v^3"}],
            "kernel": [["1", "0", "0"]],
        },
        {
            "label": "omega2",
            "entries": [
                {"i": "x", "j": "v", "coeff": "-2*a/v^3"},
                {"i": "x", "j": "a", "coeff": "2/v^2"},
                {"i": "v", "j": "a", "coeff": "-2*x/v^3"},
            ],
            "kernel": [["x", "v", "a"]],
        },
    ],
    hamiltonians=[
        {"field": "Y1", "components": ["2/v", "-4*x/v"]},
        {"field": "Y2", "components": ["a/v^2", "2 - 2*a*x/v^2"]},
        {"field": "Y3", "components": ["a^2/(2*v^3)", "2*a/v - a^2*x/v^3"]},
    ],
    structure_constants=_relations("Y", [
        ("1", "2", {"1": "1"}),
        ("1", "3", {"2": "2"}),
        ("2", "3", {"3": "1"}),
    ]),
    hamiltonian_brackets=_relations("Y", _SL2_TABLE),
    invariants=[{"label": label, "expr": src, "copies": 2} for label, src in SCHWARZIAN_SOURCES.items()],
    product_exclusions=[SCHWARZIAN_DEGENERACY],
    coefficients=["b1", "0", "1"],
    coefficient_defaults={"b1": "sin(t)"},
    x0=[0.0, 1.0, 0.0],
    x0b=[1.0, 2.0, 1.0],
    notes=["The prolonged bracket table keeps the signs of the base table."],
)


_RICCATI_PAIRS_1 = [(1, 2), (3, 4)]
_RICCATI_PAIRS_2 = list(combinations(range(1, 5), 2))

RICCATI_4 = ExampleRecord(
    id="riccati4",
    title="Four copies of the Riccati equation",
    chart=["x1", "x2", "x3", "x4"],
    domain={
        "intervals": {"x1": (-4.0, -3.0), "x2": (-2.0, -1.0), "x3": (0.0, 1.0), "x4": (2.0, 3.0)},
        "exclusions": [_differences(4)],
    },
    basis=[
        {"label": "X1", "components": ["1", "1", "1", "1"]},
        {"label": "X2", "components": ["x1", "x2", "x3", "x4"]},
        {"label": "X3", "components": ["x1^2", "x2^2", "x3^2", "x4^2"]},
    ],
    forms=[_pair_form("omega1", _RICCATI_PAIRS_1), _pair_form("omega2", _RICCATI_PAIRS_2)],
    hamiltonians=[
        {"field": f"X{n}", "components": [_pair_sum(_RICCATI_PAIRS_1, template), _pair_sum(_RICCATI_PAIRS_2, template)]}
        for n, template in ((1, _PAIR_H1), (2, _PAIR_H2), (3, _PAIR_H3))
    ],
    structure_constants=_relations("X", [
        ("1", "2", {"1": "1"}),
        ("1", "3", {"2": "2"}),
        ("2", "3", {"3": "1"}),
    ]),
    hamiltonian_brackets=_relations("X", _SL2_TABLE),
    invariants=[{"label": "k", "expr": CROSS_RATIO_SOURCE, "copies": 1}],
    coefficients=["a", "b", "c"],
    coefficient_defaults={"a": "sin(t)", "b": "cos(t)", "c": "1"},
    x0=[-1.0, -2.0, -3.0, -4.0],
    notes=["dim 4 is not a multiple of k+1 = 3; only the joint kernel condition applies."],
)


CONTROL_1 = ExampleRecord(
    id="control1",
    title="Control system on R^5 (first)",
    chart=["x1", "x2", "x3", "x4", "x5"],
    basis=[
        {"label": "X1", "components": _unit(5, 0)},
        {"label": "X2", "components": ["0", "1", "x1", "x1^2", "2*x1*x2"]},
        {"label": "X3", "components": ["0", "0", "1", "2*x1", "2*x2"]},
        {"label": "X4", "components": _unit(5, 3)},
        {"label": "X5", "components": _unit(5, 4)},
    ],
    forms=[
        {"label": "omega1", "entries": [{"i": "x1", "j": "x2", "coeff": "1"}],
         "kernel": [_unit(5, 2), _unit(5, 3), _unit(5, 4)]},
        {"label": "omega2", "entries": [{"i": "x1", "j": "x3", "coeff": "1"}],
         "kernel": [_unit(5, 1), _unit(5, 3), _unit(5, 4)]},
        {"label": "omega3", "entries": [{"i": "x1", "j": "x4", "coeff": "1"}],
         "kernel": [_unit(5, 1), _unit(5, 2), _unit(5, 4)]},
        {"label": "omega4", "entries": [{"i": "x2", "j": "x5", "coeff": "1"}, {"i": "x1", "j": "x2", "coeff": "x2^2"}],
         "kernel": [_unit(5, 2), _unit(5, 3), ["1", "0", "0", "0", "x2^2"]]},
    ],
    hamiltonians=[
        {"field": "X1", "components": ["x2", "x3", "x4", "1/3*x2^3"]},
        {"field": "X2", "components": ["-1*x1", "-1/2*x1^2", "-1/3*x1^3", "x5 - x1*x2^2"]},
        {
            "field": "X3",
            "components": ["0", "-1*x1", "-1*x1^2", "-1*x2^2"],
            "note": "iota_X3 omega2 = -dx1; printed as dx1",
        },
        {"field": "X4", "components": ["0", "0", "-1*x1", "0"]},
        {"field": "X5", "components": ["0", "0", "0", "-1*x2"]},
    ],
    structure_constants=_relations("X", [
        ("1", "2", {"3": "1"}),
        ("1", "3", {"4": "2"}),
        ("2", "3", {"5": "2"}),
    ]),
    coefficients=["b1", "b2", "0", "0", "0"],
    coefficient_defaults={"b1": "sin(t)", "b2": "cos(t)"},
    x0=[0.0, 0.0, 0.0, 0.0, 0.0],
    notes=["Corrected sign: iota_X3 omega2 = -dx1."],
)


CONTROL_2 = ExampleRecord(
    id="control2",
    title="Control system on R^5 (second)",
    chart=["x1", "x2", "x3", "x4", "x5"],
    basis=[
        {"label": "X1", "components": ["1", "0", "-1*x2", "0", "x2^2"]},
        {"label": "X2", "components": ["0", "1", "x1", "x1^2", "0"]},
        {"label": "X3", "components": ["0", "0", "1", "x1", "-1*x2"]},
        {"label": "X4", "components": _unit(5, 3)},
        {"label": "X5", "components": _unit(5, 4)},
    ],
    forms=[
        {"label": "omega1", "entries": [{"i": "x1", "j": "x2", "coeff": "1"}],
         "kernel": [_unit(5, 2), _unit(5, 3), _unit(5, 4)]},
        {"label": "omega2", "entries": [{"i": "x2", "j": "x5", "coeff": "1"}],
         "kernel": [_unit(5, 0), _unit(5, 2), _unit(5, 3)]},
        {"label": "omega3", "entries": [{"i": "x1", "j": "x4", "coeff": "1"}],
         "kernel": [_unit(5, 1), _unit(5, 2), _unit(5, 4)]},
        {"label": "omega4", "entries": [{"i": "x1", "j": "x3", "coeff": "1"}, {"i": "x1", "j": "x2", "coeff": "x1"}],
         "kernel": [_unit(5, 3), _unit(5, 4), ["0", "1", "-1*x1", "0", "0"]]},
    ],
    hamiltonians=[
        {"field": "X1", "components": ["x2", "-1/3*x2^3", "x4", "x1*x2 + x3"]},
        {"field": "X2", "components": ["-1*x1", "x5", "-1/3*x1^3", "-1*x1^2"]},
        {"field": "X3", "components": ["0", "1/2*x2^2", "-1/2*x1^2", "-1*x1"]},
        {"field": "X4", "components": ["0", "0", "-1*x1", "0"]},
        {"field": "X5", "components": ["0", "-1*x2", "0", "0"]},
    ],
    structure_constants=_relations("X", [
        ("1", "2", {"3": "2"}),
        ("1", "3", {"4": "1"}),
        ("2", "3", {"5": "-1"}),
    ]),
    coefficients=["b1", "b2", "0", "0", "0"],
    coefficient_defaults={"b1": "sin(t)", "b2": "cos(t)"},
    x0=[0.0, 0.0, 0.0, 0.0, 0.0],
)


DIFFUSION_RS = ExampleRecord(
    id="diffusion-rs",
    title="Lie system attached to a diffusion equation",
    chart=["u", "v", "w"],
    domain={"intervals": {"v": (0.5, 2.0)}, "exclusions": ["v"]},
    basis=[
        {"label": "X1", "components": ["4*u^2", "4*u*v", "v^2"]},
        {"label": "X2", "components": ["1", "0", "0"]},
        {"label": "X3", "components": ["2*u", "v", "0"]},
    ],
    forms=[
        {
            "label": "omega_RS1",
            "entries": [
                {"i": "u", "j": "v", "coeff": "4*w^2/v^3"},
                {"i": "u", "j": "w", "coeff": "-4*w/v^2"},
                {"i": "v", "j": "w", "coeff": "1/v"},
            ],
            "kernel": [["v^2", "4*w*v", "4*w^2"]],
        },
        {
            "label": "omega_RS2",
            "entries": [
                {"i": "u", "j": "v", "coeff": "8*w/v^3"},
                {"i": "u", "j": "w", "coeff": "-4/v^2"},
            ],
            "kernel": [["0", "v", "2*w"]],
        },
    ],
    hamiltonians=[
        {"field": "X1", "components": ["4*u*w - 8*u^2*w^2/v^2 - 1/2*v^2", "4*u - 16*u^2*w/v^2"]},
        {"field": "X2", "components": ["-2*w^2/v^2", "-4*w/v^2"]},
        {"field": "X3", "components": ["w - 4*u*w^2/v^2", "-8*u*w/v^2"]},
    ],
    structure_constants=_relations("X", [
        ("1", "2", {"3": "-4"}),
        ("1", "3", {"1": "-2"}),
        ("2", "3", {"2": "2"}),
    ]),
    coefficients=["a", "-1*b", "c"],
    coefficient_defaults={"a": "sin(t)", "b": "cos(t)", "c": "1"},
    x0=[0.5, 1.0, 0.5],
    notes=["h.g for h of X3 and g of X2 is not Omega-Hamiltonian."],
)


_LV_FORMS = [
    ("omega1", [(1, 2), (3, 4)], 5),
    ("omega2", [(1, 2), (3, 5)], 4),
    ("omega3", [(1, 2), (4, 5)], 3),
    ("omega4", [(1, 3), (4, 5)], 2),
]

LOTKA_VOLTERRA = ExampleRecord(
    id="lotka-volterra",
    title="Five copies of a Lotka-Volterra type equation",
    chart=["x1", "x2", "x3", "x4", "x5"],
    domain={
        "intervals": {f"x{i}": (i - 0.5, float(i)) for i in range(1, 6)},
        "exclusions": [_differences(5)],
    },
    basis=[
        {"label": "X1", "components": [f"x{i}" for i in range(1, 6)]},
        {"label": "X2", "components": [f"x{i}^2" for i in range(1, 6)]},
    ],
    forms=[_pair_form(label, pairs, [_unit(5, free - 1)]) for label, pairs, free in _LV_FORMS],
    hamiltonians=[
        {"field": "X1", "components": [_pair_sum(pairs, _PAIR_H2) for _, pairs, _ in _LV_FORMS]},
        {"field": "X2", "components": [_pair_sum(pairs, _PAIR_H3) for _, pairs, _ in _LV_FORMS]},
    ],
    structure_constants=_relations("X", [("1", "2", {"2": "1"})]),
    coefficients=["a", "b"],
    coefficient_defaults={"a": "sin(t)", "b": "-1/10*cos(t)"},
    x0=[1.0, 2.0, 3.0, 4.0, 5.0],
)


EXAMPLES: Tuple[ExampleRecord, ...] = (
    SCHWARZ_3KS,
    RICCATI_4,
    CONTROL_1,
    CONTROL_2,
    DIFFUSION_RS,
    LOTKA_VOLTERRA,
)
