"""
Finite-dimensional Lie algebras of vector fields with exact structure constants
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from app.core.exceptions import ComponentCountMismatchException, PreconditionFailedException
from app.geom import Chart, VectorField
from app.geom.serialization import chart_from_dict, chart_to_dict, field_from_dict, field_to_dict

Constants = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


def format_expansion(coefficients: Sequence[Fraction], labels: Sequence[str]) -> str:
    """Render sum_gamma c^gamma X_gamma, e.g. "X1 - 2*X3" """
    parts: List[str] = []
    for c, label in zip(coefficients, labels):
        if c == 0:
            continue
        magnitude = abs(c)
        term = label if magnitude == 1 else f"{magnitude}*{label}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class LieAlgebraModel:
    """Basis X_1..X_r with [X_alpha, X_beta] = sum_gamma c^gamma_{alpha beta} X_gamma.

    ``constants[alpha][beta][gamma]`` holds c^gamma_{alpha beta}.
    ``certificate`` records, per pair alpha < beta, whether the residual
    field passed the zero test.
    """

    basis: Tuple[VectorField, ...]
    constants: Constants
    certificate: Mapping[Tuple[int, int], bool]

    def __post_init__(self) -> None:
        r = len(self.basis)
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(self.constants) != r or any(len(row) != r for row in self.constants):
            raise ComponentCountMismatchException(r, len(self.constants))
        for alpha, beta in product(range(r), repeat=2):
            if len(self.constants[alpha][beta]) != r:
                raise ComponentCountMismatchException(r, len(self.constants[alpha][beta]))
            if any(a != -b for a, b in zip(self.constants[alpha][beta], self.constants[beta][alpha])):
                raise PreconditionFailedException(f"Constants for ({alpha}, {beta}) are not antisymmetric")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def chart(self) -> Chart:
        return self.basis[0].chart

    @property
    def labels(self) -> List[str]:
        return [X.label or f"X{i + 1}" for i, X in enumerate(self.basis)]

    @property
    def certified(self) -> bool:
        return all(self.certificate.values())

    def c(self, gamma: int, alpha: int, beta: int) -> Fraction:
        return self.constants[alpha][beta][gamma]

    def expansion(self, alpha: int, beta: int) -> Tuple[Fraction, ...]:
        return self.constants[alpha][beta]

    def jacobi_defect(self) -> Dict[Tuple[int, int, int, int], Fraction]:
        """Nonzero Jacobi sums on the constants, keyed by (alpha, beta, delta, mu)"""
        r = self.dimension
        defects = {}
        for alpha, beta, delta, mu in product(range(r), repeat=4):
            total = sum(
                (
                    self.c(g, alpha, beta) * self.c(mu, g, delta)
                    + self.c(g, beta, delta) * self.c(mu, g, alpha)
                    + self.c(g, delta, alpha) * self.c(mu, g, beta)
                    for g in range(r)
                ),
                Fraction(0),
            )
            if total != 0:
                defects[(alpha, beta, delta, mu)] = total
        return defects

    def satisfies_jacobi(self) -> bool:
        return not self.jacobi_defect()

    def table(self) -> List[Tuple[str, str, str]]:
        """(left, right, expansion) for every pair alpha < beta"""
        labels = self.labels
        return [
            (labels[a], labels[b], format_expansion(self.expansion(a, b), labels))
            for a in range(self.dimension)
            for b in range(a + 1, self.dimension)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            **chart_to_dict(self.chart),
            "basis": [field_to_dict(X) for X in self.basis],
            "constants": [[[str(c) for c in row] for row in block] for block in self.constants],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LieAlgebraModel":
        chart = chart_from_dict(dict(data))
        basis = tuple(field_from_dict(chart, entry) for entry in data["basis"])
        constants = tuple(
            tuple(tuple(Fraction(c) for c in row) for row in block) for block in data["constants"]
        )
        r = len(basis)
        certificate = {(a, b): True for a in range(r) for b in range(a + 1, r)}
        return cls(basis, constants, certificate)
