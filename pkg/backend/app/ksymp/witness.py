"""
Witness that products of Omega-Hamiltonian functions need not be Omega-Hamiltonian

d(h_i g_i) = iota_(g_i X_h + h_i X_g) omega_i, so h.g is Omega-Hamiltonian
only if the fields g_i X_h + h_i X_g agree for every i.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from app.core.exceptions import ComponentCountMismatchException, PreconditionFailedException
from app.expr import ZeroTest
from app.geom import Chart, VectorField, require_same_chart

from .hamiltonian import OmegaHamiltonian

logger = logging.getLogger(__name__)

WITNESS_EXAMPLE = "diffusion-rs"


@dataclass(frozen=True)
class ProductWitness:
    """Candidate fields g_i X_h + h_i X_g and where two of them differ"""

    fields: Tuple[VectorField, ...]
    differ: bool
    pair: Optional[Tuple[int, int]] = None
    point: Optional[Dict[str, float]] = None
    difference: Optional[List[float]] = None

    def summary(self) -> str:
        if not self.differ:
            return "fields coincide"
        i, j = self.pair or (0, 1)
        return f"fields differ: V{i + 1} - V{j + 1} = {self.difference} at {self.point}"


def _default_data() -> Tuple[OmegaHamiltonian, OmegaHamiltonian]:
    from app.registry import get_example

    example = get_example(WITNESS_EXAMPLE)
    return example.hamiltonian("X3"), example.hamiltonian("X2")


def _completed(
    point: Mapping[str, float], chart: Chart, tester: ZeroTest, attempts: int = 100
) -> Optional[Dict[str, float]]:
    """Fill the symbols a component ignores so the whole point stays in the domain"""
    for _ in range(attempts):
        filled = {**chart.domain.sample(tester.rng, chart.symbols), **point}
        values = {name: float(filled[name]) for name in chart.symbols}
        if chart.domain.admits(filled):
            return values
    logger.debug("No admissible completion of %s", point)
    return None


def product_not_hamiltonian_witness(
    h: Optional[OmegaHamiltonian] = None,
    g: Optional[OmegaHamiltonian] = None,
    X_h: Optional[VectorField] = None,
    X_g: Optional[VectorField] = None,
    tester: Optional[ZeroTest] = None,
) -> ProductWitness:
    """Compare the fields g_i X_h + h_i X_g across i.

    Args:
        h: First function; h of the diffusion example (field X3) by default.
        g: Second function; g of the diffusion example (field X2) by default.
        X_h: Field of h; taken from h when omitted.
        X_g: Field of g; taken from g when omitted.
        tester: Zero test supplying the certificate point.

    Returns:
        The candidate fields and, when two differ, a certificate point with
        the difference vector there.
    """
    tester = tester or ZeroTest()
    if h is None or g is None:
        default_h, default_g = _default_data()
        h = h or default_h
        g = g or default_g
    X_h = X_h or h.field
    X_g = X_g or g.field
    if X_h is None or X_g is None:
        raise PreconditionFailedException("Both Omega-Hamiltonian fields are required")
    if h.k != g.k:
        raise ComponentCountMismatchException(h.k, g.k)
    chart = require_same_chart(X_h, X_g)

    fields = tuple(
        (X_h.scaled(g_i) + X_g.scaled(h_i)).relabeled(f"V{i + 1}")
        for i, (h_i, g_i) in enumerate(zip(h.components, g.components))
    )
    for j in range(1, len(fields)):
        difference = fields[0] - fields[j]
        for component in difference.components:
            point = tester.witness(component, chart.domain)
            values = _completed(point, chart, tester) if point is not None else None
            if values is not None:
                vector = [float(v) for v in difference.at(values)]
                logger.info("Product witness: V1 and V%d differ at %s", j + 1, values)
                return ProductWitness(fields, True, (0, j), values, vector)
    return ProductWitness(fields, False)
