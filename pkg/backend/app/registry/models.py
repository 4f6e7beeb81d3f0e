"""
Example records: expression strings validated and compiled into geometric objects
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, PrivateAttr, model_validator

from app.core.exceptions import PreconditionFailedException, ToolkitException, UsageException
from app.expr import DomainBox, Expr, parse, substitute
from app.geom import Chart, TwoForm, VectorField
from app.ksymp import OmegaHamiltonian
from app.motion import LabeledExpr, TDependentField
from app.prolong import ProductChart, product_chart

logger = logging.getLogger(__name__)

Table = Dict[Tuple[int, int], Tuple[Fraction, ...]]


class DomainRecord(BaseModel):
    intervals: Dict[str, Tuple[float, float]] = Field(default_factory=dict)
    exclusions: List[str] = Field(default_factory=list)


class FieldRecord(BaseModel):
    label: str
    components: List[str]


class FormEntryRecord(BaseModel):
    """One coefficient of dx^i ^ dx^j; i and j are symbols or 0-based indices"""

    i: Union[int, str]
    j: Union[int, str]
    coeff: str


class FormRecord(BaseModel):
    label: str
    entries: List[FormEntryRecord] = Field(default_factory=list)
    kernel: List[List[str]] = Field(default_factory=list)


class HamiltonianRecord(BaseModel):
    """Omega-Hamiltonian function of a basis field, one component per form"""

    field: str
    components: List[str]
    note: str = ""


class BracketRecord(BaseModel):
    """[left, right] (or {h^left, h^right}) as label -> rational coefficient"""

    left: str
    right: str
    result: Dict[str, str] = Field(default_factory=dict)


class InvariantRecord(BaseModel):
    label: str
    expr: str
    copies: int = 1


class ExampleRecord(BaseModel):
    """A Lie system with a compatible k-symplectic structure"""

    id: str
    title: str = ""
    chart: List[str]
    domain: DomainRecord = Field(default_factory=DomainRecord)
    basis: List[FieldRecord] = Field(default_factory=list)
    forms: List[FormRecord]
    hamiltonians: List[HamiltonianRecord] = Field(default_factory=list)
    structure_constants: List[BracketRecord] = Field(default_factory=list)
    hamiltonian_brackets: List[BracketRecord] = Field(default_factory=list)
    invariants: List[InvariantRecord] = Field(default_factory=list)
    product_exclusions: List[str] = Field(default_factory=list)
    coefficients: List[str] = Field(default_factory=list)
    coefficient_defaults: Dict[str, str] = Field(default_factory=dict)
    x0: List[float] = Field(default_factory=list)
    x0b: List[float] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    _system: Any = PrivateAttr(default=None)

    @model_validator(mode="after")
    def build_system(self) -> "ExampleRecord":
        try:
            self._system = ExampleSystem.from_record(self)
        except ToolkitException as e:
            raise ValueError(f"{self.id}: {e.message}") from e
        return self

    @property
    def system(self) -> "ExampleSystem":
        system: ExampleSystem = self._system
        return system


def _dense(relations: Sequence[BracketRecord], labels: Sequence[str], what: str) -> Table:
    r = len(labels)
    index = {label: i for i, label in enumerate(labels)}
    zero = tuple(Fraction(0) for _ in range(r))
    table: Table = {(a, b): zero for a in range(r) for b in range(r)}
    for relation in relations:
        if relation.left not in index or relation.right not in index:
            raise PreconditionFailedException(f"{what} relation [{relation.left},{relation.right}] names an unknown field")
        row = [Fraction(0)] * r
        for label, coefficient in relation.result.items():
            if label not in index:
                raise PreconditionFailedException(f"{what} relation names unknown field {label}")
            row[index[label]] = Fraction(coefficient)
        a, b = index[relation.left], index[relation.right]
        table[(a, b)] = tuple(row)
        table[(b, a)] = tuple(-c for c in row)
    return table


@dataclass(frozen=True)
class ExampleSystem:
    """The compiled objects of an example record"""

    record: ExampleRecord
    chart: Chart
    basis: Tuple[VectorField, ...]
    forms: Tuple[TwoForm, ...]
    kernels: Mapping[str, Tuple[VectorField, ...]]
    hamiltonians: Mapping[str, OmegaHamiltonian]
    expected_constants: Table
    hamiltonian_table: Table
    coefficient_sources: Tuple[Expr, ...] = field(default=())

    @classmethod
    def from_record(cls, record: ExampleRecord) -> "ExampleSystem":
        symbols = tuple(record.chart)
        domain = DomainBox(
            intervals={name: tuple(bounds) for name, bounds in record.domain.intervals.items()},
            exclusions=tuple(parse(src, symbols) for src in record.domain.exclusions),
        )
        chart = Chart(symbols, domain)
        basis = tuple(VectorField.from_strings(chart, f.components, f.label) for f in record.basis)
        labels = [X.label for X in basis]
        if len(set(labels)) != len(labels):
            raise PreconditionFailedException("Basis labels must be distinct")

        forms = []
        kernels = {}
        for form in record.forms:
            entries = {(e.i, e.j): e.coeff for e in form.entries}
            forms.append(TwoForm.from_strings(chart, entries, form.label))
            kernels[form.label] = tuple(
                VectorField.from_strings(chart, components, f"Z{n + 1}({form.label})")
                for n, components in enumerate(form.kernel)
            )

        by_label = {X.label: X for X in basis}
        hamiltonians = {}
        for h in record.hamiltonians:
            if h.field not in by_label:
                raise PreconditionFailedException(f"Hamiltonian refers to unknown field {h.field}")
            if len(h.components) != len(forms):
                raise PreconditionFailedException(f"Hamiltonian of {h.field} needs {len(forms)} components")
            hamiltonians[h.field] = OmegaHamiltonian.from_strings(
                chart, h.components, by_label[h.field], f"h({h.field})"
            )

        for invariant in record.invariants:
            if invariant.copies < 1:
                raise PreconditionFailedException(f"Invariant {invariant.label} needs copies >= 1")

        if record.coefficients and len(record.coefficients) != len(basis):
            raise PreconditionFailedException("One coefficient per basis field is required")
        names = tuple(record.coefficient_defaults)
        sources = tuple(parse(src, (), names) for src in record.coefficients)
        for src in record.coefficient_defaults.values():
            parse(src)

        system = cls(
            record=record,
            chart=chart,
            basis=basis,
            forms=tuple(forms),
            kernels=kernels,
            hamiltonians=hamiltonians,
            expected_constants=_dense(record.structure_constants, labels, "Structure"),
            hamiltonian_table=_dense(record.hamiltonian_brackets, labels, "Bracket table"),
            coefficient_sources=sources,
        )
        for invariant in record.invariants:
            system.invariant(invariant.label)
        if record.x0 and len(record.x0) != chart.dimension:
            raise PreconditionFailedException("Default x0 has the wrong dimension")
        return system

    @property
    def id(self) -> str:
        return self.record.id

    @property
    def k(self) -> int:
        return len(self.forms)

    @property
    def labels(self) -> List[str]:
        return [X.label for X in self.basis]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PreconditionFailedException(f"{self.id} has no basis field {label}") from None

    def field(self, label: str) -> VectorField:
        return self.basis[self.index(label)]

    def form(self, label: str) -> TwoForm:
        for omega in self.forms:
            if omega.label == label:
                return omega
        raise PreconditionFailedException(f"{self.id} has no form {label}")

    def hamiltonian(self, label: str) -> OmegaHamiltonian:
        if label not in self.hamiltonians:
            raise PreconditionFailedException(f"{self.id} has no Hamiltonian for {label}")
        return self.hamiltonians[label]

    def product(self, m: int) -> ProductChart:
        extra = self.record.product_exclusions if m >= 2 else ()
        return product_chart(self.chart, m, extra)

    def invariant(self, label: str, product: Optional[ProductChart] = None) -> LabeledExpr:
        for invariant in self.record.invariants:
            if invariant.label == label:
                if invariant.copies == 1:
                    return LabeledExpr(label, self.chart.parse(invariant.expr))
                product = product if product is not None and product.m == invariant.copies else self.product(invariant.copies)
                return LabeledExpr(label, product.parse(invariant.expr))
        raise PreconditionFailedException(f"{self.id} has no invariant {label}")

    def invariants_for(self, copies: int) -> List[LabeledExpr]:
        """Invariants defined on exactly ``copies`` copies of the chart"""
        product = self.product(copies) if copies > 1 else None
        return [
            self.invariant(inv.label, product)
            for inv in self.record.invariants
            if inv.copies == copies
        ]

    def coefficients(self, overrides: Optional[Mapping[str, str]] = None) -> Tuple[Expr, ...]:
        """The t-coefficients b_alpha(t) with defaults updated by ``overrides``"""
        overrides = dict(overrides or {})
        unknown = set(overrides) - set(self.record.coefficient_defaults)
        if unknown:
            raise UsageException(
                f"Unknown coefficient {sorted(unknown)[0]} for {self.id}; "
                f"expected one of {sorted(self.record.coefficient_defaults)}"
            )
        values = {**self.record.coefficient_defaults, **overrides}
        bindings = {name: parse(src) for name, src in values.items()}
        return tuple(substitute(b, bindings) for b in self.coefficient_sources)

    def t_dependent_field(self, overrides: Optional[Mapping[str, str]] = None, m: int = 1) -> TDependentField:
        if not self.basis or not self.coefficient_sources:
            raise PreconditionFailedException(f"{self.id} defines no t-dependent system")
        F = TDependentField(self.basis, self.coefficients(overrides))
        return F.prolonged(m, self.product(m)) if m > 1 else F

