"""
Diagonal prolongation to m-fold product charts

Copy a of a coordinate x is named ``x_a``; product coordinates are ordered
copy by copy.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from app.core.exceptions import PreconditionFailedException
from app.expr import TIME_SYMBOL, Add, DomainBox, Expr, rename, simplify
from app.geom import Chart, TwoForm, VectorField

logger = logging.getLogger(__name__)


def copy_name(symbol: str, copy: int) -> str:
    return f"{symbol}_{copy}"


@dataclass(frozen=True)
class ProductChart:
    """The chart of N^m built from a base chart"""

    base: Chart
    m: int
    chart: Chart

    @property
    def symbols(self) -> Tuple[str, ...]:
        return self.chart.symbols

    @property
    def dimension(self) -> int:
        return self.chart.dimension

    def renaming(self, copy: int) -> Dict[str, str]:
        return {name: copy_name(name, copy) for name in self.base.symbols}

    def offset(self, copy: int) -> int:
        return (copy - 1) * self.base.dimension

    def parse(self, src: str) -> Expr:
        return self.chart.parse(src)


def product_chart(base: Chart, m: int, cross_exclusions: Iterable[str] = ()) -> ProductChart:
    """Build the product chart of ``m`` copies of ``base``.

    Args:
        base: Base chart.
        m: Number of copies, at least 1.
        cross_exclusions: Extra exclusion expressions over product symbols.
    """
    if m < 1:
        raise PreconditionFailedException("The copy count must be at least 1")
    symbols = [copy_name(name, a) for a in range(1, m + 1) for name in base.symbols]
    if len(set(symbols)) != len(symbols) or set(symbols) & set(base.symbols):
        raise PreconditionFailedException(f"Copy names collide for chart {base.symbols}")
    if TIME_SYMBOL in symbols:
        raise PreconditionFailedException("Copy names collide with the time symbol")

    domain = DomainBox()
    for a in range(1, m + 1):
        domain = domain.merged(base.domain.renamed({name: copy_name(name, a) for name in base.symbols}))
    chart = Chart(tuple(symbols), domain)
    extra = tuple(chart.parse(src) for src in cross_exclusions)
    if extra:
        chart = chart.with_domain(domain.with_exclusions(extra))
    return ProductChart(base, m, chart)


def _copies(f: Expr, m: int) -> Iterable[Expr]:
    names = sorted(f.free_symbols - {TIME_SYMBOL})
    for a in range(1, m + 1):
        yield rename(f, {name: copy_name(name, a) for name in names})


def prolong_function(f: Expr, m: int) -> Expr:
    """f(x_(1)) + ... + f(x_(m))"""
    if m < 1:
        raise PreconditionFailedException("The copy count must be at least 1")
    if not f.free_symbols - {TIME_SYMBOL}:
        # A t-only function is summed m times
        return simplify(Add(tuple(f for _ in range(m))))
    return simplify(Add(tuple(_copies(f, m))))


def prolong_field(X: VectorField, m: int, product: Optional[ProductChart] = None) -> VectorField:
    product = product or product_chart(X.chart, m)
    components = []
    for a in range(1, m + 1):
        mapping = product.renaming(a)
        components.extend(simplify(rename(c, mapping)) for c in X.components)
    label = f"{X.label}^[{m}]" if X.label else ""
    return VectorField(product.chart, tuple(components), label)


def prolong_two_form(omega: TwoForm, m: int, product: Optional[ProductChart] = None) -> TwoForm:
    """Block-diagonal sum of the per-copy coefficient tables"""
    product = product or product_chart(omega.chart, m)
    entries: Dict[Tuple[int, int], Expr] = {}
    for a in range(1, m + 1):
        mapping = product.renaming(a)
        offset = product.offset(a)
        for (l, k), coeff in omega.entries.items():
            entries[(offset + l, offset + k)] = simplify(rename(coeff, mapping))
    label = f"{omega.label}^[{m}]" if omega.label else ""
    return TwoForm(product.chart, entries, label)

