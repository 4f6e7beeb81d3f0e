"""
Coordinate charts
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence, Tuple

from app.core.exceptions import PreconditionFailedException, UnknownSymbolException
from app.expr import TIME_SYMBOL, DomainBox, Expr, parse

_IDENT = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Chart:
    """A single global coordinate patch with its sampling domain"""

    symbols: Tuple[str, ...]
    domain: DomainBox = field(default_factory=DomainBox)

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise PreconditionFailedException("A chart needs at least one coordinate")
        if len(set(self.symbols)) != len(self.symbols):
            raise PreconditionFailedException(f"Duplicate chart symbols in {self.symbols}")
        for name in self.symbols:
            if name == TIME_SYMBOL:
                raise PreconditionFailedException("The time symbol t cannot be a coordinate")
            if not _IDENT.match(name):
                raise PreconditionFailedException(f"Invalid coordinate name {name!r}")

    @property
    def dimension(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise UnknownSymbolException(symbol) from None

    def same_as(self, other: "Chart") -> bool:
        return self.symbols == other.symbols

    def parse(self, src: str, params: Iterable[str] = ()) -> Expr:
        return parse(src, self.symbols, params)

    def point(self, values: Sequence[float]) -> Dict[str, float]:
        if len(values) != self.dimension:
            raise PreconditionFailedException(
                f"Point has {len(values)} coordinates, chart has {self.dimension}"
            )
        return {name: float(value) for name, value in zip(self.symbols, values)}

    def with_domain(self, domain: DomainBox) -> "Chart":
        return Chart(self.symbols, domain)
