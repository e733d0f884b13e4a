"""Derivation/indeterminate declarations and derivative operators."""
from __future__ import annotations

from dataclasses import dataclass


class RittkitError(Exception):
    """Base class for all library errors."""


@dataclass(frozen=True)
class Context:
    """Fixed signature of the differential polynomial ring.

    ``derivations`` lists the pairwise-commuting derivation names,
    ``indeterminates`` the differential indeterminate names.  Coefficients
    are always rational numbers.
    """

    derivations: tuple[str, ...]
    indeterminates: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.derivations or not self.indeterminates:
            raise RittkitError("context needs at least one derivation and one indeterminate")
        names = list(self.derivations) + list(self.indeterminates)
        if len(set(names)) != len(names):
            raise RittkitError("derivation and indeterminate names must be pairwise distinct")
        for name in names:
            if not name.isidentifier():
                raise RittkitError(f"invalid name: {name!r}")

    @property
    def m(self) -> int:
        return len(self.derivations)

    @property
    def n(self) -> int:
        return len(self.indeterminates)

    def derivation_index(self, name: str) -> int:
        try:
            return self.derivations.index(name)
        except ValueError:
            raise RittkitError(f"undeclared derivation: {name!r}") from None

    def indeterminate_index(self, name: str) -> int:
        try:
            return self.indeterminates.index(name)
        except ValueError:
            raise RittkitError(f"undeclared indeterminate: {name!r}") from None


@dataclass(frozen=True)
class Derivative:
    """A derivative theta(y_j) where theta is a monomial in the derivations.

    ``op`` is the multi-index of the operator (one exponent per derivation),
    ``indet`` the index of the indeterminate it acts on.
    """

    indet: int
    op: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.indet < 0 or any(e < 0 for e in self.op):
            raise RittkitError("derivative indices must be nonnegative")

    def order(self) -> int:
        return sum(self.op)

    def differentiate(self, k: int) -> "Derivative":
        op = list(self.op)
        op[k] += 1
        return Derivative(self.indet, tuple(op))

    def apply(self, e: tuple[int, ...]) -> "Derivative":
        return Derivative(self.indet, tuple(a + b for a, b in zip(self.op, e)))

    def is_proper_derivative_of(self, other: "Derivative") -> bool:
        """True iff self = theta(other) for a nontrivial operator theta."""
        return (
            self.indet == other.indet
            and self != other
            and all(a >= b for a, b in zip(self.op, other.op))
        )

    def operator_from(self, other: "Derivative") -> tuple[int, ...] | None:
        """Multi-index theta with self = theta(other), if one exists."""
        if self.indet != other.indet:
            return None
        diff = tuple(a - b for a, b in zip(self.op, other.op))
        if any(e < 0 for e in diff):
            return None
        return diff

    def struct_key(self) -> tuple:
        """Context-only sort key (total order, indeterminate, multi-index)."""
        return (self.order(), self.indet, self.op)


def format_derivative(d: Derivative, ctx: Context) -> str:
    """Render a derivative; primes when there is a single derivation."""
    name = ctx.indeterminates[d.indet]
    total = d.order()
    if total == 0:
        return name
    if ctx.m == 1:
        return name + "'" * total
    parts = []
    for k, e in enumerate(d.op):
        parts.extend([ctx.derivations[k]] * e)
    return f"{name}_[{','.join(parts)}]"
