"""Admissible rankings on derivatives; leaders, ranks, rank-set order.

Every ranking is realized through a sort key so comparisons are total by
construction.  The orderly tie-break is: total operator order, then
indeterminate index, then the reversed multi-index; elimination rankings
compare indeterminate blocks first and are orderly inside a block;
weighted rankings compare integer row functionals lexicographically and
fall back to the orderly key for totality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .context import Context, Derivative, RittkitError
from .diffpoly import DiffPoly

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class Ranking:
    ctx: Context
    kind: str = "orderly"  # orderly | elimination | weighted
    elim_order: tuple[int, ...] = ()  # indeterminate indices, highest block first
    matrix: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "orderly":
            return
        if self.kind == "elimination":
            if sorted(self.elim_order) != list(range(self.ctx.n)):
                raise RittkitError("elimination order must be a permutation of the indeterminates")
            return
        if self.kind == "weighted":
            width = self.ctx.m + self.ctx.n
            if not self.matrix or any(len(row) != width for row in self.matrix):
                raise RittkitError(f"weight rows must have length {width}")
            for k in range(self.ctx.m):
                col = [row[k] for row in self.matrix]
                lead = next((c for c in col if c != 0), 0)
                if lead < 0:
                    raise RittkitError("first nonzero weight of each derivation column must be positive")
            return
        raise RittkitError(f"unknown ranking kind {self.kind!r}")

    def _orderly_key(self, d: Derivative) -> tuple:
        return (d.order(), d.indet, tuple(reversed(d.op)))

    def key(self, d: Derivative) -> tuple:
        """Ascending sort key realizing the ranking."""
        if self.kind == "orderly":
            return self._orderly_key(d)
        if self.kind == "elimination":
            block = -self.elim_order.index(d.indet)
            return (block, d.order(), tuple(reversed(d.op)))
        vec = list(d.op) + [1 if j == d.indet else 0 for j in range(self.ctx.n)]
        weights = tuple(sum(r * v for r, v in zip(row, vec)) for row in self.matrix)
        return (weights, self._orderly_key(d))

    @staticmethod
    def from_config(config: dict, ctx: Context) -> "Ranking":
        kind = config.get("type")
        if kind == "orderly":
            return Ranking(ctx, "orderly")
        if kind == "elimination":
            names = config.get("order", [])
            return Ranking(ctx, "elimination", elim_order=tuple(ctx.indeterminate_index(n) for n in names))
        if kind == "weighted":
            rows = config.get("matrix", [])
            return Ranking(ctx, "weighted", matrix=tuple(tuple(int(c) for c in row) for row in rows))
        raise RittkitError(f"unknown ranking type {kind!r}")

    def to_config(self) -> dict:
        if self.kind == "orderly":
            return {"type": "orderly"}
        if self.kind == "elimination":
            return {"type": "elimination", "order": [self.ctx.indeterminates[i] for i in self.elim_order]}
        return {"type": "weighted", "matrix": [list(row) for row in self.matrix]}


def cmp_deriv(u: Derivative, v: Derivative, ranking: Ranking) -> int:
    ku, kv = ranking.key(u), ranking.key(v)
    return LESS if ku < kv else GREATER if ku > kv else EQUAL


@dataclass(frozen=True)
class Rank:
    leader: Derivative
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise RittkitError("rank degree must be positive")


def rank_key(r: Rank, ranking: Ranking) -> tuple:
    return (ranking.key(r.leader), r.degree)


def cmp_ranks(a: Rank, b: Rank, ranking: Ranking) -> int:
    ka, kb = rank_key(a, ranking), rank_key(b, ranking)
    return LESS if ka < kb else GREATER if ka > kb else EQUAL


def cmp_rank_sets(a: Iterable[Rank], b: Iterable[Rank], ranking: Ranking) -> int:
    """Compare finite rank sets: the set owning the minimal element of the
    symmetric difference is the smaller one."""
    sa, sb = set(a), set(b)
    if sa == sb:
        return EQUAL
    diff = sa.symmetric_difference(sb)
    least = min(diff, key=lambda r: rank_key(r, ranking))
    return LESS if least in sa else GREATER


@dataclass(frozen=True)
class LeadData:
    leader: Derivative
    rank: Rank
    initial: DiffPoly
    separant: DiffPoly


def lead_data(f: DiffPoly, ranking: Ranking) -> LeadData:
    """Leader, rank, initial and separant of a nonconstant polynomial."""
    if f.is_constant():
        raise RittkitError("constant polynomial has no leader")
    leader = max(f.derivatives(), key=ranking.key)
    degree = f.degree_in(leader)
    initial = f.coeff_of_power(leader, degree)
    separant = f.partial(leader)
    return LeadData(leader, Rank(leader, degree), initial, separant)
