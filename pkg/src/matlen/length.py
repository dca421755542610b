"""Length of a generating set: level-by-level span growth of words.

L_i is the linear span of all words of length <= i over the generators,
with the identity counted as the empty word, so dim L_0 = 1. The length
is the first level at which the span fills all n^2 dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, DimensionMismatch, EmptySet, FieldMismatch
from .linalg import Matrix, PrimeField, SpanBasis, mat_mul

BRUTE_FORCE_WORD_GUARD = 10**6


@dataclass(frozen=True)
class GeneratingSet:
    """A nonempty list of square matrices over a common prime field."""

    field: PrimeField
    n: int
    gens: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.gens:
            raise EmptySet("generating set must contain at least one matrix")
        for g in self.gens:
            if g.field != self.field:
                raise FieldMismatch(f"generator over F_{g.field.p}, set over F_{self.field.p}")
            if g.n != self.n:
                raise DimensionMismatch(f"generator of order {g.n} in a set of order {self.n}")

    @classmethod
    def of(cls, gens: list[Matrix] | tuple[Matrix, ...]) -> GeneratingSet:
        if not gens:
            raise EmptySet("generating set must contain at least one matrix")
        return cls(field=gens[0].field, n=gens[0].n, gens=tuple(gens))


@dataclass(frozen=True)
class LengthReport:
    """Dimension-growth trace dims[i] = dim L_i, plus the generating verdict.

    length is present iff the set generates, and then dims[length] == n^2
    while dims[length-1] < n^2. Otherwise the trace ends on a stalled level
    with dims[-1] == dims[-2].
    """

    n: int
    dims: tuple[int, ...]
    length: int | None
    generated_dim: int
    is_generating: bool


def compute_length(s: GeneratingSet, max_levels: int | None = None) -> LengthReport:
    """Frontier-pruned computation of the dimension trace and length.

    Level 0 seeds the span with the identity. Each next level multiplies
    every generator onto the words of the previous level that grew the span;
    candidates that grow it again form the next frontier. Left products
    suffice because every word of length i+1 factors as g * w with w of
    length i. Terminates within n^2 levels: the dimension strictly increases
    until the final level.
    """
    field, n = s.field, s.n
    full = n * n
    cap = full if max_levels is None else max_levels
    basis = SpanBasis(field, full)
    identity = Matrix.identity(field, n)
    basis.insert(identity.vec())
    dims = [basis.dim()]
    frontier = [identity]
    while dims[-1] < full:
        if len(dims) - 1 >= cap:
            raise BudgetExceeded(f"span still growing after the level cap {cap}")
        new_frontier: list[Matrix] = []
        seen: set[bytes] = set()
        for g in s.gens:
            for w in frontier:
                cand = mat_mul(g, w)
                key = cand.entries.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                if basis.insert(cand.vec()):
                    new_frontier.append(cand)
        dims.append(basis.dim())
        frontier = new_frontier
        if not new_frontier:
            break
    generated_dim = dims[-1]
    generating = generated_dim == full
    return LengthReport(
        n=n,
        dims=tuple(dims),
        length=len(dims) - 1 if generating else None,
        generated_dim=generated_dim,
        is_generating=generating,
    )


def is_generating(s: GeneratingSet) -> bool:
    return compute_length(s).is_generating


def brute_force_length(s: GeneratingSet, max_len: int) -> LengthReport:
    """Independent oracle: enumerate ALL words of each exact length.

    No frontier pruning: level i rebuilds the span from scratch out of the
    full cartesian products of generators up to length i. Guarded by
    |gens|^max_len <= 10^6; also raises BudgetExceeded if the trace is still
    growing at the cap, since a truncated trace has no honest verdict.
    """
    field, n = s.field, s.n
    k = len(s.gens)
    if k**max_len > BRUTE_FORCE_WORD_GUARD:
        raise BudgetExceeded(f"{k}^{max_len} words exceed the 10^6 enumeration guard")
    full = n * n
    dims: list[int] = []
    for level in range(max_len + 1):
        basis = SpanBasis(field, full)
        for length in range(level + 1):
            for word in product(s.gens, repeat=length):
                m = Matrix.identity(field, n)
                for g in word:
                    m = mat_mul(m, g)
                basis.insert(m.vec())
        dims.append(basis.dim())
        if dims[-1] == full:
            return LengthReport(
                n=n,
                dims=tuple(dims),
                length=level,
                generated_dim=full,
                is_generating=True,
            )
        if level > 0 and dims[-1] == dims[-2]:
            return LengthReport(
                n=n,
                dims=tuple(dims),
                length=None,
                generated_dim=dims[-1],
                is_generating=False,
            )
    raise BudgetExceeded(f"span still growing after max_len={max_len} levels")
