"""Seeded construction of Jordan-prescribed matrices and generating sets.

All randomness flows through numpy's PCG64 generator, so identical seeds
give bit-identical instances on every platform. The distinguished generator
carries an instance family's hypothesis and is never resampled; only the
random companions are retried when the set fails to generate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certificates import t10_t11_hypothesis, t12_hypothesis
from .errors import (
    EmptySet,
    FamilyHypothesisViolated,
    GenerationRetriesExhausted,
    SizeMismatch,
)
from .length import GeneratingSet, compute_length
from .linalg import Matrix, PrimeField, conjugate, rank

FAMILIES = ("RANDOM", "T10", "T11", "T12", "THM39")
MAX_RETRIES = 64


@dataclass(frozen=True)
class JordanSpec:
    """Diagonal-order list of (eigenvalue, block size) pairs."""

    blocks: tuple[tuple[int, int], ...]

    def order(self) -> int:
        return sum(size for _, size in self.blocks)

    def minpoly_degree(self) -> int:
        """Implied minimal polynomial degree: sum over eigenvalues of max block size."""
        best: dict[int, int] = {}
        for lam, size in self.blocks:
            best[lam] = max(best.get(lam, 0), size)
        return sum(best.values())

    def block_multisets(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for lam, size in self.blocks:
            out.setdefault(lam, []).append(size)
        return {lam: tuple(sorted(sizes, reverse=True)) for lam, sizes in out.items()}


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one deterministic instance.

    jordan prescribes the distinguished generator (None only for RANDOM);
    extra_gens random companions are appended.
    """

    n: int
    p: int
    jordan: JordanSpec | None
    extra_gens: int
    seed: int
    family: str = "RANDOM"


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def jordan_matrix(f: PrimeField, spec: JordanSpec) -> Matrix:
    """Block-diagonal matrix with the prescribed Jordan blocks, in order."""
    n = spec.order()
    if n < 1:
        raise SizeMismatch("Jordan spec must cover at least one dimension")
    arr = np.zeros((n, n), dtype=np.int64)
    offset = 0
    for lam, size in spec.blocks:
        if size < 1:
            raise SizeMismatch(f"block size {size} must be at least 1")
        for i in range(size):
            arr[offset + i, offset + i] = lam % f.p
            if i + 1 < size:
                arr[offset + i, offset + i + 1] = 1
        offset += size
    return Matrix(f, arr)


def random_matrix(n: int, f: PrimeField, seed) -> Matrix:
    """Uniform-entry random matrix."""
    rng = _rng(seed)
    return Matrix(f, rng.integers(0, f.p, size=(n, n), dtype=np.int64))


def random_invertible(n: int, f: PrimeField, seed) -> Matrix:
    """Uniform-entry matrix resampled until full rank."""
    rng = _rng(seed)
    while True:
        m = Matrix(f, rng.integers(0, f.p, size=(n, n), dtype=np.int64))
        if rank(m) == n:
            return m


def random_jordan_spec(
    n: int, f: PrimeField, rng: np.random.Generator, degree: int | None = None, max_degree: int | None = None
) -> JordanSpec:
    """Random Jordan spec of order n with controlled minimal-polynomial degree.

    With degree set, the implied degree is exactly that value; with
    max_degree set, it is uniform-ish in [1, max_degree]. The minimal
    polynomial is chosen first (distinct eigenvalues with exponents summing
    to the degree), then filler blocks of admissible sizes pad the order.
    """
    if degree is None:
        top = max_degree if max_degree is not None else n
        degree = int(rng.integers(1, min(top, n) + 1))
    if not 1 <= degree <= n:
        raise SizeMismatch(f"degree {degree} not in [1, {n}]")
    s = int(rng.integers(1, min(degree, f.p) + 1))
    # Random composition of `degree` into s positive parts.
    cuts = sorted(rng.choice(np.arange(1, degree), size=s - 1, replace=False).tolist()) if s > 1 else []
    exps = [b - a for a, b in zip([0] + cuts, cuts + [degree])]
    eigs = rng.choice(np.arange(f.p), size=s, replace=False).astype(np.int64).tolist()
    blocks = [(int(lam), int(e)) for lam, e in zip(eigs, exps)]
    remaining = n - degree
    while remaining > 0:
        i = int(rng.integers(0, s))
        lam, cap = int(eigs[i]), exps[i]
        size = int(rng.integers(1, min(cap, remaining) + 1))
        blocks.append((lam, size))
        remaining -= size
    order = rng.permutation(len(blocks))
    return JordanSpec(blocks=tuple(blocks[i] for i in order))


def _companion(n: int, f: PrimeField, max_degree: int, rng: np.random.Generator) -> Matrix:
    """Random generator with minimal polynomial degree in [2, max_degree].

    Degree-1 companions are scalar and can never help a set generate, so
    they are excluded whenever the cap allows it.
    """
    if max_degree >= n:
        return random_matrix(n, f, rng)
    low = min(2, max_degree)
    degree = int(rng.integers(low, max_degree + 1))
    spec = random_jordan_spec(n, f, rng, degree=degree)
    p = random_invertible(n, f, rng)
    return conjugate(p, jordan_matrix(f, spec))


def check_family_hypothesis(family: str, n: int, jordan: JordanSpec | None) -> None:
    """Raise FamilyHypothesisViolated unless the tag's hypothesis holds."""
    if family not in FAMILIES:
        raise FamilyHypothesisViolated(f"unknown family {family!r}")
    if family == "RANDOM":
        return
    if jordan is None:
        raise FamilyHypothesisViolated(f"family {family} needs a Jordan prescription")
    if jordan.order() != n:
        raise SizeMismatch(f"Jordan spec covers {jordan.order()} of {n} dimensions")
    m = jordan.minpoly_degree()
    if family == "T10":
        if n % 2 or t10_t11_hypothesis(n, m) is None:
            raise FamilyHypothesisViolated(f"T10 needs even n and m > n/2, got n={n}, m={m}")
    elif family == "T11":
        if n % 2 == 0 or t10_t11_hypothesis(n, m) is None:
            raise FamilyHypothesisViolated(f"T11 needs odd n and m > n/2, got n={n}, m={m}")
    elif family == "T12":
        if not t12_hypothesis(n, m):
            raise FamilyHypothesisViolated(f"T12 needs 2m <= n <= 3m-1, got n={n}, m={m}")
    elif family == "THM39":
        multisets = jordan.block_multisets()
        if n % 2 or len(multisets) != 1 or next(iter(multisets.values())) != (n // 2, n // 2):
            raise FamilyHypothesisViolated(
                f"THM39 needs exactly two size-n/2 blocks with one eigenvalue, got {jordan.blocks}"
            )


@dataclass
class BuildResult:
    """A built instance plus generation bookkeeping."""

    generating_set: GeneratingSet
    retries: int = 0


def build_instance(spec: InstanceSpec) -> GeneratingSet:
    return build_instance_with_meta(spec).generating_set


def build_instance_with_meta(spec: InstanceSpec) -> BuildResult:
    """Deterministically build a generating set for the instance spec.

    The distinguished generator is the conjugated Jordan prescription and is
    never resampled; companions are retried up to 64 times until the set
    generates the full algebra.
    """
    f = PrimeField(spec.p)
    check_family_hypothesis(spec.family, spec.n, spec.jordan)
    rng = _rng(spec.seed)
    if spec.family == "RANDOM" and spec.jordan is None:
        count = max(spec.extra_gens + 1, 1)
        return _random_generating_set(spec.n, f, count, rng)
    assert spec.jordan is not None
    conj = random_invertible(spec.n, f, rng)
    distinguished = conjugate(conj, jordan_matrix(f, spec.jordan))
    max_degree = spec.jordan.minpoly_degree()
    retries = 0
    while True:
        companions = [_companion(spec.n, f, max_degree, rng) for _ in range(spec.extra_gens)]
        gs = GeneratingSet(field=f, n=spec.n, gens=tuple([distinguished] + companions))
        if compute_length(gs).is_generating:
            return BuildResult(generating_set=gs, retries=retries)
        retries += 1
        if retries >= MAX_RETRIES:
            raise GenerationRetriesExhausted(
                f"no generating set after {MAX_RETRIES} companion resamples (seed {spec.seed})"
            )


def _random_generating_set(n: int, f: PrimeField, count: int, rng: np.random.Generator) -> BuildResult:
    if count < 1:
        raise EmptySet("need at least one generator")
    if n >= 2 and count < 2:
        raise ValueError(
            "a single matrix spans a commutative subalgebra and never generates M_n for n >= 2"
        )
    retries = 0
    while True:
        gens = [random_matrix(n, f, rng) for _ in range(count)]
        gs = GeneratingSet(field=f, n=n, gens=tuple(gens))
        if compute_length(gs).is_generating:
            return BuildResult(generating_set=gs, retries=retries)
        retries += 1
        if retries >= MAX_RETRIES:
            raise GenerationRetriesExhausted(
                f"no generating set after {MAX_RETRIES} resamples over F_{f.p}"
            )


def random_generating_set(n: int, f: PrimeField, count: int, seed) -> GeneratingSet:
    """Seeded random matrices, resampled as a whole until the set generates."""
    return _random_generating_set(n, f, count, _rng(seed)).generating_set
