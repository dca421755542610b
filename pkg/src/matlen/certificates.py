"""Rank-reduction certificates and the ledger of length bounds.

A certificate is a divisor-form product prod (A - lambda I)^{a_lambda} of
low rank: it lives in the span of words of length <= sum(a_lambda), so the
generic rank bounds turn it into a concrete length bound. The ledger
collects every known bound whose hypothesis the instance satisfies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .errors import InvalidK, NotSplit
from .length import GeneratingSet
from .linalg import Matrix, mat_mul, rank
from .spectral import (
    JordanProfile,
    Spectrum,
    jordan_profile,
    minimal_polynomial,
    split_roots,
    unique_max_block,
)


@dataclass(frozen=True)
class RankCertificate:
    """Exponent vector a_lambda with its evaluation's rank and degree."""

    exponents: tuple[tuple[int, int], ...]  # (eigenvalue, exponent), ascending
    degree: int
    achieved_rank: int
    witness: Matrix

    def exponent_map(self) -> dict[int, int]:
        return dict(self.exponents)


@dataclass(frozen=True)
class BoundEntry:
    name: str
    bound_value: int
    applicable: bool
    hypothesis_note: str


@dataclass(frozen=True)
class BoundLedger:
    entries: tuple[BoundEntry, ...]

    def find(self, name: str) -> BoundEntry | None:
        for e in self.entries:
            if e.name == name:
                return e
        return None

    def applicable(self) -> tuple[BoundEntry, ...]:
        return tuple(e for e in self.entries if e.applicable)

    def tightest_applicable(self) -> int | None:
        values = [e.bound_value for e in self.applicable()]
        return min(values) if values else None


def evaluate_exponents(a: Matrix, exponents: dict[int, int]) -> Matrix:
    """Evaluate prod over lambda of (A - lambda I)^{a_lambda}."""
    field = a.field
    out = Matrix.identity(field, a.n)
    for lam in sorted(exponents):
        shifted = a.sub(Matrix.identity(field, a.n).scale(lam))
        for _ in range(exponents[lam]):
            out = mat_mul(out, shifted)
    return out


def find_rank_reduction(a: Matrix, spec: Spectrum, r_max: int) -> RankCertificate | None:
    """Minimal-degree divisor-form certificate of rank <= r_max, or None.

    Enumerates exponent vectors 0 <= a_lambda <= e_lambda, excluding the
    all-zero vector and the full vector (which evaluates to zero), in order
    of increasing total degree with lexicographic tie-breaking on the
    exponents under ascending eigenvalue order.
    """
    if r_max < 1:
        raise ValueError(f"r_max must be at least 1, got {r_max}")
    eigenvalues = spec.eigenvalues()
    mults = [e for _, e in spec.roots]
    powers: dict[int, list[Matrix]] = {}
    for lam, e_lam in spec.roots:
        shifted = a.sub(Matrix.identity(a.field, a.n).scale(lam))
        chain = [Matrix.identity(a.field, a.n)]
        for _ in range(e_lam):
            chain.append(mat_mul(chain[-1], shifted))
        powers[lam] = chain
    vectors = [
        v
        for v in product(*(range(e + 1) for e in mults))
        if any(v) and any(vi < ei for vi, ei in zip(v, mults))
    ]
    vectors.sort(key=lambda v: (sum(v), v))
    for v in vectors:
        witness = Matrix.identity(a.field, a.n)
        for lam, exp in zip(eigenvalues, v):
            if exp:
                witness = mat_mul(witness, powers[lam][exp])
        if witness.is_zero():
            continue
        r = rank(witness)
        if r <= r_max:
            return RankCertificate(
                exponents=tuple(zip(eigenvalues, v)),
                degree=sum(v),
                achieved_rank=r,
                witness=witness,
            )
    return None


def pappacena_bound(r: int, k: int, n: int) -> int:
    """Length bound rn + n - r + k - 1 from a rank-r matrix at span level k."""
    if r < 1 or k < 1:
        raise ValueError(f"need r >= 1 and k >= 1, got r={r}, k={k}")
    return r * n + n - r + k - 1


def shitov_rank1_bound(k: int, n: int) -> int:
    """Length bound 2n + k - 4 from a rank-one matrix at span level k >= 2."""
    if k < 2:
        raise InvalidK(f"rank-one span level must be at least 2, got {k}")
    return 2 * n + k - 4


def t10_t11_hypothesis(n: int, m: int) -> tuple[int, int] | None:
    """(t, k) when the 3n-5 bound applies, i.e. exactly when m > n/2.

    Even n = 2t: applicable for m = t+k, k in 1..t. Odd n = 2t+1:
    applicable for m = t+k, k in 1..t+1.
    """
    if n < 2 or m < 1 or m > n:
        return None
    t = n // 2
    if m >= t + 1:
        return t, m - t
    return None


def t12_hypothesis(n: int, m: int) -> bool:
    """True iff 2m <= n <= 3m - 1 (the 7n/2 - 4 window)."""
    return 2 * m <= n <= 3 * m - 1


def thm38_hypothesis(n: int, profile: JordanProfile, m: int) -> int | None:
    """Deficiency k = n - m when the 2n - 2 + k bound applies.

    Requires k >= 1, 2k < n, and for every eigenvalue the same relation
    within its own Jordan matrix: 2(n_lambda - max block) < n_lambda.
    """
    k = n - m
    if k < 1 or 2 * k >= n:
        return None
    for sizes in profile.blocks.values():
        n_lam = sum(sizes)
        k_lam = n_lam - sizes[0]
        if 2 * k_lam >= n_lam:
            return None
    return k


def paz_bound(n: int) -> int:
    """The general ceiling bound (n^2 + 2) / 3, rounded up."""
    return -((n * n + 2) // -3)


def shitov_general_bound(n: int) -> int:
    """The general 2n log2 n + 4n - 4 bound, rounded up to an integer."""
    return math.ceil(2 * n * math.log2(n) + 4 * n - 4) if n > 1 else 0


def quadratic_minpoly_bound(n: int) -> int:
    """The 2 log2 n bound for sets of quadratic minimal polynomials, rounded up."""
    return math.ceil(2 * math.log2(n)) if n > 1 else 0


def _double_block_eigenvalue(profile: JordanProfile, n: int) -> int | None:
    """Eigenvalue lambda when the profile is exactly {lambda: [n/2, n/2]}."""
    if n % 2 or len(profile.blocks) != 1:
        return None
    lam, sizes = next(iter(profile.blocks.items()))
    if sizes == (n // 2, n // 2):
        return lam
    return None


@dataclass(frozen=True)
class GeneratorAnalysis:
    """Per-generator spectral data feeding the ledger; spectrum may be absent."""

    index: int
    degree: int
    spectrum: Spectrum | None
    profile: JordanProfile | None
    split_error: str | None


def analyze_generators(s: GeneratingSet) -> list[GeneratorAnalysis]:
    out = []
    for i, g in enumerate(s.gens):
        mp = minimal_polynomial(g)
        try:
            spec = split_roots(mp, s.field)
            profile = jordan_profile(g, spec)
            out.append(GeneratorAnalysis(i, mp.degree, spec, profile, None))
        except NotSplit as exc:
            out.append(GeneratorAnalysis(i, mp.degree, None, None, str(exc)))
    return out


def bound_ledger(
    s: GeneratingSet, analyses: list[GeneratorAnalysis] | None = None
) -> BoundLedger:
    """One entry per known bound, with applicability decided from computed data.

    Jordan-dependent entries become "undecidable" (non-applicable, with a
    note) when the deciding generators' spectra do not split; everything
    that only needs minimal-polynomial degrees is always decided.
    """
    n = s.n
    if analyses is None:
        analyses = analyze_generators(s)
    m_s = max(a.degree for a in analyses)
    any_nonsplit = any(a.spectrum is None for a in analyses)
    entries: list[BoundEntry] = []

    entries.append(
        BoundEntry("paz_general", paz_bound(n), True, "always applicable")
    )
    entries.append(
        BoundEntry("shitov_general", shitov_general_bound(n), True, "always applicable")
    )

    if all(a.degree <= 2 for a in analyses):
        note = "every generator has minimal polynomial degree <= 2"
        applicable = True
    else:
        note = f"a generator has minimal polynomial degree {m_s} > 2"
        applicable = False
    entries.append(BoundEntry("quadratic_minpoly", quadratic_minpoly_bound(n), applicable, note))

    nonderog = [a.index for a in analyses if a.degree == n]
    entries.append(
        BoundEntry(
            "nonderogatory",
            2 * n - 2,
            bool(nonderog),
            f"generator {nonderog[0]} has minimal polynomial degree n"
            if nonderog
            else "no generator with minimal polynomial degree n",
        )
    )

    near = [a.index for a in analyses if a.degree == n - 1]
    entries.append(
        BoundEntry(
            "minpoly_degree_n_minus_1",
            2 * n - 2,
            bool(near),
            f"generator {near[0]} has minimal polynomial degree n - 1"
            if near
            else "no generator with minimal polynomial degree n - 1",
        )
    )

    # Markova: a unique maximal Jordan block for some eigenvalue of some
    # generator gives 2n + deg - 3; pick the smallest resulting value.
    markova_candidates = [
        (2 * n + a.degree - 3, a.index)
        for a in analyses
        if a.profile is not None and unique_max_block(a.profile) is not None
    ]
    if markova_candidates:
        value, idx = min(markova_candidates)
        entries.append(
            BoundEntry(
                "markova_unique_max_block",
                value,
                True,
                f"generator {idx} has an eigenvalue with a unique maximal Jordan block",
            )
        )
    else:
        note = (
            "undecidable: some generator's spectrum does not split"
            if any_nonsplit
            else "no generator has an eigenvalue with a unique maximal Jordan block"
        )
        entries.append(BoundEntry("markova_unique_max_block", 2 * n + m_s - 3, False, note))

    deficiency_candidates = []
    for a in analyses:
        if a.profile is None:
            continue
        k = thm38_hypothesis(n, a.profile, a.degree)
        if k is not None:
            deficiency_candidates.append((2 * n - 2 + k, a.index, k))
    if deficiency_candidates:
        value, idx, k = min(deficiency_candidates)
        entries.append(
            BoundEntry(
                "minpoly_deficiency",
                value,
                True,
                f"generator {idx} has deficiency k={k} with 2k < n and per-eigenvalue slack",
            )
        )
    else:
        note = (
            "undecidable: some generator's spectrum does not split"
            if any_nonsplit
            else "no generator satisfies the deficiency conditions"
        )
        entries.append(BoundEntry("minpoly_deficiency", 2 * n - 2 + max(n - m_s, 1), False, note))

    double_idx = [
        a.index
        for a in analyses
        if a.profile is not None and _double_block_eigenvalue(a.profile, n) is not None
    ]
    if n % 2 == 0:
        value_39 = 5 * (n // 2) - 2
        if double_idx:
            note = f"generator {double_idx[0]} is similar to a shifted double Jordan block"
            entries.append(BoundEntry("double_jordan_block", value_39, True, note))
        else:
            note = (
                "undecidable: some generator's spectrum does not split"
                if any_nonsplit
                else "no generator similar to a double Jordan block of size n/2"
            )
            entries.append(BoundEntry("double_jordan_block", value_39, False, note))

    # The 3n-5 route needs rank-one span level m(S)-1 >= 2 after clamping,
    # which fails only at n = 2 (m = 2, level 1, true bound 2n-2 = 2 > 1).
    tk = t10_t11_hypothesis(n, m_s)
    if tk is not None and n >= 3:
        note = f"m(S) = {m_s} = t + k with t={tk[0]}, k={tk[1]}"
        above_half = True
    elif tk is not None:
        note = "degenerate at n = 2: the certificate sits at span level 1 and the bound does not apply"
        above_half = False
    else:
        note = f"m(S) = {m_s} <= n/2"
        above_half = False
    entries.append(BoundEntry("minpoly_above_half", 3 * n - 5, above_half, note))

    t12 = t12_hypothesis(n, m_s)
    entries.append(
        BoundEntry(
            "minpoly_window",
            (7 * n) // 2 - 4,
            t12,
            f"2t <= n <= 3t - 1 holds with t = m(S) = {m_s}"
            if t12
            else f"n = {n} outside [2m, 3m-1] for m(S) = {m_s}",
        )
    )

    entries.extend(_certificate_entries(s, analyses))
    return BoundLedger(entries=tuple(entries))


def _certificate_entries(
    s: GeneratingSet, analyses: list[GeneratorAnalysis]
) -> list[BoundEntry]:
    """Per-generator bound entries derived from rank-reduction certificates."""
    entries: list[BoundEntry] = []
    for a in analyses:
        if a.spectrum is None:
            continue
        g = s.gens[a.index]
        seen: set[tuple[int, int]] = set()
        for r_max in (1, 2):
            cert = find_rank_reduction(g, a.spectrum, r_max)
            if cert is None:
                continue
            key = (cert.achieved_rank, cert.degree)
            if key in seen:
                continue
            seen.add(key)
            r, d = cert.achieved_rank, cert.degree
            note = f"generator {a.index} has a rank-{r} certificate of degree {d}"
            entries.append(
                BoundEntry(
                    f"pappacena_r{r}_gen{a.index}",
                    pappacena_bound(r, d, s.n),
                    True,
                    note,
                )
            )
            if r == 1:
                entries.append(
                    BoundEntry(
                        f"shitov_rank1_gen{a.index}",
                        shitov_rank1_bound(max(d, 2), s.n),
                        True,
                        note + " (span level clamped to 2)" if d < 2 else note,
                    )
                )
    return entries


def best_certificates(
    s: GeneratingSet, analyses: list[GeneratorAnalysis] | None = None
) -> dict[int, dict[int, RankCertificate]]:
    """For each split generator index, the minimal certificates for r_max 1 and 2."""
    if analyses is None:
        analyses = analyze_generators(s)
    out: dict[int, dict[int, RankCertificate]] = {}
    for a in analyses:
        if a.spectrum is None:
            continue
        certs: dict[int, RankCertificate] = {}
        for r_max in (1, 2):
            cert = find_rank_reduction(s.gens[a.index], a.spectrum, r_max)
            if cert is not None:
                certs[r_max] = cert
        if certs:
            out[a.index] = certs
    return out
