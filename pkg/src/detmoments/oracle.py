"""Brute-force ground-truth engines.

Everything here is an independent check on the closed formulas: exhaustive
matrix enumeration for determinant/permanent power moments of finite-support
laws, a signed census of 6-row permutation tables by column type, direct
derangement enumeration, and the four hand-checkable table-correspondence
cases.  Exact arithmetic throughout; the hot loops live in `kernels`.

State spaces are enumerated exhaustively and refuse to start above
2^STATE_GUARD_LOG2 states (after any symmetry reduction).  Enumerations can
be partitioned over a prefix of the free cells and run on a process pool;
partial histograms are exact integers merged associatively, so results are
independent of the schedule.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .exact import M_VARS, MomentPoly, MomentSpec, Rat, parse_rational

STATE_GUARD_LOG2 = 30
_PARALLEL_MIN_STATES = 1 << 16

# set to a file-like object (CLI uses stderr) to get coarse progress lines
PROGRESS_STREAM = None


def _progress(message: str) -> None:
    if PROGRESS_STREAM is not None:
        print(message, file=PROGRESS_STREAM, flush=True)


@dataclass(frozen=True)
class FiniteDistribution:
    """A finite-support law with exact rational atoms and probabilities."""

    atoms: tuple

    def __init__(self, atoms):
        atoms = tuple((Fraction(v), Fraction(p)) for v, p in atoms)
        if not atoms:
            raise ValueError("a distribution needs at least one atom")
        if len({v for v, _ in atoms}) != len(atoms):
            raise ValueError("atom values must be distinct")
        if any(p <= 0 for _, p in atoms):
            raise ValueError("atom probabilities must be positive")
        if sum(p for _, p in atoms) != 1:
            raise ValueError("atom probabilities must sum to 1")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def uniform_pm1(cls) -> "FiniteDistribution":
        return cls(((1, Fraction(1, 2)), (-1, Fraction(1, 2))))

    @classmethod
    def parse(cls, text: str) -> "FiniteDistribution":
        """Parse `pm1` or `atoms:v1:p1,v2:p2[,...]` with rational literals."""
        text = text.strip()
        if text == "pm1":
            return cls.uniform_pm1()
        if not text.startswith("atoms:"):
            raise ValueError(f"unknown distribution {text!r} (want 'pm1' or 'atoms:v:p,...')")
        pairs = []
        for chunk in text[len("atoms:") :].split(","):
            parts = chunk.split(":")
            if len(parts) != 2:
                raise ValueError(f"bad atom {chunk!r}; want value:probability")
            pairs.append((parse_rational(parts[0]), parse_rational(parts[1])))
        return cls(pairs)

    def moment(self, k: int) -> Fraction:
        return sum((p * v**k for v, p in self.atoms), Fraction(0))

    @property
    def mean(self) -> Fraction:
        return self.moment(1)

    @property
    def variance(self) -> Fraction:
        mu = self.mean
        return self.moment(2) - mu * mu

    def is_standardized(self) -> bool:
        return self.mean == 0 and self.variance == 1

    def moment_spec(self) -> MomentSpec:
        """The (m3, m4, m6) spec of a standardized (mean 0, variance 1) law."""
        if not self.is_standardized():
            raise ValueError("moment_spec requires mean 0 and variance 1")
        return MomentSpec(self.moment(3), self.moment(4), self.moment(6))

    def spec_text(self) -> str:
        return "atoms:" + ",".join(f"{v}:{p}" for v, p in self.atoms)


def _is_sign_symmetric_uniform(dist: FiniteDistribution) -> bool:
    return set(dist.atoms) == {(Fraction(1), Fraction(1, 2)), (Fraction(-1), Fraction(1, 2))}


def _matrix_histogram(values, n, fix_first, permanent, threads):
    """Run the matrix kernel, partitioned over a cell prefix when threads > 1."""
    m = len(values)
    cells = (n - 1) ** 2 if fix_first else n * n
    states = m**cells
    if threads <= 1 or states < _PARALLEL_MIN_STATES or cells == 0:
        return kernels.matrix_power_histogram(
            values, n, fix_first=fix_first, permanent=permanent
        )
    depth = 1
    while m**depth < 4 * threads and depth < cells:
        depth += 1
    prefixes = list(itertools.product(range(m), repeat=depth))
    jobs = [(values, n, fix_first, permanent, prefix) for prefix in prefixes]
    parts = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for i, part in enumerate(pool.map(_histogram_chunk, jobs), 1):
            parts.append(part)
            _progress(f"enumeration chunk {i}/{len(prefixes)} done")
    return kernels.merge_histograms(parts)


def _histogram_chunk(job):
    values, n, fix_first, permanent, prefix = job
    return kernels.matrix_power_histogram(
        values, n, fix_first=fix_first, permanent=permanent, prefix=prefix
    )


def _matrix_power_moment(k, n, dist, permanent, symmetry, threads):
    if k < 2 or k % 2 != 0:
        raise ValueError("k must be a positive even integer")
    if n < 0:
        raise ValueError("n must be >= 0")
    if dist.mean != 0:
        raise ValueError("distribution must have mean 0")
    if n == 0:
        return Fraction(1)
    if symmetry and not _is_sign_symmetric_uniform(dist):
        raise ValueError("symmetry reduction is only valid for the uniform law on {-1,+1}")
    m = len(dist.atoms)
    cells = (n - 1) ** 2 if symmetry else n * n
    if m**cells > 1 << STATE_GUARD_LOG2:
        raise ValueError(
            f"state space {m}^{cells} exceeds the 2^{STATE_GUARD_LOG2} enumeration guard"
        )
    scale = math.lcm(*(v.denominator for v, _ in dist.atoms))
    values = [int(v * scale) for v, _ in dist.atoms]
    hist = _matrix_histogram(tuple(values), n, symmetry, permanent, threads)
    if symmetry:
        total = sum(count * Fraction(key[0]) ** k for key, count in hist.items())
        return total / (Fraction(2) ** cells * Fraction(scale) ** (k * n))
    probs = [p for _, p in dist.atoms]
    total = Fraction(0)
    for key, count in hist.items():
        val = key[0]
        cnts = key[1:]
        weight = Fraction(1)
        for p, a in zip(probs, cnts):
            weight *= p**a
        weight *= probs[-1] ** (cells - sum(cnts))
        total += count * weight * Fraction(val) ** k
    return total / Fraction(scale) ** (k * n)


def det_power_moment(
    k: int, n: int, dist: FiniteDistribution, symmetry: bool = False, threads: int = 1
) -> Fraction:
    """E[det^k] by exhaustive weighted enumeration of all entry fillings.

    `symmetry` pins the first row and column to +1 and is only accepted for
    the uniform law on {-1,+1}, where even det powers are invariant under
    row/column negation (a 2^(2n-1)-fold reduction).
    """
    return _matrix_power_moment(k, n, dist, False, symmetry, threads)


def per_power_moment(
    k: int, n: int, dist: FiniteDistribution, symmetry: bool = False, threads: int = 1
) -> Fraction:
    """E[per^k] by exhaustive enumeration (Ryser's formula per matrix)."""
    return _matrix_power_moment(k, n, dist, True, symmetry, threads)


@lru_cache(maxsize=None)
def _table_histogram(n: int, allow_three: bool):
    return kernels.table_type_histogram(n, allow_three=allow_three)


def table_weight_sum(n: int, weights=None, signed: bool = True):
    """Census sum over 6-row permutation tables with typed columns.

    With `weights=None` the result is the symbolic polynomial over
    (m3, m4, m6) obtained by weighting each table by m6^#six-columns *
    m4^#four-two-columns * (m3^2)^#triple-pair-columns; `signed` multiplies
    each table by the product of its row permutation signs (determinant
    convention) instead of counting it positively (permanent convention).
    Explicit `weights=(w6, w4, w2, w3)` evaluates the same sum numerically.
    """
    if not 0 <= n <= 4:
        raise ValueError("table sums support 0 <= n <= 4")
    if n == 0:
        if weights is None:
            return MomentPoly.constant(1, M_VARS)
        return Fraction(1)
    hist = _table_histogram(n, True)
    nfact = math.factorial(n)
    if weights is None:
        terms: dict = {}
        for (c6, c4, c2, c3, sign), count in hist.items():
            expo = (2 * c3, c4, c6)  # (m3, m4, m6) exponents
            value = count * (sign if signed else 1) * nfact
            terms[expo] = terms.get(expo, 0) + value
        return MomentPoly(M_VARS, terms)
    w6, w4, w2, w3 = (Fraction(w) for w in weights)
    total = Fraction(0)
    for (c6, c4, c2, c3, sign), count in hist.items():
        weight = w6**c6 * w4**c4 * w2**c2 * w3**c3
        total += count * (sign if signed else 1) * weight
    return nfact * total


def pairing_sum(n: int) -> int:
    """Signed pairing-weighted count over even tables: sum of sign * 15^#6col * 3^#4col.

    Must reproduce the closed product n!(n+2)!(n+4)!/48.
    """
    if not 0 <= n <= 4:
        raise ValueError("pairing sums support 0 <= n <= 4")
    if n == 0:
        return 1
    hist = _table_histogram(n, False)
    total = 0
    for (c6, c4, c2, c3, sign), count in hist.items():
        total += sign * count * 15**c6 * 3**c4
    return math.factorial(n) * total


def derangement_cycle_sum(n: int, u: Rat) -> Fraction:
    """Sum of u^(cycle count) over all derangements of n elements, by listing them."""
    if not 0 <= n <= 8:
        raise ValueError("derangement enumeration supports 0 <= n <= 8")
    u = Fraction(u)
    total = Fraction(0)
    for cycles, count in _derangement_cycle_census(n).items():
        total += count * u**cycles
    return total


def derangement_cycle_polynomial(n: int) -> MomentPoly:
    """The census of `derangement_cycle_sum` as a polynomial in u."""
    if not 0 <= n <= 8:
        raise ValueError("derangement enumeration supports 0 <= n <= 8")
    return MomentPoly(
        ("u",), {(cycles,): count for cycles, count in _derangement_cycle_census(n).items()}
    )


@lru_cache(maxsize=None)
def _derangement_cycle_census(n: int) -> dict:
    census: dict = {}
    if n == 0:
        return {0: 1}  # the empty permutation: no fixed points, no cycles
    for perm in itertools.permutations(range(n)):
        if any(perm[i] == i for i in range(n)):
            continue
        seen = [False] * n
        cycles = 0
        for i in range(n):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        census[cycles] = census.get(cycles, 0) + 1
    return census


# --- the four table-correspondence cases -----------------------------------
#
# Six two-element row contents over the labels a..f (0..5), each label used
# twice.  Up to relabeling these fall into four cases; for each we compare
# the signed count of valid 6x2 tables against the signed count of valid 6x3
# tables that additionally thread a new element (6) twice through every
# column.  The 6x3 sum is always 6 times the 6x2 sum.

_NEW = 6
CORRESPONDENCE_CASES = {
    1: ((0, 1), (0, 1), (2, 3), (2, 3), (4, 5), (4, 5)),
    2: ((0, 1), (0, 1), (2, 3), (2, 4), (3, 5), (4, 5)),
    3: ((0, 1), (0, 2), (1, 3), (3, 4), (2, 5), (4, 5)),
    4: ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)),
}


def _swap_parity(row, reference) -> int:
    """+1 if `row` is an even number of swaps away from `reference`."""
    row = list(row)
    sign = 1
    for i, want in enumerate(reference):
        if row[i] != want:
            j = row.index(want)
            row[i], row[j] = row[j], row[i]
            sign = -sign
    return sign


def _columns_even(rows, width) -> bool:
    for c in range(width):
        column = [r[c] for r in rows]
        if any(column.count(x) % 2 for x in set(column)):
            return False
    return True


def correspondence_case_sums(case: int) -> tuple:
    """Signed table sums (two-column, three-column) for one of the four cases."""
    if case not in CORRESPONDENCE_CASES:
        raise ValueError("case must be 1, 2, 3, or 4")
    contents = CORRESPONDENCE_CASES[case]
    two_sum = 0
    for rows in itertools.product(*(((s[0], s[1]), (s[1], s[0])) for s in contents)):
        if _columns_even(rows, 2):
            sign = 1
            for row, ref in zip(rows, contents):
                sign *= _swap_parity(row, ref)
            two_sum += sign
    three_sum = 0
    row_options = [tuple(itertools.permutations((s[0], s[1], _NEW))) for s in contents]
    for rows in itertools.product(*row_options):
        # the new element must appear exactly twice in every column
        if any(sum(r[c] == _NEW for r in rows) != 2 for c in range(3)):
            continue
        if _columns_even(rows, 3):
            sign = 1
            for row, ref in zip(rows, contents):
                sign *= _swap_parity(row, (ref[0], ref[1], _NEW))
            three_sum += sign
    return (two_sum, three_sum)
