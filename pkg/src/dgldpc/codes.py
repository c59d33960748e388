"""Component-code combinatorics for generalized node analysis.

A component code is an (n, k) binary linear block code given by a full-rank
generator matrix.  This module computes the quantities that drive the
erasure-channel analysis of generalized nodes:

  * information functions: for each g, the sum of GF(2) ranks over all
    g-column submatrices of the generator matrix (representation
    independent);
  * split information functions: the same sums over g generator columns
    joined with h columns of the k x k identity (representation dependent);
  * minimum distance, both by codeword enumeration and by searching for
    the smallest set of columns whose removal drops the rank (the two
    agree for every linear code, which the tests exercise);
  * the rank-deficiency totals over (n-2)-column submatrices that are the
    only way minimum-distance-2 codes enter the stability condition.

All tables are exact integers; enumeration cost is exponential in n (and
n + k for the split tables), which the dimension caps keep at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .binmat import BinaryMatrix, InvalidSelectionError, rank

MAX_BRUTEFORCE_DIMENSION = 24


class EnumerationCapacityError(ValueError):
    """The requested enumeration is beyond the supported size cap."""


@dataclass(frozen=True)
class ComponentCode:
    """An (n, k) linear block code with a fixed generator representation.

    n is the number of generator columns, k the number of rows; the
    generator must have full row rank.
    """

    gen: BinaryMatrix

    def __post_init__(self) -> None:
        k, n = self.gen.rows, self.gen.cols
        if rank(self.gen) != k:
            raise ValueError(f"generator matrix is rank deficient: rank < {k}")
        if not 1 <= k < n:
            raise ValueError(f"code dimensions must satisfy 1 <= k < n, got k={k}, n={n}")

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    @classmethod
    def from_text(cls, text: str) -> "ComponentCode":
        return cls(BinaryMatrix.from_text(text))

    @classmethod
    def repetition(cls, j: int) -> "ComponentCode":
        """The (j, 1) repetition code: a single all-ones generator row."""
        if j < 2:
            raise ValueError(f"repetition length must be >= 2, got {j}")
        return cls(BinaryMatrix(((1 << j) - 1,), j))

    @classmethod
    def single_parity_check(cls, j: int) -> "ComponentCode":
        """The (j, j-1) SPC code in systematic form [I | all-ones column]."""
        if j < 2:
            raise ValueError(f"SPC length must be >= 2, got {j}")
        rows = tuple((1 << i) | (1 << (j - 1)) for i in range(j - 1))
        return cls(BinaryMatrix(rows, j))


@dataclass(frozen=True)
class InfoFunctionTable:
    """values[g] = sum of ranks over all g-column generator submatrices."""

    values: tuple[int, ...]


@dataclass(frozen=True)
class SplitInfoFunctionTable:
    """values[g][h] = sum of ranks over g generator and h identity columns."""

    values: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DeltaParams:
    """Total rank deficiencies over (n-2)-column submatrices.

    delta_n2 counts plain generator-column subsets; delta_n2_kz[z] counts
    subsets of n-2 generator columns joined with k-z identity columns.
    """

    delta_n2: int
    delta_n2_kz: tuple[int, ...]


def _subset_rank_sums(columns: list[int], acc: list[int], base: int) -> None:
    """Add base + rank to acc[g] for every subset of the given column vectors.

    Columns are bit vectors over the row index.  The enumeration shares
    elimination work along a DFS over columns, so each subset costs one
    basis reduction instead of a full elimination.
    """
    n = len(columns)
    basis: list[int] = []

    def walk(i: int, r: int, g: int) -> None:
        if i == n:
            acc[g] += base + r
            return
        walk(i + 1, r, g)
        col = columns[i]
        for b in basis:
            col = min(col, col ^ b)
        if col:
            basis.append(col)
            walk(i + 1, r + 1, g + 1)
            basis.pop()
        else:
            walk(i + 1, r, g + 1)

    walk(0, 0, 0)


def _rank_of_columns(columns: list[int]) -> int:
    basis: list[int] = []
    for col in columns:
        for b in basis:
            col = min(col, col ^ b)
        if col:
            basis.append(col)
    return len(basis)


@lru_cache(maxsize=None)
def info_functions(code: ComponentCode) -> InfoFunctionTable:
    """Exact information function table for g = 0..n.

    The table does not depend on the generator representation, only on the
    row space.
    """
    acc = [0] * (code.n + 1)
    _subset_rank_sums(code.gen.columns(), acc, 0)
    return InfoFunctionTable(tuple(acc))


@lru_cache(maxsize=None)
def split_info_functions(code: ComponentCode) -> SplitInfoFunctionTable:
    """Exact split information function table for g = 0..n, h = 0..k.

    Selecting h identity columns T pins those rows, so the rank of
    [G_S | I_T] equals |T| plus the rank of G_S with the T rows deleted;
    the enumeration projects the rows out instead of building augmented
    matrices.  The result depends on the chosen generator representation.
    """
    n, k = code.n, code.k
    cols = code.gen.columns()
    table = [[0] * (k + 1) for _ in range(n + 1)]
    for t_mask in range(1 << k):
        h = t_mask.bit_count()
        keep = ~t_mask
        projected = [c & keep for c in cols]
        acc = [0] * (n + 1)
        _subset_rank_sums(projected, acc, h)
        for g in range(n + 1):
            table[g][h] += acc[g]
    return SplitInfoFunctionTable(tuple(tuple(row) for row in table))


@lru_cache(maxsize=None)
def split_info_row(code: ComponentCode, g: int) -> tuple[int, ...]:
    """Split information functions for a single g, all h = 0..k.

    Cheaper than the full table when only a few g cells are needed (the
    stability analysis uses g = n-2 only), since it enumerates C(n, g)
    column subsets instead of all 2^n.
    """
    n, k = code.n, code.k
    if not 0 <= g <= n:
        raise ValueError(f"g must be in 0..{n}, got {g}")
    cols = code.gen.columns()
    row = [0] * (k + 1)
    for subset in combinations(range(n), g):
        chosen = [cols[j] for j in subset]
        for t_mask in range(1 << k):
            h = t_mask.bit_count()
            keep = ~t_mask
            row[h] += h + _rank_of_columns([c & keep for c in chosen])
    return tuple(row)


@lru_cache(maxsize=None)
def min_distance_bruteforce(code: ComponentCode) -> int:
    """Minimum Hamming weight over all 2^k - 1 nonzero codewords.

    Gray-code enumeration, one row XOR per codeword.  Capped at
    k <= MAX_BRUTEFORCE_DIMENSION.
    """
    k = code.k
    if k > MAX_BRUTEFORCE_DIMENSION:
        raise EnumerationCapacityError(
            f"codeword enumeration supports k <= {MAX_BRUTEFORCE_DIMENSION}, got k={k}"
        )
    rows = code.gen.bits
    word = 0
    prev_gray = 0
    best = code.n + 1
    for t in range(1, 1 << k):
        gray = t ^ (t >> 1)
        flipped = (gray ^ prev_gray).bit_length() - 1
        word ^= rows[flipped]
        prev_gray = gray
        w = word.bit_count()
        if w < best:
            best = w
            if best == 1:
                break
    return best


def _removal_keeps_rank(cols: list[int], removed: tuple[int, ...], k: int) -> bool:
    remaining = [c for j, c in enumerate(cols) if j not in removed]
    return _rank_of_columns(remaining) == k


@lru_cache(maxsize=None)
def min_independent_set_size(code: ComponentCode) -> int:
    """Smallest t such that removing some t columns drops the generator rank.

    Ascends t = 1, 2, ... testing all C(n, t) removals with early exit;
    equals the code minimum distance for every linear code, but is computed
    without enumerating codewords.
    """
    n, k = code.n, code.k
    cols = code.gen.columns()
    for t in range(1, n + 1):
        for removed in combinations(range(n), t):
            if not _removal_keeps_rank(cols, removed, k):
                return t
    raise AssertionError("full-rank matrix must lose rank when all columns are removed")


def rank_drop_of_removal(code: ComponentCode, removed) -> int:
    """Rank deficiency k - rank(G with the given columns removed); >= 0."""
    removed_set = set(removed)
    for j in removed_set:
        if not 0 <= j < code.n:
            raise InvalidSelectionError(f"column index {j} out of range for {code.n} columns")
    cols = code.gen.columns()
    remaining = [c for j, c in enumerate(cols) if j not in removed_set]
    return code.k - _rank_of_columns(remaining)


def min_distance_at_least(gen: BinaryMatrix, t: int) -> bool:
    """True iff the code generated by gen has minimum distance >= t.

    Checks that removing any fewer than t columns preserves the rank,
    which costs sum_{s<t} C(n, s) rank computations; used for the
    d_min >= 2 / >= 3 classifications where codeword enumeration would be
    unnecessary.  gen must have full row rank.
    """
    k = gen.rows
    cols = gen.columns()
    for s in range(1, t):
        if s > gen.cols:
            break
        for removed in combinations(range(gen.cols), s):
            if not _removal_keeps_rank(cols, removed, k):
                return False
    return True


@lru_cache(maxsize=None)
def delta_params(code: ComponentCode) -> DeltaParams:
    """Rank-deficiency totals at submatrix size n-2.

    delta_n2 = k*C(n,2) - e~_{n-2}; delta_n2_kz[z] = k*C(n,2)*C(k,z)
    - e~_{n-2,k-z}.  Both vanish exactly when the minimum distance is at
    least 3.
    """
    n, k = code.n, code.k
    row = split_info_row(code, n - 2)
    full = k * comb(n, 2)
    delta_n2 = full - row[0]
    delta_kz = tuple(full * comb(k, z) - row[k - z] for z in range(k + 1))
    return DeltaParams(delta_n2, delta_kz)
