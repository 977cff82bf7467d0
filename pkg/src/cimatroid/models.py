"""Exact rational models that produce CI data.

Two sources are supported:

* vector configurations over the rationals, which realize an oriented
  matroid both as a chirotope (determinant signs on a fixed row basis)
  and as signed circuits (sign vectors of support-minimal kernel
  elements);
* symmetric positive definite rational matrices, whose almost-principal
  minors decide Gaussian conditional independence.

Everything runs on :class:`fractions.Fraction`; a determinant is zero
exactly when it is zero, so no statement membership ever depends on a
numeric tolerance.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .bitsets import iter_elements, popcount
from .ci import CIStructure, check_ground, statement_index
from .errors import NotPositiveDefiniteError, NotSymmetricError
from .oriented import Chirotope, SignedCircuitSet, SignedSet

Rational = Fraction


def _fractions(row: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in row)


# -- exact elimination helpers ------------------------------------------------


def det_rational(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a square rational matrix by fraction Gaussian elimination."""
    size = len(rows)
    work = [list(r) for r in rows]
    if any(len(r) != size for r in work):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det *= pivot
        for r in range(col + 1, size):
            factor = work[r][col] / pivot
            if factor:
                for c in range(col, size):
                    work[r][c] -= factor * work[col][c]
    return det


def rank_rational(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix; also see :func:`pivot_rows`."""
    return len(pivot_rows(rows))


def pivot_rows(rows: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a row basis, in original order."""
    if not rows:
        return []
    width = len(rows[0])
    basis: list[list[Fraction]] = []
    chosen: list[int] = []
    pivots: list[int] = []
    for r, row in enumerate(rows):
        residual = list(row)
        for vec, p in zip(basis, pivots):
            factor = residual[p] / vec[p]
            if factor:
                for c in range(width):
                    residual[c] -= factor * vec[c]
        pivot = next((c for c in range(width) if residual[c] != 0), None)
        if pivot is not None:
            basis.append(residual)
            pivots.append(pivot)
            chosen.append(r)
    return chosen


def kernel_vector(rows: Sequence[Sequence[Fraction]], width: int) -> list[Fraction] | None:
    """A nonzero kernel vector of a matrix with nullity one, else None.

    Used on circuit supports, where the kernel is one-dimensional.
    """
    work = [list(r) for r in rows]
    pivots: list[tuple[int, int]] = []  # (row, col) in echelon order
    row = 0
    for col in range(width):
        pivot_row = next((r for r in range(row, len(work)) if work[r][col] != 0), None)
        if pivot_row is None:
            continue
        work[row], work[pivot_row] = work[pivot_row], work[row]
        pivot = work[row][col]
        for r in range(len(work)):
            if r != row and work[r][col] != 0:
                factor = work[r][col] / pivot
                for c in range(width):
                    work[r][c] -= factor * work[row][c]
        pivots.append((row, col))
        row += 1
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(width) if c not in pivot_cols]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * width
    vec[f] = Fraction(1)
    for r, c in pivots:
        vec[c] = -work[r][f] / work[r][c]
    return vec


# -- domain types -------------------------------------------------------------


class RationalMatrix:
    """A dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        entries = tuple(_fractions(row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrix needs positive dimensions")
        cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise ValueError("matrix rows have unequal lengths")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if r == c else 0 for c in range(n)] for r in range(n)])

    def entry(self, row: int, col: int) -> Fraction:
        """1-based access, matching the element labels."""
        return self.entries[row - 1][col - 1]

    def submatrix_det(self, row_elements: Sequence[int], col_elements: Sequence[int]) -> Fraction:
        rows = [[self.entry(r, c) for c in col_elements] for r in row_elements]
        return det_rational(rows)

    def is_symmetric(self) -> tuple[int, int] | None:
        """None if symmetric, else the first offending (row, col), 1-based."""
        if self.rows != self.cols:
            return (self.rows, self.cols)
        for r in range(self.rows):
            for c in range(r + 1, self.cols):
                if self.entries[r][c] != self.entries[c][r]:
                    return (r + 1, c + 1)
        return None

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


class VectorConfiguration:
    """n labeled columns of exact rationals in ambient dimension d."""

    __slots__ = ("d", "n", "columns")

    def __init__(self, columns: Sequence[Sequence]):
        columns = tuple(_fractions(col) for col in columns)
        if not columns:
            raise ValueError("a configuration needs at least one column")
        d = len(columns[0])
        if d == 0 or any(len(col) != d for col in columns):
            raise ValueError("columns must share one positive dimension")
        check_ground(len(columns), low=1)
        self.d = d
        self.n = len(columns)
        self.columns = columns

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "VectorConfiguration":
        rows = [list(map(Fraction, r)) for r in rows]
        return cls(list(map(list, zip(*rows))))

    def as_rows(self) -> list[list[Fraction]]:
        return [list(r) for r in zip(*self.columns)]

    def column_rows(self, elements: Sequence[int]) -> list[list[Fraction]]:
        """The d x |elements| submatrix of the selected columns, as rows."""
        return [[self.columns[e - 1][r] for e in elements] for r in range(self.d)]

    @property
    def rank(self) -> int:
        return rank_rational(self.as_rows())

    def rank_of_columns(self, elements: Iterable[int]) -> int:
        elements = sorted(elements)
        if not elements:
            return 0
        # row rank of the k x d stack equals the column rank of the selection
        return rank_rational([list(self.columns[e - 1]) for e in elements])

    def __eq__(self, other):
        if not isinstance(other, VectorConfiguration):
            return NotImplemented
        return self.columns == other.columns

    def __hash__(self):
        return hash(self.columns)

    def __repr__(self):
        return f"VectorConfiguration(d={self.d}, n={self.n})"


# -- realizations -------------------------------------------------------------


def chirotope_from_vectors(config: VectorConfiguration) -> Chirotope:
    """Determinant signs of the configuration, restricted to a row basis.

    A fixed row basis makes every selected minor square; choosing a
    different basis flips at most the global sign, which no downstream
    sign pattern can see.
    """
    rows = config.as_rows()
    basis_rows = pivot_rows(rows)
    r = len(basis_rows)
    if r == 0:
        raise ValueError("configuration has rank zero")
    reduced = [rows[t] for t in basis_rows]
    signs = {}
    for combo in itertools.combinations(range(1, config.n + 1), r):
        d = det_rational([[reduced[t][e - 1] for e in combo] for t in range(r)])
        if d:
            signs[combo] = 1 if d > 0 else -1
    return Chirotope(config.n, r, signs)


def signed_circuits_from_vectors(config: VectorConfiguration) -> SignedCircuitSet:
    """Signed supports of the support-minimal linear dependences.

    Every circuit of the column matroid carries a one-dimensional kernel;
    the two sign vectors of that line are the signed circuits.
    """
    n = config.n
    col_rank = {}

    def rank_of(mask: int) -> int:
        if mask not in col_rank:
            elements = list(iter_elements(mask))
            col_rank[mask] = rank_rational([list(config.columns[e - 1]) for e in elements])
        return col_rank[mask]

    circuits = []
    for mask in sorted(range(1, 1 << n), key=popcount):
        if rank_of(mask) >= popcount(mask):
            continue
        if not all(rank_of(mask & ~(1 << e)) == popcount(mask) - 1
                   for e in range(n) if mask >> e & 1):
            continue
        elements = list(iter_elements(mask))
        kernel = kernel_vector(config.column_rows(elements), len(elements))
        if kernel is None:
            raise RuntimeError(f"circuit {elements} does not have nullity one")
        pos = {e for e, v in zip(elements, kernel) if v > 0}
        neg = {e for e, v in zip(elements, kernel) if v < 0}
        X = SignedSet(pos, neg)
        circuits.extend((X, -X))
    return SignedCircuitSet(n, circuits)


# -- Gaussian conditional independence ----------------------------------------


def gaussian_ci(sigma: RationalMatrix) -> CIStructure:
    """Statements (i j | K) whose almost-principal minor vanishes.

    The minor takes rows i + K and columns j + K (i and j first, then K
    ascending; determinant vanishing does not depend on the order).  The
    matrix must be symmetric positive definite, verified exactly through
    the leading principal minors.
    """
    asym = sigma.is_symmetric()
    if asym is not None:
        raise NotSymmetricError(
            f"matrix is not symmetric at entry {asym}", entry=asym)
    n = sigma.rows
    check_ground(n, low=1)
    for k in range(1, n + 1):
        minor = sigma.submatrix_det(range(1, k + 1), range(1, k + 1))
        if minor <= 0:
            raise NotPositiveDefiniteError(
                f"leading principal minor of order {k} is {minor}",
                order=k, minor=minor)
    members = []
    for s in statement_index(n):
        K = sorted(s.K)
        if sigma.submatrix_det([s.i] + K, [s.j] + K) == 0:
            members.append(s)
    return CIStructure(n, members)


# -- reproducible random inputs ------------------------------------------------


def random_covariance(n: int, seed: int) -> RationalMatrix:
    """A random integer positive definite matrix: A^T A + I, entries of A in -2..2."""
    rng = random.Random(seed)
    a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    entries = [[sum(a[k][r] * a[k][c] for k in range(n)) + (1 if r == c else 0)
                for c in range(n)] for r in range(n)]
    return RationalMatrix(entries)


def random_configuration(seed: int, max_dim: int = 4, max_cols: int = 7,
                         bound: int = 3) -> VectorConfiguration | None:
    """A random rational configuration without zero columns, or None.

    Entries are uniform integers in -bound..bound; a draw containing a
    zero column (a loop) or no nonzero entry at all is rejected so that
    the oriented-matroid constructions that need looplessness apply.
    """
    rng = random.Random(seed)
    d = rng.randint(1, max_dim)
    n = rng.randint(max(2, d), max_cols)
    columns = [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(n)]
    if any(all(v == 0 for v in col) for col in columns):
        return None
    return VectorConfiguration(columns)


@lru_cache(maxsize=None)
def seeded_configurations(count: int, start_seed: int = 0) -> tuple[VectorConfiguration, ...]:
    """The first ``count`` accepted draws of :func:`random_configuration`."""
    out = []
    seed = start_seed
    while len(out) < count:
        config = random_configuration(seed)
        if config is not None:
            out.append(config)
        seed += 1
    return tuple(out)
