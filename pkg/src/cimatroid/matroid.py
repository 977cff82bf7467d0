"""Matroids as rank functions, and their conversions to CI-structures.

The two directions of the matroid/CI correspondence:

* ``ci_of_matroid``: (i j | K) is a member iff r(iK) + r(jK) = r(ijK) + r(K).
* ``rank_from_ci``: recover r from a structure that passes (SG) + (MCI) by
  the recursion r(ijK) = r(iK) + r(jK) - r(K) - [(i j | K) not a member],
  seeded with r(empty) = 0 and r(singleton) = 1.

``rank_from_ci`` evaluates every decomposition of every set and insists
they agree, turning the well-definedness argument behind the recursion
into a machine-checked invariant.

Rank tables are dense numpy arrays indexed by subset bitmask (element e
is bit e-1).  Matroids cache circuits, bases and independent sets eagerly
at construction, so instances are read-only afterwards and safe to share.

Set functions with exact rational values support the semimatroid
construction [[h]]; membership there is decided by exact equality, never
by floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .axioms import check_mci, check_semigraphoid
from .bitsets import iter_elements, mask_of, masks_by_size, popcount, set_of
from .ci import CIStatement, CIStructure, check_ground, statement_index
from .errors import AxiomError, CapacityError, InternalCheckError, LoopError, SubmodularityError

ENUMERATION_MAX_GROUND = 5


class RankFunction:
    """An integer set function on 2^[n], stored densely by subset mask."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        check_ground(n)
        try:
            arr = np.array(values, dtype=np.int16)
        except OverflowError as exc:
            raise ValueError(f"rank value out of range: {exc}") from exc
        if arr.shape != (1 << n,):
            raise ValueError(f"rank table must have 2**{n} entries, got {arr.shape}")
        arr.flags.writeable = False
        self.n = n
        self.values = arr

    def of_mask(self, mask: int) -> int:
        return int(self.values[mask])

    def __call__(self, S: Iterable[int]) -> int:
        return self.of_mask(mask_of(S))

    def __eq__(self, other):
        if not isinstance(other, RankFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.n, self.values.tobytes()))

    def __repr__(self):
        return f"RankFunction(n={self.n}, rank={self.of_mask((1 << self.n) - 1)})"


@dataclass(frozen=True)
class RankAxiomFailure:
    """One failing rank axiom instance: the kind and the sets involved."""

    kind: str  # "normalization" | "monotone" | "unit_increase" | "submodular"
    sets: tuple[frozenset, ...]
    detail: str


def validate_matroid(rank: RankFunction) -> list[RankAxiomFailure]:
    """All failures of r(empty) = 0, unit increase, monotonicity, submodularity.

    Submodularity is checked in the local exchange form
    r(A+i) + r(A+j) >= r(A+ij) + r(A), which is equivalent to the
    pairwise inequality for every set function; the reported pair is
    (A+i, A+j).
    """
    n, values = rank.n, rank.values
    failures = []
    if values[0] != 0:
        failures.append(RankAxiomFailure(
            "normalization", (frozenset(),), f"r(empty set) = {int(values[0])} != 0"))
    for mask in range(1 << n):
        A = None
        for e in range(n):
            if mask >> e & 1:
                continue
            step = int(values[mask | (1 << e)]) - int(values[mask])
            if step in (0, 1):
                continue
            if A is None:
                A = set_of(mask)
            kind = "monotone" if step < 0 else "unit_increase"
            failures.append(RankAxiomFailure(
                kind, (A, frozenset({e + 1})),
                f"r({sorted(A)} + {e + 1}) - r({sorted(A)}) = {step}"))
    for mask in range(1 << n):
        outside = [e for e in range(n) if not mask >> e & 1]
        for ei, ej in itertools.combinations(outside, 2):
            lhs = int(values[mask | (1 << ei)]) + int(values[mask | (1 << ej)])
            rhs = int(values[mask | (1 << ei) | (1 << ej)]) + int(values[mask])
            if lhs < rhs:
                A, B = set_of(mask | (1 << ei)), set_of(mask | (1 << ej))
                failures.append(RankAxiomFailure(
                    "submodular", (A, B),
                    f"r({sorted(A)}) + r({sorted(B)}) = {lhs} < {rhs}"))
    return failures


class Matroid:
    """A validated matroid with eagerly cached circuits, bases and independents."""

    __slots__ = ("n", "rank", "_independent", "_circuit_masks", "_basis_masks")

    def __init__(self, rank: RankFunction):
        failures = validate_matroid(rank)
        if failures:
            raise AxiomError(
                f"rank function violates the matroid axioms ({failures[0].detail})",
                failures)
        n = rank.n
        independent = np.zeros(1 << n, dtype=bool)
        for mask in range(1 << n):
            independent[mask] = rank.values[mask] == popcount(mask)
        independent.flags.writeable = False
        circuit_masks = []
        for mask in range(1, 1 << n):
            if independent[mask]:
                continue
            if all(independent[mask & ~(1 << e)] for e in range(n) if mask >> e & 1):
                circuit_masks.append(mask)
        full_rank = rank.of_mask((1 << n) - 1)
        basis_masks = [m for m in range(1 << n)
                       if independent[m] and popcount(m) == full_rank]
        self.n = n
        self.rank = rank
        self._independent = independent
        self._circuit_masks = tuple(circuit_masks)
        self._basis_masks = tuple(basis_masks)

    @classmethod
    def from_values(cls, n: int, values) -> "Matroid":
        return cls(RankFunction(n, values))

    @classmethod
    def from_independent_masks(cls, n: int, independent) -> "Matroid":
        """Build the rank table from a dense independence flag array."""
        values = np.zeros(1 << n, dtype=np.int16)
        for mask in masks_by_size(n):
            if independent[mask]:
                values[mask] = popcount(mask)
            else:
                values[mask] = max(values[mask & ~(1 << e)]
                                   for e in range(n) if mask >> e & 1)
        return cls(RankFunction(n, values))

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        """Rank via r(S) = max |S & B| over the given bases."""
        basis_masks = [mask_of(B) for B in bases]
        if not basis_masks:
            raise ValueError("a matroid needs at least one basis")
        values = [max(popcount(m & B) for B in basis_masks) for m in range(1 << n)]
        return cls(RankFunction(n, values))

    # -- cached families ---------------------------------------------------

    @property
    def circuits(self) -> tuple[frozenset, ...]:
        return tuple(set_of(m) for m in self._circuit_masks)

    @property
    def circuit_masks(self) -> tuple[int, ...]:
        return self._circuit_masks

    @property
    def bases(self) -> tuple[frozenset, ...]:
        return tuple(set_of(m) for m in self._basis_masks)

    def independent_family(self) -> "SetFamily":
        members = frozenset(set_of(m) for m in np.flatnonzero(self._independent))
        return SetFamily(self.n, members)

    def is_independent(self, S: Iterable[int]) -> bool:
        return bool(self._independent[mask_of(S)])

    def rank_of(self, S: Iterable[int]) -> int:
        return self.rank(S)

    def closure(self, S: Iterable[int]) -> frozenset[int]:
        mask = mask_of(S)
        r = self.rank.of_mask(mask)
        return frozenset(e + 1 for e in range(self.n)
                         if self.rank.of_mask(mask | (1 << e)) == r)

    def cocircuits(self) -> tuple[frozenset, ...]:
        return self.dual().circuits

    def loops(self) -> frozenset[int]:
        return frozenset(e for e in range(1, self.n + 1) if self.rank((e,)) == 0)

    def coloops(self) -> frozenset[int]:
        full = self.rank.of_mask((1 << self.n) - 1)
        return frozenset(e for e in range(1, self.n + 1)
                         if self.rank.of_mask(((1 << self.n) - 1) & ~(1 << (e - 1))) == full - 1)

    def is_loopless(self) -> bool:
        return not self.loops()

    # -- matroid operations -------------------------------------------------

    def delete(self, removed: Iterable[int]) -> "Matroid":
        removed_mask = self._removed_mask(removed)
        keep = [e for e in range(self.n) if not removed_mask >> e & 1]
        values = [self.rank.of_mask(_spread(mask, keep)) for mask in range(1 << len(keep))]
        return Matroid(RankFunction(len(keep), values))

    def contract(self, removed: Iterable[int]) -> "Matroid":
        removed_mask = self._removed_mask(removed)
        keep = [e for e in range(self.n) if not removed_mask >> e & 1]
        base = self.rank.of_mask(removed_mask)
        values = [self.rank.of_mask(_spread(mask, keep) | removed_mask) - base
                  for mask in range(1 << len(keep))]
        return Matroid(RankFunction(len(keep), values))

    def dual(self) -> "Matroid":
        full = (1 << self.n) - 1
        total = self.rank.of_mask(full)
        values = [popcount(m) + self.rank.of_mask(full & ~m) - total
                  for m in range(1 << self.n)]
        return Matroid(RankFunction(self.n, values))

    def direct_sum(self, other: "Matroid") -> "Matroid":
        n = self.n + other.n
        check_ground(n)
        low = (1 << self.n) - 1
        values = [self.rank.of_mask(m & low) + other.rank.of_mask(m >> self.n)
                  for m in range(1 << n)]
        return Matroid(RankFunction(n, values))

    def _removed_mask(self, removed) -> int:
        mask = mask_of(removed)
        if mask >> self.n:
            raise ValueError(f"{sorted(iter_elements(mask))} is not a subset of [{self.n}]")
        return mask

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.rank == other.rank

    def __hash__(self):
        return hash(self.rank)

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank.of_mask((1 << self.n) - 1)}, circuits={len(self._circuit_masks)})"


def _spread(mask: int, positions: list[int]) -> int:
    """Place the bits of mask at the given original bit positions."""
    out = 0
    for t, p in enumerate(positions):
        if mask >> t & 1:
            out |= 1 << p
    return out


def uniform(r_rank: int, n: int) -> Matroid:
    """The uniform matroid: every set of size at most r_rank is independent."""
    check_ground(n)
    if not 0 <= r_rank <= n:
        raise ValueError(f"uniform rank must satisfy 0 <= r <= {n}, got {r_rank}")
    values = [min(popcount(m), r_rank) for m in range(1 << n)]
    return Matroid(RankFunction(n, values))


def normalize_loopless(M: Matroid) -> Matroid:
    """Replace every loop by a coloop; the CI-structure is unchanged.

    Contractions and duals of loopless matroids can acquire loops; this is
    the explicit normalization applied before converting such results to
    CI-structures.
    """
    loop_mask = mask_of(M.loops())
    if not loop_mask:
        return M
    values = [M.rank.of_mask(m & ~loop_mask) + popcount(m & loop_mask)
              for m in range(1 << M.n)]
    return Matroid(RankFunction(M.n, values))


def ci_of_matroid(M: Matroid) -> CIStructure:
    """The CI-structure of a loopless matroid via the modular equalities."""
    loops = M.loops()
    if loops:
        e = min(loops)
        raise LoopError(f"element {e} is a loop; normalize_loopless first", element=e)
    r = M.rank.of_mask
    members = []
    for s in statement_index(M.n):
        K = mask_of(s.K)
        iK = K | 1 << (s.i - 1)
        jK = K | 1 << (s.j - 1)
        if r(iK) + r(jK) == r(iK | jK) + r(K):
            members.append(s)
    return CIStructure(M.n, members)


def rank_from_ci(G: CIStructure) -> RankFunction:
    """Recover the rank function of the matroid defined by G.

    Requires G to pass (SG) and (MCI); raises .errors.AxiomError carrying
    the witnesses otherwise.  For each set of size >= 2 every decomposition
    into a pair plus rest is evaluated, and an InternalCheckError is raised
    if two decompositions ever disagree; with the axiom precondition in
    force that error is unreachable.
    """
    witnesses = check_mci(G) + check_semigraphoid(G)
    if witnesses:
        raise AxiomError(
            f"structure fails the matroid axioms ({len(witnesses)} witnesses)", witnesses)
    n = G.n
    values = np.zeros(1 << n, dtype=np.int16)
    for e in range(n):
        values[1 << e] = 1
    for mask in masks_by_size(n):
        if popcount(mask) < 2:
            continue
        elements = list(iter_elements(mask))
        candidates = set()
        for i, j in itertools.combinations(elements, 2):
            pair = (1 << (i - 1)) | (1 << (j - 1))
            K = mask & ~pair
            member = CIStatement(i, j, set_of(K)) in G
            candidates.add(int(values[mask & ~(1 << (j - 1))])
                           + int(values[mask & ~(1 << (i - 1))])
                           - int(values[K]) - (0 if member else 1))
        if len(candidates) != 1:
            raise InternalCheckError(
                f"rank recursion disagreed on {sorted(elements)}: candidates {sorted(candidates)}")
        values[mask] = candidates.pop()
    rank = RankFunction(n, values)
    failures = validate_matroid(rank)
    if failures:
        raise InternalCheckError(
            f"recovered rank table is not a matroid: {failures[0].detail}")
    return rank


class SetFamily:
    """A plain family of subsets of [n]; validity is up to the operations."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members: Iterable[Iterable[int]]):
        check_ground(n)
        self.n = n
        self.members = frozenset(frozenset(m) for m in members)

    def __contains__(self, S):
        return frozenset(S) in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self):
        return f"SetFamily(n={self.n}, members={len(self.members)})"


def independent_sets_from_ci(G: CIStructure) -> SetFamily:
    """Sets S whose full statement set over S lies inside G.

    S qualifies iff every (i j | K) with support inside S is a member;
    equivalently all of S's one-element-smaller subsets qualify and every
    (i j | S - ij) is a member, which is what the scan below uses.
    """
    n = G.n
    ok = np.zeros(1 << n, dtype=bool)
    for mask in masks_by_size(n):
        elements = list(iter_elements(mask))
        if len(elements) <= 1:
            ok[mask] = True
            continue
        if not all(ok[mask & ~(1 << (e - 1))] for e in elements):
            continue
        ok[mask] = all(
            CIStatement(i, j, set_of(mask & ~((1 << (i - 1)) | (1 << (j - 1))))) in G
            for i, j in itertools.combinations(elements, 2))
    return SetFamily(n, (set_of(m) for m in np.flatnonzero(ok)))


# -- circuit-level characterizations ----------------------------------------


def dependent_via_circuits(M: Matroid, s: CIStatement) -> bool:
    """Circuit form of conditional dependence for (i j | K).

    True iff some circuit C satisfies ij <= C <= ijK and at the same time
    every circuit inside ijK contains both of i, j or neither.
    """
    pair = (1 << (s.i - 1)) | (1 << (s.j - 1))
    box = mask_of(s.K) | pair
    inside = [c for c in M.circuit_masks if c & ~box == 0]
    if not any(c & pair == pair for c in inside):
        return False
    return all((c & pair == pair) or (c & pair == 0) for c in inside)


@dataclass(frozen=True)
class DependenceProfile:
    """Six equivalent views of conditional dependence of one statement.

    All six agree on every statement of a valid loopless matroid; the
    record keeps them separate so tests can assert the agreement.
    """

    strict_rank_inequality: bool     # r(iK) + r(jK) > r(ijK) + r(K)
    unit_rank_pattern: bool          # r(iK) = r(jK) = r(ijK) = r(K) + 1
    circuit_witness: bool            # dependent_via_circuits
    cocircuit_in_restriction: bool   # {i, j} is a cocircuit of M restricted to ijK
    every_basis_extends: bool        # every basis B of K has iB, jB bases of ijK
    some_basis_extends: bool         # some basis B of K has iB, jB bases of ijK

    def as_tuple(self) -> tuple[bool, ...]:
        return (self.strict_rank_inequality, self.unit_rank_pattern,
                self.circuit_witness, self.cocircuit_in_restriction,
                self.every_basis_extends, self.some_basis_extends)

    def consistent(self) -> bool:
        return len(set(self.as_tuple())) == 1


def dependence_profile(M: Matroid, s: CIStatement) -> DependenceProfile:
    r = M.rank.of_mask
    K = mask_of(s.K)
    bi, bj = 1 << (s.i - 1), 1 << (s.j - 1)
    iK, jK, ijK = K | bi, K | bj, K | bi | bj

    strict = r(iK) + r(jK) > r(ijK) + r(K)
    unit = r(iK) == r(jK) == r(ijK) == r(K) + 1
    circuit = dependent_via_circuits(M, s)

    # restriction of M to ijK, with {i, j} relabeled
    box = sorted(iter_elements(ijK))
    relabel = {e: t + 1 for t, e in enumerate(box)}
    restriction = M.delete(set(range(1, M.n + 1)) - set(box))
    pair = frozenset({relabel[s.i], relabel[s.j]})
    cocircuit = pair in set(restriction.cocircuits())

    rK = r(K)
    bases_of_K = [b for b in _submasks(K) if popcount(b) == rK and M._independent[b]]
    target = r(ijK)
    extends = []
    for b in bases_of_K:
        size = popcount(b) + 1
        extends.append(size == target and r(b | bi) == size and r(b | bj) == size)
    every = bool(extends) and all(extends)
    some = any(extends)
    return DependenceProfile(strict, unit, circuit, cocircuit, every, some)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# -- rational set functions and semimatroids ---------------------------------


class SetFunction:
    """An exact rational set function on 2^[n]."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        check_ground(n)
        values = tuple(Fraction(v) for v in values)
        if len(values) != 1 << n:
            raise ValueError(f"set function on [{n}] needs 2**{n} values, got {len(values)}")
        self.n = n
        self.values = values

    @classmethod
    def from_rank(cls, rank: RankFunction) -> "SetFunction":
        return cls(rank.n, (int(v) for v in rank.values))

    def of_mask(self, mask: int) -> Fraction:
        return self.values[mask]

    def __call__(self, S: Iterable[int]) -> Fraction:
        return self.values[mask_of(S)]

    def __add__(self, other: "SetFunction") -> "SetFunction":
        if self.n != other.n:
            raise ValueError("cannot add set functions on different ground sets")
        return SetFunction(self.n, (a + b for a, b in zip(self.values, other.values)))

    def __eq__(self, other):
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, self.values))


@dataclass(frozen=True)
class SubmodularityFailure:
    kind: str  # "normalization" | "exchange" | "pair"
    A: frozenset
    B: frozenset
    detail: str


def check_submodular(h: SetFunction, exhaustive: bool = False) -> list[SubmodularityFailure]:
    """Failures of h(empty) = 0 and submodularity.

    By default the exchange form h(A+i) + h(A+j) >= h(A+ij) + h(A) is
    checked, which is equivalent to the inequality over all pairs; pass
    ``exhaustive=True`` for the literal all-pairs scan.
    """
    failures = []
    if h.values[0] != 0:
        failures.append(SubmodularityFailure(
            "normalization", frozenset(), frozenset(),
            f"h(empty set) = {h.values[0]} != 0"))
    n = h.n
    if exhaustive:
        for a in range(1 << n):
            for b in range(1 << n):
                if h.values[a] + h.values[b] < h.values[a & b] + h.values[a | b]:
                    failures.append(SubmodularityFailure(
                        "pair", set_of(a), set_of(b),
                        f"h({sorted(set_of(a))}) + h({sorted(set_of(b))}) < h(meet) + h(join)"))
        return failures
    for mask in range(1 << n):
        outside = [e for e in range(n) if not mask >> e & 1]
        for ei, ej in itertools.combinations(outside, 2):
            A, B = mask | (1 << ei), mask | (1 << ej)
            if h.values[A] + h.values[B] < h.values[mask] + h.values[A | B]:
                failures.append(SubmodularityFailure(
                    "exchange", set_of(A), set_of(B),
                    f"h({sorted(set_of(A))}) + h({sorted(set_of(B))}) = "
                    f"{h.values[A] + h.values[B]} < {h.values[mask] + h.values[A | B]}"))
    return failures


def semimatroid_of_set_function(h: SetFunction) -> CIStructure:
    """Members are the statements where h is modular: h(iK)+h(jK) = h(ijK)+h(K)."""
    failures = check_submodular(h)
    if failures:
        raise SubmodularityError(
            f"set function is not submodular ({failures[0].detail})", failures)
    members = []
    for s in statement_index(h.n):
        K = mask_of(s.K)
        iK = K | 1 << (s.i - 1)
        jK = K | 1 << (s.j - 1)
        if h.values[iK] + h.values[jK] == h.values[iK | jK] + h.values[K]:
            members.append(s)
    return CIStructure(h.n, members)


# -- the forbidden-minor demonstration family --------------------------------


def g_family(m: int) -> CIStructure:
    """The full structure on [m] minus (1 2 |) and every full-support statement.

    Not a matroid: (MCI) fails at the pair (1 2 |), (1 3 | 2 4 ... m).
    """
    if m < 4:
        raise ValueError(f"the family is defined for m >= 4, got {m}")
    check_ground(m)
    members = [s for s in statement_index(m)
               if len(s.K) != m - 2 and not (s.i == 1 and s.j == 2 and not s.K)]
    return CIStructure(m, members)


# -- brute-force oracle enumeration ------------------------------------------


@lru_cache(maxsize=None)
def _enumerate_loopless_cached(n: int) -> tuple[Matroid, ...]:
    ground = list(range(1, n + 1))
    full = (1 << n) - 1
    found = []
    # Maximal independent sets of a matroid share one size, and mixed-size
    # antichains always fail augmentation, so candidate families are the
    # down-closures of nonempty collections of equal-size subsets.
    for r in range(n + 1):
        size_r = [mask_of(c) for c in itertools.combinations(ground, r)]
        for pick in range(1, 1 << len(size_r)):
            tops = [size_r[t] for t in range(len(size_r)) if pick >> t & 1]
            cover = 0
            for m in tops:
                cover |= m
            if cover != full:
                continue  # some element is a loop
            family = set()
            for top in tops:
                family.update(_submasks_list(top))
            if _satisfies_augmentation(family):
                independent = np.zeros(1 << n, dtype=bool)
                for m in family:
                    independent[m] = True
                found.append(Matroid.from_independent_masks(n, independent))
    return tuple(found)


def _submasks_list(mask: int) -> list[int]:
    return list(_submasks(mask))


def _satisfies_augmentation(family: set[int]) -> bool:
    members = sorted(family, key=popcount)
    for a in members:
        ca = popcount(a)
        for b in members:
            if popcount(b) <= ca:
                continue
            if not any(a | bit in family for bit in _single_bits(b & ~a)):
                return False
    return True


def _single_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def enumerate_loopless_matroids(n: int) -> list[Matroid]:
    """Every loopless matroid on [n], by filtered down-closed families.

    Exhaustive and duplicate-free; the known counts are 1, 2, 6, 27, 185
    for n = 1..5.  Capped at n = 5 because the candidate space is the set
    of antichains of the boolean lattice.
    """
    if not 1 <= n <= ENUMERATION_MAX_GROUND:
        raise CapacityError(f"matroid enumeration supports 1 <= n <= {ENUMERATION_MAX_GROUND}")
    return list(_enumerate_loopless_cached(n))


def gaussoid_matroid_decision(M: Matroid) -> bool:
    """True iff the matroid is a disjoint union of coloops and parallel pairs.

    Equivalently the circuits are pairwise disjoint 2-element sets; exactly
    these loopless matroids have gaussoid CI-structures.
    """
    if M.loops():
        raise LoopError("decision is defined for loopless matroids",
                        element=min(M.loops()))
    circuits = M.circuit_masks
    if any(popcount(c) != 2 for c in circuits):
        return False
    seen = 0
    for c in circuits:
        if c & seen:
            return False
        seen |= c
    return True
