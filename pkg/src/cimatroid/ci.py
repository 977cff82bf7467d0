"""Ground sets, CI-statements and CI-structures.

A conditional-independence statement ``(i j | K)`` asserts that the two
distinct elements i and j are independent given the conditioning set K,
which is disjoint from {i, j}.  The pair is unordered and is stored with
i < j.  A CI-structure is an arbitrary set of such statements over the
ground set {1, ..., n}; it is stored as a dense boolean table over the
fixed statement order provided by :class:`StatementIndex`.

Structures are immutable after construction and all operations return
fresh structures, so values can be shared freely across workers.

Ground sets are capped at 16 elements; the table for n = 16 already has
C(16,2) * 2**14 entries.  The empty ground set is allowed so that
deleting every element is well defined for the minor calculus.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .errors import CapacityError

MAX_GROUND = 16

#: Bound for operations that enumerate all 3**n deletion/contraction pairs
#: or all n! relabelings.
MINORS_MAX_GROUND = 10
ISOMORPHISM_MAX_GROUND = 10


def check_ground(n: int, *, low: int = 0) -> None:
    if not low <= n <= MAX_GROUND:
        raise CapacityError(f"ground set size {n} outside supported range [{low}, {MAX_GROUND}]")


class CIStatement:
    """One statement (i j | K); i < j after normalization, K disjoint."""

    __slots__ = ("i", "j", "K")

    def __init__(self, i: int, j: int, K: Iterable[int] = ()):
        if i == j:
            raise ValueError(f"statement needs two distinct elements, got i = j = {i}")
        if i > j:
            i, j = j, i
        K = frozenset(K)
        if i in K or j in K:
            raise ValueError(f"conditioning set {sorted(K)} meets the pair ({i}, {j})")
        self.i = i
        self.j = j
        self.K = K

    def support(self) -> frozenset[int]:
        return self.K | {self.i, self.j}

    def relabel(self, mapping) -> "CIStatement":
        return CIStatement(mapping[self.i], mapping[self.j], {mapping[k] for k in self.K})

    def __eq__(self, other):
        if not isinstance(other, CIStatement):
            return NotImplemented
        return self.i == other.i and self.j == other.j and self.K == other.K

    def __hash__(self):
        return hash((self.i, self.j, self.K))

    def __repr__(self):
        return f"CIStatement({self.i}, {self.j}, {sorted(self.K)})"

    def __str__(self):
        ktext = " ".join(str(k) for k in sorted(self.K))
        return f"({self.i} {self.j} | {ktext})" if ktext else f"({self.i} {self.j} |)"


def as_statement(s) -> CIStatement:
    if isinstance(s, CIStatement):
        return s
    i, j, K = s
    return CIStatement(i, j, K)


class StatementIndex:
    """Dense total order on all C(n,2) * 2**(n-2) statements over [n].

    Pairs (i, j) run lexicographically; for a fixed pair the conditioning
    sets follow the binary counter over the remaining elements taken in
    increasing order.  The order is fixed so that serialized structures
    are byte-stable.
    """

    __slots__ = ("n", "_statements", "_lookup")

    def __init__(self, n: int):
        check_ground(n)
        statements = []
        for i, j in itertools.combinations(range(1, n + 1), 2):
            rest = [e for e in range(1, n + 1) if e != i and e != j]
            for bits in range(1 << len(rest)):
                K = frozenset(rest[t] for t in range(len(rest)) if bits >> t & 1)
                statements.append(CIStatement(i, j, K))
        self.n = n
        self._statements = tuple(statements)
        self._lookup = {s: t for t, s in enumerate(statements)}

    def __len__(self):
        return len(self._statements)

    def __iter__(self):
        return iter(self._statements)

    def __getitem__(self, idx: int) -> CIStatement:
        return self._statements[idx]

    def index_of(self, statement: CIStatement) -> int:
        try:
            return self._lookup[statement]
        except KeyError:
            raise ValueError(f"{statement} is not a statement over [{self.n}]") from None


@lru_cache(maxsize=None)
def statement_index(n: int) -> StatementIndex:
    return StatementIndex(n)


def statement_count(n: int) -> int:
    """Number of statements over [n], i.e. C(n,2) * 2**(n-2)."""
    if not 2 <= n <= MAX_GROUND:
        raise CapacityError(f"statement_count supports 2 <= n <= {MAX_GROUND}, got {n}")
    return math.comb(n, 2) << (n - 2)


def removal_relabeling(n: int, removed: Iterable[int]) -> dict[int, int]:
    """Map from the kept elements of [n] to the contiguous labels 1..m.

    Deletion and contraction report their relabeling through this map; it
    preserves the relative order of the surviving elements.
    """
    removed = frozenset(removed)
    keep = [e for e in range(1, n + 1) if e not in removed]
    return {e: t + 1 for t, e in enumerate(keep)}


class CIStructure:
    """A set of CI-statements over [n] as a dense membership table."""

    __slots__ = ("n", "_table")

    def __init__(self, n: int, members: Iterable = ()):
        index = statement_index(n)
        table = np.zeros(len(index), dtype=bool)
        for s in members:
            table[index.index_of(as_statement(s))] = True
        table.flags.writeable = False
        self.n = n
        self._table = table

    @classmethod
    def from_table(cls, n: int, table) -> "CIStructure":
        out = cls.__new__(cls)
        arr = np.array(table, dtype=bool)
        if arr.shape != (len(statement_index(n)),):
            raise ValueError(f"table length {arr.shape} does not match ground set [{n}]")
        arr.flags.writeable = False
        out.n = n
        out._table = arr
        return out

    @classmethod
    def empty(cls, n: int) -> "CIStructure":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "CIStructure":
        return cls.from_table(n, np.ones(len(statement_index(n)), dtype=bool))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "CIStructure":
        count = len(statement_index(n))
        return cls.from_table(n, [(mask >> t) & 1 for t in range(count)])

    @property
    def table(self) -> np.ndarray:
        return self._table

    def as_mask(self) -> int:
        """The membership table as a little-endian bit integer."""
        mask = 0
        for t in np.flatnonzero(self._table):
            mask |= 1 << int(t)
        return mask

    def __contains__(self, statement) -> bool:
        s = as_statement(statement)
        index = statement_index(self.n)
        if s not in index._lookup:
            return False
        return bool(self._table[index._lookup[s]])

    def __len__(self):
        return int(self._table.sum())

    def __eq__(self, other):
        if not isinstance(other, CIStructure):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._table, other._table))

    def __hash__(self):
        return hash((self.n, self._table.tobytes()))

    def __repr__(self):
        return f"CIStructure(n={self.n}, members={len(self)}/{len(self._table)})"

    def statements(self) -> tuple[CIStatement, ...]:
        index = statement_index(self.n)
        return tuple(index[int(t)] for t in np.flatnonzero(self._table))

    def conditioning_profile(self) -> tuple[int, ...]:
        """Member counts per conditioning-set size; relabeling-invariant."""
        counts = [0] * max(self.n - 1, 1)
        for s in self.statements():
            counts[len(s.K)] += 1
        return tuple(counts)

    def relabel(self, mapping) -> "CIStructure":
        return CIStructure(self.n, (s.relabel(mapping) for s in self.statements()))

    # -- structural operations -------------------------------------------

    def delete(self, removed: Iterable[int]) -> "CIStructure":
        """Keep the statements whose support avoids ``removed``, relabeled.

        The relabeling is ``removal_relabeling(n, removed)``.
        """
        removed = self._check_elements(removed)
        relab = removal_relabeling(self.n, removed)
        members = [s.relabel(relab) for s in self.statements() if not (s.support() & removed)]
        return CIStructure(len(relab), members)

    def contract(self, removed: Iterable[int]) -> "CIStructure":
        """Condition on ``removed``: (i j | K) survives iff (i j | K + removed) is a member."""
        removed = self._check_elements(removed)
        relab = removal_relabeling(self.n, removed)
        inverse = {new: old for old, new in relab.items()}
        members = []
        for s in statement_index(len(relab)):
            old = CIStatement(inverse[s.i], inverse[s.j], {inverse[k] for k in s.K} | removed)
            if old in self:
                members.append(s)
        return CIStructure(len(relab), members)

    def dual(self) -> "CIStructure":
        """Complement every conditioning set inside the rest of the ground set."""
        ground = frozenset(range(1, self.n + 1))
        members = [CIStatement(s.i, s.j, ground - s.support()) for s in self.statements()]
        return CIStructure(self.n, members)

    def direct_sum(self, other: "CIStructure") -> "CIStructure":
        """Juxtapose two structures; cross-block pairs are always independent.

        ``other`` is placed on the elements n+1, ..., n+m.  A statement with
        both endpoints in one block is a member iff its trace on that block
        (conditioning set intersected with the block) is a member there.
        """
        n1, n2 = self.n, other.n
        check_ground(n1 + n2)
        members = []
        for s in statement_index(n1 + n2):
            if s.i <= n1 < s.j:
                members.append(s)
            elif s.j <= n1:
                if CIStatement(s.i, s.j, {k for k in s.K if k <= n1}) in self:
                    members.append(s)
            else:
                shifted = CIStatement(s.i - n1, s.j - n1, {k - n1 for k in s.K if k > n1})
                if shifted in other:
                    members.append(s)
        return CIStructure(n1 + n2, members)

    def _check_elements(self, elements) -> frozenset[int]:
        elements = frozenset(elements)
        if not elements <= frozenset(range(1, self.n + 1)):
            raise ValueError(f"{sorted(elements)} is not a subset of [{self.n}]")
        return elements


class Minor(NamedTuple):
    structure: CIStructure
    deleted: frozenset
    contracted: frozenset
    proper: bool


def minors(G: CIStructure) -> list[Minor]:
    """All 3**n minors of G, one per disjoint (deleted, contracted) pair.

    Deletion and contraction commute on disjoint sets, so the order of
    application does not matter; this applies deletion first.
    """
    if G.n > MINORS_MAX_GROUND:
        raise CapacityError(f"minor enumeration is capped at n <= {MINORS_MAX_GROUND}")
    out = []
    for assign in itertools.product((0, 1, 2), repeat=G.n):
        deleted = frozenset(e for e in range(1, G.n + 1) if assign[e - 1] == 1)
        contracted = frozenset(e for e in range(1, G.n + 1) if assign[e - 1] == 2)
        relab = removal_relabeling(G.n, deleted)
        m = G.delete(deleted).contract({relab[e] for e in contracted})
        out.append(Minor(m, deleted, contracted, bool(deleted or contracted)))
    return out


def isomorphic(G1: CIStructure, G2: CIStructure) -> Optional[dict[int, int]]:
    """A relabeling with relabel(G1) == G2, or None.

    Brute force over all n! permutations behind a cheap prefilter: the
    member count per conditioning-set size is relabeling-invariant.
    """
    if G1.n != G2.n:
        raise ValueError("isomorphism needs equal ground-set sizes")
    if G1.n > ISOMORPHISM_MAX_GROUND:
        raise CapacityError(f"isomorphism search is capped at n <= {ISOMORPHISM_MAX_GROUND}")
    if G1.conditioning_profile() != G2.conditioning_profile():
        return None
    statements = G1.statements()
    for perm in itertools.permutations(range(1, G1.n + 1)):
        mapping = dict(zip(range(1, G1.n + 1), perm))
        if CIStructure(G1.n, (s.relabel(mapping) for s in statements)) == G2:
            return mapping
    return None
