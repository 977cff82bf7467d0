"""Axiom checkers for unoriented CI-structures.

Implemented axiom schemata, quantified over every tuple of pairwise
disjoint singletons i, j, l and sets K, L for which the statements are
well formed:

* semigraphoid (SG):   (ij|K), (il|jK) members  =>  (il|K), (ij|lK) members
* matroid rule (MCI):  (ij|K) not a member      =>  (il|jKL) member
* gaussoid rules:
    intersection (Int):     (ij|kL), (ik|jL)  =>  (ij|L), (ik|L)
    composition (Comp):     (ij|L), (ik|L)    =>  (ij|kL), (ik|jL)
    weak transitivity (WT): (ij|L), (ij|kL)   =>  (ik|L) or (jk|L)

A structure satisfies SG and MCI together exactly when it is the
CI-structure of a loopless matroid; ``is_matroid_ci`` is the early-exit
decision used by enumeration loops, while the ``check_*`` functions
materialize one :class:`ViolationWitness` per failing instantiation,
ordered by the statement index of the failing conclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ci import CIStatement, CIStructure, statement_index


@dataclass(frozen=True)
class ViolationWitness:
    """One failing axiom instantiation.

    ``elements`` holds the singletons in rule order, ``sets`` the
    conditioning sets (K, and L where the rule has one).  ``detail`` is a
    human-readable account of which premises held and which conclusion
    failed.  Replaying the witness against the structure it came from
    reproduces the failure (see :func:`witness_replays`).
    """

    axiom: str
    elements: tuple[int, ...]
    sets: tuple[frozenset, ...]
    detail: str

    def format_line(self) -> str:
        """Machine-readable form ``AXIOM i j l | K ; L``."""
        elems = " ".join(str(e) for e in self.elements)
        K = " ".join(str(k) for k in sorted(self.sets[0]))
        L = " ".join(str(k) for k in sorted(self.sets[1])) if len(self.sets) > 1 else ""
        return f"{self.axiom} {elems} | {K} ; {L}".rstrip()


def _subsets(pool):
    pool = tuple(pool)
    for bits in range(1 << len(pool)):
        yield frozenset(pool[t] for t in range(len(pool)) if bits >> t & 1)


def _disjoint_pairs(pool):
    """All ordered pairs (K, L) of disjoint subsets of pool."""
    pool = tuple(pool)
    for assign in itertools.product((0, 1, 2), repeat=len(pool)):
        K = frozenset(pool[t] for t in range(len(pool)) if assign[t] == 1)
        L = frozenset(pool[t] for t in range(len(pool)) if assign[t] == 2)
        yield K, L


def _ground(n):
    return range(1, n + 1)


def _rest(n, *excluded):
    return [e for e in _ground(n) if e not in excluded]


def check_semigraphoid(G: CIStructure) -> list[ViolationWitness]:
    """All failing instantiations of (SG); empty iff G is a semigraphoid."""
    index = statement_index(G.n)
    found = []
    for i, j, l in itertools.permutations(_ground(G.n), 3):
        for K in _subsets(_rest(G.n, i, j, l)):
            if CIStatement(i, j, K) not in G or CIStatement(i, l, K | {j}) not in G:
                continue
            conclusions = (CIStatement(i, l, K), CIStatement(i, j, K | {l}))
            missing = [s for s in conclusions if s not in G]
            if missing:
                detail = (
                    f"premises {CIStatement(i, j, K)} and {CIStatement(i, l, K | {j})} hold; "
                    f"missing: {', '.join(map(str, missing))}"
                )
                key = min(index.index_of(s) for s in missing)
                found.append((key, (i, j, l), ViolationWitness("SG", (i, j, l), (K,), detail)))
    found.sort(key=lambda t: t[:2])
    return [w for _, _, w in found]


def check_mci(G: CIStructure) -> list[ViolationWitness]:
    """All failing instantiations of (MCI).

    Equivalently: for disjoint i, j, l, K, L at least one of (ij|K) and
    (il|jKL) must be a member.
    """
    index = statement_index(G.n)
    found = []
    for i, j, l in itertools.permutations(_ground(G.n), 3):
        for K, L in _disjoint_pairs(_rest(G.n, i, j, l)):
            premise = CIStatement(i, j, K)
            conclusion = CIStatement(i, l, K | L | {j})
            if premise not in G and conclusion not in G:
                detail = f"premise {premise} is a non-member; conclusion {conclusion} fails"
                found.append(
                    (index.index_of(conclusion), (i, j, l),
                     ViolationWitness("MCI", (i, j, l), (K, L), detail))
                )
    found.sort(key=lambda t: t[:2])
    return [w for _, _, w in found]


def check_gaussoid(G: CIStructure) -> list[ViolationWitness]:
    """Failing instantiations of the gaussoid axioms (Int), (Comp), (WT), (SG).

    Gaussoids are semigraphoids by definition, so the semigraphoid rule is
    part of the check; its witnesses are merged into the same
    conclusion-index order as the other three schemata.
    """
    index = statement_index(G.n)
    found = []
    for i, j, l in itertools.permutations(_ground(G.n), 3):
        for K in _subsets(_rest(G.n, i, j, l)):
            if CIStatement(i, j, K) not in G or CIStatement(i, l, K | {j}) not in G:
                continue
            conclusions = (CIStatement(i, l, K), CIStatement(i, j, K | {l}))
            missing = [s for s in conclusions if s not in G]
            if missing:
                detail = (
                    f"premises {CIStatement(i, j, K)} and {CIStatement(i, l, K | {j})} hold; "
                    f"missing: {', '.join(map(str, missing))}"
                )
                key = min(index.index_of(s) for s in missing)
                found.append((key, (i, j, l), ViolationWitness("SG", (i, j, l), (K,), detail)))
    for i in _ground(G.n):
        for j, k in itertools.combinations(_rest(G.n, i), 2):
            for L in _subsets(_rest(G.n, i, j, k)):
                inner = (CIStatement(i, j, L | {k}), CIStatement(i, k, L | {j}))
                outer = (CIStatement(i, j, L), CIStatement(i, k, L))
                if all(s in G for s in inner):
                    missing = [s for s in outer if s not in G]
                    if missing:
                        detail = (
                            f"premises {inner[0]} and {inner[1]} hold; "
                            f"missing: {', '.join(map(str, missing))}"
                        )
                        key = min(index.index_of(s) for s in missing)
                        found.append((key, (i, j, k), ViolationWitness("Int", (i, j, k), (L,), detail)))
                if all(s in G for s in outer):
                    missing = [s for s in inner if s not in G]
                    if missing:
                        detail = (
                            f"premises {outer[0]} and {outer[1]} hold; "
                            f"missing: {', '.join(map(str, missing))}"
                        )
                        key = min(index.index_of(s) for s in missing)
                        found.append((key, (i, j, k), ViolationWitness("Comp", (i, j, k), (L,), detail)))
    for i, j in itertools.combinations(_ground(G.n), 2):
        for k in _rest(G.n, i, j):
            for L in _subsets(_rest(G.n, i, j, k)):
                premises = (CIStatement(i, j, L), CIStatement(i, j, L | {k}))
                options = (CIStatement(i, k, L), CIStatement(j, k, L))
                if all(s in G for s in premises) and not any(s in G for s in options):
                    detail = (
                        f"premises {premises[0]} and {premises[1]} hold; "
                        f"neither {options[0]} nor {options[1]} is a member"
                    )
                    key = min(index.index_of(s) for s in options)
                    found.append((key, (i, j, k), ViolationWitness("WT", (i, j, k), (L,), detail)))
    found.sort(key=lambda t: (t[0], t[2].axiom, t[1]))
    return [w for _, _, w in found]


def witness_replays(G: CIStructure, w: ViolationWitness) -> bool:
    """Re-run the instantiation named by the witness; True iff it still fails."""
    if w.axiom == "SG":
        i, j, l = w.elements
        (K,) = w.sets
        return (
            CIStatement(i, j, K) in G
            and CIStatement(i, l, K | {j}) in G
            and (CIStatement(i, l, K) not in G or CIStatement(i, j, K | {l}) not in G)
        )
    if w.axiom == "MCI":
        i, j, l = w.elements
        K, L = w.sets
        return CIStatement(i, j, K) not in G and CIStatement(i, l, K | L | {j}) not in G
    if w.axiom == "Int":
        i, j, k = w.elements
        (L,) = w.sets
        return (
            CIStatement(i, j, L | {k}) in G
            and CIStatement(i, k, L | {j}) in G
            and (CIStatement(i, j, L) not in G or CIStatement(i, k, L) not in G)
        )
    if w.axiom == "Comp":
        i, j, k = w.elements
        (L,) = w.sets
        return (
            CIStatement(i, j, L) in G
            and CIStatement(i, k, L) in G
            and (CIStatement(i, j, L | {k}) not in G or CIStatement(i, k, L | {j}) not in G)
        )
    if w.axiom == "WT":
        i, j, k = w.elements
        (L,) = w.sets
        return (
            CIStatement(i, j, L) in G
            and CIStatement(i, j, L | {k}) in G
            and CIStatement(i, k, L) not in G
            and CIStatement(j, k, L) not in G
        )
    raise ValueError(f"unknown axiom tag {w.axiom!r}")


# -- early-exit boolean variants ------------------------------------------

def satisfies_semigraphoid(G: CIStructure) -> bool:
    for i, j, l in itertools.permutations(_ground(G.n), 3):
        for K in _subsets(_rest(G.n, i, j, l)):
            if CIStatement(i, j, K) in G and CIStatement(i, l, K | {j}) in G:
                if CIStatement(i, l, K) not in G or CIStatement(i, j, K | {l}) not in G:
                    return False
    return True


def satisfies_mci(G: CIStructure) -> bool:
    for i, j, l in itertools.permutations(_ground(G.n), 3):
        for K, L in _disjoint_pairs(_rest(G.n, i, j, l)):
            if CIStatement(i, j, K) not in G and CIStatement(i, l, K | L | {j}) not in G:
                return False
    return True


def is_matroid_ci(G: CIStructure) -> bool:
    """True iff G satisfies both (SG) and (MCI)."""
    return satisfies_mci(G) and satisfies_semigraphoid(G)


def is_gaussoid(G: CIStructure) -> bool:
    return not check_gaussoid(G)


# -- violation patterns on the dense table, for exhaustive scans -----------

def mask_rule_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Compile (SG) and (MCI) into index patterns over the statement table.

    Returns ``(mci, sg)`` where a structure encoded as a bit mask violates

    * MCI  iff for some row (a, b) both bits are clear,
    * SG   iff for some row (a, b, c) bits a and b are set and c is clear.

    Rows are deduplicated and sorted, so the kernels that consume them are
    deterministic.
    """
    index = statement_index(n)
    mci = set()
    sg = set()
    for i, j, l in itertools.permutations(_ground(n), 3):
        rest = _rest(n, i, j, l)
        for K, L in _disjoint_pairs(rest):
            a = index.index_of(CIStatement(i, j, K))
            b = index.index_of(CIStatement(i, l, K | L | {j}))
            mci.add((min(a, b), max(a, b)))
        for K in _subsets(rest):
            a = index.index_of(CIStatement(i, j, K))
            b = index.index_of(CIStatement(i, l, K | {j}))
            lo, hi = min(a, b), max(a, b)
            for conclusion in (CIStatement(i, l, K), CIStatement(i, j, K | {l})):
                sg.add((lo, hi, index.index_of(conclusion)))
    mci_arr = np.array(sorted(mci), dtype=np.int64).reshape(-1, 2)
    sg_arr = np.array(sorted(sg), dtype=np.int64).reshape(-1, 3)
    return mci_arr, sg_arr
