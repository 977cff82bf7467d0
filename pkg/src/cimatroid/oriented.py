"""Signed circuits, oriented CI-structures and chirotopes.

An oriented matroid enters through its signed circuits: signed subsets
satisfying the four circuit axioms

* (OC0) the empty signed set is not a circuit,
* (OC1) the collection is closed under negation,
* (OC2) supports are pairwise incomparable up to sign,
* (OC3) elimination: for X != -Y and e in X+ & Y-, some circuit Z has
  Z+ inside (X+ | Y+) - e and Z- inside (X- | Y-) - e,

together with the strong form (OC3'), which additionally retains a
prescribed element f and is equivalent to (OC3) under (OC0)-(OC2).

The associated oriented CI-structure assigns sign 0 to every statement
of the underlying matroid's CI-structure and otherwise the product
X(i) X(j) taken from any circuit X with ij <= supp(X) <= ijK.  All such
witnesses are evaluated and must agree; the agreement is a theorem, so
disagreement raises :class:`~cimatroid.errors.InternalCheckError`.

Sign patterns realizable this way are exactly those passing the five
schemata (OCI1)-(OCI5) checked by :func:`check_oci`, and the circuits
are recovered per circuit C of the underlying matroid as

    +- ({c0} + {c : sigma(c c0 | C - c c0) = +1},
        {c : sigma(c c0 | C - c c0) = -1})

for an arbitrary anchor c0 in C; every anchor is evaluated and must
yield the same pair up to global negation.

Chirotopes provide the second route to the same sign pattern:
sigma(ij|K) = -chi(i, b, a) chi(j, b, a) for a basis b of K and a
filler a away from ijK with chi(i, b, a) != 0.  Whether a statement
gets sign 0 is decided by the underlying matroid's modular equality,
never by the existence of such a filler: on the rank-2 configuration
e1, e2, e1+e2 the statement (1 2 |) admits the filler a = {3} with a
nonzero product even though the statement is independent, so the
product formula applies to dependent statements only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .axioms import ViolationWitness, check_mci, check_semigraphoid, is_matroid_ci
from .bitsets import mask_of, popcount, set_of
from .ci import CIStatement, CIStructure, check_ground, statement_index
from .errors import AxiomError, InternalCheckError, LoopError
from .matroid import Matroid, RankFunction, ci_of_matroid, rank_from_ci, validate_matroid


class SignedSet:
    """A signed subset: disjoint positive and negative parts."""

    __slots__ = ("pos", "neg")

    def __init__(self, pos: Iterable[int] = (), neg: Iterable[int] = ()):
        pos = frozenset(pos)
        neg = frozenset(neg)
        if pos & neg:
            raise ValueError(f"positive and negative parts overlap on {sorted(pos & neg)}")
        self.pos = pos
        self.neg = neg

    @property
    def support(self) -> frozenset[int]:
        return self.pos | self.neg

    def sign_of(self, e: int) -> int:
        if e in self.pos:
            return 1
        if e in self.neg:
            return -1
        return 0

    def __neg__(self) -> "SignedSet":
        return SignedSet(self.neg, self.pos)

    def __eq__(self, other):
        if not isinstance(other, SignedSet):
            return NotImplemented
        return self.pos == other.pos and self.neg == other.neg

    def __hash__(self):
        return hash((self.pos, self.neg))

    def __repr__(self):
        return f"SignedSet(+{sorted(self.pos)}, -{sorted(self.neg)})"


def _canonical(X: SignedSet) -> SignedSet:
    """The representative of {X, -X} whose smallest support element is positive."""
    if not X.support:
        return X
    return X if min(X.support) in X.pos else -X


class SignedCircuitSet:
    """A collection of signed subsets intended as oriented-matroid circuits."""

    __slots__ = ("n", "circuits")

    def __init__(self, n: int, circuits: Iterable[SignedSet] = ()):
        check_ground(n)
        circuits = frozenset(circuits)
        ground = frozenset(range(1, n + 1))
        for X in circuits:
            if not X.support <= ground:
                raise ValueError(f"{X} is not supported on [{n}]")
        self.n = n
        self.circuits = circuits

    def __len__(self):
        return len(self.circuits)

    def __iter__(self):
        return iter(self.circuits)

    def __contains__(self, X):
        return X in self.circuits

    def __eq__(self, other):
        if not isinstance(other, SignedCircuitSet):
            return NotImplemented
        return self.n == other.n and self.circuits == other.circuits

    def __hash__(self):
        return hash((self.n, self.circuits))

    def __repr__(self):
        return f"SignedCircuitSet(n={self.n}, circuits={len(self.circuits)})"

    def representatives(self) -> list[SignedSet]:
        """One circuit per negation pair, canonicalized and sorted."""
        reps = {_canonical(X) for X in self.circuits}
        return sorted(reps, key=lambda X: (sorted(X.support), sorted(X.pos)))


@dataclass(frozen=True)
class CircuitAxiomFailure:
    axiom: str  # "OC0" | "OC1" | "OC2" | "OC3" | "OC3'" | "inconsistency"
    involved: tuple
    detail: str


def check_circuit_axioms(C: SignedCircuitSet,
                         matroid: Optional[Matroid] = None) -> list[CircuitAxiomFailure]:
    """Failures of (OC0)-(OC3), with (OC3') as a cross-checking second pass.

    When ``matroid`` is supplied (the input being a circuit signature of
    that matroid), elimination is only checked on pairs whose supports
    form a modular pair; that reduction is sufficient for signatures and
    cuts the pair count.  Without it every pair is checked.  If
    (OC0)-(OC2) hold but (OC3) and (OC3') disagree, an ``inconsistency``
    record is appended, since the two are equivalent in that regime.
    """
    failures = []
    circuits = list(C.circuits)
    for X in circuits:
        if not X.support:
            failures.append(CircuitAxiomFailure("OC0", (X,), "empty signed set"))
    for X in circuits:
        if -X not in C:
            failures.append(CircuitAxiomFailure("OC1", (X,), f"negation of {X} is missing"))
    for X, Y in itertools.permutations(circuits, 2):
        if X.support <= Y.support and X != Y and X != -Y:
            failures.append(CircuitAxiomFailure(
                "OC2", (X, Y), f"support of {X} is contained in support of {Y}"))
    base_ok = not failures

    def eliminations(strong: bool):
        for X, Y in itertools.product(circuits, repeat=2):
            if X == -Y:
                continue
            if matroid is not None and not _modular_pair(matroid, X.support, Y.support):
                continue
            for e in X.pos & Y.neg:
                pos_bound = (X.pos | Y.pos) - {e}
                neg_bound = (X.neg | Y.neg) - {e}
                if not strong:
                    yield X, Y, e, None, pos_bound, neg_bound
                    continue
                for f in (X.pos - Y.neg) | (X.neg - Y.pos):
                    yield X, Y, e, f, pos_bound, neg_bound

    oc3_failures = []
    for X, Y, e, _, pos_bound, neg_bound in eliminations(strong=False):
        if not any(Z.pos <= pos_bound and Z.neg <= neg_bound for Z in circuits):
            oc3_failures.append(CircuitAxiomFailure(
                "OC3", (X, Y, e), f"no elimination circuit for {X}, {Y} at {e}"))
    oc3p_failures = []
    for X, Y, e, f, pos_bound, neg_bound in eliminations(strong=True):
        if not any(Z.pos <= pos_bound and Z.neg <= neg_bound and f in Z.support
                   for Z in circuits):
            oc3p_failures.append(CircuitAxiomFailure(
                "OC3'", (X, Y, e, f),
                f"no elimination circuit through {f} for {X}, {Y} at {e}"))
    failures.extend(oc3_failures)
    failures.extend(oc3p_failures)
    if base_ok and bool(oc3_failures) != bool(oc3p_failures):
        failures.append(CircuitAxiomFailure(
            "inconsistency", (),
            "weak and strong elimination disagree although (OC0)-(OC2) hold"))
    return failures


def _modular_pair(M: Matroid, A: frozenset, B: frozenset) -> bool:
    r = M.rank.of_mask
    a, b = mask_of(A), mask_of(B)
    return r(a) + r(b) == r(a | b) + r(a & b)


def underlying_matroid(C: SignedCircuitSet) -> Matroid:
    """The matroid whose circuits are exactly the supports of C."""
    supports = {mask_of(X.support) for X in C.circuits}
    if 0 in supports:
        raise AxiomError("an empty signed set cannot be a circuit",
                         check_circuit_axioms(C))
    n = C.n
    independent = np.ones(1 << n, dtype=bool)
    for mask in range(1 << n):
        if any(c & ~mask == 0 for c in supports):
            independent[mask] = False
    rank = np.zeros(1 << n, dtype=np.int16)
    for mask in range(1, 1 << n):
        if independent[mask]:
            rank[mask] = popcount(mask)
        else:
            rank[mask] = max(rank[mask & ~(1 << e)] for e in range(n) if mask >> e & 1)
    rf = RankFunction(n, rank)
    if validate_matroid(rf):
        raise AxiomError("signed supports do not generate a matroid",
                         check_circuit_axioms(C))
    M = Matroid(rf)
    if set(M.circuit_masks) != supports:
        raise AxiomError("signed supports are not the circuits of a matroid "
                         "(some support is not support-minimal)",
                         check_circuit_axioms(C))
    return M


class OrientedCIStructure:
    """A sign for every statement over [n], stored as two disjoint tables.

    The zero fiber is the complement of the union of the two tables, so
    it is available in one vectorized pass (:meth:`zero_structure`).
    """

    __slots__ = ("n", "_plus", "_minus")

    def __init__(self, n: int, positives: Iterable = (), negatives: Iterable = ()):
        index = statement_index(n)
        plus = np.zeros(len(index), dtype=bool)
        minus = np.zeros(len(index), dtype=bool)
        for s in positives:
            plus[index.index_of(_as_statement(s))] = True
        for s in negatives:
            minus[index.index_of(_as_statement(s))] = True
        if bool(np.any(plus & minus)):
            t = int(np.flatnonzero(plus & minus)[0])
            raise ValueError(f"statement {index[t]} is both positive and negative")
        plus.flags.writeable = False
        minus.flags.writeable = False
        self.n = n
        self._plus = plus
        self._minus = minus

    @classmethod
    def from_tables(cls, n: int, plus, minus) -> "OrientedCIStructure":
        out = cls.__new__(cls)
        plus = np.array(plus, dtype=bool)
        minus = np.array(minus, dtype=bool)
        expected = (len(statement_index(n)),)
        if plus.shape != expected or minus.shape != expected:
            raise ValueError("sign tables do not match the statement count")
        if bool(np.any(plus & minus)):
            raise ValueError("sign tables overlap")
        plus.flags.writeable = False
        minus.flags.writeable = False
        out.n = n
        out._plus = plus
        out._minus = minus
        return out

    def sign_of(self, statement) -> int:
        t = statement_index(self.n).index_of(_as_statement(statement))
        if self._plus[t]:
            return 1
        if self._minus[t]:
            return -1
        return 0

    def zero_structure(self) -> CIStructure:
        return CIStructure.from_table(self.n, ~(self._plus | self._minus))

    def signed_statements(self) -> list[tuple[int, CIStatement]]:
        """(sign, statement) for the nonzero statements, in index order."""
        index = statement_index(self.n)
        out = []
        for t in range(len(index)):
            if self._plus[t]:
                out.append((1, index[t]))
            elif self._minus[t]:
                out.append((-1, index[t]))
        return out

    def __eq__(self, other):
        if not isinstance(other, OrientedCIStructure):
            return NotImplemented
        return (self.n == other.n
                and bool(np.array_equal(self._plus, other._plus))
                and bool(np.array_equal(self._minus, other._minus)))

    def __hash__(self):
        return hash((self.n, self._plus.tobytes(), self._minus.tobytes()))

    def __repr__(self):
        return (f"OrientedCIStructure(n={self.n}, "
                f"+{int(self._plus.sum())}/-{int(self._minus.sum())})")


def _as_statement(s) -> CIStatement:
    if isinstance(s, CIStatement):
        return s
    i, j, K = s
    return CIStatement(i, j, K)


def sigma_of_oriented_matroid(C: SignedCircuitSet) -> OrientedCIStructure:
    """The sign pattern of an oriented matroid given by signed circuits.

    Sign 0 on the underlying matroid's CI-structure; otherwise the product
    X(i) X(j) over EVERY circuit X with ij <= supp(X) <= ijK, which must
    exist and agree.
    """
    failures = check_circuit_axioms(C)
    if failures:
        raise AxiomError(f"signed circuit axioms fail ({failures[0].detail})", failures)
    M = underlying_matroid(C)
    loops = M.loops()
    if loops:
        raise LoopError(f"element {min(loops)} is a loop of the underlying matroid",
                        element=min(loops))
    zero = ci_of_matroid(M)
    positives, negatives = [], []
    for s in statement_index(C.n):
        if s in zero:
            continue
        support = s.support()
        pair = {s.i, s.j}
        products = {X.sign_of(s.i) * X.sign_of(s.j)
                    for X in C.circuits
                    if pair <= X.support <= support}
        if not products:
            raise InternalCheckError(
                f"no circuit witness for the dependent statement {s}")
        if len(products) != 1:
            raise InternalCheckError(
                f"circuit witnesses disagree on {s}: products {sorted(products)}")
        (product,) = products
        (positives if product > 0 else negatives).append(s)
    return OrientedCIStructure(C.n, positives, negatives)


# -- the sign-pattern axioms --------------------------------------------------


def check_oci(sigma: OrientedCIStructure) -> list[ViolationWitness]:
    """Failures of the five oriented CI schemata.

    * OCI1: sigma(ij|K) != 0  =>  sigma(il|jKL) = 0
    * OCI2: sigma(ij|K) = sigma(il|jK) = 0  =>  sigma(ij|lK) = sigma(il|K) = 0
    * OCI3: sigma(ij|K) != 0  =>  sigma(ij|L) in {0, sigma(ij|K)} for L
      nested either way with K
    * OCI4: sigma(il|K) sigma(ij|K) sigma(jl|K) <= 0
    * OCI5: sigma(il|jK) sigma(ij|lK) sigma(jl|iK) >= 0

    Witnesses are sorted by the statement index of the failing conclusion
    (for the product rules, of the first involved statement).
    """
    n = sigma.n
    index = statement_index(n)
    ground = range(1, n + 1)
    found = []

    def rest(*excluded):
        return [e for e in ground if e not in excluded]

    def subsets(pool):
        pool = tuple(pool)
        for bits in range(1 << len(pool)):
            yield frozenset(pool[t] for t in range(len(pool)) if bits >> t & 1)

    for i, j, l in itertools.permutations(ground, 3):
        pool = rest(i, j, l)
        for assign in itertools.product((0, 1, 2), repeat=len(pool)):
            K = frozenset(pool[t] for t in range(len(pool)) if assign[t] == 1)
            L = frozenset(pool[t] for t in range(len(pool)) if assign[t] == 2)
            premise = CIStatement(i, j, K)
            conclusion = CIStatement(i, l, K | L | {j})
            if sigma.sign_of(premise) != 0 and sigma.sign_of(conclusion) != 0:
                found.append((index.index_of(conclusion), (i, j, l), ViolationWitness(
                    "OCI1", (i, j, l), (K, L),
                    f"sign({premise}) = {sigma.sign_of(premise)} but "
                    f"sign({conclusion}) = {sigma.sign_of(conclusion)}")))
        for K in subsets(pool):
            if sigma.sign_of(CIStatement(i, j, K)) == 0 \
                    and sigma.sign_of(CIStatement(i, l, K | {j})) == 0:
                bad = [s for s in (CIStatement(i, j, K | {l}), CIStatement(i, l, K))
                       if sigma.sign_of(s) != 0]
                if bad:
                    found.append((min(index.index_of(s) for s in bad), (i, j, l),
                                  ViolationWitness(
                        "OCI2", (i, j, l), (K,),
                        "zero premises but nonzero "
                        + ", ".join(f"sign({s}) = {sigma.sign_of(s)}" for s in bad))))
    for i, j in itertools.combinations(ground, 2):
        pool = rest(i, j)
        for K in subsets(pool):
            base = sigma.sign_of(CIStatement(i, j, K))
            if base == 0:
                continue
            for L in subsets(pool):
                if L == K or not (L <= K or K <= L):
                    continue
                other = sigma.sign_of(CIStatement(i, j, L))
                if other not in (0, base):
                    found.append((index.index_of(CIStatement(i, j, L)), (i, j),
                                  ViolationWitness(
                        "OCI3", (i, j), (K, L),
                        f"sign flips from {base} at K to {other} at the nested set")))
    for i, j, l in itertools.combinations(ground, 3):
        for K in subsets(rest(i, j, l)):
            triple = (CIStatement(i, l, K), CIStatement(i, j, K), CIStatement(j, l, K))
            product = 1
            for s in triple:
                product *= sigma.sign_of(s)
            if product > 0:
                found.append((min(index.index_of(s) for s in triple), (i, j, l),
                              ViolationWitness(
                    "OCI4", (i, j, l), (K,),
                    "same-conditioning product is +1: "
                    + ", ".join(f"sign({s}) = {sigma.sign_of(s)}" for s in triple))))
            triple = (CIStatement(i, l, K | {j}), CIStatement(i, j, K | {l}),
                      CIStatement(j, l, K | {i}))
            product = 1
            for s in triple:
                product *= sigma.sign_of(s)
            if product < 0:
                found.append((min(index.index_of(s) for s in triple), (i, j, l),
                              ViolationWitness(
                    "OCI5", (i, j, l), (K,),
                    "exchanged-conditioning product is -1: "
                    + ", ".join(f"sign({s}) = {sigma.sign_of(s)}" for s in triple))))
    found.sort(key=lambda t: t[:2])
    return [w for _, _, w in found]


def oci_witness_replays(sigma: OrientedCIStructure, w: ViolationWitness) -> bool:
    """Re-run an OCI witness against a sign pattern."""
    if w.axiom == "OCI1":
        i, j, l = w.elements
        K, L = w.sets
        return (sigma.sign_of(CIStatement(i, j, K)) != 0
                and sigma.sign_of(CIStatement(i, l, K | L | {j})) != 0)
    if w.axiom == "OCI2":
        i, j, l = w.elements
        (K,) = w.sets
        return (sigma.sign_of(CIStatement(i, j, K)) == 0
                and sigma.sign_of(CIStatement(i, l, K | {j})) == 0
                and (sigma.sign_of(CIStatement(i, j, K | {l})) != 0
                     or sigma.sign_of(CIStatement(i, l, K)) != 0))
    if w.axiom == "OCI3":
        i, j = w.elements
        K, L = w.sets
        base = sigma.sign_of(CIStatement(i, j, K))
        return base != 0 and sigma.sign_of(CIStatement(i, j, L)) not in (0, base)
    if w.axiom == "OCI4":
        i, j, l = w.elements
        (K,) = w.sets
        return (sigma.sign_of(CIStatement(i, l, K)) * sigma.sign_of(CIStatement(i, j, K))
                * sigma.sign_of(CIStatement(j, l, K)) > 0)
    if w.axiom == "OCI5":
        i, j, l = w.elements
        (K,) = w.sets
        return (sigma.sign_of(CIStatement(i, l, K | {j}))
                * sigma.sign_of(CIStatement(i, j, K | {l}))
                * sigma.sign_of(CIStatement(j, l, K | {i})) < 0)
    raise ValueError(f"unknown axiom tag {w.axiom!r}")


def oriented_matroid_from_sigma(sigma: OrientedCIStructure) -> SignedCircuitSet:
    """Recover the signed circuits of the oriented matroid behind a sign pattern.

    Requires the five OCI schemata and requires the zero fiber to be a
    matroid CI-structure.  Per circuit, every anchor choice is evaluated
    and must produce the same signed pair; the circuit axioms and the full
    round trip are then re-checked.  Those three assertions are theorems
    for valid input, so their failure raises InternalCheckError.
    """
    oci_failures = check_oci(sigma)
    if oci_failures:
        raise AxiomError(
            f"sign pattern fails the oriented CI axioms ({oci_failures[0].format_line()})",
            oci_failures)
    zero = sigma.zero_structure()
    if not is_matroid_ci(zero):
        raise AxiomError("the zero fiber is not a matroid CI-structure",
                         check_mci(zero) + check_semigraphoid(zero))
    M = Matroid(rank_from_ci(zero))
    circuits = []
    for circuit in M.circuits:
        variants = []
        for anchor in sorted(circuit):
            pos, neg = {anchor}, set()
            for c in circuit - {anchor}:
                s = sigma.sign_of(CIStatement(c, anchor, circuit - {c, anchor}))
                if s == 0:
                    raise InternalCheckError(
                        f"statement ({c} {anchor} | ...) over the circuit "
                        f"{sorted(circuit)} has sign 0")
                (pos if s > 0 else neg).add(c)
            variants.append(SignedSet(pos, neg))
        canon = {_canonical(v) for v in variants}
        if len(canon) != 1:
            raise InternalCheckError(
                f"anchor choice changed the signature of circuit {sorted(circuit)}")
        X = variants[0]
        circuits.extend((X, -X))
    result = SignedCircuitSet(sigma.n, circuits)
    failures = check_circuit_axioms(result, matroid=M)
    if failures:
        raise InternalCheckError(
            f"recovered signature fails the circuit axioms ({failures[0].detail})")
    if sigma_of_oriented_matroid(result) != sigma:
        raise InternalCheckError("recovered circuits do not reproduce the sign pattern")
    return result


# -- chirotopes ---------------------------------------------------------------


class Chirotope:
    """An alternating sign map on r-tuples over [n], stored on sorted tuples."""

    __slots__ = ("n", "r", "signs")

    def __init__(self, n: int, r: int, signs, validate: bool = True):
        check_ground(n)
        if not 1 <= r <= n:
            raise ValueError(f"chirotope rank must satisfy 1 <= r <= {n}, got {r}")
        cleaned = {}
        for tpl, value in dict(signs).items():
            tpl = tuple(tpl)
            if len(tpl) != r or len(set(tpl)) != r:
                raise ValueError(f"{tpl} is not an r-tuple of distinct elements")
            if tpl != tuple(sorted(tpl)):
                raise ValueError(f"{tpl} is not sorted; store signs on sorted tuples")
            if not all(1 <= e <= n for e in tpl):
                raise ValueError(f"{tpl} is not inside [{n}]")
            value = int(value)
            if value not in (-1, 1):
                raise ValueError(f"stored chirotope values must be -1 or +1, got {value}")
            cleaned[tpl] = value
        self.n = n
        self.r = r
        self.signs = cleaned
        if validate:
            failures = chirotope_validate(self)
            if failures:
                raise ValueError(f"invalid chirotope: {failures[0].detail}")

    def value(self, tpl: Iterable[int]) -> int:
        """Evaluate on an arbitrary tuple via the alternating extension."""
        tpl = tuple(tpl)
        if len(tpl) != self.r:
            raise ValueError(f"expected an {self.r}-tuple, got {tpl}")
        if len(set(tpl)) != self.r:
            return 0
        parity, ordered = _sort_parity(tpl)
        return parity * self.signs.get(ordered, 0)

    def basis_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(t) for t in sorted(self.signs))

    def matroid(self) -> Matroid:
        """The matroid whose bases are the supports of the nonzero tuples."""
        return Matroid.from_bases(self.n, self.basis_sets())

    def __neg__(self) -> "Chirotope":
        return Chirotope(self.n, self.r, {t: -v for t, v in self.signs.items()},
                         validate=False)

    def __eq__(self, other):
        if not isinstance(other, Chirotope):
            return NotImplemented
        return self.n == other.n and self.r == other.r and self.signs == other.signs

    def __hash__(self):
        return hash((self.n, self.r, tuple(sorted(self.signs.items()))))

    def __repr__(self):
        return f"Chirotope(n={self.n}, r={self.r}, bases={len(self.signs)})"


def _sort_parity(tpl: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    items = list(tpl)
    parity = 1
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                items[a], items[b] = items[b], items[a]
                parity = -parity
    return parity, tuple(items)


@dataclass(frozen=True)
class ChirotopeFailure:
    kind: str  # "identically-zero" | "exchange"
    involved: tuple
    detail: str


def chirotope_validate(chi: Chirotope) -> list[ChirotopeFailure]:
    """Input hygiene: nonzero somewhere, and basis exchange on the support.

    Necessary but not sufficient for chirotope-hood; the full alternating
    sign axioms are out of scope because inputs come from realizations.
    """
    if not chi.signs:
        return [ChirotopeFailure("identically-zero", (), "every value is zero")]
    bases = set(chi.basis_sets())
    failures = []
    for B1, B2 in itertools.permutations(bases, 2):
        for x in B1 - B2:
            if not any((B1 - {x}) | {y} in bases for y in B2 - B1):
                failures.append(ChirotopeFailure(
                    "exchange", (B1, B2, x),
                    f"no exchange for {x} between {sorted(B1)} and {sorted(B2)}"))
    return failures


def sigma_from_chirotope(chi: Chirotope) -> OrientedCIStructure:
    """The sign pattern of the oriented matroid given by a chirotope.

    Zeroness is decided by the underlying matroid: sign 0 exactly on the
    statements satisfying the modular rank equality.  For a dependent
    statement (i j | K) the sign is -chi(i, b, a) chi(j, b, a), evaluated
    over EVERY basis b of K and every filler a away from ijK that makes
    chi(i, b, a) nonzero; all evaluations must agree.
    """
    failures = chirotope_validate(chi)
    if failures:
        raise ValueError(f"invalid chirotope: {failures[0].detail}")
    M = chi.matroid()
    r = M.rank.of_mask
    n, rank = chi.n, chi.r
    positives, negatives = [], []
    for s in statement_index(n):
        K = mask_of(s.K)
        bi, bj = 1 << (s.i - 1), 1 << (s.j - 1)
        if r(K | bi) + r(K | bj) == r(K | bi | bj) + r(K):
            continue  # independent: sign 0
        s_rank = r(K)
        bases_of_K = [b for b in _submasks(K)
                      if popcount(b) == s_rank and r(b) == s_rank]
        outside = [e for e in range(1, n + 1) if e not in s.support()]
        products = set()
        for b in bases_of_K:
            b_sorted = tuple(sorted(set_of(b)))
            for a in itertools.combinations(outside, rank - s_rank - 1):
                vi = chi.value((s.i,) + b_sorted + a)
                if vi == 0:
                    continue
                vj = chi.value((s.j,) + b_sorted + a)
                if vj == 0:
                    raise InternalCheckError(
                        f"basis extension broke the parallel swap at {s}")
                products.add(-vi * vj)
        if not products:
            raise InternalCheckError(f"no basis extension found for the dependent {s}")
        if len(products) != 1:
            raise InternalCheckError(
                f"basis/filler choices disagree on {s}: products {sorted(products)}")
        (product,) = products
        (positives if product > 0 else negatives).append(s)
    return OrientedCIStructure(n, positives, negatives)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
