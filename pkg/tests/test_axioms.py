import pytest
from hypothesis import given, settings, strategies as st

from cimatroid.axioms import (
    check_gaussoid,
    check_mci,
    check_semigraphoid,
    is_matroid_ci,
    mask_rule_tables,
    satisfies_mci,
    satisfies_semigraphoid,
    witness_replays,
)
from cimatroid.ci import CIStatement, CIStructure, minors, statement_count
from cimatroid.matroid import ci_of_matroid, g_family, rank_from_ci, uniform


def S(i, j, *K):
    return CIStatement(i, j, K)


U23_CI = CIStructure(3, [S(1, 2), S(1, 3), S(2, 3)])


@st.composite
def structures(draw, min_n=2, max_n=4):
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << statement_count(n)) - 1))
    return CIStructure.from_mask(n, mask)


class TestSemigraphoid:
    def test_full_structure_passes(self):
        assert check_semigraphoid(CIStructure.full(4)) == []

    def test_empty_structure_passes(self):
        assert check_semigraphoid(CIStructure.empty(4)) == []

    def test_single_violation(self):
        G = CIStructure(3, [S(1, 2), S(1, 3, 2)])
        witnesses = check_semigraphoid(G)
        assert witnesses
        assert any(w.elements == (1, 2, 3) and w.sets == (frozenset(),)
                   for w in witnesses)

    def test_removing_one_unconditioned_statement_breaks_sg(self):
        # the full structure minus (1 2 |): premises (1 3 |), (1 2 | 3)
        # remain but the conclusion (1 2 |) is gone
        G = CIStructure.from_table(3, [False] + [True] * 5)
        assert not satisfies_semigraphoid(G)


class TestMci:
    def test_full_structure_passes(self):
        assert check_mci(CIStructure.full(4)) == []

    def test_u23_passes(self):
        assert check_mci(U23_CI) == []

    def test_g4_fails_with_stated_pair(self):
        witnesses = check_mci(g_family(4))
        assert witnesses
        first = witnesses[0]
        assert first.elements == (1, 2, 3)
        assert first.sets == (frozenset(), frozenset({4}))
        # i.e. (1 2 |) and (1 3 | 2 4) are both non-members
        G = g_family(4)
        assert S(1, 2) not in G and S(1, 3, 2, 4) not in G

    def test_format_line(self):
        w = check_mci(g_family(4))[0]
        assert w.format_line() == "MCI 1 2 3 |  ; 4"


class TestMatroidCIDecision:
    def test_examples(self):
        assert is_matroid_ci(U23_CI)
        assert not is_matroid_ci(g_family(4))
        assert is_matroid_ci(CIStructure.empty(2))  # the parallel pair

    def test_agrees_with_witness_checkers(self):
        for mask in range(1 << statement_count(3)):
            G = CIStructure.from_mask(3, mask)
            assert is_matroid_ci(G) == (
                not check_mci(G) and not check_semigraphoid(G))

    def test_exhaustive_count_n3(self):
        # 6 = number of loopless matroids on [3]
        hits = sum(is_matroid_ci(CIStructure.from_mask(3, m))
                   for m in range(1 << 6))
        assert hits == 6

    def test_round_trip_iff_axioms_n3(self):
        for mask in range(1 << 6):
            G = CIStructure.from_mask(3, mask)
            if is_matroid_ci(G):
                assert ci_of_matroid_of(G) == G
            else:
                with pytest.raises(Exception):
                    rank_from_ci(G)

    def test_minor_closed_on_matroid_structures(self, oracle_matroids):
        for M in oracle_matroids[4]:
            G = ci_of_matroid(M)
            assert all(is_matroid_ci(m.structure) for m in minors(G))


def ci_of_matroid_of(G):
    from cimatroid.matroid import Matroid

    return ci_of_matroid(Matroid(rank_from_ci(G)))


class TestGaussoid:
    def test_full_structure_passes(self):
        assert check_gaussoid(CIStructure.full(4)) == []

    def test_u23_fails_via_composition(self):
        # (1 2 |) and (1 3 |) are members but the conditioned statements
        # are not, so (Comp) fails; the premises of (WT), (Int) and (SG)
        # never fire on an unconditioned-only structure
        witnesses = check_gaussoid(U23_CI)
        assert witnesses
        assert {w.axiom for w in witnesses} == {"Comp"}

    def test_wt_violation(self):
        # (1 2 |) and (1 2 | 3) members, neither (1 3 |) nor (2 3 |)
        G = CIStructure(3, [S(1, 2), S(1, 2, 3)])
        assert any(w.axiom == "WT" for w in check_gaussoid(G))

    def test_parallel_pair_plus_coloop_is_gaussoid(self):
        M = uniform(1, 2).direct_sum(uniform(1, 1))
        assert check_gaussoid(ci_of_matroid(M)) == []


class TestWitnessContracts:
    @given(structures())
    @settings(max_examples=60)
    def test_every_witness_replays(self, G):
        for w in check_semigraphoid(G) + check_mci(G) + check_gaussoid(G):
            assert witness_replays(G, w), w

    @given(structures(max_n=4), st.permutations([1, 2, 3, 4]))
    @settings(max_examples=60)
    def test_relabeling_invariance(self, G, perm):
        mapping = {e: p for e, p in zip(range(1, G.n + 1), _restrict(perm, G.n))}
        H = G.relabel(mapping)
        assert is_matroid_ci(G) == is_matroid_ci(H)
        assert bool(check_gaussoid(G)) == bool(check_gaussoid(H))

    @given(structures(max_n=3))
    def test_witnesses_sorted_by_failing_conclusion(self, G):
        for checker in (check_semigraphoid, check_mci):
            witnesses = checker(G)
            keys = [_conclusion_key(G, w) for w in witnesses]
            assert keys == sorted(keys)

    @given(structures())
    @settings(max_examples=60)
    def test_early_exit_variants_agree(self, G):
        assert satisfies_semigraphoid(G) == (not check_semigraphoid(G))
        assert satisfies_mci(G) == (not check_mci(G))


def _restrict(perm, n):
    kept = [p for p in perm if p <= n]
    return kept


def _conclusion_key(G, w):
    from cimatroid.ci import statement_index

    index = statement_index(G.n)
    if w.axiom == "SG":
        i, j, l = w.elements
        (K,) = w.sets
        missing = [s for s in (CIStatement(i, l, K), CIStatement(i, j, K | {l}))
                   if s not in G]
        return min(index.index_of(s) for s in missing)
    i, j, l = w.elements
    K, L = w.sets
    return index.index_of(CIStatement(i, l, K | L | {j}))


class TestRuleTables:
    def test_tables_reproduce_the_checkers_n3(self):
        mci, sg = mask_rule_tables(3)
        for mask in range(1 << 6):
            G = CIStructure.from_mask(3, mask)
            mci_ok = all(mask >> a & 1 or mask >> b & 1 for a, b in mci)
            sg_ok = all(not (mask >> a & 1 and mask >> b & 1 and not mask >> c & 1)
                        for a, b, c in sg)
            assert mci_ok == satisfies_mci(G)
            assert sg_ok == satisfies_semigraphoid(G)

    def test_tables_are_deduplicated_and_sorted(self):
        mci, sg = mask_rule_tables(4)
        assert len({tuple(r) for r in mci}) == len(mci)
        assert len({tuple(r) for r in sg}) == len(sg)
        assert sorted(map(tuple, mci)) == list(map(tuple, mci))
