from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cimatroid.axioms import check_gaussoid
from cimatroid.ci import CIStatement, CIStructure
from cimatroid.errors import NotPositiveDefiniteError, NotSymmetricError
from cimatroid.models import (
    RationalMatrix,
    VectorConfiguration,
    chirotope_from_vectors,
    det_rational,
    gaussian_ci,
    kernel_vector,
    random_covariance,
    signed_circuits_from_vectors,
)
from cimatroid.oriented import SignedSet, underlying_matroid


def S(i, j, *K):
    return CIStatement(i, j, K)


E1_E2_SUM = VectorConfiguration([[1, 0], [0, 1], [1, 1]])


class TestExactLinearAlgebra:
    def test_det(self):
        assert det_rational([[Fraction(1), Fraction(2)],
                             [Fraction(3), Fraction(4)]]) == -2

    def test_det_singular(self):
        assert det_rational([[Fraction(1), Fraction(2)],
                             [Fraction(2), Fraction(4)]]) == 0

    def test_kernel_vector(self):
        # v1 + v2 - v3 = 0 for e1, e2, e1+e2
        vec = kernel_vector(E1_E2_SUM.column_rows([1, 2, 3]), 3)
        assert vec is not None
        scale = vec[0]
        assert [v / scale for v in vec] == [1, 1, -1]

    @given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                    min_size=3, max_size=3))
    def test_det_matches_cofactor_expansion(self, rows):
        (a, b, c), (d, e, f), (g, h, i) = [[Fraction(v) for v in row] for row in rows]
        expected = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        assert det_rational([[a, b, c], [d, e, f], [g, h, i]]) == expected


class TestChirotopeFromVectors:
    def test_standard_triangle(self):
        chi = chirotope_from_vectors(E1_E2_SUM)
        assert chi.signs == {(1, 2): 1, (1, 3): 1, (2, 3): -1}

    def test_identity_pair(self):
        chi = chirotope_from_vectors(VectorConfiguration([[1, 0], [0, 1]]))
        assert chi.signs == {(1, 2): 1}

    def test_rank_one_signs(self):
        chi = chirotope_from_vectors(VectorConfiguration([[1], [1], [-1]]))
        assert chi.signs == {(1,): 1, (2,): 1, (3,): -1}

    def test_zero_rank_rejected(self):
        with pytest.raises(ValueError):
            chirotope_from_vectors(VectorConfiguration([[0], [0]]))

    def test_redundant_rows_do_not_change_the_matroid(self):
        tall = VectorConfiguration([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
        assert chirotope_from_vectors(tall).matroid() == \
            chirotope_from_vectors(E1_E2_SUM).matroid()


class TestSignedCircuitsFromVectors:
    def test_standard_triangle(self):
        C = signed_circuits_from_vectors(E1_E2_SUM)
        assert SignedSet({1, 2}, {3}) in C and SignedSet({3}, {1, 2}) in C
        assert len(C) == 2

    def test_independent_columns(self):
        C = signed_circuits_from_vectors(VectorConfiguration([[1, 0], [0, 1]]))
        assert len(C) == 0

    def test_rank_one(self):
        C = signed_circuits_from_vectors(VectorConfiguration([[1], [1], [-1]]))
        assert SignedSet({1}, {2}) in C
        assert SignedSet({1, 3}) in C
        assert SignedSet({2, 3}) in C
        assert len(C) == 6

    def test_underlying_matroid_equals_linear_matroid(self, vector_corpus):
        for config in vector_corpus[:30]:
            C = signed_circuits_from_vectors(config)
            M = underlying_matroid(C)
            for mask in range(1 << config.n):
                elements = [e for e in range(1, config.n + 1) if mask >> (e - 1) & 1]
                assert M.rank_of(elements) == config.rank_of_columns(elements)


class TestGaussianCI:
    def test_identity_gives_full(self):
        assert gaussian_ci(RationalMatrix.identity(3)) == CIStructure.full(3)

    def test_correlated_pair_gives_empty(self):
        sigma = RationalMatrix([[1, Fraction(1, 10)], [Fraction(1, 10), 1]])
        assert gaussian_ci(sigma) == CIStructure.empty(2)

    def test_block_diagonal_is_direct_sum(self):
        block = [[1, Fraction(1, 10)], [Fraction(1, 10), 1]]
        combined = RationalMatrix([
            block[0] + [0, 0],
            block[1] + [0, 0],
            [0, 0] + block[0],
            [0, 0] + block[1],
        ])
        small = gaussian_ci(RationalMatrix(block))
        assert gaussian_ci(combined) == small.direct_sum(small)

    def test_block_diagonal_random(self):
        for seed in range(5):
            a = random_covariance(2, seed)
            b = random_covariance(3, seed + 100)
            combined = RationalMatrix(
                [list(row) + [0] * 3 for row in a.entries]
                + [[0] * 2 + list(row) for row in b.entries])
            assert gaussian_ci(combined) == gaussian_ci(a).direct_sum(gaussian_ci(b))

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetricError) as info:
            gaussian_ci(RationalMatrix([[1, 2], [3, 1]]))
        assert info.value.entry == (1, 2)

    def test_not_positive_definite(self):
        with pytest.raises(NotPositiveDefiniteError) as info:
            gaussian_ci(RationalMatrix([[1, 2], [2, 1]]))
        assert info.value.order == 2

    def test_outputs_are_gaussoids(self):
        for seed in range(25):
            for n in (2, 3, 4):
                sigma = random_covariance(n, seed * 10 + n)
                assert check_gaussoid(gaussian_ci(sigma)) == [], (seed, n)

    def test_agrees_with_partial_correlation_route(self):
        # independent oracle: (i j | K) holds iff the (i, j) entry of the
        # inverse of the principal submatrix on ijK vanishes; the inverse
        # entry is a signed cofactor, i.e. exactly the almost-principal
        # minor over the principal one
        from cimatroid.ci import statement_index

        def inverse_entry_is_zero(sigma, i, j, K):
            idx = [i] + sorted(K) + [j]
            block = [[sigma.entry(r, c) for c in idx] for r in idx]
            inv = _invert(block)
            return inv[0][-1] == 0

        for seed in range(8):
            for n in (2, 3, 4):
                sigma = random_covariance(n, 500 + 10 * seed + n)
                G = gaussian_ci(sigma)
                for s in statement_index(n):
                    assert (s in G) == inverse_entry_is_zero(sigma, s.i, s.j, s.K), \
                        (seed, n, s)

    def test_conditional_dependence_detected(self):
        # X, Y independent, Z = X + Y: only the unconditioned (1 2 |) holds
        sigma = RationalMatrix([[1, 0, 1], [0, 1, 1], [1, 1, 2 + 1]])
        # add 1 to the corner to stay positive definite
        G = gaussian_ci(sigma)
        assert S(1, 2) in G
        assert S(1, 2, 3) not in G


class TestRandomInputs:
    def test_random_covariance_is_reproducible(self):
        assert random_covariance(4, 7) == random_covariance(4, 7)

    def test_corpus_properties(self, vector_corpus):
        assert len(vector_corpus) == 100
        for config in vector_corpus:
            assert config.n <= 7 and config.rank <= 4
            assert all(any(v != 0 for v in col) for col in config.columns)
            assert all(-3 <= v <= 3 for col in config.columns for v in col)


class TestRealizationConsistency:
    def test_two_routes_share_the_matroid(self, vector_corpus):
        for config in vector_corpus[:30]:
            chi = chirotope_from_vectors(config)
            C = signed_circuits_from_vectors(config)
            assert chi.matroid() == underlying_matroid(C)

    def test_circuit_signs_come_from_actual_dependences(self, vector_corpus):
        # first-principles replay: for every signed circuit there must be
        # positive rational weights with sum(pos) - sum(neg) = 0 columnwise
        for config in vector_corpus[:20]:
            for X in signed_circuits_from_vectors(config).representatives():
                elements = sorted(X.support)
                vec = kernel_vector(config.column_rows(elements), len(elements))
                assert vec is not None
                anchor = vec[0]
                assert anchor != 0
                oriented = [v / anchor * (1 if elements[0] in X.pos else -1)
                            for v in vec]
                combo = [sum(w * config.columns[e - 1][r]
                             for w, e in zip(oriented, elements))
                         for r in range(config.d)]
                assert all(v == 0 for v in combo)
                assert {e for e, w in zip(elements, oriented) if w > 0} == X.pos
                assert {e for e, w in zip(elements, oriented) if w < 0} == X.neg


def _invert(block):
    """Gauss-Jordan inverse over Fractions; fails loudly on singular input."""
    size = len(block)
    work = [list(row) + [Fraction(int(r == c)) for c in range(size)]
            for r, row in enumerate(block)]
    for col in range(size):
        pivot_row = next(r for r in range(col, size) if work[r][col] != 0)
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [v / pivot for v in work[col]]
        for r in range(size):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [v - factor * w for v, w in zip(work[r], work[col])]
    return [row[size:] for row in work]


class TestConstructorRejects:
    def test_det_requires_square(self):
        with pytest.raises(ValueError):
            det_rational([[Fraction(1), Fraction(2)]])

    def test_matrix_requires_rectangular(self):
        with pytest.raises(ValueError):
            RationalMatrix([[1, 2], [3]])
        with pytest.raises(ValueError):
            RationalMatrix([])

    def test_vectors_require_uniform_dimension(self):
        with pytest.raises(ValueError):
            VectorConfiguration([[1, 2], [3]])
        with pytest.raises(ValueError):
            VectorConfiguration([])

    def test_kernel_vector_none_when_nullity_not_one(self):
        config = VectorConfiguration([[1, 0], [0, 1]])
        assert kernel_vector(config.column_rows([1, 2]), 2) is None
