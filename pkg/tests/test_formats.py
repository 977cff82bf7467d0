from fractions import Fraction

import pytest

from cimatroid import formats
from cimatroid.ci import CIStatement, CIStructure
from cimatroid.errors import FormatError
from cimatroid.matroid import SetFunction, g_family, uniform
from cimatroid.models import (
    RationalMatrix,
    VectorConfiguration,
    chirotope_from_vectors,
    signed_circuits_from_vectors,
)
from cimatroid.oriented import sigma_of_oriented_matroid


def S(i, j, *K):
    return CIStatement(i, j, K)


TRIANGLE_VECTORS = VectorConfiguration([[1, 0], [0, 1], [1, 1]])


class TestRoundTrips:
    @pytest.mark.parametrize("obj", [
        CIStructure.empty(3),
        CIStructure.full(3),
        g_family(4),
        uniform(2, 3),
        uniform(1, 2).direct_sum(uniform(2, 2)),
        SetFunction(2, [0, Fraction(1, 2), 1, Fraction(3, 2)]),
        RationalMatrix([[1, Fraction(1, 10)], [Fraction(1, 10), 1]]),
        TRIANGLE_VECTORS,
        signed_circuits_from_vectors(TRIANGLE_VECTORS),
        chirotope_from_vectors(TRIANGLE_VECTORS),
        sigma_of_oriented_matroid(signed_circuits_from_vectors(TRIANGLE_VECTORS)),
    ], ids=lambda o: type(o).__name__ + "-" + str(abs(hash(repr(o))) % 1000))
    def test_dumps_loads_identity(self, obj):
        assert formats.loads(formats.dumps(obj)) == obj

    def test_serialized_ci_is_byte_stable(self):
        text = formats.dumps(g_family(4))
        assert text == formats.dumps(formats.loads(text))


class TestCiFormat:
    def test_example_text(self):
        text = "ci n=3\n1 2 |\n1 3 | 2\n"
        G = formats.loads(text)
        assert G == CIStructure(3, [S(1, 2), S(1, 3, 2)])

    def test_comments_and_blank_lines(self):
        text = "# header comment\nci n=2  # trailing\n\n1 2 |  # the one statement\n"
        assert formats.loads(text) == CIStructure.full(2)

    def test_rejects_duplicates(self):
        with pytest.raises(FormatError, match="duplicate"):
            formats.loads("ci n=2\n1 2 |\n2 1 |\n")

    def test_rejects_out_of_range(self):
        with pytest.raises(FormatError, match="outside"):
            formats.loads("ci n=2\n1 3 |\n")

    def test_rejects_equal_pair(self):
        with pytest.raises(FormatError):
            formats.loads("ci n=2\n1 1 |\n")

    def test_rejects_missing_bar(self):
        with pytest.raises(FormatError, match="'[|]'"):
            formats.loads("ci n=2\n1 2\n")

    def test_unknown_kind(self):
        with pytest.raises(FormatError, match="unknown format"):
            formats.loads("graph n=2\n")

    def test_empty_input(self):
        with pytest.raises(FormatError, match="empty"):
            formats.loads("   \n# nothing\n")


class TestMatroidFormat:
    def test_bases_variant(self):
        text = "matroid n=3\nbases\n1 2\n1 3\n2 3\n"
        assert formats.loads(text) == uniform(2, 3)

    def test_rank_variant_requires_all_subsets(self):
        with pytest.raises(FormatError, match="subsets"):
            formats.loads("matroid n=2\nrank\n: 0\n1 : 1\n")

    def test_empty_set_line(self):
        text = formats.dumps(uniform(1, 2))
        assert ": 0" in text.splitlines()[2]

    def test_rejects_invalid_rank_table(self):
        with pytest.raises(FormatError, match="not a matroid"):
            formats.loads("matroid n=2\nrank\n: 1\n1 : 1\n2 : 1\n1 2 : 2\n")


class TestOciFormat:
    def test_signs(self):
        text = "oci n=3\n+ 1 2 | 3\n- 1 3 | 2\n"
        sigma = formats.loads(text)
        assert sigma.sign_of(S(1, 2, 3)) == 1
        assert sigma.sign_of(S(1, 3, 2)) == -1
        assert sigma.sign_of(S(2, 3, 1)) == 0

    def test_rejects_duplicate_statement(self):
        with pytest.raises(FormatError, match="duplicate"):
            formats.loads("oci n=2\n+ 1 2 |\n- 1 2 |\n")


class TestSignedCircuitFormat:
    def test_negation_is_implicit(self):
        C = formats.loads("signed-circuits n=3\n+ 1 2 - 3\n")
        assert len(C) == 2

    def test_rejects_empty_line_circuit(self):
        with pytest.raises(FormatError, match="sign marker"):
            formats.loads("signed-circuits n=3\n1 2\n")


class TestChirotopeFormat:
    def test_unsorted_tuple_normalizes_by_parity(self):
        a = formats.loads("chirotope n=3 r=2\n1 2 +\n1 3 +\n2 3 -\n")
        b = formats.loads("chirotope n=3 r=2\n2 1 -\n1 3 +\n3 2 +\n")
        assert a == b

    def test_rejects_wrong_arity(self):
        with pytest.raises(FormatError):
            formats.loads("chirotope n=3 r=2\n1 2 3 +\n")


class TestMatrixAndVectors:
    def test_matrix_shape_checked(self):
        with pytest.raises(FormatError, match="entries"):
            formats.loads("matrix n=2\n1 2 3\n4 5 6\n")

    def test_vectors_columns(self):
        config = formats.loads("vectors d=2 n=3\n1 0 1\n0 1 1\n")
        assert config == TRIANGLE_VECTORS

    def test_rational_entries(self):
        m = formats.loads("matrix n=2\n1 1/10\n1/10 1\n")
        assert m.entry(1, 2) == Fraction(1, 10)


class TestMoreRejects:
    def test_header_field_not_integer(self):
        with pytest.raises(FormatError, match="integer"):
            formats.loads("ci n=three\n")

    def test_matroid_empty_bases_section(self):
        with pytest.raises(FormatError, match="empty"):
            formats.loads("matroid n=2\nbases\n")

    def test_chirotope_duplicate_tuple(self):
        with pytest.raises(FormatError, match="duplicate"):
            formats.loads("chirotope n=3 r=2\n1 2 +\n2 1 -\n1 3 +\n2 3 +\n")

    def test_setfn_duplicate_subset(self):
        with pytest.raises(FormatError, match="duplicate"):
            formats.loads("setfn n=1\n: 0\n: 1\n")

    def test_vectors_row_count(self):
        with pytest.raises(FormatError, match="rows"):
            formats.loads("vectors d=2 n=2\n1 0\n")

    def test_signed_circuits_repeated_element(self):
        with pytest.raises(FormatError, match="repeated"):
            formats.loads("signed-circuits n=3\n+ 1 - 1\n")

    def test_oci_missing_sign(self):
        with pytest.raises(FormatError):
            formats.loads("oci n=2\n1 2 |\n")

    def test_bad_fraction(self):
        with pytest.raises(FormatError, match="rational"):
            formats.loads("matrix n=1\n1/0\n")
