import pytest

from cimatroid import formats
from cimatroid.ci import CIStatement, CIStructure
from cimatroid.cli import main
from cimatroid.matroid import g_family, uniform
from cimatroid.models import RationalMatrix, VectorConfiguration
from cimatroid.oriented import sigma_of_oriented_matroid
from cimatroid.models import signed_circuits_from_vectors


def S(i, j, *K):
    return CIStatement(i, j, K)


@pytest.fixture()
def g4_file(tmp_path):
    path = tmp_path / "g4.ci"
    formats.dump(g_family(4), path)
    return str(path)


@pytest.fixture()
def u23_file(tmp_path):
    path = tmp_path / "u23.matroid"
    formats.dump(uniform(2, 3), path)
    return str(path)


class TestCheck:
    def test_g4_fails_mci_with_stated_witness(self, g4_file, capsys):
        code = main(["check", g4_file, "--axioms", "sg,mci"])
        out = capsys.readouterr().out
        assert code == 1
        assert "! MCI 1 2 3 |  ; 4" in out  # i.e. (1 2 |) vs (1 3 | 2 4)

    def test_full_structure_passes_sg(self, tmp_path, capsys):
        path = tmp_path / "full.ci"
        formats.dump(CIStructure.full(3), path)
        assert main(["check", str(path), "--axioms", "sg"]) == 0
        assert "sg: pass" in capsys.readouterr().out

    def test_oci_sign_flip(self, tmp_path, capsys):
        path = tmp_path / "flip.oci"
        path.write_text("oci n=3\n+ 1 2 |\n- 1 2 | 3\n", encoding="utf-8")
        code = main(["check", str(path), "--axioms", "oci"])
        out = capsys.readouterr().out
        assert code == 1
        assert any(line.startswith("! OCI3") for line in out.splitlines())

    def test_wrong_tag_for_file_kind(self, g4_file, capsys):
        assert main(["check", g4_file, "--axioms", "oci"]) == 2

    def test_parse_error_exits_2(self, tmp_path):
        path = tmp_path / "broken.ci"
        path.write_text("ci n=2\n1 5 |\n", encoding="utf-8")
        assert main(["check", str(path), "--axioms", "sg"]) == 2


class TestConvert:
    def test_matroid_to_ci_lines(self, u23_file, capsys):
        assert main(["convert", u23_file, "--to", "ci"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out == ["ci n=3", "1 2 |", "1 3 |", "2 3 |"]

    def test_round_trip_verify(self, u23_file, tmp_path, capsys):
        out_path = tmp_path / "u23.ci"
        code = main(["convert", u23_file, "--to", "ci", "-o", str(out_path),
                     "--verify"])
        assert code == 0
        assert "round trip reproduces the input" in capsys.readouterr().out
        assert formats.load(out_path) == formats.loads(
            "ci n=3\n1 2 |\n1 3 |\n2 3 |\n")

    def test_oci_to_signed_circuits_with_verify(self, tmp_path, capsys):
        sigma = sigma_of_oriented_matroid(
            signed_circuits_from_vectors(VectorConfiguration([[1, 0], [0, 1], [1, 1]])))
        path = tmp_path / "triangle.oci"
        formats.dump(sigma, path)
        code = main(["convert", str(path), "--to", "signed-circuits", "--verify"])
        out = capsys.readouterr().out
        assert code == 0
        assert "+ 1 2 - 3" in out

    def test_matrix_to_ci_empty(self, tmp_path, capsys):
        path = tmp_path / "cov.matrix"
        path.write_text("matrix n=2\n1 1/10\n1/10 1\n", encoding="utf-8")
        assert main(["convert", str(path), "--to", "ci"]) == 0
        assert capsys.readouterr().out.splitlines() == ["ci n=2"]

    def test_non_matroid_ci_exits_2(self, g4_file):
        assert main(["convert", g4_file, "--to", "matroid"]) == 2

    def test_unsupported_pair_exits_2(self, u23_file):
        assert main(["convert", u23_file, "--to", "chirotope"]) == 2

    def test_setfn_to_ci(self, tmp_path, capsys):
        path = tmp_path / "h.setfn"
        path.write_text("setfn n=2\n: 0\n1 : 1\n2 : 1\n1 2 : 2\n", encoding="utf-8")
        assert main(["convert", str(path), "--to", "ci"]) == 0
        assert capsys.readouterr().out.splitlines() == ["ci n=2", "1 2 |"]


class TestOp:
    def test_dual_of_fully_conditioned(self, tmp_path, capsys):
        path = tmp_path / "u13.ci"
        formats.dump(CIStructure(3, [S(1, 2, 3), S(1, 3, 2), S(2, 3, 1)]), path)
        assert main(["op", "dual", str(path)]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "ci n=3", "1 2 |", "1 3 |", "2 3 |"]

    def test_delete(self, tmp_path, capsys):
        path = tmp_path / "full.ci"
        formats.dump(CIStructure.full(3), path)
        assert main(["op", "delete", str(path), "-e", "3"]) == 0
        assert capsys.readouterr().out.splitlines() == ["ci n=2", "1 2 |"]

    def test_direct_sum(self, tmp_path, capsys):
        a = tmp_path / "a.ci"
        a.write_text("ci n=1\n", encoding="utf-8")
        assert main(["op", "direct-sum", str(a), "--other", str(a)]) == 0
        assert capsys.readouterr().out.splitlines() == ["ci n=2", "1 2 |"]

    def test_minors_listing(self, tmp_path, capsys):
        path = tmp_path / "full.ci"
        formats.dump(CIStructure.full(2), path)
        assert main(["op", "minors", str(path)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 9  # 3**2 disjoint pairs


class TestEnumerate:
    def test_matroids_n2(self, capsys):
        assert main(["enumerate", "--kind", "matroids", "--n", "2"]) == 0
        assert "loopless matroids on [2]: 2" in capsys.readouterr().out

    def test_matroid_ci_census_matches_oracle(self, capsys):
        code = main(["enumerate", "--kind", "matroid-ci", "--n", "3",
                     "--backend", "numpy"])
        out = capsys.readouterr().out
        assert code == 0
        assert "matroid CI-structures on [3]: 6" in out
        assert "matches the oracle" in out

    def test_gaussoid_census(self, capsys):
        assert main(["enumerate", "--kind", "gaussoid-matroids", "--n", "3"]) == 0
        out = capsys.readouterr().out
        assert "gaussoid matroids on [3]: 4" in out
        assert "matches the axiom checker" in out

    def test_emit(self, tmp_path, capsys):
        out_dir = tmp_path / "census"
        assert main(["enumerate", "--kind", "matroids", "--n", "2",
                     "--emit", str(out_dir)]) == 0
        files = sorted(out_dir.iterdir())
        assert len(files) == 2
        assert all(isinstance(formats.load(f), type(uniform(1, 2))) for f in files)

    def test_capacity_error(self, capsys):
        assert main(["enumerate", "--kind", "matroids", "--n", "9"]) == 2


class TestDemo:
    def test_gm4(self, tmp_path, capsys):
        out_path = tmp_path / "gm4.ci"
        code = main(["demo", "gm", "--m", "4", "-o", str(out_path)])
        out = capsys.readouterr().out
        assert code == 0
        assert "not a matroid: MCI witness (1,2 | ) vs (1,3 | 2 4)" in out
        assert formats.load(out_path) == g_family(4)
        # honest minor report: contractions and the deletions of 1, 2 are
        # matroids, the remaining deletions are not
        assert out.count("NOT a matroid") == 2
        assert "contract 3: matroid" in out

    def test_out_of_range_exits_2(self):
        assert main(["demo", "gm", "--m", "3"]) == 2
        assert main(["demo", "gm", "--m", "7"]) == 2


class TestRealize:
    def test_vectors_to_chirotope(self, tmp_path, capsys):
        path = tmp_path / "v.vectors"
        formats.dump(VectorConfiguration([[1, 0], [0, 1], [1, 1]]), path)
        assert main(["realize", str(path), "--as", "chirotope"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out == ["chirotope n=3 r=2", "1 2 +", "1 3 +", "2 3 -"]

    def test_matrix_to_ci(self, tmp_path, capsys):
        path = tmp_path / "id.matrix"
        formats.dump(RationalMatrix.identity(2), path)
        assert main(["realize", str(path), "--as", "ci"]) == 0
        assert capsys.readouterr().out.splitlines() == ["ci n=2", "1 2 |"]

    def test_missing_file_exits_2(self):
        assert main(["realize", "/nonexistent/file", "--as", "ci"]) == 2


class TestErrorPaths:
    def test_op_direct_sum_without_other(self, tmp_path):
        path = tmp_path / "a.ci"
        path.write_text("ci n=1\n", encoding="utf-8")
        assert main(["op", "direct-sum", str(path)]) == 2

    def test_op_delete_foreign_element(self, tmp_path):
        path = tmp_path / "a.ci"
        path.write_text("ci n=2\n1 2 |\n", encoding="utf-8")
        assert main(["op", "delete", str(path), "-e", "9"]) == 2

    def test_op_bad_element_list(self, tmp_path):
        path = tmp_path / "a.ci"
        path.write_text("ci n=2\n", encoding="utf-8")
        assert main(["op", "delete", str(path), "-e", "x,y"]) == 2

    def test_check_empty_tag_list(self, tmp_path):
        path = tmp_path / "a.ci"
        path.write_text("ci n=2\n", encoding="utf-8")
        assert main(["check", str(path), "--axioms", " , "]) == 2

    def test_verify_without_inverse(self, tmp_path):
        path = tmp_path / "v.vectors"
        path.write_text("vectors d=2 n=2\n1 0\n0 1\n", encoding="utf-8")
        assert main(["convert", str(path), "--to", "chirotope", "--verify"]) == 2

    def test_enumerate_scan_capacity(self):
        assert main(["enumerate", "--kind", "matroid-ci", "--n", "5"]) == 2
