import json
import re
from importlib import resources

import jsonschema
import pytest

from adjoint_cohomology import cli, verify
from adjoint_cohomology.corpus import FINITE, FREE_ABELIAN
from adjoint_cohomology.linalg import RationalSparseMatrix

S3 = FINITE["S3"]
SCHEMA = json.loads(resources.files("adjoint_cohomology").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_inline_and_file(capsys, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("< x | x x^-1 x^2 >\n", encoding="utf-8")
    code, out, _ = run(capsys, "parse", str(path), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["relators"] == ["x^2"]
    assert len(data["warnings"]) == 1
    code, out, _ = run(capsys, "parse", "--inline", S3)
    assert code == 0 and out.strip() == "< x, y | x^3, y^2, x y x y >"


def test_enumerate_s3(capsys):
    code, out, _ = run(capsys, "enumerate", "-e", S3)
    assert code == 0
    assert out.strip() == "order=6 classes=3 sizes=[1,2,3]"


def test_enumerate_z4(capsys):
    code, out, _ = run(capsys, "enumerate", "-e", FINITE["Z4"])
    assert out.startswith("order=4 classes=4")


def test_enumerate_infinite_is_resource_error(capsys):
    code, _, err = run(capsys, "enumerate", "-e", "< x | >", "--coset-budget", "50")
    assert code == 2
    assert "--coset-budget" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify"],
        ["verify", "-e", "< x | x^2"],
        ["verify", "-e", FREE_ABELIAN[2], "--backend", "free-abelian", "--classes", "(0,0)"],
        ["verify", "-e", FREE_ABELIAN[2], "--backend", "free-abelian", "--trust-abelian"],
        ["verify", "-e", FREE_ABELIAN[2], "--backend", "free-abelian", "--trust-abelian", "--classes", "(0,0)", "--rank", "3"],
        ["enumerate", "-e", FREE_ABELIAN[1], "--backend", "free-abelian", "--trust-abelian", "--classes", "0"],
        ["verify", "no/such/file.txt"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:")


def test_bad_flag_exit_code():
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "--bogus"])
    assert info.value.code == 1


def test_verify_s3_json(capsys):
    code, out, _ = run(capsys, "verify", "-e", S3, "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert list(data) == ["schema_version", "group", "components", "totals", "oracle", "matches", "warnings"]
    assert data["matches"]["corollary1_match"] is True
    assert data["oracle"] == {"group_order": 6, "num_classes": 3, "dim_der": 3, "dim_int": 3, "dim_out": 0}


def test_verify_z2_free_abelian(capsys):
    argv = ["verify", "-e", FREE_ABELIAN[2], "--backend", "free-abelian", "--trust-abelian", "--classes", "(0,0) (1,0)"]
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert [c["h1"] for c in data["components"]] == [2, 2]
    assert data["oracle"] is None and data["matches"] is None
    assert data["group"]["order"] == "infinite"


def test_verify_mismatch_exit_3(capsys, monkeypatch):
    real = verify.d1_matrix

    def corrupted(c):
        m = real(c)
        return RationalSparseMatrix(m.rows, m.cols)

    monkeypatch.setattr(verify, "d1_matrix", corrupted)
    code, out, err = run(capsys, "verify", "-e", S3)
    assert code == 3
    assert "MISMATCH" in err
    assert "corollary1=false" in out


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "verify", "-e", FINITE["A4"])
    _, js, _ = run(capsys, "verify", "-e", FINITE["A4"], "--json")
    data = json.loads(js)
    comps = [l for l in text.splitlines() if l.startswith("class ")]
    assert len(comps) == len(data["components"])
    for line, comp in zip(comps, data["components"]):
        nums = dict(re.findall(r"(\w+)=(\d+)", line))
        assert int(nums["vertices"]) == comp["num_vertices"]
        assert int(nums["edges"]) == comp["num_edges"]
        assert int(nums["cells"]) == comp["num_cells"]
        assert int(nums["ker_d1"]) == comp["dim_ker_d1"]
        assert int(nums["rank_d0"]) == comp["rank_d0"]
        assert int(nums["h1"]) == comp["h1"]
    oracle = dict(re.findall(r"(\w+)=(\d+)", next(l for l in text.splitlines() if l.startswith("oracle"))))
    assert int(oracle["der"]) == data["oracle"]["dim_der"]
    assert int(oracle["out"]) == data["oracle"]["dim_out"]


@pytest.mark.parametrize("cmd", ["verify", "cohomology", "complex", "enumerate", "export-dot"])
def test_deterministic_output(capsys, cmd):
    argv = [cmd, "-e", FINITE["D4"], "--seed", "4"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_oracle_samples(capsys):
    code, out, _ = run(capsys, "oracle", "-e", FINITE["Q8"], "--samples", "10", "--seed", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["leibniz_samples"] == {"seed": 3, "samples": 10, "agreements": 10}
    assert data["oracle"]["dim_der"] == 3


def test_oracle_cap_is_resource_error(capsys):
    code, _, err = run(capsys, "oracle", "-e", FINITE["A4"], "--oracle-cap", "8")
    assert code == 2
    assert "--oracle-cap" in err


def test_cohomology_json_cocycles(capsys):
    argv = ["cohomology", "-e", FREE_ABELIAN[2], "--backend", "free-abelian", "--trust-abelian", "--classes", "(0,0)"]
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert data["cocycles"] == [{"class_label": "(0,0)", "cocycles": [{"(0,0):x": "1/1"}, {"(0,0):y": "1/1"}]}]


def test_complex_command(capsys):
    code, out, _ = run(capsys, "complex", "-e", S3, "--json")
    assert code == 0
    comps = json.loads(out)["components"]
    assert [c["num_vertices"] for c in comps] == [1, 2, 3]
    assert all(c["d1_d0_zero"] and c["degree_bounds"] for c in comps)


def test_export_dot_z(capsys):
    code, out, _ = run(
        capsys, "export-dot", "-e", FREE_ABELIAN[1], "--backend", "free-abelian", "--trust-abelian", "--classes", "0"
    )
    assert code == 0
    assert out == 'digraph "class (0)" {\n  n0 [label="(0)"];\n  n0 -> n0 [label="x"];\n}\n'


def test_export_dot_z2(capsys):
    code, out, _ = run(capsys, "export-dot", "-e", FINITE["Z2"], "--class-index", "1")
    assert code == 0
    assert out.count("->") == 1 and "n0 -> n0" in out


def test_export_dot_s3_rotation_class(capsys):
    code, out, _ = run(capsys, "export-dot", "-e", S3, "--class-index", "1")
    assert code == 0
    nodes = re.findall(r"^  (n\d+) \[", out, re.M)
    edges = re.findall(r"(n\d+) -> (n\d+)", out)
    assert len(nodes) == 2
    assert edges.count(("n0", "n1")) == 1 and edges.count(("n1", "n0")) == 1


def test_export_dot_bad_class(capsys):
    code, _, _ = run(capsys, "export-dot", "-e", S3, "--class-index", "7")
    assert code == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "adjoint_cohomology", "enumerate", "-e", FINITE["Q8"]],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("order=8 classes=5")
