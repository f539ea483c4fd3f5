import os

import pytest

from avgcoh import catalog
from avgcoh.algebra import regular_bimodule
from avgcoh.catalog import by_name
from avgcoh.cli import main
from avgcoh.deformations import DeformationJet, is_deformation
from avgcoh.extensions import ExtensionContext, ExtensionDatum
from avgcoh.linalg import QQ, DenseMatrix
from avgcoh.specfile import (ParseError, parse_algebra, parse_datum,
                             parse_homotopy, parse_jet, serialize_algebra,
                             serialize_datum, serialize_homotopy)

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "avgcoh", "data")


def data(name):
    return os.path.join(DATA, name)


def test_algebra_round_trip_catalog():
    for e in catalog.catalog():
        text = serialize_algebra(e.algebra)
        back, module = parse_algebra(text)
        assert back.mul == e.algebra.mul
        assert back.avg == e.algebra.avg
        assert back.unit == e.algebra.unit
        assert module is None


def test_algebra_round_trip_with_bimodule():
    alg = by_name("tri2-e11")
    reg = regular_bimodule(alg)
    text = serialize_algebra(alg, module=reg)
    back, module = parse_algebra(text)
    assert module is not None
    assert module.left == reg.left and module.right == reg.right
    assert module.avg_m == reg.avg_m


def test_parse_rationals_and_comments():
    alg, _ = parse_algebra(
        "# header\nfield Q\ndim 1\nmul 1 1 1 -3/2  # inline\navg 1/3\n")
    assert alg.mul[0][0][0] == QQ.parse("-3/2")
    assert alg.avg.get(0, 0) == QQ.parse("1/3")


def test_parse_prime_field():
    alg, _ = parse_algebra("field Fp 7\ndim 1\nmul 1 1 1 10\navg 3\n")
    assert alg.field.p == 7 and alg.mul[0][0][0] == 3


@pytest.mark.parametrize("text,needle", [
    ("dim 1\navg 1\n", "field"),
    ("field Q\ndim 1\nmul 1 1 1 1\nmul 1 1 1 2\navg 1\n", "duplicate"),
    ("field Q\ndim 1\nmul 1 1 2 1\navg 1\n", "out of range"),
    ("field Q\ndim 2\nmul 1 1 1 x\navg 1 0\navg 0 0\n", "bad scalar"),
    ("field Q\ndim 2\navg 1 0\n", "avg rows"),
    ("field Q\ndim 1\nwhatever 1\navg 1\n", "unknown"),
    ("field Fp 4\ndim 1\navg 1\n", "prime"),
])
def test_parse_errors(text, needle):
    with pytest.raises(ParseError) as err:
        parse_algebra(text)
    assert needle in str(err.value)


def test_jet_round_trip():
    alg = by_name("k2-proj")
    jet = parse_jet("order 2\naop 1 1 1 1\nmu 2 1 2 1 1/2\n", alg)
    assert jet.order == 2
    assert jet.a_list[1].get(0, 0) == QQ.one
    assert jet.mu_list[2][0][1][0] == QQ.parse("1/2")
    assert jet.mu_list[0] == alg.mul and jet.a_list[0] == alg.avg


def test_datum_round_trip():
    alg = by_name("k2-proj")
    reg = regular_bimodule(alg)
    ctx = ExtensionContext(alg, reg)
    gamma = DenseMatrix(QQ, 2, 2, [QQ.from_int(x) for x in (1, 0, 2, -1)])
    d = ctx.gamma_coboundary(gamma)
    back = parse_datum(serialize_datum(d, alg, reg), alg, reg)
    assert back == d


def test_homotopy_round_trip_and_degree_guard():
    h = parse_homotopy(open(data("two-term.hav")).read())
    again = parse_homotopy(serialize_homotopy(h))
    assert again.mul(2) == h.mul(2) and again.op("r", 2) == h.op("r", 2)
    with pytest.raises(ParseError) as err:
        # a differential entry between two degree-0 vectors breaks |m_1| = -1
        parse_homotopy("space 0 2\nm 1 1 1 1\n")
    assert "degree" in str(err.value)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_verify_catalog_files(capsys):
    for e in catalog.catalog():
        code, out, _ = run(capsys, "verify", data("%s.avg" % e.name))
        assert code == 0 and "result: pass" in out, e.name


def test_cli_verify_bimodule_file(capsys):
    code, out, _ = run(capsys, "verify", data("k2-proj-line.avg"))
    assert code == 0 and "bimodule axioms" in out


def test_cli_verify_corrupted_fails_localized(tmp_path, capsys):
    for name, alg in catalog.corrupted_variants():
        p = tmp_path / "bad.avg"
        p.write_text(serialize_algebra(alg))
        code, out, _ = run(capsys, "verify", str(p))
        assert code == 1, name
        assert "FAIL" in out and "[" in out


def test_cli_parse_error_exit_two(tmp_path, capsys):
    p = tmp_path / "broken.avg"
    p.write_text("field Q\ndim 2\nmul 5 1 1 1\navg 1 0\navg 0 0\n")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and "out of range" in err
    code, _, err = run(capsys, "verify", str(tmp_path / "missing.avg"))
    assert code == 2


def test_cli_cohomology_tables(capsys):
    code, out, _ = run(capsys, "cohomology", data("k-id.avg"),
                       "--complex", "avo", "--max-degree", "2")
    assert code == 0
    assert "H^0: 1" in out and "H^1: 1" in out and "H^2: 0" in out
    code, out, _ = run(capsys, "cohomology", data("k2-proj.avg"),
                       "--complex", "hochschild", "--max-degree", "2")
    assert code == 0 and "H^1: 0" in out and "H^2: 0" in out
    code, out, _ = run(capsys, "cohomology", data("k-id.avg"),
                       "--complex", "ava", "--max-degree", "2")
    assert code == 0 and "H^2: 1" in out and "les." in out


def test_cli_cohomology_degree_zero_only(capsys):
    code, out, _ = run(capsys, "cohomology", data("k2-proj.avg"),
                       "--complex", "hochschild", "--max-degree", "0")
    assert code == 0
    assert "H^0: 2" in out and "H^1" not in out


def test_cli_cohomology_cap_guard(capsys):
    code, _, err = run(capsys, "cohomology", data("tri2-e11.avg"),
                       "--max-degree", "12")
    assert code == 2 and "budget" in err


def test_cli_deform(capsys):
    code, out, _ = run(capsys, "deform", data("k2-proj.avg"),
                       data("k2-proj-scale.jet"), "--search-trivial")
    assert code == 0
    assert "order-1-cocycle" in out and "obstructed at order 1" in out


def test_cli_deform_trivial_jet(tmp_path, capsys):
    # coboundary jet: trivial to order 1, iso attached
    alg = by_name("k2-proj")
    from avgcoh.deformations import DeformationContext
    ctx = DeformationContext(alg)
    phi = DenseMatrix(QQ, 2, 2, [QQ.from_int(x) for x in (0, 1, 1, 0)])
    vec = []
    for j in range(2):
        vec.extend(phi.col(j))
    img = ctx.ava.diffs[1].apply(vec + [QQ.zero] * 2)
    mu1, a1 = ctx.vector_to_pair(img)
    lines = ["order 1"]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                if mu1[i][j][k] != 0:
                    lines.append("mu 1 %d %d %d %s" % (i + 1, j + 1, k + 1, mu1[i][j][k]))
            if a1.get(i, j) != 0:
                lines.append("aop 1 %d %d %s" % (i + 1, j + 1, a1.get(i, j)))
    p = tmp_path / "cob.jet"
    p.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "deform", data("k2-proj.avg"), str(p),
                       "--search-trivial")
    assert code == 0 and "trivial to order 1" in out and "phi1" in out


def test_cli_extend(capsys):
    code, out, _ = run(capsys, "extend", data("k2-proj.avg"), "--classify",
                       "--compare", data("k2-proj-zero.ext"),
                       data("k2-proj-cob.ext"))
    assert code == 0
    assert "h2: 2" in out and "isomorphic; gamma" in out
    code, out, _ = run(capsys, "extend", data("k2-proj.avg"),
                       "--from-cocycle", data("k2-proj-cob.ext"))
    assert code == 0 and "datum-is-cocycle" in out


def test_cli_extend_non_cocycle_exit(tmp_path, capsys):
    p = tmp_path / "bad.ext"
    p.write_text("psi 1 2 1 1\n")
    code, out, _ = run(capsys, "extend", data("k2-proj.avg"),
                       "--from-cocycle", str(p))
    assert code == 1  # datum fails the cocycle check and the build fails
    assert "FAIL" in out
    code, _, err = run(capsys, "extend", data("k2-proj.avg"), "--compare",
                       str(p), data("k2-proj-zero.ext"))
    assert code == 2  # comparison requires cocycles


def test_cli_linfty(capsys):
    code, out, _ = run(capsys, "linfty", data("k2-proj.avg"), "--mc",
                       "--twist-compare", "--max-degree", "1")
    assert code == 0 and "mc-residual" in out and "twist-degree-1" in out
    code, out, _ = run(capsys, "linfty", "--graded-space", "0:1,1:1",
                       "--check-identities", "--arity-cap", "4")
    assert code == 0 and "identities-run" in out


def test_cli_linfty_perturbed_fails_with_block(tmp_path, capsys):
    alg = by_name("k2-proj")
    bad = alg.with_operator(alg.avg.with_entry(0, 1, QQ.one))
    p = tmp_path / "bad.avg"
    p.write_text(serialize_algebra(bad))
    code, out, _ = run(capsys, "linfty", str(p), "--mc")
    assert code == 1
    assert "comparison fails" in out


def test_cli_linfty_characteristic_guard(tmp_path, capsys):
    p = tmp_path / "fp.avg"
    p.write_text("field Fp 5\ndim 1\nmul 1 1 1 1\navg 1\n")
    code, _, err = run(capsys, "linfty", str(p), "--mc")
    assert code == 2 and "field Q" in err


def test_cli_homotopy(capsys):
    code, out, _ = run(capsys, "homotopy", data("two-term.hav"),
                       "--arity-cap", "2")
    assert code == 0 and "defect-right-cancelled" in out
    code, out, _ = run(capsys, "homotopy", data("k2-proj-strict.hav"))
    assert code == 0 and "identity-ii[2]" in out


def test_cli_homotopy_random_family_fails_localized(tmp_path, capsys):
    p = tmp_path / "rand.hav"
    p.write_text("space 0 1\nspace 1 1\nm 1 2 1 1\nm 2 1 1 1 1\n"
                 "aop 1 1 1\nar 2 1 1 2 1\n")
    code, out, _ = run(capsys, "homotopy", str(p), "--arity-cap", "2")
    assert code == 1
    assert "FAIL identity-" in out


def test_cli_reports_byte_stable(capsys):
    args = ("cohomology", data("k2-proj.avg"), "--complex", "ava",
            "--max-degree", "2")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and out1 == out2
    args = ("homotopy", data("two-term.hav"), "--arity-cap", "2")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_cli_step_budget(capsys, monkeypatch):
    monkeypatch.setenv("AVGCOH_STEP_BUDGET", "3")
    code, _, err = run(capsys, "cohomology", data("k2-proj.avg"),
                       "--complex", "ava", "--max-degree", "2")
    assert code == 2 and "budget" in err
    monkeypatch.setenv("AVGCOH_STEP_BUDGET", "not-a-number")
    code, _, err = run(capsys, "verify", data("k-id.avg"))
    assert code == 2
    monkeypatch.delenv("AVGCOH_STEP_BUDGET")
    code, _, _ = run(capsys, "verify", data("k-id.avg"))
    assert code == 0


def test_cli_usage_error(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
