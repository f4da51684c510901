import json

import pytest

from strata_lab import zoo
from strata_lab.cli import run
from strata_lab.coeff import Coefficient
from strata_lab.dsl import DslError, parse, print_presentation
from strata_lab.pbw import monomial, normal_form


PLANE_FILE = """\
algebra plane
params q
generators x1 x2
rules
x2 * x1 = q^-1 * x1 * x2
weights
x1 = (1, 0)
x2 = (0, 1)
"""


def write(tmp_path, text, name="alg.txt"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def report_of(out):
    return json.loads(out)


# -- parsing -------------------------------------------------------------------


def test_parse_zoo_call():
    p = parse("use quantum_affine(n=2)\n")
    assert p == zoo.quantum_affine_generic(2)
    assert p.context.symbols == ("q_1_2",)


def test_parse_explicit_file():
    p = parse(PLANE_FILE)
    assert p.generators == ("x1", "x2")
    q = Coefficient.symbol(p.context, "q")
    assert normal_form(p, [("x2", 1), ("x1", 1)]) == monomial(p, (1, 1), q.invert_unit())
    assert [tuple(w) for w in p.weights] == [(1, 0), (0, 1)]


def test_parse_missing_rule_pair():
    bad = "algebra a\nparams q\ngenerators x1 x2 x3\nrules\nx2 * x1 = x1 * x2\n"
    with pytest.raises(DslError, match="missing rule pair"):
        parse(bad)


def test_parse_unknown_symbol():
    bad = PLANE_FILE.replace("q^-1", "r^-1")
    with pytest.raises(DslError, match="unknown symbol"):
        parse(bad)


def test_parse_non_unit_swap():
    bad = PLANE_FILE.replace("q^-1 * x1 * x2", "(1 + q) * x1 * x2")
    with pytest.raises(DslError, match="not a unit"):
        parse(bad)


def test_parse_rejects_unnormalized_tail():
    bad = PLANE_FILE.replace("q^-1 * x1 * x2", "q^-1 * x2 * x1")
    with pytest.raises(DslError, match="normal form"):
        parse(bad)


def test_parse_error_carries_location():
    try:
        parse("algebra a\nparams q\ngenerators x1 x2\nrules\nx2 * x1 = ^\n")
    except DslError as exc:
        assert exc.line == 5
    else:
        pytest.fail("expected a DslError")


def test_round_trip_all_zoo_presentations():
    presentations = [
        zoo.quantum_affine_generic(1),
        zoo.quantum_affine_generic(3),
        zoo.quantum_affine_single(4),
        zoo.quantum_torus_generic(3),
        zoo.quantum_torus_single(2),
        zoo.quantum_matrices_generic(2, 2),
        zoo.quantum_matrices_generic(2, 3),
        zoo.quantum_matrices_single(3, 3),
        zoo.quantized_weyl_generic(1),
        zoo.quantized_weyl_generic(3),
        zoo.quantum_symplectic(1),
        zoo.quantum_symplectic(3),
        zoo.quantum_euclidean(2),
        zoo.quantum_euclidean(3),
        zoo.quantum_euclidean(5),
    ]
    for p in presentations:
        assert parse(print_presentation(p)) == p, p.name


# -- subcommands -----------------------------------------------------------------


def test_verify_ok_exit_0(tmp_path, capsys):
    path = write(tmp_path, "use quantum_matrices(m=2, n=2)\n")
    code, out = invoke(capsys, "verify", path)
    assert code == 0
    rep = report_of(out)
    assert rep["status"] == "ok"
    assert rep["results"]["confluent"] is True
    assert rep["results"]["triples"] == 4


def test_verify_nonconfluent_exit_1(tmp_path, capsys):
    # 2x2 quantum matrices with one commutation scalar corrupted
    from strata_lab.coeff import UnitMonomial
    from strata_lab.pbw import Presentation, Rule
    p = zoo.quantum_matrices_generic(2, 2)
    rules = dict(p.rules)
    old = rules[(2, 0)].swap
    rules[(2, 0)] = Rule(UnitMonomial(old.sign, tuple(2 * e for e in old.exponents)))
    broken = Presentation(p.context, p.generators, rules, p.weights, name="broken")
    path = write(tmp_path, print_presentation(broken))
    code, out = invoke(capsys, "verify", path)
    assert code == 1
    rep = report_of(out)
    assert rep["status"] == "fail"
    assert rep["results"]["unresolved"]


def test_parse_error_exit_2(tmp_path, capsys):
    path = write(tmp_path, "algebra ???\n")
    code, out = invoke(capsys, "verify", path)
    assert code == 2
    assert report_of(out)["status"] == "error"


def test_usage_error_exit_2(capsys):
    assert run(["no-such-command"]) == 2


def test_nf_terms(tmp_path, capsys):
    path = write(tmp_path, "use quantum_affine(n=2)\n")
    code, out = invoke(capsys, "nf", path, "x2*x1")
    assert code == 0
    rep = report_of(out)
    assert rep["results"]["terms"] == [{"coeff": "q_1_2^-1", "monomial": [1, 1]}]


def test_nf_specialize(tmp_path, capsys):
    path = write(tmp_path, "use quantum_affine(n=2)\n")
    code, out = invoke(capsys, "nf", path, "x2*x1", "--specialize", "q_1_2=2")
    assert code == 0
    rep = report_of(out)
    assert rep["results"]["terms"][0]["value"] == "1/2"


def test_hilbert_command(tmp_path, capsys):
    path = write(tmp_path, "use quantum_matrices(m=2, n=2)\n")
    code, out = invoke(capsys, "hilbert", path, "--degree", "2")
    assert code == 0
    rep = report_of(out)
    assert rep["results"]["counts"][-1] == {
        "degree": 2, "count": 10, "commutative_count": 10}


def test_qdet_and_sl_commands(capsys):
    code, out = invoke(capsys, "qdet", "--n", "2", "--single-param")
    assert code == 0
    rep = report_of(out)
    assert rep["results"]["terms"] == [
        {"coeff": "1", "monomial": [1, 0, 0, 1]},
        {"coeff": "-q", "monomial": [0, 1, 1, 0]},
    ]
    code, out = invoke(capsys, "qdet-verify", "--n", "2")
    assert code == 0 and report_of(out)["results"]["passed"] is True
    code, out = invoke(capsys, "sl-check", "--n", "2", "--single-param")
    assert code == 0
    rep = report_of(out)
    assert rep["results"]["central"] is True and rep["results"]["common_value"] == "q^-3"
    code, out = invoke(capsys, "sl-check", "--n", "2")
    assert report_of(out)["results"]["central"] is False


def test_weights_and_eigencheck(tmp_path, capsys):
    path = write(tmp_path, "use quantum_affine(n=3)\n")
    code, out = invoke(capsys, "weights", path, "x1*x3")
    rep = report_of(out)
    assert rep["results"]["terms"] == [{"monomial": [1, 0, 1], "weight": [1, 0, 1]}]
    code, out = invoke(capsys, "eigencheck", path, "x1 + x2")
    rep = report_of(out)
    assert rep["results"]["homogeneous"] is False and rep["results"]["weight"] is None


def test_normalcheck(tmp_path, capsys):
    path = write(tmp_path, "use quantum_affine(n=2)\n")
    code, out = invoke(capsys, "normalcheck", path, "x1")
    rep = report_of(out)
    assert rep["results"]["scalar_normal"] is True
    assert rep["results"]["mus"]["x2"] == "q_1_2"


def test_hspec_strata_center_witness(tmp_path, capsys):
    path = write(tmp_path, "use quantum_affine(n=2)\n")
    code, out = invoke(capsys, "hspec", path)
    rep = report_of(out)
    assert rep["results"]["count"] == 4
    code, out = invoke(capsys, "strata", path, "--box", "2")
    assert code == 0
    rep = report_of(out)
    ranks = [s["center_rank"] for s in rep["results"]["strata"]]
    assert ranks == [0, 1, 1, 0]
    assert all(s["box_check"] for s in rep["results"]["strata"])
    code, out = invoke(capsys, "center", path, "--hprime", "1")
    rep = report_of(out)
    assert rep["results"]["center_rank"] == 1 and rep["results"]["torus_size"] == 1
    code, out = invoke(capsys, "witness", path, "--from", "", "--to", "1")
    rep = report_of(out)
    assert rep["results"]["generator"] == 1
    assert rep["results"]["mus"]["x2"] == "q_1_2"


def test_poset_json_and_dot(tmp_path, capsys):
    path1 = write(tmp_path, "use quantum_affine(n=1)\n", "qa1.txt")
    code, out = invoke(capsys, "poset", path1, "--dot")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("->") == 1 and out.count("label=") == 2

    path2 = write(tmp_path, "use quantum_affine(n=2)\n", "qa2.txt")
    code, out = invoke(capsys, "poset", path2)
    rep = report_of(out)
    assert len(rep["results"]["nodes"]) == 4
    assert len(rep["results"]["edges"]) == 4  # diamond
    ranks = {tuple(n["hprime"]): n["center_rank"] for n in rep["results"]["nodes"]}
    assert ranks == {(): 0, (1,): 1, (2,): 1, (1, 2): 0}

    path0 = write(tmp_path, "use quantum_affine(n=0)\n", "qa0.txt")
    code, out = invoke(capsys, "poset", path0, "--dot")
    assert code == 0
    assert out.count("label=") == 1 and "->" not in out


def test_reports_are_deterministic(tmp_path, capsys):
    path = write(tmp_path, "use quantum_matrices(m=2, n=2)\n")
    code1, out1 = invoke(capsys, "verify", path)
    code2, out2 = invoke(capsys, "verify", path)
    assert out1 == out2 and code1 == code2 == 0
    code1, out1 = invoke(capsys, "qdet", "--n", "3")
    code2, out2 = invoke(capsys, "qdet", "--n", "3")
    assert out1 == out2


def test_fuel_flag_and_env(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "use quantum_matrices(m=2, n=2)\n")
    code, out = invoke(capsys, "nf", path, "X22*X11*X21", "--fuel", "1")
    assert code == 1
    assert report_of(out)["status"] == "fail"
    monkeypatch.setenv("STRATA_LAB_FUEL", "1")
    code, out = invoke(capsys, "nf", path, "X22*X11*X21")
    assert code == 1
    monkeypatch.setenv("STRATA_LAB_FUEL", "not-a-number")
    assert run(["nf", path, "x1"]) == 2
    capsys.readouterr()
    monkeypatch.delenv("STRATA_LAB_FUEL")
    code, out = invoke(capsys, "nf", path, "X22*X11*X21")
    assert code == 0


def test_wrong_algebra_kind_is_a_usage_error(tmp_path, capsys):
    path = write(tmp_path, "use quantum_torus(n=2)\n")
    code, out = invoke(capsys, "hilbert", path, "--degree", "2")
    assert code == 2
    assert report_of(out)["status"] == "error"
    code, out = invoke(capsys, "nf", path, "x1^-1")
    assert code == 0  # inverses are fine on a torus
    path2 = write(tmp_path, "use quantum_affine(n=2)\n", "qa.txt")
    code, out = invoke(capsys, "nf", path2, "x1^-1")
    assert code == 2  # but not on a polynomial generator


def test_genericity_failure_exit_1(tmp_path, capsys):
    signed = """\
algebra signed
params q
generators x1 x2
rules
x2 * x1 = -q * x1 * x2
weights
x1 = (1, 0)
x2 = (0, 1)
"""
    path = write(tmp_path, signed)
    code, out = invoke(capsys, "hspec", path)
    assert code == 1
    assert report_of(out)["status"] == "fail"
