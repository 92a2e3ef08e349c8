import json

import pytest

from hopfkit import hzf
from hopfkit.catalog import H4, kX, kZ, kZn, p_alpha, utilde
from hopfkit.coquasi import quadruples_agree
from hopfkit.exactmath import QQ, FunctionField, PrimeField
from hopfkit.hopfcore import check_hopf, structure_equal
from hopfkit.pairings import forms_equal

F3 = PrimeField(3)
FA = FunctionField(["alpha"])


def _twice(dump, load, x):
    text = hzf.dumps(dump(x))
    back = load(json.loads(text))
    again = hzf.dumps(dump(back))
    return text, again, back


@pytest.mark.parametrize("make", [lambda: H4(), lambda: H4(FA), lambda: kZn(3, F3), lambda: utilde(1),
                                  lambda: kZ(QQ), lambda: kX(FA)])
def test_algebra_round_trip_is_byte_stable(make):
    A = make()
    text, again, back = _twice(hzf.dump_algebra, hzf.load_algebra, A)
    assert text == again
    if A.is_finite:
        assert structure_equal(A, back).ok
    else:
        assert check_hopf(back, 3).ok


def test_algebra_file_shape():
    obj = hzf.dump_algebra(H4())
    assert obj["field"] == "Q" and obj["unit"] == "1"
    assert ["x", "g", {"gx": "-1"}] in obj["mult"]
    assert obj["counit"] == {"1": "1", "g": "1"}


def test_field_override_reparses_literals():
    A = hzf.load_algebra(hzf.dump_algebra(H4()), F3)
    assert A.field == F3 and check_hopf(A).ok


def test_form_round_trips():
    A = H4(FA)
    p = p_alpha(A, "alpha")
    obj = hzf.dump_form(p, "H4", "H4")
    back = hzf.load_form(json.loads(hzf.dumps(obj)), {"H4": A})
    assert forms_equal(p, back).ok
    assert hzf.dumps(hzf.dump_form(back, "H4", "H4")) == hzf.dumps(obj)


def test_rule_form_round_trip(fx):
    f = fx("kZ-bowtie-kX")
    algs = {"kZ": f.algebras["kZ"], "kX": f.algebras["kX"]}
    lam = f.form("lambda")
    obj = hzf.dump_form(lam, "kX", "kZ")
    assert obj["rule"] == "kX-kZ"
    back = hzf.load_form(obj, algs)
    assert forms_equal(lam, back, 3).ok


@pytest.mark.parametrize("fixture,key", [("H4-double", "double"), ("Borel-double(1)", "double"),
                                         ("Z2-toys", "smash"), ("Z2-toys", "crossed"), ("Z2-toys", "D"),
                                         ("Z2-toys", "trivial"), ("Z2-toys", "tensor")])
def test_product_round_trip(fx, fixture, key):
    P = fx(fixture).products[key]
    text, again, back = _twice(hzf.dump_product, lambda o: hzf.load_product(o), P)
    assert text == again
    assert back.provenance == P.provenance
    assert structure_equal(P, back).ok


def test_rule_backed_gqd_round_trip(fx):
    P = fx("kZ-bowtie-kX").products["double"]
    text, again, back = _twice(hzf.dump_product, lambda o: hzf.load_product(o), P)
    assert text == again and not back.is_finite
    x, y = (("g", 1), ("X", 2)), (("g", -1), ("X", 1))
    assert back.mult(x, y) == P.mult(x, y)


def test_rule_backed_sigma_is_not_serializable(fx):
    with pytest.raises(hzf.HZFError):
        hzf.dump_form(fx("kZ-bowtie-kX").form("sigma"), "P", "P")


def test_quadruple_round_trip(fx):
    f = fx("Borel-double(1)")
    P, q = f.products["double"], f.quadruples["canonical"]
    obj = hzf.dump_quadruple(q)
    back = hzf.load_quadruple(json.loads(hzf.dumps(obj)), P)
    assert quadruples_agree(q, back).ok
    assert hzf.dumps(hzf.dump_quadruple(back)) == hzf.dumps(obj)


def test_tampered_product_tables_are_detected(fx):
    obj = hzf.dump_product(fx("Z2-toys").products["smash"])
    for row in obj["mult"]:
        if row[2]:
            k = next(iter(row[2]))
            row[2][k] = "2"
            break
    with pytest.raises(hzf.HZFError):
        hzf.load_product(obj)


def test_datum_block_builds_smash_product():
    A = kZn(2, F3)
    g0, g1 = ["g", 0], ["g", 1]
    block = {
        "algebras": {"Z2": hzf.dump_algebra(A)},
        "base": "Z2", "hpart": "Z2", "kind": "crossed",
        "lact": [[g1, g1, {"(g,1)": "1"}], [g1, g0, {"(g,0)": "1"}],
                 [g0, g0, {"(g,0)": "1"}], [g0, g1, {"(g,1)": "1"}]],
    }
    P = hzf.build_from_datum(block)
    assert P.dim() == 4 and check_hopf(P).ok


def test_datum_block_errors():
    A = kZn(2, F3)
    base = {"algebras": {"Z2": hzf.dump_algebra(A)}, "base": "Z2", "hpart": "Z2"}
    with pytest.raises(hzf.HZFError):
        hzf.build_from_datum({**base, "kind": "mystery"})
    with pytest.raises(hzf.HZFError):
        hzf.build_from_datum({**base, "kind": "gqd"})
    with pytest.raises(hzf.HZFError):
        hzf.build_from_datum({**base, "hpart": "Nope"})
    with pytest.raises(hzf.HZFError):
        hzf.build_from_datum({**base, "kind": "dcp", "cocycle": []})


def test_gqd_datum_block():
    A = H4(F3)
    block = {"algebras": {"H4": hzf.dump_algebra(A)}, "base": "H4", "hpart": "H4", "kind": "gqd",
             "pairing": hzf.dump_form(p_alpha(A, 1), "H4", "H4")}
    P = hzf.build_from_datum(block)
    assert P.dim() == 16 and P.provenance == "gqd"


def test_bad_inputs():
    with pytest.raises(hzf.HZFError):
        hzf.load_algebra({"field": "Q", "basis": ["1"], "unit": "2", "mult": [], "comult": [], "counit": {}})
    with pytest.raises(hzf.HZFError):
        hzf.load_form({"left": "A", "right": "B", "entries": []}, {})
    with pytest.raises(hzf.HZFError):
        hzf.load_product(hzf.dump_algebra(H4()))


def test_read_rejects_broken_json(tmp_path):
    path = tmp_path / "bad.hzf"
    path.write_text("{not json")
    with pytest.raises(hzf.HZFError):
        hzf.read(str(path))


def test_write_then_read(tmp_path):
    path = tmp_path / "h4.hzf"
    hzf.write(str(path), hzf.dump_algebra(H4()))
    assert structure_equal(hzf.load_algebra(hzf.read(str(path))), H4()).ok
