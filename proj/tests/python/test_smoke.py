from pathlib import Path

import pytest

import kpinf

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def e2():
    return kpinf.KGraph.load(str(DATA / "e2.kg"))


@pytest.fixture
def t2():
    return kpinf.KGraph.load(str(DATA / "t2.kg"))


def test_graph_shape(e2):
    assert e2.rank == 1
    assert e2.vertices == ["v"]
    assert [e[0] for e in e2.edges] == ["a", "b"]
    assert e2.validate() == []
    assert kpinf.KGraph.from_text(e2.to_text()).to_text() == e2.to_text()


def test_validate_reports_missing_square():
    bad = kpinf.KGraph.load(str(DATA / "t2_missing.kg"))
    [(kind, _, items)] = bad.validate()
    assert kind == "missing-square"
    assert items == ["e", "f"]


def test_parse_error():
    with pytest.raises(kpinf.ParseError, match="line 6, column 10"):
        kpinf.KGraph.load(str(DATA / "bad_square.kg"))


def test_paths_and_mce(e2, t2):
    assert sorted(e2.paths("v", [2])) == ["a.a", "a.b", "b.a", "b.b"]
    assert e2.mce("a", "b") == []
    assert t2.mce("e", "f") == ["e.f"]
    with pytest.raises(kpinf.PreconditionError):
        e2.paths("v", [1, 1])


def test_ideals():
    om = kpinf.KGraph.load(str(DATA / "omega11.kg"))
    lattice = om.ideals()
    assert lattice[0] == []
    assert len(lattice[-1]) == len(om.vertices)
    assert om.closure(["v0_0"]) in lattice
    q = om.quotient(lattice[1])
    assert q.validate() == []


def test_algebra(e2):
    v = e2.element("v")
    proj = e2.element("a a^* + b b^*")
    assert proj == v
    assert (e2.element("a^* b")).is_zero()
    assert e2.element("a^* a") == v
    x = e2.element("1/2*a a^* + b a^*")
    assert (x * x).normal_form() == (x * x)
    assert x.steinberg_round_trip() == x
    assert e2.element("a a^*").is_idempotent()
    assert e2.element("a b^*").gradings() == [[0]]
    f7 = e2.element("3*a b^*", field="F7")
    assert str(f7 + f7 + f7) == "2*a b^*"
    with pytest.raises(kpinf.ParseError):
        e2.element("(a b)^*")


def test_classify(e2, t2):
    assert e2.classify()["verdict"] == "properly-purely-infinite"
    assert t2.classify()["verdict"] == "inconclusive"
    om = kpinf.KGraph.load(str(DATA / "omega11.kg"))
    assert om.classify()["verdict"] == "not-purely-infinite"


def test_witness_and_contraction(e2):
    proof = e2.witness("v")
    assert proof["status"] == "properly-infinite"
    c = e2.contract("v")
    assert c == {"lambda": "a", "mu": "a.a", "entrance": "b"}
    assert kpinf.KGraph.load(str(DATA / "e1.kg")).contract("v") is None
