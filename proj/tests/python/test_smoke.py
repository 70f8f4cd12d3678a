import math

import pytest

import intrinlip


def test_group_operations():
    h = intrinlip.group("heisenberg")
    assert h.normal_side == "N_normal"
    g = [1.0, 2.0, 3.0]
    n, k = h.decompose(g)
    assert n == pytest.approx([0.0, 2.0, 4.0])
    assert k == pytest.approx([1.0, 0.0, 0.0])
    assert h.multiply(n, k) == pytest.approx(g)
    assert h.norm([0.0, 0.0, 1.0]) == pytest.approx(1.0)
    assert h.multiply(g, h.inverse(g)) == pytest.approx(h.identity())


def test_dihedral_word_metric():
    d4 = intrinlip.group("dihedral:4")
    assert d4.is_finite
    assert d4.norm([2, 1]) == 3
    assert d4.dist_to_subgroup([1, 0]) == 1


def test_maps_and_constants():
    ab = intrinlip.group("abelian:1,1")
    phi = intrinlip.map(ab, "linear:2")
    assert phi([1.0, 0.0]) == pytest.approx([0.0, 2.0])
    assert phi.graph_point([1.0, 0.0]) == pytest.approx([1.0, 2.0])
    pairs = phi.sample_pairs(200, seed=3)
    assert phi.fssc(pairs) == pytest.approx(2.0)
    assert phi.is_subgroup(pairs)
    assert phi.quasi_distance([1.0, 0.0], [-0.5, 0.0]) == pytest.approx(1.5)
    c = ab.splitting_constants(samples=5000)
    assert c[1] == pytest.approx(math.sqrt(2.0), abs=1e-5)
    assert ab.minimal_opening("split_left", [3.0, 4.0]) == pytest.approx(0.75)


def test_translate():
    h = intrinlip.group("heisenberg")
    phi = intrinlip.map(h, "linear:0.5")
    q = [0.3, -0.2, 0.1]
    n = [0.0, 0.4, 0.7]
    x = h.multiply(q, phi.graph_point(n))
    psi = phi.translate(q)
    assert psi.graph_point(h.project_n(x)) == pytest.approx(x)


def test_verify_report():
    report = intrinlip.verify("dihedral:4", suite="translation", exhaustive=True)
    assert report["passed"] is True
    assert report["group"] == "dihedral:4"
    assert any(c["check_id"] == "translation.identity_exhaustive" for c in report["checks"])


def test_estimate_report():
    report = intrinlip.estimate("abelian:1,1", map="linear:2", samples=2000)
    assert report["checks"][0]["constants"]["fssc"] == pytest.approx(2.0, rel=1e-6)


def test_invalid_spec():
    with pytest.raises(ValueError):
        intrinlip.group("nonsense")
    with pytest.raises(ValueError):
        intrinlip.verify("heisenberg", samples=0)
