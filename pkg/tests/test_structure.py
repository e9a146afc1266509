import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homgeo.errors import SlotSymmetryViolation
from homgeo.lie import build_lie_algebra
from homgeo.reductive import Frame, InvariantMetric, ReductiveDecomposition
from homgeo.structure import (
    StructureTensor,
    TorsionTensor,
    classify,
    contract_12,
    cyclic_sum,
    decompose,
    homogeneous_structure,
    structure_to_torsion,
    torsion_structure_convert,
    torsion_to_structure,
    trace_form,
)


def milnor_dec(l1, l2, l3):
    alg = build_lie_algebra(
        3, {(1, 2): {0: l1}, (2, 0): {1: l2}, (0, 1): {2: l3}}
    )
    return ReductiveDecomposition(alg, (), (0, 1, 2)), InvariantMetric.identity(3)


def random_structure(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n, n))
    return (a - np.einsum("abc->acb", a)) / 2.0


def random_torsion(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n, n))
    return (a - np.einsum("abc->bac", a)) / 2.0


def test_slot_validation():
    good = random_structure(3, 0)
    StructureTensor(good)
    with pytest.raises(SlotSymmetryViolation):
        StructureTensor(np.ones((3, 3, 3)))
    with pytest.raises(SlotSymmetryViolation):
        StructureTensor(np.ones((3, 3, 2)))
    with pytest.raises(SlotSymmetryViolation):
        TorsionTensor(good)  # wrong slot pair
    TorsionTensor(random_torsion(3, 1))
    with pytest.raises(SlotSymmetryViolation):
        torsion_structure_convert(good)  # bare arrays are ambiguous


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_conversion_round_trips(n, seed):
    s = StructureTensor(random_structure(n, seed))
    t = structure_to_torsion(s)
    back = torsion_to_structure(t)
    assert np.allclose(back.components, s.components, atol=1e-12)

    t0 = TorsionTensor(random_torsion(n, seed + 1))
    s0 = torsion_to_structure(t0)
    assert np.allclose(structure_to_torsion(s0).components, t0.components,
                       atol=1e-12)
    # the dispatching converter agrees with the direct calls
    assert np.allclose(torsion_structure_convert(s).components, t.components)
    assert np.allclose(torsion_structure_convert(t0).components, s0.components)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_trace_form_matches_structure_contraction(n, seed):
    t = TorsionTensor(random_torsion(n, seed))
    eta = trace_form(t)
    s = torsion_to_structure(t)
    assert np.allclose(eta, contract_12(s.components), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.integers(0, 10**6))
def test_decompose_properties(n, seed):
    a = random_structure(n, seed)
    d = decompose(a)
    parts = (d.s1, d.s2, d.s3)
    assert np.allclose(sum(parts), a, atol=1e-10)
    for i in range(3):
        for j in range(i + 1, 3):
            assert abs(float(np.sum(parts[i] * parts[j]))) <= 1e-10
    # defining traces of each summand
    assert np.abs(d.s3 + np.einsum("abc->bac", d.s3)).max() <= 1e-10
    assert np.abs(cyclic_sum(d.s2)).max() <= 1e-10
    assert np.abs(contract_12(d.s2)).max() <= 1e-10
    # norms are the Frobenius norms and satisfy Pythagoras
    total = sum(v**2 for v in d.component_norms())
    assert total == pytest.approx(float(np.sum(a * a)), rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10**6))
def test_decompose_idempotence(n, seed):
    d = decompose(random_structure(n, seed))
    for slot, comp in (("s1", d.s1), ("s2", d.s2), ("s3", d.s3)):
        again = decompose(comp)
        assert np.allclose(getattr(again, slot), comp, atol=1e-10)
        for other in {"s1", "s2", "s3"} - {slot}:
            assert np.abs(getattr(again, other)).max() <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_dimension_two_is_vectorial(seed):
    a = random_structure(2, seed)
    d = decompose(a)
    assert np.allclose(d.s1, a)
    assert np.abs(d.s2).max() == 0.0
    assert np.abs(d.s3).max() == 0.0


def test_decompose_with_gram_matrix():
    # lowering the same tensor in a skewed basis must not change norms
    a = random_structure(4, 7)
    rng = np.random.default_rng(8)
    p = rng.standard_normal((4, 4)) + 4.0 * np.eye(4)
    skewed = np.einsum("ia,jb,kc,ijk->abc", p, p, p, a)
    gram = p.T @ p
    d_plain = decompose(a)
    d_skew = decompose(skewed, metric=gram)
    for k in ("s1", "s2", "s3"):
        assert d_plain.norms[k] == pytest.approx(d_skew.norms[k], abs=1e-8)


def test_homogeneous_structure_values():
    # abelian algebra: S vanishes identically
    dec, g = milnor_dec(0.0, 0.0, 0.0)
    assert homogeneous_structure(dec, g).norm() == 0.0
    # bi-invariant case: U = 0 and S = -(1/2) lte is totally skew
    dec, g = milnor_dec(1.0, 1.0, 1.0)
    frame = Frame(dec, g)
    s = homogeneous_structure(dec, g)
    assert np.allclose(s.components, -0.5 * frame.lte)
    d = decompose(s)
    assert d.norms["s3"] == pytest.approx(np.sqrt(1.5))
    assert d.norms["s1"] == pytest.approx(0.0, abs=1e-12)
    assert d.norms["s2"] == pytest.approx(0.0, abs=1e-12)


def test_classify_milnor_cases():
    dec, g = milnor_dec(1.0, 0.0, -1.0)
    rep = classify(dec, g)
    assert rep.traceless_cyclic and rep.cyclic and rep.traceless
    assert not rep.naturally_reductive and not rep.symmetric and not rep.vectorial
    assert rep.norms["s2"] == pytest.approx(2.0)
    assert rep.norms["s1"] == pytest.approx(0.0, abs=1e-12)
    assert rep.norms["s3"] == pytest.approx(0.0, abs=1e-12)

    rep = classify(*milnor_dec(1.0, 1.0, 1.0))
    assert rep.naturally_reductive and not rep.cyclic
    assert not rep.traceless_cyclic

    rep = classify(*milnor_dec(2.0, 1.0, 1.0))
    assert rep.traceless and not rep.cyclic and not rep.naturally_reductive

    rep = classify(*milnor_dec(0.0, 0.0, 0.0))
    assert rep.symmetric and rep.vectorial and rep.naturally_reductive
    assert rep.cyclic and rep.traceless and not rep.traceless_cyclic


def test_classify_solvable_families():
    # equal scalings: vectorial and cyclic, not traceless
    alg = build_lie_algebra(3, {(0, 1): {1: 1.0}, (0, 2): {2: 1.0}})
    dec = ReductiveDecomposition(alg, (), (0, 1, 2))
    rep = classify(dec, InvariantMetric.identity(3))
    assert rep.cyclic and rep.vectorial and not rep.traceless
    assert np.allclose(rep.eta, [-2.0, 0.0, 0.0])

    # opposite scalings: traceless cyclic
    alg = build_lie_algebra(3, {(0, 1): {1: 1.0}, (0, 2): {2: -1.0}})
    dec = ReductiveDecomposition(alg, (), (0, 1, 2))
    rep = classify(dec, InvariantMetric.identity(3))
    assert rep.traceless_cyclic and not rep.vectorial


def test_classification_report_round_trip():
    rep = classify(*milnor_dec(1.0, 0.0, -1.0))
    d = rep.to_json_dict()
    assert set(d) == {"cyclic", "traceless", "traceless_cyclic", "vectorial",
                      "naturally_reductive", "symmetric", "norms", "eta"}
    assert set(d["norms"]) == {"s1", "s2", "s3"}
    assert d["traceless_cyclic"] is True
    assert rep.booleans()["cyclic"] is True


def test_trace_form_of_canonical_torsion():
    alg = build_lie_algebra(3, {(0, 1): {1: 1.0}, (0, 2): {2: 2.0}})
    dec = ReductiveDecomposition(alg, (), (0, 1, 2))
    frame = Frame(dec, InvariantMetric.identity(3))
    eta = trace_form(TorsionTensor(-frame.lte))
    assert np.allclose(eta, frame.eta)
    assert np.allclose(eta, [-3.0, 0.0, 0.0])
