import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from btoeplitz.errors import UnknownConstraint, UnknownTheorem
from btoeplitz.harness import (
    IFF_THEOREMS,
    THEOREMS,
    TrialConfig,
    TrialOutcome,
    coverage,
    derive_seed,
    gen_algebra,
    gen_spec,
    gen_unitary,
    run_theorem_suite,
)
from btoeplitz.matrix import DenseMat, cyclic_shift
from btoeplitz.toeplitz import toeplitz_recognize

SMALL = TrialConfig(seed=3, trials=12, n_range=(2, 3), d_range=(1, 2))


def test_config_validation():
    for bad in (dict(trials=0), dict(n_range=(3, 2)), dict(d_range=(0, 1)),
                dict(coefficient_bound=0), dict(algebra_kinds=()), dict(algebra_kinds=("jordan",))):
        with pytest.raises(ValueError):
            TrialConfig(**bad)


def test_outcome_agreement_field():
    assert TrialOutcome("L2.2", 0, {}, True, True).agreement
    assert not TrialOutcome("L2.2", 0, {}, True, False).agreement


def test_seed_derivation_is_counter_based():
    assert derive_seed(1, "T5.2", 4) == derive_seed(1, "T5.2", 4)
    assert len({derive_seed(1, "T5.2", k) for k in range(200)}) == 200
    assert derive_seed(1, "T5.2", 0) != derive_seed(1, "L2.1", 0)


def test_gen_algebra_examples():
    diag = gen_algebra("diagonal", 2, 5)
    assert diag.basis == (DenseMat.diag([1, 0]), DenseMat.diag([0, 1]))
    circ = gen_algebra("circulant", 3, 5)
    c = cyclic_shift(3)
    assert circ.dim == 3 and all(m in circ for m in (DenseMat.identity(3), c, c @ c))


@given(st.sampled_from(["diagonal", "circulant", "poly", "explicit"]), st.integers(1, 4),
       st.integers(0, 2**64 - 1))
def test_generated_algebras_are_star_closed_and_deterministic(kind, d, seed):
    alg = gen_algebra(kind, d, seed)
    assert alg.is_star_closed()
    assert DenseMat.identity(d) in alg
    again = gen_algebra(kind, d, seed)
    assert again.basis == alg.basis
    if d > 1:
        assert alg.dim > 1


def test_gen_algebra_rejects_bad_input():
    with pytest.raises(ValueError):
        gen_algebra("diagonal", 0, 1)
    with pytest.raises(ValueError):
        gen_algebra("jordan", 2, 1)


def test_gen_spec_modes():
    alg = gen_algebra("circulant", 2, 1)
    lo = gen_spec(alg, 4, 9, "lower_only")
    assert all(w.is_zero for w in lo.upper)
    assert gen_spec(alg, 4, 9) == gen_spec(alg, 4, 9)
    assert gen_spec(alg, 4, 9).in_algebra(alg)
    herm = gen_spec(alg, 4, 9, "hermitian").build()
    assert herm == herm.adjoint()
    with pytest.raises(UnknownConstraint):
        gen_spec(alg, 4, 9, "banded")
    with pytest.raises(UnknownConstraint):
        gen_spec(alg, 4, 9, "sx_commutant")


def test_gen_spec_sx_pattern_recognized():
    alg = gen_algebra("diagonal", 2, 1)
    x = DenseMat.diag(["3/5+4/5i", "i"])
    spec = gen_spec(alg, 3, 2, "sx_commutant", x=x)
    back = toeplitz_recognize(spec.build())
    for k in (1, 2):
        assert back.upper[k - 1] == x.adjoint() @ back.lower[3 - k - 1].adjoint()


@pytest.mark.parametrize("kind", ["diagonal", "circulant", "poly", "explicit"])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_gen_unitary(kind, d):
    for seed in range(5):
        alg = gen_algebra(kind, d, seed)
        x = gen_unitary(alg, seed)
        assert x.adjoint() @ x == DenseMat.identity(d)
        assert alg.in_commutant(x)
        assert gen_unitary(alg, seed) == x


def test_gen_unitary_finds_nonscalar_for_diagonal():
    alg = gen_algebra("diagonal", 2, 0)
    xs = {gen_unitary(alg, s) for s in range(20)}
    assert any(x[0, 0] != x[1, 1] for x in xs)


def test_unknown_theorem():
    with pytest.raises(UnknownTheorem):
        run_theorem_suite("T9.9", SMALL)


def test_sixteen_suites_registered():
    assert list(THEOREMS) == ["L2.1", "L2.2", "L3.1", "T3.2i", "T3.2ii", "C3.3", "C3.4", "T3.5",
                              "P4.1", "R4.2", "T4.4", "T4.5", "C4.6", "L5.1", "T5.2", "C5.3"]


@pytest.mark.parametrize("theorem_id", list(THEOREMS))
def test_every_suite_agrees(theorem_id):
    outcomes = run_theorem_suite(theorem_id, SMALL)
    assert [o.trial for o in outcomes] == list(range(SMALL.trials))
    bad = [o for o in outcomes if not o.agreement]
    assert not bad, bad[0].to_json()


@pytest.mark.parametrize("theorem_id", IFF_THEOREMS)
def test_iff_suites_cover_both_truth_values(theorem_id):
    config = TrialConfig(seed=11, trials=20)
    true, false = coverage(run_theorem_suite(theorem_id, config))
    assert true >= 4 and false >= 4


def test_t52_seed_7():
    outcomes = run_theorem_suite("T5.2", TrialConfig(seed=7, trials=100))
    assert len(outcomes) == 100 and all(o.agreement for o in outcomes)


def test_suites_deterministic_and_parallel_invariant():
    config = TrialConfig(seed=5, trials=8)
    serial = run_theorem_suite("T3.2i", config)
    again = run_theorem_suite("T3.2i", config)
    parallel = run_theorem_suite("T3.2i", config, jobs=2)
    dump = lambda outs: [pickle.dumps(o.to_json()) for o in outs]
    assert dump(serial) == dump(again) == dump(parallel)


def test_engineered_violation_breaks_direct_product():
    outcomes = run_theorem_suite("T3.2i", TrialConfig(seed=1, trials=10))
    violated = [o for o in outcomes if "perturbed" in o.instance["family"]]
    assert violated
    for o in violated:
        assert o.criterion_result is False and o.oracle_result is False


@pytest.mark.parametrize("theorem_id", ["L2.2", "T3.2i", "C3.3", "P4.1", "T5.2"])
def test_satisfying_and_violating_schedule(theorem_id):
    outcomes = run_theorem_suite(theorem_id, TrialConfig(seed=9, trials=40))
    for o in outcomes:
        assert o.criterion_truth is (o.trial % 2 == 0)
