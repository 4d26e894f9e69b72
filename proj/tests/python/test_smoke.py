import math

import numpy as np
import pytest

import qjl


def test_norms_and_inner_product():
    assert qjl.l2_norm(np.array([3.0, 4.0], dtype=complex)) == pytest.approx(5.0)
    u = np.array([1.0, 1j], dtype=complex) / math.sqrt(2.0)
    assert qjl.inner_product(u, u) == pytest.approx(1.0)
    # conjugate-linear in the first argument
    assert qjl.inner_product(1j * u, u) == pytest.approx(-1j)


def test_haar_unitary_is_unitary_and_seeded():
    u1 = qjl.sample_haar_unitary(16, seed=7)
    u2 = qjl.sample_haar_unitary(16, seed=7)
    assert np.array_equal(u1, u2)
    assert qjl.unitarity_defect(u1) <= 1e-9 * 16
    assert np.linalg.norm(u1 @ u1.conj().T - np.eye(16)) <= 1e-9 * 16


def test_circuit_roundtrip_against_numpy():
    circ = qjl.generate_local_random_circuit(3, 25, seed=11)
    assert circ["num_qubits"] == 3
    assert len(circ["gates"]) == 25
    v = qjl.sample_haar_unit_vector(8, seed=12)
    fast = qjl.apply_circuit(circ, v)
    dense = qjl.circuit_to_unitary(circ) @ v
    assert np.max(np.abs(fast - dense)) < 1e-9
    assert abs(np.linalg.norm(fast) - 1.0) < 1e-10


def test_block_transform():
    v = qjl.sample_haar_unit_vector(64, seed=3)
    u = qjl.sample_haar_unitary(64, seed=4)
    probs = qjl.block_probability_vector(v, u, 8)
    assert len(probs) == 8
    assert sum(probs) == pytest.approx(1.0, abs=1e-9)
    block, prob, collapsed = qjl.quantum_jl_measure(v, u, 8, seed=5)
    assert 1 <= block <= 8
    assert prob == pytest.approx(probs[block - 1])
    assert np.linalg.norm(collapsed) == pytest.approx(1.0, abs=1e-10)
    t = qjl.classical_jl(v, u, 8)
    assert len(t) == 8


def test_polarization_matches_inner_product():
    a = qjl.sample_haar_unit_vector(32, seed=21)
    b = qjl.sample_haar_unit_vector(32, seed=22)
    assert qjl.polarization_inner_product(a, b) == pytest.approx(
        qjl.inner_product(a, b), abs=1e-10
    )


def test_bounds_and_params():
    sharp, simplified = qjl.chi_square_tail_bound(16, 1.0)
    assert sharp == pytest.approx(0.171756865486086, rel=1e-12)
    assert simplified == pytest.approx(0.270670566473225, rel=1e-12)
    assert qjl.haar_projection_tail_bound(64, 1.0) == pytest.approx(4 * math.exp(-4.0))
    p = qjl.compute_design_params(2**40, 2**20, 0.5, 0.5)
    assert p["t"] == 512
    assert p["m"] == 256
    assert p["k_bound_satisfied"]


def test_exact_designs():
    eye = np.eye(2, dtype=complex)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    assert qjl.estimate_tpe_lambda([eye, x, y, z], 1) <= 1e-9
    assert qjl.estimate_tpe_lambda([eye], 1) == pytest.approx(1.0, abs=1e-9)


def test_protocol_and_experiment():
    params = {"m": 64, "n": 2, "d2": 16, "c_rep": 8}
    t = qjl.run_protocol([9], 9, params, seed=1)
    assert t["decision"] is True
    assert t["success_fraction"] == 1.0

    doc = qjl.run_experiment(
        {
            "experiment": "chi-tails",
            "seed": 3,
            "workers": 2,
            "params": {"trials": 2000},
        }
    )
    assert doc["passed"] is True
    assert len(doc["config_hash"]) == 40

    doc2 = qjl.run_experiment(
        {"experiment": "chi-tails", "seed": 3, "workers": 1, "params": {"trials": 2000}}
    )
    assert doc == doc2  # worker count never changes results


def test_config_errors():
    with pytest.raises(qjl.ConfigError):
        qjl.run_experiment({"experiment": "chi-tails", "params": {"bogus": 1}})
