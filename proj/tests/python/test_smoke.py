"""Smoke tests for the python module against the build tree."""

import math

import numpy as np

import entperc


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def test_schedule_and_counts():
    assert entperc.interaction_schedule(1, [4], 2, 1) == [(0, 1), (2, 3)]
    assert entperc.interaction_schedule(1, [4], 2, 2) == [(1, 2)]
    counts = entperc.graph_counts(1, [4], 2)
    assert counts["vertices"] == 12
    assert counts["vertical_edges"] == 8
    assert counts["interaction_edges"] == 3
    assert counts["contracted_nodes"] == 9


def test_percolation():
    est = entperc.tau_estimate(1, [8], 6, 1.0, [(1, 5)], samples=50, seed=3)
    assert est[0]["tau"] == 1.0
    a = entperc.tau_estimate(1, [16], 12, 0.5, [(2, 10)], samples=2000, seed=5, threads=2)
    b = entperc.tau_estimate(1, [16], 12, 0.5, [(2, 10)], samples=2000, seed=5, threads=1)
    assert a[0]["hits"] == b[0]["hits"]  # thread-count independent

    fit = entperc.fit_exponential_decay([(d, math.exp(-d / 2.0)) for d in range(2, 12, 2)])
    assert fit["ok"]
    approx(fit["xi"], 2.0, 1e-6)

    assert entperc.branching_survival(0.25, 30) < 1e-3
    assert entperc.branching_survival(0.5, 30) >= 0.1

    xi = entperc.measure_xi(10, 8, 0.3, samples=50000, seed=7, threads=2)
    assert xi["ok"] and xi["slope"] > 0


def test_correspondence():
    res = entperc.verify_correspondence(300, seed=11)
    assert res["ok"] and res["failures"] == 0


def test_quantum_and_entanglement():
    bell = entperc.evolve_ghz(1, 0, 1)
    assert bell.shape == (4, 4)
    approx(entperc.concurrence(bell), 1.0, 1e-9)
    approx(entperc.eof_two_qubit(bell), 1.0, 1e-9)

    reduced = entperc.reduced_density_matrix(bell, [0])
    assert np.allclose(reduced, np.eye(2) / 2, atol=1e-12)

    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1 / math.sqrt(2)
    approx(entperc.entropy_of_entanglement(psi, [0], [1]), 1.0, 1e-12)

    mixed = entperc.evolve_random(4, 4, 0.3, seed=9)
    assert abs(np.trace(mixed) - 1.0) < 1e-9
    pair = entperc.reduced_density_matrix(mixed, [0, 1])
    res = entperc.eof_minimize(pair, [0], [1], ensemble_size=4, restarts=4, seed=2)
    closed = entperc.eof_two_qubit(pair)
    assert res["value_bits"] >= closed - 1e-6
    assert res["reconstruction_error"] < 1e-8

    approx(entperc.entanglement_decay_bound(1, 1, 10.0, 2.0), math.exp(-5.0), 1e-12)
    assert entperc.entanglement_decay_bound(1, 1, 4.0, 1.0, t=0.0, n=10) > 10.0

    bound = entperc.continuity_bound(bell, np.eye(4, dtype=complex) / 4, [0], [1])
    assert bound >= abs(entperc.eof_two_qubit(bell) - 0.0) - 1e-9


def main():
    test_schedule_and_counts()
    test_percolation()
    test_correspondence()
    test_quantum_and_entanglement()
    print("python smoke: all checks passed")


if __name__ == "__main__":
    main()
