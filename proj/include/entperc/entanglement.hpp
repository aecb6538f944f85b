#pragma once

#include <cstdint>
#include <vector>

#include "entperc/quantum.hpp"

namespace entperc {

// Split of a register into two disjoint sides.
struct Bipartition {
    std::vector<int> side_a;
    std::vector<int> side_b;

    void validate(int n_qubits) const;
    int dim_a() const { return 1 << side_a.size(); }
    int dim_b() const { return 1 << side_b.size(); }
};

double binary_entropy(double x);
// -sum lambda log2 lambda with eigenvalues below 1e-12 treated as zero.
double spectrum_entropy(const Eigen::VectorXd& eigenvalues);

// Von Neumann entropy (bits) of the reduced state of side A of a pure state;
// the bipartition must cover all qubits.
double entropy_of_entanglement(const Vector& psi, int n_qubits, const Bipartition& bip);

// Wootters concurrence of a two-qubit state.
double concurrence(const Matrix& rho);

struct EofResult {
    enum class Method { closed_form, minimization };
    double value = 0.0;  // bits
    Method method = Method::closed_form;
    int ensemble_size = 0;
    int restarts = 0;
    bool converged = true;
    std::vector<double> weights;
    Matrix states;  // column i is the i-th pure state of the decomposition
    double reconstruction_error = 0.0;
};

// Closed-form entanglement of formation of a two-qubit state via the
// concurrence: E_f = h((1 + sqrt(1 - C^2)) / 2).
EofResult eof_two_qubit(const DensityMatrix& rho);

// Upper-bound minimization of the average entropy of entanglement over
// size-k decompositions, parametrized by unitary mixing of the
// eigendecomposition. Deterministic given the seed.
EofResult eof_minimize(const DensityMatrix& rho, const Bipartition& bip, int ensemble_size,
                       int restarts = 32, double tol = 1e-7, std::uint64_t seed = 1);

// 9 e log2(max{d, d'}) - e log2(e) with e the trace distance; +infinity when
// the inputs are far enough apart to be invalid (e > 1).
double continuity_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Bipartition& bip);

double trace_distance(const Matrix& rho, const Matrix& sigma);

// min{|A|,|B|} |A| |B| exp(-distance / xi).
double entanglement_decay_bound(int size_a, int size_b, double distance, double xi);
// General-initial-state form with the time-decaying correction term:
// min{|A|,|B|} (|A||B| e^{-d/xi} + n min{|A|,|B|} e^{-t/xi}).
double entanglement_decay_bound(int size_a, int size_b, double distance, double xi, double t, int n);

}  // namespace entperc
