#include "entperc/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "entperc/rng.hpp"

namespace entperc {

namespace {

constexpr double kEigenFloor = 1e-12;
constexpr double kLog2 = 0.6931471805599453;  // ln 2

double log2_safe(double x) { return std::log(x) / kLog2; }

}  // namespace

void Bipartition::validate(int n_qubits) const {
    if (side_a.empty() || side_b.empty())
        throw std::invalid_argument("both sides of a bipartition must be nonempty");
    std::vector<bool> seen(n_qubits, false);
    for (const auto* side : {&side_a, &side_b}) {
        for (int q : *side) {
            if (q < 0 || q >= n_qubits) throw std::invalid_argument("bipartition qubit out of range");
            if (seen[q]) throw std::invalid_argument("bipartition sides are not disjoint");
            seen[q] = true;
        }
    }
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * log2_safe(x) - (1.0 - x) * log2_safe(1.0 - x);
}

double spectrum_entropy(const Eigen::VectorXd& eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double lambda = eigenvalues[i];
        if (lambda > kEigenFloor) s -= lambda * log2_safe(lambda);
    }
    return s;
}

namespace {

// Rearranges a pure state into the dA x dB coefficient matrix of the
// bipartition; its squared singular values are the reduced spectrum.
Matrix schmidt_matrix(const Vector& psi, int n_qubits, const Bipartition& bip) {
    const int ka = static_cast<int>(bip.side_a.size());
    const int kb = static_cast<int>(bip.side_b.size());
    const std::int64_t da = std::int64_t(1) << ka;
    const std::int64_t db = std::int64_t(1) << kb;

    Matrix m(da, db);
    for (std::int64_t a = 0; a < da; ++a) {
        for (std::int64_t b = 0; b < db; ++b) {
            std::int64_t index = 0;
            for (int i = 0; i < ka; ++i)
                index |= ((a >> (ka - 1 - i)) & 1) << (n_qubits - 1 - bip.side_a[i]);
            for (int i = 0; i < kb; ++i)
                index |= ((b >> (kb - 1 - i)) & 1) << (n_qubits - 1 - bip.side_b[i]);
            m(a, b) = psi(index);
        }
    }
    return m;
}

double pure_state_entanglement(const Vector& psi, int n_qubits, const Bipartition& bip) {
    const Matrix m = schmidt_matrix(psi, n_qubits, bip);
    Eigen::JacobiSVD<Matrix> svd(m);
    Eigen::VectorXd spectrum = svd.singularValues().array().square();
    return spectrum_entropy(spectrum);
}

}  // namespace

double entropy_of_entanglement(const Vector& psi, int n_qubits, const Bipartition& bip) {
    bip.validate(n_qubits);
    if (static_cast<int>(bip.side_a.size() + bip.side_b.size()) != n_qubits)
        throw std::invalid_argument("bipartition must cover the whole register");
    if (psi.size() != (std::int64_t(1) << n_qubits))
        throw std::invalid_argument("state vector length does not match qubit count");
    if (std::abs(psi.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("state vector is not normalized");
    return pure_state_entanglement(psi, n_qubits, bip);
}

double concurrence(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("concurrence needs a two-qubit state");

    Matrix spin_flip = Matrix::Zero(4, 4);
    spin_flip(0, 3) = -1;
    spin_flip(1, 2) = 1;
    spin_flip(2, 1) = 1;
    spin_flip(3, 0) = -1;

    const Matrix m = rho * spin_flip * rho.conjugate() * spin_flip;
    Eigen::ComplexEigenSolver<Matrix> solver(m, false);

    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) lambda[i] = std::sqrt(std::max(0.0, solver.eigenvalues()[i].real()));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

EofResult eof_two_qubit(const DensityMatrix& rho) {
    if (rho.qubits() != 2) throw std::invalid_argument("closed form needs a two-qubit state");
    rho.check_invariants(1e-8);

    const double c = concurrence(rho.matrix());
    EofResult result;
    result.method = EofResult::Method::closed_form;
    result.value = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
    return result;
}

namespace {

struct EigenBasis {
    std::vector<double> sqrt_weights;  // sqrt of eigenvalues above the floor
    Matrix vectors;                    // matching eigenvectors as columns
    int rank = 0;
};

EigenBasis eigen_basis(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
    EigenBasis basis;
    const auto& vals = solver.eigenvalues();
    for (Eigen::Index i = vals.size() - 1; i >= 0; --i) {
        if (vals[i] <= kEigenFloor) continue;
        basis.sqrt_weights.push_back(std::sqrt(vals[i]));
        ++basis.rank;
    }
    basis.vectors.resize(rho.matrix().rows(), basis.rank);
    int col = 0;
    for (Eigen::Index i = vals.size() - 1; i >= 0; --i) {
        if (vals[i] <= kEigenFloor) continue;
        basis.vectors.col(col++) = solver.eigenvectors().col(i);
    }
    return basis;
}

// Working ensemble: column i holds the unnormalized state phi_i, so
// sum_i phi_i phi_i^dagger = rho throughout and a unitary remix of columns
// preserves it. Per-column entropy contributions are cached.
struct Ensemble {
    Matrix phi;
    std::vector<double> contribution;  // w_i * E(psi_i)

    double total() const {
        double s = 0;
        for (double c : contribution) s += c;
        return s;
    }
};

double column_contribution(const Vector& phi, int n_qubits, const Bipartition& bip) {
    const double weight = phi.squaredNorm();
    if (weight <= kEigenFloor) return 0.0;
    return weight * pure_state_entanglement(phi / std::sqrt(weight), n_qubits, bip);
}

Ensemble make_ensemble(const EigenBasis& basis, int k, const Matrix& mix, int n_qubits,
                       const Bipartition& bip) {
    Ensemble ens;
    ens.phi = Matrix::Zero(basis.vectors.rows(), k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < basis.rank; ++j)
            ens.phi.col(i) += mix(i, j) * basis.sqrt_weights[j] * basis.vectors.col(j);
    ens.contribution.resize(k);
    for (int i = 0; i < k; ++i)
        ens.contribution[i] = column_contribution(ens.phi.col(i), n_qubits, bip);
    return ens;
}

// One sweep of greedy two-column rotations: for every pair, line-search the
// Givens angle (at a few phases) that lowers the pair's contribution and
// absorb the winner. Touching only two columns keeps each probe cheap.
double pair_rotation_sweep(Ensemble& ens, int n_qubits, const Bipartition& bip) {
    const int k = static_cast<int>(ens.phi.cols());
    double improved = 0.0;

    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            const double base = ens.contribution[a] + ens.contribution[b];
            const Vector phi_a = ens.phi.col(a);
            const Vector phi_b = ens.phi.col(b);

            auto probe = [&](double theta, double phase) {
                const Complex e(std::cos(phase), std::sin(phase));
                const double c = std::cos(theta), s = std::sin(theta);
                const Vector pa = c * phi_a - std::conj(e) * s * phi_b;
                const Vector pb = e * s * phi_a + c * phi_b;
                return column_contribution(pa, n_qubits, bip) +
                       column_contribution(pb, n_qubits, bip);
            };

            double best_theta = 0.0, best_phase = 0.0, best = base;
            for (double phase : {0.0, M_PI / 2, M_PI, 3 * M_PI / 2}) {
                // Golden-section over theta; period pi/2 up to phases.
                const double golden = 0.6180339887498949;
                double lo = -M_PI / 4, hi = M_PI / 4;
                double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
                double f1 = probe(x1, phase), f2 = probe(x2, phase);
                for (int iter = 0; iter < 18; ++iter) {
                    if (f1 < f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - golden * (hi - lo);
                        f1 = probe(x1, phase);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + golden * (hi - lo);
                        f2 = probe(x2, phase);
                    }
                }
                const double cand = std::min(f1, f2);
                if (cand < best) {
                    best = cand;
                    best_theta = f1 < f2 ? x1 : x2;
                    best_phase = phase;
                }
            }
            // Refine the phase at the chosen angle.
            if (best < base) {
                const double golden = 0.6180339887498949;
                double lo = best_phase - M_PI / 2, hi = best_phase + M_PI / 2;
                double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
                double f1 = probe(best_theta, x1), f2 = probe(best_theta, x2);
                for (int iter = 0; iter < 18; ++iter) {
                    if (f1 < f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - golden * (hi - lo);
                        f1 = probe(best_theta, x1);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + golden * (hi - lo);
                        f2 = probe(best_theta, x2);
                    }
                }
                if (std::min(f1, f2) < best) {
                    best = std::min(f1, f2);
                    best_phase = f1 < f2 ? x1 : x2;
                }
            }

            if (best < base - 1e-15) {
                const Complex e(std::cos(best_phase), std::sin(best_phase));
                const double c = std::cos(best_theta), s = std::sin(best_theta);
                ens.phi.col(a) = c * phi_a - std::conj(e) * s * phi_b;
                ens.phi.col(b) = e * s * phi_a + c * phi_b;
                ens.contribution[a] = column_contribution(ens.phi.col(a), n_qubits, bip);
                ens.contribution[b] = column_contribution(ens.phi.col(b), n_qubits, bip);
                improved += base - best;
            }
        }
    }
    return improved;
}

}  // namespace

EofResult eof_minimize(const DensityMatrix& rho, const Bipartition& bip, int ensemble_size,
                       int restarts, double tol, std::uint64_t seed) {
    const int n = rho.qubits();
    bip.validate(n);
    if (static_cast<int>(bip.side_a.size() + bip.side_b.size()) != n)
        throw std::invalid_argument("bipartition must cover the whole register");
    if (rho.dim() > 64) throw std::invalid_argument("ensemble minimization is capped at dimension 64");
    rho.check_invariants(1e-8);

    const EigenBasis basis = eigen_basis(rho);
    if (ensemble_size < basis.rank)
        throw std::invalid_argument("ensemble size must be at least the state's rank");

    const int k = ensemble_size;
    constexpr int kMaxSweeps = 60;

    Ensemble best;
    double best_value = std::numeric_limits<double>::infinity();
    bool converged = false;

    for (int restart = 0; restart < std::max(1, restarts); ++restart) {
        // Restart 0 starts from the eigendecomposition itself; the rest from
        // Haar-random mixes with their own deterministic streams.
        Matrix mix = Matrix::Identity(k, k);
        if (restart > 0) {
            auto rng = make_stream_rng(seed, 0xe0f0000ull + restart);
            mix = haar_unitary(k, rng);
        }
        Ensemble ens = make_ensemble(basis, k, mix, n, bip);

        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (pair_rotation_sweep(ens, n, bip) < tol) {
                converged = true;
                break;
            }
        }
        const double value = ens.total();
        if (value < best_value) {
            best_value = value;
            best = std::move(ens);
        }
    }

    EofResult result;
    result.method = EofResult::Method::minimization;
    result.value = best_value;
    result.ensemble_size = k;
    result.restarts = restarts;
    result.converged = converged;
    result.weights.resize(k);
    result.states = Matrix::Zero(rho.dim(), k);
    Matrix reconstructed = Matrix::Zero(rho.dim(), rho.dim());
    for (int i = 0; i < k; ++i) {
        result.weights[i] = best.phi.col(i).squaredNorm();
        if (result.weights[i] > kEigenFloor)
            result.states.col(i) = best.phi.col(i) / std::sqrt(result.weights[i]);
        reconstructed += best.phi.col(i) * best.phi.col(i).adjoint();
    }
    result.reconstruction_error = trace_distance(reconstructed, rho.matrix());
    return result;
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("trace distance needs equal dimensions");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho - sigma);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double continuity_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Bipartition& bip) {
    if (rho.qubits() != sigma.qubits())
        throw std::invalid_argument("continuity bound needs equal dimensions");
    bip.validate(rho.qubits());

    const double eps = trace_distance(rho.matrix(), sigma.matrix());
    if (eps > 1.0) return std::numeric_limits<double>::infinity();
    if (eps <= 0.0) return 0.0;
    const double log_dim = log2_safe(static_cast<double>(std::max(bip.dim_a(), bip.dim_b())));
    return 9.0 * eps * log_dim - eps * log2_safe(eps);
}

double entanglement_decay_bound(int size_a, int size_b, double distance, double xi) {
    if (size_a < 1 || size_b < 1) throw std::invalid_argument("set sizes must be >= 1");
    if (!(xi > 0.0)) throw std::invalid_argument("correlation length must be positive");
    const double m = static_cast<double>(std::min(size_a, size_b));
    return m * size_a * size_b * std::exp(-distance / xi);
}

double entanglement_decay_bound(int size_a, int size_b, double distance, double xi, double t, int n) {
    if (n < 1) throw std::invalid_argument("system size must be >= 1");
    const double m = static_cast<double>(std::min(size_a, size_b));
    return entanglement_decay_bound(size_a, size_b, distance, xi) + m * n * m * std::exp(-t / xi);
}

}  // namespace entperc
