#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "entperc/lattice.hpp"

namespace entperc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Qubit 0 is the most significant bit of a basis index, so |q0 q1 ... q_{n-1}>
// reads left to right.
inline int qubit_bit(int n_qubits, std::int64_t index, int qubit) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1);
}

inline constexpr int kDefaultMaxQubits = 12;

// Exact 2^n x 2^n density operator. Hermiticity and unit trace are enforced
// on construction; the spectrum check is exposed separately because it costs
// a full eigendecomposition.
class DensityMatrix {
  public:
    DensityMatrix() = default;

    static DensityMatrix zero_state(int n_qubits);
    static DensityMatrix from_state(int n_qubits, const Vector& psi);
    static DensityMatrix from_matrix(int n_qubits, Matrix m, double tol = 1e-10);

    int qubits() const { return n_; }
    std::int64_t dim() const { return std::int64_t(1) << n_; }
    const Matrix& matrix() const { return m_; }
    Matrix& mutable_matrix() { return m_; }

    double trace_error() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;
    // Throws std::runtime_error when trace or hermiticity drift past tol.
    void check_invariants(double tol = 1e-9) const;

  private:
    int n_ = 0;
    Matrix m_;
};

struct GateOp {
    enum class Kind { hadamard, cnot, swap, unitary1, unitary2 };

    Kind kind = Kind::hadamard;
    int q0 = -1;
    int q1 = -1;  // unused for one-qubit kinds
    Matrix unitary;

    static GateOp hadamard(int q);
    static GateOp cnot(int control, int target);
    static GateOp swap(int a, int b);
    static GateOp unitary1(int q, const Matrix& u2);
    static GateOp unitary2(int a, int b, const Matrix& u4);

    bool two_qubit() const { return q1 >= 0; }
    // 2x2 or 4x4 matrix; row index bits are (q0, q1).
    Matrix matrix() const;
};

// rho -> U rho U^dagger. Throws on out-of-range targets or non-unitary input.
DensityMatrix apply_gate(DensityMatrix rho, const GateOp& g, double unitary_tol = 1e-10);

struct NoiseChannelSpec {
    enum class Model { collapse, depolarize, dephase };

    Model model = Model::collapse;
    double eta = 0.0;       // collapse / depolarize rate
    double gamma_dt = 0.0;  // dephasing strength, off-diagonals scale by exp(-gamma_dt)
    // Collapse basis as a 2x2 unitary whose columns are the measured states.
    Matrix basis;

    static NoiseChannelSpec collapse(double eta);
    static NoiseChannelSpec collapse_in_basis(double eta, const Matrix& basis);
    static NoiseChannelSpec depolarize(double eta);
    static NoiseChannelSpec dephase(double gamma_dt);

    void validate() const;
    bool trivial() const;
};

DensityMatrix apply_noise_channel(DensityMatrix rho, const NoiseChannelSpec& noise, int qubit);

// Gate assignment per time step; step_gates[t-1] holds the gates of step t,
// applied in listed order.
struct CircuitSchedule {
    LatticeSpec spec;
    std::vector<std::vector<GateOp>> step_gates;
    int depth = 0;  // last step carrying a gate

    int steps() const { return static_cast<int>(step_gates.size()); }
};

// Pads the schedule with idle steps up to total_steps.
void extend_steps(CircuitSchedule& schedule, int total_steps);

using StepObserver = std::function<void(int t, const DensityMatrix&)>;

// Alternates the step's gates with one noise application per qubit. The
// observer sees the initial state at t = 0 and the post-noise state after
// each step. Two-qubit gates must sit on pairs the schedule allows at their
// step when schedule_checked is on.
DensityMatrix evolve_circuit(const CircuitSchedule& schedule, const NoiseChannelSpec& noise,
                             DensityMatrix rho0, const StepObserver& observer = {},
                             bool schedule_checked = true, int max_qubits = kDefaultMaxQubits);

// Hadamard + CNOT chain on the first m+q qubits, then a nearest-neighbor swap
// ladder that carries the last q qubits across the mid register, all placed
// on the alternating schedule. Final layout: A = [0, m), C = [m, m+mid),
// B = [m+mid, m+mid+q).
CircuitSchedule ghz_circuit(int m, int mid, int q, int max_qubits = kDefaultMaxQubits);

// Haar-random two-qubit unitary on every scheduled pair of every step.
CircuitSchedule random_nn_circuit(const LatticeSpec& spec, std::uint64_t seed);

Matrix haar_unitary(int dim, std::mt19937_64& rng);

// Partial trace onto `subset` (ascending qubit order kept).
DensityMatrix reduced_density_matrix(const DensityMatrix& rho, const std::vector<int>& subset);

}  // namespace entperc
