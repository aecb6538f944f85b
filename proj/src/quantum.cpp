#include "entperc/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace entperc {

namespace {

void check_qubit_count(int n, int max_qubits) {
    if (n < 1) throw std::invalid_argument("need at least one qubit");
    if (n > max_qubits) throw std::length_error("qubit count exceeds the configured maximum");
}

void check_unitary(const Matrix& u, double tol) {
    const Matrix err = u * u.adjoint() - Matrix::Identity(u.rows(), u.cols());
    if (err.cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("gate matrix is not unitary");
}

}  // namespace

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
    check_qubit_count(n_qubits, 30);
    DensityMatrix rho;
    rho.n_ = n_qubits;
    rho.m_ = Matrix::Zero(std::int64_t(1) << n_qubits, std::int64_t(1) << n_qubits);
    rho.m_(0, 0) = 1.0;
    return rho;
}

DensityMatrix DensityMatrix::from_state(int n_qubits, const Vector& psi) {
    check_qubit_count(n_qubits, 30);
    if (psi.size() != (std::int64_t(1) << n_qubits))
        throw std::invalid_argument("state vector length does not match qubit count");
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-8) throw std::invalid_argument("state vector is not normalized");
    DensityMatrix rho;
    rho.n_ = n_qubits;
    rho.m_ = psi * psi.adjoint();
    return rho;
}

DensityMatrix DensityMatrix::from_matrix(int n_qubits, Matrix m, double tol) {
    check_qubit_count(n_qubits, 30);
    if (m.rows() != m.cols() || m.rows() != (std::int64_t(1) << n_qubits))
        throw std::invalid_argument("matrix dimension does not match qubit count");
    DensityMatrix rho;
    rho.n_ = n_qubits;
    rho.m_ = std::move(m);
    if (rho.trace_error() > tol || rho.hermiticity_error() > tol)
        throw std::invalid_argument("matrix is not a unit-trace Hermitian operator");
    return rho;
}

double DensityMatrix::trace_error() const { return std::abs(m_.trace() - Complex(1.0)); }

double DensityMatrix::hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((m_ + m_.adjoint()) / 2.0);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::check_invariants(double tol) const {
    if (trace_error() > tol) throw std::runtime_error("density matrix trace drifted");
    if (hermiticity_error() > tol) throw std::runtime_error("density matrix lost hermiticity");
}

GateOp GateOp::hadamard(int q) {
    GateOp g;
    g.kind = Kind::hadamard;
    g.q0 = q;
    return g;
}

GateOp GateOp::cnot(int control, int target) {
    GateOp g;
    g.kind = Kind::cnot;
    g.q0 = control;
    g.q1 = target;
    return g;
}

GateOp GateOp::swap(int a, int b) {
    GateOp g;
    g.kind = Kind::swap;
    g.q0 = a;
    g.q1 = b;
    return g;
}

GateOp GateOp::unitary1(int q, const Matrix& u2) {
    if (u2.rows() != 2 || u2.cols() != 2) throw std::invalid_argument("expected a 2x2 unitary");
    GateOp g;
    g.kind = Kind::unitary1;
    g.q0 = q;
    g.unitary = u2;
    return g;
}

GateOp GateOp::unitary2(int a, int b, const Matrix& u4) {
    if (u4.rows() != 4 || u4.cols() != 4) throw std::invalid_argument("expected a 4x4 unitary");
    if (a == b) throw std::invalid_argument("two-qubit gate needs distinct targets");
    GateOp g;
    g.kind = Kind::unitary2;
    g.q0 = a;
    g.q1 = b;
    g.unitary = u4;
    return g;
}

Matrix GateOp::matrix() const {
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case Kind::hadamard: {
            Matrix h(2, 2);
            h << s, s, s, -s;
            return h;
        }
        case Kind::cnot: {
            Matrix u = Matrix::Zero(4, 4);
            u(0, 0) = 1;
            u(1, 1) = 1;
            u(2, 3) = 1;
            u(3, 2) = 1;
            return u;
        }
        case Kind::swap: {
            Matrix u = Matrix::Zero(4, 4);
            u(0, 0) = 1;
            u(1, 2) = 1;
            u(2, 1) = 1;
            u(3, 3) = 1;
            return u;
        }
        case Kind::unitary1:
        case Kind::unitary2:
            return unitary;
    }
    throw std::logic_error("unknown gate kind");
}

namespace {

// rho -> (U x I) rho (U x I)^dagger with U acting on one qubit.
void apply_unitary1(Matrix& rho, int n, int q, const Matrix& u) {
    const std::int64_t dim = rho.rows();
    const std::int64_t mask = std::int64_t(1) << (n - 1 - q);
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);

    for (std::int64_t c = 0; c < dim; ++c) {
        for (std::int64_t r = 0; r < dim; ++r) {
            if (r & mask) continue;
            const Complex a = rho(r, c), b = rho(r | mask, c);
            rho(r, c) = u00 * a + u01 * b;
            rho(r | mask, c) = u10 * a + u11 * b;
        }
    }
    for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) {
            if (c & mask) continue;
            const Complex a = rho(r, c), b = rho(r, c | mask);
            rho(r, c) = std::conj(u00) * a + std::conj(u01) * b;
            rho(r, c | mask) = std::conj(u10) * a + std::conj(u11) * b;
        }
    }
}

// Same with a 4x4 unitary on qubits (q0, q1); row index of u is 2*bit(q0)+bit(q1).
void apply_unitary2(Matrix& rho, int n, int q0, int q1, const Matrix& u) {
    const std::int64_t dim = rho.rows();
    const std::int64_t m0 = std::int64_t(1) << (n - 1 - q0);
    const std::int64_t m1 = std::int64_t(1) << (n - 1 - q1);
    const std::int64_t pick = m0 | m1;
    std::int64_t idx[4];
    Complex v[4];

    for (std::int64_t c = 0; c < dim; ++c) {
        for (std::int64_t r = 0; r < dim; ++r) {
            if (r & pick) continue;
            idx[0] = r;
            idx[1] = r | m1;
            idx[2] = r | m0;
            idx[3] = r | m0 | m1;
            for (int i = 0; i < 4; ++i) v[i] = rho(idx[i], c);
            for (int i = 0; i < 4; ++i)
                rho(idx[i], c) = u(i, 0) * v[0] + u(i, 1) * v[1] + u(i, 2) * v[2] + u(i, 3) * v[3];
        }
    }
    for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) {
            if (c & pick) continue;
            idx[0] = c;
            idx[1] = c | m1;
            idx[2] = c | m0;
            idx[3] = c | m0 | m1;
            for (int i = 0; i < 4; ++i) v[i] = rho(r, idx[i]);
            for (int i = 0; i < 4; ++i)
                rho(r, idx[i]) = std::conj(u(i, 0)) * v[0] + std::conj(u(i, 1)) * v[1] +
                                 std::conj(u(i, 2)) * v[2] + std::conj(u(i, 3)) * v[3];
        }
    }
}

}  // namespace

DensityMatrix apply_gate(DensityMatrix rho, const GateOp& g, double unitary_tol) {
    const int n = rho.qubits();
    if (g.q0 < 0 || g.q0 >= n || (g.two_qubit() && (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0)))
        throw std::invalid_argument("gate targets out of range");
    const Matrix u = g.matrix();
    check_unitary(u, unitary_tol);
    if (g.two_qubit())
        apply_unitary2(rho.mutable_matrix(), n, g.q0, g.q1, u);
    else
        apply_unitary1(rho.mutable_matrix(), n, g.q0, u);
    return rho;
}

NoiseChannelSpec NoiseChannelSpec::collapse(double eta) {
    NoiseChannelSpec s;
    s.model = Model::collapse;
    s.eta = eta;
    s.validate();
    return s;
}

NoiseChannelSpec NoiseChannelSpec::collapse_in_basis(double eta, const Matrix& basis) {
    NoiseChannelSpec s;
    s.model = Model::collapse;
    s.eta = eta;
    s.basis = basis;
    s.validate();
    return s;
}

NoiseChannelSpec NoiseChannelSpec::depolarize(double eta) {
    NoiseChannelSpec s;
    s.model = Model::depolarize;
    s.eta = eta;
    s.validate();
    return s;
}

NoiseChannelSpec NoiseChannelSpec::dephase(double gamma_dt) {
    NoiseChannelSpec s;
    s.model = Model::dephase;
    s.gamma_dt = gamma_dt;
    s.validate();
    return s;
}

void NoiseChannelSpec::validate() const {
    if (model == Model::dephase) {
        if (!(gamma_dt >= 0.0)) throw std::invalid_argument("dephasing strength must be >= 0");
    } else {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw std::invalid_argument("noise rate must be in [0, 1]");
    }
    if (basis.size() != 0) {
        if (basis.rows() != 2 || basis.cols() != 2)
            throw std::invalid_argument("collapse basis must be a 2x2 unitary");
        check_unitary(basis, 1e-10);
    }
}

bool NoiseChannelSpec::trivial() const {
    return model == Model::dephase ? gamma_dt == 0.0 : eta == 0.0;
}

namespace {

// Scales every element whose bra/ket bits differ on `qubit`.
void scale_off_diagonals(Matrix& rho, int n, int qubit, double factor) {
    const std::int64_t dim = rho.rows();
    const std::int64_t mask = std::int64_t(1) << (n - 1 - qubit);
    for (std::int64_t c = 0; c < dim; ++c)
        for (std::int64_t r = 0; r < dim; ++r)
            if (((r ^ c) & mask) != 0) rho(r, c) *= factor;
}

void depolarize_qubit(Matrix& rho, int n, int qubit, double eta) {
    const std::int64_t dim = rho.rows();
    const std::int64_t mask = std::int64_t(1) << (n - 1 - qubit);
    for (std::int64_t c = 0; c < dim; ++c) {
        if (c & mask) continue;
        for (std::int64_t r = 0; r < dim; ++r) {
            if (r & mask) continue;
            // Block of the two basis states of `qubit` at fixed rest indices.
            const Complex t00 = rho(r, c);
            const Complex t01 = rho(r, c | mask);
            const Complex t10 = rho(r | mask, c);
            const Complex t11 = rho(r | mask, c | mask);
            const Complex mixed = 0.5 * (t00 + t11);
            rho(r, c) = (1.0 - eta) * t00 + eta * mixed;
            rho(r | mask, c | mask) = (1.0 - eta) * t11 + eta * mixed;
            rho(r, c | mask) = (1.0 - eta) * t01;
            rho(r | mask, c) = (1.0 - eta) * t10;
        }
    }
}

}  // namespace

DensityMatrix apply_noise_channel(DensityMatrix rho, const NoiseChannelSpec& noise, int qubit) {
    noise.validate();
    const int n = rho.qubits();
    if (qubit < 0 || qubit >= n) throw std::invalid_argument("noise qubit out of range");
    if (noise.trivial()) return rho;

    switch (noise.model) {
        case NoiseChannelSpec::Model::collapse: {
            const bool rotated = noise.basis.size() != 0;
            if (rotated)
                apply_unitary1(rho.mutable_matrix(), n, qubit, noise.basis.adjoint());
            // (1-eta) rho + eta sum_i P_i rho P_i: projectors keep the
            // diagonal-in-qubit blocks and kill the coherences.
            scale_off_diagonals(rho.mutable_matrix(), n, qubit, 1.0 - noise.eta);
            if (rotated) apply_unitary1(rho.mutable_matrix(), n, qubit, noise.basis);
            return rho;
        }
        case NoiseChannelSpec::Model::depolarize:
            depolarize_qubit(rho.mutable_matrix(), n, qubit, noise.eta);
            return rho;
        case NoiseChannelSpec::Model::dephase:
            scale_off_diagonals(rho.mutable_matrix(), n, qubit, std::exp(-noise.gamma_dt));
            return rho;
    }
    throw std::logic_error("unknown noise model");
}

DensityMatrix reduced_density_matrix(const DensityMatrix& rho, const std::vector<int>& subset) {
    const int n = rho.qubits();
    if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
    std::vector<int> keep = subset;
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw std::invalid_argument("subset has repeated qubits");
    if (keep.front() < 0 || keep.back() >= n) throw std::invalid_argument("subset qubit out of range");

    const int k = static_cast<int>(keep.size());
    std::vector<int> comp;
    for (int q = 0; q < n; ++q)
        if (!std::binary_search(keep.begin(), keep.end(), q)) comp.push_back(q);

    auto deposit = [n](std::int64_t bits, const std::vector<int>& positions) {
        std::int64_t out = 0;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            const int shift = n - 1 - positions[i];
            const std::int64_t bit = (bits >> (positions.size() - 1 - i)) & 1;
            out |= bit << shift;
        }
        return out;
    };

    const std::int64_t sub_dim = std::int64_t(1) << k;
    const std::int64_t comp_dim = std::int64_t(1) << (n - k);
    std::vector<std::int64_t> sub_mask(sub_dim), comp_mask(comp_dim);
    for (std::int64_t a = 0; a < sub_dim; ++a) sub_mask[a] = deposit(a, keep);
    for (std::int64_t e = 0; e < comp_dim; ++e) comp_mask[e] = deposit(e, comp);

    Matrix out = Matrix::Zero(sub_dim, sub_dim);
    for (std::int64_t a = 0; a < sub_dim; ++a)
        for (std::int64_t b = 0; b < sub_dim; ++b)
            for (std::int64_t e = 0; e < comp_dim; ++e)
                out(a, b) += rho.matrix()(sub_mask[a] | comp_mask[e], sub_mask[b] | comp_mask[e]);

    return DensityMatrix::from_matrix(k, std::move(out), 1e-8);
}

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
    }
    return q;
}

}  // namespace entperc
