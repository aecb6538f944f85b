#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entperc/cluster_dynamics.hpp"
#include "entperc/entanglement.hpp"
#include "entperc/experiments.hpp"
#include "entperc/lattice.hpp"
#include "entperc/percolation.hpp"
#include "entperc/quantum.hpp"

namespace py = pybind11;
using namespace entperc;

namespace {

LatticeSpec make_spec(int dim, const std::vector<int>& sides, int steps) {
    LatticeSpec spec;
    spec.dimension = dim;
    spec.sides = sides;
    spec.steps = steps;
    spec.validate();
    return spec;
}

py::dict fit_dict(const DecayFit& fit) {
    py::dict d;
    d["ok"] = fit.ok();
    d["status"] = fit.status == DecayFit::Status::ok
                      ? "ok"
                      : (fit.status == DecayFit::Status::below_resolution ? "below_resolution"
                                                                          : "insufficient_data");
    d["slope"] = fit.slope;
    d["intercept"] = fit.intercept;
    d["slope_std_error"] = fit.slope_std_error;
    d["r_squared"] = fit.r_squared;
    d["xi"] = fit.xi();
    d["xi_upper"] = fit.xi_upper();
    d["used_points"] = fit.used_points;
    return d;
}

NoiseChannelSpec noise_from(const std::string& model, double eta) {
    if (model == "collapse") return NoiseChannelSpec::collapse(eta);
    if (model == "depolarize") return NoiseChannelSpec::depolarize(eta);
    if (model == "dephase")
        return NoiseChannelSpec::dephase(eta < 1.0 ? -std::log(1.0 - eta) : 1e12);
    throw std::invalid_argument("unknown noise model: " + model);
}

int qubits_of(Eigen::Index dim) {
    int n = 0;
    while ((std::int64_t(1) << n) < dim) ++n;
    return n;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "percolation and entanglement toolkit for noisy nearest-neighbor circuits";

    m.def(
        "interaction_schedule",
        [](int dim, const std::vector<int>& sides, int steps, int t) {
            return interaction_schedule(make_spec(dim, sides, steps), t);
        },
        py::arg("dim"), py::arg("sides"), py::arg("steps"), py::arg("t"),
        "Nearest-neighbor pairs interacting at step t of the alternating schedule.");

    m.def(
        "graph_counts",
        [](int dim, const std::vector<int>& sides, int steps) {
            const SpacetimeGraph g = build_spacetime_graph(make_spec(dim, sides, steps));
            const PercolationLattice lat = contract_interactions(g);
            py::dict d;
            d["vertices"] = g.vertex_count();
            d["vertical_edges"] = g.vertical_edges.size();
            d["interaction_edges"] = g.interaction_edges.size();
            d["contracted_nodes"] = lat.node_count;
            return d;
        },
        py::arg("dim"), py::arg("sides"), py::arg("steps"),
        "Vertex and edge counts of the spacetime graph and its contraction.");

    m.def(
        "tau_estimate",
        [](int dim, const std::vector<int>& sides, int steps, double p,
           const std::vector<ParticlePair>& pairs, std::int64_t samples, std::uint64_t seed,
           int threads) {
            const PercolationLattice lat =
                contract_interactions(build_spacetime_graph(make_spec(dim, sides, steps)));
            py::list out;
            for (const auto& e : tau_estimate(lat, p, pairs, samples, seed, threads)) {
                py::dict d;
                d["pair"] = py::make_tuple(e.particle_a, e.particle_b);
                d["distance"] = e.distance;
                d["samples"] = e.samples;
                d["hits"] = e.hits;
                d["tau"] = e.tau;
                d["stderr"] = e.std_error;
                out.append(d);
            }
            return out;
        },
        py::arg("dim"), py::arg("sides"), py::arg("steps"), py::arg("p"), py::arg("pairs"),
        py::arg("samples"), py::arg("seed"), py::arg("threads") = 1,
        "Monte-Carlo connection probabilities between top-layer pairs.");

    m.def(
        "fit_exponential_decay",
        [](const std::vector<std::pair<double, double>>& points, double floor) {
            return fit_dict(fit_exponential_decay(points, floor));
        },
        py::arg("points"), py::arg("floor") = 0.0,
        "Least-squares fit of -log(value) against distance.");

    m.def(
        "measure_xi",
        [](int n, int steps, double p, std::int64_t samples, std::uint64_t seed, int threads) {
            return fit_dict(measure_xi(make_spec(1, {n}, steps), p, samples, seed, threads));
        },
        py::arg("n"), py::arg("steps"), py::arg("p"), py::arg("samples") = 200000,
        py::arg("seed") = 1, py::arg("threads") = 1,
        "Correlation length of the contracted chain lattice at edge probability p.");

    m.def(
        "estimate_pc",
        [](int dim, const std::vector<int>& sizes, double p_min, double p_max, double p_step,
           std::int64_t samples, std::uint64_t seed, int threads) {
            const PcEstimate est =
                estimate_pc(dim, sizes, p_min, p_max, p_step, samples, seed, threads);
            py::dict d;
            d["p_c"] = est.p_c;
            d["uncertainty"] = est.uncertainty;
            d["p_grid"] = est.p_grid;
            d["sizes"] = est.sizes;
            d["spanning"] = est.spanning;
            return d;
        },
        py::arg("dim"), py::arg("sizes"), py::arg("p_min"), py::arg("p_max"), py::arg("p_step"),
        py::arg("samples"), py::arg("seed"), py::arg("threads") = 1,
        "Critical point from spanning-probability curve crossings.");

    m.def("branching_survival", &branching_survival, py::arg("p"), py::arg("depth"),
          "Survival probability of the Binomial(3, p) offspring process.");

    m.def(
        "verify_correspondence",
        [](int trials, std::uint64_t seed) {
            const auto res = run_correspondence_suite(trials, seed);
            py::dict d;
            d["trials"] = res.trials;
            d["failures"] = res.failures;
            d["ok"] = res.ok();
            return d;
        },
        py::arg("trials"), py::arg("seed") = 1,
        "Cluster-dynamics vs percolation-connectivity identity over random realizations.");

    m.def(
        "evolve_ghz",
        [](int m_reg, int mid, int q, double eta, const std::string& model, int steps) {
            CircuitSchedule schedule = ghz_circuit(m_reg, mid, q);
            if (steps > schedule.depth) extend_steps(schedule, steps);
            return evolve_circuit(schedule, noise_from(model, eta),
                                  DensityMatrix::zero_state(m_reg + mid + q))
                .matrix();
        },
        py::arg("m"), py::arg("mid"), py::arg("q"), py::arg("eta") = 0.0,
        py::arg("model") = "collapse", py::arg("steps") = 0,
        "Density matrix after the nearest-neighbor GHZ construction under noise.");

    m.def(
        "evolve_random",
        [](int n, int steps, double eta, const std::string& model, std::uint64_t seed) {
            const CircuitSchedule schedule = random_nn_circuit(make_spec(1, {n}, steps), seed);
            return evolve_circuit(schedule, noise_from(model, eta), DensityMatrix::zero_state(n))
                .matrix();
        },
        py::arg("n"), py::arg("steps"), py::arg("eta"), py::arg("model") = "collapse",
        py::arg("seed") = 1,
        "Density matrix after a Haar-random nearest-neighbor circuit under noise.");

    m.def(
        "reduced_density_matrix",
        [](const Matrix& rho, const std::vector<int>& subset) {
            return reduced_density_matrix(
                       DensityMatrix::from_matrix(qubits_of(rho.rows()), rho, 1e-8), subset)
                .matrix();
        },
        py::arg("rho"), py::arg("subset"), "Partial trace onto the given qubits.");

    m.def(
        "entropy_of_entanglement",
        [](const Vector& psi, const std::vector<int>& side_a, const std::vector<int>& side_b) {
            return entropy_of_entanglement(psi, qubits_of(psi.size()),
                                           Bipartition{side_a, side_b});
        },
        py::arg("psi"), py::arg("side_a"), py::arg("side_b"),
        "Von Neumann entropy (bits) of side A of a pure state.");

    m.def(
        "concurrence", [](const Matrix& rho) { return concurrence(rho); }, py::arg("rho"),
        "Wootters concurrence of a two-qubit density matrix.");

    m.def(
        "eof_two_qubit",
        [](const Matrix& rho) {
            return eof_two_qubit(DensityMatrix::from_matrix(2, rho, 1e-8)).value;
        },
        py::arg("rho"), "Closed-form entanglement of formation (bits) of a two-qubit state.");

    m.def(
        "eof_minimize",
        [](const Matrix& rho, const std::vector<int>& side_a, const std::vector<int>& side_b,
           int ensemble_size, int restarts, double tol, std::uint64_t seed) {
            const EofResult res =
                eof_minimize(DensityMatrix::from_matrix(qubits_of(rho.rows()), rho, 1e-8),
                             Bipartition{side_a, side_b}, ensemble_size, restarts, tol, seed);
            py::dict d;
            d["value_bits"] = res.value;
            d["converged"] = res.converged;
            d["ensemble_size"] = res.ensemble_size;
            d["weights"] = res.weights;
            d["states"] = res.states;
            d["reconstruction_error"] = res.reconstruction_error;
            return d;
        },
        py::arg("rho"), py::arg("side_a"), py::arg("side_b"), py::arg("ensemble_size") = 4,
        py::arg("restarts") = 32, py::arg("tol") = 1e-7, py::arg("seed") = 1,
        "Ensemble minimization upper bound on the entanglement of formation.");

    m.def(
        "continuity_bound",
        [](const Matrix& rho, const Matrix& sigma, const std::vector<int>& side_a,
           const std::vector<int>& side_b) {
            const int n = qubits_of(rho.rows());
            return continuity_bound(DensityMatrix::from_matrix(n, rho, 1e-8),
                                    DensityMatrix::from_matrix(n, sigma, 1e-8),
                                    Bipartition{side_a, side_b});
        },
        py::arg("rho"), py::arg("sigma"), py::arg("side_a"), py::arg("side_b"),
        "Trace-distance continuity bound on the entanglement difference.");

    m.def(
        "entanglement_decay_bound",
        [](int size_a, int size_b, double distance, double xi, py::object t, py::object n) {
            if (t.is_none() || n.is_none()) return entanglement_decay_bound(size_a, size_b, distance, xi);
            return entanglement_decay_bound(size_a, size_b, distance, xi, t.cast<double>(), n.cast<int>());
        },
        py::arg("size_a"), py::arg("size_b"), py::arg("distance"), py::arg("xi"),
        py::arg("t") = py::none(), py::arg("n") = py::none(),
        "Exponential-decay bound on the entanglement between two sets.");

    m.attr("__version__") = "0.1.0";
}
