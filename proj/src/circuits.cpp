#include <algorithm>
#include <set>
#include <stdexcept>

#include "entperc/quantum.hpp"
#include "entperc/rng.hpp"

namespace entperc {

void extend_steps(CircuitSchedule& schedule, int total_steps) {
    if (total_steps < schedule.depth)
        throw std::invalid_argument("cannot truncate a schedule below its depth");
    schedule.step_gates.resize(total_steps);
    schedule.spec.steps = total_steps;
}

namespace {

void check_step_gates(const LatticeSpec& spec, int t, const std::vector<GateOp>& gates) {
    const auto pairs = interaction_schedule(spec, t);
    std::set<std::pair<int, int>> allowed(pairs.begin(), pairs.end());
    std::set<std::pair<int, int>> used_pairs;
    std::set<int> busy;

    for (const GateOp& g : gates) {
        if (!g.two_qubit()) continue;
        auto key = std::minmax(g.q0, g.q1);
        if (!allowed.count({key.first, key.second}))
            throw std::invalid_argument("two-qubit gate off the interaction schedule at step " +
                                        std::to_string(t));
        // One interaction partner per particle per step; repeated gates on
        // the same pair compose and are fine.
        if (!used_pairs.count({key.first, key.second})) {
            if (busy.count(g.q0) || busy.count(g.q1))
                throw std::invalid_argument("particle scheduled twice at step " + std::to_string(t));
            busy.insert(g.q0);
            busy.insert(g.q1);
            used_pairs.insert({key.first, key.second});
        }
    }
}

}  // namespace

DensityMatrix evolve_circuit(const CircuitSchedule& schedule, const NoiseChannelSpec& noise,
                             DensityMatrix rho0, const StepObserver& observer,
                             bool schedule_checked, int max_qubits) {
    const LatticeSpec& spec = schedule.spec;
    spec.validate();
    const int n = spec.particle_count();
    if (n > max_qubits) throw std::length_error("circuit exceeds the configured qubit maximum");
    if (rho0.qubits() != n) throw std::invalid_argument("initial state does not match the lattice");
    if (schedule.steps() != spec.steps)
        throw std::invalid_argument("gate assignment does not cover the requested steps");
    noise.validate();

    DensityMatrix rho = std::move(rho0);
    if (observer) observer(0, rho);

    for (int t = 1; t <= spec.steps; ++t) {
        const auto& gates = schedule.step_gates[t - 1];
        if (schedule_checked) check_step_gates(spec, t, gates);
        for (const GateOp& g : gates) rho = apply_gate(std::move(rho), g);
        if (!noise.trivial())
            for (int q = 0; q < n; ++q) rho = apply_noise_channel(std::move(rho), noise, q);
        if (observer) observer(t, rho);
    }
    return rho;
}

namespace {

// Earliest step >= from at which (a, a+1) is on the alternating schedule:
// axis 0 of a chain pairs offset a%2 at every other step.
int next_scheduled_step(const LatticeSpec& spec, int a, int from) {
    for (int t = from;; ++t) {
        const int axis = (t - 1) % spec.dimension;
        const int offset = ((t - 1) / spec.dimension) % 2;
        if (axis == 0 && offset == a % 2) return t;
    }
}

}  // namespace

CircuitSchedule ghz_circuit(int m, int mid, int q, int max_qubits) {
    if (m < 1 || q < 1 || mid < 0) throw std::invalid_argument("need m >= 1, q >= 1, mid >= 0");
    const int n = m + mid + q;
    if (n > max_qubits) throw std::length_error("ghz register exceeds the configured qubit maximum");
    if (n < 2) throw std::invalid_argument("ghz construction needs at least two qubits");

    CircuitSchedule schedule;
    schedule.spec.dimension = 1;
    schedule.spec.sides = {n};
    schedule.spec.steps = 0;

    // Program order: Hadamard, CNOT chain over the first m+q qubits, then the
    // swap ladder moving the B block to the far side, rightmost qubit first.
    struct PendingGate {
        GateOp op;
        int a;  // left qubit of the pair (== target qubit for 1q gates)
    };
    std::vector<PendingGate> program;
    program.push_back({GateOp::hadamard(0), 0});
    for (int i = 0; i + 1 < m + q; ++i) program.push_back({GateOp::cnot(i, i + 1), i});
    for (int b = q - 1; b >= 0; --b)
        for (int s = m + b; s < m + mid + b; ++s) program.push_back({GateOp::swap(s, s + 1), s});

    std::vector<int> qubit_free(n, 1);
    std::vector<std::vector<GateOp>> steps;
    auto place_at = [&](const GateOp& op, int t) {
        if (static_cast<int>(steps.size()) < t) steps.resize(t);
        steps[t - 1].push_back(op);
    };

    for (const auto& [op, a] : program) {
        if (!op.two_qubit()) {
            place_at(op, qubit_free[op.q0]);
            continue;
        }
        int t = std::max(qubit_free[op.q0], qubit_free[op.q1]);
        t = next_scheduled_step(schedule.spec, a, t);
        place_at(op, t);
        qubit_free[op.q0] = t + 1;
        qubit_free[op.q1] = t + 1;
    }

    schedule.depth = static_cast<int>(steps.size());
    schedule.step_gates = std::move(steps);
    schedule.spec.steps = schedule.depth;
    return schedule;
}

CircuitSchedule random_nn_circuit(const LatticeSpec& spec, std::uint64_t seed) {
    spec.validate();
    CircuitSchedule schedule;
    schedule.spec = spec;
    schedule.step_gates.resize(spec.steps);
    auto rng = make_stream_rng(seed, 0x726e6463ull);
    for (int t = 1; t <= spec.steps; ++t) {
        for (const auto& [a, b] : interaction_schedule(spec, t))
            schedule.step_gates[t - 1].push_back(GateOp::unitary2(a, b, haar_unitary(4, rng)));
        if (!schedule.step_gates[t - 1].empty()) schedule.depth = t;
    }
    return schedule;
}

}  // namespace entperc
