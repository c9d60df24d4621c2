#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ddqsl/params.hpp"

namespace ddqsl::multiqubit {

// W-type state of N qubits: a single shared excitation,
//   |psi0> = sum_j alpha_j |0 ... 1_j ... 0>,  sum |alpha_j|^2 = 1.
// Basis convention everywhere: computational index x in [0, 2^N) with bit
// j of x set iff qubit j is excited.
struct WState {
    int n_qubits;
    Eigen::VectorXcd alphas;

    void validate() const;

    // Full 2^N state vector (amplitudes alpha_j at the single-bit indices).
    Eigen::VectorXcd state_vector() const;
};

// Normalizes a nonzero amplitude vector into a WState.
WState make_w_state(const Eigen::VectorXcd& alphas);

// Evolved N-qubit state under independent identical reservoirs. The exact
// result keeps rank 2:
//   rho_t = P_t |psi0><psi0| + (1 - P_t) |0...0><0...0|
// with P_t the single-qubit excited population at time t.
struct EvolvedWState {
    double p;
    WState psi0;

    Eigen::MatrixXcd dense() const;
};

EvolvedWState evolve_w(const WState& w, double t, const SpectralParams& p,
                       const PulseSchedule& s);

// Brute-force oracle: sums all 2^N tensor products of the single-qubit
// Kraus pair over an arbitrary 2^N x 2^N density matrix. Exponential in N;
// guarded at N <= 10.
Eigen::MatrixXcd evolve_dense(const Eigen::MatrixXcd& rho0, double t,
                              const SpectralParams& p, const PulseSchedule& s);
Eigen::MatrixXcd evolve_dense(const WState& w, double t, const SpectralParams& p,
                              const PulseSchedule& s);

// Fidelity <psi0| rho_t |psi0> of the evolved state with the initial one.
// Collapses exactly to the excited population P_t, independent of N and of
// the amplitudes.
double fidelity(const WState& w, double t, const SpectralParams& p,
                const PulseSchedule& s);

// Trace distance (1/2) sum |eig(rho1 - rho2)| via Hermitian
// eigendecomposition. Dimensions must match and stay within 2^10.
double trace_distance(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2);

} // namespace ddqsl::multiqubit
