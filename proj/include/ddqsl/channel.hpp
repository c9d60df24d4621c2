#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ddqsl/params.hpp"

namespace ddqsl::channel {

// Single-qubit state in the basis {|0>, |1>} (index 1 = excited). Only the
// excited population and the coherence <1|rho|0> are stored; the trace
// fixes the rest.
struct QubitState {
    double rho11;
    std::complex<double> rho10;

    void validate() const {
        if (!std::isfinite(rho11) || !std::isfinite(rho10.real()) ||
            !std::isfinite(rho10.imag()))
            throw ValidationError("qubit state entries must be finite");
        if (rho11 < 0.0 || rho11 > 1.0)
            throw ValidationError("excited population must lie in [0, 1]");
        if (std::norm(rho10) > rho11 * (1.0 - rho11) + 1e-12)
            throw ValidationError("coherence too large: state not positive semidefinite");
    }

    // Dense 2x2 matrix, basis order {|0>, |1>}.
    Eigen::Matrix2cd dense() const {
        Eigen::Matrix2cd m;
        m(0, 0) = 1.0 - rho11;
        m(0, 1) = std::conj(rho10);
        m(1, 0) = rho10;
        m(1, 1) = rho11;
        return m;
    }
};

// Amplitude-damping Kraus pair at decoherence amplitude kappa:
//   K1 = kappa |1><1| + |0><0|,   K2 = sqrt(1 - kappa^2) |0><1|.
// Stored as the scalar; the structure is fixed. dense_* materialize the
// matrices for oracle-style checks.
struct KrausPair {
    double amplitude;

    Eigen::Matrix2cd dense_k1() const {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 0) = 1.0;
        m(1, 1) = amplitude;
        return m;
    }
    Eigen::Matrix2cd dense_k2() const {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 1) = std::sqrt(1.0 - amplitude * amplitude);
        return m;
    }
    // max-abs entry of K1^+ K1 + K2^+ K2 - I
    double completeness_residual() const;
};

KrausPair kraus_pair(double t, const SpectralParams& p, const PulseSchedule& s);

// Channel action at known amplitude kappa:
//   rho11 -> rho11 kappa^2,  rho10 -> rho10 kappa.
// Identical to summing the two Kraus terms.
QubitState apply_channel(const QubitState& rho0, double amplitude);

// Evolve an initial state to time t under the pulsed reservoir.
QubitState evolve_qubit(const QubitState& rho0, double t, const SpectralParams& p,
                        const PulseSchedule& s);

} // namespace ddqsl::channel
