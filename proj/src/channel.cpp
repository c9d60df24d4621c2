#include "ddqsl/channel.hpp"

#include "ddqsl/decoherence.hpp"

namespace ddqsl::channel {

double KrausPair::completeness_residual() const {
    const Eigen::Matrix2cd sum =
        dense_k1().adjoint() * dense_k1() + dense_k2().adjoint() * dense_k2();
    return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

KrausPair kraus_pair(double t, const SpectralParams& p, const PulseSchedule& s) {
    return KrausPair{decoherence::amplitude(t, p, s)};
}

QubitState apply_channel(const QubitState& rho0, double amplitude) {
    return QubitState{rho0.rho11 * amplitude * amplitude, rho0.rho10 * amplitude};
}

QubitState evolve_qubit(const QubitState& rho0, double t, const SpectralParams& p,
                        const PulseSchedule& s) {
    rho0.validate();
    return apply_channel(rho0, decoherence::amplitude(t, p, s));
}

} // namespace ddqsl::channel
