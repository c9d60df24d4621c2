#include "ddqsl/multiqubit.hpp"

#include <bit>
#include <cmath>

#include "ddqsl/decoherence.hpp"

namespace ddqsl::multiqubit {

namespace {

constexpr int max_dense_qubits = 10; // 2^10 x 2^10 complex entries

int qubits_from_dimension(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim)
        ++n;
    if ((Eigen::Index{1} << n) != dim || dim < 2)
        throw ValidationError("density matrix dimension must be a power of two >= 2");
    return n;
}

} // namespace

void WState::validate() const {
    if (n_qubits < 1 || alphas.size() != n_qubits)
        throw ValidationError("W state amplitude count must match the qubit count");
    if (std::fabs(alphas.squaredNorm() - 1.0) > 1e-12)
        throw ValidationError("W state amplitudes must be normalized");
}

Eigen::VectorXcd WState::state_vector() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    for (int j = 0; j < n_qubits; ++j)
        v(Eigen::Index{1} << j) = alphas(j);
    return v;
}

WState make_w_state(const Eigen::VectorXcd& alphas) {
    if (alphas.size() < 1)
        throw ValidationError("W state needs at least one qubit");
    for (Eigen::Index j = 0; j < alphas.size(); ++j)
        if (!std::isfinite(alphas(j).real()) || !std::isfinite(alphas(j).imag()))
            throw ValidationError("W state amplitudes must be finite");
    const double norm = alphas.norm();
    if (norm == 0.0)
        throw ValidationError("W state amplitudes must not all vanish");
    return WState{static_cast<int>(alphas.size()), alphas / norm};
}

Eigen::MatrixXcd EvolvedWState::dense() const {
    const Eigen::VectorXcd v = psi0.state_vector();
    Eigen::MatrixXcd rho = p * (v * v.adjoint());
    rho(0, 0) += 1.0 - p;
    return rho;
}

EvolvedWState evolve_w(const WState& w, double t, const SpectralParams& p,
                       const PulseSchedule& s) {
    w.validate();
    return EvolvedWState{decoherence::population(t, p, s), w};
}

Eigen::MatrixXcd evolve_dense(const Eigen::MatrixXcd& rho0, double t,
                              const SpectralParams& p, const PulseSchedule& s) {
    if (rho0.rows() != rho0.cols())
        throw ValidationError("density matrix must be square");
    const int n = qubits_from_dimension(rho0.rows());
    if (n > max_dense_qubits)
        throw CapacityError("dense evolution capped at 10 qubits");

    const double kappa = decoherence::amplitude(t, p, s);
    const double loss = 1.0 - kappa * kappa;
    const auto dim = static_cast<unsigned>(rho0.rows());

    // Powers of kappa and (1 - kappa^2) up to N, indexed by popcount.
    std::vector<double> kpow(n + 1, 1.0), lpow(n + 1, 1.0);
    for (int i = 1; i <= n; ++i) {
        kpow[i] = kpow[i - 1] * kappa;
        lpow[i] = lpow[i - 1] * loss;
    }

    // A Kraus tuple is a bitmask m: bit j set applies the decay operator
    // K2 to qubit j, clear applies K1. Acting on basis ket |x>:
    //   requires every m-bit excited in x, maps |x> to |x & ~m>,
    //   with weight kappa^{popcount of surviving excitations}
    //   and sqrt(1 - kappa^2) per decayed qubit.
    // Summing tuples therefore reduces to: for each entry (x, y), every
    // submask m of x & y contributes to entry (x & ~m, y & ~m). Submask
    // enumeration keeps the total work at sum over (x, y) of
    // 2^{popcount(x & y)} = 5^N instead of 8^N.
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho0.rows(), rho0.cols());
    for (unsigned x = 0; x < dim; ++x) {
        for (unsigned y = 0; y < dim; ++y) {
            const std::complex<double> v = rho0(x, y);
            if (v == std::complex<double>{})
                continue;
            const unsigned xy = x & y;
            unsigned m = xy;
            while (true) {
                const int decayed = std::popcount(m);
                const int keep_x = std::popcount(x & ~m);
                const int keep_y = std::popcount(y & ~m);
                out(x & ~m, y & ~m) += v * (lpow[decayed] * kpow[keep_x] * kpow[keep_y]);
                if (m == 0)
                    break;
                m = (m - 1) & xy;
            }
        }
    }
    return out;
}

Eigen::MatrixXcd evolve_dense(const WState& w, double t, const SpectralParams& p,
                              const PulseSchedule& s) {
    w.validate();
    if (w.n_qubits > max_dense_qubits)
        throw CapacityError("dense evolution capped at 10 qubits");
    const Eigen::VectorXcd v = w.state_vector();
    return evolve_dense(Eigen::MatrixXcd(v * v.adjoint()), t, p, s);
}

double fidelity(const WState& w, double t, const SpectralParams& p,
                const PulseSchedule& s) {
    // <psi0| rho_t |psi0> = P_t <psi0|psi0>^2 + (1 - P_t) |<psi0|0...0>|^2,
    // and a W state has no ground-state component, so the overlap is P_t
    // for every N and every amplitude vector.
    w.validate();
    return decoherence::population(t, p, s);
}

double trace_distance(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2) {
    if (rho1.rows() != rho1.cols() || rho2.rows() != rho2.cols())
        throw ValidationError("trace distance needs square matrices");
    if (rho1.rows() != rho2.rows())
        throw ValidationError("trace distance needs equal dimensions");
    if (rho1.rows() > (Eigen::Index{1} << max_dense_qubits))
        throw CapacityError("trace distance capped at 2^10 dimensions");
    const Eigen::MatrixXcd diff = rho1 - rho2;
    if ((diff - diff.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw ValidationError("trace distance needs Hermitian inputs");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff,
                                                           Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace ddqsl::multiqubit
