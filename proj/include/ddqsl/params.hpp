#pragma once

#include <cmath>
#include <string>

#include "ddqsl/errors.hpp"

namespace ddqsl {

// Reservoir parameters of the Lorentzian spectral density
//   J(w) = gamma0 * lambda^2 / (2 pi [(w0 - w)^2 + lambda^2]).
// gamma0 is the Markovian decay rate, lambda the spectral width; both in
// the same inverse-time units (conventionally lambda = 1).
struct SpectralParams {
    double gamma0;
    double lambda;

    void validate() const {
        if (!std::isfinite(gamma0) || !std::isfinite(lambda))
            throw ValidationError("spectral parameters must be finite");
        if (gamma0 <= 0.0 || lambda <= 0.0)
            throw ValidationError("spectral parameters must be positive");
    }

    // Weak coupling: the memory-kernel ODE is overdamped and the qubit
    // decays monotonically. Strong coupling: underdamped, the amplitude
    // oscillates and population flows back.
    bool weak_coupling() const { return gamma0 < lambda / 2.0; }
    bool strong_coupling() const { return gamma0 > lambda / 2.0; }

    // d^2 = lambda^2 - 2 lambda gamma0, the discriminant of the free-decay
    // characteristic equation. Negative in the strong-coupling regime,
    // where d itself is imaginary; all evaluation stays real by carrying
    // d^2 and switching cosh/sinh to cos/sin.
    double d_squared() const { return lambda * (lambda - 2.0 * gamma0); }
};

// Equidistant instantaneous pi-pulses inside a driving window [0, tau].
// With n_pulses pulses the window splits into n_pulses + 1 intervals of
// length T = tau / (n_pulses + 1); the pulses sit at T, 2T, ..., n*T,
// all strictly inside (0, tau). Each pulse flips the sign of the
// qubit-reservoir coupling.
struct PulseSchedule {
    double tau;
    int n_pulses;

    void validate() const {
        if (!std::isfinite(tau))
            throw ValidationError("driving time must be finite");
        if (tau <= 0.0)
            throw ValidationError("driving time must be positive");
        if (n_pulses < 0)
            throw ValidationError("pulse count must be non-negative");
    }

    double interval() const { return tau / (n_pulses + 1); }

    // k-th pulse instant, k in [1, n_pulses].
    double pulse_time(int k) const { return k * interval(); }

    // Index of the pulse interval containing t: floor(t / T) for
    // t in [0, tau), clamped to n_pulses at t = tau. Floating-point
    // rounding in the division is corrected against the same k*T products
    // pulse_time() produces, so interval_index(pulse_time(k)) == k.
    int interval_index(double t) const {
        const double T = interval();
        int k = static_cast<int>(std::floor(t / T));
        if (k > 0 && t < k * T)
            --k;
        else if (k < n_pulses && t >= (k + 1) * T)
            ++k;
        if (k < 0) k = 0;
        if (k > n_pulses) k = n_pulses;
        return k;
    }

    // True iff t coincides exactly (as a double) with one of the pulse
    // instants k*T. One-sided quantities are ambiguous at these times.
    bool is_pulse_time(double t) const {
        const double T = interval();
        const int k = static_cast<int>(std::llround(t / T));
        return k >= 1 && k <= n_pulses && t == k * T;
    }
};

} // namespace ddqsl
