#pragma once

#include <optional>
#include <vector>

#include "ddqsl/params.hpp"

namespace ddqsl::decoherence {

// Which closed form the recurrence uses. The free decay obeys
// c'' + lambda c' + (gamma0 lambda / 2) c = 0; its two exponents coincide
// at lambda = 2 gamma0 (d^2 = 0), where the generic cosh/sinh solution
// degenerates into a polynomial-times-exponential one.
enum class Branch { generic, degenerate };

// Use the degenerate formulas once |lambda - 2 gamma0| < branch_tolerance()
// * lambda; this close to the double root the two forms agree far below
// every tolerance used anywhere else.
constexpr double branch_tolerance() { return 1e-8; }

// One-sided limit selector for quantities that jump at pulse instants.
enum class Side { left, right };

// Per-interval closed-form coefficients of the decoherence amplitude.
//
// Within pulse interval k (t in [kT, (k+1)T]), with D = (t - kT)/2:
//   generic:     kappa = e^{-lambda D} [ a_k C(D) + b_k S(D) ]
//   degenerate:  kappa = e^{-lambda D} [ 2 D a_k + (1 + lambda D) b_k ]
// where C(D) = cosh(d D) and S(D) = sinh(d D)/d, evaluated through d^2
// only (so the strong-coupling imaginary d becomes cos / sinc with no
// complex arithmetic).
//
// The stored pairs absorb the e^{-lambda k T / 2} envelope accumulated by
// the preceding intervals, which keeps every coefficient bounded
// (a_k = kappa(kT) in [-1, 1]) for any pulse count, instead of the
// exponentially growing raw coefficients that would need an overflow
// fallback. The interval-to-interval transfer implements continuity of
// kappa plus the sign flip of kappa-dot at each pulse.
struct RecurrenceCoefficients {
    Branch branch;
    double lambda;
    double d2;       // d^2 = lambda (lambda - 2 gamma0)
    double T;        // pulse interval
    int n_pulses;
    std::vector<double> a; // n_pulses + 1 entries, see above
    std::vector<double> b;

    static RecurrenceCoefficients build(const SpectralParams& p, const PulseSchedule& s);

    // kappa at time t using interval k's pair. Valid for t in the closed
    // interval [kT, (k+1)T]; evaluating at a shared endpoint from either
    // side gives the same value up to rounding (kappa is continuous).
    double eval(double t, int interval) const;

    // d kappa / dt at time t using interval k's pair. At the pulse
    // instants this is the one-sided limit from inside interval k.
    double eval_dot(double t, int interval) const;
};

// Decoherence amplitude kappa(t): the surviving excitation amplitude of a
// qubit coupled to a Lorentzian reservoir under periodic pi-pulses. Real,
// kappa(0) = 1, |kappa| <= 1. Coherences scale by kappa, the excited
// population by kappa^2.
double amplitude(double t, const SpectralParams& p, const PulseSchedule& s);

// Time derivative of the amplitude. kappa-dot jumps sign at every pulse
// instant, so evaluating exactly at a pulse time requires an explicit
// side; anywhere else the side is ignored.
double amplitude_dot(double t, const SpectralParams& p, const PulseSchedule& s,
                     std::optional<Side> side = std::nullopt);

// Excited-state population P(t) = kappa(t)^2, and its derivative
// 2 kappa kappa-dot (same one-sidedness contract as amplitude_dot).
double population(double t, const SpectralParams& p, const PulseSchedule& s);
double population_dot(double t, const SpectralParams& p, const PulseSchedule& s,
                      std::optional<Side> side = std::nullopt);

} // namespace ddqsl::decoherence
