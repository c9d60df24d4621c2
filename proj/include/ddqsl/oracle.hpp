#pragma once

#include <vector>

#include "ddqsl/params.hpp"

namespace ddqsl::oracle {

// Independent numerical ground truth for the decoherence amplitude.
//
// A Lorentzian reservoir is exactly equivalent to a single damped
// pseudomode: the memory-kernel equation
//   c'(t) = -(gamma0 lambda / 2) Int_0^t e^{-lambda (t - t1)} s(t) s(t1) c(t1) dt1
// with pulse sign s(t) = (-1)^floor(t / T) localizes to the pair
//   c' = -g s(t) b,   b' = -lambda b + g s(t) c,   g = sqrt(gamma0 lambda / 2),
// with c(0) = 1, b(0) = 0, and c(t) equal to the closed-form amplitude.
// Everything stays real. The pair is integrated with classical
// fixed-step 4th-order Runge-Kutta, and s(t) is constant within each
// pulse interval, so integration is segmented at the pulse instants:
// no step straddles a sign flip and the method keeps its full order.

// Whether the coupling sign actually flips at pulses. `frozen` disables
// the flips (s = +1 throughout); it exists solely as a fault injection for
// the verification pipeline's negative control and must never be used to
// produce physics.
enum class PulseCoupling { sign_flips, frozen };

// `split_at_pulses` is the correct scheme. `free_running` ignores the
// pulse instants when placing steps; it exists as a diagnostic to
// demonstrate that the segmentation is load-bearing.
enum class StepPolicy { split_at_pulses, free_running };

struct IntegrationOptions {
    PulseCoupling coupling = PulseCoupling::sign_flips;
    StepPolicy policy = StepPolicy::split_at_pulses;
};

// Sampled solution at the integration nodes. `leaked` accumulates
// 2 lambda Int_0^t b^2 dt', the excitation lost through the pseudomode's
// decay channel; c^2 + b^2 + leaked = 1 is an exact invariant of the pair
// and holds to integration accuracy.
struct PseudomodeTrajectory {
    std::vector<double> t;
    std::vector<double> c;
    std::vector<double> b;
    std::vector<double> leaked;
};

// Core integrator with an explicit coupling strength g; g = 0 decouples
// the qubit and c stays identically 1. The public entry point below maps
// SpectralParams onto g. Throws ValidationError when the step exceeds
// min(T, 1/lambda, 1/(|d| + lambda)) / 50, the resolution needed to keep
// every relevant rate well inside the stability region.
PseudomodeTrajectory integrate_pseudomode_raw(double g, double lambda,
                                              const PulseSchedule& s, double step,
                                              IntegrationOptions opts = {});

PseudomodeTrajectory integrate_pseudomode(const SpectralParams& p,
                                          const PulseSchedule& s, double step,
                                          IntegrationOptions opts = {});

// Runs the closed-form amplitude and the integrated pseudomode on a shared
// grid of about `grid_points` sample times spread over [0, tau] and
// returns max |kappa_closed - c_integrated|.
double verify_amplitude(const SpectralParams& p, const PulseSchedule& s,
                        int grid_points, double step = 1e-4,
                        IntegrationOptions opts = {});

} // namespace ddqsl::oracle
