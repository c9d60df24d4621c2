#pragma once

#include <vector>

#include "ddqsl/params.hpp"

namespace ddqsl::trajectory {

// A breakpoint of the excited-state population P(t) on [0, tau]: a time where
// P may change direction, together with its population value.
enum class BreakpointKind {
    endpoint,          // t = 0 or t = tau
    pulse_time,        // a pulse instant kT, where the derivative flips sign
    stationary_point,  // an interior zero of dP/dt located by bisection
};

struct Breakpoint {
    double t = 0.0;
    double p = 0.0;  // excited-state population at t
    BreakpointKind kind = BreakpointKind::endpoint;
};

// Partition of [0, tau] into segments on which P(t) is monotone.  Breakpoints
// are sorted in time; the first is always t = 0 and the last t = tau.  Between
// consecutive breakpoints dP/dt keeps one sign, so every variation of P (and,
// because each zero of the amplitude is itself a stationary point of P, every
// variation of sqrt(P) as well) telescopes exactly over the breakpoint values.
struct ExtremaDecomposition {
    std::vector<Breakpoint> breakpoints;
    // True when a sign scan of dP/dt at 16 interior points of every segment
    // found no direction change, i.e. the partition was re-checked after the
    // root search and certified monotone segment by segment.
    bool monotone_certified = false;
};

// Locates all direction changes of P(t) under the given schedule.  Each pulse
// interval is sampled on a uniform grid (initial_samples points, doubled until
// the detected sign-change count is identical across three consecutive
// densities, capped at 2^16), and each bracketed zero of dP/dt is refined by
// bisection to the absolute time tolerance tol.  Non-positive tol selects the
// default 1e-10 * tau.  Roots landing within tol of an interval boundary are
// dropped (the boundary is already a breakpoint).
ExtremaDecomposition decompose(const SpectralParams& params,
                               const PulseSchedule& schedule, double tol = 0.0,
                               int initial_samples = 512);

// Sum of the positive increments of P over consecutive breakpoints: the total
// population flowing back into the excited state.
double positive_variation(const ExtremaDecomposition& d);

// Same telescope applied to sqrt(P); exact because sqrt preserves monotonicity
// segment by segment.
double sqrt_positive_variation(const ExtremaDecomposition& d);

// Sum of |increments| of P: total variation over [0, tau].
double total_variation(const ExtremaDecomposition& d);

}  // namespace ddqsl::trajectory
