#include "ddqsl/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ddqsl/decoherence.hpp"

namespace ddqsl::oracle {

namespace {

struct State {
    double c, b, e;
};

// Right-hand side of the pseudomode pair plus the leaked-excitation
// accumulator e' = 2 lambda b^2.
State rhs(const State& y, double gs, double lambda) {
    return {-gs * y.b, -lambda * y.b + gs * y.c, 2.0 * lambda * y.b * y.b};
}

State rk4_step(const State& y, double h, double gs, double lambda) {
    const State k1 = rhs(y, gs, lambda);
    const State y2{y.c + 0.5 * h * k1.c, y.b + 0.5 * h * k1.b, y.e + 0.5 * h * k1.e};
    const State k2 = rhs(y2, gs, lambda);
    const State y3{y.c + 0.5 * h * k2.c, y.b + 0.5 * h * k2.b, y.e + 0.5 * h * k2.e};
    const State k3 = rhs(y3, gs, lambda);
    const State y4{y.c + h * k3.c, y.b + h * k3.b, y.e + h * k3.e};
    const State k4 = rhs(y4, gs, lambda);
    return {y.c + h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c),
            y.b + h / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b),
            y.e + h / 6.0 * (k1.e + 2.0 * k2.e + 2.0 * k3.e + k4.e)};
}

// With free-running steps the sign must be sampled mid-step; a step that
// straddles a pulse then mixes the two signs and the method drops below
// its order. That is exactly the failure mode the policy exists to expose.
double coupling_sign(double t, const PulseSchedule& s, PulseCoupling coupling) {
    if (coupling == PulseCoupling::frozen)
        return 1.0;
    const int k = std::min(static_cast<int>(std::floor(t / s.interval())), s.n_pulses);
    return (k % 2 == 0) ? 1.0 : -1.0;
}

State rk4_step_free(const State& y, double t, double h, double g, double lambda,
                    const PulseSchedule& s, PulseCoupling coupling) {
    auto f = [&](double tt, const State& yy) {
        return rhs(yy, g * coupling_sign(tt, s, coupling), lambda);
    };
    const State k1 = f(t, y);
    const State y2{y.c + 0.5 * h * k1.c, y.b + 0.5 * h * k1.b, y.e + 0.5 * h * k1.e};
    const State k2 = f(t + 0.5 * h, y2);
    const State y3{y.c + 0.5 * h * k2.c, y.b + 0.5 * h * k2.b, y.e + 0.5 * h * k2.e};
    const State k3 = f(t + 0.5 * h, y3);
    const State y4{y.c + h * k3.c, y.b + h * k3.b, y.e + h * k3.e};
    const State k4 = f(t + h, y4);
    return {y.c + h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c),
            y.b + h / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b),
            y.e + h / 6.0 * (k1.e + 2.0 * k2.e + 2.0 * k3.e + k4.e)};
}

void validate_step(double g, double lambda, const PulseSchedule& s, double step) {
    if (!std::isfinite(step) || step <= 0.0)
        throw ValidationError("integration step must be positive and finite");
    // |d| is the oscillation rate of the underdamped regime; the bound
    // keeps at least ~50 steps per interval, per decay time and per
    // oscillation time.
    const double d2 = lambda * lambda - 4.0 * g * g; // lambda^2 - 2 lambda gamma0
    const double absd = std::sqrt(std::fabs(d2));
    const double bound =
        std::min({s.interval(), 1.0 / lambda, 1.0 / (absd + lambda)}) / 50.0;
    if (step > bound)
        throw ValidationError("integration step too large for this schedule");
}

} // namespace

PseudomodeTrajectory integrate_pseudomode_raw(double g, double lambda,
                                              const PulseSchedule& s, double step,
                                              IntegrationOptions opts) {
    s.validate();
    if (!std::isfinite(g) || g < 0.0)
        throw ValidationError("coupling strength must be finite and non-negative");
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw ValidationError("spectral width must be positive");
    validate_step(g, lambda, s, step);

    PseudomodeTrajectory out;
    State y{1.0, 0.0, 0.0};

    if (opts.policy == StepPolicy::free_running) {
        const long steps = std::max(1L, static_cast<long>(std::ceil(s.tau / step)));
        const double h = s.tau / static_cast<double>(steps);
        out.t.reserve(steps + 1);
        out.c.reserve(steps + 1);
        out.b.reserve(steps + 1);
        out.leaked.reserve(steps + 1);
        out.t.push_back(0.0);
        out.c.push_back(y.c);
        out.b.push_back(y.b);
        out.leaked.push_back(y.e);
        for (long i = 0; i < steps; ++i) {
            const double t = h * static_cast<double>(i);
            y = rk4_step_free(y, t, h, g, lambda, s, opts.coupling);
            out.t.push_back(h * static_cast<double>(i + 1));
            out.c.push_back(y.c);
            out.b.push_back(y.b);
            out.leaked.push_back(y.e);
        }
        return out;
    }

    out.t.push_back(0.0);
    out.c.push_back(y.c);
    out.b.push_back(y.b);
    out.leaked.push_back(y.e);
    for (int k = 0; k <= s.n_pulses; ++k) {
        const double t0 = k == 0 ? 0.0 : s.pulse_time(k);
        const double t1 = k == s.n_pulses ? s.tau : s.pulse_time(k + 1);
        const double len = t1 - t0;
        const long steps = std::max(1L, static_cast<long>(std::ceil(len / step)));
        const double h = len / static_cast<double>(steps);
        const double sign =
            (opts.coupling == PulseCoupling::frozen || k % 2 == 0) ? 1.0 : -1.0;
        const double gs = g * sign;
        for (long i = 0; i < steps; ++i) {
            y = rk4_step(y, h, gs, lambda);
            // last node lands exactly on the segment end
            const double t = i + 1 == steps ? t1 : t0 + h * static_cast<double>(i + 1);
            out.t.push_back(t);
            out.c.push_back(y.c);
            out.b.push_back(y.b);
            out.leaked.push_back(y.e);
        }
    }
    return out;
}

PseudomodeTrajectory integrate_pseudomode(const SpectralParams& p,
                                          const PulseSchedule& s, double step,
                                          IntegrationOptions opts) {
    p.validate();
    return integrate_pseudomode_raw(std::sqrt(p.gamma0 * p.lambda / 2.0), p.lambda, s,
                                    step, opts);
}

double verify_amplitude(const SpectralParams& p, const PulseSchedule& s,
                        int grid_points, double step, IntegrationOptions opts) {
    if (grid_points < 1)
        throw ValidationError("verification grid needs at least one point");
    const auto traj = integrate_pseudomode(p, s, step, opts);
    const auto rc = decoherence::RecurrenceCoefficients::build(p, s);

    const std::size_t n = traj.t.size();
    const std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(grid_points));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; i += stride) {
        const double t = traj.t[i];
        const double k = rc.eval(t, s.interval_index(t));
        worst = std::max(worst, std::fabs(k - traj.c[i]));
    }
    const double t_end = traj.t[n - 1];
    worst = std::max(worst, std::fabs(rc.eval(t_end, s.interval_index(t_end)) - traj.c[n - 1]));
    return worst;
}

} // namespace ddqsl::oracle
