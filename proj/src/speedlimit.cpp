#include "ddqsl/speedlimit.hpp"

#include <cmath>

#include "ddqsl/errors.hpp"
#include "ddqsl/trajectory.hpp"

namespace ddqsl::speedlimit {

namespace {

constexpr double degenerate_target_tolerance = 1e-14;

void require_distinguishable_target(double p_tau) {
    if (1.0 - p_tau < degenerate_target_tolerance)
        throw DegenerateTargetError(
            "final population equals the initial one within 1e-14: the "
            "speed-limit target distance vanishes and the bound is undefined");
}

}  // namespace

QsltResult qslt(const SpectralParams& params, const PulseSchedule& schedule) {
    const auto d = trajectory::decompose(params, schedule);
    QsltResult r;
    r.tau = schedule.tau;
    r.p_tau = d.breakpoints.back().p;
    r.backflow = trajectory::positive_variation(d);
    r.total_var = trajectory::total_variation(d);
    require_distinguishable_target(r.p_tau);
    if (r.backflow == 0.0) {
        // no backflow: the bound is saturated identically
        r.tau_qsl = r.tau;
        r.ratio = 1.0;
        return r;
    }
    const double decay = 1.0 - r.p_tau;
    r.tau_qsl = r.tau * decay / (decay + 2.0 * r.backflow);
    r.ratio = r.tau_qsl / r.tau;
    return r;
}

double qslt_general(const SpectralParams& params, const PulseSchedule& schedule,
                    NormOrder norm) {
    const double base = qslt(params, schedule).tau_qsl;
    switch (norm) {
        case NormOrder::trace:
            return base / 2.0;
        case NormOrder::hilbert_schmidt:
            return base / std::sqrt(2.0);
        case NormOrder::operator_norm:
            break;
    }
    return base;
}

double qslt_via_backflow(const SpectralParams& params,
                         const PulseSchedule& schedule) {
    const auto d = trajectory::decompose(params, schedule);
    const double p_tau = d.breakpoints.back().p;
    require_distinguishable_target(p_tau);
    const double backflow = trajectory::positive_variation(d);
    return schedule.tau / (1.0 + 2.0 * backflow / (1.0 - p_tau));
}

}  // namespace ddqsl::speedlimit
