#include "ddqsl/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ddqsl/decoherence.hpp"
#include "ddqsl/errors.hpp"

namespace ddqsl::trajectory {

namespace {

using decoherence::RecurrenceCoefficients;

double pdot(const RecurrenceCoefficients& rc, double t, int interval) {
    return 2.0 * rc.eval(t, interval) * rc.eval_dot(t, interval);
}

// Bisect dP/dt on a bracket [a, b] with f(a) * f(b) < 0 down to width tol.
double bisect_root(const RecurrenceCoefficients& rc, int interval, double a,
                   double fa, double b, double tol) {
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // bracket at floating-point resolution
        const double fm = pdot(rc, m, interval);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Scan one pulse interval [t0, t1] with `samples` uniform sub-steps and
// append every located zero of dP/dt, tagged with its interval index.
void scan_segment(const RecurrenceCoefficients& rc, int interval, double t0,
                  double t1, int samples, double tol,
                  std::vector<std::pair<double, int>>& roots) {
    const double len = t1 - t0;
    double prev_t = t0;
    double prev_f = pdot(rc, t0, interval);
    for (int i = 1; i <= samples; ++i) {
        const double t = (i == samples)
                             ? t1
                             : t0 + len * (static_cast<double>(i) / samples);
        const double f = pdot(rc, t, interval);
        if (f == 0.0) {
            if (i < samples) roots.emplace_back(t, interval);
        } else if (prev_f != 0.0 && (prev_f < 0.0) != (f < 0.0)) {
            roots.emplace_back(bisect_root(rc, interval, prev_t, prev_f, t, tol),
                               interval);
        }
        prev_t = t;
        prev_f = f;
    }
}

}  // namespace

ExtremaDecomposition decompose(const SpectralParams& params,
                               const PulseSchedule& schedule, double tol,
                               int initial_samples) {
    params.validate();
    schedule.validate();
    if (initial_samples < 4)
        throw ValidationError("decompose needs at least 4 samples per interval");
    if (tol <= 0.0) tol = 1e-10 * schedule.tau;

    const auto rc = RecurrenceCoefficients::build(params, schedule);
    const int n_intervals = schedule.n_pulses + 1;

    auto scan_all = [&](int samples) {
        std::vector<std::pair<double, int>> roots;
        for (int k = 0; k < n_intervals; ++k) {
            const double t0 = schedule.pulse_time(k);
            const double t1 =
                (k + 1 == n_intervals) ? schedule.tau : schedule.pulse_time(k + 1);
            scan_segment(rc, k, t0, t1, samples, tol, roots);
        }
        return roots;
    };

    // Double the scan density until the root count is reproduced twice in a
    // row; protects against pairs of extrema closer than the initial grid.
    constexpr int max_samples = 1 << 16;
    std::vector<std::pair<double, int>> roots = scan_all(initial_samples);
    int stable = 0;
    for (int samples = initial_samples; stable < 2 && samples < max_samples;) {
        samples *= 2;
        auto next = scan_all(samples);
        stable = (next.size() == roots.size()) ? stable + 1 : 0;
        roots = std::move(next);
    }

    // Drop roots that collapsed onto an interval boundary: those instants are
    // already breakpoints, and a duplicate would add a zero-length segment.
    std::erase_if(roots, [&](const std::pair<double, int>& r) {
        const double t0 = schedule.pulse_time(r.second);
        const double t1 = (r.second + 1 == n_intervals)
                              ? schedule.tau
                              : schedule.pulse_time(r.second + 1);
        return r.first - t0 < tol || t1 - r.first < tol;
    });
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](const auto& a, const auto& b) {
                                return std::abs(a.first - b.first) < tol;
                            }),
                roots.end());

    auto population_at = [&](double t, int interval) {
        const double k = rc.eval(t, interval);
        return k * k;
    };

    ExtremaDecomposition d;
    d.breakpoints.push_back({0.0, population_at(0.0, 0), BreakpointKind::endpoint});
    std::size_t next_root = 0;
    for (int k = 1; k <= schedule.n_pulses; ++k) {
        const double tk = schedule.pulse_time(k);
        while (next_root < roots.size() && roots[next_root].first < tk) {
            const auto& [t, interval] = roots[next_root++];
            d.breakpoints.push_back(
                {t, population_at(t, interval), BreakpointKind::stationary_point});
        }
        // The amplitude is continuous across the pulse, so either adjacent
        // interval gives the same population; use the one that starts here.
        d.breakpoints.push_back({tk, population_at(tk, k), BreakpointKind::pulse_time});
    }
    while (next_root < roots.size()) {
        const auto& [t, interval] = roots[next_root++];
        d.breakpoints.push_back(
            {t, population_at(t, interval), BreakpointKind::stationary_point});
    }
    d.breakpoints.push_back({schedule.tau,
                             population_at(schedule.tau, schedule.n_pulses),
                             BreakpointKind::endpoint});

    // Certify the partition: dP/dt must keep one sign strictly inside every
    // segment (exact zeros are tolerated, opposite signs are not).
    d.monotone_certified = true;
    for (std::size_t i = 0; i + 1 < d.breakpoints.size() && d.monotone_certified;
         ++i) {
        const double a = d.breakpoints[i].t;
        const double b = d.breakpoints[i + 1].t;
        const int interval = schedule.interval_index(0.5 * (a + b));
        bool seen_pos = false, seen_neg = false;
        constexpr int checks = 16;
        for (int j = 1; j <= checks; ++j) {
            const double f =
                pdot(rc, a + (b - a) * (static_cast<double>(j) / (checks + 1)),
                     interval);
            seen_pos |= f > 0.0;
            seen_neg |= f < 0.0;
        }
        if (seen_pos && seen_neg) d.monotone_certified = false;
    }
    return d;
}

namespace {

void require_segments(const ExtremaDecomposition& d) {
    if (d.breakpoints.size() < 2)
        throw ValidationError("variation needs at least two breakpoints");
}

}  // namespace

double positive_variation(const ExtremaDecomposition& d) {
    require_segments(d);
    double sum = 0.0;
    for (std::size_t i = 1; i < d.breakpoints.size(); ++i)
        sum += std::max(d.breakpoints[i].p - d.breakpoints[i - 1].p, 0.0);
    return sum;
}

double sqrt_positive_variation(const ExtremaDecomposition& d) {
    require_segments(d);
    double sum = 0.0;
    for (std::size_t i = 1; i < d.breakpoints.size(); ++i)
        sum += std::max(
            std::sqrt(d.breakpoints[i].p) - std::sqrt(d.breakpoints[i - 1].p), 0.0);
    return sum;
}

double total_variation(const ExtremaDecomposition& d) {
    require_segments(d);
    double sum = 0.0;
    for (std::size_t i = 1; i < d.breakpoints.size(); ++i)
        sum += std::abs(d.breakpoints[i].p - d.breakpoints[i - 1].p);
    return sum;
}

}  // namespace ddqsl::trajectory
