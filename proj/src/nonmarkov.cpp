#include "ddqsl/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ddqsl/channel.hpp"
#include "ddqsl/decoherence.hpp"
#include "ddqsl/errors.hpp"
#include "ddqsl/multiqubit.hpp"
#include "ddqsl/trajectory.hpp"

namespace ddqsl::nonmarkov {

void StatePair::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw ValidationError("state pair angles must be finite");
    if (theta < 0.0 || theta > std::numbers::pi / 2)
        throw ValidationError("theta must lie in [0, pi/2]");
    if (phi < 0.0 || phi >= 2 * std::numbers::pi)
        throw ValidationError("phi must lie in [0, 2*pi)");
}

double pair_trace_distance(const StatePair& pair, double t,
                           const SpectralParams& params,
                           const PulseSchedule& schedule) {
    pair.validate();
    const double p = decoherence::population(t, params, schedule);
    const double c = std::cos(2.0 * pair.theta);
    const double s = std::sin(2.0 * pair.theta);
    return std::sqrt(c * c * p * p + s * s * p);
}

std::pair<double, double> blp_components(const SpectralParams& params,
                                         const PulseSchedule& schedule) {
    const auto d = trajectory::decompose(params, schedule);
    return {trajectory::positive_variation(d),
            trajectory::sqrt_positive_variation(d)};
}

NonMarkovResult non_markovianity(const SpectralParams& params,
                                 const PulseSchedule& schedule) {
    const auto [pole, equator] = blp_components(params, schedule);
    NonMarkovResult r;
    r.pole_component = pole;
    r.equator_component = equator;
    r.measure = std::max(pole, equator);
    r.optimal =
        equator > pole ? OptimalPair::equator_pair : OptimalPair::pole_pair;
    return r;
}

namespace {

// Sample times for the verification scan: every segment breakpoint plus 8
// interior points per segment, so direction changes of the distance are
// captured at least as well as those of the population.
std::vector<double> scan_times(const trajectory::ExtremaDecomposition& d) {
    constexpr int interior = 8;
    std::vector<double> times;
    times.reserve(d.breakpoints.size() * (interior + 1));
    for (std::size_t i = 0; i + 1 < d.breakpoints.size(); ++i) {
        const double a = d.breakpoints[i].t;
        const double b = d.breakpoints[i + 1].t;
        times.push_back(a);
        for (int j = 1; j <= interior; ++j)
            times.push_back(a + (b - a) * (static_cast<double>(j) / (interior + 1)));
    }
    times.push_back(d.breakpoints.back().t);
    return times;
}

// The two pair members at t = 0 as single-qubit density matrices.
std::pair<channel::QubitState, channel::QubitState> initial_states(
    const StatePair& pair) {
    const double ct = std::cos(pair.theta);
    const double st = std::sin(pair.theta);
    const std::complex<double> coherence =
        ct * st * std::exp(std::complex<double>(0.0, -pair.phi));
    return {channel::QubitState{ct * ct, coherence},
            channel::QubitState{st * st, -coherence}};
}

}  // namespace

std::vector<GridSample> blp_grid_scan(const SpectralParams& params,
                                      const PulseSchedule& schedule,
                                      int theta_steps, int phi_steps) {
    if (theta_steps < 8)
        throw ValidationError("grid scan needs at least 8 theta steps");
    if (phi_steps < 1)
        throw ValidationError("grid scan needs at least 1 phi step");

    const auto d = trajectory::decompose(params, schedule);
    const auto times = scan_times(d);
    std::vector<double> amplitudes;
    amplitudes.reserve(times.size());
    for (double t : times)
        amplitudes.push_back(decoherence::amplitude(t, params, schedule));

    std::vector<GridSample> samples;
    samples.reserve(static_cast<std::size_t>(theta_steps) * phi_steps);
    for (int i = 0; i < theta_steps; ++i) {
        const double theta =
            (std::numbers::pi / 2) * (static_cast<double>(i) / (theta_steps - 1));
        for (int j = 0; j < phi_steps; ++j) {
            const double phi =
                2 * std::numbers::pi * (static_cast<double>(j) / phi_steps);
            const StatePair pair{theta, phi};
            const auto [rho1, rho2] = initial_states(pair);
            double measure = 0.0;
            double prev = 0.0;
            for (std::size_t k = 0; k < times.size(); ++k) {
                const auto e1 = channel::apply_channel(rho1, amplitudes[k]);
                const auto e2 = channel::apply_channel(rho2, amplitudes[k]);
                const double dist =
                    multiqubit::trace_distance(e1.dense(), e2.dense());
                if (k > 0) measure += std::max(dist - prev, 0.0);
                prev = dist;
            }
            samples.push_back({pair, measure});
        }
    }
    return samples;
}

double blp_grid_search(const SpectralParams& params,
                       const PulseSchedule& schedule, int theta_steps,
                       int phi_steps) {
    const auto samples = blp_grid_scan(params, schedule, theta_steps, phi_steps);
    double best = 0.0;
    for (const auto& s : samples) best = std::max(best, s.measure);
    return best;
}

}  // namespace ddqsl::nonmarkov
