#pragma once

#include "ddqsl/params.hpp"

namespace ddqsl::speedlimit {

// Schatten order used for the generator norm in the speed-limit bound.  For
// this channel the generator is rank two with eigenvalues +-dP/dt, so the
// three norms are exact multiples of each other: trace = 2|dP/dt|,
// Hilbert-Schmidt = sqrt(2)|dP/dt|, operator = |dP/dt|.  The operator norm
// gives the tightest (largest) bound and is the default reported by qslt().
enum class NormOrder { trace, hilbert_schmidt, operator_norm };

struct QsltResult {
    double tau = 0.0;        // driving time of the schedule
    double tau_qsl = 0.0;    // speed-limit time for reaching the final state
    double ratio = 0.0;      // tau_qsl / tau, the tightness of the evolution
    double p_tau = 0.0;      // excited-state population at tau
    double backflow = 0.0;   // positive variation of P: population regained
    double total_var = 0.0;  // total variation of P over [0, tau]
};

// Speed-limit time under the operator norm:
//   tau_qsl = tau * (1 - P_tau) / ((1 - P_tau) + 2 * backflow),
// using that the total variation of P splits into the net decay (1 - P_tau)
// plus twice the backflow.  Throws DegenerateTargetError when the final state
// is indistinguishable from the initial one (1 - P_tau < 1e-14), where the
// bound's target distance vanishes.
QsltResult qslt(const SpectralParams& params, const PulseSchedule& schedule);

// Speed-limit time under the chosen norm.  Computed by scaling the operator
// norm result, so the ratios 1 : 1/sqrt(2) : 1/2 hold exactly.
double qslt_general(const SpectralParams& params, const PulseSchedule& schedule,
                    NormOrder norm);

// Same quantity evaluated as tau / (1 + 2 * backflow / (1 - P_tau)): an
// algebraically identical expression with a different rounding path, kept as
// a cross-check of the direct form.
double qslt_via_backflow(const SpectralParams& params,
                         const PulseSchedule& schedule);

}  // namespace ddqsl::speedlimit
