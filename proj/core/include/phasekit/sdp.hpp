#pragma once

#include "phasekit/lmi.hpp"
#include "phasekit/types.hpp"

#include <string>

namespace phasekit {

enum class SdpStatus { feasible, infeasible_budget };

std::string to_string(SdpStatus s);

/// Result of a feasibility run. `certificate` is the scalar vector y (use
/// HermitianLmi::variable_value to reconstruct X / Y). `min_slack` is the
/// worst margin over all blocks at the certificate: positive means strictly
/// feasible. `feasible` is reported only after verify_certificate passes.
struct SdpResult {
    SdpStatus status = SdpStatus::infeasible_budget;
    Vector certificate;
    double min_slack = 0.0;
    int iterations = 0;
    double eps_abs = 0.0;
};

/// Barrier phase-1 search: minimize t subject to every block <= t I (side
/// constraints negated into the same form), until the main LMI is < -eps I
/// with eps = eps_feas relative to the LMI data norm. `budget` caps the total
/// Newton iterations; infeasible_budget is best-effort, not a proof.
SdpResult solve_feasibility(const HermitianLmi& lmi, double eps_feas = 1e-7,
                            int budget = 400);

/// Independent check: reassembles every block at y and verifies the main
/// block is < -eps/2 and every side constraint > +eps/2 by a fresh eigensolve.
bool verify_certificate(const HermitianLmi& lmi, const Vector& y, double eps_feas = 1e-7);

/// Worst signed margin over all blocks at y (positive = strictly feasible).
double certificate_slack(const HermitianLmi& lmi, const Vector& y);

}  // namespace phasekit
