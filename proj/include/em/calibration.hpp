#pragma once

#include <array>
#include <utility>
#include <vector>

#include "em/config.hpp"
#include "em/dataset.hpp"
#include "em/pipeline.hpp"

namespace em {

/// What the rate fit aims at: the (attack, uncertain, withdraw) conditional
/// distribution reached from the uncertain state after deliberating for t.
/// Targeting the conditional keeps the categorization prior out of the fit.
struct FitTarget {
    std::array<double, 3> target_conditional{};
    double t = 2.0;

    void validate() const;
};

struct FitResult {
    double k_r = 0.0;
    double k_w = 0.0;
    double objective_value = 0.0;  // sum of squared residuals at (k_r, k_w)
    int iterations = 0;
    bool converged = false;
};

/// The forward map the fit inverts: e^{t K_good} applied to the uncertain
/// state (0, 1, 0).
std::array<double, 3> good_block_conditional(double k_r, double k_w, double t,
                                             GeneratorMode mode);

/// Least-squares recovery of (k_r, k_w) in [0, 20]^2 by Nelder-Mead with a
/// deterministic multi-start grid. converged means the objective fell to
/// 1e-6 or the winning simplex collapsed below 1e-10 in diameter; an
/// unreachable target still reports its best point, and callers that need
/// a faithful fit treat objectives above 1e-4 as failure.
FitResult fit_rates(const FitTarget& target, GeneratorMode mode = GeneratorMode::ColumnGenerator);

/// One rate pair against several targets at once (the shared-fit scope):
/// minimizes the summed squared residual across all of them.
FitResult fit_rates_shared(const std::vector<FitTarget>& targets, GeneratorMode mode);

/// Back out the conditional (attack, uncertain, withdraw) from a reported
/// row: the attack share given good pins attack + uncertain/2, and the
/// uncertain mass is solved so the model's decision-alone attack rate under
/// the selected entropy hits p_a_target. When no uncertain mass reaches the
/// target (the reported effect is at or below zero, say), the closest
/// attainable point is returned.
FitTarget conditional_target(double p_good, double attack_given_good, double p_a_target,
                             EntropyMethod method, double t = 2.0);

/// Build the fit target for a record per config (published model row or
/// observed columns), recover rates, and return parameters ready for
/// run_model. Throws NoConvergence when the best fit is still poor and
/// InvariantViolation when the record lacks the requested target data.
std::pair<EmParams, FitResult> fit_experiment(const ExperimentRecord& record,
                                              const RunConfig& config);

/// The target-building half of fit_experiment, exposed for the shared fit.
FitTarget experiment_target(const ExperimentRecord& record, const RunConfig& config);

}  // namespace em
