#pragma once

#include <optional>
#include <string>
#include <vector>

#include "em/calibration.hpp"
#include "em/config.hpp"
#include "em/dataset.hpp"
#include "em/pipeline.hpp"

namespace em {

/// One experiment pushed through calibration and the model. A row whose
/// fit failed keeps its best-effort parameters and an error note instead
/// of a result; the batch never aborts over a single record.
struct Table3Row {
    ExperimentRecord record;
    EmParams params;
    FitResult fit;
    std::optional<ModelResult> result;
    std::string error;
};

std::vector<Table3Row> run_table3(const std::vector<ExperimentRecord>& records,
                                  const RunConfig& config);

/// One (experiment, measure) cell of the uncertainty-measure comparison.
/// se is the absolute gap between the predicted and observed effects.
/// gamma_at_or_above_half marks cells where the extra uncertainty degree
/// leaves the safe range and the decision-alone attack probability can
/// overflow; overflow marks cells where it actually did.
struct BakeoffRow {
    std::string experiment;
    EntropyMethod method = EntropyMethod::Deng;
    double gamma = 0.0;
    double predicted_dis = 0.0;
    double observed_dis = 0.0;
    double se = 0.0;
    bool gamma_at_or_above_half = false;
    bool overflow = false;
};

/// Fit each record once (Deng-driven targets), then sweep every measure
/// over the fixed bodies of evidence.
std::vector<BakeoffRow> entropy_bakeoff(const std::vector<ExperimentRecord>& records,
                                        const std::vector<EntropyMethod>& methods,
                                        const RunConfig& config);

/// Mean se per method over the experiments, in the given method order.
std::vector<std::pair<EntropyMethod, double>> bakeoff_method_means(
    const std::vector<BakeoffRow>& rows);

struct Report {
    std::string text;  // aligned table for the terminal
    std::string csv;   // full-precision machine output
};

Report summary_report(const std::vector<Table3Row>& rows, bool styled = false);
Report summary_report(const std::vector<BakeoffRow>& rows, bool styled = false);

/// (method, experiment, predicted_dis, se) tuples for external plotting.
std::string plot_data(const std::vector<BakeoffRow>& rows);

}  // namespace em
