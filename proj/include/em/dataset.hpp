#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace em {

enum class FaceType { Wide, Narrow };

const char* to_string(FaceType face);
FaceType face_type_from_string(const std::string& name);

/// Published model predictions attached to a record: the conditional attack
/// probabilities, their total-probability composition, the decision-alone
/// attack probability, and the disjunction effect.
struct EmRow {
    double p_a_given_g = 0.0;
    double p_a_given_b = 0.0;
    double p_t = 0.0;
    double p_a = 0.0;
    double dis = 0.0;
};

/// One categorization-decision experiment: observed probabilities at the
/// two-decimal precision they were reported with, plus the published model
/// row where one exists.
struct ExperimentRecord {
    std::string name;
    FaceType face_type = FaceType::Narrow;
    double p_g = 0.0;          // P(categorized good)
    double p_a_given_g = 0.0;  // P(attack | good)
    double p_b = 0.0;          // P(categorized bad)
    double p_a_given_b = 0.0;  // P(attack | bad)
    double p_t = 0.0;          // total-probability attack rate, C-D condition
    double p_a = 0.0;          // attack rate, D-alone condition
    std::optional<EmRow> em_row;

    double observed_dis() const { return p_a - p_t; }
    std::string key() const;  // "<name>.<face>"

    /// Throws InvariantViolation when the probabilities are inconsistent
    /// beyond table rounding.
    void validate() const;
};

enum class DataSource { Bundled, File };

/// The bundled tables: five replications of the experiment plus their
/// average, each with a wide-face and a narrow-face row. The narrow rows
/// and the average carry published model predictions.
const std::vector<ExperimentRecord>& bundled_experiments();

/// CSV schema: header `name,face_type,p_g,p_a_given_g,p_b,p_a_given_b,p_t,p_a`,
/// UTF-8, '.' decimal separator.
std::vector<ExperimentRecord> load_experiments_csv(std::istream& in,
                                                   const std::string& source_name);
std::vector<ExperimentRecord> load_experiments(DataSource source, const std::string& path = "");

}  // namespace em
