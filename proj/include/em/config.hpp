#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "em/entropy.hpp"
#include "em/markov.hpp"

namespace em {

enum class FitScope { PerExperiment, Shared };
enum class FitTargetKind { EmPublished, Observed };

const char* to_string(FitScope scope);
const char* to_string(FitTargetKind kind);
FitScope fit_scope_from_string(const std::string& name);
FitTargetKind fit_target_from_string(const std::string& name);

/// Everything a model run needs besides the records themselves. Fitted
/// rates read from a config file are keyed by record ("name.face"); an
/// explicit rate override wins over both the config file and fitting.
struct RunConfig {
    double t = 2.0;
    GeneratorMode generator_mode = GeneratorMode::ColumnGenerator;
    EntropyMethod entropy_method = EntropyMethod::Deng;
    FitScope fit_scope = FitScope::PerExperiment;
    FitTargetKind fit_target = FitTargetKind::EmPublished;
    bool gamma_zero = false;  // classical baseline: no extra uncertainty
    std::optional<std::pair<double, double>> rate_overrides;  // (k_r, k_w)
    std::map<std::string, std::pair<double, double>> per_record_rates;
    std::string csv_path;
    std::string plot_data_path;

    void validate() const;
};

/// Minimal sectioned key-value document (a TOML-compatible subset):
/// `[section]` headers, `key = value` lines with numbers, booleans, or
/// quoted strings, and `#` comments.
class ConfigDoc {
public:
    using Value = std::variant<double, bool, std::string>;

    static ConfigDoc parse(std::istream& in, const std::string& source_name);
    static ConfigDoc parse_file(const std::string& path);

    void set(const std::string& section, const std::string& key, Value value);
    const Value* find(const std::string& section, const std::string& key) const;
    std::optional<double> find_number(const std::string& section, const std::string& key) const;
    const std::map<std::string, std::map<std::string, Value>>& sections() const {
        return sections_;
    }

    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;

private:
    std::map<std::string, std::map<std::string, Value>> sections_;
};

/// Pull run settings and per-record fitted rates out of a parsed config.
void apply_config(const ConfigDoc& doc, RunConfig& config);

}  // namespace em
