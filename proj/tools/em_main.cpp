#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "em/boe_io.hpp"
#include "em/calibration.hpp"
#include "em/config.hpp"
#include "em/dataset.hpp"
#include "em/errors.hpp"
#include "em/harness.hpp"
#include "em/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoConvergence = 2;

bool use_styling() {
    return ::isatty(::fileno(stdout)) && std::getenv("NO_COLOR") == nullptr;
}

std::string format4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw em::Error("cannot write '" + path + "'");
    out << content;
}

struct DataOptions {
    bool bundled = false;
    std::string experiments_path;
    std::string face = "narrow";
};

struct FitOptions {
    std::string target;
    std::string scope = "per-experiment";
    std::vector<double> rates;  // --rates k_r k_w skips fitting
    std::string config_path;
};

struct OutputOptions {
    std::string csv_path;
    std::string plot_data_path;
};

void add_data_options(CLI::App* cmd, DataOptions& opts) {
    auto* bundled = cmd->add_flag("--bundled", opts.bundled, "use the bundled experiment tables");
    auto* file = cmd->add_option("--experiments", opts.experiments_path,
                                 "CSV file of experiment records");
    bundled->excludes(file);
    cmd->add_option("--face", opts.face, "face rows to include: narrow, wide, or all")
        ->check(CLI::IsMember({"narrow", "wide", "all"}))
        ->capture_default_str();
}

std::vector<em::ExperimentRecord> select_records(const DataOptions& opts) {
    if (!opts.bundled && opts.experiments_path.empty()) {
        throw em::ParseError("select --bundled or --experiments <file>");
    }
    auto records = opts.bundled ? em::load_experiments(em::DataSource::Bundled)
                                : em::load_experiments(em::DataSource::File,
                                                       opts.experiments_path);
    if (opts.face == "all") return records;
    const em::FaceType face = em::face_type_from_string(opts.face);
    std::vector<em::ExperimentRecord> out;
    for (auto& rec : records) {
        if (rec.face_type == face) out.push_back(std::move(rec));
    }
    if (out.empty()) throw em::InvariantViolation("no records match --face " + opts.face);
    return out;
}

// Settings precedence: defaults, then the config file, then any flag the
// user actually passed.
em::RunConfig build_config(const CLI::App* cmd, const FitOptions& fit, double t,
                           const std::string& mode, const std::string& entropy, bool gamma_zero,
                           const OutputOptions& output) {
    em::RunConfig config;
    if (!fit.config_path.empty()) {
        em::apply_config(em::ConfigDoc::parse_file(fit.config_path), config);
    }
    auto passed = [&](const std::string& name) {
        return cmd->get_option_no_throw(name) != nullptr && cmd->count(name) > 0;
    };
    if (passed("--t")) config.t = t;
    if (passed("--mode")) config.generator_mode = em::generator_mode_from_string(mode);
    if (passed("--entropy")) config.entropy_method = em::entropy_method_from_string(entropy);
    if (passed("--fit-scope")) config.fit_scope = em::fit_scope_from_string(fit.scope);
    if (!fit.target.empty()) config.fit_target = em::fit_target_from_string(fit.target);
    config.gamma_zero = gamma_zero;
    if (passed("--rates")) {
        if (fit.rates.size() != 2) throw em::ParseError("--rates needs exactly two values");
        config.rate_overrides = {fit.rates[0], fit.rates[1]};
    }
    config.csv_path = output.csv_path;
    config.plot_data_path = output.plot_data_path;
    config.validate();
    return config;
}

int cmd_run(const CLI::App* cmd, const DataOptions& data, const FitOptions& fit, double t,
            const std::string& mode, const std::string& entropy, bool gamma_zero,
            const OutputOptions& output) {
    const em::RunConfig config = build_config(cmd, fit, t, mode, entropy, gamma_zero, output);
    const auto records = select_records(data);
    const auto rows = em::run_table3(records, config);
    const em::Report report = em::summary_report(rows, use_styling());
    std::cout << report.text;
    if (!config.csv_path.empty()) write_text_file(config.csv_path, report.csv);

    for (const auto& row : rows) {
        if (!row.error.empty()) {
            std::cerr << "warning: " << row.record.key() << ": " << row.error << "\n";
        }
    }
    const bool any_failed = std::any_of(rows.begin(), rows.end(),
                                        [](const auto& r) { return !r.error.empty(); });
    return any_failed ? kExitNoConvergence : kExitOk;
}

int cmd_fit(const CLI::App* cmd, const DataOptions& data, const FitOptions& fit, double t,
            const std::string& mode, const std::string& entropy, const std::string& out_path) {
    if (fit.target.empty()) throw em::ParseError("fit needs --target em-published|observed");
    const em::RunConfig config = build_config(cmd, fit, t, mode, entropy, false, {});
    const auto records = select_records(data);

    em::ConfigDoc doc;
    doc.set("run", "t", config.t);
    doc.set("run", "generator_mode", std::string(em::to_string(config.generator_mode)));
    doc.set("run", "entropy", std::string(em::to_string(config.entropy_method)));
    doc.set("run", "fit_scope", std::string(em::to_string(config.fit_scope)));
    doc.set("run", "fit_target", std::string(em::to_string(config.fit_target)));

    bool all_converged = true;
    std::cout << (use_styling() ? "\033[1m" : "") << "record                          k_r       "
              << "k_w       objective     converged" << (use_styling() ? "\033[0m" : "") << "\n";

    auto report_fit = [&](const std::string& key, const em::FitResult& result) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-30s  %-8.4f  %-8.4f  %-12.3e  %s\n", key.c_str(),
                      result.k_r, result.k_w, result.objective_value,
                      result.converged ? "yes" : "NO");
        std::cout << buf;
        const std::string section = "rates." + key;
        doc.set(section, "k_r", result.k_r);
        doc.set(section, "k_w", result.k_w);
        doc.set(section, "objective", result.objective_value);
        doc.set(section, "converged", result.converged);
        all_converged = all_converged && result.converged;
    };

    if (config.fit_scope == em::FitScope::Shared) {
        std::vector<em::FitTarget> targets;
        for (const auto& record : records) {
            targets.push_back(em::experiment_target(record, config));
        }
        const em::FitResult shared = em::fit_rates_shared(targets, config.generator_mode);
        for (const auto& record : records) report_fit(record.key(), shared);
    } else {
        for (const auto& record : records) {
            const em::FitTarget target = em::experiment_target(record, config);
            report_fit(record.key(), em::fit_rates(target, config.generator_mode));
        }
    }

    if (out_path.empty()) {
        std::ostringstream text;
        doc.write(text);
        std::cout << "\n" << text.str();
    } else {
        doc.write_file(out_path);
        std::cout << "\nwrote " << out_path << "\n";
    }
    return all_converged ? kExitOk : kExitNoConvergence;
}

int cmd_entropy(const CLI::App* cmd, const DataOptions& data, const FitOptions& fit, double t,
                const std::string& mode, const std::string& methods_arg,
                const std::string& boe_path, const OutputOptions& output) {
    std::vector<em::EntropyMethod> methods;
    if (methods_arg == "all") {
        methods.assign(em::kComparedMethods.begin(), em::kComparedMethods.end());
    } else {
        std::istringstream ss(methods_arg);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (!name.empty()) methods.push_back(em::entropy_method_from_string(name));
        }
        if (methods.empty()) throw em::ParseError("--methods selected nothing");
    }

    if (!boe_path.empty()) {
        const em::MassFunction m = em::parse_boe_file(boe_path);
        std::cout << "focal elements: " << m.focal_count() << "\n";
        for (em::EntropyMethod method : methods) {
            std::cout << em::to_string(method) << ": " << format4(em::belief_entropy(m, method))
                      << "\n";
        }
        return kExitOk;
    }

    em::RunConfig config = build_config(cmd, fit, t, mode, "deng", false, output);
    // The comparison sweeps the five replication rows; the synthetic
    // average row stays out of it.
    DataOptions narrow = data;
    narrow.face = "narrow";
    if (!narrow.bundled && narrow.experiments_path.empty()) narrow.bundled = true;
    auto records = select_records(narrow);
    std::erase_if(records, [](const em::ExperimentRecord& r) { return r.name == "average"; });

    const auto rows = em::entropy_bakeoff(records, methods, config);
    const em::Report report = em::summary_report(rows, use_styling());
    std::cout << report.text;
    if (!config.csv_path.empty()) write_text_file(config.csv_path, report.csv);
    if (!config.plot_data_path.empty()) {
        write_text_file(config.plot_data_path, em::plot_data(rows));
    }
    return kExitOk;
}

int cmd_markov_demo(const std::vector<double>& rates, const std::vector<double>& times,
                    const std::vector<double>& mix) {
    if (rates.size() != 2) throw em::ParseError("--rates needs exactly two values");
    if (mix.size() != 2) throw em::ParseError("--mix needs exactly two values");
    em::Matrix k(2);
    k(0, 0) = -rates[0];
    k(1, 0) = rates[0];
    k(0, 1) = rates[1];
    k(1, 1) = -rates[1];
    const em::IntensityMatrix generator(std::move(k), em::GeneratorMode::ColumnGenerator);

    const char* bold = use_styling() ? "\033[1m" : "";
    const char* reset = use_styling() ? "\033[0m" : "";
    std::cout << bold << "t         p(+|+)    p(+|-)    p(+|U)    residual" << reset << "\n";
    for (double t : times) {
        const auto demo = em::total_probability_demo(generator, t, {mix[0], mix[1]});
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-8.4g  %-8.4f  %-8.4f  %-8.4f  %.3e\n", t,
                      demo.p_plus_given_plus, demo.p_plus_given_minus, demo.p_plus_unknown,
                      demo.law_residual);
        std::cout << buf;
    }
    std::cout << "the residual of the total-probability identity stays at zero:\n"
                 "a two-state chain cannot produce a disjunction effect.\n";
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const em::MassFunction m = em::parse_boe_file(path);
    std::cout << path << ": valid body of evidence\n";
    std::cout << "frame size: " << m.frame().size() << ", focal elements: " << m.focal_count()
              << (m.is_bayesian() ? " (Bayesian)" : "") << "\n";
    for (const auto& [bits, mass] : m.assignments()) {
        const auto members = em::FocalSet::from_bits(bits).members(m.frame());
        std::string joined;
        for (const auto& member : members) {
            if (!joined.empty()) joined += "|";
            joined += member;
        }
        std::cout << "  " << joined << " : " << format4(mass) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evidential Markov decision model: disjunction-effect prediction "
                 "for categorization-decision experiments"};
    app.require_subcommand(1);

    DataOptions data;
    FitOptions fit;
    OutputOptions output;
    double t = 2.0;
    std::string mode = "column";
    std::string entropy = "deng";
    bool gamma_zero = false;

    auto add_model_options = [&](CLI::App* cmd) {
        cmd->add_option("--t", t, "deliberation time")->capture_default_str();
        cmd->add_option("--mode", mode, "generator mode: column or as-printed")
            ->check(CLI::IsMember({"column", "as-printed"}))
            ->capture_default_str();
        cmd->add_option("--config", fit.config_path, "config file with fitted rates");
        cmd->add_option("--rates", fit.rates, "fixed k_r k_w, skipping the fit")->expected(2);
    };

    auto* run = app.add_subcommand("run", "reproduce the model predictions per experiment");
    add_data_options(run, data);
    add_model_options(run);
    run->add_option("--entropy", entropy, "uncertainty measure")->capture_default_str();
    run->add_option("--target", fit.target, "fit target: em-published or observed");
    run->add_option("--fit-scope", fit.scope, "per-experiment or shared")->capture_default_str();
    run->add_flag("--gamma-zero", gamma_zero, "classical baseline: no extra uncertainty");
    run->add_option("--csv", output.csv_path, "write full-precision CSV here");

    std::string fit_out;
    auto* fit_cmd = app.add_subcommand("fit", "recover payoff rates and write them to a config");
    add_data_options(fit_cmd, data);
    add_model_options(fit_cmd);
    fit_cmd->add_option("--entropy", entropy, "uncertainty measure")->capture_default_str();
    fit_cmd->add_option("--target", fit.target, "fit target: em-published or observed");
    fit_cmd->add_option("--fit-scope", fit.scope, "per-experiment or shared")
        ->capture_default_str();
    fit_cmd->add_option("--out", fit_out, "config file to write");

    std::string methods_arg = "all";
    std::string boe_path;
    auto* entropy_cmd =
        app.add_subcommand("entropy", "compare uncertainty measures, or score a BOE file");
    add_data_options(entropy_cmd, data);
    add_model_options(entropy_cmd);
    entropy_cmd->add_option("--methods", methods_arg, "comma-separated measures, or 'all'")
        ->capture_default_str();
    entropy_cmd->add_option("--boe", boe_path, "score this BOE file instead of the bake-off");
    entropy_cmd->add_option("--csv", output.csv_path, "write full-precision CSV here");
    entropy_cmd->add_option("--plot-data", output.plot_data_path,
                            "write (method, experiment, dis, se) tuples here");

    std::vector<double> demo_rates = {1.0, 1.0};
    std::vector<double> demo_times;
    std::vector<double> demo_mix = {0.5, 0.5};
    auto* demo = app.add_subcommand("markov-demo",
                                    "two-state total-probability demonstration table");
    demo->add_option("--rates", demo_rates, "rates: plus-to-minus minus-to-plus")->expected(2);
    demo->add_option("--t", demo_times, "durations to tabulate");
    demo->add_option("--mix", demo_mix, "initial (plus, minus) distribution")->expected(2);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a BOE file against the invariants");
    validate->add_option("file", validate_path, "BOE file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run, data, fit, t, mode, entropy, gamma_zero, output);
        }
        if (fit_cmd->parsed()) {
            return cmd_fit(fit_cmd, data, fit, t, mode, entropy, fit_out);
        }
        if (entropy_cmd->parsed()) {
            return cmd_entropy(entropy_cmd, data, fit, t, mode, methods_arg, boe_path, output);
        }
        if (demo->parsed()) {
            if (demo_times.empty()) demo_times = {0.5, 1.0, 2.0, 4.0};
            return cmd_markov_demo(demo_rates, demo_times, demo_mix);
        }
        if (validate->parsed()) {
            return cmd_validate(validate_path);
        }
    } catch (const em::NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const em::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
