#include "em/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "em/errors.hpp"

namespace em {

namespace {

std::string format4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

FitResult resolve_rates(const ExperimentRecord& record, const RunConfig& config,
                        const std::optional<FitResult>& shared_fit, std::string& error) {
    if (config.rate_overrides) {
        FitResult fixed;
        fixed.k_r = config.rate_overrides->first;
        fixed.k_w = config.rate_overrides->second;
        fixed.converged = true;
        return fixed;
    }
    if (auto it = config.per_record_rates.find(record.key());
        it != config.per_record_rates.end()) {
        FitResult fixed;
        fixed.k_r = it->second.first;
        fixed.k_w = it->second.second;
        fixed.converged = true;
        return fixed;
    }
    if (shared_fit) return *shared_fit;
    try {
        const FitTarget target = experiment_target(record, config);
        FitResult fit = fit_rates(target, config.generator_mode);
        if (!fit.converged || fit.objective_value > 1e-4) {
            error = "fit did not converge (objective " + format_full(fit.objective_value) + ")";
        }
        return fit;
    } catch (const Error& e) {
        error = e.what();
        return FitResult{};
    }
}

}  // namespace

std::vector<Table3Row> run_table3(const std::vector<ExperimentRecord>& records,
                                  const RunConfig& config) {
    config.validate();

    std::optional<FitResult> shared_fit;
    if (config.fit_scope == FitScope::Shared && !config.rate_overrides) {
        std::vector<FitTarget> targets;
        for (const auto& record : records) targets.push_back(experiment_target(record, config));
        shared_fit = fit_rates_shared(targets, config.generator_mode);
    }

    std::vector<Table3Row> rows;
    rows.reserve(records.size());
    for (const auto& record : records) {
        Table3Row row;
        row.record = record;
        row.fit = resolve_rates(record, config, shared_fit, row.error);
        row.params = EmParams{row.fit.k_r,         row.fit.k_w,          config.t,
                              record.p_g,          config.entropy_method, config.generator_mode};
        if (row.error.empty()) {
            try {
                ModelResult result = run_model(row.params);
                if (config.gamma_zero) result = predict(result.m_cd, result.m_d, 0.0);
                row.result = std::move(result);
            } catch (const Error& e) {
                row.error = e.what();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BakeoffRow> entropy_bakeoff(const std::vector<ExperimentRecord>& records,
                                        const std::vector<EntropyMethod>& methods,
                                        const RunConfig& config) {
    if (methods.empty()) throw InvariantViolation("entropy_bakeoff: no methods selected");
    // The bodies of evidence come from one calibration per record; only the
    // uncertainty measure varies across the sweep.
    RunConfig fit_config = config;
    fit_config.entropy_method = EntropyMethod::Deng;

    std::vector<BakeoffRow> rows;
    rows.reserve(records.size() * methods.size());
    for (const auto& record : records) {
        auto [params, fit] = fit_experiment(record, fit_config);
        const MassFunction m_cd = measure_bpa_cd(params);
        const MassFunction m_d = measure_bpa_d(m_cd);
        for (EntropyMethod method : methods) {
            BakeoffRow row;
            row.experiment = record.key();
            row.method = method;
            row.gamma = eud_gamma(m_cd, m_d, method);
            const ModelResult result = predict(m_cd, m_d, row.gamma);
            row.predicted_dis = result.dis;
            row.observed_dis = record.observed_dis();
            row.se = std::abs(row.predicted_dis - row.observed_dis);
            row.gamma_at_or_above_half = row.gamma >= 0.5;
            row.overflow = result.overflow;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<std::pair<EntropyMethod, double>> bakeoff_method_means(
    const std::vector<BakeoffRow>& rows) {
    std::vector<EntropyMethod> order;
    std::map<EntropyMethod, std::pair<double, int>> acc;
    for (const auto& row : rows) {
        auto [it, fresh] = acc.try_emplace(row.method, std::pair{0.0, 0});
        if (fresh) order.push_back(row.method);
        it->second.first += row.se;
        it->second.second += 1;
    }
    std::vector<std::pair<EntropyMethod, double>> means;
    means.reserve(order.size());
    for (EntropyMethod m : order) means.emplace_back(m, acc[m].first / acc[m].second);
    return means;
}

Report summary_report(const std::vector<Table3Row>& rows, bool styled) {
    if (rows.empty()) throw InvariantViolation("summary_report: no rows");
    std::ostringstream text;
    std::ostringstream csv;

    const char* bold = styled ? "\033[1m" : "";
    const char* reset = styled ? "\033[0m" : "";
    text << bold
         << pad("experiment", 28) << pad("face", 8) << pad("P(G)", 8) << pad("P(A|G)", 9)
         << pad("P(A|B)", 9) << pad("P_T", 9) << pad("P(A)", 9) << pad("Dis", 9)
         << pad("obsDis", 9) << pad("err", 9) << pad("k_r", 9) << pad("k_w", 9) << "note"
         << reset << "\n";
    csv << "experiment,face,p_g,p_a_given_g,p_a_given_b,p_t,p_d_attack,dis,observed_dis,"
           "abs_error,gamma,e_cd,e_d,k_r,k_w,objective,converged,overflow,error\n";

    for (const auto& row : rows) {
        const auto& rec = row.record;
        text << pad(rec.name, 28) << pad(to_string(rec.face_type), 8)
             << pad(format4(rec.p_g), 8);
        csv << rec.name << "," << to_string(rec.face_type) << "," << format_full(rec.p_g) << ",";
        if (row.result) {
            const ModelResult& r = *row.result;
            const double err = std::abs(r.dis - rec.observed_dis());
            text << pad(format4(r.p_a_given_g), 9) << pad(format4(r.p_a_given_b), 9)
                 << pad(format4(r.p_t), 9) << pad(format4(r.p_d_attack), 9)
                 << pad(format4(r.dis), 9) << pad(format4(rec.observed_dis()), 9)
                 << pad(format4(err), 9) << pad(format4(row.params.k_r), 9)
                 << pad(format4(row.params.k_w), 9) << (r.overflow ? "overflow" : "") << "\n";
            csv << format_full(r.p_a_given_g) << "," << format_full(r.p_a_given_b) << ","
                << format_full(r.p_t) << "," << format_full(r.p_d_attack) << ","
                << format_full(r.dis) << "," << format_full(rec.observed_dis()) << ","
                << format_full(err) << "," << format_full(r.gamma) << ","
                << format_full(r.e_cd) << "," << format_full(r.e_d) << ","
                << format_full(row.params.k_r) << "," << format_full(row.params.k_w) << ","
                << format_full(row.fit.objective_value) << ","
                << (row.fit.converged ? "true" : "false") << ","
                << (r.overflow ? "true" : "false") << ",\n";
        } else {
            text << pad("-", 9) << pad("-", 9) << pad("-", 9) << pad("-", 9) << pad("-", 9)
                 << pad(format4(rec.observed_dis()), 9) << pad("-", 9)
                 << pad(format4(row.fit.k_r), 9) << pad(format4(row.fit.k_w), 9) << row.error
                 << "\n";
            csv << ",,,,," << format_full(rec.observed_dis()) << ",,,,,"
                << format_full(row.fit.k_r) << "," << format_full(row.fit.k_w) << ","
                << format_full(row.fit.objective_value) << ",false,," << row.error << "\n";
        }
    }
    return Report{text.str(), csv.str()};
}

Report summary_report(const std::vector<BakeoffRow>& rows, bool styled) {
    if (rows.empty()) throw InvariantViolation("summary_report: no rows");
    std::ostringstream text;
    std::ostringstream csv;

    const char* bold = styled ? "\033[1m" : "";
    const char* reset = styled ? "\033[0m" : "";
    text << bold << pad("experiment", 28) << pad("method", 26) << pad("gamma", 9)
         << pad("predDis", 9) << pad("obsDis", 9) << pad("SE", 9) << "flags" << reset << "\n";
    csv << "experiment,method,gamma,predicted_dis,observed_dis,se,gamma_ge_half,overflow\n";
    for (const auto& row : rows) {
        std::string flags;
        if (row.gamma_at_or_above_half) flags += "gamma>=0.5 ";
        if (row.overflow) flags += "overflow";
        text << pad(row.experiment, 28) << pad(to_string(row.method), 26)
             << pad(format4(row.gamma), 9) << pad(format4(row.predicted_dis), 9)
             << pad(format4(row.observed_dis), 9) << pad(format4(row.se), 9) << flags << "\n";
        csv << row.experiment << "," << to_string(row.method) << "," << format_full(row.gamma)
            << "," << format_full(row.predicted_dis) << "," << format_full(row.observed_dis)
            << "," << format_full(row.se) << "," << (row.gamma_at_or_above_half ? "true" : "false")
            << "," << (row.overflow ? "true" : "false") << "\n";
    }

    text << "\n" << bold << pad("method", 26) << "mean SE" << reset << "\n";
    for (const auto& [method, mean] : bakeoff_method_means(rows)) {
        text << pad(to_string(method), 26) << format4(mean) << "\n";
    }
    return Report{text.str(), csv.str()};
}

std::string plot_data(const std::vector<BakeoffRow>& rows) {
    std::ostringstream out;
    out << "method,experiment,predicted_dis,se\n";
    for (const auto& row : rows) {
        out << to_string(row.method) << "," << row.experiment << ","
            << format_full(row.predicted_dis) << "," << format_full(row.se) << "\n";
    }
    return out.str();
}

}  // namespace em
