// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances are fixed here and nowhere else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "em/calibration.hpp"
#include "em/dataset.hpp"
#include "em/harness.hpp"
#include "em/pipeline.hpp"
#include "support/oracles.hpp"

using namespace em;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

MassFunction published_cd_mass() {
    const EmFrame& f = EmFrame::instance();
    const std::array<double, 6> masses = {0.0264, 0.0811, 0.0625, 0.3050, 0.3960, 0.1290};
    std::vector<MassFunction::Entry> entries;
    for (std::size_t i = 0; i < 6; ++i) entries.emplace_back(f.cd_states()[i], masses[i]);
    return MassFunction(f.cd_frame(), entries);
}

MassFunction published_d_mass() {
    const EmFrame& f = EmFrame::instance();
    return MassFunction(f.cd_frame(), {{f.d_states()[0], 0.3314},
                                       {f.d_states()[1], 0.4771},
                                       {f.d_states()[2], 0.1915}});
}

std::vector<ExperimentRecord> narrow_records(bool with_average) {
    std::vector<ExperimentRecord> out;
    for (const auto& r : bundled_experiments()) {
        if (r.face_type != FaceType::Narrow) continue;
        if (!with_average && r.name == "average") continue;
        out.push_back(r);
    }
    return out;
}

void criterion_1_golden_bpas() {
    const EmFrame& f = EmFrame::instance();
    const FitTarget target = conditional_target(0.17, 0.394, 0.6589, EntropyMethod::Deng);
    const FitResult fit = fit_rates(target);
    EmParams params;
    params.k_r = fit.k_r;
    params.k_w = fit.k_w;
    params.p_good = 0.17;
    const MassFunction m_cd = measure_bpa_cd(params);
    const MassFunction m_d = measure_bpa_d(m_cd);

    const std::array<double, 6> want_cd = {0.0264, 0.0811, 0.0625, 0.3050, 0.3960, 0.1290};
    const std::array<double, 3> want_d = {0.3314, 0.4771, 0.1915};
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        worst = std::max(worst, std::abs(m_cd.mass(f.cd_states()[i]) - want_cd[i]));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(m_d.mass(f.d_states()[i]) - want_d[i]));
    }
    report(1, "golden bodies of evidence from fitted rates", worst <= 5e-3,
           "max component error " + fmt(worst) + " <= 5e-3");
}

void criterion_2_golden_entropies() {
    const double e_cd = deng_entropy(published_cd_mass());
    const double e_d = deng_entropy(published_d_mass());
    const double err = std::max(std::abs(e_cd - 2.8715), std::abs(e_d - 4.1868));
    report(2, "golden Deng entropies 2.8715 / 4.1868", err <= 1e-3,
           "E_CD=" + fmt(e_cd) + " E_D=" + fmt(e_d) + " max error " + fmt(err) + " <= 1e-3");
}

void criterion_3_golden_prediction() {
    const MassFunction m_cd = published_cd_mass();
    const MassFunction m_d = published_d_mass();
    const double gamma = eud_gamma(m_cd, m_d, EntropyMethod::Deng);
    const ModelResult r = predict(m_cd, m_d, gamma);
    const bool pass = std::abs(gamma - 0.1864) <= 1e-3 &&
                      std::abs(r.p_d_attack - 0.6589) <= 1e-3 &&
                      std::abs(r.p_cd_attack - 0.57) <= 5e-3 && std::abs(r.dis - 0.0889) <= 1e-3;
    report(3, "golden prediction gamma/P_D/P_CD/Dis", pass,
           "gamma=" + fmt(gamma) + " P_D=" + fmt(r.p_d_attack) + " P_CD=" + fmt(r.p_cd_attack) +
               " Dis=" + fmt(r.dis));
}

void criterion_4_table3() {
    RunConfig config;
    const auto rows = run_table3(narrow_records(true), config);
    struct Want {
        const char* name;
        double dis;
        double tol;
    };
    const std::vector<Want> wants = {
        {"townsend_2000", 0.0889, 5e-3},      {"busemeyer_2009", 0.0816, 0.01},
        {"wang_busemeyer_exp1", 0.0759, 5e-3}, {"wang_busemeyer_exp2", 0.0678, 5e-3},
        {"wang_busemeyer_exp3", 0.0596, 5e-3}, {"average", 0.0747, 5e-3},
    };
    bool pass = true;
    std::string detail;
    for (const auto& want : wants) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const Table3Row& r) { return r.record.name == want.name; });
        double err = 1.0;
        if (it != rows.end() && it->result) err = std::abs(it->result->dis - want.dis);
        pass = pass && err <= want.tol;
        if (!detail.empty()) detail += " ";
        detail += std::string(want.name) + ":" + fmt(err);
    }
    report(4, "published disjunction effects reproduced", pass, "abs errors " + detail);
}

void criterion_5_classical_null() {
    std::mt19937 rng(909090);
    std::uniform_real_distribution<double> rate(0.0, 4.0);
    std::uniform_real_distribution<double> time(0.0, 6.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_residual = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Matrix m(2);
        m(1, 0) = rate(rng);
        m(0, 0) = -m(1, 0);
        m(0, 1) = rate(rng);
        m(1, 1) = -m(0, 1);
        IntensityMatrix k(std::move(m), GeneratorMode::ColumnGenerator);
        const double p = unit(rng);
        const auto demo = total_probability_demo(k, time(rng), {p, 1.0 - p});
        worst_residual = std::max(worst_residual, std::abs(demo.law_residual));
    }

    double worst_dis = 0.0;
    RunConfig fitted;
    fitted.gamma_zero = true;
    for (const auto& row : run_table3(narrow_records(true), fitted)) {
        if (row.result) worst_dis = std::max(worst_dis, std::abs(row.result->dis));
    }
    RunConfig fixed;
    fixed.gamma_zero = true;
    fixed.rate_overrides = {{0.7, 0.3}};
    for (const auto& row : run_table3(bundled_experiments(), fixed)) {
        if (row.result) worst_dis = std::max(worst_dis, std::abs(row.result->dis));
    }

    const bool pass = worst_residual <= 1e-12 && worst_dis <= 1e-12;
    report(5, "classical chain shows no disjunction effect", pass,
           "max law residual " + fmt(worst_residual) + " <= 1e-12, max baseline |Dis| " +
               fmt(worst_dis) + " <= 1e-12");
}

void criterion_6_dynamics_oracle() {
    std::mt19937 rng(606060);
    std::uniform_real_distribution<double> time(0.0, 5.0);
    double worst_ode = 0.0;
    double worst_semigroup = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t dim = (i < 100) ? 3 : 6;
        const Matrix k = oracle::random_generator_matrix(rng, dim);
        const IntensityMatrix gen(k, GeneratorMode::ColumnGenerator);
        const double t = time(rng), u = time(rng);

        const Matrix via_exp = matrix_exponential(gen, t).entries;
        worst_ode = std::max(worst_ode, oracle::max_abs_diff(via_exp, oracle::rk4_transition(k, t)));

        const Matrix lhs = matrix_exponential(gen, t + u).entries;
        const Matrix rhs = via_exp * matrix_exponential(gen, u).entries;
        worst_semigroup = std::max(worst_semigroup, oracle::max_abs_diff(lhs, rhs));
    }
    const bool pass = worst_ode <= 1e-6 && worst_semigroup <= 1e-9;
    report(6, "matrix exponential against the forward-equation oracle", pass,
           "max ODE gap " + fmt(worst_ode) + " <= 1e-6, max semigroup gap " +
               fmt(worst_semigroup) + " <= 1e-9");
}

void criterion_7_property_suites() {
    std::mt19937 rng(707070);
    int checked = 0;
    double worst_sum = 0.0, worst_env = 0.0, worst_shannon = 0.0, worst_pig = 0.0;
    double worst_marginal = 0.0, worst_total_prob = 0.0;

    for (int i = 0; i < 500; ++i) {
        // mass normalization, Bel <= Pl, pignistic normalization
        oracle::RandomMass rm = oracle::random_mass(rng);
        double total = 0.0;
        for (const auto& [bits, mass] : rm.mass.assignments()) total += mass;
        worst_sum = std::max(worst_sum, std::abs(total - 1.0));

        oracle::LabelSet members;
        FocalSet query = oracle::random_subset(rng, rm.frame, &members);
        worst_env = std::max(worst_env, belief(rm.mass, query) - plausibility(rm.mass, query));

        double pig_total = 0.0;
        for (double p : pignistic(rm.mass).probs) pig_total += p;
        worst_pig = std::max(worst_pig, std::abs(pig_total - 1.0));

        // Shannon degeneration on Bayesian evidence
        std::uniform_int_distribution<int> size(2, 6);
        const int n = size(rng);
        std::vector<std::string> labels;
        for (int b = 0; b < n; ++b) labels.emplace_back(1, char('a' + b));
        FrameOfDiscernment frame(labels);
        std::uniform_real_distribution<double> weight(0.05, 1.0);
        std::vector<MassFunction::Entry> entries;
        double wsum = 0.0;
        std::vector<double> weights(n);
        for (double& w : weights) {
            w = weight(rng);
            wsum += w;
        }
        for (int b = 0; b < n; ++b) {
            entries.emplace_back(FocalSet::from_bits(1ull << b), weights[b] / wsum);
        }
        MassFunction bayes(frame, entries);
        worst_shannon = std::max(worst_shannon, std::abs(deng_entropy(bayes) -
                                                         oracle::shannon(pignistic(bayes).probs)));

        // marginalization and total-probability consistency on the chain frame
        const EmFrame& f = EmFrame::instance();
        std::array<double, 6> masses{};
        double msum = 0.0;
        for (double& m : masses) {
            m = weight(rng);
            msum += m;
        }
        std::vector<MassFunction::Entry> cd_entries;
        for (std::size_t s = 0; s < 6; ++s) {
            cd_entries.emplace_back(f.cd_states()[s], masses[s] / msum);
        }
        MassFunction m_cd(f.cd_frame(), cd_entries);
        MassFunction m_d = measure_bpa_d(m_cd);
        worst_marginal = std::max(
            worst_marginal,
            std::abs(m_d.mass(f.d_states()[0]) -
                     (m_cd.mass(f.cd_states()[0]) + m_cd.mass(f.cd_states()[3]))));
        worst_marginal = std::max(
            worst_marginal,
            std::abs(m_d.mass(f.d_states()[1]) -
                     (m_cd.mass(f.cd_states()[1]) + m_cd.mass(f.cd_states()[4]))));
        worst_marginal = std::max(
            worst_marginal,
            std::abs(m_d.mass(f.d_states()[2]) -
                     (m_cd.mass(f.cd_states()[2]) + m_cd.mass(f.cd_states()[5]))));

        const ModelResult r = predict(m_cd, m_d, 0.1);
        const double p_good = belief(m_cd, f.cd_states()[1]);
        worst_total_prob = std::max(worst_total_prob,
                              std::abs(r.p_cd_attack - (p_good * r.p_a_given_g +
                                                        (1.0 - p_good) * r.p_a_given_b)));
        ++checked;
    }

    const bool pass = checked >= 500 && worst_sum <= 1e-12 && worst_env <= 1e-12 &&
                      worst_shannon <= 1e-12 && worst_pig <= 1e-12 && worst_marginal <= 1e-12 &&
                      worst_total_prob <= 1e-9;
    report(7, "property suites over 500 generated cases", pass,
           "sum " + fmt(worst_sum) + ", Bel-Pl " + fmt(worst_env) + ", Shannon " +
               fmt(worst_shannon) + ", pignistic " + fmt(worst_pig) + ", marginal " +
               fmt(worst_marginal) + ", total-prob " + fmt(worst_total_prob));
}

void criterion_8_bakeoff() {
    RunConfig config;
    std::vector<EntropyMethod> methods(kComparedMethods.begin(), kComparedMethods.end());
    const auto rows = entropy_bakeoff(narrow_records(false), methods, config);
    const auto means = bakeoff_method_means(rows);
    double deng_mean = 0.0, best_other = 1e9;
    std::string other;
    for (const auto& [method, mean] : means) {
        if (method == EntropyMethod::Deng) {
            deng_mean = mean;
        } else if (mean < best_other) {
            best_other = mean;
            other = to_string(method);
        }
    }
    report(8, "Deng entropy attains the smallest mean SE", deng_mean < best_other,
           "deng " + fmt(deng_mean) + " vs best rival " + other + " " + fmt(best_other));
}

void criterion_9_calibration_roundtrip() {
    std::mt19937 rng(505050);
    std::uniform_real_distribution<double> rate(0.05, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double k_r = rate(rng), k_w = rate(rng);
        FitTarget target;
        target.target_conditional =
            good_block_conditional(k_r, k_w, 2.0, GeneratorMode::ColumnGenerator);
        target.t = 2.0;
        const FitResult fit = fit_rates(target);
        const auto fwd =
            good_block_conditional(fit.k_r, fit.k_w, 2.0, GeneratorMode::ColumnGenerator);
        for (int c = 0; c < 3; ++c) {
            worst = std::max(worst, std::abs(fwd[c] - target.target_conditional[c]));
        }
    }
    report(9, "calibration round trip over 50 random rate pairs", worst <= 1e-5,
           "max forward error " + fmt(worst) + " <= 1e-5");
}

}  // namespace

int main() {
    criterion_1_golden_bpas();
    criterion_2_golden_entropies();
    criterion_3_golden_prediction();
    criterion_4_table3();
    criterion_5_classical_null();
    criterion_6_dynamics_oracle();
    criterion_7_property_suites();
    criterion_8_bakeoff();
    criterion_9_calibration_roundtrip();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
