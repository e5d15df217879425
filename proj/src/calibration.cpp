#include "em/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "em/errors.hpp"
#include "em/matrix.hpp"

namespace em {

void FitTarget::validate() const {
    double sum = 0.0;
    for (double v : target_conditional) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw OutOfRange("fit target: conditional components must be nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvariantViolation("fit target: conditional must sum to 1");
    }
    if (!(t > 0.0)) throw OutOfRange("fit target: t must be positive");
}

std::array<double, 3> good_block_conditional(double k_r, double k_w, double t,
                                             GeneratorMode mode) {
    // Evaluate the raw kernel rather than build_K_good so the fit can probe
    // the (0, 0) boundary, where the chain just stays put.
    const double mid = (k_r + k_w) / 2.0;
    Matrix k(3);
    k(0, 1) = k_r;
    k(0, 2) = k_r;
    k(1, 0) = mid;
    k(1, 2) = mid;
    k(2, 0) = k_w;
    k(2, 1) = k_w;
    k(1, 1) = -(k_r + k_w);
    if (mode == GeneratorMode::AsPrinted) {
        k(0, 0) = -(3.0 * k_r + k_w) / 2.0;
        k(2, 2) = -(k_r + 3.0 * k_w) / 2.0;
    } else {
        k(0, 0) = -(k_r + 3.0 * k_w) / 2.0;
        k(2, 2) = -(3.0 * k_r + k_w) / 2.0;
    }
    const Matrix trans = matrix_exp(k * t);
    std::array<double, 3> out = {trans(0, 1), trans(1, 1), trans(2, 1)};
    if (mode == GeneratorMode::AsPrinted) {
        const double sum = out[0] + out[1] + out[2];
        for (double& v : out) v /= sum;
    }
    return out;
}

namespace {

constexpr double kRateLo = 0.0;
constexpr double kRateHi = 20.0;

struct Point {
    double k_r;
    double k_w;
    double value;
    bool collapsed = false;  // the simplex shrank below the size threshold
};

double clamp_rate(double v) { return std::clamp(v, kRateLo, kRateHi); }

/// 2-D Nelder-Mead with box projection. Deterministic for a given start.
Point nelder_mead(const std::function<double(double, double)>& objective, double k_r0,
                  double k_w0, int max_iter, int& iterations) {
    auto eval = [&](double a, double b) { return objective(clamp_rate(a), clamp_rate(b)); };
    const double step = 0.25;
    std::array<Point, 3> simplex = {{
        {k_r0, k_w0, eval(k_r0, k_w0)},
        {k_r0 + step * std::max(1.0, k_r0), k_w0, 0.0},
        {k_r0, k_w0 + step * std::max(1.0, k_w0), 0.0},
    }};
    simplex[1].value = eval(simplex[1].k_r, simplex[1].k_w);
    simplex[2].value = eval(simplex[2].k_r, simplex[2].k_w);

    auto order = [&] {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Point& a, const Point& b) { return a.value < b.value; });
    };
    auto diameter = [&] {
        double d = 0.0;
        for (int i = 1; i < 3; ++i) {
            d = std::max(d, std::abs(simplex[i].k_r - simplex[0].k_r) +
                                std::abs(simplex[i].k_w - simplex[0].k_w));
        }
        return d;
    };

    order();
    int it = 0;
    bool collapsed = false;
    for (; it < max_iter; ++it) {
        if (simplex[0].value <= 1e-26 || diameter() <= 1e-10) {
            collapsed = true;
            break;
        }
        const double cr = (simplex[0].k_r + simplex[1].k_r) / 2.0;
        const double cw = (simplex[0].k_w + simplex[1].k_w) / 2.0;
        const Point& worst = simplex[2];

        auto make = [&](double coeff) {
            Point p{cr + coeff * (cr - worst.k_r), cw + coeff * (cw - worst.k_w), 0.0};
            p.k_r = clamp_rate(p.k_r);
            p.k_w = clamp_rate(p.k_w);
            p.value = eval(p.k_r, p.k_w);
            return p;
        };

        Point reflected = make(1.0);
        if (reflected.value < simplex[0].value) {
            Point expanded = make(2.0);
            simplex[2] = (expanded.value < reflected.value) ? expanded : reflected;
        } else if (reflected.value < simplex[1].value) {
            simplex[2] = reflected;
        } else {
            Point contracted = make(reflected.value < worst.value ? 0.5 : -0.5);
            if (contracted.value < std::min(reflected.value, worst.value)) {
                simplex[2] = contracted;
            } else {
                for (int i = 1; i < 3; ++i) {  // shrink toward the best vertex
                    simplex[i].k_r = (simplex[i].k_r + simplex[0].k_r) / 2.0;
                    simplex[i].k_w = (simplex[i].k_w + simplex[0].k_w) / 2.0;
                    simplex[i].value = eval(simplex[i].k_r, simplex[i].k_w);
                }
            }
        }
        order();
    }
    iterations += it;
    simplex[0].collapsed = collapsed;
    return simplex[0];
}

FitResult minimize_rates(const std::function<double(double, double)>& objective) {
    // A fixed log-spaced start grid keeps the multi-start deterministic.
    static const std::array<double, 4> starts = {0.05, 0.25, 1.0, 4.0};
    FitResult best;
    best.objective_value = std::numeric_limits<double>::infinity();
    bool best_collapsed = false;
    int iterations = 0;
    for (double k_r0 : starts) {
        for (double k_w0 : starts) {
            const Point p = nelder_mead(objective, k_r0, k_w0, 600, iterations);
            const bool better =
                p.value < best.objective_value ||
                (p.value == best.objective_value &&
                 (p.k_r < best.k_r || (p.k_r == best.k_r && p.k_w < best.k_w)));
            if (better) {
                best.k_r = p.k_r;
                best.k_w = p.k_w;
                best.objective_value = p.value;
                best_collapsed = p.collapsed;
            }
        }
    }
    best.iterations = iterations;
    best.converged = best.objective_value <= 1e-6 || best_collapsed;
    return best;
}

}  // namespace

FitResult fit_rates(const FitTarget& target, GeneratorMode mode) {
    target.validate();
    auto objective = [&](double k_r, double k_w) {
        const auto fwd = good_block_conditional(k_r, k_w, target.t, mode);
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double r = fwd[i] - target.target_conditional[i];
            sum += r * r;
        }
        return sum;
    };
    return minimize_rates(objective);
}

FitResult fit_rates_shared(const std::vector<FitTarget>& targets, GeneratorMode mode) {
    if (targets.empty()) throw InvariantViolation("fit_rates_shared: no targets");
    for (const auto& t : targets) t.validate();
    auto objective = [&](double k_r, double k_w) {
        double sum = 0.0;
        for (const auto& target : targets) {
            const auto fwd = good_block_conditional(k_r, k_w, target.t, mode);
            for (int i = 0; i < 3; ++i) {
                const double r = fwd[i] - target.target_conditional[i];
                sum += r * r;
            }
        }
        return sum;
    };
    return minimize_rates(objective);
}

FitTarget conditional_target(double p_good, double attack_given_good, double p_a_target,
                             EntropyMethod method, double t) {
    if (!(p_good >= 0.0 && p_good <= 1.0)) throw OutOfRange("conditional_target: bad p_good");
    if (!(attack_given_good > 1e-6 && attack_given_good < 1.0 - 1e-6)) {
        throw OutOfRange("conditional_target: attack share must be inside (0,1)");
    }
    const double x = attack_given_good;
    const double p_t = p_good * x + (1.0 - p_good) * (1.0 - x);
    const double dis_target = p_a_target - p_t;

    // With attack + uncertain/2 pinned at x, the uncertain mass u alone
    // drives the predicted effect gamma(u) * u. Scan for a sign change and
    // bisect; with no bracket, keep the u that comes closest.
    auto boes = [&](double u) {
        const double a = x - u / 2.0;
        const double w = 1.0 - x - u / 2.0;
        const EmFrame& frame = EmFrame::instance();
        const double b = 1.0 - p_good;
        std::vector<MassFunction::Entry> cd_entries;
        const std::array<double, 6> cd_masses = {p_good * a, p_good * u, p_good * w,
                                                 b * w,      b * u,      b * a};
        for (std::size_t i = 0; i < 6; ++i) {
            cd_entries.emplace_back(frame.cd_states()[i], cd_masses[i]);
        }
        MassFunction m_cd(frame.cd_frame(), cd_entries);
        MassFunction m_d = measure_bpa_d(m_cd);
        return std::pair(std::move(m_cd), std::move(m_d));
    };
    auto effect_gap = [&](double u) {
        const auto [m_cd, m_d] = boes(u);
        return eud_gamma(m_cd, m_d, method) * u - dis_target;
    };

    const double u_max = 2.0 * std::min(x, 1.0 - x) - 1e-9;
    const int scan_points = 256;
    double u_best = 1e-9;
    double gap_best = std::abs(effect_gap(u_best));
    double bracket_lo = -1.0, bracket_hi = -1.0;
    double prev_u = u_best;
    double prev_gap = effect_gap(prev_u);
    for (int i = 1; i <= scan_points; ++i) {
        const double u = 1e-9 + (u_max - 1e-9) * i / scan_points;
        const double gap = effect_gap(u);
        if (std::abs(gap) < gap_best) {
            gap_best = std::abs(gap);
            u_best = u;
        }
        if (bracket_lo < 0.0 && ((prev_gap <= 0.0) != (gap <= 0.0))) {
            bracket_lo = prev_u;
            bracket_hi = u;
        }
        prev_u = u;
        prev_gap = gap;
    }
    if (bracket_lo >= 0.0) {
        double lo = bracket_lo, hi = bracket_hi;
        double f_lo = effect_gap(lo);
        for (int i = 0; i < 100; ++i) {
            const double mid = (lo + hi) / 2.0;
            const double f_mid = effect_gap(mid);
            if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        u_best = (lo + hi) / 2.0;
    }

    FitTarget target;
    target.t = t;
    target.target_conditional = {x - u_best / 2.0, u_best, 1.0 - x - u_best / 2.0};
    return target;
}

FitTarget experiment_target(const ExperimentRecord& record, const RunConfig& config) {
    double x = 0.0;
    double p_a_target = 0.0;
    if (config.fit_target == FitTargetKind::EmPublished) {
        if (!record.em_row) {
            throw InvariantViolation("record '" + record.key() +
                                     "' has no published model row to fit against");
        }
        const EmRow& row = *record.em_row;
        // Under one rate pair the two conditionals mirror each other, so a
        // consistent row has p_a_given_g + p_a_given_b = 1. One source row
        // violates that; its own p_t column is trustworthy there instead.
        if (std::abs(row.p_a_given_g + row.p_a_given_b - 1.0) <= 5e-3) {
            x = (row.p_a_given_g + 1.0 - row.p_a_given_b) / 2.0;
        } else if (std::abs(1.0 - 2.0 * record.p_g) > 1e-9) {
            x = (1.0 - record.p_g - row.p_t) / (1.0 - 2.0 * record.p_g);
        } else {
            x = row.p_a_given_g;
        }
        p_a_target = row.p_a;
    } else {
        // Observed conditionals never mirror exactly; project symmetrically.
        x = (record.p_a_given_g + 1.0 - record.p_a_given_b) / 2.0;
        p_a_target = record.p_a;
    }
    return conditional_target(record.p_g, x, p_a_target, config.entropy_method, config.t);
}

std::pair<EmParams, FitResult> fit_experiment(const ExperimentRecord& record,
                                              const RunConfig& config) {
    const FitTarget target = experiment_target(record, config);
    const FitResult fit = fit_rates(target, config.generator_mode);

    EmParams params;
    params.k_r = fit.k_r;
    params.k_w = fit.k_w;
    params.t = config.t;
    params.p_good = record.p_g;
    params.entropy_method = config.entropy_method;
    params.generator_mode = config.generator_mode;

    if (!fit.converged || fit.objective_value > 1e-4) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "fit for '%s' did not converge: best k_r=%.6g k_w=%.6g objective=%.3g",
                      record.key().c_str(), fit.k_r, fit.k_w, fit.objective_value);
        throw NoConvergence(buf);
    }
    return {params, fit};
}

}  // namespace em
