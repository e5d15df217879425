#include "em/pipeline.hpp"

#include <cmath>

#include "em/errors.hpp"

namespace em {

EmFrame::EmFrame()
    : cd_frame_({"AG", "WG", "AB", "WB"}),
      cd_states_{FocalSet::from_labels(cd_frame_, {"AG"}),
                 FocalSet::from_labels(cd_frame_, {"AG", "WG"}),
                 FocalSet::from_labels(cd_frame_, {"WG"}),
                 FocalSet::from_labels(cd_frame_, {"AB"}),
                 FocalSet::from_labels(cd_frame_, {"AB", "WB"}),
                 FocalSet::from_labels(cd_frame_, {"WB"})},
      d_states_{FocalSet::from_labels(cd_frame_, {"AG", "AB"}),
                FocalSet::from_labels(cd_frame_, {"AG", "WG", "AB", "WB"}),
                FocalSet::from_labels(cd_frame_, {"WG", "WB"})},
      cd_state_names_{"AG", "UG", "WG", "AB", "UB", "WB"},
      d_state_names_{"AU", "UU", "WU"} {}

const EmFrame& EmFrame::instance() {
    static const EmFrame frame;
    return frame;
}

StateVector initial_state(double p_good) {
    if (!(p_good >= 0.0 && p_good <= 1.0)) {
        throw OutOfRange("initial_state: p_good outside [0,1]");
    }
    const auto& names = EmFrame::instance().cd_state_names();
    return StateVector({names.begin(), names.end()},
                       {0.0, p_good, 0.0, 0.0, 1.0 - p_good, 0.0});
}

StateVector condition_on_category(const StateVector& phi, Category category) {
    if (phi.dim() != 6) throw DimensionMismatch("condition_on_category: needs the 6-state chain");
    const std::size_t offset = (category == Category::Good) ? 0 : 3;
    double block_mass = phi[offset] + phi[offset + 1] + phi[offset + 2];
    if (block_mass <= 0.0) {
        throw ZeroBlockMass("condition_on_category: selected category has zero probability");
    }
    std::vector<double> probs(6, 0.0);
    for (std::size_t i = 0; i < 3; ++i) probs[offset + i] = phi[offset + i] / block_mass;
    return StateVector(phi.labels(), std::move(probs));
}

MassFunction measure_bpa_cd(const EmParams& params) {
    if (!(params.p_good >= 0.0 && params.p_good <= 1.0)) {
        throw OutOfRange("measure_bpa_cd: p_good outside [0,1]");
    }
    const EmFrame& frame = EmFrame::instance();
    const IntensityMatrix k_good = build_K_good(params.k_r, params.k_w, params.generator_mode);
    const IntensityMatrix k_bad = build_K_bad(params.k_r, params.k_w, params.generator_mode);
    const IntensityMatrix h = assemble_block_K(k_good, k_bad);
    const StateVector phi0 = initial_state(params.p_good);

    std::vector<MassFunction::Entry> entries;
    auto measure_block = [&](Category category, double prior, std::size_t offset) {
        if (prior <= 0.0) return;
        const StateVector conditioned = condition_on_category(phi0, category);
        for (std::size_t i = 0; i < 3; ++i) {
            const double response = response_probability(conditioned, h, params.t,
                                                         MeasurementSelector::single(offset + i));
            entries.emplace_back(frame.cd_states()[offset + i], prior * response);
        }
    };
    measure_block(Category::Good, params.p_good, 0);
    measure_block(Category::Bad, 1.0 - params.p_good, 3);
    return MassFunction(frame.cd_frame(), entries);
}

MassFunction measure_bpa_d(const MassFunction& m_cd) {
    const EmFrame& frame = EmFrame::instance();
    const auto& cd = frame.cd_states();
    const auto& d = frame.d_states();
    std::vector<MassFunction::Entry> entries = {
        {d[0], m_cd.mass(cd[0]) + m_cd.mass(cd[3])},   // AU = AG + AB
        {d[1], m_cd.mass(cd[1]) + m_cd.mass(cd[4])},   // UU = UG + UB
        {d[2], m_cd.mass(cd[2]) + m_cd.mass(cd[5])},   // WU = WG + WB
    };
    return MassFunction(frame.cd_frame(), entries);
}

double eud_gamma(const MassFunction& m_cd, const MassFunction& m_d, EntropyMethod method) {
    const double e_cd = belief_entropy(m_cd, method);
    const double e_d = belief_entropy(m_d, method);
    const double denom = e_d + e_cd;
    if (denom == 0.0) throw ZeroDenominator("eud_gamma: both entropies are zero");
    return std::abs((e_d - e_cd) / denom);
}

ModelResult predict(const MassFunction& m_cd, const MassFunction& m_d, double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw OutOfRange("predict: gamma must be nonnegative");
    }
    const EmFrame& frame = EmFrame::instance();
    const auto& cd = frame.cd_states();
    const auto& d = frame.d_states();

    const double m_ag = m_cd.mass(cd[0]), m_ug = m_cd.mass(cd[1]);
    const double m_ab = m_cd.mass(cd[3]), m_ub = m_cd.mass(cd[4]);

    ModelResult result{m_cd, m_d};
    const double p_good = belief(m_cd, cd[1]);  // Bel(UG) = the good block's mass
    const double p_bad = 1.0 - p_good;
    // Conditional attack probabilities: even split of the uncertain mass
    // within each category block. An empty block reports zero.
    result.p_a_given_g = (p_good > 0.0) ? (m_ag + m_ug / 2.0) / p_good : 0.0;
    result.p_a_given_b = (p_bad > 0.0) ? (m_ab + m_ub / 2.0) / p_bad : 0.0;
    result.p_t = p_good * result.p_a_given_g + p_bad * result.p_a_given_b;
    result.p_cd_attack = m_ag + m_ug / 2.0 + m_ab + m_ub / 2.0;
    result.p_d_attack = m_d.mass(d[0]) + (0.5 + gamma) * m_d.mass(d[1]);
    result.dis = result.p_d_attack - result.p_cd_attack;
    result.gamma = gamma;
    result.overflow = result.p_d_attack > 1.0;

    // kept for reporting; gamma may have come from any measure, so the
    // entropies recorded here are informational
    result.e_cd = deng_entropy(m_cd);
    result.e_d = deng_entropy(m_d);
    return result;
}

ModelResult run_model(const EmParams& params) {
    const MassFunction m_cd = measure_bpa_cd(params);
    const MassFunction m_d = measure_bpa_d(m_cd);
    const double gamma = eud_gamma(m_cd, m_d, params.entropy_method);
    ModelResult result = predict(m_cd, m_d, gamma);
    result.e_cd = belief_entropy(m_cd, params.entropy_method);
    result.e_d = belief_entropy(m_d, params.entropy_method);
    return result;
}

}  // namespace em
