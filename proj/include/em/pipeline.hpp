#pragma once

#include <array>
#include <string>

#include "em/entropy.hpp"
#include "em/evidence.hpp"
#include "em/markov.hpp"

namespace em {

/// The extended state space of the categorization-decision task. The four
/// certain outcomes {AG, WG, AB, WB} form the frame; the chain adds an
/// uncertain action state per category (UG, UB), and the decision-alone
/// view coarsens to attack/uncertain/withdraw with the category unknown
/// (AU, UU, WU). Chain order is (AG, UG, WG, AB, UB, WB).
class EmFrame {
public:
    static const EmFrame& instance();

    const FrameOfDiscernment& cd_frame() const { return cd_frame_; }
    const std::array<FocalSet, 6>& cd_states() const { return cd_states_; }
    const std::array<FocalSet, 3>& d_states() const { return d_states_; }
    const std::array<std::string, 6>& cd_state_names() const { return cd_state_names_; }
    const std::array<std::string, 3>& d_state_names() const { return d_state_names_; }

private:
    EmFrame();

    FrameOfDiscernment cd_frame_;
    std::array<FocalSet, 6> cd_states_;
    std::array<FocalSet, 3> d_states_;
    std::array<std::string, 6> cd_state_names_;
    std::array<std::string, 3> d_state_names_;
};

enum class Category { Good, Bad };

struct EmParams {
    double k_r = 0.0;
    double k_w = 0.0;
    double t = 2.0;
    double p_good = 0.5;
    EntropyMethod entropy_method = EntropyMethod::Deng;
    GeneratorMode generator_mode = GeneratorMode::ColumnGenerator;
};

struct ModelResult {
    MassFunction m_cd;       // six-state body of evidence, categorization seen
    MassFunction m_d;        // (AU, UU, WU) body of evidence, decision alone
    double e_cd = 0.0;
    double e_d = 0.0;
    double gamma = 0.0;      // extra uncertainty degree
    double p_a_given_g = 0.0;
    double p_a_given_b = 0.0;
    double p_t = 0.0;        // total-probability composition of the conditionals
    double p_cd_attack = 0.0;
    double p_d_attack = 0.0;
    double dis = 0.0;        // p_d_attack - p_cd_attack
    bool overflow = false;   // p_d_attack exceeded 1; reported, never clamped
};

/// phi(0) = (0, p_good, 0, 0, 1-p_good, 0): before deliberation all mass
/// sits on the uncertain-action states, split by the categorization prior.
StateVector initial_state(double p_good);

/// Zero out the other category block and renormalize the selected one.
StateVector condition_on_category(const StateVector& phi, Category category);

/// Evolve each conditioned block under its payoff generator for params.t,
/// weight by the category prior, and read the six state masses off through
/// the per-state measurement selectors.
MassFunction measure_bpa_cd(const EmParams& params);

/// Coarsen to the decision-alone view: AU = AG+AB, WU = WG+WB, UU = UG+UB.
MassFunction measure_bpa_d(const MassFunction& m_cd);

/// gamma = |(E_D - E_CD) / (E_D + E_CD)| under the selected measure.
double eud_gamma(const MassFunction& m_cd, const MassFunction& m_d, EntropyMethod method);

/// Attack probabilities for the two conditions and the disjunction effect.
/// The decision-alone side tips (1/2 + gamma) of the uncertain mass toward
/// attacking; the categorized side splits uncertain mass evenly.
ModelResult predict(const MassFunction& m_cd, const MassFunction& m_d, double gamma);

/// The whole pipeline: initial state, payoff evolution per category,
/// measurement into both bodies of evidence, extra uncertainty degree,
/// prediction.
ModelResult run_model(const EmParams& params);

}  // namespace em
