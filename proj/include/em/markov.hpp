#pragma once

#include <string>
#include <utility>
#include <vector>

#include "em/matrix.hpp"

namespace em {

/// How an intensity matrix treats its diagonal. AsPrinted keeps the
/// published layout verbatim, whose columns do not sum to zero whenever
/// the two payoff rates differ, so evolution under it drifts off the
/// simplex and gets renormalized. ColumnGenerator keeps the published
/// off-diagonal rates and rebuilds each diagonal entry as the negated
/// off-diagonal column sum, which makes e^{tK} a proper stochastic matrix.
enum class GeneratorMode { AsPrinted, ColumnGenerator };

const char* to_string(GeneratorMode mode);
GeneratorMode generator_mode_from_string(const std::string& name);

/// Probability distribution over labeled chain states.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, std::vector<double> probs);
    explicit StateVector(std::vector<double> probs);

    std::size_t dim() const { return probs_.size(); }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<std::string>& labels() const { return labels_; }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    void check_invariants();

    std::vector<std::string> labels_;
    std::vector<double> probs_;
};

/// Rate matrix K of a continuous-time chain: off-diagonal entries are
/// nonnegative flows, and in ColumnGenerator mode each column sums to zero.
class IntensityMatrix {
public:
    IntensityMatrix(Matrix entries, GeneratorMode mode);

    std::size_t dim() const { return entries_.dim(); }
    const Matrix& entries() const { return entries_; }
    GeneratorMode mode() const { return mode_; }

private:
    Matrix entries_;
    GeneratorMode mode_;
};

/// T(t) = e^{tK} together with the duration it was built for.
struct TransitionMatrix {
    Matrix entries;
    double duration = 0.0;

    std::size_t dim() const { return entries.dim(); }
};

/// Diagonal 0/1 measurement: the selected state indices are read out.
struct MeasurementSelector {
    std::vector<std::size_t> selected_indices;

    static MeasurementSelector single(std::size_t index) { return {{index}}; }
    static MeasurementSelector all(std::size_t dim);
    static MeasurementSelector none() { return {{}}; }
};

TransitionMatrix matrix_exponential(const IntensityMatrix& k, double t);

/// e^{tK} * phi. In ColumnGenerator mode the result already sums to one;
/// in AsPrinted mode it is renormalized, and the raw sum before
/// renormalization can be picked up through pre_norm_sum.
StateVector evolve(const StateVector& phi, const IntensityMatrix& k, double t,
                   double* pre_norm_sum = nullptr);

/// L * M * T(t) * phi(0): the summed probability of the selected states
/// after evolving for t.
double response_probability(const StateVector& phi0, const IntensityMatrix& k, double t,
                            const MeasurementSelector& m);

/// 3x3 payoff generator for the good-guy block, states (attack, uncertain,
/// withdraw). k_r and k_w are the per-unit-time rates toward the two
/// actions in the published layout.
IntensityMatrix build_K_good(double k_r, double k_w, GeneratorMode mode);

/// The bad-guy block: build_K_good under state-order reversal, which is
/// the same matrix as swapping the two rates.
IntensityMatrix build_K_bad(double k_r, double k_w, GeneratorMode mode);

/// Block-diagonal 6x6 generator; evolution never mixes the two blocks.
IntensityMatrix assemble_block_K(const IntensityMatrix& k_good, const IntensityMatrix& k_bad);

/// The classical two-state check: the unknown-start response probability
/// decomposes exactly over the known-start ones, so the residual of the
/// total-probability identity is zero and no disjunction effect can arise.
struct TotalProbabilityDemo {
    double p_plus_given_plus = 0.0;
    double p_plus_given_minus = 0.0;
    double p_plus_unknown = 0.0;
    double law_residual = 0.0;
};

TotalProbabilityDemo total_probability_demo(const IntensityMatrix& k, double t,
                                            std::pair<double, double> mix);

}  // namespace em
