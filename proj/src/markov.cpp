#include "em/markov.hpp"

#include <cmath>
#include <numeric>

#include "em/errors.hpp"

namespace em {

const char* to_string(GeneratorMode mode) {
    return mode == GeneratorMode::AsPrinted ? "as-printed" : "column";
}

GeneratorMode generator_mode_from_string(const std::string& name) {
    if (name == "as-printed" || name == "printed") return GeneratorMode::AsPrinted;
    if (name == "column" || name == "column-generator") return GeneratorMode::ColumnGenerator;
    throw ParseError("unknown generator mode '" + name + "'");
}

void StateVector::check_invariants() {
    if (labels_.size() != probs_.size()) {
        throw DimensionMismatch("state vector: label/probability count mismatch");
    }
    if (probs_.empty()) throw InvariantViolation("state vector: empty");
    double sum = 0.0;
    for (double& p : probs_) {
        if (!std::isfinite(p)) throw NonFiniteEntry("state vector: non-finite entry");
        if (p < 0.0) {
            if (p < -1e-9) throw OutOfRange("state vector: negative probability");
            p = 0.0;  // numerical noise from evolution
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvariantViolation("state vector: probabilities sum to " + std::to_string(sum));
    }
}

StateVector::StateVector(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
    check_invariants();
}

StateVector::StateVector(std::vector<double> probs) : probs_(std::move(probs)) {
    labels_.resize(probs_.size());
    for (std::size_t i = 0; i < probs_.size(); ++i) labels_[i] = "s" + std::to_string(i);
    check_invariants();
}

IntensityMatrix::IntensityMatrix(Matrix entries, GeneratorMode mode)
    : entries_(std::move(entries)), mode_(mode) {
    if (!entries_.all_finite()) throw NonFiniteEntry("intensity matrix: non-finite entry");
    const std::size_t n = entries_.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && entries_(i, j) < 0.0) {
                throw InvariantViolation("intensity matrix: negative off-diagonal entry");
            }
        }
    }
    if (mode_ == GeneratorMode::ColumnGenerator) {
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(entries_.column_sum(j)) > 1e-12) {
                throw InvariantViolation("intensity matrix: column " + std::to_string(j) +
                                         " does not sum to zero");
            }
        }
    }
}

MeasurementSelector MeasurementSelector::all(std::size_t dim) {
    MeasurementSelector m;
    m.selected_indices.resize(dim);
    std::iota(m.selected_indices.begin(), m.selected_indices.end(), 0);
    return m;
}

TransitionMatrix matrix_exponential(const IntensityMatrix& k, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw OutOfRange("matrix_exponential: t must be >= 0");
    return TransitionMatrix{matrix_exp(k.entries() * t), t};
}

StateVector evolve(const StateVector& phi, const IntensityMatrix& k, double t,
                   double* pre_norm_sum) {
    if (phi.dim() != k.dim()) throw DimensionMismatch("evolve: dimension mismatch");
    const TransitionMatrix trans = matrix_exponential(k, t);
    std::vector<double> next = trans.entries.apply(phi.probs());
    double sum = 0.0;
    for (double v : next) sum += v;
    if (pre_norm_sum) *pre_norm_sum = sum;
    if (k.mode() == GeneratorMode::AsPrinted) {
        if (sum <= 0.0) throw InvariantViolation("evolve: total probability vanished");
        for (double& v : next) v /= sum;
    }
    return StateVector(phi.labels(), std::move(next));
}

double response_probability(const StateVector& phi0, const IntensityMatrix& k, double t,
                            const MeasurementSelector& m) {
    if (phi0.dim() != k.dim()) throw DimensionMismatch("response_probability: dimension mismatch");
    for (std::size_t idx : m.selected_indices) {
        if (idx >= k.dim()) throw DimensionMismatch("response_probability: selector out of range");
    }
    const StateVector evolved = evolve(phi0, k, t);
    double total = 0.0;
    for (std::size_t idx : m.selected_indices) total += evolved[idx];
    return total;
}

namespace {

// The published 3x3 payoff block for the good-guy branch; the rates flow
// from the uncertain middle state toward attack (row 0) and withdraw
// (row 2). In ColumnGenerator mode only the two corner diagonal entries
// change: each becomes the negated column sum of the off-diagonal rates,
// which swaps the printed corners.
Matrix k_good_matrix(double k_r, double k_w, GeneratorMode mode) {
    const double mid = (k_r + k_w) / 2.0;
    Matrix m(3);
    m(0, 1) = k_r;
    m(0, 2) = k_r;
    m(1, 0) = mid;
    m(1, 2) = mid;
    m(2, 0) = k_w;
    m(2, 1) = k_w;
    m(1, 1) = -(k_r + k_w);
    if (mode == GeneratorMode::AsPrinted) {
        m(0, 0) = -(3.0 * k_r + k_w) / 2.0;
        m(2, 2) = -(k_r + 3.0 * k_w) / 2.0;
    } else {
        m(0, 0) = -(k_r + 3.0 * k_w) / 2.0;
        m(2, 2) = -(3.0 * k_r + k_w) / 2.0;
    }
    return m;
}

Matrix reverse_conjugate(const Matrix& m) {
    const std::size_t n = m.dim();
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out(i, j) = m(n - 1 - i, n - 1 - j);
    }
    return out;
}

void check_rates(double k_r, double k_w) {
    if (!(k_r >= 0.0) || !(k_w >= 0.0) || !std::isfinite(k_r) || !std::isfinite(k_w)) {
        throw InvalidRate("payoff rates must be nonnegative");
    }
    if (k_r == 0.0 && k_w == 0.0) throw InvalidRate("payoff rates must not both be zero");
}

}  // namespace

IntensityMatrix build_K_good(double k_r, double k_w, GeneratorMode mode) {
    check_rates(k_r, k_w);
    return IntensityMatrix(k_good_matrix(k_r, k_w, mode), mode);
}

IntensityMatrix build_K_bad(double k_r, double k_w, GeneratorMode mode) {
    check_rates(k_r, k_w);
    return IntensityMatrix(reverse_conjugate(k_good_matrix(k_r, k_w, mode)), mode);
}

IntensityMatrix assemble_block_K(const IntensityMatrix& k_good, const IntensityMatrix& k_bad) {
    if (k_good.dim() != 3 || k_bad.dim() != 3) {
        throw DimensionMismatch("assemble_block_K: expected two 3x3 blocks");
    }
    if (k_good.mode() != k_bad.mode()) {
        throw InvariantViolation("assemble_block_K: blocks disagree on generator mode");
    }
    Matrix h(6);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            h(i, j) = k_good.entries()(i, j);
            h(i + 3, j + 3) = k_bad.entries()(i, j);
        }
    }
    return IntensityMatrix(std::move(h), k_good.mode());
}

TotalProbabilityDemo total_probability_demo(const IntensityMatrix& k, double t,
                                            std::pair<double, double> mix) {
    if (k.dim() != 2) throw DimensionMismatch("total_probability_demo: needs a 2-state chain");
    if (std::abs(mix.first + mix.second - 1.0) > 1e-9 || mix.first < 0.0 || mix.second < 0.0) {
        throw OutOfRange("total_probability_demo: mix is not a distribution");
    }
    const MeasurementSelector plus = MeasurementSelector::single(0);
    TotalProbabilityDemo demo;
    demo.p_plus_given_plus = response_probability(StateVector({1.0, 0.0}), k, t, plus);
    demo.p_plus_given_minus = response_probability(StateVector({0.0, 1.0}), k, t, plus);
    demo.p_plus_unknown =
        response_probability(StateVector({mix.first, mix.second}), k, t, plus);
    demo.law_residual = demo.p_plus_unknown - (mix.first * demo.p_plus_given_plus +
                                               mix.second * demo.p_plus_given_minus);
    return demo;
}

}  // namespace em
