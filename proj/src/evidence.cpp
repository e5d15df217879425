#include "em/evidence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "em/errors.hpp"

namespace em {

FrameOfDiscernment::FrameOfDiscernment(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
    if (labels_.empty()) throw InvariantViolation("frame: needs at least one label");
    if (labels_.size() > 64) throw InvariantViolation("frame: at most 64 labels supported");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw InvariantViolation("frame: empty label");
        if (!seen.insert(l).second) throw InvariantViolation("frame: duplicate label '" + l + "'");
    }
}

std::size_t FrameOfDiscernment::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw UnknownLabel("unknown label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

FocalSet FocalSet::from_labels(const FrameOfDiscernment& frame,
                               const std::vector<std::string>& members) {
    if (members.empty()) throw EmptyFocalSet("focal set: empty member list");
    std::uint64_t bits = 0;
    for (const auto& l : members) bits |= 1ull << frame.index_of(l);
    return FocalSet(bits);
}

FocalSet FocalSet::from_bits(std::uint64_t bits) {
    if (bits == 0) throw EmptyFocalSet("focal set: empty bit pattern");
    return FocalSet(bits);
}

int FocalSet::cardinality() const { return std::popcount(bits_); }

std::vector<std::string> FocalSet::members(const FrameOfDiscernment& frame) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        if (contains_index(i)) out.push_back(frame.label(i));
    }
    return out;
}

MassFunction::MassFunction(FrameOfDiscernment frame, const std::vector<Entry>& entries)
    : frame_(std::move(frame)) {
    const std::uint64_t full = frame_.full_mask();
    double sum = 0.0;
    for (const auto& [set, mass] : entries) {
        if (set.bits() & ~full) {
            throw UnknownLabel("mass function: focal set outside the frame");
        }
        if (mass < 0.0 || mass > 1.0) {
            throw OutOfRange("mass function: mass " + std::to_string(mass) + " outside [0,1]");
        }
        if (mass == 0.0) continue;
        if (!masses_.emplace(set.bits(), mass).second) {
            throw DuplicateFocalSet("mass function: duplicate focal set");
        }
        sum += mass;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw MassSumViolation("mass function: masses sum to " + std::to_string(sum));
    }
    // Renormalize and push the rounding residual into the largest entry so
    // the stored masses sum to one exactly. Inputs already at one are left
    // untouched, which keeps reconstruction from assignments() an identity.
    if (std::abs(sum - 1.0) > 1e-15) {
        auto largest = masses_.begin();
        double check = 0.0;
        for (auto it = masses_.begin(); it != masses_.end(); ++it) {
            it->second /= sum;
            check += it->second;
            if (it->second > largest->second) largest = it;
        }
        largest->second += 1.0 - check;
    }
}

double MassFunction::mass(const FocalSet& set) const {
    auto it = masses_.find(set.bits());
    return it == masses_.end() ? 0.0 : it->second;
}

bool MassFunction::is_bayesian() const {
    for (const auto& [bits, mass] : masses_) {
        if (std::popcount(bits) != 1) return false;
    }
    return true;
}

MassFunction make_mass(const FrameOfDiscernment& frame,
                       const std::vector<std::pair<std::vector<std::string>, double>>& entries) {
    std::vector<MassFunction::Entry> sets;
    sets.reserve(entries.size());
    for (const auto& [labels, mass] : entries) {
        sets.emplace_back(FocalSet::from_labels(frame, labels), mass);
    }
    return MassFunction(frame, sets);
}

double belief(const MassFunction& m, const FocalSet& set) {
    if (set.bits() & ~m.frame().full_mask()) {
        throw UnknownLabel("belief: set outside the frame");
    }
    double total = 0.0;
    bool covers_all = true;
    for (const auto& [bits, mass] : m.assignments()) {
        if ((bits & ~set.bits()) == 0) {
            total += mass;
        } else {
            covers_all = false;
        }
    }
    return covers_all ? 1.0 : total;
}

double plausibility(const MassFunction& m, const FocalSet& set) {
    if (set.bits() & ~m.frame().full_mask()) {
        throw UnknownLabel("plausibility: set outside the frame");
    }
    double total = 0.0;
    bool meets_all = true;
    for (const auto& [bits, mass] : m.assignments()) {
        if (bits & set.bits()) {
            total += mass;
        } else {
            meets_all = false;
        }
    }
    return meets_all ? 1.0 : total;
}

ProbabilityDistribution pignistic(const MassFunction& m) {
    std::vector<double> probs(m.frame().size(), 0.0);
    for (const auto& [bits, mass] : m.assignments()) {
        const double share = mass / std::popcount(bits);
        for (std::size_t i = 0; i < m.frame().size(); ++i) {
            if ((bits >> i) & 1u) probs[i] += share;
        }
    }
    return ProbabilityDistribution{m.frame(), std::move(probs)};
}

}  // namespace em
