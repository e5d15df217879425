#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace em {

/// Ordered finite set of mutually exclusive outcome labels. The label order
/// is stable and fixes the canonical bit encoding of subsets: label i sits
/// at bit i.
class FrameOfDiscernment {
public:
    explicit FrameOfDiscernment(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }

    /// Bit position of a label; throws UnknownLabel.
    std::size_t index_of(const std::string& label) const;

    /// Mask with every label's bit set.
    std::uint64_t full_mask() const { return (size() == 64) ? ~0ull : (1ull << size()) - 1; }

    bool operator==(const FrameOfDiscernment& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
};

/// Nonempty subset of a frame, stored as a bitmask against the frame's
/// label order. Equality and subset tests are exact integer operations.
class FocalSet {
public:
    static FocalSet from_labels(const FrameOfDiscernment& frame,
                                const std::vector<std::string>& members);
    static FocalSet from_bits(std::uint64_t bits);

    std::uint64_t bits() const { return bits_; }
    int cardinality() const;
    bool subset_of(const FocalSet& other) const { return (bits_ & ~other.bits_) == 0; }
    bool intersects(const FocalSet& other) const { return (bits_ & other.bits_) != 0; }
    bool contains_index(std::size_t i) const { return (bits_ >> i) & 1u; }

    std::vector<std::string> members(const FrameOfDiscernment& frame) const;

    friend bool operator==(const FocalSet& a, const FocalSet& b) { return a.bits_ == b.bits_; }
    friend bool operator<(const FocalSet& a, const FocalSet& b) { return a.bits_ < b.bits_; }

private:
    explicit FocalSet(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_;
};

/// A body of evidence: focal sets with strictly positive masses summing to
/// one. Zero-mass entries are dropped at construction; an input whose total
/// is within 1e-9 of one is renormalized so the stored sum is exact.
class MassFunction {
public:
    using Entry = std::pair<FocalSet, double>;

    MassFunction(FrameOfDiscernment frame, const std::vector<Entry>& entries);

    const FrameOfDiscernment& frame() const { return frame_; }
    const std::map<std::uint64_t, double>& assignments() const { return masses_; }
    std::size_t focal_count() const { return masses_.size(); }

    /// Mass of a focal set; zero when the set is not focal.
    double mass(const FocalSet& set) const;

    /// True when every focal set is a singleton.
    bool is_bayesian() const;

private:
    FrameOfDiscernment frame_;
    std::map<std::uint64_t, double> masses_;
};

/// Point probabilities over the singletons of a frame.
struct ProbabilityDistribution {
    FrameOfDiscernment frame;
    std::vector<double> probs;

    double prob(const std::string& label) const { return probs[frame.index_of(label)]; }
};

MassFunction make_mass(const FrameOfDiscernment& frame,
                       const std::vector<std::pair<std::vector<std::string>, double>>& entries);

/// Bel(A): total mass of the subsets of A.
double belief(const MassFunction& m, const FocalSet& set);

/// Pl(A): total mass of the sets meeting A.
double plausibility(const MassFunction& m, const FocalSet& set);

/// Splits every focal set's mass equally among its members.
ProbabilityDistribution pignistic(const MassFunction& m);

}  // namespace em
