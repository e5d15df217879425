#pragma once

#include <array>
#include <string>

#include "em/evidence.hpp"

namespace em {

/// Uncertainty measures over a body of evidence. WeightedHartley carries
/// the sign it is usually tabulated with alongside this model, which makes
/// it nonpositive; WeightedHartleyClassic is the original nonnegative
/// definition and exists as an escape hatch. KlirRamerDiscord and
/// KlirParvizStrife are defined by the same formula here (the weighting
/// |A∩B|/|B| in both), so they always return equal values; the original
/// literature distinguishes them.
enum class EntropyMethod {
    Deng,
    WeightedHartley,
    WeightedHartleyClassic,
    HohleConfusion,
    YagerDissonance,
    KlirRamerDiscord,
    KlirParvizStrife,
    GeorgePalConflict,
};

/// The seven measures compared by the prediction harness.
inline constexpr std::array<EntropyMethod, 7> kComparedMethods = {
    EntropyMethod::Deng,
    EntropyMethod::WeightedHartley,
    EntropyMethod::HohleConfusion,
    EntropyMethod::YagerDissonance,
    EntropyMethod::KlirRamerDiscord,
    EntropyMethod::KlirParvizStrife,
    EntropyMethod::GeorgePalConflict,
};

/// E_d = -sum m(A) log2( m(A) / (2^|A|-1) ). Degenerates to Shannon
/// entropy when every focal set is a singleton.
double deng_entropy(const MassFunction& m);

double belief_entropy(const MassFunction& m, EntropyMethod method);

const char* to_string(EntropyMethod method);
EntropyMethod entropy_method_from_string(const std::string& name);

}  // namespace em
