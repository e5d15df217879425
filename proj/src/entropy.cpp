#include "em/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

#include "em/errors.hpp"

namespace em {

namespace {

double deng(const MassFunction& m) {
    double total = 0.0;
    for (const auto& [bits, mass] : m.assignments()) {
        const double capacity = std::ldexp(1.0, std::popcount(bits)) - 1.0;
        total -= mass * std::log2(mass / capacity);
    }
    return total;
}

double weighted_hartley(const MassFunction& m, bool printed_sign) {
    double total = 0.0;
    for (const auto& [bits, mass] : m.assignments()) {
        total += mass * std::log2(static_cast<double>(std::popcount(bits)));
    }
    return printed_sign ? -total : total;
}

template <typename EnvelopeFn>
double envelope_entropy(const MassFunction& m, EnvelopeFn envelope) {
    // Bel(A) and Pl(A) are >= m(A) > 0 for focal A, so the log is finite.
    double total = 0.0;
    for (const auto& [bits, mass] : m.assignments()) {
        total -= mass * std::log2(envelope(FocalSet::from_bits(bits)));
    }
    return total;
}

double klir_ramer(const MassFunction& m) {
    double total = 0.0;
    for (const auto& [a_bits, a_mass] : m.assignments()) {
        double inner = 0.0;
        for (const auto& [b_bits, b_mass] : m.assignments()) {
            inner += b_mass * std::popcount(a_bits & b_bits) /
                     static_cast<double>(std::popcount(b_bits));
        }
        // inner >= m(A) > 0 because A meets itself fully.
        total -= a_mass * std::log2(inner);
    }
    return total;
}

double george_pal(const MassFunction& m) {
    double total = 0.0;
    for (const auto& [a_bits, a_mass] : m.assignments()) {
        double inner = 0.0;
        for (const auto& [b_bits, b_mass] : m.assignments()) {
            inner += b_mass * (1.0 - std::popcount(a_bits & b_bits) /
                                         static_cast<double>(std::popcount(a_bits | b_bits)));
        }
        // A lone focal set conflicts with nothing; treat its log2(0) term
        // as zero by continuity.
        if (inner <= 0.0) continue;
        total += a_mass * std::log2(inner);
    }
    return total;
}

}  // namespace

double deng_entropy(const MassFunction& m) { return deng(m); }

double belief_entropy(const MassFunction& m, EntropyMethod method) {
    switch (method) {
        case EntropyMethod::Deng:
            return deng(m);
        case EntropyMethod::WeightedHartley:
            return weighted_hartley(m, true);
        case EntropyMethod::WeightedHartleyClassic:
            return weighted_hartley(m, false);
        case EntropyMethod::HohleConfusion:
            return envelope_entropy(m, [&m](const FocalSet& a) { return belief(m, a); });
        case EntropyMethod::YagerDissonance:
            return envelope_entropy(m, [&m](const FocalSet& a) { return plausibility(m, a); });
        case EntropyMethod::KlirRamerDiscord:
        case EntropyMethod::KlirParvizStrife:
            return klir_ramer(m);
        case EntropyMethod::GeorgePalConflict:
            return george_pal(m);
    }
    throw OutOfRange("belief_entropy: unknown method");
}

const char* to_string(EntropyMethod method) {
    switch (method) {
        case EntropyMethod::Deng: return "deng";
        case EntropyMethod::WeightedHartley: return "weighted-hartley";
        case EntropyMethod::WeightedHartleyClassic: return "weighted-hartley-classic";
        case EntropyMethod::HohleConfusion: return "hohle-confusion";
        case EntropyMethod::YagerDissonance: return "yager-dissonance";
        case EntropyMethod::KlirRamerDiscord: return "klir-ramer-discord";
        case EntropyMethod::KlirParvizStrife: return "klir-parviz-strife";
        case EntropyMethod::GeorgePalConflict: return "george-pal-conflict";
    }
    return "?";
}

EntropyMethod entropy_method_from_string(const std::string& name) {
    std::string key;
    for (char c : name) {
        key += (c == '_') ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    for (EntropyMethod m : {EntropyMethod::Deng, EntropyMethod::WeightedHartley,
                            EntropyMethod::WeightedHartleyClassic, EntropyMethod::HohleConfusion,
                            EntropyMethod::YagerDissonance, EntropyMethod::KlirRamerDiscord,
                            EntropyMethod::KlirParvizStrife, EntropyMethod::GeorgePalConflict}) {
        if (key == to_string(m)) return m;
    }
    // Short aliases for the CLI.
    if (key == "hartley") return EntropyMethod::WeightedHartley;
    if (key == "hohle") return EntropyMethod::HohleConfusion;
    if (key == "yager") return EntropyMethod::YagerDissonance;
    if (key == "klir-ramer") return EntropyMethod::KlirRamerDiscord;
    if (key == "klir-parviz") return EntropyMethod::KlirParvizStrife;
    if (key == "george-pal") return EntropyMethod::GeorgePalConflict;
    throw ParseError("unknown entropy method '" + name + "'");
}

}  // namespace em
