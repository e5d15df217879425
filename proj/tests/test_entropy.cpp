#include <doctest.h>

#include <random>

#include "em/entropy.hpp"
#include "em/errors.hpp"
#include "support/oracles.hpp"

using namespace em;

namespace {

MassFunction narrow_cd_mass() {
    static const FrameOfDiscernment frame({"AG", "WG", "AB", "WB"});
    return make_mass(frame, {{{"AG"}, 0.0264},
                             {{"AG", "WG"}, 0.0811},
                             {{"WG"}, 0.0625},
                             {{"AB"}, 0.3050},
                             {{"AB", "WB"}, 0.3960},
                             {{"WB"}, 0.1290}});
}

MassFunction narrow_d_mass() {
    static const FrameOfDiscernment frame({"AG", "WG", "AB", "WB"});
    return make_mass(frame, {{{"AG", "AB"}, 0.3314},
                             {{"AG", "WG", "AB", "WB"}, 0.4771},
                             {{"WG", "WB"}, 0.1915}});
}

}  // namespace

TEST_CASE("Deng entropy of the narrow-face bodies of evidence") {
    CHECK(std::abs(deng_entropy(narrow_cd_mass()) - 2.8715) <= 1e-3);
    CHECK(std::abs(deng_entropy(narrow_d_mass()) - 4.1868) <= 1e-3);
}

TEST_CASE("Deng entropy equals Shannon entropy on Bayesian evidence") {
    FrameOfDiscernment f({"a", "b"});
    MassFunction half = make_mass(f, {{{"a"}, 0.5}, {{"b"}, 0.5}});
    CHECK(deng_entropy(half) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937 rng(31337);
    int bayesian_seen = 0;
    while (bayesian_seen < 500) {
        oracle::RandomMass rm = oracle::random_mass(rng);
        if (!rm.mass.is_bayesian()) continue;
        ++bayesian_seen;
        const double shannon = oracle::shannon(pignistic(rm.mass).probs);
        CHECK(std::abs(deng_entropy(rm.mass) - shannon) <= 1e-12);
    }
}

TEST_CASE("weighted Hartley: tabulated sign by default, classic variant positive") {
    MassFunction m_d = narrow_d_mass();
    CHECK(belief_entropy(m_d, EntropyMethod::WeightedHartley) ==
          doctest::Approx(-1.4771).epsilon(1e-9));
    CHECK(belief_entropy(m_d, EntropyMethod::WeightedHartleyClassic) ==
          doctest::Approx(1.4771).epsilon(1e-9));

    // Bayesian evidence has |A| = 1 everywhere, so both variants vanish.
    FrameOfDiscernment f({"a", "b"});
    MassFunction bayes = make_mass(f, {{{"a"}, 0.3}, {{"b"}, 0.7}});
    CHECK(belief_entropy(bayes, EntropyMethod::WeightedHartley) == 0.0);
}

TEST_CASE("confusion and dissonance collapse to Shannon on Bayesian evidence") {
    FrameOfDiscernment f({"a", "b", "c"});
    MassFunction m = make_mass(f, {{{"a"}, 0.2}, {{"b"}, 0.3}, {{"c"}, 0.5}});
    const double shannon = oracle::shannon(pignistic(m).probs);
    CHECK(belief_entropy(m, EntropyMethod::HohleConfusion) ==
          doctest::Approx(shannon).epsilon(1e-14));
    CHECK(belief_entropy(m, EntropyMethod::YagerDissonance) ==
          doctest::Approx(shannon).epsilon(1e-14));
    CHECK(belief_entropy(m, EntropyMethod::KlirRamerDiscord) ==
          doctest::Approx(shannon).epsilon(1e-14));
}

TEST_CASE("discord and strife share the tabulated formula") {
    std::mt19937 rng(555);
    for (int i = 0; i < 200; ++i) {
        oracle::RandomMass rm = oracle::random_mass(rng);
        CHECK(belief_entropy(rm.mass, EntropyMethod::KlirRamerDiscord) ==
              belief_entropy(rm.mass, EntropyMethod::KlirParvizStrife));
    }
}

TEST_CASE("conflict measure of a lone focal set is zero by convention") {
    FrameOfDiscernment f({"a", "b"});
    MassFunction lone = make_mass(f, {{{"a", "b"}, 1.0}});
    CHECK(belief_entropy(lone, EntropyMethod::GeorgePalConflict) == 0.0);
}

TEST_CASE("quantified: every measure matches its label-set oracle") {
    std::mt19937 rng(246810);
    for (int i = 0; i < 500; ++i) {
        oracle::RandomMass rm = oracle::random_mass(rng);
        CHECK(deng_entropy(rm.mass) == doctest::Approx(oracle::deng(rm.raw)).epsilon(1e-11));
        CHECK(belief_entropy(rm.mass, EntropyMethod::WeightedHartley) ==
              doctest::Approx(oracle::weighted_hartley_printed(rm.raw)).epsilon(1e-11));
        CHECK(belief_entropy(rm.mass, EntropyMethod::HohleConfusion) ==
              doctest::Approx(oracle::hohle(rm.raw)).epsilon(1e-11));
        CHECK(belief_entropy(rm.mass, EntropyMethod::YagerDissonance) ==
              doctest::Approx(oracle::yager(rm.raw)).epsilon(1e-11));
        CHECK(belief_entropy(rm.mass, EntropyMethod::KlirRamerDiscord) ==
              doctest::Approx(oracle::klir_ramer(rm.raw)).epsilon(1e-11));
        CHECK(belief_entropy(rm.mass, EntropyMethod::GeorgePalConflict) ==
              doctest::Approx(oracle::george_pal(rm.raw)).epsilon(1e-11));
    }
}

TEST_CASE("Deng entropy is invariant under frame relabeling") {
    std::mt19937 rng(8086);
    for (int i = 0; i < 200; ++i) {
        oracle::RandomMass rm = oracle::random_mass(rng);
        std::vector<std::string> reversed(rm.frame.labels().rbegin(), rm.frame.labels().rend());
        FrameOfDiscernment rframe(reversed);
        std::vector<std::pair<std::vector<std::string>, double>> entries;
        for (const auto& e : rm.raw) {
            entries.push_back({{e.members.begin(), e.members.end()}, e.mass});
        }
        CHECK(deng_entropy(rm.mass) ==
              doctest::Approx(deng_entropy(make_mass(rframe, entries))).epsilon(1e-12));
    }
}

TEST_CASE("method names round-trip") {
    for (EntropyMethod m : kComparedMethods) {
        CHECK(entropy_method_from_string(to_string(m)) == m);
    }
    CHECK(entropy_method_from_string("deng") == EntropyMethod::Deng);
    CHECK(entropy_method_from_string("hartley") == EntropyMethod::WeightedHartley);
    CHECK_THROWS_AS(entropy_method_from_string("nonsense"), ParseError);
}
