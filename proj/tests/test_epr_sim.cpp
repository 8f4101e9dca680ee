#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bellops/epr_sim.hpp"
#include "bellops/bell_bounds.hpp"
#include "bellops/rng.hpp"

using namespace bellops;

namespace {

const double DEG = M_PI / 180.0;

// sawtooth correlation of the sign model under uniform lambda
double sign_model_correlation(double alpha, double beta) {
    double d = std::abs(alpha - beta);
    d = std::fmod(d, M_PI);
    if (d > M_PI / 2) d = M_PI - d;
    return 1.0 - 4.0 * d / M_PI;
}

std::array<CoincidenceCounts, 4> run_chsh_quantum(double a1, double a2, double b1, double b2,
                                                  std::uint64_t n, std::uint64_t seed) {
    return {run_coincidence_quantum(a1, b1, n, derive_substream(seed, 0)),
            run_coincidence_quantum(a2, b1, n, derive_substream(seed, 1)),
            run_coincidence_quantum(a1, b2, n, derive_substream(seed, 2)),
            run_coincidence_quantum(a2, b2, n, derive_substream(seed, 3))};
}

std::array<CoincidenceCounts, 4> run_chsh_model(const ResponseModel& m, double a1, double a2,
                                                double b1, double b2, std::uint64_t n,
                                                std::uint64_t seed) {
    return {run_coincidence(m, a1, b1, n, derive_substream(seed, 0)),
            run_coincidence(m, a2, b1, n, derive_substream(seed, 1)),
            run_coincidence(m, a1, b2, n, derive_substream(seed, 2)),
            run_coincidence(m, a2, b2, n, derive_substream(seed, 3))};
}

}  // namespace

TEST_CASE("malus transmission") {
    CHECK(malus_transmission(0.0) == 1.0);
    CHECK(malus_transmission(M_PI / 2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(malus_transmission(M_PI / 4) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(malus_transmission(std::nan("")), std::invalid_argument);
}

TEST_CASE("quantum pair correlation from the two-photon state") {
    CHECK(quantum_pair_correlation(0.3, 0.3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quantum_pair_correlation(M_PI / 4, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(quantum_pair_correlation(M_PI / 8, 0.0) ==
          doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
    // agrees with cos 2(alpha-beta) everywhere
    for (double a : {0.1, 0.7, 2.0}) {
        for (double b : {0.0, 0.4, 1.3}) {
            CHECK(quantum_pair_correlation(a, b) ==
                  doctest::Approx(std::cos(2 * (a - b))).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantum coincidence probability") {
    CHECK(quantum_coincidence_probability(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(quantum_coincidence_probability(M_PI / 2, 0.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // p++ = cos^2(alpha-beta)/2
    for (double a : {0.2, 1.0}) {
        for (double b : {0.0, 0.9}) {
            double c = std::cos(a - b);
            CHECK(quantum_coincidence_probability(a, b) ==
                  doctest::Approx(0.5 * c * c).epsilon(1e-12));
        }
    }
    // completeness over the four projector outcomes
    double a = 0.37, b = 1.21;
    double e = quantum_pair_correlation(a, b);
    double ppp = quantum_coincidence_probability(a, b);
    double ppa = (1 - e) / 4.0, pap = (1 - e) / 4.0, paa = (1 + e) / 4.0;
    CHECK(ppp + ppa + pap + paa == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quantum coincidence run at equal settings has no discordant outcomes") {
    CoincidenceCounts c = run_coincidence_quantum(0.4, 0.4, 100000, 9);
    CHECK(c.total() == 100000);
    CHECK(c.n_pa == 0);
    CHECK(c.n_ap == 0);
    CorrelationEstimate e = correlation_from_counts(c);
    CHECK(e.value == 1.0);
}

TEST_CASE("sign model correlation matches the sawtooth law") {
    ModelRegistry reg = ModelRegistry::builtin();
    const ResponseModel& sign = reg.get("sign");
    CoincidenceCounts c = run_coincidence(sign, M_PI / 8, 0.0, 1000000, 31);
    CorrelationEstimate e = correlation_from_counts(c);
    CHECK(std::abs(e.value - 0.5) <= 3.0 * e.std_error);
    CHECK(sign_model_correlation(M_PI / 8, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("CHSH estimates") {
    const double a1 = 0, a2 = 45 * DEG, b1 = 22.5 * DEG, b2 = -22.5 * DEG;

    ChshEstimate q = estimate_chsh(run_chsh_quantum(a1, a2, b1, b2, 1000000, 12));
    CHECK(std::abs(q.value - 2.0 * std::sqrt(2.0)) <= 3.0 * q.std_error);

    ModelRegistry reg = ModelRegistry::builtin();
    ChshEstimate s = estimate_chsh(run_chsh_model(reg.get("sign"), a1, a2, b1, b2, 1000000, 13));
    // sawtooth arithmetic: 0.5 + 0.5 + 0.5 - (-0.5) = 2
    CHECK(std::abs(s.value - 2.0) <= 3.0 * s.std_error);

    // all-equal settings: E = 1,1,1,1 -> S = 2 exactly
    ChshEstimate eq = estimate_chsh(run_chsh_quantum(0.2, 0.2, 0.2, 0.2, 10000, 14));
    CHECK(eq.value == 2.0);

    std::array<CoincidenceCounts, 4> empty{};
    CHECK_THROWS_AS(estimate_chsh(empty), std::invalid_argument);
}

TEST_CASE("every response model with shared lambda respects the classical bound") {
    ModelRegistry reg = ModelRegistry::builtin();
    const double a1 = 0, a2 = 45 * DEG, b1 = 22.5 * DEG, b2 = -22.5 * DEG;
    for (const std::string& name : reg.names()) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            ChshEstimate s =
                estimate_chsh(run_chsh_model(reg.get(name), a1, a2, b1, b2, 100000, 100 + seed));
            CHECK(std::abs(s.value) <= 2.0 + 4.0 * s.std_error);
        }
    }
}

TEST_CASE("no-signalling marginals") {
    for (double beta : {0.0, 1.0}) {
        CoincidenceCounts c = run_coincidence_quantum(0.5, beta, 200000, 55);
        double p_pass_a = double(c.n_pp + c.n_pa) / double(c.total());
        double sigma = std::sqrt(0.25 / double(c.total()));
        CHECK(std::abs(p_pass_a - 0.5) <= 3.0 * sigma);
    }
}

TEST_CASE("chain analytic reference") {
    std::vector<double> f = chain_analytic({0.0, 45 * DEG, 90 * DEG});
    REQUIRE(f.size() == 3);
    CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(f[2] == doctest::Approx(0.125).epsilon(1e-12));

    std::vector<double> crossed = chain_analytic({0.0, 90 * DEG});
    CHECK(crossed[1] == doctest::Approx(0.0).epsilon(1e-15));

    // two polarizers: initial 1/2 times the Malus factor of the difference
    std::vector<double> two = chain_analytic({0.1, 0.8});
    CHECK(two[1] == doctest::Approx(0.5 * malus_transmission(0.7)).epsilon(1e-12));

    CHECK_THROWS_AS(chain_analytic({}), std::invalid_argument);
}

TEST_CASE("chain Monte Carlo") {
    ModelRegistry reg = ModelRegistry::builtin();
    const std::uint64_t n = 200000;
    double sigma = std::sqrt(0.25 / double(n));

    for (const std::string& name : reg.names()) {
        std::vector<double> one = chain_transmission(reg.get(name), {0.9}, n, 4);
        CHECK(std::abs(one[0] - 0.5) <= 3.0 * sigma);
    }

    std::vector<double> mc =
        chain_transmission(reg.get("malus-threshold"), {0.0, 45 * DEG, 90 * DEG}, n, 8);
    std::vector<double> ref = chain_analytic({0.0, 45 * DEG, 90 * DEG});
    for (int s = 0; s < 3; ++s) {
        double sd = std::sqrt(ref[s] * (1 - ref[s]) / double(n));
        CHECK(std::abs(mc[s] - ref[s]) <= 3.0 * sd + 1e-12);
    }

    CHECK_THROWS_AS(chain_transmission(reg.get("sign"), {}, n, 0), std::invalid_argument);
}

TEST_CASE("malus-threshold model details") {
    ModelRegistry reg = ModelRegistry::builtin();
    const ResponseModel& m = reg.get("malus-threshold");
    // lambda aligned with the polarizer always passes
    CHECK(m.pass_rule(0.7, 0.7, 0.999999));
    // repolarization to the polarizer axis
    CHECK(m.update_rule(0.1, 0.7, true) == doctest::Approx(0.7));
    CHECK_THROWS_AS(reg.get("no-such-model"), std::invalid_argument);
}

TEST_CASE("determinism and chunk independence") {
    CoincidenceCounts a = run_coincidence_quantum(0.3, 0.9, 300000, 77, 1);
    CoincidenceCounts b = run_coincidence_quantum(0.3, 0.9, 300000, 77, 4);
    CHECK(a.n_pp == b.n_pp);
    CHECK(a.n_pa == b.n_pa);
    CHECK(a.n_ap == b.n_ap);
    CHECK(a.n_aa == b.n_aa);

    ModelRegistry reg = ModelRegistry::builtin();
    CoincidenceCounts c = run_coincidence(reg.get("sign"), 0.3, 0.9, 300000, 77, 1);
    CoincidenceCounts d = run_coincidence(reg.get("sign"), 0.3, 0.9, 300000, 77, 4);
    CHECK(c.n_pp == d.n_pp);
    CHECK(c.n_aa == d.n_aa);

    std::vector<double> e = chain_transmission(reg.get("sign"), {0.0, 0.5}, 300000, 5, 1);
    std::vector<double> f = chain_transmission(reg.get("sign"), {0.0, 0.5}, 300000, 5, 3);
    CHECK(e == f);
}

TEST_CASE("Monte Carlo error shrinks at the 1/sqrt(n) rate") {
    CoincidenceCounts small = run_coincidence_quantum(0.2, 0.6, 50000, 21);
    CoincidenceCounts large = run_coincidence_quantum(0.2, 0.6, 200000, 22);
    double r = correlation_from_counts(small).std_error / correlation_from_counts(large).std_error;
    CHECK(r > 2.0 * 0.8);
    CHECK(r < 2.0 * 1.2);
}
