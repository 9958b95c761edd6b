#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qsep/instance.hpp"

using namespace qsep;

TEST_CASE("hamming distance counts differing positions") {
    TargetState t0(4, "0000");
    CHECK(hamming_distance("0000", t0) == 0);
    CHECK(hamming_distance("0101", t0) == 2);
    CHECK(hamming_distance("1111", TargetState(4, "0101")) == 2);
    CHECK_THROWS_AS(hamming_distance("000", t0), LengthMismatch);
}

TEST_CASE("hard instance spectrum") {
    SUBCASE("n=4 ground") {
        auto inst = build_hard_instance(4);
        CHECK(inst.spectrum.units == std::vector<std::int64_t>{-4, 6, 0, 74, 516});
        CHECK(inst.extra_terms.empty());
    }
    SUBCASE("n=2 ground") {
        auto inst = build_hard_instance(2);
        CHECK(inst.spectrum.units == std::vector<std::int64_t>{-2, 0, 34});
    }
    SUBCASE("odd n rejected") {
        CHECK_THROWS_AS(build_hard_instance(3), OddN);
        CHECK_THROWS_AS(build_hard_instance(7), OddN);
    }
    SUBCASE("paper literal flips the linear part") {
        auto inst = build_hard_instance(4, SignConvention::PaperLiteral);
        CHECK(inst.spectrum.units == std::vector<std::int64_t>{4, 10, 0, 70, 508});
    }
}

TEST_CASE("watermarked instance") {
    SUBCASE("pure linear watermark, n=2") {
        auto inst = build_watermarked_instance(TargetState(2, "00"), {});
        CHECK(inst.spectrum.units == std::vector<std::int64_t>{-2, 0, 2});
    }
    SUBCASE("single extra 2pi term on one qubit") {
        auto inst = build_watermarked_instance(TargetState(1, "0"), {{{0}, 1}});
        CHECK(inst.diagonal_energy("0") == doctest::Approx(-kQuarterPi + kTwoPi));
        CHECK(inst.diagonal_energy("1") == doctest::Approx(kQuarterPi - kTwoPi));
    }
    SUBCASE("locality cap") {
        CHECK_THROWS_AS(
            build_watermarked_instance(TargetState(5, "00000"), {{{0, 1, 2, 3, 4}, 1}}),
            LocalityExceeded);
    }
}

TEST_CASE("spectral condition certificates") {
    SUBCASE("hard n=4 ground satisfied at gamma=-1 with c=pi") {
        auto inst = build_hard_instance(4);
        auto cert = check_spectral_condition(inst.spectrum, -1.0);
        CHECK(cert.satisfied);
        CHECK(cert.exact_path);
        CHECK(cert.max_deviation == 0.0);
        CHECK(cert.c == doctest::Approx(kPi));
    }
    SUBCASE("all-zero spectrum violated") {
        auto sp = HammingSpectrum::exact(2, {0, 0, 0});
        auto cert = check_spectral_condition(sp, 1.0);
        CHECK_FALSE(cert.satisfied);
        CHECK(cert.max_deviation > 0.1);
    }
    SUBCASE("paper literal satisfied at gamma=+1 with c=pi") {
        auto inst = build_hard_instance(4, SignConvention::PaperLiteral);
        auto cert = check_spectral_condition(inst.spectrum, 1.0);
        CHECK(cert.satisfied);
        CHECK(cert.c == doctest::Approx(kPi));
    }
}

TEST_CASE("find_gamma walks the candidate list in order") {
    SUBCASE("ground family needs gamma=-1") {
        auto inst = build_hard_instance(4);
        auto found = find_gamma(inst.spectrum);
        REQUIRE(found.has_value());
        CHECK(found->first == -1.0);
        CHECK(found->second.satisfied);
    }
    SUBCASE("all-zero spectrum has no witness") {
        CHECK_FALSE(find_gamma(HammingSpectrum::exact(2, {0, 0, 0})).has_value());
    }
    SUBCASE("paper literal finds +1 first") {
        auto inst = build_hard_instance(4, SignConvention::PaperLiteral);
        auto found = find_gamma(inst.spectrum);
        REQUIRE(found.has_value());
        CHECK(found->first == 1.0);
    }
}

TEST_CASE("density of states") {
    SUBCASE("small binomial rows") {
        auto d4 = density_of_states(4);
        std::vector<double> want{1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
        for (int i = 0; i <= 4; ++i) CHECK(d4[i] == doctest::Approx(want[i]).epsilon(1e-12));
        auto d2 = density_of_states(2);
        CHECK(d2[0] == doctest::Approx(0.25));
        CHECK(d2[1] == doctest::Approx(0.5));
        CHECK(d2[2] == doctest::Approx(0.25));
    }
    SUBCASE("n=100 peak") {
        auto d = density_of_states(100);
        CHECK(std::abs(d[50] - 0.0796) < 1e-4);
    }
    SUBCASE("normalization and symmetry") {
        for (int n : {1, 7, 40, 100, 250}) {
            auto d = density_of_states(n);
            double sum = std::accumulate(d.begin(), d.end(), 0.0);
            CHECK(std::abs(sum - 1.0) < 1e-12);
            for (int k = 0; k <= n; ++k) CHECK(d[k] == doctest::Approx(d[n - k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("hard family invariants over even n <= 40") {
    for (int n = 2; n <= 40; n += 2) {
        for (auto sign : {SignConvention::TargetIsGround, SignConvention::PaperLiteral}) {
            auto inst = build_hard_instance(n, sign);
            double gamma_star = -sigma_of(sign);
            auto cert = check_spectral_condition(inst.spectrum, gamma_star);
            CHECK(cert.satisfied);
            CHECK(cert.exact_path);
            CHECK(cert.max_deviation == 0.0);
        }
        auto ground = build_hard_instance(n);
        // unique global minimum at distance 0
        for (int d = 1; d <= n; ++d) CHECK(ground.spectrum.unit(d) > ground.spectrum.unit(0));
        // barrier height between the two minima shells, exact in quarter units
        CHECK(ground.spectrum.unit(n / 2) - ground.spectrum.unit(0) == n);
    }
}

TEST_CASE("instance json round trip") {
    SUBCASE("hard family") {
        auto inst = build_hard_instance(6, TargetState(6, "010110"));
        auto back = instance_from_json(instance_to_json(inst));
        CHECK(back.target.bits == inst.target.bits);
        CHECK(back.spectrum.units == inst.spectrum.units);
        CHECK(back.sign == inst.sign);
        CHECK(instance_to_json(inst).find("hard4local") != std::string::npos);
    }
    SUBCASE("custom float spectrum with extra terms") {
        Instance inst;
        inst.target = TargetState(3, "101");
        inst.spectrum = HammingSpectrum::floating(3, {0.0, 1.5, -2.25, 0.5});
        inst.extra_terms = {{{0, 2}, -3}};
        auto back = instance_from_json(instance_to_json(inst));
        CHECK(back.spectrum.radians == inst.spectrum.radians);
        REQUIRE(back.extra_terms.size() == 1);
        CHECK(back.extra_terms[0].sites == std::vector<int>{0, 2});
        CHECK(back.extra_terms[0].m == -3);
    }
    SUBCASE("bad files rejected") {
        CHECK_THROWS_AS(instance_from_json("{"), BadInstanceFile);
        CHECK_THROWS_AS(instance_from_json(R"({"n":2,"target":"00","kind":"custom"})"),
                        BadInstanceFile);
        CHECK_THROWS_AS(
            instance_from_json(
                R"({"n":2,"target":"00","kind":"custom","spectrum_quarter_pi":[0,0,0],"spectrum_float":[0,0,0]})"),
            BadInstanceFile);
    }
}

TEST_CASE("overflow is detected, not wrapped") {
    // the quartic term at huge n exceeds 64-bit range
    CHECK_THROWS_AS(build_hard_instance(200000), Overflow);
}
