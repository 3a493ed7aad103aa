#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ordermix/quantities.hpp"

using namespace ordermix;
using namespace ordermix::quantities;
using states::SchmidtParam;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// independent closed form for two maximally entangled pairs:
// E_D = (3/4) log2 3
const double kTwoPairMaximal = 0.75 * std::log2(3.0);

// independent route for maximal entanglement at any J:
// E_D = sum_j d_j^2 p_j log2(2j+1) with p_j = (2j+1)/(d_j 4^J)
double maximal_distillable_oracle(int J) {
    double total = 0.0;
    const double denom = std::pow(4.0, J);
    for (int j = 0; j <= J; ++j) {
        const double d = static_cast<double>(coupled_basis::degeneracy(J, j));
        const double p = (2.0 * j + 1.0) / (d * denom);
        total += d * d * p * std::log2(2.0 * j + 1.0);
    }
    return total;
}

double maximal_information_loss_oracle(int J) {
    double total = 0.0;
    const double denom = std::pow(4.0, J);
    for (int j = 0; j <= J; ++j) {
        const double d = static_cast<double>(coupled_basis::degeneracy(J, j));
        const double p = (2.0 * j + 1.0) / (d * denom);
        if (p > 0.0) total -= d * d * p * std::log2(p);
    }
    return total;
}

}  // namespace

TEST_CASE("initial entanglement is N times the binary entropy") {
    CHECK(initial_entanglement(2, SchmidtParam::maximal()) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(initial_entanglement(2, SchmidtParam::from_alpha(0.6)) ==
          doctest::Approx(1.8853664).epsilon(1e-7));
    CHECK(initial_entanglement(4, SchmidtParam::maximal()) ==
          doctest::Approx(4.0).epsilon(1e-12));
    CHECK(initial_entanglement(2, SchmidtParam::from_alpha(1.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(initial_entanglement(2, SchmidtParam::from_alpha(0.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("block entanglement at maximal input is log2(2j+1)") {
    const SchmidtParam s = SchmidtParam::maximal();
    for (int j = 0; j <= 4; ++j)
        CHECK(block_entanglement(j, s) ==
              doctest::Approx(std::log2(2.0 * j + 1.0)).epsilon(1e-12));
}

TEST_CASE("two maximally entangled pairs distill (3/4) log2 3") {
    CHECK(distillable_entanglement(1, SchmidtParam::maximal()) ==
          doctest::Approx(kTwoPairMaximal).epsilon(1e-12));
    CHECK(distillable_entanglement(1, SchmidtParam::maximal()) ==
          doctest::Approx(1.1887218755408672).epsilon(1e-12));
}

TEST_CASE("two-pair distillable entanglement closed form on a grid") {
    // independent expression: E_D = (3/4 + (alpha^2 beta^2)/... ) — use the
    // direct two-term sum with d_0 = d_1 = 1 and explicit block entropies.
    for (int k = 0; k <= 100; ++k) {
        const double a2 = static_cast<double>(k) / 100.0;
        const SchmidtParam s = SchmidtParam::from_alpha_sq(a2);
        const double b2 = 1.0 - a2;
        const double p0 = a2 * b2;          // singlet block weight
        const double p1 = 1.0 - p0;         // triplet block weight
        double s1 = 0.0;
        if (p1 > 0.0) {
            const double q[3] = {a2 * a2 / p1, a2 * b2 / p1, b2 * b2 / p1};
            for (double q_m : q)
                if (q_m > 0.0) s1 -= q_m * std::log2(q_m);
        }
        const double expect = p1 * s1;
        CHECK(std::abs(distillable_entanglement(1, s) - expect) < 1e-10);
    }
}

TEST_CASE("four maximally entangled pairs") {
    const SchmidtParam s = SchmidtParam::maximal();
    CHECK(distillable_entanglement(2, s) ==
          doctest::Approx(1.6171439363079513).epsilon(1e-10));
    CHECK(information_loss(2, s) == doctest::Approx(3.3993974703476995).epsilon(1e-10));
    const SweepRecord r = ratio(2, s);
    CHECK(r.ratio_defined);
    CHECK(r.ratio == doctest::Approx(0.700964).epsilon(1e-5));
}

TEST_CASE("two-pair information loss is the mixing entropy") {
    CHECK(information_loss(1, SchmidtParam::maximal()) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-12));
    CHECK(information_loss(1, SchmidtParam::from_alpha(1.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("maximal-input closed forms match the spectral oracle up to J=16") {
    const SchmidtParam s = SchmidtParam::maximal();
    for (int J = 1; J <= kMaxClosedFormJ; ++J) {
        CHECK(std::abs(distillable_entanglement(J, s) - maximal_distillable_oracle(J)) <
              1e-12);
        CHECK(std::abs(information_loss(J, s) - maximal_information_loss_oracle(J)) < 1e-12);
    }
}

TEST_CASE("ratio is exactly one for two pairs and at most one beyond") {
    for (int k = 1; k < 100; ++k) {
        const SchmidtParam s = SchmidtParam::from_alpha_sq(static_cast<double>(k) / 100.0);
        const SweepRecord r = ratio(1, s);
        REQUIRE(r.ratio_defined);
        CHECK(std::abs(r.ratio - 1.0) < 1e-10);
    }
    for (int J = 2; J <= 4; ++J)
        for (int k = 1; k < 100; ++k) {
            const SchmidtParam s =
                SchmidtParam::from_alpha_sq(static_cast<double>(k) / 100.0);
            const SweepRecord r = ratio(J, s);
            REQUIRE(r.ratio_defined);
            CHECK(r.ratio <= 1.0 + 1e-10);
            CHECK(r.ratio >= -1e-12);
        }
}

TEST_CASE("ratio is flagged undefined at the product-state endpoints") {
    for (int J = 1; J <= 3; ++J) {
        CHECK_FALSE(ratio(J, SchmidtParam::from_alpha(1.0)).ratio_defined);
        CHECK_FALSE(ratio(J, SchmidtParam::from_alpha(0.0)).ratio_defined);
    }
}

TEST_CASE("sweep record carries consistent fields") {
    const SchmidtParam s = SchmidtParam::from_alpha(0.6);
    const SweepRecord r = ratio(2, s);
    CHECK(r.J == 2);
    CHECK(r.alpha == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(r.e_initial == doctest::Approx(initial_entanglement(4, s)).epsilon(1e-12));
    CHECK(r.e_distillable ==
          doctest::Approx(distillable_entanglement(2, s)).epsilon(1e-12));
    CHECK(r.delta_i == doctest::Approx(information_loss(2, s)).epsilon(1e-12));
    CHECK(r.ratio ==
          doctest::Approx((r.e_initial - r.e_distillable) / r.delta_i).epsilon(1e-12));
}

TEST_CASE("distillable entanglement never exceeds the initial entanglement") {
    for (int J = 1; J <= 6; ++J)
        for (int k = 0; k <= 20; ++k) {
            const SchmidtParam s =
                SchmidtParam::from_alpha_sq(static_cast<double>(k) / 20.0);
            CHECK(distillable_entanglement(J, s) <=
                  initial_entanglement(2 * J, s) + 1e-10);
        }
}

TEST_CASE("closed forms reject out-of-range J") {
    const SchmidtParam s = SchmidtParam::maximal();
    CHECK_THROWS_AS(distillable_entanglement(0, s), std::out_of_range);
    CHECK_THROWS_AS(distillable_entanglement(17, s), std::out_of_range);
    CHECK_THROWS_AS(information_loss(17, s), std::out_of_range);
}
