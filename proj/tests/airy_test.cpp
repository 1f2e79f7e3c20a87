// Airy function evaluation against tabulated mpmath values and the zero
// table from Abramowitz & Stegun 10.13 (extended to n = 100 with mpmath).

#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "qbounce/airy.hpp"
#include "qbounce/errors.hpp"

using namespace qbounce;

TEST_SUITE("airy") {

TEST_CASE("Ai(x) matches reference samples on both branches") {
    for (const auto& s : oracle::kAiTable) {
        CAPTURE(s.x);
        // oscillatory side: absolute accuracy; decaying side: relative too
        CHECK(airy_ai(s.x) == doctest::Approx(s.ai).epsilon(1e-9).scale(1.0));
        if (s.x >= 0.0)
            CHECK(airy_ai(s.x) == doctest::Approx(s.ai).epsilon(1e-9));
    }
}

TEST_CASE("Ai is continuous across the series/asymptotic handover") {
    // A plain two-sided difference would mostly measure the slope (|Ai'(-7)|
    // is about 0.8), so use the second difference: it cancels the linear term
    // and leaves only a branch mismatch plus O(eps^2) curvature.
    for (double edge : {-7.0, 7.0}) {
        const double eps = 1e-7;
        const double jump =
            airy_ai(edge + eps) - 2.0 * airy_ai(edge) + airy_ai(edge - eps);
        CAPTURE(edge);
        CHECK(std::fabs(jump) < 1e-10);
    }
}

TEST_CASE("zeros match the reference table to 1e-9") {
    for (int n = 1; n <= 100; ++n) {
        CAPTURE(n);
        CHECK(airy_zero(n) == doctest::Approx(oracle::kAiryZeros[n - 1]).epsilon(1e-10));
        CHECK(std::fabs(airy_zero(n) - oracle::kAiryZeros[n - 1]) < 1e-9);
    }
}

TEST_CASE("zeros are strictly increasing and actually null Ai") {
    double prev = 0.0;
    for (int n = 1; n <= 100; ++n) {
        const double a = airy_zero(n);
        CHECK(a > prev);
        prev = a;
        // |Ai'| at the zeros grows like alpha^(1/4), so scale the residual
        if (a <= 50.0) CHECK(std::fabs(airy_ai(-a)) < 5e-9 * std::pow(a, 0.25));
    }
}

TEST_CASE("arguments outside the validated range are rejected") {
    CHECK_THROWS_AS(airy_ai(50.5), ValidationError);
    CHECK_THROWS_AS(airy_ai(-50.5), ValidationError);
    CHECK_THROWS_AS(airy_ai(std::nan("")), ValidationError);
    CHECK_THROWS_AS(airy_zero(0), ValidationError);
    CHECK_THROWS_AS(airy_zero(101), ValidationError);
    CHECK_NOTHROW(airy_ai(50.0));
    CHECK_NOTHROW(airy_ai(-50.0));
}

} // TEST_SUITE("airy")
