#include <doctest.h>

#include <cmath>
#include <random>

#include "dpa/errors.hpp"
#include "dpa/nonclassicality.hpp"
#include "dpa/statistics.hpp"

using namespace dpa;

TEST_SUITE("nonclassicality") {
    TEST_CASE("P-representation factor and its threshold") {
        CHECK(p_factor(0.2, 0.1, 0.0) == doctest::Approx(1.4 * std::exp(-0.2)));
        CHECK(p_representation_exists(0.2, 0.1, 0.0));
        CHECK_FALSE(field_nonclassical(0.2, 0.1, 0.0));
        CHECK(field_nonclassical(0.1, 0.2, 0.0));
        // Exactly at the threshold a regular P representation still exists.
        const double r_edge = 0.5 * std::log(2.0 * 0.3 + 1.0);
        CHECK(p_representation_exists(0.3, r_edge, 0.0));
    }

    TEST_CASE("crossover time") {
        const auto u = crossover_time(0.2, 0.1);
        REQUIRE(u.has_value());
        CHECK(p_factor(0.2, 0.1, *u) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(field_nonclassical(0.2, 0.1, *u + 1e-9));
        CHECK_FALSE(crossover_time(0.1, 0.2).has_value());
    }

    TEST_CASE("squeezing criterion agrees with the field criterion at alignment") {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const double nbar = 3.0 * unit(rng), r = 1.5 * unit(rng), u = 2.0 * unit(rng), theta = 6.0 * unit(rng);
            CHECK(squeezing_criterion(nbar, r, theta, 0.5 * theta, u) == field_nonclassical(nbar, r, u));
        }
    }

    TEST_CASE("sign of Q_M(0)") {
        CHECK(q0_sign(0.2, 0.1, 0.3) == Sign::Positive);
        CHECK(q0_sign(1.0, 1.0, 12.0) == Sign::Negative);
        const auto root = boundary_critical_alpha(0.1, 0.2);
        REQUIRE(root.has_value());
        CHECK(q0_sign(0.1, 0.2, *root) == Sign::Zero);
        CHECK(mandel_q_zero(0.1, 0.2, *root) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK_FALSE(boundary_critical_alpha(0.2, 0.1).has_value());
    }

    TEST_CASE("behaviour taxonomy") {
        const Classification strict = classify_behavior(0.2, 0.1, 0.3);
        CHECK(strict.kind == BehaviorKind::StrictlyClassical);
        CHECK(strict.zeros.empty());

        const Classification mixed = classify_behavior(0.2, 0.1, 0.4);
        CHECK(mixed.kind == BehaviorKind::MixedTwoCrossings);
        REQUIRE(mixed.zeros.size() == 2);
        const auto q = mandel_curve(0.2, 0.1, 0.4);
        CHECK(std::abs(q(mixed.zeros[0])) < 1e-8);
        CHECK(std::abs(q(mixed.zeros[1])) < 1e-8);
        CHECK(q(0.5 * (mixed.zeros[0] + mixed.zeros[1])) < 0.0);

        const Classification negative = classify_behavior(1.0, 1.0, 12.0);
        CHECK(negative.kind == BehaviorKind::NegativeStartOneCrossing);
        CHECK(negative.zeros.size() == 1);
        CHECK(negative.q_at_zero < 0.0);

        const CriticalPointResult crit = find_critical_alpha(0.2, 0.1);
        const Classification tangent = classify_behavior(0.2, 0.1, crit.alpha_c);
        CHECK(tangent.kind == BehaviorKind::TangentCritical);
        REQUIRE(tangent.zeros.size() == 1);
        CHECK(tangent.zeros[0] == doctest::Approx(*crit.tangency_u).epsilon(1e-3));

        CHECK_THROWS_AS(mandel_curve(0.2, 0.0, 0.4), DomainError);
    }

    TEST_CASE("critical displacement for the three reference configurations") {
        const CriticalPointResult f1 = find_critical_alpha(0.2, 0.1);
        CHECK(f1.alpha_c == doctest::Approx(0.349366).epsilon(1e-5));
        CHECK(f1.mechanism == Mechanism::InteriorTangency);
        CHECK(std::abs(f1.min_q) < 1e-5);

        const CriticalPointResult f2 = find_critical_alpha(0.1, 0.2);
        CHECK(f2.alpha_c == doctest::Approx(0.496130).epsilon(1e-5));
        REQUIRE(f2.tangency_u.has_value());
        CHECK(*f2.tangency_u == doctest::Approx(0.2097).epsilon(5e-3));

        const CriticalPointResult f3 = find_critical_alpha(1.0, 1.0);
        CHECK(f3.mechanism == Mechanism::BoundaryQ0Zero);
        CHECK_FALSE(f3.tangency_u.has_value());
        CHECK(f3.alpha_c == doctest::Approx(*boundary_critical_alpha(1.0, 1.0)).epsilon(1e-6));
        CHECK(f3.alpha_c * f3.alpha_c == doctest::Approx(94.3616).epsilon(1e-5));
    }

    TEST_CASE("critical search failures are reported, not coerced") {
        CriticalOptions small_cap;
        small_cap.alpha_cap = 0.2;
        CHECK_THROWS_AS(find_critical_alpha(0.2, 0.1, small_cap), NoTransitionError);
        CHECK_THROWS_AS(find_critical_alpha(5.0, 0.01), MonotonicityError);
    }

    TEST_CASE("scalar solvers") {
        const CurveMinimum m = golden_section_min([](double x) { return (x - 1.3) * (x - 1.3) + 0.5; }, 0.0, 3.0);
        CHECK(m.u == doctest::Approx(1.3).epsilon(1e-6));
        CHECK(m.q == doctest::Approx(0.5));
        const double root = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
        CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }

    TEST_CASE("names") {
        CHECK(to_string(BehaviorKind::MixedTwoCrossings) == "MixedTwoCrossings");
        CHECK(to_string(Mechanism::BoundaryQ0Zero) == "BoundaryQ0Zero");
        CHECK(to_string(Sign::Zero) == "Zero");
    }
}
