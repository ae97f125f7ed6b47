#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dpa/core_model.hpp"
#include "dpa/errors.hpp"
#include "dpa/statistics.hpp"

using namespace dpa;

namespace {

ModelParams sample(double nbar, double r, double alpha, double theta = 0.0, double phi = 0.0) {
    return ModelParams{.alpha_mag = alpha, .alpha_phase = phi, .squeeze_mag = r, .squeeze_phase = theta, .nbar = nbar};
}

}  // namespace

TEST_SUITE("statistics") {
    TEST_CASE("quadrature variance extremes lie on the squeeze axes") {
        const double k = 0.7 + 0.5;
        const double R = 0.3 + 0.4;
        CHECK(quad_variance(0.7, 0.3, 1.2, 0.6, 0.4) == doctest::Approx(k * std::exp(-2.0 * R)).epsilon(1e-14));
        CHECK(quad_variance(0.7, 0.3, 1.2, 0.6 + 0.5 * std::numbers::pi, 0.4) ==
              doctest::Approx(k * std::exp(2.0 * R)).epsilon(1e-14));
    }

    TEST_CASE("quadrature variance ignores the displacement") {
        const EvolvedState a = evolved_state(sample(0.3, 0.2, 0.0, 0.4), DimensionlessTime(0.6));
        const EvolvedState b = evolved_state(sample(0.3, 0.2, 3.0, 0.4, 1.0), DimensionlessTime(0.6));
        for (double lambda : {0.0, 0.4, 1.3}) {
            CHECK(quad_variance(a, lambda) == doctest::Approx(quad_variance(b, lambda)).epsilon(1e-14));
            CHECK(quad_variance(b, lambda) == doctest::Approx(quad_variance(0.3, 0.2, 0.4, lambda, 0.6)).epsilon(1e-14));
        }
        const QuadratureStats qs = quadrature_stats(b, 0.4);
        CHECK(qs.mean == doctest::Approx(quad_mean(b, 0.4)));
        CHECK(qs.lambda == 0.4);
    }

    TEST_CASE("variance product respects the uncertainty floor") {
        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 2000; ++i) {
            const double nbar = 3.0 * unit(rng), r = 2.0 * unit(rng), u = 2.0 * unit(rng);
            const double theta = 7.0 * unit(rng), lambda = 7.0 * unit(rng);
            const double floor = (nbar + 0.5) * (nbar + 0.5);
            const double vp = variance_product(nbar, r, theta, lambda, u);
            CHECK(vp >= floor * (1.0 - 1e-14));
            const double direct = quad_variance(nbar, r, theta, lambda, u) *
                                  quad_variance(nbar, r, theta, lambda + 0.5 * std::numbers::pi, u);
            CHECK(vp == doctest::Approx(direct).epsilon(1e-10));
        }
    }

    TEST_CASE("SNR peaks at alignment and reduces to 4 e^{2r} |alpha|^2 for the vacuum at u = 0") {
        const ModelParams p = sample(0.4, 0.3, 1.1, 0.8, 0.4);
        for (double u : {0.0, 0.3, 1.0}) {
            const EvolvedState s = evolved_state(p, DimensionlessTime(u));
            CHECK(snr(s, 0.4) == doctest::Approx(snr_max(p, u)).epsilon(1e-12));
            CHECK(snr(s, 0.9) < snr_max(p, u));
        }
        CHECK(snr_max(sample(0.0, 0.5, 2.0), 0.0) == doctest::Approx(4.0 * std::exp(1.0) * 4.0).epsilon(1e-13));
        CHECK_THROWS_AS(snr_max(sample(0.0, 0.0, 2.0), 0.5), DomainError);
    }

    TEST_CASE("photon moments of limiting states") {
        const EvolvedState coherent = limit_r_zero_state(sample(0.0, 0.0, 1.7));
        CHECK(mean_photon(coherent) == doctest::Approx(1.7 * 1.7).epsilon(1e-14));
        CHECK(photon_variance(coherent) == doctest::Approx(1.7 * 1.7).epsilon(1e-14));
        CHECK(mandel_q(coherent) == doctest::Approx(0.0).epsilon(1e-12));

        const EvolvedState thermal = limit_r_zero_state(sample(0.8, 0.0, 0.0));
        CHECK(photon_variance(thermal) == doctest::Approx(0.8 * 0.8 + 0.8).epsilon(1e-14));
        CHECK(mandel_q(thermal) == doctest::Approx(0.8).epsilon(1e-12));

        // Squeezed vacuum: <n> = sinh^2 R, var = 2 sinh^2 R cosh^2 R.
        const EvolvedState sv = evolved_state(sample(0.0, 0.6, 0.0), DimensionlessTime(0.0));
        const double sh = std::sinh(0.6), ch = std::cosh(0.6);
        CHECK(mean_photon(sv) == doctest::Approx(sh * sh).epsilon(1e-13));
        CHECK(photon_variance(sv) == doctest::Approx(2.0 * sh * sh * ch * ch).epsilon(1e-13));
        const PhotonStats ps = photon_stats(sv);
        CHECK(ps.mean_n == doctest::Approx(sh * sh));
    }

    TEST_CASE("Mandel parameter of the vacuum is undefined") {
        const EvolvedState vacuum = limit_r_zero_state(sample(0.0, 0.0, 0.0));
        CHECK_THROWS_AS(mandel_q(vacuum), DomainError);
        CHECK_THROWS_AS(mandel_q_zero(0.0, 0.0, 0.0), DomainError);
    }

    TEST_CASE("closed-form Q_M(0) agrees with the general expression") {
        CHECK(mandel_q(evolved_state(sample(0.2, 0.1, 0.3), DimensionlessTime(0.0))) ==
              doctest::Approx(0.2593).epsilon(1e-4));
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 500; ++i) {
            const double nbar = 2.0 * unit(rng), r = 0.01 + 1.5 * unit(rng), alpha = 4.0 * unit(rng);
            const double theta = 6.0 * unit(rng);
            const double q = mandel_q(evolved_state(sample(nbar, r, alpha, theta, 0.5 * theta), DimensionlessTime(0.0)));
            CHECK(mandel_q_zero(nbar, r, alpha) == doctest::Approx(q).epsilon(1e-10));
        }
    }

    TEST_CASE("Q_M depends on the phases only through theta - 2 phi") {
        const double u = 0.7;
        const double q1 = mandel_q(evolved_state(sample(0.3, 0.2, 0.9, 0.4, 0.1), DimensionlessTime(u)));
        const double q2 = mandel_q(evolved_state(sample(0.3, 0.2, 0.9, 2.4, 1.1), DimensionlessTime(u)));
        CHECK(q1 == doctest::Approx(q2).epsilon(1e-12));
    }
}
