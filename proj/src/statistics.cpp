#include "dpa/statistics.hpp"

#include <cmath>

#include "dpa/errors.hpp"

namespace dpa {

double quad_mean(const EvolvedState& state, double lambda) {
    return std::sqrt(2.0) * std::real(state.displacement * std::polar(1.0, -lambda));
}

double quad_variance(double nbar, double r, double theta, double lambda, double u) {
    const double R = u + r;
    const double s = std::sin(lambda - 0.5 * theta);
    const double c = std::cos(lambda - 0.5 * theta);
    return (nbar + 0.5) * (std::exp(2.0 * R) * s * s + std::exp(-2.0 * R) * c * c);
}

double quad_variance(const EvolvedState& state, double lambda) {
    return quad_variance(state.nbar, state.eff_squeeze, state.squeeze_phase, lambda, 0.0);
}

QuadratureStats quadrature_stats(const EvolvedState& state, double lambda) {
    return {quad_mean(state, lambda), quad_variance(state, lambda), lambda};
}

double variance_product(double nbar, double r, double theta, double lambda, double u) {
    // cosh^2 - cos^2 sinh^2 rewritten as 1 + sin^2 sinh^2: no cancellation at large u + r.
    const double k = nbar + 0.5;
    const double sh = std::sinh(2.0 * (u + r));
    const double sn = std::sin(theta - 2.0 * lambda);
    return k * k * (1.0 + sn * sn * sh * sh);
}

double snr(const EvolvedState& state, double lambda) {
    const double m = quad_mean(state, lambda);
    return m * m / quad_variance(state, lambda);
}

double snr_max(const ModelParams& params, double u) {
    params.validate();
    if (!(u >= 0.0)) throw std::invalid_argument("u >= 0 violated");
    const double decay = std::exp(-u);
    double bracket = 1.0 + decay;
    if (u > 0.0) {
        if (params.squeeze_mag <= 0.0) {
            throw DomainError("snr_max: u > 0 requires squeeze_mag > 0");
        }
        bracket += (1.0 - decay) / std::tanh(0.5 * params.squeeze_mag);
    }
    const double a2 = params.alpha_mag * params.alpha_mag;
    return a2 * bracket * bracket / ((2.0 * params.nbar + 1.0) * std::exp(-2.0 * (u + params.squeeze_mag)));
}

double mean_photon(const EvolvedState& state) {
    const double k = state.nbar + 0.5;
    return k * std::cosh(2.0 * state.eff_squeeze) + std::norm(state.displacement) - 0.5;
}

double photon_variance(const EvolvedState& state) {
    const double k = state.nbar + 0.5;
    const double R = state.eff_squeeze;
    const cplx A = state.displacement;
    // e^{i theta} A^*^2 + e^{-i theta} A^2 == 2 Re(e^{-i theta} A^2)
    const double phase_term = 2.0 * std::real(std::polar(1.0, -state.squeeze_phase) * A * A);
    return k * k * std::cosh(4.0 * R) +
           k * (2.0 * std::cosh(2.0 * R) * std::norm(A) - std::sinh(2.0 * R) * phase_term) - 0.25;
}

PhotonStats photon_stats(const EvolvedState& state) { return {mean_photon(state), photon_variance(state)}; }

double mandel_q(const EvolvedState& state) {
    const double n = mean_photon(state);
    if (!(n > 0.0)) {
        throw DomainError("mandel_q: undefined for the vacuum (<n> = 0)");
    }
    return (photon_variance(state) - n) / n;
}

double mandel_q_zero(double nbar, double r, double alpha_mag) {
    const double k = nbar + 0.5;
    const double a2 = alpha_mag * alpha_mag;
    const double den = k * std::cosh(2.0 * r) + a2 - 0.5;
    if (!(den > 0.0)) {
        throw DomainError("mandel_q_zero: undefined for the vacuum (<n> = 0)");
    }
    const double num = k * k * std::cosh(4.0 * r) + ((2.0 * nbar + 1.0) * std::exp(-2.0 * r) - 1.0) * a2 -
                       k * std::cosh(2.0 * r) + 0.25;
    return num / den;
}

}  // namespace dpa
