#include "dpa/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dpa/errors.hpp"
#include "dpa/statistics.hpp"

namespace dpa {

namespace {

void guard_width(const EvolvedState& state) {
    if (!(state.eff_squeeze <= kMaxEffectiveSqueeze)) {
        throw DomainError("u + r = " + std::to_string(state.eff_squeeze) + " exceeds the Wigner width cap of 300");
    }
}

// cosh(2R) + c sinh(2R) without cancellation for c -> -1.
double hyper_mix(double R, double c) {
    return 0.5 * (1.0 + c) * std::exp(2.0 * R) + 0.5 * (1.0 - c) * std::exp(-2.0 * R);
}

}  // namespace

WignerCoeffs wigner_coeffs(const EvolvedState& state, cplx beta) {
    guard_width(state);
    const double k = state.nbar + 0.5;
    const cplx T = squeeze_T(state);
    const double S = squeeze_S(state);
    const cplx delta = state.displacement - beta;

    WignerCoeffs w;
    w.a_sq = k * (2.0 * T.real() + S);
    w.b_sq = -k * (2.0 * T.real() - S);
    w.c_coef = -4.0 * k * T.imag();
    w.d_coef = -2.0 * delta.imag();  // i(A - A^* - beta + beta^*)
    w.f_coef = 2.0 * delta.real();   // A + A^* - beta - beta^*
    return w;
}

double wigner_beta(const EvolvedState& state, cplx beta) {
    guard_width(state);
    // In the frame rotated by theta/2 the bilinear form is diagonal:
    // (a^2 f^2 + b^2 d^2 + c f d) / (4a^2b^2 - c^2) = (e^{2R} p^2 + e^{-2R} q^2) / k, p + iq = (A - beta) e^{-i theta/2}.
    const double k = state.nbar + 0.5;
    const double R = state.eff_squeeze;
    const cplx d = (state.displacement - beta) * std::polar(1.0, -0.5 * state.squeeze_phase);
    const double expo = (std::exp(2.0 * R) * d.real() * d.real() + std::exp(-2.0 * R) * d.imag() * d.imag()) / k;
    return std::exp(-expo) / (std::numbers::pi * k);
}

QuadFormCoeffs quad_form_coeffs(const EvolvedState& state, double lambda) {
    guard_width(state);
    const double k = state.nbar + 0.5;
    const double R = state.eff_squeeze;
    const double angle = state.squeeze_phase - 2.0 * lambda;
    const double c = std::cos(angle);

    QuadFormCoeffs q;
    q.eps_xx = 2.0 * k * hyper_mix(R, c);
    q.eps_pp = 2.0 * k * hyper_mix(R, -c);
    q.eps_xp = 4.0 * k * std::sin(angle) * std::sinh(2.0 * R);
    q.mean_x = quad_mean(state, lambda);
    q.mean_p = quad_mean(state, lambda + 0.5 * std::numbers::pi);
    q.lambda = lambda;
    return q;
}

double wigner_quadrature(const EvolvedState& state, double lambda, double x, double p) {
    const QuadFormCoeffs q = quad_form_coeffs(state, lambda);
    const double two_k = 2.0 * state.nbar + 1.0;
    return std::exp(-q.energy(x, p) / (two_k * two_k)) / (std::numbers::pi * two_k);
}

double marginal_quadrature_pdf(const EvolvedState& state, double lambda, double x) {
    guard_width(state);
    const double mean = quad_mean(state, lambda);
    const double var = quad_variance(state, lambda);
    const double dx = x - mean;
    return std::exp(-0.5 * dx * dx / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

cplx beta_from_quadratures(double lambda, double x, double p) {
    return cplx(x, p) * std::polar(1.0, lambda) / std::sqrt(2.0);
}

}  // namespace dpa
