#pragma once

#include "dpa/core_model.hpp"

namespace dpa {

/// Gaussian-exponent quantities of the complex-beta Wigner density. c_coef is stored real:
/// -2i(nbar+1/2)(T^* - T) = -4(nbar+1/2) Im T.
struct WignerCoeffs {
    double a_sq = 0;
    double b_sq = 0;
    double c_coef = 0;
    double d_coef = 0;
    double f_coef = 0;

    /// 4 a^2 b^2 - c^2, analytically 4 (nbar + 1/2)^2.
    double discriminant() const { return 4.0 * a_sq * b_sq - c_coef * c_coef; }
    /// a^2 f^2 + b^2 d^2 + c f d.
    double bilinear() const { return a_sq * f_coef * f_coef + b_sq * d_coef * d_coef + c_coef * f_coef * d_coef; }
};

/// Quadratic form of the quadrature Wigner exponent, E = eps_xx dx^2 + eps_pp dp^2 + eps_xp dx dp
/// in the centred variables dx = x_lambda - mean_x, dp = x_{lambda+pi/2} - mean_p.
/// The 2x2 form has eigenvalues (2 nbar + 1) e^{+-2(u+r)}; W(x, p) = exp(-E/(2nbar+1)^2) / (pi (2nbar+1)),
/// whose covariance eigenvalues are (nbar + 1/2) e^{-+2(u+r)}.
struct QuadFormCoeffs {
    double eps_xx = 0;
    double eps_pp = 0;
    double eps_xp = 0;
    double mean_x = 0;
    double mean_p = 0;
    double lambda = 0;

    double energy(double x, double p) const {
        const double dx = x - mean_x;
        const double dp = p - mean_p;
        return eps_xx * dx * dx + eps_pp * dp * dp + eps_xp * dx * dp;
    }
};

/// Largest u + r accepted by the Wigner evaluators.
inline constexpr double kMaxEffectiveSqueeze = 300.0;

WignerCoeffs wigner_coeffs(const EvolvedState& state, cplx beta);

/// Wigner density over the complex plane, normalised against d^2 beta = dRe(beta) dIm(beta).
double wigner_beta(const EvolvedState& state, cplx beta);

QuadFormCoeffs quad_form_coeffs(const EvolvedState& state, double lambda);

/// Wigner density over (x_lambda, x_{lambda+pi/2}), normalised against dx dp.
double wigner_quadrature(const EvolvedState& state, double lambda, double x, double p);

/// Density of x_lambda alone: normal with the quadrature mean and variance.
double marginal_quadrature_pdf(const EvolvedState& state, double lambda, double x);

/// beta for given quadrature coordinates.
cplx beta_from_quadratures(double lambda, double x, double p);

}  // namespace dpa
