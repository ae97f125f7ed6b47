#pragma once

#include "dpa/core_model.hpp"

namespace dpa {

struct QuadratureStats {
    double mean = 0;
    double variance = 0;
    double lambda = 0;
};

struct PhotonStats {
    double mean_n = 0;
    double var_n = 0;
};

/// <x_lambda> with x_lambda = (a e^{-i lambda} + a^dag e^{i lambda}) / sqrt 2.
double quad_mean(const EvolvedState& state, double lambda);

/// Quadrature variance. Independent of the displacement.
double quad_variance(double nbar, double r, double theta, double lambda, double u);
double quad_variance(const EvolvedState& state, double lambda);

QuadratureStats quadrature_stats(const EvolvedState& state, double lambda);

/// Delta x_lambda^2 * Delta x_{lambda+pi/2}^2; bounded below by (nbar + 1/2)^2.
double variance_product(double nbar, double r, double theta, double lambda, double u);

double snr(const EvolvedState& state, double lambda);

/// Signal-to-noise ratio at the alignment phi = lambda = theta/2.
double snr_max(const ModelParams& params, double u);

double mean_photon(const EvolvedState& state);
double photon_variance(const EvolvedState& state);
PhotonStats photon_stats(const EvolvedState& state);

/// Mandel Q = (Delta n^2 - <n>) / <n>. Throws DomainError for the vacuum.
double mandel_q(const EvolvedState& state);

/// Closed form of Q_M at tau = 0 under the alignment phi = theta/2.
double mandel_q_zero(double nbar, double r, double alpha_mag);

}  // namespace dpa
