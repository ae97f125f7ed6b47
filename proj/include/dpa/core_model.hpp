#pragma once

#include <complex>

namespace dpa {

using cplx = std::complex<double>;

/// Physical inputs of one experiment: a thermal state of occupation nbar is driven by the
/// degenerate parametric amplifier for the preparation time into D(alpha)S(xi) rho_0 S(-xi)D(-alpha),
/// with alpha = alpha_mag e^{i alpha_phase} and xi = squeeze_mag e^{i squeeze_phase}.
struct ModelParams {
    double alpha_mag = 0.0;
    double alpha_phase = 0.0;
    double squeeze_mag = 0.0;
    double squeeze_phase = 0.0;
    double nbar = 0.0;
    double prep_time = 1.0;

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;

    cplx alpha() const { return std::polar(alpha_mag, alpha_phase); }
    cplx xi() const { return std::polar(squeeze_mag, squeeze_phase); }

    /// Omega = r / t, so that Omega t = r.
    double rate() const { return squeeze_mag / prep_time; }
};

/// u = Omega tau, the time coordinate of every sweep.
class DimensionlessTime {
  public:
    explicit DimensionlessTime(double u);
    double value() const { return u_; }

  private:
    double u_;
};

/// Displaced-squeezed thermal state reached at time t + tau. Everything observable is a
/// function of these four numbers.
struct EvolvedState {
    cplx displacement;        // A(tau)
    double eff_squeeze = 0;   // Omega tau + r
    double squeeze_phase = 0; // theta
    double nbar = 0;
};

/// Coefficients of H = c a^dag^2 + c^* a^2 + b a + b^* a^dag with hbar = 1, in units of 1/prep_time.
struct HamiltonianCoeffs {
    cplx c_coeff;
    cplx b_coeff;
};

cplx displacement_amplitude(const ModelParams& params, DimensionlessTime u);

/// Combined r -> 0 limit (Omega = r/t -> 0) of A(tau) at s = tau / t. Equals alpha (1 + s).
cplx limit_r_zero_displacement(const ModelParams& params, double s);

cplx squeeze_T(const ModelParams& params, DimensionlessTime u);
double squeeze_S(const ModelParams& params, DimensionlessTime u);

/// T and S as functions of the state alone.
cplx squeeze_T(const EvolvedState& state);
double squeeze_S(const EvolvedState& state);

/// Normally ordered characteristic function Tr[rho e^{eta a^dag} e^{-eta^* a}].
cplx char_fn(const ModelParams& params, DimensionlessTime u, cplx eta);
cplx char_fn(const EvolvedState& state, cplx eta);

/// Symmetric characteristic function Tr[rho D(eta)] = char_fn * e^{-|eta|^2/2}.
cplx symmetric_char_fn(const EvolvedState& state, cplx eta);

HamiltonianCoeffs hamiltonian_coeffs(const ModelParams& params);

EvolvedState evolved_state(const ModelParams& params, DimensionlessTime u);

/// r = 0 reference state at s = tau/t: displaced thermal, centred at alpha (1 + s).
EvolvedState limit_r_zero_state(const ModelParams& params, double s = 0.0);

/// State at u, dispatching to the r = 0 limit when squeeze_mag == 0 (only u = 0 is meaningful there).
EvolvedState state_at(const ModelParams& params, double u);

}  // namespace dpa
