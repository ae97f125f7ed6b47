#include "dpa/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dpa/errors.hpp"

namespace dpa {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

void require_squeezed(const ModelParams& params, const char* op) {
    if (params.squeeze_mag <= 0.0) {
        throw DomainError(std::string(op) + ": requires squeeze_mag > 0 (coth(r/2) is singular at r = 0)");
    }
}

}  // namespace

void ModelParams::validate() const {
    require_finite(alpha_mag, "alpha_mag");
    require_finite(alpha_phase, "alpha_phase");
    require_finite(squeeze_mag, "squeeze_mag");
    require_finite(squeeze_phase, "squeeze_phase");
    require_finite(nbar, "nbar");
    require_finite(prep_time, "prep_time");
    if (alpha_mag < 0.0) throw std::invalid_argument("alpha_mag >= 0 violated");
    if (squeeze_mag < 0.0) throw std::invalid_argument("squeeze_mag >= 0 violated");
    if (nbar < 0.0) throw std::invalid_argument("nbar >= 0 violated");
    if (prep_time <= 0.0) throw std::invalid_argument("prep_time > 0 violated");
}

DimensionlessTime::DimensionlessTime(double u) : u_(u) {
    if (!(u >= 0.0) || !std::isfinite(u)) {
        throw std::invalid_argument("dimensionless time u >= 0 violated");
    }
}

cplx displacement_amplitude(const ModelParams& params, DimensionlessTime time) {
    params.validate();
    require_squeezed(params, "displacement_amplitude");
    const double u = time.value();
    const double ch = std::cosh(u);
    const double sh = std::sinh(u);
    const double coth_half = 1.0 / std::tanh(0.5 * params.squeeze_mag);
    const cplx rot = std::polar(1.0, params.squeeze_phase - 2.0 * params.alpha_phase);

    const double direct = ch + 0.5 * coth_half * sh - 0.5 * (ch - 1.0);
    const double mixed = -0.5 * sh - 0.5 * coth_half * (ch - 1.0);
    return params.alpha() * (direct + rot * mixed);
}

cplx limit_r_zero_displacement(const ModelParams& params, double s) {
    params.validate();
    if (params.squeeze_mag != 0.0) {
        throw DomainError("limit_r_zero_displacement: requires squeeze_mag == 0");
    }
    if (!(s >= 0.0)) throw std::invalid_argument("s = tau/t >= 0 violated");
    return params.alpha() * (1.0 + s);
}

cplx squeeze_T(const EvolvedState& state) {
    return 0.5 * std::polar(1.0, state.squeeze_phase) * std::sinh(2.0 * state.eff_squeeze);
}

double squeeze_S(const EvolvedState& state) { return std::cosh(2.0 * state.eff_squeeze); }

cplx squeeze_T(const ModelParams& params, DimensionlessTime u) {
    return 0.5 * std::polar(1.0, params.squeeze_phase) * std::sinh(2.0 * (u.value() + params.squeeze_mag));
}

double squeeze_S(const ModelParams& params, DimensionlessTime u) {
    return std::cosh(2.0 * (u.value() + params.squeeze_mag));
}

cplx char_fn(const EvolvedState& state, cplx eta) {
    const double eta_sq = std::norm(eta);
    const cplx T = squeeze_T(state);
    const double S = squeeze_S(state);
    // eta^2 T^* + eta^*^2 T is 2 Re(eta^2 T^*).
    const double xi_sq = 2.0 * std::real(eta * eta * std::conj(T)) + eta_sq * S;
    const cplx A = state.displacement;
    const cplx shift = eta * std::conj(A) - std::conj(eta) * A;
    return std::exp(0.5 * eta_sq + shift - (state.nbar + 0.5) * xi_sq);
}

cplx symmetric_char_fn(const EvolvedState& state, cplx eta) {
    return char_fn(state, eta) * std::exp(-0.5 * std::norm(eta));
}

cplx char_fn(const ModelParams& params, DimensionlessTime u, cplx eta) {
    return char_fn(evolved_state(params, u), eta);
}

HamiltonianCoeffs hamiltonian_coeffs(const ModelParams& params) {
    params.validate();
    const double r = params.squeeze_mag;
    const double t = params.prep_time;
    const cplx i{0.0, 1.0};
    if (r == 0.0) {
        if (params.alpha_mag != 0.0) {
            throw DomainError("hamiltonian_coeffs: r = 0 with alpha != 0 has no finite drive (coth(r/2) diverges)");
        }
        return {};
    }
    const cplx alpha = params.alpha();
    HamiltonianCoeffs h;
    h.c_coeff = -i * 0.5 * (r / t) * std::polar(1.0, params.squeeze_phase);
    h.b_coeff = -i * (0.5 / t) * (alpha * std::polar(1.0, -params.squeeze_phase) + std::conj(alpha) / std::tanh(0.5 * r)) * r;
    return h;
}

EvolvedState evolved_state(const ModelParams& params, DimensionlessTime u) {
    return EvolvedState{displacement_amplitude(params, u), u.value() + params.squeeze_mag, params.squeeze_phase,
                        params.nbar};
}

EvolvedState limit_r_zero_state(const ModelParams& params, double s) {
    return EvolvedState{limit_r_zero_displacement(params, s), 0.0, params.squeeze_phase, params.nbar};
}

EvolvedState state_at(const ModelParams& params, double u) {
    params.validate();
    if (params.squeeze_mag == 0.0) {
        if (u != 0.0) {
            throw DomainError("u = Omega tau is identically 0 when r = 0; use the r -> 0 limit in s = tau/t");
        }
        return limit_r_zero_state(params, 0.0);
    }
    return evolved_state(params, DimensionlessTime(u));
}

}  // namespace dpa
