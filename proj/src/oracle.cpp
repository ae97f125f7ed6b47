#include "dpa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dpa/errors.hpp"

namespace dpa::oracle {

namespace {

constexpr double kThermalTailTol = 1e-12;
constexpr double kUnitarityTol = 1e-8;

void require_dim(int dim) {
    if (dim < 2) throw std::invalid_argument("Fock truncation must be >= 2");
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-9); }

}  // namespace

FockMatrix annihilation(int dim) {
    require_dim(dim);
    FockMatrix a = FockMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

FockMatrix creation(int dim) { return annihilation(dim).adjoint(); }

FockMatrix number(int dim) {
    require_dim(dim);
    FockMatrix n = FockMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

double thermal_tail(double nbar, int dim) {
    if (nbar == 0.0) return 0.0;
    return std::pow(nbar / (nbar + 1.0), dim);
}

FockMatrix thermal_state(double nbar, int dim) {
    require_dim(dim);
    if (nbar < 0.0) throw std::invalid_argument("nbar >= 0 violated");
    const double tail = thermal_tail(nbar, dim);
    if (tail >= kThermalTailTol) {
        throw TruncationError("thermal state with nbar = " + std::to_string(nbar) + " needs more than " +
                              std::to_string(dim) + " levels (tail weight " + std::to_string(tail) + ")");
    }
    FockMatrix rho = FockMatrix::Zero(dim, dim);
    const double q = nbar / (nbar + 1.0);
    double w = 1.0;
    double total = 0.0;
    for (int k = 0; k < dim; ++k) {
        rho(k, k) = w;
        total += w;
        w *= q;
    }
    return rho / total;
}

FockMatrix hermitian_expm(const FockMatrix& hamiltonian, double t) {
    Eigen::SelfAdjointEigenSolver<FockMatrix> es(hamiltonian);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::VectorXcd phases(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) phases(i) = std::polar(1.0, -lam(i) * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double interior_unitarity_residual(const FockMatrix& unitary, double spread) {
    if (!(spread >= 1.0)) throw std::invalid_argument("spread >= 1 violated");
    const Eigen::Index rows = unitary.rows() / 2;
    const auto wanted = static_cast<double>(unitary.cols()) / (4.0 * spread);
    const Eigen::Index cols = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(wanted));
    const FockMatrix block = unitary.topLeftCorner(rows, cols);
    const FockMatrix gram = block.adjoint() * block - FockMatrix::Identity(cols, cols);
    return gram.cwiseAbs().maxCoeff();
}

namespace {

FockMatrix gated_exp(const FockMatrix& generator, double spread, const char* what) {
    // exp(G) with G anti-Hermitian: H = iG is Hermitian and exp(G) = exp(-iH).
    const cplx i{0.0, 1.0};
    FockMatrix h = i * generator;
    h = 0.5 * (h + h.adjoint()).eval();
    FockMatrix u = hermitian_expm(h, 1.0);
    const double res = interior_unitarity_residual(u, spread);
    if (res > kUnitarityTol) {
        throw TruncationError(std::string(what) + ": interior unitarity residual " + std::to_string(res) +
                              " at N = " + std::to_string(generator.rows()) + "; increase the truncation");
    }
    return u;
}

}  // namespace

FockMatrix displacement_op(cplx alpha, int dim) {
    const FockMatrix a = annihilation(dim);
    return gated_exp(alpha * a.adjoint() - std::conj(alpha) * a, 1.0, "displacement_op");
}

FockMatrix squeeze_op(cplx xi, int dim) {
    const FockMatrix a = annihilation(dim);
    const FockMatrix a2 = a * a;
    return gated_exp(-0.5 * xi * a2.adjoint() + 0.5 * std::conj(xi) * a2, std::exp(2.0 * std::abs(xi)),
                     "squeeze_op");
}

double trace_distance(const FockMatrix& rho, const FockMatrix& sigma) {
    FockMatrix diff = rho - sigma;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<FockMatrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

cplx expectation(const FockMatrix& rho, const FockMatrix& op) { return (rho * op).trace(); }

FockMatrix build_rho_at_dim(const EvolvedState& state, int dim) {
    const FockMatrix rho0 = thermal_state(state.nbar, dim);
    const FockMatrix s = squeeze_op(std::polar(state.eff_squeeze, state.squeeze_phase), dim);
    const FockMatrix d = displacement_op(state.displacement, dim);
    const FockMatrix ds = d * s;
    return ds * rho0 * ds.adjoint();
}

int initial_dim(const EvolvedState& state) {
    const double est =
        8.0 * (state.nbar + 1.0) * std::exp(2.0 * state.eff_squeeze) * (1.0 + std::norm(state.displacement));
    if (!(est < 1e9)) return std::numeric_limits<int>::max();
    return static_cast<int>(std::ceil(est)) + 20;
}

int padded_dim(int dim) { return dim + dim / 2 + 20; }

FockState build_rho_evolved(const EvolvedState& state, const FockOptions& opts) {
    int dim = initial_dim(state);
    while (dim < opts.max_dim && padded_dim(dim) + 20 <= opts.max_dim) {
        const int work = padded_dim(dim);
        try {
            FockMatrix rho = build_rho_at_dim(state, work).topLeftCorner(dim, dim);
            const FockMatrix wider = build_rho_at_dim(state, work + 20);
            const double gap = (wider.topLeftCorner(dim, dim) - rho).cwiseAbs().maxCoeff();
            if (gap <= opts.consistency_tol) return {std::move(rho), dim, work};
        } catch (const TruncationError&) {
            // fall through to a larger truncation
        }
        dim *= 2;
    }
    throw TruncationError("build_rho_evolved: no truncation up to max_dim = " + std::to_string(opts.max_dim) +
                          " passes the N vs N+20 check (started at " + std::to_string(initial_dim(state)) + ")");
}

FockState build_rho_evolved(const ModelParams& params, double u, const FockOptions& opts) {
    return build_rho_evolved(evolved_state(params, DimensionlessTime(u)), opts);
}

FockMatrix hamiltonian_matrix(const ModelParams& params, int dim) {
    const HamiltonianCoeffs h = hamiltonian_coeffs(params);
    const FockMatrix a = annihilation(dim);
    const FockMatrix ad = a.adjoint();
    FockMatrix H = h.c_coeff * ad * ad + std::conj(h.c_coeff) * a * a + h.b_coeff * a + std::conj(h.b_coeff) * ad;
    return 0.5 * (H + H.adjoint());
}

FockMatrix evolve_via_hamiltonian(const ModelParams& params, double total_time, int dim) {
    if (!(total_time >= 0.0)) throw std::invalid_argument("total_time >= 0 violated");
    const FockMatrix rho0 = thermal_state(params.nbar, dim);
    const FockMatrix u = hermitian_expm(hamiltonian_matrix(params, dim), total_time);
    return u * rho0 * u.adjoint();
}

std::vector<FockVector> squeezed_number_states(double R, double theta, int count, int dim) {
    require_dim(dim);
    const double ch = std::cosh(R);
    const double sh = std::sinh(R);
    const cplx up = std::polar(1.0, theta) * sh;

    // L = S a S^dag = a cosh R + a^dag e^{i theta} sinh R annihilates S|0> and lowers S|k> to sqrt(k) S|k-1>.
    // Solving L psi_k = sqrt(k) psi_{k-1} by forward substitution in n is stable: the homogeneous
    // part contracts by tanh R every two levels.
    auto solve_lowered = [&](const FockVector& rhs, double scale, FockVector& psi) {
        for (int n = 0; n + 1 < dim; ++n) {
            cplx v = scale * rhs(n);
            if (n >= 1) v -= std::sqrt(static_cast<double>(n)) * up * psi(n - 1);
            psi(n + 1) = v / (std::sqrt(static_cast<double>(n + 1)) * ch);
        }
    };

    std::vector<FockVector> out;
    out.reserve(static_cast<std::size_t>(count));
    FockVector vac = FockVector::Zero(dim);
    vac(0) = 1.0 / std::sqrt(ch);
    solve_lowered(FockVector::Zero(dim), 0.0, vac);
    out.push_back(vac);
    for (int k = 1; k < count; ++k) {
        FockVector psi = FockVector::Zero(dim);
        solve_lowered(out.back(), std::sqrt(static_cast<double>(k)), psi);
        if (k % 2 == 0) {
            // Even sector: the kernel direction S|0> is fixed by <0|k> = 0.
            psi -= (vac.dot(psi) / vac.squaredNorm()) * vac;
        }
        out.push_back(std::move(psi));
    }
    return out;
}

namespace {

// b = a + shift on a vector; the result is one entry shorter in support, same length.
FockVector lower(const FockVector& v, cplx shift) {
    const Eigen::Index n = v.size();
    FockVector out = shift * v;
    for (Eigen::Index k = 0; k + 1 < n; ++k) out(k) += std::sqrt(static_cast<double>(k + 1)) * v(k + 1);
    return out;
}

// b^dag = a^dag + shift^*; the top level is dropped (edge weight is gated separately).
FockVector raise(const FockVector& v, cplx shift) {
    const Eigen::Index n = v.size();
    FockVector out = std::conj(shift) * v;
    for (Eigen::Index k = 1; k < n; ++k) out(k) += std::sqrt(static_cast<double>(k)) * v(k - 1);
    return out;
}

struct RawMoments {
    FockMoments m;
    double edge_weight = 0;
};

RawMoments moments_at(const EvolvedState& state, std::span<const double> lambdas, int dim) {
    const double nbar = state.nbar;
    const double q = nbar / (nbar + 1.0);
    int count = 1;
    if (nbar > 0.0) {
        count = static_cast<int>(std::ceil(std::log(1e-17) / std::log(q))) + 1;
        count = std::max(count, 1);
    }
    // Pad so raising never loses support that the edge gate would not see.
    const int padded = dim + 2;
    const auto psis = squeezed_number_states(state.eff_squeeze, state.squeeze_phase, count, padded);
    const cplx A = state.displacement;

    std::vector<double> weights(static_cast<std::size_t>(count));
    double w = 1.0 / (nbar + 1.0);
    double wsum = 0.0;
    for (auto& x : weights) {
        x = w;
        wsum += w;
        w *= q;
    }
    for (auto& x : weights) x /= wsum;

    RawMoments out;
    FockMoments& m = out.m;
    m.dim = dim;
    double n1 = 0.0;
    std::vector<double> x1(lambdas.size(), 0.0);
    for (int k = 0; k < count; ++k) {
        FockVector psi = psis[static_cast<std::size_t>(k)];
        psi.tail(2).setZero();
        const double wk = weights[static_cast<std::size_t>(k)];
        out.edge_weight += wk * psi.segment(dim - 20, 20).squaredNorm();
        const FockVector b = lower(psi, A);
        m.mean_a += wk * psi.dot(b);
        n1 += wk * b.squaredNorm();
    }
    m.mean_n = n1;
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
        x1[l] = std::sqrt(2.0) * std::real(m.mean_a * std::polar(1.0, -lambdas[l]));
    }

    // Central second moments in a second pass.
    double vn = 0.0;
    std::vector<double> vx(lambdas.size(), 0.0);
    for (int k = 0; k < count; ++k) {
        FockVector psi = psis[static_cast<std::size_t>(k)];
        psi.tail(2).setZero();
        const double wk = weights[static_cast<std::size_t>(k)];
        const FockVector b = lower(psi, A);
        const FockVector nb = raise(b, A);
        vn += wk * (nb - m.mean_n * psi).squaredNorm();
        const FockVector bd = raise(psi, A);
        for (std::size_t l = 0; l < lambdas.size(); ++l) {
            const cplx e = std::polar(1.0, -lambdas[l]);
            const FockVector xpsi = (e * b + std::conj(e) * bd) / std::sqrt(2.0) - x1[l] * psi;
            vx[l] += wk * xpsi.squaredNorm();
        }
    }
    m.var_n = vn;
    for (std::size_t l = 0; l < lambdas.size(); ++l) m.quadratures.push_back({lambdas[l], x1[l], vx[l]});
    return out;
}

bool moments_agree(const FockMoments& a, const FockMoments& b, double tol) {
    if (rel_diff(a.mean_n, b.mean_n) > tol || rel_diff(a.var_n, b.var_n) > tol) return false;
    for (std::size_t i = 0; i < a.quadratures.size(); ++i) {
        if (rel_diff(a.quadratures[i].mean, b.quadratures[i].mean) > tol) return false;
        if (rel_diff(a.quadratures[i].variance, b.quadratures[i].variance) > tol) return false;
    }
    return true;
}

}  // namespace

FockMoments fock_moments(const EvolvedState& state, std::span<const double> lambdas, const MomentOptions& opts) {
    const double start = 8.0 * (state.nbar + 1.0) * std::exp(2.0 * state.eff_squeeze);
    if (!(start < static_cast<double>(opts.max_dim))) {
        throw TruncationError("fock_moments: starting truncation " + std::to_string(start) + " exceeds max_dim = " +
                              std::to_string(opts.max_dim));
    }
    int dim = static_cast<int>(std::ceil(start)) + 20;
    while (dim + 20 <= opts.max_dim) {
        const RawMoments here = moments_at(state, lambdas, dim);
        const RawMoments wider = moments_at(state, lambdas, dim + 20);
        if (here.edge_weight < opts.edge_tol && moments_agree(here.m, wider.m, opts.consistency_tol)) {
            return here.m;
        }
        if (dim > opts.max_dim / 2) break;
        dim *= 2;
    }
    throw TruncationError("fock_moments: no truncation up to max_dim = " + std::to_string(opts.max_dim) +
                          " passes the edge-weight and N vs N+20 checks");
}

FockMoments dense_moments(const FockMatrix& rho, std::span<const double> lambdas) {
    const int dim = static_cast<int>(rho.rows());
    const FockMatrix a = annihilation(dim);
    const FockMatrix ad = a.adjoint();
    const FockMatrix n = ad * a;
    FockMoments m;
    m.dim = dim;
    m.mean_a = expectation(rho, a);
    m.mean_n = expectation(rho, n).real();
    m.var_n = expectation(rho, n * n).real() - m.mean_n * m.mean_n;
    for (double lam : lambdas) {
        const cplx e = std::polar(1.0, -lam);
        const FockMatrix x = (e * a + std::conj(e) * ad) / std::sqrt(2.0);
        const double mean = expectation(rho, x).real();
        const double var = expectation(rho, x * x).real() - mean * mean;
        m.quadratures.push_back({lam, mean, var});
    }
    return m;
}

QuadResult numeric_wigner(const EvolvedState& state, cplx beta, const WignerQuadSpec& spec) {
    const double k = state.nbar + 0.5;
    const double R = state.eff_squeeze;
    // Integrate in the frame eta = e^{i theta/2}(s + i t): the Gaussian factor of chi is axis aligned
    // there with widths e^{-+R} / sqrt(2k).
    const double hs = spec.half_width_sigmas * std::exp(-R) / std::sqrt(2.0 * k);
    const double ht = spec.half_width_sigmas * std::exp(R) / std::sqrt(2.0 * k);
    const cplx rot = std::polar(1.0, 0.5 * state.squeeze_phase);
    auto integrand = [&](double s, double t) {
        const cplx eta = rot * cplx(s, t);
        const cplx kernel = std::exp(-std::conj(beta) * eta + beta * std::conj(eta));
        return std::real(symmetric_char_fn(state, eta) * kernel);
    };
    QuadResult res = integrate_2d(integrand, -hs, hs, -ht, ht, spec.quad);
    const double scale = 1.0 / (std::numbers::pi * std::numbers::pi);
    res.value *= scale;
    res.error *= scale;
    return res;
}

QuadResult numeric_wigner(const ModelParams& params, double u, cplx beta, const WignerQuadSpec& spec) {
    return numeric_wigner(state_at(params, u), beta, spec);
}

}  // namespace dpa::oracle
