#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "dpa/core_model.hpp"
#include "dpa/quadrature.hpp"

// Brute-force references for the closed forms: truncated Fock-space states and a direct
// quadrature of the Wigner defining integral. Nothing here calls the wigner or statistics modules.
namespace dpa::oracle {

using FockMatrix = Eigen::MatrixXcd;
using FockVector = Eigen::VectorXcd;

FockMatrix annihilation(int dim);
FockMatrix creation(int dim);
FockMatrix number(int dim);

/// Tail weight of the Bose-Einstein distribution beyond the truncation, (nbar/(nbar+1))^dim.
double thermal_tail(double nbar, int dim);

/// Diagonal Boltzmann state; TruncationError if the discarded tail is >= 1e-12.
FockMatrix thermal_state(double nbar, int dim);

/// exp(-i H t) for Hermitian H, by eigendecomposition.
FockMatrix hermitian_expm(const FockMatrix& hamiltonian, double t);

/// max |B^dag B - 1| for the block B = U[rows < dim/2, cols < dim/(4 spread)]; small iff those columns
/// stay inside. spread >= 1 is the growth of photon number the generator causes (e^{2R} for a squeeze).
double interior_unitarity_residual(const FockMatrix& unitary, double spread = 1.0);

/// exp(alpha a^dag - alpha^* a); TruncationError if the interior residual exceeds 1e-8.
FockMatrix displacement_op(cplx alpha, int dim);
/// exp(-xi/2 a^dag^2 + xi^*/2 a^2); TruncationError if the interior residual exceeds 1e-8.
FockMatrix squeeze_op(cplx xi, int dim);

double trace_distance(const FockMatrix& rho, const FockMatrix& sigma);
cplx expectation(const FockMatrix& rho, const FockMatrix& op);

/// D(A) S((u+r)e^{i theta}) rho_0 S^dag D^dag at a fixed truncation.
FockMatrix build_rho_at_dim(const EvolvedState& state, int dim);

struct FockOptions {
    int max_dim = 600;
    double consistency_tol = 1e-8;
};

struct FockState {
    FockMatrix rho;
    int dim = 0;
    int work_dim = 0;  // truncation the operators were exponentiated at; rho is its top-left dim x dim block
};

/// Working truncation for a reported block of size dim: the extra levels absorb the edge error of truncated exponentials.
int padded_dim(int dim);

/// Starting truncation ceil(8 (nbar+1) e^{2(u+r)} (1 + |A|^2)) + 20.
int initial_dim(const EvolvedState& state);

/// Adaptive build: doubles N until the N x N blocks built at padded_dim(N) and padded_dim(N) + 20
/// agree entrywise to consistency_tol. max_dim bounds the working truncation.
FockState build_rho_evolved(const EvolvedState& state, const FockOptions& opts = {});
FockState build_rho_evolved(const ModelParams& params, double u, const FockOptions& opts = {});

/// Truncated H of the amplifier (hbar = 1, coefficients from hamiltonian_coeffs).
FockMatrix hamiltonian_matrix(const ModelParams& params, int dim);

/// exp(-i H T) rho_0 exp(i H T), T = total_time in the same units as prep_time.
FockMatrix evolve_via_hamiltonian(const ModelParams& params, double total_time, int dim);

/// S(R e^{i theta})|k> for k = 0..count-1 from the lowering relation (S a S^dag) S|k> = sqrt(k) S|k-1>,
/// with S|0> spanning the kernel of S a S^dag.
std::vector<FockVector> squeezed_number_states(double R, double theta, int count, int dim);

struct MomentOptions {
    int max_dim = 1 << 17;
    double consistency_tol = 1e-8;
    double edge_tol = 1e-14;
};

struct QuadratureMoments {
    double lambda = 0;
    double mean = 0;
    double variance = 0;
};

struct FockMoments {
    std::vector<QuadratureMoments> quadratures;
    double mean_n = 0;
    double var_n = 0;
    cplx mean_a;
    int dim = 0;
};

/// Moments of D(A) S rho_0 S^dag D^dag from the squeezed-number-state mixture, with the
/// displacement applied as the operator shift a -> a + A. Adaptive truncation as for build_rho_evolved.
FockMoments fock_moments(const EvolvedState& state, std::span<const double> lambdas, const MomentOptions& opts = {});

/// Same moments from a dense density matrix (cross-check of the vector route).
FockMoments dense_moments(const FockMatrix& rho, std::span<const double> lambdas);

struct WignerQuadSpec {
    double half_width_sigmas = 8.0;
    QuadSpec quad{1e-9, 4, 128};
};

/// W(beta) = pi^{-2} int chi(eta) e^{-|eta|^2/2} e^{-beta^* eta + beta eta^*} d^2 eta by tensor quadrature.
QuadResult numeric_wigner(const EvolvedState& state, cplx beta, const WignerQuadSpec& spec = {});
QuadResult numeric_wigner(const ModelParams& params, double u, cplx beta, const WignerQuadSpec& spec = {});

}  // namespace dpa::oracle
