#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dpa {

/// (2 nbar + 1) e^{-2(u + r)}: a regular P representation exists iff this is >= 1.
double p_factor(double nbar, double r, double u);

bool p_representation_exists(double nbar, double r, double u);
bool field_nonclassical(double nbar, double r, double u);

/// Quadrature narrower than the coherent-state value 1/2.
bool squeezing_criterion(double nbar, double r, double theta, double lambda, double u);

/// u beyond which an initially classical field is nonclassical; empty if already nonclassical at u = 0.
std::optional<double> crossover_time(double nbar, double r);

enum class Sign { Positive, Zero, Negative };

/// Sign of Q_M(0); |Q_M(0)| <= zero_tol counts as Zero.
Sign q0_sign(double nbar, double r, double alpha_mag, double zero_tol = 1e-5);

enum class BehaviorKind {
    StrictlyClassical,         // Q_M > 0 on the whole window
    TangentCritical,           // single tangent zero
    MixedTwoCrossings,         // Q_M(0) > 0, two crossings
    NegativeStartOneCrossing,  // Q_M(0) < 0, one crossing
    OutsideTaxonomy,           // any other zero pattern; reported, never coerced
};

struct Classification {
    BehaviorKind kind = BehaviorKind::StrictlyClassical;
    std::vector<double> zeros;  // ascending
    double q_at_zero = 0;       // Q_M(0)
};

struct ClassifyOptions {
    double u_max = 10.0;
    int scan_points = 4096;
    // A local minimum with |Q_M| below this is a tangency (merges the two crossings it may straddle).
    double tangency_tol = 1e-4;
    double zero_tol = 1e-10;
};

/// Q_M(u) under the alignment theta = phi = 0 (only theta - 2 phi matters).
/// Requires r > 0: with r = 0 the u axis is degenerate.
std::function<double(double)> mandel_curve(double nbar, double r, double alpha_mag);

Classification classify_behavior(double nbar, double r, double alpha_mag, const ClassifyOptions& opts = {});

enum class Mechanism { InteriorTangency, BoundaryQ0Zero };

struct CriticalPointResult {
    double alpha_c = 0;
    std::optional<double> tangency_u;
    Mechanism mechanism = Mechanism::InteriorTangency;
    double min_q = 0;  // min_u Q_M at alpha_c
};

struct CriticalOptions {
    double u_max = 10.0;
    int scan_points = 512;
    double alpha_tol = 1e-6;
    double alpha_cap = 1e3;
    double boundary_tol = 1e-6;
    int monotonicity_samples = 32;
};

struct CurveMinimum {
    double u = 0;
    double q = 0;
};

/// min over [0, u_max] of Q_M: scan seeded, golden-section refined.
CurveMinimum min_mandel(double nbar, double r, double alpha_mag, double u_max = 10.0, int scan_points = 512);

/// Smallest |alpha| at which min_u Q_M reaches 0.
CriticalPointResult find_critical_alpha(double nbar, double r, const CriticalOptions& opts = {});

/// Positive root of Q_M(0) = 0 in |alpha|, when (2nbar+1)e^{-2r} < 1.
std::optional<double> boundary_critical_alpha(double nbar, double r);

std::string to_string(BehaviorKind kind);
std::string to_string(Mechanism m);
std::string to_string(Sign s);

/// Golden-section minimiser on [lo, hi].
CurveMinimum golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

/// Bisection on a sign-changing bracket; stops when |f| <= ftol or the bracket collapses.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double ftol);

}  // namespace dpa
