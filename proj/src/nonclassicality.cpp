#include "dpa/nonclassicality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpa/core_model.hpp"
#include "dpa/errors.hpp"
#include "dpa/statistics.hpp"

namespace dpa {

double p_factor(double nbar, double r, double u) { return (2.0 * nbar + 1.0) * std::exp(-2.0 * (u + r)); }

bool p_representation_exists(double nbar, double r, double u) { return p_factor(nbar, r, u) >= 1.0; }

bool field_nonclassical(double nbar, double r, double u) { return !p_representation_exists(nbar, r, u); }

bool squeezing_criterion(double nbar, double r, double theta, double lambda, double u) {
    return quad_variance(nbar, r, theta, lambda, u) < 0.5;
}

std::optional<double> crossover_time(double nbar, double r) {
    const double f = p_factor(nbar, r, 0.0);
    if (f < 1.0) return std::nullopt;
    return 0.5 * std::log(f);
}

Sign q0_sign(double nbar, double r, double alpha_mag, double zero_tol) {
    const double q = mandel_q_zero(nbar, r, alpha_mag);
    if (std::abs(q) <= zero_tol) return Sign::Zero;
    return q > 0.0 ? Sign::Positive : Sign::Negative;
}

std::function<double(double)> mandel_curve(double nbar, double r, double alpha_mag) {
    if (!(r > 0.0)) {
        throw DomainError("mandel_curve: the u axis needs r > 0");
    }
    ModelParams params;
    params.nbar = nbar;
    params.squeeze_mag = r;
    params.alpha_mag = alpha_mag;
    params.validate();
    return [params](double u) { return mandel_q(evolved_state(params, DimensionlessTime(u))); };
}

CurveMinimum golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double ftol) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= ftol || mid <= lo || mid >= hi) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

std::vector<double> scan_grid(double u_max, int points) {
    if (points < 3) throw std::invalid_argument("scan needs at least 3 points");
    std::vector<double> u(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) u[static_cast<std::size_t>(i)] = u_max * i / (points - 1);
    return u;
}

}  // namespace

CurveMinimum min_mandel(double nbar, double r, double alpha_mag, double u_max, int scan_points) {
    const auto q = mandel_curve(nbar, r, alpha_mag);
    const auto u = scan_grid(u_max, scan_points);
    std::size_t best = 0;
    double best_q = q(u[0]);
    for (std::size_t i = 1; i < u.size(); ++i) {
        const double v = q(u[i]);
        if (v < best_q) {
            best_q = v;
            best = i;
        }
    }
    const double lo = best == 0 ? u[0] : u[best - 1];
    const double hi = best + 1 == u.size() ? u.back() : u[best + 1];
    CurveMinimum refined = golden_section_min(q, lo, hi);
    const double q0 = q(0.0);
    if (q0 <= refined.q) return {0.0, q0};
    return refined;
}

Classification classify_behavior(double nbar, double r, double alpha_mag, const ClassifyOptions& opts) {
    if (!(opts.u_max > 0.0)) throw std::invalid_argument("u_max > 0 violated");
    const auto q = mandel_curve(nbar, r, alpha_mag);
    const auto u = scan_grid(opts.u_max, opts.scan_points);
    std::vector<double> qs(u.size());
    std::transform(u.begin(), u.end(), qs.begin(), q);

    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (qs[i] == 0.0) {
            crossings.push_back(u[i]);
        } else if ((qs[i] < 0.0) != (qs[i + 1] < 0.0) && qs[i + 1] != 0.0) {
            crossings.push_back(bisect_root(q, u[i], u[i + 1], opts.zero_tol));
        }
    }

    std::vector<double> tangents;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        if (!(qs[i] <= qs[i - 1] && qs[i] <= qs[i + 1])) continue;
        const CurveMinimum m = golden_section_min(q, u[i - 1], u[i + 1]);
        if (std::abs(m.q) > opts.tangency_tol) continue;
        if (!tangents.empty() && std::abs(tangents.back() - m.u) < 2.0 * (u[1] - u[0])) continue;
        if (m.q < 0.0) {
            // Shallow dip: drop the pair of crossings around it.
            auto right = std::upper_bound(crossings.begin(), crossings.end(), m.u);
            if (right != crossings.begin() && right != crossings.end()) {
                crossings.erase(right - 1, right + 1);
            }
        }
        tangents.push_back(m.u);
    }

    Classification out;
    out.q_at_zero = qs.front();
    out.zeros = crossings;
    out.zeros.insert(out.zeros.end(), tangents.begin(), tangents.end());
    std::sort(out.zeros.begin(), out.zeros.end());

    const auto nc = crossings.size();
    const auto nt = tangents.size();
    out.kind = BehaviorKind::OutsideTaxonomy;
    if (out.q_at_zero > 0.0) {
        if (nc == 0 && nt == 0) out.kind = BehaviorKind::StrictlyClassical;
        else if (nc == 0 && nt == 1) out.kind = BehaviorKind::TangentCritical;
        else if (nc == 2 && nt == 0) out.kind = BehaviorKind::MixedTwoCrossings;
    } else if (out.q_at_zero < 0.0) {
        if (nc == 1 && nt == 0) out.kind = BehaviorKind::NegativeStartOneCrossing;
    }
    return out;
}

std::optional<double> boundary_critical_alpha(double nbar, double r) {
    const double gap = 1.0 - p_factor(nbar, r, 0.0);
    if (!(gap > 0.0)) return std::nullopt;
    const double k = nbar + 0.5;
    const double rhs = k * k * std::cosh(4.0 * r) - k * std::cosh(2.0 * r) + 0.25;
    return std::sqrt(rhs / gap);
}

CriticalPointResult find_critical_alpha(double nbar, double r, const CriticalOptions& opts) {
    if (!(r > 0.0)) {
        throw DomainError("find_critical_alpha: needs r > 0 (with r = 0 the u axis is degenerate and Q_M > 0)");
    }
    if (!(nbar >= 0.0)) throw std::invalid_argument("nbar >= 0 violated");
    if (!(opts.alpha_cap > 0.0)) throw std::invalid_argument("alpha_cap > 0 violated");
    auto m = [&](double a) { return min_mandel(nbar, r, a, opts.u_max, opts.scan_points).q; };

    double lo = 0.0;
    if (!(m(lo) > 0.0)) {
        throw MonotonicityError("min_u Q_M is not positive at |alpha| = 0");
    }
    double hi = std::min(1.0, opts.alpha_cap);
    while (m(hi) > 0.0) {
        if (hi >= opts.alpha_cap) {
            throw NoTransitionError("min_u Q_M stays positive for |alpha| up to " + std::to_string(opts.alpha_cap));
        }
        lo = hi;
        hi = std::min(2.0 * hi, opts.alpha_cap);
    }

    // The root is only meaningful if min_u Q_M decreases across the bracket.
    double prev = m(0.0);
    for (int i = 1; i <= opts.monotonicity_samples; ++i) {
        const double a = hi * i / opts.monotonicity_samples;
        const double cur = m(a);
        if (cur > prev + 1e-12 * std::max(1.0, std::abs(prev))) {
            throw MonotonicityError("min_u Q_M increases between |alpha| = " + std::to_string(hi * (i - 1) / opts.monotonicity_samples) +
                                    " and " + std::to_string(a));
        }
        prev = cur;
    }

    while (hi - lo > opts.alpha_tol) {
        const double mid = 0.5 * (lo + hi);
        if (m(mid) > 0.0) lo = mid;
        else hi = mid;
    }

    CriticalPointResult res;
    res.alpha_c = 0.5 * (lo + hi);
    const CurveMinimum at = min_mandel(nbar, r, res.alpha_c, opts.u_max, opts.scan_points);
    res.min_q = at.q;
    if (at.u <= opts.boundary_tol) {
        res.mechanism = Mechanism::BoundaryQ0Zero;
    } else {
        res.mechanism = Mechanism::InteriorTangency;
        res.tangency_u = at.u;
    }
    return res;
}

std::string to_string(BehaviorKind kind) {
    switch (kind) {
        case BehaviorKind::StrictlyClassical: return "StrictlyClassical";
        case BehaviorKind::TangentCritical: return "TangentCritical";
        case BehaviorKind::MixedTwoCrossings: return "MixedTwoCrossings";
        case BehaviorKind::NegativeStartOneCrossing: return "NegativeStartOneCrossing";
        case BehaviorKind::OutsideTaxonomy: return "OutsideTaxonomy";
    }
    return "?";
}

std::string to_string(Mechanism m) {
    return m == Mechanism::InteriorTangency ? "InteriorTangency" : "BoundaryQ0Zero";
}

std::string to_string(Sign s) {
    switch (s) {
        case Sign::Positive: return "Positive";
        case Sign::Zero: return "Zero";
        case Sign::Negative: return "Negative";
    }
    return "?";
}

}  // namespace dpa
