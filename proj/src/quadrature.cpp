#include "dpa/quadrature.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <vector>

namespace dpa {

namespace {

constexpr unsigned kOrder = 20;

struct Rule {
    std::array<double, kOrder> x{};
    std::array<double, kOrder> w{};
};

const Rule& rule() {
    static const Rule r = [] {
        using G = boost::math::quadrature::gauss<double, kOrder>;
        const auto& ab = G::abscissa();
        const auto& wt = G::weights();
        Rule out;
        // Boost stores the nonnegative half; kOrder is even so there is no zero node.
        for (std::size_t i = 0; i < ab.size(); ++i) {
            out.x[2 * i] = -ab[i];
            out.w[2 * i] = wt[i];
            out.x[2 * i + 1] = ab[i];
            out.w[2 * i + 1] = wt[i];
        }
        return out;
    }();
    return r;
}

// Nodes and weights of the composite rule on [a, b] with n panels.
void composite(double a, double b, int panels, std::vector<double>& nodes, std::vector<double>& weights) {
    const Rule& g = rule();
    nodes.clear();
    weights.clear();
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (unsigned i = 0; i < kOrder; ++i) {
            nodes.push_back(mid + 0.5 * h * g.x[i]);
            weights.push_back(0.5 * h * g.w[i]);
        }
    }
}

bool close_enough(double prev, double cur, double tol) {
    return std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur));
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadSpec& spec) {
    QuadResult res;
    std::vector<double> xs, ws;
    double prev = 0.0;
    bool have_prev = false;
    for (int panels = spec.initial_panels; panels <= spec.max_panels; panels *= 2) {
        composite(a, b, panels, xs, ws);
        double sum = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) sum += ws[i] * f(xs[i]);
        res.evaluations += xs.size();
        res.value = sum;
        if (have_prev) {
            res.error = std::abs(sum - prev);
            if (close_enough(prev, sum, spec.tol)) {
                res.converged = true;
                return res;
            }
        }
        prev = sum;
        have_prev = true;
    }
    return res;
}

QuadResult integrate_2d(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                        const QuadSpec& spec) {
    QuadResult res;
    std::vector<double> xs, wx, ys, wy;
    double prev = 0.0;
    bool have_prev = false;
    for (int panels = spec.initial_panels; panels <= spec.max_panels; panels *= 2) {
        composite(x0, x1, panels, xs, wx);
        composite(y0, y1, panels, ys, wy);
        double sum = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < ys.size(); ++j) row += wy[j] * f(xs[i], ys[j]);
            sum += wx[i] * row;
        }
        res.evaluations += xs.size() * ys.size();
        res.value = sum;
        if (have_prev) {
            res.error = std::abs(sum - prev);
            if (close_enough(prev, sum, spec.tol)) {
                res.converged = true;
                return res;
            }
        }
        prev = sum;
        have_prev = true;
    }
    return res;
}

}  // namespace dpa
