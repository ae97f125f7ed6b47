#pragma once

#include <cstddef>
#include <functional>

namespace dpa {

struct QuadResult {
    double value = 0;
    double error = 0;  // |I_last - I_previous|
    std::size_t evaluations = 0;
    bool converged = false;
};

struct QuadSpec {
    double tol = 1e-9;
    int initial_panels = 4;
    int max_panels = 256;
};

/// Composite 20-point Gauss-Legendre on [a, b]; the panel count doubles until two successive
/// estimates differ by less than tol * max(1, |I|).
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadSpec& spec = {});

/// Tensor-product version of integrate_1d over [x0, x1] x [y0, y1].
QuadResult integrate_2d(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                        const QuadSpec& spec = {});

}  // namespace dpa
