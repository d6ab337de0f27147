#pragma once

#include <functional>
#include <vector>

namespace qfgcpe {

struct QuadratureControl {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 10000;
    double endpoint_clip = 1e-12; // must lie in (0, 1e-3)
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// `breakpoints` seeds the initial subdivision; values outside (a, b)
/// are ignored. Throws ConvergenceError if the error estimate cannot be
/// brought below max(abs_tol, rel_tol*|value|) within max_subdivisions.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureControl& ctl = {},
                     const std::vector<double>& breakpoints = {});

} // namespace qfgcpe
