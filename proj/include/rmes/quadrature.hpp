#pragma once

#include <functional>
#include <vector>

#include "rmes/errors.hpp"

namespace rmes {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached rule of the given order (computed once, thread-safe).
const GaussLegendreRule& gauss_legendre(int order);

struct RealQuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

using RealFn = std::function<double(double)>;

// Adaptive bisected Gauss-Legendre on a finite interval.
RealQuadResult integrate_interval(const RealFn& f, double a, double b, double tol = 1e-10);

// [a, inf): fixed-width panels extended until the tail stops contributing.
RealQuadResult integrate_halfline(const RealFn& f, double a, double tol = 1e-10);

// (-inf, inf), with panels extended independently in both directions.
RealQuadResult integrate_real_line(const RealFn& f, double tol = 1e-10);

}  // namespace rmes
