#pragma once

#include <complex>
#include <functional>
#include <span>

#include "rmes/errors.hpp"
#include "rmes/scaled.hpp"

namespace rmes {

inline constexpr double kContourTol = 1e-10;
inline constexpr double kExclusionMargin = 0.25;
inline constexpr int kMaxCircleNodes = 1 << 16;
inline constexpr double kMaxTailExtent = 200.0;

enum class ContourKind { circle, vertical_line, airy_rays };

// Descriptor of one of the three integration path families.  Circles are
// full anticlockwise loops; vertical lines run from c - i*inf to c + i*inf;
// airy_rays is the ray pair from inf*e^{-i pi/3} through `vertex` to
// inf*e^{+i pi/3} (or the reversed pair at +-2 pi/3 when `reversed`).
struct ContourSpec {
    ContourKind kind = ContourKind::circle;

    cplx center{0.0, 0.0};
    double radius = 1.0;

    double abscissa = 0.0;
    double half_height = 0.0;  // 0 = adaptive truncation

    cplx vertex{0.0, 0.0};
    double ray_length = 0.0;   // 0 = adaptive truncation
    bool reversed = false;

    static ContourSpec circle_around(cplx center, double radius);
    static ContourSpec line_at(double abscissa, double half_height = 0.0);
    static ContourSpec rays_from(cplx vertex, bool reversed = false, double ray_length = 0.0);
};

struct QuadratureResult {
    cplx value{0.0, 0.0};         // mantissa; full value = value * exp(log_scale)
    double log_scale = 0.0;
    double error_estimate = 0.0;  // |difference of last two refinement levels|
    int nodes_used = 0;

    Scaled scaled() const { return Scaled(value, log_scale); }
    cplx plain() const { return scaled().value(); }
};

using Integrand = std::function<cplx(cplx)>;

// --- plain-integrand interface -------------------------------------------

// (1/2 pi i) closed-loop integral of f, trapezoidal rule with node doubling.
QuadratureResult integrate_circle(const Integrand& f, const ContourSpec& c,
                                  double tol = kContourTol);

// Same quadrature at a fixed node count, no refinement (error vs the
// half-resolution sum); mainly for convergence studies.
QuadratureResult integrate_circle_fixed(const Integrand& f, const ContourSpec& c, int nodes);

// (1/2 pi i) integral up a vertical line, for integrands decaying along it.
QuadratureResult integrate_vertical_line(const Integrand& f, const ContourSpec& c,
                                         double tol = kContourTol);

// (1/2 pi i) integral over the ray pair.
QuadratureResult integrate_airy_rays(const Integrand& f, const ContourSpec& c,
                                     double tol = kContourTol);

// --- log-integrand interface ---------------------------------------------
//
// lf(z) returns log f(z) (any branch; exponent differences are what matter).
// Results carry a log_scale, so integrands of magnitude e^{+-1000} are fine.
// Integer-power integrands are safe under principal-branch logs since the
// 2 pi i branch jumps cancel in exp.

QuadratureResult integrate_circle_log(const Integrand& lf, const ContourSpec& c,
                                      double tol = kContourTol, int min_nodes = 32);

QuadratureResult integrate_vertical_line_log(const Integrand& lf, const ContourSpec& c,
                                             double tol = kContourTol);

QuadratureResult integrate_airy_rays_log(const Integrand& lf, const ContourSpec& c,
                                         double tol = kContourTol);

// Pick a circle that encloses every point of `enclose` (with margin), keeps
// every point of `exclude` at distance >= kExclusionMargin outside, and, when
// radius_cap leaves room, minimizes the sampled peak of Re lf on the circle.
// The peak minimization is what keeps large-parameter integrands (steep
// saddles) from cancelling away all significant digits.  Throws ContourClash
// if no admissible radius exists.
ContourSpec choose_circle(const Integrand& lf, std::span<const cplx> enclose,
                          std::span<const cplx> exclude = {}, double radius_cap = 0.0);

// Smallest power of two >= max(32, hint); clamped to the node cap.
int circle_nodes_hint(double bandwidth);

}  // namespace rmes
