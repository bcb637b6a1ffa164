#include "rmes/contour.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmes/quadrature.hpp"

namespace rmes {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

double log_tol(double tol) { return std::log(std::max(tol, 1e-300)); }

// Sum of exp(term_k)/n over the stored log-terms.  A +inf or NaN term means
// the integrand itself blew up; poison the result so callers keep refining
// or extending until they raise NoConvergence / NoDecay.
Scaled mean_of_exp(const std::vector<cplx>& terms, double& peak) {
    peak = -std::numeric_limits<double>::infinity();
    for (const cplx& t : terms) {
        double re = t.real();
        if (std::isnan(re) || (std::isinf(re) && re > 0.0)) {
            peak = std::numeric_limits<double>::infinity();
            return Scaled(std::numeric_limits<double>::quiet_NaN());
        }
        if (re > peak) peak = re;
    }
    if (!std::isfinite(peak)) return Scaled(0.0);  // integrand vanished everywhere
    cplx acc{0.0, 0.0};
    for (const cplx& t : terms) {
        double d = t.real() - peak;
        if (d < -745.0) continue;
        acc += std::polar(std::exp(d), t.imag());
    }
    return Scaled(acc / static_cast<double>(terms.size()), peak);
}

}  // namespace

ContourSpec ContourSpec::circle_around(cplx center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
    ContourSpec c;
    c.kind = ContourKind::circle;
    c.center = center;
    c.radius = radius;
    return c;
}

ContourSpec ContourSpec::line_at(double abscissa, double half_height) {
    ContourSpec c;
    c.kind = ContourKind::vertical_line;
    c.abscissa = abscissa;
    c.half_height = half_height;
    return c;
}

ContourSpec ContourSpec::rays_from(cplx vertex, bool reversed, double ray_length) {
    ContourSpec c;
    c.kind = ContourKind::airy_rays;
    c.vertex = vertex;
    c.reversed = reversed;
    c.ray_length = ray_length;
    return c;
}

int circle_nodes_hint(double bandwidth) {
    int n = 32;
    double want = std::min(1.3 * bandwidth + 32.0, double(kMaxCircleNodes));
    while (n < want && n < kMaxCircleNodes) n <<= 1;
    return n;
}

// ---------------------------------------------------------------------------
// Circle: trapezoidal rule with node doubling.  (1/2 pi i) \oint f dz over
// z = c + R e^{i t} equals the plain average of f(z_k) (z_k - c) over equally
// spaced nodes, and converges geometrically for integrands analytic in an
// annulus around the circle.
// ---------------------------------------------------------------------------

QuadratureResult integrate_circle_log(const Integrand& lf, const ContourSpec& c,
                                      double tol, int min_nodes) {
    if (c.kind != ContourKind::circle)
        throw std::invalid_argument("integrate_circle: spec is not a circle");
    if (!(c.radius > 0.0)) throw std::invalid_argument("circle radius must be positive");

    int n = 32;
    while (n < min_nodes && n < kMaxCircleNodes) n <<= 1;

    auto term_at = [&](int k, int nn) {
        double th = 2.0 * kPi * k / nn;
        cplx dz = std::polar(c.radius, th);
        return lf(c.center + dz) + std::log(dz);
    };

    std::vector<cplx> terms(n);
    for (int k = 0; k < n; ++k) terms[k] = term_at(k, n);
    double peak;
    Scaled cur = mean_of_exp(terms, peak);

    while (true) {
        if (2 * n > kMaxCircleNodes)
            throw NoConvergence("integrate_circle: node cap reached (pole on or near contour?)");
        std::vector<cplx> next(2 * n);
        for (int k = 0; k < n; ++k) next[2 * k] = terms[k];
        for (int k = 0; k < n; ++k) next[2 * k + 1] = term_at(2 * k + 1, 2 * n);
        terms.swap(next);
        n *= 2;
        Scaled refined = mean_of_exp(terms, peak);
        Scaled delta = refined - cur;
        cur = refined;
        if (delta.log_abs() <= log_tol(tol) + peak + std::log(c.radius)) {
            QuadratureResult out;
            out.value = cur.mantissa();
            out.log_scale = cur.scale();
            out.error_estimate = std::exp(std::min(delta.log_abs() - cur.scale(), 700.0));
            out.nodes_used = n;
            return out;
        }
    }
}

QuadratureResult integrate_circle(const Integrand& f, const ContourSpec& c, double tol) {
    auto lf = [&f](cplx z) { return std::log(f(z)); };
    QuadratureResult r = integrate_circle_log(lf, c, tol);
    r.value = r.scaled().value();
    r.error_estimate *= std::exp(std::min(r.log_scale, 700.0));
    r.log_scale = 0.0;
    return r;
}

QuadratureResult integrate_circle_fixed(const Integrand& f, const ContourSpec& c, int nodes) {
    if (c.kind != ContourKind::circle)
        throw std::invalid_argument("integrate_circle_fixed: spec is not a circle");
    auto lf = [&f](cplx z) { return std::log(f(z)); };
    std::vector<cplx> terms(nodes), half(nodes / 2);
    for (int k = 0; k < nodes; ++k) {
        double th = 2.0 * kPi * k / nodes;
        cplx dz = std::polar(c.radius, th);
        terms[k] = lf(c.center + dz) + std::log(dz);
    }
    for (int k = 0; k < nodes / 2; ++k) half[k] = terms[2 * k];
    double peak;
    Scaled fine = mean_of_exp(terms, peak);
    Scaled coarse = mean_of_exp(half, peak);
    QuadratureResult out;
    out.value = fine.value();
    out.error_estimate = std::abs((fine - coarse).value());
    out.nodes_used = nodes;
    return out;
}

// ---------------------------------------------------------------------------
// Infinite contours: composite Gauss-Legendre panels of unit width, each
// panel refined by bisection against an embedded lower-order estimate, and
// the contour extended until three consecutive panels stop contributing.
// ---------------------------------------------------------------------------

namespace {

struct PanelState {
    Scaled total;
    double max_panel_log = -std::numeric_limits<double>::infinity();
    double max_delta_log = -std::numeric_limits<double>::infinity();
    long nodes = 0;
};

// \int exp(lf(base + dir*s)) ds over s in [a, b].
Scaled panel_gl(const Integrand& lf, cplx base, cplx dir, double a, double b, int order,
                double& peak, long& nodes) {
    const auto& r = gauss_legendre(order);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::vector<cplx> terms(order);
    for (int i = 0; i < order; ++i) {
        double s = c + h * r.nodes[i];
        terms[i] = lf(base + dir * s) + std::log(r.weights[i] * h);
    }
    nodes += order;
    double local;
    Scaled out = mean_of_exp(terms, local) * static_cast<double>(order);
    peak = std::max(peak, local);
    return out;
}

Scaled panel_adaptive(const Integrand& lf, cplx base, cplx dir, double a, double b,
                      double tol, int depth, PanelState& st) {
    double peak = -std::numeric_limits<double>::infinity();
    Scaled coarse = panel_gl(lf, base, dir, a, b, 12, peak, st.nodes);
    Scaled fine = panel_gl(lf, base, dir, a, b, 24, peak, st.nodes);
    if (std::isinf(peak)) return fine;  // integrand blew up; refining cannot help
    Scaled delta = fine - coarse;
    double ref = peak + std::log(std::max(b - a, 1e-12));
    if (depth >= 14 || delta.log_abs() <= log_tol(tol) + ref) {
        st.max_delta_log = std::max(st.max_delta_log, delta.log_abs());
        return fine;
    }
    double m = 0.5 * (a + b);
    return panel_adaptive(lf, base, dir, a, m, tol, depth + 1, st) +
           panel_adaptive(lf, base, dir, m, b, tol, depth + 1, st);
}

// March unit panels from 0 outward along `dir` until quiet or capped.
void march_panels(const Integrand& lf, cplx base, cplx dir, double cap, double tol,
                  PanelState& st) {
    int quiet = 0;
    for (int k = 0; k < static_cast<int>(cap); ++k) {
        Scaled p = panel_adaptive(lf, base, dir, k, k + 1.0, tol, 0, st);
        st.total += p;
        double plog = p.log_abs();
        st.max_panel_log = std::max(st.max_panel_log, plog);
        if (plog < st.max_panel_log + log_tol(tol)) {
            if (++quiet >= 3 && k >= 3) return;
        } else {
            quiet = 0;
        }
    }
    throw NoDecay("infinite contour: integrand did not decay within the extent cap");
}

QuadratureResult assemble(const Scaled& value, const PanelState& st) {
    QuadratureResult out;
    out.value = value.mantissa();
    out.log_scale = value.scale();
    double rel = st.max_delta_log - (value.zero() ? 0.0 : value.scale());
    out.error_estimate = std::isfinite(rel) ? std::exp(std::min(rel, 700.0)) : 0.0;
    out.nodes_used = static_cast<int>(std::min<long>(st.nodes, 1L << 30));
    return out;
}

QuadratureResult fold_plain(QuadratureResult r) {
    r.value = r.scaled().value();
    r.error_estimate *= std::exp(std::min(r.log_scale, 700.0));
    r.log_scale = 0.0;
    return r;
}

}  // namespace

QuadratureResult integrate_vertical_line_log(const Integrand& lf, const ContourSpec& c,
                                             double tol) {
    if (c.kind != ContourKind::vertical_line)
        throw std::invalid_argument("integrate_vertical_line: spec is not a line");
    cplx base(c.abscissa, 0.0);
    double cap = c.half_height > 0.0 ? c.half_height : kMaxTailExtent;
    PanelState up, down;
    march_panels(lf, base, kI, cap, tol, up);
    march_panels(lf, base, -kI, cap, tol, down);
    // w = c + i t:  (1/2 pi i) \int f dw = (1/2 pi) \int_R f(c + i t) dt.
    Scaled value = (up.total + down.total) / (2.0 * kPi);
    down.max_delta_log = std::max(down.max_delta_log, up.max_delta_log);
    down.nodes += up.nodes;
    return assemble(value, down);
}

QuadratureResult integrate_vertical_line(const Integrand& f, const ContourSpec& c, double tol) {
    auto lf = [&f](cplx z) { return std::log(f(z)); };
    return fold_plain(integrate_vertical_line_log(lf, c, tol));
}

QuadratureResult integrate_airy_rays_log(const Integrand& lf, const ContourSpec& c,
                                         double tol) {
    if (c.kind != ContourKind::airy_rays)
        throw std::invalid_argument("integrate_airy_rays: spec is not a ray pair");
    // Standard pair runs in along angle -pi/3 and out along +pi/3; the
    // reversed pair (contour closing to the left) runs in along +2pi/3 and
    // out along -2pi/3.
    double out_angle = c.reversed ? -2.0 * kPi / 3.0 : kPi / 3.0;
    double in_angle = -out_angle;
    cplx dir_out = std::polar(1.0, out_angle);
    cplx dir_in = std::polar(1.0, in_angle);
    double cap = c.ray_length > 0.0 ? c.ray_length : kMaxTailExtent;

    PanelState a, b;
    march_panels(lf, c.vertex, dir_out, cap, tol, a);
    march_panels(lf, c.vertex, dir_in, cap, tol, b);
    Scaled value = (a.total * dir_out - b.total * dir_in) * (cplx(0.0, -1.0) / (2.0 * kPi));
    b.max_delta_log = std::max(b.max_delta_log, a.max_delta_log);
    b.nodes += a.nodes;
    return assemble(value, b);
}

QuadratureResult integrate_airy_rays(const Integrand& f, const ContourSpec& c, double tol) {
    auto lf = [&f](cplx z) { return std::log(f(z)); };
    return fold_plain(integrate_airy_rays_log(lf, c, tol));
}

// ---------------------------------------------------------------------------
// Circle placement.
// ---------------------------------------------------------------------------

namespace {

double peak_on_circle(const Integrand& lf, cplx center, double radius, int samples) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        cplx z = center + std::polar(radius, 2.0 * kPi * (k + 0.31) / samples);
        double v = lf(z).real();
        if (std::isnan(v)) return std::numeric_limits<double>::infinity();
        peak = std::max(peak, v);
    }
    return peak + std::log(radius);
}

}  // namespace

ContourSpec choose_circle(const Integrand& lf, std::span<const cplx> enclose,
                          std::span<const cplx> exclude, double radius_cap) {
    std::vector<cplx> centers;
    if (!enclose.empty()) {
        cplx centroid{0.0, 0.0};
        double re_lo = enclose[0].real(), re_hi = enclose[0].real();
        for (cplx p : enclose) {
            centroid += p;
            re_lo = std::min(re_lo, p.real());
            re_hi = std::max(re_hi, p.real());
        }
        centroid /= static_cast<double>(enclose.size());
        centers.push_back(centroid);
        centers.push_back(cplx(0.5 * (re_lo + re_hi), 0.0));
        centers.push_back(cplx(0.0, 0.0));
    } else {
        centers.push_back(cplx(0.0, 0.0));
    }

    double best_score = std::numeric_limits<double>::infinity();
    bool found = false, admissible = false;
    ContourSpec best;

    for (cplx c : centers) {
        double reach = 0.0;
        for (cplx p : enclose) reach = std::max(reach, std::abs(c - p));
        double r_lo = reach * 1.03 + 0.05;
        double r_hi = std::max({radius_cap, r_lo * 1.2, reach + 1.0});
        for (cplx e : exclude) {
            double d = std::abs(c - e) - kExclusionMargin;
            r_hi = std::min(r_hi, d);
        }
        if (r_hi < r_lo) continue;
        admissible = true;

        if (radius_cap <= 0.0) {
            // Spec default: farthest enclosed point + 1, shrunk to obey
            // exclusions.
            double r = std::min(reach + 1.0, r_hi);
            ContourSpec spec = ContourSpec::circle_around(c, std::max(r, r_lo));
            double score = peak_on_circle(lf, c, spec.radius, 16);
            if (!found || score < best_score) {
                best = spec;
                best_score = score;
                found = true;
            }
            continue;
        }

        int nr = 14;
        for (int i = 0; i <= nr; ++i) {
            double r = r_lo * std::pow(r_hi / r_lo, double(i) / nr);
            double score = peak_on_circle(lf, c, r, 24);
            if (!found || score < best_score) {
                best = ContourSpec::circle_around(c, r);
                best_score = score;
                found = true;
            }
        }
    }

    if (!admissible)
        throw ContourClash("choose_circle: no admissible radius clears the excluded points");
    if (!found) throw ContourClash("choose_circle: no usable circle found");
    return best;
}

}  // namespace rmes
