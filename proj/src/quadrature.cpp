#include "rmes/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace rmes {

namespace {

GaussLegendreRule make_rule(int n) {
    GaussLegendreRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pi = 3.14159265358979323846;
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
    return it->second;
}

namespace {

double gl_sum(const RealFn& f, double a, double b, int order, long& evals) {
    const auto& r = gauss_legendre(order);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
    evals += order;
    return s * h;
}

void adapt(const RealFn& f, double a, double b, double tol, int depth, RealQuadResult& out) {
    double coarse = gl_sum(f, a, b, 12, out.evals);
    double fine = gl_sum(f, a, b, 24, out.evals);
    double err = std::abs(fine - coarse);
    if (depth >= 13 || err <= tol) {
        out.value += fine;
        out.error += err;
        return;
    }
    double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1, out);
    adapt(f, m, b, 0.5 * tol, depth + 1, out);
}

}  // namespace

RealQuadResult integrate_interval(const RealFn& f, double a, double b, double tol) {
    RealQuadResult out;
    if (a == b) return out;
    adapt(f, a, b, tol, 0, out);
    return out;
}

namespace {

// Panels of width 4 marching away from `a` in direction `dir` until several
// consecutive panels are negligible against the running total.
void march(const RealFn& f, double a, int dir, double tol, RealQuadResult& out) {
    const double width = 4.0;
    const int max_panels = 2000;
    int quiet = 0;
    double scale = 1e-300;
    for (int k = 0; k < max_panels; ++k) {
        double lo = a + dir * k * width;
        double hi = lo + dir * width;
        RealQuadResult p;
        adapt(f, std::min(lo, hi), std::max(lo, hi), tol, 0, p);
        out.value += p.value;
        out.error += p.error;
        out.evals += p.evals;
        scale = std::max(scale, std::abs(out.value));
        if (std::abs(p.value) < tol * std::max(scale, 1e-30)) {
            if (++quiet >= 4 && k >= 3) return;
        } else {
            quiet = 0;
        }
    }
    throw NumericalError("integrate_halfline: tail did not converge within panel cap");
}

}  // namespace

RealQuadResult integrate_halfline(const RealFn& f, double a, double tol) {
    RealQuadResult out;
    march(f, a, +1, tol, out);
    return out;
}

RealQuadResult integrate_real_line(const RealFn& f, double tol) {
    RealQuadResult out;
    march(f, 0.0, +1, tol, out);
    march(f, 0.0, -1, tol, out);
    return out;
}

}  // namespace rmes
