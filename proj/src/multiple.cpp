#include "rmes/multiple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rmes {

namespace {

constexpr double kMergeGap = 1e-9;
constexpr double kPi = 3.14159265358979323846;

double floored(double x, double lo) { return std::max(std::abs(x), lo); }

// Largest root magnitude of a z^2 + b z + c = 0; used for saddle-radius caps.
double quad_root_reach(double a, double b, double c) {
    if (std::abs(a) < 1e-300) return std::abs(b) < 1e-300 ? 1.0 : std::abs(c / b);
    double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        return std::max(std::abs((-b + s) / (2.0 * a)), std::abs((-b - s) / (2.0 * a)));
    }
    return std::sqrt(std::abs(c / a));  // complex pair, common modulus
}

}  // namespace

SourceSpectrum::SourceSpectrum(std::vector<double> v, std::vector<int> m)
    : values(std::move(v)), multiplicities(std::move(m)) {
    if (values.size() != multiplicities.size())
        throw InvalidSpectrum("SourceSpectrum: values/multiplicities size mismatch");
    for (int mi : multiplicities)
        if (mi < 1) throw InvalidSpectrum("SourceSpectrum: multiplicities must be >= 1");
    // Merge entries closer than the threshold; quadrature conditioning
    // degrades long before the loop integral stops being continuous there.
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size();) {
            if (std::abs(values[i] - values[j]) < kMergeGap) {
                double wi = multiplicities[i], wj = multiplicities[j];
                values[i] = (values[i] * wi + values[j] * wj) / (wi + wj);
                multiplicities[i] += multiplicities[j];
                values.erase(values.begin() + j);
                multiplicities.erase(multiplicities.begin() + j);
            } else {
                ++j;
            }
        }
    }
}

SourceSpectrum SourceSpectrum::from_values(std::span<const double> raw) {
    return SourceSpectrum(std::vector<double>(raw.begin(), raw.end()),
                          std::vector<int>(raw.size(), 1));
}

int SourceSpectrum::weight() const {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

std::vector<double> SourceSpectrum::flattened() const {
    std::vector<double> out;
    for (int i = 0; i < dim(); ++i)
        out.insert(out.end(), multiplicities[i], values[i]);
    return out;
}

SourceSpectrum SourceSpectrum::raised(int i) const {
    SourceSpectrum s = *this;
    s.multiplicities.at(i) += 1;
    return s;
}

SourceSpectrum SourceSpectrum::lowered(int i) const {
    SourceSpectrum s = *this;
    if (s.multiplicities.at(i) == 1) {
        s.values.erase(s.values.begin() + i);
        s.multiplicities.erase(s.multiplicities.begin() + i);
    } else {
        s.multiplicities[i] -= 1;
    }
    return s;
}

void SourceSpectrum::require_laguerre_valid() const {
    for (double b : values)
        if (!(b > -1.0)) throw InvalidSpectrum("Laguerre source values must be > -1");
}

SourceSpectrum QuasiNullSpec::to_spectrum() const {
    if (rank() > N) throw InvalidSpectrum("QuasiNullSpec: rank exceeds N");
    std::vector<double> v = spikes;
    std::vector<int> m(v.size(), 1);
    if (N > rank()) {
        v.push_back(0.0);
        m.push_back(N - rank());
    }
    return SourceSpectrum(std::move(v), std::move(m));
}

void QuasiNullSpec::validate(Ensemble ensemble) const {
    if (N < 1) throw InvalidSpectrum("QuasiNullSpec: N must be >= 1");
    if (rank() > N) throw InvalidSpectrum("QuasiNullSpec: rank exceeds N");
    if (ensemble == Ensemble::laguerre)
        for (double a : spikes)
            if (!(a > -1.0)) throw InvalidSpectrum("Laguerre spikes must be > -1");
}

// ---------------------------------------------------------------------------
// Shared contour assembly.
// ---------------------------------------------------------------------------

namespace {

struct CircleJob {
    Integrand lf;
    std::vector<cplx> enclose;
    std::vector<cplx> exclude;
    double radius_cap = 0.0;
    double lin = 0.0;     // |coef of z| in the exponent
    double quad = 0.0;    // |coef of z^2|
    double inv = 0.0;     // |coef of 1/z|
    double powsum = 0.0;  // total integer exponent weight
};

Scaled run_circle(const CircleJob& job, double tol) {
    ContourSpec spec = choose_circle(job.lf, job.enclose, job.exclude, job.radius_cap);
    double R = spec.radius;
    double bw = job.lin * R + job.quad * R * R + job.inv / R + job.powsum +
                8.0 * static_cast<double>(job.enclose.size());
    auto res = integrate_circle_log(job.lf, spec, tol, circle_nodes_hint(bw));
    return res.scaled();
}

std::vector<cplx> to_cplx(std::span<const double> v) {
    return std::vector<cplx>(v.begin(), v.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// Multiple Laguerre functions.
// ---------------------------------------------------------------------------

Scaled multiple_laguerre_scaled(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                                double tol) {
    spec.require_laguerre_valid();
    int w = spec.weight();

    if (kind == FnKind::type_I) {
        double P = w + alpha - 1.0;
        CircleJob job;
        job.lf = [&spec, P, x](cplx z) {
            cplx s = -x * z + P * std::log(1.0 + z);
            for (int i = 0; i < spec.dim(); ++i)
                s -= double(spec.multiplicities[i]) * std::log(z - spec.values[i]);
            return s;
        };
        job.enclose = to_cplx(spec.values);
        if (P < 0.0) job.exclude.push_back(cplx(-1.0, 0.0));  // guarded branch, alpha < 0 only
        double Q = w;
        double xf = floored(x, 1e-6);
        job.radius_cap = 2.5 * quad_root_reach(xf, -(P - Q - xf), Q) + 2.0;
        job.lin = std::abs(x);
        job.powsum = std::abs(P) + Q;
        return run_circle(job, tol);
    }

    if (!(x > 0.0)) throw std::invalid_argument("multiple_laguerre type II needs x > 0");
    double K = w + alpha + 1.0;
    CircleJob job;
    job.lf = [&spec, K, x](cplx z) {
        cplx s = x * z - K * std::log(z);
        for (int i = 0; i < spec.dim(); ++i)
            s += double(spec.multiplicities[i]) * std::log(z - 1.0 - spec.values[i]);
        return s;
    };
    job.enclose = {cplx(0.0, 0.0)};
    job.radius_cap = 2.5 * std::max(1.0, K / floored(x, 1e-3));
    job.lin = x;
    job.powsum = K + w;
    Scaled pref = Scaled::from_log(std::lgamma(w + alpha + 1.0) - std::lgamma(w + 1.0) -
                                   alpha * std::log(x));
    return pref * run_circle(job, tol);
}

double multiple_laguerre(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                         double tol) {
    return multiple_laguerre_scaled(kind, spec, alpha, x, tol).real();
}

// ---------------------------------------------------------------------------
// Multiple Hermite functions.
// ---------------------------------------------------------------------------

Scaled multiple_hermite_scaled(FnKind kind, const SourceSpectrum& spec, double x, double tol) {
    int w = spec.weight();

    if (kind == FnKind::type_I) {
        CircleJob job;
        job.lf = [&spec, x](cplx v) {
            cplx s = -v * v / 4.0 - x * v;
            for (int i = 0; i < spec.dim(); ++i)
                s -= double(spec.multiplicities[i]) * std::log(v - spec.values[i]);
            return s;
        };
        job.enclose = to_cplx(spec.values);
        job.radius_cap = 2.0 * (std::abs(x) + std::sqrt(2.0 * w + x * x + 1.0)) + 1.0;
        job.lin = std::abs(x);
        job.quad = 0.25;
        job.powsum = w;
        Scaled pref = scaled_ipow(-2.0, w - 1) * scaled_factorial(w - 1);
        return pref * run_circle(job, tol);
    }

    auto lf = [&spec, x](cplx u) {
        cplx s = u * u / 4.0 + x * u;
        for (int i = 0; i < spec.dim(); ++i)
            s += double(spec.multiplicities[i]) * std::log(u - spec.values[i]);
        return s;
    };
    auto res = integrate_vertical_line_log(lf, ContourSpec::line_at(0.0), tol);
    Scaled pref = scaled_ipow(-1.0, w) * Scaled::from_log(x * x + 0.5 * std::log(kPi));
    return pref * res.scaled();
}

double multiple_hermite(FnKind kind, const SourceSpectrum& spec, double x, double tol) {
    return multiple_hermite_scaled(kind, spec, x, tol).real();
}

// ---------------------------------------------------------------------------
// Multiple Bessel functions (argument enters as x^2).
// ---------------------------------------------------------------------------

Scaled multiple_bessel_scaled(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                              double tol) {
    if (!(x > 0.0)) throw std::invalid_argument("multiple_bessel needs x > 0");
    int w = spec.weight();
    double x2 = x * x;

    if (kind == FnKind::type_I) {
        double K = w + alpha - 1.0;
        CircleJob job;
        job.lf = [&spec, K, x2](cplx z) {
            cplx s = -x2 * z + 0.25 / z + K * std::log(z);
            for (int i = 0; i < spec.dim(); ++i)
                s -= double(spec.multiplicities[i]) * std::log(z - spec.values[i]);
            return s;
        };
        job.enclose = to_cplx(spec.values);
        job.enclose.push_back(cplx(0.0, 0.0));
        job.radius_cap =
            2.5 * std::max(quad_root_reach(x2, -std::abs(K), 0.25), 0.5 / x) + 0.5;
        job.lin = x2;
        job.inv = 0.25;
        job.powsum = std::abs(K) + w;
        return Scaled::from_log(alpha * std::log(2.0 * x)) * run_circle(job, tol);
    }

    double K = w + alpha + 1.0;
    CircleJob job;
    job.lf = [&spec, K, x2](cplx z) {
        cplx s = x2 * z - 0.25 / z - K * std::log(z);
        for (int i = 0; i < spec.dim(); ++i)
            s += double(spec.multiplicities[i]) * std::log(z - spec.values[i]);
        return s;
    };
    job.enclose = {cplx(0.0, 0.0)};
    job.radius_cap = 2.5 * std::max(quad_root_reach(x2, -std::abs(K), 0.25), 0.5 / x) + 0.5;
    job.lin = x2;
    job.inv = 0.25;
    job.powsum = std::abs(K) + w;
    return Scaled::from_log(-alpha * std::log(2.0 * x)) * run_circle(job, tol);
}

double multiple_bessel(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                       double tol) {
    return multiple_bessel_scaled(kind, spec, alpha, x, tol).real();
}

// ---------------------------------------------------------------------------
// Multiple Airy functions.
// ---------------------------------------------------------------------------

namespace {

Scaled airy_contour(const SourceSpectrum& spec, FnKind kind, double x, double tol,
                    bool with_dx) {
    int w = spec.weight();
    if (kind == FnKind::type_I) {
        double vmin = 0.0;
        if (!spec.values.empty())
            vmin = *std::min_element(spec.values.begin(), spec.values.end());
        cplx vertex(vmin - 0.75, 0.0);
        auto lf = [&spec, x, with_dx](cplx v) {
            cplx s = -x * v + v * v * v / 3.0;
            for (int i = 0; i < spec.dim(); ++i)
                s -= double(spec.multiplicities[i]) * std::log(v - spec.values[i]);
            if (with_dx) s += std::log(-v);
            return s;
        };
        auto res = integrate_airy_rays_log(lf, ContourSpec::rays_from(vertex), tol);
        return res.scaled();
    }
    cplx vertex(std::sqrt(std::max(x, 0.0)), 0.0);
    auto lf = [&spec, x, with_dx](cplx v) {
        cplx s = -x * v + v * v * v / 3.0;
        for (int i = 0; i < spec.dim(); ++i)
            s += double(spec.multiplicities[i]) * std::log(v + spec.values[i]);
        if (with_dx) s += std::log(-v);
        return s;
    };
    auto res = integrate_airy_rays_log(lf, ContourSpec::rays_from(vertex), tol);
    return scaled_ipow(-1.0, w) * res.scaled();
}

}  // namespace

Scaled multiple_airy_scaled(FnKind kind, const SourceSpectrum& spec, double x, double tol) {
    return airy_contour(spec, kind, x, tol, false);
}

Scaled multiple_airy_dx_scaled(FnKind kind, const SourceSpectrum& spec, double x, double tol) {
    return airy_contour(spec, kind, x, tol, true);
}

double multiple_airy(FnKind kind, const SourceSpectrum& spec, double x, double tol) {
    return multiple_airy_scaled(kind, spec, x, tol).real();
}

// ---------------------------------------------------------------------------
// Type-I components (single-pole pieces of the loop integral).
// ---------------------------------------------------------------------------

namespace {

double component_radius(const SourceSpectrum& spec, int i, bool avoid_minus_one) {
    double gap = std::numeric_limits<double>::infinity();
    for (int j = 0; j < spec.dim(); ++j)
        if (j != i) gap = std::min(gap, std::abs(spec.values[i] - spec.values[j]));
    if (avoid_minus_one) gap = std::min(gap, std::abs(spec.values[i] + 1.0));
    if (!std::isfinite(gap)) gap = 2.0;
    return std::max(0.45 * gap, 1e-3);
}

}  // namespace

Scaled laguerre_type1_component_scaled(const SourceSpectrum& spec, int alpha, int i, double x,
                                       double tol) {
    spec.require_laguerre_valid();
    if (i < 0 || i >= spec.dim()) throw IndexOutOfRange("component index out of range");
    double P = spec.weight() + alpha - 1.0;
    auto lf = [&spec, P, x](cplx z) {
        cplx s = -x * z + P * std::log(1.0 + z);
        for (int k = 0; k < spec.dim(); ++k)
            s -= double(spec.multiplicities[k]) * std::log(z - spec.values[k]);
        return s;
    };
    double R = component_radius(spec, i, true);
    auto c = ContourSpec::circle_around(cplx(spec.values[i], 0.0), R);
    auto res = integrate_circle_log(
        lf, c, tol,
        circle_nodes_hint(std::abs(x) * R + std::abs(P) + spec.weight() + 32.0));
    return res.scaled();
}

Scaled hermite_type1_component_scaled(const SourceSpectrum& spec, int i, double x, double tol) {
    if (i < 0 || i >= spec.dim()) throw IndexOutOfRange("component index out of range");
    int w = spec.weight();
    auto lf = [&spec, x](cplx v) {
        cplx s = -v * v / 4.0 - x * v;
        for (int k = 0; k < spec.dim(); ++k)
            s -= double(spec.multiplicities[k]) * std::log(v - spec.values[k]);
        return s;
    };
    double R = component_radius(spec, i, false);
    auto c = ContourSpec::circle_around(cplx(spec.values[i], 0.0), R);
    auto res = integrate_circle_log(
        lf, c, tol, circle_nodes_hint(std::abs(x) * R + 0.25 * R * R + w + 32.0));
    return scaled_ipow(-2.0, w - 1) * scaled_factorial(w - 1) * res.scaled();
}

// ---------------------------------------------------------------------------
// Incomplete functions.
// ---------------------------------------------------------------------------

namespace {

void check_index(int i, int r) {
    if (i < 1 || i > r) throw IndexOutOfRange("incomplete function index i must be in [1, r]");
}

}  // namespace

Scaled incomplete_function_scaled(IncompleteFamily family, int i, const IncompleteParams& p,
                                  double x, double tol) {
    switch (family) {
        case IncompleteFamily::laguerre_I: {
            check_index(i, p.r);
            if (static_cast<int>(p.shifts.size()) < i)
                throw IndexOutOfRange("incomplete: fewer shifts than index");
            double P = p.N + p.alpha, Q = p.N - p.r;
            CircleJob job;
            job.lf = [&p, P, Q, x, i](cplx z) {
                cplx s = -x * z + P * std::log(1.0 + z) - Q * std::log(z);
                for (int k = 0; k < i; ++k) s -= std::log(z - p.shifts[k]);
                return s;
            };
            job.enclose = to_cplx(std::span<const double>(p.shifts.data(), i));
            job.enclose.push_back(cplx(0.0, 0.0));
            double xf = floored(x, 1e-6);
            job.radius_cap = 2.5 * quad_root_reach(xf, -(P - Q - i - xf), Q + i) + 2.0;
            job.lin = std::abs(x);
            job.powsum = P + Q + i;
            return run_circle(job, tol);
        }
        case IncompleteFamily::laguerre_II: {
            check_index(i, p.r);
            double P = p.N + p.alpha, Q = p.N - p.r;
            CircleJob job;
            job.lf = [&p, P, Q, x, i](cplx w) {
                cplx s = x * w + Q * std::log(w) - P * std::log(1.0 + w);
                for (int k = 0; k + 1 < i; ++k) s += std::log(w - p.shifts[k]);
                return s;
            };
            job.enclose = {cplx(-1.0, 0.0)};
            double xf = floored(x, 1e-6);
            double reach = quad_root_reach(xf, xf - p.alpha - p.r, Q);
            job.radius_cap = 2.5 * (reach + 1.0) + 1.0;
            job.lin = std::abs(x);
            job.powsum = P + Q + i;
            return run_circle(job, tol);
        }
        case IncompleteFamily::hermite_I: {
            check_index(i, p.r);
            double Q = p.N - p.r;
            CircleJob job;
            job.lf = [&p, Q, x, i](cplx z) {
                cplx s = -x * z - z * z / 4.0 - Q * std::log(z);
                for (int k = 0; k < i; ++k) s -= std::log(z - p.shifts[k]);
                return s;
            };
            job.enclose = to_cplx(std::span<const double>(p.shifts.data(), i));
            job.enclose.push_back(cplx(0.0, 0.0));
            job.radius_cap = 2.0 * (std::abs(x) + std::sqrt(2.0 * Q + x * x + 1.0)) + 1.0;
            job.lin = std::abs(x);
            job.quad = 0.25;
            job.powsum = Q + i;
            return Scaled::from_log(-0.5 * x * x) * run_circle(job, tol);
        }
        case IncompleteFamily::hermite_II: {
            check_index(i, p.r);
            double Q = p.N - p.r;
            auto lf = [&p, Q, x, i](cplx w) {
                cplx s = x * w + w * w / 4.0 + Q * std::log(w);
                for (int k = 0; k + 1 < i; ++k) s += std::log(w - p.shifts[k]);
                return s;
            };
            auto res = integrate_vertical_line_log(lf, ContourSpec::line_at(0.0), tol);
            return Scaled::from_log(0.5 * x * x) * res.scaled();
        }
        case IncompleteFamily::bessel_I: {
            check_index(i, p.r);
            if (!(x > 0.0)) throw std::invalid_argument("incomplete bessel needs x > 0");
            double K = p.alpha + p.r;
            CircleJob job;
            job.lf = [&p, K, x, i](cplx z) {
                cplx s = -x * z + 0.25 / z + K * std::log(z);
                for (int k = 0; k < i; ++k) s -= std::log(z - p.shifts[k]);
                return s;
            };
            job.enclose = to_cplx(std::span<const double>(p.shifts.data(), i));
            job.enclose.push_back(cplx(0.0, 0.0));
            job.radius_cap =
                2.5 * std::max(quad_root_reach(x, -K, 0.25), 0.5 / std::sqrt(x)) + 0.5;
            job.lin = x;
            job.inv = 0.25;
            job.powsum = K + i;
            return run_circle(job, tol);
        }
        case IncompleteFamily::bessel_II: {
            check_index(i, p.r);
            if (!(x > 0.0)) throw std::invalid_argument("incomplete bessel needs x > 0");
            double K = p.alpha + p.r;
            CircleJob job;
            job.lf = [&p, K, x, i](cplx w) {
                cplx s = x * w - 0.25 / w - K * std::log(w);
                for (int k = 0; k + 1 < i; ++k) s += std::log(w - p.shifts[k]);
                return s;
            };
            job.enclose = {cplx(0.0, 0.0)};
            job.radius_cap =
                2.5 * std::max(quad_root_reach(x, -K, 0.25), 0.5 / std::sqrt(x)) + 0.5;
            job.lin = x;
            job.inv = 0.25;
            job.powsum = K + i;
            return run_circle(job, tol);
        }
        case IncompleteFamily::airy_I: {
            int r = p.r > 0 ? p.r : static_cast<int>(p.shifts.size());
            check_index(i, r);
            if (static_cast<int>(p.shifts.size()) < i)
                throw IndexOutOfRange("incomplete: fewer shifts than index");
            double vmin = p.shifts[0];
            for (int k = 0; k < i; ++k) vmin = std::min(vmin, p.shifts[k]);
            auto lf = [&p, x, i](cplx v) {
                cplx s = -x * v + v * v * v / 3.0;
                for (int k = 0; k < i; ++k) s -= std::log(v - p.shifts[k]);
                return s;
            };
            auto res = integrate_airy_rays_log(
                lf, ContourSpec::rays_from(cplx(vmin - 0.75, 0.0)), tol);
            return res.scaled();
        }
        case IncompleteFamily::airy_II: {
            int r = p.r > 0 ? p.r : static_cast<int>(p.shifts.size());
            check_index(i, r);
            auto lf = [&p, x, i](cplx v) {
                cplx s = -x * v + v * v * v / 3.0;
                for (int k = 0; k + 1 < i; ++k) s += std::log(v + p.shifts[k]);
                return s;
            };
            auto res = integrate_airy_rays_log(
                lf, ContourSpec::rays_from(cplx(std::sqrt(std::max(x, 0.0)), 0.0)), tol);
            return scaled_ipow(-1.0, i) * res.scaled();
        }
    }
    throw std::invalid_argument("incomplete_function: unknown family");
}

double incomplete_function(IncompleteFamily family, int i, const IncompleteParams& p, double x,
                           double tol) {
    return incomplete_function_scaled(family, i, p, x, tol).real();
}

double apply_diff_operator(double t, const std::function<double(double)>& f, double x,
                           double h) {
    double d = (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
               (12.0 * h);
    return t * f(x) - d;
}

}  // namespace rmes
