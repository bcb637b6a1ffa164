#include "rmes/classical.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rmes {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kConfluent = 1e-6;
}  // namespace

double hermite_poly(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_poly: n must be >= 0");
    double p0 = 1.0, p1 = 2.0 * x;
    if (n == 0) return p0;
    for (int k = 1; k < n; ++k) {
        double p2 = 2.0 * x * p1 - 2.0 * k * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

namespace {

double laguerre_recurrence(int n, double alpha, double x) {
    double p0 = 1.0, p1 = alpha + 1.0 - x;
    if (n == 0) return p0;
    for (int k = 1; k < n; ++k) {
        double p2 = ((2.0 * k + 1.0 + alpha - x) * p1 - (k + alpha) * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

double laguerre_poly(int n, int alpha, double x) {
    if (n < 0) throw std::invalid_argument("laguerre_poly: n must be >= 0");
    if (alpha < 0 && -alpha <= n) {
        int a = -alpha;
        // n! (-x)^{-a} L_n^{-a}(x) = (n-a)! L^a_{n-a}(x)
        if (x == 0.0) return 0.0;
        double lg = std::lgamma(n - a + 1.0) - std::lgamma(n + 1.0);
        double sign = (a % 2 != 0 && x > 0.0) ? -1.0 : 1.0;
        return sign * std::exp(lg + a * std::log(std::abs(x))) *
               laguerre_recurrence(n - a, a, x);
    }
    return laguerre_recurrence(n, alpha, x);
}

double bessel_j(int alpha, double x) {
    if (alpha < 0) return (alpha % 2 == 0 ? 1.0 : -1.0) * bessel_j(-alpha, x);
    if (x < 0.0) return (alpha % 2 == 0 ? 1.0 : -1.0) * bessel_j(alpha, -x);
    if (x == 0.0) return alpha == 0 ? 1.0 : 0.0;

    if (x <= 12.0 && alpha <= 60) {
        double term = std::exp(alpha * std::log(0.5 * x) - std::lgamma(alpha + 1.0));
        double sum = term;
        for (int k = 1; k < 80; ++k) {
            term *= -0.25 * x * x / (k * (k + static_cast<double>(alpha)));
            sum += term;
            if (std::abs(term) < 1e-19 * (std::abs(sum) + 1e-280)) break;
        }
        return sum;
    }

    // Circle through the saddle radius of x(z - 1/z)/2 - (alpha+1) log z.
    // For x < alpha+1 the decaying saddle is the larger quadratic root; the
    // circle through it keeps the peak integrand magnitude at the size of
    // the answer instead of exponentially above it.
    double nu = alpha + 1.0;
    double rho = 1.0;
    if (x < nu) rho = (nu + std::sqrt(nu * nu - x * x)) / x;
    auto lf = [&](cplx z) { return 0.5 * x * (z - 1.0 / z) - nu * std::log(z); };
    int hint = circle_nodes_hint(0.5 * x * (rho + 1.0 / rho) + alpha);
    auto r = integrate_circle_log(lf, ContourSpec::circle_around({0.0, 0.0}, rho),
                                  1e-12, hint);
    return r.scaled().real();
}

double bessel_j_prime(int alpha, double x) {
    return 0.5 * (bessel_j(alpha - 1, x) - bessel_j(alpha + 1, x));
}

namespace {

// Oscillatory asymptotics for deep negative argument.  The ray contour
// cancels ~ e^{|x|^{3/2}/2} digits there; the expansion is good to ~1e-10
// once |x| >= 9.
void airy_negative_asymptotic(double t, double& ai, double& dai) {
    static const double u[] = {1.0,
                               6.944444444444444e-02,
                               3.713348765432098e-02,
                               3.799305912780064e-02,
                               5.764919041266972e-02,
                               1.160990640255154e-01,
                               2.915913992307505e-01,
                               8.776669695100169e-01,
                               3.079453030173167e+00,
                               1.234157333234524e+01};
    double zeta = 2.0 / 3.0 * std::pow(t, 1.5);
    double P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
    double zp = 1.0;
    for (int k = 0; k < 10; ++k) {
        double uk = u[k] / zp;
        double vk = (k == 0 ? 1.0 : -u[k] * (6.0 * k + 1.0) / (6.0 * k - 1.0)) / zp;
        double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            P += sgn * uk;
            R += sgn * vk;
        } else {
            Q += sgn * uk;
            S += sgn * vk;
        }
        zp *= zeta;
    }
    double ph = zeta + 0.25 * kPi;
    double q4 = std::pow(t, 0.25);
    ai = (std::sin(ph) * P - std::cos(ph) * Q) / (std::sqrt(kPi) * q4);
    dai = -q4 / std::sqrt(kPi) * (std::cos(ph) * R + std::sin(ph) * S);
}

}  // namespace

double airy_ai(double x) {
    if (x < -9.0) {
        double ai, dai;
        airy_negative_asymptotic(-x, ai, dai);
        return ai;
    }
    cplx vertex(x > 0.0 ? std::sqrt(x) : 0.0, 0.0);
    auto lf = [&](cplx v) { return -x * v + v * v * v / 3.0; };
    auto r = integrate_airy_rays_log(lf, ContourSpec::rays_from(vertex));
    return r.scaled().real();
}

double airy_ai_prime(double x) {
    if (x < -9.0) {
        double ai, dai;
        airy_negative_asymptotic(-x, ai, dai);
        return dai;
    }
    cplx vertex(x > 0.0 ? std::sqrt(x) : 0.0, 0.0);
    auto lf = [&](cplx v) { return -x * v + v * v * v / 3.0 + std::log(-v); };
    auto r = integrate_airy_rays_log(lf, ContourSpec::rays_from(vertex));
    return r.scaled().real();
}

// ---------------------------------------------------------------------------
// Orthonormal wavefunctions, scaled recurrences.
//
// Hermite: phi_n = H_n e^{-x^2/2} / (pi^{1/4} 2^{n/2} sqrt(n!))
//   phi_{n+1} = x sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1}
//   phi_n'    = sqrt(2n) phi_{n-1} - x phi_n
// Laguerre: l_n = L_n^a x^{a/2} e^{-x/2} sqrt(n!/(n+a)!)
//   l_{n+1} = [(2n+1+a-x) l_n - sqrt(n(n+a)) l_{n-1}] / sqrt((n+1)(n+1+a))
//   l_n'    = (2n+a-x)/(2x) l_n - sqrt(n(n+a))/x l_{n-1}
// ---------------------------------------------------------------------------

namespace {

void hermite_ladder(int count, double x, std::vector<Scaled>& out) {
    out.resize(count);
    Scaled prev = Scaled::from_log(-0.5 * x * x - 0.25 * std::log(kPi));
    out[0] = prev;
    if (count == 1) return;
    Scaled cur = prev * (x * std::sqrt(2.0));
    out[1] = cur;
    for (int n = 1; n + 1 < count; ++n) {
        Scaled next = cur * (x * std::sqrt(2.0 / (n + 1.0))) - prev * std::sqrt(n / (n + 1.0));
        prev = cur;
        cur = next;
        out[n + 1] = cur;
    }
}

void laguerre_ladder(int count, int alpha, double x, std::vector<Scaled>& out) {
    out.resize(count);
    double a = alpha;
    Scaled prev;
    if (x == 0.0)
        prev = alpha == 0 ? Scaled(1.0) : Scaled(0.0);
    else
        prev = Scaled::from_log(0.5 * a * std::log(x) - 0.5 * x - 0.5 * std::lgamma(a + 1.0));
    out[0] = prev;
    if (count == 1) return;
    Scaled cur = prev * ((1.0 + a - x) / std::sqrt(1.0 + a));
    out[1] = cur;
    for (int n = 1; n + 1 < count; ++n) {
        Scaled next = (cur * (2.0 * n + 1.0 + a - x) - prev * std::sqrt(n * (n + a))) /
                      std::sqrt((n + 1.0) * (n + 1.0 + a));
        prev = cur;
        cur = next;
        out[n + 1] = cur;
    }
}

}  // namespace

WavePair hermite_waves(int N, double x) {
    if (N < 1) throw std::invalid_argument("hermite_waves: N must be >= 1");
    std::vector<Scaled> f;
    hermite_ladder(N + 1, x, f);
    WavePair w;
    w.fN = f[N];
    w.fNm1 = f[N - 1];
    w.dN = f[N - 1] * std::sqrt(2.0 * N) - f[N] * x;
    w.dNm1 = (N >= 2 ? f[N - 2] * std::sqrt(2.0 * (N - 1.0)) : Scaled(0.0)) - f[N - 1] * x;
    return w;
}

WavePair laguerre_waves(int N, int alpha, double x) {
    if (N < 1) throw std::invalid_argument("laguerre_waves: N must be >= 1");
    if (x < 0.0) throw std::invalid_argument("laguerre_waves: x must be >= 0");
    std::vector<Scaled> f;
    laguerre_ladder(N + 1, alpha, x, f);
    double a = alpha;
    WavePair w;
    w.fN = f[N];
    w.fNm1 = f[N - 1];
    if (x > 0.0) {
        w.dN = f[N] * ((2.0 * N + a - x) / (2.0 * x)) -
               f[N - 1] * (std::sqrt(N * (N + a)) / x);
        w.dNm1 = f[N - 1] * ((2.0 * (N - 1.0) + a - x) / (2.0 * x)) -
                 (N >= 2 ? f[N - 2] * (std::sqrt((N - 1.0) * (N - 1.0 + a)) / x)
                         : Scaled(0.0));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Null kernels.
// ---------------------------------------------------------------------------

namespace {

// Plain sum form sum_{n<N} f_n(x) f_n(y); fallback near x = y = 0 where the
// Laguerre derivative expressions divide by x.
Scaled kernel_sum_form(const WeightSpec& spec, int N, double x, double y) {
    std::vector<Scaled> fx, fy;
    if (spec.ensemble == Ensemble::hermite) {
        hermite_ladder(N, x, fx);
        hermite_ladder(N, y, fy);
    } else {
        laguerre_ladder(N, spec.alpha, x, fx);
        laguerre_ladder(N, spec.alpha, y, fy);
    }
    Scaled s;
    for (int n = 0; n < N; ++n) s += fx[n] * fy[n];
    return s;
}

}  // namespace

Scaled kernel_null_scaled(const WeightSpec& spec, int N, double x, double y) {
    if (N < 1) throw std::invalid_argument("kernel_null: N must be >= 1");
    if (spec.ensemble == Ensemble::laguerre && (x < 0.0 || y < 0.0))
        throw std::invalid_argument("kernel_null: Laguerre kernel needs x,y >= 0");

    if (spec.ensemble == Ensemble::hermite) {
        if (std::abs(x - y) >= kConfluent) {
            WavePair wx = hermite_waves(N, x), wy = hermite_waves(N, y);
            return (wx.fN * wy.fNm1 - wx.fNm1 * wy.fN) * (std::sqrt(N / 2.0) / (x - y));
        }
        double m = 0.5 * (x + y);
        WavePair w = hermite_waves(N, m);
        return (w.fNm1 * w.dN - w.fN * w.dNm1) * std::sqrt(N / 2.0);
    }

    double a = spec.alpha;
    if (std::abs(x - y) >= kConfluent) {
        WavePair wx = laguerre_waves(N, spec.alpha, x), wy = laguerre_waves(N, spec.alpha, y);
        return (wx.fN * wy.fNm1 - wx.fNm1 * wy.fN) * (-std::sqrt(N * (N + a)) / (x - y));
    }
    double m = 0.5 * (x + y);
    if (m < 1e-4) return kernel_sum_form(spec, N, x, y);
    WavePair w = laguerre_waves(N, spec.alpha, m);
    return (w.fN * w.dNm1 - w.fNm1 * w.dN) * std::sqrt(N * (N + a));
}

double kernel_null(const WeightSpec& spec, int N, double x, double y) {
    return kernel_null_scaled(spec, N, x, y).real();
}

double kernel_edge_null(Edge edge, int alpha, double X, double Y) {
    if (edge == Edge::soft) {
        if (std::abs(X - Y) < kConfluent) {
            double m = 0.5 * (X + Y);
            double ai = airy_ai(m), dai = airy_ai_prime(m);
            return dai * dai - m * ai * ai;
        }
        return (airy_ai(X) * airy_ai_prime(Y) - airy_ai_prime(X) * airy_ai(Y)) / (X - Y);
    }
    if (!(X > 0.0) || !(Y > 0.0))
        throw std::invalid_argument("kernel_edge_null: hard edge needs X,Y > 0");
    if (std::abs(X - Y) < kConfluent * std::max(1.0, std::abs(X))) {
        double m = 0.5 * (X + Y), s = std::sqrt(m);
        double j = bessel_j(alpha, s), dj = bessel_j_prime(alpha, s);
        return 0.25 * (dj * dj + (1.0 - alpha * alpha / m) * j * j);
    }
    double sx = std::sqrt(X), sy = std::sqrt(Y);
    return (bessel_j(alpha, sx) * sy * bessel_j_prime(alpha, sy) -
            sx * bessel_j_prime(alpha, sx) * bessel_j(alpha, sy)) /
           (2.0 * (X - Y));
}

}  // namespace rmes
