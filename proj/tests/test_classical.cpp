#include <cmath>

#include "doctest.h"
#include "rmes/classical.hpp"
#include "rmes/quadrature.hpp"

using namespace rmes;

namespace {

const double kSqrtPi = std::sqrt(3.14159265358979323846);

// Maclaurin-series oracle for Ai, good to ~1e-13 for |x| <= 8.
double airy_series(double x) {
    double c1 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    double c2 = std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    double f = 1.0, g = 1.0, sf = 1.0, sg = 1.0, x3 = x * x * x;
    for (int k = 1; k <= 60; ++k) {
        f *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
        g *= x3 / ((3.0 * k + 1.0) * (3.0 * k));
        sf += f;
        sg += g;
    }
    return c1 * sf - c2 * x * sg;
}

}  // namespace

TEST_SUITE_BEGIN("classical");

TEST_CASE("hermite polynomial values") {
    CHECK(hermite_poly(0, 3.7) == 1.0);
    CHECK(hermite_poly(1, 2.0) == 4.0);
    CHECK(hermite_poly(2, 1.0) == 2.0);
}

TEST_CASE("laguerre polynomial values") {
    CHECK(laguerre_poly(0, 5, 1.3) == 1.0);
    CHECK(laguerre_poly(1, 2, 1.0) == 2.0);
    CHECK(laguerre_poly(2, 0, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("laguerre negative alpha through the swap identity") {
    // n! (-x)^{-a} L_n^{-a}(x) = (n-a)! L^a_{n-a}(x) checked against the
    // direct polynomial recurrence, which is valid for any alpha.
    for (int n : {2, 4, 7}) {
        for (int a : {-1, -2, -3}) {
            for (double x : {0.3, 1.7, 4.2}) {
                double lhs = laguerre_poly(n, a, x);
                double p0 = 1.0, p1 = a + 1.0 - x;
                for (int k = 1; k < n; ++k) {
                    double p2 = ((2.0 * k + 1.0 + a - x) * p1 - (k + a) * p0) / (k + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                double rhs = n == 0 ? p0 : p1;
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("hermite and laguerre agree with their loop integrals") {
    const cplx origin[] = {cplx(0.0, 0.0)};
    // H_n(x) = 2^n n! (1/2 pi i) oint e^{xw - w^2/4} / w^{n+1} dw
    for (int n : {1, 5, 17, 30}) {
        for (double x : {-9.5, -1.0, 0.5, 10.0}) {
            auto lf = [&](cplx w) { return x * w - w * w / 4.0 - (n + 1.0) * std::log(w); };
            auto c = choose_circle(lf, origin, {}, 2.0 * (std::abs(x) + std::sqrt(2.0 * n + 3.0)));
            auto r = integrate_circle_log(lf, c, 1e-13, 256);
            Scaled lhs = r.scaled() * scaled_factorial(n) * scaled_ipow(2.0, n);
            double rhs = hermite_poly(n, x);
            CHECK(lhs.real() == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
    // L_n^a(x) = (1/2 pi i) oint e^{-xw} (1+w)^{n+a} / w^{n+1} dw
    for (int n : {1, 6, 23}) {
        for (int a : {0, 2}) {
            for (double x : {0.4, 3.0, 9.0}) {
                auto lf = [&](cplx w) {
                    return -x * w + (n + double(a)) * std::log(1.0 + w) -
                           (n + 1.0) * std::log(w);
                };
                auto c = choose_circle(lf, origin, {},
                                       2.0 * (1.0 + std::sqrt((n + 1.0) / x) + (n + a + 1.0) / (x + 1.0)));
                auto r = integrate_circle_log(lf, c, 1e-13, 256);
                CHECK(r.scaled().real() ==
                      doctest::Approx(laguerre_poly(n, a, x)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("bessel values and reflection") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(-2, 1.5) == doctest::Approx(bessel_j(2, 1.5)).epsilon(1e-14));
    CHECK(bessel_j(-3, 1.5) == doctest::Approx(-bessel_j(3, 1.5)).epsilon(1e-14));
    // classic table value
    CHECK(bessel_j(0, 2.0) == doctest::Approx(0.22389077914123567).epsilon(1e-12));
}

TEST_CASE("bessel series and contour paths agree across regimes") {
    // the contour path is exercised directly against the series in the
    // region where both are trustworthy
    for (int a : {0, 1, 5}) {
        for (double x : {0.7, 4.0, 11.0}) {
            double nu = a + 1.0;
            double rho = x < nu ? (nu + std::sqrt(nu * nu - x * x)) / x : 1.0;
            auto lf = [&](cplx z) { return 0.5 * x * (z - 1.0 / z) - nu * std::log(z); };
            auto r = integrate_circle_log(
                lf, ContourSpec::circle_around({0.0, 0.0}, rho), 1e-13, 512);
            CHECK(r.scaled().real() == doctest::Approx(bessel_j(a, x)).epsilon(1e-10));
        }
    }
    // large argument goes through the contour in production; spot-check a
    // known value J_0(30) from the asymptotic-series literature constant
    CHECK(bessel_j(0, 30.0) == doctest::Approx(-0.086367983581040).epsilon(1e-9));
}

TEST_CASE("airy function against series oracle") {
    CHECK(airy_ai(0.0) == doctest::Approx(0.35502805388781724).epsilon(1e-12));
    for (double x : {-7.5, -3.0, -1.0, 0.0, 0.5, 2.0, 5.0, 8.0}) {
        CHECK(airy_ai(x) == doctest::Approx(airy_series(x)).epsilon(5e-10));
    }
    CHECK(std::abs(airy_ai(10.0)) < 1e-9);

    // defining ODE via finite differences
    double h = 1e-3, x = 1.0;
    double dd = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
    CHECK(std::abs(dd - x * airy_ai(x)) < 1e-5);

    // derivative consistency: Ai'(0) = -3^{-1/3}/Gamma(1/3)
    double daio = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    CHECK(airy_ai_prime(0.0) == doctest::Approx(daio).epsilon(1e-11));
}

TEST_CASE("null kernel values and confluent diagonal") {
    WeightSpec h{Ensemble::hermite, 0};
    CHECK(kernel_null(h, 1, 0.0, 0.0) == doctest::Approx(1.0 / kSqrtPi).epsilon(1e-12));

    WeightSpec l{Ensemble::laguerre, 0};
    CHECK(kernel_null(l, 1, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // CD ratio matches the explicit polynomial sum (independent oracle)
    for (double x : {0.3, 1.2}) {
        for (double y : {0.9, 2.4}) {
            int N = 5;
            double sum = 0.0;
            for (int n = 0; n < N; ++n) {
                double c = std::exp(-0.5 * (x * x + y * y)) /
                           (kSqrtPi * std::pow(2.0, n) * std::tgamma(n + 1.0));
                sum += c * hermite_poly(n, x) * hermite_poly(n, y);
            }
            CHECK(kernel_null(h, N, x, y) == doctest::Approx(sum).epsilon(1e-11));
        }
    }

    // diagonal continuity across the confluent switch
    double k1 = kernel_null(h, 4, 0.7, 0.7);
    double k2 = kernel_null(h, 4, 0.7, 0.7 + 2e-6);
    CHECK(k1 == doctest::Approx(k2).epsilon(1e-6));
    double k3 = kernel_null(l, 4, 1.1, 1.1);
    double k4 = kernel_null(l, 4, 1.1, 1.1 + 2e-6);
    CHECK(k3 == doctest::Approx(k4).epsilon(1e-6));
}

TEST_CASE("null kernel trace equals N") {
    WeightSpec h{Ensemble::hermite, 0};
    auto r = integrate_real_line([&](double x) { return kernel_null(h, 5, x, x); }, 1e-9);
    CHECK(r.value == doctest::Approx(5.0).epsilon(1e-7));

    WeightSpec l{Ensemble::laguerre, 1};
    auto rl = integrate_halfline([&](double x) { return kernel_null(l, 4, x, x); }, 0.0, 1e-9);
    CHECK(rl.value == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("edge kernels: symmetry, diagonal, values") {
    CHECK(kernel_edge_null(Edge::soft, 0, 0.0, 0.0) ==
          doctest::Approx(0.06698673).epsilon(1e-6));
    double a = kernel_edge_null(Edge::soft, 0, 0.3, -0.7);
    double b = kernel_edge_null(Edge::soft, 0, -0.7, 0.3);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));

    // hard-edge diagonal formula consistent with the near-diagonal ratio
    for (int al : {0, 1, 2}) {
        double d = kernel_edge_null(Edge::hard, al, 1.3, 1.3);
        double n = kernel_edge_null(Edge::hard, al, 1.3, 1.3 + 5e-6);
        CHECK(d == doctest::Approx(n).epsilon(1e-5));
    }
    CHECK(kernel_edge_null(Edge::hard, 3, 0.8, 2.9) ==
          doctest::Approx(kernel_edge_null(Edge::hard, 3, 2.9, 0.8)).epsilon(1e-12));
}

TEST_CASE("hard-edge scaling of the null Laguerre kernel") {
    // (1/4N) K_N(X/4N, Y/4N) -> Bessel kernel, error O(1/N)
    WeightSpec l{Ensemble::laguerre, 0};
    double X = 1.0, Y = 2.5;
    double lim = kernel_edge_null(Edge::hard, 0, X, Y);
    double e100 = std::abs(kernel_null(l, 100, X / 400.0, Y / 400.0) / 400.0 - lim);
    double e200 = std::abs(kernel_null(l, 200, X / 800.0, Y / 800.0) / 800.0 - lim);
    CHECK(e200 < e100);
    CHECK(e200 < 0.05);
}

TEST_CASE("soft-edge scaling of the null kernels at large N") {
    // B K_N(A + BX, A + BY) stays finite and approaches the Airy kernel
    int N = 400;
    double A = 4.0 * N, B = 2.0 * std::pow(2.0 * N, 1.0 / 3.0);
    WeightSpec l{Ensemble::laguerre, 0};
    double X = 0.4, Y = -0.6;
    double scaled = B * kernel_null(l, N, A + B * X, A + B * Y);
    double lim = kernel_edge_null(Edge::soft, 0, X, Y);
    CHECK(std::isfinite(scaled));
    CHECK(std::abs(scaled - lim) < 0.02);

    WeightSpec h{Ensemble::hermite, 0};
    double Ah = std::sqrt(2.0 * N), Bh = 1.0 / (std::sqrt(2.0) * std::pow(N, 1.0 / 6.0));
    double sh = Bh * kernel_null(h, N, Ah + Bh * X, Ah + Bh * Y);
    CHECK(std::abs(sh - lim) < 0.05);
}

TEST_SUITE_END();
