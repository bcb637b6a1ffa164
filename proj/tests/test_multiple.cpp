#include <cmath>
#include <functional>

#include "doctest.h"
#include "rmes/multiple.hpp"
#include "rmes/quadrature.hpp"

using namespace rmes;

namespace {

const double kSqrtPi = std::sqrt(3.14159265358979323846);

SourceSpectrum spec1(double b) { return SourceSpectrum({b}, {1}); }

double lfact(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_SUITE_BEGIN("multiple");

TEST_CASE("type I residue formulas at rank one") {
    for (double b : {0.3, -0.4, 1.2}) {
        for (int alpha : {0, 1, 3}) {
            for (double x : {0.5, 2.0}) {
                double got = multiple_laguerre(FnKind::type_I, spec1(b), alpha, x);
                double want = std::exp(-x * b) * std::pow(1.0 + b, alpha);
                CHECK(got == doctest::Approx(want).epsilon(1e-10));
            }
        }
        double gh = multiple_hermite(FnKind::type_I, spec1(b), 0.7);
        double wh = std::exp(-b * b / 4.0 - 0.7 * b);
        CHECK(gh == doctest::Approx(wh).epsilon(1e-10));
    }
}

TEST_CASE("type II small cases") {
    // order-2 residue at 0 of e^{xw}(w-1)/w^2 gives 1 - x
    double g = multiple_laguerre(FnKind::type_II, spec1(0.0), 0, 0.35);
    CHECK(g == doctest::Approx(1.0 - 0.35).epsilon(1e-10));
    // odd integrand vanishes
    CHECK(std::abs(multiple_hermite(FnKind::type_II, spec1(0.0), 0.0)) < 1e-10);
}

TEST_CASE("zero-source reduction to classical polynomials") {
    for (int w : {1, 2, 4}) {
        SourceSpectrum z({0.0}, {w});
        for (int alpha : {0, 2}) {
            for (double x : {0.5, 2.0, 5.0}) {
                CHECK(multiple_laguerre(FnKind::type_I, z, alpha, x) ==
                      doctest::Approx(laguerre_poly(w - 1, alpha, x)).epsilon(1e-9));
                CHECK(multiple_laguerre(FnKind::type_II, z, alpha, x) ==
                      doctest::Approx(laguerre_poly(w, alpha, x)).epsilon(1e-9));
            }
        }
        for (double x : {-1.5, 0.7}) {
            CHECK(multiple_hermite(FnKind::type_I, z, x) ==
                  doctest::Approx(hermite_poly(w - 1, x)).epsilon(1e-9));
            CHECK(multiple_hermite(FnKind::type_II, z, x) ==
                  doctest::Approx(hermite_poly(w, x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("type I splits into its pole components") {
    SourceSpectrum s({0.3, -0.2}, {2, 1});
    for (double x : {0.6, 1.9}) {
        double whole = multiple_laguerre(FnKind::type_I, s, 1, x);
        double parts = laguerre_type1_component_scaled(s, 1, 0, x).real() +
                       laguerre_type1_component_scaled(s, 1, 1, x).real();
        CHECK(whole == doctest::Approx(parts).epsilon(1e-9));

        double hw = multiple_hermite(FnKind::type_I, s, x);
        double hp = hermite_type1_component_scaled(s, 0, x).real() +
                    hermite_type1_component_scaled(s, 1, x).real();
        CHECK(hw == doctest::Approx(hp).epsilon(1e-9));
    }
}

TEST_CASE("orthogonality, small table") {
    SourceSpectrum s({0.3, -0.2}, {2, 1});
    int alpha = 1, w = s.weight();
    for (int j = 0; j <= w - 1; ++j) {
        auto r = integrate_halfline(
            [&](double x) {
                return std::exp(-x) * std::pow(x, alpha + j) *
                       multiple_laguerre(FnKind::type_I, s, alpha, x, 1e-11);
            },
            0.0, 1e-9);
        if (j < w - 1) {
            CHECK(std::abs(r.value) < 1e-7);
        } else {
            double want = ((w - 1) % 2 == 0 ? 1.0 : -1.0) * lfact(w + alpha - 1) /
                          (std::pow(1.3, 2) * std::pow(0.8, 1));
            CHECK(r.value == doctest::Approx(want).epsilon(1e-6));
        }
    }
    // type II moments vanish against each of its weights
    for (int i = 0; i < s.dim(); ++i) {
        for (int j = 0; j < s.multiplicities[i]; ++j) {
            auto r = integrate_halfline(
                [&](double x) {
                    return std::exp(-x - s.values[i] * x) * std::pow(x, alpha + j) *
                           multiple_laguerre(FnKind::type_II, s, alpha, x, 1e-11);
                },
                0.0, 1e-9);
            CHECK(std::abs(r.value) < 1e-6);
        }
    }

    // Hermite counterpart
    SourceSpectrum h({0.5, -0.3}, {1, 2});
    int wh = h.weight();
    for (int j = 0; j <= wh - 1; ++j) {
        auto r = integrate_real_line(
            [&](double x) {
                return std::exp(-x * x) * std::pow(x, j) *
                       multiple_hermite(FnKind::type_I, h, x, 1e-11);
            },
            1e-9);
        if (j < wh - 1)
            CHECK(std::abs(r.value) < 1e-7);
        else
            CHECK(r.value == doctest::Approx(kSqrtPi * lfact(wh - 1)).epsilon(1e-6));
    }
}

TEST_CASE("incomplete laguerre functions match restricted multiple functions") {
    int N = 4, r = 2, alpha = 1;
    std::vector<double> a{0.4, -0.3};
    IncompleteParams p{N, r, alpha, a};
    for (double x : {0.8, 2.0}) {
        for (int i = 1; i <= r; ++i) {
            // Lambda-tilde^(i) = type-I multiple Laguerre at shifted alpha and
            // restricted source {a_1..a_i, 0^{N-r}}
            std::vector<double> v(a.begin(), a.begin() + i);
            std::vector<int> m(v.size(), 1);
            v.push_back(0.0);
            m.push_back(N - r);
            SourceSpectrum restricted(v, m);
            double lhs = incomplete_function(IncompleteFamily::laguerre_I, i, p, x);
            double rhs =
                multiple_laguerre(FnKind::type_I, restricted, alpha + r + 1 - i, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
        for (int i = 0; i + 1 <= r; ++i) {
            // Lambda^(i+1) against the type-II side
            std::vector<double> v(a.begin(), a.begin() + i);
            std::vector<int> m(v.size(), 1);
            v.push_back(0.0);
            m.push_back(N - r);
            SourceSpectrum restricted(v, m);
            double lhs = incomplete_function(IncompleteFamily::laguerre_II, i + 1, p, x);
            double pref = lfact(N + i - r) / lfact(N + alpha - 1) *
                          std::pow(x, alpha + r - i - 1.0) * std::exp(-x);
            double rhs = pref * multiple_laguerre(FnKind::type_II, restricted,
                                                  alpha + r - i - 1, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("incomplete hermite functions match restricted multiple functions") {
    int N = 4, r = 2;
    std::vector<double> a{0.5, -0.2};
    IncompleteParams p{N, r, 0, a};
    for (double x : {-0.6, 1.1}) {
        for (int i = 1; i <= r; ++i) {
            std::vector<double> v(a.begin(), a.begin() + i);
            std::vector<int> m(v.size(), 1);
            v.push_back(0.0);
            m.push_back(N - r);
            SourceSpectrum restricted(v, m);
            double lhs = incomplete_function(IncompleteFamily::hermite_I, i, p, x);
            int d = N + i - r - 1;
            double pref = std::exp(-0.5 * x * x) /
                          ((d % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0, d) * lfact(d));
            double rhs = pref * multiple_hermite(FnKind::type_I, restricted, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
        for (int i = 0; i + 1 <= r; ++i) {
            std::vector<double> v(a.begin(), a.begin() + i);
            std::vector<int> m(v.size(), 1);
            v.push_back(0.0);
            m.push_back(N - r);
            SourceSpectrum restricted(v, m);
            double lhs = incomplete_function(IncompleteFamily::hermite_II, i + 1, p, x);
            double pref = ((N + i - r) % 2 == 0 ? 1.0 : -1.0) / kSqrtPi *
                          std::exp(-0.5 * x * x);
            double rhs = pref * multiple_hermite(FnKind::type_II, restricted, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("incomplete bessel links to multiple bessel") {
    int alpha = 1, r = 2;
    std::vector<double> h{0.2, 0.35};
    IncompleteParams p{0, r, alpha, h};
    for (double X : {0.5, 1.0, 4.0}) {
        double sx = std::sqrt(X);
        for (int i = 1; i <= r; ++i) {
            SourceSpectrum s(std::vector<double>(h.begin(), h.begin() + i),
                             std::vector<int>(i, 1));
            double lhs = multiple_bessel(FnKind::type_I, s, alpha + r + 1 - i, sx);
            double rhs = std::pow(2.0 * sx, alpha + r + 1.0 - i) *
                         incomplete_function(IncompleteFamily::bessel_I, i, p, X);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

            SourceSpectrum s2(std::vector<double>(h.begin(), h.begin() + (i - 1)),
                              std::vector<int>(i - 1, 1));
            double lhs2 = multiple_bessel(FnKind::type_II, s2, alpha + r - i, sx);
            double rhs2 = std::pow(2.0 * sx, -(alpha + r - i + 0.0)) *
                          incomplete_function(IncompleteFamily::bessel_II, i, p, X);
            CHECK(lhs2 == doctest::Approx(rhs2).epsilon(1e-10));
        }
    }
    // with alpha = r - 1, J^(1) collapses onto a classical Bessel value
    {
        int al = r - 1;
        IncompleteParams q{0, r, al, h};
        for (double X : {0.5, 1.0, 4.0}) {
            double sx = std::sqrt(X);
            double lhs = incomplete_function(IncompleteFamily::bessel_II, 1, q, X);
            double rhs = std::pow(2.0 * sx, al + r - 1.0) * bessel_j(al + r - 1, sx);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("empty-spectrum multiple bessel reduces to J_alpha") {
    SourceSpectrum empty;
    for (int alpha : {0, 2}) {
        for (double x : {1.0, 2.0}) {
            CHECK(multiple_bessel(FnKind::type_II, empty, alpha, x) ==
                  doctest::Approx(bessel_j(alpha, x)).epsilon(1e-10));
            CHECK(multiple_bessel(FnKind::type_I, empty, alpha, x) ==
                  doctest::Approx(bessel_j(alpha, x)).epsilon(1e-10));
        }
    }
    // merged zero source of any multiplicity also collapses (type II)
    for (int k : {1, 3}) {
        SourceSpectrum z({0.0}, {k});
        CHECK(multiple_bessel(FnKind::type_II, z, 1, 1.7) ==
              doctest::Approx(bessel_j(1, 1.7)).epsilon(1e-8));
    }
}

TEST_CASE("incomplete airy links to multiple airy") {
    std::vector<double> s{0.5, 1.1};
    IncompleteParams p{0, 2, 0, s};
    for (double x : {-1.0, 0.3, 1.5}) {
        for (int i = 1; i <= 2; ++i) {
            SourceSpectrum sp(std::vector<double>(s.begin(), s.begin() + i),
                              std::vector<int>(i, 1));
            CHECK(multiple_airy(FnKind::type_I, sp, x) ==
                  doctest::Approx(incomplete_function(IncompleteFamily::airy_I, i, p, x))
                      .epsilon(1e-10));
            SourceSpectrum sp2(std::vector<double>(s.begin(), s.begin() + (i - 1)),
                               std::vector<int>(i - 1, 1));
            CHECK(multiple_airy(FnKind::type_II, sp2, x) ==
                  doctest::Approx(-incomplete_function(IncompleteFamily::airy_II, i, p, x))
                      .epsilon(1e-10));
        }
    }
    // empty-product type II is Ai itself
    SourceSpectrum empty;
    CHECK(multiple_airy(FnKind::type_II, empty, 0.8) ==
          doctest::Approx(airy_ai(0.8)).epsilon(1e-10));
}

TEST_CASE("rank-one incomplete airy vs the real-axis integral") {
    // Ai-tilde^(1)(X) against I(X) = int_{-inf}^X e^{s1 (t - X)} Ai(t) dt.
    // Both solve the same first-order ODE; matching their decay at X -> -inf
    // fixes Ai-tilde^(1) = -I.  The rank-one kernel correction is
    // Ai-tilde^(1)(X) Ai^(1)(Y) = (+1) I(X) Ai(Y) since Ai^(1) = -Ai.
    double s1 = 0.7;
    IncompleteParams p{0, 1, 0, {s1}};
    for (double X : {-0.8, 0.3, 1.2}) {
        double contour = incomplete_function(IncompleteFamily::airy_I, 1, p, X);
        auto tail = integrate_halfline(
            [&](double u) { return std::exp(-s1 * u) * airy_ai(X - u); }, 0.0, 1e-10);
        CHECK(contour == doctest::Approx(-tail.value).epsilon(1e-7));
        double a2 = incomplete_function(IncompleteFamily::airy_II, 1, p, X);
        CHECK(a2 == doctest::Approx(-airy_ai(X)).epsilon(1e-10));
    }
}

TEST_CASE("differential operator identities") {
    CHECK(apply_diff_operator(0.0, [](double x) { return x * x; }, 3.0) ==
          doctest::Approx(-6.0).epsilon(1e-9));

    // anti-derivative identity: D_{-a_1} D_{-a_2} [type-I Laguerre] collapses
    // to a plain Laguerre polynomial of shifted parameter
    int alpha = 1, r = 2, mD = 3;
    std::vector<double> a{0.4, -0.3};
    SourceSpectrum qs({a[0], a[1], 0.0}, {1, 1, mD});
    int w = qs.weight();
    std::function<double(double)> f = [&](double t) {
        return multiple_laguerre(FnKind::type_I, qs, alpha, t, 1e-12);
    };
    for (double ak : a) {
        auto inner = f;
        f = [inner, ak](double t) {
            return apply_diff_operator(-ak, inner, t, 2e-3);
        };
    }
    for (double x : {0.9, 1.7}) {
        CHECK(f(x) == doctest::Approx(laguerre_poly(w - r - 1, alpha + r, x)).epsilon(2e-5));
    }

    // derivative identity for the type-II side (classical input only).
    // The operator shifts must be 1 + a_k: each application of D_{1+a,x} to
    // e^{xw} inserts the factor -(w - 1 - a) that the type-II integrand
    // carries for source value a.
    std::function<double(double)> g = [&](double t) {
        return std::pow(t, alpha + r) * laguerre_poly(w - r, alpha + r, t);
    };
    for (double ak : a) {
        auto inner = g;
        g = [inner, ak](double t) { return apply_diff_operator(1.0 + ak, inner, t, 2e-3); };
    }
    for (double x : {0.9, 1.7}) {
        double want = std::pow(x, alpha) * multiple_laguerre(FnKind::type_II, qs, alpha, x);
        double got = (r % 2 == 0 ? 1.0 : -1.0) * lfact(w - r) / lfact(w) * g(x);
        CHECK(got == doctest::Approx(want).epsilon(2e-5));
    }

    // Hermite pair
    SourceSpectrum qh({0.5, -0.2, 0.0}, {1, 1, 2});
    int wh = qh.weight(), rh = 2;
    std::function<double(double)> fh = [&](double t) {
        return multiple_hermite(FnKind::type_I, qh, t, 1e-12);
    };
    for (double ak : {0.5, -0.2}) {
        auto inner = fh;
        fh = [inner, ak](double t) { return apply_diff_operator(-ak, inner, t, 2e-3); };
    }
    for (double x : {0.4, 1.3}) {
        double want = std::pow(-2.0, rh) * lfact(wh - 1) / lfact(wh - rh - 1) *
                      hermite_poly(wh - rh - 1, x);
        CHECK(fh(x) == doctest::Approx(want).epsilon(3e-5));
    }

    // the weighted derivative chain builds the type-II polynomial: on the
    // line representation each D_{a,x} inserts (w + a), which is exactly the
    // factor the type-II integrand carries after u -> -w
    std::function<double(double)> gh = [&](double t) {
        return std::exp(-t * t) * hermite_poly(wh - rh, t);
    };
    for (double ak : {0.5, -0.2}) {
        auto inner = gh;
        gh = [inner, ak](double t) { return apply_diff_operator(ak, inner, t, 2e-3); };
    }
    for (double x : {0.4, 1.3}) {
        double want = std::exp(-x * x) * multiple_hermite(FnKind::type_II, qh, x);
        CHECK(gh(x) == doctest::Approx(want).epsilon(3e-5));
    }
}

TEST_CASE("degenerate source values merge continuously") {
    double eps = 1e-4;
    SourceSpectrum split({0.3, 0.3 + eps}, {1, 1});
    SourceSpectrum merged({0.3}, {2});
    for (double x : {0.7, 2.1}) {
        double a = multiple_laguerre(FnKind::type_I, split, 1, x);
        double b = multiple_laguerre(FnKind::type_I, merged, 1, x);
        CHECK(std::abs(a - b) < 50.0 * eps);
    }
    // below the merge threshold the two inputs give the same spectrum
    SourceSpectrum tiny({0.3, 0.3 + 1e-12}, {1, 1});
    CHECK(tiny.dim() == 1);
    CHECK(tiny.multiplicities[0] == 2);
}

TEST_CASE("laguerre to hermite scaling (single alpha sanity)") {
    SourceSpectrum b({0.3, -0.2}, {1, 1});
    int w = b.weight(), alpha = 400;
    double X = 0.8;
    double sa = std::sqrt(2.0 * alpha);
    SourceSpectrum bs({0.3 / sa, -0.2 / sa}, {1, 1});
    double lhs = std::pow(2.0 * alpha, 0.5 * (1.0 - w)) *
                 multiple_laguerre(FnKind::type_I, bs, alpha, alpha + sa * X);
    double cm = ((w - 1) % 2 == 0 ? 1.0 : -1.0) / (std::pow(2.0, w - 1) * lfact(w - 1));
    double rhs = cm * multiple_hermite(FnKind::type_I, b, X);
    CHECK(std::abs(lhs - rhs) < 0.1 * std::abs(rhs) + 0.02);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS((void)multiple_laguerre(FnKind::type_I, spec1(-1.5), 0, 1.0),
                    InvalidSpectrum);
    IncompleteParams p{4, 2, 0, {0.4, -0.3}};
    CHECK_THROWS_AS((void)incomplete_function(IncompleteFamily::laguerre_I, 3, p, 1.0),
                    IndexOutOfRange);
    CHECK_THROWS_AS((void)incomplete_function(IncompleteFamily::laguerre_I, 0, p, 1.0),
                    IndexOutOfRange);
    CHECK_THROWS_AS(SourceSpectrum({0.1}, {0}), InvalidSpectrum);
}

TEST_SUITE_END();
