#include "rmes/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace rmes {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDiagonal = 1e-6;

double lgam(double x) { return std::lgamma(x); }

// ---------------------------------------------------------------------------
// Laguerre perturbed kernel, four forms.  All return the plain kernel K; the
// gauge factor is applied at the dispatch level.
// ---------------------------------------------------------------------------

// Two-loop form.  z runs around the source values (and 0), w around -1; the
// contours must stay clear of each other.
Scaled laguerre_double_scaled(const SourceSpectrum& spec, int alpha, double x, double y,
                              double tol) {
    spec.require_laguerre_valid();
    double P = spec.weight() + alpha;

    std::vector<double> pts = spec.values;
    pts.push_back(0.0);
    double lo = *std::min_element(pts.begin(), pts.end());
    double hi = *std::max_element(pts.begin(), pts.end());
    cplx zc(0.5 * (lo + hi), 0.0);
    double rz = 0.5 * (hi - lo) + 0.3;
    const double rw = 0.2;
    if (std::abs(zc + 1.0) - rz - rw < 0.05)
        throw ContourClash("laguerre kernel: z and w loops cannot be kept apart");

    auto inner = [&](cplx z) {
        auto lw = [&](cplx w) {
            cplx s = y * w - P * std::log(1.0 + w) - std::log(w - z);
            for (int i = 0; i < spec.dim(); ++i)
                s += double(spec.multiplicities[i]) * std::log(w - spec.values[i]);
            return s;
        };
        auto res = integrate_circle_log(
            lw, ContourSpec::circle_around(cplx(-1.0, 0.0), rw), tol,
            circle_nodes_hint(std::abs(y) * rw + P + spec.weight()));
        Scaled v = res.scaled();
        return std::log(v.mantissa()) + v.scale();
    };

    auto lz = [&](cplx z) {
        cplx s = -x * z + P * std::log(1.0 + z);
        for (int i = 0; i < spec.dim(); ++i)
            s -= double(spec.multiplicities[i]) * std::log(z - spec.values[i]);
        return s + inner(z);
    };
    auto res = integrate_circle_log(
        lz, ContourSpec::circle_around(zc, rz), tol,
        circle_nodes_hint(std::abs(x) * rz + P + spec.weight()));
    Scaled pref = Scaled::from_log(0.5 * alpha * (std::log(x) - std::log(y)) +
                                   0.5 * (y - x));
    return pref * res.scaled();
}

Scaled laguerre_cd_scaled(const SourceSpectrum& spec, int alpha, double x, double y,
                          double tol) {
    int w = spec.weight();
    Scaled lead = multiple_laguerre_scaled(FnKind::type_I, spec, alpha, x, tol) *
                  multiple_laguerre_scaled(FnKind::type_II, spec, alpha, y, tol);
    Scaled sum;
    for (int i = 0; i < spec.dim(); ++i) {
        double frac = double(spec.multiplicities[i]) / w;
        sum += multiple_laguerre_scaled(FnKind::type_I, spec.raised(i), alpha, x, tol) *
               multiple_laguerre_scaled(FnKind::type_II, spec.lowered(i), alpha, y, tol) *
               frac;
    }
    Scaled pref = Scaled::from_log(lgam(w + 1.0) - lgam(w + alpha) +
                                   0.5 * alpha * std::log(x * y) - 0.5 * (x + y)) /
                  (x - y);
    return pref * (lead - sum);
}

// Rank-by-rank expansion.  Expanding 1/(w-z) around the i-th source value in
// the two-loop form gives, per (i, j), the i-th type-I component at
// composition m-(j-1)e_i against the type-II polynomial at m-j e_i, carrying
// a factor (1+b_i): the geometric series around b_i sums to
// 1/((w-z)(1+b_i)), so each term must be scaled back up by (1+b_i).
Scaled laguerre_single_sum_scaled(const SourceSpectrum& spec, int alpha, double x, double y,
                                  double tol) {
    int w = spec.weight();
    Scaled total;
    for (int i = 0; i < spec.dim(); ++i) {
        SourceSpectrum reduced = spec;
        for (int j = 1; j <= spec.multiplicities[i]; ++j) {
            // reduced has composition m - (j-1) e_i here
            Scaled comp = laguerre_type1_component_scaled(reduced, alpha, i, x, tol);
            Scaled typeII =
                multiple_laguerre_scaled(FnKind::type_II, reduced.lowered(i), alpha, y, tol);
            total += comp * typeII * (1.0 + spec.values[i]) *
                     Scaled::from_log(lgam(w - j + 1.0) - lgam(w + alpha - j + 1.0));
            if (j < spec.multiplicities[i]) reduced = reduced.lowered(i);
        }
    }
    return total * Scaled::from_log(0.5 * alpha * std::log(x * y) - 0.5 * (x + y));
}

Scaled laguerre_decomposition_scaled(int N, int alpha, std::span<const double> spikes,
                                     double x, double y, double tol) {
    int r = static_cast<int>(spikes.size());
    Scaled kbar_null;
    if (N > r) {
        WeightSpec wnull{Ensemble::laguerre, alpha + r};
        kbar_null = Scaled::from_log(0.5 * (alpha + r) * (std::log(y) - std::log(x)) +
                                     0.5 * (x - y)) *
                    kernel_null_scaled(wnull, N - r, x, y);
    }
    IncompleteParams p{N, r, alpha, std::vector<double>(spikes.begin(), spikes.end())};
    Scaled sum;
    for (int i = 1; i <= r; ++i)
        sum += incomplete_function_scaled(IncompleteFamily::laguerre_I, i, p, x, tol) *
               incomplete_function_scaled(IncompleteFamily::laguerre_II, i, p, y, tol);
    return kbar_null + sum;  // this is the gauge-transformed kernel
}

// ---------------------------------------------------------------------------
// Hermite perturbed kernel, three forms.
// ---------------------------------------------------------------------------

Scaled hermite_double_scaled(const SourceSpectrum& spec, double x, double y, double tol) {
    std::vector<double> pts = spec.values;
    pts.push_back(0.0);
    double lo = *std::min_element(pts.begin(), pts.end());
    double hi = *std::max_element(pts.begin(), pts.end());
    cplx zc(0.5 * (lo + hi), 0.0);
    double rz = 0.5 * (hi - lo) + 0.3;
    double abscissa = zc.real() + rz + 0.5;

    auto inner = [&](cplx z) {
        auto lw = [&](cplx w) {
            cplx s = w * w / 4.0 + y * w - std::log(w - z);
            for (int i = 0; i < spec.dim(); ++i)
                s += double(spec.multiplicities[i]) * std::log(w - spec.values[i]);
            return s;
        };
        auto res = integrate_vertical_line_log(lw, ContourSpec::line_at(abscissa), tol);
        Scaled v = res.scaled();
        return std::log(v.mantissa()) + v.scale();
    };
    auto lz = [&](cplx z) {
        cplx s = -z * z / 4.0 - x * z + inner(z);
        for (int i = 0; i < spec.dim(); ++i)
            s -= double(spec.multiplicities[i]) * std::log(z - spec.values[i]);
        return s;
    };
    auto res = integrate_circle_log(
        lz, ContourSpec::circle_around(zc, rz), tol,
        circle_nodes_hint(std::abs(x) * rz + 0.25 * rz * rz + spec.weight()));
    return Scaled::from_log(0.5 * (y * y - x * x)) * res.scaled();
}

Scaled hermite_cd_scaled(const SourceSpectrum& spec, double x, double y, double tol) {
    int w = spec.weight();
    Scaled lead = multiple_hermite_scaled(FnKind::type_I, spec, x, tol) *
                  multiple_hermite_scaled(FnKind::type_II, spec, y, tol);
    Scaled sum;
    for (int i = 0; i < spec.dim(); ++i) {
        double frac = double(spec.multiplicities[i]) / w;
        sum += multiple_hermite_scaled(FnKind::type_I, spec.raised(i), x, tol) *
               multiple_hermite_scaled(FnKind::type_II, spec.lowered(i), y, tol) * frac;
    }
    Scaled pref = -Scaled::from_log(-w * std::log(2.0) - 0.5 * std::log(kPi) -
                                    lgam(w + 0.0) - 0.5 * (x * x + y * y)) /
                  (x - y);
    return pref * (lead - sum);
}

Scaled hermite_single_sum_scaled(const SourceSpectrum& spec, double x, double y, double tol) {
    int w = spec.weight();
    Scaled total;
    for (int i = 0; i < spec.dim(); ++i) {
        SourceSpectrum reduced = spec;
        for (int j = 1; j <= spec.multiplicities[i]; ++j) {
            Scaled comp = hermite_type1_component_scaled(reduced, i, x, tol);
            // the summed expansion pairs the component with the type-II
            // polynomial at composition m - j e_i
            Scaled typeII = multiple_hermite_scaled(FnKind::type_II, reduced.lowered(i), y, tol);
            total += comp * typeII *
                     Scaled::from_log(j * std::log(2.0) - lgam(w - j + 1.0));
            if (j < spec.multiplicities[i]) reduced = reduced.lowered(i);
        }
    }
    return total * Scaled::from_log(-0.5 * (x * x + y * y) - w * std::log(2.0) -
                                    0.5 * std::log(kPi));
}

Scaled hermite_decomposition_scaled(int N, std::span<const double> spikes, double x, double y,
                                    double tol) {
    int r = static_cast<int>(spikes.size());
    Scaled base;
    if (N > r) {
        WeightSpec wnull{Ensemble::hermite, 0};
        base = kernel_null_scaled(wnull, N - r, x, y);
    }
    IncompleteParams p{N, r, 0, std::vector<double>(spikes.begin(), spikes.end())};
    Scaled sum;
    for (int i = 1; i <= r; ++i)
        sum += incomplete_function_scaled(IncompleteFamily::hermite_I, i, p, x, tol) *
               incomplete_function_scaled(IncompleteFamily::hermite_II, i, p, y, tol);
    return base + sum;
}

// ---------------------------------------------------------------------------
// Hard-edge limit kernel.
// ---------------------------------------------------------------------------

double hard_first(const SourceSpectrum& nu_mu, int alpha, int r, double X, double Y,
                  double tol) {
    int q = nu_mu.weight();
    double base = std::pow(Y / X, 0.5 * (alpha + r)) *
                  kernel_edge_null(Edge::hard, alpha + r, X, Y);
    IncompleteParams p{0, r, alpha, nu_mu.flattened()};
    Scaled sum;
    for (int i = 1; i <= q; ++i)
        sum += incomplete_function_scaled(IncompleteFamily::bessel_I, i, p, X, tol) *
               incomplete_function_scaled(IncompleteFamily::bessel_II, i, p, Y, tol);
    return base + sum.real();
}

double hard_second(const SourceSpectrum& nu_mu, int alpha, int r, double X, double Y,
                   double tol) {
    double K = alpha + r;
    double numax = 0.0;
    for (double v : nu_mu.values) numax = std::max(numax, std::abs(v));
    double reach = std::max({K / std::max(X, 0.05), 0.5 / std::sqrt(X), numax * 1.4 + 0.05});
    double rz = 1.6 * reach + 0.1;
    double rw = 0.45 * rz;

    auto inner = [&](cplx z) {
        auto lw = [&](cplx w) {
            cplx s = Y * w - 0.25 / w - K * std::log(w) - std::log(w - z);
            for (int i = 0; i < nu_mu.dim(); ++i)
                s += double(nu_mu.multiplicities[i]) * std::log(w - nu_mu.values[i]);
            return s;
        };
        auto res = integrate_circle_log(
            lw, ContourSpec::circle_around({0.0, 0.0}, rw), tol,
            circle_nodes_hint(Y * rw + 0.25 / rw + K + nu_mu.weight()));
        Scaled v = res.scaled();
        return std::log(v.mantissa()) + v.scale();
    };
    auto lz = [&](cplx z) {
        cplx s = -X * z + 0.25 / z + K * std::log(z) + inner(z);
        for (int i = 0; i < nu_mu.dim(); ++i)
            s -= double(nu_mu.multiplicities[i]) * std::log(z - nu_mu.values[i]);
        return s;
    };
    auto res = integrate_circle_log(
        lz, ContourSpec::circle_around({0.0, 0.0}, rz), tol,
        circle_nodes_hint(X * rz + 0.25 / rz + K + nu_mu.weight()));
    return res.scaled().real();
}

double hard_third(const SourceSpectrum& nu_mu, int alpha, int r, double X, double Y,
                  double tol) {
    int q = nu_mu.weight();
    int ap = alpha + r - q;
    double sx = std::sqrt(X), sy = std::sqrt(Y);
    Scaled tx = multiple_bessel_scaled(FnKind::type_I, nu_mu, ap, sx, tol);
    Scaled ty = multiple_bessel_scaled(FnKind::type_II, nu_mu, ap, sy, tol);
    Scaled J = tx * ((ap + q) * ty -
                     multiple_bessel_scaled(FnKind::type_II, nu_mu, ap + 1, sy, tol) * sy) +
               ty * ((ap + q) * tx -
                     multiple_bessel_scaled(FnKind::type_I, nu_mu, ap - 1, sx, tol) * sx);
    Scaled sum;
    for (int i = 0; i < nu_mu.dim(); ++i) {
        double mi = nu_mu.multiplicities[i];
        sum += multiple_bessel_scaled(FnKind::type_I, nu_mu.raised(i), ap, sx, tol) *
               multiple_bessel_scaled(FnKind::type_II, nu_mu.lowered(i), ap, sy, tol) * mi;
    }
    Scaled out = (J - 2.0 * sum) *
                 Scaled::from_log(0.5 * ap * (std::log(Y) - std::log(X))) /
                 (2.0 * (X - Y));
    return out.real();
}

// ---------------------------------------------------------------------------
// Soft-edge limit kernel.
// ---------------------------------------------------------------------------

double soft_first(const SourceSpectrum& sigma_mu, double X, double Y, double tol) {
    int q = sigma_mu.weight();
    double base = kernel_edge_null(Edge::soft, 0, X, Y);
    IncompleteParams p{0, q, 0, sigma_mu.flattened()};
    Scaled sum;
    for (int i = 1; i <= q; ++i)
        sum += incomplete_function_scaled(IncompleteFamily::airy_I, i, p, X, tol) *
               incomplete_function_scaled(IncompleteFamily::airy_II, i, p, Y, tol);
    return base + sum.real();
}

double soft_second(const SourceSpectrum& sigma_mu, double X, double Y, double tol) {
    double vmin = 0.0;
    if (!sigma_mu.values.empty())
        vmin = *std::min_element(sigma_mu.values.begin(), sigma_mu.values.end());
    cplx va(std::min(vmin, 0.0) - 0.75, 0.0);
    cplx vb = va - 1.0;

    auto inner = [&](cplx u) {
        auto lv = [&](cplx v) {
            cplx s = Y * v - v * v * v / 3.0 - std::log(v - u);
            for (int i = 0; i < sigma_mu.dim(); ++i)
                s += double(sigma_mu.multiplicities[i]) * std::log(v - sigma_mu.values[i]);
            return s;
        };
        auto res = integrate_airy_rays_log(lv, ContourSpec::rays_from(vb, true), tol);
        Scaled v = res.scaled();
        return std::log(v.mantissa()) + v.scale();
    };
    auto lu = [&](cplx u) {
        cplx s = -X * u + u * u * u / 3.0 + inner(u);
        for (int i = 0; i < sigma_mu.dim(); ++i)
            s -= double(sigma_mu.multiplicities[i]) * std::log(u - sigma_mu.values[i]);
        return s;
    };
    auto res = integrate_airy_rays_log(lu, ContourSpec::rays_from(va), tol);
    return res.scaled().real();
}

double soft_third(const SourceSpectrum& sigma_mu, double X, double Y, double tol) {
    Scaled A = multiple_airy_scaled(FnKind::type_I, sigma_mu, X, tol) *
                   multiple_airy_dx_scaled(FnKind::type_II, sigma_mu, Y, tol) -
               multiple_airy_scaled(FnKind::type_II, sigma_mu, Y, tol) *
                   multiple_airy_dx_scaled(FnKind::type_I, sigma_mu, X, tol);
    Scaled sum;
    for (int i = 0; i < sigma_mu.dim(); ++i) {
        double mi = sigma_mu.multiplicities[i];
        sum += multiple_airy_scaled(FnKind::type_I, sigma_mu.raised(i), X, tol) *
               multiple_airy_scaled(FnKind::type_II, sigma_mu.lowered(i), Y, tol) * mi;
    }
    return ((A + sum) / (X - Y)).real();
}

}  // namespace

// ---------------------------------------------------------------------------
// Handle construction and dispatch.
// ---------------------------------------------------------------------------

KernelHandle make_laguerre_kernel(const SourceSpectrum& spec, int alpha, KernelForm form,
                                  bool gauged, double tol) {
    spec.require_laguerre_valid();
    KernelHandle h;
    h.family = KernelHandle::Family::laguerre_perturbed;
    h.form = form;
    h.spectrum = spec;
    h.N = spec.weight();
    h.alpha = alpha;
    h.gauged = gauged;
    h.tol = tol;
    if (form == KernelForm::decomposition)
        throw std::invalid_argument("decomposition form needs a QuasiNullSpec");
    return h;
}

KernelHandle make_laguerre_kernel(const QuasiNullSpec& spec, KernelForm form, bool gauged,
                                  double tol) {
    spec.validate(Ensemble::laguerre);
    KernelHandle h;
    h.family = KernelHandle::Family::laguerre_perturbed;
    h.form = form;
    h.spectrum = spec.to_spectrum();
    h.spikes = spec.spikes;
    h.quasi = true;
    h.N = spec.N;
    h.alpha = spec.alpha;
    h.rank = spec.rank();
    h.gauged = gauged;
    h.tol = tol;
    return h;
}

KernelHandle make_hermite_kernel(const SourceSpectrum& spec, KernelForm form, double tol) {
    KernelHandle h;
    h.family = KernelHandle::Family::hermite_perturbed;
    h.form = form;
    h.spectrum = spec;
    h.N = spec.weight();
    h.tol = tol;
    if (form == KernelForm::decomposition)
        throw std::invalid_argument("decomposition form needs a QuasiNullSpec");
    return h;
}

KernelHandle make_hermite_kernel(const QuasiNullSpec& spec, KernelForm form, double tol) {
    spec.validate(Ensemble::hermite);
    KernelHandle h;
    h.family = KernelHandle::Family::hermite_perturbed;
    h.form = form;
    h.spectrum = spec.to_spectrum();
    h.spikes = spec.spikes;
    h.quasi = true;
    h.N = spec.N;
    h.rank = spec.rank();
    h.tol = tol;
    return h;
}

KernelHandle make_null_kernel(const WeightSpec& w, int N) {
    KernelHandle h;
    h.family = w.ensemble == Ensemble::laguerre ? KernelHandle::Family::laguerre_null
                                                : KernelHandle::Family::hermite_null;
    h.N = N;
    h.alpha = w.alpha;
    return h;
}

KernelHandle make_hard_kernel(const SourceSpectrum& nu_mu, int alpha, int r, KernelForm form,
                              double tol) {
    if (nu_mu.weight() > r) throw InvalidSpectrum("hard kernel: |mu| must not exceed r");
    KernelHandle h;
    h.family = KernelHandle::Family::hard_limit;
    h.form = form;
    h.spectrum = nu_mu;
    h.alpha = alpha;
    h.rank = r;
    h.tol = tol;
    return h;
}

KernelHandle make_soft_kernel(const SourceSpectrum& sigma_mu, KernelForm form, double tol) {
    KernelHandle h;
    h.family = KernelHandle::Family::soft_limit;
    h.form = form;
    h.spectrum = sigma_mu;
    h.rank = sigma_mu.weight();
    h.tol = tol;
    return h;
}

bool KernelHandle::finite_n() const {
    return family != Family::hard_limit && family != Family::soft_limit;
}

Ensemble KernelHandle::weight_ensemble() const {
    switch (family) {
        case Family::laguerre_null:
        case Family::laguerre_perturbed:
        case Family::hard_limit:
            return Ensemble::laguerre;
        default:
            return Ensemble::hermite;
    }
}

double kernel_laguerre_perturbed(const KernelHandle& h, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("laguerre kernel needs x,y > 0");
    KernelForm form = h.form;
    // Near the diagonal the summed forms divide by x - y; the two-loop and
    // decomposed forms have no singularity there.
    if (std::abs(x - y) < kDiagonal && form != KernelForm::decomposition)
        form = KernelForm::double_contour;
    if (form == KernelForm::explicit_distinct) {
        bool distinct_simple = true;
        for (int m : h.spectrum.multiplicities)
            if (m != 1) distinct_simple = false;
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < h.spectrum.dim(); ++i)
            for (int j = i + 1; j < h.spectrum.dim(); ++j)
                gap = std::min(gap, std::abs(h.spectrum.values[i] - h.spectrum.values[j]));
        if (!distinct_simple || gap < kDiagonal) form = KernelForm::christoffel_darboux;
    }

    Scaled plain;  // ungauged kernel K
    switch (form) {
        case KernelForm::double_contour:
            plain = laguerre_double_scaled(h.spectrum, h.alpha, x, y, h.tol);
            break;
        case KernelForm::christoffel_darboux:
            plain = laguerre_cd_scaled(h.spectrum, h.alpha, x, y, h.tol);
            break;
        case KernelForm::single_sum:
            plain = laguerre_single_sum_scaled(h.spectrum, h.alpha, x, y, h.tol);
            break;
        case KernelForm::explicit_distinct: {
            auto ec = explicit_coefficients(h.spectrum.values, h.alpha);
            return h.gauged ? ec.eval(x, y) * std::exp(0.5 * h.alpha * (std::log(y) - std::log(x)) + 0.5 * (x - y))
                            : ec.eval(x, y);
        }
        case KernelForm::decomposition: {
            if (!h.quasi)
                throw std::invalid_argument("decomposition form needs a QuasiNullSpec");
            Scaled bar = laguerre_decomposition_scaled(h.N, h.alpha, h.spikes, x, y, h.tol);
            if (h.gauged) return bar.real();
            return (Scaled::from_log(0.5 * h.alpha * (std::log(x) - std::log(y)) +
                                     0.5 * (y - x)) *
                    bar)
                .real();
        }
    }
    if (h.gauged)
        plain = Scaled::from_log(0.5 * h.alpha * (std::log(y) - std::log(x)) +
                                 0.5 * (x - y)) *
                plain;
    return plain.real();
}

double kernel_hermite_perturbed(const KernelHandle& h, double x, double y) {
    KernelForm form = h.form;
    if (std::abs(x - y) < kDiagonal && form != KernelForm::decomposition)
        form = KernelForm::double_contour;
    switch (form) {
        case KernelForm::double_contour:
            return hermite_double_scaled(h.spectrum, x, y, h.tol).real();
        case KernelForm::christoffel_darboux:
            return hermite_cd_scaled(h.spectrum, x, y, h.tol).real();
        case KernelForm::single_sum:
            return hermite_single_sum_scaled(h.spectrum, x, y, h.tol).real();
        case KernelForm::decomposition:
            if (!h.quasi)
                throw std::invalid_argument("decomposition form needs a QuasiNullSpec");
            return hermite_decomposition_scaled(h.N, h.spikes, x, y, h.tol).real();
        default:
            throw std::invalid_argument("hermite kernel: unsupported form");
    }
}

double kernel_quasi_null(const QuasiNullSpec& spec, Ensemble ensemble, double x, double y,
                         double tol) {
    spec.validate(ensemble);
    if (ensemble == Ensemble::laguerre)
        return laguerre_decomposition_scaled(spec.N, spec.alpha, spec.spikes, x, y, tol)
            .real();
    return hermite_decomposition_scaled(spec.N, spec.spikes, x, y, tol).real();
}

double kernel_hard_limit(const SourceSpectrum& nu_mu, int alpha, int r, double X, double Y,
                         KernelForm form, double tol) {
    if (!(X > 0.0) || !(Y > 0.0))
        throw std::invalid_argument("hard kernel needs X,Y > 0");
    if (nu_mu.weight() > r) throw InvalidSpectrum("hard kernel: |mu| must not exceed r");
    if (std::abs(X - Y) < kDiagonal && form == KernelForm::christoffel_darboux)
        form = KernelForm::decomposition;
    switch (form) {
        case KernelForm::decomposition:
            return hard_first(nu_mu, alpha, r, X, Y, tol);
        case KernelForm::double_contour:
            return hard_second(nu_mu, alpha, r, X, Y, tol);
        case KernelForm::christoffel_darboux:
            return hard_third(nu_mu, alpha, r, X, Y, tol);
        default:
            throw std::invalid_argument("hard kernel: unsupported form");
    }
}

double kernel_soft_limit(const SourceSpectrum& sigma_mu, double X, double Y, KernelForm form,
                         double tol) {
    if (std::abs(X - Y) < kDiagonal && form == KernelForm::christoffel_darboux)
        form = KernelForm::decomposition;
    switch (form) {
        case KernelForm::decomposition:
            return soft_first(sigma_mu, X, Y, tol);
        case KernelForm::double_contour:
            return soft_second(sigma_mu, X, Y, tol);
        case KernelForm::christoffel_darboux:
            return soft_third(sigma_mu, X, Y, tol);
        default:
            throw std::invalid_argument("soft kernel: unsupported form");
    }
}

double KernelHandle::eval(double x, double y) const {
    switch (family) {
        case Family::laguerre_null:
            return kernel_null(WeightSpec{Ensemble::laguerre, alpha}, N, x, y);
        case Family::hermite_null:
            return kernel_null(WeightSpec{Ensemble::hermite, 0}, N, x, y);
        case Family::laguerre_perturbed:
            return kernel_laguerre_perturbed(*this, x, y);
        case Family::hermite_perturbed:
            return kernel_hermite_perturbed(*this, x, y);
        case Family::hard_limit:
            return kernel_hard_limit(spectrum, alpha, rank, x, y, form, tol);
        case Family::soft_limit:
            return kernel_soft_limit(spectrum, x, y, form, tol);
    }
    throw std::logic_error("KernelHandle: bad family");
}

// ---------------------------------------------------------------------------
// Explicit coefficient matrix.
// ---------------------------------------------------------------------------

ExplicitCoefficients explicit_coefficients(std::span<const double> spikes, int alpha) {
    int N = static_cast<int>(spikes.size());
    if (N == 0) throw InvalidSpectrum("explicit_coefficients: empty spike list");
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (std::abs(spikes[i] - spikes[j]) < 1e-9)
                throw DegenerateSpikes("explicit_coefficients: spikes must be distinct");

    ExplicitCoefficients ec;
    ec.N = N;
    ec.alpha = alpha;
    ec.spikes.assign(spikes.begin(), spikes.end());
    ec.C.assign(N * N, 0.0);

    for (int i = 0; i < N; ++i) {
        // elementary symmetric functions of 1 + a_k, k != i
        std::vector<double> e(N, 0.0);
        e[0] = 1.0;
        int deg = 0;
        for (int k = 0; k < N; ++k) {
            if (k == i) continue;
            ++deg;
            for (int d = deg; d >= 1; --d) e[d] = e[d] + (1.0 + spikes[k]) * e[d - 1];
        }
        double denom = 1.0;
        for (int k = 0; k < N; ++k)
            if (k != i) denom *= spikes[i] - spikes[k];
        double lead = std::pow(1.0 + spikes[i], N + alpha) / denom;
        for (int j = 1; j <= N; ++j) {
            double sign = (j - 1) % 2 == 0 ? 1.0 : -1.0;
            ec.C[i * N + (j - 1)] =
                sign * lead * e[j - 1] / std::tgamma(alpha + j + 0.0);
        }
    }
    return ec;
}

double ExplicitCoefficients::eval(double x, double y) const {
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
        double row = 0.0, yp = 1.0;
        for (int j = 0; j < N; ++j) {
            row += C[i * N + j] * yp;
            yp *= y;
        }
        sum += std::exp(-spikes[i] * x) * row;
    }
    return std::pow(x * y, 0.5 * alpha) * std::exp(-0.5 * (x + y)) * sum;
}

double ExplicitCoefficients::contraction_residual() const {
    double worst = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int l = 0; l < N; ++l) {
            double acc = 0.0;
            for (int j = 1; j <= N; ++j) {
                for (int k = 0; k < N; ++k) {
                    acc += C[i * N + (j - 1)] *
                           std::tgamma(alpha + j + 0.0) /
                           std::pow(1.0 + spikes[k], alpha + j) * C[k * N + l];
                }
            }
            worst = std::max(worst, std::abs(acc - C[i * N + l]));
        }
    }
    return worst;
}

}  // namespace rmes
