#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rmes/classical.hpp"
#include "rmes/contour.hpp"
#include "rmes/scaled.hpp"

namespace rmes {

// Distinct source eigenvalues with their multiplicities: the set b^m.  Also
// carries the scaled-spike parameters (nu or sigma) of the limit kernels.
struct SourceSpectrum {
    std::vector<double> values;
    std::vector<int> multiplicities;

    SourceSpectrum() = default;
    SourceSpectrum(std::vector<double> v, std::vector<int> m);

    // Build from a raw eigenvalue list, merging entries closer than 1e-9.
    static SourceSpectrum from_values(std::span<const double> raw);

    int dim() const { return static_cast<int>(values.size()); }
    int weight() const;                      // |m|
    std::vector<double> flattened() const;   // each value repeated m_i times

    SourceSpectrum raised(int i) const;      // m + e_i
    SourceSpectrum lowered(int i) const;     // m - e_i (drops exhausted values)

    void require_laguerre_valid() const;     // all values > -1
};

// Source with all but r eigenvalues at zero: spikes (a_1..a_r) on top of a
// bulk of N - r zeros.
struct QuasiNullSpec {
    int N = 0;
    int alpha = 0;                // Laguerre weight parameter
    std::vector<double> spikes;   // a_1..a_r, order kept

    int rank() const { return static_cast<int>(spikes.size()); }
    SourceSpectrum to_spectrum() const;
    void validate(Ensemble ensemble) const;
};

enum class FnKind { type_I, type_II };

// --- multiple special functions -------------------------------------------

double multiple_laguerre(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                         double tol = kContourTol);
Scaled multiple_laguerre_scaled(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                                double tol = kContourTol);

double multiple_hermite(FnKind kind, const SourceSpectrum& spec, double x,
                        double tol = kContourTol);
Scaled multiple_hermite_scaled(FnKind kind, const SourceSpectrum& spec, double x,
                               double tol = kContourTol);

// Multiple Bessel functions; by their definitions the spectral variable
// enters as x^2, so callers pass sqrt(X) when working at the hard edge.
double multiple_bessel(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                       double tol = kContourTol);
Scaled multiple_bessel_scaled(FnKind kind, const SourceSpectrum& spec, int alpha, double x,
                              double tol = kContourTol);

double multiple_airy(FnKind kind, const SourceSpectrum& spec, double x,
                     double tol = kContourTol);
Scaled multiple_airy_scaled(FnKind kind, const SourceSpectrum& spec, double x,
                            double tol = kContourTol);
// d/dx of the multiple Airy functions (same contours, one extra factor).
Scaled multiple_airy_dx_scaled(FnKind kind, const SourceSpectrum& spec, double x,
                               double tol = kContourTol);

// The i-th component of a type-I function times its exponential: the loop
// integral restricted to a small circle around values[i] alone.
Scaled laguerre_type1_component_scaled(const SourceSpectrum& spec, int alpha, int i, double x,
                                       double tol = kContourTol);
Scaled hermite_type1_component_scaled(const SourceSpectrum& spec, int i, double x,
                                      double tol = kContourTol);

// --- incomplete functions ---------------------------------------------------

enum class IncompleteFamily {
    laguerre_I,   // Lambda-tilde^(i)
    laguerre_II,  // Lambda^(i)
    hermite_I,    // Gamma-tilde^(i)
    hermite_II,   // Gamma^(i)
    bessel_I,     // J-tilde^(i)
    bessel_II,    // J^(i)
    airy_I,       // Ai-tilde^(i)
    airy_II,      // Ai^(i)
};

// Parameter block: Laguerre/Hermite use (N, r, alpha, shifts = a_k); Bessel
// uses (alpha, r, shifts = h_k); Airy uses shifts = s_k only.
struct IncompleteParams {
    int N = 0;
    int r = 0;
    int alpha = 0;
    std::vector<double> shifts;
};

double incomplete_function(IncompleteFamily family, int i, const IncompleteParams& p, double x,
                           double tol = kContourTol);
Scaled incomplete_function_scaled(IncompleteFamily family, int i, const IncompleteParams& p,
                                  double x, double tol = kContourTol);

// (t - d/dx) f at x, order-4 central differences with step h.
double apply_diff_operator(double t, const std::function<double(double)>& f, double x,
                           double h = 1e-3);

}  // namespace rmes
