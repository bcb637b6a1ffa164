#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rmes/classical.hpp"
#include "rmes/multiple.hpp"

namespace rmes {

enum class KernelForm {
    double_contour,       // the defining two-variable loop integrals
    christoffel_darboux,  // summed series over multiple functions
    single_sum,           // rank-by-rank component expansion
    explicit_distinct,    // finite coefficient matrix (all multiplicities 1)
    decomposition,        // null kernel + rank-one incomplete corrections
};

// Bound, evaluable correlation kernel.  Immutable after construction;
// eval() is pure and safe to call concurrently.
struct KernelHandle {
    enum class Family {
        laguerre_null,
        hermite_null,
        laguerre_perturbed,
        hermite_perturbed,
        hard_limit,
        soft_limit,
    };

    Family family = Family::hermite_null;
    KernelForm form = KernelForm::christoffel_darboux;
    SourceSpectrum spectrum;      // b^m, nu^mu or sigma^mu
    std::vector<double> spikes;   // quasi-null spike list (order kept)
    bool quasi = false;           // spikes/N/alpha describe a QuasiNullSpec
    int N = 0;                    // matrix size (finite-N families)
    int alpha = 0;
    int rank = 0;                 // r (hard_limit and quasi-null)
    bool gauged = false;          // Laguerre: evaluate the gauge-transformed kernel
    double tol = kContourTol;

    double eval(double x, double y) const;
    double operator()(double x, double y) const { return eval(x, y); }

    bool finite_n() const;
    Ensemble weight_ensemble() const;  // integration domain for trace checks
};

KernelHandle make_laguerre_kernel(const SourceSpectrum& spec, int alpha,
                                  KernelForm form = KernelForm::christoffel_darboux,
                                  bool gauged = false, double tol = kContourTol);
KernelHandle make_laguerre_kernel(const QuasiNullSpec& spec,
                                  KernelForm form = KernelForm::decomposition,
                                  bool gauged = false, double tol = kContourTol);
KernelHandle make_hermite_kernel(const SourceSpectrum& spec,
                                 KernelForm form = KernelForm::christoffel_darboux,
                                 double tol = kContourTol);
KernelHandle make_hermite_kernel(const QuasiNullSpec& spec,
                                 KernelForm form = KernelForm::decomposition,
                                 double tol = kContourTol);
KernelHandle make_null_kernel(const WeightSpec& w, int N);
// q = |mu| finite-rank spikes survive at the hard edge; r counts all spikes
// entering the alpha + r shift.
KernelHandle make_hard_kernel(const SourceSpectrum& nu_mu, int alpha, int r,
                              KernelForm form = KernelForm::decomposition,
                              double tol = kContourTol);
KernelHandle make_soft_kernel(const SourceSpectrum& sigma_mu,
                              KernelForm form = KernelForm::decomposition,
                              double tol = kContourTol);

// Operation-style entry points.
double kernel_laguerre_perturbed(const KernelHandle& h, double x, double y);
double kernel_hermite_perturbed(const KernelHandle& h, double x, double y);
// Decomposed evaluation: gauge-transformed kernel for Laguerre, plain kernel
// for Hermite.
double kernel_quasi_null(const QuasiNullSpec& spec, Ensemble ensemble, double x, double y,
                         double tol = kContourTol);
double kernel_hard_limit(const SourceSpectrum& nu_mu, int alpha, int r, double X, double Y,
                         KernelForm form = KernelForm::decomposition,
                         double tol = kContourTol);
double kernel_soft_limit(const SourceSpectrum& sigma_mu, double X, double Y,
                         KernelForm form = KernelForm::decomposition,
                         double tol = kContourTol);

// Finite coefficient matrix of the distinct-spike kernel,
// K = (xy)^{a/2} e^{-(x+y)/2} sum_{ij} e^{-a_i x} C_{ij} y^{j-1}.
struct ExplicitCoefficients {
    int N = 0;
    int alpha = 0;
    std::vector<double> spikes;
    std::vector<double> C;  // row-major N x N

    double eval(double x, double y) const;
    // Residual of the reproducing contraction
    // sum_{j,k} C_{ij} (alpha+j-1)! / (1+a_k)^{alpha+j} C_{kl} = C_{il}.
    double contraction_residual() const;
};

ExplicitCoefficients explicit_coefficients(std::span<const double> spikes, int alpha);

}  // namespace rmes
