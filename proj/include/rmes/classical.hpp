#pragma once

#include "rmes/contour.hpp"
#include "rmes/scaled.hpp"

namespace rmes {

enum class Ensemble { hermite, laguerre };

// Weight taken with the conventions w(x) = e^{-x^2} on R (Hermite) and
// w(x) = x^alpha e^{-x} on (0, inf) (Laguerre), alpha a non-negative integer.
struct WeightSpec {
    Ensemble ensemble = Ensemble::hermite;
    int alpha = 0;
};

// H_n(x), physicists' normalization, by three-term recurrence.
double hermite_poly(int n, double x);

// L_n^alpha(x) by recurrence; negative integer alpha is mapped through
// n! (-x)^{-a} L_n^{-a}(x) = (n-a)! L^a_{n-a}(x) when that applies.
double laguerre_poly(int n, int alpha, double x);

// J_alpha(x), integer order.  Power series at small argument, otherwise the
// loop integral of e^{x(z - 1/z)/2} z^{-alpha-1} on a circle through the
// saddle radius, which stays conditioned up to orders ~ few thousand.
double bessel_j(int alpha, double x);
double bessel_j_prime(int alpha, double x);

// Ai(x) and Ai'(x) through the ray-pair contour.
double airy_ai(double x);
double airy_ai_prime(double x);

// Orthonormal wavefunctions at indices N and N-1 (plus derivatives), kept in
// scaled form so edge-regime evaluations at N ~ hundreds never overflow.
struct WavePair {
    Scaled fN, fNm1;    // phi_N(x), phi_{N-1}(x)
    Scaled dN, dNm1;    // derivatives
};
WavePair hermite_waves(int N, double x);
WavePair laguerre_waves(int N, int alpha, double x);

// Christoffel-Darboux kernel of the null (source-free) ensemble, switching
// to the analytically differentiated confluent form near the diagonal.
double kernel_null(const WeightSpec& spec, int N, double x, double y);
Scaled kernel_null_scaled(const WeightSpec& spec, int N, double x, double y);

enum class Edge { soft, hard };

// Scaled edge kernels: Airy kernel (soft) and Bessel kernel (hard, with
// parameter alpha).  alpha is ignored for the soft edge.
double kernel_edge_null(Edge edge, int alpha, double X, double Y);

}  // namespace rmes
