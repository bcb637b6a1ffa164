#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace rmes {

using cplx = std::complex<double>;

// Complex value stored as mantissa * exp(scale), with the mantissa kept near
// unit magnitude.  Lets kernel assembly multiply and add terms whose true
// magnitudes range over thousands of orders of magnitude (e.g. e^{+-800} at
// N ~ 400) without overflow or underflow.
class Scaled {
public:
    Scaled() = default;
    Scaled(double v) : m_(v) { normalize(); }
    Scaled(cplx v) : m_(v) { normalize(); }
    Scaled(cplx mantissa, double scale) : m_(mantissa), s_(scale) { normalize(); }

    // exp(log_value) for complex log_value; never overflows.
    static Scaled from_log(cplx log_value) {
        return Scaled(std::polar(1.0, log_value.imag()), log_value.real());
    }

    bool zero() const { return m_ == cplx(0.0, 0.0); }
    cplx mantissa() const { return m_; }
    double scale() const { return s_; }

    // May overflow/underflow; use only when the result is known to be modest.
    cplx value() const { return m_ * std::exp(s_); }
    double real() const { return (m_ * std::exp(s_)).real(); }

    double log_abs() const {
        if (zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(m_)) + s_;
    }

    Scaled conj() const { return Scaled(std::conj(m_), s_); }

    friend Scaled operator*(const Scaled& a, const Scaled& b) {
        return Scaled(a.m_ * b.m_, a.s_ + b.s_);
    }
    friend Scaled operator/(const Scaled& a, const Scaled& b) {
        return Scaled(a.m_ / b.m_, a.s_ - b.s_);
    }
    friend Scaled operator*(const Scaled& a, double c) { return Scaled(a.m_ * c, a.s_); }
    friend Scaled operator*(double c, const Scaled& a) { return a * c; }
    friend Scaled operator*(const Scaled& a, cplx c) { return Scaled(a.m_ * c, a.s_); }
    friend Scaled operator/(const Scaled& a, double c) { return Scaled(a.m_ / c, a.s_); }
    Scaled operator-() const { return Scaled(-m_, s_); }

    friend Scaled operator+(const Scaled& a, const Scaled& b) {
        if (a.zero()) return b;
        if (b.zero()) return a;
        if (a.s_ >= b.s_) {
            double d = b.s_ - a.s_;
            return Scaled(a.m_ + b.m_ * (d < -1400.0 ? 0.0 : std::exp(d)), a.s_);
        }
        double d = a.s_ - b.s_;
        return Scaled(a.m_ * (d < -1400.0 ? 0.0 : std::exp(d)) + b.m_, b.s_);
    }
    friend Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }
    Scaled& operator+=(const Scaled& o) { return *this = *this + o; }
    Scaled& operator-=(const Scaled& o) { return *this = *this - o; }
    Scaled& operator*=(const Scaled& o) { return *this = *this * o; }

private:
    cplx m_{0.0, 0.0};
    double s_ = 0.0;

    void normalize() {
        double a = std::abs(m_);
        if (a == 0.0) {
            s_ = 0.0;
            return;
        }
        if (!std::isfinite(a)) return;
        int e = std::ilogb(a);
        if (e > 64 || e < -64) {
            m_ = cplx(std::ldexp(m_.real(), -e), std::ldexp(m_.imag(), -e));
            s_ += e * 0.6931471805599453;
        }
    }
};

// n! as a Scaled value.
inline Scaled scaled_factorial(int n) {
    return Scaled::from_log(std::lgamma(static_cast<double>(n) + 1.0));
}

// base^k for integer k with sign tracking (base may be negative).
inline Scaled scaled_ipow(double base, long k) {
    if (k == 0) return Scaled(1.0);
    if (base == 0.0) return Scaled(0.0);
    double sign = (base < 0.0 && (k & 1)) ? -1.0 : 1.0;
    return Scaled(cplx(sign, 0.0), static_cast<double>(k) * std::log(std::abs(base)));
}

inline Scaled scaled_exp(double t) { return Scaled::from_log(t); }

}  // namespace rmes
