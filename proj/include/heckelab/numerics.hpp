#pragma once

// Small double-double (~31 significant digits) kernel plus compensated
// summation helpers.  Algorithms follow Dekker/Knuth error-free transforms
// and the QD library's exp/sqrt recipes.  Used inside series loops where
// binary64 cancellation would eat the accuracy the identities need.

#include <cmath>
#include <complex>
#include <limits>

namespace heckelab::num {

inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double v = s - a;
    e = (a - (s - v)) + (b - v);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
    double to_double() const { return hi + lo; }
};

inline dd dd_add(dd a, dd b) {
    double s, e;
    two_sum(a.hi, b.hi, s, e);
    e += a.lo + b.lo;
    double hi, lo;
    quick_two_sum(s, e, hi, lo);
    return {hi, lo};
}

inline dd dd_sub(dd a, dd b) { return dd_add(a, {-b.hi, -b.lo}); }

inline dd dd_mul(dd a, dd b) {
    double p, e;
    two_prod(a.hi, b.hi, p, e);
    e += a.hi * b.lo + a.lo * b.hi;
    double hi, lo;
    quick_two_sum(p, e, hi, lo);
    return {hi, lo};
}

inline dd dd_div(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = dd_sub(a, dd_mul({q1, 0.0}, b));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul({q2, 0.0}, b));
    double q3 = r.hi / b.hi;
    double s, e;
    quick_two_sum(q1, q2, s, e);
    dd q = dd_add({s, e}, {q3, 0.0});
    return q;
}

inline dd operator+(dd a, dd b) { return dd_add(a, b); }
inline dd operator-(dd a, dd b) { return dd_sub(a, b); }
inline dd operator*(dd a, dd b) { return dd_mul(a, b); }
inline dd operator/(dd a, dd b) { return dd_div(a, b); }
inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }

inline dd mul_pwr2(dd a, double p) { return {a.hi * p, a.lo * p}; }

inline dd dd_sqr(dd a) {
    double p, e;
    two_prod(a.hi, a.hi, p, e);
    e += 2.0 * a.hi * a.lo;
    double hi, lo;
    quick_two_sum(p, e, hi, lo);
    return {hi, lo};
}

inline dd dd_sqrt(dd a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {0.0, 0.0};
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd corr = dd_sub(a, dd_mul({ax, 0.0}, {ax, 0.0}));
    return dd_add({ax, 0.0}, mul_pwr2(dd_mul(corr, {x, 0.0}), 0.5));
}

// exp(a) to double-double accuracy (QD-style: scale by 2^-9, Taylor, square back).
inline dd dd_exp(dd a) {
    static const dd kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
    if (a.hi <= -709.0) return {0.0, 0.0};
    if (a.hi >= 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (a.hi == 0.0 && a.lo == 0.0) return {1.0, 0.0};

    double m = std::floor(a.hi / kLn2.hi + 0.5);
    dd r = mul_pwr2(dd_sub(a, dd_mul(kLn2, {m, 0.0})), 1.0 / 512.0);

    dd p = dd_sqr(r);
    dd s = dd_add(r, mul_pwr2(p, 0.5));
    double fact = 2.0;
    dd term = p;
    for (int i = 3; i <= 18; ++i) {
        term = dd_mul(term, r);
        fact *= static_cast<double>(i);
        dd t = dd_div(term, {fact, 0.0});
        s = dd_add(s, t);
        if (std::abs(t.hi) < 1e-40) break;
    }
    for (int i = 0; i < 9; ++i) s = dd_add(mul_pwr2(s, 2.0), dd_sqr(s));
    s = dd_add(s, {1.0, 0.0});
    double scale = std::ldexp(1.0, static_cast<int>(m));
    return {s.hi * scale, s.lo * scale};
}

inline dd dd_npow(dd a, long n) {
    if (n == 0) return {1.0, 0.0};
    bool inv = n < 0;
    unsigned long e = inv ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    dd base = a, acc{1.0, 0.0};
    while (e) {
        if (e & 1UL) acc = dd_mul(acc, base);
        base = dd_sqr(base);
        e >>= 1UL;
    }
    return inv ? dd_div({1.0, 0.0}, acc) : acc;
}

struct ddcomplex {
    dd re, im;
    ddcomplex() : re(0.0), im(0.0) {}
    ddcomplex(dd r, dd i) : re(r), im(i) {}
    ddcomplex(double r, double i = 0.0) : re(r), im(i) {}
    explicit ddcomplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline ddcomplex operator+(ddcomplex a, ddcomplex b) { return {a.re + b.re, a.im + b.im}; }
inline ddcomplex operator-(ddcomplex a, ddcomplex b) { return {a.re - b.re, a.im - b.im}; }
inline ddcomplex operator*(ddcomplex a, ddcomplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ddcomplex operator*(ddcomplex a, dd s) { return {a.re * s, a.im * s}; }
inline ddcomplex operator/(ddcomplex a, dd s) { return {a.re / s, a.im / s}; }
inline ddcomplex operator/(ddcomplex a, ddcomplex b) {
    dd den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline ddcomplex& operator+=(ddcomplex& a, ddcomplex b) { a = a + b; return a; }
inline double dd_cabs(ddcomplex a) { return std::hypot(a.re.to_double(), a.im.to_double()); }

// Neumaier compensated accumulator for plain-double loops.
struct kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

struct kahan_complex {
    kahan re, im;
    void add(std::complex<double> z) { re.add(z.real()); im.add(z.imag()); }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

} // namespace heckelab::num
