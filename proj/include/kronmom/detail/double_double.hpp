#pragma once

namespace kronmom::detail {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving roughly 106 bits of
// significand. Only the operations the closed-form moments need.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT(implicit)
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble operator+(DoubleDouble x, DoubleDouble y) {
    DoubleDouble s = two_sum(x.hi, y.hi);
    DoubleDouble t = two_sum(x.lo, y.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble x) { return {-x.hi, -x.lo}; }
inline DoubleDouble operator-(DoubleDouble x, DoubleDouble y) { return x + (-y); }

// Dekker's splitting; avoids depending on a hardware fma.
inline DoubleDouble two_prod(double a, double b) {
    constexpr double kSplitter = 134217729.0;  // 2^27 + 1
    const double p = a * b;
    const double ta = kSplitter * a;
    const double a_hi = ta - (ta - a);
    const double a_lo = a - a_hi;
    const double tb = kSplitter * b;
    const double b_hi = tb - (tb - b);
    const double b_lo = b - b_hi;
    const double err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo;
    return {p, err};
}

inline DoubleDouble operator*(DoubleDouble x, DoubleDouble y) {
    DoubleDouble p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble& operator+=(DoubleDouble& x, DoubleDouble y) { return x = x + y; }
inline DoubleDouble& operator*=(DoubleDouble& x, DoubleDouble y) { return x = x * y; }

inline DoubleDouble ipow(DoubleDouble base, unsigned exponent) {
    DoubleDouble result = 1.0;
    while (exponent != 0) {
        if (exponent & 1u) result *= base;
        exponent >>= 1;
        if (exponent != 0) base *= base;
    }
    return result;
}

}  // namespace kronmom::detail
