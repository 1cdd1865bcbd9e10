#pragma once

// Double-double arithmetic (Dekker/Bailey style, FMA-based products).
// Used internally to sum cancellation-heavy power series: a Kummer series at
// imaginary argument loses ~|z|/ln(10) digits, which ~32 working digits absorb.

#include <cmath>
#include <complex>

namespace spec2d::detail {

struct DD {
    double hi = 0.0, lo = 0.0;
    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}
    explicit operator double() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline DD add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    double lo = s.lo + a.lo;
    return quick_two_sum(s.hi, lo);
}

inline DD sub(DD a, DD b) { return add(a, DD{-b.hi, -b.lo}); }
inline DD neg(DD a) { return {-a.hi, -a.lo}; }

inline DD mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline DD mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return quick_two_sum(p.hi, lo);
}

inline DD div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    return add(add(DD{q1}, q2), q3);
}

inline double abs_hi(DD a) { return std::fabs(a.hi); }

// Complex double-double.
struct CDD {
    DD re, im;
    CDD() = default;
    CDD(DD r, DD i) : re(r), im(i) {}
    CDD(double r, double i = 0.0) : re(r), im(i) {}
    CDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    std::complex<double> to_cplx() const { return {double(re), double(im)}; }
};

inline CDD add(CDD a, CDD b) { return {add(a.re, b.re), add(a.im, b.im)}; }

inline CDD mul(CDD a, CDD b) {
    return {sub(mul(a.re, b.re), mul(a.im, b.im)),
            add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline CDD mul(CDD a, double b) { return {mul(a.re, b), mul(a.im, b)}; }

inline CDD div(CDD a, CDD b) {
    DD den = add(mul(b.re, b.re), mul(b.im, b.im));
    DD re = div(add(mul(a.re, b.re), mul(a.im, b.im)), den);
    DD im = div(sub(mul(a.im, b.re), mul(a.re, b.im)), den);
    return {re, im};
}

inline double abs_approx(CDD a) { return std::hypot(a.re.hi, a.im.hi); }

} // namespace spec2d::detail
