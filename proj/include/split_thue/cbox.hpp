#pragma once

// Rectangular complex enclosures.

#include "split_thue/interval.hpp"

namespace split_thue {

struct CBox {
    Interval re;
    Interval im;

    explicit CBox(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    explicit CBox(Interval r) : re(std::move(r)), im(re.prec()) {}
    CBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_real() const { return im.is_point() && mpfr_zero_p(im.lo().get()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool overlaps(const CBox& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
    bool contains(const CBox& o) const { return re.contains(o.re) && im.contains(o.im); }

    CBox with_prec(mpfr_prec_t p) const { return {re.with_prec(p), im.with_prec(p)}; }
    CBox conj() const { return {re, -im}; }

    /// Larger of the two side lengths.
    double log2_width() const { return std::max(re.log2_width(), im.log2_width()); }

    friend CBox operator-(const CBox& a) { return {-a.re, -a.im}; }
    friend CBox operator+(const CBox& a, const CBox& b) { return {a.re + b.re, a.im + b.im}; }
    friend CBox operator-(const CBox& a, const CBox& b) { return {a.re - b.re, a.im - b.im}; }
    friend CBox operator*(const CBox& a, const CBox& b) {
        if (a.is_real() && b.is_real()) return CBox(a.re * b.re);
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CBox operator*(const CBox& a, const Interval& b) { return {a.re * b, a.im * b}; }
    friend CBox operator/(const CBox& a, const CBox& b) {
        if (b.is_real()) return {a.re / b.re, a.im / b.re};
        Interval den = sqr(b.re) + sqr(b.im);
        CBox num = a * b.conj();
        return {num.re / den, num.im / den};
    }
    CBox& operator+=(const CBox& o) { return *this = *this + o; }
    CBox& operator-=(const CBox& o) { return *this = *this - o; }
    CBox& operator*=(const CBox& o) { return *this = *this * o; }

    friend Interval abs(const CBox& a) {
        if (a.is_real()) return abs(a.re);
        return sqrt(sqr(a.re) + sqr(a.im));
    }
    friend CBox pow(const CBox& a, unsigned long k) {
        if (a.is_real()) return CBox(pow(a.re, static_cast<long>(k)));
        CBox r(Interval(1L, a.prec()));
        CBox b = a;
        while (k) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }
};

}  // namespace split_thue
