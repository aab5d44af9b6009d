#pragma once

// Independent reference computations used only by the tests.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace oracle {

struct CubicRoots {
    mpfr_t r[3];
    explicit CubicRoots(mpfr_prec_t bits) {
        for (auto& v : r) mpfr_init2(v, bits);
    }
    ~CubicRoots() {
        for (auto& v : r) mpfr_clear(v);
    }
    CubicRoots(const CubicRoots&) = delete;
    CubicRoots& operator=(const CubicRoots&) = delete;
    double get(int i) const { return mpfr_get_d(r[i], MPFR_RNDN); }
};

/// Real roots of x^3 - (a+b)x^2 + ab x - 1 (three real roots assumed), sorted
/// ascending, to `bits` bits: trigonometric seeds then Newton in MPFR.
inline void cubic_roots(const mpz_class& a, const mpz_class& b, CubicRoots& out, mpfr_prec_t bits) {
    double p2 = -mpz_class(a + b).get_d(), p1 = mpz_class(a * b).get_d(), p0 = -1.0;
    // depressed cubic t^3 + p t + q with x = t - p2/3
    double p = p1 - p2 * p2 / 3.0;
    double q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    double seeds[3];
    double r = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    double th = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) seeds[k] = r * std::cos(th - 2.0 * M_PI * k / 3.0) - p2 / 3.0;
    std::sort(seeds, seeds + 3);
    mpfr_t x, f, df, t;
    mpfr_inits2(bits, x, f, df, t, (mpfr_ptr)0);
    mpz_class s = a + b, pr = a * b;
    for (int k = 0; k < 3; ++k) {
        mpfr_set_d(x, seeds[k], MPFR_RNDN);
        // tiny roots lose relative accuracy in double; seed from 1/(ab) instead
        if (std::abs(seeds[k]) < 1e-3) {
            mpfr_set_z(x, pr.get_mpz_t(), MPFR_RNDN);
            mpfr_ui_div(x, 1, x, MPFR_RNDN);
        }
        for (int it = 0; it < 200; ++it) {
            // f = ((x - s) x + pr) x - 1, df = 3x^2 - 2 s x + pr
            mpfr_sub_z(f, x, s.get_mpz_t(), MPFR_RNDN);
            mpfr_mul(f, f, x, MPFR_RNDN);
            mpfr_add_z(f, f, pr.get_mpz_t(), MPFR_RNDN);
            mpfr_mul(f, f, x, MPFR_RNDN);
            mpfr_sub_ui(f, f, 1, MPFR_RNDN);
            mpfr_mul_ui(df, x, 3, MPFR_RNDN);
            mpfr_mul_z(t, x, s.get_mpz_t(), MPFR_RNDN);
            mpfr_mul_ui(t, t, 2, MPFR_RNDN);
            mpfr_fms(df, df, x, t, MPFR_RNDN);
            mpfr_add_z(df, df, pr.get_mpz_t(), MPFR_RNDN);
            mpfr_div(f, f, df, MPFR_RNDN);
            mpfr_sub(x, x, f, MPFR_RNDN);
        }
        mpfr_set(out.r[k], x, MPFR_RNDN);
    }
    mpfr_clears(x, f, df, t, (mpfr_ptr)0);
}

/// Naive value of x(x - ay)(x - by) - y^3.
inline mpz_class form(const mpz_class& x, const mpz_class& y, const mpz_class& a, const mpz_class& b) {
    return x * (x - a * y) * (x - b * y) - y * y * y;
}

}  // namespace oracle
