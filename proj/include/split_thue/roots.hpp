#pragma once

// Certified isolation of all complex roots of a square-free integer polynomial.
//
// Approximations come from the Aberth-Ehrlich iteration in MPFR; they are then
// certified with the Weierstrass-correction inclusion discs
//     D_i = { z : |z - z_i| <= deg * |W_i| },  W_i = p(z_i) / (lc * prod_{j!=i} (z_i - z_j)).
// When the discs are pairwise disjoint each one holds exactly one root. For a
// real polynomial, a disc centred on the real axis that holds exactly one root
// holds a real root (the conjugate of a root in a real-symmetric disc is also
// in it).

#include <cmath>
#include <vector>

#include "split_thue/cbox.hpp"
#include "split_thue/error.hpp"
#include "split_thue/polynomial.hpp"

namespace split_thue {

namespace detail {

struct CF {
    Float re, im;
    explicit CF(mpfr_prec_t p) : re(p), im(p) {}
};

inline CF cf_mul(const CF& a, const CF& b, mpfr_prec_t p) {
    CF r(p);
    Float t(p);
    mpfr_mul(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
    return r;
}

inline CF cf_add(const CF& a, const CF& b, mpfr_prec_t p) {
    CF r(p);
    mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

inline CF cf_sub(const CF& a, const CF& b, mpfr_prec_t p) {
    CF r(p);
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

inline CF cf_div(const CF& a, const CF& b, mpfr_prec_t p) {
    Float den(p), t(p);
    mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
    CF conj(p);
    mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
    CF r = cf_mul(a, conj, p);
    mpfr_div(r.re.get(), r.re.get(), den.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), r.im.get(), den.get(), MPFR_RNDN);
    return r;
}

inline void cf_eval(const ZPoly& f, const CF& z, CF& val, CF& dval, mpfr_prec_t p) {
    CF v(p), d(p);
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        d = cf_add(cf_mul(d, z, p), v, p);
        v = cf_mul(v, z, p);
        mpfr_add_z(v.re.get(), v.re.get(), c[i].get_mpz_t(), MPFR_RNDN);
    }
    val = std::move(v);
    dval = std::move(d);
}

inline double cf_abs_log2(const CF& a) {
    Float t(a.re.prec());
    mpfr_hypot(t.get(), a.re.get(), a.im.get(), MPFR_RNDN);
    if (mpfr_zero_p(t.get())) return -1e18;
    return static_cast<double>(mpfr_get_exp(t.get()));
}

inline std::vector<CF> aberth(const ZPoly& f, mpfr_prec_t p) {
    long n = f.degree();
    std::vector<CF> z;
    if (n < 1) return z;
    // Cauchy bound on root moduli.
    double bound = 0;
    {
        Float lc(p), t(p);
        mpfr_set_z(lc.get(), f.lc().get_mpz_t(), MPFR_RNDN);
        mpfr_abs(lc.get(), lc.get(), MPFR_RNDN);
        for (long i = 0; i < n; ++i) {
            mpfr_set_z(t.get(), f[static_cast<std::size_t>(i)].get_mpz_t(), MPFR_RNDN);
            mpfr_abs(t.get(), t.get(), MPFR_RNDN);
            mpfr_div(t.get(), t.get(), lc.get(), MPFR_RNDN);
            bound = std::max(bound, std::log2(std::max(mpfr_get_d(t.get(), MPFR_RNDN), 1e-300)));
        }
    }
    double radius = std::exp2(std::min(bound, 1000.0) / 2.0) + 1.0;
    for (long k = 0; k < n; ++k) {
        CF c(p);
        double ang = 6.283185307179586 * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        mpfr_set_d(c.re.get(), radius * std::cos(ang), MPFR_RNDN);
        mpfr_set_d(c.im.get(), radius * std::sin(ang), MPFR_RNDN);
        z.push_back(std::move(c));
    }
    CF one(p);
    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
    const int max_iter = 400 + static_cast<int>(p);
    for (int it = 0; it < max_iter; ++it) {
        bool converged = true;
        for (long k = 0; k < n; ++k) {
            CF v(p), d(p);
            cf_eval(f, z[static_cast<std::size_t>(k)], v, d, p);
            if (mpfr_zero_p(v.re.get()) && mpfr_zero_p(v.im.get())) continue;
            if (mpfr_zero_p(d.re.get()) && mpfr_zero_p(d.im.get())) {
                mpfr_add_d(z[static_cast<std::size_t>(k)].re.get(), z[static_cast<std::size_t>(k)].re.get(), 1e-3, MPFR_RNDN);
                converged = false;
                continue;
            }
            CF w = cf_div(v, d, p);
            CF s(p);
            for (long j = 0; j < n; ++j) {
                if (j == k) continue;
                CF diff = cf_sub(z[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(j)], p);
                if (mpfr_zero_p(diff.re.get()) && mpfr_zero_p(diff.im.get())) continue;
                s = cf_add(s, cf_div(one, diff, p), p);
            }
            CF den = cf_sub(one, cf_mul(w, s, p), p);
            CF step = cf_div(w, den, p);
            z[static_cast<std::size_t>(k)] = cf_sub(z[static_cast<std::size_t>(k)], step, p);
            double ls = cf_abs_log2(step);
            double lz = std::max(cf_abs_log2(z[static_cast<std::size_t>(k)]), 0.0);
            if (ls > lz - static_cast<double>(p) + 8) converged = false;
        }
        if (converged) break;
    }
    return z;
}

}  // namespace detail

/// Certified root boxes for a square-free integer polynomial, or an empty
/// vector if the inclusion discs overlap at this precision.
inline std::vector<CBox> try_isolate_roots(const ZPoly& f, mpfr_prec_t p) {
    long n = f.degree();
    std::vector<CBox> out;
    if (n < 1) return out;
    if (n == 1) {
        mpq_class r(-f[0], f[1]);
        r.canonicalize();
        out.emplace_back(Interval(r, p));
        return out;
    }
    auto z = detail::aberth(f, p + 32);
    std::vector<CBox> centre;
    for (const auto& c : z) {
        CBox b(Interval::point(c.re).with_prec(p), Interval::point(c.im).with_prec(p));
        centre.push_back(std::move(b));
    }
    std::vector<Interval> radius;
    Interval lc(f.lc(), p);
    Interval deg(n, p);
    for (long i = 0; i < n; ++i) {
        const CBox& zi = centre[static_cast<std::size_t>(i)];
        CBox prod(lc);
        for (long j = 0; j < n; ++j) {
            if (j == i) continue;
            prod = prod * (zi - centre[static_cast<std::size_t>(j)]);
        }
        if (prod.contains_zero()) return {};
        Interval w = abs(f.eval(zi)) / abs(prod);
        radius.push_back((deg * w).upper());
    }
    // Disjointness of discs: |z_i - z_j| > r_i + r_j.
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            Interval dist = abs(centre[static_cast<std::size_t>(i)] - centre[static_cast<std::size_t>(j)]);
            if (less(radius[static_cast<std::size_t>(i)] + radius[static_cast<std::size_t>(j)], dist) != Tri::True) return {};
        }
    for (long i = 0; i < n; ++i) {
        const CBox& c = centre[static_cast<std::size_t>(i)];
        const Interval& r = radius[static_cast<std::size_t>(i)];
        Interval span = Interval::hull(-r, r);
        Interval re = c.re + span;
        Interval im = c.im + span;
        if (im.contains_zero()) {
            // The disc meets the real axis. Its mirror image holds the conjugate
            // root; if the mirrored disc meets no other disc, the root is real.
            bool alone = true;
            CBox mirror = c.conj();
            for (long j = 0; j < n && alone; ++j) {
                if (j == i) continue;
                Interval dist = abs(mirror - centre[static_cast<std::size_t>(j)]);
                if (less(r + radius[static_cast<std::size_t>(j)], dist) != Tri::True) alone = false;
            }
            if (alone) {
                out.emplace_back(re);
                continue;
            }
        }
        out.emplace_back(re, im);
    }
    return out;
}

/// Isolates all roots, doubling precision on failure.
inline std::vector<CBox> isolate_roots(const ZPoly& f, const PrecisionBudget& budget) {
    mpfr_prec_t p = budget.working_bits;
    for (int i = 0; i < budget.max_refinements; ++i) {
        auto r = try_isolate_roots(f, p);
        if (!r.empty() || f.degree() < 1) return r;
        p *= 2;
    }
    throw Error(ErrorKind::PrecisionExhausted, "cannot separate roots of " + f.to_string());
}

/// Narrows a real isolating interval of a square-free integer polynomial by
/// exact bisection until its width is below 2^-bits.
inline Interval refine_real_root(const ZPoly& f, const Interval& encl, long bits) {
    mpq_class lo = encl.lo().to_mpq(), hi = encl.hi().to_mpq();
    QPoly fq = to_q(f);
    auto sign_at = [&](const mpq_class& x) { return sgn(fq.eval(x)); };
    int sl = sign_at(lo), sh = sign_at(hi);
    if (sl == 0) return Interval(lo, bits + 64);
    if (sh == 0) return Interval(hi, bits + 64);
    if (sl == sh) throw Error(ErrorKind::Precondition, "enclosure does not bracket a sign change");
    mpq_class tol;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(std::max(bits, 1L)));
    tol = mpq_class(1, 1) / mpq_class(den);
    while (hi - lo > tol) {
        mpq_class m = (lo + hi) / 2;
        int sm = sign_at(m);
        if (sm == 0) return Interval(m, bits + 64);
        if (sm == sl)
            lo = m;
        else
            hi = m;
    }
    return Interval(lo, hi, static_cast<mpfr_prec_t>(bits + 64));
}

}  // namespace split_thue
