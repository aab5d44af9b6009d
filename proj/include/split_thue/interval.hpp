#pragma once

// Outward-rounded interval arithmetic on top of MPFR.
//
// Every operation rounds the lower endpoint toward -inf and the upper toward
// +inf, so an Interval always contains the exact real it encloses.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "split_thue/error.hpp"

namespace split_thue {

/// RAII owner of an mpfr_t.
class Float {
public:
    explicit Float(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Float(const Float& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Float(Float&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Float& operator=(const Float& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Float& operator=(Float&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Float() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Exact conversion; MPFR values are dyadic rationals.
    mpq_class to_mpq() const {
        mpq_class q;
        if (mpfr_zero_p(v_)) return q;
        mpz_class m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
        q = m;
        if (e >= 0) {
            mpz_class s;
            mpz_mul_2exp(s.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
            q = s;
        } else {
            mpz_class d;
            mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(-e));
            q = mpq_class(m, d);
            q.canonicalize();
        }
        return q;
    }

private:
    mpfr_t v_;
};

enum class Tri { False, True, Unknown };

inline Tri tri_not(Tri t) {
    if (t == Tri::Unknown) return t;
    return t == Tri::True ? Tri::False : Tri::True;
}

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}

    Interval(long v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
        mpfr_set_si(lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(hi_.get(), v, MPFR_RNDU);
    }
    Interval(const mpz_class& v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
        mpfr_set_z(lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_.get(), v.get_mpz_t(), MPFR_RNDU);
    }
    Interval(const mpq_class& v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
        mpfr_set_q(lo_.get(), v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_.get(), v.get_mpq_t(), MPFR_RNDU);
    }
    Interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
        if (lo > hi) throw Error(ErrorKind::Precondition, "interval endpoints out of order");
        mpfr_set_q(lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    }
    Interval(Float lo, Float hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

    static Interval from_double(double v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }
    static Interval point(const Float& f) {
        Interval r(f.prec());
        mpfr_set(r.lo_.get(), f.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), f.get(), MPFR_RNDU);
        return r;
    }
    static Interval hull(const Interval& a, const Interval& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        Interval r(p);
        mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }

    const Float& lo() const { return lo_; }
    const Float& hi() const { return hi_; }
    mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

    /// Same enclosure, stored at a different precision (outward rounded).
    Interval with_prec(mpfr_prec_t p) const {
        Interval r(p);
        mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    Float mid() const {
        Float m(prec() + 1);
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }
    double to_double() const { return mid().to_double(); }
    double lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

    Float width() const {
        Float w(prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }
    double width_double() const { return width().to_double(); }

    /// log2 of the width, or a very negative number for a point interval.
    double log2_width() const {
        Float w = width();
        if (mpfr_zero_p(w.get())) return -1e18;
        long e;
        double d = mpfr_get_d_2exp(&e, w.get(), MPFR_RNDU);
        return std::log2(std::abs(d)) + static_cast<double>(e);
    }

    bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
    bool contains(const mpq_class& q) const {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }
    bool contains(const mpz_class& z) const {
        return mpfr_cmp_z(lo_.get(), z.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_.get(), z.get_mpz_t()) >= 0;
    }
    bool contains(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
    }
    bool overlaps(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
    }

    /// Certified sign: +1, -1, or 0 if the interval straddles zero.
    int sign() const {
        if (mpfr_sgn(lo_.get()) > 0) return 1;
        if (mpfr_sgn(hi_.get()) < 0) return -1;
        return 0;
    }

    /// The unique integer in the interval, if the interval is narrower than one.
    bool unique_integer(mpz_class& out) const {
        Float w = width();
        if (mpfr_cmp_d(w.get(), 0.5) >= 0) return false;
        mpz_class c;
        mpfr_get_z(c.get_mpz_t(), hi_.get(), MPFR_RNDD);
        if (!contains(c)) return false;
        out = c;
        return true;
    }

    /// Decimal rendering "[lo, hi]" with outward rounding at `digits` digits.
    std::string to_string(int digits = 20) const {
        return "[" + endpoint_string(lo_, digits, MPFR_RNDD) + ", " +
               endpoint_string(hi_, digits, MPFR_RNDU) + "]";
    }
    std::string lo_string(int digits = 20) const { return endpoint_string(lo_, digits, MPFR_RNDD); }
    std::string hi_string(int digits = 20) const { return endpoint_string(hi_, digits, MPFR_RNDU); }

    static std::string endpoint_string(const Float& f, int digits, mpfr_rnd_t rnd) {
        if (mpfr_zero_p(f.get())) return "0";
        if (mpfr_inf_p(f.get())) return mpfr_sgn(f.get()) > 0 ? "inf" : "-inf";
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), f.get(), rnd);
        std::string m(s);
        mpfr_free_str(s);
        bool neg = !m.empty() && m[0] == '-';
        if (neg) m.erase(0, 1);
        std::string out = neg ? "-" : "";
        out += m.substr(0, 1);
        if (m.size() > 1) out += "." + m.substr(1);
        out += "e" + std::to_string(static_cast<long>(e) - 1);
        return out;
    }

    friend Interval operator-(const Interval& a) {
        Interval r(a.prec());
        mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        Interval r(p);
        Float t(p);
        const Float* as[2] = {&a.lo_, &a.hi_};
        const Float* bs[2] = {&b.lo_, &b.hi_};
        bool first = true;
        for (auto x : as) {
            for (auto y : bs) {
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw Error(ErrorKind::DivisionByZero, "interval divisor contains zero");
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        Interval r(p);
        Float t(p);
        const Float* as[2] = {&a.lo_, &a.hi_};
        const Float* bs[2] = {&b.lo_, &b.hi_};
        bool first = true;
        for (auto x : as) {
            for (auto y : bs) {
                mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return r;
    }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    friend Interval abs(const Interval& a) {
        if (mpfr_sgn(a.lo_.get()) >= 0) return a;
        if (mpfr_sgn(a.hi_.get()) <= 0) return -a;
        Interval r(a.prec());
        mpfr_set_zero(r.lo_.get(), 1);
        Float t(a.prec());
        mpfr_neg(t.get(), a.lo_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), t.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval sqr(const Interval& a) {
        Interval m = abs(a);
        Interval r(a.prec());
        mpfr_sqr(r.lo_.get(), m.lo_.get(), MPFR_RNDD);
        mpfr_sqr(r.hi_.get(), m.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval sqrt(const Interval& a) {
        if (mpfr_sgn(a.hi_.get()) < 0) throw Error(ErrorKind::Precondition, "sqrt of negative interval");
        Interval r(a.prec());
        if (mpfr_sgn(a.lo_.get()) <= 0)
            mpfr_set_zero(r.lo_.get(), 1);
        else
            mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval log(const Interval& a) {
        if (mpfr_sgn(a.lo_.get()) <= 0) throw Error(ErrorKind::ZeroArgument, "log of interval not bounded away from zero");
        Interval r(a.prec());
        mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval exp(const Interval& a) {
        Interval r(a.prec());
        mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    /// Integer power; even powers of intervals straddling zero are handled.
    friend Interval pow(const Interval& a, long k) {
        if (k == 0) return Interval(1L, a.prec());
        if (k < 0) return Interval(1L, a.prec()) / pow(a, -k);
        // abs() makes the even case monotone; odd powers are monotone already.
        Interval base = (k % 2 == 0) ? abs(a) : a;
        Interval out(a.prec());
        mpfr_pow_ui(out.lo_.get(), base.lo_.get(), static_cast<unsigned long>(k), MPFR_RNDD);
        mpfr_pow_ui(out.hi_.get(), base.hi_.get(), static_cast<unsigned long>(k), MPFR_RNDU);
        return out;
    }
    friend Interval max(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval min(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }

    /// Upper endpoint as a point interval (used when only an upper bound is certified).
    Interval upper() const { return point(hi_); }
    Interval lower() const { return point(lo_); }

    static Interval log2_const(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
        mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
        return r;
    }

private:
    Float lo_, hi_;
};

inline Tri less(const Interval& a, const Interval& b) {
    if (mpfr_less_p(a.hi().get(), b.lo().get())) return Tri::True;
    if (mpfr_greaterequal_p(a.lo().get(), b.hi().get())) return Tri::False;
    return Tri::Unknown;
}
inline Tri less_equal(const Interval& a, const Interval& b) {
    if (mpfr_lessequal_p(a.hi().get(), b.lo().get())) return Tri::True;
    if (mpfr_greater_p(a.lo().get(), b.hi().get())) return Tri::False;
    return Tri::Unknown;
}

/// e as an enclosure.
inline Interval e_const(mpfr_prec_t prec) { return exp(Interval(1L, prec)); }

/// log(e^a + e^b) evaluated without overflow or underflow of the exponentials.
inline Interval log_sum_exp(const Interval& a, const Interval& b) {
    Interval m = max(a, b);
    Interval d1 = exp(a - m.upper());
    Interval d2 = exp(b - m.upper());
    // m.upper() >= true max, so both exponentials are <= 1 and the sum >= e^(max - m.hi).
    Interval s = d1 + d2;
    return m.upper() + log(s);
}

}  // namespace split_thue
