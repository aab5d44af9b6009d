#pragma once

// Dense univariate polynomials over Z and Q, coefficients stored low to high.

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "split_thue/cbox.hpp"
#include "split_thue/error.hpp"
#include "split_thue/interval.hpp"

namespace split_thue {

template <typename T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }

    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
    static Poly monomial(std::size_t k, T v = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = std::move(v);
        return Poly(std::move(c));
    }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& lc() const { return c_.back(); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const T& s) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x *= s;
        return Poly(std::move(r));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(r));
    }

    /// p(-x).
    Poly reflect() const {
        std::vector<T> r = c_;
        for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return Poly(std::move(r));
    }

    /// x^deg p(1/x).
    Poly reversed() const {
        std::vector<T> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    /// Horner evaluation in any ring that accepts T via `lift`.
    template <typename V, typename Lift>
    V eval_with(const V& x, Lift lift) const {
        if (c_.empty()) return lift(T(0));
        V acc = lift(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + lift(c_[i]);
        return acc;
    }

    T eval(const T& x) const {
        return eval_with(x, [](const T& v) { return v; });
    }

    Interval eval(const Interval& x) const {
        mpfr_prec_t p = x.prec();
        return eval_with(x, [p](const T& v) { return Interval(v, p); });
    }

    CBox eval(const CBox& x) const {
        mpfr_prec_t p = x.prec();
        return eval_with(x, [p](const T& v) { return CBox(Interval(v, p)); });
    }

    std::string to_string(const char* var = "x") const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            T v = c_[i];
            bool neg = v < 0;
            if (neg) v = -v;
            if (!s.empty())
                s += neg ? " - " : " + ";
            else if (neg)
                s += "-";
            bool one = (v == 1);
            if (!one || i == 0) s += v.get_str();
            if (i > 0) {
                if (!one) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using ZPoly = Poly<mpz_class>;
using QPoly = Poly<mpq_class>;

inline QPoly to_q(const ZPoly& p) {
    std::vector<mpq_class> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return QPoly(std::move(c));
}

inline mpz_class content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& v : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly primitive(const ZPoly& p) {
    if (p.is_zero()) return p;
    mpz_class g = content(p);
    if (p.lc() < 0) g = -g;
    std::vector<mpz_class> c;
    for (const auto& v : p.coeffs()) c.push_back(v / g);
    return ZPoly(std::move(c));
}

/// Clears denominators, then takes the primitive part.
inline ZPoly to_z_primitive(const QPoly& p) {
    mpz_class l = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> c;
    for (const auto& v : p.coeffs()) {
        mpq_class t = v * l;
        c.push_back(t.get_num());
    }
    return primitive(ZPoly(std::move(c)));
}

inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    std::vector<mpq_class> r = a.coeffs();
    long db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db + 1), mpq_class(0));
    for (long i = a.degree(); i >= db; --i) {
        mpq_class f = r[static_cast<std::size_t>(i)] / b.lc();
        q[static_cast<std::size_t>(i - db)] = f;
        if (f == 0) continue;
        for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline QPoly monic(const QPoly& p) {
    if (p.is_zero()) return p;
    return p * (mpq_class(1) / p.lc());
}

inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Returns (g, s) with s*a == g (mod m), g = gcd(a, m) monic.
inline std::pair<QPoly, QPoly> inverse_mod(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = divmod(a, m).second;
    QPoly s0, s1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    mpq_class inv = mpq_class(1) / r0.lc();
    return {r0 * inv, divmod(s0 * inv, m).second};
}

/// True iff b divides a exactly over Q.
inline bool divides(const ZPoly& b, const ZPoly& a) { return divmod(to_q(a), to_q(b)).second.is_zero(); }

/// Square-free decomposition: returns pairs (factor, multiplicity), factors monic.
inline std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> out;
    if (p.degree() < 1) return out;
    QPoly a = monic(p);
    QPoly b = gcd(a, a.derivative());
    QPoly c = divmod(a, b).first;
    int i = 1;
    while (c.degree() > 0) {
        QPoly y = gcd(b, c);
        QPoly z = divmod(c, y).first;
        if (z.degree() > 0) out.emplace_back(monic(z), i);
        b = divmod(b, y).first;
        c = std::move(y);
        ++i;
    }
    return out;
}

/// Power sums p_j = sum over roots r of g of r^j for j = 0..count-1 (Newton's identities).
inline std::vector<mpq_class> power_sums(const QPoly& g, std::size_t count) {
    QPoly m = monic(g);
    long d = m.degree();
    // m = x^d + a_1 x^{d-1} + ... + a_d
    std::vector<mpq_class> a(static_cast<std::size_t>(d) + 1);
    for (long k = 0; k <= d; ++k) a[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(d - k)];
    std::vector<mpq_class> p(count, mpq_class(0));
    if (count == 0) return p;
    p[0] = d;
    for (std::size_t j = 1; j < count; ++j) {
        mpq_class s = 0;
        long jj = static_cast<long>(j);
        for (long k = 1; k <= std::min(jj - 1, d); ++k) s += a[static_cast<std::size_t>(k)] * p[j - static_cast<std::size_t>(k)];
        if (jj <= d) s += mpq_class(jj) * a[j];
        p[j] = -s;
    }
    return p;
}

}  // namespace split_thue
