#pragma once

// Real and complex algebraic numbers as (minimal polynomial, isolating box).
//
// Arithmetic never builds a number-field tower. The result of a field
// operation is the product of (x - v) over all conjugate combinations v, scaled
// by the leading coefficients so that it is the integer resultant polynomial;
// its coefficients are recovered from interval enclosures, and the minimal
// polynomial is the smallest exact divisor whose root set contains the
// designated value.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "split_thue/cbox.hpp"
#include "split_thue/error.hpp"
#include "split_thue/interval.hpp"
#include "split_thue/polynomial.hpp"
#include "split_thue/roots.hpp"

namespace split_thue {

enum class FieldOp { Add, Sub, Mul, Div };

class AlgebraicNumber;

namespace detail {

/// Sorts root boxes by real part, then imaginary part, for deterministic ordering.
inline void sort_boxes(std::vector<CBox>& v) {
    std::sort(v.begin(), v.end(), [](const CBox& a, const CBox& b) {
        int c = mpfr_cmp(a.re.mid().get(), b.re.mid().get());
        if (c != 0) return c < 0;
        return mpfr_less_p(a.im.mid().get(), b.im.mid().get()) != 0;
    });
}

/// Integer polynomial lc * prod (x - v_i) from root enclosures; nullopt if some
/// coefficient enclosure does not pin down a unique integer.
inline std::optional<ZPoly> integer_poly_from_roots(const mpz_class& lc, const std::vector<CBox>& roots,
                                                    const std::vector<std::size_t>& subset, mpfr_prec_t p) {
    std::vector<CBox> c{CBox(Interval(lc, p))};
    for (std::size_t idx : subset) {
        const CBox& v = roots[idx];
        std::vector<CBox> next(c.size() + 1, CBox(p));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= c[k] * v;
        }
        c = std::move(next);
    }
    std::vector<mpz_class> out;
    for (const auto& b : c) {
        if (!b.im.contains_zero()) return std::nullopt;
        mpz_class z;
        if (!b.im.is_point() && mpfr_cmp_d(b.im.width().get(), 0.5) >= 0) return std::nullopt;
        if (!b.re.unique_integer(z)) return std::nullopt;
        out.push_back(z);
    }
    return ZPoly(std::move(out));
}

/// Smallest-degree exact divisor of `whole` whose roots are a sub-multiset of
/// `roots` containing roots[designated]. Returns nullopt when precision is too low.
inline std::optional<ZPoly> minimal_factor(const ZPoly& whole, const std::vector<CBox>& roots, std::size_t designated,
                                           mpfr_prec_t p) {
    std::size_t n = roots.size();
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < n; ++i)
        if (i != designated) others.push_back(i);
    for (std::size_t k = 1; k <= n; ++k) {
        // Enumerate (k-1)-subsets of `others` in lexicographic order.
        std::vector<std::size_t> pick(k - 1);
        for (std::size_t i = 0; i + 1 < k; ++i) pick[i] = i;
        while (true) {
            std::vector<std::size_t> subset{designated};
            for (std::size_t i : pick) subset.push_back(others[i]);
            auto g = integer_poly_from_roots(whole.lc(), roots, subset, p);
            if (g) {
                ZPoly gp = primitive(*g);
                if (divides(gp, whole)) return gp;
            }
            // next combination
            std::size_t m = k - 1;
            if (m == 0) break;
            std::size_t i = m;
            while (i > 0 && pick[i - 1] == others.size() - m + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace detail

class AlgebraicNumber {
public:
    /// Zero.
    AlgebraicNumber() : poly_({mpz_class(0), mpz_class(1)}), box_(Interval(0L, 64)) {}

    static AlgebraicNumber rational(const mpq_class& q) {
        mpq_class c = q;
        c.canonicalize();
        ZPoly p({-c.get_num(), c.get_den()});
        return AlgebraicNumber(primitive(p), CBox(Interval(c, 128)), Unchecked{});
    }
    static AlgebraicNumber integer(long v) { return rational(mpq_class(v)); }

    /// Validated construction: `poly` must be irreducible, and `enclosure`
    /// must isolate exactly one of its roots.
    static AlgebraicNumber make(const ZPoly& poly, const CBox& enclosure, const PrecisionBudget& budget = {}) {
        if (poly.degree() < 1) throw Error(ErrorKind::Precondition, "minimal polynomial must have degree >= 1");
        ZPoly p = primitive(poly);
        if (!is_irreducible(p, budget))
            throw Error(ErrorKind::Precondition, "polynomial " + p.to_string() + " is reducible over Q");
        if (p.degree() == 1) {
            mpq_class r(-p[0], p[1]);
            r.canonicalize();
            CBox exact(Interval(r, 128));
            if (!enclosure.overlaps(exact)) throw Error(ErrorKind::Precondition, "enclosure misses the root");
            return AlgebraicNumber(p, exact, Unchecked{});
        }
        mpfr_prec_t prec = budget.working_bits;
        for (int it = 0; it < budget.max_refinements; ++it, prec *= 2) {
            auto roots = try_isolate_roots(p, prec);
            if (roots.empty()) continue;
            int inside = 0, touching = 0;
            std::size_t hit = 0;
            for (std::size_t i = 0; i < roots.size(); ++i) {
                if (enclosure.contains(roots[i])) {
                    ++inside;
                    hit = i;
                } else if (enclosure.overlaps(roots[i])) {
                    ++touching;
                }
            }
            if (touching == 0) {
                if (inside != 1)
                    throw Error(ErrorKind::Precondition,
                                "enclosure contains " + std::to_string(inside) + " roots of " + p.to_string());
                return AlgebraicNumber(p, roots[hit], Unchecked{});
            }
        }
        throw Error(ErrorKind::PrecisionExhausted, "cannot decide which root the enclosure isolates");
    }

    const ZPoly& min_poly() const { return poly_; }
    long degree() const { return poly_.degree(); }
    const CBox& enclosure() const { return box_; }
    bool is_real() const { return box_.is_real(); }
    bool is_zero() const { return poly_.degree() == 1 && poly_[0] == 0; }

    std::optional<mpq_class> as_rational() const {
        if (poly_.degree() != 1) return std::nullopt;
        mpq_class r(-poly_[0], poly_[1]);
        r.canonicalize();
        return r;
    }

    /// Enclosure refined to width <= 2^-bits (each side).
    CBox value(long bits, const PrecisionBudget& budget = {}) const {
        if (auto q = as_rational()) return CBox(Interval(*q, static_cast<mpfr_prec_t>(bits + 64)));
        if (box_.log2_width() <= static_cast<double>(-bits)) return box_;
        if (is_real()) return CBox(refine_real_root(poly_, box_.re, bits));
        mpfr_prec_t prec = std::max<mpfr_prec_t>(budget.working_bits, bits + 32);
        for (int it = 0; it < budget.max_refinements; ++it, prec *= 2) {
            auto roots = try_isolate_roots(poly_, prec);
            if (roots.empty()) continue;
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < roots.size(); ++i)
                if (roots[i].overlaps(box_)) hits.push_back(i);
            if (hits.size() == 1 && roots[hits[0]].log2_width() <= static_cast<double>(-bits)) return roots[hits[0]];
        }
        throw Error(ErrorKind::PrecisionExhausted, "cannot refine root of " + poly_.to_string());
    }

    Interval real_value(long bits, const PrecisionBudget& budget = {}) const {
        if (!is_real()) throw Error(ErrorKind::Precondition, "number is not real");
        return value(bits, budget).re;
    }

    /// All conjugates, sorted, with the index of this number among them.
    std::pair<std::vector<CBox>, std::size_t> conjugates_with_index(const PrecisionBudget& budget = {},
                                                                     long bits = 0) const {
        if (auto q = as_rational()) {
            std::vector<CBox> v{value(std::max<long>(bits, budget.working_bits), budget)};
            return {v, 0};
        }
        mpfr_prec_t prec = std::max<mpfr_prec_t>(budget.working_bits, bits + 32);
        for (int it = 0; it < budget.max_refinements; ++it, prec *= 2) {
            auto roots = try_isolate_roots(poly_, prec);
            if (roots.empty()) continue;
            detail::sort_boxes(roots);
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < roots.size(); ++i)
                if (roots[i].overlaps(box_)) hits.push_back(i);
            if (hits.size() == 1) return {roots, hits[0]};
        }
        throw Error(ErrorKind::PrecisionExhausted, "cannot separate conjugates of " + poly_.to_string());
    }

    std::vector<CBox> conjugates(const PrecisionBudget& budget = {}) const {
        return conjugates_with_index(budget).first;
    }

    /// Absolute logarithmic height (1/d)(log|a| + sum log max(|conj|, 1)).
    Interval height(const PrecisionBudget& budget = {}) const {
        mpfr_prec_t p = budget.working_bits + 32;
        auto [roots, idx] = conjugates_with_index(budget, budget.working_bits + 16);
        (void)idx;
        Interval one(1L, p);
        Interval sum = log(Interval(mpz_class(abs(poly_.lc())), p));
        for (const auto& r : roots) sum += log(max(abs(r.with_prec(p)), one));
        return sum / Interval(degree(), p);
    }

    /// log|x| with width <= 2^-(working_bits/2).
    Interval log_abs(const PrecisionBudget& budget = {}) const {
        if (is_zero()) throw Error(ErrorKind::ZeroArgument, "log of zero");
        long bits = budget.working_bits;
        for (int it = 0; it < budget.max_refinements; ++it, bits *= 2) {
            CBox v = value(bits, budget).with_prec(static_cast<mpfr_prec_t>(bits + 32));
            Interval m = abs(v);
            if (m.sign() <= 0) continue;
            Interval l = log(m);
            if (l.log2_width() <= -static_cast<double>(budget.working_bits) / 2) return l;
        }
        throw Error(ErrorKind::PrecisionExhausted, "log_abs did not reach target width");
    }

    /// Certified sign of a real number.
    int sign(const PrecisionBudget& budget = {}) const {
        if (!is_real()) throw Error(ErrorKind::Precondition, "sign of a non-real number");
        if (is_zero()) return 0;
        long bits = budget.working_bits;
        for (int it = 0; it < budget.max_refinements; ++it, bits *= 2) {
            int s = value(bits, budget).re.sign();
            if (s != 0) return s;
        }
        throw Error(ErrorKind::PrecisionExhausted, "cannot certify sign");
    }

    AlgebraicNumber negate() const {
        return AlgebraicNumber(primitive(poly_.reflect()), -box_, Unchecked{});
    }

    /// Complex conjugate (same minimal polynomial).
    AlgebraicNumber conjugate() const { return AlgebraicNumber(poly_, box_.conj(), Unchecked{}); }

    AlgebraicNumber inverse() const {
        if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
        CBox one(Interval(1L, box_.prec()));
        return AlgebraicNumber(primitive(poly_.reversed()), one / box_, Unchecked{});
    }

    /// Irreducibility over Q via the same root-subset search used for factors.
    static bool is_irreducible(const ZPoly& p, const PrecisionBudget& budget = {}) {
        if (p.degree() <= 1) return p.degree() == 1;
        QPoly q = to_q(p);
        if (gcd(q, q.derivative()).degree() > 0) return false;
        mpfr_prec_t prec = budget.working_bits;
        for (int it = 0; it < budget.max_refinements; ++it, prec *= 2) {
            auto r = try_isolate_roots(p, prec);
            if (r.empty()) continue;
            auto f = detail::minimal_factor(p, r, 0, prec);
            if (f) return f->degree() == p.degree();
        }
        throw Error(ErrorKind::PrecisionExhausted, "irreducibility test ran out of precision");
    }

    /// The number whose conjugate multiset is `roots` (a resultant-type
    /// product with leading coefficient `lc`), designated by `index`.
    static AlgebraicNumber from_conjugate_product(const mpz_class& lc,
                                                  const std::function<std::vector<CBox>(mpfr_prec_t)>& roots_at,
                                                  std::size_t index, const PrecisionBudget& budget) {
        mpfr_prec_t prec = budget.working_bits;
        for (int it = 0; it < budget.max_refinements; ++it, prec *= 2) {
            std::vector<CBox> roots = roots_at(prec);
            std::vector<std::size_t> all(roots.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            auto whole = detail::integer_poly_from_roots(lc, roots, all, prec);
            if (!whole) continue;
            if (whole->is_zero()) continue;
            auto m = detail::minimal_factor(*whole, roots, index, prec);
            if (!m) continue;
            CBox box = roots[index];
            auto mroots = try_isolate_roots(*m, prec);
            if (mroots.empty()) continue;
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < mroots.size(); ++i)
                if (mroots[i].overlaps(box)) hits.push_back(i);
            if (hits.size() != 1) continue;
            return AlgebraicNumber(*m, mroots[hits[0]], Unchecked{});
        }
        throw Error(ErrorKind::PrecisionExhausted, "minimal polynomial search ran out of precision");
    }

    /// E(r) for a polynomial E with rational coefficients and an algebraic r.
    static AlgebraicNumber poly_in(const QPoly& e, const AlgebraicNumber& r, const PrecisionBudget& budget = {}) {
        if (e.is_zero()) return AlgebraicNumber();
        if (e.degree() == 0) return rational(e[0]);
        if (auto q = r.as_rational()) return rational(e.eval(*q));
        mpz_class den = 1;
        for (const auto& c : e.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        std::vector<mpz_class> nc;
        for (const auto& c : e.coeffs()) nc.push_back(mpq_class(c * den).get_num());
        ZPoly num(std::move(nc));
        long d = r.degree();
        mpz_class lc, dpow;
        mpz_pow_ui(lc.get_mpz_t(), r.min_poly().lc().get_mpz_t(), static_cast<unsigned long>(num.degree()));
        mpz_pow_ui(dpow.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(d));
        lc *= dpow;
        std::size_t index = 0;
        auto roots_at = [&](mpfr_prec_t prec) {
            auto [conj, idx] = r.conjugates_with_index(budget, static_cast<long>(prec));
            index = idx;
            std::vector<CBox> v;
            CBox dd(Interval(den, prec));
            for (const auto& c : conj) v.push_back(num.eval(c.with_prec(prec)) / dd);
            return v;
        };
        roots_at(budget.working_bits);
        return from_conjugate_product(lc, roots_at, index, budget);
    }

    friend AlgebraicNumber field_arith(const AlgebraicNumber& a, const AlgebraicNumber& b, FieldOp op,
                                       const PrecisionBudget& budget);

    std::string to_string() const {
        return "root of " + poly_.to_string() + " in " + box_.re.to_string(12) +
               (is_real() ? "" : " + i*" + box_.im.to_string(12));
    }

private:
    struct Unchecked {};
    AlgebraicNumber(ZPoly p, CBox b, Unchecked) : poly_(std::move(p)), box_(std::move(b)) {}

    ZPoly poly_;
    CBox box_;
};

inline AlgebraicNumber field_arith(const AlgebraicNumber& a, const AlgebraicNumber& b, FieldOp op,
                                   const PrecisionBudget& budget = {}) {
    if (op == FieldOp::Div && b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by an algebraic zero");
    auto qa = a.as_rational();
    auto qb = b.as_rational();
    if (qa && qb) {
        switch (op) {
            case FieldOp::Add: return AlgebraicNumber::rational(*qa + *qb);
            case FieldOp::Sub: return AlgebraicNumber::rational(*qa - *qb);
            case FieldOp::Mul: return AlgebraicNumber::rational(*qa * *qb);
            case FieldOp::Div: return AlgebraicNumber::rational(*qa / *qb);
        }
    }
    if (op == FieldOp::Sub) return field_arith(a, b.negate(), FieldOp::Add, budget);
    if (op == FieldOp::Div) return field_arith(a, b.inverse(), FieldOp::Mul, budget);
    if (op == FieldOp::Mul && (a.is_zero() || b.is_zero())) return AlgebraicNumber();
    if (op == FieldOp::Add && a.is_zero()) return b;
    if (op == FieldOp::Add && b.is_zero()) return a;

    mpz_class lc, t;
    mpz_pow_ui(lc.get_mpz_t(), a.min_poly().lc().get_mpz_t(), static_cast<unsigned long>(b.degree()));
    mpz_pow_ui(t.get_mpz_t(), b.min_poly().lc().get_mpz_t(), static_cast<unsigned long>(a.degree()));
    lc *= t;
    std::size_t index = 0;
    auto roots_at = [&](mpfr_prec_t prec) {
        auto [ca, ia] = a.conjugates_with_index(budget, static_cast<long>(prec));
        auto [cb, ib] = b.conjugates_with_index(budget, static_cast<long>(prec));
        std::vector<CBox> v;
        for (std::size_t i = 0; i < ca.size(); ++i)
            for (std::size_t j = 0; j < cb.size(); ++j) {
                if (i == ia && j == ib) index = v.size();
                CBox x = ca[i].with_prec(prec), y = cb[j].with_prec(prec);
                v.push_back(op == FieldOp::Add ? x + y : x * y);
            }
        return v;
    };
    roots_at(budget.working_bits);
    return AlgebraicNumber::from_conjugate_product(lc, roots_at, index, budget);
}

/// Exact equality (a - b has minimal polynomial x).
inline bool equal(const AlgebraicNumber& a, const AlgebraicNumber& b, const PrecisionBudget& budget = {}) {
    if (!(a.min_poly() == b.min_poly())) return false;
    if (a.degree() == 1) return true;
    return field_arith(a, b, FieldOp::Sub, budget).is_zero();
}

/// |a|^2 as an algebraic number.
inline AlgebraicNumber abs_squared(const AlgebraicNumber& a, const PrecisionBudget& budget = {}) {
    return field_arith(a, a.is_real() ? a : a.conjugate(), FieldOp::Mul, budget);
}

/// Exact comparison of |a| and |b|: -1, 0 or 1.
inline int cmp_abs(const AlgebraicNumber& a, const AlgebraicNumber& b, const PrecisionBudget& budget = {}) {
    bool eq = false;
    if (a.is_real() && b.is_real())
        eq = equal(a, b, budget) || equal(a, b.negate(), budget);
    else
        eq = equal(abs_squared(a, budget), abs_squared(b, budget), budget);
    if (eq) return 0;
    long bits = budget.working_bits;
    for (int it = 0; it < budget.max_refinements; ++it, bits *= 2) {
        Interval x = abs(a.value(bits, budget)), y = abs(b.value(bits, budget));
        if (less(x, y) == Tri::True) return -1;
        if (less(y, x) == Tri::True) return 1;
    }
    throw Error(ErrorKind::UndecidableComparison, "cannot separate |a| and |b|");
}

/// Exact comparison of |a| with 1.
inline int cmp_abs_one(const AlgebraicNumber& a, const PrecisionBudget& budget = {}) {
    return cmp_abs(a, AlgebraicNumber::integer(1), budget);
}

/// Irreducible factors over Q of a square-free integer polynomial.
inline std::vector<ZPoly> irreducible_factors(const ZPoly& f, const PrecisionBudget& budget = {}) {
    std::vector<ZPoly> out;
    ZPoly rest = primitive(f);
    while (rest.degree() >= 1) {
        std::optional<ZPoly> g;
        mpfr_prec_t prec = budget.working_bits;
        for (int it = 0; it < budget.max_refinements && !g; ++it, prec *= 2) {
            auto roots = try_isolate_roots(rest, prec);
            if (roots.empty()) continue;
            detail::sort_boxes(roots);
            g = detail::minimal_factor(rest, roots, 0, prec);
        }
        if (!g) throw Error(ErrorKind::PrecisionExhausted, "factorisation ran out of precision");
        out.push_back(*g);
        rest = to_z_primitive(divmod(to_q(rest), to_q(*g)).first);
    }
    return out;
}

}  // namespace split_thue
