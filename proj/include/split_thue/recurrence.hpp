#pragma once

// Integer linear recurrences, their explicit (Binet-type) formulae, and the
// hypotheses on a pair (A_n, B_n).
//
// Characteristic polynomials are given leading coefficient first, so
// [1, -1, -1] is t^2 - t - 1 and means a_{n+2} = a_{n+1} + a_n.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "split_thue/algebraic.hpp"

namespace split_thue {

/// c(n) attached to one characteristic root.
///
/// When the sequence was built from its recurrence alone, the coefficient of
/// n^k is rep[k](root) for rational polynomials rep[k]; explicit input stores
/// the coefficients as algebraic numbers instead.
struct CoefficientPolynomial {
    std::vector<AlgebraicNumber> coeffs;
    std::vector<QPoly> rep;

    /// Polynomial degree in n (-1 if identically zero).
    long degree() const {
        long d = -1;
        if (!rep.empty()) {
            for (std::size_t k = 0; k < rep.size(); ++k)
                if (!rep[k].is_zero()) d = static_cast<long>(k);
        } else {
            for (std::size_t k = 0; k < coeffs.size(); ++k)
                if (!coeffs[k].is_zero()) d = static_cast<long>(k);
        }
        return d;
    }
};

struct RootTerm {
    AlgebraicNumber root;
    int multiplicity = 1;
    CoefficientPolynomial coeff;
};

/// Explicit description of one root for sequences given with full data.
struct RootSpec {
    ZPoly minpoly;
    CBox enclosure;
    std::vector<AlgebraicNumber> coeff_poly;
};

class RecurrentSequence {
public:
    /// `recurrence`: characteristic polynomial, leading coefficient first.
    static RecurrentSequence from_recurrence(std::vector<mpz_class> recurrence, std::vector<mpz_class> initial,
                                             const PrecisionBudget& budget = {}) {
        RecurrentSequence s(std::move(recurrence), std::move(initial));
        s.derive_roots(budget);
        s.pick_dominant(budget);
        s.cross_check(budget);
        return s;
    }

    static RecurrentSequence from_explicit(std::vector<mpz_class> recurrence, std::vector<mpz_class> initial,
                                           const std::vector<RootSpec>& roots, const PrecisionBudget& budget = {}) {
        RecurrentSequence s(std::move(recurrence), std::move(initial));
        ZPoly chr = s.char_poly();
        for (const auto& r : roots) {
            RootTerm t{AlgebraicNumber::make(r.minpoly, r.enclosure, budget), 1, {}};
            if (!divides(t.root.min_poly(), chr))
                throw Error(ErrorKind::InconsistentModel,
                            t.root.to_string() + " is not a characteristic root");
            ZPoly q = chr;
            int m = 0;
            while (q.degree() >= 1 && divides(t.root.min_poly(), q)) {
                q = to_z_primitive(divmod(to_q(q), to_q(t.root.min_poly())).first);
                ++m;
            }
            t.multiplicity = m;
            if (static_cast<int>(r.coeff_poly.size()) > m)
                throw Error(ErrorKind::InconsistentModel, "coefficient polynomial degree exceeds root multiplicity");
            t.coeff.coeffs = r.coeff_poly;
            s.terms_.push_back(std::move(t));
        }
        if (s.terms_.empty()) throw Error(ErrorKind::InconsistentModel, "no characteristic roots given");
        s.pick_dominant(budget);
        s.cross_check(budget);
        return s;
    }

    const std::vector<mpz_class>& recurrence() const { return rec_; }
    const std::vector<mpz_class>& initial() const { return init_; }
    std::size_t order() const { return rec_.size() - 1; }
    const RootTerm& dominant() const { return terms_[dom_]; }
    std::vector<const RootTerm*> secondary() const {
        std::vector<const RootTerm*> v;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (i != dom_) v.push_back(&terms_[i]);
        return v;
    }
    /// Index 0 is the dominant root, 1.. the secondary ones.
    const RootTerm& term(std::size_t which) const {
        if (which == 0) return terms_[dom_];
        std::size_t k = 0;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i == dom_) continue;
            if (++k == which) return terms_[i];
        }
        throw Error(ErrorKind::Precondition, "root index out of range");
    }
    std::size_t root_count() const { return terms_.size(); }

    ZPoly char_poly() const {
        std::vector<mpz_class> c(rec_.rbegin(), rec_.rend());
        return ZPoly(std::move(c));
    }

    /// n-th term by the integer recursion.
    mpz_class eval_recursive(unsigned long n) const {
        std::size_t k = order();
        if (n < k) return init_[n];
        std::vector<mpz_class> w(init_.begin(), init_.end());
        for (unsigned long m = k; m <= n; ++m) {
            mpz_class next = 0;
            for (std::size_t i = 1; i <= k; ++i) next -= rec_[i] * w[k - i];
            w.erase(w.begin());
            w.push_back(next);
        }
        return w.back();
    }

    /// Enclosure of the explicit formula at n.
    Interval eval_explicit(unsigned long n, mpfr_prec_t prec, const PrecisionBudget& budget = {}) const {
        CBox sum(prec);
        Interval nn(mpz_class(n), prec);
        for (const auto& t : terms_) {
            CBox r = t.root.value(prec, budget).with_prec(prec);
            CBox c = coeff_box(t, r, nn, prec, budget);
            sum += c * pow(r, n);
        }
        if (!sum.im.contains_zero())
            throw Error(ErrorKind::InconsistentModel, "explicit formula has nonzero imaginary part");
        return sum.re;
    }

    /// n-th term, checked against the explicit formula.
    mpz_class eval_exact(unsigned long n, const PrecisionBudget& budget = {}) const {
        mpz_class v = eval_recursive(n);
        long bits = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)) + 64 + budget.working_bits;
        for (int it = 0; it < budget.max_refinements; ++it, bits *= 2) {
            Interval e = eval_explicit(n, bits, budget);
            if (!e.contains(v))
                throw Error(ErrorKind::InconsistentModel,
                            "explicit formula excludes recursion value at n = " + std::to_string(n));
            if (mpfr_cmp_d(e.width().get(), 0.5) < 0) return v;
        }
        throw Error(ErrorKind::PrecisionExhausted, "explicit formula too wide at n = " + std::to_string(n));
    }

    /// c(n) for the selected root (0 = dominant).
    AlgebraicNumber coeff_value(std::size_t which, unsigned long n, const PrecisionBudget& budget = {}) const {
        const RootTerm& t = term(which);
        mpz_class npow = 1;
        if (!t.coeff.rep.empty()) {
            QPoly e;
            for (const auto& rk : t.coeff.rep) {
                e = e + rk * mpq_class(npow);
                npow *= n;
            }
            return AlgebraicNumber::poly_in(e, t.root, budget);
        }
        AlgebraicNumber acc;
        for (const auto& ck : t.coeff.coeffs) {
            acc = field_arith(acc, field_arith(ck, AlgebraicNumber::rational(mpq_class(npow)), FieldOp::Mul, budget),
                              FieldOp::Add, budget);
            npow *= n;
        }
        return acc;
    }

    /// Box of c(n) at a given root box.
    static CBox coeff_box(const RootTerm& t, const CBox& r, const Interval& n, mpfr_prec_t prec,
                          const PrecisionBudget& budget = {}) {
        CBox c(prec);
        Interval npow(1L, prec);
        if (!t.coeff.rep.empty()) {
            for (const auto& rk : t.coeff.rep) {
                c += rk.eval(r) * npow;
                npow = npow * n;
            }
        } else {
            for (const auto& ck : t.coeff.coeffs) {
                c += ck.value(prec, budget).with_prec(prec) * npow;
                npow = npow * n;
            }
        }
        return c;
    }

private:
    RecurrentSequence(std::vector<mpz_class> rec, std::vector<mpz_class> init)
        : rec_(std::move(rec)), init_(std::move(init)) {
        if (rec_.size() < 2) throw Error(ErrorKind::Precondition, "recurrence must have order >= 1");
        if (rec_.front() != 1) throw Error(ErrorKind::Precondition, "characteristic polynomial must be monic");
        if (rec_.back() == 0) throw Error(ErrorKind::Precondition, "characteristic polynomial has root 0");
        if (init_.size() != order())
            throw Error(ErrorKind::Precondition, "need exactly " + std::to_string(order()) + " initial terms");
    }

    void derive_roots(const PrecisionBudget& budget) {
        struct Factor {
            ZPoly g;
            int m;
        };
        std::vector<Factor> factors;
        for (const auto& [sf, m] : squarefree_decomposition(to_q(char_poly())))
            for (const auto& g : irreducible_factors(to_z_primitive(sf), budget)) factors.push_back({g, m});

        // Unknowns: for each factor g^m, polynomials E_k (k < m) of degree < deg g
        // with a_n = sum_g sum_k n^k sum_{g(r)=0} E_k(r) r^n.
        std::size_t k = order();
        std::vector<std::vector<mpq_class>> mat(k, std::vector<mpq_class>(k + 1));
        std::size_t col = 0;
        for (const auto& f : factors) {
            long d = f.g.degree();
            auto ps = power_sums(to_q(f.g), static_cast<std::size_t>(d) + k);
            for (int e = 0; e < f.m; ++e)
                for (long i = 0; i < d; ++i, ++col)
                    for (std::size_t n = 0; n < k; ++n) {
                        mpz_class np;
                        mpz_ui_pow_ui(np.get_mpz_t(), n, static_cast<unsigned long>(e));
                        mat[n][col] = mpq_class(np) * ps[static_cast<std::size_t>(i) + n];
                    }
        }
        for (std::size_t n = 0; n < k; ++n) mat[n][k] = init_[n];
        solve_in_place(mat);

        col = 0;
        for (const auto& f : factors) {
            long d = f.g.degree();
            std::vector<QPoly> rep;
            for (int e = 0; e < f.m; ++e) {
                std::vector<mpq_class> c;
                for (long i = 0; i < d; ++i, ++col) c.push_back(mat[col][k]);
                rep.emplace_back(std::move(c));
            }
            bool zero = true;
            for (const auto& r : rep) zero = zero && r.is_zero();
            if (zero) continue;
            for (const auto& box : isolate_roots(f.g, budget)) {
                RootTerm t{AlgebraicNumber::make(f.g, box, budget), f.m, {}};
                t.coeff.rep = rep;
                terms_.push_back(std::move(t));
            }
        }
        if (terms_.empty()) throw Error(ErrorKind::HypothesisViolated, "sequence is identically zero");
    }

    static void solve_in_place(std::vector<std::vector<mpq_class>>& a) {
        std::size_t n = a.size();
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && a[p][c] == 0) ++p;
            if (p == n) throw Error(ErrorKind::InconsistentModel, "singular system for the explicit formula");
            std::swap(a[p], a[c]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || a[r][c] == 0) continue;
                mpq_class f = a[r][c] / a[c][c];
                for (std::size_t j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            a[r][n] /= a[r][r];
            a[r][r] = 1;
        }
    }

    void pick_dominant(const PrecisionBudget& budget) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < terms_.size(); ++i) {
            int c = cmp_abs(terms_[i].root, terms_[best].root, budget);
            if (c > 0) best = i;
        }
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (i != best && cmp_abs(terms_[i].root, terms_[best].root, budget) == 0)
                throw Error(ErrorKind::HypothesisViolated, "no strictly dominant characteristic root");
        if (!terms_[best].root.is_real())
            throw Error(ErrorKind::HypothesisViolated, "dominant characteristic root is not real");
        dom_ = best;
    }

    void cross_check(const PrecisionBudget& budget) const {
        for (std::size_t n = 0; n < order() + 2; ++n) eval_exact(n, budget);
    }

    std::vector<mpz_class> rec_;
    std::vector<mpz_class> init_;
    std::vector<RootTerm> terms_;
    std::size_t dom_ = 0;
};

enum class CaseTag { Strict, EqualModulus };

inline const char* to_string(CaseTag c) { return c == CaseTag::Strict ? "strict" : "equal_modulus"; }

class FamilyInstance {
public:
    /// Orders the pair so that |alpha| <= |beta|.
    FamilyInstance(RecurrentSequence a, RecurrentSequence b, const PrecisionBudget& budget = {})
        : a_(std::move(a)), b_(std::move(b)), budget_(budget) {
        int c = cmp_abs(a_.dominant().root, b_.dominant().root, budget);
        if (c > 0) {
            std::swap(a_, b_);
            swapped_ = true;
        }
        tag_ = c == 0 ? CaseTag::EqualModulus : CaseTag::Strict;
        d1_ = 1L << 30;
        d2_ = -1;
        for (const RecurrentSequence* s : {&a_, &b_})
            for (std::size_t i = 0; i < s->root_count(); ++i) {
                long d = s->term(i).coeff.degree();
                if (d < 0) continue;
                d1_ = std::min(d1_, d);
                d2_ = std::max(d2_, d);
            }
    }

    const RecurrentSequence& A() const { return a_; }
    const RecurrentSequence& B() const { return b_; }
    const AlgebraicNumber& alpha() const { return a_.dominant().root; }
    const AlgebraicNumber& beta() const { return b_.dominant().root; }
    long d1() const { return d1_; }
    long d2() const { return d2_; }
    bool swapped() const { return swapped_; }
    const PrecisionBudget& budget() const { return budget_; }

    /// Modulus case; decided exactly unless overridden.
    CaseTag case_tag() const { return override_ ? *override_ : tag_; }
    CaseTag detected_case() const { return tag_; }
    void override_case(std::optional<CaseTag> c) { override_ = c; }

    mpz_class An(unsigned long n) const { return a_.eval_exact(n, budget_); }
    mpz_class Bn(unsigned long n) const { return b_.eval_exact(n, budget_); }

private:
    RecurrentSequence a_, b_;
    PrecisionBudget budget_;
    CaseTag tag_ = CaseTag::Strict;
    std::optional<CaseTag> override_;
    bool swapped_ = false;
    long d1_ = 0, d2_ = 0;
};

/// Which of the three conditions on |c_B|, |c_B - c_A| holds (0 = none).
struct EqualModulusCheck {
    unsigned long n = 0;
    bool abs_c_differ = false;
    int condition = 0;
    /// Sign of log|c_A| - log|c_B - c_A|; used by the j = 2 argument.
    int log_gap_sign = 0;
};

struct HypothesisReport {
    CaseTag tag = CaseTag::Strict;
    /// Smallest n such that every probed m in [n, n_probe] passes.
    unsigned long first_valid_n = 0;
    std::vector<unsigned long> failing_n;
    std::vector<EqualModulusCheck> equal_modulus;
    /// Equal-modulus condition in force at n_probe (0 in the strict case).
    int condition = 0;
};

inline bool bullet_condition(const mpz_class& a, const mpz_class& b) {
    return (1 <= a && a <= b - 2) || (-1 >= a && a >= b + 3);
}

inline EqualModulusCheck equal_modulus_check(const FamilyInstance& fam, unsigned long n) {
    const auto& budget = fam.budget();
    EqualModulusCheck r;
    r.n = n;
    AlgebraicNumber ca = fam.A().coeff_value(0, n, budget);
    AlgebraicNumber cb = fam.B().coeff_value(0, n, budget);
    r.abs_c_differ = cmp_abs(ca, cb, budget) != 0;
    AlgebraicNumber diff = field_arith(cb, ca, FieldOp::Sub, budget);
    int cb1 = cmp_abs_one(cb, budget);
    if (cb1 > 0) {
        if (!diff.is_zero() && cmp_abs_one(field_arith(diff, cb, FieldOp::Mul, budget), budget) > 0) r.condition = 1;
    } else if (cb1 < 0) {
        if (!cb.is_zero() && !diff.is_zero() && cmp_abs_one(diff, budget) < 0) r.condition = 2;
    } else if (!diff.is_zero() && cmp_abs_one(diff, budget) != 0) {
        r.condition = 3;
    }
    if (!ca.is_zero() && !diff.is_zero()) r.log_gap_sign = cmp_abs(ca, diff, budget);
    return r;
}

/// Checks the hypotheses of the main theorem for n = 0..n_probe.
inline HypothesisReport check_hypotheses(const FamilyInstance& fam, unsigned long n_probe) {
    const auto& budget = fam.budget();
    HypothesisReport rep;
    rep.tag = fam.case_tag();
    if (cmp_abs_one(fam.beta(), budget) <= 0)
        throw Error(ErrorKind::HypothesisViolated, "dominant root of B has modulus <= 1");
    std::vector<bool> ok(n_probe + 1, true);
    for (unsigned long n = 0; n <= n_probe; ++n) {
        if (!bullet_condition(fam.An(n), fam.Bn(n))) ok[n] = false;
        if (rep.tag == CaseTag::EqualModulus) {
            auto e = equal_modulus_check(fam, n);
            if (!e.abs_c_differ || e.condition == 0) ok[n] = false;
            rep.equal_modulus.push_back(e);
        }
        if (!ok[n]) rep.failing_n.push_back(n);
    }
    if (!ok[n_probe])
        throw Error(ErrorKind::HypothesisViolated,
                    "hypotheses fail at n = " + std::to_string(n_probe) + " (A_n = " + fam.An(n_probe).get_str() +
                        ", B_n = " + fam.Bn(n_probe).get_str() + ")");
    unsigned long first = n_probe;
    while (first > 0 && ok[first - 1]) --first;
    rep.first_valid_n = first;
    if (rep.tag == CaseTag::EqualModulus) rep.condition = rep.equal_modulus.back().condition;
    return rep;
}

}  // namespace split_thue
