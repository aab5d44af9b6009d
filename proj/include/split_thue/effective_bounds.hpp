#pragma once

// Effective bounds: the Bugeaud-Gyory upper bound for log|y|, the
// Baker-Wustholz lower bound for linear forms in logarithms, and the search
// for a parameter n0 beyond which the two contradict each other.
//
// Everything past the exact constants is evaluated analytically in n (from
// the closed forms and the certified constants), so n may exceed 2^64 and no
// root of f_n is ever computed here. Tiny quantities are carried as logs.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "split_thue/unit_lattice.hpp"

namespace split_thue {

/// C(r, N) = 3^(r+27) (r+1)^(7r+19) N^(2N+6r+14).
inline mpz_class bugy_constant(unsigned long r, unsigned long N) {
    mpz_class a, b, c;
    mpz_ui_pow_ui(a.get_mpz_t(), 3, r + 27);
    mpz_ui_pow_ui(b.get_mpz_t(), r + 1, 7 * r + 19);
    mpz_ui_pow_ui(c.get_mpz_t(), N, 2 * N + 6 * r + 14);
    return a * b * c;
}

/// C(r, N) R max(log R, 1) (R + log(H B)), given log(H B).
inline Interval bugy_bound_raw(const Interval& R, const Interval& logHB, unsigned long r = 2, unsigned long N = 3) {
    if (R.sign() <= 0) throw Error(ErrorKind::Precondition, "regulator must be positive");
    mpfr_prec_t p = R.prec();
    Interval C(bugy_constant(r, N), p);
    return C * R * max(log(R), Interval(1L, p)) * (R + logHB);
}

/// log max(3, |A + B|, |A B|), the coefficient bound H of f_n.
inline Interval log_coefficient_bound(const mpz_class& a, const mpz_class& b, mpfr_prec_t p) {
    mpz_class h = 3;
    h = std::max(h, mpz_class(abs(a + b)));
    h = std::max(h, mpz_class(abs(a * b)));
    return log(Interval(h, p));
}

/// Bound for max(log|x|, log|y|) at n with m = +-1, so B = e and log(H B) = log H + 1.
inline Interval bugy_bound(const FamilyInstance& fam, unsigned long n, const Interval& R) {
    mpfr_prec_t p = R.prec();
    return bugy_bound_raw(R, log_coefficient_bound(fam.An(n), fam.Bn(n), p) + Interval(1L, p));
}

/// 18 (t+1)! t^(t+1) (32 D)^(t+2).
inline mpz_class baker_constant(unsigned long t, unsigned long D) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), t + 1);
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), t, t + 1);
    mpz_ui_pow_ui(b.get_mpz_t(), 32 * D, t + 2);
    return 18 * f * a * b;
}

/// max(h, |log gamma| / D, 0.16 / D).
inline Interval modified_height(const Interval& h, const Interval& log_abs, unsigned long D) {
    mpfr_prec_t p = h.prec();
    Interval d(static_cast<long>(D), p);
    Interval floor = Interval(mpq_class(4, 25), p) / d;
    return max(max(h, abs(log_abs) / d), floor);
}

/// -18 (t+1)! t^(t+1) (32 D)^(t+2) log(2 t D) h_1 ... h_t log B.
inline Interval baker_lower_logB(const std::vector<Interval>& h, unsigned long D, const Interval& logB) {
    unsigned long t = h.size();
    if (t == 0 || D == 0) throw Error(ErrorKind::Precondition, "need t >= 1 and D >= 1");
    mpfr_prec_t p = logB.prec();
    Interval floor = Interval(mpq_class(4, 25), p) / Interval(static_cast<long>(D), p);
    Interval prod(1L, p);
    for (const auto& hi : h) {
        if (less(hi, floor) == Tri::True) throw Error(ErrorKind::InvalidHeight, "height below 0.16 / D");
        prod = prod * hi;
    }
    Interval K(baker_constant(t, D), p);
    return -(K * log(Interval(static_cast<long>(2 * t * D), p)) * prod * logB);
}

inline Interval baker_lower(const std::vector<Interval>& h, unsigned long D, const Interval& B) {
    if (less(B, e_const(B.prec())) == Tri::True) throw Error(ErrorKind::Precondition, "B must be at least e");
    return baker_lower_logB(h, D, log(B));
}

/// Degree of Q(g_1, ..., g_m), certified by a primitive element whose
/// candidate conjugates are pairwise separated.
inline unsigned long compositum_degree(const std::vector<AlgebraicNumber>& gens, const PrecisionBudget& budget = {}) {
    std::optional<AlgebraicNumber> theta;
    for (const auto& g : gens) {
        if (g.degree() <= 1) continue;
        if (!theta) {
            theta = g;
            continue;
        }
        bool done = false;
        for (long k = 1; k <= 16 && !done; ++k) {
            for (long bits = budget.working_bits; bits <= budget.working_bits * 8 && !done; bits *= 2) {
                auto ct = theta->conjugates_with_index(budget, bits).first;
                auto cg = g.conjugates_with_index(budget, bits).first;
                std::vector<CBox> vals;
                Interval kk(k, static_cast<mpfr_prec_t>(bits));
                for (const auto& a : ct)
                    for (const auto& b : cg) vals.push_back(a + b * kk);
                bool separated = true;
                for (std::size_t i = 0; i < vals.size() && separated; ++i)
                    for (std::size_t j = i + 1; j < vals.size() && separated; ++j)
                        if (vals[i].overlaps(vals[j])) separated = false;
                if (!separated) continue;
                theta = field_arith(*theta, field_arith(AlgebraicNumber::integer(k), g, FieldOp::Mul, budget),
                                    FieldOp::Add, budget);
                done = true;
            }
        }
        if (!done) throw Error(ErrorKind::PrecisionExhausted, "no separating primitive element found");
    }
    return theta ? static_cast<unsigned long>(theta->degree()) : 1ul;
}

/// Height model h(c(n)) <= sum_k (h(e_k) + k log n) + log(#terms) for c(n) = sum e_k n^k.
struct CoeffHeightModel {
    std::vector<Interval> heights;
    std::vector<bool> nonzero;
    /// True when c is a constant of absolute value 1, so log|c| = 0.
    bool unit_constant = false;

    Interval at(const Interval& logn) const {
        mpfr_prec_t p = logn.prec();
        Interval s(0L, p);
        long terms = 0;
        for (std::size_t k = 0; k < heights.size(); ++k) {
            if (!nonzero[k]) continue;
            s += heights[k] + Interval(static_cast<long>(k), p) * logn;
            ++terms;
        }
        if (terms > 1) s += log(Interval(terms, p));
        return s;
    }
};

inline CoeffHeightModel coeff_height_model(const RootTerm& t, const PrecisionBudget& budget, mpfr_prec_t p) {
    CoeffHeightModel m;
    long deg = t.coeff.degree();
    for (long k = 0; k <= deg; ++k) {
        AlgebraicNumber e = detail::coeff_number(t, static_cast<std::size_t>(k), budget);
        m.nonzero.push_back(!e.is_zero());
        m.heights.push_back(e.is_zero() ? Interval(0L, p) : e.height(budget).with_prec(p));
    }
    if (deg == 0) m.unit_constant = cmp_abs_one(detail::coeff_number(t, 0, budget), budget) == 0;
    return m;
}

struct CoeffTermBox {
    const RootTerm* term;
    CBox root;
    Interval log_ratio{64};  // log(|r| / |dominant root|)
};

/// Per-family data for the analytic chain, computed once.
struct BoundsContext {
    const FamilyInstance* fam = nullptr;
    ApproxConstants k;
    mpfr_prec_t prec = 320;
    unsigned long D = 1;
    Interval h_alpha{64}, h_beta{64};
    bool alpha_unit = false;
    CoeffHeightModel hA, hB;
    /// c_B - c_A is a unit constant (equal-modulus case only).
    bool cBA_unit = false;
    std::vector<CoeffTermBox> termsA, termsB;
    /// First n where the constants (C, eps, c5, c6) are valid.
    mpz_class n_start;
};

inline BoundsContext make_bounds_context(const FamilyInstance& fam, const ApproxConstants& k, mpfr_prec_t p = 320) {
    const auto& budget = fam.budget();
    BoundsContext c;
    c.fam = &fam;
    c.k = k;
    c.prec = p;
    bool equal = fam.case_tag() == CaseTag::EqualModulus;
    if (equal && !split_thue::equal(fam.alpha(), fam.beta(), budget))
        throw Error(ErrorKind::Unsupported, "equal moduli with alpha != beta are not covered by the closed forms");
    std::vector<AlgebraicNumber> gens{fam.alpha(), fam.beta()};
    for (const RootTerm* t : {&fam.A().dominant(), &fam.B().dominant()})
        for (long i = 0; i <= t->coeff.degree(); ++i) gens.push_back(detail::coeff_number(*t, static_cast<std::size_t>(i), budget));
    for (const auto& g : gens)
        if (!g.is_real()) throw Error(ErrorKind::Unsupported, "non-real dominant data");
    c.D = compositum_degree(gens, budget);
    c.h_alpha = fam.alpha().height(budget).with_prec(p);
    c.h_beta = fam.beta().height(budget).with_prec(p);
    c.alpha_unit = cmp_abs_one(fam.alpha(), budget) == 0;
    c.hA = coeff_height_model(fam.A().dominant(), budget, p);
    c.hB = coeff_height_model(fam.B().dominant(), budget, p);
    if (equal) {
        const auto& ta = fam.A().dominant();
        const auto& tb = fam.B().dominant();
        long deg = std::max(ta.coeff.degree(), tb.coeff.degree());
        long top = -1;
        for (long i = deg; i >= 0 && top < 0; --i) {
            auto d = field_arith(detail::coeff_number(tb, static_cast<std::size_t>(i), budget),
                                 detail::coeff_number(ta, static_cast<std::size_t>(i), budget), FieldOp::Sub, budget);
            if (!d.is_zero()) top = i;
            if (top == 0) c.cBA_unit = cmp_abs_one(d, budget) == 0;
        }
    }
    auto boxes = [&](const RecurrentSequence& s, const AlgebraicNumber& dom) {
        std::vector<CoeffTermBox> out;
        Interval ld = log(abs(dom.value(p, budget).with_prec(p)));
        for (std::size_t i = 0; i < s.root_count(); ++i) {
            const RootTerm& t = s.term(i);
            CoeffTermBox b{&t, t.root.value(p, budget).with_prec(p), Interval(p)};
            b.log_ratio = log(abs(b.root)) - ld;
            out.push_back(std::move(b));
        }
        return out;
    };
    c.termsA = boxes(fam.A(), fam.alpha());
    c.termsB = boxes(fam.B(), fam.beta());
    c.n_start = std::max(k.n_min, k.n_valid);
    return c;
}

namespace detail {

/// log(e^a - e^b), or nullopt when a > b is not certified.
inline std::optional<Interval> log_diff_exp(const Interval& a, const Interval& b) {
    if (less(b, a) != Tri::True) return std::nullopt;
    Interval r = exp(b - a);
    Interval one(1L, a.prec());
    if (less(r, one) != Tri::True) return std::nullopt;
    return a + log(one - r);
}

/// Upper and (if certified) lower bound of log|s_n| from the root terms.
inline std::pair<Interval, std::optional<Interval>> log_term_bounds(const std::vector<CoeffTermBox>& terms,
                                                                    const Interval& log_dom, const Interval& nn,
                                                                    const PrecisionBudget& budget, mpfr_prec_t p) {
    Interval dom(p), rest(0L, p), all(0L, p);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Interval c = abs(RecurrentSequence::coeff_box(*terms[i].term, terms[i].root, nn, p, budget));
        if (i == 0) {
            dom = c;
            all += c;
            continue;
        }
        // |c_r(n)| (|r| / |dom|)^n; log_ratio <= 0.
        Interval v = c * exp(nn * terms[i].log_ratio);
        rest += v;
        all += v;
    }
    Interval hi = nn * log_dom + log(all.upper());
    std::optional<Interval> lo;
    Interval diff = dom - rest;
    if (diff.sign() > 0) lo = nn * log_dom + log(diff.lower());
    return {hi, lo};
}

inline Interval exp_up(const Interval& logv) { return exp(logv).upper(); }

}  // namespace detail

/// Certified analytic data at one parameter n.
struct AnalyticPoint {
    mpz_class n;
    Interval nn{64}, logn{64};
    /// log of delta = C n^d2 eps^n.
    Interval log_delta{64};
    /// Enclosures of log|l1|, log|l1 - A|, log|l2|, log|l2 - A|, log|l3|, log|l3 - A|.
    std::array<Interval, 6> L{Interval(64), Interval(64), Interval(64), Interval(64), Interval(64), Interval(64)};
    Interval lcA{64}, lcB{64}, lcBA{64};
    Interval logA_hi{64}, logB_hi{64};
    std::optional<Interval> logA_lo, logB_lo, logBA_lo;
    /// log|l_i - l_j| for (1,2), (1,3), (2,3).
    std::array<Interval, 3> d{Interval(64), Interval(64), Interval(64)};
    /// log of the largest relative correction used for the root differences.
    Interval log_zmax{64};
    Interval R_lower{64}, R_upper{64};
    bool valid = false;
    std::string invalid_reason;
};

inline AnalyticPoint analytic_point(const BoundsContext& c, const mpz_class& n) {
    const auto& fam = *c.fam;
    const auto& k = c.k;
    mpfr_prec_t p = c.prec;
    AnalyticPoint a;
    a.n = n;
    a.nn = Interval(n, p);
    a.logn = log(a.nn);
    if (n < c.n_start) {
        a.invalid_reason = "below the validity threshold of the constants";
        return a;
    }
    Interval la = k.log_alpha.with_prec(p), lb = k.log_beta.with_prec(p);
    a.log_delta = log(k.C.with_prec(p)) + Interval(k.d2, p) * a.logn + a.nn * log(k.eps.with_prec(p));
    Interval delta = detail::exp_up(a.log_delta);
    Interval spread = Interval::hull(-delta, delta);
    auto cf = log_closed_forms(fam, k, a.nn, p);
    for (std::size_t i = 0; i < 6; ++i) a.L[i] = cf.value[i] + spread;
    a.lcA = cf.log_cA;
    a.lcB = cf.log_cB;
    a.lcBA = cf.log_cBA;
    const auto& budget = fam.budget();
    auto [ahi, alo] = detail::log_term_bounds(c.termsA, la, a.nn, budget, p);
    auto [bhi, blo] = detail::log_term_bounds(c.termsB, lb, a.nn, budget, p);
    a.logA_hi = ahi;
    a.logB_hi = bhi;
    a.logA_lo = alo;
    a.logB_lo = blo;
    Interval log3 = log(Interval(3L, p));
    if (!alo || !blo || less(log3, *alo) != Tri::True || less(log3, *blo) != Tri::True) {
        a.invalid_reason = "|A_n| or |B_n| not certified above 3";
        return a;
    }
    // |B - A| >= |B| - |A| in the strict case, and from c_B - c_A otherwise.
    if (fam.case_tag() == CaseTag::Strict) {
        a.logBA_lo = detail::log_diff_exp(*blo, ahi);
    } else if (!a.lcBA.is_point() || a.lcBA.sign() != 0) {
        // B - A = (c_B - c_A) beta^n + secondary terms of both sequences.
        Interval rest(0L, p);
        for (std::size_t i = 1; i < c.termsA.size(); ++i)
            rest += abs(RecurrentSequence::coeff_box(*c.termsA[i].term, c.termsA[i].root, a.nn, p, budget)) *
                    exp(a.nn * c.termsA[i].log_ratio);
        for (std::size_t i = 1; i < c.termsB.size(); ++i)
            rest += abs(RecurrentSequence::coeff_box(*c.termsB[i].term, c.termsB[i].root, a.nn, p, budget)) *
                    exp(a.nn * c.termsB[i].log_ratio);
        Interval dom = exp(a.lcBA);
        Interval diff = dom - rest;
        if (diff.sign() > 0) a.logBA_lo = a.nn * lb + log(diff.lower());
    }
    if (!a.logBA_lo || less(log3, *a.logBA_lo) != Tri::True) {
        a.invalid_reason = "|B_n - A_n| not certified above 3";
        return a;
    }
    // Signs: the dominant term decides them once the bounds above hold.
    bool odd = mpz_odd_p(n.get_mpz_t()) != 0;
    auto dom_sign = [&](const std::vector<CoeffTermBox>& terms) {
        int sc = RecurrentSequence::coeff_box(*terms[0].term, terms[0].root, a.nn, p, budget).re.sign();
        int sr = terms[0].root.re.sign();
        return (odd && sr < 0) ? -sc : sc;
    };
    int sA = dom_sign(c.termsA), sB = dom_sign(c.termsB), sBA = sB;
    if (fam.case_tag() == CaseTag::EqualModulus) {
        CBox ca = RecurrentSequence::coeff_box(*c.termsA[0].term, c.termsA[0].root, a.nn, p, budget);
        CBox cb = RecurrentSequence::coeff_box(*c.termsB[0].term, c.termsB[0].root, a.nn, p, budget);
        int sd = (cb - ca).re.sign();
        sBA = (odd && c.termsB[0].root.re.sign() < 0) ? -sd : sd;
    }
    // 1 <= A <= B - 2 or -1 >= A >= B + 3; |A|, |B - A| >= 3 are certified above.
    if (sA == 0 || sBA == 0 || sA != sBA) {
        a.invalid_reason = "sign condition on (A_n, B_n) not certified";
        return a;
    }
    (void)sB;
    if (fam.case_tag() == CaseTag::EqualModulus) {
        Interval zero(0L, p);
        bool differ = !a.lcA.overlaps(a.lcB);
        bool cond1 = less(zero, a.lcB) == Tri::True && less(zero, a.lcBA + a.lcB) == Tri::True;
        bool cond2 = less(a.lcB, zero) == Tri::True && less(a.lcBA, zero) == Tri::True;
        bool cond3 = c.hB.unit_constant && !a.lcBA.contains_zero();
        if (!differ || !(cond1 || cond2 || cond3)) {
            a.invalid_reason = "equal-modulus conditions not certified";
            return a;
        }
    }
    // Root differences from the logs: l1 - l2 = (l1 - A)(1 - (l2 - A)/(l1 - A)),
    // l1 - l3 = l1 (1 - l3/l1), l2 - l3 = l2 (1 - l3/l2); |log|1 - z|| <= 2|z| for |z| <= 1/2.
    Interval z12 = a.L[3] - a.L[1], z13 = a.L[4] - a.L[0], z23 = a.L[4] - a.L[2];
    a.log_zmax = max(max(z12, z13), z23).upper();
    Interval half_log = -log(Interval(2L, p));
    if (less(a.log_zmax, half_log) != Tri::True) {
        a.invalid_reason = "root ratios not certified below 1/2";
        return a;
    }
    auto corr = [&](const Interval& lz) {
        Interval e = Interval(2L, p) * detail::exp_up(lz);
        return Interval::hull(-e, e);
    };
    a.d[0] = a.L[1] + corr(z12.upper());
    a.d[1] = a.L[0] + corr(z13.upper());
    a.d[2] = a.L[2] + corr(z23.upper());
    Interval R = abs(a.L[0] * a.L[3] - a.L[2] * a.L[1]);
    a.R_lower = R.lower();
    a.R_upper = R.upper();
    if (a.R_lower.sign() <= 0) {
        a.invalid_reason = "regulator not certified positive";
        return a;
    }
    a.valid = true;
    return a;
}

inline Interval analytic_point_dlog(const AnalyticPoint& a, int i, int j) {
    int lo = std::min(i, j), hi = std::max(i, j);
    if (lo == 1 && hi == 2) return a.d[0];
    if (lo == 1 && hi == 3) return a.d[1];
    return a.d[2];
}

/// Bound for max(log|x|, log|y|) at n, with the regulator bounded from the closed forms.
inline Interval logy_upper(const AnalyticPoint& a) {
    if (!a.valid) throw Error(ErrorKind::Precondition, "analytic data invalid at n: " + a.invalid_reason);
    mpfr_prec_t p = a.nn.prec();
    // H <= max(3, |A| + |B|, |A||B|); log(H e) <= log(|A||B| + |A| + |B| + 3) + 1.
    Interval lab = a.logA_hi + a.logB_hi;
    Interval lsum = log_sum_exp(log_sum_exp(lab, a.logA_hi), log_sum_exp(a.logB_hi, log(Interval(3L, p))));
    return bugy_bound_raw(a.R_upper, lsum + Interval(1L, p)).upper();
}

/// Leading coefficient of the n^4 log n growth of logy_upper: 2 C(2,3) rho^2 with rho the n^2 coefficient of R.
inline Interval logy_upper_coefficient(const ApproxConstants& k, mpfr_prec_t p = 320) {
    Interval rho = regulator_limit(k).with_prec(p);
    return Interval(2L, p) * Interval(bugy_constant(2, 3), p) * sqr(rho);
}

inline Interval logy_upper(const BoundsContext& c, const mpz_class& n) { return logy_upper(analytic_point(c, n)); }

/// Bound for max(|b1|, |b2|) given a bound logY for max(log|x|, log|y|).
/// From b = M^-1 (log|x - l_k y|, log|x - l_l y|), each log bounded by
/// 2 (logY + log 2 + log+ max|l_i|), minimised over the pair (k, l).
inline Interval exponent_bound_B(const AnalyticPoint& a, const Interval& logY) {
    if (!a.valid) throw Error(ErrorKind::Precondition, "analytic data invalid at n: " + a.invalid_reason);
    mpfr_prec_t p = logY.prec();
    Interval zero(0L, p);
    Interval maxlog = max(max(a.L[0], a.L[2]), max(a.L[4], zero)).upper();
    Interval Lu = Interval(2L, p) * (logY + log(Interval(2L, p)) + maxlog);
    std::optional<Interval> best;
    const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (const auto& pr : pairs) {
        std::size_t kk = static_cast<std::size_t>(2 * (pr[0] - 1)), ll = static_cast<std::size_t>(2 * (pr[1] - 1));
        Interval row1 = abs(a.L[ll + 1]) + abs(a.L[kk + 1]);
        Interval row2 = abs(a.L[ll]) + abs(a.L[kk]);
        Interval v = (max(row1, row2) * Lu / a.R_lower).upper();
        best = best ? min(*best, v) : v;
    }
    return *best;
}

enum class Verdict { Contradiction, NoContradiction };

inline const char* to_string(Verdict v) { return v == Verdict::Contradiction ? "contradiction" : "no-contradiction"; }

/// One linear-form comparison at one n.
struct BoundReport {
    mpz_class n;
    int j = 0;
    Interval R_upper{64};
    Interval logy_upper{64};
    Interval exponent_bound{64};
    std::vector<std::pair<std::string, Interval>> heights;
    unsigned long t = 0, D = 0;
    Interval log_B{64};
    Interval baker_lower_exponent{64};
    Interval xi_upper_log{64};
    Verdict verdict = Verdict::NoContradiction;
};

/// Coefficient of a xi row as u0 + u1 b1 + u2 b2, with the n factor of the alpha/beta rows removed.
struct XiRowShape {
    LogArg arg;
    mpz_class u0, u1, u2;
    bool scales_with_n;
};

inline std::vector<XiRowShape> xi_row_shapes(int j, CaseTag tag) {
    auto f0 = xi_form(j, tag, 1, 0, 0), f1 = xi_form(j, tag, 1, 1, 0), f2 = xi_form(j, tag, 1, 0, 1);
    std::vector<XiRowShape> rows;
    for (const auto& t : f0.terms) {
        XiRowShape r{t.arg, t.coeff, f1.coeff(t.arg) - t.coeff, f2.coeff(t.arg) - t.coeff,
                     t.arg == LogArg::Alpha || t.arg == LogArg::Beta};
        rows.push_back(r);
    }
    // alpha = beta in the equal-modulus case: the two rows share one logarithm.
    if (tag == CaseTag::EqualModulus) {
        XiRowShape& ra = rows[0];
        const XiRowShape& rb = rows[1];
        ra.u0 += rb.u0;
        ra.u1 += rb.u1;
        ra.u2 += rb.u2;
        rows.erase(rows.begin() + 1);
    }
    return rows;
}

/// Upper bound for log|xi_j|: the Lambda bound plus the closed-form shift
/// (2|b1| + 2|b2| + 2) delta for the unit rows and 2 (delta + 2 zmax) for the
/// root-difference row.
inline Interval xi_upper_log(const BoundsContext& c, const AnalyticPoint& a, const Interval& Bb) {
    mpfr_prec_t p = c.prec;
    const auto& k = c.k;
    Interval la = k.log_alpha.with_prec(p), lb = k.log_beta.with_prec(p);
    Interval lam = log(Interval(4L, p)) - Interval(3L, p) * log(k.c5.with_prec(p)) - Interval(k.d1, p) * a.logn -
                   a.nn * (Interval(2L, p) * la + lb);
    Interval shift = log(Interval(4L, p) * Bb + Interval(4L, p)) + a.log_delta;
    Interval roots = log(Interval(4L, p)) + a.log_zmax;
    return log_sum_exp(log_sum_exp(lam, shift), roots).upper();
}

inline BoundReport xi_chain(const BoundsContext& c, const AnalyticPoint& a, int j) {
    mpfr_prec_t p = c.prec;
    BoundReport r;
    r.n = a.n;
    r.j = j;
    r.R_upper = a.R_upper;
    r.logy_upper = logy_upper(a);
    r.exponent_bound = exponent_bound_B(a, r.logy_upper);
    r.D = c.D;
    bool equal = c.fam->case_tag() == CaseTag::EqualModulus;
    Interval Bcoef(0L, p);
    std::vector<Interval> hs;
    Interval logn = a.logn;
    for (const auto& row : xi_row_shapes(j, c.fam->case_tag())) {
        Interval h(p), lg(p);
        std::string label = to_string(row.arg);
        switch (row.arg) {
            case LogArg::Alpha:
                if (c.alpha_unit) continue;
                h = c.h_alpha;
                lg = c.k.log_alpha.with_prec(p);
                if (equal) label = "log|alpha| = log|beta|";
                break;
            case LogArg::Beta:
                h = c.h_beta;
                lg = c.k.log_beta.with_prec(p);
                break;
            case LogArg::CA:
                if (c.hA.unit_constant) continue;
                h = c.hA.at(logn);
                lg = a.lcA;
                break;
            case LogArg::CB:
                if (c.hB.unit_constant) continue;
                h = c.hB.at(logn);
                lg = a.lcB;
                break;
            case LogArg::CBA:
                if (c.cBA_unit) continue;
                h = c.hA.at(logn) + c.hB.at(logn) + log(Interval(2L, p));
                lg = a.lcBA;
                break;
        }
        if (row.u0 == 0 && row.u1 == 0 && row.u2 == 0) continue;
        Interval coef = Interval(mpz_class(abs(row.u1) + abs(row.u2)), p) * r.exponent_bound +
                        Interval(mpz_class(abs(row.u0)), p);
        if (row.scales_with_n) coef = coef * a.nn;
        Bcoef = max(Bcoef, coef);
        Interval mh = modified_height(h.upper(), lg, c.D).upper();
        r.heights.emplace_back(label, mh);
        hs.push_back(mh);
    }
    r.t = hs.size();
    Interval B = max(Bcoef, e_const(p)).upper();
    r.log_B = log(B).upper();
    r.baker_lower_exponent = baker_lower_logB(hs, c.D, r.log_B).lower();
    r.xi_upper_log = xi_upper_log(c, a, r.exponent_bound);
    r.verdict = less(r.xi_upper_log, r.baker_lower_exponent) == Tri::True ? Verdict::Contradiction
                                                                          : Verdict::NoContradiction;
    return r;
}

/// The alternative-unit argument for type 1 when |alpha| < |beta|: with
/// x - l_i y = +-l_i^u1 (l_i - B)^u2, either u1 = 0, which forces log|y| below
/// log 2, or |R u1| >= R, which forces log|y| exponentially large.
struct UnitChainReport {
    mpz_class n;
    /// log of |Delta| bounds, Delta = log|l2 - B| - log|l3 - B|.
    Interval log_Delta_lo{64}, log_Delta_hi{64};
    /// log of the bounds on |t(n)| and on the error term.
    Interval log_T{64}, log_E{64};
    /// u1 != 0: log|y| >= (R - T - E) / |Delta|, stored as a log.
    Interval log_logy_lower{64};
    /// u1 = 0: log|y| <= (T + E) / |Delta|, as a log.
    Interval log_logy_upper_u1_zero{64};
    Interval logy_upper{64};
    bool u1_zero_excluded = false;
    bool u1_nonzero_excluded = false;
    Verdict verdict = Verdict::NoContradiction;
    std::string note;
};

inline UnitChainReport unit_chain(const BoundsContext& c, const AnalyticPoint& a) {
    mpfr_prec_t p = c.prec;
    UnitChainReport r;
    r.n = a.n;
    if (c.fam->case_tag() != CaseTag::Strict) throw Error(ErrorKind::Precondition, "needs |alpha| < |beta|");
    r.logy_upper = logy_upper(a);
    Interval two(2L, p), log2 = log(two);
    const Interval& lBlo = *a.logB_lo;
    const Interval& lBAlo = *a.logBA_lo;
    // log|l3 - B| = log|B| + O(2|l3|/|B|), log|l2 - B| = log|B - A| + O(2|l2 - A|/|B - A|).
    Interval log_e3 = (log2 + a.L[4] - lBlo).upper();
    Interval log_e2 = (log2 + a.L[3] - lBAlo).upper();
    Interval e3 = detail::exp_up(log_e3);
    Interval e2 = detail::exp_up(log_e2);
    Interval L3B = Interval::hull(lBlo, a.logB_hi) + Interval::hull(-e3, e3);
    Interval logBA_hi = log_sum_exp(a.logB_hi, a.logA_hi);
    Interval L2B = Interval::hull(lBAlo, logBA_hi) + Interval::hull(-e2, e2);
    // Delta = log|1 - A/B| + O(e2 + e3); 2q/3 <= |log|1 - A/B|| <= 2q for q = |A/B| <= 1/2.
    Interval logq_hi = (a.logA_hi - lBlo).upper();
    Interval logq_lo = (*a.logA_lo - a.logB_hi).lower();
    if (less(logq_hi, -log2) != Tri::True) {
        r.note = "|A/B| not certified below 1/2";
        return r;
    }
    Interval log_err = log_sum_exp(log_e2, log_e3);
    r.log_Delta_hi = log_sum_exp(log2 + logq_hi, log_err).upper();
    auto dlo = detail::log_diff_exp(log(Interval(mpq_class(2, 3), p)) + logq_lo, log_err);
    if (!dlo) {
        r.note = "Delta not certified away from 0";
        return r;
    }
    r.log_Delta_lo = dlo->lower();
    // t(n) = L2B e1 - L3B e2' with |e1| <= 2|l1 - B|/|l3 - B|, |e2'| <= 2|l1 - B|/|l2 - B|, |l1 - B| <= 1/|B|.
    Interval L2Blo = L2B.lower(), L3Blo = L3B.lower();
    Interval log_t1 = log2 - lBlo - L3Blo;
    Interval log_t2 = log2 - lBlo - L2Blo;
    r.log_T = log_sum_exp(log(abs(L2B)).upper() + log_t1, log(abs(L3B)).upper() + log_t2).upper();
    // E <= |L2B| |theta3| + |L3B| |theta2|, |theta_i| <= 1 / (|l1 - l2| |l1 - l3| |l1 - l_i|).
    Interval d12 = a.d[0].lower(), d13 = a.d[1].lower();
    Interval log_th3 = -(d12 + d13 + d13);
    Interval log_th2 = -(d12 + d13 + d12);
    r.log_E = log_sum_exp(log(abs(L2B)).upper() + log_th3, log(abs(L3B)).upper() + log_th2).upper();
    Interval log_TE = log_sum_exp(r.log_T, r.log_E).upper();
    r.log_logy_upper_u1_zero = (log_TE - r.log_Delta_lo).upper();
    r.u1_zero_excluded = less(r.log_logy_upper_u1_zero, log(log2)) == Tri::True;
    // (R - T - E) / |Delta|, evaluated in logs.
    auto num = detail::log_diff_exp(log(a.R_lower), log_TE);
    if (num) {
        r.log_logy_lower = (*num - r.log_Delta_hi).lower();
        r.u1_nonzero_excluded = less(log(r.logy_upper), r.log_logy_lower) == Tri::True;
    }
    r.verdict = (r.u1_zero_excluded && r.u1_nonzero_excluded) ? Verdict::Contradiction : Verdict::NoContradiction;
    return r;
}

/// Baker applied directly to Lambda, with heights linear in n. This gives only
/// a weak lower bound on max(log|x|, log|y|), roughly linear in n.
inline Interval direct_logY_lower(const BoundsContext& c, const AnalyticPoint& a) {
    mpfr_prec_t p = c.prec;
    Interval zero(0L, p), log2 = log(Interval(2L, p));
    Interval third = Interval(1L, p) / Interval(3L, p);
    Interval h_lam = third * (max(a.L[0], zero) + max(a.L[2], zero) + max(a.L[4], zero));
    Interval h_mu = third * (max(a.L[1], zero) + max(a.L[3], zero) + max(a.L[5], zero));
    const unsigned long D = 6;
    // Largest |log| among the three arguments over all types, for the height floor.
    Interval big = max(max(abs(a.L[0]) + abs(a.L[4]), abs(a.L[1]) + abs(a.L[3])), abs(a.d[0]) + abs(a.d[1]));
    std::vector<Interval> h{modified_height((Interval(2L, p) * h_lam).upper(), big, D),
                            modified_height((Interval(2L, p) * h_mu).upper(), big, D),
                            modified_height((Interval(4L, p) * h_lam + Interval(2L, p) * log2).upper(), big, D)};
    Interval K = Interval(baker_constant(3, D), p) * log(Interval(36L, p));
    Interval prod = h[0] * h[1] * h[2];
    Interval log_lambda_up = log(Interval(4L, p)) - Interval(3L, p) * log(c.k.c5.with_prec(p)) -
                             Interval(c.k.d1, p) * a.logn -
                             a.nn * (Interval(2L, p) * c.k.log_alpha.with_prec(p) + c.k.log_beta.with_prec(p));
    // log B_Lambda >= -log|Lambda| / (K h1 h2 h3).
    Interval logB = (-log_lambda_up / (K * prod)).lower();
    Interval maxlog = max(max(a.L[0], a.L[2]), max(a.L[4], zero)).upper();
    Interval rownorm(p);
    {
        std::optional<Interval> best;
        const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
        for (const auto& pr : pairs) {
            std::size_t kk = static_cast<std::size_t>(2 * (pr[0] - 1)), ll = static_cast<std::size_t>(2 * (pr[1] - 1));
            Interval v = max(abs(a.L[ll + 1]) + abs(a.L[kk + 1]), abs(a.L[ll]) + abs(a.L[kk])).upper();
            best = best ? min(*best, v) : v;
        }
        rownorm = *best;
    }
    return (a.R_lower * exp(logB) / (Interval(2L, p) * rownorm) - log2 - maxlog).lower();
}

/// All comparisons at one n.
struct NStep {
    mpz_class n;
    bool valid = false;
    std::string invalid_reason;
    std::vector<BoundReport> xi;
    std::optional<UnitChainReport> unit_chain;
    Interval direct_logY_lower{64};
    bool contradiction = false;
};

inline NStep evaluate_step(const BoundsContext& c, const mpz_class& n) {
    NStep s;
    s.n = n;
    AnalyticPoint a = analytic_point(c, n);
    s.valid = a.valid;
    s.invalid_reason = a.invalid_reason;
    if (!a.valid) return s;
    bool strict = c.fam->case_tag() == CaseTag::Strict;
    bool all = true;
    // Type 1 in the strict case needs both the xi chain and the alternative-unit chain.
    for (int j = 1; j <= 3; ++j) {
        s.xi.push_back(xi_chain(c, a, j));
        all = all && s.xi.back().verdict == Verdict::Contradiction;
    }
    if (strict) {
        s.unit_chain = unit_chain(c, a);
        all = all && s.unit_chain->verdict == Verdict::Contradiction;
    }
    s.direct_logY_lower = direct_logY_lower(c, a);
    s.contradiction = all;
    return s;
}

struct N0Options {
    mpz_class n_cap = 10000000;
    unsigned long window = 10;
};

struct N0Result {
    std::optional<mpz_class> n0;
    /// Largest probed n below n0 where the comparison was computable, and its step.
    std::optional<NStep> below;
    std::vector<NStep> window;
    std::vector<NStep> trace;
    std::string failure;
};

/// Smallest n with a contradiction in every branch: galloping over powers of
/// two, binary search, then a sanity window n0 .. n0 + window.
inline N0Result compute_n0(const BoundsContext& c, const N0Options& opt = {}) {
    N0Result res;
    auto step = [&](const mpz_class& n) {
        NStep s = evaluate_step(c, n);
        res.trace.push_back(s);
        return s;
    };
    mpz_class start = std::max(c.n_start, mpz_class(1));
    for (int restart = 0; restart < 64; ++restart) {
        // Galloping.
        mpz_class lo = start - 1, hi = 0;
        std::optional<NStep> lo_step;
        mpz_class probe = 1;
        while (probe < start) probe *= 2;
        probe = std::max(probe, start);
        bool found = false;
        while (probe <= opt.n_cap) {
            NStep s = step(probe);
            if (s.contradiction) {
                hi = probe;
                found = true;
                break;
            }
            lo = probe;
            if (s.valid) lo_step = s;
            probe *= 2;
        }
        if (!found) {
            if (lo < opt.n_cap) {
                NStep s = step(opt.n_cap);
                if (s.contradiction) {
                    hi = opt.n_cap;
                    found = true;
                }
            }
            if (!found) {
                res.failure = "no crossing found up to n_cap = " + opt.n_cap.get_str();
                return res;
            }
        }
        // Binary search on (lo, hi].
        while (hi - lo > 1) {
            mpz_class mid = (lo + hi) / 2;
            NStep s = step(mid);
            if (s.contradiction) {
                hi = mid;
            } else {
                lo = mid;
                if (s.valid) lo_step = s;
            }
        }
        res.window.clear();
        std::optional<mpz_class> bad;
        for (unsigned long w = 0; w <= opt.window; ++w) {
            NStep s = w == 0 ? evaluate_step(c, hi) : step(hi + w);
            res.window.push_back(s);
            if (!s.contradiction) {
                bad = hi + w;
                break;
            }
        }
        if (!bad) {
            res.n0 = hi;
            if (lo >= c.n_start) {
                NStep s = evaluate_step(c, lo);
                if (s.valid) lo_step = s;
            }
            res.below = lo_step;
            return res;
        }
        start = *bad + 1;
    }
    res.failure = "contradiction window kept failing";
    return res;
}

}  // namespace split_thue
