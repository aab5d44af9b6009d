#pragma once

// The cubic f_n(X) = X(X - A_n)(X - B_n) - 1, its three real roots, and the
// approximation bounds for the roots, their logarithms and their differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "split_thue/recurrence.hpp"

namespace split_thue {

inline ZPoly build_fn(const mpz_class& a, const mpz_class& b) {
    return ZPoly{mpz_class(-1), a * b, -(a + b), mpz_class(1)};
}

/// X(X - A)(X - B) + 1, the other sign of the Thue equation.
inline ZPoly build_gn(const mpz_class& a, const mpz_class& b) {
    return ZPoly{mpz_class(1), a * b, -(a + b), mpz_class(1)};
}

/// g_n(X) = -f'_n(-X), where f'_n is f_n with (A, B) replaced by (-A, -B).
inline ZPoly gn_by_reflection(const mpz_class& a, const mpz_class& b) {
    return -build_fn(-a, -b).reflect();
}

struct IrreducibilityCheck {
    bool irreducible = true;
    /// 1 or -1 when that value is a rational root.
    int rational_root = 0;
    std::string witness;
};

/// A monic cubic with constant term -1 is reducible iff 1 or -1 is a root.
inline IrreducibilityCheck check_irreducible(const ZPoly& f) {
    if (f.degree() != 3 || f.lc() != 1 || f[0] != -1)
        throw Error(ErrorKind::Precondition, "expected a monic cubic with constant term -1");
    IrreducibilityCheck r;
    if (f.eval(mpz_class(1)) == 0) {
        r.irreducible = false;
        r.rational_root = 1;
        r.witness = "f(1) = 0, i.e. A_n B_n = A_n + B_n";
    } else if (f.eval(mpz_class(-1)) == 0) {
        r.irreducible = false;
        r.rational_root = -1;
        r.witness = "f(-1) = 0, i.e. A_n B_n + A_n + B_n = -2";
    }
    return r;
}

struct CubicRootSet {
    unsigned long n = 0;
    mpz_class A, B;
    /// lambda[0] near B, lambda[1] near A, lambda[2] near 1/(AB).
    std::array<Interval, 3> lambda{Interval(64), Interval(64), Interval(64)};
    /// lambda_i minus its anchor (B, A, 1/(AB)).
    std::array<Interval, 3> anchor_residual{Interval(64), Interval(64), Interval(64)};
    mpfr_prec_t prec = 64;
};

namespace detail {

inline long bitlen(const mpz_class& z) { return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

inline int sign_fn_q(const mpz_class& a, const mpz_class& b, const mpq_class& x) {
    return sgn(x * (x - a) * (x - b) - 1);
}

/// Sign of f(m / 2^k) using integers only.
inline int sign_fn_dyadic(const mpz_class& a, const mpz_class& b, const mpz_class& m, unsigned long k) {
    mpz_class s = 1;
    s <<= k;
    mpz_class v = m * (m - a * s) * (m - b * s) - s * s * s;
    return sgn(v);
}

/// Root of f in the rational window (lo, hi) with f(lo), f(hi) of opposite
/// sign, narrowed to an interval of width 2^-k.
inline Interval bisect_root(const mpz_class& a, const mpz_class& b, const mpq_class& lo, const mpq_class& hi,
                            unsigned long k, mpfr_prec_t prec) {
    int slo = sign_fn_q(a, b, lo);
    mpz_class scale = 1;
    scale <<= k;
    mpz_class mlo, mhi;
    mpq_class t = lo * scale;
    mpz_fdiv_q(mlo.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    t = hi * scale;
    mpz_cdiv_q(mhi.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    if (sign_fn_dyadic(a, b, mlo, k) != slo || sign_fn_dyadic(a, b, mhi, k) != -slo)
        throw Error(ErrorKind::AnchorSignFailure, "dyadic widening crossed a root");
    while (mhi - mlo > 1) {
        mpz_class mid = (mlo + mhi) >> 1;
        int s = sign_fn_dyadic(a, b, mid, k);
        if (s == 0) {
            mlo = mid;
            mhi = mid;
            break;
        }
        if (s == slo)
            mlo = mid;
        else
            mhi = mid;
    }
    mpq_class qlo(mlo, scale), qhi(mhi, scale);
    qlo.canonicalize();
    qhi.canonicalize();
    return Interval(qlo, qhi, prec);
}

/// Picks the half of [c - r, c + r] around the anchor c where f changes sign.
inline std::pair<mpq_class, mpq_class> anchor_window(const mpz_class& a, const mpz_class& b, const mpq_class& c,
                                                     const mpq_class& r, const char* label) {
    mpq_class lo = c - r, hi = c + r;
    int sl = sign_fn_q(a, b, lo), sc = sign_fn_q(a, b, c), sh = sign_fn_q(a, b, hi);
    if (sc == 0) return {c, c};
    if (sl != 0 && sl != sc && (sh == sc || sh == 0)) return {lo, c};
    if (sh != 0 && sh != sc && (sl == sc || sl == 0)) return {c, hi};
    throw Error(ErrorKind::AnchorSignFailure, std::string("no single sign change around the ") + label + " anchor");
}

}  // namespace detail

/// Working precision and target width exponent for the roots at (A, B).
inline unsigned long root_target_bits(const mpz_class& a, const mpz_class& b, long bits) {
    return static_cast<unsigned long>(bits + 2 * (detail::bitlen(a) + detail::bitlen(b)) + 8);
}

/// Certified roots of f_n labelled by the approximation anchors.
inline CubicRootSet isolate_cubic_roots(const mpz_class& a, const mpz_class& b, unsigned long n, long bits) {
    if (a == 0 || b == 0) throw Error(ErrorKind::AnchorSignFailure, "A_n or B_n is zero");
    CubicRootSet rs;
    rs.n = n;
    rs.A = a;
    rs.B = b;
    unsigned long k = root_target_bits(a, b, bits);
    rs.prec = static_cast<mpfr_prec_t>(k + static_cast<unsigned long>(detail::bitlen(a) + detail::bitlen(b)) + 64);
    mpz_class ab = a * b;
    mpq_class inv_b(1, b), inv_a(1, a), inv_ab(1, ab);
    inv_b.canonicalize();
    inv_a.canonicalize();
    inv_ab.canonicalize();
    mpq_class anchors[3] = {mpq_class(b), mpq_class(a), inv_ab};
    mpq_class radii[3] = {abs(inv_b), abs(inv_a), inv_ab * inv_ab};
    const char* labels[3] = {"B_n", "A_n", "1/(A_n B_n)"};
    std::array<std::pair<mpq_class, mpq_class>, 3> win;
    for (int i = 0; i < 3; ++i) win[i] = detail::anchor_window(a, b, anchors[i], radii[i], labels[i]);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!(win[i].second <= win[j].first || win[j].second <= win[i].first))
                throw Error(ErrorKind::AnchorSignFailure, "anchor windows overlap");
    for (int i = 0; i < 3; ++i) {
        if (win[i].first == win[i].second)
            rs.lambda[i] = Interval(win[i].first, rs.prec);
        else
            rs.lambda[i] = detail::bisect_root(a, b, win[i].first, win[i].second, k, rs.prec);
        rs.anchor_residual[i] = rs.lambda[i] - Interval(anchors[i], rs.prec);
    }
    return rs;
}

inline CubicRootSet isolate_cubic_roots(const FamilyInstance& fam, unsigned long n, long bits) {
    return isolate_cubic_roots(fam.An(n), fam.Bn(n), n, bits);
}

struct BoundCheck {
    std::string name;
    Interval value{64};
    Interval bound{64};
    /// True when value <= bound is certified, False when value > bound is.
    Tri holds = Tri::Unknown;
};

inline BoundCheck make_check(std::string name, Interval value, Interval bound) {
    BoundCheck c;
    c.name = std::move(name);
    c.holds = less_equal(value, bound);
    c.value = std::move(value);
    c.bound = std::move(bound);
    return c;
}

inline bool all_hold(const std::vector<BoundCheck>& v) {
    return std::all_of(v.begin(), v.end(), [](const BoundCheck& c) { return c.holds == Tri::True; });
}

/// The four root approximations, each with its own bound.
inline std::vector<BoundCheck> verify_root_approx(const CubicRootSet& rs) {
    mpfr_prec_t p = rs.prec;
    Interval A(rs.A, p), B(rs.B, p), one(1L, p);
    Interval amb = A - B;
    std::vector<BoundCheck> out;
    out.push_back(make_check("|lambda1 - B|", abs(rs.lambda[0] - B), one / abs(B)));
    out.push_back(make_check("|lambda2 - A|", abs(rs.lambda[1] - A), one / abs(A)));
    out.push_back(make_check("|lambda2 - A - 1/(A(A-B))|", abs(rs.lambda[1] - A - one / (A * amb)),
                             one / sqr(A * amb)));
    out.push_back(make_check("|lambda3 - 1/(AB)|", abs(rs.lambda[2] - one / (A * B)), one / sqr(A * B)));
    return out;
}

inline void require(const std::vector<BoundCheck>& checks, unsigned long n) {
    for (const auto& c : checks)
        if (c.holds != Tri::True)
            throw Error(ErrorKind::BoundViolated, c.name + " fails at n = " + std::to_string(n));
}

/// Bounds for a coefficient polynomial p(n): |p(n)| <= norm1 * n^deg and,
/// for n >= n_min, |p(n)| >= low * n^deg.
struct CoeffPolyBounds {
    long degree = -1;
    Interval norm1{64};
    Interval top_abs{64};
    Interval lower_sum{64};

    Interval low(unsigned long n_min) const {
        mpfr_prec_t p = norm1.prec();
        return top_abs.lower() - lower_sum.upper() / Interval(mpz_class(n_min), p);
    }
};

namespace detail {

inline std::vector<CBox> coeff_boxes(const RootTerm& t, mpfr_prec_t p, const PrecisionBudget& budget) {
    std::vector<CBox> out;
    if (!t.coeff.rep.empty()) {
        CBox r = t.root.value(p, budget).with_prec(p);
        for (const auto& e : t.coeff.rep) out.push_back(e.eval(r));
    } else {
        for (const auto& c : t.coeff.coeffs) out.push_back(c.value(p, budget).with_prec(p));
    }
    return out;
}

inline AlgebraicNumber coeff_number(const RootTerm& t, std::size_t k, const PrecisionBudget& budget) {
    if (!t.coeff.rep.empty()) {
        if (k >= t.coeff.rep.size()) return AlgebraicNumber();
        return AlgebraicNumber::poly_in(t.coeff.rep[k], t.root, budget);
    }
    if (k >= t.coeff.coeffs.size()) return AlgebraicNumber();
    return t.coeff.coeffs[k];
}

inline CoeffPolyBounds bounds_from_boxes(const std::vector<CBox>& c, long degree, mpfr_prec_t p) {
    CoeffPolyBounds b;
    b.degree = degree;
    b.norm1 = Interval(0L, p);
    b.lower_sum = Interval(0L, p);
    b.top_abs = Interval(0L, p);
    for (long k = 0; k <= degree; ++k) {
        Interval m = abs(c[static_cast<std::size_t>(k)]);
        b.norm1 += m;
        if (k < degree) b.lower_sum += m;
    }
    if (degree >= 0) b.top_abs = abs(c[static_cast<std::size_t>(degree)]);
    return b;
}

}  // namespace detail

inline CoeffPolyBounds coeff_bounds(const RootTerm& t, mpfr_prec_t p, const PrecisionBudget& budget) {
    return detail::bounds_from_boxes(detail::coeff_boxes(t, p, budget), t.coeff.degree(), p);
}

/// Bounds for c_B - c_A, with the exact degree of the difference.
inline CoeffPolyBounds coeff_difference_bounds(const RootTerm& tb, const RootTerm& ta, mpfr_prec_t p,
                                               const PrecisionBudget& budget) {
    auto cb = detail::coeff_boxes(tb, p, budget);
    auto ca = detail::coeff_boxes(ta, p, budget);
    std::size_t len = std::max(cb.size(), ca.size());
    std::vector<CBox> d;
    for (std::size_t k = 0; k < len; ++k) {
        CBox x = k < cb.size() ? cb[k] : CBox(Interval(0L, p));
        CBox y = k < ca.size() ? ca[k] : CBox(Interval(0L, p));
        d.push_back(x - y);
    }
    long deg = static_cast<long>(len) - 1;
    while (deg >= 0) {
        auto k = static_cast<std::size_t>(deg);
        AlgebraicNumber diff = field_arith(detail::coeff_number(tb, k, budget), detail::coeff_number(ta, k, budget),
                                           FieldOp::Sub, budget);
        if (!diff.is_zero()) break;
        --deg;
    }
    if (deg < 0) throw Error(ErrorKind::HypothesisViolated, "c_B - c_A vanishes identically");
    return detail::bounds_from_boxes(d, deg, p);
}

struct ApproxConstants {
    Interval C{64};
    Interval eps{64};
    /// True when the ratio set was empty and eps = 1/|beta| was used.
    bool eps_fallback = false;
    Interval c1{64}, c2{64}, c3{64}, c4{64};
    unsigned long n_min = 2;
    /// c5, c6 hold for n >= n_valid (above the root-approximation threshold).
    Interval c5{64}, c6{64};
    unsigned long n_valid = 2;
    Interval log_alpha{64}, log_beta{64};
    std::size_t m_A = 0, m_B = 0;
    long d1 = 0, d2 = 0;
};

namespace detail {

/// max over the ratio bounds norm1(p)/low(q) * n^{deg p - deg q}, valid for n >= n_min.
inline Interval ratio_bound(const std::vector<CoeffPolyBounds>& nums, const CoeffPolyBounds& den,
                            unsigned long n_min, long d2, mpfr_prec_t p) {
    Interval best(0L, p);
    Interval low = den.low(n_min);
    if (nums.empty()) return best;
    if (low.sign() <= 0) return Interval(-1L, p);
    for (const auto& num : nums) {
        if (num.degree < 0) continue;
        if (num.degree - den.degree > d2)
            throw Error(ErrorKind::InconsistentModel, "coefficient ratio grows faster than n^d2");
        best = max(best, (num.norm1 / low).upper());
    }
    return best;
}

/// sup over integers n >= n0 of n^d * eps^n.
inline Interval sup_poly_exp(long d, const Interval& eps, unsigned long n0) {
    mpfr_prec_t p = eps.prec();
    auto at = [&](unsigned long n) {
        Interval nn(mpz_class(n), p);
        return (pow(nn, d) * exp(Interval(mpz_class(n), p) * log(eps))).upper();
    };
    if (d <= 0) return at(n0);
    // n^d eps^n decreases for n >= d / log(1/eps).
    Interval turn = Interval(d, p) / -log(eps);
    double t = turn.hi_double();
    unsigned long nt = static_cast<unsigned long>(std::ceil(t));
    if (n0 >= nt) return at(n0);
    Interval best = at(n0);
    for (unsigned long n = std::max<unsigned long>(n0, nt > 1 ? nt - 1 : 1); n <= nt; ++n) best = max(best, at(n));
    return best;
}

}  // namespace detail

/// Constants of the log approximation (C, eps) and of the root differences (c5, c6).
inline ApproxConstants compute_constants(const FamilyInstance& fam, mpfr_prec_t p = 256) {
    const auto& budget = fam.budget();
    ApproxConstants k;
    const auto& A = fam.A();
    const auto& B = fam.B();
    bool equal = fam.case_tag() == CaseTag::EqualModulus;
    k.m_A = A.root_count() - 1;
    k.m_B = B.root_count() - 1;
    k.d1 = fam.d1();
    k.d2 = fam.d2();
    CBox alpha = fam.alpha().value(p, budget).with_prec(p);
    CBox beta = fam.beta().value(p, budget).with_prec(p);
    Interval aa = abs(alpha), ab = abs(beta);
    k.log_alpha = log(aa);
    k.log_beta = log(ab);

    // Ratio set for eps.
    std::optional<Interval> eps;
    auto bump = [&](const Interval& v) { eps = eps ? max(*eps, v) : v; };
    for (auto* t : B.secondary()) bump(abs(t->root.value(p, budget).with_prec(p)) / ab);
    for (auto* t : A.secondary()) {
        Interval ai = abs(t->root.value(p, budget).with_prec(p));
        bump(ai / ab);
        bump(ai / aa);
    }
    if (!equal) bump(aa / ab);
    for (auto* t : A.secondary())
        if (cmp_abs(t->root, fam.alpha(), budget) == 0)
            throw Error(ErrorKind::EqualModulusRatioDegenerate, "a secondary root of A has modulus |alpha|");
    for (auto* t : B.secondary())
        if (cmp_abs(t->root, fam.beta(), budget) == 0)
            throw Error(ErrorKind::EqualModulusRatioDegenerate, "a secondary root of B has modulus |beta|");
    if (!eps) {
        eps = Interval(1L, p) / ab;
        k.eps_fallback = true;
    }
    k.eps = eps->upper();
    if (less(k.eps, Interval(1L, p)) != Tri::True)
        throw Error(ErrorKind::EqualModulusRatioDegenerate, "eps is not certified below 1");

    CoeffPolyBounds bB = coeff_bounds(B.dominant(), p, budget);
    CoeffPolyBounds bA = coeff_bounds(A.dominant(), p, budget);
    std::vector<CoeffPolyBounds> bBi, bAi;
    for (auto* t : B.secondary()) bBi.push_back(coeff_bounds(*t, p, budget));
    for (auto* t : A.secondary()) bAi.push_back(coeff_bounds(*t, p, budget));
    std::optional<CoeffPolyBounds> bD;
    if (equal) bD = coeff_difference_bounds(B.dominant(), A.dominant(), p, budget);

    std::vector<CoeffPolyBounds> over_b = bBi;
    over_b.insert(over_b.end(), bAi.begin(), bAi.end());
    over_b.push_back(bA);

    for (unsigned long n_min = 2;; n_min *= 2) {
        if (n_min > (1ul << 40)) throw Error(ErrorKind::Unsupported, "coefficient bounds never become positive");
        Interval c1 = detail::ratio_bound(bBi, bB, n_min, k.d2, p);
        Interval c2 = detail::ratio_bound(bAi, bA, n_min, k.d2, p);
        Interval c3 = detail::ratio_bound(over_b, bB, n_min, k.d2, p);
        Interval c4 = equal ? detail::ratio_bound(over_b, *bD, n_min, k.d2, p) : Interval(0L, p);
        if (c1.sign() < 0 || c2.sign() < 0 || c3.sign() < 0 || c4.sign() < 0) continue;
        k.c1 = c1;
        k.c2 = c2;
        k.c3 = c3;
        k.c4 = c4;
        k.n_min = n_min;
        break;
    }
    Interval cmax = max(max(k.c1, k.c2), max(k.c3, k.c4));
    if (k.eps_fallback) cmax = max(cmax, Interval(1L, p));
    k.C = (Interval(5L, p) * cmax * Interval(static_cast<long>(k.m_A + k.m_B + 1), p)).upper();

    // Lower and upper bounds for the three root differences.
    Interval K12 = equal ? k.c4 * Interval(static_cast<long>(k.m_A + k.m_B), p)
                         : k.c3 * Interval(static_cast<long>(k.m_A + k.m_B + 1), p);
    Interval K1 = k.c1 * Interval(static_cast<long>(k.m_B), p);
    Interval K2 = k.c2 * Interval(static_cast<long>(k.m_A), p);
    const CoeffPolyBounds& b12 = equal ? *bD : bB;
    for (unsigned long nv = std::max<unsigned long>(k.n_min, 2);; nv *= 2) {
        if (nv > (1ul << 40)) throw Error(ErrorKind::Unsupported, "no positive c5 found");
        Interval G = detail::sup_poly_exp(k.d2, k.eps, nv);
        Interval one(1L, p);
        Interval ib = exp(-Interval(mpz_class(nv), p) * k.log_beta);
        Interval ia = exp(-Interval(mpz_class(nv), p) * k.log_alpha);
        Interval l12 = b12.low(nv) * (one - K12 * G) - Interval(2L, p) * ib;
        Interval l13 = bB.low(nv) * (one - K1 * G) - Interval(3L, p) * ib;
        Interval l23 = bA.low(nv) * (one - K2 * G) - Interval(3L, p) * ia;
        Interval u12 = b12.norm1 * (one + K12 * G) + Interval(2L, p) * ib;
        Interval u13 = bB.norm1 * (one + K1 * G) + Interval(3L, p) * ib;
        Interval u23 = bA.norm1 * (one + K2 * G) + Interval(3L, p) * ia;
        Interval c5 = min(min(l12, l13), l23).lower();
        if (c5.sign() <= 0) continue;
        k.c5 = c5;
        k.c6 = max(max(u12, u13), u23).upper();
        k.n_valid = nv;
        break;
    }
    return k;
}

/// The closed forms of the six logarithms at n.
struct LogClosedForms {
    std::array<Interval, 6> value{Interval(64), Interval(64), Interval(64),
                                  Interval(64), Interval(64), Interval(64)};
    Interval log_cA{64}, log_cB{64}, log_cBA{64};
};

inline const std::array<const char*, 6>& log_quantity_names() {
    static const std::array<const char*, 6> names = {"log|lambda1|",     "log|lambda1 - A|", "log|lambda2|",
                                                     "log|lambda2 - A|", "log|lambda3|",     "log|lambda3 - A|"};
    return names;
}

/// log|c_A(n)|, log|c_B(n)| and, in the equal-modulus case, log|c_B(n) - c_A(n)|.
/// n is an enclosure so that parameters beyond machine integers work too.
inline void coefficient_logs(const FamilyInstance& fam, const Interval& nn, mpfr_prec_t p, Interval& lca,
                             Interval& lcb, Interval& lcba) {
    const auto& budget = fam.budget();
    auto cval = [&](const RecurrentSequence& s) {
        CBox r = s.dominant().root.value(p, budget).with_prec(p);
        return RecurrentSequence::coeff_box(s.dominant(), r, nn, p, budget);
    };
    CBox ca = cval(fam.A()), cb = cval(fam.B());
    lca = log(abs(ca));
    lcb = log(abs(cb));
    CBox d = cb - ca;
    lcba = d.contains_zero() ? Interval(p) : log(abs(d));
}

inline void coefficient_logs(const FamilyInstance& fam, unsigned long n, mpfr_prec_t p, Interval& lca, Interval& lcb,
                             Interval& lcba) {
    coefficient_logs(fam, Interval(mpz_class(n), p), p, lca, lcb, lcba);
}

inline LogClosedForms log_closed_forms(const FamilyInstance& fam, const ApproxConstants& k, const Interval& nn,
                                       mpfr_prec_t p) {
    LogClosedForms f;
    coefficient_logs(fam, nn, p, f.log_cA, f.log_cB, f.log_cBA);
    Interval la = k.log_alpha.with_prec(p), lb = k.log_beta.with_prec(p);
    bool equal = fam.case_tag() == CaseTag::EqualModulus;
    Interval second = equal ? f.log_cBA : f.log_cB;
    f.value[0] = nn * lb + f.log_cB;
    f.value[1] = nn * lb + second;
    f.value[2] = nn * la + f.log_cA;
    f.value[3] = -nn * (la + lb) - f.log_cA - second;
    f.value[4] = -nn * (la + lb) - f.log_cA - f.log_cB;
    f.value[5] = nn * la + f.log_cA;
    return f;
}

inline LogClosedForms log_closed_forms(const FamilyInstance& fam, const ApproxConstants& k, unsigned long n,
                                       mpfr_prec_t p) {
    return log_closed_forms(fam, k, Interval(mpz_class(n), p), p);
}

/// log|lambda_i| and log|lambda_i - A_n| for i = 1, 2, 3.
inline std::array<Interval, 6> root_logs(const CubicRootSet& rs) {
    Interval A(rs.A, rs.prec);
    return {log(abs(rs.lambda[0])), log(abs(rs.lambda[0] - A)), log(abs(rs.lambda[1])),
            log(abs(rs.lambda[1] - A)), log(abs(rs.lambda[2])), log(abs(rs.lambda[2] - A))};
}

struct LogApproxReport {
    unsigned long n = 0;
    std::vector<BoundCheck> checks;
    /// residual / (n^d2 eps^n), to be compared with C.
    std::array<Interval, 6> scaled{Interval(64), Interval(64), Interval(64),
                                   Interval(64), Interval(64), Interval(64)};
    bool ok() const { return all_hold(checks); }
};

inline LogApproxReport verify_log_approx(const CubicRootSet& rs, const FamilyInstance& fam, const ApproxConstants& k) {
    mpfr_prec_t p = 256;
    LogApproxReport r;
    r.n = rs.n;
    auto logs = root_logs(rs);
    auto closed = log_closed_forms(fam, k, rs.n, p);
    Interval nn(mpz_class(rs.n), p);
    Interval scale = pow(nn, k.d2) * exp(nn * log(k.eps.with_prec(p)));
    Interval bound = k.C.with_prec(p) * scale;
    for (int i = 0; i < 6; ++i) {
        Interval res = abs(logs[static_cast<std::size_t>(i)].with_prec(p) - closed.value[static_cast<std::size_t>(i)]);
        r.checks.push_back(make_check(log_quantity_names()[static_cast<std::size_t>(i)], res, bound));
        r.scaled[static_cast<std::size_t>(i)] = res / scale;
    }
    return r;
}

/// Lower and upper bounds for |lambda_i - lambda_j|.
inline std::vector<BoundCheck> verify_root_diff(const CubicRootSet& rs, const FamilyInstance& fam,
                                                const ApproxConstants& k) {
    mpfr_prec_t p = rs.prec;
    Interval nn(mpz_class(rs.n), p);
    Interval bn = exp(nn * k.log_beta.with_prec(p));
    Interval an = exp(nn * k.log_alpha.with_prec(p));
    Interval nd1 = pow(nn, fam.d1()), nd2 = pow(nn, fam.d2());
    Interval c5 = k.c5.with_prec(p), c6 = k.c6.with_prec(p);
    Interval d12 = abs(rs.lambda[0] - rs.lambda[1]);
    Interval d13 = abs(rs.lambda[0] - rs.lambda[2]);
    Interval d23 = abs(rs.lambda[1] - rs.lambda[2]);
    std::vector<BoundCheck> out;
    out.push_back(make_check("c5 |beta|^n <= |lambda1 - lambda2|", c5 * bn, d12));
    out.push_back(make_check("|lambda1 - lambda2| <= c6 n^d2 |beta|^n", d12, c6 * nd2 * bn));
    out.push_back(make_check("c5 n^d1 |beta|^n <= |lambda1 - lambda3|", c5 * nd1 * bn, d13));
    out.push_back(make_check("|lambda1 - lambda3| <= c6 n^d2 |beta|^n", d13, c6 * nd2 * bn));
    out.push_back(make_check("c5 n^d1 |alpha|^n <= |lambda2 - lambda3|", c5 * nd1 * an, d23));
    out.push_back(make_check("|lambda2 - lambda3| <= c6 n^d2 |alpha|^n", d23, c6 * nd2 * an));
    return out;
}

}  // namespace split_thue
