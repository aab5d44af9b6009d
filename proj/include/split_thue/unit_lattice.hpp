#pragma once

// Units of Z[lambda]: the regulator, decomposition of x - lambda*y in the
// basis {lambda, lambda - A_n}, Siegel's identity, and the linear forms xi_j.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "split_thue/cubic_family.hpp"

namespace split_thue {

/// |det [[log|l_i|, log|l_i - A|], [log|l_i'|, log|l_i' - A|]]| with 1-based indices.
inline Interval regulator(const CubicRootSet& rs, int i, int ip) {
    if (i == ip || i < 1 || i > 3 || ip < 1 || ip > 3) throw Error(ErrorKind::Precondition, "need two distinct root indices");
    auto logs = root_logs(rs);
    const Interval& a = logs[static_cast<std::size_t>(2 * (i - 1))];
    const Interval& b = logs[static_cast<std::size_t>(2 * (i - 1) + 1)];
    const Interval& c = logs[static_cast<std::size_t>(2 * (ip - 1))];
    const Interval& d = logs[static_cast<std::size_t>(2 * (ip - 1) + 1)];
    return abs(a * d - b * c);
}

/// log|beta| (2 log|alpha| + log|beta|), the limit of R(n) / n^2.
inline Interval regulator_limit(const ApproxConstants& k) {
    return k.log_beta * (Interval(2L, k.log_alpha.prec()) * k.log_alpha + k.log_beta);
}

struct RegulatorPoint {
    unsigned long n = 0;
    Interval R{64};
    Interval R_over_n2{64};
    /// max |R(1,2) - R(i,i')| over the other pairs, and the summed enclosure widths.
    double pair_spread = 0;
    double pair_tolerance = 0;
};

struct RegulatorGrowthReport {
    Interval limit{64};
    std::vector<RegulatorPoint> points;
    double relative_deviation_at_top = 0;
    bool pairs_consistent = true;
};

inline RegulatorGrowthReport verify_regulator_growth(const FamilyInstance& fam, const ApproxConstants& k,
                                                     unsigned long n_lo, unsigned long n_hi, unsigned long step,
                                                     long bits) {
    RegulatorGrowthReport rep;
    rep.limit = regulator_limit(k);
    for (unsigned long n = n_lo; n <= n_hi; n += step) {
        auto rs = isolate_cubic_roots(fam, n, bits);
        RegulatorPoint pt;
        pt.n = n;
        pt.R = regulator(rs, 1, 2);
        Interval r23 = regulator(rs, 2, 3), r13 = regulator(rs, 1, 3);
        Interval n2 = sqr(Interval(mpz_class(n), rs.prec));
        pt.R_over_n2 = pt.R / n2;
        double spread = std::max(abs(pt.R - r23).hi_double(), abs(pt.R - r13).hi_double());
        double tol = 2 * (pt.R.width_double() + std::max(r23.width_double(), r13.width_double()));
        pt.pair_spread = spread;
        pt.pair_tolerance = tol;
        // Both differences contain 0 when the determinant is pair independent.
        if (!(pt.R - r23).contains_zero() || !(pt.R - r13).contains_zero()) rep.pairs_consistent = false;
        rep.points.push_back(std::move(pt));
    }
    if (!rep.points.empty()) {
        const auto& top = rep.points.back();
        rep.relative_deviation_at_top =
            std::abs(top.R_over_n2.to_double() - rep.limit.to_double()) / rep.limit.to_double();
    }
    return rep;
}

struct UnitExponents {
    long b1 = 0, b2 = 0;
    int sign = 1;
    double residual = 0;
    /// True when the basis {lambda, lambda - B_n} was used.
    bool alt_units = false;
};

/// Exact value of x(x - Ay)(x - By) - y^3.
inline mpz_class thue_form(const mpz_class& x, const mpz_class& y, const mpz_class& a, const mpz_class& b) {
    return x * (x - a * y) * (x - b * y) - y * y * y;
}

/// Writes x - lambda_i y = sign * lambda_i^b1 (lambda_i - A)^b2 for all three i.
inline UnitExponents unit_decompose(const mpz_class& x, const mpz_class& y, const CubicRootSet& rs,
                                    bool alt_units = false) {
    mpz_class norm = thue_form(x, y, rs.A, rs.B);
    if (norm != 1 && norm != -1)
        throw Error(ErrorKind::NotAUnit, "x - lambda y has norm " + norm.get_str());
    mpfr_prec_t p = rs.prec;
    Interval X(x, p), Y(y, p), shift(alt_units ? rs.B : rs.A, p);
    std::array<Interval, 3> u{Interval(p), Interval(p), Interval(p)}, l1{Interval(p), Interval(p), Interval(p)},
        l2{Interval(p), Interval(p), Interval(p)};
    for (std::size_t i = 0; i < 3; ++i) {
        u[i] = X - rs.lambda[i] * Y;
        l1[i] = log(abs(rs.lambda[i]));
        l2[i] = log(abs(rs.lambda[i] - shift));
    }
    // Rows 1 and 2: [l1 l2] (b1, b2)^T = log|u|.
    Interval det = l1[0] * l2[1] - l2[0] * l1[1];
    Interval lu0 = log(abs(u[0])), lu1 = log(abs(u[1]));
    Interval b1 = (lu0 * l2[1] - l2[0] * lu1) / det;
    Interval b2 = (l1[0] * lu1 - lu0 * l1[1]) / det;
    UnitExponents e;
    e.alt_units = alt_units;
    Float m1 = b1.mid(), m2 = b2.mid();
    double r1 = mpfr_get_d(m1.get(), MPFR_RNDN), r2 = mpfr_get_d(m2.get(), MPFR_RNDN);
    e.b1 = std::lround(r1);
    e.b2 = std::lround(r2);
    e.residual = std::max(std::max(std::abs(r1 - static_cast<double>(e.b1)), std::abs(r2 - static_cast<double>(e.b2))),
                          std::max(b1.width_double(), b2.width_double()));
    if (e.residual >= 0.25) throw Error(ErrorKind::RoundingAmbiguous, "exponent pair is not close to integers");
    // Multiplicative re-verification with one common sign.
    int sign = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        Interval unit = pow(rs.lambda[i], e.b1) * pow(rs.lambda[i] - shift, e.b2);
        Interval q = u[i] / unit;
        int s = q.sign();
        if (s == 0) throw Error(ErrorKind::NotAUnit, "sign of the unit quotient is undecided");
        if (sign == 0) sign = s;
        if (s != sign) throw Error(ErrorKind::NotAUnit, "inconsistent sign across embeddings");
        if (!q.contains(mpz_class(s))) throw Error(ErrorKind::NotAUnit, "unit recomposition does not match");
        if (q.log2_width() > -static_cast<double>(p) / 4)
            throw Error(ErrorKind::PrecisionExhausted, "unit recomposition too imprecise");
    }
    e.sign = sign;
    return e;
}

/// 1-based index j minimising |x - lambda_j y|; ties go to the smallest index.
inline int solution_type(const mpz_class& x, const mpz_class& y, const CubicRootSet& rs) {
    mpfr_prec_t p = rs.prec;
    Interval X(x, p), Y(y, p);
    std::array<Interval, 3> d{abs(X - rs.lambda[0] * Y), abs(X - rs.lambda[1] * Y), abs(X - rs.lambda[2] * Y)};
    int best = 0;
    for (int i = 1; i < 3; ++i) {
        // Strictly smaller wins; an undecided or equal comparison keeps the smaller index.
        if (less(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(best)]) == Tri::True) best = i;
    }
    return best + 1;
}

/// (k, l) for a given type j.
inline std::pair<int, int> siegel_kl(int j) {
    switch (j) {
        case 1: return {3, 2};
        case 2: return {3, 1};
        case 3: return {2, 1};
        default: throw Error(ErrorKind::Precondition, "type must be 1, 2 or 3");
    }
}

struct SiegelValues {
    Interval gamma{64};
    /// log|1 + gamma|.
    Interval Lambda{64};
};

inline SiegelValues siegel_gamma(const mpz_class& x, const mpz_class& y, const CubicRootSet& rs, int j) {
    auto [k, l] = siegel_kl(j);
    mpfr_prec_t p = rs.prec;
    Interval X(x, p), Y(y, p);
    auto lam = [&](int i) -> const Interval& { return rs.lambda[static_cast<std::size_t>(i - 1)]; };
    Interval uj = X - lam(j) * Y, uk = X - lam(k) * Y;
    if (uk.contains_zero()) throw Error(ErrorKind::DivisionByZero, "x - lambda_k y encloses 0");
    SiegelValues s;
    s.gamma = uj / uk * ((lam(l) - lam(k)) / (lam(j) - lam(l)));
    s.Lambda = log(abs(Interval(1L, p) + s.gamma));
    return s;
}

/// (x - l_j y)(l_k - l_l) + (x - l_l y)(l_j - l_k) + (x - l_k y)(l_l - l_j), identically 0.
inline Interval siegel_residual(const mpz_class& x, const mpz_class& y, const CubicRootSet& rs, int j) {
    auto [k, l] = siegel_kl(j);
    mpfr_prec_t p = rs.prec;
    Interval X(x, p), Y(y, p);
    auto lam = [&](int i) -> const Interval& { return rs.lambda[static_cast<std::size_t>(i - 1)]; };
    return (X - lam(j) * Y) * (lam(k) - lam(l)) + (X - lam(l) * Y) * (lam(j) - lam(k)) +
           (X - lam(k) * Y) * (lam(l) - lam(j));
}

/// The linear form b1 log|l_l/l_k| + b2 log|(l_l - A)/(l_k - A)| + log|(l_j - l_k)/(l_j - l_l)|.
inline Interval lambda_form(const CubicRootSet& rs, int j, long b1, long b2) {
    auto [k, l] = siegel_kl(j);
    mpfr_prec_t p = rs.prec;
    Interval A(rs.A, p);
    auto lam = [&](int i) -> const Interval& { return rs.lambda[static_cast<std::size_t>(i - 1)]; };
    return Interval(b1, p) * (log(abs(lam(l))) - log(abs(lam(k)))) +
           Interval(b2, p) * (log(abs(lam(l) - A)) - log(abs(lam(k) - A))) + log(abs(lam(j) - lam(k))) -
           log(abs(lam(j) - lam(l)));
}

enum class LogArg { Alpha, Beta, CA, CB, CBA };

inline const char* to_string(LogArg a) {
    switch (a) {
        case LogArg::Alpha: return "log|alpha|";
        case LogArg::Beta: return "log|beta|";
        case LogArg::CA: return "log|c_A|";
        case LogArg::CB: return "log|c_B|";
        case LogArg::CBA: return "log|c_B - c_A|";
    }
    return "?";
}

/// Which coefficient table to use for xi_j.
enum class TableVariant {
    /// Rows recomputed from the logarithm approximations.
    Rederived,
    /// Rows without the sign fix in j = 1 and the b1 term in j = 3.
    Uncorrected
};

struct XiTerm {
    LogArg arg;
    mpz_class coeff;
};

struct LinearFormXi {
    int j = 1;
    CaseTag case_tag = CaseTag::Strict;
    unsigned long n = 0;
    long b1 = 0, b2 = 0;
    TableVariant variant = TableVariant::Rederived;
    std::vector<XiTerm> terms;
    /// The solution the exponents came from, when known.
    std::optional<std::pair<mpz_class, mpz_class>> provenance;

    mpz_class coeff(LogArg a) const {
        for (const auto& t : terms)
            if (t.arg == a) return t.coeff;
        return 0;
    }
    /// Largest absolute coefficient.
    mpz_class max_abs_coeff() const {
        mpz_class m = 0;
        for (const auto& t : terms)
            if (abs(t.coeff) > m) m = abs(t.coeff);
        return m;
    }
};

inline LinearFormXi xi_form(int j, CaseTag tag, unsigned long n, long b1, long b2,
                            TableVariant variant = TableVariant::Rederived) {
    if (j < 1 || j > 3) throw Error(ErrorKind::Precondition, "type must be 1, 2 or 3");
    LinearFormXi xi;
    xi.j = j;
    xi.case_tag = tag;
    xi.n = n;
    xi.b1 = b1;
    xi.b2 = b2;
    xi.variant = variant;
    mpz_class N(n), B1(b1), B2(b2);
    long cne = tag == CaseTag::Strict ? 1 : 0;
    long ceq = 1 - cne;
    bool uncorrected = variant == TableVariant::Uncorrected;
    mpz_class a, b, ca, cb, cba;
    switch (j) {
        case 1:
            a = 2 * N * (B1 - B2);
            b = N * (B1 - B2);
            ca = 2 * (B1 - B2);
            cb = B1 - cne * B2 + ceq;
            cba = uncorrected ? mpz_class(ceq * (B2 + 1)) : mpz_class(-ceq * (B2 + 1));
            break;
        case 2:
            a = N * (B1 - (B2 - 1));
            b = N * (2 * B1 + B2 - 1);
            ca = B1 - (B2 - 1);
            cb = 2 * B1 + cne * (B2 - 1);
            cba = ceq * (B2 - 1);
            break;
        default:
            a = N * (B2 - (B1 - 1));
            b = N * (2 * B2 + B1 - 1);
            ca = B2 - (B1 - 1);
            cb = uncorrected ? mpz_class(cne * 2 * B2 - 1) : mpz_class(B1 + cne * 2 * B2 - 1);
            cba = ceq * 2 * B2;
            break;
    }
    xi.terms = {{LogArg::Alpha, a}, {LogArg::Beta, b}, {LogArg::CA, ca}, {LogArg::CB, cb}};
    if (tag == CaseTag::EqualModulus) xi.terms.push_back({LogArg::CBA, cba});
    return xi;
}

/// Logarithms of the xi arguments at n.
struct XiLogs {
    Interval alpha{64}, beta{64}, cA{64}, cB{64}, cBA{64};
    const Interval& get(LogArg a) const {
        switch (a) {
            case LogArg::Alpha: return alpha;
            case LogArg::Beta: return beta;
            case LogArg::CA: return cA;
            case LogArg::CB: return cB;
            default: return cBA;
        }
    }
};

inline XiLogs xi_logs(const FamilyInstance& fam, const ApproxConstants& k, unsigned long n, mpfr_prec_t p = 256) {
    XiLogs l;
    l.alpha = k.log_alpha.with_prec(p);
    l.beta = k.log_beta.with_prec(p);
    coefficient_logs(fam, n, p, l.cA, l.cB, l.cBA);
    return l;
}

inline Interval evaluate(const LinearFormXi& xi, const XiLogs& logs) {
    mpfr_prec_t p = logs.alpha.prec();
    Interval s(0L, p);
    for (const auto& t : xi.terms) {
        if (t.coeff == 0) continue;
        s += Interval(t.coeff, p) * logs.get(t.arg);
    }
    return s;
}

/// Type, exponents and xi for an actual solution.
inline LinearFormXi xi_from_solution(const mpz_class& x, const mpz_class& y, const CubicRootSet& rs,
                                     const FamilyInstance& fam, TableVariant variant = TableVariant::Rederived) {
    int j = solution_type(x, y, rs);
    UnitExponents e = unit_decompose(x, y, rs);
    LinearFormXi xi = xi_form(j, fam.case_tag(), rs.n, e.b1, e.b2, variant);
    xi.provenance = std::make_pair(x, y);
    return xi;
}

/// Upper bound 4 c5^-3 n^-d1 |alpha|^-2n |beta|^-n + 6 C n^d2 eps^n for |xi_j|.
inline Interval xi_upper_bound(const ApproxConstants& k, unsigned long n, mpfr_prec_t p = 256) {
    Interval nn(mpz_class(n), p);
    Interval c5 = k.c5.with_prec(p);
    Interval t1 = Interval(4L, p) / pow(c5, 3) * pow(nn, -k.d1) *
                  exp(-nn * (Interval(2L, p) * k.log_alpha.with_prec(p) + k.log_beta.with_prec(p)));
    Interval t2 = Interval(6L, p) * k.C.with_prec(p) * pow(nn, k.d2) * exp(nn * log(k.eps.with_prec(p)));
    return t1 + t2;
}

inline BoundCheck verify_xi_bound(const LinearFormXi& xi, const FamilyInstance& fam, const ApproxConstants& k) {
    if (!xi.provenance)
        throw Error(ErrorKind::Precondition, "xi bound applies only to exponents of an actual solution");
    const auto& [x, y] = *xi.provenance;
    if (xi.n < k.n_valid)
        throw Error(ErrorKind::Precondition, "n below the range where c5 is valid");
    auto rs = isolate_cubic_roots(fam, xi.n, 256);
    if (abs(thue_form(x, y, rs.A, rs.B)) != 1) throw Error(ErrorKind::Precondition, "provenance is not a solution");
    auto logs = xi_logs(fam, k, xi.n);
    return make_check("|xi_" + std::to_string(xi.j) + "|", abs(evaluate(xi, logs)), xi_upper_bound(k, xi.n));
}

/// (b1, b2) predicted from log|y| by inverting the log matrix with the
/// closed-form logarithms (rows k, l for type j).
inline std::pair<Interval, Interval> powers_closed_form(const FamilyInstance& fam, const ApproxConstants& k,
                                                        unsigned long n, int j, const Interval& logy) {
    mpfr_prec_t p = logy.prec();
    auto cf = log_closed_forms(fam, k, n, p);
    // log|l_i| = cf[2(i-1)], log|l_i - A| = cf[2(i-1)+1]; root differences:
    bool equal = fam.case_tag() == CaseTag::EqualModulus;
    Interval nn(mpz_class(n), p);
    Interval d12 = nn * k.log_beta.with_prec(p) + (equal ? cf.log_cBA : cf.log_cB);
    Interval d13 = nn * k.log_beta.with_prec(p) + cf.log_cB;
    Interval d23 = nn * k.log_alpha.with_prec(p) + cf.log_cA;
    auto diff = [&](int a, int b) -> Interval {
        int lo = std::min(a, b), hi = std::max(a, b);
        if (lo == 1 && hi == 2) return d12;
        if (lo == 1 && hi == 3) return d13;
        return d23;
    };
    auto [kk, ll] = siegel_kl(j);
    const Interval& lk = cf.value[static_cast<std::size_t>(2 * (kk - 1))];
    const Interval& lkA = cf.value[static_cast<std::size_t>(2 * (kk - 1) + 1)];
    const Interval& lj = cf.value[static_cast<std::size_t>(2 * (ll - 1))];
    const Interval& ljA = cf.value[static_cast<std::size_t>(2 * (ll - 1) + 1)];
    Interval det = lk * ljA - lkA * lj;
    Interval rk = logy + diff(kk, j), rl = logy + diff(ll, j);
    return {(ljA * rk - lkA * rl) / det, (lk * rl - lj * rk) / det};
}

}  // namespace split_thue
