#pragma once

// Exact search for integer solutions of |x(x - A y)(x - B y) - y^3| = 1 with
// bounded |y|, and the per-n verification pipeline built on it.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "split_thue/unit_lattice.hpp"

namespace split_thue {

enum class SolutionClass { Trivial01, Trivial10, TrivialA1, TrivialB1, Nontrivial };

inline std::string_view to_string(SolutionClass c) {
    switch (c) {
        case SolutionClass::Trivial01: return "trivial-(0,1)";
        case SolutionClass::Trivial10: return "trivial-(1,0)";
        case SolutionClass::TrivialA1: return "trivial-(A,1)";
        case SolutionClass::TrivialB1: return "trivial-(B,1)";
        case SolutionClass::Nontrivial: return "nontrivial";
    }
    return "?";
}

struct Classification {
    SolutionClass cls = SolutionClass::Nontrivial;
    /// m with (x, y) = m * representative; 0 for nontrivial solutions.
    int orbit = 0;
};

struct Solution {
    mpz_class x, y;
    unsigned long n = 0;
    /// Value of x(x - Ay)(x - By) - y^3.
    int sign = 1;
    Classification classification;
};

inline bool operator<(const Solution& a, const Solution& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
}

inline Classification classify(const mpz_class& x, const mpz_class& y, const mpz_class& a, const mpz_class& b) {
    const std::array<std::pair<SolutionClass, mpz_class>, 3> reps{
        {{SolutionClass::Trivial01, mpz_class(0)}, {SolutionClass::TrivialA1, a}, {SolutionClass::TrivialB1, b}}};
    if (y == 0) {
        if (x == 1) return {SolutionClass::Trivial10, 1};
        if (x == -1) return {SolutionClass::Trivial10, -1};
        return {};
    }
    if (y != 1 && y != -1) return {};
    int m = y > 0 ? 1 : -1;
    for (const auto& [cls, r] : reps)
        if (x == m * r) return {cls, m};
    return {};
}

inline Classification classify(const Solution& s, const FamilyInstance& fam) {
    return classify(s.x, s.y, fam.An(s.n), fam.Bn(s.n));
}

/// The eight trivial solutions, with the sign each attains.
inline std::vector<Solution> trivial_orbit(const mpz_class& a, const mpz_class& b, unsigned long n = 0) {
    std::vector<Solution> out;
    auto add = [&](const mpz_class& x, const mpz_class& y) {
        Solution s{x, y, n, 0, classify(x, y, a, b)};
        s.sign = static_cast<int>(thue_form(x, y, a, b).get_si());
        out.push_back(s);
    };
    for (int m : {1, -1}) {
        add(mpz_class(m), mpz_class(0));
        add(mpz_class(0), mpz_class(m));
        add(m * a, mpz_class(m));
        add(m * b, mpz_class(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline mpz_class floor_div3(const mpz_class& v) {
    mpz_class q;
    mpz_fdiv_q_ui(q.get_mpz_t(), v.get_mpz_t(), 3);
    return q;
}

inline __int128 to_i128(const mpz_class& z) {
    mpz_class hi = z >> 64, lo = z - (hi << 64);
    unsigned long long l = 0;
    mpz_export(&l, nullptr, -1, sizeof l, 0, 0, lo.get_mpz_t());
    return static_cast<__int128>(static_cast<unsigned __int128>(static_cast<__int128>(hi.get_si())) << 64) +
           static_cast<__int128>(l);
}

inline mpz_class from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(u & ~0ULL);
    return neg ? mpz_class(-r) : r;
}

/// g(x) = x(x - ay)(x - by) - y^3 for fixed a, b, y.
template <class T>
struct CubicInX {
    T ay, by, y3;
    T operator()(const T& x) const { return x * (x - ay) * (x - by) - y3; }
};

/// Integer roots of g(x) = s on [lo, hi], where g is monotone (dir = +1 increasing, -1 decreasing).
template <class T>
void roots_on_piece(const CubicInX<T>& g, T lo, T hi, int dir, const T& s, std::set<T>& out) {
    if (lo > hi) return;
    // Find the first x with dir * g(x) >= dir * s.
    while (lo < hi) {
        T mid = lo + (hi - lo) / 2;
        T v = g(mid);
        if (dir > 0 ? v < s : v > s)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (g(lo) == s) out.insert(lo);
}

template <class T>
void roots_for_y(const CubicInX<T>& g, const T& bound, const T& f1, const T& f2, const T& s, std::set<T>& out) {
    T one(1);
    roots_on_piece(g, T(-bound), f1, +1, s, out);
    roots_on_piece(g, T(f1 + one), f2, -1, s, out);
    roots_on_piece(g, T(f2 + one), bound, +1, s, out);
    // The piece boundaries are floors of irrational critical points; recheck their neighbourhoods.
    for (const T& c : {f1, f2})
        for (int d = -2; d <= 2; ++d)
            if (g(T(c + T(d))) == s) out.insert(T(c + T(d)));
}

}  // namespace detail

/// All integer solutions with |y| <= y_max of x(x - ay)(x - by) - y^3 = +-1, sorted by (y, x).
inline std::vector<Solution> solve_bruteforce(const mpz_class& a, const mpz_class& b, unsigned long y_max,
                                              unsigned long n = 0) {
    if (y_max < 1) throw Error(ErrorKind::Precondition, "y_max must be at least 1");
    std::vector<Solution> out;
    auto push = [&](const mpz_class& x, const mpz_class& y, int s) {
        Solution sol{x, y, n, s, classify(x, y, a, b)};
        out.push_back(sol);
    };
    push(mpz_class(1), mpz_class(0), 1);
    push(mpz_class(-1), mpz_class(0), -1);
    mpz_class disc = a * a - a * b + b * b;
    mpz_class absab = abs(a) + abs(b) + 1;
    for (long yy = -static_cast<long>(y_max); yy <= static_cast<long>(y_max); ++yy) {
        if (yy == 0) continue;
        mpz_class y(yy);
        // Critical points of g: y((a + b) -+ sqrt(a^2 - ab + b^2)) / 3.
        mpz_class m = y * y * disc, r = sqrt(m);
        bool square = r * r == m;
        mpz_class p = y * (a + b);
        mpz_class f1 = detail::floor_div3(square ? mpz_class(p - r) : mpz_class(p - r - 1));
        mpz_class f2 = detail::floor_div3(p + r);
        // Fujiwara: every real root lies in [-bound, bound].
        mpz_class bound = 2 * (absab * abs(y) + 1);
        for (int s : {1, -1}) {
            if (bound < (mpz_class(1) << 40)) {
                using I = __int128;
                I yi = yy;
                detail::CubicInX<I> g{detail::to_i128(a) * yi, detail::to_i128(b) * yi, yi * yi * yi};
                std::set<I> xs;
                detail::roots_for_y<I>(g, detail::to_i128(bound), detail::to_i128(f1), detail::to_i128(f2), I(s),
                                       xs);
                for (I x : xs) push(detail::from_i128(x), y, s);
            } else {
                detail::CubicInX<mpz_class> g{a * y, b * y, y * y * y};
                std::set<mpz_class> xs;
                detail::roots_for_y<mpz_class>(g, bound, f1, f2, mpz_class(s), xs);
                for (const auto& x : xs) push(x, y, s);
            }
        }
    }
    std::sort(out.begin(), out.end());
    for (const auto& s : out)
        if (thue_form(s.x, s.y, a, b) != s.sign)
            throw Error(ErrorKind::InconsistentModel, "solver returned a non-solution");
    return out;
}

inline std::vector<Solution> solve_bruteforce(const FamilyInstance& fam, unsigned long n, unsigned long y_max) {
    return solve_bruteforce(fam.An(n), fam.Bn(n), y_max, n);
}

struct NVerification {
    unsigned long n = 0;
    mpz_class A, B;
    bool in_scope = true;
    std::string out_of_scope_reason;
    std::vector<Solution> solutions;
    std::size_t nontrivial = 0;
    bool orbit_complete = false;
    /// Root approximations; Unknown when isolation failed.
    Tri root_approx = Tri::Unknown;
    Tri log_approx = Tri::Unknown;
    Tri root_diff = Tri::Unknown;
    std::vector<BoundCheck> root_checks, diff_checks;
    std::optional<LogApproxReport> log_report;
    /// Largest unit_decompose rounding residual over the solutions found.
    double max_unit_residual = 0;
    bool units_ok = true;
    std::vector<std::string> errors;
};

struct FamilyVerification {
    CaseTag tag = CaseTag::Strict;
    unsigned long n_lo = 0, n_hi = 0, y_max = 0;
    std::vector<NVerification> per_n;
    std::size_t nontrivial = 0;
    std::size_t out_of_scope = 0;
    std::vector<std::string> errors;
    std::optional<ApproxConstants> constants;
    bool ok() const { return nontrivial == 0; }
};

namespace detail {

inline Tri tri_of(const std::vector<BoundCheck>& v) {
    if (all_hold(v)) return Tri::True;
    for (const auto& c : v)
        if (c.holds == Tri::False) return Tri::False;
    return Tri::Unknown;
}

}  // namespace detail

/// Solves and classifies every n in [n_lo, n_hi]; n outside the hypotheses are marked out of scope.
inline FamilyVerification verify_family(const FamilyInstance& fam, unsigned long n_lo, unsigned long n_hi,
                                        unsigned long y_max, long bits = 256) {
    if (n_lo > n_hi) throw Error(ErrorKind::Precondition, "n_lo > n_hi");
    FamilyVerification rep;
    rep.tag = fam.case_tag();
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    rep.y_max = y_max;
    std::optional<ApproxConstants> k;
    try {
        k = compute_constants(fam);
    } catch (const Error& e) {
        rep.errors.push_back(std::string("constants: ") + e.what());
    }
    for (unsigned long n = n_lo; n <= n_hi; ++n) {
        NVerification v;
        v.n = n;
        v.A = fam.An(n);
        v.B = fam.Bn(n);
        if (!bullet_condition(v.A, v.B)) {
            v.in_scope = false;
            v.out_of_scope_reason = "A_n, B_n outside the admissible range";
        } else if (rep.tag == CaseTag::EqualModulus) {
            auto e = equal_modulus_check(fam, n);
            if (!e.abs_c_differ || e.condition == 0) {
                v.in_scope = false;
                v.out_of_scope_reason = "no equal-modulus condition holds";
            }
        }
        if (!v.in_scope) {
            ++rep.out_of_scope;
            rep.per_n.push_back(std::move(v));
            continue;
        }
        v.solutions = solve_bruteforce(v.A, v.B, y_max, n);
        auto orbit = trivial_orbit(v.A, v.B, n);
        std::size_t trivial = 0;
        for (const auto& s : v.solutions)
            if (s.classification.cls == SolutionClass::Nontrivial)
                ++v.nontrivial;
            else
                ++trivial;
        v.orbit_complete = trivial == orbit.size() &&
                           std::includes(v.solutions.begin(), v.solutions.end(), orbit.begin(), orbit.end());
        rep.nontrivial += v.nontrivial;
        try {
            auto rs = isolate_cubic_roots(v.A, v.B, n, bits);
            v.root_checks = verify_root_approx(rs);
            v.root_approx = detail::tri_of(v.root_checks);
            if (k) {
                v.log_report = verify_log_approx(rs, fam, *k);
                v.log_approx = detail::tri_of(v.log_report->checks);
                v.diff_checks = verify_root_diff(rs, fam, *k);
                v.root_diff = detail::tri_of(v.diff_checks);
            }
            for (const auto& s : v.solutions) {
                try {
                    auto u = unit_decompose(s.x, s.y, rs);
                    v.max_unit_residual = std::max(v.max_unit_residual, u.residual);
                } catch (const Error& e) {
                    v.units_ok = false;
                    v.errors.push_back("unit_decompose(" + s.x.get_str() + ", " + s.y.get_str() + "): " + e.what());
                }
            }
        } catch (const Error& e) {
            v.units_ok = false;
            v.errors.push_back(std::string("roots: ") + e.what());
        }
        rep.per_n.push_back(std::move(v));
    }
    rep.constants = k;
    return rep;
}

}  // namespace split_thue
