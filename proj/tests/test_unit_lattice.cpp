#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "split_thue/unit_lattice.hpp"

using namespace split_thue;

namespace {

std::vector<mpz_class> Z(std::initializer_list<long> v) {
    std::vector<mpz_class> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

FamilyInstance fib_pow2() {
    return FamilyInstance(RecurrentSequence::from_recurrence(Z({1, -1, -1}), Z({1, 2})),
                          RecurrentSequence::from_recurrence(Z({1, -2}), Z({2})));
}

FamilyInstance pow2_equal() {
    return FamilyInstance(RecurrentSequence::from_recurrence(Z({1, -2}), Z({1})),
                          RecurrentSequence::from_recurrence(Z({1, -2}), Z({3})));
}

/// max_i |(x - r_i y) / (s r_i^b1 (r_i - A)^b2) - 1| from independently computed roots.
double oracle_unit_error(const mpz_class& x, const mpz_class& y, const mpz_class& a, const mpz_class& b, long b1,
                         long b2, int s) {
    const mpfr_prec_t P = 400;
    oracle::CubicRoots r(P);
    oracle::cubic_roots(a, b, r, P);
    double worst = 0;
    mpfr_t u, v, w, t;
    mpfr_inits2(P, u, v, w, t, static_cast<mpfr_ptr>(nullptr));
    for (int i = 0; i < 3; ++i) {
        mpfr_mul_z(t, r.r[i], y.get_mpz_t(), MPFR_RNDN);
        mpfr_set_z(u, x.get_mpz_t(), MPFR_RNDN);
        mpfr_sub(u, u, t, MPFR_RNDN);
        mpfr_pow_si(v, r.r[i], b1, MPFR_RNDN);
        mpfr_sub_z(t, r.r[i], a.get_mpz_t(), MPFR_RNDN);
        mpfr_pow_si(w, t, b2, MPFR_RNDN);
        mpfr_mul(v, v, w, MPFR_RNDN);
        mpfr_mul_si(v, v, s, MPFR_RNDN);
        mpfr_div(u, u, v, MPFR_RNDN);
        mpfr_sub_ui(u, u, 1, MPFR_RNDN);
        worst = std::max(worst, std::abs(mpfr_get_d(u, MPFR_RNDN)));
    }
    mpfr_clears(u, v, w, t, static_cast<mpfr_ptr>(nullptr));
    return worst;
}

struct Trivial {
    mpz_class x, y;
    long b1, b2;
    int sign;
};

std::vector<Trivial> trivial_solutions(const mpz_class& a, const mpz_class& b) {
    return {{1, 0, 0, 0, 1}, {a, 1, 0, 1, -1}, {b, 1, -1, -1, -1}, {0, 1, 1, 0, -1}};
}

}  // namespace

TEST(Regulator, GrowsLikeNSquared) {
    auto fam = fib_pow2();
    auto k = compute_constants(fam);
    EXPECT_NEAR(regulator_limit(k).to_double(), std::log(2.0) * (2 * std::log((1 + std::sqrt(5.0)) / 2) + std::log(2.0)),
                1e-12);
    auto rep = verify_regulator_growth(fam, k, 20, 200, 20, 256);
    EXPECT_TRUE(rep.pairs_consistent);
    // Relative deviation decays like 1/n.
    double prev = 1e9;
    for (const auto& pt : rep.points) {
        double dev = std::abs(pt.R_over_n2.to_double() - rep.limit.to_double()) / rep.limit.to_double();
        EXPECT_LT(dev, 3.0 / static_cast<double>(pt.n));
        EXPECT_LT(dev, prev);
        prev = dev;
    }
    EXPECT_LT(rep.relative_deviation_at_top, 0.02);
}

TEST(Regulator, RejectsEqualIndices) { EXPECT_THROW(regulator(isolate_cubic_roots(fib_pow2(), 10, 128), 2, 2), Error); }

TEST(UnitDecompose, TrivialSolutionsFibonacci) {
    auto fam = fib_pow2();
    for (unsigned long n : {5ul, 20ul, 60ul}) {
        auto rs = isolate_cubic_roots(fam, n, 256);
        for (const auto& t : trivial_solutions(rs.A, rs.B)) {
            auto e = unit_decompose(t.x, t.y, rs);
            EXPECT_EQ(e.b1, t.b1) << n;
            EXPECT_EQ(e.b2, t.b2) << n;
            EXPECT_EQ(e.sign, t.sign) << n;
            EXPECT_LT(e.residual, 1e-20);
            EXPECT_LT(oracle_unit_error(t.x, t.y, rs.A, rs.B, e.b1, e.b2, e.sign), 1e-60);
        }
    }
}

TEST(UnitDecompose, AlternativeBasis) {
    auto fam = fib_pow2();
    auto rs = isolate_cubic_roots(fam, 20, 256);
    // x - lambda y for (B, 1) is -(lambda - B).
    auto e = unit_decompose(rs.B, 1, rs, true);
    EXPECT_EQ(e.b1, 0);
    EXPECT_EQ(e.b2, 1);
    EXPECT_EQ(e.sign, -1);
    EXPECT_TRUE(e.alt_units);
    // lambda - A = lambda^-1 (lambda - B)^-1, so (A, 1) is (-1, -1) here.
    e = unit_decompose(rs.A, 1, rs, true);
    EXPECT_EQ(e.b1, -1);
    EXPECT_EQ(e.b2, -1);
}

TEST(UnitDecompose, ProductsOfUnits) {
    // Every small solution of |F| = 1 is a unit; check its decomposition against the oracle.
    auto rs = isolate_cubic_roots(mpz_class(3), mpz_class(12), 0, 256);
    int found = 0;
    for (long x = -60; x <= 60; ++x)
        for (long y = -60; y <= 60; ++y) {
            mpz_class f = thue_form(x, y, rs.A, rs.B);
            if (y == 0 || (f != 1 && f != -1)) continue;
            auto e = unit_decompose(x, y, rs);
            EXPECT_LT(oracle_unit_error(x, y, rs.A, rs.B, e.b1, e.b2, e.sign), 1e-60) << x << "," << y;
            ++found;
        }
    EXPECT_GE(found, 6);
}

TEST(UnitDecompose, RejectsNonUnits) {
    auto rs = isolate_cubic_roots(fib_pow2(), 10, 128);
    EXPECT_THROW(unit_decompose(2, 1, rs), Error);
}

TEST(SolutionType, TrivialSolutions) {
    auto rs = isolate_cubic_roots(fib_pow2(), 20, 256);
    EXPECT_EQ(solution_type(rs.A, 1, rs), 2);
    EXPECT_EQ(solution_type(rs.B, 1, rs), 1);
    EXPECT_EQ(solution_type(0, 1, rs), 3);
    // All three distances equal 1 for (1, 0).
    EXPECT_EQ(solution_type(1, 0, rs), 1);
}

TEST(Siegel, IdentityAndLambda) {
    auto fam = fib_pow2();
    for (unsigned long n : {12ul, 20ul, 40ul}) {
        auto rs = isolate_cubic_roots(fam, n, 256);
        for (const auto& t : trivial_solutions(rs.A, rs.B)) {
            if (t.y == 0) continue;
            int j = solution_type(t.x, t.y, rs);
            EXPECT_TRUE(siegel_residual(t.x, t.y, rs, j).contains_zero());
            auto s = siegel_gamma(t.x, t.y, rs, j);
            Interval lf = lambda_form(rs, j, t.b1, t.b2);
            EXPECT_TRUE(s.Lambda.overlaps(lf));
            // gamma is tiny for the closest root.
            EXPECT_LT(std::abs(s.gamma.to_double()), 1e-3);
        }
    }
}

TEST(Siegel, ResidualForAllTypes) {
    auto rs = isolate_cubic_roots(mpz_class(7), mpz_class(40), 0, 200);
    for (int j = 1; j <= 3; ++j) EXPECT_TRUE(siegel_residual(5, -3, rs, j).contains_zero());
}

TEST(XiForm, TablesDifferOnlyInTwoRows) {
    for (long b1 = -3; b1 <= 3; ++b1)
        for (long b2 = -3; b2 <= 3; ++b2) {
            for (auto tag : {CaseTag::Strict, CaseTag::EqualModulus}) {
                auto r1 = xi_form(1, tag, 10, b1, b2), p1 = xi_form(1, tag, 10, b1, b2, TableVariant::Uncorrected);
                EXPECT_EQ(r1.coeff(LogArg::CBA), -p1.coeff(LogArg::CBA));
                EXPECT_EQ(r1.coeff(LogArg::CB), p1.coeff(LogArg::CB));
                auto r2 = xi_form(2, tag, 10, b1, b2), p2 = xi_form(2, tag, 10, b1, b2, TableVariant::Uncorrected);
                for (auto a : {LogArg::Alpha, LogArg::Beta, LogArg::CA, LogArg::CB, LogArg::CBA})
                    EXPECT_EQ(r2.coeff(a), p2.coeff(a));
                auto r3 = xi_form(3, tag, 10, b1, b2), p3 = xi_form(3, tag, 10, b1, b2, TableVariant::Uncorrected);
                EXPECT_EQ(r3.coeff(LogArg::CB) - p3.coeff(LogArg::CB), b1);
            }
        }
}

// xi_j must track the exact Lambda up to (2|b1| + 2|b2| + 4) C n^d2 eps^n for any
// exponents; this is what pins down every table row.
void check_tables_against_lambda(const FamilyInstance& fam, unsigned long n, TableVariant v, bool expect_ok) {
    auto k = compute_constants(fam);
    auto rs = isolate_cubic_roots(fam, n, 256);
    auto logs = xi_logs(fam, k, n);
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-40, 40);
    bool all_ok = true;
    for (int trial = 0; trial < 30; ++trial) {
        long b1 = d(rng), b2 = d(rng);
        for (int j = 1; j <= 3; ++j) {
            auto xi = xi_form(j, fam.case_tag(), n, b1, b2, v);
            Interval diff = abs(evaluate(xi, logs) - lambda_form(rs, j, b1, b2));
            double tol = (2.0 * std::abs(b1) + 2.0 * std::abs(b2) + 4.0) * k.C.to_double() *
                         std::pow(static_cast<double>(n), static_cast<double>(k.d2)) *
                         std::pow(k.eps.to_double(), static_cast<double>(n));
            if (!(diff.hi_double() <= tol)) all_ok = false;
        }
    }
    EXPECT_EQ(all_ok, expect_ok);
}

TEST(XiForm, RederivedTablesTrackLambdaStrict) { check_tables_against_lambda(fib_pow2(), 40, TableVariant::Rederived, true); }
TEST(XiForm, RederivedTablesTrackLambdaEqual) { check_tables_against_lambda(pow2_equal(), 40, TableVariant::Rederived, true); }
TEST(XiForm, UncorrectedTablesMissLambdaStrict) { check_tables_against_lambda(fib_pow2(), 40, TableVariant::Uncorrected, false); }
TEST(XiForm, UncorrectedTablesMissLambdaEqual) { check_tables_against_lambda(pow2_equal(), 40, TableVariant::Uncorrected, false); }

TEST(XiForm, TrivialSolutionsStrict) {
    auto fam = fib_pow2();
    auto k = compute_constants(fam);
    unsigned long n = 20;
    auto rs = isolate_cubic_roots(fam, n, 256);
    auto logs = xi_logs(fam, k, n);
    for (const auto& t : trivial_solutions(rs.A, rs.B)) {
        auto xi = xi_from_solution(t.x, t.y, rs, fam);
        EXPECT_TRUE(evaluate(xi, logs).contains_zero());
        auto chk = verify_xi_bound(xi, fam, k);
        EXPECT_EQ(chk.holds, Tri::True) << t.x.get_str();
    }
    // The uncorrected j = 3 row leaves -log|c_B| = -log 2 for (0, 1).
    auto uncorrected = xi_from_solution(0, 1, rs, fam, TableVariant::Uncorrected);
    EXPECT_NEAR(evaluate(uncorrected, logs).to_double(), -std::log(2.0), 1e-15);
    EXPECT_EQ(verify_xi_bound(uncorrected, fam, k).holds, Tri::False);
}

TEST(XiForm, BoundNeedsProvenance) {
    auto fam = fib_pow2();
    auto k = compute_constants(fam);
    auto xi = xi_form(1, fam.case_tag(), 20, 0, 0);
    EXPECT_THROW(verify_xi_bound(xi, fam, k), Error);
}

TEST(ClosedFormPowers, MatchDecompositionForTrivialSolutions) {
    auto fam = fib_pow2();
    auto k = compute_constants(fam);
    for (unsigned long n : {30ul, 60ul, 120ul}) {
        auto rs = isolate_cubic_roots(fam, n, 256);
        Interval zero(0L, 256);
        for (const auto& t : trivial_solutions(rs.A, rs.B)) {
            if (t.y == 0) continue;
            int j = solution_type(t.x, t.y, rs);
            auto [b1, b2] = powers_closed_form(fam, k, n, j, zero);
            EXPECT_NEAR(b1.to_double(), static_cast<double>(t.b1), 4.0 / static_cast<double>(n)) << n;
            EXPECT_NEAR(b2.to_double(), static_cast<double>(t.b2), 4.0 / static_cast<double>(n)) << n;
        }
    }
}
