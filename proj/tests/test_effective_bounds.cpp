#include <gtest/gtest.h>

#include <cmath>

#include "split_thue/effective_bounds.hpp"

using namespace split_thue;

namespace {

std::vector<mpz_class> Z(std::initializer_list<long> v) {
    std::vector<mpz_class> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

FamilyInstance fib_pow(long base) {
    return FamilyInstance(RecurrentSequence::from_recurrence(Z({1, -1, -1}), Z({1, 2})),
                          RecurrentSequence::from_recurrence(Z({1, -base}), Z({2})));
}

AlgebraicNumber quadratic(long b, long c, double approx) {
    return AlgebraicNumber::make(ZPoly(Z({c, b, 1})), CBox(Interval(mpq_class(std::lround(approx * 100) - 1, 100),
                                                                    mpq_class(std::lround(approx * 100) + 1, 100), 64)));
}

// Certified a <= b up to overlap: b is not certainly below a.
bool not_above(const Interval& a, const Interval& b) { return less(b, a) != Tri::True; }

mpz_class pow_ui(unsigned long b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

}  // namespace

TEST(BugyBound, ConstantIsExact) {
    EXPECT_EQ(bugy_constant(2, 3), pow_ui(3, 29) * pow_ui(3, 33) * pow_ui(3, 32));
    EXPECT_EQ(bugy_constant(2, 3), pow_ui(3, 94));
    EXPECT_EQ(bugy_constant(1, 3), pow_ui(3, 28) * pow_ui(2, 26) * pow_ui(3, 26));
}

TEST(BugyBound, MonotoneInR) {
    Interval lh(5L, 128);
    for (long r : {2L, 10L, 1000L}) {
        Interval R(r, 128);
        Interval b1 = bugy_bound_raw(R, lh), b2 = bugy_bound_raw(R * Interval(2L, 128), lh);
        EXPECT_EQ(less(Interval(2L, 128) * b1, b2), Tri::True);
    }
    EXPECT_THROW(bugy_bound_raw(Interval(0L, 64), lh), Error);
}

TEST(BugyBound, FibonacciAtTwentyWithComputedRegulator) {
    auto fam = fib_pow(2);
    auto rs = isolate_cubic_roots(fam, 20, 256);
    Interval R = regulator(rs, 1, 2);
    Interval b = bugy_bound(fam, 20, R);
    // C R^2 log R scale: R + log(H e) is R plus about 2 n.
    double scale = std::pow(3.0, 94) * R.to_double() * R.to_double() * std::log(R.to_double());
    EXPECT_GT(b.to_double(), scale);
    EXPECT_LT(b.to_double(), 3 * scale);
}

TEST(BakerBound, MicroInstance) {
    EXPECT_EQ(baker_constant(1, 1), mpz_class(18 * 2 * 32768));
    Interval e = e_const(256);
    Interval v = baker_lower({Interval(1L, 256)}, 1, e);
    EXPECT_NEAR(v.to_double(), -1179648.0 * std::log(2.0), 1e-12 * 1179648.0);
    EXPECT_LT(v.width_double(), 1e-50);
}

TEST(BakerBound, MonotoneInHeights) {
    Interval B(100L, 128);
    Interval h1(1L, 128), h2(2L, 128);
    EXPECT_EQ(less(baker_lower({h1, h2}, 2, B), baker_lower({h1, h1}, 2, B)), Tri::True);
    EXPECT_EQ(less(baker_lower({h2, h2}, 2, B), baker_lower({h1, h2}, 2, B)), Tri::True);
    EXPECT_EQ(less(baker_lower({h2, h1}, 2, B), baker_lower({h1, h2}, 2, B)), Tri::Unknown);
}

TEST(BakerBound, HeightFloor) {
    Interval lg(mpq_class(1, 100), 128);
    Interval m = modified_height(Interval(0L, 128), lg, 4);
    EXPECT_NEAR(m.to_double(), 0.04, 1e-15);
    EXPECT_NEAR(modified_height(Interval(0L, 128), Interval(2L, 128), 4).to_double(), 0.5, 1e-15);
    EXPECT_THROW(baker_lower({Interval(mpq_class(1, 100), 128)}, 1, e_const(128)), Error);
    EXPECT_THROW(baker_lower({Interval(1L, 128)}, 1, Interval(2L, 128)), Error);
}

TEST(Heights, Basic) {
    Interval log2 = log(Interval(2L, 256));
    EXPECT_LT(abs(AlgebraicNumber::integer(2).height() - log2).hi_double(), 1e-20);
    EXPECT_LT(abs(AlgebraicNumber::rational(mpq_class(1, 2)).height() - log2).hi_double(), 1e-20);
    auto phi = quadratic(-1, -1, 1.618);
    Interval lphi = log((Interval(1L, 256) + sqrt(Interval(5L, 256))) / Interval(2L, 256));
    EXPECT_LT(abs(phi.height() - lphi / Interval(2L, 256)).hi_double(), 1e-20);
}

TEST(FieldDegree, Compositum) {
    auto s2 = quadratic(0, -2, 1.414), s3 = quadratic(0, -3, 1.732), s8 = quadratic(0, -8, 2.828);
    auto phi = quadratic(-1, -1, 1.618), s5 = quadratic(0, -5, 2.236);
    EXPECT_EQ(compositum_degree({s2, s3}), 4u);
    EXPECT_EQ(compositum_degree({s2, s8}), 2u);
    EXPECT_EQ(compositum_degree({phi, s5, AlgebraicNumber::integer(7)}), 2u);
    EXPECT_EQ(compositum_degree({AlgebraicNumber::integer(2)}), 1u);
}

TEST(HeightModel, BoundsExactCoefficientHeights) {
    // A_n = (n + 1) 2^n, so c_A(n) = n + 1.
    auto seq = RecurrentSequence::from_recurrence(Z({1, -4, 4}), Z({1, 4}));
    auto m = coeff_height_model(seq.dominant(), {}, 256);
    for (unsigned long n : {1ul, 5ul, 100ul, 12345ul}) {
        Interval exact = seq.coeff_value(0, n).height();
        Interval model = m.at(log(Interval(mpz_class(n), 256)));
        EXPECT_TRUE(not_above(exact, model)) << n;
        EXPECT_NEAR(exact.to_double(), std::log(static_cast<double>(n + 1)), 1e-12);
    }
}

TEST(Analytic, EnclosesCertifiedRootData) {
    for (long base : {2L, 3L}) {
        auto fam = fib_pow(base);
        auto k = compute_constants(fam);
        auto ctx = make_bounds_context(fam, k);
        for (unsigned long n : {30ul, 60ul, 150ul}) {
            auto a = analytic_point(ctx, mpz_class(n));
            ASSERT_TRUE(a.valid) << a.invalid_reason;
            auto rs = isolate_cubic_roots(fam, n, 256);
            auto logs = root_logs(rs);
            for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(a.L[i].overlaps(logs[i])) << n << " " << i;
            EXPECT_TRUE(a.d[0].overlaps(log(abs(rs.lambda[0] - rs.lambda[1]))));
            EXPECT_TRUE(a.d[1].overlaps(log(abs(rs.lambda[0] - rs.lambda[2]))));
            EXPECT_TRUE(a.d[2].overlaps(log(abs(rs.lambda[1] - rs.lambda[2]))));
            Interval R = regulator(rs, 1, 2);
            EXPECT_TRUE(not_above(a.R_lower, R));
            EXPECT_TRUE(not_above(R, a.R_upper));
            Interval la = log(Interval(fam.An(n), 256)), lb = log(Interval(fam.Bn(n), 256));
            EXPECT_TRUE(not_above(*a.logA_lo, la));
            EXPECT_TRUE(not_above(la, a.logA_hi));
            EXPECT_TRUE(not_above(*a.logB_lo, lb));
            EXPECT_TRUE(not_above(lb, a.logB_hi));
        }
    }
}

TEST(LogyUpper, AgreesWithExactCoefficients) {
    auto fam = fib_pow(2);
    auto k = compute_constants(fam);
    auto ctx = make_bounds_context(fam, k);
    auto a = analytic_point(ctx, mpz_class(20));
    Interval u = logy_upper(a);
    Interval exact = bugy_bound(fam, 20, a.R_upper);
    EXPECT_EQ(less_equal(exact, u), Tri::True);
    EXPECT_NEAR(u.to_double() / exact.to_double(), 1.0, 1e-3);
}

TEST(LogyUpper, QuarticLogGrowth) {
    auto fam = fib_pow(2);
    auto k = compute_constants(fam);
    auto ctx = make_bounds_context(fam, k);
    for (const char* ns : {"1000000", "1000000000000"}) {
        mpz_class n(ns);
        double ln = std::log(n.get_d());
        double ratio = logy_upper(ctx, 2 * n).to_double() / logy_upper(ctx, n).to_double();
        EXPECT_NEAR(ratio / (16 * (1 + std::log(2.0) / ln)), 1.0, 2e-2) << ns;
        double lead = logy_upper_coefficient(k).to_double() * std::pow(n.get_d(), 4) * ln;
        EXPECT_NEAR(logy_upper(ctx, n).to_double() / lead, 1.0, 0.2) << ns;
    }
}

TEST(LogyUpper, RegulatorDominatesCoefficientHeight) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    auto a = analytic_point(ctx, mpz_class(1000));
    EXPECT_GT(a.R_lower.to_double(), 10 * (a.logA_hi + a.logB_hi).to_double());
}

TEST(ExponentBound, TrivialSolutionFarBelow) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    auto a = analytic_point(ctx, mpz_class(20));
    Interval Bb = exponent_bound_B(a, logy_upper(a));
    auto rs = isolate_cubic_roots(fam, 20, 256);
    auto e = unit_decompose(fam.An(20), 1, rs);
    EXPECT_LT(std::max(std::abs(e.b1), std::abs(e.b2)), Bb.lo_double());
    // Fed with log Y = 0 the bound reduces to the coefficient term alone.
    Interval b0 = exponent_bound_B(a, Interval(0L, 320));
    EXPECT_LT(b0.to_double(), 10.0);
    EXPECT_GE(b0.to_double(), 1.0);
}

TEST(ExponentBound, CubicLogGrowth) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    mpz_class n("1000000000");
    auto a1 = analytic_point(ctx, n), a2 = analytic_point(ctx, 2 * n);
    double r = exponent_bound_B(a2, logy_upper(a2)).to_double() / exponent_bound_B(a1, logy_upper(a1)).to_double();
    double ln = std::log(n.get_d());
    EXPECT_NEAR(r / (8 * (1 + std::log(2.0) / ln)), 1.0, 2e-2);
}

TEST(XiChain, ReportInvariant) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    for (const char* ns : {"1000", "100000000000000000000"}) {
        auto s = evaluate_step(ctx, mpz_class(ns));
        ASSERT_TRUE(s.valid);
        for (const auto& r : s.xi) {
            EXPECT_EQ(r.t, 4u);
            EXPECT_EQ(r.D, 2u);
            bool c = less(r.xi_upper_log, r.baker_lower_exponent) == Tri::True;
            EXPECT_EQ(c, r.verdict == Verdict::Contradiction);
        }
    }
}

TEST(UnitChain, ExponentialLowerBoundBeatsUpper) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    auto s = evaluate_step(ctx, mpz_class(1000));
    ASSERT_TRUE(s.unit_chain.has_value());
    EXPECT_EQ(s.unit_chain->verdict, Verdict::Contradiction);
    // The lower bound grows like (beta/alpha)^n up to polynomial factors.
    auto s2 = evaluate_step(ctx, mpz_class(2000));
    double slope = (s2.unit_chain->log_logy_lower.to_double() - s.unit_chain->log_logy_lower.to_double()) / 1000;
    EXPECT_NEAR(slope, std::log(2.0 / ((1 + std::sqrt(5.0)) / 2)), 5e-3);
    auto small = evaluate_step(ctx, mpz_class(20));
    EXPECT_EQ(small.unit_chain->verdict, Verdict::NoContradiction);
}

TEST(DirectLowerBound, WeakLowerBoundStaysBelowUpper) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    for (const char* ns : {"10", "1000", "1000000", "10000000000"}) {
        auto s = evaluate_step(ctx, mpz_class(ns));
        ASSERT_TRUE(s.valid);
        EXPECT_EQ(less_equal(s.direct_logY_lower, s.xi[0].logy_upper), Tri::True);
    }
}

TEST(ComputeN0, FibonacciPow2) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    N0Options opt;
    opt.n_cap = mpz_class("10000000000000000000000000000000000000000");
    auto r = compute_n0(ctx, opt);
    ASSERT_TRUE(r.n0.has_value()) << r.failure;
    EXPECT_EQ(r.window.size(), 11u);
    for (const auto& s : r.window) EXPECT_TRUE(s.contradiction);
    ASSERT_TRUE(r.below.has_value());
    EXPECT_EQ(r.below->n, *r.n0 - 1);
    EXPECT_FALSE(r.below->contradiction);
}

TEST(ComputeN0, DefaultCapReportsNoCrossing) {
    auto fam = fib_pow(2);
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    auto r = compute_n0(ctx);
    EXPECT_FALSE(r.n0.has_value());
    EXPECT_NE(r.failure.find("no crossing"), std::string::npos);
}

TEST(ComputeN0, ChangingBetaChangesN0) {
    N0Options opt;
    opt.n_cap = mpz_class("10000000000000000000000000000000000000000");
    auto f2 = fib_pow(2), f3 = fib_pow(3);
    auto r2 = compute_n0(make_bounds_context(f2, compute_constants(f2)), opt);
    auto r3 = compute_n0(make_bounds_context(f3, compute_constants(f3)), opt);
    ASSERT_TRUE(r2.n0 && r3.n0);
    EXPECT_NE(*r2.n0, *r3.n0);
}

TEST(ComputeN0, EqualModulusFamily) {
    FamilyInstance fam(RecurrentSequence::from_recurrence(Z({1, -2}), Z({1})),
                       RecurrentSequence::from_recurrence(Z({1, -2}), Z({3})));
    auto ctx = make_bounds_context(fam, compute_constants(fam));
    EXPECT_TRUE(ctx.hA.unit_constant);
    N0Options opt;
    opt.n_cap = mpz_class("10000000000000000000000000000000000000000");
    auto r = compute_n0(ctx, opt);
    ASSERT_TRUE(r.n0.has_value()) << r.failure;
    EXPECT_FALSE(r.window.front().unit_chain.has_value());
    // Without c_A the xi forms have three logarithms.
    EXPECT_EQ(r.window.front().xi[1].t, 3u);
}
