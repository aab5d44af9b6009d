#include <gtest/gtest.h>

#include <cmath>

#include "split_thue/algebraic.hpp"

using namespace split_thue;

TEST(Interval, ArithmeticEnclosesTrueValue) {
    Interval third = Interval(1L, 128) / Interval(3L, 128);
    EXPECT_TRUE(third.contains(mpq_class(1, 3)));
    Interval x = third * Interval(3L, 128);
    EXPECT_TRUE(x.contains(mpz_class(1)));
    EXPECT_LT(x.log2_width(), -120);
}

TEST(Interval, LogOfNonPositiveThrows) {
    EXPECT_THROW(log(Interval(0L, 64)), Error);
    EXPECT_THROW(Interval(1L, 64) / Interval(mpq_class(-1), mpq_class(1), 64), Error);
}

TEST(Interval, UniqueInteger) {
    mpz_class z;
    EXPECT_TRUE(Interval(mpq_class(29, 10), mpq_class(31, 10), 64).unique_integer(z));
    EXPECT_EQ(z, 3);
    EXPECT_FALSE(Interval(mpq_class(21, 10), mpq_class(29, 10), 64).unique_integer(z));
}

TEST(Polynomial, GcdAndSquarefree) {
    // (x-1)^2 (x+2)
    QPoly p{mpq_class(2), mpq_class(-3), mpq_class(0), mpq_class(1)};
    auto sf = squarefree_decomposition(p);
    ASSERT_EQ(sf.size(), 2u);
    EXPECT_EQ(sf[0].first, (QPoly{mpq_class(2), mpq_class(1)}));
    EXPECT_EQ(sf[0].second, 1);
    EXPECT_EQ(sf[1].first, (QPoly{mpq_class(-1), mpq_class(1)}));
    EXPECT_EQ(sf[1].second, 2);
}

TEST(Polynomial, PowerSumsOfGoldenPolynomial) {
    // Roots of x^2 - x - 1: power sums are Lucas numbers.
    auto p = power_sums(QPoly{mpq_class(-1), mpq_class(-1), mpq_class(1)}, 8);
    long lucas[] = {2, 1, 3, 4, 7, 11, 18, 29};
    for (int i = 0; i < 8; ++i) EXPECT_EQ(p[static_cast<std::size_t>(i)], lucas[i]);
}

TEST(Roots, GoldenRatioAndConjugate) {
    ZPoly f{mpz_class(-1), mpz_class(-1), mpz_class(1)};
    auto r = isolate_roots(f, {});
    ASSERT_EQ(r.size(), 2u);
    int found = 0;
    for (const auto& b : r) {
        EXPECT_TRUE(b.is_real());
        double v = b.re.to_double();
        if (std::abs(v - (1 + std::sqrt(5.0)) / 2) < 1e-12) ++found;
        if (std::abs(v - (1 - std::sqrt(5.0)) / 2) < 1e-12) ++found;
    }
    EXPECT_EQ(found, 2);
}

TEST(Roots, ImaginaryUnit) {
    auto r = isolate_roots(ZPoly{mpz_class(1), mpz_class(0), mpz_class(1)}, {});
    ASSERT_EQ(r.size(), 2u);
    for (const auto& b : r) {
        EXPECT_FALSE(b.is_real());
        EXPECT_TRUE(b.re.contains_zero());
        EXPECT_NEAR(std::abs(b.im.to_double()), 1.0, 1e-15);
    }
}

TEST(Roots, RefineRealRoot) {
    ZPoly f{mpz_class(-2), mpz_class(0), mpz_class(1)};
    Interval r = refine_real_root(f, Interval(mpq_class(1), mpq_class(2), 64), 200);
    EXPECT_LT(r.log2_width(), -199);
    EXPECT_TRUE((sqr(r)).contains(mpz_class(2)));
}

TEST(Algebraic, SqrtTwoPlusSqrtThree) {
    auto s2 = AlgebraicNumber::make(ZPoly{mpz_class(-2), mpz_class(0), mpz_class(1)},
                                    CBox(Interval(mpq_class(1), mpq_class(2), 64)));
    auto s3 = AlgebraicNumber::make(ZPoly{mpz_class(-3), mpz_class(0), mpz_class(1)},
                                    CBox(Interval(mpq_class(1), mpq_class(2), 64)));
    auto sum = field_arith(s2, s3, FieldOp::Add);
    // x^4 - 10x^2 + 1
    EXPECT_EQ(sum.min_poly(), (ZPoly{mpz_class(1), mpz_class(0), mpz_class(-10), mpz_class(0), mpz_class(1)}));
    EXPECT_TRUE(sum.is_real());
    EXPECT_NEAR(sum.real_value(60).to_double(), std::sqrt(2.0) + std::sqrt(3.0), 1e-14);
    auto prod = field_arith(s2, s2, FieldOp::Mul);
    ASSERT_TRUE(prod.as_rational());
    EXPECT_EQ(*prod.as_rational(), 2);
    EXPECT_TRUE(field_arith(s2, s2, FieldOp::Sub).is_zero());
}

TEST(Algebraic, HeightAndReducibility) {
    auto phi = AlgebraicNumber::make(ZPoly{mpz_class(-1), mpz_class(-1), mpz_class(1)},
                                     CBox(Interval(mpq_class(1), mpq_class(2), 64)));
    EXPECT_NEAR(phi.height().to_double(), std::log((1 + std::sqrt(5.0)) / 2) / 2, 1e-15);
    EXPECT_NEAR(AlgebraicNumber::rational(mpq_class(3, 7)).height().to_double(), std::log(7.0), 1e-15);
    EXPECT_THROW(AlgebraicNumber::make(ZPoly{mpz_class(-1), mpz_class(0), mpz_class(1)},
                                       CBox(Interval(mpq_class(0), mpq_class(2), 64))),
                 Error);
}

TEST(Algebraic, PolyInRoot) {
    auto phi = AlgebraicNumber::make(ZPoly{mpz_class(-1), mpz_class(-1), mpz_class(1)},
                                     CBox(Interval(mpq_class(1), mpq_class(2), 64)));
    // (2 phi - 1) = sqrt 5
    auto s5 = AlgebraicNumber::poly_in(QPoly{mpq_class(-1), mpq_class(2)}, phi);
    EXPECT_EQ(s5.min_poly(), (ZPoly{mpz_class(-5), mpz_class(0), mpz_class(1)}));
    EXPECT_GT(s5.sign(), 0);
    // phi^2 - phi = 1
    auto one = AlgebraicNumber::poly_in(QPoly{mpq_class(0), mpq_class(-1), mpq_class(1)}, phi);
    ASSERT_TRUE(one.as_rational());
    EXPECT_EQ(*one.as_rational(), 1);
}
