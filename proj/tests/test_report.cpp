#include <gtest/gtest.h>

#include "split_thue/report.hpp"

using namespace split_thue;

namespace {

const char* kFib = R"({
  "name": "fib",
  "A": { "recurrence": [1, -1, -1], "initial": [1, 2] },
  "B": { "recurrence": [1, -2], "initial": [2] },
  "options": { "n_lo": 2, "n_hi": 6, "y_max": 50 }
})";

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConfigParse);
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, ParsesOptions) {
    auto c = parse_config(kFib);
    EXPECT_EQ(c.name, "fib");
    EXPECT_EQ(c.options.n_lo, 2u);
    EXPECT_EQ(c.options.n_hi, 6u);
    EXPECT_EQ(c.options.y_max, 50u);
    EXPECT_EQ(c.options.working_bits, 256);
    EXPECT_EQ(c.options.n_cap, 10000000);
    auto fam = make_family(c);
    EXPECT_EQ(fam.An(3), 5);
    EXPECT_EQ(fam.Bn(4), 32);
}

TEST(Config, SyntaxErrorsCarryLineAndColumn) {
    std::string msg = config_error("{\n  \"name\": \"x\",\n  \"A\": oops\n}");
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(config_error("").find("line 1"), std::string::npos);
}

TEST(Config, FieldDiagnostics) {
    EXPECT_NE(config_error(R"({"A": {}, "B": {}})").find("name"), std::string::npos);
    EXPECT_NE(config_error(R"({"name": "x", "A": {"recurrence": [1, "z"], "initial": [1]}, "B": {"recurrence": [1, -2], "initial": [1]}})")
                  .find("A.recurrence[1]"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"name": "x", "A": {"recurrence": [1, -1, -1], "initial": [1]}, "B": {"recurrence": [1, -2], "initial": [1]}})")
                  .find("A.initial"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"name": "x", "A": {"recurrence": [1, -2], "initial": [1]}, "B": {"recurrence": [1, -3], "initial": [1]}, "options": {"n_lo": 0}})").find("options.n_lo"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"name": "x", "A": {"recurrence": [1, -2], "initial": [1]}, "B": {"recurrence": [1, -3], "initial": [1]}, "options": {"n_lo": 5, "n_hi": 4}})").find("n_lo > n_hi"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"name": "x", "A": {"recurrence": [1, -2], "initial": [1]}, "B": {"recurrence": [1, -3], "initial": [1]}, "options": {"speed": 1}})").find("unknown option"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"name": "x", "A": {"recurrence": [1, -2], "initial": [1]}, "B": {"recurrence": [1, -3], "initial": [1]}, "case_override": "maybe"})").find("case_override"),
              std::string::npos);
}

TEST(Config, ExplicitRootsMatchRecurrence) {
    // F_{n+2} = c phi^n + c' psi^n with c, c' = 1/2 +- 3 sqrt(5)/10, roots of 5x^2 - 5x - 1.
    auto j = json::parse(R"({
      "recurrence": [1, -1, -1], "initial": [1, 2],
      "roots": [
        {"minpoly": [1, -1, -1], "enclosure": ["1.6", "1.7"],
         "coeff_poly": [{"minpoly": [5, -5, -1], "enclosure": ["1.1", "1.2"]}]},
        {"minpoly": [1, -1, -1], "enclosure": ["-0.7", "-0.6"],
         "coeff_poly": [{"minpoly": [5, -5, -1], "enclosure": ["-0.2", "-0.1"]}]}
      ]})");
    auto explicit_seq = sequence_from_json(j, "A");
    auto rec = RecurrentSequence::from_recurrence({1, -1, -1}, {1, 2});
    for (unsigned long n = 0; n <= 30; ++n) EXPECT_EQ(explicit_seq.eval_exact(n, {}), rec.eval_exact(n, {})) << n;
    j["roots"][0]["coeff_poly"][0]["enclosure"] = json::array({"1.0", "1.1"});
    EXPECT_THROW(sequence_from_json(j, "A"), Error);
}

TEST(Serialization, IntervalRoundTripIsExact) {
    for (mpfr_prec_t p : {64, 256, 1000}) {
        Interval v = log(Interval(3L, p)) / Interval(7L, p);
        Interval back = interval_from_json(to_json(v));
        EXPECT_EQ(back.prec(), p);
        EXPECT_TRUE(mpfr_equal_p(back.lo().get(), v.lo().get()));
        EXPECT_TRUE(mpfr_equal_p(back.hi().get(), v.hi().get()));
    }
    Interval zero(0L, 64);
    EXPECT_TRUE(interval_from_json(to_json(zero)).is_point());
}

TEST(Reports, SolveListsOrbitAndIsDeterministic) {
    auto c = parse_config(kFib);
    c.options.n_lo = c.options.n_hi = 3;
    auto r1 = run_solve(c), r2 = run_solve(c);
    EXPECT_EQ(canonical(r1.report), canonical(r2.report));
    EXPECT_EQ(r1.status, "ok");
    ASSERT_EQ(r1.report["results"].size(), 1u);
    EXPECT_EQ(r1.report["results"][0]["solutions"].size(), 8u);
    EXPECT_EQ(json::parse(canonical(r1.report)), r1.report);
}

TEST(Reports, SolveSmallYStaysInBox) {
    auto c = parse_config(kFib);
    c.options.y_max = 1;
    auto r = run_solve(c);
    for (const auto& e : r.report["results"])
        for (const auto& s : e["solutions"]) {
            long y = std::stol(s["y"].get<std::string>());
            EXPECT_LE(std::abs(y), 1);
        }
}

TEST(Reports, SolveEmptyRange) {
    auto c = parse_config(kFib);
    c.options.n_lo = 5;
    c.options.n_hi = 4;
    auto r = run_solve(c);
    EXPECT_TRUE(r.report["results"].empty());
    EXPECT_EQ(exit_code(r.status), 0);
}

TEST(Reports, SolveFlagsSmallPair) {
    auto c = parse_config(kFib);
    c.options.n_lo = c.options.n_hi = 1;
    auto r = run_solve(c);
    EXPECT_EQ(r.status, "nontrivial");
    EXPECT_EQ(exit_code(r.status), 4);
}

TEST(Reports, VerifyIsDeterministicAndRoundTrips) {
    auto c = parse_config(kFib);
    auto r1 = run_verify(c), r2 = run_verify(c);
    std::string s1 = canonical(r1.report);
    EXPECT_EQ(s1, canonical(r2.report));
    EXPECT_EQ(json::parse(s1), r1.report);
    EXPECT_EQ(r1.status, "ok");
    EXPECT_EQ(r1.report["nontrivial"], 0);
    for (const auto& e : r1.report["per_n"]) EXPECT_EQ(e["root_approx"], "true");
    // Changing the working precision changes the report.
    c.options.working_bits = 320;
    EXPECT_NE(s1, canonical(run_verify(c).report));
}

TEST(Reports, VerifyMarksHypothesisViolation) {
    auto c = parse_config(R"({"name": "same", "A": {"recurrence": [1, -2], "initial": [1]},
                                "B": {"recurrence": [1, -2], "initial": [1]}, "options": {"n_lo": 1, "n_hi": 4, "y_max": 5}})");
    auto r = run_verify(c);
    EXPECT_EQ(r.status, "hypothesis-violated");
    EXPECT_EQ(exit_code(r.status), 2);
    for (const auto& e : r.report["per_n"]) EXPECT_FALSE(e["in_scope"].get<bool>());
}

TEST(Reports, BoundsTinyCapReportsNoCrossing) {
    auto c = parse_config(kFib);
    c.options.n_cap = 100;
    auto r = run_bounds(c);
    EXPECT_EQ(r.status, "no-crossing");
    EXPECT_TRUE(r.report["n0"]["n0"].is_null());
    EXPECT_NE(r.report["n0"]["failure"].get<std::string>().find("100"), std::string::npos);
}

TEST(Reports, BoundsEqualModulusRecordsConditions) {
    auto c = parse_config(R"({"name": "eq", "A": {"recurrence": [1, -2], "initial": [1]},
                              "B": {"recurrence": [1, -2], "initial": [3]},
                              "options": {"n_lo": 2, "n_hi": 5, "n_cap": "10000000000000000000000000000000000000000"}})");
    auto r = run_bounds(c);
    EXPECT_EQ(r.status, "ok");
    EXPECT_EQ(r.report["hypotheses"]["case"], "equal_modulus");
    for (const auto& e : r.report["hypotheses"]["per_n"]) {
        EXPECT_TRUE(e.contains("condition"));
        EXPECT_GE(e["condition"].get<int>(), 1);
        EXPECT_TRUE(e["abs_c_differ"].get<bool>());
    }
    EXPECT_FALSE(r.report["n0"]["n0"].is_null());
    EXPECT_EQ(canonical(r.report), canonical(run_bounds(c).report));
}

TEST(Reports, CaseOverrideIsApplied) {
    auto c = parse_config(kFib);
    c.case_override = CaseTag::EqualModulus;
    auto fam = make_family(c);
    EXPECT_EQ(fam.case_tag(), CaseTag::EqualModulus);
    EXPECT_EQ(fam.detected_case(), CaseTag::Strict);
    EXPECT_EQ(to_json(c)["case_override"], "equal");
}
