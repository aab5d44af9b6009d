#pragma once

// Family configs and canonical JSON run reports. Requires nlohmann/json
// (vendor/json.hpp) on the include path.

#include <cstdlib>
#include <sstream>
#include <string>

#include "json.hpp"
#include "split_thue/effective_bounds.hpp"
#include "split_thue/thue_solver.hpp"

namespace split_thue {

using json = nlohmann::json;

struct RunOptions {
    unsigned long n_lo = 1, n_hi = 12, y_max = 1000;
    long working_bits = 256;
    mpz_class n_cap = 10000000;
};

struct FamilyConfig {
    std::string name;
    json A, B;
    RunOptions options;
    std::optional<CaseTag> case_override;
};

namespace detail {

[[noreturn]] inline void config_error(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::ConfigParse, path + ": " + msg);
}

inline mpz_class json_integer(const json& v, const std::string& path) {
    if (v.is_number_integer()) return v.is_number_unsigned() ? mpz_class(v.get<unsigned long>()) : mpz_class(v.get<long>());
    if (v.is_string()) {
        mpz_class z;
        if (z.set_str(v.get<std::string>(), 10) == 0) return z;
    }
    config_error(path, "expected an integer");
}

inline mpq_class json_rational(const json& v, const std::string& path) {
    if (v.is_number_integer()) return mpq_class(json_integer(v, path));
    if (!v.is_string()) config_error(path, "expected a rational as integer or string");
    std::string s = v.get<std::string>();
    auto dot = s.find('.');
    mpq_class q;
    if (dot == std::string::npos) {
        if (q.set_str(s, 10) != 0) config_error(path, "malformed rational '" + s + "'");
        q.canonicalize();
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class num, den;
    if (num.set_str(digits, 10) != 0) config_error(path, "malformed decimal '" + s + "'");
    mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
    q = mpq_class(num, den);
    q.canonicalize();
    return q;
}

inline std::vector<mpz_class> json_integers(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) config_error(path, "expected a non-empty array of integers");
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_integer(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

/// Coefficients are listed leading first in JSON; ZPoly stores them constant first.
inline ZPoly json_poly(const json& v, const std::string& path) {
    auto c = json_integers(v, path);
    std::reverse(c.begin(), c.end());
    return ZPoly(c);
}

inline AlgebraicNumber json_algebraic(const json& v, const std::string& path, const PrecisionBudget& budget) {
    if (!v.is_object()) return AlgebraicNumber::rational(json_rational(v, path));
    if (!v.contains("minpoly") || !v.contains("enclosure")) config_error(path, "expected {minpoly, enclosure}");
    const json& e = v["enclosure"];
    if (!e.is_array() || e.size() != 2) config_error(path + ".enclosure", "expected [lo, hi]");
    mpq_class lo = json_rational(e[0], path + ".enclosure[0]"), hi = json_rational(e[1], path + ".enclosure[1]");
    if (lo > hi) config_error(path + ".enclosure", "lo > hi");
    return AlgebraicNumber::make(json_poly(v["minpoly"], path + ".minpoly"), CBox(Interval(lo, hi, 128)), budget);
}

inline unsigned long json_positive(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long>() <= 0) config_error(path, "expected a positive integer");
    return v.get<unsigned long>();
}

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

namespace detail {

/// Structural checks only; root data is validated when the sequence is built.
inline void check_sequence_json(const json& v, const std::string& path) {
    if (!v.is_object()) config_error(path, "expected an object");
    for (const char* key : {"recurrence", "initial"})
        if (!v.contains(key)) config_error(path, std::string("missing field '") + key + "'");
    auto rec = json_integers(v["recurrence"], path + ".recurrence");
    auto init = json_integers(v["initial"], path + ".initial");
    if (init.size() + 1 != rec.size())
        config_error(path + ".initial", "needs " + std::to_string(rec.size() - 1) + " values");
}

}  // namespace detail

inline RecurrentSequence sequence_from_json(const json& v, const std::string& path, const PrecisionBudget& budget = {}) {
    detail::check_sequence_json(v, path);
    auto rec = detail::json_integers(v["recurrence"], path + ".recurrence");
    auto init = detail::json_integers(v["initial"], path + ".initial");
    if (!v.contains("roots")) return RecurrentSequence::from_recurrence(rec, init, budget);
    const json& roots = v["roots"];
    if (!roots.is_array()) detail::config_error(path + ".roots", "expected an array");
    std::vector<RootSpec> specs;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        std::string rp = path + ".roots[" + std::to_string(i) + "]";
        const json& r = roots[i];
        if (!r.is_object() || !r.contains("minpoly") || !r.contains("enclosure") || !r.contains("coeff_poly"))
            detail::config_error(rp, "expected {minpoly, enclosure, coeff_poly}");
        const json& e = r["enclosure"];
        if (!e.is_array() || e.size() != 2) detail::config_error(rp + ".enclosure", "expected [lo, hi]");
        RootSpec s{detail::json_poly(r["minpoly"], rp + ".minpoly"),
                   CBox(Interval(detail::json_rational(e[0], rp + ".enclosure[0]"),
                                 detail::json_rational(e[1], rp + ".enclosure[1]"), 128)),
                   {}};
        if (!r["coeff_poly"].is_array()) detail::config_error(rp + ".coeff_poly", "expected an array");
        for (std::size_t k = 0; k < r["coeff_poly"].size(); ++k)
            s.coeff_poly.push_back(detail::json_algebraic(r["coeff_poly"][k],
                                                          rp + ".coeff_poly[" + std::to_string(k) + "]", budget));
        specs.push_back(std::move(s));
    }
    return RecurrentSequence::from_explicit(rec, init, specs, budget);
}

inline FamilyConfig config_from_json(const json& j) {
    if (!j.is_object()) detail::config_error("$", "expected an object");
    FamilyConfig c;
    if (!j.contains("name") || !j["name"].is_string()) detail::config_error("name", "expected a string");
    c.name = j["name"].get<std::string>();
    for (const char* key : {"A", "B"}) {
        if (!j.contains(key)) detail::config_error(key, "missing sequence");
        detail::check_sequence_json(j[key], key);
    }
    c.A = j["A"];
    c.B = j["B"];
    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) detail::config_error("options", "expected an object");
        for (const auto& [key, val] : o.items()) {
            std::string p = "options." + key;
            if (key == "n_lo") c.options.n_lo = detail::json_positive(val, p);
            else if (key == "n_hi") c.options.n_hi = detail::json_positive(val, p);
            else if (key == "y_max") c.options.y_max = detail::json_positive(val, p);
            else if (key == "working_bits") c.options.working_bits = static_cast<long>(detail::json_positive(val, p));
            else if (key == "n_cap") {
                c.options.n_cap = detail::json_integer(val, p);
                if (c.options.n_cap <= 0) detail::config_error(p, "expected a positive integer");
            } else detail::config_error(p, "unknown option");
        }
        if (c.options.n_lo > c.options.n_hi) detail::config_error("options", "n_lo > n_hi");
    }
    if (j.contains("case_override")) {
        std::string v = j["case_override"].is_string() ? j["case_override"].get<std::string>() : "";
        if (v == "strict") c.case_override = CaseTag::Strict;
        else if (v == "equal") c.case_override = CaseTag::EqualModulus;
        else detail::config_error("case_override", "expected \"strict\" or \"equal\"");
    }
    return c;
}

inline FamilyConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigParse, detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    return config_from_json(j);
}

inline FamilyInstance make_family(const FamilyConfig& c) {
    FamilyInstance fam(sequence_from_json(c.A, "A"), sequence_from_json(c.B, "B"));
    if (c.case_override) fam.override_case(c.case_override);
    return fam;
}

// ---- serialization ----

/// Endpoints in exact hexadecimal floating point, with a short decimal for reading.
inline json to_json(const Interval& v) {
    auto hex = [](const Float& f) {
        char* s = nullptr;
        mpfr_asprintf(&s, "%Ra", f.get());
        std::string out(s);
        mpfr_free_str(s);
        return out;
    };
    return json{{"lo", hex(v.lo())}, {"hi", hex(v.hi())}, {"bits", v.prec()}, {"approx", v.to_string(12)}};
}

inline Interval interval_from_json(const json& j) {
    mpfr_prec_t p = j.at("bits").get<mpfr_prec_t>();
    Float lo(p), hi(p);
    if (mpfr_set_str(lo.get(), j.at("lo").get<std::string>().c_str(), 0, MPFR_RNDD) != 0 ||
        mpfr_set_str(hi.get(), j.at("hi").get<std::string>().c_str(), 0, MPFR_RNDU) != 0)
        throw Error(ErrorKind::ConfigParse, "malformed interval endpoint");
    return Interval(std::move(lo), std::move(hi));
}

inline std::string to_string(Tri t) { return t == Tri::True ? "true" : t == Tri::False ? "false" : "unknown"; }

inline json to_json(const RunOptions& o) {
    return json{{"n_lo", o.n_lo}, {"n_hi", o.n_hi}, {"y_max", o.y_max}, {"working_bits", o.working_bits},
                {"n_cap", o.n_cap.get_str()}};
}

inline json to_json(const FamilyConfig& c) {
    json j{{"name", c.name}, {"A", c.A}, {"B", c.B}, {"options", to_json(c.options)}};
    if (c.case_override) j["case_override"] = *c.case_override == CaseTag::Strict ? "strict" : "equal";
    return j;
}

inline json to_json(const BoundCheck& c) {
    return json{{"name", c.name}, {"value", to_json(c.value)}, {"bound", to_json(c.bound)}, {"holds", to_string(c.holds)}};
}

inline json to_json(const ApproxConstants& k) {
    return json{{"C", to_json(k.C)},           {"eps", to_json(k.eps)},         {"eps_fallback", k.eps_fallback},
                {"c1", to_json(k.c1)},         {"c2", to_json(k.c2)},           {"c3", to_json(k.c3)},
                {"c4", to_json(k.c4)},         {"c5", to_json(k.c5)},           {"c6", to_json(k.c6)},
                {"n_min", k.n_min},            {"n_valid", k.n_valid},          {"log_alpha", to_json(k.log_alpha)},
                {"log_beta", to_json(k.log_beta)}, {"d1", k.d1},                {"d2", k.d2},
                {"regulator_limit", to_json(regulator_limit(k))}};
}

inline json to_json(const Solution& s) {
    return json{{"x", s.x.get_str()}, {"y", s.y.get_str()}, {"sign", s.sign},
                {"class", std::string(to_string(s.classification.cls))}, {"orbit", s.classification.orbit}};
}

inline json to_json(const BoundReport& r) {
    json h = json::array();
    for (const auto& [name, v] : r.heights) h.push_back(json{{"arg", name}, {"height", to_json(v)}});
    return json{{"j", r.j},
                {"R_upper", to_json(r.R_upper)},
                {"logy_upper", to_json(r.logy_upper)},
                {"exponent_bound", to_json(r.exponent_bound)},
                {"heights", h},
                {"t", r.t},
                {"D", r.D},
                {"log_B", to_json(r.log_B)},
                {"baker_lower_exponent", to_json(r.baker_lower_exponent)},
                {"xi_upper_log", to_json(r.xi_upper_log)},
                {"verdict", to_string(r.verdict)}};
}

inline json to_json(const UnitChainReport& r) {
    return json{{"log_Delta_lo", to_json(r.log_Delta_lo)},
                {"log_Delta_hi", to_json(r.log_Delta_hi)},
                {"log_T", to_json(r.log_T)},
                {"log_E", to_json(r.log_E)},
                {"log_logy_lower", to_json(r.log_logy_lower)},
                {"log_logy_upper_u1_zero", to_json(r.log_logy_upper_u1_zero)},
                {"u1_zero_excluded", r.u1_zero_excluded},
                {"u1_nonzero_excluded", r.u1_nonzero_excluded},
                {"verdict", to_string(r.verdict)},
                {"note", r.note}};
}

inline json to_json(const NStep& s) {
    json j{{"n", s.n.get_str()}, {"valid", s.valid}, {"contradiction", s.contradiction}};
    if (!s.valid) {
        j["invalid_reason"] = s.invalid_reason;
        return j;
    }
    json xi = json::array();
    for (const auto& r : s.xi) xi.push_back(to_json(r));
    j["xi"] = xi;
    if (s.unit_chain) j["alternative_unit_chain"] = to_json(*s.unit_chain);
    j["logY_lower_direct"] = to_json(s.direct_logY_lower);
    return j;
}

// ---- reports ----

struct RunResult {
    json report;
    /// ok, no-crossing, hypothesis-violated, bound-violated, nontrivial, precision-exhausted.
    std::string status = "ok";
};

inline int exit_code(const std::string& status) {
    if (status == "hypothesis-violated") return 2;
    if (status == "bound-violated") return 3;
    if (status == "nontrivial") return 4;
    if (status == "precision-exhausted") return 5;
    return 0;
}

namespace detail {

inline json hypotheses_json(const FamilyInstance& fam, unsigned long n_lo, unsigned long n_hi) {
    json j{{"case_detected", to_string(fam.detected_case())}, {"case", to_string(fam.case_tag())}};
    json per = json::array();
    for (unsigned long n = n_lo; n <= n_hi; ++n) {
        mpz_class a = fam.An(n), b = fam.Bn(n);
        json e{{"n", n}, {"A", a.get_str()}, {"B", b.get_str()}, {"range_condition", bullet_condition(a, b)}};
        if (fam.case_tag() == CaseTag::EqualModulus) {
            auto m = equal_modulus_check(fam, n);
            e["abs_c_differ"] = m.abs_c_differ;
            e["condition"] = m.condition;
            e["log_gap_sign"] = m.log_gap_sign;
        }
        per.push_back(e);
    }
    j["per_n"] = per;
    return j;
}

inline RunResult finish(json report, std::string status) {
    report["status"] = status;
    return {std::move(report), std::move(status)};
}

}  // namespace detail

inline RunResult run_solve(const FamilyConfig& cfg) {
    FamilyInstance fam = make_family(cfg);
    json report{{"command", "solve"}, {"config", to_json(cfg)}};
    json per = json::array();
    std::size_t nontrivial = 0;
    for (unsigned long n = cfg.options.n_lo; n <= cfg.options.n_hi; ++n) {
        auto sols = solve_bruteforce(fam, n, cfg.options.y_max);
        json list = json::array();
        for (const auto& s : sols) {
            list.push_back(to_json(s));
            if (s.classification.cls == SolutionClass::Nontrivial) ++nontrivial;
        }
        per.push_back(json{{"n", n}, {"A", fam.An(n).get_str()}, {"B", fam.Bn(n).get_str()}, {"solutions", list}});
    }
    report["results"] = per;
    report["nontrivial"] = nontrivial;
    return detail::finish(std::move(report), nontrivial ? "nontrivial" : "ok");
}

inline RunResult run_verify(const FamilyConfig& cfg) {
    FamilyInstance fam = make_family(cfg);
    const auto& o = cfg.options;
    json report{{"command", "verify"}, {"config", to_json(cfg)}};
    report["hypotheses"] = detail::hypotheses_json(fam, o.n_lo, o.n_hi);
    auto rep = verify_family(fam, o.n_lo, o.n_hi, o.y_max, o.working_bits);
    unsigned long threshold = rep.constants ? rep.constants->n_valid : 0;
    if (rep.constants) report["constants"] = to_json(*rep.constants);
    report["threshold_n"] = threshold;
    json per = json::array();
    bool violated = false;
    std::size_t in_scope = 0;
    for (const auto& v : rep.per_n) {
        json e{{"n", v.n}, {"in_scope", v.in_scope}};
        if (!v.in_scope) {
            e["reason"] = v.out_of_scope_reason;
            per.push_back(e);
            continue;
        }
        ++in_scope;
        json nt = json::array();
        for (const auto& s : v.solutions)
            if (s.classification.cls == SolutionClass::Nontrivial) nt.push_back(to_json(s));
        json checks = json::array();
        for (const auto& c : v.root_checks) checks.push_back(to_json(c));
        for (const auto& c : v.diff_checks) checks.push_back(to_json(c));
        json scaled = json::array();
        if (v.log_report) {
            for (const auto& c : v.log_report->checks) checks.push_back(to_json(c));
            for (const auto& s : v.log_report->scaled) scaled.push_back(to_json(s));
        }
        e["solutions"] = v.solutions.size();
        e["orbit_complete"] = v.orbit_complete;
        e["nontrivial"] = nt;
        e["root_approx"] = to_string(v.root_approx);
        e["log_approx"] = to_string(v.log_approx);
        e["root_diff"] = to_string(v.root_diff);
        e["checks"] = checks;
        e["log_residual_scaled"] = scaled;
        e["units_ok"] = v.units_ok;
        e["max_unit_residual"] = v.max_unit_residual;
        e["errors"] = v.errors;
        if (v.n >= threshold && (v.root_approx == Tri::False || v.log_approx == Tri::False || v.root_diff == Tri::False))
            violated = true;
        per.push_back(e);
    }
    report["per_n"] = per;
    report["nontrivial"] = rep.nontrivial;
    report["errors"] = rep.errors;
    report["note"] = "the brute force covers |y| <= y_max only; it is a falsification probe, not a proof";
    std::string status = "ok";
    if (in_scope == 0 && !rep.per_n.empty()) status = "hypothesis-violated";
    if (violated) status = "bound-violated";
    if (rep.nontrivial) status = "nontrivial";
    return detail::finish(std::move(report), status);
}

inline RunResult run_bounds(const FamilyConfig& cfg) {
    FamilyInstance fam = make_family(cfg);
    const auto& o = cfg.options;
    json report{{"command", "bounds"}, {"config", to_json(cfg)}};
    report["hypotheses"] = detail::hypotheses_json(fam, o.n_lo, o.n_hi);
    auto k = compute_constants(fam);
    report["constants"] = to_json(k);
    auto ctx = make_bounds_context(fam, k);
    report["context"] = json{{"D", ctx.D},
                             {"h_alpha", to_json(ctx.h_alpha)},
                             {"h_beta", to_json(ctx.h_beta)},
                             {"n_start", ctx.n_start.get_str()}};
    N0Options opt;
    opt.n_cap = o.n_cap;
    auto r = compute_n0(ctx, opt);
    json res{{"n_cap", o.n_cap.get_str()}};
    if (r.n0) {
        res["n0"] = r.n0->get_str();
    } else {
        res["n0"] = nullptr;
        res["failure"] = r.failure;
    }
    if (r.below) res["below"] = to_json(*r.below);
    json window = json::array(), trace = json::array();
    for (const auto& s : r.window) window.push_back(to_json(s));
    for (const auto& s : r.trace) trace.push_back(to_json(s));
    res["window"] = window;
    res["trace"] = trace;
    report["n0"] = res;
    report["flags"] = json::array({"xi-tables-rederived", "xi-shift-exponent-dependent", "c5-cubed"});
    return detail::finish(std::move(report), r.n0 ? "ok" : "no-crossing");
}

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace split_thue
