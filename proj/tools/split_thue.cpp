// split_thue: verify, bound and solve split Thue families from a JSON config.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "split_thue/report.hpp"

using namespace split_thue;

namespace {

struct Overrides {
    std::optional<unsigned long> n_lo, n_hi, y_max;
    std::optional<long> bits;
    std::string n_cap;
    std::string case_override;
    std::string json_out, csv_out;
    std::string config = "-";
};

std::string read_all(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigParse, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

FamilyConfig load(const Overrides& ov, bool allow_empty_range) {
    std::string text = read_all(ov.config);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error&) {
        return parse_config(text);  // rethrows with line and column
    }
    bool has_bits = j.contains("options") && j["options"].is_object() && j["options"].contains("working_bits");
    FamilyConfig c = config_from_json(j);
    if (!has_bits)
        if (const char* env = std::getenv("SPLIT_THUE_BITS")) c.options.working_bits = std::stol(env);
    if (ov.n_lo) c.options.n_lo = *ov.n_lo;
    if (ov.n_hi) c.options.n_hi = *ov.n_hi;
    if (ov.y_max) c.options.y_max = *ov.y_max;
    if (ov.bits) c.options.working_bits = *ov.bits;
    if (!ov.n_cap.empty()) c.options.n_cap = mpz_class(ov.n_cap);
    if (ov.case_override == "strict") c.case_override = CaseTag::Strict;
    if (ov.case_override == "equal") c.case_override = CaseTag::EqualModulus;
    if (c.options.y_max < 1 || c.options.working_bits < 64)
        throw Error(ErrorKind::ConfigParse, "y_max must be >= 1 and working bits >= 64");
    if (!allow_empty_range && c.options.n_lo > c.options.n_hi)
        throw Error(ErrorKind::ConfigParse, "n_lo > n_hi");
    return c;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Precondition, "cannot write " + path);
    out << text;
}

std::string csv_verify(const json& r) {
    std::ostringstream os;
    os << "n,check,value_lo,value_hi,bound_lo,bound_hi,holds\n";
    for (const auto& e : r["per_n"]) {
        if (!e.contains("checks")) continue;
        for (const auto& c : e["checks"])
            os << e["n"] << ",\"" << c["name"].get<std::string>() << "\"," << c["value"]["lo"].get<std::string>()
               << "," << c["value"]["hi"].get<std::string>() << "," << c["bound"]["lo"].get<std::string>() << ","
               << c["bound"]["hi"].get<std::string>() << "," << c["holds"].get<std::string>() << "\n";
    }
    return os.str();
}

std::string csv_bounds(const json& r) {
    std::ostringstream os;
    os << "n,j,valid,xi_upper_log,baker_lower_exponent,verdict\n";
    for (const auto& s : r["n0"]["trace"]) {
        if (!s["valid"].get<bool>()) {
            os << s["n"].get<std::string>() << ",,false,,,\n";
            continue;
        }
        for (const auto& x : s["xi"])
            os << s["n"].get<std::string>() << "," << x["j"] << ",true," << x["xi_upper_log"]["approx"].get<std::string>()
               << "," << x["baker_lower_exponent"]["approx"].get<std::string>() << ","
               << x["verdict"].get<std::string>() << "\n";
    }
    return os.str();
}

std::string csv_solve(const json& r) {
    std::ostringstream os;
    os << "n,x,y,sign,class\n";
    for (const auto& e : r["results"])
        for (const auto& s : e["solutions"])
            os << e["n"] << "," << s["x"].get<std::string>() << "," << s["y"].get<std::string>() << "," << s["sign"]
               << "," << s["class"].get<std::string>() << "\n";
    return os.str();
}

void print_summary(const std::string& cmd, const json& r) {
    std::cout << "# " << r["config"]["name"].get<std::string>() << " (" << cmd << ")\n\n";
    if (cmd == "solve") {
        std::cout << std::left << std::setw(6) << "n" << std::setw(24) << "x" << std::setw(10) << "y" << std::setw(6)
                  << "sign"
                  << "class\n";
        for (const auto& e : r["results"])
            for (const auto& s : e["solutions"])
                std::cout << std::setw(6) << e["n"].get<unsigned long>() << std::setw(24) << s["x"].get<std::string>()
                          << std::setw(10) << s["y"].get<std::string>() << std::setw(6) << s["sign"].get<int>()
                          << s["class"].get<std::string>() << "\n";
    } else if (cmd == "verify") {
        std::cout << "| n | in scope | solutions | nontrivial | root approx | log approx | root diff |\n"
                     "|---|---|---|---|---|---|---|\n";
        for (const auto& e : r["per_n"]) {
            std::cout << "| " << e["n"] << " | " << (e["in_scope"].get<bool>() ? "yes" : "no") << " | ";
            if (e["in_scope"].get<bool>())
                std::cout << e["solutions"] << " | " << e["nontrivial"].size() << " | "
                          << e["root_approx"].get<std::string>() << " | " << e["log_approx"].get<std::string>()
                          << " | " << e["root_diff"].get<std::string>() << " |\n";
            else
                std::cout << "- | - | - | - | - |\n";
        }
        std::cout << "\nthreshold n = " << r["threshold_n"] << "\n";
    } else {
        const json& n0 = r["n0"];
        if (n0["n0"].is_null())
            std::cout << n0["failure"].get<std::string>() << "\n";
        else
            std::cout << "n0 = " << n0["n0"].get<std::string>() << " (window of " << n0["window"].size()
                      << " steps, trace of " << n0["trace"].size() << " steps)\n";
    }
    std::cout << "\nstatus: " << r["status"].get<std::string>() << "\n";
}

int run(const std::string& cmd, const Overrides& ov) {
    FamilyConfig cfg = load(ov, cmd == "solve");
    RunResult res = cmd == "verify" ? run_verify(cfg) : cmd == "bounds" ? run_bounds(cfg) : run_solve(cfg);
    if (!ov.json_out.empty()) write_file(ov.json_out, canonical(res.report));
    if (!ov.csv_out.empty())
        write_file(ov.csv_out, cmd == "verify"   ? csv_verify(res.report)
                               : cmd == "bounds" ? csv_bounds(res.report)
                                                 : csv_solve(res.report));
    print_summary(cmd, res.report);
    return exit_code(res.status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split Thue family verification"};
    app.require_subcommand(1);
    Overrides ov;
    for (const char* name : {"verify", "bounds", "solve"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("config", ov.config, "family config (JSON path, or - for stdin)");
        sub->add_option("--n-lo", ov.n_lo);
        sub->add_option("--n-hi", ov.n_hi);
        sub->add_option("--y-max", ov.y_max);
        sub->add_option("--bits", ov.bits, "working precision in bits (default: config, $SPLIT_THUE_BITS, 256)");
        sub->add_option("--n-cap", ov.n_cap, "largest n probed by the n0 search");
        sub->add_option("--json-out", ov.json_out);
        sub->add_option("--csv-out", ov.csv_out);
        sub->add_option("--case-override", ov.case_override)->check(CLI::IsMember({"strict", "equal"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, ov);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::ConfigParse: return 1;
            case ErrorKind::HypothesisViolated:
            case ErrorKind::Unsupported: return 2;
            case ErrorKind::BoundViolated: return 3;
            case ErrorKind::PrecisionExhausted: return 5;
            default: return 1;
        }
    }
}
