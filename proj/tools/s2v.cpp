// s2v: exact Stirling numbers, 2-adic valuations, congruence-class trees,
// and machine verification of the known valuation identities.
//
// Exit codes: 0 success / verification pass, 1 verification fail or internal
// error, 2 usage error, 3 precision or resource cap exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "s2v/congruence_class.hpp"
#include "s2v/errors.hpp"
#include "s2v/integer.hpp"
#include "s2v/level_tree.hpp"
#include "s2v/stirling.hpp"
#include "s2v/stirling5.hpp"
#include "s2v/verify.hpp"

namespace {

struct Options {
    unsigned precision_cap = s2v::kDefaultPrecisionCap;
    std::uint64_t sample_count = 64;
    unsigned jobs = 1;
    std::string format = "plain";
    std::string output;
};

// The only environment consultation: a directory override for relative
// output paths.
std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative())
        if (const char* dir = std::getenv("S2V_OUTPUT_DIR"))
            return std::filesystem::path(dir) / p;
    return p;
}

// Writes `text` to the resolved output path when one is set (echoing
// `summary` to stdout), otherwise sends `text` itself to stdout.
int emit(const std::string& text, const std::string& output,
         const std::string& summary) {
    if (output.empty()) {
        std::cout << text;
        return 0;
    }
    const std::filesystem::path path = resolve_output(output);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "s2v: cannot open " << path.string() << " for writing\n";
        return 1;
    }
    file << text;
    std::cout << summary;
    return 0;
}

s2v::Integer parse_natural(const std::string& text) {
    s2v::Integer n;
    try {
        n = s2v::Integer(text, 10);
    } catch (const std::invalid_argument&) {
        throw s2v::PreconditionViolation("not a decimal natural: " + text);
    }
    if (sgn(n) < 0)
        throw s2v::PreconditionViolation("expected a natural number, got " + text);
    return n;
}

int run_stirling(std::uint64_t n, std::uint64_t k, const std::string& kind,
                 std::uint64_t valuation_p) {
    const s2v::Integer value =
        kind == "first" ? s2v::stirling1_signed(n, k) : s2v::stirling2(n, k);
    if (valuation_p)
        std::cout << s2v::vp(value, s2v::Integer(static_cast<unsigned long>(valuation_p))).str() << "\n";
    else
        std::cout << value.get_str() << "\n";
    return 0;
}

int run_v2s5(const std::string& n_text, const std::string& to_text,
             const Options& opt) {
    const s2v::Integer n = parse_natural(n_text);
    if (sgn(n) == 0)
        throw s2v::PreconditionViolation("v2s5: need n >= 1");
    if (to_text.empty()) {
        std::cout << s2v::v2_stirling5(n, opt.precision_cap).str() << "\n";
        return 0;
    }
    const s2v::Integer to = parse_natural(to_text);
    if (to < n)
        throw s2v::PreconditionViolation("v2s5: --to must not precede n");
    std::ostringstream csv;
    csv << "n,k,valuation\n";
    for (s2v::Integer i = n; i <= to; ++i)
        csv << i.get_str() << ",5," << s2v::v2_stirling5(i, opt.precision_cap).str()
            << "\n";
    return emit(csv.str(), opt.output, "");
}

std::string tree_summary(const s2v::LevelTree& tree, const std::string& policy_line) {
    std::ostringstream os;
    os << "tree k=" << tree.k << " levels=1.." << tree.max_level
       << " nodes=" << tree.nodes.size() << "\n";
    os << policy_line << "\n";
    for (unsigned m = tree.root_level; m <= tree.max_level; ++m) {
        os << "level " << m << ":";
        const auto& ids = s2v::m_level(tree, m);
        if (ids.empty()) os << " none";
        for (const auto& id : ids) os << " " << id.label();
        os << "\n";
    }
    for (const auto& [id, st] : tree.nodes)
        os << id.label() << ": " << status_label(st)
           << (st.certainty == s2v::Certainty::Exact ? " [exact]" : " [empirical]")
           << "\n";
    return os.str();
}

int run_tree(std::uint64_t k, unsigned max_level, bool exact,
             const Options& opt) {
    s2v::ClassifyPolicy policy;
    std::string policy_line;
    if (exact) {
        policy = s2v::ClassifyPolicy::exact_periodic(opt.precision_cap);
        policy_line =
            "policy exact precision-cap=" + std::to_string(opt.precision_cap);
    } else {
        policy = s2v::ClassifyPolicy::sampled(opt.sample_count);
        policy_line =
            "policy sampled samples=" + std::to_string(opt.sample_count);
    }
    const s2v::LevelTree tree = s2v::build_level_tree(k, max_level, policy);
    const std::string summary = tree_summary(tree, policy_line);
    std::string doc;
    if (opt.format == "dot")
        doc = s2v::export_tree(tree, s2v::TreeFormat::Dot);
    else if (opt.format == "json")
        doc = s2v::export_tree(tree, s2v::TreeFormat::Json);
    else
        doc = summary;
    return emit(doc, opt.output, summary);
}

struct VerifyRanges {
    std::uint64_t i_max = 0;
    std::uint64_t n_max = 0;
    std::uint64_t k_max = 0;
    std::uint64_t r_max = 0;
    std::uint64_t m_max = 0;
    std::uint64_t shift_max = 0;
    std::uint64_t max_level = 0;
};

std::uint64_t pick(std::uint64_t flag, std::uint64_t fallback) {
    return flag ? flag : fallback;
}

s2v::Report run_statement(const std::string& name, const VerifyRanges& r,
                          const Options& opt) {
    if (name == "lemma-2-1")
        return s2v::verify_lemma_2_1(static_cast<unsigned>(pick(r.shift_max, 8)),
                                     static_cast<unsigned>(pick(r.r_max, 9)),
                                     static_cast<unsigned>(pick(r.m_max, 8)),
                                     static_cast<unsigned>(pick(r.i_max, 9)));
    if (name == "theorem-2-7")
        return s2v::verify_theorem_2_7(pick(r.i_max, 100000), opt.jobs);
    if (name == "wannemacker")
        return s2v::verify_wannemacker(static_cast<unsigned>(pick(r.n_max, 10)));
    if (name == "theorem-3-2")
        return s2v::verify_theorem_3_2(static_cast<unsigned>(pick(r.n_max, 10)));
    if (name == "theorem-3-3")
        return s2v::verify_theorem_3_3(static_cast<unsigned>(pick(r.n_max, 10)));
    if (name == "level-constants")
        return s2v::verify_level_constants(
            static_cast<unsigned>(pick(r.max_level, 8)), opt.precision_cap);
    if (name == "low-residues")
        return s2v::verify_low_residues(pick(r.n_max, 10000), opt.jobs);
    return s2v::verify_digit_identity(pick(r.k_max, 1000000), opt.jobs);
}

int run_verify(const std::string& statement, const VerifyRanges& ranges,
               const Options& opt) {
    static const std::vector<std::string> kAll = {
        "lemma-2-1",    "theorem-2-7",     "wannemacker", "theorem-3-2",
        "theorem-3-3",  "level-constants", "low-residues", "digit-identity"};
    std::vector<s2v::Report> reports;
    if (statement == "all")
        for (const auto& name : kAll) reports.push_back(run_statement(name, ranges, opt));
    else
        reports.push_back(run_statement(statement, ranges, opt));

    const std::string json = reports.size() == 1 ? s2v::report_json(reports.front())
                                                 : s2v::reports_json(reports);
    std::ostringstream summary;
    bool all_pass = true;
    for (const auto& rep : reports) {
        summary << rep.statement_id << ": " << (rep.pass() ? "pass" : "fail")
                << " checked=" << rep.checked_count
                << " failures=" << rep.failure_count << "\n";
        all_pass = all_pass && rep.pass();
    }
    const int rc = emit(json, opt.output, summary.str());
    if (rc != 0) return rc;
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact 2-adic valuations of Stirling numbers"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Configuration file (key=value lines)");

    Options opt;
    app.add_option("--precision-cap", opt.precision_cap,
                   "Residue precision cap, in bits (>= 8)")
        ->check(CLI::Range(8u, 1u << 20))
        ->capture_default_str();
    app.add_option("--sample-count", opt.sample_count,
                   "Members inspected per class under the sampled policy (>= 2)")
        ->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 30))
        ->capture_default_str();
    app.add_option("--jobs", opt.jobs, "Worker thread cap for sweeps")
        ->check(CLI::Range(1u, 4096u))
        ->capture_default_str();
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"plain", "json", "csv", "dot"}))
        ->capture_default_str();
    app.add_option("--output", opt.output,
                   "Output file; relative paths honor S2V_OUTPUT_DIR");

    auto* cmd_stirling = app.add_subcommand(
        "stirling", "Exact Stirling number S(n,k) or s(n,k)");
    std::uint64_t st_n = 0, st_k = 0, st_p = 0;
    std::string st_kind = "second";
    cmd_stirling->add_option("n", st_n, "Row index")->required();
    cmd_stirling->add_option("k", st_k, "Column index")->required();
    cmd_stirling->add_option("--kind", st_kind, "first or second kind")
        ->check(CLI::IsMember({"first", "second"}))
        ->capture_default_str();
    cmd_stirling->add_option("--valuation", st_p,
                             "Print the p-adic valuation for this prime "
                             "instead of the value");

    auto* cmd_v2s5 = app.add_subcommand(
        "v2s5", "v_2(S(n,5)) through the closed-form numerator");
    std::string v_n, v_to;
    cmd_v2s5->add_option("n", v_n, "Row index, decimal text of any size")
        ->required();
    cmd_v2s5->add_option("--to", v_to,
                         "Sweep rows n..TO inclusive, emitting CSV");

    auto* cmd_tree = app.add_subcommand(
        "tree", "Congruence-class splitting tree of v_2(S(n,k))");
    std::uint64_t t_k = 0;
    unsigned t_max_level = 0;
    bool t_exact = false;
    std::uint64_t t_samples = 0;
    cmd_tree->add_option("--k", t_k, "Stirling column")->required();
    cmd_tree->add_option("--max-level", t_max_level, "Deepest level to build")
        ->required();
    auto* exact_flag = cmd_tree->add_flag(
        "--exact", t_exact, "Exact periodic classification (k = 5 only)");
    cmd_tree->add_option("--samples", t_samples,
                         "Sampled classification with this many members")
        ->excludes(exact_flag);

    auto* cmd_verify = app.add_subcommand(
        "verify", "Check a known valuation statement over a range");
    std::string statement;
    VerifyRanges ranges;
    cmd_verify->add_option("statement", statement, "Statement name")
        ->required()
        ->check(CLI::IsMember({"lemma-2-1", "theorem-2-7", "wannemacker",
                               "theorem-3-2", "theorem-3-3", "level-constants",
                               "low-residues", "digit-identity", "all"}));
    cmd_verify->add_option("--i-max", ranges.i_max, "Index bound");
    cmd_verify->add_option("--n-max", ranges.n_max, "Row-family bound");
    cmd_verify->add_option("--k-max", ranges.k_max, "Column bound");
    cmd_verify->add_option("--r-max", ranges.r_max, "Odd multiplier bound");
    cmd_verify->add_option("--m-max", ranges.m_max, "Exponent level bound");
    cmd_verify->add_option("--shift-max", ranges.shift_max,
                           "Base two-power bound");
    cmd_verify->add_option("--max-level", ranges.max_level,
                           "Deepest tree level to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_stirling) return run_stirling(st_n, st_k, st_kind, st_p);
        if (*cmd_v2s5) return run_v2s5(v_n, v_to, opt);
        if (*cmd_tree) {
            if (t_samples) opt.sample_count = t_samples;
            return run_tree(t_k, t_max_level, t_exact, opt);
        }
        return run_verify(statement, ranges, opt);
    } catch (const s2v::PrecisionExceeded& e) {
        std::cerr << "s2v: " << e.what() << "\n";
        return 3;
    } catch (const s2v::PreconditionViolation& e) {
        std::cerr << "s2v: " << e.what() << "\n";
        return 2;
    } catch (const s2v::PolicyMismatch& e) {
        std::cerr << "s2v: " << e.what() << "\n";
        return 2;
    } catch (const s2v::InvalidPrime& e) {
        std::cerr << "s2v: " << e.what() << "\n";
        return 2;
    } catch (const s2v::OutOfRange& e) {
        std::cerr << "s2v: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "s2v: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "s2v: internal error: " << e.what() << "\n";
        return 1;
    }
}
