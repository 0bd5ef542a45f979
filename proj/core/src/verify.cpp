#include "s2v/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <exception>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "s2v/congruence_class.hpp"
#include "s2v/digits.hpp"
#include "s2v/errors.hpp"
#include "s2v/level_tree.hpp"
#include "s2v/stirling.hpp"

namespace s2v {

void Report::add_failure(std::string input, std::string expected,
                         std::string actual) {
    ++failure_count;
    if (failures.size() < kMaxStoredFailures)
        failures.push_back(
            {std::move(input), std::move(expected), std::move(actual)});
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    }
};

struct ChunkOut {
    std::uint64_t checked = 0;
    std::vector<Failure> failures;
    std::exception_ptr error;
};

// Contiguous chunks over [begin, end), one thread each. Chunks merge in
// index order, so the report does not depend on the job count or on
// scheduling. body(i, out) must touch only its own ChunkOut.
template <class Body>
void run_chunked(std::uint64_t begin, std::uint64_t end, unsigned jobs,
                 Report& rep, Body body) {
    if (end <= begin) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    std::uint64_t want = std::max<unsigned>(jobs, 1);
    want = std::min<std::uint64_t>({want, std::uint64_t(hw) * 4, 256,
                                    end - begin});
    const auto n_chunks = static_cast<unsigned>(want);
    std::vector<ChunkOut> outs(n_chunks);
    if (n_chunks == 1) {
        for (std::uint64_t i = begin; i < end; ++i) body(i, outs[0]);
    } else {
        const std::uint64_t len = (end - begin + n_chunks - 1) / n_chunks;
        std::vector<std::thread> threads;
        threads.reserve(n_chunks);
        for (unsigned c = 0; c < n_chunks; ++c) {
            const std::uint64_t lo = std::min(end, begin + c * len);
            const std::uint64_t hi = std::min(end, lo + len);
            threads.emplace_back([&body, &out = outs[c], lo, hi] {
                try {
                    for (std::uint64_t i = lo; i < hi; ++i) body(i, out);
                } catch (...) {
                    out.error = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (const auto& o : outs)
            if (o.error) std::rethrow_exception(o.error);
    }
    for (auto& o : outs) {
        rep.checked_count += o.checked;
        for (auto& f : o.failures)
            rep.add_failure(std::move(f.input), std::move(f.expected),
                            std::move(f.actual));
    }
}

nlohmann::ordered_json report_to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["statement_id"] = r.statement_id;
    j["range_description"] = r.range_description;
    j["checked_count"] = r.checked_count;
    j["verdict"] = r.pass() ? "pass" : "fail";
    j["failure_count"] = r.failure_count;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Failure& f : r.failures) {
        nlohmann::ordered_json jf;
        jf["input"] = f.input;
        jf["expected"] = f.expected;
        jf["actual"] = f.actual;
        arr.push_back(std::move(jf));
    }
    j["failures"] = std::move(arr);
    j["notes"] = r.notes;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string describe_status(const ClassStatus& st) {
    return status_label(st) +
           (st.certainty == Certainty::Exact ? " [exact]" : " [empirical]");
}

}  // namespace

std::string report_json(const Report& report) {
    return report_to_json(report).dump(2) + "\n";
}

std::string reports_json(const std::vector<Report>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Report& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
}

Report verify_lemma_2_1(unsigned N_max, unsigned r_max, unsigned m_max,
                        unsigned i_max) {
    if (N_max < 2) throw PreconditionViolation("verify_lemma_2_1: need N_max >= 2");
    if (r_max < 1 || m_max < 1 || i_max < 1)
        throw PreconditionViolation(
            "verify_lemma_2_1: need r_max, m_max, i_max >= 1");
    if (N_max > 64 || m_max > 26 ||
        (static_cast<std::uint64_t>(i_max) << m_max) > (std::uint64_t(1) << 26))
        throw PreconditionViolation(
            "verify_lemma_2_1: grid exponents exceed the exact-power budget");
    Timer timer;
    Report rep;
    rep.statement_id = "lemma-2-1";
    {
        std::ostringstream rd;
        rd << "N in [2, " << N_max << "], odd r in [1, " << r_max
           << "], m in [1, " << m_max << "], odd i in [1, " << i_max
           << "], sign in {+1, -1}";
        rep.range_description = rd.str();
    }
    Integer base, power;
    for (unsigned N = 2; N <= N_max; ++N)
        for (std::uint64_t r = 1; r <= r_max; r += 2)
            for (unsigned m = 1; m <= m_max; ++m)
                for (std::uint64_t i = 1; i <= i_max; i += 2)
                    for (const int sign : {+1, -1}) {
                        base = (Integer(1) << N) * static_cast<unsigned long>(r) + sign;
                        const std::uint64_t e = (std::uint64_t(1) << m) * i;
                        mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(),
                                   static_cast<unsigned long>(e));
                        power -= 1;
                        const Valuation got = vp(power, 2);
                        ++rep.checked_count;
                        if (got == Valuation(std::uint64_t(m) + N)) continue;
                        std::ostringstream in;
                        in << "N=" << N << " r=" << r << " sign="
                           << (sign > 0 ? "+1" : "-1") << " m=" << m
                           << " i=" << i;
                        rep.add_failure(in.str(), std::to_string(m + N),
                                        got.str());
                    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report verify_theorem_2_7(std::uint64_t i_max, unsigned jobs) {
    if (i_max < 39)
        throw PreconditionViolation(
            "verify_theorem_2_7: need i_max >= 39 to reach the second "
            "exceptional index");
    Timer timer;
    Report rep;
    rep.statement_id = "theorem-2-7";
    rep.range_description = "i in [2, " + std::to_string(i_max) + "]";

    // Exact streaming cross-check of the closed-form valuations on a prefix.
    const std::uint64_t xmax = std::min<std::uint64_t>(i_max, 500);
    {
        StirlingRowPair rows(5);
        for (std::uint64_t i = 2; i <= xmax; ++i) {
            rows.advance_to(4 * i);
            const Valuation exact_lo = vp(rows.at(5), 2);
            rows.advance_to(4 * i + 3);
            const Valuation exact_hi = vp(rows.at(5), 2);
            if (!(v2_stirling5(4 * i) == exact_lo))
                rep.add_failure("i=" + std::to_string(i) + " (cross-check 4i)",
                                exact_lo.str(), v2_stirling5(4 * i).str());
            if (!(v2_stirling5(4 * i + 3) == exact_hi))
                rep.add_failure(
                    "i=" + std::to_string(i) + " (cross-check 4i+3)",
                    exact_hi.str(), v2_stirling5(4 * i + 3).str());
        }
    }
    rep.notes = "i = 1 excluded (S(4,5) = 0); closed form cross-checked "
                "against exact rows for i in [2, " +
                std::to_string(xmax) + "]";

    run_chunked(2, i_max + 1, jobs, rep, [](std::uint64_t i, ChunkOut& out) {
        const Valuation q_lo = v2_stirling5(4 * i);
        const Valuation q_hi = v2_stirling5(4 * i + 3);
        const bool differ = !(q_lo == q_hi);
        const bool exceptional = (i % 32 == 7);
        ++out.checked;
        if (differ == exceptional) return;
        out.failures.push_back(
            {"i=" + std::to_string(i),
             exceptional ? "q_{4i} != q_{4i+3}" : "q_{4i} == q_{4i+3}",
             "q_{4i}=" + q_lo.str() + " q_{4i+3}=" + q_hi.str()});
    });
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report verify_wannemacker(unsigned n_max) {
    if (n_max < 1 || n_max > 10)
        throw PreconditionViolation("verify_wannemacker: need 1 <= n_max <= 10");
    Timer timer;
    Report rep;
    rep.statement_id = "wannemacker";
    rep.range_description =
        "k in [1, 2^n] for n in [1, " + std::to_string(n_max) + "]";
    StirlingRowPair rows(std::uint64_t(1) << n_max);
    for (unsigned t = 1; t <= n_max; ++t) {
        const std::uint64_t n = std::uint64_t(1) << t;
        rows.advance_to(n);
        for (std::uint64_t k = 1; k <= n; ++k) {
            const Valuation got = vp(rows.at(k), 2);
            const std::uint64_t want = s2_digits(k) - 1;
            ++rep.checked_count;
            if (!(got == Valuation(want)))
                rep.add_failure("n=" + std::to_string(n) + " k=" + std::to_string(k),
                                std::to_string(want), got.str());
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report verify_theorem_3_2(unsigned n_max) {
    if (n_max < 1 || n_max > 10)
        throw PreconditionViolation("verify_theorem_3_2: need 1 <= n_max <= 10");
    Timer timer;
    Report rep;
    rep.statement_id = "theorem-3-2";
    rep.range_description =
        "k in [1, 2^n] for n in [1, " + std::to_string(n_max) + "]";
    StirlingRowPair rows((std::uint64_t(1) << n_max) + 1);
    for (unsigned t = 1; t <= n_max; ++t) {
        const std::uint64_t n = std::uint64_t(1) << t;
        rows.advance_to(n + 1);
        for (std::uint64_t k = 1; k <= n; ++k) {
            const Valuation got = vp(rows.at(k + 1), 2);
            const std::uint64_t want = s2_digits(k) - 1;
            ++rep.checked_count;
            if (!(got == Valuation(want)))
                rep.add_failure("n=" + std::to_string(n + 1) + " k=" + std::to_string(k + 1),
                                std::to_string(want), got.str());
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report verify_theorem_3_3(unsigned n_max) {
    if (n_max < 1 || n_max > 10)
        throw PreconditionViolation("verify_theorem_3_3: need 1 <= n_max <= 10");
    Timer timer;
    Report rep;
    rep.statement_id = "theorem-3-3";
    rep.range_description =
        "k in [1, 2^n] for n in [1, " + std::to_string(n_max) + "]";
    StirlingRowPair rows((std::uint64_t(1) << n_max) + 2);
    std::map<std::uint64_t, std::uint64_t> slack_hist;
    for (unsigned t = 1; t <= n_max; ++t) {
        const std::uint64_t n = std::uint64_t(1) << t;
        rows.advance_to(n + 2);
        for (std::uint64_t k = 1; k <= n; ++k) {
            const Valuation got = vp(rows.at(k + 2), 2);
            const std::uint64_t s2 = s2_digits(k);
            const unsigned u = u_index(k);
            ++rep.checked_count;
            const std::string in =
                "n=" + std::to_string(n + 2) + " k=" + std::to_string(k + 2);
            if (u == 0) {
                if (!(got == Valuation(s2 - 1)))
                    rep.add_failure(in, std::to_string(s2 - 1), got.str());
            } else if (u == 1) {
                if (got >= Valuation(s2))
                    ++slack_hist[got.value() - s2];
                else
                    rep.add_failure(in, ">= " + std::to_string(s2), got.str());
            } else {
                if (!(got == Valuation(s2 - u)))
                    rep.add_failure(in, std::to_string(s2 - u), got.str());
            }
        }
    }
    {
        std::ostringstream ns;
        ns << "u(k) = 1 rows assert the lower bound v >= s_2(k) only; "
              "slack v - s_2(k) histogram:";
        for (const auto& [slack, count] : slack_hist)
            ns << " " << slack << ":" << count;
        rep.notes = ns.str();
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report verify_level_constants(unsigned max_level, unsigned precision_cap) {
    if (max_level < 4 || max_level > 8)
        throw PreconditionViolation(
            "verify_level_constants: need max_level in [4, 8]");
    Timer timer;
    Report rep;
    rep.statement_id = "level-constants";
    rep.range_description =
        "k = 5 class tree, levels 1 to " + std::to_string(max_level);
    rep.notes = "ExactPeriodic classification, precision cap 2^" +
                std::to_string(precision_cap);
    const LevelTree tree =
        build_level_tree(5, max_level, ClassifyPolicy::exact_periodic(precision_cap));

    const auto level_ids = [](unsigned m, std::uint64_t j_lo, std::uint64_t j_hi) {
        return std::vector<ClassId>{ClassId{5, m, j_lo}, ClassId{5, m, j_hi}};
    };
    const auto fmt_level = [](const std::vector<ClassId>& ids) {
        std::string s = "{";
        for (std::size_t i = 0; i < ids.size(); ++i)
            s += (i ? ", " : "") + ids[i].label();
        return s + "}";
    };

    auto check_level = [&](unsigned m, std::uint64_t j_lo, std::uint64_t j_hi) {
        ++rep.checked_count;
        const std::vector<ClassId> want = level_ids(m, j_lo, j_hi);
        const std::vector<ClassId>& got = m_level(tree, m);
        if (got != want)
            rep.add_failure(std::to_string(m) + "-level", fmt_level(want),
                            fmt_level(got));
    };
    auto check_constant = [&](unsigned m, std::uint64_t j, std::uint64_t c) {
        ++rep.checked_count;
        const ClassId id{5, m, j};
        const auto it = tree.nodes.find(id);
        if (it == tree.nodes.end()) {
            rep.add_failure(id.label(), "constant " + std::to_string(c),
                            "absent from tree");
            return;
        }
        const ClassStatus& st = it->second;
        if (st.kind != StatusKind::Constant ||
            st.certainty != Certainty::Exact || st.value != c)
            rep.add_failure(id.label(),
                            "const " + std::to_string(c) + " [exact]",
                            describe_status(st));
    };
    auto check_exceeds = [&](unsigned m, std::uint64_t j, std::uint64_t c) {
        ++rep.checked_count;
        const ClassId id{5, m, j};
        if (!class_valuation_exceeds(id, c, precision_cap))
            rep.add_failure(id.label(),
                            "v_2 > " + std::to_string(c) + " on every member",
                            "a member with v_2 <= " + std::to_string(c));
    };

    check_level(1, 0, 1);
    check_level(2, 0, 3);
    check_constant(2, 1, 0);
    check_constant(2, 2, 0);
    check_level(3, 4, 7);
    check_constant(3, 0, 1);
    check_constant(3, 3, 1);

    struct LevelFacts {
        unsigned m;
        std::uint64_t const_j[2];
        std::uint64_t constant;
        std::uint64_t split_j[2];  // ascending
    };
    constexpr LevelFacts kFacts[] = {
        {4, {4, 7}, 2, {12, 15}},
        {5, {12, 15}, 3, {28, 31}},
        {6, {60, 63}, 4, {28, 31}},
        {7, {92, 95}, 5, {28, 31}},
        {8, {28, 159}, 6, {31, 156}},
    };
    for (const LevelFacts& f : kFacts) {
        if (f.m > max_level) break;
        check_constant(f.m, f.const_j[0], f.constant);
        check_constant(f.m, f.const_j[1], f.constant);
        check_exceeds(f.m, f.split_j[0], f.constant);
        check_exceeds(f.m, f.split_j[1], f.constant);
        check_level(f.m, f.split_j[0], f.split_j[1]);
    }

    if (max_level == 8) {
        ++rep.checked_count;
        const ClassId id{5, 8, 156};
        const auto it = tree.nodes.find(id);
        const std::pair<Integer, Integer> want(156, 412);
        if (it == tree.nodes.end() || !it->second.witnesses ||
            *it->second.witnesses != want)
            rep.add_failure(id.label(), "witnesses (156,412)",
                            it == tree.nodes.end() ? "absent from tree"
                                                   : describe_status(it->second));
        ++rep.checked_count;
        if (!(v2_stirling5(std::uint64_t(156), precision_cap) == Valuation(11)))
            rep.add_failure("n=156", "11",
                            v2_stirling5(std::uint64_t(156), precision_cap).str());
        ++rep.checked_count;
        if (!(v2_stirling5(std::uint64_t(412), precision_cap) == Valuation(7)))
            rep.add_failure("n=412", "7",
                            v2_stirling5(std::uint64_t(412), precision_cap).str());
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report verify_low_residues(std::uint64_t n_max, unsigned jobs) {
    if (n_max < 1)
        throw PreconditionViolation("verify_low_residues: need n_max >= 1");
    Timer timer;
    Report rep;
    rep.statement_id = "low-residues";
    rep.range_description =
        "rows 4n+1 and 4n+2 for n in [1, " + std::to_string(n_max) + "]";
    run_chunked(1, n_max + 1, jobs, rep, [](std::uint64_t n, ChunkOut& out) {
        for (const std::uint64_t row : {4 * n + 1, 4 * n + 2}) {
            const Valuation got = v2_stirling5(row);
            ++out.checked;
            if (!(got == Valuation(std::uint64_t(0))))
                out.failures.push_back(
                    {"n=" + std::to_string(row), "0", got.str()});
        }
    });
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report verify_digit_identity(std::uint64_t k_max, unsigned jobs) {
    if (k_max < 1)
        throw PreconditionViolation("verify_digit_identity: need k_max >= 1");
    Timer timer;
    Report rep;
    rep.statement_id = "digit-identity";
    rep.range_description = "k in [1, " + std::to_string(k_max) + "]";
    run_chunked(1, k_max + 1, jobs, rep, [](std::uint64_t k, ChunkOut& out) {
        ++out.checked;
        if (!digit_step_identity(k))
            out.failures.push_back(
                {"k=" + std::to_string(k),
                 "s_2(k+1) = s_2(k) + 1 - u(k)",
                 "s_2(k)=" + std::to_string(s2_digits(k)) +
                     " u(k)=" + std::to_string(u_index(k)) +
                     " s_2(k+1)=" + std::to_string(s2_digits(k + 1))});
    });
    rep.elapsed_ms = timer.ms();
    return rep;
}

}  // namespace s2v
