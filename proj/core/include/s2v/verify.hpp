#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "s2v/integer.hpp"
#include "s2v/stirling5.hpp"

namespace s2v {

struct Failure {
    std::string input;
    std::string expected;
    std::string actual;

    friend bool operator==(const Failure&, const Failure&) = default;
};

// Outcome of one verification statement. checked_count always equals the
// cardinality of the declared range: nothing is silently skipped. At most
// kMaxStoredFailures failures are stored verbatim; failure_count is the
// true total.
struct Report {
    static constexpr std::size_t kMaxStoredFailures = 100;

    std::string statement_id;
    std::string range_description;
    std::uint64_t checked_count = 0;
    std::vector<Failure> failures;
    std::uint64_t failure_count = 0;
    std::string notes;
    double elapsed_ms = 0.0;

    bool pass() const { return failure_count == 0; }

    void add_failure(std::string input, std::string expected, std::string actual);
};

// JSON with keys statement_id, range_description, checked_count, verdict,
// failure_count, failures, notes, elapsed_ms, in that order. Byte-identical
// for identical inputs, except for the elapsed_ms field.
std::string report_json(const Report& report);
std::string reports_json(const std::vector<Report>& reports);

// v_2((2^N r +- 1)^{2^m i} - 1) = m + N over the full grid N in [2, N_max],
// odd r <= r_max, m in [1, m_max], odd i <= i_max, both signs, by exact
// big-integer arithmetic. Requires N_max >= 2, r_max, m_max, i_max >= 1.
Report verify_lemma_2_1(unsigned N_max = 8, unsigned r_max = 9,
                        unsigned m_max = 8, unsigned i_max = 9);

// With q_n = v_2(S(n,5)): q_{4i} != q_{4i+3} exactly when i = 7 (mod 32),
// for every i in [2, i_max] via the closed-form fast path; additionally
// cross-checks both valuations against exact streaming rows for i <= 500.
// i = 1 is outside the domain since S(4,5) = 0. Requires i_max >= 39, the
// first index of the second exceptional family 32j + 7.
Report verify_theorem_2_7(std::uint64_t i_max = 100000, unsigned jobs = 1);

// v_2(S(2^n, k)) = s_2(k) - 1 for all 1 <= k <= 2^n, n <= n_max, by exact
// streaming rows. Requires 1 <= n_max <= 10.
Report verify_wannemacker(unsigned n_max = 10);

// v_2(S(2^n + 1, k+1)) = s_2(k) - 1 for all 1 <= k <= 2^n, n <= n_max.
// Requires 1 <= n_max <= 10.
Report verify_theorem_3_2(unsigned n_max = 10);

// Three-case check for v = v_2(S(2^n + 2, k+2)), 1 <= k <= 2^n, n <= n_max:
// u(k) = 0  -> v = s_2(k) - 1; u(k) = 1 -> v >= s_2(k) (a lower bound only;
// the slack distribution is recorded in notes, not asserted); u(k) >= 2 ->
// v = s_2(k) - u(k). Requires 1 <= n_max <= 10.
Report verify_theorem_3_3(unsigned n_max = 10);

// Builds the k = 5 tree with the ExactPeriodic policy and asserts the known
// facts level by level: constants 0,1,...,max_level-2 on the constant
// sibling pairs at levels 2..max_level, strict lower bounds on the
// non-constant pairs, the level memberships, and at level 8 the witness
// pair (156, 412) with valuations (11, 7). Requires max_level in [4, 8].
Report verify_level_constants(unsigned max_level = 8,
                              unsigned precision_cap = kDefaultPrecisionCap);

// v_2(S(4n+1, 5)) = v_2(S(4n+2, 5)) = 0 for all n in [1, n_max] via the
// fast path. Requires n_max >= 1.
Report verify_low_residues(std::uint64_t n_max = 10000, unsigned jobs = 1);

// s_2(k+1) = s_2(k) + 1 - u(k) for all k in [1, k_max].
Report verify_digit_identity(std::uint64_t k_max = 1000000, unsigned jobs = 1);

}  // namespace s2v
