#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "s2v/integer.hpp"
#include "s2v/stirling5.hpp"

namespace s2v {

// Congruence class C_{m,j} = { 2^m i + j : i in N, 2^m i + j >= k } for a
// fixed Stirling column k. Requires j < 2^m and m <= 62.
struct ClassId {
    std::uint64_t k = 0;
    unsigned m = 0;
    std::uint64_t j = 0;

    friend auto operator<=>(const ClassId&, const ClassId&) = default;

    std::uint64_t modulus() const { return std::uint64_t(1) << m; }

    // Smallest member, i.e. smallest n >= k with n = j (mod 2^m).
    std::uint64_t first_member() const;

    // The two classes mod 2^{m+1} partitioning this one: (m+1, j) and
    // (m+1, j + 2^m).
    std::pair<ClassId, ClassId> children() const;

    // "C_{m,j}"
    std::string label() const;
};

// The first `count` members, ascending.
std::vector<Integer> class_members(const ClassId& id, std::uint64_t count);

enum class StatusKind { Constant, NonConstant, Undetermined };
enum class Certainty { Exact, Empirical };

// Classification outcome. Exactly one of value / witnesses / bound is set,
// matching the kind: a Constant class carries its common valuation; a
// NonConstant class carries the lexicographically smallest pair of members
// with distinct valuations (a checkable certificate); an Undetermined class
// carries the largest member inspected before giving up.
struct ClassStatus {
    StatusKind kind = StatusKind::Undetermined;
    Certainty certainty = Certainty::Empirical;
    std::optional<std::uint64_t> value;
    std::optional<std::pair<Integer, Integer>> witnesses;
    std::optional<Integer> bound;

    friend bool operator==(const ClassStatus&, const ClassStatus&) = default;
};

struct ClassifyPolicy {
    enum class Kind { ExactPeriodic, Sampled };

    Kind kind = Kind::Sampled;
    // Sampled: members inspected per class; must be >= 2.
    std::uint64_t sample_count = 64;
    // Sampled: below this many agreeing samples the class stays Undetermined.
    std::uint64_t min_constant_samples = 8;
    // ExactPeriodic: precision escalation cap for the closed-form residues.
    unsigned precision_cap = kDefaultPrecisionCap;

    static ClassifyPolicy exact_periodic(unsigned cap = kDefaultPrecisionCap) {
        ClassifyPolicy p;
        p.kind = Kind::ExactPeriodic;
        p.precision_cap = cap;
        return p;
    }

    static ClassifyPolicy sampled(std::uint64_t count = 64) {
        ClassifyPolicy p;
        p.kind = Kind::Sampled;
        p.sample_count = count;
        return p;
    }
};

// Decides whether v_2(S(n,k)) is constant over the class.
//
// ExactPeriodic (k = 5 only; otherwise PolicyMismatch): walks the members in
// ascending order using closed-form residues mod 2^M. Members below M are
// resolved individually; members at or above M cycle through at most
// 2^{M-2-m} residue slots, so one full cycle decides every member. Precision
// escalates (8, 16, ..., precision_cap) until either two members with
// distinct valuations surface, with every member in between resolved (the
// canonical witness pair), or the whole cycle resolves to one value, which
// proves constancy. Results carry certainty Exact. Throws PrecisionExceeded
// when the cap, or the per-scan window budget, is hit first.
//
// Sampled (any k): computes exact valuations of the first sample_count
// members through the streaming recurrence. Two distinct valuations give
// NonConstant; full agreement gives Constant when sample_count >=
// min_constant_samples and Undetermined otherwise. Results carry certainty
// Empirical.
ClassStatus classify(const ClassId& id, const ClassifyPolicy& policy);

// Proof that every member of the class has valuation strictly above `bound`
// (k = 5 only; otherwise PolicyMismatch). Checks that all closed-form
// residues over one full cycle at precision bound+4 vanish and that each
// pre-periodic member individually exceeds the bound. A false return means
// a member with valuation <= bound exists.
bool class_valuation_exceeds(const ClassId& id, std::uint64_t bound,
                             unsigned precision_cap = kDefaultPrecisionCap);

// Short human-readable form: "const 3", "nonconst (12,20)", "undetermined".
std::string status_label(const ClassStatus& st);

}  // namespace s2v
