#include "s2v/congruence_class.hpp"

#include <stdexcept>

#include "s2v/errors.hpp"
#include "s2v/stirling.hpp"

namespace s2v {

namespace {

// Per-scan ceiling on inspected members; beyond this the query is treated as
// a resource-cap failure rather than left to run unbounded.
constexpr std::uint64_t kScanBudget = std::uint64_t(1) << 26;

void check_id(const ClassId& id) {
    if (id.k < 1) throw PreconditionViolation("ClassId: need k >= 1");
    if (id.m < 1 || id.m > 62)
        throw PreconditionViolation("ClassId: need 1 <= m <= 62");
    if (id.j >> id.m)
        throw PreconditionViolation("ClassId: need j < 2^m");
}

Integer mod_pow2(const Integer& x, unsigned bits) {
    Integer r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), bits);
    return r;
}

struct Walk {
    enum class State { Constant, NonConstant, Escalate };
    State state = State::Escalate;
    std::uint64_t value = 0;
    Integer witness_lo, witness_hi;
};

// One pass over the class at numerator precision M, members ascending.
// Members below M resolve individually through v2_stirling5; members at or
// above M carry residues that cycle through at most 2^{M-2-m} slots, walked
// with multiplicative stepping. Stops at the first member pair with distinct
// valuations (everything before it resolved, so the pair is the
// lexicographically smallest), at the first unresolved residue (escalate),
// or after one full cycle (constancy proved).
Walk walk_at_precision(const ClassId& id, unsigned M, unsigned cap) {
    Walk out;
    const Integer step = Integer(1) << id.m;
    bool have_first = false;
    std::uint64_t v_first = 0;
    Integer first_n;

    auto consume = [&](const Integer& n, std::uint64_t v) -> bool {
        if (!have_first) {
            have_first = true;
            v_first = v;
            first_n = n;
            return false;
        }
        if (v != v_first) {
            out.state = Walk::State::NonConstant;
            out.witness_lo = first_n;
            out.witness_hi = n;
            return true;
        }
        return false;
    };

    Integer n(static_cast<unsigned long>(id.first_member()));
    for (; n < M; n += step)
        if (consume(n, v2_stirling5(n, cap).value())) return out;

    std::uint64_t slots = 1;
    bool slots_capped = false;
    if (M >= id.m + 3) {
        const unsigned exp = M - 2 - id.m;
        if (exp >= 63) {
            slots = ~std::uint64_t(0);
            slots_capped = true;
        } else {
            slots = std::uint64_t(1) << exp;
        }
    }

    // Residue of the numerator for members n >= M: 5^{n-1} + 2*3^n + 1, the
    // two-power terms having vanished mod 2^M.
    const unsigned oe = M - 2;
    const Integer modulus = Integer(1) << M;
    Integer p5 = detail::pow2mod_big(5, mod_pow2(n - 1, oe), M);
    Integer p3 = detail::pow2mod_big(3, mod_pow2(n, oe), M);
    const Integer g5 = detail::pow2mod_big(5, mod_pow2(step, oe), M);
    const Integer g3 = detail::pow2mod_big(3, mod_pow2(step, oe), M);

    Integer r;
    for (std::uint64_t t = 0; t < slots; ++t, n += step) {
        if (t >= kScanBudget)
            throw PrecisionExceeded(
                M, "classify: " + id.label() + " scan exceeded the budget of " +
                       std::to_string(kScanBudget) + " members at precision 2^" +
                       std::to_string(M));
        r = mod_pow2(p5 + 2 * p3 + 1, M);
        if (sgn(r) == 0) {
            out.state = Walk::State::Escalate;
            return out;
        }
        const auto v2r = static_cast<std::uint64_t>(mpz_scan1(r.get_mpz_t(), 0));
        if (v2r < 3)
            throw std::logic_error("classify: numerator valuation below v_2(24)");
        if (consume(n, v2r - 3)) return out;
        p5 = mod_pow2(p5 * g5, M);
        p3 = mod_pow2(p3 * g3, M);
    }
    if (slots_capped)
        throw PrecisionExceeded(M, "classify: " + id.label() +
                                       " cycle exceeds any feasible scan");
    out.state = Walk::State::Constant;
    out.value = v_first;
    return out;
}

ClassStatus classify_exact(const ClassId& id, unsigned cap) {
    if (cap < 8)
        throw PreconditionViolation("classify: need precision_cap >= 8");
    for (unsigned M = 8;; M = (M > cap / 2) ? cap : 2 * M) {
        const Walk w = walk_at_precision(id, M, cap);
        if (w.state == Walk::State::Constant) {
            ClassStatus st;
            st.kind = StatusKind::Constant;
            st.certainty = Certainty::Exact;
            st.value = w.value;
            return st;
        }
        if (w.state == Walk::State::NonConstant) {
            ClassStatus st;
            st.kind = StatusKind::NonConstant;
            st.certainty = Certainty::Exact;
            st.witnesses = std::pair<Integer, Integer>(w.witness_lo, w.witness_hi);
            return st;
        }
        if (M >= cap)
            throw PrecisionExceeded(cap, "classify: " + id.label() +
                                             " unresolved at the precision cap 2^" +
                                             std::to_string(cap));
    }
}

ClassStatus classify_sampled(const ClassId& id, const ClassifyPolicy& policy) {
    const std::vector<Integer> members = class_members(id, policy.sample_count);
    if (!members.back().fits_ulong_p())
        throw PreconditionViolation(
            "classify: sampled members exceed the machine range");
    StirlingRowPair rows(id.k);
    std::vector<std::uint64_t> vals;
    vals.reserve(members.size());
    for (const Integer& member : members) {
        rows.advance_to(member.get_ui());
        vals.push_back(vp(rows.at(id.k), 2).value());  // member >= k, so S > 0
    }
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (vals[i] != vals[0]) {
            ClassStatus st;
            st.kind = StatusKind::NonConstant;
            st.certainty = Certainty::Empirical;
            st.witnesses = std::pair<Integer, Integer>(members[0], members[i]);
            return st;
        }
    }
    ClassStatus st;
    st.certainty = Certainty::Empirical;
    if (members.size() >= policy.min_constant_samples) {
        st.kind = StatusKind::Constant;
        st.value = vals[0];
    } else {
        st.kind = StatusKind::Undetermined;
        st.bound = members.back();
    }
    return st;
}

}  // namespace

std::uint64_t ClassId::first_member() const {
    const std::uint64_t mod = modulus();
    if (j >= k) return j;
    const std::uint64_t steps = (k - j + mod - 1) / mod;
    return j + steps * mod;
}

std::pair<ClassId, ClassId> ClassId::children() const {
    if (m >= 62)
        throw PreconditionViolation("ClassId::children: level limit reached");
    return {ClassId{k, m + 1, j}, ClassId{k, m + 1, j + modulus()}};
}

std::string ClassId::label() const {
    return "C_{" + std::to_string(m) + "," + std::to_string(j) + "}";
}

std::vector<Integer> class_members(const ClassId& id, std::uint64_t count) {
    check_id(id);
    std::vector<Integer> out;
    out.reserve(count);
    Integer n(static_cast<unsigned long>(id.first_member()));
    const Integer step = Integer(1) << id.m;
    for (std::uint64_t i = 0; i < count; ++i, n += step) out.push_back(n);
    return out;
}

ClassStatus classify(const ClassId& id, const ClassifyPolicy& policy) {
    check_id(id);
    if (policy.kind == ClassifyPolicy::Kind::ExactPeriodic) {
        if (id.k != 5)
            throw PolicyMismatch(
                "classify: the ExactPeriodic policy rests on the k = 5 closed "
                "form and rejects k = " +
                std::to_string(id.k));
        return classify_exact(id, policy.precision_cap);
    }
    if (policy.sample_count < 2)
        throw PreconditionViolation("classify: need sample_count >= 2");
    return classify_sampled(id, policy);
}

bool class_valuation_exceeds(const ClassId& id, std::uint64_t bound,
                             unsigned precision_cap) {
    check_id(id);
    if (id.k != 5)
        throw PolicyMismatch(
            "class_valuation_exceeds: the closed form applies to k = 5 only");
    if (bound > 250)
        throw PreconditionViolation(
            "class_valuation_exceeds: bound beyond the supported precision");
    const unsigned M = static_cast<unsigned>(bound) + 4;
    const Integer step = Integer(1) << id.m;
    Integer n(static_cast<unsigned long>(id.first_member()));
    for (; n < M; n += step)
        if (!(v2_stirling5(n, precision_cap) > Valuation(bound))) return false;
    std::uint64_t slots = 1;
    if (M >= id.m + 3) {
        const unsigned exp = M - 2 - id.m;
        if (exp >= 28)
            throw PreconditionViolation(
                "class_valuation_exceeds: cycle exceeds the scan budget");
        slots = std::uint64_t(1) << exp;
    }
    // Every member at or above M has valuation > bound exactly when all
    // residues over one full cycle vanish mod 2^{bound+4}.
    for (std::uint64_t t = 0; t < slots; ++t, n += step)
        if (!s5_numerator_mod(n, M).zero()) return false;
    return true;
}

std::string status_label(const ClassStatus& st) {
    switch (st.kind) {
        case StatusKind::Constant:
            return "const " + std::to_string(*st.value);
        case StatusKind::NonConstant:
            return "nonconst (" + st.witnesses->first.get_str() + "," +
                   st.witnesses->second.get_str() + ")";
        case StatusKind::Undetermined:
            return "undetermined";
    }
    return "undetermined";
}

}  // namespace s2v
