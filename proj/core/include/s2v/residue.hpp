#pragma once

#include <cstdint>

#include "s2v/integer.hpp"

namespace s2v {

// A value known modulo 2^M, M >= 1. Truncating to lower precision is exact;
// raising precision is not provided, since it would invent information.
class Residue {
public:
    // Reduces value into [0, 2^M); requires M >= 1.
    Residue(Integer value, unsigned precision_m);

    const Integer& value() const { return value_; }
    unsigned precision() const { return m_; }
    bool zero() const { return sgn(value_) == 0; }

    // v_2 of the residue. Requires a nonzero residue: for a zero residue the
    // 2-adic order is only bounded below by M, and this throws
    // PreconditionViolation rather than guessing.
    unsigned v2() const;

    // The same value at lower precision; requires lower_m <= precision().
    Residue truncate(unsigned lower_m) const;

    friend bool operator==(const Residue&, const Residue&) = default;

private:
    Integer value_;
    unsigned m_;
};

namespace detail {

// base^exp mod 2^M for M in [1, 64]: square-and-multiply on a machine word.
std::uint64_t pow2mod_word(std::uint64_t base, const Integer& exp, unsigned M);

// base^exp mod 2^M for any M >= 1. Requires exp >= 0.
Integer pow2mod_big(const Integer& base, const Integer& exp, unsigned M);

}  // namespace detail

}  // namespace s2v
