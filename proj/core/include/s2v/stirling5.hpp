#pragma once

#include <cstdint>

#include "s2v/integer.hpp"
#include "s2v/residue.hpp"

namespace s2v {

inline constexpr unsigned kDefaultPrecisionCap = 256;

// (5^{n-1} - 4^n + 2*3^n - 2^{n+1} + 1) mod 2^M, which equals 24 S(n,5)
// mod 2^M for every n >= 1. n may be astronomically large: for n >= M the
// two-power terms vanish mod 2^M and the odd-base exponents reduce modulo
// the multiplicative order (2^{M-2} for M >= 3), so cost is polylog in n.
// Requires n >= 1 and M >= 1.
Residue s5_numerator_mod(const Integer& n, unsigned M);
Residue s5_numerator_mod(std::uint64_t n, unsigned M);

// v_2(S(n,5)) through the closed-form numerator: evaluates the residue at
// precision M = 8, doubling M up to precision_cap until the residue is
// nonzero, then returns v_2(residue) - 3 (exactly v_2 of S(n,5), since the
// numerator is 24 S(n,5)). Returns infinity for n < 5, where S(n,5) = 0.
// Throws PrecisionExceeded if the cap is reached with a zero residue; never
// returns a silently wrong value. Requires precision_cap >= 8.
Valuation v2_stirling5(const Integer& n, unsigned precision_cap = kDefaultPrecisionCap);
Valuation v2_stirling5(std::uint64_t n, unsigned precision_cap = kDefaultPrecisionCap);

// Period of n -> s5_numerator_mod(n, M) on the domain n >= M, namely 2^{M-2}.
// Requires M >= 3. Checked mode compares the residues at n and n + 2^{M-2}
// for every n in [M, M + 2^{M-1}], i.e. across two full periods starting at
// n = M, and throws std::logic_error on any mismatch; it is supported for
// M <= 16 (the cost grows as 2^{M-1}).
Integer numerator_period(unsigned M, bool checked = false);

// v_2((2^N r + sign)^{2^m i} - 1) = m + N.
// Requires N >= 2, r and i odd, m >= 1, sign in {-1, +1}. Checked mode
// recomputes the valuation by exact big-integer arithmetic (requires the
// exponent 2^m i to stay desk-sized) and throws std::logic_error on mismatch.
unsigned lte_valuation(unsigned N, std::uint64_t r, int sign, unsigned m,
                       std::uint64_t i, bool checked = false);

}  // namespace s2v
