#pragma once

#include <cstdint>
#include <vector>

#include "s2v/integer.hpp"

namespace s2v {

// Streaming window over the second-kind Stirling triangle: holds only the
// current row (and, transiently, the previous one), truncated at column
// k_max. Rows older than n-1 are unreachable by construction, which keeps
// deep sweeps within constant memory per column.
class StirlingRowPair {
public:
    explicit StirlingRowPair(std::uint64_t k_max);

    std::uint64_t n() const { return n_; }
    std::uint64_t k_max() const { return k_max_; }

    // Current row: entry k is S(n, k), for k in [0, min(n, k_max)].
    const std::vector<Integer>& row() const { return row_; }

    // S(n, k); zero outside the stored range.
    const Integer& at(std::uint64_t k) const;

    void advance();                          // n -> n + 1
    void advance_to(std::uint64_t target);   // no-op when target <= n

private:
    std::uint64_t k_max_;
    std::uint64_t n_ = 0;
    std::vector<Integer> row_;
    std::vector<Integer> prev_;
};

// S(n, k) by the two-row recurrence S(n,k) = S(n-1,k-1) + k S(n-1,k).
// Conventions: S(0,0) = 1; S(n,k) = 0 for k > n and for n >= 1, k = 0.
Integer stirling2(std::uint64_t n, std::uint64_t k);

// S(n, k) by the explicit alternating sum (1/k!) sum_j (-1)^{k-j} C(k,j) j^n.
// Requires 1 <= k <= n. Throws DivisibilityViolation if k! fails to divide
// the sum exactly (an arithmetic bug, never a property of the inputs).
Integer stirling2_explicit(std::uint64_t n, std::uint64_t k);

// Coefficients of x^k .. x^{n_max} of x^k / ((1-x)(1-2x)...(1-kx)); entry t
// equals S(k+t, k). Empty when n_max < k. Requires k >= 1.
std::vector<Integer> stirling2_series(std::uint64_t k, std::uint64_t n_max);

// Signed first-kind number s(n, k): coefficient of x^k in the falling
// factorial x(x-1)...(x-n+1), via s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k).
Integer stirling1_signed(std::uint64_t n, std::uint64_t k);

// Checks both inversion identities sum_l s(l,j) S(k,l) = delta_{jk} and
// sum_l S(l,j) s(k,l) = delta_{jk} for all j, k <= max_n. Requires max_n >= 1.
bool inversion_check(std::uint64_t max_n);

}  // namespace s2v
