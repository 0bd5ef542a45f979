#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace s2v {

// s_2(k): number of ones in the binary expansion of k.
constexpr unsigned s2_digits(std::uint64_t k) noexcept {
    return static_cast<unsigned>(std::popcount(k));
}

// u(k): index of the lowest zero binary digit of k; 0 iff k is even.
// u(0) = 0 by the same convention.
constexpr unsigned u_index(std::uint64_t k) noexcept {
    return static_cast<unsigned>(std::countr_one(k));
}

// s_2(k+1) = s_2(k) + 1 - u(k). Requires k + 1 to be representable;
// note s_2(k) >= u(k), so the right side never underflows.
constexpr bool digit_step_identity(std::uint64_t k) noexcept {
    return s2_digits(k + 1) == s2_digits(k) + 1 - u_index(k);
}

// Binary expansion of k (least significant digit first) with its digit sum
// and lowest-zero index. For k = 2^t - 1 all stored digits are ones and
// u equals bits.size(), the index of the first implicit zero.
struct DigitProfile {
    std::uint64_t k = 0;
    std::vector<bool> bits;
    unsigned s2 = 0;
    unsigned u = 0;
};

inline DigitProfile digit_profile(std::uint64_t k) {
    DigitProfile p{k, {}, s2_digits(k), u_index(k)};
    for (std::uint64_t t = k; t != 0; t >>= 1) p.bits.push_back((t & 1) != 0);
    return p;
}

}  // namespace s2v
