#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace s2v {

// Arbitrary-precision signed integer; all arithmetic is exact.
using Integer = mpz_class;

// A p-adic valuation: a nonnegative integer, or infinity for v_p(0).
// Every finite value orders below infinity.
class Valuation {
public:
    Valuation() = default;
    Valuation(std::uint64_t v) : value_(v) {}  // implicit by design

    static Valuation infinity() {
        Valuation v;
        v.finite_ = false;
        return v;
    }

    bool is_finite() const { return finite_; }

    // The finite value; throws std::logic_error on infinity.
    std::uint64_t value() const;

    friend bool operator==(const Valuation&, const Valuation&) = default;

    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.finite_ && b.finite_) return a.value_ <=> b.value_;
        if (a.finite_) return std::strong_ordering::less;
        if (b.finite_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Valuation operator+(std::uint64_t d) const {
        return finite_ ? Valuation(value_ + d) : infinity();
    }

    // Decimal digits, or "inf".
    std::string str() const;

private:
    bool finite_ = true;
    std::uint64_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

// v_p(x): exponent of the largest power of p dividing x; v_p(0) is infinity.
// The sign of x is ignored. Throws InvalidPrime unless p is prime.
Valuation vp(const Integer& x, const Integer& p);

}  // namespace s2v
