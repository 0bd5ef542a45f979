#include "s2v/integer.hpp"

#include <ostream>
#include <stdexcept>

#include "s2v/errors.hpp"

namespace s2v {

std::uint64_t Valuation::value() const {
    if (!finite_) throw std::logic_error("Valuation::value: infinite valuation has no finite value");
    return value_;
}

std::string Valuation::str() const {
    return finite_ ? std::to_string(value_) : "inf";
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    return os << v.str();
}

Valuation vp(const Integer& x, const Integer& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw InvalidPrime("vp: " + p.get_str() + " is not prime");
    if (sgn(x) == 0) return Valuation::infinity();
    if (p == 2) return Valuation(mpz_scan1(x.get_mpz_t(), 0));
    Integer rest;
    const mp_bitcnt_t e = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return Valuation(e);
}

}  // namespace s2v
