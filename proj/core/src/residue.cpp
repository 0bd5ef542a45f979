#include "s2v/residue.hpp"

#include "s2v/errors.hpp"

namespace s2v {

Residue::Residue(Integer value, unsigned precision_m)
    : value_(std::move(value)), m_(precision_m) {
    if (m_ < 1) throw PreconditionViolation("Residue: need precision >= 1");
    // Floor reduction keeps the residue in [0, 2^M) for negative inputs too.
    mpz_fdiv_r_2exp(value_.get_mpz_t(), value_.get_mpz_t(), m_);
}

unsigned Residue::v2() const {
    if (zero())
        throw PreconditionViolation(
            "Residue::v2: zero residue only bounds the order below by the precision");
    return static_cast<unsigned>(mpz_scan1(value_.get_mpz_t(), 0));
}

Residue Residue::truncate(unsigned lower_m) const {
    if (lower_m > m_)
        throw PreconditionViolation("Residue::truncate: cannot raise precision");
    return Residue(value_, lower_m);
}

namespace detail {

std::uint64_t pow2mod_word(std::uint64_t base, const Integer& exp, unsigned M) {
    if (M < 1 || M > 64)
        throw PreconditionViolation("pow2mod_word: need precision in [1, 64]");
    if (sgn(exp) < 0) throw PreconditionViolation("pow2mod_word: need exp >= 0");
    const std::uint64_t mask = (M == 64) ? ~std::uint64_t(0)
                                         : ((std::uint64_t(1) << M) - 1);
    const std::uint64_t b = base & mask;
    std::uint64_t acc = std::uint64_t(1) & mask;
    const mp_bitcnt_t nbits =
        (sgn(exp) == 0) ? 0 : mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (mp_bitcnt_t i = nbits; i-- > 0;) {
        acc = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(acc) * acc) & mask);
        if (mpz_tstbit(exp.get_mpz_t(), i))
            acc = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(acc) * b) & mask);
    }
    return acc;
}

Integer pow2mod_big(const Integer& base, const Integer& exp, unsigned M) {
    if (M < 1) throw PreconditionViolation("pow2mod_big: need precision >= 1");
    if (sgn(exp) < 0) throw PreconditionViolation("pow2mod_big: need exp >= 0");
    const Integer mod = Integer(1) << M;
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

}  // namespace detail

}  // namespace s2v
