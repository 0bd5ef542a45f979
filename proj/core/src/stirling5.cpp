#include "s2v/stirling5.hpp"

#include <stdexcept>
#include <string>

#include "s2v/errors.hpp"

namespace s2v {

namespace {

static_assert(24 == (1 << 3) * 3, "the -3 offset below is v_2(24)");

// Exponents of 5 and 3 may be reduced modulo 2^{ord_exponent(M)}: the
// multiplicative orders of both bases mod 2^M divide that power of two.
unsigned ord_exponent(unsigned M) {
    if (M >= 3) return M - 2;
    if (M == 2) return 1;
    return 0;
}

Integer reduce_exponent(const Integer& e, unsigned M) {
    Integer r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), e.get_mpz_t(), ord_exponent(M));
    return r;
}

Residue numerator_word(const Integer& n, unsigned M) {
    const unsigned __int128 modv = static_cast<unsigned __int128>(1) << M;
    const unsigned __int128 mask = modv - 1;
    std::uint64_t p5 = 0, p3 = 0, p4 = 0, p2 = 0;
    if (n < M) {
        const std::uint64_t nn = n.get_ui();
        p5 = detail::pow2mod_word(5, Integer(nn - 1), M);
        p3 = detail::pow2mod_word(3, Integer(nn), M);
        if (2 * nn < M) p4 = std::uint64_t(1) << (2 * nn);
        if (nn + 1 < M) p2 = std::uint64_t(1) << (nn + 1);
    } else {
        // n >= M: both two-power terms vanish mod 2^M.
        p5 = detail::pow2mod_word(5, reduce_exponent(n - 1, M), M);
        p3 = detail::pow2mod_word(3, reduce_exponent(n, M), M);
    }
    const unsigned __int128 plus =
        static_cast<unsigned __int128>(p5) + 2 * static_cast<unsigned __int128>(p3) + 1;
    const unsigned __int128 minus =
        static_cast<unsigned __int128>(p4) + static_cast<unsigned __int128>(p2);
    const std::uint64_t r =
        static_cast<std::uint64_t>((plus + 4 * modv - minus) & mask);
    return Residue(Integer(static_cast<unsigned long>(r)), M);
}

Residue numerator_big(const Integer& n, unsigned M) {
    Integer p5, p3, p4 = 0, p2 = 0;
    if (n < M) {
        const std::uint64_t nn = n.get_ui();
        p5 = detail::pow2mod_big(5, Integer(nn - 1), M);
        p3 = detail::pow2mod_big(3, Integer(nn), M);
        if (2 * nn < M) p4 = Integer(1) << (2 * nn);
        if (nn + 1 < M) p2 = Integer(1) << (nn + 1);
    } else {
        p5 = detail::pow2mod_big(5, reduce_exponent(n - 1, M), M);
        p3 = detail::pow2mod_big(3, reduce_exponent(n, M), M);
    }
    return Residue(p5 - p4 + 2 * p3 - p2 + 1, M);
}

}  // namespace

Residue s5_numerator_mod(const Integer& n, unsigned M) {
    if (sgn(n) <= 0) throw PreconditionViolation("s5_numerator_mod: need n >= 1");
    if (M < 1) throw PreconditionViolation("s5_numerator_mod: need M >= 1");
    return (M <= 64) ? numerator_word(n, M) : numerator_big(n, M);
}

Residue s5_numerator_mod(std::uint64_t n, unsigned M) {
    return s5_numerator_mod(Integer(static_cast<unsigned long>(n)), M);
}

Valuation v2_stirling5(const Integer& n, unsigned precision_cap) {
    if (precision_cap < 8)
        throw PreconditionViolation("v2_stirling5: need precision_cap >= 8");
    if (n < 5) return Valuation::infinity();  // S(n,5) = 0
    for (unsigned M = 8;; M = (M > precision_cap / 2) ? precision_cap : M * 2) {
        const Residue r = s5_numerator_mod(n, M);
        if (!r.zero()) {
            const unsigned v = r.v2();
            if (v < 3)
                throw std::logic_error(
                    "v2_stirling5: numerator valuation below v_2(24); arithmetic bug");
            return Valuation(v - 3);
        }
        if (M >= precision_cap)
            throw PrecisionExceeded(
                precision_cap,
                "v2_stirling5: residue of 24 S(" + n.get_str() +
                    ",5) still zero at the precision cap 2^" +
                    std::to_string(precision_cap));
    }
}

Valuation v2_stirling5(std::uint64_t n, unsigned precision_cap) {
    return v2_stirling5(Integer(static_cast<unsigned long>(n)), precision_cap);
}

Integer numerator_period(unsigned M, bool checked) {
    if (M < 3) throw PreconditionViolation("numerator_period: need M >= 3");
    const Integer period = Integer(1) << (M - 2);
    if (checked) {
        if (M > 16)
            throw PreconditionViolation(
                "numerator_period: checked mode supports M <= 16 (cost 2^{M-1})");
        const std::uint64_t p = std::uint64_t(1) << (M - 2);
        for (std::uint64_t t = 0; t <= 2 * p; ++t) {
            const std::uint64_t n = M + t;
            if (!(s5_numerator_mod(n, M) == s5_numerator_mod(n + p, M)))
                throw std::logic_error("numerator_period: mismatch at n = " +
                                       std::to_string(n) + ", M = " + std::to_string(M));
        }
    }
    return period;
}

unsigned lte_valuation(unsigned N, std::uint64_t r, int sign, unsigned m,
                       std::uint64_t i, bool checked) {
    if (N < 2) throw PreconditionViolation("lte_valuation: need N >= 2");
    if (r % 2 == 0) throw PreconditionViolation("lte_valuation: need r odd");
    if (i % 2 == 0) throw PreconditionViolation("lte_valuation: need i odd");
    if (m < 1) throw PreconditionViolation("lte_valuation: need m >= 1");
    if (sign != 1 && sign != -1)
        throw PreconditionViolation("lte_valuation: sign must be +1 or -1");
    if (checked) {
        if (N > 64 || m > 24 ||
            (static_cast<unsigned __int128>(i) << m) > (std::uint64_t(1) << 24))
            throw PreconditionViolation(
                "lte_valuation: checked mode needs 2^m i <= 2^24 and N <= 64");
        const Integer base = (Integer(1) << N) * Integer(static_cast<unsigned long>(r)) + sign;
        const std::uint64_t e = (std::uint64_t(1) << m) * i;
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
        pw -= 1;
        const Valuation exact = vp(pw, 2);
        if (!(exact == Valuation(std::uint64_t(m) + N)))
            throw std::logic_error(
                "lte_valuation: exact valuation " + exact.str() + " != " +
                std::to_string(m + N) + " for N=" + std::to_string(N) +
                " r=" + std::to_string(r) + " sign=" + std::to_string(sign) +
                " m=" + std::to_string(m) + " i=" + std::to_string(i));
    }
    return m + N;
}

}  // namespace s2v
