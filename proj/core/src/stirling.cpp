#include "s2v/stirling.hpp"

#include <algorithm>

#include "s2v/errors.hpp"

namespace s2v {

namespace {
const Integer kZero = 0;
}

StirlingRowPair::StirlingRowPair(std::uint64_t k_max) : k_max_(k_max) {
    row_.emplace_back(1);  // S(0,0) = 1
}

const Integer& StirlingRowPair::at(std::uint64_t k) const {
    if (k > std::min(n_, k_max_)) return kZero;
    return row_[k];
}

void StirlingRowPair::advance() {
    prev_.swap(row_);
    const std::uint64_t n1 = n_ + 1;
    const std::uint64_t w = std::min(n1, k_max_);
    row_.resize(w + 1);
    row_[0] = 0;  // S(n,0) = 0 for n >= 1
    for (std::uint64_t k = 1; k <= w; ++k) {
        const Integer& up_left = (k - 1 < prev_.size()) ? prev_[k - 1] : kZero;
        const Integer& up = (k < prev_.size()) ? prev_[k] : kZero;
        mpz_mul_ui(row_[k].get_mpz_t(), up.get_mpz_t(), static_cast<unsigned long>(k));
        mpz_add(row_[k].get_mpz_t(), row_[k].get_mpz_t(), up_left.get_mpz_t());
    }
    n_ = n1;
}

void StirlingRowPair::advance_to(std::uint64_t target) {
    while (n_ < target) advance();
}

Integer stirling2(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (n == 0) return 1;
    if (k == 0) return 0;
    StirlingRowPair rows(k);
    rows.advance_to(n);
    return rows.at(k);
}

Integer stirling2_explicit(std::uint64_t n, std::uint64_t k) {
    if (k < 1 || k > n)
        throw PreconditionViolation("stirling2_explicit: need 1 <= k <= n");
    Integer sum = 0, term, binom;
    for (std::uint64_t j = 1; j <= k; ++j) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k),
                     static_cast<unsigned long>(j));
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(j),
                      static_cast<unsigned long>(n));
        term *= binom;
        if ((k - j) % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    if (!mpz_divisible_p(sum.get_mpz_t(), fact.get_mpz_t()))
        throw DivisibilityViolation("stirling2_explicit: alternating sum not divisible by k!");
    Integer q;
    mpz_divexact(q.get_mpz_t(), sum.get_mpz_t(), fact.get_mpz_t());
    return q;
}

std::vector<Integer> stirling2_series(std::uint64_t k, std::uint64_t n_max) {
    if (k < 1) throw PreconditionViolation("stirling2_series: need k >= 1");
    if (n_max < k) return {};
    const std::uint64_t degree = n_max - k;
    std::vector<Integer> c(degree + 1);
    c[0] = 1;
    // Repeatedly multiply by 1/(1 - jx): c[i] += j c[i-1], ascending i.
    for (std::uint64_t j = 1; j <= k; ++j)
        for (std::uint64_t i = 1; i <= degree; ++i)
            mpz_addmul_ui(c[i].get_mpz_t(), c[i - 1].get_mpz_t(),
                          static_cast<unsigned long>(j));
    return c;
}

Integer stirling1_signed(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::vector<Integer> row{1};  // coefficients of (x)_0 = 1
    Integer t;
    for (std::uint64_t m = 1; m <= n; ++m) {
        row.emplace_back(0);
        // (x)_m = (x - (m-1)) (x)_{m-1}, updated in place from the top degree.
        for (std::uint64_t kk = m; kk >= 1; --kk) {
            mpz_mul_ui(t.get_mpz_t(), row[kk].get_mpz_t(),
                       static_cast<unsigned long>(m - 1));
            mpz_sub(row[kk].get_mpz_t(), row[kk - 1].get_mpz_t(), t.get_mpz_t());
        }
        mpz_mul_ui(t.get_mpz_t(), row[0].get_mpz_t(),
                   static_cast<unsigned long>(m - 1));
        mpz_neg(row[0].get_mpz_t(), t.get_mpz_t());
    }
    return row[k];
}

bool inversion_check(std::uint64_t max_n) {
    if (max_n < 1) throw PreconditionViolation("inversion_check: need max_n >= 1");
    const std::size_t size = static_cast<std::size_t>(max_n) + 1;

    // Full triangles up to max_n.
    std::vector<std::vector<Integer>> s2t(size), s1t(size);
    s2t[0] = {Integer(1)};
    s1t[0] = {Integer(1)};
    for (std::size_t n = 1; n < size; ++n) {
        s2t[n].assign(n + 1, Integer(0));
        s1t[n].assign(n + 1, Integer(0));
        for (std::size_t k = 1; k <= n; ++k) {
            const Integer& a2 = s2t[n - 1][k - 1];
            const Integer b2 = (k < n) ? s2t[n - 1][k] : Integer(0);
            s2t[n][k] = a2 + Integer(static_cast<unsigned long>(k)) * b2;
            const Integer& a1 = s1t[n - 1][k - 1];
            const Integer b1 = (k < n) ? s1t[n - 1][k] : Integer(0);
            s1t[n][k] = a1 - Integer(static_cast<unsigned long>(n - 1)) * b1;
        }
    }

    auto entry = [](const std::vector<std::vector<Integer>>& t, std::size_t n,
                    std::size_t k) -> Integer {
        if (k > n) return 0;
        return t[n][k];
    };

    for (std::size_t j = 0; j < size; ++j) {
        for (std::size_t k = 0; k < size; ++k) {
            Integer first = 0, second = 0;
            for (std::size_t l = 0; l < size; ++l) {
                first += entry(s1t, l, j) * entry(s2t, k, l);
                second += entry(s2t, l, j) * entry(s1t, k, l);
            }
            const Integer expected = (j == k) ? 1 : 0;
            if (first != expected || second != expected) return false;
        }
    }
    return true;
}

}  // namespace s2v
