#ifndef QOAC_COMBINATORICS_HPP
#define QOAC_COMBINATORICS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qoac/linalg.hpp"

namespace qoac {

using BigInt = boost::multiprecision::cpp_int;

/// Budget violation for the exhaustive loops; carries the cost the caller
/// would have to allow to run the computation.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::string what_arg, BigInt required, BigInt cap)
        : std::runtime_error(what_arg + ": requires budget " + required.str() +
                             " but cap is " + cap.str()),
          required_(std::move(required)),
          cap_(std::move(cap)) {}

    const BigInt& required() const noexcept { return required_; }
    const BigInt& cap() const noexcept { return cap_; }

private:
    BigInt required_, cap_;
};

inline constexpr std::uint64_t kDefaultCodewordCap = std::uint64_t(1) << 24;
inline constexpr std::uint64_t kDefaultSubspaceCap = std::uint64_t(1) << 24;
inline constexpr std::uint64_t kDefaultGroupCap = 100000000;  // 1e8 isometry pairs

inline BigInt big_pow(unsigned q, unsigned long long k) {
    BigInt r = 1;
    BigInt b = q;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

/// Gaussian q-binomial: number of r-dimensional subspaces of F_q^n.
/// Zero when r > n; the running product always divides evenly.
inline BigInt gaussian_binomial(unsigned n, unsigned r, unsigned q) {
    if (r > n) return 0;
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < r; ++i) {
        num *= big_pow(q, n) - big_pow(q, i);
        den *= big_pow(q, r) - big_pow(q, i);
    }
    return num / den;
}

/// phi_q(n, m, r): number of n x m matrices over F_q of rank exactly r.
inline BigInt count_rank_matrices(unsigned n, unsigned m, unsigned r, unsigned q) {
    if (r > n || r > m) return 0;
    BigInt result = gaussian_binomial(n, r, q);
    for (unsigned i = 0; i < r; ++i) result *= big_pow(q, m) - big_pow(q, i);
    return result;
}

/// Streams every d-dimensional subspace of F_q^ambient exactly once, in
/// canonical RREF. Order: pivot sets lexicographically, then an odometer
/// over the free entries (row-major, first free cell least significant).
class SubspaceEnumerator {
public:
    SubspaceEnumerator(FieldPtr f, int ambient, int d,
                       std::uint64_t cap = kDefaultSubspaceCap)
        : f_(std::move(f)), ambient_(ambient), d_(d) {
        if (d < 0 || ambient < 0)
            throw std::invalid_argument("SubspaceEnumerator: negative dimension");
        BigInt total = gaussian_binomial(ambient, d, f_->q());
        if (total > cap)
            throw CapExceeded("enumerate_subspaces", total, cap);
        if (d_ > ambient_) { done_ = true; return; }
        pivots_.resize(d_);
        for (int i = 0; i < d_; ++i) pivots_[i] = i;
        start_pattern();
    }

    std::optional<Subspace> next() {
        if (done_) return std::nullopt;
        Subspace out = current();
        advance();
        return out;
    }

private:
    Subspace current() const {
        std::vector<GFVec> rows(d_, GFVec(ambient_, 0));
        for (int i = 0; i < d_; ++i) rows[i][pivots_[i]] = 1;
        for (std::size_t k = 0; k < free_cells_.size(); ++k)
            rows[free_cells_[k].first][free_cells_[k].second] = free_vals_[k];
        Subspace S = Subspace::span(f_, ambient_, std::move(rows));
        return S;
    }

    void start_pattern() {
        free_cells_.clear();
        std::vector<bool> is_pivot(ambient_, false);
        for (int p : pivots_) is_pivot[p] = true;
        for (int i = 0; i < d_; ++i)
            for (int c = pivots_[i] + 1; c < ambient_; ++c)
                if (!is_pivot[c]) free_cells_.emplace_back(i, c);
        free_vals_.assign(free_cells_.size(), 0);
    }

    void advance() {
        const unsigned q = f_->q();
        // odometer over free entries
        for (std::size_t k = 0; k < free_cells_.size(); ++k) {
            if (++free_vals_[k] < q) return;
            free_vals_[k] = 0;
        }
        // next pivot combination (lexicographic successor)
        if (d_ == 0) { done_ = true; return; }
        int i = d_ - 1;
        while (i >= 0 && pivots_[i] == ambient_ - d_ + i) --i;
        if (i < 0) { done_ = true; return; }
        ++pivots_[i];
        for (int j = i + 1; j < d_; ++j) pivots_[j] = pivots_[j - 1] + 1;
        start_pattern();
    }

    FieldPtr f_;
    int ambient_, d_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_cells_;
    std::vector<unsigned> free_vals_;
    bool done_ = false;
};

/// Visits every d-dimensional subspace; fn may return void or bool
/// (false stops the sweep early).
template <class Fn>
void for_each_subspace(const FieldPtr& f, int ambient, int d, Fn&& fn,
                       std::uint64_t cap = kDefaultSubspaceCap) {
    SubspaceEnumerator en(f, ambient, d, cap);
    while (auto s = en.next()) {
        if constexpr (std::is_void_v<decltype(fn(*s))>) {
            fn(*s);
        } else {
            if (!fn(*s)) return;
        }
    }
}

/// Total number of subspaces of F_q^ambient over all dimensions.
inline BigInt subspace_lattice_size(int ambient, unsigned q) {
    BigInt total = 0;
    for (int d = 0; d <= ambient; ++d) total += gaussian_binomial(ambient, d, q);
    return total;
}

}  // namespace qoac

#endif  // QOAC_COMBINATORICS_HPP
