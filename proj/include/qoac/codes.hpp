#ifndef QOAC_CODES_HPP
#define QOAC_CODES_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoac/combinatorics.hpp"
#include "qoac/linalg.hpp"

namespace qoac {

/// F_q-linear subspace of n x m matrices, stored as the canonical RREF
/// basis of the row-major vectorizations in F_q^{nm}. The constructor
/// records the given orientation; nothing is transposed silently.
class Code {
public:
    Code(FieldPtr f, int n, int m, Subspace sp)
        : f_(std::move(f)), n_(n), m_(m), sp_(std::move(sp)) {
        if (n < 0 || m < 0) throw std::invalid_argument("Code: negative shape");
        if (sp_.ambient() != n * m)
            throw std::invalid_argument("Code: subspace ambient != n*m");
        require_same_field(*f_, *sp_.field(), "Code");
    }

    static Code zero(FieldPtr f, int n, int m) {
        Subspace z = Subspace::zero(f, n * m);
        return Code(std::move(f), n, m, std::move(z));
    }

    static Code full(FieldPtr f, int n, int m) {
        Subspace s = Subspace::full(f, n * m);
        return Code(std::move(f), n, m, std::move(s));
    }

    static Code from_matrices(FieldPtr f, int n, int m, const std::vector<Mat>& mats) {
        std::vector<GFVec> rows;
        rows.reserve(mats.size());
        for (const Mat& M : mats) {
            require_same_field(*f, *M.field(), "Code::from_matrices");
            if (M.nrows() != n || M.ncols() != m)
                throw std::invalid_argument("Code::from_matrices: shape mismatch");
            rows.push_back(M.vectorize());
        }
        Subspace sp = Subspace::span(f, n * m, std::move(rows));
        return Code(std::move(f), n, m, std::move(sp));
    }

    static Code from_matrices(const std::vector<Mat>& mats) {
        if (mats.empty())
            throw std::invalid_argument("Code::from_matrices: empty list needs explicit shape");
        return from_matrices(mats[0].field(), mats[0].nrows(), mats[0].ncols(), mats);
    }

    const FieldPtr& field() const noexcept { return f_; }
    int nrows() const noexcept { return n_; }
    int ncols() const noexcept { return m_; }
    int dim() const noexcept { return sp_.dim(); }
    const Subspace& space() const noexcept { return sp_; }

    Mat basis_mat(int i) const { return Mat::devectorize(f_, sp_.basis()[i], n_, m_); }

    std::vector<Mat> basis_mats() const {
        std::vector<Mat> out;
        out.reserve(sp_.dim());
        for (int i = 0; i < sp_.dim(); ++i) out.push_back(basis_mat(i));
        return out;
    }

    /// Trace dual {M : Tr(M N^t) = 0 for all N in the code}. Because the
    /// pairing equals the dot product of row-major vectorizations, this is
    /// the orthogonal complement in F_q^{nm}.
    Code dual() const { return Code(f_, n_, m_, sp_.orthogonal()); }

    Code transposed() const {
        std::vector<Mat> mats;
        for (int i = 0; i < dim(); ++i) mats.push_back(basis_mat(i).transpose());
        return mats.empty() ? Code::zero(f_, m_, n_) : Code::from_matrices(f_, m_, n_, mats);
    }

    bool operator==(const Code& o) const {
        return n_ == o.n_ && m_ == o.m_ && sp_ == o.sp_;
    }
    bool operator!=(const Code& o) const { return !(*this == o); }

private:
    FieldPtr f_;
    int n_, m_;
    Subspace sp_;
};

inline int max_side(const Code& C) { return std::max(C.nrows(), C.ncols()); }
inline int min_side(const Code& C) { return std::min(C.nrows(), C.ncols()); }

/// Mat(V): all n x m matrices whose column space lies in V (V in F_q^n).
inline Code mat_support(const FieldPtr& f, const Subspace& V, int m) {
    const int n = V.ambient();
    std::vector<GFVec> rows;
    for (const GFVec& v : V.basis())
        for (int j = 0; j < m; ++j) {
            GFVec vec(std::size_t(n) * m, 0);
            for (int r = 0; r < n; ++r) vec[std::size_t(r) * m + j] = v[r];
            rows.push_back(std::move(vec));
        }
    return Code(f, n, m, Subspace::span(f, n * m, std::move(rows)));
}

/// Mat(U)^t: all n x m matrices whose row space lies in U (U in F_q^m).
inline Code mat_support_rows(const FieldPtr& f, const Subspace& U, int n) {
    const int m = U.ambient();
    std::vector<GFVec> rows;
    for (const GFVec& u : U.basis())
        for (int i = 0; i < n; ++i) {
            GFVec vec(std::size_t(n) * m, 0);
            for (int c = 0; c < m; ++c) vec[std::size_t(i) * m + c] = u[c];
            rows.push_back(std::move(vec));
        }
    return Code(f, n, m, Subspace::span(f, n * m, std::move(rows)));
}

/// C(V) = C intersect Mat(V), by basis intersection (no enumeration).
inline Code subcode_supported(const Code& C, const Subspace& V) {
    if (V.ambient() != C.nrows())
        throw std::invalid_argument("subcode_supported: ambient mismatch");
    Code MV = mat_support(C.field(), V, C.ncols());
    return Code(C.field(), C.nrows(), C.ncols(), subspace_intersect(C.space(), MV.space()));
}

inline BigInt codeword_count(const Code& C) { return big_pow(C.field()->q(), C.dim()); }

namespace detail {

/// Visits the rank of every codeword (starting with the zero word).
/// fn(int rank) -> bool; returning false stops the scan.
template <class Fn>
void scan_ranks(const Code& C, std::uint64_t cap, Fn&& fn) {
    const Field& F = *C.field();
    const int n = C.nrows(), m = C.ncols(), d = C.dim();
    const unsigned q = F.q();

    BigInt total_big = codeword_count(C);
    if (total_big > cap) throw CapExceeded("codeword enumeration", total_big, cap);
    const std::uint64_t total = total_big.convert_to<std::uint64_t>();

    if (!fn(0)) return;
    if (d == 0) return;

    if (q == 2 && n * m <= 64 && m <= 64 && n <= 64 && d < 63) {
        // Gray-code walk on bit-packed vectorizations
        std::vector<std::uint64_t> pb(d, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < n * m; ++k)
                if (C.space().basis()[i][k]) pb[i] |= std::uint64_t(1) << k;
        const std::uint64_t mask = (m == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << m) - 1);
        std::uint64_t cur = 0;
        std::array<std::uint64_t, 64> rows{};
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            cur ^= pb[std::countr_zero(idx)];
            for (int i = 0; i < n; ++i) rows[i] = (cur >> (i * m)) & mask;
            if (!fn(rank_f2_words(rows.data(), n))) return;
        }
        return;
    }

    // generic base-q odometer over coefficient indices; a digit moving from
    // index ov to nv shifts the codeword by (element(nv) - element(ov)) times
    // that basis row (the index sequence is not an additive orbit when e > 1)
    std::vector<unsigned> digit(d, 0);
    GFVec cur(std::size_t(n) * m, 0);
    std::vector<GFElem> buf(cur.size());
    for (std::uint64_t step = 1; step < total; ++step) {
        for (int j = 0;; ++j) {
            const unsigned ov = digit[j];
            const unsigned nv = (ov + 1 == q) ? 0 : ov + 1;
            const GFElem delta = F.sub(static_cast<GFElem>(nv), static_cast<GFElem>(ov));
            const GFVec& b = C.space().basis()[j];
            for (std::size_t k = 0; k < cur.size(); ++k)
                cur[k] = F.add(cur[k], F.mul(delta, b[k]));
            digit[j] = nv;
            if (nv != 0) break;
        }
        buf = cur;
        if (!fn(rank_rows_buffer(F, buf.data(), n, m))) return;
    }
}

}  // namespace detail

/// All q^dim codewords exactly once, deterministic order: coefficient
/// vectors against the basis as base-q integers, basis row 0 in the least
/// significant digit.
class CodewordEnumerator {
public:
    explicit CodewordEnumerator(Code C, std::uint64_t cap = kDefaultCodewordCap)
        : c_(std::move(C)) {
        BigInt total = codeword_count(c_);
        if (total > cap) throw CapExceeded("enumerate_codewords", total, cap);
        total_ = total.convert_to<std::uint64_t>();
        digit_.assign(c_.dim(), 0);
        cur_.assign(std::size_t(c_.nrows()) * c_.ncols(), 0);
    }

    std::optional<Mat> next() {
        if (emitted_ == total_) return std::nullopt;
        Mat out = Mat::devectorize(c_.field(), cur_, c_.nrows(), c_.ncols());
        ++emitted_;
        if (emitted_ < total_) advance();
        return out;
    }

private:
    void advance() {
        const Field& F = *c_.field();
        const unsigned q = F.q();
        for (int j = 0;; ++j) {
            const unsigned ov = digit_[j];
            const unsigned nv = (ov + 1 == q) ? 0 : ov + 1;
            const GFElem delta = F.sub(static_cast<GFElem>(nv), static_cast<GFElem>(ov));
            const GFVec& b = c_.space().basis()[j];
            for (std::size_t k = 0; k < cur_.size(); ++k)
                cur_[k] = F.add(cur_[k], F.mul(delta, b[k]));
            digit_[j] = nv;
            if (nv != 0) break;
        }
    }

    Code c_;
    std::uint64_t total_ = 0, emitted_ = 0;
    std::vector<unsigned> digit_;
    GFVec cur_;
};

/// Largest codeword rank, by exhaustive enumeration with early exit once
/// min(n, m) is reached.
inline int maxrk(const Code& C, std::uint64_t cap = kDefaultCodewordCap) {
    const int limit = min_side(C);
    int best = 0;
    detail::scan_ranks(C, cap, [&](int r) {
        if (r > best) best = r;
        return best < limit;
    });
    return best;
}

/// Least rank of a nonzero codeword; requires a nonzero code.
inline int min_distance(const Code& C, std::uint64_t cap = kDefaultCodewordCap) {
    if (C.dim() == 0)
        throw std::invalid_argument("min_distance: undefined for the zero code");
    int best = std::numeric_limits<int>::max();
    detail::scan_ranks(C, cap, [&](int r) {
        if (r > 0 && r < best) best = r;
        return best > 1;
    });
    return best;
}

namespace detail {
inline bool qoac_from_maxrk(int dim, int mm, int mr) {
    if (dim == 0 || dim % mm == 0) return false;
    return mr == (dim + mm - 1) / mm;
}
}  // namespace detail

/// dim(C) = m * maxrk(C), m the larger side.
inline bool is_optimal_anticode(const Code& C, std::uint64_t cap = kDefaultCodewordCap) {
    return C.dim() == max_side(C) * maxrk(C, cap);
}

/// m does not divide dim(C) and maxrk(C) = ceil(dim(C)/m), m the larger
/// side. False for the zero code.
inline bool is_qoac(const Code& C, std::uint64_t cap = kDefaultCodewordCap) {
    if (C.dim() == 0) return false;
    return detail::qoac_from_maxrk(C.dim(), max_side(C), maxrk(C, cap));
}

/// Both C and its dual are qOACs. Computed both from the definition and
/// from the identity maxrk(C) + maxrk(C-dual) = min(n,m) + 1; the two
/// routes must agree.
inline bool is_dually_qoac(const Code& C, std::uint64_t cap = kDefaultCodewordCap) {
    const Code D = C.dual();
    const int mm = max_side(C), nn = min_side(C);
    const int rc = maxrk(C, cap), rd = maxrk(D, cap);
    const bool via_def = detail::qoac_from_maxrk(C.dim(), mm, rc) &&
                         detail::qoac_from_maxrk(D.dim(), mm, rd);
    const bool via_sum = (rc + rd == nn + 1);
    if (via_def != via_sum)
        throw std::logic_error("is_dually_qoac: definition and maxrk-sum routes disagree");
    return via_def;
}

struct CodeReport {
    int dim = 0;
    int maxrk = 0;
    std::optional<int> min_dist;  // absent for the zero code
    bool is_optimal_anticode = false;
    bool is_qoac = false;
    bool is_dually_qoac = false;
    std::optional<long long> singleton_slack;  // m(n - d + 1) - dim, sides sorted
    long long anticode_slack = 0;              // m*maxrk - dim
};

inline CodeReport make_report(const Code& C, std::uint64_t cap = kDefaultCodewordCap) {
    CodeReport R;
    const int mm = max_side(C), nn = min_side(C);
    R.dim = C.dim();
    R.maxrk = maxrk(C, cap);
    R.is_optimal_anticode = (R.dim == mm * R.maxrk);
    R.is_qoac = detail::qoac_from_maxrk(R.dim, mm, R.maxrk);
    R.is_dually_qoac = is_dually_qoac(C, cap);
    R.anticode_slack = static_cast<long long>(mm) * R.maxrk - R.dim;
    if (R.dim > 0) {
        R.min_dist = min_distance(C, cap);
        R.singleton_slack = static_cast<long long>(mm) * (nn - *R.min_dist + 1) - R.dim;
    }
    return R;
}

/// Code spanned by unit matrices at the given (row, col) cells.
inline Code code_from_cells(const FieldPtr& f, int n, int m,
                            const std::vector<std::pair<int, int>>& cells) {
    std::vector<GFVec> rows;
    rows.reserve(cells.size());
    for (auto [i, j] : cells) {
        if (i < 0 || i >= n || j < 0 || j >= m)
            throw std::invalid_argument("code_from_cells: cell out of range");
        GFVec v(std::size_t(n) * m, 0);
        v[std::size_t(i) * m + j] = 1;
        rows.push_back(std::move(v));
    }
    return Code(f, n, m, Subspace::span(f, n * m, std::move(rows)));
}

/// C_{s,h,k}: full s x m band on top, an h x k block below it, zeros
/// elsewhere. Requires s,h,k >= 0, k <= m, 0 < s+h <= n.
inline Code construct_cshk(const FieldPtr& f, int n, int m, int s, int h, int k) {
    if (s < 0 || h < 0 || k < 0) throw std::invalid_argument("construct_cshk: negative parameter");
    if (k > m) throw std::invalid_argument("construct_cshk: k > m");
    if (s + h <= 0 || s + h > n) throw std::invalid_argument("construct_cshk: need 0 < s+h <= n");
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < m; ++j) cells.emplace_back(i, j);
    for (int i = s; i < s + h; ++i)
        for (int j = 0; j < k; ++j) cells.emplace_back(i, j);
    Code C = code_from_cells(f, n, m, cells);
    if (C.dim() != s * m + h * k)
        throw std::logic_error("construct_cshk: dimension mismatch");
    return C;
}

/// Closed-form qOAC test for C_{s,h,k} (n <= m, k < m):
/// 0 < min{h,k} <= floor((m-1)/(m-max{h,k})).
inline bool cshk_is_qoac(int s, int h, int k, int m, int n) {
    if (s < 0 || h < 0 || k < 0) throw std::invalid_argument("cshk_is_qoac: negative parameter");
    if (s + h <= 0 || s + h > n) throw std::invalid_argument("cshk_is_qoac: need 0 < s+h <= n");
    if (k >= m) throw std::invalid_argument("cshk_is_qoac: need k < m");
    if (n > m) throw std::invalid_argument("cshk_is_qoac: need n <= m");
    const int lo = std::min(h, k), hi = std::max(h, k);
    if (lo <= 0) return false;
    if (hi >= m) return false;  // m | hk in that case
    return lo <= (m - 1) / (m - hi);
}

// ---------------------------------------------------------------------------
// Gallery constructions. Shapes are described by their free-cell pattern;
// dimensions (and, within the codeword cap, maximum ranks) are validated
// at construction.

namespace detail {

inline void gallery_check(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument("gallery: " + msg);
}

inline void validate_maxrk(const Code& C, int expected, std::uint64_t cap) {
    if (codeword_count(C) <= cap && maxrk(C, cap) != expected)
        throw std::logic_error("gallery: constructed code has unexpected maximum rank");
}

}  // namespace detail

/// Layered family: alpha-1 full rows, one row free in its first m-k
/// columns, one row free in its first rho+k columns, zero rows below.
/// Constraints: m >= max(2, n), 0 < alpha < n <= m, 0 < rho < m,
/// 0 <= k <= m - rho.
inline Code gallery_layered_family(const FieldPtr& f, int n, int m, int alpha, int rho, int k,
                                   std::uint64_t cap = kDefaultCodewordCap) {
    detail::gallery_check(m >= std::max(2, n), "layered family needs m >= max(2, n)");
    detail::gallery_check(0 < alpha && alpha < n, "layered family needs 0 < alpha < n");
    detail::gallery_check(0 < rho && rho < m, "layered family needs 0 < rho < m");
    detail::gallery_check(0 <= k && k <= m - rho, "layered family needs 0 <= k <= m - rho");
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < alpha - 1; ++i)
        for (int j = 0; j < m; ++j) cells.emplace_back(i, j);
    for (int j = 0; j < m - k; ++j) cells.emplace_back(alpha - 1, j);
    for (int j = 0; j < rho + k; ++j) cells.emplace_back(alpha, j);
    Code C = code_from_cells(f, n, m, cells);
    if (C.dim() != alpha * m + rho) throw std::logic_error("gallery: layered family dimension");
    detail::validate_maxrk(C, alpha + 1, cap);
    return C;
}

/// Canonical dually-qOAC forms, as C_{s,h,k} instances:
///   a: (alpha, 1, rho)
///   b: (alpha, rho, 1),                requires rho <= n - alpha
///   c: (alpha+rho+1-m, m-rho, m-1),    requires rho >= m - alpha - 1
///   d: (0, n, alpha+1),                requires m = n + 1 and rho = n - alpha
inline Code gallery_canonical_form(const FieldPtr& f, char form, int n, int m, int alpha,
                                   int rho, std::uint64_t cap = kDefaultCodewordCap) {
    detail::gallery_check(0 <= alpha && alpha < n && n <= m, "canonical form needs 0 <= alpha < n <= m");
    detail::gallery_check(0 < rho && rho < m, "canonical form needs 0 < rho < m");
    Code C = Code::zero(f, n, m);
    switch (form) {
        case 'a':
            C = construct_cshk(f, n, m, alpha, 1, rho);
            break;
        case 'b':
            detail::gallery_check(rho <= n - alpha, "form b needs rho <= n - alpha");
            C = construct_cshk(f, n, m, alpha, rho, 1);
            break;
        case 'c':
            detail::gallery_check(rho >= m - alpha - 1, "form c needs rho >= m - alpha - 1");
            C = construct_cshk(f, n, m, alpha + rho + 1 - m, m - rho, m - 1);
            break;
        case 'd':
            detail::gallery_check(m == n + 1, "form d needs m = n + 1");
            detail::gallery_check(rho == n - alpha, "form d needs rho = n - alpha");
            C = construct_cshk(f, n, m, 0, n, alpha + 1);
            break;
        default:
            throw std::invalid_argument("gallery: unknown canonical form");
    }
    if (C.dim() != alpha * m + rho) throw std::logic_error("gallery: canonical form dimension");
    detail::validate_maxrk(C, alpha + 1, cap);
    return C;
}

/// Hollow-block construction: an (m-rho) x (m-rho) zero-diagonal block plus
/// free strips. A qOAC whose dual is not one. Constraints: n <= m,
/// 1 <= alpha <= n-1, max(1, m-alpha-1) <= rho <= m-2.
inline Code gallery_hollow_block(const FieldPtr& f, int n, int m, int alpha, int rho,
                                 std::uint64_t cap = kDefaultCodewordCap) {
    detail::gallery_check(n <= m, "hollow block needs n <= m");
    detail::gallery_check(1 <= alpha && alpha <= n - 1, "hollow block needs 1 <= alpha <= n-1");
    detail::gallery_check(rho >= 1 && rho >= m - alpha - 1 && rho <= m - 2,
                          "hollow block needs max(1, m-alpha-1) <= rho <= m-2");
    const int w = m - rho;           // hollow block size, >= 2
    const int t = alpha + 1 - w;     // extra fully free rows, >= 0
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < w; ++i) {
        for (int j = 0; j < w; ++j)
            if (i != j) cells.emplace_back(i, j);
        for (int j = w; j < m; ++j) cells.emplace_back(i, j);
    }
    for (int i = w; i < w + t; ++i)
        for (int j = 0; j < m; ++j) cells.emplace_back(i, j);
    Code C = code_from_cells(f, n, m, cells);
    if (C.dim() != alpha * m + rho) throw std::logic_error("gallery: hollow block dimension");
    detail::validate_maxrk(C, alpha + 1, cap);
    return C;
}

/// The binary 4x4 code of dimension 9 with two tied diagonal entries;
/// maximum rank 3, and not contained in any Mat(U) + Mat(W)^t with
/// dim U + dim W = 3.
inline Code gallery_tied_diagonal(const FieldPtr& f, std::uint64_t cap = kDefaultCodewordCap) {
    detail::gallery_check(f->q() == 2, "tied-diagonal code needs q = 2");
    const int n = 4, m = 4;
    std::vector<Mat> gens;
    auto E = [&](int i, int j) { return Mat::unit(f, n, m, i, j); };
    gens.push_back(E(0, 0));              // a1
    gens.push_back(E(1, 1) + E(2, 2));    // a2
    gens.push_back(E(2, 2) + E(3, 3));    // a3
    gens.push_back(E(0, 1));              // a4
    gens.push_back(E(0, 2));              // a5
    gens.push_back(E(0, 3));              // a6
    gens.push_back(E(1, 2));              // a7
    gens.push_back(E(1, 3));              // a8
    gens.push_back(E(2, 3));              // a9
    Code C = Code::from_matrices(f, n, m, gens);
    if (C.dim() != 9) throw std::logic_error("gallery: tied-diagonal dimension");
    detail::validate_maxrk(C, 3, cap);
    return C;
}

/// Named gallery dispatcher used by the CLI. Parameter keys: n, m, s, h, k,
/// alpha, rho as each construction requires.
inline Code gallery(const FieldPtr& f, const std::string& name,
                    const std::map<std::string, int>& params,
                    std::uint64_t cap = kDefaultCodewordCap) {
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("gallery: missing parameter '" + std::string(key) + "'");
        return it->second;
    };
    if (name == "cshk")
        return construct_cshk(f, get("n"), get("m"), get("s"), get("h"), get("k"));
    if (name == "example-2.3")
        return gallery_layered_family(f, get("n"), get("m"), get("alpha"), get("rho"), get("k"), cap);
    if (name.size() == 8 && name.rfind("thm2.5-", 0) == 0)
        return gallery_canonical_form(f, name.back(), get("n"), get("m"), get("alpha"), get("rho"), cap);
    if (name == "example-2.7")
        return gallery_hollow_block(f, get("n"), get("m"), get("alpha"), get("rho"), cap);
    if (name == "example-2.8")
        return gallery_tied_diagonal(f, cap);
    throw std::invalid_argument("gallery: unknown name '" + name + "'");
}

}  // namespace qoac

#endif  // QOAC_CODES_HPP
