#ifndef QOAC_LINALG_HPP
#define QOAC_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qoac/field.hpp"

namespace qoac {

using GFVec = std::vector<GFElem>;

namespace detail {

/// Gauss-Jordan over F_2 on bit-packed rows. Returns pivot columns.
/// rows[i] holds ncols bits across words, bit c of word c/64.
inline std::vector<int> rref_f2_packed(std::vector<std::vector<std::uint64_t>>& rows, int ncols) {
    std::vector<int> pivots;
    const int nr = static_cast<int>(rows.size());
    int r = 0;
    for (int c = 0; c < ncols && r < nr; ++c) {
        const int w = c >> 6;
        const std::uint64_t bit = std::uint64_t(1) << (c & 63);
        int pr = -1;
        for (int i = r; i < nr; ++i)
            if (rows[i][w] & bit) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[r], rows[pr]);
        for (int i = 0; i < nr; ++i) {
            if (i != r && (rows[i][w] & bit)) {
                for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] ^= rows[r][k];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::vector<int> rref_generic(const Field& F, std::vector<GFVec>& rows) {
    std::vector<int> pivots;
    const int nr = static_cast<int>(rows.size());
    const int nc = nr ? static_cast<int>(rows[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int pr = -1;
        for (int i = r; i < nr; ++i)
            if (rows[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[r], rows[pr]);
        const GFElem s = F.inv(rows[r][c]);
        if (s != 1)
            for (int j = 0; j < nc; ++j) rows[r][j] = F.mul(rows[r][j], s);
        for (int i = 0; i < nr; ++i) {
            const GFElem f = rows[i][c];
            if (i == r || f == 0) continue;
            for (int j = 0; j < nc; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::vector<std::uint64_t> pack_f2(const GFVec& row) {
    std::vector<std::uint64_t> w((row.size() + 63) / 64, 0);
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c]) w[c >> 6] |= std::uint64_t(1) << (c & 63);
    return w;
}

inline void unpack_f2(const std::vector<std::uint64_t>& w, GFVec& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
        row[c] = (w[c >> 6] >> (c & 63)) & 1;
}

}  // namespace detail

/// In-place reduced row echelon form; canonical (pivot entries 1, pivot
/// columns otherwise zero, pivots strictly increasing). Returns the pivot
/// column list. Rows past the returned count are zero afterwards.
inline std::vector<int> rref_rows(const Field& F, std::vector<GFVec>& rows) {
    if (rows.empty()) return {};
    if (F.q() == 2) {
        const int nc = static_cast<int>(rows[0].size());
        std::vector<std::vector<std::uint64_t>> packed(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) packed[i] = detail::pack_f2(rows[i]);
        auto piv = detail::rref_f2_packed(packed, nc);
        for (std::size_t i = 0; i < rows.size(); ++i) detail::unpack_f2(packed[i], rows[i]);
        return piv;
    }
    return detail::rref_generic(F, rows);
}

/// Rank-only forward elimination on a small row-major buffer, destroys it.
inline int rank_rows_buffer(const Field& F, GFElem* a, int nr, int nc) {
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int pr = -1;
        for (int i = r; i < nr; ++i)
            if (a[i * nc + c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = c; j < nc; ++j) std::swap(a[r * nc + j], a[pr * nc + j]);
        const GFElem inv = F.inv(a[r * nc + c]);
        for (int i = r + 1; i < nr; ++i) {
            const GFElem f = a[i * nc + c];
            if (f == 0) continue;
            const GFElem t = F.mul(f, inv);
            for (int j = c; j < nc; ++j)
                a[i * nc + j] = F.sub(a[i * nc + j], F.mul(t, a[r * nc + j]));
        }
        ++r;
    }
    return r;
}

/// Rank of up to 64-column F_2 rows packed one word per row; destroys input.
inline int rank_f2_words(std::uint64_t* rows, int nr) {
    int rank = 0;
    for (int i = 0; i < nr; ++i) {
        std::uint64_t v = rows[i];
        for (int j = 0; j < rank; ++j)
            if (v & (rows[j] & ~(rows[j] - 1))) v ^= rows[j];
        if (v) {
            // keep reduced rows ordered by lowest set bit for the mask trick
            rows[rank] = v;
            for (int j = rank; j > 0 && (rows[j] & -rows[j]) < (rows[j - 1] & -rows[j - 1]); --j)
                std::swap(rows[j], rows[j - 1]);
            ++rank;
        }
    }
    return rank;
}

/// Dense matrix over a shared field, row-major entries.
class Mat {
public:
    Mat(FieldPtr f, int nrows, int ncols)
        : f_(std::move(f)), nrows_(nrows), ncols_(ncols), a_(std::size_t(nrows) * ncols, 0) {
        if (nrows < 0 || ncols < 0) throw std::invalid_argument("Mat: negative shape");
    }

    static Mat zeros(FieldPtr f, int n, int m) { return Mat(std::move(f), n, m); }

    static Mat identity(FieldPtr f, int n) {
        Mat I(std::move(f), n, n);
        for (int i = 0; i < n; ++i) I.set(i, i, 1);
        return I;
    }

    /// Elementary matrix with a single 1 at (i, j).
    static Mat unit(FieldPtr f, int n, int m, int i, int j) {
        Mat E(std::move(f), n, m);
        E.set(i, j, 1);
        return E;
    }

    static Mat from_rows(FieldPtr f, const std::vector<GFVec>& rows) {
        const int n = static_cast<int>(rows.size());
        const int m = n ? static_cast<int>(rows[0].size()) : 0;
        Mat M(std::move(f), n, m);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != m)
                throw std::invalid_argument("Mat::from_rows: ragged rows");
            for (int j = 0; j < m; ++j) M.set(i, j, rows[i][j]);
        }
        return M;
    }

    const FieldPtr& field() const noexcept { return f_; }
    int nrows() const noexcept { return nrows_; }
    int ncols() const noexcept { return ncols_; }

    GFElem at(int i, int j) const { return a_[std::size_t(i) * ncols_ + j]; }
    void set(int i, int j, GFElem v) {
        if (v >= f_->q()) throw std::invalid_argument("Mat::set: entry out of field range");
        a_[std::size_t(i) * ncols_ + j] = v;
    }

    const GFVec& data() const noexcept { return a_; }

    GFVec row(int i) const { return GFVec(a_.begin() + std::size_t(i) * ncols_, a_.begin() + std::size_t(i + 1) * ncols_); }

    Mat transpose() const {
        Mat T(f_, ncols_, nrows_);
        for (int i = 0; i < nrows_; ++i)
            for (int j = 0; j < ncols_; ++j) T.set(j, i, at(i, j));
        return T;
    }

    Mat operator+(const Mat& o) const {
        check_shape(o, "Mat::operator+");
        Mat R(f_, nrows_, ncols_);
        for (std::size_t k = 0; k < a_.size(); ++k) R.a_[k] = f_->add(a_[k], o.a_[k]);
        return R;
    }

    Mat operator-(const Mat& o) const {
        check_shape(o, "Mat::operator-");
        Mat R(f_, nrows_, ncols_);
        for (std::size_t k = 0; k < a_.size(); ++k) R.a_[k] = f_->sub(a_[k], o.a_[k]);
        return R;
    }

    Mat scaled(GFElem c) const {
        Mat R(f_, nrows_, ncols_);
        for (std::size_t k = 0; k < a_.size(); ++k) R.a_[k] = f_->mul(a_[k], c);
        return R;
    }

    Mat operator*(const Mat& o) const {
        require_same_field(*f_, *o.f_, "Mat::operator*");
        if (ncols_ != o.nrows_) throw std::invalid_argument("Mat::operator*: shape mismatch");
        Mat R(f_, nrows_, o.ncols_);
        for (int i = 0; i < nrows_; ++i)
            for (int k = 0; k < ncols_; ++k) {
                const GFElem aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.ncols_; ++j)
                    R.a_[std::size_t(i) * o.ncols_ + j] =
                        f_->add(R.a_[std::size_t(i) * o.ncols_ + j], f_->mul(aik, o.at(k, j)));
            }
        return R;
    }

    bool operator==(const Mat& o) const {
        return *f_ == *o.f_ && nrows_ == o.nrows_ && ncols_ == o.ncols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](GFElem v) { return v == 0; });
    }

    /// Row-major vectorization into F_q^{nrows*ncols}.
    GFVec vectorize() const { return a_; }

    static Mat devectorize(FieldPtr f, const GFVec& v, int n, int m) {
        if (static_cast<int>(v.size()) != n * m)
            throw std::invalid_argument("Mat::devectorize: length mismatch");
        Mat M(std::move(f), n, m);
        M.a_ = v;
        return M;
    }

private:
    void check_shape(const Mat& o, const char* where) const {
        require_same_field(*f_, *o.f_, where);
        if (nrows_ != o.nrows_ || ncols_ != o.ncols_)
            throw std::invalid_argument(std::string(where) + ": shape mismatch");
    }

    FieldPtr f_;
    int nrows_, ncols_;
    GFVec a_;
};

inline int rank(const Mat& M) {
    const Field& F = *M.field();
    if (F.q() == 2 && M.ncols() <= 64) {
        std::uint64_t rows[64];
        const int n = M.nrows();
        for (int i = 0; i < n && i < 64; ++i) {
            std::uint64_t w = 0;
            for (int j = 0; j < M.ncols(); ++j)
                if (M.at(i, j)) w |= std::uint64_t(1) << j;
            rows[i] = w;
        }
        if (n <= 64) return rank_f2_words(rows, n);
    }
    GFVec buf = M.data();
    return rank_rows_buffer(F, buf.data(), M.nrows(), M.ncols());
}

/// Canonical reduced row echelon form with the pivot column list.
inline std::pair<Mat, std::vector<int>> rref(const Mat& M) {
    std::vector<GFVec> rows(M.nrows());
    for (int i = 0; i < M.nrows(); ++i) rows[i] = M.row(i);
    auto piv = rref_rows(*M.field(), rows);
    return {Mat::from_rows(M.field(), rows), piv};
}

/// Tr(M N^t) = sum_{i,j} M_ij N_ij; equals the dot product of the
/// row-major vectorizations, which the duality below relies on.
inline GFElem trace_pairing(const Mat& M, const Mat& N) {
    require_same_field(*M.field(), *N.field(), "trace_pairing");
    if (M.nrows() != N.nrows() || M.ncols() != N.ncols())
        throw std::invalid_argument("trace_pairing: shape mismatch");
    const Field& F = *M.field();
    GFElem acc = 0;
    for (std::size_t k = 0; k < M.data().size(); ++k)
        acc = F.add(acc, F.mul(M.data()[k], N.data()[k]));
    return acc;
}

/// Subspace of F_q^ambient in canonical reduced-row-echelon form.
/// Two subspaces are equal iff their canonical bases are identical.
class Subspace {
public:
    Subspace(FieldPtr f, int ambient) : f_(std::move(f)), ambient_(ambient) {
        if (ambient < 0) throw std::invalid_argument("Subspace: negative ambient");
    }

    static Subspace zero(FieldPtr f, int ambient) { return Subspace(std::move(f), ambient); }

    static Subspace full(FieldPtr f, int ambient) {
        Subspace S(f, ambient);
        for (int i = 0; i < ambient; ++i) {
            GFVec e(ambient, 0);
            e[i] = 1;
            S.basis_.push_back(std::move(e));
            S.pivots_.push_back(i);
        }
        return S;
    }

    static Subspace span(FieldPtr f, int ambient, std::vector<GFVec> rows) {
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != ambient)
                throw std::invalid_argument("Subspace::span: row length mismatch");
        Subspace S(f, ambient);
        auto piv = rref_rows(*f, rows);
        rows.resize(piv.size());
        S.basis_ = std::move(rows);
        S.pivots_ = std::move(piv);
        return S;
    }

    static Subspace spanned_by(FieldPtr f, const GFVec& v) {
        return span(std::move(f), static_cast<int>(v.size()), {v});
    }

    const FieldPtr& field() const noexcept { return f_; }
    int ambient() const noexcept { return ambient_; }
    int dim() const noexcept { return static_cast<int>(basis_.size()); }
    const std::vector<GFVec>& basis() const noexcept { return basis_; }
    const std::vector<int>& pivots() const noexcept { return pivots_; }

    bool contains(GFVec v) const {
        if (static_cast<int>(v.size()) != ambient_)
            throw std::invalid_argument("Subspace::contains: length mismatch");
        const Field& F = *f_;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const GFElem c = v[pivots_[i]];
            if (c == 0) continue;
            for (int j = 0; j < ambient_; ++j) v[j] = F.sub(v[j], F.mul(c, basis_[i][j]));
        }
        return std::all_of(v.begin(), v.end(), [](GFElem x) { return x == 0; });
    }

    bool contains(const Subspace& other) const {
        for (const auto& r : other.basis_)
            if (!contains(r)) return false;
        return true;
    }

    /// Orthogonal complement w.r.t. the standard dot product on F_q^ambient.
    Subspace orthogonal() const {
        const Field& F = *f_;
        std::vector<bool> is_pivot(ambient_, false);
        for (int p : pivots_) is_pivot[p] = true;
        std::vector<GFVec> ker;
        for (int c = 0; c < ambient_; ++c) {
            if (is_pivot[c]) continue;
            GFVec w(ambient_, 0);
            w[c] = 1;
            for (std::size_t i = 0; i < basis_.size(); ++i)
                w[pivots_[i]] = F.neg(basis_[i][c]);
            ker.push_back(std::move(w));
        }
        return span(f_, ambient_, std::move(ker));
    }

    bool operator==(const Subspace& o) const {
        return *f_ == *o.f_ && ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool operator<(const Subspace& o) const {
        if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
        return basis_ < o.basis_;
    }

private:
    FieldPtr f_;
    int ambient_;
    std::vector<GFVec> basis_;   // canonical RREF rows
    std::vector<int> pivots_;
};

inline Subspace subspace_sum(const Subspace& A, const Subspace& B) {
    require_same_field(*A.field(), *B.field(), "subspace_sum");
    if (A.ambient() != B.ambient())
        throw std::invalid_argument("subspace_sum: ambient mismatch");
    std::vector<GFVec> rows = A.basis();
    rows.insert(rows.end(), B.basis().begin(), B.basis().end());
    return Subspace::span(A.field(), A.ambient(), std::move(rows));
}

inline Subspace subspace_intersect(const Subspace& A, const Subspace& B) {
    require_same_field(*A.field(), *B.field(), "subspace_intersect");
    if (A.ambient() != B.ambient())
        throw std::invalid_argument("subspace_intersect: ambient mismatch");
    return subspace_sum(A.orthogonal(), B.orthogonal()).orthogonal();
}

inline Subspace row_space(const Mat& M) {
    std::vector<GFVec> rows(M.nrows());
    for (int i = 0; i < M.nrows(); ++i) rows[i] = M.row(i);
    return Subspace::span(M.field(), M.ncols(), std::move(rows));
}

inline Subspace col_space(const Mat& M) { return row_space(M.transpose()); }

}  // namespace qoac

#endif  // QOAC_LINALG_HPP
