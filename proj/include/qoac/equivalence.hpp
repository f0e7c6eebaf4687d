#ifndef QOAC_EQUIVALENCE_HPP
#define QOAC_EQUIVALENCE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qoac/codes.hpp"
#include "qoac/invariants.hpp"

namespace qoac {

/// A -> N A M, or A -> N A^t M on square shapes.
struct Isometry {
    Mat row_transform;   // N, invertible n x n
    Mat col_transform;   // M, invertible m x m
    bool transpose = false;
};

inline Mat apply_isometry(const Isometry& iso, const Mat& A) {
    if (iso.transpose) {
        if (A.nrows() != A.ncols())
            throw std::invalid_argument("apply_isometry: transpose needs a square shape");
        return iso.row_transform * A.transpose() * iso.col_transform;
    }
    return iso.row_transform * A * iso.col_transform;
}

/// Image code under the isometry; every basis element's rank is checked
/// to be preserved.
inline Code apply_isometry(const Isometry& iso, const Code& C) {
    if (iso.row_transform.nrows() != C.nrows() || iso.col_transform.nrows() != C.ncols())
        throw std::invalid_argument("apply_isometry: shape mismatch");
    if (iso.transpose && C.nrows() != C.ncols())
        throw std::invalid_argument("apply_isometry: transpose needs a square shape");
    std::vector<GFVec> rows;
    rows.reserve(C.dim());
    for (int i = 0; i < C.dim(); ++i) {
        const Mat B = C.basis_mat(i);
        const Mat img = apply_isometry(iso, B);
        if (rank(img) != rank(B))
            throw std::logic_error("apply_isometry: rank not preserved (transform singular?)");
        rows.push_back(img.vectorize());
    }
    return Code(C.field(), C.nrows(), C.ncols(),
                Subspace::span(C.field(), C.nrows() * C.ncols(), std::move(rows)));
}

inline BigInt gl_order(int n, unsigned q) {
    BigInt total = 1;
    for (int i = 0; i < n; ++i) total *= big_pow(q, n) - big_pow(q, i);
    return total;
}

/// All invertible n x n matrices, generated row by row (each new row
/// outside the span of the previous ones), in ascending row-index order.
/// The count is asserted against prod(q^n - q^i).
inline std::vector<Mat> enumerate_gl(const FieldPtr& f, int n) {
    const unsigned q = f->q();
    std::uint64_t vecs = 1;
    for (int i = 0; i < n; ++i) vecs *= q;

    std::vector<Mat> out;
    std::vector<GFVec> chosen;
    std::vector<GFVec> reduced;  // running RREF of chosen rows

    auto in_span = [&](const GFVec& v) {
        if (reduced.empty()) return std::all_of(v.begin(), v.end(), [](GFElem x) { return !x; });
        std::vector<GFVec> rows = reduced;
        rows.push_back(v);
        return static_cast<int>(rref_rows(*f, rows).size()) == static_cast<int>(reduced.size());
    };

    std::vector<GFVec> stack_rows;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(stack_rows.size()) == n) {
            out.push_back(Mat::from_rows(f, stack_rows));
            return;
        }
        for (std::uint64_t idx = 0; idx < vecs; ++idx) {
            GFVec v(n);
            std::uint64_t t = idx;
            for (int i = 0; i < n; ++i) { v[i] = static_cast<GFElem>(t % q); t /= q; }
            if (in_span(v)) continue;
            std::vector<GFVec> save = reduced;
            stack_rows.push_back(v);
            reduced.push_back(v);
            rref_rows(*f, reduced);
            rec();
            stack_rows.pop_back();
            reduced = std::move(save);
        }
    };
    rec();

    if (BigInt(out.size()) != gl_order(n, q))
        throw std::logic_error("enumerate_gl: cardinality mismatch");
    return out;
}

struct EquivOptions {
    std::uint64_t group_cap = kDefaultGroupCap;
    std::uint64_t codeword_cap = kDefaultCodewordCap;
    std::uint64_t subspace_cap = kDefaultSubspaceCap;
    bool use_fingerprints = true;
};

/// Exhaustive isometry search. Returns a witness isometry, or nullopt for
/// definitive non-equivalence. Prunes by dimension, rank distribution and
/// generalized weights before touching the group.
inline std::optional<Isometry> are_equivalent(const Code& C, const Code& D,
                                              const EquivOptions& opts = {}) {
    require_same_field(*C.field(), *D.field(), "are_equivalent");
    if (C.nrows() != D.nrows() || C.ncols() != D.ncols())
        throw std::invalid_argument("are_equivalent: ambient shapes differ");
    if (C.dim() != D.dim()) return std::nullopt;

    const int n = C.nrows(), m = C.ncols();
    const unsigned q = C.field()->q();

    if (opts.use_fingerprints) {
        if (codeword_count(C) <= opts.codeword_cap) {
            if (!(rank_distribution_oracle(C, opts.codeword_cap) ==
                  rank_distribution_oracle(D, opts.codeword_cap)))
                return std::nullopt;
        }
        BigInt side_budget = subspace_lattice_size(n, q) + subspace_lattice_size(m, q);
        if (side_budget <= opts.subspace_cap) {
            if (!(generalized_weights_oracle(C, opts.subspace_cap) ==
                  generalized_weights_oracle(D, opts.subspace_cap)))
                return std::nullopt;
        }
    }

    BigInt pairs = gl_order(n, q) * gl_order(m, q);
    if (n == m) pairs *= 2;
    if (pairs > opts.group_cap) throw CapExceeded("are_equivalent", pairs, opts.group_cap);

    const std::vector<Mat> gl_n = enumerate_gl(C.field(), n);
    const std::vector<Mat> gl_m = (n == m) ? gl_n : enumerate_gl(C.field(), m);

    const std::vector<Mat> basis = C.basis_mats();
    std::vector<GFVec> rows(basis.size());

    auto try_branch = [&](bool transpose) -> std::optional<Isometry> {
        for (const Mat& N : gl_n)
            for (const Mat& M : gl_m) {
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    const Mat img = transpose ? N * basis[i].transpose() * M : N * basis[i] * M;
                    rows[i] = img.vectorize();
                }
                std::vector<GFVec> copy = rows;
                Subspace S = Subspace::span(C.field(), n * m, std::move(copy));
                if (S == D.space()) return Isometry{N, M, transpose};
            }
        return std::nullopt;
    };

    if (auto w = try_branch(false)) return w;
    if (n == m)
        if (auto w = try_branch(true)) return w;
    return std::nullopt;
}

/// Searches for U in F_q^n of dim s and W in F_q^m of dim k with
/// C contained in Mat(U) + Mat(W)^t; membership is tested on basis
/// elements only.
inline std::optional<std::pair<Subspace, Subspace>> contained_in_mat_sum(
    const Code& C, int s, int k, std::uint64_t subspace_cap = kDefaultSubspaceCap) {
    const int n = C.nrows(), m = C.ncols();
    const unsigned q = C.field()->q();
    if (s < 0 || s > n || k < 0 || k > m)
        throw std::invalid_argument("contained_in_mat_sum: dimensions out of range");
    BigInt budget = gaussian_binomial(n, s, q) * gaussian_binomial(m, k, q);
    if (budget > subspace_cap) throw CapExceeded("contained_in_mat_sum", budget, subspace_cap);

    std::vector<Subspace> ws;
    for_each_subspace(C.field(), m, k, [&](const Subspace& W) { ws.push_back(W); }, subspace_cap);

    std::optional<std::pair<Subspace, Subspace>> found;
    for_each_subspace(C.field(), n, s, [&](const Subspace& U) {
        const Code MU = mat_support(C.field(), U, m);
        for (const Subspace& W : ws) {
            const Code MW = mat_support_rows(C.field(), W, n);
            const Subspace sum = subspace_sum(MU.space(), MW.space());
            bool all_in = true;
            for (const GFVec& b : C.space().basis())
                if (!sum.contains(b)) { all_in = false; break; }
            if (all_in) { found = std::make_pair(U, W); return false; }
        }
        return true;
    }, subspace_cap);
    return found;
}

// ---------------------------------------------------------------------------
// Classification audit

struct AuditEntry {
    Code code;
    char matched_form;  // 'a'..'d'
    Isometry witness;
};

struct AuditReport {
    unsigned q = 0;
    int n = 0, m = 0, dim = 0;
    std::uint64_t scanned = 0;
    int dually_qoac_found = 0;
    std::map<char, int> by_form;
    std::vector<AuditEntry> classified;
    std::vector<Code> unclassified;  // would falsify the audit; must stay empty
    bool ok() const { return unclassified.empty(); }
};

struct AuditOptions {
    std::uint64_t subspace_cap = kDefaultSubspaceCap;
    std::uint64_t codeword_cap = kDefaultCodewordCap;
    std::uint64_t group_cap = kDefaultGroupCap;
};

/// Enumerates every dim-dimensional subcode of F_q^{n x m}, filters the
/// dually quasi-optimal anticodes, and matches each against the canonical
/// forms a-d, producing witness isometries. An unmatched code is reported
/// rather than silently dropped.
inline AuditReport audit_dually_qoac_classification(const FieldPtr& f, int n, int m, int dim,
                                                    const AuditOptions& opts = {}) {
    if (n > m) throw std::invalid_argument("audit: requires n <= m");
    if (dim < 0 || dim > n * m) throw std::invalid_argument("audit: dim out of range");

    AuditReport rep;
    rep.q = f->q();
    rep.n = n;
    rep.m = m;
    rep.dim = dim;

    const int alpha = dim / m, rho = dim % m;
    std::vector<std::pair<char, Code>> forms;
    if (rho > 0 && alpha < n) {
        auto add_form = [&](char letter, Code c) {
            for (const auto& [l, existing] : forms)
                if (existing == c) return;  // identical canonical code under another letter
            forms.emplace_back(letter, std::move(c));
        };
        add_form('a', gallery_canonical_form(f, 'a', n, m, alpha, rho, opts.codeword_cap));
        if (rho <= n - alpha)
            add_form('b', gallery_canonical_form(f, 'b', n, m, alpha, rho, opts.codeword_cap));
        if (rho >= m - alpha - 1)
            add_form('c', gallery_canonical_form(f, 'c', n, m, alpha, rho, opts.codeword_cap));
        if (m == n + 1 && rho == n - alpha)
            add_form('d', gallery_canonical_form(f, 'd', n, m, alpha, rho, opts.codeword_cap));
    }

    EquivOptions eq;
    eq.group_cap = opts.group_cap;
    eq.codeword_cap = opts.codeword_cap;
    eq.subspace_cap = opts.subspace_cap;

    for_each_subspace(f, n * m, dim, [&](const Subspace& S) {
        ++rep.scanned;
        Code C(f, n, m, S);
        if (!is_dually_qoac(C, opts.codeword_cap)) return;
        ++rep.dually_qoac_found;
        for (const auto& [letter, target] : forms) {
            if (auto w = are_equivalent(C, target, eq)) {
                ++rep.by_form[letter];
                rep.classified.push_back(AuditEntry{C, letter, *w});
                return;
            }
        }
        rep.unclassified.push_back(C);
    }, opts.subspace_cap);

    return rep;
}

}  // namespace qoac

#endif  // QOAC_EQUIVALENCE_HPP
