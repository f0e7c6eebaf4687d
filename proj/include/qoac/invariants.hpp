#ifndef QOAC_INVARIANTS_HPP
#define QOAC_INVARIANTS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qoac/codes.hpp"
#include "qoac/combinatorics.hpp"

namespace qoac {

using Rational = boost::multiprecision::cpp_rational;

struct WeightProfile {
    std::vector<int> a;  // a_1..a_dim
    bool operator==(const WeightProfile&) const = default;
};

struct RankDistribution {
    std::vector<BigInt> counts;  // A_0..A_{min(n,m)}
    bool operator==(const RankDistribution&) const = default;
};

inline int dim_intersection(const Subspace& A, const Subspace& B) {
    return A.dim() + B.dim() - subspace_sum(A, B).dim();
}

/// Coordinate subspace spanned by the first d unit vectors.
inline Subspace coordinate_subspace(const FieldPtr& f, int ambient, int d) {
    std::vector<GFVec> rows;
    for (int i = 0; i < d; ++i) {
        GFVec e(ambient, 0);
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return Subspace::span(f, ambient, std::move(rows));
}

// ---------------------------------------------------------------------------
// Generalized weights

/// a_i = (1/m) min{dim(A) : A optimal anticode, dim(A cap C) >= i}, for
/// 1 <= i <= dim(C), with m the larger side. The anticode family is the
/// classified one: column supports Mat(V), plus row supports Mat(U)^t on
/// square shapes. Intersections are computed by linear algebra; no
/// codewords are enumerated.
inline WeightProfile generalized_weights_oracle(const Code& C,
                                                std::uint64_t subspace_cap = kDefaultSubspaceCap) {
    const int n = C.nrows(), m = C.ncols(), d = C.dim();
    const int nn = std::min(n, m);
    WeightProfile W;
    if (d == 0) return W;

    // best[r] = largest dim(A cap C) over anticodes of support dimension r
    std::vector<int> best(nn + 1, 0);
    auto sweep_side = [&](bool columns) {
        const int ambient = columns ? n : m;
        for (int r = 1; r <= ambient; ++r) {
            for_each_subspace(C.field(), ambient, r, [&](const Subspace& V) {
                Code A = columns ? mat_support(C.field(), V, m)
                                 : mat_support_rows(C.field(), V, n);
                const int inter = dim_intersection(C.space(), A.space());
                if (inter > best[r]) best[r] = inter;
            }, subspace_cap);
        }
    };
    if (n <= m) sweep_side(true);
    if (m <= n) sweep_side(false);

    W.a.resize(d);
    for (int i = 1; i <= d; ++i) {
        int r = 0;
        while (r <= nn && best[r] < i) ++r;
        if (r > nn) throw std::logic_error("generalized_weights_oracle: no anticode meets the code");
        W.a[i - 1] = r;
    }
    for (int i = 1; i < d; ++i)
        if (W.a[i] < W.a[i - 1])
            throw std::logic_error("generalized_weights_oracle: profile not nondecreasing");
    return W;
}

/// Block formula for the weights of Mat(<e_1..e_s>) + Mat(<e_1..e_k>)^t
/// inside F_q^{n x m}: a_{(i-1)m+1..im} = i for i <= s, then
/// a_{sm+(i-1)k+1..sm+ik} = s+i for i <= n-s.
inline WeightProfile generalized_weights_closed_form(int s, int k, int n, int m) {
    if (n < 1 || m < n) throw std::invalid_argument("weights closed form: need 1 <= n <= m");
    if (s < 0 || s > n || k < 0 || k > m)
        throw std::invalid_argument("weights closed form: need 0 <= s <= n, 0 <= k <= m");
    const int d = s * m + (n - s) * k;
    if (d == 0) throw std::invalid_argument("weights closed form: zero-dimensional code");
    WeightProfile W;
    W.a.resize(d);
    for (int i = 1; i <= s; ++i)
        for (int pos = (i - 1) * m + 1; pos <= i * m; ++pos) W.a[pos - 1] = i;
    for (int i = 1; i <= n - s; ++i)
        for (int pos = s * m + (i - 1) * k + 1; pos <= s * m + i * k; ++pos) W.a[pos - 1] = s + i;
    return W;
}

// ---------------------------------------------------------------------------
// Rank distribution

/// Exact histogram of codeword ranks (A_0..A_{min(n,m)}) by enumeration.
inline RankDistribution rank_distribution_oracle(const Code& C,
                                                 std::uint64_t cap = kDefaultCodewordCap) {
    RankDistribution R;
    R.counts.assign(min_side(C) + 1, 0);
    std::vector<std::uint64_t> hist(min_side(C) + 1, 0);
    detail::scan_ranks(C, cap, [&](int r) {
        ++hist[r];
        return true;
    });
    for (std::size_t i = 0; i < hist.size(); ++i) R.counts[i] = hist[i];
    return R;
}

/// Closed-form rank distribution of Mat(<e_1..e_s>) + Mat(<e_1..e_k>)^t
/// in F_q^{n x m}:
///   A_r = phi_q(s,m,r)
///       + sum_{i=1}^{min{n-s,k,r}} [k choose i]_q [m-i choose r-i]_q q^{si}
///         prod_{t<i} (q^{n-s} - q^t) prod_{j<r-i} (q^s - q^j)
/// for 1 <= r <= min{s+k, n}; A_0 = 1 and A_r = 0 beyond.
inline RankDistribution rank_distribution_closed_form(int s, int k, int n, int m, unsigned q) {
    if (n < 1 || m < n) throw std::invalid_argument("rank distribution: need 1 <= n <= m");
    if (s < 0 || s > n || k < 0 || k > m)
        throw std::invalid_argument("rank distribution: need 0 <= s <= n, 0 <= k <= m");
    const int h = n - s;
    RankDistribution R;
    R.counts.assign(n + 1, 0);
    R.counts[0] = 1;
    const int rmax = std::min(s + k, n);
    for (int r = 1; r <= rmax; ++r) {
        BigInt total = count_rank_matrices(s, m, r, q);
        const int imax = std::min({h, k, r});
        for (int i = 1; i <= imax; ++i) {
            BigInt term = gaussian_binomial(k, i, q) * gaussian_binomial(m - i, r - i, q) *
                          big_pow(q, std::uint64_t(s) * i);
            for (int t = 0; t < i; ++t) term *= big_pow(q, h) - big_pow(q, t);
            for (int j = 0; j < r - i; ++j) term *= big_pow(q, s) - big_pow(q, j);
            total += term;
        }
        R.counts[r] = total;
    }
    return R;
}

// ---------------------------------------------------------------------------
// q-polymatroid rank functions

/// rho_c(C, J) = (dim C - dim(C cap Mat(J-perp)))/m for J in F_q^n.
inline Rational rho_col(const Code& C, const Subspace& J) {
    if (J.ambient() != C.nrows())
        throw std::invalid_argument("rho_col: subspace must live in F_q^n");
    require_same_field(*C.field(), *J.field(), "rho_col");
    Code M = mat_support(C.field(), J.orthogonal(), C.ncols());
    const int inter = dim_intersection(C.space(), M.space());
    return Rational(C.dim() - inter, C.ncols());
}

/// rho_r(C, K) = (dim C - dim(C cap Mat(K-perp)^t))/n for K in F_q^m.
inline Rational rho_row(const Code& C, const Subspace& K) {
    if (K.ambient() != C.ncols())
        throw std::invalid_argument("rho_row: subspace must live in F_q^m");
    require_same_field(*C.field(), *K.field(), "rho_row");
    Code M = mat_support_rows(C.field(), K.orthogonal(), C.nrows());
    const int inter = dim_intersection(C.space(), M.space());
    return Rational(C.dim() - inter, C.nrows());
}

namespace detail {
inline void rho_closed_check(int s, int h, int k, int n, int m) {
    if (s < 0 || h < 0 || k < 0 || k > m || s + h > n || n > m)
        throw std::invalid_argument("rho closed form: invalid (s,h,k,n,m)");
}
}  // namespace detail

/// Closed-form rho_r for C = Mat(V) + (Mat(U)^t cap Mat(V')) with
/// V = <e_1..e_s>, V' = <e_1..e_{s+h}>, U = <e_1..e_k>:
///   (h(k - dim(U cap K-perp)) + s dim(K)) / n.
inline Rational rho_row_closed_form(int s, int h, int k, int n, int m, const Subspace& K) {
    detail::rho_closed_check(s, h, k, n, m);
    if (K.ambient() != m) throw std::invalid_argument("rho_row_closed_form: K must live in F_q^m");
    Subspace U = coordinate_subspace(K.field(), m, k);
    const int cut = dim_intersection(U, K.orthogonal());
    return Rational(h * (k - cut) + s * K.dim(), n);
}

/// Closed-form rho_c for the same code:
///   s - dim(V cap J-perp) + k (h + dim(V cap J-perp) - dim(V' cap J-perp)) / m.
inline Rational rho_col_closed_form(int s, int h, int k, int n, int m, const Subspace& J) {
    detail::rho_closed_check(s, h, k, n, m);
    if (J.ambient() != n) throw std::invalid_argument("rho_col_closed_form: J must live in F_q^n");
    Subspace V = coordinate_subspace(J.field(), n, s);
    Subspace Vp = coordinate_subspace(J.field(), n, s + h);
    Subspace Jp = J.orthogonal();
    const int a = dim_intersection(V, Jp);
    const int b = dim_intersection(Vp, Jp);
    return Rational(s - a) + Rational(k * (h + a - b), m);
}

// ---------------------------------------------------------------------------
// Rank-function axioms

struct AxiomCheckResult {
    bool ok = true;
    std::string witness;
    std::uint64_t checks = 0;
};

namespace detail {

inline std::string subspace_brief(const Subspace& S) {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < S.basis().size(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < S.basis()[i].size(); ++j) {
            if (j) os << ",";
            os << S.basis()[i][j];
        }
    }
    os << ">";
    return os.str();
}

template <class RhoFn>
bool axiom_pair(const Subspace& A, const Subspace& B, const Rational& ra, const Rational& rb,
                RhoFn&& rho, AxiomCheckResult& out) {
    if (A.contains(B) && rb > ra) {
        out.ok = false;
        out.witness = "monotonicity: rho(" + subspace_brief(B) + ") > rho(" + subspace_brief(A) + ")";
        return false;
    }
    if (B.contains(A) && ra > rb) {
        out.ok = false;
        out.witness = "monotonicity: rho(" + subspace_brief(A) + ") > rho(" + subspace_brief(B) + ")";
        return false;
    }
    const Rational lhs = rho(subspace_sum(A, B)) + rho(subspace_intersect(A, B));
    if (lhs > ra + rb) {
        out.ok = false;
        out.witness = "submodularity fails on " + subspace_brief(A) + " and " + subspace_brief(B);
        return false;
    }
    ++out.checks;
    return true;
}

}  // namespace detail

/// Checks 0 <= rho(A) <= dim A, monotonicity, and submodularity over the
/// full subspace lattice of F_q^ambient. rho is any callable
/// Subspace -> Rational, so corrupted tables can be exercised directly.
template <class RhoFn>
AxiomCheckResult check_rank_axioms_exhaustive(const FieldPtr& f, int ambient, RhoFn rho,
                                              std::uint64_t cap = kDefaultSubspaceCap) {
    BigInt lattice = subspace_lattice_size(ambient, f->q());
    if (lattice > cap) throw CapExceeded("axiom check (exhaustive)", lattice, cap);

    std::vector<Subspace> all;
    std::vector<Rational> val;
    std::map<Subspace, std::size_t> index;
    for (int d = 0; d <= ambient; ++d)
        for_each_subspace(f, ambient, d, [&](const Subspace& S) {
            index.emplace(S, all.size());
            val.push_back(rho(S));
            all.push_back(S);
        }, cap);

    AxiomCheckResult out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (val[i] < 0 || val[i] > all[i].dim()) {
            out.ok = false;
            out.witness = "bounds: rho(" + detail::subspace_brief(all[i]) + ") outside [0, dim]";
            return out;
        }
        ++out.checks;
    }
    auto memo_rho = [&](const Subspace& S) { return val[index.at(S)]; };
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (!detail::axiom_pair(all[i], all[j], val[i], val[j], memo_rho, out)) return out;
    return out;
}

/// Same checks on seeded random pairs of subspaces.
template <class RhoFn>
AxiomCheckResult check_rank_axioms_sampled(const FieldPtr& f, int ambient, RhoFn rho,
                                           std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const unsigned q = f->q();
    auto random_subspace = [&]() {
        const int d = static_cast<int>(rng() % (ambient + 1));
        std::vector<GFVec> rows(d, GFVec(ambient, 0));
        for (auto& r : rows)
            for (auto& x : r) x = static_cast<GFElem>(rng() % q);
        return Subspace::span(f, ambient, std::move(rows));
    };
    AxiomCheckResult out;
    for (std::uint64_t t = 0; t < samples; ++t) {
        Subspace A = random_subspace(), B = random_subspace();
        const Rational ra = rho(A), rb = rho(B);
        if (ra < 0 || ra > A.dim()) {
            out.ok = false;
            out.witness = "bounds: rho(" + detail::subspace_brief(A) + ") outside [0, dim]";
            return out;
        }
        if (!detail::axiom_pair(A, B, ra, rb, rho, out)) return out;
    }
    return out;
}

enum class PolymatroidSide { Columns, Rows };

/// Runs the axiom checks on (F_q^n, rho_c) or (F_q^m, rho_r) of a code.
inline AxiomCheckResult verify_qpolymatroid_axioms(const Code& C, PolymatroidSide side,
                                                   bool exhaustive = true,
                                                   std::uint64_t cap = kDefaultSubspaceCap,
                                                   std::uint64_t samples = 200,
                                                   std::uint64_t seed = 1) {
    const int ambient = (side == PolymatroidSide::Columns) ? C.nrows() : C.ncols();
    auto rho = [&, side](const Subspace& S) {
        return side == PolymatroidSide::Columns ? rho_col(C, S) : rho_row(C, S);
    };
    return exhaustive ? check_rank_axioms_exhaustive(C.field(), ambient, rho, cap)
                      : check_rank_axioms_sampled(C.field(), ambient, rho, samples, seed);
}

/// ceil(rho_c(C, F_q^n)) = maxrk(C), evaluated through the rank function.
/// Requires that the larger side does not divide dim(C).
inline bool qoac_via_polymatroid(const Code& C, std::uint64_t cap = kDefaultCodewordCap) {
    const int mm = max_side(C);
    if (C.dim() == 0 || C.dim() % mm == 0)
        throw std::invalid_argument("qoac_via_polymatroid: requires m not dividing dim(C)");
    const Rational v = (C.nrows() <= C.ncols())
                           ? rho_col(C, Subspace::full(C.field(), C.nrows()))
                           : rho_row(C, Subspace::full(C.field(), C.ncols()));
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    const BigInt ceil = (num + den - 1) / den;
    return ceil == maxrk(C, cap);
}

}  // namespace qoac

#endif  // QOAC_INVARIANTS_HPP
