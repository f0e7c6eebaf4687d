// Acceptance suite: one pass/fail line per criterion. Each criterion is an
// exact cross-check between a closed formula and an independent exhaustive
// computation, or an exhaustive structural audit, at desk scale.
//
// Usage: acceptance [criterion-number ...]   (default: run all)
// Exit code: number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qoac/qoac.hpp"

using namespace qoac;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string title;
    std::function<bool(std::ostream&)> run;
};

bool table_clean(const VerifyTable& t, std::ostream& log, std::size_t max_listed = 10) {
    if (t.ok()) {
        log << t.matches() << " match, " << t.skipped() << " skipped";
        return true;
    }
    log << t.mismatches() << " mismatches out of " << t.rows.size() << " rows: ";
    std::size_t listed = 0;
    for (const auto& r : t.rows) {
        if (r.status != VerifyRow::Status::Mismatch) continue;
        if (listed++ >= max_listed) { log << " ..."; break; }
        log << "[" << r.point << " closed=" << r.closed << " oracle=" << r.oracle << "] ";
    }
    return false;
}

// 1. Rank-distribution identity: closed form equals the codeword census
//    exactly for q in {2,3}, 1 <= n <= m <= 4, every (s,k) within 2^20.
bool criterion1(std::ostream& log) {
    VerifyConfig cfg;
    cfg.qs = {2, 3};
    cfg.n_max = 4;
    cfg.m_max = 4;
    cfg.codeword_cap = std::uint64_t(1) << 20;
    return table_clean(verify_rank_distribution(cfg), log);
}

// 2. Generalized-weights identity: block formula equals the anticode-search
//    oracle for q in {2,3}, n <= m <= 3, every valid (s,k); includes the
//    pinned point (s=1,k=1,n=m=2,q=2) -> (1,1,2).
bool criterion2(std::ostream& log) {
    auto f2 = make_field(2);
    const std::vector<int> expected{1, 1, 2};
    bool pinned_ok =
        generalized_weights_closed_form(1, 1, 2, 2).a == expected &&
        generalized_weights_oracle(construct_cshk(f2, 2, 2, 1, 1, 1)).a == expected;

    VerifyConfig cfg;
    cfg.qs = {2, 3};
    cfg.n_max = 3;
    cfg.m_max = 3;
    VerifyTable t = verify_generalized_weights(cfg);
    bool sweep_ok = table_clean(t, log);
    if (!pinned_ok) log << " [pinned point (1,1,2) FAILED]";
    if (!sweep_ok)
        log << " -- every divergence sits on a square shape with s < k < m, where "
               "row-support anticodes intersect the code in more dimensions than the "
               "column-support family behind the formula";
    return sweep_ok && pinned_ok;
}

// 3. q-polymatroid identity: closed-form rank functions equal the definition
//    on every subspace of both sides for q=2, n <= m <= 3, all (s,h,k);
//    both rank functions satisfy the axioms exhaustively.
bool criterion3(std::ostream& log) {
    VerifyConfig cfg;
    cfg.qs = {2};
    cfg.n_max = 3;
    cfg.m_max = 3;
    VerifyTable ranks = verify_polymatroid_rank(cfg);
    bool ok = table_clean(ranks, log);
    VerifyTable axioms = verify_polymatroid_axioms(cfg);
    log << "; axioms: ";
    ok = table_clean(axioms, log) && ok;
    return ok;
}

// 4. Duality-sum trichotomy over every subcode of F_2^{2x2} and F_2^{2x3}:
//    maxrk(C)+maxrk(dual) >= n, = n iff optimal anticode, = n+1 iff dually
//    quasi-optimal. Zero exceptions.
bool criterion4(std::ostream& log) {
    if (subspace_lattice_size(4, 2) != 67 || subspace_lattice_size(6, 2) != 2825) {
        log << "lattice sizes off (expected 67 and 2825)";
        return false;
    }
    VerifyConfig cfg;
    cfg.qs = {2};
    cfg.n_min = 2;
    cfg.n_max = 2;
    cfg.m_min = 2;
    cfg.m_max = 3;
    return table_clean(verify_maxrk_duality(cfg), log);
}

// 5. Classification completeness: at (q=2,n=2,m=2,dim 3) and
//    (q=2,n=2,m=3,dim 4) every dually quasi-optimal anticode found by
//    exhaustive scan is matched, with a checked witness isometry, to a
//    canonical form.
bool criterion5(std::ostream& log) {
    auto f2 = make_field(2);
    bool ok = true;
    for (auto [n, m, dim] : {std::tuple{2, 2, 3}, std::tuple{2, 3, 4}}) {
        AuditReport rep = audit_dually_qoac_classification(f2, n, m, dim);
        log << "(" << n << "x" << m << " dim " << dim << ": " << rep.scanned << " scanned, "
            << rep.dually_qoac_found << " dually qOAC";
        for (const auto& [letter, count] : rep.by_form) log << ", " << count << " form " << letter;
        log << ") ";
        if (!rep.ok()) {
            log << rep.unclassified.size() << " UNCLASSIFIED ";
            ok = false;
            continue;
        }
        const int alpha = dim / m, rho = dim % m;
        for (const auto& e : rep.classified) {
            Code target = gallery_canonical_form(f2, e.matched_form, n, m, alpha, rho);
            if (apply_isometry(e.witness, e.code) != target) {
                log << "BAD WITNESS ";
                ok = false;
            }
        }
        if (rep.dually_qoac_found == 0) {
            log << "NO CODES FOUND ";
            ok = false;
        }
    }
    return ok;
}

// 6. Construction regressions: the tied-diagonal 4x4 binary code has dim 9,
//    maxrk 3 and sits in no Mat(U)+Mat(W)^t with dim U + dim W = 3; the
//    layered family reproduces its dually/non-dually pattern for
//    q=2, n in {2,3}, m in {3,4}; the hollow-block codes are qOACs with
//    non-qOAC duals.
bool criterion6(std::ostream& log) {
    auto f2 = make_field(2);
    bool ok = true;

    Code E8 = gallery_tied_diagonal(f2);
    if (E8.dim() != 9 || maxrk(E8) != 3 || !is_qoac(E8)) {
        log << "tied-diagonal invariants wrong ";
        ok = false;
    }
    for (int s = 0; s <= 3; ++s)
        if (contained_in_mat_sum(E8, s, 3 - s)) {
            log << "tied-diagonal contained at (s=" << s << ",k=" << 3 - s << ") ";
            ok = false;
        }

    int family_points = 0;
    for (int n = 2; n <= 3; ++n)
        for (int m = 3; m <= 4; ++m) {
            if (m < std::max(2, n)) continue;
            for (int alpha = 1; alpha < n; ++alpha)
                for (int rho = 1; rho < m; ++rho)
                    for (int k = 0; k <= m - rho; ++k) {
                        Code C = gallery_layered_family(f2, n, m, alpha, rho, k);
                        const bool predicted_dually =
                            (k == 0 || k == m - rho) ||
                            ((k == 1 || k == m - rho - 1) && rho >= m - 2);
                        if (!is_qoac(C) || is_dually_qoac(C) != predicted_dually) {
                            log << "layered family breaks at n=" << n << " m=" << m
                                << " alpha=" << alpha << " rho=" << rho << " k=" << k << " ";
                            ok = false;
                        }
                        ++family_points;
                    }
        }

    int hollow_points = 0;
    for (int n = 2; n <= 4; ++n)
        for (int m = n; m <= 4; ++m)
            for (int alpha = 1; alpha <= n - 1; ++alpha)
                for (int rho = std::max(1, m - alpha - 1); rho <= m - 2; ++rho) {
                    Code C = gallery_hollow_block(f2, n, m, alpha, rho);
                    Code D = C.dual();
                    const bool good = C.dim() == alpha * m + rho && maxrk(C) == alpha + 1 &&
                                      is_qoac(C) && !is_qoac(D) && !is_dually_qoac(C) &&
                                      maxrk(D) == m + n - rho - alpha - 1;
                    if (!good) {
                        log << "hollow block breaks at n=" << n << " m=" << m
                            << " alpha=" << alpha << " rho=" << rho << " ";
                        ok = false;
                    }
                    ++hollow_points;
                }

    log << "tied-diagonal + " << family_points << " layered + " << hollow_points
        << " hollow-block points";
    return ok;
}

// 7. Quasi-optimality predicate: the closed-form criterion for C_{s,h,k}
//    agrees with enumeration for 2 <= m <= 5, n <= m, within the codeword
//    cap (q = 2 for the enumeration side, plus a q = 3 sweep at m <= 3).
bool criterion7(std::ostream& log) {
    VerifyConfig cfg;
    cfg.qs = {2};
    cfg.n_max = 5;
    cfg.m_min = 2;
    cfg.m_max = 5;
    bool ok = table_clean(verify_cshk_predicate(cfg), log);

    VerifyConfig cfg3;
    cfg3.qs = {3};
    cfg3.n_max = 3;
    cfg3.m_min = 2;
    cfg3.m_max = 3;
    log << "; q=3: ";
    ok = table_clean(verify_cshk_predicate(cfg3), log) && ok;
    return ok;
}

// 8. Combinatorial ground truth: subspace counts match the enumerator,
//    rank counts match a full matrix census, and the rank counts sum to
//    q^{nm}, for q in {2,3} and dimensions up to 4.
bool criterion8(std::ostream& log) {
    bool ok = true;
    std::uint64_t census_cells = 0;

    for (unsigned q : {2u, 3u}) {
        auto f = make_field(q);
        for (int l = 1; l <= 4; ++l)
            for (int d = 0; d <= l; ++d) {
                std::uint64_t n = 0;
                SubspaceEnumerator en(f, l, d);
                while (en.next()) ++n;
                if (BigInt(n) != gaussian_binomial(l, d, q)) {
                    log << "subspace census off at q=" << q << " l=" << l << " d=" << d << " ";
                    ok = false;
                }
            }

        for (int n = 1; n <= 4; ++n)
            for (int m = n; m <= 4; ++m) {
                std::vector<std::uint64_t> hist(std::min(n, m) + 1, 0);
                GFVec cells(std::size_t(n) * m, 0);
                std::vector<GFElem> buf(cells.size());
                for (;;) {
                    buf = cells;
                    ++hist[rank_rows_buffer(*f, buf.data(), n, m)];
                    ++census_cells;
                    int j = 0;
                    while (j < n * m && ++cells[j] == q) cells[j++] = 0;
                    if (j == n * m) break;
                }
                BigInt total = 0;
                for (int r = 0; r <= std::min(n, m); ++r) {
                    if (count_rank_matrices(n, m, r, q) != hist[r]) {
                        log << "rank census off at q=" << q << " " << n << "x" << m
                            << " r=" << r << " ";
                        ok = false;
                    }
                    total += count_rank_matrices(n, m, r, q);
                }
                if (total != big_pow(q, std::uint64_t(n) * m)) {
                    log << "rank counts do not sum to q^(nm) at q=" << q << " " << n << "x" << m
                        << " ";
                    ok = false;
                }
            }
    }
    log << "censuses over " << census_cells << " matrices";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all = {
        {1, "rank-distribution closed form vs codeword census", criterion1},
        {2, "generalized-weights closed form vs anticode search", criterion2},
        {3, "q-polymatroid closed forms vs definition + axioms", criterion3},
        {4, "duality-sum trichotomy over all subcodes", criterion4},
        {5, "dually-qOAC classification completeness audit", criterion5},
        {6, "construction regressions (tied diagonal, layered, hollow)", criterion6},
        {7, "closed-form qOAC predicate vs enumeration", criterion7},
        {8, "combinatorial ground truth censuses", criterion8},
    };

    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

    int failures = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        std::ostringstream detail;
        const auto t0 = Clock::now();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title
                  << " (" << detail.str() << ") [" << secs << "s]" << std::endl;
        if (!ok) ++failures;
    }
    return failures;
}
