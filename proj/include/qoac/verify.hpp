#ifndef QOAC_VERIFY_HPP
#define QOAC_VERIFY_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qoac/codes.hpp"
#include "qoac/equivalence.hpp"
#include "qoac/invariants.hpp"

namespace qoac {

struct VerifyRow {
    enum class Status { Match, Mismatch, Skipped };
    std::string point;
    std::string closed;
    std::string oracle;
    Status status = Status::Match;
    std::string note;
};

struct VerifyTable {
    std::string check;
    std::vector<VerifyRow> rows;

    int count(VerifyRow::Status s) const {
        int c = 0;
        for (const auto& r : rows)
            if (r.status == s) ++c;
        return c;
    }
    int matches() const { return count(VerifyRow::Status::Match); }
    int mismatches() const { return count(VerifyRow::Status::Mismatch); }
    int skipped() const { return count(VerifyRow::Status::Skipped); }
    bool ok() const { return mismatches() == 0; }
};

struct VerifyConfig {
    std::vector<unsigned> qs{2};
    int n_min = 1, n_max = 3;
    int m_min = 1, m_max = 3;
    int s_max = -1, h_max = -1, k_max = -1;  // -1: bound by the shape
    int dim = -1;                            // audit only
    std::uint64_t codeword_cap = kDefaultCodewordCap;
    std::uint64_t subspace_cap = kDefaultSubspaceCap;
    std::uint64_t group_cap = kDefaultGroupCap;
    int threads = 1;
    bool exhaustive = true;  // axiom mode
    std::uint64_t samples = 200;
    std::uint64_t seed = 1;

    int s_bound(int n) const { return s_max < 0 ? n : std::min(s_max, n); }
    int h_bound(int n) const { return h_max < 0 ? n : std::min(h_max, n); }
    int k_bound(int m) const { return k_max < 0 ? m : std::min(k_max, m); }
};

namespace detail {

inline std::string join_counts(const std::vector<BigInt>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].str();
    }
    return os.str();
}

inline std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

inline std::string rat_str(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

/// Runs the row jobs over a small pool; output order is job order
/// regardless of thread count. A job that trips an enumeration budget
/// yields a SKIPPED row; other exceptions propagate.
inline std::vector<VerifyRow> run_jobs(const std::vector<std::function<VerifyRow()>>& jobs,
                                       int threads) {
    std::vector<VerifyRow> rows(jobs.size());
    auto run_one = [&](std::size_t i) {
        try {
            rows[i] = jobs[i]();
        } catch (const CapExceeded& e) {
            rows[i].status = VerifyRow::Status::Skipped;
            rows[i].note = e.what();
        }
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                run_one(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<int>(threads, static_cast<int>(jobs.size()));
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

inline std::string point_str(unsigned q, int n, int m, std::initializer_list<std::pair<const char*, int>> rest) {
    std::ostringstream os;
    os << "q=" << q << " n=" << n << " m=" << m;
    for (const auto& [k, v] : rest) os << " " << k << "=" << v;
    return os.str();
}

}  // namespace detail

/// Check "thm4.2": closed-form rank distribution of C_{s,n-s,k} against the
/// codeword-enumeration histogram, integer-exact.
inline VerifyTable verify_rank_distribution(const VerifyConfig& cfg) {
    VerifyTable table;
    table.check = "thm4.2";
    std::vector<std::function<VerifyRow()>> jobs;
    for (unsigned q : cfg.qs) {
        FieldPtr f = field_of_order(q);
        for (int n = cfg.n_min; n <= cfg.n_max; ++n)
            for (int m = std::max(n, cfg.m_min); m <= cfg.m_max; ++m)
                for (int s = 0; s <= cfg.s_bound(n); ++s)
                    for (int k = 0; k <= cfg.k_bound(m); ++k) {
                        jobs.push_back([=]() {
                            VerifyRow row;
                            row.point = detail::point_str(q, n, m, {{"s", s}, {"k", k}});
                            const int dim = s * m + (n - s) * k;
                            if (big_pow(q, dim) > cfg.codeword_cap) {
                                row.status = VerifyRow::Status::Skipped;
                                row.note = "codeword budget " + big_pow(q, dim).str() +
                                           " exceeds cap " + std::to_string(cfg.codeword_cap);
                                return row;
                            }
                            RankDistribution closed = rank_distribution_closed_form(s, k, n, m, q);
                            Code C = construct_cshk(f, n, m, s, n - s, k);
                            RankDistribution oracle = rank_distribution_oracle(C, cfg.codeword_cap);
                            row.closed = detail::join_counts(closed.counts);
                            row.oracle = detail::join_counts(oracle.counts);
                            row.status = (closed == oracle) ? VerifyRow::Status::Match
                                                            : VerifyRow::Status::Mismatch;
                            return row;
                        });
                    }
    }
    table.rows = detail::run_jobs(jobs, cfg.threads);
    return table;
}

/// Check "thm3.3": block-formula generalized weights of C_{s,n-s,k} against
/// the anticode-enumeration oracle.
inline VerifyTable verify_generalized_weights(const VerifyConfig& cfg) {
    VerifyTable table;
    table.check = "thm3.3";
    std::vector<std::function<VerifyRow()>> jobs;
    for (unsigned q : cfg.qs) {
        FieldPtr f = field_of_order(q);
        for (int n = cfg.n_min; n <= cfg.n_max; ++n)
            for (int m = std::max(n, cfg.m_min); m <= cfg.m_max; ++m)
                for (int s = 0; s <= cfg.s_bound(n); ++s)
                    for (int k = 0; k <= cfg.k_bound(m); ++k) {
                        if (s * m + (n - s) * k == 0) continue;
                        jobs.push_back([=]() {
                            VerifyRow row;
                            row.point = detail::point_str(q, n, m, {{"s", s}, {"k", k}});
                            WeightProfile closed = generalized_weights_closed_form(s, k, n, m);
                            Code C = construct_cshk(f, n, m, s, n - s, k);
                            WeightProfile oracle = generalized_weights_oracle(C, cfg.subspace_cap);
                            row.closed = detail::join_ints(closed.a);
                            row.oracle = detail::join_ints(oracle.a);
                            row.status = (closed == oracle) ? VerifyRow::Status::Match
                                                            : VerifyRow::Status::Mismatch;
                            return row;
                        });
                    }
    }
    table.rows = detail::run_jobs(jobs, cfg.threads);
    return table;
}

/// Check "thm5.4": closed-form rank functions of Mat(V) + (Mat(U)^t cap
/// Mat(V')) against the definition, on every subspace of both sides.
inline VerifyTable verify_polymatroid_rank(const VerifyConfig& cfg) {
    VerifyTable table;
    table.check = "thm5.4";
    std::vector<std::function<VerifyRow()>> jobs;
    for (unsigned q : cfg.qs) {
        FieldPtr f = field_of_order(q);
        for (int n = cfg.n_min; n <= cfg.n_max; ++n)
            for (int m = std::max(n, cfg.m_min); m <= cfg.m_max; ++m)
                for (int s = 0; s <= cfg.s_bound(n); ++s)
                    for (int h = 0; s + h <= n && h <= cfg.h_bound(n); ++h)
                        for (int k = 0; k <= cfg.k_bound(m); ++k) {
                            jobs.push_back([=]() {
                                VerifyRow row;
                                row.point = detail::point_str(q, n, m, {{"s", s}, {"h", h}, {"k", k}});
                                Code C = (s + h == 0) ? Code::zero(f, n, m)
                                                      : construct_cshk(f, n, m, s, h, k);
                                std::uint64_t agree = 0;
                                for (int d = 0; d <= n && row.status == VerifyRow::Status::Match; ++d)
                                    for_each_subspace(f, n, d, [&](const Subspace& J) {
                                        const Rational lhs = rho_col_closed_form(s, h, k, n, m, J);
                                        const Rational rhs = rho_col(C, J);
                                        if (lhs != rhs) {
                                            row.status = VerifyRow::Status::Mismatch;
                                            row.closed = detail::rat_str(lhs);
                                            row.oracle = detail::rat_str(rhs);
                                            row.note = "rho_c at J=" + detail::subspace_brief(J);
                                            return false;
                                        }
                                        ++agree;
                                        return true;
                                    }, cfg.subspace_cap);
                                for (int d = 0; d <= m && row.status == VerifyRow::Status::Match; ++d)
                                    for_each_subspace(f, m, d, [&](const Subspace& K) {
                                        const Rational lhs = rho_row_closed_form(s, h, k, n, m, K);
                                        const Rational rhs = rho_row(C, K);
                                        if (lhs != rhs) {
                                            row.status = VerifyRow::Status::Mismatch;
                                            row.closed = detail::rat_str(lhs);
                                            row.oracle = detail::rat_str(rhs);
                                            row.note = "rho_r at K=" + detail::subspace_brief(K);
                                            return false;
                                        }
                                        ++agree;
                                        return true;
                                    }, cfg.subspace_cap);
                                if (row.status == VerifyRow::Status::Match) {
                                    row.closed = row.oracle = std::to_string(agree) + " values";
                                }
                                return row;
                            });
                        }
    }
    table.rows = detail::run_jobs(jobs, cfg.threads);
    return table;
}

/// Check "axioms": boundedness, monotonicity and submodularity of both rank
/// functions of each C_{s,h,k} in range.
inline VerifyTable verify_polymatroid_axioms(const VerifyConfig& cfg) {
    VerifyTable table;
    table.check = "axioms";
    std::vector<std::function<VerifyRow()>> jobs;
    for (unsigned q : cfg.qs) {
        FieldPtr f = field_of_order(q);
        for (int n = cfg.n_min; n <= cfg.n_max; ++n)
            for (int m = std::max(n, cfg.m_min); m <= cfg.m_max; ++m)
                for (int s = 0; s <= cfg.s_bound(n); ++s)
                    for (int h = (s == 0) ? 1 : 0; s + h <= n && h <= cfg.h_bound(n); ++h)
                        for (int k = 0; k <= cfg.k_bound(m); ++k)
                            for (PolymatroidSide side :
                                 {PolymatroidSide::Columns, PolymatroidSide::Rows}) {
                                jobs.push_back([=]() {
                                    VerifyRow row;
                                    row.point = detail::point_str(q, n, m, {{"s", s}, {"h", h}, {"k", k}}) +
                                                (side == PolymatroidSide::Columns ? " side=col" : " side=row");
                                    Code C = construct_cshk(f, n, m, s, h, k);
                                    AxiomCheckResult res = verify_qpolymatroid_axioms(
                                        C, side, cfg.exhaustive, cfg.subspace_cap, cfg.samples, cfg.seed);
                                    row.closed = "axioms hold";
                                    row.oracle = res.ok ? "axioms hold" : res.witness;
                                    row.status = res.ok ? VerifyRow::Status::Match
                                                        : VerifyRow::Status::Mismatch;
                                    row.note = std::to_string(res.checks) + " checks";
                                    return row;
                                });
                            }
    }
    table.rows = detail::run_jobs(jobs, cfg.threads);
    return table;
}

/// Check "prop2.4": over every subcode of F_q^{n x m},
/// maxrk(C) + maxrk(C-dual) >= n, with equality iff optimal anticode and
/// n+1 iff dually qOAC. One row per (q, n, m).
inline VerifyTable verify_maxrk_duality(const VerifyConfig& cfg) {
    VerifyTable table;
    table.check = "prop2.4";
    std::vector<std::function<VerifyRow()>> jobs;
    for (unsigned q : cfg.qs) {
        FieldPtr f = field_of_order(q);
        for (int n = cfg.n_min; n <= cfg.n_max; ++n)
            for (int m = std::max(n, cfg.m_min); m <= cfg.m_max; ++m) {
                jobs.push_back([=]() {
                    VerifyRow row;
                    row.point = detail::point_str(q, n, m, {});
                    const int nm = n * m;
                    BigInt lattice = subspace_lattice_size(nm, q);
                    if (lattice > cfg.subspace_cap) {
                        row.status = VerifyRow::Status::Skipped;
                        row.note = "subspace budget " + lattice.str() + " exceeds cap";
                        return row;
                    }
                    std::uint64_t total = 0, optimal = 0, dually = 0;
                    for (int d = 0; d <= nm && row.status == VerifyRow::Status::Match; ++d) {
                        for_each_subspace(f, nm, d, [&](const Subspace& S) {
                            Code C(f, n, m, S);
                            Code D = C.dual();
                            const int rc = maxrk(C, cfg.codeword_cap);
                            const int rd = maxrk(D, cfg.codeword_cap);
                            const int mm = std::max(n, m), nn = std::min(n, m);
                            const bool opt = (C.dim() == mm * rc);
                            const bool dq = qoac::detail::qoac_from_maxrk(C.dim(), mm, rc) &&
                                            qoac::detail::qoac_from_maxrk(D.dim(), mm, rd);
                            bool bad = false;
                            std::string why;
                            if (rc + rd < nn) { bad = true; why = "sum below n"; }
                            if (!bad && ((rc + rd == nn) != opt)) { bad = true; why = "equality vs optimal anticode"; }
                            if (!bad && ((rc + rd == nn + 1) != dq)) { bad = true; why = "n+1 vs dually qOAC"; }
                            if (bad) {
                                row.status = VerifyRow::Status::Mismatch;
                                row.note = why + " at dim " + std::to_string(d);
                                row.oracle = "maxrk " + std::to_string(rc) + "+" + std::to_string(rd);
                                return false;
                            }
                            ++total;
                            if (opt) ++optimal;
                            if (dq) ++dually;
                            return true;
                        }, cfg.subspace_cap);
                    }
                    if (row.status == VerifyRow::Status::Match) {
                        row.closed = "trichotomy";
                        row.oracle = std::to_string(total) + " subcodes, " + std::to_string(optimal) +
                                     " optimal, " + std::to_string(dually) + " dually qOAC";
                    }
                    return row;
                });
            }
    }
    table.rows = detail::run_jobs(jobs, cfg.threads);
    return table;
}

/// Check "prop2.11": the closed-form qOAC criterion for C_{s,h,k} against
/// enumeration.
inline VerifyTable verify_cshk_predicate(const VerifyConfig& cfg) {
    VerifyTable table;
    table.check = "prop2.11";
    std::vector<std::function<VerifyRow()>> jobs;
    for (unsigned q : cfg.qs) {
        FieldPtr f = field_of_order(q);
        for (int m = std::max(2, cfg.m_min); m <= cfg.m_max; ++m)
            for (int n = cfg.n_min; n <= m; ++n)
                for (int s = 0; s <= cfg.s_bound(n); ++s)
                    for (int h = (s == 0) ? 1 : 0; s + h <= n && h <= cfg.h_bound(n); ++h)
                        for (int k = 0; k < m && k <= cfg.k_bound(m); ++k) {
                            jobs.push_back([=]() {
                                VerifyRow row;
                                row.point = detail::point_str(q, n, m, {{"s", s}, {"h", h}, {"k", k}});
                                const bool closed = cshk_is_qoac(s, h, k, m, n);
                                row.closed = closed ? "qOAC" : "not qOAC";
                                const int dim = s * m + h * k;
                                if (big_pow(q, dim) > cfg.codeword_cap) {
                                    row.status = VerifyRow::Status::Skipped;
                                    row.note = "codeword budget exceeds cap";
                                    return row;
                                }
                                const bool oracle = is_qoac(construct_cshk(f, n, m, s, h, k),
                                                            cfg.codeword_cap);
                                row.oracle = oracle ? "qOAC" : "not qOAC";
                                row.status = (closed == oracle) ? VerifyRow::Status::Match
                                                                : VerifyRow::Status::Mismatch;
                                return row;
                            });
                        }
    }
    table.rows = detail::run_jobs(jobs, cfg.threads);
    return table;
}

/// Check "thm2.5-audit": classification completeness at one (q, n, m, dim).
inline VerifyTable verify_classification_audit(const VerifyConfig& cfg, AuditReport* out = nullptr) {
    VerifyTable table;
    table.check = "thm2.5-audit";
    if (cfg.dim < 0) throw std::invalid_argument("audit: dim must be given");
    for (unsigned q : cfg.qs) {
        FieldPtr f = field_of_order(q);
        AuditOptions opts;
        opts.subspace_cap = cfg.subspace_cap;
        opts.codeword_cap = cfg.codeword_cap;
        opts.group_cap = cfg.group_cap;
        AuditReport rep = audit_dually_qoac_classification(f, cfg.n_max, cfg.m_max, cfg.dim, opts);
        for (const auto& e : rep.classified) {
            VerifyRow row;
            row.point = detail::point_str(q, cfg.n_max, cfg.m_max, {{"dim", cfg.dim}});
            row.closed = std::string("form ") + e.matched_form;
            row.oracle = "witness isometry";
            row.status = VerifyRow::Status::Match;
            table.rows.push_back(std::move(row));
        }
        for (const auto& c : rep.unclassified) {
            VerifyRow row;
            row.point = detail::point_str(q, cfg.n_max, cfg.m_max, {{"dim", cfg.dim}});
            row.closed = "some canonical form";
            row.oracle = "no form matched";
            row.status = VerifyRow::Status::Mismatch;
            row.note = "dually qOAC of dim " + std::to_string(c.dim()) + " unclassified";
            table.rows.push_back(std::move(row));
        }
        VerifyRow summary;
        summary.point = detail::point_str(q, cfg.n_max, cfg.m_max, {{"dim", cfg.dim}});
        summary.closed = "classification complete";
        summary.oracle = std::to_string(rep.scanned) + " scanned, " +
                         std::to_string(rep.dually_qoac_found) + " dually qOAC";
        summary.status = rep.ok() ? VerifyRow::Status::Match : VerifyRow::Status::Mismatch;
        table.rows.push_back(std::move(summary));
        if (out) *out = std::move(rep);
    }
    return table;
}

/// Dispatch by check identifier.
inline VerifyTable run_verification(const std::string& check, const VerifyConfig& cfg) {
    if (check == "thm4.2") return verify_rank_distribution(cfg);
    if (check == "thm3.3") return verify_generalized_weights(cfg);
    if (check == "thm5.4") return verify_polymatroid_rank(cfg);
    if (check == "axioms") return verify_polymatroid_axioms(cfg);
    if (check == "prop2.4") return verify_maxrk_duality(cfg);
    if (check == "prop2.11") return verify_cshk_predicate(cfg);
    if (check == "thm2.5-audit") return verify_classification_audit(cfg);
    throw std::invalid_argument("unknown check '" + check + "'");
}

}  // namespace qoac

#endif  // QOAC_VERIFY_HPP
