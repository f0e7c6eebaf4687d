#ifndef QOAC_FIELD_HPP
#define QOAC_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoac {

/// Index of a field element in [0, q). For extension fields the index
/// encodes the residue polynomial's coefficient vector in base p,
/// lowest-degree coefficient in the least significant digit.
using GFElem = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Exact arithmetic in F_q, q = p^e. Immutable after construction;
/// multiplication and inversion go through log/antilog tables, addition
/// through a q x q table. Intended for small q (q <= 257 prime,
/// p^e <= 256 for extensions).
class Field {
public:
    unsigned p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    unsigned q() const noexcept { return q_; }

    /// Monic modulus coefficients c_0..c_e; empty for prime fields.
    const std::vector<GFElem>& modulus() const noexcept { return modulus_; }

    GFElem add(GFElem a, GFElem b) const noexcept { return add_[a * q_ + b]; }
    GFElem neg(GFElem a) const noexcept { return neg_[a]; }
    GFElem sub(GFElem a, GFElem b) const noexcept { return add_[a * q_ + neg_[b]]; }

    GFElem mul(GFElem a, GFElem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return alog_[log_[a] + log_[b]];
    }

    GFElem inv(GFElem a) const {
        if (a == 0) throw std::invalid_argument("field: inverse of zero");
        return alog_[q_ - 1 - log_[a]];
    }

    GFElem div(GFElem a, GFElem b) const { return mul(a, inv(b)); }

    GFElem pow(GFElem a, unsigned long long k) const {
        GFElem r = 1;
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }

    bool operator==(const Field& o) const noexcept {
        return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Field& o) const noexcept { return !(*this == o); }

    std::string label() const {
        std::string s = "F_" + std::to_string(q_);
        if (e_ > 1) {
            s += " (mod ";
            for (unsigned i = e_ + 1; i-- > 0;) {
                s += std::to_string(modulus_[i]);
                if (i) s += ",";
            }
            s += ")";
        }
        return s;
    }

    friend FieldPtr make_field(unsigned p, unsigned e, const std::vector<unsigned>& modulus);

private:
    Field() = default;

    unsigned p_ = 0, e_ = 0, q_ = 0;
    std::vector<GFElem> modulus_;        // c_0..c_e, monic; empty when e == 1
    std::vector<GFElem> add_;            // q*q
    std::vector<GFElem> neg_;            // q
    std::vector<unsigned> log_;          // q (log_[0] unused)
    std::vector<GFElem> alog_;           // 2(q-1), doubled so mul needs no modulo

    // ---- construction helpers (polynomial arithmetic over F_p) ----

    static bool is_prime(unsigned n) {
        if (n < 2) return false;
        for (unsigned d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    static std::vector<unsigned> digits(unsigned idx, unsigned p, unsigned e) {
        std::vector<unsigned> d(e);
        for (unsigned i = 0; i < e; ++i) { d[i] = idx % p; idx /= p; }
        return d;
    }

    static unsigned index_of(const std::vector<unsigned>& d, unsigned p) {
        unsigned idx = 0;
        for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
        return idx;
    }

    // remainder of a mod b over F_p; b monic, coefficients low-to-high
    static std::vector<unsigned> poly_rem(std::vector<unsigned> a,
                                          const std::vector<unsigned>& b, unsigned p) {
        const std::size_t db = b.size() - 1;
        while (a.size() > db) {
            unsigned lead = a.back();
            if (lead != 0) {
                std::size_t shift = a.size() - 1 - db;
                for (std::size_t i = 0; i <= db; ++i) {
                    unsigned prod = (lead * b[i]) % p;
                    a[shift + i] = (a[shift + i] + p - prod) % p;
                }
            }
            a.pop_back();
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
        return a;
    }

    static bool is_irreducible(const std::vector<unsigned>& f, unsigned p) {
        const unsigned e = static_cast<unsigned>(f.size()) - 1;
        for (unsigned d = 1; 2 * d <= e; ++d) {
            unsigned count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p;  // p^d candidates
            for (unsigned lo = 0; lo < count; ++lo) {
                std::vector<unsigned> g = digits(lo, p, d);
                g.push_back(1);  // monic degree-d divisor candidate
                if (poly_rem(f, g, p).empty()) return false;
            }
        }
        return true;
    }

    // residue-polynomial product of two element indices
    GFElem slow_mul(GFElem a, GFElem b) const {
        if (e_ == 1) return static_cast<GFElem>((unsigned(a) * b) % p_);
        std::vector<unsigned> da = digits(a, p_, e_), db = digits(b, p_, e_);
        std::vector<unsigned> prod(2 * e_ - 1, 0);
        for (unsigned i = 0; i < e_; ++i)
            for (unsigned j = 0; j < e_; ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        std::vector<unsigned> f(modulus_.begin(), modulus_.end());
        std::vector<unsigned> r = poly_rem(std::move(prod), f, p_);
        r.resize(e_, 0);
        return static_cast<GFElem>(index_of(r, p_));
    }
};

/// Builds a validated field. For e > 1 with no modulus given, the monic
/// irreducible of degree e whose non-leading coefficient vector is the
/// smallest base-p integer is chosen.
inline FieldPtr make_field(unsigned p, unsigned e = 1,
                           const std::vector<unsigned>& modulus = {}) {
    if (!Field::is_prime(p))
        throw std::invalid_argument("make_field: p = " + std::to_string(p) + " is not prime");
    if (e < 1) throw std::invalid_argument("make_field: e must be >= 1");

    unsigned long long q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if ((e == 1 && q > 257) || (e > 1 && q > 256))
            throw std::invalid_argument("make_field: q exceeds the implementation cap");
    }

    auto F = std::shared_ptr<Field>(new Field());
    F->p_ = p;
    F->e_ = e;
    F->q_ = static_cast<unsigned>(q);

    if (e == 1) {
        if (!modulus.empty())
            throw std::invalid_argument("make_field: modulus not allowed for prime fields");
    } else if (!modulus.empty()) {
        if (modulus.size() != e + 1)
            throw std::invalid_argument("make_field: modulus must have degree e");
        if (modulus.back() != 1)
            throw std::invalid_argument("make_field: modulus must be monic");
        for (unsigned c : modulus)
            if (c >= p) throw std::invalid_argument("make_field: modulus coefficient out of range");
        std::vector<unsigned> f(modulus.begin(), modulus.end());
        if (!Field::is_irreducible(f, p))
            throw std::invalid_argument("make_field: modulus is reducible over F_p");
        F->modulus_.assign(modulus.begin(), modulus.end());
    } else {
        unsigned count = 1;
        for (unsigned i = 0; i < e; ++i) count *= p;
        for (unsigned lo = 0; lo < count; ++lo) {
            std::vector<unsigned> f = Field::digits(lo, p, e);
            f.push_back(1);
            if (Field::is_irreducible(f, p)) {
                F->modulus_.assign(f.begin(), f.end());
                break;
            }
        }
        if (F->modulus_.empty())
            throw std::logic_error("make_field: no irreducible of requested degree found");
    }

    const unsigned qq = F->q_;

    F->add_.resize(std::size_t(qq) * qq);
    F->neg_.resize(qq);
    for (unsigned a = 0; a < qq; ++a) {
        auto da = Field::digits(a, p, e);
        for (unsigned& d : da) d = (p - d) % p;
        F->neg_[a] = static_cast<GFElem>(Field::index_of(da, p));
        for (unsigned b = 0; b < qq; ++b) {
            auto s = Field::digits(a, p, e);
            auto db = Field::digits(b, p, e);
            for (unsigned i = 0; i < e; ++i) s[i] = (s[i] + db[i]) % p;
            F->add_[std::size_t(a) * qq + b] = static_cast<GFElem>(Field::index_of(s, p));
        }
    }

    // find a multiplicative generator, then fill log/antilog
    F->log_.assign(qq, 0);
    F->alog_.assign(2 * (qq - 1), 0);
    GFElem gen = 0;
    for (unsigned t = 2; t < qq; ++t) {
        unsigned ord = 1;
        GFElem x = static_cast<GFElem>(t);
        while (x != 1) { x = F->slow_mul(x, static_cast<GFElem>(t)); ++ord; }
        if (ord == qq - 1) { gen = static_cast<GFElem>(t); break; }
    }
    if (gen == 0 && qq > 2)
        throw std::logic_error("make_field: no generator found");

    GFElem x = 1;
    for (unsigned i = 0; i < qq - 1; ++i) {
        F->alog_[i] = x;
        F->alog_[i + (qq - 1)] = x;
        F->log_[x] = i;
        x = (qq == 2) ? x : F->slow_mul(x, gen);
    }

    return F;
}

/// Field of order q = p^e (q any prime power), with the default modulus.
inline FieldPtr field_of_order(unsigned q) {
    if (q < 2) throw std::invalid_argument("field_of_order: q must be >= 2");
    unsigned p = q;
    for (unsigned d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    unsigned e = 0, t = q;
    while (t > 1) {
        if (t % p != 0)
            throw std::invalid_argument("field_of_order: " + std::to_string(q) +
                                        " is not a prime power");
        t /= p;
        ++e;
    }
    return make_field(p, e);
}

inline void require_same_field(const Field& a, const Field& b, const char* where) {
    if (a != b)
        throw std::invalid_argument(std::string(where) + ": operands belong to different fields");
}

}  // namespace qoac

#endif  // QOAC_FIELD_HPP
