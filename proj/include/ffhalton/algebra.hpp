// Exact arithmetic over small finite fields F_q (q = p^k) and the
// polynomial ring F_q[x]: field construction with deterministic moduli,
// the digit bijections eta: Z_q -> F_q and sigma: F_q[x]/(p_i) -> Z_{q^e},
// polynomial division, and monic irreducible enumeration.
//
// Everything here is a value type; all data is immutable after
// construction, so values may be shared freely across threads.

#ifndef FFHALTON_ALGEBRA_HPP
#define FFHALTON_ALGEBRA_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ffhalton {

inline constexpr char kVersion[] = "0.1.0";

// Desk-scale caps. This library optimizes for exactness and auditability,
// not throughput; anything past these limits fails fast.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;
inline constexpr int kMaxPolyDegree = 32;
inline constexpr std::uint64_t kMaxEnumeration = 1ull << 20;
inline constexpr int kMaxPrecision = 64;

class Field;
class FieldElement;
class Polynomial;

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t k = 1;
    std::uint32_t q = 0;
    // Monic irreducible of degree k over F_p, ascending coefficients;
    // empty when k == 1.
    std::vector<std::uint32_t> modulus;
    // Custom eta bijection (digit -> element index, element index -> digit);
    // empty means the canonical identity-on-index map.
    std::vector<std::uint32_t> eta_to;
    std::vector<std::uint32_t> eta_from;

    std::uint32_t digit(std::uint32_t idx, std::uint32_t j) const {
        for (std::uint32_t t = 0; t < j; ++t) idx /= p;
        return idx % p;
    }

    std::uint32_t add_idx(std::uint32_t a, std::uint32_t b) const {
        if (k == 1) return (a + b) % p;
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t j = 0; j < k; ++j) {
            out += ((a % p + b % p) % p) * scale;
            a /= p; b /= p; scale *= p;
        }
        return out;
    }

    std::uint32_t neg_idx(std::uint32_t a) const {
        if (k == 1) return a == 0 ? 0 : p - a;
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t j = 0; j < k; ++j) {
            std::uint32_t c = a % p;
            out += (c == 0 ? 0 : p - c) * scale;
            a /= p; scale *= p;
        }
        return out;
    }

    std::uint32_t sub_idx(std::uint32_t a, std::uint32_t b) const {
        return add_idx(a, neg_idx(b));
    }

    std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const {
        if (k == 1) return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a) * b) % p);
        // Schoolbook convolution of the coefficient vectors, then long
        // division by the (monic) modulus.
        std::vector<std::uint64_t> t(2 * k - 1, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint32_t ai = digit(a, i);
            if (ai == 0) continue;
            for (std::uint32_t j = 0; j < k; ++j)
                t[i + j] += static_cast<std::uint64_t>(ai) * digit(b, j);
        }
        for (auto& c : t) c %= p;
        for (std::uint32_t i = 2 * k - 2; i >= k; --i) {
            std::uint64_t c = t[i];
            if (c != 0) {
                t[i] = 0;
                for (std::uint32_t j = 0; j < k; ++j) {
                    std::uint64_t sub = (c * modulus[j]) % p;
                    t[i - k + j] = (t[i - k + j] + p - sub) % p;
                }
            }
            if (i == k) break;
        }
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t j = 0; j < k; ++j) {
            out += static_cast<std::uint32_t>(t[j]) * scale;
            scale *= p;
        }
        return out;
    }

    std::uint32_t pow_idx(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e > 0) {
            if (e & 1) r = mul_idx(r, a);
            a = mul_idx(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t inv_idx(std::uint32_t a) const {
        if (a == 0) throw std::invalid_argument("inverse of zero field element");
        return pow_idx(a, static_cast<std::uint64_t>(q) - 2);
    }
};

}  // namespace detail

/// A finite field F_q, q = p^k.  For k > 1 the defining modulus is the
/// lexicographically smallest (in canonical coefficient order) monic
/// irreducible of degree k over F_p, so construction is deterministic.
class Field {
   public:
    static Field make(std::uint32_t p, std::uint32_t k = 1);
    /// Same, with a user-supplied eta table: eta(d) = element(table[d]).
    /// The table must be a permutation of [0, q) with table[0] == 0.
    static Field make(std::uint32_t p, std::uint32_t k,
                      std::vector<std::uint32_t> eta_table);

    std::uint32_t p() const noexcept { return d_->p; }
    std::uint32_t k() const noexcept { return d_->k; }
    std::uint32_t q() const noexcept { return d_->q; }
    /// Ascending coefficients of the modulus over F_p; empty when k == 1.
    const std::vector<std::uint32_t>& modulus_coeffs() const noexcept {
        return d_->modulus;
    }

    FieldElement zero() const;
    FieldElement one() const;
    /// Element with canonical index i (coefficient vector = base-p digits
    /// of i).  Iterating i = 0..q-1 walks the canonical element order.
    FieldElement element(std::uint32_t index) const;
    /// Canonical embedding of an integer: n mod p in the prime subfield.
    FieldElement from_int(std::uint64_t n) const;

    /// The bijection eta: Z_q -> F_q with eta(0) = 0.
    FieldElement eta(std::uint32_t digit) const;
    std::uint32_t eta_inv(const FieldElement& a) const;

    bool operator==(const Field& o) const noexcept {
        return d_ == o.d_ ||
               (d_->p == o.d_->p && d_->k == o.d_->k &&
                d_->modulus == o.d_->modulus && d_->eta_to == o.d_->eta_to);
    }
    bool operator!=(const Field& o) const noexcept { return !(*this == o); }

    const detail::FieldData& data() const noexcept { return *d_; }

   private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
};

/// An element of a Field.  Immutable value; arithmetic is exact.
class FieldElement {
   public:
    FieldElement(Field f, std::uint32_t index) : f_(std::move(f)), idx_(index) {
        if (idx_ >= f_.q()) throw std::invalid_argument("element index out of range");
    }

    const Field& field() const noexcept { return f_; }
    std::uint32_t index() const noexcept { return idx_; }
    bool is_zero() const noexcept { return idx_ == 0; }
    /// j-th coefficient over F_p of the representation, 0 <= j < k.
    std::uint32_t coeff(std::uint32_t j) const { return f_.data().digit(idx_, j); }

    FieldElement operator-() const { return {f_, f_.data().neg_idx(idx_)}; }
    FieldElement inv() const { return {f_, f_.data().inv_idx(idx_)}; }
    FieldElement pow(std::uint64_t e) const { return {f_, f_.data().pow_idx(idx_, e)}; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b); return {a.f_, a.f_.data().add_idx(a.idx_, b.idx_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b); return {a.f_, a.f_.data().sub_idx(a.idx_, b.idx_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b); return {a.f_, a.f_.data().mul_idx(a.idx_, b.idx_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check(b); return {a.f_, a.f_.data().mul_idx(a.idx_, b.f_.data().inv_idx(b.idx_))};
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.idx_ == b.idx_ && a.f_ == b.f_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }

   private:
    void check(const FieldElement& o) const {
        if (f_ != o.f_) throw std::invalid_argument("field mismatch");
    }
    Field f_;
    std::uint32_t idx_;
};

inline FieldElement Field::zero() const { return {*this, 0}; }
inline FieldElement Field::one() const { return {*this, 1}; }
inline FieldElement Field::element(std::uint32_t index) const { return {*this, index}; }
inline FieldElement Field::from_int(std::uint64_t n) const {
    return {*this, static_cast<std::uint32_t>(n % d_->p)};
}

inline FieldElement Field::eta(std::uint32_t digit) const {
    if (digit >= q()) throw std::invalid_argument("eta: digit out of range");
    return {*this, d_->eta_to.empty() ? digit : d_->eta_to[digit]};
}

inline std::uint32_t Field::eta_inv(const FieldElement& a) const {
    if (a.field() != *this) throw std::invalid_argument("eta_inv: field mismatch");
    return d_->eta_from.empty() ? a.index() : d_->eta_from[a.index()];
}

/// A polynomial over a Field, ascending coefficients, no stored trailing
/// zeros.  degree() of the zero polynomial is -1 (the -infinity sentinel).
class Polynomial {
   public:
    explicit Polynomial(Field f) : f_(std::move(f)) {}

    static Polynomial zero(const Field& f) { return Polynomial(f); }
    static Polynomial one(const Field& f) { return constant(f.one()); }
    static Polynomial x(const Field& f) { return monomial(f, 1, f.one()); }
    static Polynomial constant(const FieldElement& c) {
        Polynomial r(c.field());
        if (!c.is_zero()) r.c_.push_back(c.index());
        return r;
    }
    static Polynomial monomial(const Field& f, std::uint32_t deg, const FieldElement& c) {
        Polynomial r(f);
        if (!c.is_zero()) {
            r.c_.assign(deg + 1, 0);
            r.c_.back() = c.index();
        }
        return r;
    }
    static Polynomial from_coeffs(const Field& f, std::vector<FieldElement> coeffs) {
        Polynomial r(f);
        r.c_.reserve(coeffs.size());
        for (const auto& c : coeffs) {
            if (c.field() != f) throw std::invalid_argument("coefficient field mismatch");
            r.c_.push_back(c.index());
        }
        r.trim();
        return r;
    }
    static Polynomial from_indices(const Field& f, std::vector<std::uint32_t> idx) {
        for (auto i : idx)
            if (i >= f.q()) throw std::invalid_argument("coefficient index out of range");
        Polynomial r(f);
        r.c_ = std::move(idx);
        r.trim();
        return r;
    }

    const Field& field() const noexcept { return f_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    FieldElement coeff(std::uint32_t i) const {
        return {f_, i < c_.size() ? c_[i] : 0};
    }
    FieldElement leading() const {
        if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
        return {f_, c_.back()};
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement v = f_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            v = v * x + FieldElement(f_, *it);
        return v;
    }

    Polynomial derivative() const {
        Polynomial r(f_);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            FieldElement c = FieldElement(f_, c_[i]) * f_.from_int(i);
            r.c_.push_back(c.index());
        }
        r.trim();
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial r(a.f_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        const auto& fd = a.f_.data();
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = fd.add_idx(i < a.c_.size() ? a.c_[i] : 0,
                                 i < b.c_.size() ? b.c_[i] : 0);
        r.trim();
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial r(a.f_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        const auto& fd = a.f_.data();
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = fd.sub_idx(i < a.c_.size() ? a.c_[i] : 0,
                                 i < b.c_.size() ? b.c_[i] : 0);
        r.trim();
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial r(a.f_);
        if (a.is_zero() || b.is_zero()) return r;
        const auto& fd = a.f_.data();
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = fd.add_idx(r.c_[i + j], fd.mul_idx(a.c_[i], b.c_[j]));
        }
        r.trim();
        return r;
    }
    friend Polynomial operator*(const FieldElement& s, const Polynomial& a) {
        if (s.field() != a.f_) throw std::invalid_argument("field mismatch");
        Polynomial r(a.f_);
        const auto& fd = a.f_.data();
        r.c_.reserve(a.c_.size());
        for (auto c : a.c_) r.c_.push_back(fd.mul_idx(s.index(), c));
        r.trim();
        return r;
    }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.f_);
        const auto& fd = a.f_.data();
        r.c_.reserve(a.c_.size());
        for (auto c : a.c_) r.c_.push_back(fd.neg_idx(c));
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.c_ == b.c_ && a.f_ == b.f_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
    // Deterministic total order (degree, then coefficient indices); used
    // for canonical sorting and as a set key.
    friend bool operator<(const Polynomial& a, const Polynomial& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(),
                                            b.c_.rbegin(), b.c_.rend());
    }

   private:
    void check(const Polynomial& o) const {
        if (f_ != o.f_) throw std::invalid_argument("polynomial field mismatch");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    Field f_;
    std::vector<std::uint32_t> c_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.  Throws for b == 0.
inline std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a,
                                                     const Polynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    const Field& f = a.field();
    if (f != b.field()) throw std::invalid_argument("polynomial field mismatch");
    Polynomial q(f), r = a;
    if (a.degree() < b.degree()) return {q, r};
    std::vector<FieldElement> qc(
        static_cast<std::size_t>(a.degree() - b.degree()) + 1, f.zero());
    const FieldElement lead_inv = b.leading().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int shift = r.degree() - b.degree();
        const FieldElement t = r.leading() * lead_inv;
        qc[static_cast<std::size_t>(shift)] = t;
        r = r - t * Polynomial::monomial(f, static_cast<std::uint32_t>(shift), f.one()) * b;
    }
    return {Polynomial::from_coeffs(f, std::move(qc)), r};
}

inline Polynomial poly_mod(const Polynomial& a, const Polynomial& b) {
    return poly_divmod(a, b).second;
}

/// Monic gcd by the Euclidean algorithm.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && !a.is_monic()) a = a.leading().inv() * a;
    return a;
}

/// All monic irreducibles of degree <= max_degree, ordered by (degree,
/// canonical coefficient order).  Deterministic; irreducibility is decided
/// by trial division against the lower-degree output.
inline std::vector<Polynomial> monic_irreducibles(const Field& f, int max_degree) {
    if (max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
    if (max_degree > kMaxPolyDegree) throw std::invalid_argument("max_degree exceeds cap");
    std::vector<Polynomial> out;
    const std::uint64_t q = f.q();
    for (int d = 1; d <= max_degree; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) {
            count *= q;
            if (count > kMaxEnumeration)
                throw std::invalid_argument("irreducible enumeration exceeds cap");
        }
        for (std::uint64_t n = 0; n < count; ++n) {
            std::vector<std::uint32_t> idx(static_cast<std::size_t>(d) + 1, 0);
            std::uint64_t t = n;
            for (int j = 0; j < d; ++j) {
                idx[static_cast<std::size_t>(j)] =
                    f.eta(static_cast<std::uint32_t>(t % q)).index();
                t /= q;
            }
            idx.back() = 1;
            Polynomial cand = Polynomial::from_indices(f, std::move(idx));
            bool irreducible = true;
            for (const Polynomial& g : out) {
                if (2 * g.degree() > d) break;
                if (poly_mod(cand, g).is_zero()) { irreducible = false; break; }
            }
            if (irreducible) out.push_back(std::move(cand));
        }
    }
    return out;
}

/// Irreducibility over the coefficient field, by trial division.
inline bool is_irreducible(const Polynomial& f) {
    const int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    for (const Polynomial& g : monic_irreducibles(f.field(), d / 2))
        if (poly_mod(f, g).is_zero()) return false;
    return true;
}

inline Field Field::make(std::uint32_t p, std::uint32_t k) {
    return make(p, k, {});
}

inline Field Field::make(std::uint32_t p, std::uint32_t k,
                         std::vector<std::uint32_t> eta_table) {
    if (!detail::is_prime_u32(p)) throw std::invalid_argument("p must be prime");
    if (k < 1) throw std::invalid_argument("extension degree k must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxFieldOrder)
            throw std::invalid_argument("field order exceeds cap (q <= 2^16)");
    }

    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->k = k;
    d->q = static_cast<std::uint32_t>(q);
    if (k > 1) {
        // Deterministic modulus: first monic irreducible of degree k over
        // F_p in canonical order.
        Field prime = Field::make(p, 1);
        for (const Polynomial& g : monic_irreducibles(prime, static_cast<int>(k))) {
            if (g.degree() == static_cast<int>(k)) {
                d->modulus.resize(k + 1);
                for (std::uint32_t j = 0; j <= k; ++j)
                    d->modulus[j] = g.coeff(j).index();
                break;
            }
        }
        if (d->modulus.empty())
            throw std::logic_error("no irreducible modulus found");
    }
    if (!eta_table.empty()) {
        if (eta_table.size() != q)
            throw std::invalid_argument("eta table must have q entries");
        if (eta_table[0] != 0)
            throw std::invalid_argument("eta table must map 0 to the zero element");
        std::vector<std::uint32_t> from(eta_table.size(), kMaxFieldOrder);
        for (std::uint32_t digit = 0; digit < eta_table.size(); ++digit) {
            std::uint32_t e = eta_table[digit];
            if (e >= q || from[e] != kMaxFieldOrder)
                throw std::invalid_argument("eta table is not a permutation of [0, q)");
            from[e] = digit;
        }
        d->eta_to = std::move(eta_table);
        d->eta_from = std::move(from);
    }
    return Field(std::move(d));
}

// ---------------------------------------------------------------------------
// Polynomial text format: integer coefficients (canonical eta digits),
// e.g. "x^3+x+1" or "2x^2+x+4"; canonical rendering uses descending powers.

inline std::string to_string(const Polynomial& poly) {
    if (poly.is_zero()) return "0";
    const Field& f = poly.field();
    std::string out;
    for (int i = poly.degree(); i >= 0; --i) {
        const FieldElement c = poly.coeff(static_cast<std::uint32_t>(i));
        if (c.is_zero()) continue;
        if (!out.empty()) out += '+';
        const std::uint32_t v = f.eta_inv(c);
        if (i == 0) {
            out += std::to_string(v);
        } else {
            if (v != 1) out += std::to_string(v);
            out += 'x';
            if (i > 1) out += '^' + std::to_string(i);
        }
    }
    return out;
}

inline Polynomial parse_polynomial(const Field& f, const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial string");

    Polynomial out = Polynomial::zero(f);
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') { negative = (s[0] == '-'); i = 1; }
    while (i < s.size()) {
        // one term: [coeff]['*']['x'['^'exp]]
        std::uint64_t coeff = 1;
        bool saw_coeff = false;
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i > start) {
            coeff = std::stoull(s.substr(start, i - start));
            saw_coeff = true;
            if (coeff >= f.q())
                throw std::invalid_argument("coefficient out of range in '" + text + "'");
        }
        if (i < s.size() && s[i] == '*') ++i;
        std::uint32_t exp = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                start = i;
                while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
                if (i == start) throw std::invalid_argument("missing exponent in '" + text + "'");
                std::uint64_t e = std::stoull(s.substr(start, i - start));
                if (e > static_cast<std::uint64_t>(kMaxPolyDegree))
                    throw std::invalid_argument("exponent exceeds degree cap");
                exp = static_cast<std::uint32_t>(e);
            }
        } else if (!saw_coeff) {
            throw std::invalid_argument("malformed polynomial '" + text + "'");
        }
        FieldElement c = f.eta(static_cast<std::uint32_t>(coeff));
        if (negative) c = -c;
        out = out + Polynomial::monomial(f, exp, c);
        if (i == s.size()) break;
        if (s[i] == '+') { negative = false; ++i; }
        else if (s[i] == '-') { negative = true; ++i; }
        else throw std::invalid_argument("malformed polynomial '" + text + "'");
        if (i == s.size()) throw std::invalid_argument("trailing operator in '" + text + "'");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Residue rings F_q[x]/(p_i) and the digit bijection sigma.

class ResidueRing;

/// An element of F_q[x]/(p_i), held as its canonical representative of
/// degree < e.
class ResidueElement {
   public:
    ResidueElement(std::shared_ptr<const void> ring_tag, Polynomial rep)
        : tag_(std::move(ring_tag)), rep_(std::move(rep)) {}

    const Polynomial& representative() const noexcept { return rep_; }
    bool is_zero() const noexcept { return rep_.is_zero(); }

    friend bool operator==(const ResidueElement& a, const ResidueElement& b) {
        return a.tag_ == b.tag_ && a.rep_ == b.rep_;
    }
    friend bool operator!=(const ResidueElement& a, const ResidueElement& b) {
        return !(a == b);
    }

    const std::shared_ptr<const void>& ring_tag() const noexcept { return tag_; }

   private:
    std::shared_ptr<const void> tag_;  // identity of the owning ring
    Polynomial rep_;
};

class ResidueRing {
   public:
    /// modulus must be monic irreducible over its field.
    static ResidueRing make(Polynomial modulus) { return make(std::move(modulus), {}); }
    /// Same, with a custom sigma table: sigma(r) = table[sigma_canonical(r)].
    /// The table must be a permutation of [0, q^e).
    static ResidueRing make(Polynomial modulus, std::vector<std::uint64_t> sigma_table) {
        if (modulus.degree() < 1)
            throw std::invalid_argument("residue modulus must have degree >= 1");
        if (!modulus.is_monic())
            throw std::invalid_argument("residue modulus must be monic");
        if (!is_irreducible(modulus))
            throw std::invalid_argument("residue modulus must be irreducible");
        auto d = std::make_shared<Data>(Data{std::move(modulus), {}, {}});
        const Field& f = d->modulus.field();
        const int e = d->modulus.degree();
        long double size_check = 1;
        for (int i = 0; i < e; ++i) size_check *= f.q();
        if (size_check > 9.2e18)
            throw std::invalid_argument("residue field too large for 64-bit digit values");
        if (!sigma_table.empty()) {
            std::uint64_t size = 1;
            for (int i = 0; i < e; ++i) size *= f.q();
            if (size > kMaxEnumeration)
                throw std::invalid_argument("custom sigma table exceeds enumeration cap");
            if (sigma_table.size() != size)
                throw std::invalid_argument("sigma table must have q^e entries");
            std::vector<std::uint64_t> from(size, size);
            for (std::uint64_t v = 0; v < size; ++v) {
                std::uint64_t w = sigma_table[v];
                if (w >= size || from[w] != size)
                    throw std::invalid_argument("sigma table is not a permutation");
                from[w] = v;
            }
            d->sigma_to = std::move(sigma_table);
            d->sigma_from = std::move(from);
        }
        return ResidueRing(std::move(d));
    }

    const Polynomial& modulus() const noexcept { return d_->modulus; }
    const Field& field() const noexcept { return d_->modulus.field(); }
    std::uint32_t degree_e() const noexcept {
        return static_cast<std::uint32_t>(d_->modulus.degree());
    }
    std::uint64_t size() const noexcept {
        std::uint64_t s = 1;
        for (std::uint32_t i = 0; i < degree_e(); ++i) s *= field().q();
        return s;
    }

    ResidueElement zero() const {
        return {d_, Polynomial::zero(field())};
    }
    ResidueElement reduce(const Polynomial& a) const {
        return {d_, poly_mod(a, d_->modulus)};
    }
    ResidueElement from_representative(Polynomial rep) const {
        if (rep.degree() >= d_->modulus.degree())
            throw std::invalid_argument("representative degree must be < e");
        if (rep.field() != field()) throw std::invalid_argument("field mismatch");
        return {d_, std::move(rep)};
    }

    ResidueElement add(const ResidueElement& a, const ResidueElement& b) const {
        own(a); own(b);
        return {d_, a.representative() + b.representative()};
    }
    ResidueElement sub(const ResidueElement& a, const ResidueElement& b) const {
        own(a); own(b);
        return {d_, a.representative() - b.representative()};
    }
    ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const {
        own(a); own(b);
        return {d_, poly_mod(a.representative() * b.representative(), d_->modulus)};
    }

    /// sigma: F_{P} -> Z_{q^e}; canonical choice maps representative
    /// sum c_j x^j to sum eta_inv(c_j) q^j, so sigma(0) = 0.
    std::uint64_t sigma(const ResidueElement& r) const {
        own(r);
        const Field& f = field();
        std::uint64_t v = 0, scale = 1;
        for (std::uint32_t j = 0; j < degree_e(); ++j) {
            v += static_cast<std::uint64_t>(f.eta_inv(r.representative().coeff(j))) * scale;
            scale *= f.q();
        }
        return d_->sigma_to.empty() ? v : d_->sigma_to[v];
    }
    ResidueElement sigma_inv(std::uint64_t value) const {
        if (value >= size()) throw std::invalid_argument("sigma_inv: value out of range");
        std::uint64_t v = d_->sigma_from.empty() ? value : d_->sigma_from[value];
        const Field& f = field();
        std::vector<FieldElement> coeffs;
        coeffs.reserve(degree_e());
        for (std::uint32_t j = 0; j < degree_e(); ++j) {
            coeffs.push_back(f.eta(static_cast<std::uint32_t>(v % f.q())));
            v /= f.q();
        }
        return {d_, Polynomial::from_coeffs(f, std::move(coeffs))};
    }

    bool operator==(const ResidueRing& o) const noexcept {
        return d_ == o.d_ || (d_->modulus == o.d_->modulus && d_->sigma_to == o.d_->sigma_to);
    }
    bool operator!=(const ResidueRing& o) const noexcept { return !(*this == o); }

   private:
    struct Data {
        Polynomial modulus;
        std::vector<std::uint64_t> sigma_to;
        std::vector<std::uint64_t> sigma_from;
    };
    explicit ResidueRing(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    void own(const ResidueElement& r) const {
        if (r.ring_tag() != std::static_pointer_cast<const void>(d_))
            throw std::invalid_argument("residue element belongs to a different ring");
    }
    std::shared_ptr<const Data> d_;
};

}  // namespace ffhalton

#endif  // FFHALTON_ALGEBRA_HPP
