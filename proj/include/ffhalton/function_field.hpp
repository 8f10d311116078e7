// Concrete global function field models over F_q:
//
//   * the rational field F_q(x), genus 0, places away from infinity given
//     by monic irreducibles p_i(x) with local parameter z_i = p_i;
//   * odd-characteristic hyperelliptic fields F_q(x, y), y^2 = f_def(x)
//     with f_def squarefree of degree 3 or 5 (genus 1 or 2), places given
//     by affine rational points (x0, y0), y0 != 0, local parameter x - x0.
//
// Both models expose the same three ingredients used downstream: places
// with residue rings, truncated local expansions at a place, and the
// nested monomial bases of the Riemann-Roch spaces L(m*Pinf).

#ifndef FFHALTON_FUNCTION_FIELD_HPP
#define FFHALTON_FUNCTION_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ffhalton/algebra.hpp"

namespace ffhalton {

enum class ModelKind { Rational, Hyperelliptic };

class FunctionField;
class FFElement;
class Place;

namespace detail {

struct ModelData {
    ModelKind kind;
    Field F;
    Polynomial f_def;  // zero for the rational model
    int genus = 0;
};

using ModelPtr = std::shared_ptr<const ModelData>;

// Truncated power series over F_q as coefficient vectors (ascending).
using Series = std::vector<FieldElement>;

inline Series series_add(const Field& F, const Series& a, const Series& b) {
    Series r;
    const std::size_t n = std::max(a.size(), b.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement x = i < a.size() ? a[i] : F.zero();
        FieldElement y = i < b.size() ? b[i] : F.zero();
        r.push_back(x + y);
    }
    return r;
}

inline Series series_mul(const Field& F, const Series& a, const Series& b, std::size_t J) {
    Series r(std::min(J, a.empty() || b.empty() ? std::size_t{0} : a.size() + b.size() - 1),
             F.zero());
    for (std::size_t i = 0; i < a.size() && i < J; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < J; ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

inline Series series_scale(const FieldElement& s, Series a) {
    for (auto& c : a) c = s * c;
    return a;
}

// Newton inversion mod z^J: h <- h(2 - a h), quadratic convergence.
inline Series series_inv(const Field& F, const Series& a, std::size_t J) {
    if (a.empty() || a[0].is_zero())
        throw std::invalid_argument("series inversion: constant term is zero");
    Series h{a[0].inv()};
    const FieldElement two = F.from_int(2);
    std::size_t k = 1;
    while (k < J) {
        k = std::min(2 * k, J);
        Series ah = series_mul(F, a, h, k);
        Series corr(ah.size(), F.zero());
        for (std::size_t i = 0; i < ah.size(); ++i) corr[i] = -ah[i];
        corr[0] = two - ah[0];
        h = series_mul(F, h, corr, k);
    }
    h.resize(J, F.zero());
    return h;
}

}  // namespace detail

/// z-adic square root: returns g with g^2 = series mod z^J and g(0) = y0,
/// by the Newton step g <- (g + series/g)/2.  Requires odd characteristic,
/// y0 != 0, and series constant term y0^2.
inline std::vector<FieldElement> hensel_sqrt(const std::vector<FieldElement>& series,
                                             const FieldElement& y0, int J) {
    const Field& F = y0.field();
    if (J < 1) throw std::invalid_argument("hensel_sqrt: J must be >= 1");
    if (J > kMaxPrecision) throw std::invalid_argument("hensel_sqrt: J exceeds precision cap");
    if (F.p() == 2) throw std::invalid_argument("hensel_sqrt: even characteristic");
    if (y0.is_zero()) throw std::invalid_argument("hensel_sqrt: y0 must be a unit");
    const FieldElement c0 = series.empty() ? F.zero() : series[0];
    if (c0 != y0 * y0)
        throw std::invalid_argument("hensel_sqrt: constant term must equal y0^2");

    const std::size_t prec = static_cast<std::size_t>(J);
    detail::Series S(series.begin(),
                     series.begin() + static_cast<std::ptrdiff_t>(
                                          std::min(series.size(), prec)));
    S.resize(prec, F.zero());
    const FieldElement inv2 = F.from_int(2).inv();
    detail::Series g{y0};
    std::size_t k = 1;
    while (k < prec) {
        k = std::min(2 * k, prec);
        detail::Series t = detail::series_mul(F, S, detail::series_inv(F, g, k), k);
        g.resize(k, F.zero());
        g = detail::series_scale(inv2, detail::series_add(F, g, t));
    }
    g.resize(prec, F.zero());
    return g;
}

/// An element a(x) + b(x)*y of the holomorphy ring (functions with poles
/// only at Pinf).  Rational model elements have b = 0.
class FFElement {
   public:
    FFElement(detail::ModelPtr model, Polynomial a, Polynomial b)
        : m_(std::move(model)), a_(std::move(a)), b_(std::move(b)) {}

    const Polynomial& a_part() const noexcept { return a_; }
    const Polynomial& b_part() const noexcept { return b_; }
    bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }

    /// Pole order at Pinf; returns -1 for the zero element.  Rational:
    /// deg a.  Hyperelliptic: max(2 deg a, 2 deg b + 2g+1), exact because
    /// the two candidate orders have opposite parity.
    int pole_order() const {
        int po = -1;
        if (!a_.is_zero())
            po = m_->kind == ModelKind::Rational ? a_.degree() : 2 * a_.degree();
        if (!b_.is_zero())
            po = std::max(po, 2 * b_.degree() + 2 * m_->genus + 1);
        return po;
    }

    friend FFElement operator+(const FFElement& u, const FFElement& v) {
        u.check(v);
        return {u.m_, u.a_ + v.a_, u.b_ + v.b_};
    }
    friend FFElement operator-(const FFElement& u, const FFElement& v) {
        u.check(v);
        return {u.m_, u.a_ - v.a_, u.b_ - v.b_};
    }
    friend FFElement operator-(const FFElement& u) { return {u.m_, -u.a_, -u.b_}; }
    friend FFElement operator*(const FFElement& u, const FFElement& v) {
        u.check(v);
        // (a1 + b1 y)(a2 + b2 y) = a1 a2 + b1 b2 f_def + (a1 b2 + a2 b1) y
        Polynomial a = u.a_ * v.a_;
        if (!u.b_.is_zero() && !v.b_.is_zero()) a = a + u.b_ * v.b_ * u.m_->f_def;
        return {u.m_, std::move(a), u.a_ * v.b_ + v.a_ * u.b_};
    }
    friend FFElement operator*(const FieldElement& s, const FFElement& u) {
        return {u.m_, s * u.a_, s * u.b_};
    }
    friend bool operator==(const FFElement& u, const FFElement& v) {
        return u.a_ == v.a_ && u.b_ == v.b_ && u.m_ == v.m_;
    }
    friend bool operator!=(const FFElement& u, const FFElement& v) { return !(u == v); }
    // Deterministic total order for use as a set key.
    friend bool operator<(const FFElement& u, const FFElement& v) {
        if (u.b_ != v.b_) return u.b_ < v.b_;
        return u.a_ < v.a_;
    }

    const detail::ModelPtr& model_tag() const noexcept { return m_; }

   private:
    void check(const FFElement& o) const {
        if (m_ != o.m_) throw std::invalid_argument("elements of different function fields");
    }
    detail::ModelPtr m_;
    Polynomial a_, b_;
};

/// A place != Pinf of the model, with its residue ring and sigma bijection.
class Place {
   public:
    const ResidueRing& residue_ring() const noexcept { return d_->ring; }
    /// Place degree e_i (residue field size q^e).
    std::uint32_t degree() const noexcept { return d_->ring.degree_e(); }
    /// The local parameter as a polynomial in x: p_i(x) or x - x0.
    const Polynomial& local_parameter() const noexcept { return d_->z; }
    bool is_point() const noexcept { return d_->is_point; }
    const FieldElement& x0() const {
        if (!d_->is_point) throw std::invalid_argument("not a point place");
        return d_->x0;
    }
    const FieldElement& y0() const {
        if (!d_->is_point) throw std::invalid_argument("not a point place");
        return d_->y0;
    }

    std::uint64_t sigma(const ResidueElement& r) const { return d_->ring.sigma(r); }
    ResidueElement sigma_inv(std::uint64_t v) const { return d_->ring.sigma_inv(v); }

    /// "x^2+x+1" for rational places, "(0,1)" for point places.
    std::string description() const {
        if (!d_->is_point) return to_string(d_->z);
        const Field& F = d_->x0.field();
        return "(" + std::to_string(F.eta_inv(d_->x0)) + "," +
               std::to_string(F.eta_inv(d_->y0)) + ")";
    }

    friend bool operator==(const Place& a, const Place& b) {
        return a.d_ == b.d_ ||
               (a.d_->model == b.d_->model && a.d_->is_point == b.d_->is_point &&
                a.d_->z == b.d_->z && (!a.d_->is_point || a.d_->y0 == b.d_->y0));
    }
    friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }

   private:
    friend class FunctionField;
    struct Data {
        detail::ModelPtr model;
        ResidueRing ring;
        Polynomial z;
        bool is_point;
        FieldElement x0, y0;
    };
    explicit Place(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

class FunctionField {
   public:
    static FunctionField rational(Field F) {
        auto d = std::make_shared<detail::ModelData>(
            detail::ModelData{ModelKind::Rational, F, Polynomial::zero(F), 0});
        return FunctionField(std::move(d));
    }

    /// y^2 = f_def(x); requires odd characteristic, deg f_def in {3, 5},
    /// f_def squarefree.  Genus is (deg - 1)/2.
    static FunctionField hyperelliptic(Polynomial f_def) {
        const Field& F = f_def.field();
        if (F.p() == 2)
            throw std::invalid_argument("hyperelliptic model requires odd characteristic");
        const int deg = f_def.degree();
        if (deg != 3 && deg != 5)
            throw std::invalid_argument("defining polynomial degree must be 3 or 5");
        if (poly_gcd(f_def, f_def.derivative()).degree() != 0)
            throw std::invalid_argument("defining polynomial must be squarefree");
        auto d = std::make_shared<detail::ModelData>(
            detail::ModelData{ModelKind::Hyperelliptic, F, std::move(f_def), (deg - 1) / 2});
        return FunctionField(std::move(d));
    }

    ModelKind kind() const noexcept { return d_->kind; }
    const Field& field() const noexcept { return d_->F; }
    int genus() const noexcept { return d_->genus; }
    const Polynomial& defining_poly() const {
        if (d_->kind != ModelKind::Hyperelliptic)
            throw std::invalid_argument("rational model has no defining polynomial");
        return d_->f_def;
    }

    FFElement zero() const { return make(Polynomial::zero(d_->F)); }
    FFElement one() const { return make(Polynomial::one(d_->F)); }
    FFElement make(Polynomial a) const {
        return {d_, std::move(a), Polynomial::zero(d_->F)};
    }
    FFElement make(Polynomial a, Polynomial b) const {
        if (d_->kind == ModelKind::Rational && !b.is_zero())
            throw std::invalid_argument("rational model elements have no y part");
        if (a.field() != d_->F || b.field() != d_->F)
            throw std::invalid_argument("coefficient field mismatch");
        return {d_, std::move(a), std::move(b)};
    }

    /// r-th element of the infinite chain basis v_0, v_1, ... ordered by
    /// pole order at Pinf.  Rational: x^r.  Hyperelliptic: monomials
    /// x^i y^j (j in {0,1}) with pole order 2i + (2g+1)j, skipping the g
    /// Weierstrass gaps.
    FFElement chain_element(std::size_t r) const {
        const Field& F = d_->F;
        if (d_->kind == ModelKind::Rational) {
            if (r > static_cast<std::size_t>(kMaxPolyDegree))
                throw std::invalid_argument("chain basis index exceeds degree cap");
            return make(Polynomial::monomial(F, static_cast<std::uint32_t>(r), F.one()));
        }
        const int w = 2 * d_->genus + 1;
        std::size_t seen = 0;
        for (int order = 0; order <= 2 * kMaxPolyDegree; ++order) {
            bool as_x = (order % 2 == 0);
            bool as_xy = (order >= w) && ((order - w) % 2 == 0);
            if (!as_x && !as_xy) continue;  // Weierstrass gap
            if (seen++ < r) continue;
            if (as_x)
                return make(Polynomial::monomial(F, static_cast<std::uint32_t>(order / 2),
                                                 F.one()));
            return make(Polynomial::zero(F),
                        Polynomial::monomial(F, static_cast<std::uint32_t>((order - w) / 2),
                                             F.one()));
        }
        throw std::invalid_argument("chain basis index exceeds degree cap");
    }

    /// Basis (v_0, ..., v_{l-1}) of L(m*Pinf); the list for m is a prefix
    /// of the list for m+1.  For m >= 2g-1 its length is m+1-g.
    std::vector<FFElement> rr_basis(int m) const {
        if (m < 0) throw std::invalid_argument("rr_basis: m must be >= 0");
        std::vector<FFElement> out;
        for (std::size_t r = 0;; ++r) {
            FFElement v = chain_element(r);
            if (v.pole_order() > m) break;
            out.push_back(std::move(v));
        }
        return out;
    }

    /// f_n = sum_r eta(a_r(n)) v_r, where n = sum_r a_r(n) q^r.
    FFElement element_from_index(std::uint64_t n) const {
        const Field& F = d_->F;
        FFElement f = zero();
        for (std::size_t r = 0; n > 0; ++r, n /= F.q())
            f = f + F.eta(static_cast<std::uint32_t>(n % F.q())) * chain_element(r);
        return f;
    }

    /// Rational model place from a monic irreducible p_i(x).
    Place place(const Polynomial& p, std::vector<std::uint64_t> sigma_table = {}) const {
        if (d_->kind != ModelKind::Rational)
            throw std::invalid_argument("polynomial places exist only on the rational model");
        if (p.field() != d_->F) throw std::invalid_argument("place field mismatch");
        ResidueRing ring = ResidueRing::make(p, std::move(sigma_table));  // validates
        auto pd = std::make_shared<Place::Data>(
            Place::Data{d_, std::move(ring), p, false, d_->F.zero(), d_->F.zero()});
        return Place(std::move(pd));
    }

    /// Hyperelliptic model place from an affine point (x0, y0), y0 != 0.
    Place place(const FieldElement& x0, const FieldElement& y0,
                std::vector<std::uint64_t> sigma_table = {}) const {
        if (d_->kind != ModelKind::Hyperelliptic)
            throw std::invalid_argument("point places exist only on the curve model");
        if (x0.field() != d_->F || y0.field() != d_->F)
            throw std::invalid_argument("place field mismatch");
        if (y0.is_zero())
            throw std::invalid_argument("y0 = 0: x - x0 is not a local parameter there");
        if (y0 * y0 != d_->f_def.eval(x0))
            throw std::invalid_argument("point is not on the curve");
        Polynomial z = Polynomial::x(d_->F) - Polynomial::constant(x0);
        ResidueRing ring = ResidueRing::make(z, std::move(sigma_table));
        auto pd = std::make_shared<Place::Data>(
            Place::Data{d_, std::move(ring), std::move(z), true, x0, y0});
        return Place(std::move(pd));
    }

    /// First s places in canonical order.  Rational: monic irreducibles by
    /// (degree, coefficient order).  Hyperelliptic: points (x0, y0), y0 != 0,
    /// by (x0 index, y0 index).
    std::vector<Place> places_auto(std::size_t s) const {
        std::vector<Place> out;
        if (s == 0) return out;
        if (d_->kind == ModelKind::Rational) {
            for (int deg = 1; deg <= kMaxPolyDegree; ++deg) {
                for (const Polynomial& p : monic_irreducibles(d_->F, deg)) {
                    if (p.degree() < deg) continue;  // lower degrees already taken
                    out.push_back(place(p));
                    if (out.size() == s) return out;
                }
            }
            throw std::invalid_argument("fewer places available than requested");
        }
        const Field& F = d_->F;
        for (std::uint32_t xi = 0; xi < F.q(); ++xi) {
            const FieldElement x0 = F.element(xi);
            const FieldElement v = d_->f_def.eval(x0);
            if (v.is_zero()) continue;
            for (std::uint32_t yi = 0; yi < F.q(); ++yi) {
                const FieldElement y0 = F.element(yi);
                if (y0 * y0 != v) continue;
                out.push_back(place(x0, y0));
                if (out.size() == s) return out;
            }
        }
        throw std::invalid_argument("fewer places available than requested");
    }

    /// First J coefficients of the local expansion f = sum_j f_j z^j at the
    /// place, as residue field elements.  Rational model: the base-p_i
    /// expansion (exact and finite).  Hyperelliptic: substitutes the z-adic
    /// square-root series for y.
    std::vector<ResidueElement> local_expansion(const FFElement& f, const Place& place,
                                                int J) const {
        if (J < 1) throw std::invalid_argument("local_expansion: J must be >= 1");
        if (J > kMaxPrecision)
            throw std::invalid_argument("local_expansion: J exceeds precision cap");
        if (f.model_tag() != d_) throw std::invalid_argument("element of a different model");
        if (place.d_->model != d_) throw std::invalid_argument("place of a different model");
        const ResidueRing& ring = place.residue_ring();
        const std::size_t prec = static_cast<std::size_t>(J);

        if (d_->kind == ModelKind::Rational) {
            std::vector<ResidueElement> out;
            out.reserve(prec);
            Polynomial cur = f.a_part();
            for (std::size_t j = 0; j < prec; ++j) {
                auto [q, r] = poly_divmod(cur, place.local_parameter());
                out.push_back(ring.from_representative(std::move(r)));
                cur = std::move(q);
            }
            return out;
        }

        const Field& F = d_->F;
        auto taylor = [&](const Polynomial& p) {
            detail::Series c;
            c.reserve(prec);
            Polynomial cur = p;
            for (std::size_t j = 0; j < prec; ++j) {
                auto [q, r] = poly_divmod(cur, place.local_parameter());
                c.push_back(r.coeff(0));
                cur = std::move(q);
            }
            return c;
        };
        detail::Series series = taylor(f.a_part());
        if (!f.b_part().is_zero()) {
            detail::Series y = hensel_sqrt(taylor(d_->f_def), place.y0(), J);
            series = detail::series_add(
                F, series, detail::series_mul(F, taylor(f.b_part()), y, prec));
        }
        std::vector<ResidueElement> out;
        out.reserve(prec);
        for (std::size_t j = 0; j < prec; ++j)
            out.push_back(ring.from_representative(Polynomial::constant(series[j])));
        return out;
    }

    bool operator==(const FunctionField& o) const noexcept {
        return d_ == o.d_ ||
               (d_->kind == o.d_->kind && d_->F == o.d_->F && d_->f_def == o.d_->f_def);
    }
    bool operator!=(const FunctionField& o) const noexcept { return !(*this == o); }

    const detail::ModelPtr& data() const noexcept { return d_; }

   private:
    explicit FunctionField(detail::ModelPtr d) : d_(std::move(d)) {}
    detail::ModelPtr d_;
};

}  // namespace ffhalton

#endif  // FFHALTON_FUNCTION_FIELD_HPP
