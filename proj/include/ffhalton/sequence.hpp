// The Halton-type sequence itself: x_n is obtained by expanding the ring
// element f_n locally at each chosen place, mapping residue digits through
// sigma, and emitting exact base-q digit streams.  Also provides the
// classical Halton sequence for pairwise coprime integer bases, digit
// truncation, and (lossy, presentation-only) conversion to doubles.
//
// Points are exact digit vectors end to end; floating point appears only
// in to_real().

#ifndef FFHALTON_SEQUENCE_HPP
#define FFHALTON_SEQUENCE_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ffhalton/function_field.hpp"

namespace ffhalton {

/// One coordinate of a point: the value sum_j digits[j] * base^-(j+1).
struct DigitCoordinate {
    std::uint32_t base = 2;
    std::vector<std::uint32_t> digits;

    friend bool operator==(const DigitCoordinate& a, const DigitCoordinate& b) {
        return a.base == b.base && a.digits == b.digits;
    }
    friend bool operator!=(const DigitCoordinate& a, const DigitCoordinate& b) {
        return !(a == b);
    }
};

struct DigitPoint {
    std::vector<DigitCoordinate> coords;

    std::size_t dimension() const noexcept { return coords.size(); }

    friend bool operator==(const DigitPoint& a, const DigitPoint& b) {
        return a.coords == b.coords;
    }
    friend bool operator!=(const DigitPoint& a, const DigitPoint& b) { return !(a == b); }
};

struct SequenceConfig {
    FunctionField model;
    std::vector<Place> places;
    int m = 1;                 // base-q digits per coordinate
    std::uint64_t start = 0;   // first index for generate()
    std::uint64_t count = 0;   // number of points for generate()

    void validate() const {
        if (places.empty()) throw std::invalid_argument("config: need at least one place");
        if (m < 1) throw std::invalid_argument("config: precision m must be >= 1");
        if (m > kMaxPrecision) throw std::invalid_argument("config: m exceeds precision cap");
        for (std::size_t i = 0; i < places.size(); ++i)
            for (std::size_t j = i + 1; j < places.size(); ++j)
                if (places[i] == places[j])
                    throw std::invalid_argument("config: places must be distinct");
    }
};

/// x_n: expands f_n at each place to ceil(m/e_i) residue digits, applies
/// sigma, and splits each residue digit into e_i base-q digits (most
/// significant first), truncated to exactly m digits per coordinate.
/// Pure random access; cost independent of n's neighbors.
inline DigitPoint point(const SequenceConfig& cfg, std::uint64_t n) {
    cfg.validate();
    const std::uint32_t q = cfg.model.field().q();
    const FFElement f = cfg.model.element_from_index(n);
    DigitPoint out;
    out.coords.reserve(cfg.places.size());
    for (const Place& P : cfg.places) {
        const std::uint32_t e = P.degree();
        const int J = (cfg.m + static_cast<int>(e) - 1) / static_cast<int>(e);
        DigitCoordinate coord{q, {}};
        coord.digits.reserve(static_cast<std::size_t>(J) * e);
        for (const ResidueElement& r : cfg.model.local_expansion(f, P, J)) {
            std::uint64_t v = P.sigma(r);
            std::uint64_t scale = 1;
            for (std::uint32_t t = 1; t < e; ++t) scale *= q;
            for (std::uint32_t t = 0; t < e; ++t) {
                coord.digits.push_back(static_cast<std::uint32_t>(v / scale));
                v %= scale;
                scale /= q;
            }
        }
        coord.digits.resize(static_cast<std::size_t>(cfg.m));
        out.coords.push_back(std::move(coord));
    }
    return out;
}

/// Points for n = start, ..., start + count - 1; identical to repeated
/// point() calls.
inline std::vector<DigitPoint> generate(const SequenceConfig& cfg) {
    cfg.validate();
    std::vector<DigitPoint> out;
    out.reserve(static_cast<std::size_t>(cfg.count));
    for (std::uint64_t n = cfg.start; n < cfg.start + cfg.count; ++n)
        out.push_back(point(cfg, n));
    return out;
}

/// Keeps the first m digits of every coordinate.  Idempotent; the value
/// never increases.
inline DigitPoint truncate(const DigitPoint& p, int m) {
    if (m < 1) throw std::invalid_argument("truncate: m must be >= 1");
    for (const auto& c : p.coords)
        if (static_cast<std::size_t>(m) > c.digits.size())
            throw std::invalid_argument("truncate: m exceeds point precision");
    DigitPoint out = p;
    for (auto& c : out.coords) c.digits.resize(static_cast<std::size_t>(m));
    return out;
}

/// Nearest-double rendering of each coordinate.  Lossy; verification always
/// works on the digits themselves.
inline std::vector<double> to_real(const DigitPoint& p) {
    std::vector<double> out;
    out.reserve(p.coords.size());
    for (const auto& c : p.coords) {
        double v = 0.0;
        for (auto it = c.digits.rbegin(); it != c.digits.rend(); ++it)
            v = (v + *it) / c.base;
        out.push_back(v);
    }
    return out;
}

/// Classical Halton point h_n = (phi_b1(n), ..., phi_bs(n)), m digits per
/// coordinate (digits of n beyond position m are dropped; exact for
/// n < min b_i^m).  Bases must be pairwise coprime and >= 2.
inline DigitPoint halton_classical(const std::vector<std::uint32_t>& bases,
                                   std::uint64_t n, int m) {
    if (bases.empty()) throw std::invalid_argument("halton: need at least one base");
    if (m < 1 || m > kMaxPrecision)
        throw std::invalid_argument("halton: m out of range");
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i] < 2) throw std::invalid_argument("halton: bases must be >= 2");
        for (std::size_t j = i + 1; j < bases.size(); ++j)
            if (std::gcd(bases[i], bases[j]) != 1)
                throw std::invalid_argument("halton: bases must be pairwise coprime");
    }
    DigitPoint out;
    out.coords.reserve(bases.size());
    for (std::uint32_t b : bases) {
        DigitCoordinate coord{b, std::vector<std::uint32_t>(static_cast<std::size_t>(m), 0)};
        std::uint64_t t = n;
        for (int j = 0; j < m && t > 0; ++j) {
            coord.digits[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(t % b);
            t /= b;
        }
        out.coords.push_back(std::move(coord));
    }
    return out;
}

}  // namespace ffhalton

#endif  // FFHALTON_SEQUENCE_HPP
