// Quality certification for point sets and sequences:
//
//   * (u,m,e,s)-net checks over the admissible interval shapes (digit
//     depths d_i restricted to multiples of e_i), with witness reporting;
//   * blockwise sequence checks and the empirical minimal passing u;
//   * the structural block decomposition check (every length-q^m index
//     block is a shifted copy of one Riemann-Roch space);
//   * exact star discrepancy for s <= 3 in integer arithmetic;
//   * the discrepancy-bound constants C_FK / C_Tez and their comparison.
//
// All counting is exact; doubles appear only in the bound constants.

#ifndef FFHALTON_VERIFY_HPP
#define FFHALTON_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ffhalton/sequence.hpp"

namespace ffhalton {

// ---------------------------------------------------------------------------
// Reduced fractions on 64-bit, built from __int128 intermediates.

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
};

namespace detail {

inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Fraction make_fraction(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
    constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
    if (num < lo || num > hi || den > hi)
        throw std::invalid_argument("fraction exceeds 64-bit range after reduction");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

inline std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e, std::uint64_t cap,
                                 const char* what) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (r > cap / b) throw std::invalid_argument(what);
        r *= b;
    }
    if (r > cap) throw std::invalid_argument(what);
    return r;
}

}  // namespace detail

inline double value(const Fraction& f) {
    return static_cast<double>(f.num) / static_cast<double>(f.den);
}

inline std::string to_string(const Fraction& f) {
    return std::to_string(f.num) + "/" + std::to_string(f.den);
}

// ---------------------------------------------------------------------------
// Net checking.

struct NetWitness {
    std::vector<std::uint32_t> d;  // digit depths, e_i | d_i
    std::vector<std::uint64_t> a;  // anchor digits, a_i < b^{d_i}
    std::uint64_t count = 0;       // points found in the interval
    std::uint64_t expected = 0;    // b^{m - sum d_i}
};

struct NetReport {
    std::uint32_t b = 2;
    int m = 0;
    int u = 0;
    std::vector<std::uint32_t> e;
    bool pass = false;
    std::optional<NetWitness> witness;           // lexicographically first failure
    std::uint64_t shapes_checked = 0;
    std::uint64_t intervals_checked = 0;
    std::optional<int> minimal_u;                // filled on request

    std::size_t s() const noexcept { return e.size(); }
};

namespace detail {

// All admissible digit-depth vectors (e_i | d_i, sum d_i <= budget) in
// lexicographic order.
inline std::vector<std::vector<std::uint32_t>> admissible_shapes(
    const std::vector<std::uint32_t>& e, int budget) {
    std::vector<std::vector<std::uint32_t>> shapes;
    std::vector<std::uint32_t> cur(e.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == e.size()) {
            shapes.push_back(cur);
            return;
        }
        for (std::uint32_t d = 0; static_cast<int>(d) <= left; d += e[i]) {
            cur[i] = d;
            self(self, i + 1, left - static_cast<int>(d));
        }
        cur[i] = 0;
    };
    rec(rec, 0, budget);
    return shapes;
}

struct ShapeFailure {
    std::size_t shape_index;
    std::uint64_t bucket;
    std::uint64_t count;
    std::uint64_t expected;
};

// Counts points per anchor for one shape; returns the smallest failing
// bucket, if any.
inline std::optional<ShapeFailure> check_shape(const std::vector<DigitPoint>& points,
                                               std::uint32_t b,
                                               const std::vector<std::uint32_t>& d,
                                               std::size_t shape_index,
                                               std::uint64_t* intervals) {
    int total = 0;
    for (auto di : d) total += static_cast<int>(di);
    std::uint64_t buckets = 1;
    for (int i = 0; i < total; ++i) buckets *= b;
    const std::uint64_t expected = points.size() / buckets;
    std::vector<std::uint32_t> count(static_cast<std::size_t>(buckets), 0);
    for (const DigitPoint& p : points) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const auto& digits = p.coords[i].digits;
            for (std::uint32_t j = 0; j < d[i]; ++j) key = key * b + digits[j];
        }
        ++count[static_cast<std::size_t>(key)];
    }
    *intervals = buckets;
    for (std::uint64_t k = 0; k < buckets; ++k)
        if (count[static_cast<std::size_t>(k)] != expected)
            return ShapeFailure{shape_index, k, count[static_cast<std::size_t>(k)], expected};
    return std::nullopt;
}

}  // namespace detail

/// Checks that the b^m-point set is a (u,m,e,s)-net: every admissible
/// interval (digit depths d with e_i | d_i and sum d_i <= m-u) holds exactly
/// b^{m - sum d_i} points.  All shapes are always checked (deterministic
/// reports); the witness is the lexicographically first failure.  `jobs`
/// partitions the shape list across threads.
inline NetReport check_net(const std::vector<DigitPoint>& points, std::uint32_t b, int m,
                           int u, const std::vector<std::uint32_t>& e, int jobs = 1) {
    if (b < 2) throw std::invalid_argument("check_net: base must be >= 2");
    if (m < 0) throw std::invalid_argument("check_net: m must be >= 0");
    if (u < 0 || u > m) throw std::invalid_argument("check_net: u must satisfy 0 <= u <= m");
    if (e.empty()) throw std::invalid_argument("check_net: e must be nonempty");
    for (auto ei : e)
        if (ei < 1) throw std::invalid_argument("check_net: e entries must be >= 1");
    const std::uint64_t N = detail::checked_pow(b, static_cast<std::uint32_t>(m),
                                                kMaxEnumeration,
                                                "check_net: b^m exceeds enumeration cap");
    if (points.size() != N)
        throw std::invalid_argument("check_net: expected exactly b^m points");
    for (const DigitPoint& p : points) {
        if (p.dimension() != e.size())
            throw std::invalid_argument("check_net: point dimension does not match e");
        for (const auto& c : p.coords) {
            if (c.base != b) throw std::invalid_argument("check_net: coordinate base mismatch");
            if (c.digits.size() < static_cast<std::size_t>(m))
                throw std::invalid_argument("check_net: points carry fewer than m digits");
        }
    }

    NetReport report;
    report.b = b;
    report.m = m;
    report.u = u;
    report.e = e;

    const auto shapes = detail::admissible_shapes(e, m - u);
    report.shapes_checked = shapes.size();

    std::optional<detail::ShapeFailure> best;
    std::uint64_t intervals_total = 0;
    std::mutex mu;
    const int workers = std::clamp(jobs, 1, 64);
    auto worker = [&](std::size_t w) {
        std::optional<detail::ShapeFailure> local;
        std::uint64_t local_intervals = 0;
        for (std::size_t idx = w; idx < shapes.size(); idx += workers) {
            std::uint64_t iv = 0;
            auto fail = detail::check_shape(points, b, shapes[idx], idx, &iv);
            local_intervals += iv;
            if (fail && (!local || fail->shape_index < local->shape_index)) local = fail;
        }
        std::lock_guard<std::mutex> lk(mu);
        intervals_total += local_intervals;
        if (local && (!best || local->shape_index < best->shape_index)) best = local;
    };
    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) threads.emplace_back(worker, static_cast<std::size_t>(w));
        for (auto& t : threads) t.join();
    }
    report.intervals_checked = intervals_total;

    if (!best) {
        report.pass = true;
        return report;
    }
    const auto& d = shapes[best->shape_index];
    NetWitness w;
    w.d = d;
    w.count = best->count;
    w.expected = best->expected;
    w.a.assign(d.size(), 0);
    std::uint64_t key = best->bucket;
    for (std::size_t i = d.size(); i-- > 0;) {
        std::uint64_t bdi = 1;
        for (std::uint32_t j = 0; j < d[i]; ++j) bdi *= b;
        w.a[i] = key % bdi;
        key /= bdi;
    }
    report.pass = false;
    report.witness = std::move(w);
    return report;
}

/// Least u in [0, m] for which check_net passes (monotone in u).
inline int minimal_u(const std::vector<DigitPoint>& points, std::uint32_t b, int m,
                     const std::vector<std::uint32_t>& e, int jobs = 1) {
    for (int u = 0; u <= m; ++u)
        if (check_net(points, b, m, u, e, jobs).pass) return u;
    return m;  // unreachable: u = m always passes the single trivial shape
}

/// t-value of the classical net view: t = u + sum (e_i - 1).
inline int t_from_u(int u, const std::vector<std::uint32_t>& e) {
    if (u < 0) throw std::invalid_argument("t_from_u: u must be >= 0");
    int t = u;
    for (auto ei : e) {
        if (ei < 1) throw std::invalid_argument("t_from_u: e entries must be >= 1");
        t += static_cast<int>(ei) - 1;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Blockwise sequence checking.

struct BlockResult {
    int m = 0;
    std::uint64_t k = 0;
    NetReport report;
};

struct SequenceCheckReport {
    bool pass = true;
    std::vector<BlockResult> blocks;  // in (m, k) scan order

    const BlockResult* first_failure() const {
        for (const auto& b : blocks)
            if (!b.report.pass) return &b;
        return nullptr;
    }
};

/// For every m in [m_lo, m_hi] and k in [k_lo, k_hi], truncates the index
/// block k*b^m <= n < (k+1)*b^m to m digits and net-checks it.  Blocks with
/// m = u pass vacuously (only the trivial shape is admissible).
inline SequenceCheckReport check_sequence(const SequenceConfig& base, int m_lo, int m_hi,
                                          std::uint64_t k_lo, std::uint64_t k_hi, int u,
                                          const std::vector<std::uint32_t>& e,
                                          int jobs = 1) {
    if (m_lo < std::max(u, 1) || m_hi < m_lo)
        throw std::invalid_argument("check_sequence: need u <= m_lo <= m_hi, m_lo >= 1");
    if (k_hi < k_lo) throw std::invalid_argument("check_sequence: bad k range");
    const std::uint32_t b = base.model.field().q();
    SequenceCheckReport out;
    for (int m = m_lo; m <= m_hi; ++m) {
        const std::uint64_t bm = detail::checked_pow(
            b, static_cast<std::uint32_t>(m), kMaxEnumeration,
            "check_sequence: b^m exceeds enumeration cap");
        for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
            SequenceConfig cfg = base;
            cfg.m = m;
            cfg.start = k * bm;
            cfg.count = bm;
            BlockResult blk;
            blk.m = m;
            blk.k = k;
            blk.report = check_net(generate(cfg), b, m, u, e, jobs);
            out.pass = out.pass && blk.report.pass;
            out.blocks.push_back(std::move(blk));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Block structure check: the n-th index block of length q^m, shifted by its
// first element, must equal the full span of the m-dimensional
// Riemann-Roch space attached to the construction.

inline bool lemma1_check(const FunctionField& model, std::uint64_t k, int m) {
    const int g = model.genus();
    if (m < g) throw std::invalid_argument("lemma1_check: m must be >= genus");
    const std::uint32_t q = model.field().q();
    const std::uint64_t qm = detail::checked_pow(
        q, static_cast<std::uint32_t>(m), kMaxEnumeration,
        "lemma1_check: q^m exceeds enumeration cap");
    if (k > kMaxEnumeration / qm)
        throw std::invalid_argument("lemma1_check: block start exceeds enumeration cap");

    const FFElement h = model.element_from_index(k * qm);
    std::set<FFElement> shifted;
    for (std::uint64_t i = 0; i < qm; ++i)
        shifted.insert(model.element_from_index(k * qm + i) - h);

    // Independent span of the Riemann-Roch basis (degree m+g-1 divisor);
    // its dimension must be exactly m.
    std::vector<FFElement> basis;
    if (m > 0) basis = model.rr_basis(m + g - 1);
    if (basis.size() != static_cast<std::size_t>(m)) return false;
    const Field& F = model.field();
    std::set<FFElement> span;
    for (std::uint64_t i = 0; i < qm; ++i) {
        FFElement c = model.zero();
        std::uint64_t t = i;
        for (std::size_t r = 0; r < basis.size(); ++r, t /= q)
            c = c + F.eta(static_cast<std::uint32_t>(t % q)) * basis[r];
        span.insert(c);
    }
    return shifted == span;
}

// ---------------------------------------------------------------------------
// Exact star discrepancy, s <= 3.

namespace detail {

struct ExactCoord {
    std::uint64_t num = 0;  // value = num / den
    std::uint64_t den = 1;
};

// Per-point exact coordinates over a per-dimension common denominator.
inline std::vector<std::vector<std::uint64_t>> normalize_coords(
    const std::vector<DigitPoint>& points, std::vector<std::uint64_t>* dens) {
    const std::size_t s = points.front().dimension();
    dens->assign(s, 1);
    for (const DigitPoint& p : points) {
        if (p.dimension() != s)
            throw std::invalid_argument("discrepancy: mixed point dimensions");
        for (std::size_t i = 0; i < s; ++i) {
            const auto& c = p.coords[i];
            if (c.base != points.front().coords[i].base)
                throw std::invalid_argument("discrepancy: mixed bases in one coordinate");
            const std::uint64_t den = checked_pow(
                c.base, static_cast<std::uint32_t>(c.digits.size()), (1ull << 62),
                "discrepancy: precision exceeds exact arithmetic range");
            (*dens)[i] = std::max((*dens)[i], den);
        }
    }
    std::vector<std::vector<std::uint64_t>> vals(points.size(),
                                                 std::vector<std::uint64_t>(s, 0));
    for (std::size_t n = 0; n < points.size(); ++n) {
        for (std::size_t i = 0; i < s; ++i) {
            const auto& c = points[n].coords[i];
            std::uint64_t v = 0;
            for (auto d : c.digits) v = v * c.base + d;
            std::uint64_t den = 1;
            for (std::size_t j = 0; j < c.digits.size(); ++j) den *= c.base;
            vals[n][i] = v * ((*dens)[i] / den);
        }
    }
    return vals;
}

}  // namespace detail

/// Exact star discrepancy of the point multiset.  s = 1 uses the sorted
/// closed form; s in {2, 3} maximizes over boxes with corners on the grid
/// induced by the point coordinates (with open/closed corrections),
/// O(N^{s+1}).  Entirely in integer arithmetic; duplicated points count
/// with multiplicity.
inline Fraction star_discrepancy_exact(const std::vector<DigitPoint>& points) {
    if (points.empty()) throw std::invalid_argument("discrepancy: empty point set");
    const std::size_t s = points.front().dimension();
    if (s < 1 || s > 3)
        throw std::invalid_argument("discrepancy: dimension must be 1, 2, or 3");
    const std::uint64_t N = points.size();

    std::vector<std::uint64_t> dens;
    auto vals = detail::normalize_coords(points, &dens);

    if (s == 1) {
        std::vector<std::uint64_t> v;
        v.reserve(N);
        for (auto& row : vals) v.push_back(row[0]);
        std::sort(v.begin(), v.end());
        const __int128 D = dens[0];
        // D* = max_i max(i/N - x_(i), x_(i) - (i-1)/N), common denom N*D
        __int128 best = 0;
        for (std::uint64_t i = 1; i <= N; ++i) {
            const __int128 x = v[i - 1];
            best = std::max(best, static_cast<__int128>(i) * D - static_cast<__int128>(N) * x);
            best = std::max(best, static_cast<__int128>(N) * x - static_cast<__int128>(i - 1) * D);
        }
        return detail::make_fraction(best, static_cast<__int128>(N) * D);
    }

    // Grid corners: per dimension, the distinct coordinate values plus 1.
    __int128 denom = N;
    for (std::size_t i = 0; i < s; ++i) {
        denom *= dens[i];
        if (denom > (static_cast<__int128>(1) << 120))
            throw std::invalid_argument("discrepancy: parameters exceed exact range");
    }
    std::vector<std::vector<std::uint64_t>> grid(s);
    for (std::size_t i = 0; i < s; ++i) {
        for (const auto& row : vals) grid[i].push_back(row[i]);
        grid[i].push_back(dens[i]);  // the value 1
        std::sort(grid[i].begin(), grid[i].end());
        grid[i].erase(std::unique(grid[i].begin(), grid[i].end()), grid[i].end());
    }

    __int128 best = 0;
    std::vector<std::size_t> pick(s, 0);
    const __int128 ND = denom;
    for (;;) {
        __int128 volume_num = N;  // N * prod(gamma_i) over denom
        for (std::size_t i = 0; i < s; ++i) volume_num *= grid[i][pick[i]];
        std::uint64_t below = 0, below_eq = 0;
        for (const auto& row : vals) {
            bool lt = true, le = true;
            for (std::size_t i = 0; i < s; ++i) {
                lt = lt && row[i] < grid[i][pick[i]];
                le = le && row[i] <= grid[i][pick[i]];
            }
            below += lt;
            below_eq += le;
        }
        __int128 prod_dens = 1;
        for (std::size_t i = 0; i < s; ++i) prod_dens *= dens[i];
        // candidates over denominator N * prod(dens)
        best = std::max(best, volume_num - static_cast<__int128>(below) * prod_dens);
        best = std::max(best, static_cast<__int128>(below_eq) * prod_dens - volume_num);
        std::size_t i = 0;
        while (i < s && ++pick[i] == grid[i].size()) pick[i++] = 0;
        if (i == s) break;
    }
    return detail::make_fraction(best, ND);
}

// ---------------------------------------------------------------------------
// Discrepancy-bound constants.

/// Leading constant of the classical (t,s)-net discrepancy bound, with the
/// even/odd base case split.
inline double c_fk(std::uint32_t b, std::uint32_t s, std::uint32_t t) {
    if (b < 2 || s < 1) throw std::invalid_argument("c_fk: need b >= 2, s >= 1");
    double fact = 1.0;
    for (std::uint32_t i = 2; i <= s; ++i) fact *= i;
    const double lead = std::pow(static_cast<double>(b), static_cast<double>(t)) / fact;
    const double core = std::pow((b - 1.0) / (2.0 * std::log(static_cast<double>(b))),
                                 static_cast<double>(s));
    const double parity = (b % 2 == 0)
                              ? static_cast<double>(b) * b / (2.0 * (static_cast<double>(b) * b - 1.0))
                              : 0.5;
    return lead * parity * core;
}

/// Leading constant of the (u,e,s)-sequence discrepancy bound:
/// (b^u / s!) * prod floor(b^{e_i}/2) / (e_i log b).
inline double c_tez(std::uint32_t b, std::uint32_t u, const std::vector<std::uint32_t>& e) {
    if (b < 2 || e.empty()) throw std::invalid_argument("c_tez: need b >= 2, nonempty e");
    double fact = 1.0;
    for (std::size_t i = 2; i <= e.size(); ++i) fact *= static_cast<double>(i);
    double r = std::pow(static_cast<double>(b), static_cast<double>(u)) / fact;
    const double logb = std::log(static_cast<double>(b));
    for (auto ei : e) {
        if (ei < 1) throw std::invalid_argument("c_tez: e entries must be >= 1");
        const std::uint64_t be = detail::checked_pow(b, ei, (1ull << 62),
                                                     "c_tez: b^e out of range");
        r *= static_cast<double>(be / 2) / (static_cast<double>(ei) * logb);
    }
    return r;
}

struct BoundsReport {
    std::uint32_t q = 2;
    std::uint32_t g = 0;
    std::vector<std::uint32_t> e;
    int t = 0;                       // g + sum (e_i - 1)
    double fk = 0.0;                 // C with the classical t
    double tez = 0.0;                // C with u = g and the given e
    double ratio_lower_bound = 0.0;  // (1/2) ((q-1)/q)^s prod e_i
    bool predicate = false;          // prod e_i > 2 (q/(q-1))^s, decided exactly
};

/// Evaluates both constants for a genus-g field with place degrees e
/// (u = g, t = g + sum(e_i - 1)) and decides the comparison predicate
/// prod e_i > 2 (q/(q-1))^s in exact integer arithmetic.
inline BoundsReport bound_comparison(std::uint32_t q, std::uint32_t g,
                                     const std::vector<std::uint32_t>& e) {
    if (q < 2 || e.empty())
        throw std::invalid_argument("bound_comparison: need q >= 2, nonempty e");
    BoundsReport r;
    r.q = q;
    r.g = g;
    r.e = e;
    r.t = t_from_u(static_cast<int>(g), e);
    const auto s = static_cast<std::uint32_t>(e.size());
    r.fk = c_fk(q, s, static_cast<std::uint32_t>(r.t));
    r.tez = c_tez(q, g, e);
    double prod_e = 1.0;
    for (auto ei : e) prod_e *= ei;
    r.ratio_lower_bound =
        0.5 * std::pow((q - 1.0) / q, static_cast<double>(s)) * prod_e;
    // prod e_i * (q-1)^s > 2 * q^s, exactly
    __int128 lhs = 1, rhs = 2;
    for (auto ei : e) lhs *= ei;
    for (std::uint32_t i = 0; i < s; ++i) {
        lhs *= (q - 1);
        rhs *= q;
        if (lhs > (static_cast<__int128>(1) << 120) || rhs > (static_cast<__int128>(1) << 120))
            throw std::invalid_argument("bound_comparison: parameters exceed exact range");
    }
    r.predicate = lhs > rhs;
    return r;
}

}  // namespace ffhalton

#endif  // FFHALTON_VERIFY_HPP
