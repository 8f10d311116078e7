// acceptance.cpp — the release gate.
//
// Nine criteria, one line each, exit 0 iff all pass.  Every tolerance and
// runtime budget is pinned here; nothing is configurable.  Oracles that
// criteria compare against (radical-inverse digits, grid-search discrepancy,
// interval recounts) are implemented locally and do not call the code under
// test.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ffhalton/sequence.hpp"
#include "ffhalton/verify.hpp"

using namespace ffhalton;

namespace {

// Pinned budgets and tolerances.
constexpr double kBudget1 = 10.0;   // seconds
constexpr double kBudget2 = 30.0;
constexpr double kBudget3 = 60.0;
constexpr double kRelTol8 = 1e-9;   // constant evaluation, relative
constexpr double kRatioSlack = 1e-12;

int g_failures = 0;

class Timer {
   public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

   private:
    std::chrono::steady_clock::time_point t0_;
};

void report(int idx, const char* name, bool ok, double secs, const std::string& detail) {
    std::printf("[%s] criterion %d: %-34s (%.2fs) %s\n", ok ? "PASS" : "FAIL", idx, name,
                secs, detail.c_str());
    if (!ok) ++g_failures;
}

// Independent radical-inverse digit oracle: LSD-first base-q digits of n.
std::vector<std::uint32_t> radical_digits(std::uint64_t n, std::uint32_t q, int m) {
    std::vector<std::uint32_t> d(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        d[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(n % q);
        n /= q;
    }
    return d;
}

DigitPoint make_point(std::uint32_t b, std::vector<std::uint32_t> digits) {
    DigitPoint p;
    p.coords.push_back(DigitCoordinate{b, std::move(digits)});
    return p;
}

// Counts the points whose digit prefix lands in the witness interval.
// Decodes prefixes directly from the digit streams; no net-checker code.
std::uint64_t recount_interval(const std::vector<DigitPoint>& pts,
                               const std::vector<std::uint32_t>& d,
                               const std::vector<std::uint64_t>& a) {
    std::uint64_t hits = 0;
    for (const auto& p : pts) {
        bool inside = true;
        for (std::size_t i = 0; i < d.size() && inside; ++i) {
            std::uint64_t v = 0;
            for (std::uint32_t j = 0; j < d[i]; ++j)
                v = v * p.coords[i].base + p.coords[i].digits[j];
            inside = v == a[i];
        }
        if (inside) ++hits;
    }
    return hits;
}

// Grid-search star discrepancy for s = 1: scans closed/open boxes anchored
// at every point coordinate, exact integer arithmetic throughout.
Fraction dstar_grid_1d(const std::vector<DigitPoint>& pts) {
    const std::uint32_t b = pts.front().coords[0].base;
    const int m = static_cast<int>(pts.front().coords[0].digits.size());
    std::uint64_t D = 1;
    for (int j = 0; j < m; ++j) D *= b;
    std::vector<std::uint64_t> v;
    for (const auto& p : pts) {
        std::uint64_t x = 0;  // digits[0] is the most significant fraction digit
        for (int j = 0; j < m; ++j) x = x * b + p.coords[0].digits[static_cast<std::size_t>(j)];
        v.push_back(x);
    }
    const std::uint64_t N = v.size();
    std::vector<std::uint64_t> cands = v;
    cands.push_back(D);
    std::int64_t best = 0;
    for (std::uint64_t t : cands) {
        std::uint64_t lt = 0, le = 0;
        for (std::uint64_t x : v) {
            if (x < t) ++lt;
            if (x <= t) ++le;
        }
        const auto pos = static_cast<std::int64_t>(le * D) - static_cast<std::int64_t>(t * N);
        const auto neg = static_cast<std::int64_t>(t * N) - static_cast<std::int64_t>(lt * D);
        best = std::max({best, pos, neg});
    }
    const auto num = static_cast<std::int64_t>(best);
    const auto den = static_cast<std::int64_t>(N * D);
    const std::int64_t g = std::gcd(num, den);
    return Fraction{num / (g ? g : 1), den / (g ? g : 1)};
}

SequenceConfig rational_pair(std::uint32_t q, const char* p1, const char* p2) {
    Field F = Field::make(q);
    FunctionField R = FunctionField::rational(F);
    std::vector<Place> ps{R.place(parse_polynomial(F, p1)), R.place(parse_polynomial(F, p2))};
    return SequenceConfig{R, std::move(ps), 1, 0, 0};
}

// --- criteria -------------------------------------------------------------

bool crit1_genus0_trivial(std::string& detail) {
    auto rep = check_sequence(rational_pair(2, "x", "x+1"), 1, 8, 0, 3, 0, {1, 1}, 4);
    std::ostringstream os;
    os << rep.blocks.size() << " blocks, u=0, e=(1,1)";
    detail = os.str();
    return rep.pass && rep.blocks.size() == 32;
}

bool crit2_genus0_mixed(std::string& detail) {
    SequenceConfig base = rational_pair(2, "x", "x^2+x+1");
    auto rep = check_sequence(base, 1, 8, 0, 2, 0, {1, 2}, 4);
    const int t = t_from_u(0, {1, 2});
    auto classical = check_sequence(base, 1, 8, 0, 2, t, {1, 1}, 4);
    std::ostringstream os;
    os << "u=0 e=(1,2) and classical t=" << t;
    detail = os.str();
    return rep.pass && classical.pass && t == 1;
}

bool crit3_genus1(std::string& detail) {
    Field F = Field::make(5);
    FunctionField C = FunctionField::hyperelliptic(parse_polynomial(F, "x^3+x+1"));
    SequenceConfig base{C, C.places_auto(2), 1, 0, 0};
    auto rep = check_sequence(base, 2, 5, 0, 2, 1, {1, 1}, 4);
    std::ostringstream os;
    os << rep.blocks.size() << " blocks, u=g=" << C.genus();
    detail = os.str();
    return rep.pass && C.genus() == 1 && rep.blocks.size() == 12;
}

bool crit4_lemma1(std::string& detail) {
    Field F2 = Field::make(2);
    FunctionField R = FunctionField::rational(F2);
    Field F5 = Field::make(5);
    FunctionField C = FunctionField::hyperelliptic(parse_polynomial(F5, "x^3+x+1"));
    int checks = 0;
    for (const FunctionField& model : {R, C}) {
        for (int m = model.genus(); m <= 5; ++m) {
            for (std::uint64_t k = 0; k <= 3; ++k, ++checks) {
                if (!lemma1_check(model, k, m)) {
                    detail = "failed at m=" + std::to_string(m) + " k=" + std::to_string(k);
                    return false;
                }
            }
        }
    }
    detail = std::to_string(checks) + " (model, m, k) triples";
    return true;
}

bool crit5_vdc_oracle(std::string& detail) {
    std::uint64_t checked = 0;
    for (std::uint32_t q : {2u, 3u, 5u}) {
        Field F = Field::make(q);
        FunctionField R = FunctionField::rational(F);
        SequenceConfig cfg{R, {R.place(Polynomial::x(F))}, 5, 0, 0};
        std::uint64_t qm = 1;
        for (int j = 0; j < 5; ++j) qm *= q;
        for (std::uint64_t n = 0; n < qm; ++n, ++checked) {
            const DigitPoint p = point(cfg, n);
            if (p.coords[0].digits != radical_digits(n, q, 5)) {
                detail = "mismatch at q=" + std::to_string(q) + " n=" + std::to_string(n);
                return false;
            }
        }
    }
    detail = std::to_string(checked) + " points digit-exact";
    return true;
}

bool crit6_checker_self_validation(std::string& detail) {
    std::vector<DigitPoint> pts;
    for (std::uint64_t n = 0; n < 16; ++n) pts.push_back(make_point(2, radical_digits(n, 2, 4)));
    if (minimal_u(pts, 2, 4, {1}) != 0) {
        detail = "pristine vdC-16 not minimal_u=0";
        return false;
    }
    auto bad = pts;
    bad[15] = bad[0];  // duplicate one point
    NetReport rep = check_net(bad, 2, 4, 0, {1});
    if (rep.pass || !rep.witness) {
        detail = "corrupted set not flagged";
        return false;
    }
    const auto& w = *rep.witness;
    std::uint32_t sum_d = 0;
    for (auto di : w.d) sum_d += di;
    const std::uint64_t recount = recount_interval(bad, w.d, w.a);
    std::ostringstream os;
    os << "witness |d|=" << sum_d << " holds " << recount << ", expected " << w.expected;
    detail = os.str();
    return sum_d <= 4 && recount == w.count && recount != w.expected;
}

bool crit7_discrepancy(std::string& detail) {
    // Published trivial values.
    const Fraction f1 = star_discrepancy_exact({make_point(2, {0})});
    const Fraction f2 = star_discrepancy_exact({make_point(2, {0}), make_point(2, {1})});
    std::vector<DigitPoint> vdc4;
    for (std::uint64_t n = 0; n < 4; ++n) vdc4.push_back(make_point(2, radical_digits(n, 2, 2)));
    const Fraction f4 = star_discrepancy_exact(vdc4);
    if (!(f1.num == 1 && f1.den == 1 && f2.num == 1 && f2.den == 2 && f4.num == 1 &&
          f4.den == 4)) {
        detail = "trivial values off";
        return false;
    }

    std::mt19937 rng(70001);
    const std::uint32_t bases[] = {2, 3, 5};
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t b = bases[rng() % 3];
        const int m = 1 + static_cast<int>(rng() % 6);
        const std::size_t N = 1 + rng() % 64;
        std::vector<DigitPoint> pts;
        for (std::size_t i = 0; i < N; ++i) {
            std::vector<std::uint32_t> digits(static_cast<std::size_t>(m));
            for (auto& d : digits) d = rng() % b;
            pts.push_back(make_point(b, std::move(digits)));
        }
        const Fraction lib = star_discrepancy_exact(pts);
        const Fraction ora = dstar_grid_1d(pts);
        if (lib.num != ora.num || lib.den != ora.den) {
            std::ostringstream os;
            os << "trial " << trial << ": " << to_string(lib) << " vs oracle "
               << to_string(ora);
            detail = os.str();
            return false;
        }
    }
    detail = "3 pinned values, 20 random sets exact";
    return true;
}

bool crit8_constants(std::string& detail) {
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    const double fk = c_fk(2, 1, 0);
    const double tz = c_tez(2, 0, {1, 2});
    if (rel(fk, 0.4808983469629878) > kRelTol8 || rel(tz, 1.0406844905028039) > kRelTol8) {
        std::ostringstream os;
        os << "c_fk=" << fk << " c_tez=" << tz;
        detail = os.str();
        return false;
    }
    if (!bound_comparison(2, 0, {2, 3, 5}).predicate || bound_comparison(2, 0, {1}).predicate) {
        detail = "predicate truth table off";
        return false;
    }
    struct Params {
        std::uint32_t q, g;
        std::vector<std::uint32_t> e;
    };
    const Params sets[] = {
        {2, 0, {1, 1}}, {2, 0, {1, 2}},    {2, 1, {2, 2}},    {2, 3, {2, 3, 5}},
        {3, 0, {1, 1}}, {3, 1, {1, 2, 3}}, {3, 2, {2, 2, 2}}, {5, 0, {1, 1, 1}},
        {5, 2, {1, 4}}, {7, 1, {2, 3}},
    };
    for (const auto& s : sets) {
        const BoundsReport r = bound_comparison(s.q, s.g, s.e);
        if (r.fk / r.tez < r.ratio_lower_bound * (1.0 - kRatioSlack)) {
            std::ostringstream os;
            os << "ratio fails at q=" << s.q << " g=" << s.g;
            detail = os.str();
            return false;
        }
    }
    detail = "rel tol 1e-9, ratio over 10 parameter sets";
    return true;
}

bool crit9_property_suites(std::string& detail) {
    std::mt19937 rng(90001);

    // Field axioms.
    for (std::uint32_t q : {4u, 5u, 9u}) {
        Field F = q == 4 ? Field::make(2, 2) : (q == 9 ? Field::make(3, 2) : Field::make(5));
        for (int i = 0; i < 2000; ++i) {
            const FieldElement a = F.element(rng() % q), b = F.element(rng() % q),
                               c = F.element(rng() % q);
            if ((a + b) + c != a + (b + c) || a * (b + c) != a * b + a * c || a * b != b * a ||
                a + (-a) != F.zero()) {
                detail = "field axiom failed, q=" + std::to_string(q);
                return false;
            }
            if (!a.is_zero() && a * a.inv() != F.one()) {
                detail = "inverse failed, q=" + std::to_string(q);
                return false;
            }
        }
    }

    // Polynomial division round-trip.
    for (std::uint32_t q : {3u, 4u}) {
        Field F = q == 3 ? Field::make(3) : Field::make(2, 2);
        for (int i = 0; i < 500; ++i) {
            auto rand_poly = [&](int maxdeg) {
                std::vector<std::uint32_t> cs(static_cast<std::size_t>(1 + rng() % (maxdeg + 1)));
                for (auto& x : cs) x = rng() % q;
                return Polynomial::from_indices(F, cs);
            };
            const Polynomial a = rand_poly(8);
            Polynomial b = rand_poly(4);
            if (b.is_zero()) b = Polynomial::one(F);
            const auto [quo, rem] = poly_divmod(a, b);
            if (quo * b + rem != a || rem.degree() >= b.degree()) {
                detail = "divmod round-trip failed, q=" + std::to_string(q);
                return false;
            }
        }
    }

    // Chain-basis prefix property.
    {
        Field F2 = Field::make(2);
        Field F5 = Field::make(5);
        const FunctionField models[] = {
            FunctionField::rational(F2),
            FunctionField::rational(Field::make(3)),
            FunctionField::hyperelliptic(parse_polynomial(F5, "x^3+x+1"))};
        for (const auto& model : models) {
            for (int m = model.genus() == 0 ? 0 : 2 * model.genus() - 1; m <= 10; ++m) {
                const auto lo = model.rr_basis(m);
                const auto hi = model.rr_basis(m + 1);
                if (lo.size() != static_cast<std::size_t>(m + 1 - model.genus()) ||
                    hi.size() < lo.size()) {
                    detail = "Riemann-Roch dimension off";
                    return false;
                }
                for (std::size_t i = 0; i < lo.size(); ++i) {
                    if (!(lo[i] == hi[i])) {
                        detail = "chain basis not a prefix";
                        return false;
                    }
                }
            }
        }
    }

    // Local expansion reconstructs the element.
    {
        Field F = Field::make(3);
        FunctionField R = FunctionField::rational(F);
        const Place P = R.place(Polynomial::x(F));
        for (int i = 0; i < 300; ++i) {
            const FFElement f = R.element_from_index(rng() % 6561);
            const auto digits = R.local_expansion(f, P, 10);
            Polynomial acc = Polynomial::zero(F);
            for (std::size_t j = digits.size(); j-- > 0;)
                acc = acc * Polynomial::x(F) + digits[j].representative();
            if (acc != f.a_part()) {
                detail = "expansion reconstruction failed";
                return false;
            }
        }
    }

    // Truncation idempotence.
    for (int i = 0; i < 300; ++i) {
        const std::uint32_t b = 2 + rng() % 4;
        const int m = 1 + static_cast<int>(rng() % 8);
        std::vector<std::uint32_t> digits(static_cast<std::size_t>(m));
        for (auto& d : digits) d = rng() % b;
        const DigitPoint p = make_point(b, digits);
        const int k = 1 + static_cast<int>(rng() % m);
        const DigitPoint t1 = truncate(p, k);
        const DigitPoint t2 = truncate(t1, k);
        if (t1.coords[0].digits != t2.coords[0].digits ||
            t1.coords[0].digits !=
                std::vector<std::uint32_t>(digits.begin(), digits.begin() + k)) {
            detail = "truncation not idempotent";
            return false;
        }
    }

    detail = "seeds 90001/70001 pinned";
    return true;
}

}  // namespace

int main() {
    std::printf("ffhalton %s acceptance gate\n", kVersion);

    struct Crit {
        int idx;
        const char* name;
        bool (*fn)(std::string&);
        double budget;  // seconds; 0 = untimed
    };
    const Crit criteria[] = {
        {1, "genus 0, e=(1,1), u=0", crit1_genus0_trivial, kBudget1},
        {2, "genus 0, e=(1,2), classical t=1", crit2_genus0_mixed, kBudget2},
        {3, "genus 1, u=g=1", crit3_genus1, kBudget3},
        {4, "block-translate structure", crit4_lemma1, 0.0},
        {5, "van der Corput degeneration", crit5_vdc_oracle, 0.0},
        {6, "net-checker self-validation", crit6_checker_self_validation, 0.0},
        {7, "exact star discrepancy, s=1", crit7_discrepancy, 0.0},
        {8, "leading-constant evaluation", crit8_constants, 0.0},
        {9, "module property suites", crit9_property_suites, 0.0},
    };

    for (const Crit& c : criteria) {
        Timer t;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        const double secs = t.seconds();
        if (ok && c.budget > 0.0 && secs > c.budget) {
            ok = false;
            detail += " [over budget]";
        }
        report(c.idx, c.name, ok, secs, detail);
    }

    if (g_failures == 0) {
        std::printf("all 9 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
