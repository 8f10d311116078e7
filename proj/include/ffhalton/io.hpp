// Text interfaces: model/place/range spec parsing for the CLI and config
// files, CSV point output, and JSON report serialization.  All output is
// deterministic: same inputs, same bytes.

#ifndef FFHALTON_IO_HPP
#define FFHALTON_IO_HPP

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ffhalton/verify.hpp"

namespace ffhalton::io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument(std::string(what) + ": expected an unsigned integer, got '" +
                                    s + "'");
    return std::stoull(s);
}

// Splits on commas that sit at parenthesis depth zero.
inline std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    return out;
}

}  // namespace detail

/// "p" or "p^k", e.g. "5", "2^2".
inline Field parse_field_spec(const std::string& spec) {
    const std::string s = detail::strip(spec);
    const std::size_t caret = s.find('^');
    if (caret == std::string::npos)
        return Field::make(static_cast<std::uint32_t>(detail::parse_u64(s, "field spec")));
    const auto p = detail::parse_u64(s.substr(0, caret), "field spec");
    const auto k = detail::parse_u64(s.substr(caret + 1), "field spec");
    return Field::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
}

inline std::string render_field_spec(const Field& F) {
    if (F.k() == 1) return std::to_string(F.p());
    return std::to_string(F.p()) + "^" + std::to_string(F.k());
}

/// "rational(q=2)" or "hyperelliptic(q=5, f=x^3+x+1)".
inline FunctionField parse_model_spec(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (c != ' ' && c != '\t') s += c;
    const std::size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw std::invalid_argument("model spec: expected kind(...), got '" + spec + "'");
    const std::string kind = s.substr(0, open);
    std::string field_spec, f_def;
    for (const std::string& kv : detail::split_top_level(s.substr(open + 1, s.size() - open - 2))) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("model spec: expected key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "q") field_spec = val;
        else if (key == "f") f_def = val;
        else throw std::invalid_argument("model spec: unknown key '" + key + "'");
    }
    if (field_spec.empty()) throw std::invalid_argument("model spec: missing q=");
    Field F = parse_field_spec(field_spec);
    if (kind == "rational") {
        if (!f_def.empty())
            throw std::invalid_argument("model spec: rational model takes no f=");
        return FunctionField::rational(F);
    }
    if (kind == "hyperelliptic") {
        if (f_def.empty()) throw std::invalid_argument("model spec: hyperelliptic needs f=");
        return FunctionField::hyperelliptic(parse_polynomial(F, f_def));
    }
    throw std::invalid_argument("model spec: unknown kind '" + kind + "'");
}

inline std::string render_model_spec(const FunctionField& model) {
    if (model.kind() == ModelKind::Rational)
        return "rational(q=" + render_field_spec(model.field()) + ")";
    return "hyperelliptic(q=" + render_field_spec(model.field()) +
           ", f=" + to_string(model.defining_poly()) + ")";
}

/// "auto:s=3", or an explicit comma-separated list of polynomials
/// ("x,x^2+x+1") or affine points ("(0,1),(0,4)").
inline std::vector<Place> parse_places_spec(const FunctionField& model,
                                            const std::string& spec) {
    const std::string s = detail::strip(spec);
    if (s.rfind("auto:s=", 0) == 0) {
        const auto n = detail::parse_u64(s.substr(7), "places spec");
        return model.places_auto(static_cast<std::size_t>(n));
    }
    std::vector<Place> out;
    for (const std::string& tok : detail::split_top_level(s)) {
        if (tok.empty()) throw std::invalid_argument("places spec: empty entry");
        if (tok.front() == '(') {
            if (tok.back() != ')')
                throw std::invalid_argument("places spec: malformed point '" + tok + "'");
            const std::string inner = tok.substr(1, tok.size() - 2);
            const std::size_t comma = inner.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("places spec: malformed point '" + tok + "'");
            const Field& F = model.field();
            const auto xi = detail::parse_u64(detail::strip(inner.substr(0, comma)), "point");
            const auto yi = detail::parse_u64(detail::strip(inner.substr(comma + 1)), "point");
            if (xi >= F.q() || yi >= F.q())
                throw std::invalid_argument("places spec: coordinate out of field range");
            out.push_back(model.place(F.eta(static_cast<std::uint32_t>(xi)),
                                      F.eta(static_cast<std::uint32_t>(yi))));
        } else {
            out.push_back(model.place(parse_polynomial(model.field(), tok)));
        }
    }
    return out;
}

inline std::string render_places_spec(const std::vector<Place>& places) {
    std::string s;
    for (const Place& p : places) {
        if (!s.empty()) s += ",";
        s += p.description();
    }
    return s;
}

/// Inclusive "lo..hi"; a bare value means lo = hi.
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& spec) {
    const std::string s = detail::strip(spec);
    const std::size_t dots = s.find("..");
    if (dots == std::string::npos) {
        const auto v = detail::parse_u64(s, "range");
        return {v, v};
    }
    const auto lo = detail::parse_u64(s.substr(0, dots), "range");
    const auto hi = detail::parse_u64(s.substr(dots + 2), "range");
    if (hi < lo) throw std::invalid_argument("range: hi < lo in '" + spec + "'");
    return {lo, hi};
}

/// Comma-separated unsigned integers, e.g. "1,2,3".
inline std::vector<std::uint32_t> parse_uint_list(const std::string& spec) {
    std::vector<std::uint32_t> out;
    for (const std::string& tok : detail::split_top_level(spec))
        out.push_back(static_cast<std::uint32_t>(detail::parse_u64(tok, "list")));
    return out;
}

inline std::string render_uint_list(const std::vector<std::uint32_t>& v) {
    std::string s;
    for (auto x : v) {
        if (!s.empty()) s += ",";
        s += std::to_string(x);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Point output.

/// "1.0.1.1" per coordinate: digits joined by dots, bit-exact.
inline std::string digit_string(const DigitCoordinate& c) {
    std::string s;
    for (auto d : c.digits) {
        if (!s.empty()) s += ".";
        s += std::to_string(d);
    }
    return s;
}

/// CSV rows "n,x1,...,xs", preceded by '#' comment lines carrying the
/// library version and the full config echo.  mode: "digits" or "real".
inline void write_points_csv(std::ostream& os, const json& config,
                             const std::vector<DigitPoint>& points, std::uint64_t start,
                             const std::string& mode, int decimals) {
    os << "# ffhalton " << kVersion << "\n";
    os << "# config: " << config.dump() << "\n";
    os << "n";
    const std::size_t s = points.empty() ? 0 : points.front().dimension();
    for (std::size_t i = 1; i <= s; ++i) os << ",x" << i;
    os << "\n";
    for (std::size_t r = 0; r < points.size(); ++r) {
        os << (start + r);
        if (mode == "digits") {
            for (const auto& c : points[r].coords) os << "," << digit_string(c);
        } else {
            const auto vals = to_real(points[r]);
            for (double v : vals)
                os << "," << std::fixed << std::setprecision(decimals) << v;
        }
        os << "\n";
    }
}

inline json points_json(const std::vector<DigitPoint>& points, std::uint64_t start) {
    json arr = json::array();
    for (std::size_t r = 0; r < points.size(); ++r) {
        json p;
        p["n"] = start + r;
        json coords = json::array();
        for (const auto& c : points[r].coords) {
            json digits = json::array();
            for (auto d : c.digits) digits.push_back(d);
            coords.push_back(json{{"base", c.base}, {"digits", digits}});
        }
        p["coords"] = std::move(coords);
        arr.push_back(std::move(p));
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Report serialization.

inline json net_report_json(const NetReport& r) {
    json j;
    j["b"] = r.b;
    j["m"] = r.m;
    j["s"] = r.s();
    j["e"] = r.e;
    j["u"] = r.u;
    j["pass"] = r.pass;
    if (r.witness) {
        j["witness"] = json{{"d", r.witness->d},
                            {"a", r.witness->a},
                            {"count", r.witness->count},
                            {"expected", r.witness->expected}};
    } else {
        j["witness"] = nullptr;
    }
    if (r.minimal_u) j["minimal_u"] = *r.minimal_u;
    return j;
}

inline json sequence_report_json(const SequenceCheckReport& r) {
    json j;
    j["pass"] = r.pass;
    json blocks = json::array();
    for (const auto& b : r.blocks)
        blocks.push_back(json{{"m", b.m}, {"k", b.k}, {"pass", b.report.pass}});
    j["blocks"] = std::move(blocks);
    const BlockResult* f = r.first_failure();
    if (f) {
        json ff = net_report_json(f->report);
        ff["k"] = f->k;
        j["first_failure"] = std::move(ff);
    } else {
        j["first_failure"] = nullptr;
    }
    return j;
}

inline json bounds_report_json(const BoundsReport& r) {
    json j;
    j["q"] = r.q;
    j["s"] = r.e.size();
    j["g"] = r.g;
    j["e"] = r.e;
    j["u"] = r.g;
    j["t"] = r.t;
    j["c_fk"] = r.fk;
    j["c_tez"] = r.tez;
    j["ratio_lower_bound"] = r.ratio_lower_bound;
    j["predicate"] = r.predicate;
    return j;
}

inline json fraction_json(const Fraction& f) {
    return json{{"num", f.num}, {"den", f.den}, {"value", value(f)}};
}

}  // namespace ffhalton::io

#endif  // FFHALTON_IO_HPP
