// Command-line front end.  run() is the whole program: it parses argv,
// dispatches, and writes artifacts to --out or the given stream, so tests
// can drive it in-process.  Exit codes: 0 success, 1 verification failure,
// 2 usage or configuration error.
//
// Every artifact embeds the library version and a config echo; re-running
// `ffhalton run --config <echo>` reproduces the artifact byte for byte.

#ifndef FFHALTON_CLI_HPP
#define FFHALTON_CLI_HPP

#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ffhalton/io.hpp"

namespace ffhalton::cli {

using io::json;

/// Flag values for one invocation.  Range-valued flags keep their spec
/// strings ("2..8", "1,2") so the JSON echo reproduces the invocation.
struct RunConfig {
    std::string command;
    std::string model;
    std::string places;
    std::string bases;
    std::string e;
    std::string m_range;
    std::string k_range;
    std::string mode = "digits";
    std::string out;
    std::string config_path;
    int m = 0;
    std::uint64_t k = 0;
    std::uint64_t start = 0;
    std::uint64_t count = 0;
    int u = 0;
    std::uint32_t q = 0;
    std::uint32_t s = 0;
    std::uint32_t g = 0;
    int jobs = 1;
    int decimals = 12;
    bool minimal_u = false;
};

inline json config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    const std::string& cmd = c.command;
    if (cmd == "gen") {
        j["model"] = c.model;
        j["places"] = c.places;
        j["m"] = c.m;
        j["start"] = c.start;
        j["count"] = c.count;
        j["mode"] = c.mode;
        if (c.mode == "real") j["decimals"] = c.decimals;
    } else if (cmd == "check-net") {
        j["model"] = c.model;
        j["places"] = c.places;
        j["m"] = c.m;
        j["k"] = c.k;
        j["u"] = c.u;
        j["e"] = c.e;
        j["jobs"] = c.jobs;
        j["minimal_u"] = c.minimal_u;
    } else if (cmd == "check-seq") {
        j["model"] = c.model;
        j["places"] = c.places;
        j["m"] = c.m_range;
        j["k"] = c.k_range;
        j["u"] = c.u;
        j["e"] = c.e;
        j["jobs"] = c.jobs;
    } else if (cmd == "lemma1") {
        j["model"] = c.model;
        j["m"] = c.m_range;
        j["k"] = c.k_range;
    } else if (cmd == "discrepancy") {
        if (!c.bases.empty()) {
            j["bases"] = c.bases;
        } else {
            j["model"] = c.model;
            j["places"] = c.places;
        }
        j["m"] = c.m;
        j["start"] = c.start;
        j["count"] = c.count;
    } else if (cmd == "bounds") {
        j["q"] = c.q;
        j["s"] = c.s;
        j["g"] = c.g;
        j["e"] = c.e;
    } else if (cmd == "halton") {
        j["bases"] = c.bases;
        j["m"] = c.m;
        j["start"] = c.start;
        j["count"] = c.count;
        j["mode"] = c.mode;
        if (c.mode == "real") j["decimals"] = c.decimals;
    }
    return j;
}

inline RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (!j.is_object() || !j.contains("command") || !j.at("command").is_string())
        throw std::invalid_argument("config: missing \"command\"");
    c.command = j.at("command").get<std::string>();
    auto str = [&](const char* key, std::string& dst) {
        if (j.contains(key) && j.at(key).is_string()) dst = j.at(key).get<std::string>();
    };
    str("model", c.model);
    str("places", c.places);
    str("bases", c.bases);
    str("mode", c.mode);
    if (j.contains("e")) {
        if (j.at("e").is_array())
            c.e = io::render_uint_list(j.at("e").get<std::vector<std::uint32_t>>());
        else
            c.e = j.at("e").get<std::string>();
    }
    // "m" and "k" are numbers for single-block commands, "lo..hi" strings
    // for ranged ones.
    if (j.contains("m")) {
        if (j.at("m").is_string()) c.m_range = j.at("m").get<std::string>();
        else c.m = j.at("m").get<int>();
    }
    if (j.contains("k")) {
        if (j.at("k").is_string()) c.k_range = j.at("k").get<std::string>();
        else c.k = j.at("k").get<std::uint64_t>();
    }
    if (j.contains("start")) c.start = j.at("start").get<std::uint64_t>();
    if (j.contains("count")) c.count = j.at("count").get<std::uint64_t>();
    if (j.contains("u")) c.u = j.at("u").get<int>();
    if (j.contains("q")) c.q = j.at("q").get<std::uint32_t>();
    if (j.contains("s")) c.s = j.at("s").get<std::uint32_t>();
    if (j.contains("g")) c.g = j.at("g").get<std::uint32_t>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("decimals")) c.decimals = j.at("decimals").get<int>();
    if (j.contains("minimal_u")) c.minimal_u = j.at("minimal_u").get<bool>();
    return c;
}

namespace detail {

inline void emit(const std::string& text, const std::string& out_path, std::ostream& os) {
    if (out_path.empty()) {
        os << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

inline std::vector<std::uint32_t> resolve_e(const std::string& e_spec,
                                            const std::vector<Place>& places) {
    if (!e_spec.empty()) {
        auto e = io::parse_uint_list(e_spec);
        require(e.size() == places.size(), "--e length must match the number of places");
        return e;
    }
    std::vector<std::uint32_t> e;
    for (const Place& p : places) e.push_back(static_cast<std::uint32_t>(p.degree()));
    return e;
}

inline std::vector<DigitPoint> halton_block(const std::vector<std::uint32_t>& bases,
                                            std::uint64_t start, std::uint64_t count, int m) {
    std::vector<DigitPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t n = start; n < start + count; ++n)
        pts.push_back(halton_classical(bases, n, m));
    return pts;
}

inline int do_gen(const RunConfig& c, std::ostream& os) {
    require(!c.model.empty(), "gen: --model is required");
    require(!c.places.empty(), "gen: --places is required");
    require(c.m >= 1, "gen: --m must be >= 1");
    require(c.count >= 1 && c.count <= kMaxEnumeration, "gen: --count must be in [1, 2^20]");
    require(c.mode == "digits" || c.mode == "real" || c.mode == "json",
            "gen: --mode must be digits, real, or json");
    FunctionField model = io::parse_model_spec(c.model);
    SequenceConfig cfg{model, io::parse_places_spec(model, c.places), c.m, c.start, c.count};
    const auto pts = generate(cfg);

    RunConfig norm = c;
    norm.model = io::render_model_spec(model);
    norm.places = io::render_places_spec(cfg.places);
    norm.out.clear();
    const json echo = config_to_json(norm);

    std::ostringstream text;
    if (c.mode == "json") {
        json doc;
        doc["version"] = kVersion;
        doc["config"] = echo;
        doc["points"] = io::points_json(pts, c.start);
        text << dump(doc);
    } else {
        io::write_points_csv(text, echo, pts, c.start, c.mode, c.decimals);
    }
    emit(text.str(), c.out, os);
    return 0;
}

inline int do_check_net(const RunConfig& c, std::ostream& os) {
    require(!c.model.empty(), "check-net: --model is required");
    require(!c.places.empty(), "check-net: --places is required");
    require(c.m >= 1, "check-net: --m must be >= 1");
    FunctionField model = io::parse_model_spec(c.model);
    const auto places = io::parse_places_spec(model, c.places);
    const auto e = resolve_e(c.e, places);
    const std::uint32_t b = model.field().q();
    const std::uint64_t qm =
        ffhalton::detail::checked_pow(b, static_cast<std::uint32_t>(c.m), kMaxEnumeration,
                                      "check-net: q^m exceeds the enumeration cap");
    require(c.k == 0 || qm <= std::numeric_limits<std::uint64_t>::max() / c.k,
            "check-net: block start overflows");
    SequenceConfig cfg{model, places, c.m, c.k * qm, qm};
    const auto pts = generate(cfg);
    NetReport rep = check_net(pts, b, c.m, c.u, e, c.jobs);
    if (c.minimal_u) rep.minimal_u = minimal_u(pts, b, c.m, e, c.jobs);

    RunConfig norm = c;
    norm.model = io::render_model_spec(model);
    norm.places = io::render_places_spec(places);
    norm.e = io::render_uint_list(e);
    norm.out.clear();

    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_to_json(norm);
    doc.update(io::net_report_json(rep));
    emit(dump(doc), c.out, os);
    return rep.pass ? 0 : 1;
}

inline int do_check_seq(const RunConfig& c, std::ostream& os) {
    require(!c.model.empty(), "check-seq: --model is required");
    require(!c.places.empty(), "check-seq: --places is required");
    require(!c.m_range.empty(), "check-seq: --m is required");
    FunctionField model = io::parse_model_spec(c.model);
    const auto places = io::parse_places_spec(model, c.places);
    const auto e = resolve_e(c.e, places);
    const auto [m_lo, m_hi] = io::parse_range(c.m_range);
    const auto [k_lo, k_hi] = io::parse_range(c.k_range.empty() ? "0" : c.k_range);
    require(m_hi <= static_cast<std::uint64_t>(kMaxPrecision), "check-seq: m range too large");
    SequenceConfig base{model, places, 1, 0, 1};
    SequenceCheckReport rep =
        check_sequence(base, static_cast<int>(m_lo), static_cast<int>(m_hi), k_lo, k_hi,
                       c.u, e, c.jobs);

    RunConfig norm = c;
    norm.model = io::render_model_spec(model);
    norm.places = io::render_places_spec(places);
    norm.e = io::render_uint_list(e);
    norm.k_range = std::to_string(k_lo) + ".." + std::to_string(k_hi);
    norm.out.clear();

    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_to_json(norm);
    doc.update(io::sequence_report_json(rep));
    emit(dump(doc), c.out, os);
    return rep.pass ? 0 : 1;
}

inline int do_lemma1(const RunConfig& c, std::ostream& os) {
    require(!c.model.empty(), "lemma1: --model is required");
    require(!c.m_range.empty(), "lemma1: --m is required");
    FunctionField model = io::parse_model_spec(c.model);
    const auto [m_lo, m_hi] = io::parse_range(c.m_range);
    const auto [k_lo, k_hi] = io::parse_range(c.k_range.empty() ? "0" : c.k_range);
    require(m_lo >= static_cast<std::uint64_t>(model.genus()),
            "lemma1: m range must start at the genus or above");

    bool pass = true;
    json results = json::array();
    for (std::uint64_t m = m_lo; m <= m_hi; ++m) {
        for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
            const bool ok = lemma1_check(model, k, static_cast<int>(m));
            pass = pass && ok;
            results.push_back(json{{"m", m}, {"k", k}, {"ok", ok}});
        }
    }

    RunConfig norm = c;
    norm.model = io::render_model_spec(model);
    norm.k_range = std::to_string(k_lo) + ".." + std::to_string(k_hi);
    norm.out.clear();

    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_to_json(norm);
    doc["pass"] = pass;
    doc["results"] = std::move(results);
    emit(dump(doc), c.out, os);
    return pass ? 0 : 1;
}

inline int do_discrepancy(const RunConfig& c, std::ostream& os) {
    require(c.bases.empty() != c.model.empty(),
            "discrepancy: give either --model/--places or --bases");
    require(c.m >= 1, "discrepancy: --m must be >= 1");
    require(c.count >= 1 && c.count <= kMaxEnumeration,
            "discrepancy: --count must be in [1, 2^20]");

    std::vector<DigitPoint> pts;
    RunConfig norm = c;
    if (!c.bases.empty()) {
        pts = halton_block(io::parse_uint_list(c.bases), c.start, c.count, c.m);
    } else {
        require(!c.places.empty(), "discrepancy: --places is required with --model");
        FunctionField model = io::parse_model_spec(c.model);
        SequenceConfig cfg{model, io::parse_places_spec(model, c.places), c.m, c.start,
                           c.count};
        pts = generate(cfg);
        norm.model = io::render_model_spec(model);
        norm.places = io::render_places_spec(cfg.places);
    }
    const Fraction d = star_discrepancy_exact(pts);
    norm.out.clear();

    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_to_json(norm);
    doc["n"] = pts.size();
    doc["s"] = pts.front().dimension();
    doc["d_star"] = io::fraction_json(d);
    emit(dump(doc), c.out, os);
    return 0;
}

inline int do_bounds(const RunConfig& c, std::ostream& os) {
    require(c.q >= 2, "bounds: --q must be >= 2");
    require(!c.e.empty(), "bounds: --e is required");
    const auto e = io::parse_uint_list(c.e);
    require(c.s == 0 || c.s == e.size(), "bounds: --s must match the length of --e");
    const BoundsReport rep = bound_comparison(c.q, c.g, e);

    RunConfig norm = c;
    norm.s = static_cast<std::uint32_t>(e.size());
    norm.out.clear();

    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_to_json(norm);
    doc.update(io::bounds_report_json(rep));
    emit(dump(doc), c.out, os);
    return 0;
}

inline int do_halton(const RunConfig& c, std::ostream& os) {
    require(!c.bases.empty(), "halton: --bases is required");
    require(c.m >= 1, "halton: --m must be >= 1");
    require(c.count >= 1 && c.count <= kMaxEnumeration,
            "halton: --count must be in [1, 2^20]");
    require(c.mode == "digits" || c.mode == "real" || c.mode == "json",
            "halton: --mode must be digits, real, or json");
    const auto pts = halton_block(io::parse_uint_list(c.bases), c.start, c.count, c.m);

    RunConfig norm = c;
    norm.out.clear();
    const json echo = config_to_json(norm);

    std::ostringstream text;
    if (c.mode == "json") {
        json doc;
        doc["version"] = kVersion;
        doc["config"] = echo;
        doc["points"] = io::points_json(pts, c.start);
        text << dump(doc);
    } else {
        io::write_points_csv(text, echo, pts, c.start, c.mode, c.decimals);
    }
    emit(text.str(), c.out, os);
    return 0;
}

}  // namespace detail

/// Dispatches a parsed config.  Throws std::invalid_argument on usage or
/// domain errors; the caller maps that to exit code 2.
inline int execute(const RunConfig& c, std::ostream& os) {
    if (c.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
    if (c.decimals < 1 || c.decimals > 17)
        throw std::invalid_argument("--decimals must be in [1, 17]");
    if (c.command == "gen") return detail::do_gen(c, os);
    if (c.command == "check-net") return detail::do_check_net(c, os);
    if (c.command == "check-seq") return detail::do_check_seq(c, os);
    if (c.command == "lemma1") return detail::do_lemma1(c, os);
    if (c.command == "discrepancy") return detail::do_discrepancy(c, os);
    if (c.command == "bounds") return detail::do_bounds(c, os);
    if (c.command == "halton") return detail::do_halton(c, os);
    throw std::invalid_argument("unknown command '" + c.command + "'");
}

/// Full program: parse argv, dispatch, report.  Streams are injectable so
/// tests can run the CLI in-process.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Halton-type low-discrepancy sequences over function fields"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(0, 1);

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.out, "Write to file"); };
    auto add_jobs = [&](CLI::App* sub) {
        sub->add_option("--jobs", c.jobs, "Worker threads");
    };

    CLI::App* gen = app.add_subcommand("gen", "Generate sequence points");
    gen->add_option("--model", c.model, "Model spec, e.g. rational(q=2)")->required();
    gen->add_option("--places", c.places, "Places spec, e.g. auto:s=2")->required();
    gen->add_option("--m", c.m, "Digits per coordinate")->required();
    gen->add_option("--count", c.count, "Number of points")->required();
    gen->add_option("--start", c.start, "First index");
    gen->add_option("--mode", c.mode, "digits | real | json");
    gen->add_option("--decimals", c.decimals, "Decimal places in real mode");
    add_out(gen);

    CLI::App* cnet = app.add_subcommand("check-net", "Verify one q^m block as a net");
    cnet->add_option("--model", c.model, "Model spec")->required();
    cnet->add_option("--places", c.places, "Places spec")->required();
    cnet->add_option("--m", c.m, "Block size exponent")->required();
    cnet->add_option("--k", c.k, "Block index");
    cnet->add_option("--u", c.u, "Quality parameter");
    cnet->add_option("--e", c.e, "Shape moduli, default: place degrees");
    cnet->add_flag("--minimal-u", c.minimal_u, "Also report the least passing u");
    add_jobs(cnet);
    add_out(cnet);

    CLI::App* cseq = app.add_subcommand("check-seq", "Verify blocks over m and k ranges");
    cseq->add_option("--model", c.model, "Model spec")->required();
    cseq->add_option("--places", c.places, "Places spec")->required();
    cseq->add_option("--m", c.m_range, "m range, lo..hi")->required();
    cseq->add_option("--k", c.k_range, "Block index range, lo..hi");
    cseq->add_option("--u", c.u, "Quality parameter");
    cseq->add_option("--e", c.e, "Shape moduli, default: place degrees");
    add_jobs(cseq);
    add_out(cseq);

    CLI::App* lem = app.add_subcommand("lemma1", "Check block-translate structure");
    lem->add_option("--model", c.model, "Model spec")->required();
    lem->add_option("--m", c.m_range, "m range, lo..hi")->required();
    lem->add_option("--k", c.k_range, "Block index range, lo..hi");
    add_out(lem);

    CLI::App* dsc = app.add_subcommand("discrepancy", "Exact star discrepancy, s <= 3");
    dsc->add_option("--model", c.model, "Model spec");
    dsc->add_option("--places", c.places, "Places spec");
    dsc->add_option("--bases", c.bases, "Classical Halton bases, e.g. 2,3");
    dsc->add_option("--m", c.m, "Digits per coordinate")->required();
    dsc->add_option("--count", c.count, "Number of points")->required();
    dsc->add_option("--start", c.start, "First index");
    add_out(dsc);

    CLI::App* bnd = app.add_subcommand("bounds", "Leading discrepancy constants");
    bnd->add_option("--q", c.q, "Base")->required();
    bnd->add_option("--s", c.s, "Dimension, must match --e length");
    bnd->add_option("--g", c.g, "Quality parameter u of the construction");
    bnd->add_option("--e", c.e, "Degree vector, e.g. 2,3,5")->required();
    add_out(bnd);

    CLI::App* hal = app.add_subcommand("halton", "Classical Halton points");
    hal->add_option("--bases", c.bases, "Pairwise coprime bases")->required();
    hal->add_option("--m", c.m, "Digits per coordinate")->required();
    hal->add_option("--count", c.count, "Number of points")->required();
    hal->add_option("--start", c.start, "First index");
    hal->add_option("--mode", c.mode, "digits | real | json");
    hal->add_option("--decimals", c.decimals, "Decimal places in real mode");
    add_out(hal);

    CLI::App* rerun = app.add_subcommand("run", "Re-run from an echoed config");
    rerun->add_option("--config", c.config_path, "Config JSON file")->required();
    rerun->add_option("--out", c.out, "Write to file");

    for (CLI::App* sub : {gen, cnet, cseq, lem, dsc, bnd, hal, rerun})
        sub->callback([&c, sub] { c.command = sub->get_name(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex, out, err);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex, out, err);
    } catch (const CLI::CallForVersion& ex) {
        return app.exit(ex, out, err);
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
    if (c.command.empty()) {
        err << app.help();
        return 2;
    }

    try {
        if (c.command == "run") {
            std::ifstream f(c.config_path);
            if (!f) throw std::invalid_argument("cannot open config file '" + c.config_path + "'");
            std::ostringstream buf;
            buf << f.rdbuf();
            json doc = json::parse(buf.str());
            // Accept either a bare config object or a full artifact that
            // embeds one under "config".
            if (doc.contains("config")) doc = doc.at("config");
            RunConfig loaded = config_from_json(doc);
            if (loaded.command == "run")
                throw std::invalid_argument("config: nested run commands are not allowed");
            loaded.out = c.out;
            return execute(loaded, out);
        }
        return execute(c, out);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
}

}  // namespace ffhalton::cli

#endif  // FFHALTON_CLI_HPP
