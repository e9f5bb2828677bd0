// Command-line front end: parse a JSON job description, run the requested
// pipeline, and emit a deterministic text or JSON report.
//
// Exit codes: 0 success, 2 validation error, 3 pipeline disagreement,
// 4 internal assertion failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tilecoh/analysis.hpp"
#include "tilecoh/report.hpp"
#include "tilecoh/subst2d.hpp"

namespace {

using tilecoh::Json;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DisagreementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 1-based line of the first occurrence of `needle` in the raw document,
// so semantic errors can point at the offending field.
std::string anchor(const std::string& text, const std::string& needle) {
    auto pos = text.find(needle);
    if (pos == std::string::npos) return "input";
    auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n');
    return "input:" + std::to_string(line);
}

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw ValidationError(where + ": " + msg);
}

void check_keys(const std::string& raw, const Json& obj, const std::string& what,
                const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(anchor(raw, "\"" + key + "\""), "unknown field \"" + key + "\" in " + what);
    }
}

struct Job {
    std::string mode;  // subst1d | subst2d | complex
    tilecoh::Substitution1D s1;
    tilecoh::BlockSubstitution2D s2;
    tilecoh::CochainSystem complex;
    std::optional<std::vector<double>> lengths;
};

std::vector<std::string> parse_alphabet(const std::string& raw, const Json& j) {
    if (!j.contains("alphabet")) fail("input", "missing field \"alphabet\"");
    const Json& a = j.at("alphabet");
    if (!a.is_array() || a.empty()) fail(anchor(raw, "\"alphabet\""), "\"alphabet\" must be a nonempty array of strings");
    std::vector<std::string> out;
    for (const auto& e : a) {
        if (!e.is_string() || e.get<std::string>().empty())
            fail(anchor(raw, "\"alphabet\""), "alphabet entries must be nonempty strings");
        out.push_back(e.get<std::string>());
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = i + 1; k < out.size(); ++k)
            if (out[i] == out[k])
                fail(anchor(raw, "\"alphabet\""), "duplicate letter \"" + out[i] + "\"");
    return out;
}

std::size_t letter_index(const std::string& raw, const std::vector<std::string>& alphabet,
                         const std::string& name, const std::string& context) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return i;
    fail(anchor(raw, context), "unknown letter \"" + name + "\"");
}

tilecoh::Word parse_word(const std::string& raw, const std::vector<std::string>& alphabet,
                         const Json& rule, const std::string& context) {
    tilecoh::Word w;
    if (rule.is_string()) {
        bool single = std::all_of(alphabet.begin(), alphabet.end(),
                                  [](const std::string& a) { return a.size() == 1; });
        if (!single)
            fail(anchor(raw, context),
                 "string rules need a single-character alphabet; use an array of letters");
        for (char c : rule.get<std::string>())
            w.push_back(letter_index(raw, alphabet, std::string(1, c), context));
    } else if (rule.is_array()) {
        for (const auto& e : rule) {
            if (!e.is_string()) fail(anchor(raw, context), "rule entries must be letter names");
            w.push_back(letter_index(raw, alphabet, e.get<std::string>(), context));
        }
    } else {
        fail(anchor(raw, context), "rule must be a string or an array of letters");
    }
    if (w.empty()) fail(anchor(raw, context), "empty rule");
    return w;
}

void parse_subst1d(const std::string& raw, const Json& j, Job& job) {
    check_keys(raw, j, "a subst1d job", {"schema", "mode", "alphabet", "rules", "lengths"});
    job.s1.alphabet = parse_alphabet(raw, j);
    if (!j.contains("rules") || !j.at("rules").is_object())
        fail("input", "missing object field \"rules\"");
    job.s1.rules.resize(job.s1.alphabet.size());
    std::vector<bool> seen(job.s1.alphabet.size(), false);
    for (const auto& [name, rule] : j.at("rules").items()) {
        std::size_t i = letter_index(raw, job.s1.alphabet, name, "\"" + name + "\"");
        job.s1.rules[i] = parse_word(raw, job.s1.alphabet, rule, "\"" + name + "\"");
        seen[i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            fail(anchor(raw, "\"rules\""), "no rule for letter \"" + job.s1.alphabet[i] + "\"");
    job.s1.validate();
    if (j.contains("lengths")) {
        const Json& l = j.at("lengths");
        if (!l.is_object()) fail(anchor(raw, "\"lengths\""), "\"lengths\" must be an object");
        std::vector<double> v(job.s1.alphabet.size(), 0.0);
        for (const auto& [name, val] : l.items()) {
            std::size_t i = letter_index(raw, job.s1.alphabet, name, "\"lengths\"");
            if (!val.is_number() || val.get<double>() <= 0)
                fail(anchor(raw, "\"lengths\""), "tile lengths must be positive numbers");
            v[i] = val.get<double>();
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == 0.0)
                fail(anchor(raw, "\"lengths\""),
                     "no length for letter \"" + job.s1.alphabet[i] + "\"");
        job.lengths = v;
    }
}

void parse_subst2d(const std::string& raw, const Json& j, Job& job) {
    check_keys(raw, j, "a subst2d job", {"schema", "mode", "alphabet", "rules", "block_size"});
    job.s2.alphabet = parse_alphabet(raw, j);
    if (!j.contains("block_size") || !j.at("block_size").is_number_unsigned())
        fail("input", "missing integer field \"block_size\"");
    job.s2.block_size = j.at("block_size").get<std::size_t>();
    if (job.s2.block_size < 2) fail(anchor(raw, "\"block_size\""), "block_size must be >= 2");
    if (!j.contains("rules") || !j.at("rules").is_object())
        fail("input", "missing object field \"rules\"");
    job.s2.rules.resize(job.s2.alphabet.size());
    std::vector<bool> seen(job.s2.alphabet.size(), false);
    for (const auto& [name, grid] : j.at("rules").items()) {
        std::size_t i = letter_index(raw, job.s2.alphabet, name, "\"" + name + "\"");
        if (!grid.is_array() || grid.size() != job.s2.block_size)
            fail(anchor(raw, "\"" + name + "\""),
                 "rule for \"" + name + "\" must be a square grid of block_size rows");
        tilecoh::Block b;
        for (const auto& row : grid) {
            if (!row.is_array() || row.size() != job.s2.block_size)
                fail(anchor(raw, "\"" + name + "\""),
                     "non-square grid in rule for \"" + name + "\"");
            std::vector<std::size_t> r;
            for (const auto& e : row) {
                if (!e.is_string())
                    fail(anchor(raw, "\"" + name + "\""), "grid entries must be letter names");
                r.push_back(
                    letter_index(raw, job.s2.alphabet, e.get<std::string>(), "\"" + name + "\""));
            }
            b.push_back(r);
        }
        job.s2.rules[i] = b;
        seen[i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            fail(anchor(raw, "\"rules\""), "no rule for letter \"" + job.s2.alphabet[i] + "\"");
    job.s2.validate();
}

tilecoh::IntMatrix parse_matrix(const std::string& raw, const Json& m, std::size_t rows,
                                std::size_t cols, const std::string& what) {
    if (!m.is_array() || m.size() != rows)
        fail(anchor(raw, "\"" + what + "\""), what + " must have " + std::to_string(rows) + " rows");
    tilecoh::IntMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = m.at(i);
        if (!row.is_array() || row.size() != cols)
            fail(anchor(raw, "\"" + what + "\""),
                 what + " row " + std::to_string(i) + " must have " + std::to_string(cols) +
                     " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!row.at(k).is_number_integer())
                fail(anchor(raw, "\"" + what + "\""), what + " entries must be integers");
            out(i, k) = tilecoh::Int(row.at(k).get<long>());
        }
    }
    return out;
}

void parse_complex(const std::string& raw, const Json& j, Job& job) {
    bool graph = j.contains("vertices");
    if (graph) {
        check_keys(raw, j, "a graph complex job",
                   {"schema", "mode", "vertices", "edges", "vertex_map", "edge_maps"});
        if (!j.at("vertices").is_number_unsigned())
            fail(anchor(raw, "\"vertices\""), "\"vertices\" must be a nonnegative integer");
        std::size_t nv = j.at("vertices").get<std::size_t>();
        if (!j.contains("edges") || !j.at("edges").is_array())
            fail("input", "missing array field \"edges\"");
        std::vector<tilecoh::GraphEdge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2 || !e.at(0).is_number_unsigned() ||
                !e.at(1).is_number_unsigned())
                fail(anchor(raw, "\"edges\""), "each edge must be a [tail, head] vertex pair");
            tilecoh::GraphEdge ge{e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()};
            if (ge.tail >= nv || ge.head >= nv)
                fail(anchor(raw, "\"edges\""), "edge endpoint out of range");
            edges.push_back(ge);
        }
        if (!j.contains("vertex_map") || !j.at("vertex_map").is_array() ||
            j.at("vertex_map").size() != nv)
            fail(anchor(raw, "\"vertex_map\""),
                 "\"vertex_map\" must list an image for each vertex");
        std::vector<std::size_t> vmap;
        for (const auto& v : j.at("vertex_map")) {
            if (!v.is_number_unsigned() || v.get<std::size_t>() >= nv)
                fail(anchor(raw, "\"vertex_map\""), "vertex image out of range");
            vmap.push_back(v.get<std::size_t>());
        }
        if (!j.contains("edge_maps") || !j.at("edge_maps").is_array() ||
            j.at("edge_maps").size() != edges.size())
            fail(anchor(raw, "\"edge_maps\""),
                 "\"edge_maps\" must list a signed edge path for each edge");
        std::vector<std::vector<std::int64_t>> paths;
        for (const auto& p : j.at("edge_maps")) {
            if (!p.is_array()) fail(anchor(raw, "\"edge_maps\""), "edge path must be an array");
            std::vector<std::int64_t> path;
            for (const auto& step : p) {
                if (!step.is_number_integer() || step.get<std::int64_t>() == 0 ||
                    static_cast<std::size_t>(std::abs(step.get<std::int64_t>())) > edges.size())
                    fail(anchor(raw, "\"edge_maps\""),
                         "edge path entries are nonzero signed 1-based edge indices");
                path.push_back(step.get<std::int64_t>());
            }
            paths.push_back(path);
        }
        try {
            job.complex = tilecoh::graph_system(nv, edges, vmap, paths);
        } catch (const std::invalid_argument& e) {
            fail(anchor(raw, "\"edge_maps\""), e.what());
        }
        return;
    }
    check_keys(raw, j, "a complex job", {"schema", "mode", "dims", "deltas", "endos"});
    if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").empty())
        fail("input", "missing array field \"dims\"");
    std::vector<std::size_t> dims;
    for (const auto& d : j.at("dims")) {
        if (!d.is_number_unsigned()) fail(anchor(raw, "\"dims\""), "dims must be nonnegative integers");
        dims.push_back(d.get<std::size_t>());
    }
    if (!j.contains("deltas") || !j.at("deltas").is_array() ||
        j.at("deltas").size() + 1 != dims.size())
        fail(anchor(raw, "\"deltas\""), "\"deltas\" must have one matrix per positive degree");
    if (!j.contains("endos") || !j.at("endos").is_array() || j.at("endos").size() != dims.size())
        fail(anchor(raw, "\"endos\""), "\"endos\" must have one square matrix per degree");
    job.complex.dims = dims;
    for (std::size_t k = 0; k + 1 < dims.size(); ++k)
        job.complex.delta.push_back(
            parse_matrix(raw, j.at("deltas").at(k), dims[k + 1], dims[k], "deltas"));
    for (std::size_t k = 0; k < dims.size(); ++k)
        job.complex.endo.push_back(parse_matrix(raw, j.at("endos").at(k), dims[k], dims[k], "endos"));
    try {
        tilecoh::validate_system(job.complex);
    } catch (const std::invalid_argument& e) {
        fail(anchor(raw, "\"deltas\""), e.what());
    }
}

Job parse_job(const std::string& raw) {
    Json j;
    try {
        j = Json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("input: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail("input", "top-level value must be an object");
    if (!j.contains("schema") || !j.at("schema").is_number_integer() ||
        j.at("schema").get<int>() != 1)
        fail("input", "missing or unsupported \"schema\" (expected 1)");
    if (!j.contains("mode") || !j.at("mode").is_string())
        fail("input", "missing string field \"mode\"");
    Job job;
    job.mode = j.at("mode").get<std::string>();
    if (job.mode == "subst1d")
        parse_subst1d(raw, j, job);
    else if (job.mode == "subst2d")
        parse_subst2d(raw, j, job);
    else if (job.mode == "complex")
        parse_complex(raw, j, job);
    else
        fail(anchor(raw, "\"mode\""),
             "unknown mode \"" + job.mode + "\" (expected subst1d, subst2d or complex)");
    return job;
}

struct Options {
    std::string input_path;
    std::string format = "text";
    std::string output_path;
    std::string pipeline = "both";
    bool uncollared = false;
    std::vector<std::string> patches;
    std::size_t depth = 12;
    std::size_t dim = 1;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("input: cannot open \"" + path + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const Options& opt, const std::string& subcommand, const Job& job, const Json& body,
          const std::string& text) {
    std::string out;
    if (opt.format == "json") {
        Json envelope;
        envelope["schema"] = 1;
        envelope["mode"] = job.mode;
        envelope["subcommand"] = subcommand;
        envelope["report"] = body;
        out = envelope.dump(2) + "\n";
    } else {
        out = text;
    }
    if (opt.output_path.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(opt.output_path, std::ios::binary);
        if (!f) throw ValidationError("output: cannot open \"" + opt.output_path + "\"");
        f << out;
    }
}

tilecoh::Word parse_patch(const Job& job, const std::string& text) {
    Json as_array = Json::array();
    bool single = std::all_of(job.s1.alphabet.begin(), job.s1.alphabet.end(),
                              [](const std::string& a) { return a.size() == 1; });
    if (single) {
        for (char c : text) as_array.push_back(std::string(1, c));
    } else {
        std::istringstream is(text);
        std::string tok;
        while (is >> tok) as_array.push_back(tok);
    }
    return parse_word(text, job.s1.alphabet, as_array, text);
}

int run_cohomology(const Options& opt, const Job& job) {
    if (job.mode == "subst1d") {
        if (opt.uncollared) {
            auto ap = tilecoh::build_ap_level(job.s1, 0);
            auto res = tilecoh::complex_cohomology(ap.system);
            std::ostringstream os;
            os << "DIAGNOSTIC ONLY: uncollared complex; values are wrong unless the "
                  "substitution forces the border\n";
            os << tilecoh::text_cohomology(res, "pipeline AP (uncollared)");
            Json body = tilecoh::json_cohomology(res);
            body["diagnostic_only"] = true;
            body["collared"] = false;
            emit(opt, "cohomology", job, body, os.str());
            return 0;
        }
        if (opt.pipeline == "both") {
            auto res = tilecoh::cech_1d(job.s1);
            emit(opt, "cohomology", job, tilecoh::json_cech1d(res), tilecoh::text_cech1d(res));
            if (!res.agree) {
                std::cerr << "error: disagreement: BD and collared-AP direct limits differ\n";
                return 3;
            }
            return 0;
        }
        tilecoh::CohomologyResult res;
        std::string heading;
        if (opt.pipeline == "bd") {
            res = tilecoh::complex_cohomology(tilecoh::build_bd(job.s1).system);
            heading = "pipeline BD";
        } else {
            res = tilecoh::complex_cohomology(tilecoh::build_ap_level(job.s1, 1).system);
            heading = "pipeline AP (collared)";
        }
        emit(opt, "cohomology", job, tilecoh::json_cohomology(res),
             tilecoh::text_cohomology(res, heading));
        return 0;
    }
    if (job.mode == "subst2d") {
        if (opt.uncollared) {
            auto ap = tilecoh::build_ap2d(job.s2, false);
            auto res = tilecoh::complex_cohomology(ap.system);
            std::ostringstream os;
            os << "DIAGNOSTIC ONLY: uncollared complex; values are wrong unless the "
                  "substitution forces the border\n";
            os << tilecoh::text_cohomology(res, "pipeline AP (uncollared)");
            Json body = tilecoh::json_cohomology(res);
            body["diagnostic_only"] = true;
            body["collared"] = false;
            emit(opt, "cohomology", job, body, os.str());
            return 0;
        }
        auto res = tilecoh::cech_2d(job.s2);
        emit(opt, "cohomology", job, tilecoh::json_cech2d(res), tilecoh::text_cech2d(res));
        return 0;
    }
    auto res = tilecoh::complex_cohomology(job.complex);
    emit(opt, "cohomology", job, tilecoh::json_cohomology(res),
         tilecoh::text_cohomology(res, "complex"));
    return 0;
}

int run_frequencies(const Options& opt, const Job& job) {
    if (job.mode != "subst1d")
        throw ValidationError("input: \"frequencies\" requires mode subst1d");
    tilecoh::FrequencyReport rep;
    try {
        rep = tilecoh::frequencies(job.s1, job.lengths);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("input: ") + e.what());
    }
    emit(opt, "frequencies", job, tilecoh::json_frequencies(job.s1, rep),
         tilecoh::text_frequencies(job.s1, rep));
    return 0;
}

int run_regularity(const Options& opt, const Job& job) {
    if (job.mode != "subst1d")
        throw ValidationError("input: \"regularity\" requires mode subst1d");
    std::vector<tilecoh::Word> patches;
    if (opt.patches.empty()) {
        for (std::size_t a = 0; a < job.s1.size(); ++a) patches.push_back({a});
    } else {
        for (const auto& p : opt.patches) patches.push_back(parse_patch(job, p));
    }
    tilecoh::RegularityReport rep;
    try {
        rep = tilecoh::exact_regularity(job.s1, patches);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("input: ") + e.what());
    }
    auto check = tilecoh::regularity_empirical_check(job.s1, rep, opt.depth);
    emit(opt, "regularity", job, tilecoh::json_regularity(rep, check),
         tilecoh::text_regularity(rep, check));
    return 0;
}

int run_deform(const Options& opt, const Job& job) {
    tilecoh::CohomologyResult res;
    std::size_t d = opt.dim;
    if (job.mode == "subst1d") {
        res = tilecoh::complex_cohomology(tilecoh::build_ap_level(job.s1, 1).system);
        d = 1;
    } else if (job.mode == "subst2d") {
        res = tilecoh::cech_2d(job.s2).ap;
        d = 2;
    } else {
        res = tilecoh::complex_cohomology(job.complex);
    }
    auto rep = tilecoh::deformations(res, d);
    emit(opt, "deform", job, tilecoh::json_deformations(rep), tilecoh::text_deformations(rep));
    return 0;
}

int run_diagnose(const Options& opt, const Job& job) {
    if (job.mode != "subst1d")
        throw ValidationError("input: \"diagnose\" requires mode subst1d");
    auto d = tilecoh::bd_diagnostics(job.s1);
    emit(opt, "diagnose", job, tilecoh::json_diagnostics(job.s1, d),
         tilecoh::text_diagnostics(job.s1, d));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cech cohomology of substitution tiling spaces"};
    app.require_subcommand(1);

    Options opt;
    std::string subcommand;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", opt.input_path, "JSON job description (\"-\" for stdin)")
            ->required();
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output", opt.output_path, "Write the report to a file");
        sub->callback([&, sub] { subcommand = sub->get_name(); });
        return sub;
    };

    auto* coh = add_common(app.add_subcommand("cohomology", "Cech cohomology via direct limits"));
    coh->add_option("--pipeline", opt.pipeline, "Pipeline selection (1D substitutions)")
        ->check(CLI::IsMember({"both", "bd", "ap"}));
    coh->add_flag("--uncollared", opt.uncollared,
                  "Use the uncollared complex (diagnostic only)");
    add_common(app.add_subcommand("frequencies", "Tile frequencies and H^1 generator traces"));
    auto* reg = add_common(
        app.add_subcommand("regularity", "Exact-regularity decomposition of patch classes"));
    reg->add_option("--patch", opt.patches, "Patch word to decompose (repeatable)");
    reg->add_option("--depth", opt.depth, "Substitution power for the empirical check");
    auto* def = add_common(app.add_subcommand("deform", "Deformation spectrum on H^1"));
    def->add_option("--dim", opt.dim, "Tiling dimension d for complex-mode input");
    add_common(app.add_subcommand("diagnose", "Barge-Diamond flap diagnostics"));

    CLI11_PARSE(app, argc, argv);

    try {
        Job job = parse_job(read_input(opt.input_path));
        if (subcommand == "cohomology") return run_cohomology(opt, job);
        if (subcommand == "frequencies") return run_frequencies(opt, job);
        if (subcommand == "regularity") return run_regularity(opt, job);
        if (subcommand == "deform") return run_deform(opt, job);
        return run_diagnose(opt, job);
    } catch (const ValidationError& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 2;
    } catch (const tilecoh::InternalError& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 4;
    }
}
