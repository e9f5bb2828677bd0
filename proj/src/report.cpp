#include "tilecoh/report.hpp"

#include <cstdio>
#include <sstream>

namespace tilecoh {

namespace {

std::string join_word(const Word& w, const std::vector<std::string>& alphabet) {
    bool single = true;
    for (const auto& a : alphabet)
        if (a.size() != 1) single = false;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i) out += ' ';
        out += alphabet[w[i]];
    }
    return out;
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

Json json_words(const std::vector<Word>& ws, const std::vector<std::string>& alphabet) {
    Json arr = Json::array();
    for (const auto& w : ws) arr.push_back(join_word(w, alphabet));
    return arr;
}

std::string summand_annotation(const LocalizedSummand& l) {
    if (l.scale == 0 || l.scale == l.prime) return "";
    return " (scales by " + l.scale.get_str() + ")";
}

Json json_fg(const FgAbGroup& g) {
    Json j;
    j["free_rank"] = g.free_rank;
    Json factors = Json::array();
    for (const auto& d : g.invariant_factors) factors.push_back(d.get_str());
    j["invariant_factors"] = factors;
    j["description"] = g.to_string();
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string group_text(const GroupDescription& g) {
    if (!g.certified) return g.to_string();
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " (+) ";
        first = false;
    };
    if (g.free_rank == 1) {
        sep();
        os << "Z";
    } else if (g.free_rank > 1) {
        sep();
        os << "Z^" << g.free_rank;
    }
    for (const auto& l : g.localized) {
        sep();
        os << "Z[1/" << l.prime.get_str() << "]";
        if (l.rank != 1) os << "^" << l.rank;
        os << summand_annotation(l);
    }
    for (const auto& d : g.torsion.invariant_factors) {
        sep();
        os << "Z/" << d.get_str();
    }
    if (first) os << "0";
    return os.str();
}

Json json_rat(const Rat& r) {
    Json j;
    j["num"] = r.get_num().get_str();
    j["den"] = r.get_den().get_str();
    return j;
}

Json json_group(const GroupDescription& g) {
    Json j;
    j["certified"] = g.certified;
    j["description"] = group_text(g);
    j["free_rank"] = g.free_rank;
    Json loc = Json::array();
    for (const auto& l : g.localized) {
        Json s;
        s["prime"] = l.prime.get_str();
        s["rank"] = l.rank;
        if (l.scale != 0) s["scale"] = l.scale.get_str();
        loc.push_back(s);
    }
    j["localized"] = loc;
    j["torsion"] = json_fg(g.torsion);
    Json fp;
    fp["q_rank"] = g.fingerprint.q_rank;
    Json pr;
    for (const auto& [p, rk] : g.fingerprint.p_ranks) pr[p.get_str()] = rk;
    fp["p_ranks"] = pr;
    fp["torsion"] = g.fingerprint.torsion.to_string();
    j["fingerprint"] = fp;
    return j;
}

Json json_cohomology(const CohomologyResult& r) {
    Json j;
    Json degs = Json::array();
    for (std::size_t k = 0; k < r.degrees.size(); ++k) {
        Json d;
        d["degree"] = k;
        d["approximant"] = r.degrees[k].approximant.to_string();
        d["cech"] = json_group(r.degrees[k].cech);
        degs.push_back(d);
    }
    j["degrees"] = degs;
    j["euler_cells"] = r.euler_cells;
    j["euler_cohomology"] = r.euler_cohomology;
    return j;
}

std::string text_cohomology(const CohomologyResult& r, const std::string& heading) {
    std::ostringstream os;
    os << heading << ":\n";
    for (std::size_t k = 0; k < r.degrees.size(); ++k)
        os << "  H^" << k << ": " << group_text(r.degrees[k].cech)
           << "  (approximant: " << r.degrees[k].approximant.to_string() << ")\n";
    return os.str();
}

Json json_cech1d(const Cech1DResult& r) {
    Json j;
    j["primitive"] = r.primitive;
    j["periodicity"] = to_string(r.periodicity);
    j["warnings"] = r.warnings;
    j["bd"] = json_cohomology(r.bd);
    j["ap"] = json_cohomology(r.ap);
    j["pipelines_agree"] = r.agree;
    Json diag;
    diag["k"] = r.diagnostics.k;
    diag["ell"] = r.diagnostics.ell;
    diag["dlim_an"] = group_text(r.diagnostics.dlim_an);
    diag["rank_bookkeeping_ok"] = r.diagnostics.rank_bookkeeping_ok;
    j["bd_diagnostics"] = diag;
    return j;
}

std::string text_cech1d(const Cech1DResult& r) {
    std::ostringstream os;
    os << "primitive: " << (r.primitive ? "yes" : "no") << "\n";
    os << "periodicity: " << to_string(r.periodicity) << "\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    os << text_cohomology(r.bd, "pipeline BD");
    os << text_cohomology(r.ap, "pipeline AP (collared)");
    os << "pipelines: " << (r.agree ? "AGREE" : "DISAGREE") << "\n";
    os << "BD diagnostics: k=" << r.diagnostics.k << " ell=" << r.diagnostics.ell
       << " dlim(Z^N, A^T)=" << group_text(r.diagnostics.dlim_an) << "\n";
    return os.str();
}

Json json_cech2d(const Cech2DResult& r) {
    Json j;
    j["primitive"] = r.primitive;
    j["warnings"] = r.warnings;
    j["ap"] = json_cohomology(r.ap);
    return j;
}

std::string text_cech2d(const Cech2DResult& r) {
    std::ostringstream os;
    os << "primitive: " << (r.primitive ? "yes" : "no") << "\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    os << text_cohomology(r.ap, "pipeline AP (collared)");
    return os.str();
}

Json json_diagnostics(const Substitution1D& s, const BdDiagnostics& d) {
    Json j;
    j["s0er"] = json_words(d.s0er, s.alphabet);
    j["s0er_with_transients"] = json_words(d.s0er_with_transients, s.alphabet);
    j["k"] = d.k;
    j["ell"] = d.ell;
    j["dlim_an"] = json_group(d.dlim_an);
    j["h1_q_rank"] = d.h1_q_rank;
    j["rank_bookkeeping_ok"] = d.rank_bookkeeping_ok;
    j["sequence_report"] = d.sequence_report;
    return j;
}

std::string text_diagnostics(const Substitution1D& s, const BdDiagnostics& d) {
    std::ostringstream os;
    os << "S0ER (stabilized image): ";
    for (const auto& w : d.s0er) os << join_word(w, s.alphabet) << " ";
    os << "\nS0ER with transients:   ";
    for (const auto& w : d.s0er_with_transients) os << join_word(w, s.alphabet) << " ";
    os << "\nsubcomplex components k=" << d.k << ", independent loops ell=" << d.ell << "\n";
    os << "dlim(Z^N, A^T) = " << group_text(d.dlim_an) << "\n";
    os << "H^1 rational rank = " << d.h1_q_rank << "\n";
    os << "rank bookkeeping: " << (d.rank_bookkeeping_ok ? "ok" : "FAILED") << "\n";
    os << d.sequence_report << "\n";
    return os.str();
}

Json json_frequencies(const Substitution1D& s, const FrequencyReport& r) {
    Json j;
    j["perron"] = r.perron;
    Json tiles = Json::array();
    for (std::size_t a = 0; a < s.size(); ++a) {
        Json t;
        t["letter"] = s.alphabet[a];
        t["length"] = r.tile_lengths[a];
        t["frequency"] = r.tile_freqs[a];
        tiles.push_back(t);
    }
    j["tiles"] = tiles;
    j["trace_values"] = r.trace_values;
    return j;
}

std::string text_frequencies(const Substitution1D& s, const FrequencyReport& r) {
    std::ostringstream os;
    os << "perron eigenvalue: " << format_double(r.perron) << "\n";
    for (std::size_t a = 0; a < s.size(); ++a)
        os << "tile " << s.alphabet[a] << ": length " << format_double(r.tile_lengths[a])
           << ", frequency per unit length " << format_double(r.tile_freqs[a]) << "\n";
    os << "H^1 generator traces:";
    for (double t : r.trace_values) os << " " << format_double(t);
    os << "\n";
    return os.str();
}

Json json_regularity(const RegularityReport& r, const EmpiricalCheck& check) {
    Json j;
    j["residual_radius"] = r.residual_radius;
    j["basis"] = r.basis_names;
    Json patches = Json::array();
    for (std::size_t i = 0; i < r.patch_words.size(); ++i) {
        Json p;
        p["patch"] = r.patch_names[i];
        Json coeffs = Json::array();
        for (const auto& c : r.coefficients[i]) coeffs.push_back(json_rat(c));
        p["coefficients"] = coeffs;
        patches.push_back(p);
    }
    j["patches"] = patches;
    j["integer_refined"] = r.integer_refined;
    Json e;
    e["pass"] = check.pass;
    e["regions"] = check.regions;
    if (!check.counterexample.empty()) e["counterexample"] = check.counterexample;
    j["empirical_check"] = e;
    return j;
}

std::string text_regularity(const RegularityReport& r, const EmpiricalCheck& check) {
    std::ostringstream os;
    os << "residual radius: " << r.residual_radius << "\n";
    os << "basis classes:";
    for (const auto& b : r.basis_names) os << " [" << b << "]";
    os << "\n";
    for (std::size_t i = 0; i < r.patch_words.size(); ++i) {
        os << "[" << r.patch_names[i] << "] =";
        bool any = false;
        for (std::size_t k = 0; k < r.coefficients[i].size(); ++k) {
            const Rat& c = r.coefficients[i][k];
            if (c == 0) continue;
            os << (any ? " + " : " ") << rat_str(c) << " * [" << r.basis_names[k] << "]";
            any = true;
        }
        if (!any) os << " 0";
        os << "\n";
    }
    os << "coefficients integral: " << (r.integer_refined ? "yes" : "no") << "\n";
    os << "empirical check: " << (check.pass ? "pass" : "FAIL") << " (" << check.regions
       << " regions)";
    if (!check.counterexample.empty()) os << " " << check.counterexample;
    os << "\n";
    return os.str();
}

Json json_deformations(const DeformationReport& r) {
    Json j;
    j["char_poly"] = poly_to_string(r.char_poly_int);
    Json spec = Json::array();
    for (const auto& [re, im] : r.spectrum) {
        Json z;
        z["re"] = re;
        z["im"] = im;
        spec.push_back(z);
    }
    j["spectrum"] = spec;
    j["an_dimension"] = r.an_dimension;
    j["pisot"] = r.pisot;
    return j;
}

std::string text_deformations(const DeformationReport& r) {
    std::ostringstream os;
    os << "characteristic polynomial (eventual range): " << poly_to_string(r.char_poly_int)
       << "\n";
    os << "spectrum:";
    for (const auto& [re, im] : r.spectrum) {
        os << " " << format_double(re);
        if (im != 0) os << (im > 0 ? "+" : "") << format_double(im) << "i";
    }
    os << "\n";
    os << "asymptotically negligible dimension: " << r.an_dimension << "\n";
    os << "pisot family: " << (r.pisot ? "yes" : "no") << "\n";
    return os.str();
}

}  // namespace tilecoh
