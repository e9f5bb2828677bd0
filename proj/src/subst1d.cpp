#include "tilecoh/subst1d.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tilecoh {

namespace {

constexpr std::size_t kComplexityHorizon = 64;
constexpr std::size_t kGrowthCap = 256;  // iterations allowed to reach a seed length

std::string word_name(const Substitution1D& s, const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && s.alphabet[w[i - 1]].size() > 1) out += " ";
        out += s.alphabet[w[i]];
    }
    return out;
}

// Disjoint-set forest with deterministic representatives.
struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);  // smallest index becomes the representative
        parent[a] = b;
    }
};

}  // namespace

Word Substitution1D::apply(const Word& w) const {
    Word out;
    for (std::size_t letter : w) {
        const Word& img = rules.at(letter);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

void Substitution1D::validate() const {
    if (alphabet.empty()) throw std::invalid_argument("substitution: empty alphabet");
    if (rules.size() != alphabet.size())
        throw std::invalid_argument("substitution: one rule per letter required");
    for (const Word& r : rules) {
        if (r.empty()) throw std::invalid_argument("substitution: empty rule word");
        for (std::size_t letter : r)
            if (letter >= alphabet.size())
                throw std::invalid_argument("substitution: rule letter out of range");
    }
}

IntMatrix subst_matrix(const Substitution1D& s) {
    const std::size_t n = s.size();
    IntMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t letter : s.rules[j]) a(letter, j) += 1;
    return a;
}

bool primitivity(const Substitution1D& s) {
    const std::size_t n = s.size();
    IntMatrix a = subst_matrix(s);
    IntMatrix p = IntMatrix::identity(n);
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    for (std::size_t m = 1; m <= bound; ++m) {
        p = p * a;
        bool positive = true;
        for (std::size_t i = 0; i < n && positive; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (p(i, j) <= 0) {
                    positive = false;
                    break;
                }
        if (positive) return true;
    }
    return false;
}

std::string to_string(PeriodicityVerdict v) {
    switch (v) {
        case PeriodicityVerdict::aperiodic_likely: return "aperiodic-likely";
        case PeriodicityVerdict::periodic: return "periodic";
        default: return "inconclusive";
    }
}

std::set<Word> allowed_words(const Substitution1D& s, std::size_t n) {
    if (n < 1) throw std::invalid_argument("allowed_words: length must be >= 1");
    s.validate();

    std::set<Word> words;
    std::deque<Word> queue;
    auto harvest = [&](const Word& w) {
        if (w.size() < n) return;
        for (std::size_t i = 0; i + n <= w.size(); ++i) {
            Word sub(w.begin() + i, w.begin() + i + n);
            if (words.insert(sub).second) queue.push_back(std::move(sub));
        }
    };

    for (std::size_t a = 0; a < s.size(); ++a) {
        Word w = {a};
        for (std::size_t it = 0; it < kGrowthCap && w.size() < n; ++it) {
            Word next = s.apply(w);
            if (next.size() == w.size() && next == w) break;  // letter never grows
            w = std::move(next);
        }
        harvest(w);
    }
    while (!queue.empty()) {
        Word w = std::move(queue.front());
        queue.pop_front();
        harvest(s.apply(w));
    }
    return words;
}

PeriodicityVerdict periodicity_heuristic(const Substitution1D& s) {
    if (!primitivity(s)) return PeriodicityVerdict::inconclusive;
    // If no letter's image grows, the language is that of a finite orbit.
    bool grows = false;
    for (const Word& r : s.rules)
        if (r.size() > 1) grows = true;
    if (!grows) return PeriodicityVerdict::periodic;

    // p(n) <= n for some n iff the sequence is (eventually) periodic
    // (Morse-Hedlund); checked on the horizon only, hence a heuristic.
    // For a primitive substitution every allowed n-word extends to an
    // allowed horizon-word, so one closure computation suffices.
    std::set<Word> horizon = allowed_words(s, kComplexityHorizon + 1);
    for (std::size_t n = 1; n <= kComplexityHorizon; ++n) {
        std::set<Word> subs;
        if (horizon.empty()) {
            subs = allowed_words(s, n);
        } else {
            for (const Word& w : horizon)
                for (std::size_t i = 0; i + n <= w.size(); ++i)
                    subs.insert(Word(w.begin() + i, w.begin() + i + n));
        }
        if (subs.size() <= n) return PeriodicityVerdict::periodic;
    }
    return PeriodicityVerdict::aperiodic_likely;
}

CollaredAlphabet collar_level(const Substitution1D& s, std::size_t r) {
    s.validate();
    const std::size_t width = 2 * r + 1;
    std::set<Word> windows = allowed_words(s, width);
    if (windows.empty()) throw std::invalid_argument("collar: language has no word of window length");

    CollaredAlphabet ca;
    ca.radius = r;
    std::map<Word, std::size_t> index;
    for (const Word& w : windows) {
        index[w] = ca.letter_words.size();
        ca.letter_words.push_back(w);
        ca.projection.push_back(w[r]);
        std::string name;
        if (r == 0) {
            name = s.alphabet[w[0]];
        } else {
            name = "(" + word_name(s, Word(w.begin(), w.begin() + r)) + ")" +
                   s.alphabet[w[r]] + "(" + word_name(s, Word(w.begin() + r + 1, w.end())) + ")";
        }
        ca.collared.alphabet.push_back(name);
    }

    for (const Word& w : ca.letter_words) {
        Word full = s.apply(w);
        std::size_t u_len = 0;
        for (std::size_t i = 0; i < r; ++i) u_len += s.rules[w[i]].size();
        const std::size_t core_len = s.rules[w[r]].size();
        Word rule;
        for (std::size_t j = 0; j < core_len; ++j) {
            const std::size_t pos = u_len + j;
            Word ctx(full.begin() + (pos - r), full.begin() + (pos + r + 1));
            auto it = index.find(ctx);
            if (it == index.end())
                throw InternalError("collar: image window missing from allowed-word closure");
            rule.push_back(it->second);
        }
        ca.collared.rules.push_back(std::move(rule));
    }
    ca.collared.validate();
    return ca;
}

BdComplex1D build_bd(const Substitution1D& s) {
    s.validate();
    const std::size_t n = s.size();

    BdComplex1D c;
    c.num_letters = n;
    std::set<Word> two = allowed_words(s, 2);
    c.flaps.assign(two.begin(), two.end());

    // Vertices: 2i = a_i^-, 2i+1 = a_i^+.
    std::map<Word, std::size_t> flap_index;
    for (std::size_t i = 0; i < n; ++i) c.edges.push_back({2 * i, 2 * i + 1});
    for (std::size_t f = 0; f < c.flaps.size(); ++f) {
        flap_index[c.flaps[f]] = n + f;
        c.edges.push_back({2 * c.flaps[f][0] + 1, 2 * c.flaps[f][1]});
    }

    std::vector<std::size_t> vmap(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        vmap[2 * i] = 2 * s.rules[i].front();
        vmap[2 * i + 1] = 2 * s.rules[i].back() + 1;
    }

    std::vector<std::vector<std::int64_t>> paths(c.edges.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Word& w = s.rules[i];
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (j > 0) {
                auto it = flap_index.find({w[j - 1], w[j]});
                if (it == flap_index.end())
                    throw InternalError("build_bd: image transition is not an allowed 2-word");
                paths[i].push_back(static_cast<std::int64_t>(it->second) + 1);
            }
            paths[i].push_back(static_cast<std::int64_t>(w[j]) + 1);
        }
    }
    for (std::size_t f = 0; f < c.flaps.size(); ++f) {
        Word img = {s.rules[c.flaps[f][0]].back(), s.rules[c.flaps[f][1]].front()};
        auto it = flap_index.find(img);
        if (it == flap_index.end())
            throw InternalError("build_bd: flap image is not an allowed 2-word");
        paths[n + f].push_back(static_cast<std::int64_t>(it->second) + 1);
    }

    c.system = graph_system(2 * n, c.edges, vmap, paths);
    return c;
}

BdDiagnostics bd_diagnostics(const Substitution1D& s) {
    BdComplex1D c = build_bd(s);
    const std::size_t n = c.num_letters;

    auto flap_image = [&](const Word& f) -> Word {
        return {s.rules[f[0]].back(), s.rules[f[1]].front()};
    };

    BdDiagnostics d;
    // Stabilized image of the functional flap map (union of its cycles).
    std::set<Word> cur(c.flaps.begin(), c.flaps.end());
    for (;;) {
        std::set<Word> next;
        for (const Word& f : cur) next.insert(flap_image(f));
        if (next == cur) break;
        cur = std::move(next);
    }
    d.s0er.assign(cur.begin(), cur.end());
    // The looser convention: every flap in the image of the flap map at all.
    std::set<Word> once;
    for (const Word& f : c.flaps) once.insert(flap_image(f));
    d.s0er_with_transients.assign(once.begin(), once.end());

    // Component and loop counts of the S0ER subcomplex (flap edges plus
    // their endpoint vertices).
    std::set<std::size_t> verts;
    for (const Word& f : d.s0er) {
        verts.insert(2 * f[0] + 1);
        verts.insert(2 * f[1]);
    }
    std::map<std::size_t, std::size_t> vid;
    for (std::size_t v : verts) vid[v] = vid.size();
    UnionFind uf(verts.size());
    for (const Word& f : d.s0er) uf.unite(vid[2 * f[0] + 1], vid[2 * f[1]]);
    std::set<std::size_t> comps;
    for (std::size_t i = 0; i < verts.size(); ++i) comps.insert(uf.find(i));
    d.k = comps.size();
    d.ell = d.s0er.size() + d.k - verts.size();

    d.dlim_an = dlim_free(subst_matrix(s).transpose());
    CohomologyResult coh = complex_cohomology(c.system);
    d.h1_q_rank = coh.degrees[1].cech.fingerprint.q_rank;
    d.rank_bookkeeping_ok =
        d.h1_q_rank + (d.k - 1) == d.dlim_an.fingerprint.q_rank + d.ell;

    std::ostringstream os;
    os << "0 -> Z^" << (d.k - 1) << " -> dlim(Z^" << n << ", A^T) -> H^1 -> Z^" << d.ell
       << " -> 0; q_rank dlim = " << d.dlim_an.fingerprint.q_rank << ", q_rank H^1 = "
       << d.h1_q_rank << " (" << (d.rank_bookkeeping_ok ? "consistent" : "INCONSISTENT") << ")";
    d.sequence_report = os.str();
    if (!d.rank_bookkeeping_ok)
        throw InternalError("bd_diagnostics: exact-sequence rank bookkeeping failed");
    return d;
}

ApComplex1D build_ap_level(const Substitution1D& s, std::size_t r) {
    CollaredAlphabet ca = collar_level(s, r);
    const Substitution1D& sc = ca.collared;
    const std::size_t n = sc.size();

    ApComplex1D ap;
    ap.radius = r;
    ap.diagnostic_only = (r == 0);
    ap.letter_words = ca.letter_words;
    ap.letter_names = sc.alphabet;

    // Slots: 2a = start of edge a, 2a+1 = end of edge a; ends glue to starts
    // across every allowed transition.
    UnionFind uf(2 * n);
    for (const Word& w : allowed_words(sc, 2)) uf.unite(2 * w[0] + 1, 2 * w[1]);

    std::map<std::size_t, std::size_t> vid;
    for (std::size_t slot = 0; slot < 2 * n; ++slot) {
        std::size_t root = uf.find(slot);
        if (!vid.count(root)) vid[root] = vid.size();
    }
    ap.num_vertices = vid.size();
    auto vclass = [&](std::size_t slot) { return vid.at(uf.find(slot)); };

    for (std::size_t a = 0; a < n; ++a) ap.edges.push_back({vclass(2 * a), vclass(2 * a + 1)});

    // Vertex images: a start slot maps with the start of its edge's image
    // path, an end slot with the end; classes must map consistently.
    std::vector<std::optional<std::size_t>> vmap(ap.num_vertices);
    auto record = [&](std::size_t slot, std::size_t image_slot) {
        std::size_t v = vclass(slot), w = vclass(image_slot);
        if (vmap[v] && *vmap[v] != w)
            throw InternalError("build_ap: vertex identification map not well-defined");
        vmap[v] = w;
    };
    for (std::size_t a = 0; a < n; ++a) {
        record(2 * a, 2 * sc.rules[a].front());
        record(2 * a + 1, 2 * sc.rules[a].back() + 1);
    }
    std::vector<std::size_t> vmap_final(ap.num_vertices);
    for (std::size_t v = 0; v < ap.num_vertices; ++v) {
        if (!vmap[v]) throw InternalError("build_ap: vertex with no incident edge");
        vmap_final[v] = *vmap[v];
    }

    std::vector<std::vector<std::int64_t>> paths(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t letter : sc.rules[a])
            paths[a].push_back(static_cast<std::int64_t>(letter) + 1);

    ap.system = graph_system(ap.num_vertices, ap.edges, vmap_final, paths);
    return ap;
}

Cech1DResult cech_1d(const Substitution1D& s) {
    Cech1DResult r;
    r.primitive = primitivity(s);
    r.periodicity = periodicity_heuristic(s);
    if (!r.primitive)
        r.warnings.push_back("substitution is not primitive; language closure may overcount");
    if (r.periodicity != PeriodicityVerdict::aperiodic_likely)
        r.warnings.push_back("aperiodicity not established (verdict: " + to_string(r.periodicity) +
                             "); approximant theory assumes an aperiodic substitution");

    BdComplex1D bd = build_bd(s);
    r.bd = complex_cohomology(bd.system);
    ApComplex1D ap = build_ap_level(s, 1);
    r.ap = complex_cohomology(ap.system);
    r.diagnostics = bd_diagnostics(s);

    r.agree = true;
    for (std::size_t k = 0; k < 2; ++k)
        if (!dlim_equal_invariants(r.bd.degrees[k].cech, r.ap.degrees[k].cech)) r.agree = false;
    return r;
}

}  // namespace tilecoh
