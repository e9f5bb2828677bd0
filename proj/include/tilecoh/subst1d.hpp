#ifndef TILECOH_SUBST1D_HPP
#define TILECOH_SUBST1D_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tilecoh/cochain.hpp"

namespace tilecoh {

/// Word over the alphabet, as letter indices.
using Word = std::vector<std::size_t>;

struct Substitution1D {
    std::vector<std::string> alphabet;
    std::vector<Word> rules;  // rules[i] = image of letter i, nonempty

    std::size_t size() const { return alphabet.size(); }
    Word apply(const Word& w) const;
    /// Throws std::invalid_argument if a rule is empty or out of range.
    void validate() const;
};

/// A(i, j) = number of occurrences of letter i in rules[j].
IntMatrix subst_matrix(const Substitution1D& s);

/// True iff some power A^m (m <= (n-1)^2 + 1) is entrywise positive.
bool primitivity(const Substitution1D& s);

enum class PeriodicityVerdict { aperiodic_likely, periodic, inconclusive };
std::string to_string(PeriodicityVerdict v);

/// Morse-Hedlund style heuristic: "periodic" if the complexity p(n) of the
/// closure language satisfies p(n) <= n for some n <= 64. Never a proof of
/// aperiodicity. Non-primitive inputs give "inconclusive".
PeriodicityVerdict periodicity_heuristic(const Substitution1D& s);

/// Fixpoint closure of the n-subword language of sigma^k(letter) images.
std::set<Word> allowed_words(const Substitution1D& s, std::size_t n);

/// Collared substitution at radius r: letters are allowed (2r+1)-words with
/// marked center; rules read contexts off the substituted neighborhood.
struct CollaredAlphabet {
    Substitution1D collared;
    std::vector<Word> letter_words;      // base-alphabet window per letter
    std::vector<std::size_t> projection; // collared letter -> core base letter
    std::size_t radius = 0;
};

CollaredAlphabet collar_level(const Substitution1D& s, std::size_t r);
inline CollaredAlphabet collar(const Substitution1D& s) { return collar_level(s, 1); }

/// Barge-Diamond complex: one edge per letter (a^- -> a^+) plus one vertex
/// flap per allowed 2-word ab (a^+ -> b^-), with the cellular substitution.
struct BdComplex1D {
    CochainSystem system;
    std::vector<GraphEdge> edges;  // tile cells first, then flaps
    std::vector<Word> flaps;       // allowed 2-words, sorted
    std::size_t num_letters = 0;
};

BdComplex1D build_bd(const Substitution1D& s);

/// Flap-map eventual range and the rank bookkeeping of the sequence
/// 0 -> Z^{k-1} -> dlim(Z^N, A^T) -> H^1 -> Z^ell -> 0.
struct BdDiagnostics {
    std::vector<Word> s0er;               // flaps in the stabilized image
    std::vector<Word> s0er_with_transients;  // flaps whose orbit meets a cycle
    std::size_t k = 0;                    // components of the S0ER subcomplex
    std::size_t ell = 0;                  // independent loops
    GroupDescription dlim_an;             // dlim(Z^N, A^T)
    std::size_t h1_q_rank = 0;
    bool rank_bookkeeping_ok = false;
    std::string sequence_report;
};

BdDiagnostics bd_diagnostics(const Substitution1D& s);

/// Anderson-Putnam complex from r-collared letters. r = 0 is the uncollared
/// complex, valid for cohomology only under border forcing.
struct ApComplex1D {
    CochainSystem system;
    std::vector<GraphEdge> edges;
    std::size_t num_vertices = 0;
    std::size_t radius = 0;
    bool diagnostic_only = false;         // true for radius 0
    std::vector<Word> letter_words;       // window per edge, base alphabet
    std::vector<std::string> letter_names;
};

ApComplex1D build_ap_level(const Substitution1D& s, std::size_t r);
inline ApComplex1D build_ap(const Substitution1D& s, bool collared) {
    return build_ap_level(s, collared ? 1 : 0);
}

struct Cech1DResult {
    CohomologyResult bd;
    CohomologyResult ap;
    bool agree = false;
    BdDiagnostics diagnostics;
    bool primitive = false;
    PeriodicityVerdict periodicity = PeriodicityVerdict::inconclusive;
    std::vector<std::string> warnings;
};

/// Runs both pipelines (BD and once-collared AP) and cross-checks the
/// direct-limit invariants degree by degree.
Cech1DResult cech_1d(const Substitution1D& s);

}  // namespace tilecoh

#endif
