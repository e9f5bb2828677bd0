#ifndef TILECOH_ANALYSIS_HPP
#define TILECOH_ANALYSIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tilecoh/subst1d.hpp"

namespace tilecoh {

/// Perron-Frobenius data and trace values (patch frequencies per unit
/// length). tile_freqs[a] is the trace of the indicator cochain i_a.
struct FrequencyReport {
    std::vector<double> tile_lengths;
    std::vector<double> tile_freqs;
    std::vector<double> trace_values;  // per H^1 generator, collared AP order
    double perron = 0.0;
};

/// Default lengths are the left Perron eigenvector scaled so the shortest
/// tile has length 1. Throws std::invalid_argument for non-primitive input.
FrequencyReport frequencies(const Substitution1D& s,
                            const std::optional<std::vector<double>>& lengths = std::nullopt);

/// Exact-regularity decomposition: each queried patch-counting class equals
/// a rational combination of the basis classes in H^1 (x) Q.
struct RegularityReport {
    std::vector<Word> basis_words;
    std::vector<std::string> basis_names;
    std::vector<Word> patch_words;
    std::vector<std::string> patch_names;
    std::vector<std::vector<Rat>> coefficients;  // coefficients[i] for patch i
    std::size_t residual_radius = 0;
    bool integer_refined = false;
};

RegularityReport exact_regularity(const Substitution1D& s, const std::vector<Word>& patches);

/// Brute-force verification of the count identity on regions between
/// aligned occurrences of a window word inside sigma^depth(first letter).
struct EmpiricalCheck {
    bool pass = false;
    std::size_t regions = 0;
    Word window;
    std::string counterexample;
};

EmpiricalCheck regularity_empirical_check(const Substitution1D& s, const RegularityReport& rep,
                                          std::size_t depth);

/// Spectrum of the substitution action on H^1 (x) R restricted to the
/// eventual range, from the exact integer characteristic polynomial.
struct DeformationReport {
    std::vector<std::pair<double, double>> spectrum;  // (re, im), multiplicity listed
    Poly char_poly_int;
    std::size_t an_dimension = 0;  // d x #{|lambda| < 1}
    bool pisot = false;
};

DeformationReport deformations(const CohomologyResult& r, std::size_t d);

}  // namespace tilecoh

#endif
