#ifndef TILECOH_REPORT_HPP
#define TILECOH_REPORT_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "tilecoh/analysis.hpp"
#include "tilecoh/subst2d.hpp"

namespace tilecoh {

using Json = nlohmann::ordered_json;

/// Canonical group string plus per-summand annotations, e.g.
/// "Z^2 (+) Z[1/2] (scales by 4)".
std::string group_text(const GroupDescription& g);

Json json_rat(const Rat& r);
Json json_group(const GroupDescription& g);
Json json_cohomology(const CohomologyResult& r);
Json json_cech1d(const Cech1DResult& r);
Json json_cech2d(const Cech2DResult& r);
Json json_diagnostics(const Substitution1D& s, const BdDiagnostics& d);
Json json_frequencies(const Substitution1D& s, const FrequencyReport& r);
Json json_regularity(const RegularityReport& r, const EmpiricalCheck& check);
Json json_deformations(const DeformationReport& r);

std::string text_cohomology(const CohomologyResult& r, const std::string& heading);
std::string text_cech1d(const Cech1DResult& r);
std::string text_cech2d(const Cech2DResult& r);
std::string text_diagnostics(const Substitution1D& s, const BdDiagnostics& d);
std::string text_frequencies(const Substitution1D& s, const FrequencyReport& r);
std::string text_regularity(const RegularityReport& r, const EmpiricalCheck& check);
std::string text_deformations(const DeformationReport& r);

/// Fixed float formatting used in all reports (full double precision).
std::string format_double(double v);

}  // namespace tilecoh

#endif
