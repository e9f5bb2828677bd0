#ifndef TILECOH_COCHAIN_HPP
#define TILECOH_COCHAIN_HPP

#include <cstdint>
#include <vector>

#include "tilecoh/direct_limit.hpp"

namespace tilecoh {

/// Integer cochain complex 0 -> C^0 -> ... -> C^D -> 0 with an endomorphism
/// of the complex (a cellular self-map acting on cochains).
/// delta[k] is the matrix of C^k -> C^{k+1} (rows: (k+1)-cells), so there are
/// dims.size() - 1 coboundaries. endo[k] acts on C^k.
struct CochainSystem {
    std::vector<std::size_t> dims;
    std::vector<IntMatrix> delta;
    std::vector<IntMatrix> endo;
};

/// Shape checks plus delta . delta = 0 and endo . delta = delta . endo.
/// Throws std::invalid_argument on violation.
void validate_system(const CochainSystem& s);

/// Cohomology of one approximant in degree k together with the induced
/// endomorphism data and the direct limit under iteration.
struct DegreeResult {
    FgAbGroup approximant;          // H^k of the complex
    DlimPresentation presentation;  // H^k with its induced endomorphism
    GroupDescription cech;          // dlim(H^k, endo)

    // Coordinates: kernel columns are a saturated basis of ker(delta_k);
    // rel_u * y splits kernel coordinates so that rows >= rel_rank give the
    // free quotient used by presentation/free_class.
    IntMatrix kernel;
    IntMatrix rel_u;
    std::size_t rel_rank = 0;
};

struct CohomologyResult {
    std::vector<DegreeResult> degrees;
    std::int64_t euler_cells = 0;       // alternating sum of cochain ranks
    std::int64_t euler_cohomology = 0;  // alternating sum of H^k ranks
};

CohomologyResult complex_cohomology(const CochainSystem& s);

/// Class of a rational cocycle in the free part of H^k (x) Q, in the basis
/// used by DegreeResult::presentation. Throws std::invalid_argument if the
/// vector is not a cocycle.
std::vector<Rat> free_class(const DegreeResult& d, const std::vector<Rat>& cocycle);

/// Directed multigraph edge, tail -> head.
struct GraphEdge {
    std::size_t tail = 0;
    std::size_t head = 0;
};

/// One-dimensional cochain system for a directed graph with a cellular self-
/// map: vertex_map sends vertex v to vertex_map[v]; edge_paths[e] is the
/// image of edge e as a signed edge path, entries +-(index+1).
CochainSystem graph_system(std::size_t num_vertices, const std::vector<GraphEdge>& edges,
                           const std::vector<std::size_t>& vertex_map,
                           const std::vector<std::vector<std::int64_t>>& edge_paths);

}  // namespace tilecoh

#endif
