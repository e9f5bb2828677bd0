#ifndef TILECOH_SUBST2D_HPP
#define TILECOH_SUBST2D_HPP

#include <set>
#include <string>
#include <vector>

#include "tilecoh/cochain.hpp"

namespace tilecoh {

/// k x k grid of letter indices; grid[row][col], row 0 at the top.
using Block = std::vector<std::vector<std::size_t>>;

struct BlockSubstitution2D {
    std::vector<std::string> alphabet;
    std::size_t block_size = 0;  // N >= 2
    std::vector<Block> rules;    // rules[letter] is an N x N grid

    std::size_t size() const { return alphabet.size(); }
    /// Substituted grid: each cell inflates to its N x N rule grid.
    Block apply(const Block& b) const;
    void validate() const;
};

/// Letter-count matrix: A(i, j) = occurrences of letter i in rules[j].
IntMatrix subst_matrix_2d(const BlockSubstitution2D& s);
bool primitivity_2d(const BlockSubstitution2D& s);

/// Fixpoint closure of the k x k subgrid language.
std::set<Block> allowed_blocks(const BlockSubstitution2D& s, std::size_t k);

/// Once-collared substitution: letters are allowed 3x3 blocks (center plus
/// its eight neighbors); rules read neighborhoods off the 3N x 3N image.
struct Collared2D {
    BlockSubstitution2D collared;
    std::vector<Block> letter_blocks;     // 3x3 window per collared letter
    std::vector<std::size_t> projection;  // collared letter -> center letter
};

Collared2D collar2d(const BlockSubstitution2D& s);

/// Square Anderson-Putnam complex: one face per (collared) letter, edge and
/// vertex cells from union-find identification over allowed 2x2 blocks.
/// Horizontal edges are oriented eastward, vertical edges northward, and
/// boundary of a face is S + E - N - W.
struct ApComplex2D {
    CochainSystem system;
    std::size_t num_faces = 0;
    std::size_t num_edges = 0;
    std::size_t num_vertices = 0;
    bool diagnostic_only = false;  // true when built uncollared
    std::vector<std::string> face_names;
};

ApComplex2D build_ap2d(const BlockSubstitution2D& s, bool collared);

struct Cech2DResult {
    CohomologyResult ap;
    bool primitive = false;
    std::vector<std::string> warnings;
};

/// Collared AP pipeline through the cohomology engine.
Cech2DResult cech_2d(const BlockSubstitution2D& s);

}  // namespace tilecoh

#endif
