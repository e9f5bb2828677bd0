#ifndef TILECOH_NORMAL_FORMS_HPP
#define TILECOH_NORMAL_FORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tilecoh/int_matrix.hpp"

namespace tilecoh {

/// U * source * V = S, with U, V unimodular and S in Smith normal form
/// (nonnegative diagonal, each entry dividing the next, zeros trailing).
struct SmithDecomposition {
    IntMatrix U, S, V, source;

    std::size_t rank() const;
    std::vector<Int> diagonal() const;
};

/// Isomorphism class of a finitely generated abelian group:
/// Z^free_rank (+) Z/d_1 (+) ... with d_1 | d_2 | ..., all d_i > 1.
struct FgAbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> invariant_factors;

    bool operator==(const FgAbGroup&) const = default;
    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    std::string to_string() const;
};

SmithDecomposition smith(const IntMatrix& m);

/// Z^rows / column-span(m), in canonical form.
FgAbGroup cokernel(const IntMatrix& m);

/// Columns form a basis of the integer kernel lattice of m (saturated).
IntMatrix kernel_basis(const IntMatrix& m);

/// Any exact rational solution of m x = target, or nullopt if inconsistent.
std::optional<std::vector<Rat>> solve_rational(const IntMatrix& m,
                                               const std::vector<Rat>& target);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Rank of (m mod p) over the field with p elements.
std::size_t rank_mod_p(const IntMatrix& m, const Int& p);

/// Basis of the column lattice of m: the nonzero columns of a column-style
/// Hermite form. Result has full column rank.
IntMatrix column_lattice_basis(const IntMatrix& m);

/// Exact inverse of a unimodular matrix.
IntMatrix inverse_unimodular(const IntMatrix& u);

/// Integer solution X of  basis * X = rhs  where the columns of rhs lie in
/// the column lattice of basis (basis has full column rank). Throws
/// InternalError if no integer solution exists.
IntMatrix solve_in_lattice(const IntMatrix& basis, const IntMatrix& rhs);

/// Isomorphism class of L1/L2 for lattices L2 <= L1 given by column bases.
FgAbGroup lattice_quotient(const IntMatrix& l1, const IntMatrix& l2);

}  // namespace tilecoh

#endif
