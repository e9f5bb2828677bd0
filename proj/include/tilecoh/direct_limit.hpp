#ifndef TILECOH_DIRECT_LIMIT_HPP
#define TILECOH_DIRECT_LIMIT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilecoh/normal_forms.hpp"
#include "tilecoh/polynomial.hpp"

namespace tilecoh {

/// lattice_basis columns span image(m^s) once the rank has stabilized;
/// restricted is the matrix of m on that lattice in the given basis.
struct EventualRange {
    IntMatrix lattice_basis;
    IntMatrix restricted;
    std::size_t power = 0;
};

EventualRange eventual_range(const IntMatrix& m);

/// A finitely generated abelian group Z^m / column-span(relations) together
/// with an endomorphism of Z^m descending to the quotient, split into its
/// free quotient and torsion subgroup with the data dlim_describe needs.
struct DlimPresentation {
    std::size_t ambient_rank = 0;
    IntMatrix relations;  // ambient_rank x k
    IntMatrix endo;       // ambient_rank x ambient_rank

    // Derived by make_dlim_presentation:
    IntMatrix free_endo;              // endo on the free quotient H / torsion
    std::vector<Int> torsion_orders;  // invariant factors > 1
    IntMatrix torsion_endo;           // endo on torsion generators
    std::size_t eventual_rank = 0;
    IntMatrix restricted_map;  // free_endo on its eventual-range lattice
};

/// Validates that endo descends to the quotient and computes the split.
/// Throws InternalError if endo does not preserve the relation lattice.
DlimPresentation make_dlim_presentation(IntMatrix relations, IntMatrix endo);

struct LocalizedSummand {
    Int prime;
    std::size_t rank = 0;
    Int scale = 0;  // 0: no annotation; otherwise the per-summand eigenvalue

    bool operator==(const LocalizedSummand&) const = default;
};

/// Order-independent invariants of the direct limit, always computed:
/// rational rank, p-ranks at the probe primes, eventual torsion type.
struct GroupFingerprint {
    std::size_t q_rank = 0;
    std::map<Int, std::size_t> p_ranks;
    FgAbGroup torsion;

    bool operator==(const GroupFingerprint&) const = default;
};

/// Canonical description of dlim(G, f). When certified, the group is
/// exactly Z^free_rank (+) (+)_p Z[1/p]^r (+) torsion. Otherwise only the
/// fingerprint is a sound invariant.
struct GroupDescription {
    bool certified = false;
    std::size_t free_rank = 0;
    std::vector<LocalizedSummand> localized;  // sorted by prime
    FgAbGroup torsion;
    GroupFingerprint fingerprint;

    std::string to_string() const;

    bool is_free() const { return certified && localized.empty() && torsion.is_trivial(); }
};

GroupDescription dlim_describe(const DlimPresentation& p);

/// Convenience: dlim of the free group Z^n under an n x n matrix.
GroupDescription dlim_free(const IntMatrix& endo);

/// Sound necessary condition for isomorphism (sufficient on the certified
/// fragment): q_rank, all shared p-ranks, and torsion fingerprints agree.
bool dlim_equal_invariants(const GroupDescription& a, const GroupDescription& b);

}  // namespace tilecoh

#endif
