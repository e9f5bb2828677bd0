#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "test_util.hpp"
#include "tilecoh/direct_limit.hpp"

using namespace tilecoh;
using test::random_matrix;
using test::random_unimodular;

namespace {

GroupDescription describe(const IntMatrix& a) { return dlim_free(a); }

// Brute-force direct limit of (Z/n, multiplication by k): the eventual image
// subgroup of the iteration, as a cyclic group order.
long cyclic_eventual_order(long n, long k) {
    std::set<long> cur;
    for (long x = 0; x < n; ++x) cur.insert(x);
    while (true) {
        std::set<long> next;
        for (long x : cur) next.insert((x * k) % n);
        if (next == cur) return static_cast<long>(cur.size());
        cur = next;
    }
}

}  // namespace

TEST_CASE("known direct limits over Z") {
    CHECK(describe(IntMatrix{{1}}).to_string() == "Z");
    CHECK(describe(IntMatrix{{2}}).to_string() == "Z[1/2]");
    CHECK(describe(IntMatrix{{-2}}).to_string() == "Z[1/2]");
    CHECK(describe(IntMatrix{{0}}).to_string() == "0");
    // dlim(Z, x6) = Z[1/6], which is not a sum of single-prime localizations;
    // the honest answer is the fingerprint, never a wrong group name.
    GroupDescription six = describe(IntMatrix{{6}});
    CHECK_FALSE(six.certified);
    CHECK(six.fingerprint.q_rank == 1);
    CHECK(six.fingerprint.p_ranks.at(2) == 0);
    CHECK(six.fingerprint.p_ranks.at(3) == 0);
    CHECK(six.fingerprint.p_ranks.at(5) == 1);
    CHECK(describe(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z[1/2] (+) Z[1/3]");
    // Thue-Morse style: restricted map with char poly (x-2)(x+1).
    CHECK(describe(IntMatrix{{0, 1}, {2, 1}}).to_string() == "Z (+) Z[1/2]");
    // Fibonacci: unimodular, free.
    CHECK(describe(IntMatrix{{1, 1}, {1, 0}}).to_string() == "Z^2");
    // Nilpotent part dies in the limit.
    CHECK(describe(IntMatrix{{0, 1}, {0, 0}}).to_string() == "0");
    CHECK(describe(IntMatrix{{1, 1}, {0, 0}}).to_string() == "Z");
}

TEST_CASE("scaling annotation appears when the eigenvalue is a proper power") {
    GroupDescription g = describe(IntMatrix{{4}});
    REQUIRE(g.certified);
    REQUIRE(g.localized.size() == 1);
    CHECK(g.localized[0].prime == 2);
    CHECK(g.localized[0].scale == 4);
}

TEST_CASE("entangled cross-prime lattices are reported uncertified, not misdescribed") {
    // Char poly (x-2)(x-7), but the eigenvector lattice has index 5 in Z^2:
    // the limit is not Z[1/2] (+) Z[1/7].
    // Eigenvectors of {{2,1},{0,7}}: (1,0) for 2 and (1,5) for 7.
    IntMatrix a{{2, 1}, {0, 7}};
    GroupDescription g = describe(a);
    CHECK_FALSE(g.certified);
    CHECK(g.fingerprint.q_rank == 2);
}

TEST_CASE("direct limit invariants are conjugation-invariant on 200 random endomorphisms") {
    std::mt19937 rng(20240903);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    int done = 0;
    while (done < 200) {
        std::size_t n = dim(rng);
        IntMatrix a = random_matrix(rng, n, n, -3, 3);
        IntMatrix p = random_unimodular(rng, n);
        IntMatrix b = p * a * inverse_unimodular(p);
        GroupDescription ga = describe(a);
        GroupDescription gb = describe(b);
        REQUIRE(dlim_equal_invariants(ga, gb));
        REQUIRE(ga.certified == gb.certified);
        REQUIRE(ga.to_string() == gb.to_string());
        ++done;
    }
}

TEST_CASE("torsion direct limits match a brute-force subgroup iteration") {
    for (long n : {4L, 8L, 9L, 12L, 30L}) {
        for (long k : {0L, 1L, 2L, 3L, 5L, 6L}) {
            DlimPresentation p =
                make_dlim_presentation(IntMatrix{{static_cast<long>(n)}}, IntMatrix{{k}});
            GroupDescription g = dlim_describe(p);
            REQUIRE(g.certified);
            CHECK(g.free_rank == 0);
            CHECK(g.localized.empty());
            Int order = 1;
            for (const auto& d : g.torsion.invariant_factors) order *= d;
            CHECK(order == cyclic_eventual_order(n, k));
        }
    }
}

TEST_CASE("presentations with relations split endomorphisms correctly") {
    // Z^2 / <(2,0)> = Z/2 (+) Z with endo doubling the free part.
    IntMatrix rel(2, 1);
    rel(0, 0) = 2;
    DlimPresentation p = make_dlim_presentation(rel, IntMatrix{{1, 0}, {0, 2}});
    GroupDescription g = dlim_describe(p);
    REQUIRE(g.certified);
    CHECK(g.to_string() == "Z[1/2] (+) Z/2");
}

TEST_CASE("eventual range restricts the map faithfully") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        std::size_t n = dim(rng);
        IntMatrix a = random_matrix(rng, n, n, -3, 3);
        EventualRange er = eventual_range(a);
        CHECK(rank(er.lattice_basis) == er.lattice_basis.cols());
        // a maps the eventual lattice into itself by the restricted matrix.
        CHECK(a * er.lattice_basis == er.lattice_basis * er.restricted);
        // The restricted map is invertible over Q (rank has stabilized).
        CHECK(rank(er.restricted) == er.restricted.rows());
    }
}
