#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "test_util.hpp"
#include "tilecoh/normal_forms.hpp"
#include "tilecoh/polynomial.hpp"
#include "tilecoh/rational.hpp"

using namespace tilecoh;
using test::det;
using test::random_matrix;
using test::random_unimodular;

namespace {

// gcd of all k x k minors of m (0 if all vanish).
Int minor_gcd(const IntMatrix& m, std::size_t k) {
    std::vector<std::size_t> ri(k), ci(k);
    Int g = 0;
    std::vector<std::size_t> rows(m.rows()), cols(m.cols());
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);

    std::vector<std::size_t> rsel, csel;
    auto choose = [](std::size_t n, std::size_t k, auto&& visit) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            visit(idx);
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    };
    choose(m.rows(), k, [&](const std::vector<std::size_t>& r) {
        choose(m.cols(), k, [&](const std::vector<std::size_t>& c) {
            Int d = det(m.select(r, c));
            g = gcd(g, d);
        });
    });
    return abs(g);
}

}  // namespace

TEST_CASE("smith normal form matches the gcd-of-minors oracle on 500 random matrices") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 500; ++trial) {
        IntMatrix m = random_matrix(rng, dim(rng), dim(rng), -9, 9);
        auto s = smith(m);
        REQUIRE(s.U * m * s.V == s.S);
        REQUIRE(abs(det(s.U)) == 1);
        REQUIRE(abs(det(s.V)) == 1);
        auto d = s.diagonal();
        Int prev = 1;
        for (std::size_t k = 0; k < d.size(); ++k) {
            REQUIRE(d[k] >= 0);
            if (d[k] != 0) REQUIRE(d[k] % prev == 0);
            if (d[k] != 0) prev = d[k];
        }
        // Product of the first k diagonal entries equals the gcd of k x k minors.
        Int prod = 1;
        for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
            prod *= d[k - 1];
            REQUIRE(prod == minor_gcd(m, k));
        }
    }
}

TEST_CASE("cokernel is invariant under unimodular row and column changes") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        IntMatrix m = random_matrix(rng, dim(rng), dim(rng), -6, 6);
        IntMatrix u = random_unimodular(rng, m.rows());
        IntMatrix v = random_unimodular(rng, m.cols());
        CHECK(cokernel(u * m * v) == cokernel(m));
    }
}

TEST_CASE("kernel_basis is a saturated basis of the rational kernel") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        IntMatrix m = random_matrix(rng, dim(rng), dim(rng), -4, 4);
        IntMatrix k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(rank(k) == k.cols());
        CHECK(k.cols() == m.cols() - rank(m));
        // Saturation: Z^cols / ker has no torsion, i.e. [k | anything] has
        // the same gcd structure; check via cokernel of k having free rank
        // cols - k.cols() and no torsion.
        FgAbGroup q = cokernel(k);
        CHECK(q.invariant_factors.empty());
    }
}

TEST_CASE("solve_in_lattice returns exact integer solutions") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        std::size_t n = dim(rng), k = dim(rng);
        IntMatrix basis = random_matrix(rng, n + 1, k, -5, 5);
        if (rank(basis) < k) continue;
        IntMatrix x = random_matrix(rng, k, 2, -7, 7);
        IntMatrix rhs = basis * x;
        CHECK(basis * solve_in_lattice(basis, rhs) == rhs);
    }
}

TEST_CASE("column_lattice_basis is canonical and spans the column lattice") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        IntMatrix m = random_matrix(rng, dim(rng), dim(rng), -5, 5);
        IntMatrix b = column_lattice_basis(m);
        CHECK(rank(b) == b.cols());
        CHECK(rank(b) == rank(m));
        // Same lattice in both directions.
        if (b.cols() > 0) solve_in_lattice(b, m);
        // Canonical: recomputing from a re-ordered generating set agrees.
        IntMatrix v = random_unimodular(rng, m.cols());
        CHECK(column_lattice_basis(m * v) == b);
    }
    CHECK(column_lattice_basis(IntMatrix{{1, 0}, {0, 1}}) == IntMatrix::identity(2));
    CHECK(column_lattice_basis(IntMatrix{{2, 1}, {1, 1}}) == IntMatrix::identity(2));
}

TEST_CASE("rational solve and inverse round-trip") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix m = random_matrix(rng, 4, 4, -5, 5);
        if (det(m) == 0) continue;
        RatMatrix q = RatMatrix::from_int(m);
        RatMatrix inv = q.inverse();
        RatMatrix prod = q * inv;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(prod(i, j) == Rat(i == j ? 1 : 0));
    }
}

TEST_CASE("characteristic polynomial agrees with an exact determinant oracle") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        std::size_t n = dim(rng);
        IntMatrix m = random_matrix(rng, n, n, -6, 6);
        Poly c = char_poly(m);
        REQUIRE(poly_degree(c) == n);
        REQUIRE(c.back() == 1);
        for (long t : {-3L, -1L, 0L, 1L, 2L, 5L}) {
            IntMatrix a = IntMatrix::identity(n) * Int(t) - m;
            CHECK(poly_eval(c, Int(t)) == det(a));
        }
    }
}

TEST_CASE("polynomial division by monic divisors is exact") {
    Poly a = poly_mul({-2, 1}, {-3, 1});  // (x-2)(x-3)
    auto [q, r] = poly_divmod_monic(a, {-2, 1});
    CHECK(q == Poly{-3, 1});
    CHECK(r.empty());
}

TEST_CASE("p_local_factor splits off exactly the p-divisible roots") {
    Poly c = poly_mul({-2, 1}, {-3, 1});  // (x-2)(x-3)
    auto g2 = p_local_factor(c, 2);
    REQUIRE(g2.has_value());
    CHECK(*g2 == Poly{-2, 1});
    auto g3 = p_local_factor(c, 3);
    REQUIRE(g3.has_value());
    CHECK(*g3 == Poly{-3, 1});

    // x^2 - x - 1 has unit constant term: no 2-divisible part.
    CHECK_FALSE(p_local_factor(Poly{-1, -1, 1}, 2).has_value());

    // (x-2)(x-6): roots 2 and 6 are both even, product 12 is not a 2-power,
    // but the 2-local factor is the whole polynomial; constant 12 is not a
    // pure 2-power, which try_certify rejects downstream. Here we only check
    // factor correctness of (x-4)(x-3): 4 is the only 2-divisible root.
    Poly c2 = poly_mul({-4, 1}, {-3, 1});
    auto g = p_local_factor(c2, 2);
    REQUIRE(g.has_value());
    CHECK(*g == Poly{-4, 1});
}

TEST_CASE("factorize recovers prime exponents") {
    auto f = factorize(Int(360));
    REQUIRE(f.size() == 3);
    CHECK(f[Int(2)] == 3);
    CHECK(f[Int(3)] == 2);
    CHECK(f[Int(5)] == 1);
}
