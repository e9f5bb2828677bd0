#include "tilecoh/direct_limit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tilecoh {

namespace {

// |det(m)| from the constant coefficient of the characteristic polynomial.
Int abs_det(const IntMatrix& m) {
    if (m.rows() == 0) return 1;
    return abs(char_poly(m)[0]);
}

// Entry-wise reduction of row i modulo orders[i]; keeps torsion matrices small.
void reduce_rows_mod(IntMatrix& m, const std::vector<Int>& orders) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_mod(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), orders[i].get_mpz_t());
}

// Eventual image of endo acting on (+) Z/orders[i]: the images of the whole
// group under endo^k form a decreasing chain of finite subgroups, so the
// isomorphism type stabilizes exactly when consecutive types agree.
FgAbGroup torsion_eventual(const std::vector<Int>& orders, const IntMatrix& endo) {
    const std::size_t t = orders.size();
    if (t == 0) return FgAbGroup{};
    IntMatrix diag(t, t);
    for (std::size_t i = 0; i < t; ++i) diag(i, i) = orders[i];

    auto image_type = [&](const IntMatrix& mk) {
        IntMatrix span = column_lattice_basis(mk.hcat(diag));
        return lattice_quotient(span, diag);
    };

    std::size_t total_bits = 0;
    for (const auto& d : orders) total_bits += mpz_sizeinbase(d.get_mpz_t(), 2);

    IntMatrix mk = endo;
    reduce_rows_mod(mk, orders);
    FgAbGroup prev = image_type(mk);
    for (std::size_t k = 0; k < total_bits + 2; ++k) {
        mk = mk * endo;
        reduce_rows_mod(mk, orders);
        FgAbGroup cur = image_type(mk);
        if (cur == prev) return cur;
        prev = cur;
    }
    throw InternalError("torsion_eventual: image chain failed to stabilize");
}

struct CertifiedFree {
    std::size_t free_rank = 0;
    std::vector<LocalizedSummand> localized;
};

// If g = (x - r)^deg for an integer r, returns r.
std::optional<Int> binomial_root(const Poly& g) {
    std::size_t d = poly_degree(g);
    if (d == 0) return std::nullopt;
    Int a0 = abs(g[0]);
    Int check;
    // mpz_root returns nonzero iff the root is exact.
    int exact = mpz_root(check.get_mpz_t(), a0.get_mpz_t(), static_cast<unsigned long>(d));
    if (!exact) return std::nullopt;
    for (Int r : {check, Int(-check)}) {
        Poly cand = {Int(1)};
        Poly lin = {-r, Int(1)};
        for (std::size_t i = 0; i < d; ++i) cand = poly_mul(cand, lin);
        if (cand == g) return r;
    }
    return std::nullopt;
}

// Attempts the p-local factorization certificate for the restricted map r
// with characteristic polynomial c. On success the direct limit of (Z^s, r)
// is exactly Z^{deg g0} (+) (+)_p Z[1/p]^{deg g_p}:
//   (a) c = g0 * prod_p g_p with g_p == x^{deg g_p} (mod p), |g_p(0)| a pure
//       power of p, and |g0(0)| = 1;
//   (b) when two or more localized primes occur, the invariant sublattices
//       ker(g_p(r)) must sum to their joint saturation with index one.
// Soundness: the quotient by the saturated localized part has determinant
// +-g0(0) = +-1, hence is free and splits off. A single p-local block B
// satisfies char(B) == x^d (mod p), so B^d = p T by Cayley-Hamilton and its
// limit is a finitely generated torsion-free Z[1/p]-module, i.e. Z[1/p]^d.
// Across distinct primes the blocks only span the limit when their sum is
// saturated; otherwise cross-prime denominators entangle the summands and
// we refuse to certify.
std::optional<CertifiedFree> try_certify(const IntMatrix& r, const Poly& c,
                                         const std::vector<Int>& primes) {
    Poly g0 = c;
    std::vector<std::pair<Int, Poly>> parts;
    for (const Int& p : primes) {
        auto gp = p_local_factor(c, p);
        if (!gp) return std::nullopt;
        Int c0 = abs((*gp)[0]);
        while (c0 % p == 0) c0 /= p;
        if (c0 != 1) return std::nullopt;  // a p-local root carries another prime
        auto [quot, rem] = poly_divmod_monic(g0, *gp);
        if (!rem.empty()) return std::nullopt;
        g0 = quot;
        parts.emplace_back(p, *gp);
    }
    if (abs(poly_eval(g0, Int(0))) != 1) return std::nullopt;

    IntMatrix basis(r.rows(), 0);
    Poly g_loc = {Int(1)};
    for (const auto& [p, gp] : parts) {
        IntMatrix ker = kernel_basis(poly_eval_matrix(gp, r));
        if (ker.cols() != poly_degree(gp)) return std::nullopt;
        basis = basis.hcat(ker);
        g_loc = poly_mul(g_loc, gp);
    }
    if (parts.size() >= 2) {
        IntMatrix sat = kernel_basis(poly_eval_matrix(g_loc, r));
        if (!lattice_quotient(sat, basis).is_trivial()) return std::nullopt;
    }

    CertifiedFree out;
    out.free_rank = poly_degree(g0);
    for (const auto& [p, gp] : parts) {
        LocalizedSummand ls;
        ls.prime = p;
        ls.rank = poly_degree(gp);
        if (auto root = binomial_root(gp)) ls.scale = *root;
        out.localized.push_back(ls);
    }
    std::sort(out.localized.begin(), out.localized.end(),
              [](const LocalizedSummand& a, const LocalizedSummand& b) {
                  return a.prime < b.prime;
              });
    return out;
}

}  // namespace

EventualRange eventual_range(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("eventual_range: matrix not square");
    EventualRange er;
    if (m.rows() == 0) {
        er.lattice_basis = IntMatrix(0, 0);
        er.restricted = IntMatrix(0, 0);
        er.power = 0;
        return er;
    }
    IntMatrix power = m;
    std::size_t s = 1;
    std::size_t r = rank(power);
    for (;;) {
        IntMatrix next = power * m;
        std::size_t rn = rank(next);
        if (rn == r) break;
        power = std::move(next);
        r = rn;
        ++s;
    }
    er.power = s;
    er.lattice_basis = column_lattice_basis(power);
    er.restricted = solve_in_lattice(er.lattice_basis, m * er.lattice_basis);
    return er;
}

DlimPresentation make_dlim_presentation(IntMatrix relations, IntMatrix endo) {
    if (!endo.is_square()) throw std::invalid_argument("dlim presentation: endo not square");
    const std::size_t n = endo.rows();
    if (relations.cols() == 0) relations = IntMatrix(n, 0);
    if (relations.rows() != n)
        throw std::invalid_argument("dlim presentation: relations/endo shape mismatch");

    if (relations.cols() > 0) {
        // endo must carry the relation lattice into itself.
        IntMatrix rel_basis = column_lattice_basis(relations);
        solve_in_lattice(rel_basis, endo * relations);  // throws if not
    }

    DlimPresentation pr;
    pr.ambient_rank = n;
    pr.relations = relations;
    pr.endo = endo;

    SmithDecomposition d = smith(relations);
    const std::size_t r = d.rank();
    IntMatrix endo_z = d.U * endo * inverse_unimodular(d.U);

    std::vector<std::size_t> free_idx, tors_idx;
    for (std::size_t i = 0; i < r; ++i)
        if (d.S(i, i) > 1) {
            tors_idx.push_back(i);
            pr.torsion_orders.push_back(d.S(i, i));
        }
    for (std::size_t i = r; i < n; ++i) free_idx.push_back(i);

    pr.free_endo = endo_z.select(free_idx, free_idx);
    pr.torsion_endo = endo_z.select(tors_idx, tors_idx);
    reduce_rows_mod(pr.torsion_endo, pr.torsion_orders);

    EventualRange er = eventual_range(pr.free_endo);
    pr.eventual_rank = er.lattice_basis.cols();
    pr.restricted_map = er.restricted;
    return pr;
}

GroupDescription dlim_describe(const DlimPresentation& p) {
    GroupDescription g;
    g.torsion = torsion_eventual(p.torsion_orders, p.torsion_endo);
    g.fingerprint.torsion = g.torsion;
    g.fingerprint.q_rank = p.eventual_rank;

    const IntMatrix& r = p.restricted_map;
    const std::size_t s = r.rows();

    std::vector<Int> primes = {2, 3, 5, 7};
    Poly c;
    if (s > 0) {
        c = char_poly(r);
        Int det = abs(c[0]);
        if (det == 0) throw InternalError("dlim_describe: restricted map is singular");
        for (const auto& [q, e] : factorize(det)) {
            (void)e;
            if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
        }
    }
    std::sort(primes.begin(), primes.end());

    // p-ranks of a high power of the full free quotient map; these stabilize
    // by the ambient dimension and are invariants of the direct limit.
    const std::size_t n = p.free_endo.rows();
    IntMatrix high = n > 0 ? p.free_endo.pow(std::max<std::size_t>(n, 1)) : IntMatrix(0, 0);
    for (const Int& q : primes) g.fingerprint.p_ranks[q] = n > 0 ? rank_mod_p(high, q) : 0;

    if (s == 0) {
        g.certified = true;
        g.free_rank = 0;
        return g;
    }

    std::vector<Int> det_primes;
    for (const auto& [q, e] : factorize(abs(c[0]))) {
        (void)e;
        det_primes.push_back(q);
    }
    std::sort(det_primes.begin(), det_primes.end());
    if (auto cert = try_certify(r, c, det_primes)) {
        g.certified = true;
        g.free_rank = cert->free_rank;
        g.localized = cert->localized;
    }
    return g;
}

GroupDescription dlim_free(const IntMatrix& endo) {
    return dlim_describe(make_dlim_presentation(IntMatrix(endo.rows(), 0), endo));
}

std::string GroupDescription::to_string() const {
    std::ostringstream os;
    if (!certified) {
        os << "uncertified[q_rank=" << fingerprint.q_rank;
        for (const auto& [p, rk] : fingerprint.p_ranks)
            os << ", " << p.get_str() << "-rank=" << rk;
        os << ", torsion=" << fingerprint.torsion.to_string() << "]";
        return os.str();
    }
    bool first = true;
    auto sep = [&] {
        if (!first) os << " (+) ";
        first = false;
    };
    if (free_rank == 1) {
        sep();
        os << "Z";
    } else if (free_rank > 1) {
        sep();
        os << "Z^" << free_rank;
    }
    for (const auto& l : localized) {
        sep();
        os << "Z[1/" << l.prime.get_str() << "]";
        if (l.rank != 1) os << "^" << l.rank;
    }
    for (const auto& d : torsion.invariant_factors) {
        sep();
        os << "Z/" << d.get_str();
    }
    if (first) os << "0";
    return os.str();
}

bool dlim_equal_invariants(const GroupDescription& a, const GroupDescription& b) {
    if (a.fingerprint.q_rank != b.fingerprint.q_rank) return false;
    if (!(a.fingerprint.torsion == b.fingerprint.torsion)) return false;
    for (const auto& [p, rk] : a.fingerprint.p_ranks) {
        auto it = b.fingerprint.p_ranks.find(p);
        if (it != b.fingerprint.p_ranks.end() && it->second != rk) return false;
    }
    return true;
}

}  // namespace tilecoh
