#include "tilecoh/normal_forms.hpp"

#include <algorithm>
#include <sstream>

#include "tilecoh/rational.hpp"

namespace tilecoh {

namespace {

// Quotient of a/b rounded to nearest (ties toward zero), so |a - q b| <= |b|/2.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int babs = abs(b);
    if (r * 2 > babs) q += 1;
    return q;
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    std::size_t n = std::min(S.rows(), S.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (S(i, i) != 0) ++r;
    return r;
}

std::vector<Int> SmithDecomposition::diagonal() const {
    std::vector<Int> d;
    std::size_t n = std::min(S.rows(), S.cols());
    for (std::size_t i = 0; i < n; ++i) d.push_back(S(i, i));
    return d;
}

std::string FgAbGroup::to_string() const {
    std::ostringstream os;
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
    for (const auto& d : invariant_factors) {
        sep();
        os << "Z/" << d.get_str();
    }
    if (first) os << "0";
    return os.str();
}

SmithDecomposition smith(const IntMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    IntMatrix S = m;
    IntMatrix U = IntMatrix::identity(nr);
    IntMatrix V = IntMatrix::identity(nc);

    std::size_t t = 0;
    const std::size_t nmin = std::min(nr, nc);
    while (t < nmin) {
        // Smallest-magnitude nonzero pivot in the trailing submatrix.
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                if (S(i, j) == 0) continue;
                Int a = abs(S(i, j));
                if (!found || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;

        for (;;) {
            S.swap_rows(t, pi);
            U.swap_rows(t, pi);
            S.swap_cols(t, pj);
            V.swap_cols(t, pj);
            if (S(t, t) < 0) {
                S.negate_row(t);
                U.negate_row(t);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (S(i, t) == 0) continue;
                Int q = nearest_quotient(S(i, t), S(t, t));
                if (q != 0) {
                    S.add_row(i, t, -q);
                    U.add_row(i, t, -q);
                }
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (S(t, j) == 0) continue;
                Int q = nearest_quotient(S(t, j), S(t, t));
                if (q != 0) {
                    S.add_col(j, t, -q);
                    V.add_col(j, t, -q);
                }
                if (S(t, j) != 0) clean = false;
            }
            if (clean) {
                // Pivot must divide the whole trailing submatrix.
                bool divides = true;
                for (std::size_t i = t + 1; i < nr && divides; ++i)
                    for (std::size_t j = t + 1; j < nc; ++j)
                        if (S(i, j) % S(t, t) != 0) {
                            S.add_row(t, i, 1);
                            U.add_row(t, i, 1);
                            divides = false;
                            break;
                        }
                if (divides) break;
            }
            // Re-select the pivot among the dirtied row/column/submatrix.
            pi = t;
            pj = t;
            Int best2 = abs(S(t, t));
            for (std::size_t i = t; i < nr; ++i)
                for (std::size_t j = t; j < nc; ++j) {
                    if (S(i, j) == 0) continue;
                    Int a = abs(S(i, j));
                    if (a < best2) {
                        best2 = a;
                        pi = i;
                        pj = j;
                    }
                }
        }
        ++t;
    }
    return SmithDecomposition{std::move(U), std::move(S), std::move(V), m};
}

FgAbGroup cokernel(const IntMatrix& m) {
    SmithDecomposition d = smith(m);
    FgAbGroup g;
    g.free_rank = m.rows() - d.rank();
    for (const auto& v : d.diagonal())
        if (v > 1) g.invariant_factors.push_back(v);
    return g;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    SmithDecomposition d = smith(m);
    std::size_t r = d.rank();
    IntMatrix basis(m.cols(), m.cols() - r);
    for (std::size_t j = r; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) basis(i, j - r) = d.V(i, j);
    return basis;
}

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& m,
                                               const std::vector<Rat>& target) {
    if (target.size() != m.rows()) throw std::invalid_argument("target length != rows");
    RatMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = Rat(m(i, j));
    return a.solve(target);
}

std::size_t rank(const IntMatrix& m) {
    return RatMatrix::from_int(m).rank();
}

std::size_t rank_mod_p(const IntMatrix& m, const Int& p) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Int>> a(nr, std::vector<Int>(nc));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            mpz_mod(a[i][j].get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
        }
    std::size_t r = 0;
    for (std::size_t col = 0; col < nc && r < nr; ++col) {
        std::size_t piv = r;
        while (piv < nr && a[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(a[r], a[piv]);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), a[r][col].get_mpz_t(), p.get_mpz_t()) == 0)
            throw InternalError("rank_mod_p: non-invertible pivot, p not prime?");
        for (std::size_t j = col; j < nc; ++j)
            a[r][j] = a[r][j] * inv % p;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || a[i][col] == 0) continue;
            Int f = a[i][col];
            for (std::size_t j = col; j < nc; ++j) {
                a[i][j] = (a[i][j] - f * a[r][j]) % p;
                if (a[i][j] < 0) a[i][j] += p;
            }
        }
        ++r;
    }
    return r;
}

IntMatrix column_lattice_basis(const IntMatrix& m) {
    // Column Hermite normal form: yields a canonical basis of the column
    // lattice (the identity matrix whenever the columns span all of Z^n).
    IntMatrix a = m;
    const std::size_t nr = a.rows(), nc = a.cols();
    std::size_t piv = 0;
    for (std::size_t row = 0; row < nr && piv < nc; ++row) {
        // Gcd the entries of this row (from column piv on) into column piv.
        for (;;) {
            std::size_t jmin = nc;
            for (std::size_t j = piv; j < nc; ++j) {
                if (a(row, j) == 0) continue;
                if (jmin == nc || abs(a(row, j)) < abs(a(row, jmin))) jmin = j;
            }
            if (jmin == nc) break;  // row is zero from piv on
            a.swap_cols(piv, jmin);
            bool clean = true;
            for (std::size_t j = piv + 1; j < nc; ++j) {
                if (a(row, j) == 0) continue;
                Int q = nearest_quotient(a(row, j), a(row, piv));
                if (q != 0) a.add_col(j, piv, -q);
                if (a(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(row, piv) == 0) continue;
        if (a(row, piv) < 0) a.negate_col(piv);
        // Canonical reduction of earlier pivot columns against this pivot.
        for (std::size_t j = 0; j < piv; ++j) {
            Int q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a(row, j).get_mpz_t(),
                        a(row, piv).get_mpz_t());
            if (q != 0) a.add_col(j, piv, -q);
        }
        ++piv;
    }
    std::vector<std::size_t> all_rows(nr), keep(piv);
    for (std::size_t i = 0; i < nr; ++i) all_rows[i] = i;
    for (std::size_t j = 0; j < piv; ++j) keep[j] = j;
    return a.select(all_rows, keep);
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
    if (!u.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    RatMatrix inv = RatMatrix::from_int(u).inverse();
    IntMatrix r(u.rows(), u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const Rat& v = inv(i, j);
            if (v.get_den() != 1) throw InternalError("inverse_unimodular: matrix not unimodular");
            r(i, j) = v.get_num();
        }
    return r;
}

IntMatrix solve_in_lattice(const IntMatrix& basis, const IntMatrix& rhs) {
    if (basis.rows() != rhs.rows()) throw std::invalid_argument("solve_in_lattice shape mismatch");
    IntMatrix x(basis.cols(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        std::vector<Rat> t(rhs.rows());
        for (std::size_t i = 0; i < rhs.rows(); ++i) t[i] = Rat(rhs(i, j));
        auto sol = solve_rational(basis, t);
        if (!sol) throw InternalError("solve_in_lattice: column outside lattice span");
        for (std::size_t i = 0; i < basis.cols(); ++i) {
            if ((*sol)[i].get_den() != 1)
                throw InternalError("solve_in_lattice: non-integer coordinate");
            x(i, j) = (*sol)[i].get_num();
        }
    }
    return x;
}

FgAbGroup lattice_quotient(const IntMatrix& l1, const IntMatrix& l2) {
    return cokernel(solve_in_lattice(l1, l2));
}

}  // namespace tilecoh
