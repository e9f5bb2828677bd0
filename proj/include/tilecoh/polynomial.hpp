#ifndef TILECOH_POLYNOMIAL_HPP
#define TILECOH_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilecoh/int_matrix.hpp"

namespace tilecoh {

/// Integer polynomial, coeffs[i] = coefficient of x^i. Normalized: no
/// trailing zero coefficients (the zero polynomial is the empty vector).
using Poly = std::vector<Int>;

std::size_t poly_degree(const Poly& p);  // degree of 0 is 0 by convention here
Poly poly_trim(Poly p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
/// Division by a monic divisor; exact over Z. Returns {quotient, remainder}.
std::pair<Poly, Poly> poly_divmod_monic(const Poly& a, const Poly& b);
Int poly_eval(const Poly& p, const Int& x);
IntMatrix poly_eval_matrix(const Poly& p, const IntMatrix& m);
std::string poly_to_string(const Poly& p);

/// Characteristic polynomial det(xI - m), monic, exact (Faddeev-LeVerrier).
Poly char_poly(const IntMatrix& m);

/// Prime factorization of |n|, n != 0, as prime -> exponent.
std::map<Int, unsigned> factorize(const Int& n);

/// The monic integer factor g of the monic polynomial c whose roots are
/// exactly the roots of c with positive p-adic valuation (g == x^deg mod p),
/// found by Hensel lifting. Returns nullopt when no such integer factor
/// exists or when c has no root divisible by p.
std::optional<Poly> p_local_factor(const Poly& c, const Int& p);

}  // namespace tilecoh

#endif
