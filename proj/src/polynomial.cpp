#include "tilecoh/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace tilecoh {

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::size_t poly_degree(const Poly& p) {
    return p.empty() ? 0 : p.size() - 1;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return poly_trim(std::move(r));
}

std::pair<Poly, Poly> poly_divmod_monic(const Poly& a, const Poly& b) {
    if (b.empty() || b.back() != 1) throw std::invalid_argument("divisor must be monic");
    Poly rem = a, quot;
    if (a.size() >= b.size()) quot.assign(a.size() - b.size() + 1, 0);
    while (rem.size() >= b.size() && !(rem = poly_trim(std::move(rem))).empty() &&
           rem.size() >= b.size()) {
        std::size_t shift = rem.size() - b.size();
        Int c = rem.back();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    }
    return {poly_trim(std::move(quot)), poly_trim(std::move(rem))};
}

Int poly_eval(const Poly& p, const Int& x) {
    Int r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

IntMatrix poly_eval_matrix(const Poly& p, const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("poly_eval_matrix: non-square");
    IntMatrix r(m.rows(), m.rows());
    for (std::size_t i = p.size(); i-- > 0;) {
        r = r * m;
        for (std::size_t d = 0; d < m.rows(); ++d) r(d, d) += p[i];
    }
    return r;
}

std::string poly_to_string(const Poly& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        Int c = p[i];
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return first ? "0" : os.str();
}

Poly char_poly(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly: non-square");
    const std::size_t n = m.rows();
    Poly c(n + 1);
    c[n] = 1;
    IntMatrix mk(n, n);  // zero
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        for (std::size_t d = 0; d < n; ++d) mk(d, d) += c[n - k + 1];
        IntMatrix am = m * mk;
        Int tr = 0;
        for (std::size_t d = 0; d < n; ++d) tr += am(d, d);
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), tr.get_mpz_t(), Int(k).get_mpz_t());
        if (r != 0) throw InternalError("char_poly: inexact trace division");
        c[n - k] = -q;
    }
    return c;
}

namespace {

Int prime_factor_pollard(const Int& n);

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out[n] += 1;
        return;
    }
    Int f = prime_factor_pollard(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

Int prime_factor_pollard(const Int& n) {
    // Brent-style rho; n composite, odd, > 1.
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = abs(x - y);
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

}  // namespace

std::map<Int, unsigned> factorize(const Int& n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    std::map<Int, unsigned> out;
    Int m = abs(n);
    for (Int p = 2; p * p <= m && p < 100000; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            out[p] += 1;
            m /= p;
        }
    }
    if (m > 1) factor_into(m, out);
    return out;
}

namespace {

// Arithmetic in F_p[x]; coefficients kept in [0, p).
using FpPoly = std::vector<Int>;

FpPoly fp_trim(FpPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

FpPoly fp_of(const Poly& a, const Int& p) {
    FpPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_mod(r[i].get_mpz_t(), a[i].get_mpz_t(), p.get_mpz_t());
    }
    return fp_trim(std::move(r));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return fp_trim(std::move(r));
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, const Int& p) {
    FpPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    return fp_trim(std::move(r));
}

std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, const Int& p) {
    a = fp_trim(std::move(a));
    FpPoly q;
    if (b.empty()) throw std::invalid_argument("fp_divmod by zero");
    Int lead_inv;
    if (mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t()) == 0)
        throw InternalError("fp_divmod: non-invertible lead");
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Int c = a.back() * lead_inv % p;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = (a[shift + i] - c * b[i]) % p;
            if (a[shift + i] < 0) a[shift + i] += p;
        }
        a = fp_trim(std::move(a));
    }
    return {fp_trim(std::move(q)), std::move(a)};
}

// a*g + b*h = 1 in F_p[x], for coprime g, h.
void fp_bezout(const FpPoly& g, const FpPoly& h, const Int& p, FpPoly& a, FpPoly& b) {
    FpPoly r0 = g, r1 = h;
    FpPoly s0 = {Int(1)}, s1 = {}, t0 = {}, t1 = {Int(1)};
    while (!r1.empty()) {
        auto [q, r] = fp_divmod(r0, r1, p);
        FpPoly s2 = fp_add(s0, fp_mul(fp_mul(q, s1, p), {Int(p - 1)}, p), p);
        FpPoly t2 = fp_add(t0, fp_mul(fp_mul(q, t1, p), {Int(p - 1)}, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw InternalError("fp_bezout: inputs not coprime");
    Int inv;
    mpz_invert(inv.get_mpz_t(), r0[0].get_mpz_t(), p.get_mpz_t());
    a = fp_mul(s0, {inv}, p);
    b = fp_mul(t0, {inv}, p);
}

Poly reduce_mod(Poly a, const Int& m) {
    for (auto& c : a) {
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    return a;
}

Poly symmetric_reduce(Poly a, const Int& m) {
    a = reduce_mod(std::move(a), m);
    for (auto& c : a)
        if (c * 2 > m) c -= m;
    return poly_trim(std::move(a));
}

}  // namespace

std::optional<Poly> p_local_factor(const Poly& c, const Int& p) {
    if (c.empty() || c.back() != 1) throw std::invalid_argument("p_local_factor: c must be monic");
    const std::size_t n = c.size() - 1;
    FpPoly cbar = fp_of(c, p);
    std::size_t k = 0;
    while (k < cbar.size() && cbar[k] == 0) ++k;
    if (k == 0) return std::nullopt;  // no root divisible by p
    if (k >= n) {
        // c itself is congruent to x^n mod p.
        return c;
    }

    FpPoly gbar(k + 1);
    gbar[k] = 1;  // x^k
    FpPoly hbar(cbar.begin() + k, cbar.end());
    FpPoly a, b;
    fp_bezout(gbar, hbar, p, a, b);

    // Coefficient bound for any monic factor of c (coarse Mignotte-type).
    Int height = 1;
    for (const auto& ci : c) height += abs(ci);
    Int bound = (Int(1) << n) * height * 2;

    Poly g(gbar.begin(), gbar.end());
    Poly h(hbar.begin(), hbar.end());
    Int modulus = p;
    while (modulus <= bound) {
        Poly e = poly_sub(c, poly_mul(g, h));
        for (auto& ci : e) {
            Int q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ci.get_mpz_t(), modulus.get_mpz_t());
            if (r != 0) throw InternalError("hensel: drift from modulus");
            ci = q;
        }
        FpPoly ebar = fp_of(e, p);
        auto [q, dg] = fp_divmod(fp_mul(b, ebar, p), gbar, p);
        FpPoly dh = fp_add(fp_mul(a, ebar, p), fp_mul(q, hbar, p), p);
        if (!dg.empty() && dg.size() > k) throw InternalError("hensel: deg(dg) too big");
        if (!dh.empty() && dh.size() > n - k) throw InternalError("hensel: deg(dh) too big");
        Int next = modulus * p;
        g.resize(std::max(g.size(), dg.size()), 0);
        for (std::size_t i = 0; i < dg.size(); ++i) g[i] += modulus * dg[i];
        h.resize(std::max(h.size(), dh.size()), 0);
        for (std::size_t i = 0; i < dh.size(); ++i) h[i] += modulus * dh[i];
        g = reduce_mod(std::move(g), next);
        h = reduce_mod(std::move(h), next);
        g[k] = 1;
        h[n - k] = 1;
        modulus = next;
    }

    Poly cand = symmetric_reduce(g, modulus);
    if (cand.size() != k + 1 || cand.back() != 1) return std::nullopt;
    auto [quot, rem] = poly_divmod_monic(c, cand);
    if (!rem.empty()) return std::nullopt;  // true factor is not rational
    return cand;
}

}  // namespace tilecoh
