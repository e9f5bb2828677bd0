#include "tilecoh/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tilecoh/rational.hpp"

namespace tilecoh {

namespace {

constexpr double kPowerTol = 1e-12;
constexpr double kCircleTol = 1e-9;

Eigen::MatrixXd to_double(const IntMatrix& m) {
    Eigen::MatrixXd a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j).get_d();
    return a;
}

// Leading eigenvalue and positive eigenvector of a primitive nonnegative
// matrix: power iteration with Rayleigh-quotient refinement.
std::pair<double, Eigen::VectorXd> perron(const Eigen::MatrixXd& a) {
    const auto n = a.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 100000; ++it) {
        Eigen::VectorXd w = a * v;
        double next = v.dot(w);
        w.normalize();
        if ((w - v).norm() < kPowerTol && std::abs(next - lambda) < kPowerTol * std::abs(next)) {
            lambda = next;
            v = w;
            break;
        }
        lambda = next;
        v = w;
    }
    return {lambda, v};
}

std::string word_label(const Substitution1D& s, const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && s.alphabet[w[i - 1]].size() > 1) out += " ";
        out += s.alphabet[w[i]];
    }
    return out;
}

std::vector<Rat> rat_vec(const std::vector<Int>& v) {
    std::vector<Rat> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

// Class of an integer cocycle pushed into the eventual-range lattice of the
// free quotient; integral by construction (saturated bases throughout).
std::vector<Int> eventual_class(const DegreeResult& d, const EventualRange& er,
                                const IntMatrix& push_pow, const std::vector<Rat>& cocycle) {
    std::vector<Rat> y = free_class(d, cocycle);
    std::vector<Int> yi(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i].get_den() != 1)
            throw InternalError("eventual_class: non-integer class of an integer cocycle");
        yi[i] = y[i].get_num();
    }
    std::vector<Int> pushed = push_pow * yi;
    IntMatrix rhs(pushed.size(), 1);
    for (std::size_t i = 0; i < pushed.size(); ++i) rhs(i, 0) = pushed[i];
    IntMatrix z = solve_in_lattice(er.lattice_basis, rhs);
    return z.column_vec(0);
}

int occurrences_in(const Word& seq, const Word& w, std::size_t lo, std::size_t hi) {
    int count = 0;
    for (std::size_t p = lo; p < hi && p + w.size() <= seq.size(); ++p)
        if (std::equal(w.begin(), w.end(), seq.begin() + p)) ++count;
    return count;
}

}  // namespace

FrequencyReport frequencies(const Substitution1D& s,
                            const std::optional<std::vector<double>>& lengths) {
    s.validate();
    if (!primitivity(s))
        throw std::invalid_argument("frequencies: substitution is not primitive");
    const std::size_t n = s.size();
    IntMatrix a = subst_matrix(s);

    FrequencyReport rep;
    auto [lambda, freq_dir] = perron(to_double(a));
    auto [lambda_l, len_dir] = perron(to_double(a.transpose()));
    rep.perron = lambda;

    if (lengths) {
        if (lengths->size() != n)
            throw std::invalid_argument("frequencies: one length per letter required");
        for (double v : *lengths)
            if (!(v > 0)) throw std::invalid_argument("frequencies: lengths must be positive");
        rep.tile_lengths = *lengths;
    } else {
        double shortest = len_dir.minCoeff();
        rep.tile_lengths.resize(n);
        for (std::size_t i = 0; i < n; ++i) rep.tile_lengths[i] = len_dir(i) / shortest;
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += freq_dir(i) * rep.tile_lengths[i];
    rep.tile_freqs.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.tile_freqs[i] = freq_dir(i) / total;

    // Traces of the H^1 generators of the collared AP complex: pair each
    // integer generator cochain with the collared-letter frequency vector.
    ApComplex1D ap = build_ap_level(s, 1);
    CollaredAlphabet ca = collar_level(s, 1);
    CohomologyResult coh = complex_cohomology(ap.system);
    const DegreeResult& d1 = coh.degrees[1];

    auto [lam_c, freq_c] = perron(to_double(subst_matrix(ca.collared)));
    double total_c = 0.0;
    for (std::size_t e = 0; e < ca.collared.size(); ++e)
        total_c += freq_c(e) * rep.tile_lengths[ca.projection[e]];
    IntMatrix gens = d1.kernel * inverse_unimodular(d1.rel_u);
    for (std::size_t j = d1.rel_rank; j < gens.cols(); ++j) {
        double tr = 0.0;
        for (std::size_t e = 0; e < gens.rows(); ++e)
            tr += gens(e, j).get_d() * freq_c(e) / total_c;
        rep.trace_values.push_back(tr);
    }
    return rep;
}

RegularityReport exact_regularity(const Substitution1D& s, const std::vector<Word>& patches) {
    s.validate();
    if (patches.empty()) throw std::invalid_argument("exact_regularity: no patches given");
    std::size_t m = 1;
    for (const Word& p : patches) {
        if (p.empty()) throw std::invalid_argument("exact_regularity: empty patch");
        m = std::max(m, p.size());
        if (!allowed_words(s, p.size()).count(p))
            throw std::invalid_argument("exact_regularity: patch \"" + word_label(s, p) +
                                        "\" is not in the language");
    }

    const std::size_t r = m;
    ApComplex1D ap = build_ap_level(s, r);
    CohomologyResult coh = complex_cohomology(ap.system);
    const DegreeResult& d1 = coh.degrees[1];
    EventualRange er = eventual_range(d1.presentation.free_endo);
    IntMatrix push_pow = d1.presentation.free_endo.rows() > 0
                             ? d1.presentation.free_endo.pow(er.power)
                             : IntMatrix(0, 0);

    // Indicator cochain of a word anchored at the collared letter's core.
    auto indicator = [&](const Word& p) {
        std::vector<Rat> v(ap.letter_words.size());
        for (std::size_t e = 0; e < ap.letter_words.size(); ++e) {
            const Word& w = ap.letter_words[e];
            if (std::equal(p.begin(), p.end(), w.begin() + r)) v[e] = 1;
        }
        return v;
    };

    RegularityReport rep;
    rep.residual_radius = r;
    const std::size_t s_dim = er.lattice_basis.cols();

    std::vector<std::vector<Int>> basis_classes;
    RatMatrix chosen(s_dim, 0);
    auto try_add = [&](const Word& w, const std::vector<Int>& cls) {
        RatMatrix ext(s_dim, chosen.cols() + 1);
        for (std::size_t i = 0; i < s_dim; ++i) {
            for (std::size_t j = 0; j < chosen.cols(); ++j) ext(i, j) = chosen(i, j);
            ext(i, chosen.cols()) = Rat(cls[i]);
        }
        if (ext.rank() != chosen.cols() + 1) return false;
        chosen = std::move(ext);
        basis_classes.push_back(cls);
        rep.basis_words.push_back(w);
        rep.basis_names.push_back(word_label(s, w));
        return true;
    };

    for (std::size_t a = 0; a < s.size(); ++a) {
        Word w = {a};
        try_add(w, eventual_class(d1, er, push_pow, indicator(w)));
        if (chosen.cols() == s_dim) break;
    }
    std::vector<std::vector<Int>> patch_classes;
    for (const Word& p : patches) patch_classes.push_back(eventual_class(d1, er, push_pow, indicator(p)));
    for (std::size_t i = 0; i < patches.size() && chosen.cols() < s_dim; ++i)
        try_add(patches[i], patch_classes[i]);

    // Integer coefficients when the classes span a sublattice containing the
    // queried class (always attempted; exact rationals otherwise).
    IntMatrix basis_int(s_dim, basis_classes.size());
    for (std::size_t j = 0; j < basis_classes.size(); ++j) basis_int.set_column(j, basis_classes[j]);
    rep.integer_refined = d1.cech.is_free();

    for (std::size_t i = 0; i < patches.size(); ++i) {
        rep.patch_words.push_back(patches[i]);
        rep.patch_names.push_back(word_label(s, patches[i]));
        std::vector<Rat> coeff;
        bool integral_done = false;
        if (rep.integer_refined) {
            try {
                IntMatrix rhs(s_dim, 1);
                for (std::size_t k = 0; k < s_dim; ++k) rhs(k, 0) = patch_classes[i][k];
                IntMatrix c = solve_in_lattice(basis_int, rhs);
                coeff = rat_vec(c.column_vec(0));
                integral_done = true;
            } catch (const InternalError&) {
                // fall through to the rational solve
            }
        }
        if (!integral_done) {
            auto sol = solve_rational(basis_int, rat_vec(patch_classes[i]));
            if (!sol) throw InternalError("exact_regularity: patch class outside basis span");
            coeff = *sol;
            if (rep.integer_refined)
                for (const Rat& c : coeff)
                    if (c.get_den() != 1) rep.integer_refined = false;
        }
        rep.coefficients.push_back(std::move(coeff));
    }
    return rep;
}

EmpiricalCheck regularity_empirical_check(const Substitution1D& s, const RegularityReport& rep,
                                          std::size_t depth) {
    s.validate();
    Word seq = {0};
    for (std::size_t i = 0; i < depth; ++i) seq = s.apply(seq);

    // The cut point between aligned occurrences must sit in identical local
    // configurations out to the collaring radius: r + 1 letters on each side.
    const std::size_t lw = 2 * rep.residual_radius + 2;
    if (seq.size() < lw + 1)
        throw std::invalid_argument("regularity_empirical_check: sequence too short; increase depth");

    // Most frequent window word, smallest lexicographically among ties.
    std::map<Word, std::vector<std::size_t>> positions;
    for (std::size_t p = 0; p + lw <= seq.size(); ++p)
        positions[Word(seq.begin() + p, seq.begin() + p + lw)].push_back(p);
    const std::vector<std::size_t>* best = nullptr;
    Word best_word;
    for (const auto& [w, pos] : positions)
        if (!best || pos.size() > best->size()) {
            best = &pos;
            best_word = w;
        }
    if (!best || best->size() < 21)
        throw std::invalid_argument(
            "regularity_empirical_check: fewer than 21 window occurrences; increase depth");

    EmpiricalCheck out;
    out.window = best_word;
    const std::size_t off = rep.residual_radius + 1;
    for (std::size_t i = 0; i + 1 < best->size(); ++i) {
        const std::size_t lo = (*best)[i] + off, hi = (*best)[i + 1] + off;
        for (std::size_t q = 0; q < rep.patch_words.size(); ++q) {
            Rat predicted(0);
            for (std::size_t j = 0; j < rep.basis_words.size(); ++j)
                predicted += rep.coefficients[q][j] *
                             Rat(occurrences_in(seq, rep.basis_words[j], lo, hi));
            int actual = occurrences_in(seq, rep.patch_words[q], lo, hi);
            if (predicted != Rat(actual)) {
                std::ostringstream os;
                os << "region " << i << " [" << lo << ", " << hi << "): patch \""
                   << rep.patch_names[q] << "\" occurs " << actual << " times but the identity"
                   << " predicts " << predicted.get_str();
                out.counterexample = os.str();
                out.regions = i;
                return out;
            }
        }
        ++out.regions;
    }
    out.pass = true;
    return out;
}

DeformationReport deformations(const CohomologyResult& r, std::size_t d) {
    if (r.degrees.size() < 2) throw std::invalid_argument("deformations: H^1 not available");
    const IntMatrix& m = r.degrees[1].presentation.restricted_map;

    DeformationReport rep;
    rep.char_poly_int = m.rows() > 0 ? char_poly(m) : Poly{Int(1)};

    // Exact deflation of the roots +-1, then companion-matrix eigenvalues
    // polished by Newton iteration on the exact polynomial.
    Poly p = rep.char_poly_int;
    std::vector<std::complex<double>> roots;
    for (Int sgn : {Int(1), Int(-1)}) {
        for (;;) {
            if (poly_degree(p) == 0) break;
            auto [q, rem] = poly_divmod_monic(p, Poly{-sgn, Int(1)});
            if (!rem.empty()) break;
            roots.emplace_back(sgn.get_d(), 0.0);
            p = q;
        }
    }
    const std::size_t deg = poly_degree(p);
    if (deg > 0) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
        for (std::size_t i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
        for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i].get_d();
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
        for (std::size_t i = 0; i < deg; ++i) {
            std::complex<double> z = es.eigenvalues()(i);
            for (int it = 0; it < 50; ++it) {
                std::complex<double> val(0, 0), der(0, 0);
                for (std::size_t k = p.size(); k-- > 0;) {
                    der = der * z + val;
                    val = val * z + p[k].get_d();
                }
                if (std::abs(der) == 0.0) break;
                std::complex<double> step = val / der;
                z -= step;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
            }
            if (std::abs(z.imag()) < kCircleTol) z = {z.real(), 0.0};
            roots.push_back(z);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12) return ma > mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    std::size_t inside = 0, outside = 0;
    for (const auto& z : roots) {
        rep.spectrum.emplace_back(z.real(), z.imag());
        double mod = std::abs(z);
        if (mod < 1.0 - kCircleTol) ++inside;
        if (mod > 1.0 + kCircleTol) ++outside;
    }
    rep.an_dimension = d * inside;
    rep.pisot = (outside == 1) && (inside + outside == roots.size()) && !roots.empty();
    if (roots.size() != r.degrees[1].presentation.eventual_rank)
        throw InternalError("deformations: root multiplicity count mismatch");
    return rep;
}

}  // namespace tilecoh
