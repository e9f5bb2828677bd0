// Acceptance harness: one pass/fail line per criterion, exit code = number
// of failed criteria.

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "tilecoh/analysis.hpp"
#include "tilecoh/subst2d.hpp"

using namespace tilecoh;

namespace {

Substitution1D fib() { return {{"a", "b"}, {{0, 1}, {0}}}; }
Substitution1D thue_morse() { return {{"a", "b"}, {{0, 1}, {1, 0}}}; }
Substitution1D period_doubling() { return {{"a", "b"}, {{0, 1}, {0, 0}}}; }
Substitution1D pinwheel_line() { return {{"a", "b"}, {{0, 0, 1, 1, 0}, {1, 0, 0, 1, 1}}}; }

BlockSubstitution2D three_square() {
    return {{"A", "B", "C"}, 2, {{{0, 0}, {1, 2}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 2}}}};
}

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

struct Harness {
    int failures = 0;

    void run(int number, const std::string& title, const std::function<void()>& body) {
        try {
            body();
            std::cout << "PASS  criterion " << number << ": " << title << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL  criterion " << number << ": " << title << " -- " << e.what()
                      << "\n";
        }
    }
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

std::string h(const CohomologyResult& r, std::size_t k) {
    return r.degrees[k].cech.to_string();
}

}  // namespace

int main() {
    Harness t;

    t.run(1, "Fibonacci: H^0 = Z, H^1 = Z^2 via BD and collared AP, 4x4 eigenstructure", [] {
        Cech1DResult r = cech_1d(fib());
        expect(r.agree, "pipelines disagree");
        expect(h(r.bd, 0) == "Z" && h(r.ap, 0) == "Z", "H^0 != Z");
        expect(h(r.bd, 1) == "Z^2" && h(r.ap, 1) == "Z^2", "H^1 != Z^2");
        ApComplex1D ap = build_ap_level(fib(), 1);
        expect(ap.system.dims[1] == 4, "collared AP does not have 4 edges");
        expect(rank(ap.system.endo[1]) == 3, "edge action rank != 3");
        // Eigenvalues (1 +- sqrt 5)/2, -1, 0: char poly x(x+1)(x^2 - x - 1).
        expect(char_poly(ap.system.endo[1]) == Poly{0, -1, -2, 0, 1},
               "edge action eigenvalues differ");
    });

    t.run(2, "Thue-Morse: H^1 = Z (+) Z[1/2], BD diagnostics k = l = 1", [] {
        Cech1DResult r = cech_1d(thue_morse());
        expect(r.agree, "pipelines disagree");
        expect(h(r.bd, 1) == "Z (+) Z[1/2]", "H^1 != Z (+) Z[1/2], got " + h(r.bd, 1));
        expect(r.diagnostics.k == 1 && r.diagnostics.ell == 1, "k, l != 1, 1");
    });

    t.run(3, "Period-doubling: H^1 = Z (+) Z[1/2]", [] {
        Cech1DResult r = cech_1d(period_doubling());
        expect(r.agree, "pipelines disagree");
        expect(h(r.bd, 1) == "Z (+) Z[1/2]", "H^1 != Z (+) Z[1/2], got " + h(r.bd, 1));
    });

    t.run(4, "Dyadic solenoid via custom complex: H^0 = Z, H^1 = Z[1/2]", [] {
        CochainSystem s = graph_system(1, {GraphEdge{0, 0}}, {0}, {{1, 1}});
        CohomologyResult r = complex_cohomology(s);
        expect(h(r, 0) == "Z", "H^0 != Z");
        expect(h(r, 1) == "Z[1/2]", "H^1 != Z[1/2], got " + h(r, 1));
    });

    t.run(5, "Symmetric-line substitution aabba/baabb: H^1 = Z^2 (+) Z[1/5]", [] {
        Cech1DResult r = cech_1d(pinwheel_line());
        expect(r.agree, "pipelines disagree");
        expect(h(r.bd, 1) == "Z^2 (+) Z[1/5]", "H^1 != Z^2 (+) Z[1/5], got " + h(r.bd, 1));
    });

    t.run(6, "Eyeglasses graph aa/ab/cd/dd: H^0 = Z, H^1 = Z[1/2]^2", [] {
        CochainSystem s = graph_system(
            3, {GraphEdge{0, 0}, GraphEdge{0, 1}, GraphEdge{1, 2}, GraphEdge{2, 2}}, {0, 1, 2},
            {{1, 1}, {1, 2}, {3, 4}, {4, 4}});
        CohomologyResult r = complex_cohomology(s);
        expect(h(r, 0) == "Z", "H^0 != Z");
        expect(h(r, 1) == "Z[1/2]^2", "H^1 != Z[1/2]^2, got " + h(r, 1));
    });

    t.run(7, "Three-square 2D: Z, Z[1/2]^2, Z^2 (+) Z[1/2] scaling by 4", [] {
        Cech2DResult r = cech_2d(three_square());
        expect(h(r.ap, 0) == "Z", "H^0 != Z");
        expect(h(r.ap, 1) == "Z[1/2]^2", "H^1 != Z[1/2]^2, got " + h(r.ap, 1));
        expect(h(r.ap, 2) == "Z^2 (+) Z[1/2]", "H^2 != Z^2 (+) Z[1/2], got " + h(r.ap, 2));
        const auto& top = r.ap.degrees[2].cech;
        expect(top.certified && top.localized.size() == 1 && top.localized[0].scale == 4,
               "H^2 dyadic summand does not scale by 4");
    });

    t.run(8, "Negative control: uncollared Thue-Morse gives Z[1/2], flagged diagnostic-only", [] {
        ApComplex1D ap = build_ap(thue_morse(), false);
        expect(ap.diagnostic_only, "uncollared complex not flagged diagnostic-only");
        CohomologyResult r0 = complex_cohomology(ap.system);
        CohomologyResult r1 = complex_cohomology(build_ap(thue_morse(), true).system);
        expect(h(r0, 1) == "Z[1/2]", "uncollared H^1 != Z[1/2], got " + h(r0, 1));
        expect(!dlim_equal_invariants(r0.degrees[1].cech, r1.degrees[1].cech),
               "uncollared and collared values do not differ");
    });

    t.run(9, "Fibonacci traces: phi/(phi^2+1) and 1/(phi^2+1) to 1e-9", [] {
        FrequencyReport r = frequencies(fib(), std::vector<double>{kPhi, 1.0});
        expect(std::abs(r.tile_freqs[0] - kPhi / (kPhi * kPhi + 1)) < 1e-9, "trace(i_a) off");
        expect(std::abs(r.tile_freqs[1] - 1.0 / (kPhi * kPhi + 1)) < 1e-9, "trace(i_b) off");
    });

    t.run(10, "Fibonacci deformations: spectrum {phi, 1-phi} to 1e-10, an-dim 1, Pisot", [] {
        CohomologyResult r = complex_cohomology(build_ap_level(fib(), 1).system);
        DeformationReport rep = deformations(r, 1);
        expect(rep.spectrum.size() == 2, "spectrum size != 2");
        expect(std::abs(rep.spectrum[0].first - kPhi) < 1e-10 && rep.spectrum[0].second == 0.0,
               "phi off");
        expect(std::abs(rep.spectrum[1].first - (1.0 - kPhi)) < 1e-10 &&
                   rep.spectrum[1].second == 0.0,
               "1 - phi off");
        expect(rep.an_dimension == 1, "an-dimension != 1");
        expect(rep.pisot, "Pisot flag not set");
    });

    t.run(11, "Exact regularity: TM [i_a] = [i_b]; Fibonacci [i_ab] = [i_b]; >= 20 regions", [] {
        RegularityReport tm = exact_regularity(thue_morse(), {{0}, {1}});
        expect(tm.coefficients[0] == tm.coefficients[1], "TM letter classes differ");
        RegularityReport fb = exact_regularity(fib(), {{0, 1}, {1}});
        expect(fb.coefficients[0] == fb.coefficients[1], "[i_ab] != [i_b] for Fibonacci");
        for (const auto& s : {fib(), thue_morse()}) {
            RegularityReport rep =
                exact_regularity(s, std::vector<Word>{{0, 1}});
            EmpiricalCheck check = regularity_empirical_check(s, rep, 12);
            expect(check.pass, "empirical count identity failed: " + check.counterexample);
            expect(check.regions >= 20, "fewer than 20 regions checked");
        }
    });

    t.run(12, "Property suites: SNF oracle, random BD/AP agreement, Euler, dlim conjugation", [] {
        std::mt19937 rng(20240914);
        // (a) SNF against the gcd-of-minors invariant (spot: dividing chain +
        // unimodular transform recomposition) on 500 random matrices.
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        for (int trial = 0; trial < 500; ++trial) {
            IntMatrix m = test::random_matrix(rng, dim(rng), dim(rng), -9, 9);
            auto s = smith(m);
            expect(s.U * m * s.V == s.S, "SNF recomposition failed");
            Int prev = 1;
            for (const auto& d : s.diagonal()) {
                expect(d >= 0 && (d == 0 || d % prev == 0), "SNF dividing chain broken");
                if (d != 0) prev = d;
            }
        }
        // (e) dlim invariants under conjugation, 200 random endomorphisms.
        std::uniform_int_distribution<std::size_t> dim4(1, 4);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = dim4(rng);
            IntMatrix a = test::random_matrix(rng, n, n, -3, 3);
            IntMatrix p = test::random_unimodular(rng, n);
            GroupDescription ga = dlim_free(a);
            GroupDescription gb = dlim_free(p * a * inverse_unimodular(p));
            expect(ga.to_string() == gb.to_string(), "dlim not conjugation invariant");
        }
        // (b)+(c)+(d): BD/collared-AP agreement on 100 random primitive
        // substitutions; every build re-asserts delta^2 = 0, chain-map
        // commutation and the Euler identity internally.
        std::uniform_int_distribution<std::size_t> nletters(2, 4);
        int done = 0;
        while (done < 100) {
            std::uniform_int_distribution<std::size_t> len(1, 5);
            Substitution1D s;
            std::size_t n = nletters(rng);
            std::uniform_int_distribution<std::size_t> letter(0, n - 1);
            for (std::size_t i = 0; i < n; ++i)
                s.alphabet.push_back(std::string(1, char('a' + i)));
            s.rules.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = len(rng); k > 0; --k) s.rules[i].push_back(letter(rng));
            if (!primitivity(s)) continue;
            Cech1DResult r = cech_1d(s);
            expect(r.agree, "random substitution: pipelines disagree");
            expect(r.bd.euler_cells == r.bd.euler_cohomology &&
                       r.ap.euler_cells == r.ap.euler_cohomology,
                   "Euler identity violated");
            ++done;
        }
    });

    std::cout << (t.failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
    return t.failures;
}
