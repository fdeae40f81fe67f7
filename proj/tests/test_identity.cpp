#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "eigenid/eigenid.hpp"
#include "oracles.hpp"

using namespace eigenid;

namespace {

HermitianMatrix golden() {
    return validate_hermitian(ComplexMatrix::from_rows(
        {{1.0, 1.0, -1.0}, {1.0, 3.0, 1.0}, {-1.0, 1.0, 3.0}}));
}

const double kGoldenTable[3][3] = {
    {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
    {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
    {0.0, 0.5, 0.5},
};

} // namespace

TEST_CASE("worked example: minor spectra interlace as expected") {
    HermitianMatrix a = golden();
    std::vector<Spectrum> minors = minor_spectra(a);
    REQUIRE(std::abs(minors[0].value(1) - 2.0) < 1e-12);
    REQUIRE(std::abs(minors[0].value(2) - 4.0) < 1e-12);
    const double r2 = std::sqrt(2.0);
    for (std::size_t j : {std::size_t{1}, std::size_t{2}}) {
        REQUIRE(std::abs(minors[j].value(1) - (2.0 - r2)) < 1e-12);
        REQUIRE(std::abs(minors[j].value(2) - (2.0 + r2)) < 1e-12);
    }
}

TEST_CASE("worked example: all nine squared magnitudes") {
    HermitianMatrix a = golden();
    Spectrum sA = spectrum_of(a);
    std::vector<Spectrum> minors = minor_spectra(a);
    double tol = default_multiplicity_tol(sA);
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            double paired = magnitude_sq(sA, minors[j - 1], i, tol);
            double quotient = magnitude_sq_charpoly(sA, minors[j - 1], i);
            REQUIRE(std::abs(paired - kGoldenTable[i - 1][j - 1]) < 1e-12);
            REQUIRE(std::abs(quotient - kGoldenTable[i - 1][j - 1]) < 1e-12);
        }
}

TEST_CASE("paired magnitudes match the decomposition oracle on random input") {
    std::mt19937_64 g(9001);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + rep % 9;
        HermitianMatrix a = oracles::random_separated(g, n, 1e-3, rep % 2 == 0);
        Spectrum sA = spectrum_of(a);
        std::vector<Spectrum> minors = minor_spectra(a);
        EigenDecomposition ed = eigh(a);
        double tol = default_multiplicity_tol(sA);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) {
                double want = std::norm(ed.vectors(j - 1, i - 1));
                REQUIRE(std::abs(magnitude_sq(sA, minors[j - 1], i, tol) - want) < 1e-7);
                REQUIRE(std::abs(magnitude_sq_charpoly(sA, minors[j - 1], i) - want) < 1e-7);
            }
    }
}

TEST_CASE("magnitude computation rejects malformed inputs") {
    Spectrum sA(std::vector<double>{0.0, 1.0, 3.0});
    Spectrum bad_size(std::vector<double>{0.5});
    double tol = default_multiplicity_tol(sA);
    REQUIRE_THROWS_AS(magnitude_sq(sA, bad_size, 1, tol), DimensionMismatch);

    Spectrum ok(std::vector<double>{0.5, 2.0});
    REQUIRE_THROWS_AS(magnitude_sq(sA, ok, 0, tol), IndexOutOfRange);
    REQUIRE_THROWS_AS(magnitude_sq(sA, ok, 4, tol), IndexOutOfRange);

    // minor spectrum violating interlacing by far more than the slack
    Spectrum outside(std::vector<double>{-5.0, 2.0});
    REQUIRE_THROWS_AS(magnitude_sq(sA, outside, 1, tol), InterlacingViolation);

    // repeated eigenvalue: the simple-eigenvalue paths refuse
    Spectrum rep(std::vector<double>{1.0, 1.0, 2.0});
    Spectrum repminor(std::vector<double>{1.0, 1.5});
    REQUIRE_THROWS_AS(magnitude_sq(rep, repminor, 1, default_multiplicity_tol(rep)),
                      DegenerateEigenvalue);
    REQUIRE_THROWS_AS(magnitude_sq_charpoly(rep, repminor, 2), DegenerateEigenvalue);
}

TEST_CASE("group mass of a repeated eigenvalue matches the oracle") {
    std::mt19937_64 g(424242);
    for (int rep = 0; rep < 15; ++rep) {
        std::size_t n = 3 + rep % 6;
        HermitianMatrix a = oracles::plant_spectrum(g, oracles::doubled_spectrum(g, n));
        MagnitudeTable identity_path = magnitude_table(a);
        MagnitudeTable oracle_path = magnitude_table_oracle(a);
        REQUIRE(identity_path.has_degenerate_groups());
        REQUIRE(identity_path.grouping().groups().size() ==
                oracle_path.grouping().groups().size());
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j)
                REQUIRE(std::abs(identity_path.value(i, j) - oracle_path.value(i, j)) < 1e-7);
    }
}

TEST_CASE("a triple eigenvalue is handled as one group") {
    std::mt19937_64 g(55);
    std::vector<double> lam{1.0, 1.0, 1.0, 4.0, 7.0};
    HermitianMatrix a = oracles::plant_spectrum(g, lam);
    MagnitudeTable t = magnitude_table(a);
    REQUIRE(t.grouping().groups().size() == 3);
    REQUIRE(t.grouping().groups()[0].multiplicity() == 3);
    MagnitudeTable o = magnitude_table_oracle(a);
    for (std::size_t i = 1; i <= 5; ++i)
        for (std::size_t j = 1; j <= 5; ++j)
            REQUIRE(std::abs(t.value(i, j) - o.value(i, j)) < 1e-7);
    for (std::size_t j = 1; j <= 5; ++j)
        REQUIRE(t.flag(1, j) == MagnitudeFlag::degenerate_group_mass);
}

TEST_CASE("singleton groups reduce the residue form to the paired form") {
    std::mt19937_64 g(77);
    HermitianMatrix a = oracles::random_separated(g, 6, 1e-3);
    Spectrum sA = spectrum_of(a);
    std::vector<Spectrum> minors = minor_spectra(a);
    double tol = default_multiplicity_tol(sA);
    for (std::size_t i = 1; i <= 6; ++i) {
        MultiplicityGroup single{i, i, sA.value(i)};
        for (std::size_t j = 1; j <= 6; ++j)
            REQUIRE(magnitude_group(sA, minors[j - 1], single, tol) ==
                    magnitude_sq(sA, minors[j - 1], i, tol));
    }
}

TEST_CASE("magnitude table carries values and provenance flags") {
    MagnitudeTable t = magnitude_table(golden());
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j)
            REQUIRE(std::abs(t.value(i, j) - kGoldenTable[i - 1][j - 1]) < 1e-12);
    REQUIRE(t.flag(3, 1) == MagnitudeFlag::exact_zero);
    REQUIRE(t.value(3, 1) == 0.0);
    REQUIRE(t.flag(1, 1) == MagnitudeFlag::computed);
    REQUIRE_FALSE(t.has_degenerate_groups());
    REQUIRE_THROWS_AS(t.value(0, 1), IndexOutOfRange);
    REQUIRE_THROWS_AS(t.value(1, 4), IndexOutOfRange);

    // 1x1 matrix: the single component carries everything
    HermitianMatrix one = validate_hermitian(ComplexMatrix::from_rows({{5.0}}));
    MagnitudeTable t1 = magnitude_table(one);
    REQUIRE(t1.value(1, 1) == 1.0);
    REQUIRE(t1.flag(1, 1) == MagnitudeFlag::computed);
}

TEST_CASE("threaded minor solves are bitwise deterministic") {
    std::mt19937_64 g(31337);
    HermitianMatrix a = oracles::random_hermitian(g, 9, true);
    std::vector<Spectrum> st1 = minor_spectra(a, 1);
    std::vector<Spectrum> st4 = minor_spectra(a, 4);
    std::vector<Spectrum> st9 = minor_spectra(a, 9);
    REQUIRE(st1.size() == st4.size());
    for (std::size_t j = 0; j < st1.size(); ++j)
        for (std::size_t k = 1; k <= st1[j].size(); ++k) {
            REQUIRE(st1[j].value(k) == st4[j].value(k));
            REQUIRE(st1[j].value(k) == st9[j].value(k));
        }
}

TEST_CASE("cross terms reproduce products of eigenvector components") {
    HermitianMatrix a = golden();
    Spectrum sA = spectrum_of(a);

    // v_1 = (2, -1, 1)/sqrt(6): products are known exactly
    CrossTerm c12 = cross_term(a, sA, 1, 1, 2);
    REQUIRE(std::abs(c12.value - cdouble{-2.0 / 6.0}) < 1e-12);
    CrossTerm c13 = cross_term(a, sA, 1, 1, 3);
    REQUIRE(std::abs(c13.value - cdouble{2.0 / 6.0}) < 1e-12);
    CrossTerm c23 = cross_term(a, sA, 1, 2, 3);
    REQUIRE(std::abs(c23.value - cdouble{-1.0 / 6.0}) < 1e-12);

    // diagonal case reduces to the squared magnitude
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            CrossTerm d = cross_term(a, sA, i, j, j);
            REQUIRE(d.value.imag() == 0.0);
            REQUIRE(std::abs(d.value.real() - kGoldenTable[i - 1][j - 1]) < 1e-12);
        }

    std::mt19937_64 g(606);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 2 + rep % 6;
        HermitianMatrix r = oracles::random_separated(g, n, 1e-3, true);
        Spectrum s = spectrum_of(r);
        EigenDecomposition ed = eigh(r);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t jp = 1; jp <= n; ++jp) {
                    cdouble want = ed.vectors(j - 1, i - 1) * std::conj(ed.vectors(jp - 1, i - 1));
                    CrossTerm ct = cross_term(r, s, i, j, jp);
                    REQUIRE(std::abs(ct.value - want) < 1e-8);
                }
    }

    Spectrum rep2(std::vector<double>{1.0, 1.0});
    HermitianMatrix eye2 = validate_hermitian(ComplexMatrix::identity(2));
    REQUIRE_THROWS_AS(cross_term(eye2, rep2, 1, 1, 2), DegenerateEigenvalue);
}

TEST_CASE("block split rearranges the chosen coordinate to the corner") {
    HermitianMatrix a = golden();
    BlockSplit s = block_split(a, 2);
    REQUIRE(s.a11 == 3.0);
    REQUIRE(s.x.size() == 2);
    REQUIRE(s.x[0] == cdouble{1.0});
    REQUIRE(s.x[1] == cdouble{1.0});
    REQUIRE(s.m1(0, 0) == cdouble{1.0});
    REQUIRE(s.m1(0, 1) == cdouble{-1.0});
    REQUIRE(s.m1(1, 1) == cdouble{3.0});
    REQUIRE_THROWS_AS(block_split(a, 0), IndexOutOfRange);
    REQUIRE_THROWS_AS(block_split(a, 4), IndexOutOfRange);
}

TEST_CASE("resolvent form agrees with the paired form away from minor spectra") {
    HermitianMatrix a = golden();
    Spectrum sA = spectrum_of(a);
    REQUIRE(std::abs(magnitude_alternate(a, sA.value(1), 1) - 2.0 / 3.0) < 1e-12);
    REQUIRE(std::abs(magnitude_alternate(a, sA.value(2), 2) - 1.0 / 3.0) < 1e-12);

    // lambda_3 = 4 collides with an eigenvalue of the first minor
    REQUIRE_THROWS_AS(magnitude_alternate(a, sA.value(3), 1), SingularShift);

    // an explicit wide gap tolerance forces the same refusal elsewhere
    REQUIRE_THROWS_AS(magnitude_alternate(a, sA.value(1), 1, 10.0), SingularShift);

    std::mt19937_64 g(707);
    for (int rep = 0; rep < 12; ++rep) {
        std::size_t n = 2 + rep % 7;
        HermitianMatrix r = oracles::random_separated(g, n, 1e-3, rep % 2 == 1);
        Spectrum s = spectrum_of(r);
        EigenDecomposition ed = eigh(r);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) {
                double want = std::norm(ed.vectors(j - 1, i - 1));
                double got;
                try {
                    got = magnitude_alternate(r, s.value(i), j);
                } catch (const SingularShift&) {
                    continue; // a vanishing component puts the shift on the minor spectrum
                }
                REQUIRE(std::abs(got - want) < 1e-7);
            }
    }
}

TEST_CASE("tridiagonal block recurrence evaluates characteristic polynomials") {
    SymmetricTridiagonal t({1.0, 2.0, 3.0}, {0.5, 0.25});

    // empty block
    REQUIRE(paige_char_recurrence(t, 0, 0, 7.0) == 1.0);
    REQUIRE(paige_char_recurrence(t, 2, 2, 7.0) == 1.0);

    // single entry
    REQUIRE(paige_char_recurrence(t, 0, 1, 7.0) == 6.0);
    REQUIRE(paige_char_recurrence(t, 2, 3, 7.0) == 4.0);

    // the full-range recurrence matches the product over eigenvalues
    Spectrum sT = eigvals_tridiag(t);
    for (double probe : {-1.0, 0.7, 5.0}) {
        double want = char_poly_eval(sT, probe).real();
        REQUIRE(std::abs(paige_char_recurrence(t, 0, 3, probe) - want) <=
                1e-11 * std::max(1.0, std::abs(want)));
    }

    REQUIRE_THROWS_AS(paige_char_recurrence(t, 2, 1, 0.0), IndexOutOfRange);
    REQUIRE_THROWS_AS(paige_char_recurrence(t, 0, 4, 0.0), IndexOutOfRange);
}

TEST_CASE("tridiagonal magnitudes on the exactly solvable 2x2") {
    SymmetricTridiagonal t({0.0, 0.0}, {1.0});
    Spectrum sT = eigvals_tridiag(t);
    REQUIRE(std::abs(sT.value(1) + 1.0) < 1e-14);
    REQUIRE(std::abs(sT.value(2) - 1.0) < 1e-14);
    for (std::size_t i : {std::size_t{1}, std::size_t{2}})
        for (std::size_t r : {std::size_t{1}, std::size_t{2}})
            REQUIRE(std::abs(paige_magnitude(t, sT, i, r) - 0.5) < 1e-14);

    // the eigenvector of mu = -1 is (1, -1)/sqrt(2), so the signed product
    // is negative there and positive at mu = +1
    REQUIRE(std::abs(paige_cross(t, sT, 1, 1, 2) + 0.5) < 1e-14);
    REQUIRE(std::abs(paige_cross(t, sT, 2, 1, 2) - 0.5) < 1e-14);
}

TEST_CASE("tridiagonal magnitudes match the decomposition oracle") {
    std::mt19937_64 g(808);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 2 + rep * 3;
        SymmetricTridiagonal t = oracles::random_tridiagonal(g, n);
        Spectrum sT = eigvals_tridiag(t);
        EigenDecomposition ed = eigh(validate_hermitian(t.dense()));
        for (std::size_t i = 1; i <= n; ++i) {
            double row_sum = 0.0;
            for (std::size_t r = 1; r <= n; ++r) {
                double q = paige_magnitude(t, sT, i, r);
                row_sum += q;
                REQUIRE(std::abs(q - std::norm(ed.vectors(r - 1, i - 1))) < 1e-8);
            }
            REQUIRE(std::abs(row_sum - 1.0) < 1e-8);
        }
        // signed products are invariant under the column-sign ambiguity
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t r = 1; r < n; ++r)
                for (std::size_t s = r + 1; s <= n; ++s) {
                    double want = ed.vectors(r - 1, i - 1).real() * ed.vectors(s - 1, i - 1).real();
                    REQUIRE(std::abs(paige_cross(t, sT, i, r, s) - want) < 1e-8);
                }
    }
}

TEST_CASE("tridiagonal paths reject invalid indices and repeated eigenvalues") {
    SymmetricTridiagonal t({1.0, 2.0}, {0.5});
    Spectrum sT = eigvals_tridiag(t);
    REQUIRE_THROWS_AS(paige_magnitude(t, sT, 1, 0), IndexOutOfRange);
    REQUIRE_THROWS_AS(paige_magnitude(t, sT, 1, 3), IndexOutOfRange);
    REQUIRE_THROWS_AS(paige_cross(t, sT, 1, 2, 2), InvariantViolation);
    REQUIRE_THROWS_AS(paige_cross(t, sT, 1, 2, 1), InvariantViolation);

    // decoupled duplicate diagonal: repeated eigenvalue
    SymmetricTridiagonal dup({1.0, 1.0}, {0.0});
    Spectrum sdup = eigvals_tridiag(dup);
    REQUIRE_THROWS_AS(paige_magnitude(dup, sdup, 1, 1), DegenerateEigenvalue);
    REQUIRE_THROWS_AS(paige_cross(dup, sdup, 1, 1, 2), DegenerateEigenvalue);
}
