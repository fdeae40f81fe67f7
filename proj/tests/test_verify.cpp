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

MagnitudeTable tampered_table(const HermitianMatrix& a, std::size_t i, std::size_t j,
                              double value) {
    MagnitudeTable t = magnitude_table(a);
    const std::size_t n = t.n();
    std::vector<double> values(n * n);
    std::vector<MagnitudeFlag> flags(n * n);
    for (std::size_t r = 1; r <= n; ++r)
        for (std::size_t c = 1; c <= n; ++c) {
            values[(r - 1) * n + (c - 1)] = t.value(r, c);
            flags[(r - 1) * n + (c - 1)] = t.flag(r, c);
        }
    values[(i - 1) * n + (j - 1)] = value;
    return MagnitudeTable(t.spectrum(), t.grouping(), std::move(values), std::move(flags));
}

} // namespace

TEST_CASE("check reports pair deviation with tolerance") {
    CheckReport ok = make_report("x", 1e-12, 1e-9);
    REQUIRE(ok.passed);
    CheckReport bad = make_report("x", 2e-9, 1e-9);
    REQUIRE_FALSE(bad.passed);
    CheckReport edge = make_report("x", 1e-9, 1e-9);
    REQUIRE(edge.passed);

    REQUIRE(to_json_line(make_report("interlacing", 0.5, 0.25)) ==
            "{\"check\":\"interlacing\",\"passed\":false,\"max_abs_deviation\":0.5,"
            "\"tolerance\":0.25}");
}

TEST_CASE("interlacing check accepts minors and rejects corrupted spectra") {
    HermitianMatrix a = golden();
    Spectrum sA = spectrum_of(a);
    for (const Spectrum& m : minor_spectra(a)) REQUIRE(check_interlacing(sA, m).passed);

    Spectrum corrupt(std::vector<double>{-1.0, 2.0});
    CheckReport r = check_interlacing(sA, corrupt);
    REQUIRE_FALSE(r.passed);
    REQUIRE_FALSE(r.witnesses.empty());

    REQUIRE_THROWS_AS(check_interlacing(sA, sA), DimensionMismatch);
}

TEST_CASE("normalization check sums rows and columns") {
    REQUIRE(check_normalization(magnitude_table(golden())).passed);

    CheckReport r = check_normalization(tampered_table(golden(), 3, 2, 0.0));
    REQUIRE_FALSE(r.passed);
    REQUIRE(r.max_abs_deviation > 0.4);

    // degenerate input: group rows sum to the multiplicity
    std::mt19937_64 g(12);
    HermitianMatrix dup = oracles::plant_spectrum(g, {1.0, 1.0, 5.0, 8.0});
    REQUIRE(check_normalization(magnitude_table(dup)).passed);
}

TEST_CASE("derivative-sum identity holds at arbitrary probes") {
    HermitianMatrix a = golden();
    Spectrum sA = spectrum_of(a);
    std::vector<Spectrum> minors = minor_spectra(a);
    for (cdouble probe : {cdouble{0.5}, cdouble{-3.0}, cdouble{17.0}, cdouble{1.0, 2.0}})
        REQUIRE(check_jacobi_formula(sA, minors, probe).passed);

    // a wrong minor spectrum breaks the identity
    std::vector<Spectrum> wrong = minors;
    wrong[0] = Spectrum(std::vector<double>{0.0, 1.0});
    REQUIRE_FALSE(check_jacobi_formula(sA, wrong, cdouble{0.5}).passed);

    REQUIRE_THROWS_AS(check_jacobi_formula(sA, {minors[0]}, cdouble{0.0}), DimensionMismatch);

    // 1x1: the empty minor spectrum contributes the constant polynomial
    Spectrum s1(std::vector<double>{4.0});
    REQUIRE(check_jacobi_formula(s1, {Spectrum{}}, cdouble{2.5}).passed);
}

TEST_CASE("symmetric function identity relates matrix and minor coefficients") {
    HermitianMatrix a = golden();
    Spectrum sA = spectrum_of(a);
    std::vector<Spectrum> minors = minor_spectra(a);
    REQUIRE(check_symmetric_poly_relation(sA, minors, 1).passed);
    REQUIRE(check_symmetric_poly_relation(sA, minors, 2).passed);
    REQUIRE_THROWS_AS(check_symmetric_poly_relation(sA, minors, 0), IndexOutOfRange);
    REQUIRE_THROWS_AS(check_symmetric_poly_relation(sA, minors, 3), IndexOutOfRange);

    std::vector<Spectrum> wrong = minors;
    wrong[2] = Spectrum(std::vector<double>{1.0, 1.0});
    REQUIRE_FALSE(check_symmetric_poly_relation(sA, wrong, 1).passed);
}

TEST_CASE("moment identity ties diagonal powers to the magnitude table") {
    HermitianMatrix a = golden();
    MagnitudeTable t = magnitude_table(a);
    for (std::size_t m = 0; m <= 4; ++m) REQUIRE(check_moment_identity(a, t, m).passed);

    REQUIRE_FALSE(check_moment_identity(a, tampered_table(a, 2, 2, 0.9), 2).passed);

    std::mt19937_64 g(13);
    HermitianMatrix dup = oracles::plant_spectrum(g, {2.0, 2.0, 5.0});
    REQUIRE_THROWS_AS(check_moment_identity(dup, magnitude_table(dup), 1), DegenerateSpectrum);
}

TEST_CASE("resolvent check needs pole-safe probes") {
    HermitianMatrix a = golden();
    Spectrum sA = spectrum_of(a);
    std::vector<Spectrum> minors = minor_spectra(a);
    MagnitudeTable t = magnitude_table(a);
    for (std::size_t j = 1; j <= 3; ++j) {
        REQUIRE(check_resolvent_identity(sA, minors[j - 1], t, j, cdouble{1.7}).passed);
        REQUIRE(check_resolvent_identity(sA, minors[j - 1], t, j, cdouble{-2.0, 1.0}).passed);
    }
    REQUIRE_THROWS_AS(check_resolvent_identity(sA, minors[0], t, 1, cdouble{3.0 + 1e-9}),
                      ProbeTooCloseToPole);
    REQUIRE_FALSE(
        check_resolvent_identity(sA, minors[0], tampered_table(a, 1, 1, 0.9), 1, cdouble{1.7})
            .passed);
}

TEST_CASE("perturbation slopes approximate squared magnitudes") {
    HermitianMatrix a = golden();
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) REQUIRE(check_perturbation(a, i, j).passed);

    std::mt19937_64 g(14);
    HermitianMatrix dup = oracles::plant_spectrum(g, {2.0, 2.0, 5.0});
    REQUIRE_THROWS_AS(check_perturbation(dup, 1, 1), DegenerateEigenvalue);
    REQUIRE_THROWS_AS(check_perturbation(a, 0, 1), IndexOutOfRange);
}

TEST_CASE("determinant product identity for a singular matrix") {
    HermitianMatrix a = golden(); // lambda_1 = 0 exactly
    std::mt19937_64 g(15);
    EigenDecomposition ed = eigh(a);
    std::vector<cdouble> v(3);
    for (std::size_t r = 0; r < 3; ++r) v[r] = ed.vectors(r, 0);
    for (int rep = 0; rep < 5; ++rep) {
        ComplexMatrix b(3, 2);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 2; ++c) b(r, c) = cdouble{normal(g), normal(g)};
        REQUIRE(check_cauchy_binet(a, b, v).passed);
    }

    // shifting away the zero eigenvalue invalidates the precondition
    ComplexMatrix shifted = a.matrix();
    for (std::size_t r = 0; r < 3; ++r) shifted(r, r) += 1.0;
    ComplexMatrix b(3, 2);
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    REQUIRE_THROWS_AS(check_cauchy_binet(HermitianMatrix::symmetrized(shifted), b, v),
                      InvariantViolation);
    REQUIRE_THROWS_AS(check_cauchy_binet(a, ComplexMatrix(3, 3), v), DimensionMismatch);
}

TEST_CASE("generalized identity with explicit index sets") {
    // diagonal case is exactly computable: I = J = K = {1, 2} on diag(1,2,3)
    ComplexMatrix d(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    d(2, 2) = 3.0;
    HermitianMatrix a = validate_hermitian(d);
    CheckReport r = check_generalized_identity(a, IndexSet{1, 2}, IndexSet{1, 2}, IndexSet{1, 2});
    REQUIRE(r.passed);
    REQUIRE(r.max_abs_deviation < 1e-12);

    std::mt19937_64 g(16);
    for (int rep = 0; rep < 6; ++rep) {
        HermitianMatrix h = oracles::random_hermitian(g, 5, rep % 2 == 0);
        REQUIRE(check_generalized_identity(h, IndexSet{2}, IndexSet{4}, IndexSet{1}).passed);
        REQUIRE(check_generalized_identity(h, IndexSet{1, 3}, IndexSet{2, 5}, IndexSet{1, 4}).passed);
        REQUIRE(check_generalized_identity(h, IndexSet{2, 4, 5}, IndexSet{1, 2, 3},
                                           IndexSet{3, 4, 5})
                    .passed);
    }

    HermitianMatrix h = oracles::random_hermitian(g, 3, true);
    REQUIRE_THROWS_AS(check_generalized_identity(h, IndexSet{1}, IndexSet{1, 2}, IndexSet{1}),
                      CardinalityMismatch);
    REQUIRE_THROWS_AS(
        check_generalized_identity(h, IndexSet{1, 2, 3}, IndexSet{1, 2, 3}, IndexSet{1, 2, 3}),
        CardinalityMismatch);
    REQUIRE_THROWS_AS(check_generalized_identity(h, IndexSet{4}, IndexSet{1}, IndexSet{1}),
                      IndexOutOfRange);
}

TEST_CASE("minor duality on unitary matrices, including the plane rotation") {
    // 2x2 rotation: both sides are computable by hand and carry the sign
    double c = std::cos(0.7), s = std::sin(0.7);
    UnitaryFactor rot{ComplexMatrix::from_rows({{c, -s}, {s, c}})};
    CheckReport r = check_minor_duality(rot, IndexSet{1}, IndexSet{2});
    REQUIRE(r.passed);
    REQUIRE(r.max_abs_deviation < 1e-15);
    REQUIRE(check_minor_duality(rot, IndexSet{1}, IndexSet{1}).passed);

    std::mt19937_64 g(17);
    for (int rep = 0; rep < 6; ++rep) {
        HermitianMatrix h = oracles::random_hermitian(g, 6, true);
        UnitaryFactor u{eigh(h).vectors};
        REQUIRE(check_minor_duality(u, IndexSet{3}, IndexSet{5}).passed);
        REQUIRE(check_minor_duality(u, IndexSet{1, 4}, IndexSet{2, 6}).passed);
        REQUIRE(check_minor_duality(u, IndexSet{1, 2, 5}, IndexSet{2, 4, 6}).passed);
    }

    // a clearly non-unitary matrix violates the relation
    UnitaryFactor notu{ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}})};
    REQUIRE_FALSE(check_minor_duality(notu, IndexSet{1}, IndexSet{2}).passed);

    REQUIRE_THROWS_AS(check_minor_duality(rot, IndexSet{1}, IndexSet{1, 2}),
                      CardinalityMismatch);
}

TEST_CASE("full suite passes and is deterministic under a fixed seed") {
    HermitianMatrix a = golden();
    std::vector<CheckReport> first = run_full_suite(a, 99);
    std::vector<CheckReport> second = run_full_suite(a, 99);
    REQUIRE(first.size() == second.size());
    for (std::size_t k = 0; k < first.size(); ++k) {
        REQUIRE(first[k].check_name == second[k].check_name);
        REQUIRE(first[k].passed);
        REQUIRE(first[k].max_abs_deviation == second[k].max_abs_deviation);
    }

    // different seed still passes everywhere
    for (const auto& r : run_full_suite(a, 12345)) REQUIRE(r.passed);
}

TEST_CASE("full suite handles degenerate and trivial inputs") {
    std::mt19937_64 g(18);
    HermitianMatrix dup = oracles::plant_spectrum(g, {1.0, 1.0, 4.0, 6.0});
    bool saw_group_check = false;
    for (const auto& r : run_full_suite(dup, 7)) {
        REQUIRE(r.passed);
        if (r.check_name == "degenerate_group_mass") saw_group_check = true;
        REQUIRE(r.check_name.rfind("moment", 0) != 0);
    }
    REQUIRE(saw_group_check);

    HermitianMatrix one = validate_hermitian(ComplexMatrix::from_rows({{3.0}}));
    for (const auto& r : run_full_suite(one, 3)) REQUIRE(r.passed);
}

TEST_CASE("full suite on random matrices") {
    std::mt19937_64 g(19);
    for (int rep = 0; rep < 6; ++rep) {
        HermitianMatrix a = oracles::random_hermitian(g, 2 + rep, rep % 2 == 0);
        for (const auto& r : run_full_suite(a, 1000 + rep)) REQUIRE(r.passed);
    }
}
