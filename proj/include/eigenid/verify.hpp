#pragma once

// Executable verification of the identity family and its consistency
// checks.  Every check returns a CheckReport (pass/fail, max deviation,
// tolerance); run_full_suite drives all of them deterministically from a
// seed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eigenid/complex_matrix.hpp"
#include "eigenid/eigensolve.hpp"
#include "eigenid/errors.hpp"
#include "eigenid/identity.hpp"
#include "eigenid/rng.hpp"
#include "eigenid/spectral.hpp"

namespace eigenid {

struct CheckReport {
    std::string check_name;
    bool passed;
    double max_abs_deviation;
    double tolerance;
    std::vector<std::string> witnesses;
};

inline CheckReport make_report(std::string name, double dev, double tol,
                               std::vector<std::string> witnesses = {}) {
    return CheckReport{std::move(name), dev <= tol, dev, tol, std::move(witnesses)};
}

inline std::string to_json_line(const CheckReport& r) {
    char dev[32], tol[32];
    std::snprintf(dev, sizeof dev, "%.17g", r.max_abs_deviation);
    std::snprintf(tol, sizeof tol, "%.17g", r.tolerance);
    std::ostringstream os;
    os << "{\"check\":\"" << r.check_name << "\",\"passed\":" << (r.passed ? "true" : "false")
       << ",\"max_abs_deviation\":" << dev << ",\"tolerance\":" << tol << "}";
    return os.str();
}

// lambda_k(A) <= lambda_k(M_j) <= lambda_{k+1}(A) within slack 1e-9 * spread.
inline CheckReport check_interlacing(const Spectrum& sA, const Spectrum& sMj) {
    if (sMj.size() + 1 != sA.size())
        throw DimensionMismatch("minor spectrum must have one value fewer than the full spectrum");
    double tol = 1e-9 * sA.spread();
    double dev = 0.0;
    std::vector<std::string> witnesses;
    for (std::size_t k = 0; k + 1 < sA.size(); ++k) {
        double low = sA.values()[k] - sMj.values()[k];
        double high = sMj.values()[k] - sA.values()[k + 1];
        double d = std::max(0.0, std::max(low, high));
        if (d > tol) witnesses.push_back("k=" + std::to_string(k + 1));
        dev = std::max(dev, d);
    }
    return make_report("interlacing", dev, tol, std::move(witnesses));
}

// Column sums are 1 (each multiplicity group counted once); the rows of a
// group sum to its multiplicity, which reduces to 1 for simple eigenvalues.
inline CheckReport check_normalization(const MagnitudeTable& table) {
    const std::size_t n = table.n();
    double tol = 1e-8 * static_cast<double>(n);
    double dev = 0.0;
    std::vector<std::string> witnesses;
    for (std::size_t j = 1; j <= n; ++j) {
        double col = 0.0;
        for (const auto& g : table.grouping().groups()) col += table.value(g.first, j);
        if (std::abs(col - 1.0) > tol) witnesses.push_back("col j=" + std::to_string(j));
        dev = std::max(dev, std::abs(col - 1.0));
    }
    for (const auto& g : table.grouping().groups()) {
        double row = 0.0;
        for (std::size_t j = 1; j <= n; ++j) row += table.value(g.first, j);
        double want = static_cast<double>(g.multiplicity());
        if (std::abs(row - want) > tol) witnesses.push_back("row i=" + std::to_string(g.first));
        dev = std::max(dev, std::abs(row - want));
    }
    return make_report("normalization", dev, tol, std::move(witnesses));
}

// p'_A(lambda) = sum_j p_{M_j}(lambda) at one probe point; the derivative is
// expanded as sum_i prod_{k != i} (lambda - lambda_k).
inline CheckReport check_jacobi_formula(const Spectrum& sA, const std::vector<Spectrum>& minors,
                                        cdouble lambda) {
    const std::size_t n = sA.size();
    if (minors.size() != n) throw DimensionMismatch("need one minor spectrum per coordinate");
    for (const auto& m : minors)
        if (m.size() + 1 != n)
            throw DimensionMismatch("minor spectrum must have one value fewer than the full spectrum");
    cdouble lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cdouble term = 1.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) term *= (lambda - sA.values()[k]);
        lhs += term;
    }
    cdouble rhs = 0.0;
    double mass = 0.0;
    for (const auto& m : minors) {
        cdouble p = char_poly_eval(m, lambda);
        rhs += p;
        mass += std::abs(p);
    }
    double scale = std::max({1.0, std::abs(lhs), mass});
    return make_report("jacobi_formula", std::abs(lhs - rhs) / scale, 1e-9);
}

// (n - k) S_k(A) = sum_j S_k(M_j) for 1 <= k <= n-1.
inline CheckReport check_symmetric_poly_relation(const Spectrum& sA,
                                                 const std::vector<Spectrum>& minors,
                                                 std::size_t k) {
    const std::size_t n = sA.size();
    if (minors.size() != n) throw DimensionMismatch("need one minor spectrum per coordinate");
    if (k < 1 || k >= n) throw IndexOutOfRange("symmetric polynomial order must lie in 1..n-1");
    double lhs = static_cast<double>(n - k) * elementary_symmetric(sA, k);
    double rhs = 0.0, mass = 0.0;
    for (const auto& m : minors) {
        double s = elementary_symmetric(m, k);
        rhs += s;
        mass += std::abs(s);
    }
    double scale = std::max({1.0, std::abs(lhs), mass});
    return make_report("symmetric_poly", std::abs(lhs - rhs) / scale, 1e-9);
}

// (A^m)_{jj} = sum_i lambda_i^m |v_{i,j}|^2 for a simple spectrum.
inline CheckReport check_moment_identity(const HermitianMatrix& a, const MagnitudeTable& table,
                                         std::size_t m) {
    const std::size_t n = a.n();
    if (table.n() != n) throw DimensionMismatch("table size must match the matrix");
    if (table.has_degenerate_groups())
        throw DegenerateSpectrum("moment identity requires a simple spectrum");
    ComplexMatrix power = ComplexMatrix::identity(n);
    for (std::size_t t = 0; t < m; ++t) power = power * a.matrix();
    double tol = 1e-8 * std::pow(a.frobenius_norm(), static_cast<double>(m));
    double dev = 0.0;
    std::vector<std::string> witnesses;
    for (std::size_t j = 1; j <= n; ++j) {
        double rhs = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            rhs += std::pow(table.spectrum().value(i), static_cast<double>(m)) * table.value(i, j);
        double d = std::abs(power(j - 1, j - 1) - rhs);
        if (d > tol) witnesses.push_back("j=" + std::to_string(j));
        dev = std::max(dev, d);
    }
    return make_report("moment_" + std::to_string(m), dev, tol, std::move(witnesses));
}

// prod_k (lambda - xi_k) / prod_k (lambda - lambda_k) = sum_i q_ij / (lambda
// - lambda_i) at a pole-safe probe, plus the vanishing of the weighted sum
// at each minor eigenvalue.  Multiplicity groups contribute one term each.
inline CheckReport check_resolvent_identity(const Spectrum& sA, const Spectrum& sMj,
                                            const MagnitudeTable& table, std::size_t j,
                                            cdouble lambda) {
    const std::size_t n = sA.size();
    if (sMj.size() + 1 != n)
        throw DimensionMismatch("minor spectrum must have one value fewer than the full spectrum");
    if (table.n() != n) throw DimensionMismatch("table size must match the spectrum");
    double bound = 1e-6 * sA.spread();
    for (double x : sA.values())
        if (std::abs(lambda - x) <= bound)
            throw ProbeTooCloseToPole("resolvent probe too close to an eigenvalue");

    auto weighted_sum = [&](cdouble probe, cdouble& sum, double& mass) {
        sum = 0.0;
        mass = 0.0;
        for (const auto& g : table.grouping().groups()) {
            cdouble term = table.value(g.first, j) / (probe - g.representative);
            sum += term;
            mass += std::abs(term);
        }
    };

    cdouble rhs;
    double mass;
    weighted_sum(lambda, rhs, mass);
    cdouble lhs = char_poly_eval(sMj, lambda) / char_poly_eval(sA, lambda);
    double dev = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), mass});

    for (double xi : sMj.values()) {
        bool safe = true;
        for (double x : sA.values())
            if (std::abs(xi - x) <= bound) { safe = false; break; }
        if (!safe) continue;
        cdouble sum;
        double m2;
        weighted_sum(xi, sum, m2);
        dev = std::max(dev, std::abs(sum) / std::max(1.0, m2));
    }
    return make_report("resolvent", dev, 1e-8);
}

// First-order perturbation: the slope of lambda_i under A + eps e_j e_j^*
// approximates |v_{i,j}|^2 with error O(eps / gap^2).
inline CheckReport check_perturbation(const HermitianMatrix& a, std::size_t i, std::size_t j,
                                      double eps = -1.0) {
    const std::size_t n = a.n();
    if (i < 1 || i > n || j < 1 || j > n) throw IndexOutOfRange("index out of range");
    Spectrum sA = spectrum_of(a);
    double tol_mult = default_multiplicity_tol(sA);
    detail::require_simple(sA, i, tol_mult);
    double norm = a.frobenius_norm();
    if (eps <= 0.0) eps = 1e-5 * std::max(1.0, norm);

    double q;
    if (n == 1) {
        q = 1.0;
    } else {
        q = magnitude_sq(sA, spectrum_of(principal_minor(a, j)), i, tol_mult);
    }

    ComplexMatrix perturbed = a.matrix();
    perturbed(j - 1, j - 1) += eps;
    Spectrum sP = spectrum_of(HermitianMatrix::symmetrized(perturbed));
    double slope = (sP.value(i) - sA.value(i)) / eps;

    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= n; ++k)
        if (k != i) gap = std::min(gap, std::abs(sA.value(i) - sA.value(k)));
    double tol = 1e-9 * std::max(1.0, norm);
    if (n > 1) tol += 10.0 * norm * norm * eps / (gap * gap);
    return make_report("perturbation", std::abs(slope - q), tol);
}

// det(B^* A B) = (-1)^{n-1} p'_A(0) |det(B | v)|^2 for A with a simple zero
// eigenvalue and null eigenvector v.
inline CheckReport check_cauchy_binet(const HermitianMatrix& a, const ComplexMatrix& b,
                                      const std::vector<cdouble>& v) {
    const std::size_t n = a.n();
    if (n < 2) throw DimensionTooSmall("check needs dimension at least 2");
    if (b.rows() != n || b.cols() != n - 1)
        throw DimensionMismatch("B must be n x (n-1)");
    if (v.size() != n) throw DimensionMismatch("null vector length must be n");

    Spectrum sA = spectrum_of(a);
    std::size_t i0 = 1;
    for (std::size_t k = 2; k <= n; ++k)
        if (std::abs(sA.value(k)) < std::abs(sA.value(i0))) i0 = k;
    double scale0 = std::max(1.0, std::max(std::abs(sA.min()), std::abs(sA.max())));
    if (std::abs(sA.value(i0)) > 1e-8 * scale0)
        throw InvariantViolation("matrix has no zero eigenvalue");
    detail::require_simple(sA, i0, default_multiplicity_tol(sA));

    double deriv = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        if (k != i0) deriv *= (0.0 - sA.value(k));

    cdouble lhs = determinant(b.conj_transpose() * a.matrix() * b);

    ComplexMatrix bv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c + 1 < n; ++c) bv(r, c) = b(r, c);
        bv(r, n - 1) = v[r];
    }
    double sign = (n % 2 == 1) ? 1.0 : -1.0;
    double rhs = sign * deriv * std::norm(determinant(bv));
    double dev = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return make_report("cauchy_binet", dev, 1e-8);
}

namespace detail {

// Sign of the permutation moving the sorted set to the front while keeping
// everything else in relative order.
inline double front_permutation_sign(const IndexSet& s) {
    std::size_t swaps = 0;
    const auto& idx = s.indices();
    for (std::size_t t = 0; t < idx.size(); ++t) swaps += idx[t] - (t + 1);
    return (swaps % 2 == 0) ? 1.0 : -1.0;
}

} // namespace detail

// Generalized identity for index sets of equal cardinality m < n:
//   sgn(J) sgn(K) conj(det M_{J^c,I^c}(U)) det M_{K^c,I^c}(U)
//       * prod_{i in I, j in I^c} (lambda_j - lambda_i)
//   = det M_{J,K}( prod_{i in I} (A - lambda_i I) ).
// The permutation signs come from reducing the minor duality to the
// contiguous case; they cancel when J = K, which is why the plain magnitude
// form carries none and the off-diagonal variant carries (-1)^{j+j'}.
inline CheckReport check_generalized_identity(const HermitianMatrix& a, const IndexSet& setI,
                                              const IndexSet& setJ, const IndexSet& setK) {
    const std::size_t n = a.n();
    const std::size_t m = setI.size();
    if (setJ.size() != m || setK.size() != m)
        throw CardinalityMismatch("index sets must share one cardinality");
    if (m >= n) throw CardinalityMismatch("cardinality must be smaller than the dimension");
    if (setI.max_index() > n || setJ.max_index() > n || setK.max_index() > n)
        throw IndexOutOfRange("index set member out of range");

    EigenDecomposition ed = eigh(a);
    const ComplexMatrix& u = ed.vectors;
    IndexSet ic = setI.complement(n), jc = setJ.complement(n), kc = setK.complement(n);

    cdouble lhs = std::conj(determinant(general_minor(u, jc, ic))) *
                  determinant(general_minor(u, kc, ic));
    for (std::size_t i : setI.indices())
        for (std::size_t j : ic.indices())
            lhs *= (ed.spectrum.value(j) - ed.spectrum.value(i));
    lhs *= detail::front_permutation_sign(setJ) * detail::front_permutation_sign(setK);

    ComplexMatrix prod = ComplexMatrix::identity(n);
    for (std::size_t i : setI.indices()) {
        ComplexMatrix shifted = a.matrix();
        for (std::size_t r = 0; r < n; ++r) shifted(r, r) -= ed.spectrum.value(i);
        prod = prod * shifted;
    }
    cdouble rhs = determinant(general_minor(prod, setJ, setK));

    double dev = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return make_report("generalized_identity", dev, 1e-7);
}

// Minor duality for a unitary matrix:
//   det M_{J,I}(U) = sgn(I) sgn(J) conj(det M_{J^c,I^c}(U)) det U.
inline CheckReport check_minor_duality(const UnitaryFactor& u, const IndexSet& setI,
                                       const IndexSet& setJ) {
    const std::size_t n = u.q.rows();
    if (setI.size() != setJ.size())
        throw CardinalityMismatch("index sets must share one cardinality");
    if (setI.size() >= n) throw CardinalityMismatch("cardinality must be smaller than the dimension");
    if (setI.max_index() > n || setJ.max_index() > n)
        throw IndexOutOfRange("index set member out of range");
    cdouble lhs = determinant(general_minor(u.q, setJ, setI));
    cdouble rhs = detail::front_permutation_sign(setI) * detail::front_permutation_sign(setJ) *
                  std::conj(determinant(general_minor(u.q, setJ.complement(n), setI.complement(n)))) *
                  determinant(u.q);
    return make_report("minor_duality", std::abs(lhs - rhs), 1e-9);
}

namespace detail {

inline CheckReport fold_reports(const std::string& name, const std::vector<CheckReport>& parts,
                                double tol) {
    double dev = 0.0;
    std::vector<std::string> witnesses;
    for (const auto& r : parts) {
        dev = std::max(dev, r.max_abs_deviation);
        for (const auto& w : r.witnesses)
            if (witnesses.size() < 8) witnesses.push_back(w);
    }
    return make_report(name, dev, tol, std::move(witnesses));
}

inline double table_difference(const MagnitudeTable& x, const MagnitudeTable& y) {
    double dev = 0.0;
    for (std::size_t i = 1; i <= x.n(); ++i)
        for (std::size_t j = 1; j <= x.n(); ++j)
            dev = std::max(dev, std::abs(x.value(i, j) - y.value(i, j)));
    return dev;
}

} // namespace detail

// Deterministic aggregate of every check, seeded.  Inapplicable checks
// (moment/perturbation/Cauchy-Binet need a simple spectrum; set-based checks
// need n >= 2) are omitted rather than faked.
inline std::vector<CheckReport> run_full_suite(const HermitianMatrix& a, std::uint64_t seed) {
    const std::size_t n = a.n();
    std::mt19937_64 gen(seed);
    std::vector<CheckReport> out;

    Spectrum sA = spectrum_of(a);
    std::vector<Spectrum> minors = minor_spectra(a);
    MagnitudeTable table = magnitude_table(a);
    const MultiplicityGrouping& grouping = table.grouping();
    const bool degenerate = table.has_degenerate_groups();
    const double spread1 = std::max(1.0, sA.spread());
    const double lo = sA.min() - spread1, hi = sA.max() + spread1;

    std::vector<std::size_t> simple_indices;
    for (const auto& g : grouping.groups())
        if (g.multiplicity() == 1) simple_indices.push_back(g.first);

    {
        std::vector<CheckReport> parts;
        for (const auto& m : minors) parts.push_back(check_interlacing(sA, m));
        out.push_back(detail::fold_reports("interlacing", parts, 1e-9 * sA.spread()));
    }
    out.push_back(check_normalization(table));
    {
        std::vector<CheckReport> parts;
        for (int t = 0; t < 5; ++t)
            parts.push_back(check_jacobi_formula(sA, minors, uniform(gen, lo, hi)));
        out.push_back(detail::fold_reports("jacobi_formula", parts, 1e-9));
    }
    {
        std::vector<CheckReport> parts;
        for (std::size_t k = 1; k < n; ++k)
            parts.push_back(check_symmetric_poly_relation(sA, minors, k));
        out.push_back(detail::fold_reports("symmetric_poly", parts, 1e-9));
    }
    if (!degenerate)
        for (std::size_t m = 0; m + 1 <= std::min<std::size_t>(6, n); ++m)
            out.push_back(check_moment_identity(a, table, m));
    {
        std::vector<CheckReport> parts;
        double bound = 1e-6 * sA.spread();
        for (std::size_t j = 1; j <= n; ++j)
            for (int t = 0; t < 2; ++t) {
                cdouble probe;
                bool found = false;
                for (int tries = 0; tries < 100 && !found; ++tries) {
                    probe = uniform(gen, lo, hi);
                    found = true;
                    for (double x : sA.values())
                        if (std::abs(probe - x) <= bound) { found = false; break; }
                }
                if (found)
                    parts.push_back(check_resolvent_identity(sA, minors[j - 1], table, j, probe));
            }
        out.push_back(detail::fold_reports("resolvent", parts, 1e-8));
    }
    if (!simple_indices.empty())
        for (int t = 1; t <= 3; ++t) {
            std::size_t i = simple_indices[uniform_index(gen, simple_indices.size())];
            std::size_t j = 1 + uniform_index(gen, n);
            CheckReport r = check_perturbation(a, i, j);
            r.check_name = "perturbation_" + std::to_string(t);
            out.push_back(r);
        }
    if (!simple_indices.empty() && n >= 2) {
        std::vector<CheckReport> parts;
        for (int t = 0; t < 2; ++t) {
            std::size_t i = simple_indices[uniform_index(gen, simple_indices.size())];
            ComplexMatrix shifted = a.matrix();
            for (std::size_t r = 0; r < n; ++r) shifted(r, r) -= sA.value(i);
            HermitianMatrix ah = HermitianMatrix::symmetrized(shifted);
            EigenDecomposition ed = eigh(ah);
            std::vector<cdouble> v(n);
            for (std::size_t r = 0; r < n; ++r) v[r] = ed.vectors(r, i - 1);
            ComplexMatrix b(n, n - 1);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c + 1 < n; ++c)
                    b(r, c) = cdouble{normal(gen), normal(gen)};
            parts.push_back(check_cauchy_binet(ah, b, v));
        }
        out.push_back(detail::fold_reports("cauchy_binet", parts, 1e-8));
    }
    if (n >= 2) {
        auto random_set = [&](std::size_t m) {
            std::vector<std::size_t> pool(n);
            for (std::size_t r = 0; r < n; ++r) pool[r] = r + 1;
            for (std::size_t r = 0; r < m; ++r)
                std::swap(pool[r], pool[r + uniform_index(gen, n - r)]);
            pool.resize(m);
            return IndexSet(std::move(pool));
        };
        std::vector<CheckReport> gparts, dparts;
        UnitaryFactor u{eigh(a).vectors};
        for (std::size_t m = 1; m <= std::min<std::size_t>(2, n - 1); ++m)
            for (int t = 0; t < 2; ++t) {
                gparts.push_back(
                    check_generalized_identity(a, random_set(m), random_set(m), random_set(m)));
                dparts.push_back(check_minor_duality(u, random_set(m), random_set(m)));
            }
        out.push_back(detail::fold_reports("generalized_identity", gparts, 1e-7));
        out.push_back(detail::fold_reports("minor_duality", dparts, 1e-9));
    }

    // metamorphic invariances of the magnitude table
    {
        double c = uniform(gen, 0.5, 2.0);
        ComplexMatrix scaled = a.matrix();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t cc = 0; cc < n; ++cc) scaled(r, cc) *= c;
        MagnitudeTable t2 = magnitude_table(HermitianMatrix::symmetrized(scaled));
        out.push_back(make_report("scale_invariance", detail::table_difference(table, t2), 1e-9));
    }
    {
        double c = uniform(gen, -1.0, 1.0) * spread1;
        ComplexMatrix shifted = a.matrix();
        for (std::size_t r = 0; r < n; ++r) shifted(r, r) += c;
        MagnitudeTable t2 = magnitude_table(HermitianMatrix::symmetrized(shifted));
        out.push_back(make_report("shift_invariance", detail::table_difference(table, t2), 1e-9));
    }
    {
        std::vector<std::size_t> perm(n);
        for (std::size_t r = 0; r < n; ++r) perm[r] = r;
        for (std::size_t r = 0; r + 1 < n; ++r)
            std::swap(perm[r], perm[r + uniform_index(gen, n - r)]);
        ComplexMatrix pap(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) pap(r, c) = a(perm[r], perm[c]);
        MagnitudeTable t2 = magnitude_table(HermitianMatrix::symmetrized(pap));
        double dev = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t r = 0; r < n; ++r)
                dev = std::max(dev,
                               std::abs(t2.value(i, r + 1) - table.value(i, perm[r] + 1)));
        out.push_back(make_report("permutation_invariance", dev, 1e-9));
    }
    {
        std::vector<cdouble> phases(n);
        for (std::size_t r = 0; r < n; ++r) {
            double th = uniform(gen, 0.0, 6.283185307179586);
            phases[r] = cdouble{std::cos(th), std::sin(th)};
        }
        ComplexMatrix dad(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                dad(r, c) = phases[r] * a(r, c) * std::conj(phases[c]);
        MagnitudeTable t2 = magnitude_table(HermitianMatrix::symmetrized(dad));
        out.push_back(make_report("phase_invariance", detail::table_difference(table, t2), 1e-9));
    }
    {
        // diagonal case: the magnitude table of diag(spectrum) is the
        // group-membership indicator
        ComplexMatrix diag(n, n);
        for (std::size_t r = 0; r < n; ++r) diag(r, r) = sA.values()[r];
        MagnitudeTable t2 = magnitude_table(HermitianMatrix::symmetrized(diag));
        double dev = 0.0;
        for (const auto& g : t2.grouping().groups())
            for (std::size_t j = 1; j <= n; ++j) {
                double want = g.contains(j) ? 1.0 : 0.0;
                dev = std::max(dev, std::abs(t2.value(g.first, j) - want));
            }
        out.push_back(make_report("diagonal_case", dev, 1e-9));
    }
    {
        // path agreement across all magnitude forms at simple eigenvalues
        EigenDecomposition ed = eigh(a);
        double dev = 0.0;
        std::vector<std::string> witnesses;
        for (std::size_t i : simple_indices)
            for (std::size_t j = 1; j <= n; ++j) {
                std::vector<double> vals;
                vals.push_back(table.value(i, j));
                vals.push_back(magnitude_sq_charpoly(sA, minors[j - 1], i));
                try {
                    vals.push_back(magnitude_alternate(a, sA.value(i), j));
                } catch (const SingularShift&) {
                }
                vals.push_back(cross_term(a, sA, i, j, j).value.real());
                vals.push_back(std::norm(ed.vectors(j - 1, i - 1)));
                double local = 0.0;
                for (std::size_t x = 0; x < vals.size(); ++x)
                    for (std::size_t y = x + 1; y < vals.size(); ++y)
                        local = std::max(local, std::abs(vals[x] - vals[y]));
                if (local > 1e-7)
                    witnesses.push_back("i=" + std::to_string(i) + ",j=" + std::to_string(j));
                dev = std::max(dev, local);
            }
        out.push_back(make_report("path_agreement", dev, 1e-7, std::move(witnesses)));
    }
    if (degenerate) {
        // repeated eigenvalues: group mass against the decomposition oracle
        EigenDecomposition ed = eigh(a);
        double dev = 0.0;
        for (const auto& g : grouping.groups()) {
            if (g.multiplicity() == 1) continue;
            for (std::size_t j = 1; j <= n; ++j) {
                double mass = 0.0;
                for (std::size_t i = g.first; i <= g.last; ++i)
                    mass += std::norm(ed.vectors(j - 1, i - 1));
                dev = std::max(dev, std::abs(table.value(g.first, j) - mass));
            }
        }
        out.push_back(make_report("degenerate_group_mass", dev, 1e-7));
    }
    return out;
}

} // namespace eigenid
