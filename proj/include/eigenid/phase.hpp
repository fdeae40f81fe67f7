#pragma once

// Relative-phase recovery: products v_{i,j} * conj(v_{i,k}) extracted from
// component magnitudes of two-coordinate rotated copies of the matrix, and
// reconstruction of whole eigenvectors up to one global phase.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "eigenid/complex_matrix.hpp"
#include "eigenid/eigensolve.hpp"
#include "eigenid/errors.hpp"
#include "eigenid/identity.hpp"
#include "eigenid/spectral.hpp"

namespace eigenid {

// Below this component magnitude a recovered phase is noise, not data.
constexpr double kPhaseFloor = 1e-6;

namespace detail {

// |v'_{i,j}|^2 of the rotated matrix G A G^*; the full spectrum is reused
// verbatim (rotation preserves it), only the rotated minor is re-solved.
inline double rotated_magnitude(const HermitianMatrix& a, const Spectrum& sA, std::size_t i,
                                std::size_t j, std::size_t k, cdouble omega, double tol) {
    HermitianMatrix rotated = rotate_pair(a, RotationSpec(j, k, omega));
    Spectrum minor = spectrum_of(principal_minor(rotated, j));
    return magnitude_sq(sA, minor, i, tol);
}

// Core extraction with magnitudes m_j, m_k already in hand:
//   |v_j + omega v_k|^2 / 2 = (m_j + m_k)/2 + Re(omega * conj(P)),
// so probing omega = 1 gives Re(P) and omega = sqrt(-1) gives Im(P), where
// P = v_{i,j} * conj(v_{i,k}).
inline cdouble pair_product_given(const HermitianMatrix& a, const Spectrum& sA, std::size_t i,
                                  std::size_t j, std::size_t k, double mj, double mk,
                                  double tol) {
    double base = 0.5 * (mj + mk);
    double re = rotated_magnitude(a, sA, i, j, k, cdouble{1.0, 0.0}, tol) - base;
    double im = rotated_magnitude(a, sA, i, j, k, cdouble{0.0, 1.0}, tol) - base;
    return cdouble{re, im};
}

} // namespace detail

// v_{i,j} * conj(v_{i,k}) for a simple eigenvalue, from magnitude data alone.
inline cdouble pair_product(const HermitianMatrix& a, const Spectrum& sA, std::size_t i,
                            std::size_t j, std::size_t k) {
    const std::size_t n = a.n();
    if (sA.size() != n) throw DimensionMismatch("spectrum size must match the matrix");
    if (j < 1 || j > n || k < 1 || k > n) throw IndexOutOfRange("component index out of range");
    if (j == k) throw InvariantViolation("pair product requires two distinct components");
    double tol = default_multiplicity_tol(sA);
    detail::require_simple(sA, i, tol);
    double mj = magnitude_sq(sA, spectrum_of(principal_minor(a, j)), i, tol);
    double mk = magnitude_sq(sA, spectrum_of(principal_minor(a, k)), i, tol);
    if (mj * mk < kPhaseFloor * kPhaseFloor)
        throw IllConditioned("component magnitudes too small for phase recovery");
    return detail::pair_product_given(a, sA, i, j, k, mj, mk, tol);
}

// Unit eigenvector representative: pivot component real non-negative,
// remaining components carry phases relative to the pivot.  Components too
// small for phase recovery are reported as plain magnitudes and flagged.
struct ReconstructedVector {
    std::size_t i;                      // eigenvalue index, 1-based
    double lambda;                      // the eigenvalue itself
    std::size_t pivot;                  // component fixed real non-negative, 1-based
    std::vector<cdouble> components;
    std::vector<bool> undefined_phase;  // per-component small-magnitude warnings
};

inline ReconstructedVector reconstruct_eigenvector(const HermitianMatrix& a, std::size_t i) {
    const std::size_t n = a.n();
    Spectrum sA = spectrum_of(a);
    if (i < 1 || i > n) throw IndexOutOfRange("eigenvalue index out of range");
    double tol = default_multiplicity_tol(sA);
    detail::require_simple(sA, i, tol);

    ReconstructedVector out{i, sA.value(i), 1, std::vector<cdouble>(n),
                            std::vector<bool>(n, false)};
    if (n == 1) {
        out.components[0] = 1.0;
        return out;
    }

    std::vector<Spectrum> minors = minor_spectra(a);
    std::vector<double> m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = magnitude_sq(sA, minors[j], i, tol);

    std::size_t piv = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (m[j] > m[piv]) piv = j;
    out.pivot = piv + 1;
    double root = std::sqrt(m[piv]);
    out.components[piv] = root;

    for (std::size_t k = 0; k < n; ++k) {
        if (k == piv) continue;
        if (m[piv] * m[k] < kPhaseFloor * kPhaseFloor) {
            out.components[k] = std::sqrt(m[k]);
            out.undefined_phase[k] = true;
            continue;
        }
        // P = v_piv * conj(v_k) with v_piv real positive, so v_k = conj(P)/v_piv
        cdouble p = detail::pair_product_given(a, sA, i, piv + 1, k + 1, m[piv], m[k], tol);
        out.components[k] = std::conj(p) / root;
    }
    return out;
}

// Sign pattern of a real symmetric matrix's eigenvector relative to its
// pivot component; only the omega = 1 rotation is needed.
struct SignVector {
    std::size_t i;
    std::size_t pivot;            // 1-based; its sign is +1 by convention
    std::vector<int> signs;       // entries in {-1, 0, +1}; 0 marks a negligible component
};

inline SignVector real_symmetric_signs(const HermitianMatrix& a, std::size_t i) {
    const std::size_t n = a.n();
    double imag_mag = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            imag_mag = std::max(imag_mag, std::abs(a(r, c).imag()));
    if (imag_mag > 1e-12 * std::max(1.0, a.frobenius_norm()))
        throw InvariantViolation("sign recovery requires a real symmetric matrix");

    Spectrum sA = spectrum_of(a);
    if (i < 1 || i > n) throw IndexOutOfRange("eigenvalue index out of range");
    double tol = default_multiplicity_tol(sA);
    detail::require_simple(sA, i, tol);

    SignVector out{i, 1, std::vector<int>(n, 0)};
    if (n == 1) {
        out.signs[0] = 1;
        return out;
    }

    std::vector<Spectrum> minors = minor_spectra(a);
    std::vector<double> m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = magnitude_sq(sA, minors[j], i, tol);
    std::size_t piv = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (m[j] > m[piv]) piv = j;
    out.pivot = piv + 1;
    out.signs[piv] = 1;

    for (std::size_t k = 0; k < n; ++k) {
        if (k == piv) continue;
        if (m[piv] * m[k] < kPhaseFloor * kPhaseFloor) continue;
        double r = detail::rotated_magnitude(a, sA, i, piv + 1, k + 1, cdouble{1.0, 0.0}, tol) -
                   0.5 * (m[piv] + m[k]);
        out.signs[k] = (r >= 0.0) ? 1 : -1;
    }
    return out;
}

} // namespace eigenid
