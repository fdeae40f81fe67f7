#pragma once

// Eigenvector component magnitudes from eigenvalue data of a Hermitian
// matrix and its principal minors: the interlacing-paired stable product,
// the raw characteristic-polynomial quotient, the degenerate residue form
// for repeated eigenvalues, the off-diagonal cross term, the resolvent-based
// alternate expression, and the tridiagonal specialization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <thread>
#include <vector>

#include "eigenid/complex_matrix.hpp"
#include "eigenid/eigensolve.hpp"
#include "eigenid/errors.hpp"
#include "eigenid/spectral.hpp"

namespace eigenid {

// Factors outside [-kInterlacingSlack, 1 + kInterlacingSlack] are treated as
// genuine interlacing violations rather than round-off.
constexpr double kInterlacingSlack = 1e-6;

namespace detail {

inline void require_simple(const Spectrum& s, std::size_t i, double tol) {
    MultiplicityGrouping g = group_multiplicities(s, tol);
    if (!g.is_simple(i))
        throw DegenerateEigenvalue("eigenvalue is repeated within tolerance; use the group form");
}

inline double clamp_factor(double f, const char* what, double slack = kInterlacingSlack) {
    if (f < -slack || f > 1.0 + slack) {
        std::ostringstream os;
        os << what << " factor " << f << " lies outside [0,1] beyond round-off";
        throw InterlacingViolation(os.str());
    }
    return std::min(1.0, std::max(0.0, f));
}

} // namespace detail

// Eigenvalues only, via tridiagonal reduction + QL.
inline Spectrum spectrum_of(const HermitianMatrix& a) {
    return eigvals_tridiag(tridiagonalize(a).t);
}

// |v_{i,j}|^2 from the spectrum of A and the spectrum of the j-th principal
// minor, evaluated as the interlacing-paired product
//   prod_{k<i} (l_i - x_k)/(l_i - l_k) * prod_{k>=i} (x_k - l_i)/(l_{k+1} - l_i)
// whose factors each lie in [0,1].  i is 1-based.
inline double magnitude_sq(const Spectrum& sA, const Spectrum& sMj, std::size_t i, double tol) {
    const std::size_t n = sA.size();
    if (sMj.size() + 1 != n)
        throw DimensionMismatch("minor spectrum must have one value fewer than the full spectrum");
    if (i < 1 || i > n) throw IndexOutOfRange("eigenvalue index out of range");
    detail::require_simple(sA, i, tol);

    const auto& l = sA.values();
    const auto& x = sMj.values();
    const double slack = 10.0 * tol;
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (x[k] < l[k] - slack || x[k] > l[k + 1] + slack) {
            std::ostringstream os;
            os << "minor eigenvalue " << (k + 1) << " violates interlacing";
            throw InterlacingViolation(os.str());
        }

    const double li = l[i - 1];
    double prod = 1.0;
    for (std::size_t k = 0; k + 1 < i; ++k)
        prod *= detail::clamp_factor((li - x[k]) / (li - l[k]), "left");
    for (std::size_t k = i - 1; k + 1 < n; ++k)
        prod *= detail::clamp_factor((x[k] - li) / (l[k + 1] - li), "right");
    return std::min(1.0, std::max(0.0, prod));
}

// Raw characteristic-polynomial quotient p_{M_j}(l_i) / p'_A(l_i), unclamped,
// kept for stability comparisons against the paired form.
inline double magnitude_sq_charpoly(const Spectrum& sA, const Spectrum& sMj, std::size_t i) {
    if (sMj.size() + 1 != sA.size())
        throw DimensionMismatch("minor spectrum must have one value fewer than the full spectrum");
    detail::require_simple(sA, i, default_multiplicity_tol(sA));
    double deriv = char_poly_derivative_at(sA, i);
    if (deriv == 0.0)
        throw DegenerateEigenvalue("characteristic polynomial derivative vanishes");
    return char_poly_eval(sMj, sA.value(i)).real() / deriv;
}

// Total squared mass sum_{i in group} |v_{i,j}|^2 of a repeated eigenvalue,
// as the residue of p_{M_j}/p_A at the group representative: the m copies in
// sA and the m-1 interlacing-forced copies in sMj are removed, and the
// remaining equal-size products are paired in sorted order.
inline double magnitude_group(const Spectrum& sA, const Spectrum& sMj,
                              const MultiplicityGroup& group, double tol) {
    const std::size_t n = sA.size();
    if (sMj.size() + 1 != n)
        throw DimensionMismatch("minor spectrum must have one value fewer than the full spectrum");
    const std::size_t m = group.multiplicity();
    const double lstar = group.representative;

    // remaining full-spectrum values: everything outside the group
    std::vector<double> lrest;
    for (std::size_t k = 0; k < n; ++k)
        if (k + 1 < group.first || k + 1 > group.last) lrest.push_back(sA.values()[k]);

    // drop the m-1 minor values closest to the representative, all of which
    // must sit within tol of it
    std::vector<std::size_t> order(sMj.size());
    for (std::size_t k = 0; k < sMj.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(sMj.values()[a] - lstar) < std::abs(sMj.values()[b] - lstar);
    });
    std::vector<bool> removed(sMj.size(), false);
    for (std::size_t t = 0; t + 1 < m; ++t) {
        if (std::abs(sMj.values()[order[t]] - lstar) > tol)
            throw InterlacingViolation(
                "minor spectrum lacks the copies forced by the repeated eigenvalue");
        removed[order[t]] = true;
    }
    std::vector<double> xrest;
    for (std::size_t k = 0; k < sMj.size(); ++k)
        if (!removed[k]) xrest.push_back(sMj.values()[k]);

    // a rest value may sit within tol of lstar when the grouping tolerance is
    // coarse, leaking factors below 0 by up to tol over the outer gap; only
    // larger excursions are genuine interlacing violations
    double prod = 1.0;
    for (std::size_t t = 0; t < lrest.size(); ++t) {
        double f = (lrest[t] < lstar) ? (lstar - xrest[t]) / (lstar - lrest[t])
                                      : (xrest[t] - lstar) / (lrest[t] - lstar);
        double slack = kInterlacingSlack + tol / std::abs(lstar - lrest[t]);
        prod *= detail::clamp_factor(f, "residue", slack);
    }
    return std::min(1.0, std::max(0.0, prod));
}

enum class MagnitudeFlag { computed, exact_zero, degenerate_group_mass };

// n x n grid of |v_{i,j}|^2 with per-entry provenance flags.  Rows belonging
// to a multiplicity group all carry the group's total mass for that column,
// flagged degenerate_group_mass; the mass is never split per eigenvector.
class MagnitudeTable {
public:
    MagnitudeTable(Spectrum spectrum, MultiplicityGrouping grouping,
                   std::vector<double> values, std::vector<MagnitudeFlag> flags)
        : n_(spectrum.size()), spectrum_(std::move(spectrum)), grouping_(std::move(grouping)),
          values_(std::move(values)), flags_(std::move(flags)) {
        if (values_.size() != n_ * n_ || flags_.size() != n_ * n_)
            throw DimensionMismatch("magnitude table grid must be n x n");
    }

    std::size_t n() const { return n_; }
    const Spectrum& spectrum() const { return spectrum_; }
    const MultiplicityGrouping& grouping() const { return grouping_; }

    // i indexes eigenvalues, j indexes components; both 1-based.
    double value(std::size_t i, std::size_t j) const { return values_[at(i, j)]; }
    MagnitudeFlag flag(std::size_t i, std::size_t j) const { return flags_[at(i, j)]; }

    bool has_degenerate_groups() const {
        for (const auto& g : grouping_.groups())
            if (g.multiplicity() > 1) return true;
        return false;
    }

private:
    std::size_t at(std::size_t i, std::size_t j) const {
        if (i < 1 || i > n_ || j < 1 || j > n_)
            throw IndexOutOfRange("magnitude table index out of range");
        return (i - 1) * n_ + (j - 1);
    }

    std::size_t n_;
    Spectrum spectrum_;
    MultiplicityGrouping grouping_;
    std::vector<double> values_;
    std::vector<MagnitudeFlag> flags_;
};

// Spectra of all n principal minors; minor solves are independent and may
// be spread over threads with bitwise-identical results.
inline std::vector<Spectrum> minor_spectra(const HermitianMatrix& a, unsigned threads = 1) {
    const std::size_t n = a.n();
    std::vector<Spectrum> out(n);
    if (n == 1) {
        out[0] = Spectrum{};
        return out;
    }
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t j = begin; j < n; j += step)
            out[j] = spectrum_of(principal_minor(a, j + 1));
    };
    unsigned k = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (k == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(k);
        for (unsigned t = 0; t < k; ++t) pool.emplace_back(work, t, k);
        for (auto& th : pool) th.join();
    }
    return out;
}

// Full magnitude table from one full-matrix eigensolve and n minor solves.
inline MagnitudeTable magnitude_table(const HermitianMatrix& a, double tol = -1.0,
                                      unsigned threads = 1) {
    const std::size_t n = a.n();
    Spectrum sA = spectrum_of(a);
    if (tol <= 0.0) tol = default_multiplicity_tol(sA);
    MultiplicityGrouping grouping = group_multiplicities(sA, tol);
    std::vector<double> values(n * n, 0.0);
    std::vector<MagnitudeFlag> flags(n * n, MagnitudeFlag::computed);
    if (n == 1) {
        values[0] = 1.0;
        return MagnitudeTable(std::move(sA), std::move(grouping), std::move(values),
                              std::move(flags));
    }
    std::vector<Spectrum> minors = minor_spectra(a, threads);
    for (std::size_t j = 1; j <= n; ++j) {
        for (const auto& g : grouping.groups()) {
            if (g.multiplicity() == 1) {
                double q = magnitude_sq(sA, minors[j - 1], g.first, tol);
                values[(g.first - 1) * n + (j - 1)] = q;
                flags[(g.first - 1) * n + (j - 1)] =
                    (q == 0.0) ? MagnitudeFlag::exact_zero : MagnitudeFlag::computed;
            } else {
                double mass = magnitude_group(sA, minors[j - 1], g, tol);
                for (std::size_t i = g.first; i <= g.last; ++i) {
                    values[(i - 1) * n + (j - 1)] = mass;
                    flags[(i - 1) * n + (j - 1)] = MagnitudeFlag::degenerate_group_mass;
                }
            }
        }
    }
    return MagnitudeTable(std::move(sA), std::move(grouping), std::move(values), std::move(flags));
}

// Magnitude table read off a full eigendecomposition; reference path for
// cross-validation.  Degenerate groups are reported as summed mass with the
// same flagging convention as magnitude_table.
inline MagnitudeTable magnitude_table_oracle(const HermitianMatrix& a, double tol = -1.0) {
    const std::size_t n = a.n();
    EigenDecomposition ed = eigh(a);
    if (tol <= 0.0) tol = default_multiplicity_tol(ed.spectrum);
    MultiplicityGrouping grouping = group_multiplicities(ed.spectrum, tol);
    std::vector<double> values(n * n, 0.0);
    std::vector<MagnitudeFlag> flags(n * n, MagnitudeFlag::computed);
    for (std::size_t j = 1; j <= n; ++j)
        for (const auto& g : grouping.groups()) {
            if (g.multiplicity() == 1) {
                values[(g.first - 1) * n + (j - 1)] = std::norm(ed.vectors(j - 1, g.first - 1));
            } else {
                double mass = 0.0;
                for (std::size_t i = g.first; i <= g.last; ++i)
                    mass += std::norm(ed.vectors(j - 1, i - 1));
                for (std::size_t i = g.first; i <= g.last; ++i) {
                    values[(i - 1) * n + (j - 1)] = mass;
                    flags[(i - 1) * n + (j - 1)] = MagnitudeFlag::degenerate_group_mass;
                }
            }
        }
    return MagnitudeTable(std::move(ed.spectrum), std::move(grouping), std::move(values),
                          std::move(flags));
}

// Estimate of v_{i,j} * conj(v_{i,j'}).
struct CrossTerm {
    std::size_t i;
    std::size_t j;
    std::size_t jprime;
    cdouble value;
};

// Off-diagonal variant:
//   (-1)^{j+j'} det(l_i (I_n)_{j'j} - M_{j'j}) = p'_A(l_i) v_{i,j} conj(v_{i,j'})
// where the minors remove row j' and column j.  j = j' reduces to the plain
// magnitude.  i, j, j' are 1-based.
inline CrossTerm cross_term(const HermitianMatrix& a, const Spectrum& sA, std::size_t i,
                            std::size_t j, std::size_t jprime) {
    const std::size_t n = a.n();
    if (sA.size() != n) throw DimensionMismatch("spectrum size must match the matrix");
    if (i < 1 || i > n || j < 1 || j > n || jprime < 1 || jprime > n)
        throw IndexOutOfRange("cross term index out of range");
    detail::require_simple(sA, i, default_multiplicity_tol(sA));
    if (n == 1) return CrossTerm{i, j, jprime, cdouble{1.0}};

    double li = sA.value(i);
    double deriv = char_poly_derivative_at(sA, i);
    if (deriv == 0.0) throw DegenerateEigenvalue("characteristic polynomial derivative vanishes");

    IndexSet rows{jprime}, cols{j};
    ComplexMatrix mi = general_minor(ComplexMatrix::identity(n), rows, cols);
    ComplexMatrix ma = general_minor(a.matrix(), rows, cols);
    ComplexMatrix shifted(n - 1, n - 1);
    for (std::size_t r = 0; r < n - 1; ++r)
        for (std::size_t c = 0; c < n - 1; ++c)
            shifted(r, c) = li * mi(r, c) - ma(r, c);
    double sign = ((j + jprime) % 2 == 0) ? 1.0 : -1.0;
    cdouble value = sign * determinant(shifted) / deriv;
    if (j == jprime) value = std::max(0.0, value.real());
    return CrossTerm{i, j, jprime, value};
}

// Leading-corner split A = [[a11, X^*], [X, M1]] after symmetrically moving
// index j to the front.
struct BlockSplit {
    double a11;
    std::vector<cdouble> x;
    HermitianMatrix m1;
};

inline BlockSplit block_split(const HermitianMatrix& a, std::size_t j) {
    const std::size_t n = a.n();
    if (j < 1 || j > n) throw IndexOutOfRange("split index out of range");
    if (n < 2) throw DimensionTooSmall("split needs dimension at least 2");
    BlockSplit out{a(j - 1, j - 1).real(), {}, principal_minor(a, j)};
    out.x.reserve(n - 1);
    for (std::size_t r = 0; r < n; ++r)
        if (r != j - 1) out.x.push_back(a(r, j - 1));
    return out;
}

// Resolvent-based alternate expression
//   |v_{i,j}|^2 = 1 / (1 + X^* (l_i I - M_j)^{-2} X),
// evaluated through the shifted Hermitian solve (l_i I - M_j) y = X, whose
// solution gives X^* (l_i I - M_j)^{-2} X = ||y||^2.  Requires l_i to stay
// clear of the minor's spectrum.
inline double magnitude_alternate(const HermitianMatrix& a, double lambda_i, std::size_t j,
                                  double gap_tol = -1.0) {
    const std::size_t n = a.n();
    if (n == 1) return 1.0;
    BlockSplit split = block_split(a, j);

    Spectrum sMj = spectrum_of(split.m1);
    if (gap_tol <= 0.0) gap_tol = 1e-12 * std::max(1.0, sMj.spread());
    for (double xi : sMj.values())
        if (std::abs(lambda_i - xi) <= gap_tol) {
            std::ostringstream os;
            os << "shift " << lambda_i << " is within " << gap_tol
               << " of a minor eigenvalue";
            throw SingularShift(os.str());
        }

    ComplexMatrix shifted(n - 1, n - 1);
    for (std::size_t r = 0; r < n - 1; ++r)
        for (std::size_t c = 0; c < n - 1; ++c)
            shifted(r, c) = ((r == c) ? cdouble{lambda_i} : cdouble{}) - split.m1(r, c);
    detail::LuFactors f = detail::lu_factor(shifted);
    std::vector<cdouble> y = detail::lu_solve(f, split.x);
    double norm2 = 0.0;
    for (const auto& v : y) norm2 += std::norm(v);
    return 1.0 / (1.0 + norm2);
}

// Characteristic polynomial of the tridiagonal sub-block with rows and
// columns r_start+1 .. r_end, via the three-term recurrence
//   q_t = (l - a_{r_start+t}) q_{t-1} - b_{r_start+t-1}^2 q_{t-2}.
// An empty range gives 1.
inline double paige_char_recurrence(const SymmetricTridiagonal& t, std::size_t r_start,
                                    std::size_t r_end, double lambda) {
    if (r_start > r_end || r_end > t.n())
        throw IndexOutOfRange("tridiagonal block range out of range");
    double qm2 = 0.0, qm1 = 1.0;
    for (std::size_t k = r_start; k < r_end; ++k) {
        double q = (lambda - t.diag[k]) * qm1;
        if (k > r_start) q -= t.offdiag[k - 1] * t.offdiag[k - 1] * qm2;
        qm2 = qm1;
        qm1 = q;
    }
    return qm1;
}

// Squared r-th component of the i-th unit eigenvector of a symmetric
// tridiagonal matrix:
//   y_{ri}^2 = p_{0,r-1}(mu_i) p_{r,n}(mu_i) / p'(mu_i).
// i and r are 1-based.
inline double paige_magnitude(const SymmetricTridiagonal& t, const Spectrum& sT, std::size_t i,
                              std::size_t r) {
    const std::size_t n = t.n();
    if (sT.size() != n) throw DimensionMismatch("spectrum size must match the matrix");
    if (r < 1 || r > n) throw IndexOutOfRange("component index out of range");
    detail::require_simple(sT, i, default_multiplicity_tol(sT));
    double mu = sT.value(i);
    double deriv = char_poly_derivative_at(sT, i);
    if (deriv == 0.0) throw DegenerateEigenvalue("characteristic polynomial derivative vanishes");
    double head = paige_char_recurrence(t, 0, r - 1, mu);
    double tail = paige_char_recurrence(t, r, n, mu);
    return std::min(1.0, std::max(0.0, head * tail / deriv));
}

// Signed product y_{ri} y_{si} for r < s:
//   y_{ri} y_{si} = b_r ... b_{s-1} p_{0,r-1}(mu_i) p_{s,n}(mu_i) / p'(mu_i).
inline double paige_cross(const SymmetricTridiagonal& t, const Spectrum& sT, std::size_t i,
                          std::size_t r, std::size_t s) {
    const std::size_t n = t.n();
    if (sT.size() != n) throw DimensionMismatch("spectrum size must match the matrix");
    if (r < 1 || s > n) throw IndexOutOfRange("component index out of range");
    if (r >= s) throw InvariantViolation("cross product requires r < s");
    detail::require_simple(sT, i, default_multiplicity_tol(sT));
    double mu = sT.value(i);
    double deriv = char_poly_derivative_at(sT, i);
    if (deriv == 0.0) throw DegenerateEigenvalue("characteristic polynomial derivative vanishes");
    double coupling = 1.0;
    for (std::size_t k = r; k < s; ++k) coupling *= t.offdiag[k - 1];
    double head = paige_char_recurrence(t, 0, r - 1, mu);
    double tail = paige_char_recurrence(t, s, n, mu);
    return coupling * head * tail / deriv;
}

} // namespace eigenid
