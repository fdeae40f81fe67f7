#pragma once

// Hermitian eigensolvers: Householder tridiagonalization followed by
// implicit-shift QL (fast path), and cyclic complex Jacobi rotations
// (independent oracle path).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "eigenid/complex_matrix.hpp"
#include "eigenid/errors.hpp"

namespace eigenid {

struct SymmetricTridiagonal {
    std::vector<double> diag;     // a_1..a_n
    std::vector<double> offdiag;  // b_1..b_{n-1}, may be negative or zero

    SymmetricTridiagonal(std::vector<double> d, std::vector<double> e)
        : diag(std::move(d)), offdiag(std::move(e)) {
        if (diag.empty()) throw InvariantViolation("tridiagonal matrix needs dimension >= 1");
        if (offdiag.size() + 1 != diag.size())
            throw DimensionMismatch("offdiag must have one entry fewer than diag");
        for (double v : diag)
            if (!std::isfinite(v)) throw InvariantViolation("non-finite diagonal entry");
        for (double v : offdiag)
            if (!std::isfinite(v)) throw InvariantViolation("non-finite off-diagonal entry");
    }

    std::size_t n() const { return diag.size(); }

    ComplexMatrix dense() const {
        ComplexMatrix m(n(), n());
        for (std::size_t i = 0; i < n(); ++i) {
            m(i, i) = diag[i];
            if (i + 1 < n()) {
                m(i, i + 1) = offdiag[i];
                m(i + 1, i) = offdiag[i];
            }
        }
        return m;
    }
};

// Real eigenvalues sorted non-decreasing.  May be empty (0x0 minor).
class Spectrum {
public:
    Spectrum() = default;

    explicit Spectrum(std::vector<double> v) : vals_(std::move(v)) {
        for (double x : vals_)
            if (!std::isfinite(x)) throw InvariantViolation("non-finite eigenvalue");
        std::sort(vals_.begin(), vals_.end());
    }

    std::size_t size() const { return vals_.size(); }
    bool empty() const { return vals_.empty(); }
    const std::vector<double>& values() const { return vals_; }

    // 1-based accessor matching eigenvalue subscripts.
    double value(std::size_t i) const {
        if (i < 1 || i > vals_.size()) throw IndexOutOfRange("eigenvalue index out of range");
        return vals_[i - 1];
    }

    double min() const { return vals_.front(); }
    double max() const { return vals_.back(); }
    double spread() const { return vals_.empty() ? 0.0 : vals_.back() - vals_.front(); }

private:
    std::vector<double> vals_;
};

struct UnitaryFactor {
    ComplexMatrix q;

    double max_unitarity_deviation() const {
        ComplexMatrix g = q.conj_transpose() * q;
        double dev = 0.0;
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c) {
                cdouble want = (r == c) ? cdouble{1.0} : cdouble{};
                dev = std::max(dev, std::abs(g(r, c) - want));
            }
        return dev;
    }
};

struct EigenDecomposition {
    Spectrum spectrum;
    ComplexMatrix vectors;  // column i is the unit eigenvector for spectrum value i
};

struct TridiagonalizeResult {
    SymmetricTridiagonal t;
    UnitaryFactor q;
};

namespace detail {

// Implicit-shift QL with Wilkinson shift on (d, e); e[n-1] is workspace.
// When z is non-null its columns are rotated alongside, so z's columns end
// as eigenvectors of the original matrix z was accumulated from.
// Deflation when |e[k]| <= eps * (|d[k]| + |d[k+1]|); 50 iterations per
// eigenvalue before giving up.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, ComplexMatrix* z) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    if (n <= 1) return;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            std::size_t m = l;
            while (m + 1 < n) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (iter == 50)
                throw NoConvergence("tridiagonal QL exceeded 50 iterations for one eigenvalue");
            ++iter;
            // Wilkinson shift from the leading 2x2
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t ii = m; ii-- > l;) {
                double f = s * e[ii];
                double b = c * e[ii];
                r = std::hypot(f, g);
                e[ii + 1] = r;
                if (r == 0.0) {
                    // recover from underflow by splitting the matrix here
                    d[ii + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[ii + 1] - p;
                r = (d[ii] - g) * s + 2.0 * c * b;
                p = s * r;
                d[ii + 1] = g + p;
                g = c * r - b;
                if (z) {
                    for (std::size_t k = 0; k < z->rows(); ++k) {
                        cdouble zf = (*z)(k, ii + 1);
                        (*z)(k, ii + 1) = s * (*z)(k, ii) + c * zf;
                        (*z)(k, ii) = c * (*z)(k, ii) - s * zf;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

// Stable ascending sort of d with matching column permutation of z.
inline void sort_with_columns(std::vector<double>& d, ComplexMatrix* z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (std::size_t i = 0; i < n; ++i) ds[i] = d[order[i]];
    d = std::move(ds);
    if (z) {
        ComplexMatrix zs(z->rows(), z->cols());
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < z->rows(); ++r)
                zs(r, c) = (*z)(r, order[c]);
        *z = std::move(zs);
    }
}

// Scale each column so its largest-magnitude component (lowest index on
// ties) is real and positive.
inline void canonicalize_columns(ComplexMatrix& v) {
    for (std::size_t c = 0; c < v.cols(); ++c) {
        std::size_t best = 0;
        double best_mag = std::abs(v(0, c));
        for (std::size_t r = 1; r < v.rows(); ++r) {
            double mag = std::abs(v(r, c));
            if (mag > best_mag) { best_mag = mag; best = r; }
        }
        if (best_mag == 0.0) continue;
        cdouble scale = std::conj(v(best, c)) / best_mag;
        for (std::size_t r = 0; r < v.rows(); ++r) v(r, c) *= scale;
        v(best, c) = std::abs(v(best, c));
    }
}

inline double max_orthonormality_deviation(const ComplexMatrix& v) {
    ComplexMatrix g = v.conj_transpose() * v;
    double dev = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) {
            cdouble want = (r == c) ? cdouble{1.0} : cdouble{};
            dev = std::max(dev, std::abs(g(r, c) - want));
        }
    return dev;
}

inline double max_eigen_residual(const HermitianMatrix& a, const EigenDecomposition& ed) {
    std::size_t n = a.n();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double lam = ed.spectrum.values()[i];
        double res2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            cdouble acc = 0.0;
            for (std::size_t c = 0; c < n; ++c) acc += a(r, c) * ed.vectors(c, i);
            acc -= lam * ed.vectors(r, i);
            res2 += std::norm(acc);
        }
        worst = std::max(worst, std::sqrt(res2));
    }
    return worst;
}

inline void enforce_decomposition_invariants(const HermitianMatrix& a,
                                             const EigenDecomposition& ed) {
    if (max_orthonormality_deviation(ed.vectors) > 1e-10)
        throw InvariantViolation("eigenvector matrix failed the orthonormality bound");
    if (max_eigen_residual(a, ed) > 1e-9 * std::max(1e-300, a.frobenius_norm()))
        throw InvariantViolation("eigen decomposition failed the residual bound");
}

} // namespace detail

// Householder reduction to real symmetric tridiagonal form, Q^* A Q = T.
// Complex Hermitian input is handled by unitary reflectors followed by a
// diagonal phase transform that makes every off-diagonal entry real and
// non-negative, with the phases absorbed into Q.
inline TridiagonalizeResult tridiagonalize(const HermitianMatrix& a) {
    const std::size_t n = a.n();
    ComplexMatrix b = a.matrix();
    ComplexMatrix q = ComplexMatrix::identity(n);

    std::vector<cdouble> v(n), p(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;  // active block size below row k
        double sigma_tail = 0.0;
        for (std::size_t r = k + 2; r < n; ++r) sigma_tail += std::norm(b(r, k));
        if (sigma_tail == 0.0) continue;  // column already in tridiagonal form

        cdouble alpha = b(k + 1, k);
        double mu = std::sqrt(std::norm(alpha) + sigma_tail);
        cdouble phase = (alpha == cdouble{}) ? cdouble{1.0} : alpha / std::abs(alpha);
        cdouble sh = phase * mu;
        double gamma = mu * mu + mu * std::abs(alpha);

        // reflector direction v = x + sh * e1 over rows k+1..n-1
        v[0] = alpha + sh;
        for (std::size_t r = 1; r < m; ++r) v[r] = b(k + 1 + r, k);

        // column k maps to -sh * e1
        b(k + 1, k) = -sh;
        b(k, k + 1) = std::conj(-sh);
        for (std::size_t r = k + 2; r < n; ++r) {
            b(r, k) = 0.0;
            b(k, r) = 0.0;
        }

        // trailing block update B <- B - v w^* - w v^* with w = Bv/g - Kv
        for (std::size_t r = 0; r < m; ++r) {
            cdouble acc = 0.0;
            for (std::size_t c = 0; c < m; ++c) acc += b(k + 1 + r, k + 1 + c) * v[c];
            p[r] = acc / gamma;
        }
        cdouble vp = 0.0;
        for (std::size_t r = 0; r < m; ++r) vp += std::conj(v[r]) * p[r];
        double kk = vp.real() / (2.0 * gamma);
        for (std::size_t r = 0; r < m; ++r) w[r] = p[r] - kk * v[r];
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                b(k + 1 + r, k + 1 + c) -= v[r] * std::conj(w[c]) + w[r] * std::conj(v[c]);

        // accumulate Q <- Q (I - v v^*/g)
        for (std::size_t r = 0; r < n; ++r) {
            cdouble acc = 0.0;
            for (std::size_t c = 0; c < m; ++c) acc += q(r, k + 1 + c) * v[c];
            acc /= gamma;
            for (std::size_t c = 0; c < m; ++c) q(r, k + 1 + c) -= acc * std::conj(v[c]);
        }
    }

    // diagonal phase transform: make subdiagonal entries real non-negative
    std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
    std::vector<cdouble> d(n, cdouble{1.0});
    for (std::size_t kk = 0; kk + 1 < n; ++kk) {
        cdouble sub = b(kk + 1, kk);
        double mag = std::abs(sub);
        d[kk + 1] = (mag == 0.0) ? d[kk] : d[kk] * (sub / mag);
        off[kk] = mag;
    }
    for (std::size_t i = 0; i < n; ++i) diag[i] = b(i, i).real();
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) q(r, c) *= d[c];

    return TridiagonalizeResult{SymmetricTridiagonal(std::move(diag), std::move(off)),
                                UnitaryFactor{std::move(q)}};
}

// All eigenvalues of a symmetric tridiagonal matrix, sorted.
inline Spectrum eigvals_tridiag(const SymmetricTridiagonal& t) {
    std::vector<double> d = t.diag;
    std::vector<double> e = t.offdiag;
    e.push_back(0.0);
    detail::ql_implicit(d, e, nullptr);
    return Spectrum(std::move(d));
}

// Full eigendecomposition via tridiagonalize + QL with accumulated rotations.
inline EigenDecomposition eigh(const HermitianMatrix& a) {
    TridiagonalizeResult tq = tridiagonalize(a);
    std::vector<double> d = tq.t.diag;
    std::vector<double> e = tq.t.offdiag;
    e.push_back(0.0);
    ComplexMatrix z = std::move(tq.q.q);
    detail::ql_implicit(d, e, &z);
    detail::sort_with_columns(d, &z);
    detail::canonicalize_columns(z);
    EigenDecomposition ed{Spectrum(std::move(d)), std::move(z)};
    detail::enforce_decomposition_invariants(a, ed);
    return ed;
}

// Independent oracle: cyclic complex Jacobi rotations.  Converges when the
// off-diagonal Frobenius mass drops below 1e-14 * ||A||_F, with a hard cap
// of 30 full sweeps.
inline EigenDecomposition eigh_jacobi(const HermitianMatrix& a) {
    const std::size_t n = a.n();
    ComplexMatrix b = a.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double norm_f = a.frobenius_norm();
    const double target = 1e-14 * norm_f;
    const double skip = (n > 0) ? target / (2.0 * static_cast<double>(n)) : 0.0;

    auto off_mass = [&]() {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) s += std::norm(b(r, c));
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_mass() > target) {
        if (sweep == 30) throw NoConvergence("Jacobi solver exceeded 30 sweeps");
        ++sweep;
        for (std::size_t pp = 0; pp + 1 < n; ++pp)
            for (std::size_t qq = pp + 1; qq < n; ++qq) {
                cdouble apq = b(pp, qq);
                double mag = std::abs(apq);
                if (mag <= skip) continue;
                cdouble omega = apq / mag;
                double app = b(pp, pp).real();
                double aqq = b(qq, qq).real();
                double tau = (aqq - app) / (2.0 * mag);
                double sign = (tau < 0.0) ? -1.0 : 1.0;
                double t = sign / (std::abs(tau) + std::hypot(1.0, tau));
                double c = 1.0 / std::hypot(1.0, t);
                double s = t * c;

                for (std::size_t r = 0; r < n; ++r) {
                    if (r == pp || r == qq) continue;
                    cdouble arp = b(r, pp), arq = b(r, qq);
                    cdouble nrp = c * arp - s * std::conj(omega) * arq;
                    cdouble nrq = s * omega * arp + c * arq;
                    b(r, pp) = nrp;
                    b(pp, r) = std::conj(nrp);
                    b(r, qq) = nrq;
                    b(qq, r) = std::conj(nrq);
                }
                b(pp, pp) = app - t * mag;
                b(qq, qq) = aqq + t * mag;
                b(pp, qq) = 0.0;
                b(qq, pp) = 0.0;

                for (std::size_t r = 0; r < n; ++r) {
                    cdouble vrp = v(r, pp), vrq = v(r, qq);
                    v(r, pp) = c * vrp - s * std::conj(omega) * vrq;
                    v(r, qq) = s * omega * vrp + c * vrq;
                }
            }
    }

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = b(i, i).real();
    detail::sort_with_columns(d, &v);
    detail::canonicalize_columns(v);
    EigenDecomposition ed{Spectrum(std::move(d)), std::move(v)};
    detail::enforce_decomposition_invariants(a, ed);
    return ed;
}

} // namespace eigenid
