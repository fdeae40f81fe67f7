#pragma once

// Dense complex matrices, Hermitian validation, principal and generalized
// minors, LU determinants, adjugates, and two-coordinate unitary rotations.
//
// Element accessors operator()(r, c) are 0-based.  Index *parameters* that
// name rows/columns of the underlying problem (j, rows_removed, ...) are
// 1-based throughout the public API, matching standard linear-algebra
// notation; see README.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eigenid/errors.hpp"

namespace eigenid {

using cdouble = std::complex<double>;

constexpr double kDefaultHermTol = 1e-10;

class ComplexMatrix {
public:
    ComplexMatrix(std::size_t n_rows, std::size_t n_cols)
        : rows_(n_rows), cols_(n_cols), data_(n_rows * n_cols) {
        if (n_rows == 0 || n_cols == 0)
            throw InvariantViolation("matrix dimensions must be at least 1x1");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cdouble>> rows) {
        std::size_t nr = rows.size();
        if (nr == 0) throw InvariantViolation("matrix dimensions must be at least 1x1");
        std::size_t nc = rows.begin()->size();
        ComplexMatrix m(nr, nc);
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != nc)
                throw InvariantViolation("ragged row in matrix literal");
            std::size_t c = 0;
            for (const auto& v : row) m(r, c++) = v;
            ++r;
        }
        m.ensure_finite();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void ensure_finite() const {
        for (const auto& v : data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InvariantViolation("matrix contains a non-finite entry");
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    cdouble trace() const {
        cdouble t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix conj_transpose() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                m(c, r) = std::conj((*this)(r, c));
        return m;
    }

private:
    std::size_t rows_, cols_;
    std::vector<cdouble> data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matrix product dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix difference dimension mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j)));
    return m;
}

// Sorted set of distinct 1-based indices.
class IndexSet {
public:
    explicit IndexSet(std::vector<std::size_t> indices) : idx_(std::move(indices)) {
        if (idx_.empty()) throw InvariantViolation("index set must be non-empty");
        std::sort(idx_.begin(), idx_.end());
        if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end())
            throw InvariantViolation("index set contains a duplicate");
        if (idx_.front() == 0) throw InvariantViolation("indices are 1-based");
    }

    IndexSet(std::initializer_list<std::size_t> indices)
        : IndexSet(std::vector<std::size_t>(indices)) {}

    std::size_t size() const { return idx_.size(); }
    std::size_t max_index() const { return idx_.back(); }
    bool contains(std::size_t j) const {
        return std::binary_search(idx_.begin(), idx_.end(), j);
    }
    const std::vector<std::size_t>& indices() const { return idx_; }

    // Complement within {1, ..., n}.
    IndexSet complement(std::size_t n) const {
        std::vector<std::size_t> out;
        for (std::size_t j = 1; j <= n; ++j)
            if (!contains(j)) out.push_back(j);
        return IndexSet(std::move(out));
    }

private:
    std::vector<std::size_t> idx_;
};

// Two-coordinate rotation mixing components j and k with unit-modulus omega.
struct RotationSpec {
    std::size_t j;
    std::size_t k;
    cdouble omega;

    RotationSpec(std::size_t j_, std::size_t k_, cdouble omega_) : j(j_), k(k_), omega(omega_) {
        if (j == k) throw InvariantViolation("rotation requires two distinct indices");
        if (j == 0 || k == 0) throw InvariantViolation("indices are 1-based");
        if (std::abs(std::abs(omega) - 1.0) > 1e-14)
            throw InvariantViolation("rotation phase must have unit modulus");
    }
};

class HermitianMatrix {
public:
    // Symmetrize (A + A^*)/2 without a tolerance gate; the result is stored
    // with exactly conjugate-symmetric entries and a real diagonal.
    static HermitianMatrix symmetrized(const ComplexMatrix& m) {
        if (!m.is_square()) throw NotSquare("Hermitian matrix must be square");
        m.ensure_finite();
        ComplexMatrix s(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            s(r, r) = m(r, r).real();
            for (std::size_t c = r + 1; c < m.cols(); ++c) {
                cdouble v = 0.5 * (m(r, c) + std::conj(m(c, r)));
                s(r, c) = v;
                s(c, r) = std::conj(v);
            }
        }
        return HermitianMatrix(std::move(s));
    }

    std::size_t n() const { return m_.rows(); }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
    const ComplexMatrix& matrix() const { return m_; }
    double frobenius_norm() const { return m_.frobenius_norm(); }
    double trace() const { return m_.trace().real(); }

private:
    explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    friend HermitianMatrix principal_minor(const HermitianMatrix&, std::size_t);

    ComplexMatrix m_;
};

// Gate for the Hermitian hypothesis: accepts M when every deviation
// |M[j][k] - conj(M[k][j])| stays within herm_tol * max(1, ||M||_F), then
// returns the symmetrized (M + M^*)/2.
inline HermitianMatrix validate_hermitian(const ComplexMatrix& m,
                                          double herm_tol = kDefaultHermTol) {
    if (!m.is_square()) throw NotSquare("Hermitian matrix must be square");
    m.ensure_finite();
    double scale = std::max(1.0, m.frobenius_norm());
    double max_dev = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r; c < m.cols(); ++c)
            max_dev = std::max(max_dev, std::abs(m(r, c) - std::conj(m(c, r))));
    if (max_dev > herm_tol * scale) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max deviation " << max_dev
           << " exceeds " << herm_tol * scale;
        throw NotHermitian(os.str(), max_dev);
    }
    return HermitianMatrix::symmetrized(m);
}

// Minor formed by deleting the j-th row and column (j is 1-based).
inline ComplexMatrix principal_minor(const ComplexMatrix& a, std::size_t j) {
    if (!a.is_square()) throw NotSquare("principal minor requires a square matrix");
    std::size_t n = a.rows();
    if (n < 2) throw DimensionTooSmall("cannot take a minor of a 1x1 matrix");
    if (j < 1 || j > n) throw IndexOutOfRange("minor index out of range");
    ComplexMatrix m(n - 1, n - 1);
    for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j - 1) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
            if (c == j - 1) continue;
            m(mr, mc++) = a(r, c);
        }
        ++mr;
    }
    return m;
}

inline HermitianMatrix principal_minor(const HermitianMatrix& a, std::size_t j) {
    return HermitianMatrix(principal_minor(a.matrix(), j));
}

// Minor formed by removing the rows indexed by rows_removed and the columns
// indexed by cols_removed (1-based), preserving the relative order of what
// remains.  Both sets must have equal cardinality m < n.
inline ComplexMatrix general_minor(const ComplexMatrix& a, const IndexSet& rows_removed,
                                   const IndexSet& cols_removed) {
    if (!a.is_square()) throw NotSquare("general minor requires a square matrix");
    std::size_t n = a.rows();
    if (rows_removed.size() != cols_removed.size())
        throw CardinalityMismatch("row and column sets must have equal cardinality");
    std::size_t m = rows_removed.size();
    if (m >= n) throw CardinalityMismatch("cannot remove all rows of the matrix");
    if (rows_removed.max_index() > n || cols_removed.max_index() > n)
        throw IndexOutOfRange("minor index out of range");
    ComplexMatrix out(n - m, n - m);
    for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (rows_removed.contains(r + 1)) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
            if (cols_removed.contains(c + 1)) continue;
            out(mr, mc++) = a(r, c);
        }
        ++mr;
    }
    return out;
}

namespace detail {

// Packed LU factorization with partial pivoting.  perm_sign is the sign of
// the row permutation; singular is set when a pivot column vanishes.
struct LuFactors {
    ComplexMatrix lu;
    std::vector<std::size_t> perm;
    int perm_sign = 1;
    bool singular = false;
};

inline LuFactors lu_factor(const ComplexMatrix& a) {
    std::size_t n = a.rows();
    LuFactors f{a, std::vector<std::size_t>(n), 1, false};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            double v = std::abs(f.lu(r, k));
            if (v > best) { best = v; piv = r; }
        }
        if (best < std::numeric_limits<double>::min()) {
            f.singular = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(f.lu(k, c), f.lu(piv, c));
            std::swap(f.perm[k], f.perm[piv]);
            f.perm_sign = -f.perm_sign;
        }
        cdouble pivot = f.lu(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            cdouble mult = f.lu(r, k) / pivot;
            f.lu(r, k) = mult;
            for (std::size_t c = k + 1; c < n; ++c)
                f.lu(r, c) -= mult * f.lu(k, c);
        }
    }
    return f;
}

inline std::vector<cdouble> lu_solve(const LuFactors& f, const std::vector<cdouble>& b) {
    std::size_t n = f.lu.rows();
    if (f.singular) throw SingularShift("linear system is singular");
    std::vector<cdouble> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

} // namespace detail

// Determinant via LU with partial pivoting; a vanished pivot column yields
// an exact 0.
inline cdouble determinant(const ComplexMatrix& a) {
    if (!a.is_square()) throw NotSquare("determinant requires a square matrix");
    detail::LuFactors f = detail::lu_factor(a);
    if (f.singular) return 0.0;
    cdouble det = static_cast<double>(f.perm_sign);
    for (std::size_t i = 0; i < a.rows(); ++i) det *= f.lu(i, i);
    return det;
}

// Adjugate by explicit cofactors: entry (i, j) is (-1)^{i+j} det(M_{ji}),
// where M_{ji} deletes row j and column i.
inline ComplexMatrix adjugate_cofactor(const ComplexMatrix& a) {
    if (!a.is_square()) throw NotSquare("adjugate requires a square matrix");
    std::size_t n = a.rows();
    if (n < 2) throw DimensionTooSmall("adjugate needs dimension at least 2");
    ComplexMatrix adj(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            ComplexMatrix minor = general_minor(a, IndexSet{j}, IndexSet{i});
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj(i - 1, j - 1) = sign * determinant(minor);
        }
    return adj;
}

// G A G^* where G is the identity except for the (j, k) plane:
//   G[j][j] = 1/sqrt(2)          G[j][k] = omega/sqrt(2)
//   G[k][j] = -conj(omega)/sqrt(2)   G[k][k] = 1/sqrt(2).
// The spectrum is preserved; only rows/columns j and k change.
inline HermitianMatrix rotate_pair(const HermitianMatrix& a, const RotationSpec& spec) {
    std::size_t n = a.n();
    if (spec.j > n || spec.k > n) throw IndexOutOfRange("rotation index out of range");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::size_t j = spec.j - 1, k = spec.k - 1;
    cdouble w = spec.omega;

    ComplexMatrix b = a.matrix();
    // Rows: (G B)[j] = (B[j] + w B[k])/sqrt2, (G B)[k] = (-conj(w) B[j] + B[k])/sqrt2.
    for (std::size_t c = 0; c < n; ++c) {
        cdouble bj = b(j, c), bk = b(k, c);
        b(j, c) = (bj + w * bk) * inv_sqrt2;
        b(k, c) = (-std::conj(w) * bj + bk) * inv_sqrt2;
    }
    // Columns: (B G^*)[.][j] = (B[.][j] + conj(w) B[.][k])/sqrt2,
    //          (B G^*)[.][k] = (-w B[.][j] + B[.][k])/sqrt2.
    for (std::size_t r = 0; r < n; ++r) {
        cdouble bj = b(r, j), bk = b(r, k);
        b(r, j) = (bj + std::conj(w) * bk) * inv_sqrt2;
        b(r, k) = (-w * bj + bk) * inv_sqrt2;
    }
    return HermitianMatrix::symmetrized(b);
}

} // namespace eigenid
