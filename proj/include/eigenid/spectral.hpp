#pragma once

// Spectrum-domain functions: characteristic polynomial evaluation in product
// form, its derivative at an eigenvalue, elementary symmetric polynomials,
// and multiplicity grouping of numerically coincident eigenvalues.

#include <cmath>
#include <cstddef>
#include <vector>

#include "eigenid/eigensolve.hpp"
#include "eigenid/errors.hpp"

namespace eigenid {

// p(lambda) = prod_k (lambda - lambda_k); the empty spectrum gives 1.
inline cdouble char_poly_eval(const Spectrum& s, cdouble lambda) {
    cdouble p = 1.0;
    for (double x : s.values()) p *= (lambda - x);
    return p;
}

// p'(lambda_i) = prod_{k != i} (lambda_i - lambda_k); exactly 0 when the
// value repeats in the spectrum.  i is 1-based.
inline double char_poly_derivative_at(const Spectrum& s, std::size_t i) {
    if (i < 1 || i > s.size()) throw IndexOutOfRange("eigenvalue index out of range");
    double li = s.values()[i - 1];
    double p = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k == i - 1) continue;
        p *= (li - s.values()[k]);
    }
    return p;
}

// k-th elementary symmetric polynomial of the spectrum, S_0 = 1.  Computed
// as a coefficient of prod (x + lambda_i) built by convolution.
inline double elementary_symmetric(const Spectrum& s, std::size_t k) {
    if (k > s.size()) throw IndexOutOfRange("symmetric polynomial order exceeds spectrum size");
    std::vector<double> coef(k + 1, 0.0);
    coef[0] = 1.0;
    std::size_t filled = 0;
    for (double x : s.values()) {
        std::size_t top = std::min(filled + 1, k);
        for (std::size_t j = top; j >= 1; --j) coef[j] += x * coef[j - 1];
        ++filled;
    }
    return coef[k];
}

// Maximal run of numerically coincident eigenvalues; indices are 1-based
// positions in the sorted spectrum, inclusive on both ends.
struct MultiplicityGroup {
    std::size_t first;
    std::size_t last;
    double representative;

    std::size_t multiplicity() const { return last - first + 1; }
    bool contains(std::size_t i) const { return first <= i && i <= last; }
};

class MultiplicityGrouping {
public:
    MultiplicityGrouping(std::vector<MultiplicityGroup> groups, double tol)
        : groups_(std::move(groups)), tol_(tol) {}

    const std::vector<MultiplicityGroup>& groups() const { return groups_; }
    double tolerance() const { return tol_; }

    const MultiplicityGroup& group_of(std::size_t i) const {
        for (const auto& g : groups_)
            if (g.contains(i)) return g;
        throw IndexOutOfRange("eigenvalue index outside every group");
    }

    bool is_simple(std::size_t i) const { return group_of(i).multiplicity() == 1; }

private:
    std::vector<MultiplicityGroup> groups_;
    double tol_;
};

inline double default_multiplicity_tol(const Spectrum& s) {
    return 1e-8 * std::max(1.0, s.spread());
}

// Greedy left-to-right chaining: consecutive sorted values within tol of
// each other join one group; the representative is the group mean.
inline MultiplicityGrouping group_multiplicities(const Spectrum& s, double tol) {
    if (!(tol > 0.0)) throw InvariantViolation("multiplicity tolerance must be positive");
    std::vector<MultiplicityGroup> groups;
    const auto& v = s.values();
    std::size_t start = 0;
    while (start < v.size()) {
        std::size_t end = start;
        double sum = v[start];
        while (end + 1 < v.size() && v[end + 1] - v[end] <= tol) {
            ++end;
            sum += v[end];
        }
        groups.push_back(MultiplicityGroup{start + 1, end + 1,
                                           sum / static_cast<double>(end - start + 1)});
        start = end + 1;
    }
    return MultiplicityGrouping(std::move(groups), tol);
}

inline MultiplicityGrouping group_multiplicities(const Spectrum& s) {
    return group_multiplicities(s, default_multiplicity_tol(s));
}

} // namespace eigenid
