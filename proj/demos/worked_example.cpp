// Walks the full pipeline on a small real symmetric matrix: eigenvalues of
// the matrix and its principal minors, the squared-magnitude table computed
// from eigenvalue data alone, and the reconstructed first eigenvector.

#include <cstdio>

#include "eigenid/eigenid.hpp"

int main() {
    using namespace eigenid;

    HermitianMatrix a = validate_hermitian(ComplexMatrix::from_rows({
        {1.0, 1.0, -1.0},
        {1.0, 3.0, 1.0},
        {-1.0, 1.0, 3.0},
    }));

    Spectrum s = spectrum_of(a);
    std::printf("eigenvalues:");
    for (std::size_t i = 1; i <= s.size(); ++i) std::printf(" %.12g", s.value(i));
    std::printf("\n\n");

    for (std::size_t j = 1; j <= a.n(); ++j) {
        Spectrum sm = spectrum_of(principal_minor(a, j));
        std::printf("minor %zu eigenvalues:", j);
        for (std::size_t k = 1; k <= sm.size(); ++k) std::printf(" %.12g", sm.value(k));
        std::printf("\n");
    }
    std::printf("\n");

    MagnitudeTable table = magnitude_table(a);
    std::printf("squared magnitudes |v_ij|^2 from eigenvalue data:\n");
    for (std::size_t i = 1; i <= a.n(); ++i) {
        for (std::size_t j = 1; j <= a.n(); ++j) std::printf("  %.12g", table.value(i, j));
        std::printf("\n");
    }
    std::printf("\n");

    ReconstructedVector v = reconstruct_eigenvector(a, 1);
    std::printf("eigenvector for lambda_1 = %.12g (pivot %zu):\n", v.lambda, v.pivot);
    for (std::size_t r = 0; r < v.components.size(); ++r)
        std::printf("  %+.12g %+.12gi\n", v.components[r].real(), v.components[r].imag());
    return 0;
}
