// Recovers relative phases of a complex Hermitian matrix's eigenvector from
// magnitude data of the original and two rotated matrices, then checks the
// residual of the reconstructed vector.

#include <cmath>
#include <cstdio>
#include <random>

#include "eigenid/eigenid.hpp"

int main() {
    using namespace eigenid;

    std::mt19937_64 gen(7);
    const std::size_t n = 5;
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = normal(gen);
        for (std::size_t c = r + 1; c < n; ++c) {
            m(r, c) = cdouble{normal(gen), normal(gen)};
            m(c, r) = std::conj(m(r, c));
        }
    }
    HermitianMatrix a = validate_hermitian(m);

    for (std::size_t i = 1; i <= n; ++i) {
        ReconstructedVector v = reconstruct_eigenvector(a, i);
        double res = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            cdouble acc = -v.lambda * v.components[r];
            for (std::size_t c = 0; c < n; ++c) acc += a(r, c) * v.components[c];
            res += std::norm(acc);
        }
        std::printf("lambda_%zu = %+.9f   |Av - lambda v| = %.3g\n", i, v.lambda,
                    std::sqrt(res));
    }
    return 0;
}
