#pragma once

#include <cstdint>
#include <vector>

#include "quk/matrix.hpp"

namespace quk {

struct UnitaryEigen {
    Vec values;   // unit-modulus eigenvalues
    Mat vectors;  // orthonormal columns, U * vectors = vectors * diag(values)
};

// Eigendecomposition of a unitary (normal) matrix via two staged Hermitian
// solves: diagonalize (U + U^dag)/2, then split each eigenvalue cluster with
// the compressed (U - U^dag)/(2i). Keeps the eigenvector basis orthonormal,
// which a general complex eigensolver does not guarantee under degeneracy.
UnitaryEigen eig_unitary(const Mat& u);

// Eigenphases in [0, 1) (eigenvalue = exp(2*pi*i*phase)), ascending.
std::vector<double> unitary_eigenphases(const Mat& u);

struct Svd {
    Eigen::VectorXd singular_values;  // descending
    Mat v;                            // right singular vectors (thin)
};

// high_relative_accuracy selects two-sided Jacobi (rank decisions relative to
// the largest singular value); otherwise a bidiagonal solver is used, which is
// much faster on the tall stacked systems and accurate at absolute thresholds.
Svd svd_thin_v(const Mat& a, bool high_relative_accuracy);

// Columns of V for singular values <= tol. Throws AmbiguousSpectrumError when
// any singular value falls inside [tol/10, tol*10].
Mat nullspace_with_guard(const Mat& a, double tol, std::vector<double>* spectrum_out = nullptr);

// Deterministic 64-bit stream (splitmix64) used wherever reproducible
// pseudo-randomness is needed; independent of standard library internals.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double next_uniform();        // [0, 1)
    double next_gaussian();       // Box-Muller
private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-distributed unitary from a QR of a Gaussian matrix.
Mat random_unitary(Eigen::Index n, DeterministicRng& rng);

}  // namespace quk
