#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quk/arith.hpp"
#include "quk/matrix.hpp"
#include "quk/pauli.hpp"

namespace quk {

// Conjugation action of a gate on sl(d, C) in the generalized Pauli basis.
struct AdjointMatrix {
    Mat entries;                  // (d^2-1) x (d^2-1), unitary
    std::int64_t source_dim = 0;  // d
    std::int64_t dim_alg = 0;     // d^2-1
};

// Lexicographic (a, b) over Z_d^2 \ {(0,0)}; fixes the basis column order.
std::vector<PauliIndex> pauli_basis_indices(std::int64_t d);

// entry(u', u) = <V_u', U V_u U^dag> / <V_u', V_u'> under the Hilbert-Schmidt pairing.
AdjointMatrix adjoint_in_pauli_basis(std::int64_t d, const Mat& u);

inline constexpr double kCommutantSigmaTol = 1e-7;

struct CommutantResult {
    int dimension = 0;
    // Orthonormal (Hilbert-Schmidt) basis of {M : A_i M = M A_i for all i}.
    std::vector<Mat> basis;
};

// Nullity of the stacked commutator system M -> (A_i M - M A_i)_i with
// singular values below kCommutantSigmaTol counted as zero. The system is
// first restricted to the spectral commutant of a well-chosen word in the
// adjoints (a superset of the answer), which keeps the SVD stages small; every
// input matrix is then enforced, so the seed choice cannot change the result.
CommutantResult commutant_of_matrices(const std::vector<Mat>& matrices);

int commutant_dimension(std::int64_t d, const std::vector<Mat>& gates);

struct OrbitTable {
    std::int64_t d = 0;
    struct Orbit {
        std::int64_t invariant = 0;  // gcd(u1, u2, d)
        std::vector<std::pair<std::int64_t, std::int64_t>> members;
    };
    std::vector<Orbit> orbits;  // ascending invariant
};

// Orbits of the enumerated SL(2, Z/dZ) on Z_d^2 \ {0}. For prime powers the
// gcd invariant is verified constant on each orbit.
OrbitTable orbit_decomposition(std::int64_t d, std::int64_t cap = kSl2DefaultCap);

struct SubspaceBlock {
    std::vector<int> basis_indices;  // Pauli basis axes inside the block, when axis-aligned
    int dimension = 0;
};

// Joint invariant-subspace decomposition of the gates' adjoint action: the
// isotypic blocks, obtained from the eigenspaces of a generic element of the
// commutant's center. Clifford inputs yield axis-aligned blocks matching the
// orbit decomposition.
std::vector<SubspaceBlock> invariant_subspace_report(std::int64_t d, const std::vector<Mat>& gates);

}  // namespace quk
