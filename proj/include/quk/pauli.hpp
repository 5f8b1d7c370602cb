#pragma once

#include <cstdint>
#include <optional>

#include "quk/arith.hpp"
#include "quk/matrix.hpp"

namespace quk {

// Order of the Heisenberg phase group: K_d = d for odd d, 2d for even d.
std::int64_t heisenberg_phase_order(std::int64_t d);

// Label of a Pauli operator V = zeta_{K_d}^{phase_exp} X^a Z^b.
struct PauliIndex {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t phase_exp = 0;
};

Mat pauli_x(std::int64_t d);
Mat pauli_z(std::int64_t d);
Mat pauli_v(std::int64_t d, const PauliIndex& u);

// H_d[k, j] = omega^{jk} / sqrt(d).
Mat hadamard(std::int64_t d);
// P = diag(omega^{j(j+rho_d)/2}), rho_d = 0 for even d, 1 for odd d. For even
// d the exponents live in the 2d-th roots.
Mat phase_gate(std::int64_t d);

// Exponent e with V_v V_u V_v^dag = omega^e V_u; convention e = v_b*u_a - v_a*u_b mod d.
std::int64_t commutation_phase(std::int64_t d, const PauliIndex& v, const PauliIndex& u);

struct PauliMatch {
    PauliIndex index;  // phase_exp unused (0); the recognized (a, b)
    cplx phase;        // unit modulus, M = phase * X^a Z^b
};

// Recognize M = c * X^a Z^b to entrywise tolerance eps; absent when M is not a
// Pauli up to phase. M must be unitary.
std::optional<PauliMatch> is_pauli_up_to_phase(std::int64_t d, const Mat& m, double eps = 1e-9);

enum class ConjugationAxis { X, Z };

struct CliffordWitness {
    bool member = false;
    std::optional<SL2Element> sl2_image;          // present iff member
    std::optional<ConjugationAxis> failure_axis;  // present iff not member
};

// Operational membership test: U is Clifford iff U X U^dag and U Z U^dag are
// both Paulis up to phase. The SL2 image columns are the index images of X and Z.
CliffordWitness clifford_membership(std::int64_t d, const Mat& u, double eps = 1e-9);

// Permutation matrix of crt_index_map(d1, d2): Pi |x>_d = |(x mod d1, x mod d2)>.
Mat crt_permutation(std::int64_t d1, std::int64_t d2);

// Pi U Pi^dag: relabels a dimension d1*d2 gate into the tensor basis.
Mat crt_conjugate(std::int64_t d1, std::int64_t d2, const Mat& u);

}  // namespace quk
