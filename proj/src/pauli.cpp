#include "quk/pauli.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "quk/errors.hpp"

namespace quk {

namespace {

std::int64_t mod_pos(std::int64_t x, std::int64_t n) {
    std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

void require_dim(std::int64_t d) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
}

}  // namespace

std::int64_t heisenberg_phase_order(std::int64_t d) {
    require_dim(d);
    return d % 2 == 0 ? 2 * d : d;
}

Mat pauli_x(std::int64_t d) {
    require_dim(d);
    Mat x = Mat::Zero(d, d);
    for (std::int64_t j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
    return x;
}

Mat pauli_z(std::int64_t d) {
    require_dim(d);
    Mat z = Mat::Zero(d, d);
    for (std::int64_t j = 0; j < d; ++j) z(j, j) = root_of_unity(j, d);
    return z;
}

Mat pauli_v(std::int64_t d, const PauliIndex& u) {
    require_dim(d);
    const std::int64_t a = mod_pos(u.a, d);
    const std::int64_t b = mod_pos(u.b, d);
    const cplx phase = root_of_unity(u.phase_exp, heisenberg_phase_order(d));
    Mat v = Mat::Zero(d, d);
    for (std::int64_t j = 0; j < d; ++j)
        v((j + a) % d, j) = phase * root_of_unity(j * b, d);
    return v;
}

Mat hadamard(std::int64_t d) {
    require_dim(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    Mat h(d, d);
    for (std::int64_t k = 0; k < d; ++k)
        for (std::int64_t j = 0; j < d; ++j)
            h(k, j) = scale * root_of_unity(j * k, d);
    return h;
}

Mat phase_gate(std::int64_t d) {
    require_dim(d);
    Mat p = Mat::Zero(d, d);
    if (d % 2 == 0) {
        // omega^{j^2/2} = zeta_{2d}^{j^2}
        for (std::int64_t j = 0; j < d; ++j) p(j, j) = root_of_unity(j * j, 2 * d);
    } else {
        for (std::int64_t j = 0; j < d; ++j) p(j, j) = root_of_unity(j * (j + 1) / 2, d);
    }
    return p;
}

std::int64_t commutation_phase(std::int64_t d, const PauliIndex& v, const PauliIndex& u) {
    require_dim(d);
    return mod_pos(v.b * u.a - v.a * u.b, d);
}

std::optional<PauliMatch> is_pauli_up_to_phase(std::int64_t d, const Mat& m, double eps) {
    require_dim(d);
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("is_pauli_up_to_phase: wrong dimension");
    require_unitary(m, kUnitaryTol, "is_pauli_up_to_phase input");

    // Pivot: first row-major entry above 1/(2 sqrt(d)); every unitary has one.
    const double pivot_floor = 0.5 / std::sqrt(static_cast<double>(d));
    std::int64_t pr = -1, pc = -1;
    for (std::int64_t r = 0; r < d && pr < 0; ++r)
        for (std::int64_t c = 0; c < d; ++c)
            if (std::abs(m(r, c)) > pivot_floor) {
                pr = r;
                pc = c;
                break;
            }
    if (pr < 0) return std::nullopt;

    // A Pauli has support only on the wrapped diagonal r - c = a.
    const std::int64_t a = mod_pos(pr - pc, d);
    for (std::int64_t b = 0; b < d; ++b) {
        // Candidate phase from the pivot entry: V[(c+a)%d, c] = omega^{c b}.
        cplx phase = m(pr, pc) / root_of_unity(pc * b, d);
        const double mag = std::abs(phase);
        if (std::abs(mag - 1.0) > eps) continue;
        phase /= mag;
        bool ok = true;
        for (std::int64_t c = 0; c < d && ok; ++c) {
            const std::int64_t r = (c + a) % d;
            const cplx expected = phase * root_of_unity(c * b, d);
            for (std::int64_t rr = 0; rr < d && ok; ++rr) {
                const cplx want = rr == r ? expected : cplx(0.0, 0.0);
                if (std::abs(m(rr, c) - want) > eps) ok = false;
            }
        }
        if (ok) return PauliMatch{PauliIndex{a, b, 0}, phase};
    }
    return std::nullopt;
}

CliffordWitness clifford_membership(std::int64_t d, const Mat& u, double eps) {
    require_dim(d);
    if (u.rows() != d || u.cols() != d) throw std::invalid_argument("clifford_membership: wrong dimension");
    require_unitary(u, kUnitaryTol, "clifford_membership input");

    const Mat udag = u.adjoint();
    const auto image_x = is_pauli_up_to_phase(d, u * pauli_x(d) * udag, eps);
    if (!image_x) return {false, std::nullopt, ConjugationAxis::X};
    const auto image_z = is_pauli_up_to_phase(d, u * pauli_z(d) * udag, eps);
    if (!image_z) return {false, std::nullopt, ConjugationAxis::Z};

    SL2Element psi;
    psi.n = d;
    psi.a = image_x->index.a;
    psi.c = image_x->index.b;
    psi.b = image_z->index.a;
    psi.d = image_z->index.b;
    const std::int64_t det = mod_pos(psi.a * psi.d - psi.b * psi.c, d);
    if (det != 1) {
        std::ostringstream msg;
        msg << "clifford_membership: conjugation images have determinant " << det
            << " (mod " << d << "), expected 1";
        throw ConsistencyError(msg.str());
    }
    return {true, psi, std::nullopt};
}

Mat crt_permutation(std::int64_t d1, std::int64_t d2) {
    const auto pi = crt_index_map(d1, d2);
    const std::int64_t n = d1 * d2;
    Mat perm = Mat::Zero(n, n);
    for (std::int64_t x = 0; x < n; ++x) perm(static_cast<Eigen::Index>(pi[x]), x) = 1.0;
    return perm;
}

Mat crt_conjugate(std::int64_t d1, std::int64_t d2, const Mat& u) {
    const std::int64_t n = d1 * d2;
    if (u.rows() != n || u.cols() != n)
        throw std::invalid_argument("crt_conjugate: matrix dimension must equal d1*d2");
    const Mat perm = crt_permutation(d1, d2);
    return perm * u * perm.adjoint();
}

}  // namespace quk
