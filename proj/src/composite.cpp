#include "quk/composite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "quk/adjoint.hpp"
#include "quk/closure.hpp"
#include "quk/diagonal.hpp"
#include "quk/errors.hpp"
#include "quk/linalg.hpp"
#include "quk/pauli.hpp"

namespace quk {

namespace {

void require_factors(std::int64_t p, std::int64_t q) {
    if (p < 2 || q < 2) throw std::invalid_argument("factor dimensions must be >= 2");
}

}  // namespace

Mat cn_gate(std::int64_t p, std::int64_t q) {
    require_factors(p, q);
    Mat cn = Mat::Zero(p * q, p * q);
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < q; ++y)
            cn(x * q + (y + x) % q, x * q + y) = 1.0;
    return cn;
}

Mat swap_gate(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("swap_gate: k must be >= 1");
    Mat s = Mat::Zero(k * k, k * k);
    for (std::int64_t i = 0; i < k; ++i)
        for (std::int64_t j = 0; j < k; ++j) s(j * k + i, i * k + j) = 1.0;
    return s;
}

Mat intra_qudit_cn(std::int64_t d, std::int64_t p, std::int64_t q) {
    require_factors(p, q);
    if (p * q != d) throw std::invalid_argument("intra_qudit_cn: d must equal p*q");
    if (std::gcd(p, q) != 1) {
        std::ostringstream msg;
        msg << "intra_qudit_cn: gcd(" << p << ", " << q << ") = " << std::gcd(p, q)
            << ", expected coprime factors";
        throw std::invalid_argument(msg.str());
    }
    const Mat perm = crt_permutation(p, q);
    return perm.adjoint() * cn_gate(p, q) * perm;
}

MagicCheckResult induced_magic_check(std::int64_t p, std::int64_t q) {
    require_factors(p, q);
    const Mat cn = cn_gate(p, q);
    const Mat zq_dag = pauli_z(q).adjoint();
    MagicCheckResult out;
    out.lhs = cn * kron(Mat::Identity(p, p), zq_dag) * cn.adjoint();
    out.rhs = kron(t_s(p, q), zq_dag);
    out.max_abs_deviation = max_abs_diff(out.lhs, out.rhs);
    return out;
}

Mat bezout_t_synthesis(std::int64_t p, std::int64_t q) {
    require_factors(p, q);
    const auto [a, b] = bezout(p, q);  // rejects non-coprime inputs
    Mat t = Mat::Zero(p, p);
    for (std::int64_t k = 0; k < p; ++k)
        t(k, k) = root_of_unity(k * a, q) * root_of_unity(k * b, p);
    return t;
}

int operator_schmidt_rank(const Mat& v, std::int64_t k, std::int64_t l, double rel_tol) {
    if (v.rows() != k * l || v.cols() != k * l)
        throw std::invalid_argument("operator_schmidt_rank: dimension must be k*l");
    Mat realigned(k * k, l * l);
    for (std::int64_t i1 = 0; i1 < k; ++i1)
        for (std::int64_t j1 = 0; j1 < k; ++j1)
            for (std::int64_t i2 = 0; i2 < l; ++i2)
                for (std::int64_t j2 = 0; j2 < l; ++j2)
                    realigned(i1 * k + j1, i2 * l + j2) = v(i1 * l + i2, j1 * l + j2);
    const Svd svd = svd_thin_v(realigned, true);
    const double top = svd.singular_values.size() > 0 ? svd.singular_values(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singular_values.size(); ++i)
        if (svd.singular_values(i) > rel_tol * top) ++rank;
    return rank;
}

LocalCorrelationParts decompose_local_correlation(const Mat& m, std::int64_t k, std::int64_t l) {
    if (m.rows() != k * l || m.cols() != k * l)
        throw std::invalid_argument("decompose_local_correlation: dimension must be k*l");
    Mat tr2 = Mat::Zero(k, k);  // partial trace over factor 2
    Mat tr1 = Mat::Zero(l, l);  // partial trace over factor 1
    for (std::int64_t i1 = 0; i1 < k; ++i1)
        for (std::int64_t j1 = 0; j1 < k; ++j1)
            for (std::int64_t y = 0; y < l; ++y) tr2(i1, j1) += m(i1 * l + y, j1 * l + y);
    for (std::int64_t i2 = 0; i2 < l; ++i2)
        for (std::int64_t j2 = 0; j2 < l; ++j2)
            for (std::int64_t x = 0; x < k; ++x) tr1(i2, j2) += m(x * l + i2, x * l + j2);

    const cplx mean = m.trace() / static_cast<double>(k * l);
    Mat a1 = tr2 / static_cast<double>(l);
    a1.diagonal().array() -= a1.trace() / static_cast<double>(k);
    Mat a2 = tr1 / static_cast<double>(k);
    a2.diagonal().array() -= a2.trace() / static_cast<double>(l);

    LocalCorrelationParts parts;
    parts.scalar = mean * Mat::Identity(k * l, k * l);
    parts.p1 = kron(a1, Mat::Identity(l, l));
    parts.p2 = kron(Mat::Identity(k, k), a2);
    parts.m = m - parts.scalar - parts.p1 - parts.p2;
    return parts;
}

NormalizerVerdict normalizer_membership(const Mat& v, std::int64_t k, std::int64_t l) {
    if (v.rows() != k * l || v.cols() != k * l)
        throw std::invalid_argument("normalizer_membership: dimension must be k*l");
    require_unitary(v, kUnitaryTol, "normalizer_membership input");

    NormalizerVerdict verdict = NormalizerVerdict::Outside;
    if (operator_schmidt_rank(v, k, l) == 1) {
        verdict = NormalizerVerdict::InProduct;
    } else if (k == l && operator_schmidt_rank(swap_gate(k) * v, k, l) == 1) {
        verdict = NormalizerVerdict::ProductTimesSwap;
    }

    // Independent route: v normalizes the local algebra iff conjugating a basis
    // of p1 + p2 never leaks into the correlation part m.
    bool algebra_normalizes = true;
    const Mat vdag = v.adjoint();
    auto leaks = [&](const Mat& basis_elem) {
        const Mat w = v * basis_elem * vdag;
        const Mat leak = decompose_local_correlation(w, k, l).m;
        return leak.norm() > 1e-8;
    };
    for (const PauliIndex& u : pauli_basis_indices(k)) {
        Mat b = kron(pauli_v(k, u), Mat::Identity(l, l));
        b /= b.norm();
        if (leaks(b)) {
            algebra_normalizes = false;
            break;
        }
    }
    if (algebra_normalizes)
        for (const PauliIndex& u : pauli_basis_indices(l)) {
            Mat b = kron(Mat::Identity(k, k), pauli_v(l, u));
            b /= b.norm();
            if (leaks(b)) {
                algebra_normalizes = false;
                break;
            }
        }

    const bool rank_normalizes = verdict != NormalizerVerdict::Outside;
    if (rank_normalizes != algebra_normalizes) {
        std::ostringstream msg;
        msg << "normalizer_membership: Schmidt-rank route says " << rank_normalizes
            << " but algebra route says " << algebra_normalizes;
        throw ConsistencyError(msg.str());
    }
    return verdict;
}

bool brylinski_check(const Mat& v, std::int64_t d) {
    if (d < 2) throw std::invalid_argument("brylinski_check: d must be >= 2");
    if (v.rows() != d * d || v.cols() != d * d)
        throw std::invalid_argument("brylinski_check: dimension must be d^2");
    if (operator_schmidt_rank(v, d, d) == 1) return false;
    return operator_schmidt_rank(swap_gate(d) * v, d, d) > 1;
}

namespace {

std::int64_t smallest_admissible_s(std::int64_t d, double bound) {
    std::int64_t s = static_cast<std::int64_t>(std::floor(bound)) + 1;
    const std::int64_t k_d = heisenberg_phase_order(d);
    while (k_d % s == 0 || d % s == 0) ++s;  // s above the bound already exceeds d; loop is vestigial safety
    return s;
}

}  // namespace

TrichotomyVerdict trichotomy_classify(std::int64_t d) {
    if (d < 2) throw std::invalid_argument("trichotomy_classify: d must be >= 2");
    TrichotomyVerdict verdict;
    verdict.factorization = factorize(d);

    if (verdict.factorization.is_prime_power()) {
        verdict.case_tag = verdict.factorization.is_prime() ? TrichotomyCase::PrimeI
                                                            : TrichotomyCase::PrimePowerII;
        const double bound = ts_universality_bound(d);
        verdict.bound = bound;
        // Smallest s above the infiniteness bound; such s never divides K_d, so
        // T_s is non-Clifford and is itself a near-identity certificate.
        verdict.recommended_s = smallest_admissible_s(d, bound);
        verdict.recommended_gates = {"X", "H", "P", "Ts(" + std::to_string(*verdict.recommended_s) + ")"};
    } else {
        verdict.case_tag = TrichotomyCase::CoprimeIII;
        verdict.recommended_gates = {"X", "H", "P"};
        const auto parts = verdict.factorization.prime_power_parts();
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
            verdict.recommended_gates.push_back("intraCN(" + std::to_string(parts[i]) + "," +
                                                std::to_string(parts[i + 1]) + ")");
    }
    return verdict;
}

std::vector<Mat> recommended_gate_matrices(const TrichotomyVerdict& verdict, std::int64_t d) {
    std::vector<Mat> gates = {pauli_x(d), hadamard(d), phase_gate(d)};
    if (verdict.case_tag == TrichotomyCase::CoprimeIII) {
        const auto parts = verdict.factorization.prime_power_parts();
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            // Each consecutive pair couples inside a d-dimensional qudit; the
            // CRT relabeling places the pair's product block first.
            std::int64_t p = parts[i], q = parts[i + 1];
            if (parts.size() == 2) {
                gates.push_back(intra_qudit_cn(d, p, q));
            } else {
                // Embed the pair's intra-qudit CN on its p*q block, identity elsewhere.
                std::int64_t rest = d / (p * q);
                const Mat local = kron(intra_qudit_cn(p * q, p, q), Mat::Identity(rest, rest));
                const Mat perm = crt_permutation(p * q, rest);
                gates.push_back(perm.adjoint() * local * perm);
            }
        }
    } else {
        gates.push_back(t_s(d, *verdict.recommended_s));
    }
    return gates;
}

DensityVerdict density_certify(std::int64_t d, const std::vector<Mat>& generators,
                               const DensityBudgets& budgets) {
    if (generators.empty()) throw std::invalid_argument("density_certify: empty generator list");
    for (const Mat& g : generators) {
        if (g.rows() != d || g.cols() != d)
            throw std::invalid_argument("density_certify: generator dimension mismatch");
        require_unitary(g, kUnitaryTol, "density_certify generator");
    }

    DensityVerdict verdict;
    verdict.budgets = budgets;

    int commutant_dim = 0;
    try {
        commutant_dim = commutant_dimension(d, generators);
    } catch (const AmbiguousSpectrumError& err) {
        verdict.status = DensityStatus::Inconclusive;
        verdict.diagnostic = std::string("commutant spectrum ambiguous: ") + err.what();
        return verdict;
    }
    verdict.irreducible = commutant_dim == 1;

    if (verdict.irreducible) {
        const SearchOutcome outcome = certificate_search(
            d, generators, SearchBudget{budgets.max_word_len, budgets.closure_cap});
        verdict.used.search_elements = outcome.elements_explored;
        verdict.used.search_depth = outcome.depth_reached;
        verdict.used.search_frontier_exhausted = outcome.frontier_exhausted;
        if (outcome.certificate) {
            verdict.status = DensityStatus::Dense;
            verdict.certificate = outcome.certificate;
            return verdict;
        }
    }

    const ClosureResult closure = projective_closure(generators, budgets.closure_cap);
    verdict.used.closure_attempted = true;
    verdict.used.closure_count = closure.count;
    verdict.used.closure_complete = closure.complete;
    if (closure.complete) {
        verdict.status = DensityStatus::Finite;
        verdict.finite_order = closure.count;
        return verdict;
    }

    verdict.status = DensityStatus::Inconclusive;
    verdict.diagnostic = verdict.irreducible
                             ? "irreducible, but no certificate within the word budget and the "
                               "closure exceeded its cap; raise the budgets"
                             : "reducible adjoint action and the closure exceeded its cap";
    return verdict;
}

}  // namespace quk
