#include "quk/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "quk/errors.hpp"
#include "quk/linalg.hpp"
#include "parallel.hpp"

namespace quk {

namespace {

constexpr std::size_t kStageEntryBudget = 30'000'000;  // complex entries per stacked stage

Eigen::Map<const Vec> as_vec(const Mat& m) {
    return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat from_vec(const Vec& v, Eigen::Index n) {
    return Eigen::Map<const Mat>(v.data(), n, n);
}

bool nearly_scalar(const Mat& a, double tol) {
    Mat diff = a;
    diff.diagonal().array() -= a(0, 0);
    return max_abs(diff) < tol;
}

// Column clusters of equal eigenvalues of a unitary matrix, circular in phase.
struct SpectralClusters {
    Mat vectors;                                          // phase-ordered eigenvectors
    std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;  // (start, size)
    std::size_t pair_count = 0;                           // sum of size^2
};

SpectralClusters spectral_clusters(const Mat& a, double chord_tol) {
    const UnitaryEigen eig = eig_unitary(a);
    const Eigen::Index n = a.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> phase(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        double t = std::arg(eig.values(k)) / (2.0 * std::numbers::pi);
        t -= std::floor(t);
        phase[static_cast<std::size_t>(k)] = t;
    }
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a_, Eigen::Index b_) { return phase[a_] < phase[b_]; });

    SpectralClusters out;
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) out.vectors.col(k) = eig.vectors.col(order[k]);

    auto chord = [&](Eigen::Index i, Eigen::Index j) {
        return std::abs(eig.values(order[i]) - eig.values(order[j]));
    };
    std::vector<Eigen::Index> cut_points;
    for (Eigen::Index k = 0; k + 1 < n; ++k)
        if (chord(k, k + 1) > chord_tol) cut_points.push_back(k + 1);
    if (cut_points.empty()) {
        out.ranges.emplace_back(0, n);
    } else if (n >= 2 && chord(0, n - 1) <= chord_tol) {
        // wrap: merge the first and last runs
        Eigen::Index first_cut = cut_points.front();
        Eigen::Index last_cut = cut_points.back();
        Mat rotated(n, n);
        const Eigen::Index tail = n - last_cut;
        rotated.leftCols(tail) = out.vectors.rightCols(tail);
        rotated.rightCols(last_cut) = out.vectors.leftCols(last_cut);
        out.vectors = rotated;
        out.ranges.emplace_back(0, tail + first_cut);
        for (std::size_t c = 0; c + 1 < cut_points.size(); ++c)
            out.ranges.emplace_back(tail + cut_points[c], cut_points[c + 1] - cut_points[c]);
    } else {
        Eigen::Index prev = 0;
        for (Eigen::Index cut : cut_points) {
            out.ranges.emplace_back(prev, cut - prev);
            prev = cut;
        }
        out.ranges.emplace_back(prev, n - prev);
    }
    for (const auto& [start, size] : out.ranges)
        out.pair_count += static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
    return out;
}

// One restriction stage: nullspace of column t -> vec(A B_t - B_t A) over the
// current basis, columns stored in bm (n^2 x m).
void restrict_stage(const Mat& a, Mat& bm, std::vector<double>* spectrum_out) {
    const Eigen::Index n = a.rows();
    const Eigen::Index m = bm.cols();
    if (m == 0) return;
    if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(m) >
        kStageEntryBudget) {
        std::ostringstream msg;
        msg << "commutant stage needs " << n << "^2 x " << m
            << " stacked entries, over the memory budget";
        throw BudgetError(msg.str());
    }
    Mat stacked(n * n, m);
    detail::parallel_for(static_cast<std::size_t>(m), [&](std::size_t t) {
        const Mat b = from_vec(bm.col(static_cast<Eigen::Index>(t)), n);
        const Mat comm = a * b - b * a;
        stacked.col(static_cast<Eigen::Index>(t)) = as_vec(comm);
    });
    if (stacked.norm() < kCommutantSigmaTol / 10.0)
        return;  // no constraint from this matrix on the current span
    const Mat null_basis = nullspace_with_guard(stacked, kCommutantSigmaTol, spectrum_out);
    bm = bm * null_basis;
}

}  // namespace

std::vector<PauliIndex> pauli_basis_indices(std::int64_t d) {
    std::vector<PauliIndex> idx;
    idx.reserve(static_cast<std::size_t>(d * d - 1));
    for (std::int64_t a = 0; a < d; ++a)
        for (std::int64_t b = 0; b < d; ++b)
            if (a != 0 || b != 0) idx.push_back({a, b, 0});
    return idx;
}

AdjointMatrix adjoint_in_pauli_basis(std::int64_t d, const Mat& u) {
    if (u.rows() != d || u.cols() != d)
        throw std::invalid_argument("adjoint_in_pauli_basis: wrong dimension");
    require_unitary(u, kUnitaryTol, "adjoint_in_pauli_basis input");

    const auto basis = pauli_basis_indices(d);
    const Eigen::Index n_alg = static_cast<Eigen::Index>(basis.size());
    AdjointMatrix adj;
    adj.source_dim = d;
    adj.dim_alg = n_alg;
    adj.entries.resize(n_alg, n_alg);

    const Mat udag = u.adjoint();
    detail::parallel_for(basis.size(), [&](std::size_t col) {
        const Mat w = u * pauli_v(d, basis[col]) * udag;
        for (std::size_t row = 0; row < basis.size(); ++row) {
            // tr(V_row^dag w) over the single wrapped diagonal of V_row
            const std::int64_t a = basis[row].a, b = basis[row].b;
            cplx acc = 0.0;
            for (std::int64_t j = 0; j < d; ++j)
                acc += std::conj(root_of_unity(j * b, d)) * w((j + a) % d, j);
            adj.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                acc / static_cast<double>(d);
        }
    });
    return adj;
}

CommutantResult commutant_of_matrices(const std::vector<Mat>& matrices) {
    if (matrices.empty()) throw std::invalid_argument("commutant: empty matrix list");
    const Eigen::Index n = matrices.front().rows();
    for (const Mat& a : matrices)
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("commutant: dimension mismatch");

    std::vector<Mat> active;
    for (const Mat& a : matrices)
        if (!nearly_scalar(a, kCommutantSigmaTol)) active.push_back(a);

    CommutantResult result;
    if (active.empty()) {
        // Scalars constrain nothing; the commutant is everything. The basis is
        // not materialized at this size.
        result.dimension = static_cast<int>(n * n);
        return result;
    }

    // Seed from the candidate word whose spectral commutant is smallest.
    std::vector<Mat> candidates = active;
    for (std::size_t i = 0; i + 1 < active.size(); ++i)
        candidates.push_back(active[i] * active[i + 1]);
    if (active.size() > 2) {
        Mat prod = active[0];
        for (std::size_t i = 1; i < active.size(); ++i) prod = prod * active[i];
        candidates.push_back(prod);
    }
    if (candidates.size() > 12) candidates.resize(12);

    SpectralClusters best;
    bool have_best = false;
    for (const Mat& cand : candidates) {
        if (!is_unitary(cand, 1e-6)) continue;
        SpectralClusters sc = spectral_clusters(cand, kCommutantSigmaTol * 10);  // band upper edge: ambiguous pairs stay in the seed
        if (!have_best || sc.pair_count < best.pair_count) {
            best = std::move(sc);
            have_best = true;
        }
    }
    if (!have_best) best = spectral_clusters(active.front(), kCommutantSigmaTol * 10);

    if (best.pair_count * static_cast<std::size_t>(n) * static_cast<std::size_t>(n) >
        kStageEntryBudget) {
        std::ostringstream msg;
        msg << "commutant seed has dimension " << best.pair_count << " at algebra size " << n
            << "; over the memory budget";
        throw BudgetError(msg.str());
    }

    Mat bm(n * n, static_cast<Eigen::Index>(best.pair_count));
    {
        Eigen::Index col = 0;
        for (const auto& [start, size] : best.ranges)
            for (Eigen::Index i = 0; i < size; ++i)
                for (Eigen::Index j = 0; j < size; ++j) {
                    const Mat outer = best.vectors.col(start + i) * best.vectors.col(start + j).adjoint();
                    bm.col(col++) = as_vec(outer);
                }
    }

    for (const Mat& a : active) restrict_stage(a, bm, nullptr);

    result.dimension = static_cast<int>(bm.cols());
    result.basis.reserve(static_cast<std::size_t>(bm.cols()));
    for (Eigen::Index t = 0; t < bm.cols(); ++t) result.basis.push_back(from_vec(bm.col(t), n));
    if (result.dimension < 1)
        throw ConsistencyError("commutant dimension fell below 1; the identity must always commute");
    return result;
}

int commutant_dimension(std::int64_t d, const std::vector<Mat>& gates) {
    if (gates.empty()) throw std::invalid_argument("commutant_dimension: empty gate list");
    std::vector<Mat> adjoints;
    adjoints.reserve(gates.size());
    for (const Mat& g : gates) adjoints.push_back(adjoint_in_pauli_basis(d, g).entries);
    return commutant_of_matrices(adjoints).dimension;
}

OrbitTable orbit_decomposition(std::int64_t d, std::int64_t cap) {
    if (d < 2) throw std::invalid_argument("orbit_decomposition: d must be >= 2");
    const auto group = enumerate_sl2(d, cap);

    OrbitTable table;
    table.d = d;
    const auto index_of = [d](std::int64_t a, std::int64_t b) {
        return static_cast<std::size_t>(a * d + b);
    };
    std::vector<bool> seen(static_cast<std::size_t>(d * d), false);
    seen[0] = true;
    std::map<std::int64_t, std::vector<OrbitTable::Orbit>> by_invariant;

    for (std::int64_t a0 = 0; a0 < d; ++a0)
        for (std::int64_t b0 = 0; b0 < d; ++b0) {
            if (seen[index_of(a0, b0)]) continue;
            OrbitTable::Orbit orbit;
            orbit.invariant = std::gcd(std::gcd(a0, b0), d);
            for (const SL2Element& g : group) {
                const std::int64_t a = ((g.a * a0 + g.b * b0) % d + d) % d;
                const std::int64_t b = ((g.c * a0 + g.d * b0) % d + d) % d;
                if (!seen[index_of(a, b)]) {
                    seen[index_of(a, b)] = true;
                    orbit.members.emplace_back(a, b);
                }
            }
            std::sort(orbit.members.begin(), orbit.members.end());
            by_invariant[orbit.invariant].push_back(std::move(orbit));
        }

    const bool prime_power = factorize(d).is_prime_power();
    std::size_t total = 0;
    for (auto& [inv, orbits] : by_invariant) {
        for (auto& orbit : orbits) {
            for (const auto& [a, b] : orbit.members)
                if (std::gcd(std::gcd(a, b), d) != inv && prime_power)
                    throw ConsistencyError("orbit invariant gcd is not constant on a prime-power orbit");
            total += orbit.members.size();
            table.orbits.push_back(std::move(orbit));
        }
    }
    if (total != static_cast<std::size_t>(d * d - 1))
        throw ConsistencyError("orbit sizes do not sum to d^2 - 1");
    return table;
}

std::vector<SubspaceBlock> invariant_subspace_report(std::int64_t d, const std::vector<Mat>& gates) {
    if (gates.empty()) throw std::invalid_argument("invariant_subspace_report: empty gate list");
    std::vector<Mat> adjoints;
    for (const Mat& g : gates) adjoints.push_back(adjoint_in_pauli_basis(d, g).entries);
    const Eigen::Index n = adjoints.front().rows();

    bool all_scalar = true;
    for (const Mat& a : adjoints)
        if (!nearly_scalar(a, kCommutantSigmaTol)) all_scalar = false;
    if (all_scalar) {
        // Every subspace is invariant; report the finest axis-aligned split.
        std::vector<SubspaceBlock> blocks;
        for (int i = 0; i < n; ++i) blocks.push_back({{i}, 1});
        return blocks;
    }

    const CommutantResult commutant = commutant_of_matrices(adjoints);
    if (commutant.dimension == 1) {
        SubspaceBlock whole;
        whole.dimension = static_cast<int>(n);
        whole.basis_indices.resize(static_cast<std::size_t>(n));
        std::iota(whole.basis_indices.begin(), whole.basis_indices.end(), 0);
        return {whole};
    }

    // Isotypic blocks are the eigenspaces of a generic element of the
    // commutant's center; the center is the commutant of the commutant basis.
    Mat bm(n * n, static_cast<Eigen::Index>(commutant.basis.size()));
    for (std::size_t t = 0; t < commutant.basis.size(); ++t)
        bm.col(static_cast<Eigen::Index>(t)) = as_vec(commutant.basis[t]);
    for (const Mat& b : commutant.basis) restrict_stage(b, bm, nullptr);
    const Eigen::Index center_dim = bm.cols();

    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        DeterministicRng rng(0x15EED0000ull + seed);
        Mat h = Mat::Zero(n, n);
        for (Eigen::Index t = 0; t < center_dim; ++t) {
            const Mat b = from_vec(bm.col(t), n);
            h += rng.next_gaussian() * (b + b.adjoint()) + rng.next_gaussian() * cplx(0, 1) * (b - b.adjoint());
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        const Eigen::VectorXd ev = es.eigenvalues();

        std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
        Eigen::Index start = 0;
        for (Eigen::Index k = 1; k <= n; ++k)
            if (k == n || ev(k) - ev(k - 1) > 1e-6) {
                clusters.emplace_back(start, k - start);
                start = k;
            }
        if (static_cast<Eigen::Index>(clusters.size()) != center_dim) continue;  // weight collision

        std::vector<SubspaceBlock> blocks;
        for (const auto& [lo, size] : clusters) {
            SubspaceBlock block;
            block.dimension = static_cast<int>(size);
            const Mat span = es.eigenvectors().middleCols(lo, size);
            for (int axis = 0; axis < n; ++axis) {
                const double weight = span.row(axis).squaredNorm();
                if (weight >= 1.0 - 1e-8) block.basis_indices.push_back(axis);
            }
            blocks.push_back(std::move(block));
        }
        std::sort(blocks.begin(), blocks.end(), [](const SubspaceBlock& x, const SubspaceBlock& y) {
            if (x.dimension != y.dimension) return x.dimension < y.dimension;
            const int xi = x.basis_indices.empty() ? -1 : x.basis_indices.front();
            const int yi = y.basis_indices.empty() ? -1 : y.basis_indices.front();
            return xi < yi;
        });
        return blocks;
    }
    throw ConsistencyError("invariant_subspace_report: could not separate center eigenvalues");
}

}  // namespace quk
