#include "quk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "quk/errors.hpp"

namespace quk {

UnitaryEigen eig_unitary(const Mat& u) {
    const Eigen::Index n = u.rows();
    if (n != u.cols()) throw std::invalid_argument("eig_unitary: square matrix required");

    const Mat re_part = (u + u.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(re_part);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_unitary: Hermitian solve failed");
    Mat q = es.eigenvectors();
    const Eigen::VectorXd mu = es.eigenvalues();

    const Mat im_part = (u - u.adjoint()) / cplx(0.0, 2.0);
    constexpr double cluster_tol = 1e-9;
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i + 1;
        while (j < n && mu(j) - mu(j - 1) < cluster_tol) ++j;
        if (j - i > 1) {
            const Mat qc = q.middleCols(i, j - i);
            Mat kc = qc.adjoint() * im_part * qc;
            kc = (kc + Mat(kc.adjoint())) / 2.0;
            Eigen::SelfAdjointEigenSolver<Mat> es2(kc);
            if (es2.info() != Eigen::Success)
                throw std::runtime_error("eig_unitary: cluster solve failed");
            q.middleCols(i, j - i) = qc * es2.eigenvectors();
        }
        i = j;
    }

    UnitaryEigen out;
    out.vectors = q;
    out.values.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        cplx lambda = q.col(k).dot(u * q.col(k));  // Rayleigh quotient
        const double m = std::abs(lambda);
        out.values(k) = m > 0 ? lambda / m : cplx(1.0, 0.0);
    }
    return out;
}

std::vector<double> unitary_eigenphases(const Mat& u) {
    const UnitaryEigen eig = eig_unitary(u);
    std::vector<double> phases(static_cast<std::size_t>(eig.values.size()));
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        double t = std::arg(eig.values(k)) / (2.0 * std::numbers::pi);
        t -= std::floor(t);
        if (t >= 1.0) t = 0.0;
        phases[static_cast<std::size_t>(k)] = t;
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

Svd svd_thin_v(const Mat& a, bool high_relative_accuracy) {
    Svd out;
    if (high_relative_accuracy || a.rows() * a.cols() <= 64 * 64) {
        Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinV);
        out.singular_values = svd.singularValues();
        out.v = svd.matrixV();
    } else {
        Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinV);
        out.singular_values = svd.singularValues();
        out.v = svd.matrixV();
    }
    return out;
}

Mat nullspace_with_guard(const Mat& a, double tol, std::vector<double>* spectrum_out) {
    const Svd svd = svd_thin_v(a, false);
    const Eigen::Index k = svd.singular_values.size();
    std::vector<double> spectrum(svd.singular_values.data(), svd.singular_values.data() + k);
    if (spectrum_out) *spectrum_out = spectrum;
    for (double s : spectrum) {
        if (s >= tol / 10.0 && s <= tol * 10.0) {
            std::ostringstream msg;
            msg << "singular value " << s << " falls in the ambiguity band ["
                << tol / 10.0 << ", " << tol * 10.0 << "]";
            throw AmbiguousSpectrumError(msg.str(), spectrum);
        }
    }
    Eigen::Index null_dim = 0;
    for (Eigen::Index i = k - 1; i >= 0 && svd.singular_values(i) < tol; --i) ++null_dim;
    // Columns within the numerical row space of a (cols may exceed rank when
    // a is wide; BDC/Jacobi both return min(rows, cols) values, the rest of
    // the kernel shows up only when cols > rows).
    const Eigen::Index cols = a.cols();
    const Eigen::Index extra = cols - k;
    Mat null_basis(cols, null_dim + std::max<Eigen::Index>(extra, 0));
    if (null_dim > 0) null_basis.leftCols(null_dim) = svd.v.rightCols(null_dim);
    if (extra > 0) {
        // Thin V misses the tail kernel of a wide matrix; complete it.
        Eigen::JacobiSVD<Mat> full(a, Eigen::ComputeFullV);
        null_basis = full.matrixV().rightCols(null_dim + extra);
    }
    return null_basis;
}

std::uint64_t DeterministicRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double DeterministicRng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double DeterministicRng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_uniform();
    while (u1 <= 1e-300) u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

Mat random_unitary(Eigen::Index n, DeterministicRng& rng) {
    Mat g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0, 0.0);
    }
    return q;
}

}  // namespace quk
