#include "quk/matrix.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace quk {

cplx root_of_unity(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("root_of_unity: zero denominator");
    std::int64_t r = num % den;
    if (r < 0) r += std::llabs(den);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

double max_abs(const Mat& m) {
    return m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_deviation(const Mat& u) {
    if (u.rows() != u.cols()) return 1.0;
    Mat g = u.adjoint() * u;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

bool is_unitary(const Mat& u, double tol) {
    return u.rows() == u.cols() && unitarity_deviation(u) <= tol;
}

void require_unitary(const Mat& u, double tol, const char* what) {
    const double dev = unitarity_deviation(u);
    if (u.rows() != u.cols() || dev > tol) {
        std::ostringstream msg;
        msg << what << " is not unitary (deviation " << dev << ", tolerance " << tol << ")";
        throw std::invalid_argument(msg.str());
    }
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double projective_deviation(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("projective_deviation: shape mismatch");
    const cplx overlap = (b.adjoint() * a).trace();
    if (std::abs(overlap) < 1e-14) return 2.0 * (1.0 + max_abs(a) + max_abs(b));
    const cplx phase = overlap / std::abs(overlap);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

bool projectively_equal(const Mat& a, const Mat& b, double eps) {
    return a.rows() == b.rows() && a.cols() == b.cols() && projective_deviation(a, b) <= eps;
}

}  // namespace quk
