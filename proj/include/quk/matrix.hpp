#pragma once

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace quk {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kUnitaryTol = 1e-9;

// exp(2*pi*i * num/den), with the exponent reduced first so long products of
// integer-exponent phases stay accurate.
cplx root_of_unity(std::int64_t num, std::int64_t den);

double max_abs(const Mat& m);
double max_abs_diff(const Mat& a, const Mat& b);

bool is_unitary(const Mat& u, double tol = kUnitaryTol);
double unitarity_deviation(const Mat& u);
void require_unitary(const Mat& u, double tol = kUnitaryTol, const char* what = "matrix");

Mat kron(const Mat& a, const Mat& b);

// Smallest max-entry deviation |a - e^{i phi} b| over global phases, with the
// phase estimated from tr(b^dag a). Returns a large value when the matrices
// are nowhere near projectively equal.
double projective_deviation(const Mat& a, const Mat& b);
bool projectively_equal(const Mat& a, const Mat& b, double eps = 1e-9);

}  // namespace quk
