#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace isg {

using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

// Numerical slack for validating exact algebraic statements. Constructors
// never clamp against it; validators and preconditions do.
struct Tolerance {
  double eta = 1e-9;
};

// Dimension cap for matrices accepted from external inputs.
inline constexpr int kMaxDim = 256;

// Throws std::invalid_argument on non-square or non-finite input.
void require_square_finite(const cmat& x);

// tau(x) = Tr(x) / dim
std::complex<double> normalized_trace(const cmat& x);

// tau(x*y) without forming the product.
std::complex<double> normalized_trace_product(const cmat& x, const cmat& y);

// ||x||_2 = sqrt(tau(x* x))
double trace_norm2(const cmat& x);

struct HermitianEig {
  Eigen::VectorXd values;  // ascending
  cmat vectors;            // orthonormal columns, same order
};

// Symmetrizes to (x + x*)/2 first; rejects input with ||x - x*||_2 > 100*eta.
HermitianEig hermitian_eig(const cmat& x, const Tolerance& tol = {});

// Spectral clamp at exactly zero: x = positive_part(x) - negative_part(x).
cmat positive_part(const cmat& x, const Tolerance& tol = {});
cmat negative_part(const cmat& x, const Tolerance& tol = {});

// rho^{-1/2} for hermitian rho >= 1. Rejects eigenvalues below 1 - 100*eta.
cmat inv_sqrt(const cmat& rho, const Tolerance& tol = {});

// ||p - p*||_2 <= eta and ||p^2 - p||_2 <= eta
bool is_projection(const cmat& p, const Tolerance& tol = {});

// Every element a projection and the family sums to the identity within eta.
// Throws std::invalid_argument on dimension mismatch.
bool is_pvm(const std::vector<cmat>& family, const Tolerance& tol = {});

}  // namespace isg
