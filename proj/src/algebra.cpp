#include "isg/algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isg {

void require_square_finite(const cmat& x) {
  if (x.rows() == 0 || x.rows() != x.cols()) {
    throw std::invalid_argument("matrix must be square with dim >= 1, got " +
                                std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
}

std::complex<double> normalized_trace(const cmat& x) {
  require_square_finite(x);
  return x.trace() / static_cast<double>(x.rows());
}

std::complex<double> normalized_trace_product(const cmat& x, const cmat& y) {
  // tau(xy) = sum_{ij} x_ij y_ji / d
  return x.cwiseProduct(y.transpose()).sum() / static_cast<double>(x.rows());
}

double trace_norm2(const cmat& x) {
  require_square_finite(x);
  return x.norm() / std::sqrt(static_cast<double>(x.rows()));
}

HermitianEig hermitian_eig(const cmat& x, const Tolerance& tol) {
  require_square_finite(x);
  const double herm_defect = trace_norm2(x - x.adjoint());
  if (herm_defect > 100.0 * tol.eta) {
    throw std::invalid_argument("input not hermitian: ||x - x*||_2 = " +
                                std::to_string(herm_defect));
  }
  const cmat sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

cmat spectral_map(const cmat& x, const Tolerance& tol, double (*f)(double)) {
  const HermitianEig eig = hermitian_eig(x, tol);
  Eigen::VectorXd mapped = eig.values;
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped[i] = f(mapped[i]);
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

cmat positive_part(const cmat& x, const Tolerance& tol) {
  return spectral_map(x, tol, [](double v) { return v > 0.0 ? v : 0.0; });
}

cmat negative_part(const cmat& x, const Tolerance& tol) {
  return spectral_map(x, tol, [](double v) { return v < 0.0 ? -v : 0.0; });
}

cmat inv_sqrt(const cmat& rho, const Tolerance& tol) {
  const HermitianEig eig = hermitian_eig(rho, tol);
  if (eig.values.size() > 0 && eig.values[0] < 1.0 - 100.0 * tol.eta) {
    throw std::invalid_argument("inv_sqrt requires rho >= 1, smallest eigenvalue " +
                                std::to_string(eig.values[0]));
  }
  Eigen::VectorXd mapped = eig.values;
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped[i] = 1.0 / std::sqrt(mapped[i]);
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

bool is_projection(const cmat& p, const Tolerance& tol) {
  require_square_finite(p);
  if (trace_norm2(p - p.adjoint()) > tol.eta) return false;
  return trace_norm2(p * p - p) <= tol.eta;
}

bool is_pvm(const std::vector<cmat>& family, const Tolerance& tol) {
  if (family.empty()) throw std::invalid_argument("empty family");
  const Eigen::Index d = family.front().rows();
  for (const cmat& p : family) {
    require_square_finite(p);
    if (p.rows() != d) {
      throw std::invalid_argument("dimension mismatch in family: " + std::to_string(p.rows()) +
                                  " vs " + std::to_string(d));
    }
  }
  cmat sum = cmat::Zero(d, d);
  for (const cmat& p : family) {
    if (!is_projection(p, tol)) return false;
    sum += p;
  }
  return trace_norm2(sum - cmat::Identity(d, d)) <= tol.eta;
}

}  // namespace isg
