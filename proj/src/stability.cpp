#include "isg/stability.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace isg {

namespace {

constexpr double kSlack = 1e-9;
constexpr int kMaxSeesawIters = 50;

void require_same_dim(const std::vector<cmat>& ops) {
  if (ops.empty()) throw std::invalid_argument("need at least one operator");
  const Eigen::Index d = ops.front().rows();
  for (const cmat& m : ops) {
    require_square_finite(m);
    if (m.rows() != d) throw std::invalid_argument("operator dimension mismatch");
  }
}

// Checks hermitian + spectrum within [-100 eta, 1 + 100 eta]; returns the
// operator with eigenvalues clamped into [0, 1] (untouched when already
// inside, so exact inputs stay bit-identical).
cmat validate_positive_contraction(const cmat& a, const Tolerance& tol) {
  const HermitianEig eig = hermitian_eig(a, tol);
  const double lo = eig.values.size() ? eig.values[0] : 0.0;
  const double hi = eig.values.size() ? eig.values[eig.values.size() - 1] : 0.0;
  if (lo < -100.0 * tol.eta) {
    throw std::invalid_argument("operator is not positive semidefinite, eigenvalue " +
                                std::to_string(lo));
  }
  if (hi > 1.0 + 100.0 * tol.eta) {
    throw std::invalid_argument("operator exceeds 1, eigenvalue " + std::to_string(hi));
  }
  if (lo >= 0.0 && hi <= 1.0) return a;
  Eigen::VectorXd clamped = eig.values;
  for (Eigen::Index i = 0; i < clamped.size(); ++i) {
    clamped[i] = std::min(1.0, std::max(0.0, clamped[i]));
  }
  return eig.vectors * clamped.asDiagonal() * eig.vectors.adjoint();
}

struct PipelineOutput {
  std::vector<cmat> a;  // clamped inputs
  std::vector<cmat> b;
  std::vector<cmat> c;
  RoundingReport report;  // all fields up to povm_purity
};

PipelineOutput run_pipeline(const std::vector<cmat>& input, const Tolerance& tol) {
  require_same_dim(input);
  PipelineOutput out;
  out.a.reserve(input.size());
  for (const cmat& m : input) out.a.push_back(validate_positive_contraction(m, tol));

  const Eigen::Index d = out.a.front().rows();
  const cmat identity = cmat::Identity(d, d);
  cmat sum = cmat::Zero(d, d);
  for (const cmat& m : out.a) sum += m;
  const cmat x = identity - sum;

  out.report.eps_meas = trace_norm2(x);
  double purity_in = 0;
  for (const cmat& m : out.a) purity_in += normalized_trace_product(m, m).real();
  out.report.delta_meas = std::abs(1.0 - purity_in);

  const cmat a0 = positive_part(x, tol);
  out.report.norm_a0 = trace_norm2(a0);

  out.b = out.a;
  out.b[0] += a0;
  cmat rho = sum + a0;
  rho = 0.5 * (rho + rho.adjoint().eval());
  out.report.norm_rho_minus_1 = trace_norm2(rho - identity);
  out.report.dist_a_to_b_sq = out.report.norm_a0 * out.report.norm_a0;

  const cmat root = inv_sqrt(rho, tol);
  out.c.reserve(out.b.size());
  double dist_bc = 0;
  double purity = 0;
  for (const cmat& bj : out.b) {
    cmat cj = root * bj * root;
    cj = 0.5 * (cj + cj.adjoint().eval());
    dist_bc += std::pow(trace_norm2(bj - cj), 2);
    purity += normalized_trace_product(cj, cj).real();
    out.c.push_back(std::move(cj));
  }
  out.report.dist_b_to_c_sq = dist_bc;
  out.report.povm_purity = purity;
  return out;
}

// Block-coordinate PVM assignment: blocks[k][j] is the component of q_j on
// the k-th block basis.
using BlockPvm = std::vector<std::vector<cmat>>;

double block_distance_sq(const std::vector<std::vector<cmat>>& c_blocks, const BlockPvm& p,
                         Eigen::Index full_dim) {
  double dist = 0;
  for (std::size_t k = 0; k < c_blocks.size(); ++k) {
    for (std::size_t j = 0; j < c_blocks[k].size(); ++j) {
      dist += (c_blocks[k][j] - p[k][j]).squaredNorm();
    }
  }
  return dist / static_cast<double>(full_dim);
}

// Weighted-sum simultaneous-diagonalization rounding with see-saw refinement,
// restricted block-wise: eigenvectors never cross blocks.
BlockPvm povm_to_pvm_blocks(const std::vector<cmat>& c, const std::vector<cmat>& block_bases,
                            const Tolerance& tol) {
  const std::size_t m = c.size();
  const Eigen::Index d = c.front().rows();
  const std::size_t nblocks = block_bases.size();

  std::vector<std::vector<cmat>> cb(nblocks, std::vector<cmat>(m));
  for (std::size_t k = 0; k < nblocks; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      cmat compressed = block_bases[k].adjoint() * c[j] * block_bases[k];
      cb[k][j] = 0.5 * (compressed + compressed.adjoint().eval());
    }
  }

  std::vector<cmat> h(nblocks);
  for (std::size_t k = 0; k < nblocks; ++k) {
    h[k] = cmat::Zero(cb[k][0].rows(), cb[k][0].cols());
    for (std::size_t j = 0; j < m; ++j) {
      h[k] += (static_cast<double>(j + 1) / static_cast<double>(m)) * cb[k][j];
    }
  }

  BlockPvm best;
  double best_dist = 0;
  bool have_best = false;
  for (int iter = 0; iter < kMaxSeesawIters; ++iter) {
    BlockPvm candidate(nblocks, std::vector<cmat>(m));
    for (std::size_t k = 0; k < nblocks; ++k) {
      const Eigen::Index dk = cb[k][0].rows();
      for (std::size_t j = 0; j < m; ++j) candidate[k][j] = cmat::Zero(dk, dk);
      if (dk == 0) continue;
      const HermitianEig eig = hermitian_eig(h[k], tol);
      for (Eigen::Index col = 0; col < dk; ++col) {
        const cvec v = eig.vectors.col(col);
        std::size_t arg = 0;
        double arg_score = (v.adjoint() * cb[k][0] * v)(0, 0).real();
        for (std::size_t j = 1; j < m; ++j) {
          const double score = (v.adjoint() * cb[k][j] * v)(0, 0).real();
          if (score > arg_score) {
            arg = j;
            arg_score = score;
          }
        }
        candidate[k][arg] += v * v.adjoint();
      }
    }
    const double dist = block_distance_sq(cb, candidate, d);
    if (!have_best || dist < best_dist - 1e-12) {
      best = std::move(candidate);
      best_dist = dist;
      have_best = true;
    } else {
      break;
    }
    for (std::size_t k = 0; k < nblocks; ++k) {
      h[k] = cmat::Zero(cb[k][0].rows(), cb[k][0].cols());
      for (std::size_t j = 0; j < m; ++j) {
        h[k] += best[k][j] * cb[k][j] * best[k][j];
      }
      h[k] = 0.5 * (h[k] + h[k].adjoint().eval());
    }
  }
  return best;
}

std::vector<cmat> assemble_blocks(const BlockPvm& blocks, const std::vector<cmat>& block_bases,
                                  Eigen::Index d) {
  const std::size_t m = blocks.front().size();
  std::vector<cmat> out(m, cmat::Zero(d, d));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      out[j] += block_bases[k] * blocks[k][j] * block_bases[k].adjoint();
    }
    out[j] = 0.5 * (out[j] + out[j].adjoint().eval());
  }
  return out;
}

void validate_povm(const std::vector<cmat>& c, const Tolerance& tol) {
  require_same_dim(c);
  const Eigen::Index d = c.front().rows();
  cmat sum = cmat::Zero(d, d);
  for (const cmat& cj : c) {
    const HermitianEig eig = hermitian_eig(cj, tol);
    if (eig.values.size() && eig.values[0] < -100.0 * tol.eta) {
      throw std::invalid_argument("input is not a POVM: eigenvalue " +
                                  std::to_string(eig.values[0]));
    }
    sum += cj;
  }
  const double defect = trace_norm2(sum - cmat::Identity(d, d));
  if (defect > 100.0 * tol.eta) {
    throw std::invalid_argument("input is not a POVM: ||sum - 1||_2 = " + std::to_string(defect));
  }
  double purity = 0;
  for (const cmat& cj : c) purity += normalized_trace_product(cj, cj).real();
  if (1.0 - purity < -kSlack) {
    throw std::invalid_argument("input is not a POVM: purity " + std::to_string(purity) + " > 1");
  }
}

double family_distance_sq(const std::vector<cmat>& x, const std::vector<cmat>& y) {
  double dist = 0;
  for (std::size_t j = 0; j < x.size(); ++j) dist += std::pow(trace_norm2(x[j] - y[j]), 2);
  return dist;
}

}  // namespace

std::vector<std::string> check_report(const RoundingReport& r) {
  std::vector<std::string> violations;
  const auto field = [&](const char* name, double v) {
    if (!std::isfinite(v) || v < -kSlack) {
      violations.push_back(std::string(name) + " not finite/nonnegative");
    }
  };
  field("eps_meas", r.eps_meas);
  field("delta_meas", r.delta_meas);
  field("norm_a0", r.norm_a0);
  field("norm_rho_minus_1", r.norm_rho_minus_1);
  field("dist_a_to_b_sq", r.dist_a_to_b_sq);
  field("dist_b_to_c_sq", r.dist_b_to_c_sq);
  field("povm_purity", r.povm_purity);
  field("dist_c_to_p_sq", r.dist_c_to_p_sq);
  field("total_dist_sq", r.total_dist_sq);

  const auto expect = [&](bool ok, const std::string& what) {
    if (!ok) violations.push_back(what);
  };
  const double triangle = std::pow(std::sqrt(std::max(0.0, r.dist_a_to_b_sq)) +
                                       std::sqrt(std::max(0.0, r.dist_b_to_c_sq)) +
                                       std::sqrt(std::max(0.0, r.dist_c_to_p_sq)),
                                   2);
  expect(r.total_dist_sq <= triangle + kSlack, "total distance exceeds the triangle bound");
  expect(r.norm_a0 <= r.eps_meas + kSlack, "||a_0||_2 > eps");
  expect(r.norm_rho_minus_1 <= r.eps_meas + kSlack, "||rho - 1||_2 > eps");
  expect(r.dist_b_to_c_sq <= 4.0 * r.eps_meas + kSlack, "sum ||b - c||^2 > 4 eps");
  expect(r.povm_purity >= 1.0 - r.delta_meas - 4.0 * r.eps_meas - kSlack,
         "sum tau(c^2) < 1 - delta - 4 eps");
  return violations;
}

std::vector<cmat> povm_to_pvm(const std::vector<cmat>& c, const Tolerance& tol) {
  validate_povm(c, tol);
  const Eigen::Index d = c.front().rows();
  const std::vector<cmat> bases{cmat::Identity(d, d)};
  const BlockPvm blocks = povm_to_pvm_blocks(c, bases, tol);
  std::vector<cmat> pvm = assemble_blocks(blocks, bases, d);

  double purity = 0;
  for (const cmat& cj : c) purity += normalized_trace_product(cj, cj).real();
  const double eps_prime = 1.0 - purity;
  const double dist = family_distance_sq(c, pvm);
  if (eps_prime <= 0.1 && dist > 9.0 * eps_prime + kSlack) {
    std::cerr << "finding: povm_to_pvm distance " << dist << " exceeds 9*eps' = "
              << 9.0 * eps_prime << " (eps' = " << eps_prime << ", m = " << c.size()
              << ", d = " << d << ")\n";
  }
  return pvm;
}

RoundingResult round_positive_family(const std::vector<cmat>& a, const Tolerance& tol) {
  PipelineOutput pipe = run_pipeline(a, tol);
  RoundingResult result;
  result.pvm = povm_to_pvm(pipe.c, tol);
  result.report = pipe.report;
  result.report.dist_c_to_p_sq = family_distance_sq(pipe.c, result.pvm);
  result.report.total_dist_sq = family_distance_sq(pipe.a, result.pvm);
  return result;
}

RoundingResult round_projection_family(const std::vector<cmat>& p, const Tolerance& tol) {
  require_same_dim(p);
  for (const cmat& pj : p) {
    if (!is_projection(pj, tol)) {
      throw std::invalid_argument("input operator is not a projection within tolerance");
    }
  }
  RoundingResult result = round_positive_family(p, tol);
  if (result.report.delta_meas > result.report.eps_meas + kSlack) {
    throw std::runtime_error("projection-family invariant delta <= eps violated: delta = " +
                             std::to_string(result.report.delta_meas) + ", eps = " +
                             std::to_string(result.report.eps_meas));
  }
  return result;
}

RoundingResult round_subordinate(const std::vector<cmat>& a, const std::vector<cmat>& p,
                                 const std::vector<int>& block_of, const Tolerance& tol) {
  require_same_dim(a);
  require_same_dim(p);
  if (!is_pvm(p, tol)) throw std::invalid_argument("p must be a PVM");
  const std::size_t m = a.size();
  const std::size_t n = p.size();
  const Eigen::Index d = a.front().rows();
  if (p.front().rows() != d) throw std::invalid_argument("a and p dimension mismatch");
  if (block_of.size() != m) throw std::invalid_argument("partition must assign every operator");
  std::vector<int> first_in_block(n, -1);
  for (std::size_t j = 0; j < m; ++j) {
    const int k = block_of[j];
    if (k < 0 || static_cast<std::size_t>(k) >= n) {
      throw std::invalid_argument("partition block out of range");
    }
    if (first_in_block[k] < 0) first_in_block[k] = static_cast<int>(j);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (first_in_block[k] < 0) {
      throw std::invalid_argument("partition malformed: block " + std::to_string(k) + " is empty");
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    const cmat& pk = p[block_of[j]];
    const double off_block = trace_norm2(a[j] - pk * a[j] * pk);
    if (off_block > 100.0 * tol.eta) {
      throw std::invalid_argument("subordination violated: operator " + std::to_string(j) +
                                  " leaks outside its block by " + std::to_string(off_block));
    }
    const HermitianEig gap = hermitian_eig(pk - a[j], tol);
    if (gap.values.size() && gap.values[0] < -100.0 * tol.eta) {
      throw std::invalid_argument("subordination violated: a_" + std::to_string(j) +
                                  " is not below its block projection");
    }
  }

  // Orthonormal bases for the ranges of the p_k.
  std::vector<cmat> bases(n);
  Eigen::Index total_rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const HermitianEig eig = hermitian_eig(p[k], tol);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      if (eig.values[i] > 0.5) ++rank;
    }
    bases[k] = eig.vectors.rightCols(rank);
    total_rank += rank;
  }
  if (total_rank != d) throw std::invalid_argument("PVM ranks do not span the algebra");

  PipelineOutput pipe = run_pipeline(a, tol);
  validate_povm(pipe.c, tol);
  const BlockPvm r_blocks = povm_to_pvm_blocks(pipe.c, bases, tol);
  const std::vector<cmat> r = assemble_blocks(r_blocks, bases, d);

  // q_j = r_j p_{block(j)} + [j first in its block] * sum_l r_l^perp p_{block(j)};
  // in block coordinates the second term collects the components that the
  // compressed PVM left in foreign blocks.
  std::vector<cmat> q(m);
  for (std::size_t j = 0; j < m; ++j) {
    const int k = block_of[j];
    cmat block = r_blocks[k][j];
    if (static_cast<int>(j) == first_in_block[k]) {
      for (std::size_t l = 0; l < m; ++l) {
        if (block_of[l] != k) block += r_blocks[k][l];
      }
    }
    q[j] = bases[k] * block * bases[k].adjoint();
    q[j] = 0.5 * (q[j] + q[j].adjoint().eval());
  }

  RoundingResult result;
  result.pvm = std::move(q);
  result.report = pipe.report;
  result.report.dist_c_to_p_sq = family_distance_sq(pipe.c, r);
  result.report.total_dist_sq = family_distance_sq(pipe.a, result.pvm);
  const double unconstrained = family_distance_sq(pipe.a, r);
  if (result.report.total_dist_sq > unconstrained + kSlack) {
    throw std::runtime_error("subordinate correction increased the distance: " +
                             std::to_string(result.report.total_dist_sq) + " > " +
                             std::to_string(unconstrained));
  }
  return result;
}

}  // namespace isg
