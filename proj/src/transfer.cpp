#include "spinmem/transfer.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

namespace spinmem {
namespace {

constexpr double kResidualTol = 1e-13;
constexpr int kDenseCap = 2048;

struct eigpair {
  double lambda = 0.0;
  Eigen::VectorXd vec;
  double residual = 0.0;
  double second_modulus = std::numeric_limits<double>::quiet_NaN();
};

double relative_residual(const Eigen::MatrixXd& m, double lambda,
                         const Eigen::VectorXd& v) {
  const double scale = lambda * v.cwiseAbs().maxCoeff();
  return (m * v - lambda * v).cwiseAbs().maxCoeff() / scale;
}

// A few rounds of the power map, keeping the best iterate seen. Positive
// matrices improve monotonically in practice; this is a polish step after the
// dense solve and the whole solver above the dense cap.
void power_refine(const Eigen::MatrixXd& m, eigpair& p, int max_iter) {
  Eigen::VectorXd x = p.vec;
  for (int it = 0; it < max_iter && p.residual > kResidualTol; ++it) {
    x = m * x;
    const double norm = x.lpNorm<1>();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw numerical_error("power iteration produced a non-finite iterate");
    x /= norm;
    const double lambda = x.dot(m * x) / x.squaredNorm();
    const double res = relative_residual(m, lambda, x);
    if (res < p.residual) {
      p.lambda = lambda;
      p.vec = x;
      p.residual = res;
    }
  }
}

eigpair dominant_eigenpair(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  eigpair p;
  if (n == 1) {
    p.lambda = m(0, 0);
    p.vec = Eigen::VectorXd::Ones(1);
    p.residual = 0.0;
    p.second_modulus = 0.0;
    return p;
  }
  if (n <= kDenseCap) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
      throw numerical_error("dense eigendecomposition failed to converge");
    const auto& values = solver.eigenvalues();
    Eigen::Index top = 0;
    double top_mod = -1.0, second_mod = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mod = std::abs(values[i]);
      if (mod > top_mod) {
        second_mod = top_mod;
        top_mod = mod;
        top = i;
      } else if (mod > second_mod) {
        second_mod = mod;
      }
    }
    if (std::abs(values[top].imag()) > 1e-9 * top_mod)
      throw numerical_error("dominant eigenvalue is not real");
    p.lambda = values[top].real();
    Eigen::VectorXcd col = solver.eigenvectors().col(top);
    if (col.imag().cwiseAbs().maxCoeff() > 1e-9 * col.real().cwiseAbs().maxCoeff())
      throw numerical_error("dominant eigenvector is not real");
    p.vec = col.real();
    if (p.vec.sum() < 0.0) p.vec = -p.vec;
    if (p.vec.minCoeff() <= 0.0) p.vec = p.vec.cwiseAbs();
    p.vec /= p.vec.lpNorm<1>();
    p.residual = relative_residual(m, p.lambda, p.vec);
    p.second_modulus = second_mod;
    power_refine(m, p, 500);
    // A strongly graded Perron vector can have components below the dense
    // solver's resolution, returned as zeros or tiny negatives. Power steps
    // restore them: each entry of m*x is a sum of nonnegative products, and
    // the transition support reaches every component within dim steps. The
    // repaired iterate is kept only if it is positive and still accurate.
    if (p.vec.minCoeff() <= 0.0) {
      Eigen::VectorXd x = p.vec.cwiseMax(0.0);
      for (Eigen::Index it = 0; it < n && x.minCoeff() <= 0.0; ++it) {
        x = m * x;
        const double norm = x.lpNorm<1>();
        if (!(norm > 0.0) || !std::isfinite(norm))
          throw numerical_error("power iteration produced a non-finite iterate");
        x /= norm;
      }
      const double res = relative_residual(m, p.lambda, x);
      if (x.minCoeff() > 0.0 && res <= kResidualTol) {
        p.vec = x;
        p.residual = res;
      }
    }
  } else {
    p.vec = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    p.lambda = 0.0;
    p.residual = std::numeric_limits<double>::infinity();
    power_refine(m, p, 200000);
  }
  if (p.residual > kResidualTol)
    throw numerical_error("dominant eigenpair residual " +
                          std::to_string(p.residual) + " exceeds 1e-13");
  return p;
}

}  // namespace

transfer_matrix transfer_matrix::rescaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw std::domain_error("rescale factor must be positive and finite");
  transfer_matrix out = *this;
  out.log_scale += std::log(factor);
  return out;
}

transfer_matrix transfer_from_log_weights(const Eigen::MatrixXd& log_weights,
                                          transfer_kind kind, int range) {
  const auto n = log_weights.rows();
  if (n != log_weights.cols() || n != block_states(range))
    throw std::invalid_argument("log-weight matrix must be 2^range square");

  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = log_weights(i, j);
      if (std::isnan(w) || w == std::numeric_limits<double>::infinity())
        throw std::invalid_argument("log weights must be finite or -inf");
      if (w > top) top = w;
    }
  if (!std::isfinite(top))
    throw std::invalid_argument("log-weight matrix has no finite entry");

  transfer_matrix tm;
  tm.kind = kind;
  tm.range = range;
  tm.log_scale = top;
  // Entry-by-entry instead of the vectorized exp(): a -inf marker (forbidden
  // transition) must become an exact structural zero, but SIMD exp clamps its
  // argument and returns a denormal for -inf.
  tm.weights.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = log_weights(i, j);
      tm.weights(i, j) =
          w == -std::numeric_limits<double>::infinity() ? 0.0
                                                        : std::exp(w - top);
    }

  eigpair right = dominant_eigenpair(tm.weights);
  eigpair left = dominant_eigenpair(tm.weights.transpose());
  if (!(right.lambda > 0.0))
    throw numerical_error("dominant eigenvalue must be positive");
  if (std::abs(left.lambda - right.lambda) >
      1e-10 * std::max(std::abs(left.lambda), std::abs(right.lambda)))
    throw numerical_error("left/right dominant eigenvalues disagree");
  if (right.vec.minCoeff() <= 0.0 || left.vec.minCoeff() <= 0.0)
    throw numerical_error("dominant eigenvectors are not strictly positive");
  if (std::isfinite(right.second_modulus) &&
      right.second_modulus >= right.lambda * (1.0 - 1e-12))
    throw numerical_error("dominant eigenvalue is not simple");

  tm.lambda = right.lambda;
  tm.right = right.vec;  // already 1-normalized and positive
  tm.left = left.vec / left.vec.dot(tm.right);
  tm.spectral_ratio = right.second_modulus / right.lambda;
  tm.perron_residual = std::max(right.residual, left.residual);
  return tm;
}

transfer_matrix shift_transfer_matrix(const coupling_spec& spec) {
  validate(spec);
  if (spec.range > 12)
    throw std::domain_error("transfer matrix storage is capped at range 12");
  const int n = block_states(spec.range);
  Eigen::MatrixXd logw = Eigen::MatrixXd::Constant(
      n, n, -std::numeric_limits<double>::infinity());
  const double beta = spec.beta();
  for (int state = 0; state < n; ++state)
    for (int symbol = 0; symbol < 2; ++symbol) {
      const unsigned next = shift_successor(static_cast<unsigned>(state),
                                            symbol, spec.range);
      const int spin = symbol ? +1 : -1;
      logw(state, static_cast<int>(next)) =
          -beta * added_spin_energy(spec, static_cast<unsigned>(state), spin);
    }
  return transfer_from_log_weights(logw, transfer_kind::shift, spec.range);
}

transfer_matrix block_transfer_matrix(const coupling_spec& spec) {
  validate(spec);
  if (spec.range > 12)
    throw std::domain_error("block matrix storage is capped at range 12");
  const int n = block_states(spec.range);
  Eigen::MatrixXd logw(n, n);
  const double beta = spec.beta();
  std::vector<double> internal(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b)
    internal[static_cast<std::size_t>(b)] =
        block_internal_energy(spec, static_cast<unsigned>(b));
  for (int l = 0; l < n; ++l)
    for (int r = 0; r < n; ++r) {
      const double e =
          0.5 * internal[static_cast<std::size_t>(l)] +
          block_interaction_energy(spec, static_cast<unsigned>(l),
                                   static_cast<unsigned>(r)) +
          0.5 * internal[static_cast<std::size_t>(r)];
      logw(l, r) = -beta * e;
    }
  return transfer_from_log_weights(logw, transfer_kind::block, spec.range);
}

}  // namespace spinmem
