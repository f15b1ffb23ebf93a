#include "spinmem/epsilon_machine.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

namespace spinmem {
namespace {

constexpr double kStochTol = 1e-8;
constexpr double kCrossTol = 1e-9;
constexpr int kDensePiCap = 256;

Eigen::VectorXd stationary_dense(const Eigen::MatrixXd& stochastic) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(stochastic.transpose());
  if (solver.info() != Eigen::Success)
    throw numerical_error("stationary eigensolve failed to converge");
  const auto& values = solver.eigenvalues();
  Eigen::Index best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double gap = std::abs(values[i] - std::complex<double>(1.0, 0.0));
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  if (best_gap > 1e-8)
    throw numerical_error("no eigenvalue within 1e-8 of 1 in stochastic matrix");
  Eigen::VectorXd pi = solver.eigenvectors().col(best).real();
  if (pi.sum() < 0.0) pi = -pi;
  if (pi.minCoeff() < 0.0) pi = pi.cwiseMax(0.0);
  return pi / pi.sum();
}

Eigen::VectorXd stationary_power(const epsilon_machine& machine) {
  const int n = machine.n_states;
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd next(n);
  for (int it = 0; it < 500000; ++it) {
    next.setZero();
    for (int s = 0; s < n; ++s)
      for (int x = 0; x < 2; ++x)
        next[static_cast<int>(machine.successor(static_cast<unsigned>(s), x))] +=
            pi[s] * machine.probs(s, x);
    const double drift = (next - pi).cwiseAbs().maxCoeff();
    pi = next;
    if (drift < 1e-14) return pi / pi.sum();
  }
  throw numerical_error("stationary power iteration did not converge");
}

}  // namespace

Eigen::MatrixXd epsilon_machine::labeled_matrix(int symbol) const {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n_states, n_states);
  for (int s = 0; s < n_states; ++s)
    t(s, static_cast<int>(successor(static_cast<unsigned>(s), symbol))) =
        probs(s, symbol);
  return t;
}

Eigen::MatrixXd epsilon_machine::stochastic_matrix() const {
  return labeled_matrix(0) + labeled_matrix(1);
}

epsilon_machine build_epsilon_machine(const transfer_matrix& tm) {
  if (tm.kind != transfer_kind::shift)
    throw std::invalid_argument(
        "machine construction requires the shift-kind transfer matrix; the "
        "block form does not describe single-spin extensions beyond range 1");

  epsilon_machine machine;
  machine.range = tm.range;
  machine.n_states = block_states(tm.range);
  machine.probs.resize(machine.n_states, 2);

  for (int s = 0; s < machine.n_states; ++s) {
    for (int x = 0; x < 2; ++x) {
      const unsigned next = shift_successor(static_cast<unsigned>(s), x, tm.range);
      machine.probs(s, x) = tm.weights(s, static_cast<int>(next)) *
                            tm.right[static_cast<int>(next)] /
                            (tm.lambda * tm.right[s]);
    }
    const double row = machine.probs(s, 0) + machine.probs(s, 1);
    machine.stoch_residual =
        std::max(machine.stoch_residual, std::abs(row - 1.0));
  }
  if (machine.stoch_residual > kStochTol)
    throw numerical_error("conditional rows deviate from stochasticity by " +
                          std::to_string(machine.stoch_residual));

  machine.pi = stationary_distribution(machine);
  const Eigen::VectorXd cross = tm.right.cwiseProduct(tm.left);
  machine.pi_cross_residual = (machine.pi - cross).cwiseAbs().maxCoeff();
  if (machine.pi_cross_residual > kCrossTol)
    throw numerical_error(
        "stationary distribution disagrees with the eigenvector product by " +
        std::to_string(machine.pi_cross_residual));

  machine.degenerate = true;
  for (int s = 1; s < machine.n_states && machine.degenerate; ++s)
    if (std::abs(machine.probs(s, 0) - machine.probs(0, 0)) > 1e-12)
      machine.degenerate = false;
  return machine;
}

Eigen::VectorXd stationary_distribution(const epsilon_machine& machine) {
  if (machine.n_states <= kDensePiCap)
    return stationary_dense(machine.stochastic_matrix());
  return stationary_power(machine);
}

double statistical_complexity(const Eigen::VectorXd& pi) {
  double total = 0.0, entropy = 0.0;
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    const double p = pi[i];
    if (p < -1e-12 || !std::isfinite(p))
      throw std::domain_error("probability vector has a negative or non-finite entry");
    if (p > 0.0) entropy -= p * std::log2(p);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw std::domain_error("probability vector does not sum to 1");
  return entropy;
}

markov_check verify_markov_order(const epsilon_machine& machine,
                                 const conditional_table& conditionals,
                                 double tolerance) {
  const int m = conditionals.history_length;
  if (m < machine.range)
    throw std::domain_error("history length shorter than the machine range");
  markov_check result;
  for (std::size_t h = 0; h < conditionals.rows.size(); ++h) {
    const unsigned state =
        static_cast<unsigned>(h) >> (m - machine.range);
    for (int x = 0; x < 2; ++x)
      result.max_deviation = std::max(
          result.max_deviation,
          std::abs(conditionals.rows[h][static_cast<std::size_t>(x)] -
                   machine.prob(state, x)));
  }
  result.ok = result.max_deviation <= tolerance;
  return result;
}

int verify_cryptic_order(const epsilon_machine& machine) {
  const int cap = 2 * machine.range;
  for (int k = 0; k <= cap; ++k) {
    bool synchronized = true;
    for (unsigned word = 0; word < (1u << k) && synchronized; ++word) {
      unsigned reference = 0;
      for (int step = 0; step < k; ++step)
        reference = machine.successor(reference, (word >> step) & 1u);
      for (int s = 1; s < machine.n_states && synchronized; ++s) {
        unsigned state = static_cast<unsigned>(s);
        for (int step = 0; step < k; ++step)
          state = machine.successor(state, (word >> step) & 1u);
        synchronized = (state == reference);
      }
    }
    if (synchronized) return k;
  }
  throw numerical_error("no synchronizing word length up to " +
                        std::to_string(cap));
}

}  // namespace spinmem
