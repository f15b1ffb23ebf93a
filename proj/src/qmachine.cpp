#include "spinmem/qmachine.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace spinmem {
namespace {

constexpr double kPsdTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kRowTol = 1e-10;

}  // namespace

word_distribution_table word_distributions(const epsilon_machine& machine) {
  const int observed = verify_cryptic_order(machine);
  if (observed != machine.range)
    throw numerical_error("synchronizing word length " +
                          std::to_string(observed) +
                          " does not match the machine range " +
                          std::to_string(machine.range));

  word_distribution_table table;
  table.range = machine.range;
  const int n = machine.n_states;
  table.probs.resize(n, n);
  for (int s = 0; s < n; ++s) {
    double row = 0.0;
    for (int w = 0; w < n; ++w) {
      unsigned state = static_cast<unsigned>(s);
      double p = 1.0;
      for (int step = 0; step < machine.range; ++step) {
        const int x = (w >> step) & 1;
        p *= machine.prob(state, x);
        state = machine.successor(state, x);
      }
      table.probs(s, w) = p;
      row += p;
    }
    if (std::abs(row - 1.0) > kRowTol)
      throw numerical_error("word probabilities from one state sum to " +
                            std::to_string(row));
  }
  return table;
}

gram_matrix signal_state_gram(const Eigen::VectorXd& pi,
                              const word_distribution_table& words) {
  const int n = static_cast<int>(pi.size());
  if (words.probs.rows() != n)
    throw std::invalid_argument("word table and pi sizes disagree");

  Eigen::MatrixXd roots = words.probs.cwiseSqrt();
  gram_matrix gram;
  gram.entries.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double overlap = roots.row(i).dot(roots.row(j));
      const double g = std::sqrt(pi[i] * pi[j]) * overlap;
      gram.entries(i, j) = g;
      gram.entries(j, i) = g;
    }
  }

  const double trace = gram.entries.trace();
  if (std::abs(trace - 1.0) > kTraceTol)
    throw numerical_error("Gram trace " + std::to_string(trace) +
                          " deviates from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.entries);
  if (solver.info() != Eigen::Success)
    throw numerical_error("Gram eigensolve failed to converge");
  const double lowest = solver.eigenvalues().minCoeff();
  gram.psd_residual = std::max(0.0, -lowest);
  if (gram.psd_residual > kPsdTol)
    throw numerical_error("Gram matrix is not positive semidefinite; lowest "
                          "eigenvalue " + std::to_string(lowest));
  return gram;
}

Eigen::VectorXd gram_spectrum(const gram_matrix& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.entries);
  if (solver.info() != Eigen::Success)
    throw numerical_error("Gram eigensolve failed to converge");
  return solver.eigenvalues().reverse();
}

double quantum_memory(const gram_matrix& gram) {
  const Eigen::VectorXd spectrum = gram_spectrum(gram);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double lambda = spectrum[i];
    if (lambda < -kPsdTol)
      throw numerical_error("Gram eigenvalue " + std::to_string(lambda) +
                            " below the PSD tolerance");
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  return std::max(entropy, 0.0);
}

Eigen::MatrixXd density_matrix_full(const epsilon_machine& machine,
                                    const Eigen::VectorXd& pi) {
  if (machine.range > 5)
    throw std::domain_error(
        "full density matrix is 4^N dimensional; range is capped at 5");
  const int n = machine.n_states;
  const int dim = n * n;
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd amplitude(dim);
  for (int s = 0; s < n; ++s) {
    amplitude.setZero();
    for (int w = 0; w < n; ++w) {
      // Follow the path explicitly rather than assuming the end state is w,
      // so this route stays independent of the Gram shortcut it validates.
      unsigned state = static_cast<unsigned>(s);
      double p = 1.0;
      for (int step = 0; step < machine.range; ++step) {
        const int x = (w >> step) & 1;
        p *= machine.prob(state, x);
        state = machine.successor(state, x);
      }
      amplitude[w * n + static_cast<int>(state)] = std::sqrt(p);
    }
    rho.noalias() += pi[s] * amplitude * amplitude.transpose();
  }
  return rho;
}

double high_temp_asymptote(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::domain_error("temperature must be finite and > 0");
  return std::log2(temperature) / (2.0 * temperature * temperature);
}

}  // namespace spinmem
