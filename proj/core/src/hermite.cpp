#include "bosefock/hermite.hpp"

#include "bosefock/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bosefock {

namespace {

void check_degree(int k) {
  if (k < 0 || k > 1000)
    throw std::invalid_argument("hermite: degree " + std::to_string(k) +
                                " outside [0, 1000]");
}

} // namespace

double hermite_eval(int k, double t) {
  check_degree(k);
  double prev = 0.0, cur = 1.0;
  for (int j = 0; j < k; ++j) {
    const double next = (t * cur - std::sqrt(static_cast<double>(j)) * prev) /
                        std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_all(int k_max, double t) {
  check_degree(k_max);
  std::vector<double> h(static_cast<std::size_t>(k_max) + 1);
  h[0] = 1.0;
  if (k_max >= 1) h[1] = t;
  for (int j = 1; j < k_max; ++j)
    h[static_cast<std::size_t>(j) + 1] =
        (t * h[static_cast<std::size_t>(j)] -
         std::sqrt(static_cast<double>(j)) * h[static_cast<std::size_t>(j) - 1]) /
        std::sqrt(static_cast<double>(j + 1));
  return h;
}

double hermite_derivative_check(int k, double t) {
  if (k < 1) throw std::invalid_argument("hermite_derivative_check: k must be >= 1");
  const double step = 1e-5;
  const double fd = (hermite_eval(k, t + step) - hermite_eval(k, t - step)) / (2.0 * step);
  return std::abs(fd - std::sqrt(static_cast<double>(k)) * hermite_eval(k - 1, t));
}

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1 || order > 128)
    throw std::invalid_argument("gauss_hermite: order " + std::to_string(order) +
                                " outside [1, 128]");
  // Jacobi matrix of the recurrence t*H_k = sqrt(k+1)*H_{k+1} + sqrt(k)*H_{k-1}:
  // zero diagonal, off-diagonal sqrt(k).
  DenseMatrix j(order);
  for (int k = 1; k < order; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    j.at(k - 1, k) = b;
    j.at(k, k - 1) = b;
  }
  const EigResult eig = hermitian_eig(j);
  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    // The eigenvalue is a good node; polish it with Newton on H_order so the
    // node is accurate to rounding even at the edges of the spectrum.
    double t = eig.values[static_cast<std::size_t>(i)];
    for (int step = 0; step < 3; ++step) {
      const std::vector<double> h = hermite_all(order, t);
      const double deriv = std::sqrt(static_cast<double>(order)) *
                           h[static_cast<std::size_t>(order) - 1];
      if (deriv == 0.0) break;
      const double delta = h[static_cast<std::size_t>(order)] / deriv;
      t -= delta;
      if (std::abs(delta) < 1e-15 * (1.0 + std::abs(t))) break;
    }
    // Christoffel-function weights: w = 1 / sum_{k<order} H_k(t)^2.  Unlike
    // eigenvector first components, this stays relatively accurate for the
    // exponentially small edge weights.
    const std::vector<double> h = hermite_all(order - 1, t);
    double kernel = 0.0;
    for (int k = 0; k < order; ++k)
      kernel += h[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(k)];
    rule.nodes[static_cast<std::size_t>(i)] = t;
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / kernel;
  }
  return rule;
}

} // namespace bosefock
