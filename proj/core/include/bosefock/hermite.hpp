#ifndef BOSEFOCK_HERMITE_HPP
#define BOSEFOCK_HERMITE_HPP

#include <vector>

namespace bosefock {

// Orthonormal Hermite polynomials for the unit-variance Gaussian weight
// e^{-t^2/2}/sqrt(2*pi):  H_0 = 1, H_1 = t,
// H_{k+1}(t) = (t*H_k(t) - sqrt(k)*H_{k-1}(t)) / sqrt(k+1),
// with derivative H_k'(t) = sqrt(k)*H_{k-1}(t).

// Evaluate H_k(t). Throws std::invalid_argument for k < 0 or k > 1000.
double hermite_eval(int k, double t);

// All values H_0(t), ..., H_kmax(t) in one recurrence pass.
std::vector<double> hermite_all(int k_max, double t);

// |central finite difference of H_k at t (step 1e-5) - sqrt(k)*H_{k-1}(t)|.
double hermite_derivative_check(int k, double t);

struct GaussHermiteRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // sum to 1 (the weight has unit total mass)
};

// Golub-Welsch rule for the unit-variance Gaussian weight, exact for
// polynomials of degree <= 2*order - 1. Throws for order < 1 or order > 128.
GaussHermiteRule gauss_hermite(int order);

} // namespace bosefock

#endif
