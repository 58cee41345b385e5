// Test-side oracles, independent of the library implementation paths they
// check.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "params.hpp"

namespace oracles {

// Five-point centered first derivative.
inline double fd1(const std::function<double(double)>& g, double x, double h) {
  return (g(x - 2 * h) - 8 * g(x - h) + 8 * g(x + h) - g(x + 2 * h)) / (12 * h);
}

// Five-point centered second derivative.
inline double fd2(const std::function<double(double)>& g, double x, double h) {
  return (-g(x - 2 * h) + 16 * g(x - h) - 30 * g(x) + 16 * g(x + h) - g(x + 2 * h)) /
         (12 * h * h);
}

// Radial-equation residual operator E[u](r) with finite-difference
// derivatives of u^m.
inline double radial_operator(const std::function<double(double)>& u, double N, double m,
                              double p, double sigma, double r) {
  auto um = [&](double x) { return std::pow(u(x), m); };
  const double h = 1e-3 * r;
  return fd2(um, r, h) + (N - 1.0) / r * fd1(um, r, h) +
         std::pow(r, sigma) * std::pow(u(r), p);
}

// Solves the two coefficient-matching conditions
//   theta^2 C1^(m-1) C2^2 = 1,  C1^(p-1) = C2^sigmabar
// as a 2x2 linear system in (ln C1, ln C2). Independent of the closed-form
// route used by the library.
struct ConstantPair {
  double C1;
  double C2;
};

inline ConstantPair solve_matching_conditions(double theta, double m, double p,
                                              double sigmabar) {
  // (m-1) x + 2 y = -2 ln|theta|
  // (p-1) x - sigmabar y = 0
  const double a11 = m - 1.0, a12 = 2.0;
  const double a21 = p - 1.0, a22 = -sigmabar;
  const double b1 = -2.0 * std::log(std::abs(theta));
  const double det = a11 * a22 - a12 * a21;
  const double x = (b1 * a22) / det;
  const double y = (-b1 * a21) / det;
  return ConstantPair{std::exp(x), std::exp(y)};
}

// Bisection on the dominant-balance constant: g(A) = leading coefficient of
// the s = -1 equation evaluated on the pure power law via finite differences
// at a large xi (the source term is subdominant there and excluded).
inline double dominant_balance_bisect(const fdss::ParameterSet& ps, double alpha,
                                      double beta) {
  const double g = -2.0 / (1.0 - ps.m);
  auto leading = [&](double A) {
    const double xi = 1e6;
    auto f = [&](double x) { return A * std::pow(x, g); };
    auto fm = [&](double x) { return std::pow(f(x), ps.m); };
    const double h = 1e-3 * xi;
    const double diffusion = fd2(fm, xi, h) + (ps.N - 1.0) / xi * fd1(fm, xi, h);
    const double linear = -(alpha * f(xi) + beta * xi * fd1(f, xi, h));
    return (diffusion + linear) / std::pow(xi, g);  // normalized coefficient
  };
  double lo = 1e-6, hi = 1e3;
  const bool rising = leading(hi) > leading(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    const bool above = (leading(mid) > 0.0) == rising;
    (above ? hi : lo) = mid;
  }
  return std::sqrt(lo * hi);
}

inline std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace oracles
