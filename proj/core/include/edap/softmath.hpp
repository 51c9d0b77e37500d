#pragma once

#include <span>
#include <vector>

namespace edap {

// Distortion-resilient distance dd_F(p,q) = sum of p_i over coordinates with
// p_i > F * q_i. Asymmetric, not a metric; tolerates multiplicative
// distortion F and charges additive corruption.
double dd(std::span<const double> p, std::span<const double> q, double F);
double dd_scalar(double p, double q, double F);

// Soft threshold T^q_{delta,gamma}: identity above gamma, zero below
// delta*gamma, gamma*(x/gamma)^q between.
double soft_threshold(double x, double q, double delta, double gamma);

// Soft quantile Q_{delta,s,F}(x) = max_J a_{|J|} min_{j in J} x_j with
// a_i = 1 for i >= s*d, 0 for i < (s-delta)*d, F^{i-s*d} between. Computed
// by sorting: the optimal J is a suffix of the sorted order.
double soft_quantile(std::span<const double> x, double delta, double s, double F);

// Brute-force reference over all 2^d subsets; test oracle for d <= ~20.
double soft_quantile_bruteforce(std::span<const double> x, double delta, double s, double F);

}  // namespace edap
