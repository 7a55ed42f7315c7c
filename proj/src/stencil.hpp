#pragma once

#include <span>
#include <vector>

namespace lcap::detail {

// Finite-difference weights at x0 for derivatives 0..max_order over the given
// nodes (Fornberg's recursion). Row m holds the weights of the m-th derivative.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order);

// Derivative of a periodic sequence with uniform spacing h, using a centered
// stencil of 2*half+1 points.
std::vector<double> periodic_derivative(std::span<const double> f, double h, int order, int half = 4);

}  // namespace lcap::detail
