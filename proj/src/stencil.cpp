#include "stencil.hpp"

#include <algorithm>
#include <cstddef>

#include "lcap/lorentz.hpp"

namespace lcap::detail {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0 || max_order < 0 || max_order >= n) throw Error("fd_weights: need more nodes than the derivative order");
  std::vector<std::vector<double>> c(static_cast<std::size_t>(max_order + 1), std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<double> periodic_derivative(std::span<const double> f, double h, int order, int half) {
  const int n = static_cast<int>(f.size());
  if (n < 2 * half + 1) throw Error("periodic_derivative: sequence shorter than the stencil");
  std::vector<double> nodes(static_cast<std::size_t>(2 * half + 1));
  for (int i = -half; i <= half; ++i) nodes[i + half] = i * h;
  const auto w = fd_weights(0.0, nodes, order)[order];
  std::vector<double> out(f.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = -half; i <= half; ++i) acc += w[i + half] * f[((k + i) % n + n) % n];
    out[k] = acc;
  }
  return out;
}

}  // namespace lcap::detail
