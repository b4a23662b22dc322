#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace mediamod::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed by Newton iteration on the Legendre recurrence; cached per order.
const Rule& gauss_legendre(std::size_t order);

/// Composite Gauss-Legendre over [a, b]. The interval is first cut at every
/// breakpoint inside (a, b), then each piece is split into equal panels so
/// that roughly `nodes` abscissae are used in total. Place breakpoints where
/// the integrand changes on a scale much finer than (b - a).
template <class F>
double integrate(F&& f, double a, double b, std::span<const double> breakpoints,
                 std::size_t nodes, std::size_t order = 16) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto& rule = gauss_legendre(order);
  const std::size_t segments = cuts.size() - 1;
  const std::size_t panels = std::max<std::size_t>(1, nodes / (order * segments));
  double total = 0.0;
  for (std::size_t s = 0; s < segments; ++s) {
    const double width = (cuts[s + 1] - cuts[s]) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = cuts[s] + width * static_cast<double>(p);
      const double half = 0.5 * width;
      const double mid = lo + half;
      double panel = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
      total += half * panel;
    }
  }
  return total;
}

}  // namespace mediamod::quadrature
