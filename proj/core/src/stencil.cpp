#include "qhm/stencil.hpp"

#include <cmath>

namespace qhm {

std::vector<double> lagrange_weights(int order, double t) {
  const int first = lagrange_first_node(order);
  std::vector<double> w(order);
  for (int a = 0; a < order; ++a) {
    const int sa = first + a;
    double num = 1.0;
    double den = 1.0;
    for (int b = 0; b < order; ++b) {
      if (b == a) continue;
      const int sb = first + b;
      num *= (t - sb);
      den *= (sa - sb);
    }
    w[a] = num / den;
  }
  return w;
}

std::vector<double> central_derivative_weights(int order) {
  // w_{+k} = (-1)^{k+1} (r!)^2 / (k (r-k)! (r+k)!), w_{-k} = -w_{+k}
  const int r = order / 2;
  std::vector<double> w(2 * r + 1, 0.0);
  auto fact = [](int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  const double rf2 = fact(r) * fact(r);
  for (int k = 1; k <= r; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double v = sign * rf2 / (k * fact(r - k) * fact(r + k));
    w[r + k] = v;
    w[r - k] = -v;
  }
  return w;
}

std::vector<double> extrapolation_weights(int order) {
  std::vector<double> w(order);
  for (int a = 0; a < order; ++a) {
    const double ta = -(order - a);
    double num = 1.0;
    double den = 1.0;
    for (int b = 0; b < order; ++b) {
      if (b == a) continue;
      const double tb = -(order - b);
      num *= (0.0 - tb);
      den *= (ta - tb);
    }
    w[a] = num / den;
  }
  return w;
}

}  // namespace qhm
