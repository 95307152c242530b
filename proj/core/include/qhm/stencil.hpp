#pragma once

#include <vector>

namespace qhm {

// Local polynomial stencils on a unit-spaced grid.

/// Lagrange weights for nodes s = -(order/2 - 1), ..., order/2 evaluated at
/// offset t in [0,1). At t == 0 the weights are exactly the unit vector.
std::vector<double> lagrange_weights(int order, double t);

/// Offset of the first node of the interpolation stencil, -(order/2 - 1).
inline int lagrange_first_node(int order) { return -(order / 2 - 1); }

/// Central first-derivative weights on nodes -order/2 .. order/2 (unit
/// spacing), accurate to O(h^order). Index k corresponds to node k - order/2.
std::vector<double> central_derivative_weights(int order);

/// Weights extrapolating from nodes -order .. -1 to node 0.
std::vector<double> extrapolation_weights(int order);

}  // namespace qhm
