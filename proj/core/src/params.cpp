#include "qhm/params.hpp"

#include <cmath>
#include <sstream>

namespace qhm {

void AlgebraParams::validate() const {
  if (c < 1) throw ConfigError("c must be a positive integer");
  if (!std::isfinite(hbar) || !std::isfinite(mu) || !std::isfinite(nu) ||
      !std::isfinite(alpha))
    throw ConfigError("algebra parameters must be finite");
  if (mu * mu + nu * nu <= 0.0) throw ConfigError("mu^2 + nu^2 must be positive");
  if (!(alpha > 1.0)) throw ConfigError("alpha must be greater than one");
}

void Truncation::validate() const {
  if (P < 1) throw ConfigError("truncation P must be >= 1");
  if (N < 1) throw ConfigError("truncation N must be >= 1");
  if (interp_order < 4 || interp_order % 2 != 0)
    throw ConfigError("interp_order must be an even integer >= 4");
  if (Nx < 2 * interp_order) throw ConfigError("Nx must be >= 2 * interp_order");
}

std::string describe(const AlgebraParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "c=" << p.c << " hbar=" << p.hbar << " mu=" << p.mu << " nu=" << p.nu
     << " alpha=" << p.alpha;
  return os.str();
}

std::string describe(const Truncation& t) {
  std::ostringstream os;
  os << "P=" << t.P << " N=" << t.N << " Nx=" << t.Nx
     << " interp_order=" << t.interp_order;
  return os.str();
}

}  // namespace qhm
