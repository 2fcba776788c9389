#pragma once

#include "ordkm/ordered_cost.hpp"

namespace ordkm {

// Connection-cost transform shared by the LP builder, the dual ascent and the
// rounding steps. All three transforms are monotone with proxy(0) = 0.
struct ProxySpec {
  enum class Kind { Identity, Truncated, Surrogate };
  Kind kind = Kind::Identity;
  TruncatedCostParams trunc{};  // Truncated only
  SurrogateParams sur{};        // Surrogate only
  double gamma = 1.0;           // Surrogate only

  double operator()(double d) const {
    switch (kind) {
      case Kind::Identity: return d;
      case Kind::Truncated: return truncated_cost(trunc, d);
      case Kind::Surrogate: return surrogate_cost(sur, gamma, d);
    }
    return d;
  }

  // The 3-scaled companion used by the rounding analysis: f_{3B} for Truncated,
  // gamma -> 3*gamma for Surrogate, Identity is its own companion.
  ProxySpec scaled3() const {
    ProxySpec p = *this;
    if (kind == Kind::Truncated) p.trunc.B = 3 * trunc.B;
    if (kind == Kind::Surrogate) p.gamma = 3 * gamma;
    return p;
  }

  static ProxySpec identity() { return ProxySpec{}; }
  static ProxySpec truncated(double B, int ell) {
    ProxySpec p;
    p.kind = Kind::Truncated;
    p.trunc = {B, ell};
    return p;
  }
  static ProxySpec surrogate(SurrogateParams sp, double gamma = 1.0) {
    ProxySpec p;
    p.kind = Kind::Surrogate;
    p.sur = std::move(sp);
    p.gamma = gamma;
    return p;
  }
};

}  // namespace ordkm
