#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "p4/poisson.hpp"

namespace p4 {

struct Trajectory {
  std::vector<Point4> points;
  std::vector<double> times;
  std::string field;
};

// Classical RK4 with n = round(T / dt) uniform steps of size T / n.
// Throws DomainError when the field is not evaluable along the way.
Trajectory integrate(const MV1& x, const Point4& p0, double t_end, double dt, std::string field = {});

struct Drift {
  std::string name;
  double max_drift = 0.0;
};

struct ConservationReport {
  std::vector<Drift> invariants;
  // trace(X_H) along the trajectory.
  ZeroVerdict volume_verdict;
  double max_volume_rate = 0.0;
  // Φ·Ψ drift, reported when H is a first integral of the modular field.
  bool modular_first_integral = false;
  std::optional<double> pairing_drift;
};

ConservationReport conservation_report(const MV2& l, const Expr& h, std::span<const Expr> invariants,
                                       const Trajectory& traj, const SamplerConfig& cfg = {});

}  // namespace p4
