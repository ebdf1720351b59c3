#include "p4/flow.hpp"

#include <algorithm>
#include <cmath>

namespace p4 {

namespace {

Point4 eval_field(const std::array<Expr, 4>& f, const Point4& p) {
  return Point4(eval(f[0], p), eval(f[1], p), eval(f[2], p), eval(f[3], p));
}

double max_drift(const Expr& k, const Trajectory& traj) {
  const double k0 = eval(k, traj.points.front());
  double out = 0.0;
  for (const Point4& p : traj.points) out = std::max(out, std::abs(eval(k, p) - k0));
  return out;
}

}  // namespace

Trajectory integrate(const MV1& x, const Point4& p0, double t_end, double dt, std::string field) {
  if (!(dt > 0) || !(t_end >= dt)) throw PreconditionError("integrate needs dt > 0 and T >= dt");
  const auto n = static_cast<long>(std::llround(t_end / dt));
  const double h = t_end / static_cast<double>(n);
  const MV1 s = simplify(x);
  const std::array<Expr, 4> f = {s.w[0], s.w[1], s.w[2], s.b};

  Trajectory traj;
  traj.field = std::move(field);
  traj.points.reserve(n + 1);
  traj.times.reserve(n + 1);
  traj.points.push_back(p0);
  traj.times.push_back(0.0);
  Point4 p = p0;
  for (long i = 1; i <= n; ++i) {
    const Point4 k1 = eval_field(f, p);
    const Point4 k2 = eval_field(f, p + 0.5 * h * k1);
    const Point4 k3 = eval_field(f, p + 0.5 * h * k2);
    const Point4 k4 = eval_field(f, p + h * k3);
    p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.points.push_back(p);
    traj.times.push_back(static_cast<double>(i) * h);
  }
  return traj;
}

ConservationReport conservation_report(const MV2& l, const Expr& h, std::span<const Expr> invariants,
                                       const Trajectory& traj, const SamplerConfig& cfg) {
  ConservationReport r;
  for (const Expr& k : invariants) r.invariants.push_back({render(simplify(k)), max_drift(k, traj)});

  const Expr volume = simplify(trace(hamiltonian(l, h)));
  r.volume_verdict = zero_verdict(volume, cfg);
  for (const Point4& p : traj.points) r.max_volume_rate = std::max(r.max_volume_rate, std::abs(eval(volume, p)));

  r.modular_first_integral = zero_verdict(directional(modular(l), h), cfg).is_zero();
  if (r.modular_first_integral) r.pairing_drift = max_drift(dot(l.psi, l.phi), traj);
  return r;
}

}  // namespace p4
