#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "p4/expr.hpp"

namespace p4 {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

class SamplerExhausted : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ULL;

struct SamplerConfig {
  std::uint64_t seed = kDefaultSeed;
  int samples = 64;
  int max_attempts = 1024;
  int min_valid = 16;
  double lo = -2.0;
  double hi = 2.0;
  // Optional restriction of the sampling box; rejected points are redrawn.
  std::function<bool(const Point4&)> filter;

  // Defaults overridden by P4_SEED and P4_SAMPLES when set.
  static SamplerConfig from_environment();
};

inline constexpr double kZeroTolerance = 1e-9;

struct ZeroVerdict {
  enum class Kind { symbolic_zero, sampled_zero, nonzero };

  Kind kind = Kind::symbolic_zero;
  int samples = 0;
  double max_abs = 0.0;
  Point4 witness = Point4::Zero();
  double value = 0.0;
  // Index of the failing expression for multi-expression verdicts.
  int component = -1;

  bool is_zero() const { return kind != Kind::nonzero; }
  std::string_view kind_name() const;

  static ZeroVerdict symbolic() { return {}; }
};

// Deterministic list of points drawn the same way zero_verdict draws them.
std::vector<Point4> sample_points(const SamplerConfig& cfg, int count);

ZeroVerdict zero_verdict(const Expr& e, const SamplerConfig& cfg = {});
ZeroVerdict zero_verdict(std::span<const Expr> es, const SamplerConfig& cfg = {});

// Combined verdict: nonzero wins, then sampled, then symbolic.
ZeroVerdict combine(std::span<const ZeroVerdict> verdicts);

// True when |e| exceeds tol at every valid sample point.
bool nonvanishing_on_samples(const Expr& e, const SamplerConfig& cfg = {}, double tol = 1e-12);

}  // namespace p4
