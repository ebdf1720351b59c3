#include "p4/verdict.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace p4 {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SamplerConfig SamplerConfig::from_environment() {
  SamplerConfig cfg;
  if (const char* seed = std::getenv("P4_SEED"); seed && *seed) {
    cfg.seed = std::stoull(seed, nullptr, 0);
  }
  if (const char* samples = std::getenv("P4_SAMPLES"); samples && *samples) {
    cfg.samples = std::stoi(samples);
    if (cfg.samples < 1) throw PreconditionError("P4_SAMPLES must be positive");
    cfg.min_valid = std::min(cfg.min_valid, cfg.samples);
  }
  return cfg;
}

std::string_view ZeroVerdict::kind_name() const {
  switch (kind) {
    case Kind::symbolic_zero: return "symbolic_zero";
    case Kind::sampled_zero: return "sampled_zero";
    case Kind::nonzero: return "nonzero";
  }
  return "?";
}

namespace {

Point4 draw(SplitMix64& rng, const SamplerConfig& cfg) {
  Point4 p;
  for (int i = 0; i < 4; ++i) p[i] = cfg.lo + (cfg.hi - cfg.lo) * rng.uniform();
  return p;
}

}  // namespace

std::vector<Point4> sample_points(const SamplerConfig& cfg, int count) {
  SplitMix64 rng(cfg.seed);
  std::vector<Point4> out;
  for (int attempt = 0; attempt < cfg.max_attempts && static_cast<int>(out.size()) < count; ++attempt) {
    Point4 p = draw(rng, cfg);
    if (cfg.filter && !cfg.filter(p)) continue;
    out.push_back(p);
  }
  return out;
}

ZeroVerdict zero_verdict(const Expr& e, const SamplerConfig& cfg) {
  return zero_verdict(std::span<const Expr>(&e, 1), cfg);
}

ZeroVerdict zero_verdict(std::span<const Expr> es, const SamplerConfig& cfg) {
  std::vector<std::pair<int, Expr>> live;
  for (std::size_t i = 0; i < es.size(); ++i) {
    Expr s = simplify(es[i]);
    if (!s.is_zero()) live.emplace_back(static_cast<int>(i), std::move(s));
  }
  ZeroVerdict verdict;
  if (live.empty()) return verdict;

  SplitMix64 rng(cfg.seed);
  int valid = 0;
  double max_abs = 0.0;
  for (int attempt = 0; attempt < cfg.max_attempts && valid < cfg.samples; ++attempt) {
    Point4 p = draw(rng, cfg);
    if (cfg.filter && !cfg.filter(p)) continue;
    std::vector<ScaledValue> values;
    values.reserve(live.size());
    try {
      for (const auto& [idx, e] : live) values.push_back(eval_scaled(e, p));
    } catch (const DomainError&) {
      continue;
    }
    ++valid;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double tol = kZeroTolerance * std::max(1.0, values[k].scale);
      if (std::abs(values[k].value) > tol) {
        verdict.kind = ZeroVerdict::Kind::nonzero;
        verdict.samples = valid;
        verdict.witness = p;
        verdict.value = values[k].value;
        verdict.component = live[k].first;
        verdict.max_abs = std::abs(values[k].value);
        return verdict;
      }
      max_abs = std::max(max_abs, std::abs(values[k].value));
    }
  }
  if (valid < cfg.min_valid) {
    throw SamplerExhausted("only " + std::to_string(valid) + " valid sample points found");
  }
  verdict.kind = ZeroVerdict::Kind::sampled_zero;
  verdict.samples = valid;
  verdict.max_abs = max_abs;
  return verdict;
}

ZeroVerdict combine(std::span<const ZeroVerdict> verdicts) {
  ZeroVerdict out;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const ZeroVerdict& v = verdicts[i];
    if (v.kind == ZeroVerdict::Kind::nonzero) {
      out = v;
      out.component = static_cast<int>(i);
      return out;
    }
    if (v.kind == ZeroVerdict::Kind::sampled_zero) {
      if (out.kind == ZeroVerdict::Kind::symbolic_zero) out = v;
      out.max_abs = std::max(out.max_abs, v.max_abs);
    }
  }
  return out;
}

bool nonvanishing_on_samples(const Expr& e, const SamplerConfig& cfg, double tol) {
  Expr s = simplify(e);
  SplitMix64 rng(cfg.seed);
  int valid = 0;
  for (int attempt = 0; attempt < cfg.max_attempts && valid < cfg.samples; ++attempt) {
    Point4 p = draw(rng, cfg);
    if (cfg.filter && !cfg.filter(p)) continue;
    double v = 0.0;
    try {
      v = eval(s, p);
    } catch (const DomainError&) {
      return false;
    }
    if (std::abs(v) <= tol) return false;
    ++valid;
  }
  return valid > 0;
}

}  // namespace p4
