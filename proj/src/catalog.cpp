#include "p4/catalog.hpp"

#include <charconv>

#include "p4/poisson.hpp"

namespace p4 {

namespace {

TensorFile file(std::string name, std::array<std::string, 3> psi, std::array<std::string, 3> phi,
                std::optional<std::string> notes = std::nullopt, std::optional<bool> discrepancy = std::nullopt) {
  return TensorFile{std::move(name), std::move(psi), std::move(phi), std::move(notes), discrepancy};
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;

  {
    CatalogEntry e;
    e.file = file("example2-linear", {"2*x1", "0", "0"}, {"x1/2", "x2/4", "x3/4"},
                  "The displayed Hamiltonian field drops the -f_y*Phi1 term and flips the Phi sign relative to "
                  "sharp(dH); sharp(dH) is used.");
    e.source = "linear Poisson tensor whose leaves are x1 > 0, x1 < 0, the planes in x1 = 0 and the points (0, y)";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "0", "-1"};
    e.ranks = {{"1,0,0,0", 4}, {"-1,0,0,0", 4}, {"0,1,0,0", 2}, {"0,0,1,0", 2}, {"0,0,0,7", 0}, {"0,0,0,-3", 0}};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("quadratic-k", {"-x1*x2", "x1*x3", "0"}, {"-y*x1", "-y*x2", "y*x3"},
                  "Printed as Poisson with modular field -3*x1 d1 + 2*x3 d3 + y dy; the Jacobi residuals do not "
                  "vanish and the trace gives a different x-part.",
                  true);
    e.source = "quadratic tensor with claimed open symplectic leaves x1*x2*x3*y != 0";
    e.is_poisson = "nonzero";
    e.modular = {"-2*x1", "-x2", "x1 + 2*x3", "y"};
    e.residual_r0 = "x1^2*x2";
    e.residual_r = std::array<std::string, 3>{"-2*x1*x2*y", "0", "0"};
    e.claimed_modular = std::array<std::string, 4>{"-3*x1", "0", "2*x3", "y"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("canonical-symplectic", {"0", "0", "1"}, {"0", "0", "1"});
    e.source = "Darboux tensor d1^d2 + d3^dy";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "0", "0"};
    e.ranks = {{"0,0,0,0", 4}, {"1,-1,2,0.5", 4}};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("liouville-symplectic", {"0", "-1", "0"}, {"0", "1", "0"}, "f = -x2, Sigma = (0, 0, x1), c = 1.");
    e.source = "Liouville family with constant c = 1";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "0", "0"};
    e.ranks = {{"0,0,0,0", 4}, {"1,1,1,1", 4}};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("rank2-gradient", {"x1", "x2", "x3"}, {"0", "0", "0"});
    e.source = "rank-2 tensor grad(|x|^2/2) dx^dx with Casimirs |x|^2 and y";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "0", "0"};
    e.ranks = {{"1,0,0,0", 2}, {"0,1,1,5", 2}, {"0,0,0,3", 0}};
    e.casimirs = {"(x1^2 + x2^2 + x3^2)/2", "y"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("casimir-quadratic", {"x1 + x3", "x2", "y"}, {"0", "-y", "x2"},
                  "M = diag(1, 1, 0), alpha = (0, 0, 1), b = 0, A = (1, 0, 0), c = 1.");
    e.source = "linear tensor with quadratic Casimir k1 and linear Casimir k2 = A.x - c*y";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "0", "0"};
    e.ranks = {{"1,0,0,0", 2}, {"0,0,0,0", 0}};
    e.casimirs = {"(x1^2 + x2^2)/2 + x3*y", "x1 - y"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("dirac-canonical", {"0", "0", "0"}, {"0", "0", "1"}, "Dirac tensor of the Darboux tensor for (x1, x2).");
    e.source = "Dirac tensor with Casimirs x1 and x2";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "0", "0"};
    e.ranks = {{"0,0,0,0", 2}, {"1,2,3,4", 2}};
    e.casimirs = {"x1", "x2"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("s-tensor-sample", {"0", "-1", "0"}, {"0", "0", "1"}, "S for f = x1 + y, g = x2.");
    e.source = "transversal tensor S_(f,g) annihilating df and dg";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "0", "0"};
    e.ranks = {{"0,0,0,0", 2}, {"1,1,1,1", 2}};
    e.casimirs = {"x1 + y", "x2"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.file = file("rank2-linear", {"0", "x1 + y", "0"}, {"0", "0", "x1 + y"}, "Phi = (x1 + y) e3, Sigma = (1, 0, 0).");
    e.source = "linear tensor of rank 2 in the form (Phi x Sigma, Phi)";
    e.is_poisson = "symbolic_zero";
    e.modular = {"0", "0", "2", "0"};
    e.ranks = {{"1,0,0,0", 2}, {"0,0,0,0", 0}, {"1,0,0,-1", 0}};
    e.casimirs = {"x2", "x1 - y"};
    out.push_back(e);
  }
  return out;
}

bool same(const Expr& a, std::string_view expected) { return zero_verdict(a - parse(expected)).kind == ZeroVerdict::Kind::symbolic_zero; }

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.file.name == name) return e;
  }
  throw PreconditionError("unknown catalog entry: " + std::string(name));
}

Point4 parse_point(std::string_view csv) {
  Point4 p;
  int i = 0;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = csv.find(',', start);
    std::string_view part = csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (i >= 4) throw ParseError("point needs exactly 4 coordinates", start);
    double v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw ParseError("invalid coordinate '" + std::string(part) + "'", start);
    }
    p[i++] = v;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (i != 4) throw ParseError("point needs exactly 4 coordinates", csv.size());
  return p;
}

EntryRun run_entry(const CatalogEntry& entry, const SamplerConfig& cfg) {
  EntryRun run;
  run.name = entry.file.name;
  const MV2 l = entry.file.tensor();
  auto add = [&](std::string name, std::string expected, std::string actual, bool pass) {
    run.checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };

  const ZeroVerdict v = is_poisson(l, cfg);
  add("is_poisson", entry.is_poisson, std::string(v.kind_name()), v.kind_name() == entry.is_poisson);

  const MV1 z = simplify(modular(l));
  const std::array<Expr, 4> zc = {z.w[0], z.w[1], z.w[2], z.b};
  for (int i = 0; i < 4; ++i) {
    add("modular[" + std::to_string(i) + "]", entry.modular[i], render(zc[i]), same(zc[i], entry.modular[i]));
  }

  for (const RankExpectation& r : entry.ranks) {
    const RankValue rv = rank_at(l, parse_point(r.point));
    add("rank@" + r.point, std::to_string(r.rank), std::to_string(rv.rank), rv.rank == r.rank);
  }

  for (const std::string& k : entry.casimirs) {
    const ZeroVerdict c = is_casimir(l, parse(k), cfg);
    add("casimir:" + k, "symbolic_zero", std::string(c.kind_name()), c.kind == ZeroVerdict::Kind::symbolic_zero);
  }

  if (entry.residual_r0 || entry.residual_r) {
    const JacobiResiduals res = jacobi_residuals(l);
    const auto jac = coordinate_jacobiators(l);
    if (entry.residual_r0) {
      add("residual_r0", *entry.residual_r0, render(simplify(res.r0)), same(res.r0, *entry.residual_r0));
      add("residual_r0_vs_jacobiator", render(simplify(-jac[0])), render(simplify(res.r0)), same(res.r0 + jac[0], "0"));
    }
    if (entry.residual_r) {
      for (int i = 0; i < 3; ++i) {
        const std::string idx = std::to_string(i);
        add("residual_r[" + idx + "]", (*entry.residual_r)[i], render(simplify(res.r[i])), same(res.r[i], (*entry.residual_r)[i]));
        add("residual_r[" + idx + "]_vs_jacobiator", render(simplify(jac[i + 1])), render(simplify(res.r[i])),
            same(res.r[i] - jac[i + 1], "0"));
      }
    }
  }

  if (entry.claimed_modular) {
    bool differs = false;
    for (int i = 0; i < 4; ++i) differs = differs || !same(zc[i], (*entry.claimed_modular)[i]);
    add("modular_differs_from_printed", "true", differs ? "true" : "false", differs);
  }
  if (entry.file.paper_discrepancy) {
    add("paper_discrepancy", "true", *entry.file.paper_discrepancy ? "true" : "false", *entry.file.paper_discrepancy);
  }

  run.pass = true;
  for (const CheckResult& c : run.checks) run.pass = run.pass && c.pass;
  return run;
}

}  // namespace p4
