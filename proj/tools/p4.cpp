#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "p4/audit.hpp"
#include "p4/catalog.hpp"
#include "p4/families.hpp"
#include "p4/flow.hpp"
#include "p4/maps.hpp"
#include "p4/signs.hpp"
#include "p4/tensor_file.hpp"

namespace {

using nlohmann::json;
using namespace p4;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr double kDriftTolerance = 1e-6;

json verdict_json(const ZeroVerdict& v) {
  json j;
  j["kind"] = std::string(v.kind_name());
  j["samples"] = v.samples;
  j["max_abs"] = v.max_abs;
  if (!v.is_zero()) {
    j["witness"] = {v.witness[0], v.witness[1], v.witness[2], v.witness[3]};
    j["value"] = v.value;
    j["component"] = v.component;
  }
  return j;
}

json vec_json(const Vec3Expr& v) {
  auto r = render(simplify(v));
  return {r[0], r[1], r[2]};
}

json expr_json(const Expr& e) { return render(simplify(e)); }
json mv1_json(const MV1& x) { return {{"w", vec_json(x.w)}, {"b", expr_json(x.b)}}; }
json mv2_json(const MV2& l) { return {{"psi", vec_json(l.psi)}, {"phi", vec_json(l.phi)}}; }
json point_json(const Point4& p) { return {p[0], p[1], p[2], p[3]}; }

json tensor_file_json(const TensorFile& f) { return json::parse(to_json_text(f)); }

void emit_pretty(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) emit_pretty(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) emit_pretty(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Output {
  bool pretty = false;
  void operator()(const json& j) const {
    if (pretty) {
      emit_pretty(j, "", std::cout);
    } else {
      std::cout << j.dump(2) << "\n";
    }
  }
};

// A tensor file path, or the name of a catalog entry.
TensorFile load_input(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_tensor_file(arg);
  for (const CatalogEntry& e : catalog()) {
    if (e.file.name == arg) return e.file;
  }
  throw FileFormatError("no such file or catalog entry: " + arg);
}

void add_tensor_header(json& j, const TensorFile& f) {
  j["name"] = f.name;
  if (f.paper_discrepancy) j["paper_discrepancy"] = *f.paper_discrepancy;
  if (f.notes) j["notes"] = *f.notes;
}

Mat3Expr parse_matrix(const std::string& csv) {
  std::vector<std::string> parts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 9) throw ParseError("matrix needs 9 comma-separated entries", 0);
  Mat3Expr m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = parse(parts[i]);
  return m;
}

json decomposition_json(const Decomposition& d) {
  json parts = json::object();
  for (const auto& [name, mv] : d.parts) parts[name] = mv2_json(mv);
  json checks = json::object();
  for (const auto& [name, v] : d.checks) checks[name] = verdict_json(v);
  return {{"parts", parts}, {"residual", mv2_json(d.residual)}, {"verdict", verdict_json(d.verdict)},
          {"signs", d.signs}, {"checks", checks}};
}

json entry_run_json(const EntryRun& run) {
  json checks = json::array();
  for (const CheckResult& c : run.checks) {
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  return {{"name", run.name}, {"pass", run.pass}, {"checks", checks}};
}

json entry_json(const CatalogEntry& e) {
  json ranks = json::array();
  for (const RankExpectation& r : e.ranks) ranks.push_back({{"point", r.point}, {"rank", r.rank}});
  json j = {{"file", tensor_file_json(e.file)}, {"source", e.source}, {"is_poisson", e.is_poisson},
            {"modular", e.modular}, {"ranks", ranks}, {"casimirs", e.casimirs}};
  if (e.residual_r0) j["residual_r0"] = *e.residual_r0;
  if (e.residual_r) j["residual_r"] = *e.residual_r;
  if (e.claimed_modular) j["claimed_modular"] = *e.claimed_modular;
  return j;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson tensors on R^4 given as (Psi, Phi)"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Output out;
  app.add_flag("--pretty", out.pretty, "Human-readable output instead of JSON");

  int code = kPass;
  SamplerConfig cfg;

  std::string file;
  std::string f_text, g_text, h_text, k_text, point_text;

  auto* check = app.add_subcommand("check", "Jacobi residuals and Poisson verdict");
  check->add_option("file", file, "Tensor file or catalog name")->required();
  check->callback([&] {
    TensorFile tf = load_input(file);
    MV2 l = tf.tensor();
    JacobiResiduals r = jacobi_residuals(l);
    ZeroVerdict v = is_poisson(l, cfg);
    json jac = json::array();
    for (const Expr& e : coordinate_jacobiators(l)) jac.push_back(expr_json(e));
    json j = {{"is_poisson", std::string(v.kind_name())}, {"verdict", verdict_json(v)},
              {"residuals", {{"r0", expr_json(r.r0)}, {"r", vec_json(r.r)}}}, {"jacobiators", jac}};
    add_tensor_header(j, tf);
    out(j);
    code = v.is_zero() ? kPass : kFail;
  });

  auto* br = app.add_subcommand("bracket", "Poisson bracket {f, g}");
  br->add_option("file", file)->required();
  br->add_option("-f,--f", f_text)->required();
  br->add_option("-g,--g", g_text)->required();
  br->callback([&] {
    TensorFile tf = load_input(file);
    out({{"name", tf.name}, {"f", f_text}, {"g", g_text}, {"bracket", expr_json(bracket(tf.tensor(), parse(f_text), parse(g_text)))}});
  });

  auto* ham = app.add_subcommand("ham", "Hamiltonian vector field");
  ham->add_option("file", file)->required();
  ham->add_option("-H,--H", h_text)->required();
  ham->callback([&] {
    TensorFile tf = load_input(file);
    out({{"name", tf.name}, {"H", h_text}, {"field", mv1_json(hamiltonian(tf.tensor(), parse(h_text)))}});
  });

  auto* mod = app.add_subcommand("modular", "Modular vector field");
  mod->add_option("file", file)->required();
  mod->callback([&] {
    TensorFile tf = load_input(file);
    json j = {{"modular", mv1_json(modular(tf.tensor()))}};
    add_tensor_header(j, tf);
    out(j);
  });

  auto* rank = app.add_subcommand("rank", "Rank at a point");
  rank->add_option("file", file)->required();
  rank->add_option("-p,--point", point_text, "x1,x2,x3,y")->required();
  rank->callback([&] {
    TensorFile tf = load_input(file);
    Point4 p = parse_point(point_text);
    RankValue r = rank_at(tf.tensor(), p);
    out({{"name", tf.name}, {"point", point_json(p)}, {"rank", r.rank}, {"norm_sq", r.norm_sq}, {"pairing", r.pairing}});
  });

  auto* region = app.add_subcommand("region", "Sign region of Phi.Psi at a point");
  region->add_option("file", file)->required();
  region->add_option("-p,--point", point_text)->required();
  region->callback([&] {
    TensorFile tf = load_input(file);
    Point4 p = parse_point(point_text);
    out({{"name", tf.name}, {"point", point_json(p)}, {"region", std::string(region_name(region_at(tf.tensor(), p)))}});
  });

  auto* cas = app.add_subcommand("casimir", "Casimir test");
  cas->add_option("file", file)->required();
  cas->add_option("-k,--k", k_text)->required();
  cas->callback([&] {
    TensorFile tf = load_input(file);
    MV2 l = tf.tensor();
    Expr k = parse(k_text);
    ZeroVerdict v = is_casimir(l, k, cfg);
    out({{"name", tf.name}, {"k", k_text}, {"is_casimir", std::string(v.kind_name())}, {"verdict", verdict_json(v)},
         {"sharp_dk", mv1_json(hamiltonian(l, k))}});
    code = v.is_zero() ? kPass : kFail;
  });

  std::string identities_text;
  int corpus_size = 10;
  auto* audit = app.add_subcommand("audit", "Sign audit of the displayed identities");
  audit->add_option("--identities", identities_text, "Comma-separated ids, default all");
  audit->add_option("--corpus-size", corpus_size, "Random Poisson tensors added to the catalog")->check(CLI::NonNegativeNumber);
  audit->callback([&] {
    AuditCorpus corpus = default_corpus(corpus_size);
    std::vector<std::string> ids = split_csv(identities_text);
    AuditReport report = identity_audit(corpus, ids, cfg);
    json rows = json::array();
    for (const IdentityResult& r : report.results) {
      rows.push_back({{"id", r.id}, {"statement", r.statement}, {"resolution", std::string(resolution_name(r.resolution))},
                      {"signs", r.signs}, {"printed", r.printed}, {"matches_print", r.matches_print()},
                      {"verdict", verdict_json(r.verdict)}, {"corpus_size", r.corpus_size}, {"failures", r.failures}});
    }
    json names = json::array();
    for (const PoissonCandidate& t : corpus.tensors) names.push_back(t.name());
    out({{"identities", rows}, {"all_hold", report.all_hold()}, {"corpus", {{"tensors", names},
          {"functions", corpus.functions.size()}, {"fields", corpus.fields.size()}, {"bivectors", corpus.bivectors.size()},
          {"trivectors", corpus.trivectors.size()}, {"fourvectors", corpus.fourvectors.size()}, {"maps", corpus.maps.size()}}}});
    code = report.all_hold() ? kPass : kFail;
  });

  std::string method = "fg";
  auto* dec = app.add_subcommand("decompose", "Decompositions of a Poisson tensor");
  dec->add_option("file", file)->required();
  dec->add_option("--method", method)->check(CLI::IsMember({"fg", "modular"}));
  dec->add_option("-f,--f", f_text);
  dec->add_option("-g,--g", g_text);
  dec->callback([&] {
    TensorFile tf = load_input(file);
    MV2 l = tf.tensor();
    json j;
    add_tensor_header(j, tf);
    j["method"] = method;
    if (method == "fg") {
      if (f_text.empty() || g_text.empty()) throw CLI::ValidationError("--f and --g are required for --method fg");
      Decomposition d = decompose_fg(l, parse(f_text), parse(g_text), cfg);
      j["decomposition"] = decomposition_json(d);
      code = d.verdict.is_zero() ? kPass : kFail;
    } else {
      ModularDecomposition d = decompose_modular(l, cfg);
      j["multiplied"] = decomposition_json(d.multiplied);
      if (d.divided) j["divided"] = decomposition_json(*d.divided);
      if (d.rank2) j["rank2"] = decomposition_json(*d.rank2);
      code = d.multiplied.verdict.is_zero() ? kPass : kFail;
    }
    out(j);
  });

  std::string s_text, target_file;
  auto* map = app.add_subcommand("map", "Poisson map check for F(x, y) = (S, h)");
  map->add_option("file", file)->required();
  map->add_option("--S", s_text, "e,e,e")->required();
  map->add_option("--h", h_text)->required();
  map->add_option("--target", target_file, "Target tensor; default the source");
  map->callback([&] {
    TensorFile tf = load_input(file);
    MV2 l = tf.tensor();
    Diffeo4 f{parse_vec3(s_text), parse(h_text)};
    std::optional<MV2> dst;
    if (!target_file.empty()) dst = load_input(target_file).tensor();
    PoissonMapReport r = poisson_map_check(l, f, dst, cfg);
    json pairs = json::object();
    for (std::size_t i = 0; i < kCoordinatePairs.size(); ++i) {
      pairs[std::string(name(kCoordinatePairs[i].first)) + "," + std::string(name(kCoordinatePairs[i].second))] = verdict_json(r.pairs[i]);
    }
    MV2 pushed = pushforward_composed(l, f);
    json j = {{"name", tf.name}, {"passes", r.passes}, {"pairs", pairs}, {"determinant_relation", verdict_json(r.determinant)},
              {"jacobian_det", expr_json(jacobian_det(f))}, {"pushforward_composed", mv2_json(pushed)},
              {"psi_form", verdict_json(zero_verdict(Vec3Expr(pushed.psi - pushforward_psi_form(l, f, signs::kPushforwardPsi)), cfg))},
              {"phi_form", verdict_json(zero_verdict(Vec3Expr(pushed.phi - pushforward_phi_form(l, f, signs::kPushforwardPhi)), cfg))}};
    if (r.witness_pair) {
      j["witness_pair"] = {std::string(name(r.witness_pair->first)), std::string(name(r.witness_pair->second))};
      j["composed"] = r.composed;
      j["target"] = r.target;
    }
    out(j);
    code = r.passes ? kPass : kFail;
  });

  std::string w_text, b_text = "0";
  auto* pvf = app.add_subcommand("pvf", "Poisson vector field check for W dx + b dy");
  pvf->add_option("file", file)->required();
  pvf->add_option("--W", w_text, "e,e,e")->required();
  pvf->add_option("--b", b_text);
  pvf->callback([&] {
    TensorFile tf = load_input(file);
    SymmetryReport r = poisson_vf_check(tf.tensor(), make_mv1(parse_vec3(w_text), parse(b_text)), cfg);
    out({{"name", tf.name}, {"passes", r.passes}, {"agree", r.agree}, {"definitional", mv2_json(r.definitional)},
         {"definitional_verdict", verdict_json(r.definitional_verdict)}, {"form_psi", vec_json(r.form_psi)},
         {"form_phi", vec_json(r.form_phi)}, {"form_verdict", verdict_json(r.form_verdict)},
         {"form_matches", verdict_json(r.form_matches)}, {"form_sign", signs::kVectorFieldForm}});
    code = r.passes ? kPass : kFail;
  });

  std::string alpha_text;
  auto* tangent = app.add_subcommand("tangent-pvf", "Tangent Poisson vector field from (alpha, g)");
  tangent->add_option("file", file)->required();
  tangent->add_option("--alpha", alpha_text, "e,e,e")->required();
  tangent->add_option("--g", g_text)->required();
  tangent->callback([&] {
    TensorFile tf = load_input(file);
    TangentReport r = tangent_pvf(tf.tensor(), parse_vec3(alpha_text), parse(g_text), cfg);
    json j = {{"name", tf.name}, {"field", mv1_json(r.field)}, {"residual_psi", vec_json(r.residual_psi)},
              {"residual_phi", vec_json(r.residual_phi)}, {"rank2", r.rank2}, {"conditions", verdict_json(r.conditions)}};
    if (r.rank2_residual) j["rank2_residual"] = expr_json(*r.rank2_residual);
    out(j);
    code = r.conditions.is_zero() ? kPass : kFail;
  });

  std::string family_kind, out_name;
  std::string m_text, n_text, p_text, q_text, beta_text, a_text, k1_text, k2_text, sigma_text, phi_text, psi_text;
  auto* fam = app.add_subcommand("family", "Build a tensor from a structured family");
  fam->add_option("kind", family_kind)->required()->check(CLI::IsMember({"linear", "casimir", "two-casimir", "liouville", "rank2"}));
  fam->add_option("--name", out_name);
  fam->add_option("--M", m_text, "9 entries, row-major");
  fam->add_option("--N", n_text, "9 entries, row-major");
  fam->add_option("--p", p_text);
  fam->add_option("--q", q_text);
  fam->add_option("--alpha", alpha_text);
  fam->add_option("--beta", beta_text);
  fam->add_option("-k,--k", k_text);
  fam->add_option("--A", a_text);
  fam->add_option("-f,--f", f_text);
  fam->add_option("--k1", k1_text);
  fam->add_option("--k2", k2_text);
  fam->add_option("--sigma", sigma_text);
  fam->add_option("--phi", phi_text);
  fam->add_option("--psi", psi_text);
  fam->callback([&] {
    auto need = [](const std::string& v, const char* flag) {
      if (v.empty()) throw CLI::ValidationError(std::string(flag) + " is required for this family");
      return v;
    };
    auto vec_or_zero = [](const std::string& v) { return v.empty() ? zero_vec3() : parse_vec3(v); };
    json j;
    MV2 l;
    if (family_kind == "linear") {
      LinearParams p;
      if (!m_text.empty()) p.M = parse_matrix(m_text);
      if (!n_text.empty()) p.N = parse_matrix(n_text);
      p.p = vec_or_zero(p_text);
      p.q = vec_or_zero(q_text);
      p.alpha = vec_or_zero(alpha_text);
      p.beta = vec_or_zero(beta_text);
      l = linear_build(p);
      LinearAudit a = audit_linear(p);
      j["constraint_zero"] = a.constraint_zero;
      j["matches_residual"] = a.matches_residual;
    } else if (family_kind == "casimir") {
      FamilyTensor t = casimir_family(parse(need(k_text, "--k")), parse_vec3(need(a_text, "--A")), parse(need(f_text, "--f")));
      l = t.tensor;
      j["residual"] = expr_json(t.residual);
      j["is_casimir"] = verdict_json(is_casimir(l, parse(k_text), cfg));
    } else if (family_kind == "two-casimir") {
      Expr k1 = parse(need(k1_text, "--k1")), k2 = parse(need(k2_text, "--k2"));
      l = two_casimir_family(k1, k2, f_text.empty() ? Expr(1) : parse(f_text));
      j["is_casimir"] = {verdict_json(is_casimir(l, k1, cfg)), verdict_json(is_casimir(l, k2, cfg))};
    } else if (family_kind == "liouville") {
      LiouvilleTensor t = liouville_family(parse(need(f_text, "--f")), parse_vec3(need(sigma_text, "--sigma")));
      l = t.tensor;
      j["c"] = expr_json(t.c);
      j["c_constant"] = t.c_constant;
      j["modular"] = mv1_json(modular(l));
      j["symplectic"] = symplectic_check(l, cfg).passes;
    } else {
      if (!psi_text.empty()) {
        FamilyTensor t = rank2_psi_build(parse_vec3(psi_text));
        l = t.tensor;
        j["residual"] = {expr_json(t.residual)};
      } else {
        Rank2Tensor t = rank2_build(parse_vec3(need(phi_text, "--phi")), parse_vec3(need(sigma_text, "--sigma")));
        l = t.tensor;
        j["residual"] = vec_json(t.residual);
      }
    }
    ZeroVerdict v = is_poisson(l, cfg);
    j["tensor"] = tensor_file_json(TensorFile::from_tensor(out_name.empty() ? "family-" + family_kind : out_name, l));
    j["is_poisson"] = std::string(v.kind_name());
    j["verdict"] = verdict_json(v);
    out(j);
    code = v.is_zero() ? kPass : kFail;
  });

  double t_end = 1.0, dt = 1e-2;
  std::string check_text;
  auto* flow = app.add_subcommand("flow", "RK4 flow of a Hamiltonian field with conservation report");
  flow->add_option("file", file)->required();
  flow->add_option("-H,--H", h_text)->required();
  flow->add_option("-p,--point", point_text)->required();
  flow->add_option("-t,--time", t_end);
  flow->add_option("--dt", dt);
  flow->add_option("--check", check_text, "Comma-separated invariants");
  flow->callback([&] {
    TensorFile tf = load_input(file);
    MV2 l = tf.tensor();
    Expr h = parse(h_text);
    Trajectory traj = integrate(hamiltonian(l, h), parse_point(point_text), t_end, dt, "X_" + h_text);
    std::vector<Expr> inv;
    for (const std::string& s : split_csv(check_text)) inv.push_back(parse(s));
    ConservationReport r = conservation_report(l, h, inv, traj, cfg);
    json drifts = json::array();
    bool conserved = true;
    for (const Drift& d : r.invariants) {
      conserved = conserved && d.max_drift <= kDriftTolerance;
      drifts.push_back({{"invariant", d.name}, {"max_drift", d.max_drift}, {"conserved", d.max_drift <= kDriftTolerance}});
    }
    json j = {{"name", tf.name}, {"field", traj.field}, {"steps", traj.points.size() - 1}, {"endpoint", point_json(traj.points.back())},
              {"invariants", drifts}, {"volume", verdict_json(r.volume_verdict)}, {"max_volume_rate", r.max_volume_rate},
              {"modular_first_integral", r.modular_first_integral}};
    if (r.pairing_drift) j["pairing_drift"] = *r.pairing_drift;
    out(j);
    code = conserved ? kPass : kFail;
  });

  std::string catalog_name;
  bool run_all = false;
  auto* cat = app.add_subcommand("catalog", "Built-in examples");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list");
  cat_list->callback([&] {
    json entries = json::array();
    for (const CatalogEntry& e : catalog()) {
      json row = {{"name", e.file.name}, {"source", e.source}};
      if (e.file.paper_discrepancy) row["paper_discrepancy"] = *e.file.paper_discrepancy;
      entries.push_back(row);
    }
    out({{"entries", entries}});
  });
  auto* cat_show = cat->add_subcommand("show");
  cat_show->add_option("name", catalog_name)->required();
  cat_show->callback([&] { out(entry_json(catalog_entry(catalog_name))); });
  std::string export_dir;
  auto* cat_export = cat->add_subcommand("export", "Write every entry as a tensor file");
  cat_export->add_option("dir", export_dir)->required();
  cat_export->callback([&] {
    std::filesystem::create_directories(export_dir);
    json written = json::array();
    for (const CatalogEntry& e : catalog()) {
      std::filesystem::path path = std::filesystem::path(export_dir) / (e.file.name + ".json");
      save_tensor_file(path, e.file);
      written.push_back(path.generic_string());
    }
    out({{"written", written}});
  });
  auto* cat_run = cat->add_subcommand("run");
  cat_run->add_option("name", catalog_name);
  cat_run->add_flag("--all", run_all);
  cat_run->callback([&] {
    if (run_all == !catalog_name.empty()) throw CLI::ValidationError("give either a name or --all");
    if (run_all) {
      json runs = json::array();
      bool pass = true;
      for (const CatalogEntry& e : catalog()) {
        EntryRun r = run_entry(e, cfg);
        pass = pass && r.pass;
        runs.push_back(entry_run_json(r));
      }
      out({{"entries", runs}, {"pass", pass}});
      code = pass ? kPass : kFail;
    } else {
      EntryRun r = run_entry(catalog_entry(catalog_name), cfg);
      json j = entry_run_json(r);
      const CatalogEntry& e = catalog_entry(catalog_name);
      if (e.file.paper_discrepancy) j["paper_discrepancy"] = *e.file.paper_discrepancy;
      out(j);
      code = r.pass ? kPass : kFail;
    }
  });

  try {
    cfg = SamplerConfig::from_environment();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const p4::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
