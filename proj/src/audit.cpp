#include "p4/audit.hpp"

#include <functional>

#include "p4/catalog.hpp"
#include "p4/families.hpp"
#include "p4/random.hpp"

namespace p4 {

namespace {

std::vector<Expr> co(const Expr& e) { return {e}; }
template <class MV>
std::vector<Expr> co(const MV& a) {
  return coefficients(a);
}

std::vector<Expr> concat(std::initializer_list<std::vector<Expr>> parts) {
  std::vector<Expr> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Expr> zeros(std::size_t n) { return std::vector<Expr>(n); }

// lhs − Σ ε_k terms[k] must vanish.
struct Case {
  std::string label;
  std::vector<Expr> lhs;
  std::vector<std::vector<Expr>> terms;
};

struct Identity {
  std::string id;
  std::string statement;
  int slots = 0;
  std::vector<int> printed;
  std::function<std::vector<Case>(const AuditCorpus&)> cases;
};

std::vector<const PoissonCandidate*> poisson_tensors(const AuditCorpus& c) {
  std::vector<const PoissonCandidate*> out;
  for (const PoissonCandidate& t : c.tensors) {
    if (t.is_poisson()) out.push_back(&t);
  }
  return out;
}

std::vector<const PoissonCandidate*> all_tensors(const AuditCorpus& c) {
  std::vector<const PoissonCandidate*> out;
  for (const PoissonCandidate& t : c.tensors) out.push_back(&t);
  return out;
}

MV1 euler_field() { return make_mv1(vec3(Var::x1, Var::x2, Var::x3), Var::y); }
MV1 along_x(const Vec3Expr& v) { return make_mv1(v, Expr()); }

std::string idx(std::size_t i) { return std::to_string(i); }

template <class MV>
void add_d2(std::vector<Case>& out, const std::vector<MV>& items, const std::string& grade) {
  for (std::size_t i = 0; i < items.size(); ++i) out.push_back({grade + "-vector " + idx(i), co(trace(trace(items[i]))), {}});
}

template <class MV>
void add_rescale(std::vector<Case>& out, const std::vector<MV>& items, const Expr& f, int p) {
  const Expr sign(p % 2 ? -1 : 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back({"grade " + idx(p) + " #" + idx(i), co(trace(f * items[i]) - f * trace(items[i])),
                   {co(sign * schouten_function(f, items[i]))}});
  }
}

std::vector<Identity> identities() {
  std::vector<Identity> ids;

  ids.push_back({"A1", "D(L^L) = e1 2 L^D(L)", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     const MV2& l = t->tensor();
                     out.push_back({t->name(), co(trace(wedge(l, l))), {co(Expr(2) * wedge(l, trace(l)))}});
                   }
                   return out;
                 }});

  ids.push_back({"A2", "D(X^Y) = e1 ([Y,X] + D(Y)X - D(X)Y)", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (std::size_t i = 0; i + 1 < c.fields.size(); ++i) {
                     const MV1 &x = c.fields[i], &y = c.fields[i + 1];
                     const MV1 rhs = lie_bracket(y, x) + trace(y) * x - trace(x) * y;
                     out.push_back({"fields " + idx(i) + "," + idx(i + 1), co(trace(wedge(x, y))), {co(rhs)}});
                   }
                   return out;
                 }});

  ids.push_back({"A3", "D(A^B) = (-1)^q D(A)^B + A^D(B) - e1 (-1)^(p+q) [A,B]", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (std::size_t i = 0; i + 1 < c.fields.size(); ++i) {
                     const MV1 &a = c.fields[i], &b = c.fields[i + 1];
                     const MV1 lhs = trace(wedge(a, b)) - (Expr(-1) * trace(a) * b + trace(b) * a);
                     out.push_back({"(1,1) " + idx(i), co(lhs), {co(-lie_bracket(a, b))}});
                   }
                   for (std::size_t i = 0; i < c.fields.size() && i < c.bivectors.size(); ++i) {
                     const MV1& x = c.fields[i];
                     const MV2& b = c.bivectors[i];
                     const MV2 lhs = trace(wedge(x, b)) - (trace(x) * b + wedge(x, trace(b)));
                     out.push_back({"(1,2) " + idx(i), co(lhs), {co(lie_derivative_mv2(x, b))}});
                     const MV2 rev = trace(wedge(b, x)) - (Expr(-1) * wedge(trace(b), x) + trace(x) * b);
                     out.push_back({"(2,1) " + idx(i), co(rev), {co(lie_derivative_mv2(x, b))}});
                   }
                   for (std::size_t i = 0; i < c.bivectors.size(); ++i) {
                     const MV2& a = c.bivectors[i];
                     const MV2& b = c.bivectors[(i + 1) % c.bivectors.size()];
                     const MV3 lhs = trace(wedge(a, b)) - (wedge(trace(a), b) + wedge(a, trace(b)));
                     out.push_back({"(2,2) " + idx(i), co(lhs), {co(-schouten_22(a, b))}});
                   }
                   return out;
                 }});

  ids.push_back({"A4", "D(D(A)) = 0", 0, {}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   add_d2(out, c.bivectors, "2");
                   add_d2(out, c.trivectors, "3");
                   add_d2(out, c.fourvectors, "4");
                   return out;
                 }});

  ids.push_back({"A5", "[D(L), L] = 0", 0, {}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     out.push_back({t->name(), co(lie_derivative_mv2(modular(t->tensor()), t->tensor())), {}});
                   }
                   return out;
                 }});

  ids.push_back({"A6", "D(X_H) = e1 L_Z H", 1, {-1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     const MV1 z = modular(t->tensor());
                     for (std::size_t i = 0; i < c.functions.size(); ++i) {
                       const Expr& h = c.functions[i];
                       out.push_back({t->name() + " H=" + render(h), co(trace(hamiltonian(t->tensor(), h))), {co(directional(z, h))}});
                     }
                   }
                   return out;
                 }});

  ids.push_back({"A7", "[W,Z] = e1 (-L#(d D(W)))", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     const MV2& l = t->tensor();
                     const MV1 z = modular(l);
                     std::vector<std::pair<std::string, MV1>> ws = {{"Z", z}};
                     for (const Expr& h : c.functions) ws.emplace_back("X_" + render(h), hamiltonian(l, h));
                     for (const auto& [name, w] : ws) {
                       out.push_back({t->name() + " W=" + name, co(lie_bracket(w, z)),
                                      {co(-sharp(l, differential(trace(w))))}});
                     }
                   }
                   return out;
                 }});

  ids.push_back({"A8", "(F.P) L_Z H = e1 L_{X_H}(F.P)", 1, {-1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     const MV2& l = t->tensor();
                     const Expr pp = dot(l.psi, l.phi);
                     const MV1 z = modular(l);
                     for (const Expr& h : c.functions) {
                       out.push_back({t->name() + " H=" + render(h), co(pp * directional(z, h)),
                                      {co(directional(hamiltonian(l, h), pp))}});
                     }
                   }
                   return out;
                 }});

  ids.push_back({"A9", "L#(d(F.P)) = e1 (F.P) Z", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     const MV2& l = t->tensor();
                     const Expr pp = dot(l.psi, l.phi);
                     out.push_back({t->name(), co(sharp(l, differential(pp))), {co(pp * modular(l))}});
                   }
                   return out;
                 }});

  ids.push_back({"A10", "{f,g} L = X_f^X_g + e1 (P.F) S_(f,g)", 1, {-1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : all_tensors(c)) {
                     const MV2& l = t->tensor();
                     for (std::size_t i = 0; i + 1 < c.functions.size(); ++i) {
                       const Expr &f = c.functions[i], &g = c.functions[i + 1];
                       const MV2 lhs = bracket(l, f, g) * l - wedge(hamiltonian(l, f), hamiltonian(l, g));
                       out.push_back({t->name() + " pair " + idx(i), co(lhs), {co(dot(l.psi, l.phi) * s_tensor(f, g))}});
                     }
                   }
                   return out;
                 }});

  ids.push_back({"A11", "(div F) L = e1 Z^F dx + e2 grad(F.P) dx^dx", 2, {1, 1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     const MV2& l = t->tensor();
                     out.push_back({t->name(), co(div(l.phi) * l),
                                    {co(wedge(modular(l), along_x(l.phi))), co(make_mv2(grad(dot(l.phi, l.psi)), zero_vec3()))}});
                   }
                   return out;
                 }});

  ids.push_back({"A12", "(div F) L = e1 Z^F dx on rank 2", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : poisson_tensors(c)) {
                     const MV2& l = t->tensor();
                     if (zero_verdict(dot(l.psi, l.phi)).kind != ZeroVerdict::Kind::symbolic_zero) continue;
                     out.push_back({t->name(), co(div(l.phi) * l), {co(wedge(modular(l), along_x(l.phi)))}});
                   }
                   return out;
                 }});

  ids.push_back({"A13", "D(A^L) + D(A)^L = (4 + e1 n) A for [A,L] = nA", 1, {1}, [](const AuditCorpus&) {
                   std::vector<Case> out;
                   RandomExprs gen(17);
                   const MV1 euler = euler_field();
                   for (int degree : {1, 3, 1, 3}) {
                     MV2 a;
                     for (int i = 0; i < 3; ++i) {
                       a.psi[i] = gen.homogeneous(degree, 2);
                       a.phi[i] = gen.homogeneous(degree, 2);
                     }
                     // [A,L] read with the bracket of the Leibniz rule in (2,1) order, [A,X] = L_X A.
                     const Expr n(degree - 2);
                     const MV2 lhs = trace(wedge(a, euler)) + wedge(trace(a), euler) - Expr(4) * a;
                     out.push_back({"degree " + idx(degree), co(lhs), {co(n * a)}});
                   }
                   return out;
                 }});

  ids.push_back({"A14", "D(fA) = f D(A) + e1 (-1)^p [f,A]", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   const Expr f = c.functions.empty() ? Expr(1) : c.functions.front();
                   add_rescale(out, c.fields, f, 1);
                   add_rescale(out, c.bivectors, f, 2);
                   add_rescale(out, c.trivectors, f, 3);
                   add_rescale(out, c.fourvectors, f, 4);
                   return out;
                 }});

  ids.push_back({"A15", "P~oF = cof(DS)P + e1 (DS F) x S_y;  F~oF = -DS(P x grad h) + h_y DS F - e2 (F.grad h) S_y;  F~oF = e3 (-DF(X_h))",
                 3, {1, 1, 1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (std::size_t i = 0; i < c.bivectors.size(); ++i) {
                     const MV2& l = c.bivectors[i];
                     for (std::size_t j = 0; j < c.maps.size(); ++j) {
                       const Diffeo4& f = c.maps[j];
                       const MV2 p = pushforward_composed(l, f);
                       const Vec3Expr psi0 = pushforward_psi_form(l, f, 0);
                       const Vec3Expr phi0 = pushforward_phi_form(l, f, 0);
                       const MV1 xh = hamiltonian(l, f.h);
                       Vec3Expr pushed_field;
                       for (int a = 0; a < 3; ++a) pushed_field[a] = -directional(xh, f.s[a]);
                       out.push_back({"bivector " + idx(i) + " map " + idx(j),
                                      concat({co(Vec3Expr(p.psi - psi0)), co(Vec3Expr(p.phi - phi0)), co(p.phi)}),
                                      {concat({co(Vec3Expr(pushforward_psi_form(l, f, 1) - psi0)), zeros(6)}),
                                       concat({zeros(3), co(Vec3Expr(pushforward_phi_form(l, f, 1) - phi0)), zeros(3)}),
                                       concat({zeros(6), co(pushed_field)})}});
                     }
                   }
                   return out;
                 }});

  ids.push_back({"A16", "L_X L = (e1 P1, e2 P2)", 2, {1, 1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (std::size_t i = 0; i < c.bivectors.size(); ++i) {
                     for (std::size_t j = 0; j < c.fields.size(); j += 2) {
                       const MV2& l = c.bivectors[i];
                       const MV1& x = c.fields[j];
                       out.push_back({"bivector " + idx(i) + " field " + idx(j), co(lie_derivative_mv2(x, l)),
                                      {concat({co(vector_field_form_psi(l, x)), zeros(3)}),
                                       concat({zeros(3), co(vector_field_form_phi(l, x))})}});
                     }
                   }
                   return out;
                 }});

  ids.push_back({"A17", "{f,g} = P.(grad f x grad g) + e1 F.(f_y grad g - g_y grad f)", 1, {1}, [](const AuditCorpus& c) {
                   std::vector<Case> out;
                   for (const PoissonCandidate* t : all_tensors(c)) {
                     const MV2& l = t->tensor();
                     for (std::size_t i = 0; i + 1 < c.functions.size(); ++i) {
                       const Expr &f = c.functions[i], &g = c.functions[i + 1];
                       const Expr lhs = bracket(l, f, g) - dot(l.psi, cross(grad(f), grad(g)));
                       const Expr q = dot(l.phi, Vec3Expr(scale(d_dy(f), grad(g)) - scale(d_dy(g), grad(f))));
                       out.push_back({t->name() + " pair " + idx(i), co(lhs), {co(q)}});
                     }
                   }
                   return out;
                 }});

  return ids;
}

std::string signs_text(const std::vector<int>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::string(s[i] > 0 ? "+" : "-");
  return out + ")";
}

IdentityResult evaluate(const Identity& id, const AuditCorpus& corpus, const SamplerConfig& cfg) {
  std::vector<Case> cases = id.cases(corpus);
  for (Case& c : cases) {
    for (Expr& e : c.lhs) e = simplify(e);
    for (auto& t : c.terms) {
      for (Expr& e : t) e = simplify(e);
    }
  }

  IdentityResult r;
  r.id = id.id;
  r.statement = id.statement;
  r.printed = id.printed;
  r.corpus_size = static_cast<int>(cases.size());

  std::vector<std::vector<int>> passing;
  std::vector<ZeroVerdict> passing_verdict;
  const int combos = 1 << id.slots;
  for (int bits = 0; bits < combos; ++bits) {
    std::vector<int> signs(id.slots);
    for (int k = 0; k < id.slots; ++k) signs[k] = (bits >> k) & 1 ? -1 : 1;
    std::vector<ZeroVerdict> verdicts;
    bool ok = true;
    for (const Case& c : cases) {
      std::vector<Expr> residual = c.lhs;
      for (int k = 0; k < id.slots; ++k) {
        for (std::size_t i = 0; i < residual.size(); ++i) {
          if (!c.terms[k][i].is_zero()) residual[i] = signs[k] > 0 ? residual[i] - c.terms[k][i] : residual[i] + c.terms[k][i];
        }
      }
      const ZeroVerdict v = zero_verdict(std::span<const Expr>(residual), cfg);
      verdicts.push_back(v);
      if (!v.is_zero()) {
        ok = false;
        r.failures.push_back(signs_text(signs) + " fails on " + c.label + " component " + std::to_string(v.component));
        break;
      }
    }
    if (ok) {
      passing.push_back(signs);
      passing_verdict.push_back(combine(verdicts));
    }
  }

  if (passing.empty()) {
    r.resolution = Resolution::fails;
    r.verdict.kind = ZeroVerdict::Kind::nonzero;
  } else if (static_cast<int>(passing.size()) == combos) {
    r.resolution = Resolution::independent;
    r.verdict = passing_verdict.front();
  } else if (passing.size() == 1) {
    r.resolution = Resolution::resolved;
    r.signs = passing.front();
    r.verdict = passing_verdict.front();
  } else {
    r.resolution = Resolution::ambiguous;
    r.verdict = passing_verdict.front();
  }
  if (r.resolution == Resolution::independent) r.failures.clear();
  return r;
}

}  // namespace

std::string_view resolution_name(Resolution r) {
  switch (r) {
    case Resolution::resolved:
      return "resolved";
    case Resolution::independent:
      return "independent";
    case Resolution::ambiguous:
      return "ambiguous";
    case Resolution::fails:
      return "fails";
  }
  return "fails";
}

bool AuditReport::all_hold() const {
  for (const IdentityResult& r : results) {
    if (!r.holds()) return false;
  }
  return true;
}

const IdentityResult& AuditReport::at(std::string_view id) const {
  for (const IdentityResult& r : results) {
    if (r.id == id) return r;
  }
  throw PreconditionError("identity not in report: " + std::string(id));
}

std::vector<std::string> identity_ids() {
  std::vector<std::string> out;
  for (const Identity& id : identities()) out.push_back(id.id);
  return out;
}

AuditCorpus default_corpus(int random_tensors, std::uint64_t seed) {
  AuditCorpus c;
  for (const CatalogEntry& e : catalog()) c.tensors.emplace_back(e.file.name, e.file.tensor());

  RandomExprs gen(seed);
  const Var space[3] = {Var::x1, Var::x2, Var::x3};
  const Var planar[3] = {Var::x1, Var::x2, Var::y};
  const Var x3y[2] = {Var::x3, Var::y};
  const Var x12[2] = {Var::x1, Var::x2};
  auto small_int = [&] { return Expr(gen.integer(-2, 2)); };

  std::vector<std::function<std::pair<std::string, MV2>()>> makers = {
      [&] { return std::pair{"two-casimir", two_casimir_family(gen.polynomial(2, 2), gen.polynomial(2, 2), gen.polynomial(1, 2))}; },
      [&] { return std::pair{"s-tensor", s_tensor(gen.polynomial(2, 2), gen.polynomial(2, 2))}; },
      [&] { return std::pair{"casimir-y", casimir_family(Var::y, grad(gen.polynomial(2, 3)), gen.polynomial(1, 2)).tensor}; },
      [&] {
        Mat3Expr m;
        for (int i = 0; i < 3; ++i) {
          for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = small_int();
        }
        Vec3Expr alpha = vec3(small_int(), small_int(), small_int());
        Vec3Expr a = vec3(small_int(), small_int(), small_int());
        return std::pair{"quadratic-casimir", quadratic_casimir_family(m, alpha, small_int(), a, small_int()).tensor};
      },
      [&] {
        Expr lambda = Expr(Var::x3) + gen.polynomial(1, 2);
        Vec3Expr sigma = vec3(gen.polynomial(1, 2, planar), gen.polynomial(1, 2, planar), gen.polynomial(1, 2));
        return std::pair{"rank2", rank2_build(scale(lambda, unit_vec3(2)), sigma).tensor};
      },
      [&] {
        Vec3Expr sigma = vec3(Expr(), Expr(), gen.polynomial(2, 2, x12));
        return std::pair{"liouville", liouville_family(gen.polynomial(2, 2, x3y), sigma).tensor};
      },
      [&] {
        LinearParams p;
        const Expr t(gen.integer(1, 3));
        p.M(0, 0) = small_int();
        p.N(0, 0) = Expr(2) * t;
        p.N(1, 1) = t;
        p.N(2, 2) = t;
        return std::pair{"linear", linear_build(p)};
      },
      [&] { return std::pair{"casimir-space", two_casimir_family(gen.polynomial(2, 2, space), Var::y, Expr(1))}; },
  };
  for (int i = 0, made = 0; made < random_tensors && i < 10 * random_tensors; ++i) {
    auto [name, l] = makers[i % makers.size()]();
    PoissonCandidate cand("random-" + name + "-" + std::to_string(i), simplify(l));
    if (!cand.is_poisson()) continue;
    c.tensors.push_back(std::move(cand));
    ++made;
  }

  for (int i = 0; i < 3; ++i) c.functions.push_back(gen.polynomial(2, 3));
  for (int i = 0; i < 6; ++i) c.fields.push_back(gen.mv1(2, 2));
  for (int i = 0; i < 4; ++i) c.bivectors.push_back(gen.mv2(2, 2));
  for (int i = 0; i < 3; ++i) c.trivectors.push_back(gen.mv3(2, 2));
  for (int i = 0; i < 3; ++i) c.fourvectors.push_back(gen.mv4(2, 2));
  for (int i = 0; i < 2; ++i) {
    Diffeo4 f;
    f.s = Vec3Expr(vec3(Var::x1, Var::x2, Var::x3) + gen.vec3(2, 2));
    f.h = Expr(Var::y) + gen.polynomial(2, 2);
    c.maps.push_back(f);
  }
  return c;
}

AuditReport identity_audit(const AuditCorpus& corpus, std::span<const std::string> ids, const SamplerConfig& cfg) {
  const std::vector<Identity> all = identities();
  for (const std::string& want : ids) {
    bool known = false;
    for (const Identity& id : all) known = known || id.id == want;
    if (!known) throw PreconditionError("unknown identity: " + want);
  }
  AuditReport report;
  for (const Identity& id : all) {
    bool wanted = ids.empty();
    for (const std::string& want : ids) wanted = wanted || want == id.id;
    if (wanted) report.results.push_back(evaluate(id, corpus, cfg));
  }
  return report;
}

void require_all_hold(const AuditReport& report) {
  std::string failed;
  for (const IdentityResult& r : report.results) {
    if (!r.holds()) failed += (failed.empty() ? "" : ", ") + r.id + " (" + std::string(resolution_name(r.resolution)) + ")";
  }
  if (!failed.empty()) throw AuditFailure("identities without a unique sign: " + failed);
}

}  // namespace p4
