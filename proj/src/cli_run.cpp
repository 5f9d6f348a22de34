#include <chrono>
#include <map>
#include <numeric>
#include <random>

#include "sigchev/cli.hpp"
#include "sigchev/diffpoly.hpp"
#include "sigchev/expr.hpp"
#include "sigchev/galois.hpp"
#include "sigchev/kernels.hpp"
#include "sigchev/sigmaideal.hpp"

namespace sigchev::cli {

namespace {

using Object = std::variant<std::monostate, Field, FieldMorphism, PseudoField, SigmaRing, SigmaIdeal, Inclusion,
                            DiffKernel, DeltaSigmaField, PVRing>;

struct Failure {
  ErrorKind kind;
  std::string message;
};

/// Raised when a command or declaration uses a declaration that failed.
struct DeclFailed : SigmaError {
  explicit DeclFailed(const Failure& f) : SigmaError(f.kind, f.message), failure(f) {}
  Failure failure;
};

std::string without_kind(const SigmaError& e) {
  const std::string w = e.what(), prefix = std::string(to_string(e.kind())) + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

/// Declarations are built once, in order; a failed one is remembered and
/// reported by every command that uses it.
class Env {
 public:
  explicit Env(const Scenario& s) : s_(s) {
    for (const auto& d : s.decls) {
      try {
        objects_[d.name] = std::visit([&](const auto& b) { return build(b); }, d.body);
      } catch (const DeclFailed& e) {
        failures_[d.name] = e.failure;
      } catch (const SigmaError& e) {
        failures_[d.name] = {e.kind(), "declaration '" + d.name + "' (line " + std::to_string(d.pos.line) + "): " + without_kind(e)};
      }
    }
  }

  template <class T>
  const T& get(const std::string& name) const {
    if (const auto f = failures_.find(name); f != failures_.end()) throw DeclFailed(f->second);
    return std::get<T>(objects_.at(name));
  }

 private:
  Object build(const FieldDecl& f) const {
    switch (f.kind) {
      case FieldDecl::Kind::Rational: return make_prime_field(0);
      case FieldDecl::Kind::Prime: return make_prime_field(f.number);
      case FieldDecl::Kind::Benign: return benign_quadratic_tower(f.number);
      case FieldDecl::Kind::Algebraic: {
        const Field& base = get<Field>(f.parent);
        const UPoly m = parse_upoly(base, f.minpoly, f.gen);
        if (m.empty()) fail(ErrorKind::InvalidArgument, "zero minimal polynomial");
        return extend_algebraic(base, f.gen, upoly::monic(base, m));
      }
      case FieldDecl::Kind::Transcendental: return extend_transcendental(get<Field>(f.parent), f.gen);
    }
    return {};
  }
  Object build(const SigmaDecl& s) const {
    const Field& f = get<Field>(s.field);
    std::vector<Elem> images;
    for (std::size_t i = 0; i < f.level(); ++i) images.push_back(f.generator(i));
    for (const auto& [g, e] : s.images) images[*f.generator_index(g)] = parse_elem(f, e);
    return make_morphism(f, f, images);
  }
  FieldMorphism sigma_of(const std::string& field, const std::string& sigma) const {
    return sigma == "id" ? identity_morphism(get<Field>(field)) : get<FieldMorphism>(sigma);
  }
  Object build(const PseudoDecl& p) const {
    const PseudoField k = sigma_field(sigma_of(p.field, p.sigma));
    return p.period == 1 ? k : trivial_extension(k, p.period);
  }
  Object build(const RingDecl& r) const {
    const PolyRing ring(get<Field>(r.field), r.vars);
    std::vector<std::optional<Poly>> images;
    for (const auto& e : r.images) images.push_back(parse_poly(ring, e));
    std::vector<Poly> rels;
    for (const auto& e : r.relations) rels.push_back(parse_poly(ring, e));
    return make_sigma_ring(ring, sigma_of(r.field, r.sigma), images, rels);
  }
  Object build(const IdealDecl& d) const {
    const SigmaRing& r = get<SigmaRing>(d.ring);
    std::vector<Poly> gens;
    for (const auto& e : d.gens) gens.push_back(parse_poly(r.ring, e));
    return make_sigma_ideal(r, gens, d.period);
  }
  Object build(const InclusionDecl& n) const {
    const SigmaRing& src = get<SigmaRing>(n.source);
    const SigmaRing& tgt = get<SigmaRing>(n.target);
    std::vector<Poly> images;
    for (const auto& e : n.images) images.push_back(parse_poly(tgt.ring, e));
    return make_inclusion(src, tgt, images);
  }
  Object build(const KernelDecl& k) const {
    return make_kernel(get<PseudoField>(k.base), k.vars, k.length, k.components);
  }
  Object build(const DSFieldDecl& d) const {
    const Field& f = get<Field>(d.field);
    std::map<std::string, Elem> deltas;
    for (const auto& [g, e] : d.deltas) deltas[g] = parse_elem(f, e);
    return make_deltasigma_field(f, deltas, sigma_of(d.field, d.sigma));
  }
  Object build(const PVDecl& p) const {
    const DeltaSigmaField& k = get<DeltaSigmaField>(p.dsfield);
    return pv_construct(k, parse_elem(k.field, p.a), p.sign);
  }

  const Scenario& s_;
  std::map<std::string, Object> objects_;
  std::map<std::string, Failure> failures_;
};

std::string describe(const Field& f) {
  std::string s = f.characteristic() == 0 ? "Q" : "GF(" + std::to_string(f.characteristic()) + ")";
  for (std::size_t i = 0; i < f.level(); ++i) {
    const auto& st = f.step(i);
    if (st.kind == TowerStep::Kind::Algebraic)
      s += "[" + st.name + "]/(" + upoly::to_string(f.at_level(i), st.minpoly, st.name) + ")";
    else
      s += "(" + st.name + ")";
  }
  return s;
}

Json opt(const std::optional<unsigned>& v) { return v ? Json(*v) : Json(nullptr); }

Json render_all(const PolyRing& r, const std::vector<Poly>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(r.to_string(p));
  return out;
}

struct Context {
  const Env& env;
  const RunOptions& opt;
  const Scenario& scenario;
};

unsigned int_param(const Command& c, const std::string& key, unsigned fallback) {
  const Param* p = c.param(key);
  return p ? static_cast<unsigned>(std::stoul(p->value)) : fallback;
}

const std::string& arg(const Command& c, std::size_t i) { return c.args.at(i).items.at(0); }

// ------------------------------------------------------------ decompose

Elem random_elem(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Elem e = f.from_int(coeff(rng));
  Elem prod = f.one();
  for (std::size_t i = 0; i < f.level(); ++i) {
    const Elem g = f.generator(i);
    e = f.add(e, f.mul(f.from_int(coeff(rng)), g));
    prod = f.mul(prod, g);
  }
  if (f.level() > 1) e = f.add(e, f.mul(f.from_int(coeff(rng)), prod));
  return e;
}

Json run_decompose(const Context& ctx, const Command& c) {
  const PseudoField& k = ctx.env.get<PseudoField>(arg(c, 0));
  const unsigned samples = int_param(c, "samples", 200);
  Json comps = Json::array();
  for (const auto& f : k.components()) comps.push_back(describe(f));
  const auto e = k.idempotents();
  const std::size_t d = k.period();
  bool axioms = true;
  PseudoElem sum = k.zero();
  for (std::size_t i = 0; i < d; ++i) {
    sum = k.add(sum, e[i]);
    for (std::size_t j = 0; j < d; ++j) axioms = axioms && k.mul(e[i], e[j]) == (i == j ? e[i] : k.zero());
    axioms = axioms && k.apply_sigma(e[i]) == e[(i + 1) % d];
  }
  axioms = axioms && sum == k.one();
  std::mt19937_64 rng(ctx.opt.seed);
  std::uniform_int_distribution<int> coin(0, 3);
  std::size_t zero_divisors = 0;
  auto sample = [&] {
    PseudoElem a;
    for (const auto& f : k.components()) a.coords.push_back(coin(rng) == 0 ? f.zero() : random_elem(f, rng));
    return a;
  };
  for (unsigned s = 0; s < samples; ++s) {
    const PseudoElem a = sample(), b = sample();
    const bool zd = k.is_zero_divisor(a), inv = k.is_invertible(a);
    if (zd) ++zero_divisors;
    axioms = axioms && zd != inv;
    if (inv) axioms = axioms && k.mul(a, k.inv(a)) == k.one();
    axioms = axioms && k.apply_sigma(k.mul(a, b)) == k.mul(k.apply_sigma(a), k.apply_sigma(b)) &&
             k.apply_sigma(k.add(a, b)) == k.add(k.apply_sigma(a), k.apply_sigma(b));
  }
  return {{"period", d}, {"components", comps}, {"idempotents", e.size()}, {"axioms", axioms},
          {"samples", samples}, {"zero_divisors", zero_divisors}};
}

// ------------------------------------------------------------ compat, lift, witness, stability

Json run_compat(const Context& ctx, const Command& c) {
  const auto r = compat_test(ctx.env.get<PseudoField>(arg(c, 0)), ctx.env.get<PseudoField>(arg(c, 1)),
                             ctx.env.get<Field>(c.param("over")->value), static_cast<int>(int_param(c, "maxperiod", 16)));
  return {{"minimal_period", r.minimal_period ? Json(*r.minimal_period) : Json(nullptr)},
          {"max_period", r.max_period},
          {"components", r.components},
          {"permutation", r.permutation},
          {"cycle_lengths", r.cycle_lengths}};
}

unsigned default_power(const SigmaIdeal& q, const Command& c) { return int_param(c, "power", q.period.value_or(1)); }

Json run_lift(const Context& ctx, const Command& c) {
  const Inclusion& inc = ctx.env.get<Inclusion>(arg(c, 0));
  const SigmaIdeal& q = ctx.env.get<SigmaIdeal>(arg(c, 1));
  const unsigned d = default_power(q, c), lmax = int_param(c, "lmax", ctx.opt.max_power.value_or(2));
  const auto r = lift_search(inc, q, d, lmax);
  Json primes = Json::array();
  for (const auto& l : r.primes_above)
    primes.push_back({{"generators", render_all(inc.target.ring, l.generators)},
                      {"cycle", l.cycle},
                      {"power", l.power},
                      {"contraction_verified", l.contraction_verified},
                      {"prime_certified", l.prime_certified}});
  Json perm = Json::array();
  for (const auto& p : r.permutation) perm.push_back(p ? Json(*p) : Json(nullptr));
  Json at = Json::object();
  for (unsigned l = 1; l <= lmax; ++l) at[std::to_string(l)] = r.lifts_at(l).size();
  return {{"source", r.source},         {"d", d},           {"l_max", lmax},
          {"fiber_factors", r.fiber_factors}, {"primes_above", primes}, {"permutation", perm},
          {"lifts_at", at},             {"minimal_l", opt(r.minimal_l())}};
}

Json run_witness(const Context& ctx, const Command& c) {
  std::vector<FamilyMember> family;
  for (const auto& a : c.args)
    family.push_back({ctx.env.get<Inclusion>(a.items[0]), ctx.env.get<SigmaIdeal>(a.items[1]),
                      static_cast<unsigned>(std::stoul(a.items[2]))});
  const auto t = chevalley_witness(family, int_param(c, "lmax", ctx.opt.max_power.value_or(4)));
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"prime", r.prime}, {"d", r.d}, {"minimal_l", opt(r.minimal_l)}, {"lifts", r.lifts}});
  return {{"rows", rows}, {"uniform_l", opt(t.uniform_l)}, {"naive_holds", t.naive_holds}};
}

Json run_stability(const Context& ctx, const Command& c) {
  const SigmaIdeal& q = ctx.env.get<SigmaIdeal>(arg(c, 0));
  const unsigned d = default_power(q, c);
  const auto r = sigma_stability(q, d);
  Json out = {{"ideal", render_all(q.ambient.ring, q.basis())},
              {"d", d},
              {"stable", r.stable},
              {"witness", r.witness ? Json(q.ambient.ring.to_string(*r.witness)) : Json(nullptr)},
              {"reflexive_certified", r.reflexive_certified},
              {"forward_only", r.forward_only}};
  try {
    const auto rf = certify_prime(q.ambient.ring.with_order(MonomialOrder::lex()), q.basis());
    out["prime"] = true;
    out["transcendence_degree"] = rf.transcendence_degree;
  } catch (const SigmaError& e) {
    if (e.kind() != ErrorKind::NotPrimeInScope) throw;
    out["prime"] = false;
    out["transcendence_degree"] = nullptr;
  }
  return out;
}

// ------------------------------------------------------------ kernels

Json kernel_json(const DiffKernel& k) {
  Json comps = Json::array();
  for (const auto& c : k.components) comps.push_back(render_all(c.ring, c.ideal));
  return {{"length", k.length}, {"components", comps}, {"degree", kernel_degree(k)}};
}

Json log_json(const DiffKernel& k) {
  Json log = Json::array();
  for (const auto& e : k.log)
    log.push_back({{"order", e.order}, {"component", e.component}, {"factors", e.factors}, {"chosen", e.chosen}});
  return log;
}

Json run_prolong(const Context& ctx, const Command& c) {
  const DiffKernel next = prolong(ctx.env.get<DiffKernel>(arg(c, 0)));
  Json out = kernel_json(next);
  out["condition_one"] = [&] {
    for (std::size_t i = 0; i < next.components.size(); ++i)
      if (!condition_one(next, i)) return false;
    return true;
  }();
  out["log"] = log_json(next);
  return out;
}

Json run_realize(const Context& ctx, const Command& c) {
  const auto r = realize(ctx.env.get<DiffKernel>(arg(c, 0)), int_param(c, "upto", 0));
  Json ks = Json::array();
  Json degrees = Json::array();
  for (const auto& k : r.kernels) {
    ks.push_back(kernel_json(k));
    degrees.push_back(kernel_degree(k));
  }
  return {{"kernels", ks}, {"degrees", degrees}, {"truncation_law", r.truncation_law}, {"log", log_json(r.kernels.back())}};
}

Json run_limitdegree(const Context& ctx, const Command& c) {
  const std::string& name = arg(c, 0);
  const unsigned d = int_param(c, "power", 1);
  std::vector<std::optional<std::uint64_t>> levels;
  if (std::holds_alternative<KernelDecl>(ctx.scenario.find(name)->body)) {
    const DiffKernel& k = ctx.env.get<DiffKernel>(name);
    if (k.base.period() != 1) fail(ErrorKind::OutOfScope, "limit degrees are computed over sigma-fields (period 1)");
    const auto r = realize(k, int_param(c, "upto", k.length));
    const auto& rf = r.kernels.back().components[0].residue;
    levels = presentation_degrees(rf.field, k.base.component(0).level());
  } else {
    levels = presentation_degrees(ctx.env.get<Field>(name), int_param(c, "base", 0));
  }
  const auto l = limit_degree(levels, d);
  Json lv = Json::array();
  for (const auto& x : levels) lv.push_back(x ? Json(*x) : Json(nullptr));
  return {{"power", d}, {"value", l.value}, {"sequence", l.sequence}, {"levels", lv}};
}

// ------------------------------------------------------------ inversive closures

Json run_invclosure(const Context& ctx, const Command& c) {
  const SigmaRing& r = ctx.env.get<SigmaRing>(arg(c, 0));
  const InversiveClosure cl = inversive_closure(r, int_param(c, "bound", ctx.opt.bound.value_or(8)));
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < r.ring.nvars(); ++i) vars.push_back(r.ring.var(i));
  const unsigned nmax = int_param(c, "nmax", 32);
  Json primes = Json::array(), periods = Json::array();
  std::size_t trips = 0;
  for (std::size_t i = 1; i < c.args.size(); ++i) {
    const SigmaIdeal& q = ctx.env.get<SigmaIdeal>(arg(c, i));
    const unsigned d = q.period.value_or(1);
    const auto qs = spec_transport(cl, q, d, nmax);
    const auto back = contract(qs).basis();
    const bool trip = ideals_equal(r.ring, back, q.basis());
    const auto p = ideal_period(q), pt = qs.period();
    if (trip) ++trips;
    periods.push_back(opt(p));
    primes.push_back({{"ideal", render_all(r.ring, q.basis())},
                      {"d", d},
                      {"contracted", render_all(r.ring, back)},
                      {"round_trip", trip},
                      {"period", opt(p)},
                      {"transported_period", opt(pt)},
                      {"period_preserved", p.has_value() && p == pt}});
  }
  return {{"nilpotence_bound", cl.nilpotence_bound()}, {"injective", cl.u_injective_on(vars)},
          {"primes", primes}, {"round_trips", trips}, {"periods", periods}};
}

// ------------------------------------------------------------ Picard-Vessiot

const char* shape_name(PVRing::Shape s) {
  switch (s) {
    case PVRing::Shape::InBase: return "InBase";
    case PVRing::Shape::Quadratic: return "Quadratic";
    case PVRing::Shape::Transcendental: return "Transcendental";
  }
  return "";
}

Json pv_json(const PVRing& y) {
  const auto sq = y.square();
  return {{"shape", shape_name(y.shape)},
          {"y", y.ring.field.to_string(y.y)},
          {"sigma_factor", y.base.field.to_string(y.sigma_factor)},
          {"square", sq ? Json(y.ring.field.to_string(*sq)) : Json(nullptr)}};
}

Json run_pv(const Context& ctx, const Command& c) {
  const PVRing& a = ctx.env.get<PVRing>(arg(c, 0));
  const PVRing& b = ctx.env.get<PVRing>(arg(c, 1));
  const Field& f = a.base.field;
  const auto dm = dmatrix(a, b);
  const auto iso = sigma_l_isomorphism_search(a, b, int_param(c, "lmax", ctx.opt.max_power.value_or(4)));
  const unsigned bound = int_param(c, "bound", ctx.opt.bound.value_or(4));
  Json constants = Json::array();
  for (const PVRing* y : {&a, &b}) {
    const auto dc = delta_constants(y->ring, bound);
    constants.push_back({{"bound", dc.bound}, {"dimension", dc.basis.size()}, {"basis", dc.rendered}, {"searched", dc.searched}});
  }
  return {{"left", pv_json(a)},
          {"right", pv_json(b)},
          {"dmatrix",
           {{"d", dm.d},
            {"delta_vanishes", dm.delta_vanishes},
            {"sigma_ratio", f.to_string(dm.sigma_ratio)},
            {"sigma_verified", dm.sigma_verified}}},
          {"minimal_l", opt(iso.minimal_l)},
          {"map_factor", iso.map_factor ? Json(f.to_string(*iso.map_factor)) : Json(nullptr)},
          {"candidates", iso.candidates},
          {"doubled_check", iso.doubled_check},
          {"constants", constants}};
}

// ------------------------------------------------------------ probes

Json run_probe(const Context& ctx, const Command& c) {
  const PseudoField& k = ctx.env.get<PseudoField>(arg(c, 0));
  const unsigned bound = int_param(c, "bound", ctx.opt.bound.value_or(4));
  const Field& f = k.component(0);
  PresentedAlgebra alg{k, std::nullopt, UPoly{f.one()}, true};
  Json constraint = nullptr;
  if (const Param* m = c.param("mod")) {
    alg.as_product = false;
    const UPoly rel = parse_upoly(f, m->value, "c");
    if (!rel.empty()) alg.relation = rel;
    if (const Param* inv = c.param("invert")) alg.invert = parse_upoly(f, inv->value, "c");
    const auto w = constraint_search(k, alg.relation ? std::optional<UPoly>(upoly::monic(f, rel)) : std::nullopt, bound);
    constraint = {{"constrained", w.constrained},
                  {"b", w.b ? Json(upoly::to_string(f, *w.b, "c")) : Json(nullptr)},
                  {"tried", w.tried}};
  } else if (c.param("invert")) {
    fail(ErrorKind::InvalidArgument, "'invert' needs 'mod'");
  }
  const auto r = pseudo_simple_probe(alg, bound);
  return {{"verdict", verdict_name(r.verdict)}, {"witness", r.witness}, {"searched", r.searched}, {"constraint", constraint}};
}

// ------------------------------------------------------------ dispatch and schema

using Handler = Json (*)(const Context&, const Command&);

struct OpSchema {
  Handler run;
  std::vector<std::string> keys;  // result fields, in emission order
};

const std::map<std::string, OpSchema>& ops() {
  static const std::map<std::string, OpSchema> table = {
      {"decompose", {run_decompose, {"period", "components", "idempotents", "axioms", "samples", "zero_divisors"}}},
      {"compat", {run_compat, {"minimal_period", "max_period", "components", "permutation", "cycle_lengths"}}},
      {"lift",
       {run_lift,
        {"source", "d", "l_max", "fiber_factors", "primes_above", "permutation", "lifts_at", "minimal_l"}}},
      {"witness", {run_witness, {"rows", "uniform_l", "naive_holds"}}},
      {"stability",
       {run_stability,
        {"ideal", "d", "stable", "witness", "reflexive_certified", "forward_only", "prime", "transcendence_degree"}}},
      {"prolong", {run_prolong, {"length", "components", "degree", "condition_one", "log"}}},
      {"realize", {run_realize, {"kernels", "degrees", "truncation_law", "log"}}},
      {"limitdegree", {run_limitdegree, {"power", "value", "sequence", "levels"}}},
      {"invclosure", {run_invclosure, {"nilpotence_bound", "injective", "primes", "round_trips", "periods"}}},
      {"pv",
       {run_pv,
        {"left", "right", "dmatrix", "minimal_l", "map_factor", "candidates", "doubled_check", "constants"}}},
      {"probe", {run_probe, {"verdict", "witness", "searched", "constraint"}}},
  };
  return table;
}

/// Follows a dotted path; "error.*" looks in the error record, everything else
/// in the result.
const Json* resolve(const Json& record, const std::string& path) {
  std::vector<std::string> segs;
  std::size_t b = 0;
  while (true) {
    const auto e = path.find('.', b);
    segs.push_back(path.substr(b, e == std::string::npos ? std::string::npos : e - b));
    if (e == std::string::npos) break;
    b = e + 1;
  }
  const Json* cur = &record["result"];
  std::size_t i = 0;
  if (segs[0] == "error") {
    cur = &record["error"];
    i = 1;
  }
  for (; i < segs.size(); ++i) {
    if (cur->is_object()) {
      const auto it = cur->find(segs[i]);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    } else if (cur->is_array()) {
      const std::string& s = segs[i];
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return nullptr;
      const std::size_t idx = std::stoul(s);
      if (idx >= cur->size()) return nullptr;
      cur = &(*cur)[idx];
    } else {
      return nullptr;
    }
  }
  return cur;
}

std::string args_text(const Arg& a) {
  if (!a.tuple) return a.items[0];
  std::string s = "(";
  for (std::size_t i = 0; i < a.items.size(); ++i) s += (i ? ", " : "") + a.items[i];
  return s + ")";
}

}  // namespace

RunResult run_scenario(const Scenario& s, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const Env env(s);
  const Context ctx{env, options, s};
  Json commands = Json::array();
  Json command_ms = Json::array();
  std::size_t errors = 0, unexpected_errors = 0, expectations = 0, failed = 0;
  for (std::size_t i = 0; i < s.commands.size(); ++i) {
    const Command& c = s.commands[i];
    const auto c0 = clock::now();
    Json rec = Json::object();
    rec["index"] = i;
    rec["op"] = c.op;
    rec["line"] = c.pos.line;
    Json args = Json::array();
    for (const auto& a : c.args) args.push_back(args_text(a));
    rec["args"] = args;
    try {
      rec["result"] = ops().at(c.op).run(ctx, c);
      rec["status"] = "ok";
      rec["error"] = nullptr;
    } catch (const SigmaError& e) {
      rec["result"] = nullptr;
      rec["status"] = "error";
      rec["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
      ++errors;
    }
    // status before result in the emitted record
    Json ordered = Json::object();
    for (const char* k : {"index", "op", "line", "args", "status", "result", "error"}) ordered[k] = rec[k];
    bool error_expected = false;
    Json checks = Json::array();
    for (const auto& e : c.expectations) {
      const Json* actual = resolve(ordered, e.path);
      const bool ok = actual && *actual == e.value;
      if (e.path == "error" || e.path.rfind("error.", 0) == 0) error_expected = true;
      ++expectations;
      if (!ok) ++failed;
      checks.push_back({{"path", e.path}, {"expected", e.value}, {"actual", actual ? *actual : Json(nullptr)}, {"passed", ok}});
    }
    if (ordered["status"] == "error" && !error_expected) ++unexpected_errors;
    ordered["expectations"] = checks;
    commands.push_back(std::move(ordered));
    command_ms.push_back(std::chrono::duration<double, std::milli>(clock::now() - c0).count());
  }
  RunResult out;
  out.report = Json::object();
  out.report["schema_version"] = 1;
  out.report["scenario"] = options.name;
  out.report["description"] = s.description;
  out.report["seed"] = options.seed;
  out.report["passed"] = failed == 0 && unexpected_errors == 0;
  out.report["commands"] = commands;
  out.report["summary"] = {{"commands", s.commands.size()},
                           {"errors", errors},
                           {"expectations", expectations},
                           {"failed_expectations", failed}};
  out.report["timing"] = {{"total_ms", std::chrono::duration<double, std::milli>(clock::now() - t0).count()},
                          {"command_ms", command_ms}};
  if (options.assert_mode && failed > 0) out.exit_code = 1;
  else if (unexpected_errors > 0) out.exit_code = 3;
  return out;
}

Json strip_timing(Json report) {
  if (report.is_object()) report.erase("timing");
  return report;
}

namespace {

std::string exact_keys(const Json& j, const std::vector<std::string>& keys, const std::string& where) {
  if (!j.is_object()) return where + ": expected an object";
  for (const auto& [k, _] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) return where + ": unknown field '" + k + "'";
  for (const auto& k : keys)
    if (!j.contains(k)) return where + ": missing field '" + k + "'";
  return {};
}

}  // namespace

std::string validate_report(const Json& r) {
  if (auto e = exact_keys(r, {"schema_version", "scenario", "description", "seed", "passed", "commands", "summary", "timing"},
                          "report");
      !e.empty())
    return e;
  if (r["schema_version"] != 1) return "report: schema_version must be 1";
  if (!r["scenario"].is_string() || !r["description"].is_string()) return "report: scenario and description are strings";
  if (!r["seed"].is_number_unsigned()) return "report: seed must be an unsigned integer";
  if (!r["passed"].is_boolean()) return "report: passed must be a boolean";
  if (!r["commands"].is_array()) return "report: commands must be an array";
  if (auto e = exact_keys(r["summary"], {"commands", "errors", "expectations", "failed_expectations"}, "summary"); !e.empty())
    return e;
  for (const auto& [k, v] : r["summary"].items())
    if (!v.is_number_unsigned()) return "summary: " + k + " must be an unsigned integer";
  if (r["summary"]["commands"] != r["commands"].size()) return "summary: command count mismatch";
  if (auto e = exact_keys(r["timing"], {"total_ms", "command_ms"}, "timing"); !e.empty()) return e;
  if (!r["timing"]["command_ms"].is_array() || r["timing"]["command_ms"].size() != r["commands"].size())
    return "timing: command_ms must have one entry per command";
  std::size_t i = 0;
  for (const auto& c : r["commands"]) {
    const std::string where = "commands[" + std::to_string(i) + "]";
    if (auto e = exact_keys(c, {"index", "op", "line", "args", "status", "result", "error", "expectations"}, where); !e.empty())
      return e;
    if (c["index"] != i++) return where + ": index out of sequence";
    if (!c["op"].is_string() || !ops().count(c["op"].get<std::string>())) return where + ": unknown op";
    if (!c["args"].is_array()) return where + ": args must be an array";
    if (c["status"] == "ok") {
      if (!c["error"].is_null()) return where + ": ok status with an error";
      if (auto e = exact_keys(c["result"], ops().at(c["op"].get<std::string>()).keys, where + ".result"); !e.empty()) return e;
    } else if (c["status"] == "error") {
      if (!c["result"].is_null()) return where + ": error status with a result";
      if (auto e = exact_keys(c["error"], {"kind", "message"}, where + ".error"); !e.empty()) return e;
    } else {
      return where + ": status must be ok or error";
    }
    if (!c["expectations"].is_array()) return where + ": expectations must be an array";
    for (const auto& x : c["expectations"]) {
      if (auto e = exact_keys(x, {"path", "expected", "actual", "passed"}, where + ".expectations"); !e.empty()) return e;
      if (!x["passed"].is_boolean()) return where + ".expectations: passed must be a boolean";
    }
  }
  return {};
}

}  // namespace sigchev::cli
