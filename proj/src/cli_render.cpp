#include <sstream>

#include "sigchev/cli.hpp"

namespace sigchev::cli {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string maps(const std::vector<Mapping>& m) {
  std::vector<std::string> parts;
  for (const auto& [k, v] : m) parts.push_back(k + " -> " + v);
  return join(parts, ", ");
}

struct DeclRenderer {
  const Scenario& scenario;
  const std::string& name;
  std::string operator()(const FieldDecl& f) const {
    switch (f.kind) {
      case FieldDecl::Kind::Rational: return "field " + name + " = Q;";
      case FieldDecl::Kind::Prime: return "field " + name + " = GF(" + std::to_string(f.number) + ");";
      case FieldDecl::Kind::Benign: return "field " + name + " = benign(" + std::to_string(f.number) + ");";
      case FieldDecl::Kind::Algebraic: return "field " + name + " = " + f.parent + "[" + f.gen + "]/(" + f.minpoly + ");";
      case FieldDecl::Kind::Transcendental: return "field " + name + " = " + f.parent + "(" + f.gen + ");";
    }
    return {};
  }
  std::string operator()(const SigmaDecl& s) const { return "sigma " + name + " on " + s.field + ": " + maps(s.images) + ";"; }
  std::string operator()(const PseudoDecl& p) const {
    return "pseudofield " + name + " = trivial(" + p.field + ", " + (p.sigma == "id" ? "" : p.sigma + ", ") +
           std::to_string(p.period) + ");";
  }
  std::string operator()(const RingDecl& r) const {
    std::vector<Mapping> m;
    for (std::size_t i = 0; i < r.vars.size(); ++i) m.push_back({r.vars[i], r.images[i]});
    std::string out = "ring " + name + " = " + r.field + "[" + join(r.vars, ", ") + "] sigma " + r.sigma + " (" + maps(m) + ")";
    if (!r.relations.empty()) out += " mod (" + join(r.relations, ", ") + ")";
    return out + ";";
  }
  std::string operator()(const IdealDecl& d) const {
    std::string out = "ideal " + name + " in " + d.ring + " = (" + join(d.gens, ", ") + ")";
    if (d.period) out += " period " + std::to_string(*d.period);
    return out + ";";
  }
  std::string operator()(const InclusionDecl& n) const {
    const auto& src = std::get<RingDecl>(scenario.find(n.source)->body);
    std::vector<Mapping> m;
    for (std::size_t i = 0; i < src.vars.size(); ++i) m.push_back({src.vars[i], n.images[i]});
    return "inclusion " + name + ": " + n.source + " -> " + n.target + " (" + maps(m) + ");";
  }
  std::string operator()(const KernelDecl& k) const {
    std::vector<std::string> comps;
    for (const auto& c : k.components) comps.push_back("(" + join(c, ", ") + ")");
    return "kernel " + name + " over " + k.base + " vars (" + join(k.vars, ", ") + ") length " + std::to_string(k.length) +
           " = " + join(comps, " | ") + ";";
  }
  std::string operator()(const DSFieldDecl& d) const {
    return "dsfield " + name + " = " + d.field + " sigma " + d.sigma + " delta (" + maps(d.deltas) + ");";
  }
  std::string operator()(const PVDecl& p) const {
    return "pv " + name + " over " + p.dsfield + " (" + p.a + ") sign " + (p.sign > 0 ? "+" : "-") + ";";
  }
};

}  // namespace

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  if (!s.description.empty()) out << "# " << s.description << "\n";
  for (const auto& d : s.decls) {
    out << std::visit(DeclRenderer{s, d.name}, d.body) << "\n";
  }
  for (const auto& c : s.commands) {
    out << "cmd " << c.op << " ";
    std::vector<std::string> args;
    for (const auto& a : c.args) args.push_back(a.tuple ? "(" + join(a.items, ", ") + ")" : a.items.at(0));
    out << join(args, ", ");
    for (const auto& p : c.params) out << " " << p.key << " " << (p.expression ? "(" + p.value + ")" : p.value);
    out << ";\n";
    for (const auto& e : c.expectations) out << "expect " << e.path << " = " << e.value.dump() << ";\n";
  }
  return out.str();
}

}  // namespace sigchev::cli
