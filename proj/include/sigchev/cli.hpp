#pragma once

// Scenario language (.sigma files), the command runner and JSON reports.
//
// A scenario is a list of declarations followed by commands; each command may
// carry `expect` lines checked against its result in assertion mode.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sigchev/error.hpp"

namespace sigchev::cli {

using Json = nlohmann::ordered_json;

/// SyntaxError, UnknownName or TypeMismatch with a source position.
class ParseError : public SigmaError {
 public:
  ParseError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& detail);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_, column_;
  std::string detail_;
};

struct Pos {
  std::size_t line = 0, column = 0;
};

using Mapping = std::pair<std::string, std::string>;  // name -> expression

struct FieldDecl {
  enum class Kind { Rational, Prime, Algebraic, Transcendental, Benign };
  Kind kind = Kind::Rational;
  std::uint64_t number = 0;  // characteristic (Prime) or depth (Benign)
  std::string parent, gen, minpoly;
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};
struct SigmaDecl {
  std::string field;
  std::vector<Mapping> images;  // generators not listed are fixed
  friend bool operator==(const SigmaDecl&, const SigmaDecl&) = default;
};
struct PseudoDecl {
  std::string field, sigma;  // sigma "id" is the identity
  unsigned period = 1;
  friend bool operator==(const PseudoDecl&, const PseudoDecl&) = default;
};
struct RingDecl {
  std::string field, sigma;
  std::vector<std::string> vars;
  std::vector<std::string> images;  // one per variable
  std::vector<std::string> relations;
  friend bool operator==(const RingDecl&, const RingDecl&) = default;
};
struct IdealDecl {
  std::string ring;
  std::vector<std::string> gens;
  std::optional<unsigned> period;
  friend bool operator==(const IdealDecl&, const IdealDecl&) = default;
};
struct InclusionDecl {
  std::string source, target;
  std::vector<std::string> images;  // one per source variable
  friend bool operator==(const InclusionDecl&, const InclusionDecl&) = default;
};
struct KernelDecl {
  std::string base;
  std::vector<std::string> vars;
  unsigned length = 0;
  std::vector<std::vector<std::string>> components;
  friend bool operator==(const KernelDecl&, const KernelDecl&) = default;
};
struct DSFieldDecl {
  std::string field, sigma;
  std::vector<Mapping> deltas;
  friend bool operator==(const DSFieldDecl&, const DSFieldDecl&) = default;
};
struct PVDecl {
  std::string dsfield, a;
  int sign = 1;
  friend bool operator==(const PVDecl&, const PVDecl&) = default;
};

using DeclBody = std::variant<FieldDecl, SigmaDecl, PseudoDecl, RingDecl, IdealDecl, InclusionDecl, KernelDecl,
                              DSFieldDecl, PVDecl>;

struct Decl {
  std::string name;
  Pos pos;
  DeclBody body;
  friend bool operator==(const Decl& a, const Decl& b) { return a.name == b.name && a.body == b.body; }
};

/// A positional command argument: a name, or a parenthesized tuple.
struct Arg {
  std::vector<std::string> items;
  bool tuple = false;
  friend bool operator==(const Arg&, const Arg&) = default;
};

struct Param {
  std::string key, value;
  bool expression = false;  // value was written in parentheses
  friend bool operator==(const Param&, const Param&) = default;
};

struct Expectation {
  std::string path;
  Json value;
  Pos pos;
  friend bool operator==(const Expectation& a, const Expectation& b) { return a.path == b.path && a.value == b.value; }
};

struct Command {
  std::string op;
  Pos pos;
  std::vector<Arg> args;
  std::vector<Param> params;
  std::vector<Expectation> expectations;
  friend bool operator==(const Command& a, const Command& b) {
    return a.op == b.op && a.args == b.args && a.params == b.params && a.expectations == b.expectations;
  }

  const Param* param(const std::string& key) const;
};

struct Scenario {
  std::string description;  // leading `#` comment, if any
  std::vector<Decl> decls;
  std::vector<Command> commands;
  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.description == b.description && a.decls == b.decls && a.commands == b.commands;
  }

  const Decl* find(const std::string& name) const;
};

Scenario parse_scenario(const std::string& text);
/// Canonical text: declarations first, one statement per line.
std::string render_scenario(const Scenario& s);

struct RunOptions {
  bool assert_mode = false;
  std::optional<unsigned> max_power;  // default lmax for lift, witness and pv
  std::optional<unsigned> bound;      // default search bound
  std::uint64_t seed = 1;
  std::string name = "scenario";
};

struct RunResult {
  Json report;
  int exit_code = 0;  // 0 pass, 1 assertion failure, 3 operation error
};
RunResult run_scenario(const Scenario& s, const RunOptions& options);

/// Empty when the report conforms to schema v1; otherwise the first problem.
std::string validate_report(const Json& report);
/// The report without its timing field.
Json strip_timing(Json report);

struct Builtin {
  std::string name, description, text;
};
const std::vector<Builtin>& builtins();
/// UnknownName for names that are not built in.
const Builtin& builtin(const std::string& name);

}  // namespace sigchev::cli
