#include "sigchev/cli.hpp"

namespace sigchev::cli {

namespace {

struct Raw {
  const char* name;
  const char* text;
};

const Raw raw_builtins[] = {
#include "builtins_data.inc"
};

}  // namespace

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> all = [] {
    std::vector<Builtin> out;
    for (const auto& r : raw_builtins) {
      const std::string text = r.text;
      out.push_back({r.name, parse_scenario(text).description, text});
    }
    return out;
  }();
  return all;
}

const Builtin& builtin(const std::string& name) {
  for (const auto& b : builtins())
    if (b.name == name) return b;
  fail(ErrorKind::UnknownName, "no builtin scenario '" + name + "'");
}

}  // namespace sigchev::cli
