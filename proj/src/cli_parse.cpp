#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>

#include "sigchev/cli.hpp"
#include "sigchev/expr.hpp"

namespace sigchev::cli {

ParseError::ParseError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& detail)
    : SigmaError(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + detail),
      line_(line),
      column_(column),
      detail_(detail) {}

const Param* Command::param(const std::string& key) const {
  for (const auto& p : params)
    if (p.key == key) return &p;
  return nullptr;
}

const Decl* Scenario::find(const std::string& name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

struct Tok {
  enum class Kind { Ident, Int, Str, Punct, End } kind = Kind::End;
  std::string text;
  std::size_t begin = 0, end = 0;
};

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool gap = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back(' ');
    gap = false;
    out.push_back(c);
  }
  return out;
}

const char* kind_name(const DeclBody& b) {
  static const char* names[] = {"field", "sigma", "pseudofield", "ring", "ideal", "inclusion", "kernel", "dsfield", "pv"};
  return names[b.index()];
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i] == '\n') line_starts_.push_back(i + 1);
    lex();
  }

  Scenario run() {
    while (peek().kind != Tok::Kind::End) statement();
    return std::move(out_);
  }

 private:
  // ------------------------------------------------------------ positions and errors
  Pos at(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return {line, offset - line_starts_[line - 1] + 1};
  }
  [[noreturn]] void error_at(ErrorKind kind, std::size_t offset, const std::string& detail) const {
    const Pos p = at(offset);
    throw ParseError(kind, p.line, p.column, detail);
  }
  [[noreturn]] void expected(const std::string& what) const {
    const Tok& t = peek();
    error_at(ErrorKind::SyntaxError, t.begin,
             "expected " + what + (t.kind == Tok::Kind::End ? " before end of input" : ", found '" + t.text + "'"));
  }

  // ------------------------------------------------------------ lexer
  void lex() {
    std::size_t i = 0;
    bool first_comment = true;
    while (i < src_.size()) {
      const char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#') {
        std::size_t j = src_.find('\n', i);
        if (j == std::string::npos) j = src_.size();
        if (first_comment && toks_.empty()) out_.description = collapse_ws(src_.substr(i + 1, j - i - 1));
        first_comment = false;
        i = j;
        continue;
      }
      first_comment = false;
      Tok t;
      t.begin = i;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_')) ++i;
        t.kind = Tok::Kind::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        t.kind = Tok::Kind::Int;
      } else if (c == '"') {
        ++i;
        while (i < src_.size() && src_[i] != '"') {
          if (src_[i] == '\\') ++i;
          if (src_[i] == '\n') break;
          ++i;
        }
        if (i >= src_.size() || src_[i] != '"') error_at(ErrorKind::SyntaxError, t.begin, "expected closing '\"'");
        ++i;
        t.kind = Tok::Kind::Str;
      } else if (c == '-' && i + 1 < src_.size() && src_[i + 1] == '>') {
        i += 2;
        t.kind = Tok::Kind::Punct;
      } else if (std::string_view("=;,:()[]{}|+-*/^.").find(c) != std::string_view::npos) {
        ++i;
        t.kind = Tok::Kind::Punct;
      } else {
        error_at(ErrorKind::SyntaxError, i, std::string("expected a token, found '") + c + "'");
      }
      t.end = i;
      t.text = src_.substr(t.begin, t.end - t.begin);
      toks_.push_back(std::move(t));
    }
    Tok end;
    end.begin = end.end = src_.size();
    toks_.push_back(end);
  }

  // ------------------------------------------------------------ token helpers
  const Tok& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Tok& next() {
    const Tok& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_punct(const std::string& p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Kind::Punct && peek(ahead).text == p;
  }
  bool is_word(const std::string& w) const { return peek().kind == Tok::Kind::Ident && peek().text == w; }
  bool accept(const std::string& p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  void punct(const std::string& p) {
    if (!accept(p)) expected("'" + p + "'");
  }
  void keyword(const std::string& w) {
    if (!is_word(w)) expected("'" + w + "'");
    next();
  }
  const Tok& ident(const std::string& what) {
    if (peek().kind != Tok::Kind::Ident) expected(what);
    return next();
  }
  unsigned integer(const std::string& what) {
    if (peek().kind != Tok::Kind::Int) expected(what);
    const Tok& t = next();
    if (t.text.size() > 9) error_at(ErrorKind::TypeMismatch, t.begin, what + " out of range");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  // ------------------------------------------------------------ expressions
  /// Raw expression up to a depth-0 token in `stops`; validated with parse_expr.
  std::string expression(const std::set<std::string>& stops, const std::string& what) {
    const std::size_t start = pos_;
    int depth = 0;
    while (peek().kind != Tok::Kind::End) {
      const Tok& t = peek();
      if (t.kind == Tok::Kind::Punct) {
        if (depth == 0 && stops.count(t.text)) break;
        if (t.text == ";") break;
        if (t.text == "(") ++depth;
        if (t.text == ")") --depth;
      }
      next();
    }
    if (pos_ == start) expected(what);
    const std::size_t b = toks_[start].begin, e = toks_[pos_ - 1].end;
    const std::string raw = src_.substr(b, e - b);
    try {
      const auto ex = parse_expr(raw);
      expr_refs_.push_back({ex, b});
    } catch (const SigmaError& err) {
      static const std::regex re("column ([0-9]+): expected (.*) in '");
      std::smatch m;
      const std::string msg = err.what();
      if (std::regex_search(msg, m, re))
        error_at(ErrorKind::SyntaxError, b + std::stoul(m[1].str()) - 1, "expected " + m[2].str());
      error_at(ErrorKind::SyntaxError, b, "expected " + what);
    }
    return collapse_ws(raw);
  }

  /// ( e1, e2, ... ), possibly empty.
  std::vector<std::string> expression_list(const std::string& what) {
    punct("(");
    std::vector<std::string> out;
    if (accept(")")) return out;
    do out.push_back(expression({",", ")"}, what));
    while (accept(","));
    punct(")");
    return out;
  }

  /// name -> expr pairs separated by commas, ending before `close`.
  std::vector<Mapping> mappings(const std::string& close) {
    std::vector<Mapping> out;
    if (is_punct(close)) return out;
    do {
      const std::string name = ident("a generator or variable name").text;
      punct("->");
      out.push_back({name, expression({",", close}, "an expression")});
    } while (accept(","));
    return out;
  }

  // ------------------------------------------------------------ names
  std::string new_name() {
    const Tok& t = ident("a name");
    if (symbols_.count(t.text) || t.text == "id")
      error_at(ErrorKind::TypeMismatch, t.begin, "'" + t.text + "' is already declared");
    return t.text;
  }
  /// A declared name of one of the given kinds.
  const Decl& ref(const std::set<std::string>& kinds, const std::string& what) {
    const Tok& t = ident(what);
    const auto it = symbols_.find(t.text);
    if (it == symbols_.end()) error_at(ErrorKind::UnknownName, t.begin, "'" + t.text + "' is not declared");
    const Decl& d = out_.decls[it->second];
    if (!kinds.count(kind_name(d.body)))
      error_at(ErrorKind::TypeMismatch, t.begin, "'" + t.text + "' is a " + kind_name(d.body) + ", expected " + what);
    return d;
  }
  template <class T>
  const T& body(const std::string& name) const {
    return std::get<T>(out_.decls[symbols_.at(name)].body);
  }

  std::vector<std::string> generators(const std::string& field) const {
    const auto& f = body<FieldDecl>(field);
    switch (f.kind) {
      case FieldDecl::Kind::Rational:
      case FieldDecl::Kind::Prime:
        return {};
      case FieldDecl::Kind::Benign: {
        std::vector<std::string> g{"a"};
        for (std::uint64_t j = 1; j < f.number; ++j) g.push_back("a" + std::to_string(j));
        return g;
      }
      default: {
        auto g = generators(f.parent);
        g.push_back(f.gen);
        return g;
      }
    }
  }
  std::vector<std::string> transcendental_generators(const std::string& field) const {
    const auto& f = body<FieldDecl>(field);
    if (f.kind == FieldDecl::Kind::Benign) return {"a"};
    if (f.kind == FieldDecl::Kind::Rational || f.kind == FieldDecl::Kind::Prime) return {};
    auto g = transcendental_generators(f.parent);
    if (f.kind == FieldDecl::Kind::Transcendental) g.push_back(f.gen);
    return g;
  }

  /// Every name in the expressions parsed since `mark` must be in `allowed`
  /// (shifted names are checked through their base variable when `shifts`).
  void check_names(std::size_t mark, const std::set<std::string>& allowed, bool shifts = false) {
    for (std::size_t i = mark; i < expr_refs_.size(); ++i) {
      for (const auto& n : expr_names(expr_refs_[i].first)) {
        const std::string base = shifts ? split_shifted_name(n).first : n;
        if (allowed.count(n) || allowed.count(base)) continue;
        std::size_t off = expr_refs_[i].second;
        const std::size_t hit = src_.find(split_shifted_name(n).first, off);
        if (hit != std::string::npos) off = hit;
        error_at(ErrorKind::UnknownName, off, "'" + n + "' is not a variable or generator here");
      }
    }
    expr_refs_.resize(mark);
  }

  void declare(std::string name, std::size_t offset, DeclBody b) {
    symbols_[name] = out_.decls.size();
    out_.decls.push_back({std::move(name), at(offset), std::move(b)});
  }

  // ------------------------------------------------------------ statements
  void statement();
  void field_decl(std::size_t off);
  void sigma_decl(std::size_t off);
  void pseudo_decl(std::size_t off);
  void ring_decl(std::size_t off);
  void ideal_decl(std::size_t off);
  void inclusion_decl(std::size_t off);
  void kernel_decl(std::size_t off);
  void dsfield_decl(std::size_t off);
  void pv_decl(std::size_t off);
  void command(std::size_t off);
  void expectation(std::size_t off);

  const std::string& src_;
  std::vector<std::size_t> line_starts_;
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  Scenario out_;
  std::map<std::string, std::size_t> symbols_;
  std::vector<std::pair<ExprPtr, std::size_t>> expr_refs_;
};

void Parser::statement() {
  const Tok& t = peek();
  if (t.kind != Tok::Kind::Ident) expected("a statement");
  const std::size_t off = t.begin;
  const std::string kw = t.text;
  next();
  if (kw == "field") field_decl(off);
  else if (kw == "sigma") sigma_decl(off);
  else if (kw == "pseudofield") pseudo_decl(off);
  else if (kw == "ring") ring_decl(off);
  else if (kw == "ideal") ideal_decl(off);
  else if (kw == "inclusion") inclusion_decl(off);
  else if (kw == "kernel") kernel_decl(off);
  else if (kw == "dsfield") dsfield_decl(off);
  else if (kw == "pv") pv_decl(off);
  else if (kw == "cmd") command(off);
  else if (kw == "expect") expectation(off);
  else error_at(ErrorKind::SyntaxError, off, "expected a statement keyword, found '" + kw + "'");
  punct(";");
}

// field F = Q | GF(p) | benign(n) | G[r]/(m) | G(x)
void Parser::field_decl(std::size_t off) {
  const std::string name = new_name();
  punct("=");
  FieldDecl f;
  const Tok& head = ident("Q, GF, benign or a field name");
  if (head.text == "Q" && !symbols_.count("Q")) {
    f.kind = FieldDecl::Kind::Rational;
  } else if ((head.text == "GF" || head.text == "benign") && is_punct("(")) {
    next();
    const std::size_t at_num = peek().begin;
    f.number = integer(head.text == "GF" ? "a prime" : "a depth");
    punct(")");
    f.kind = head.text == "GF" ? FieldDecl::Kind::Prime : FieldDecl::Kind::Benign;
    if (f.kind == FieldDecl::Kind::Benign && f.number < 1) error_at(ErrorKind::TypeMismatch, at_num, "depth must be >= 1");
  } else {
    --pos_;
    f.parent = ref({"field"}, "a field").name;
    const auto taken = generators(f.parent);
    auto fresh = [&] {
      const Tok& g = ident("a generator name");
      if (std::find(taken.begin(), taken.end(), g.text) != taken.end())
        error_at(ErrorKind::TypeMismatch, g.begin, "generator '" + g.text + "' already exists");
      return g.text;
    };
    if (accept("[")) {
      f.kind = FieldDecl::Kind::Algebraic;
      f.gen = fresh();
      punct("]");
      punct("/");
      punct("(");
      const std::size_t mark = expr_refs_.size();
      f.minpoly = expression({")"}, "a minimal polynomial");
      punct(")");
      auto allowed = std::set<std::string>(taken.begin(), taken.end());
      allowed.insert(f.gen);
      check_names(mark, allowed);
    } else if (accept("(")) {
      f.kind = FieldDecl::Kind::Transcendental;
      f.gen = fresh();
      punct(")");
    } else {
      expected("'[' or '('");
    }
  }
  declare(name, off, f);
}

// sigma s on F: g -> expr, ...
void Parser::sigma_decl(std::size_t off) {
  const std::string name = new_name();
  keyword("on");
  SigmaDecl s;
  s.field = ref({"field"}, "a field").name;
  punct(":");
  const std::size_t mark = expr_refs_.size();
  const std::size_t map_at = peek().begin;
  s.images = mappings(";");
  const auto gens = generators(s.field);
  std::set<std::string> seen;
  for (const auto& [g, _] : s.images) {
    if (std::find(gens.begin(), gens.end(), g) == gens.end())
      error_at(ErrorKind::UnknownName, map_at, "'" + g + "' is not a generator of " + s.field);
    if (!seen.insert(g).second) error_at(ErrorKind::TypeMismatch, map_at, "'" + g + "' mapped twice");
  }
  check_names(mark, {gens.begin(), gens.end()});
  declare(name, off, s);
}


// pseudofield P = trivial(F, [s,] d)
void Parser::pseudo_decl(std::size_t off) {
  const std::string name = new_name();
  punct("=");
  keyword("trivial");
  punct("(");
  PseudoDecl p;
  p.field = ref({"field"}, "a field").name;
  punct(",");
  p.sigma = "id";
  if (peek().kind == Tok::Kind::Ident) {
    const std::size_t at_sigma = peek().begin;
    p.sigma = ref({"sigma"}, "a sigma").name;
    if (body<SigmaDecl>(p.sigma).field != p.field)
      error_at(ErrorKind::TypeMismatch, at_sigma, "'" + p.sigma + "' does not act on " + p.field);
    punct(",");
  }
  const std::size_t at_d = peek().begin;
  p.period = integer("a period");
  if (p.period < 1) error_at(ErrorKind::TypeMismatch, at_d, "period must be >= 1");
  punct(")");
  declare(name, off, p);
}

// ring R = F[u, v] sigma s (u -> ..., v -> ...) [mod (rel, ...)]
void Parser::ring_decl(std::size_t off) {
  const std::string name = new_name();
  punct("=");
  RingDecl r;
  r.field = ref({"field"}, "a field").name;
  punct("[");
  const auto gens = generators(r.field);
  do {
    const Tok& v = ident("a variable name");
    if (std::find(gens.begin(), gens.end(), v.text) != gens.end() ||
        std::find(r.vars.begin(), r.vars.end(), v.text) != r.vars.end())
      error_at(ErrorKind::TypeMismatch, v.begin, "variable '" + v.text + "' clashes with an existing name");
    r.vars.push_back(v.text);
  } while (accept(","));
  punct("]");
  keyword("sigma");
  if (is_word("id")) {
    next();
    r.sigma = "id";
  } else {
    const std::size_t at_sigma = peek().begin;
    r.sigma = ref({"sigma"}, "a sigma or 'id'").name;
    if (body<SigmaDecl>(r.sigma).field != r.field)
      error_at(ErrorKind::TypeMismatch, at_sigma, "'" + r.sigma + "' does not act on " + r.field);
  }
  const std::size_t mark = expr_refs_.size();
  const std::size_t map_at = peek().begin;
  punct("(");
  const auto maps = mappings(")");
  punct(")");
  r.images.assign(r.vars.size(), "");
  for (const auto& [v, e] : maps) {
    const auto it = std::find(r.vars.begin(), r.vars.end(), v);
    if (it == r.vars.end()) error_at(ErrorKind::UnknownName, map_at, "'" + v + "' is not a variable of " + name);
    auto& slot = r.images[static_cast<std::size_t>(it - r.vars.begin())];
    if (!slot.empty()) error_at(ErrorKind::TypeMismatch, map_at, "'" + v + "' mapped twice");
    slot = e;
  }
  for (std::size_t i = 0; i < r.vars.size(); ++i)
    if (r.images[i].empty()) error_at(ErrorKind::TypeMismatch, map_at, "no image for variable '" + r.vars[i] + "'");
  if (is_word("mod")) {
    next();
    r.relations = expression_list("a relation");
  }
  std::set<std::string> allowed(gens.begin(), gens.end());
  allowed.insert(r.vars.begin(), r.vars.end());
  check_names(mark, allowed);
  declare(name, off, r);
}


// ideal I in R = (g, ...) [period d]
void Parser::ideal_decl(std::size_t off) {
  const std::string name = new_name();
  keyword("in");
  IdealDecl d;
  d.ring = ref({"ring"}, "a ring").name;
  punct("=");
  const std::size_t mark = expr_refs_.size();
  d.gens = expression_list("a generator");
  if (is_word("period")) {
    next();
    const std::size_t at_d = peek().begin;
    d.period = integer("a period");
    if (*d.period < 1) error_at(ErrorKind::TypeMismatch, at_d, "period must be >= 1");
  }
  const auto& r = body<RingDecl>(d.ring);
  const auto gens = generators(r.field);
  std::set<std::string> allowed(gens.begin(), gens.end());
  allowed.insert(r.vars.begin(), r.vars.end());
  check_names(mark, allowed);
  declare(name, off, d);
}

// inclusion N: R -> S (u -> ..., ...)
void Parser::inclusion_decl(std::size_t off) {
  const std::string name = new_name();
  punct(":");
  InclusionDecl n;
  n.source = ref({"ring"}, "a ring").name;
  punct("->");
  const std::size_t at_target = peek().begin;
  n.target = ref({"ring"}, "a ring").name;
  const auto& src = body<RingDecl>(n.source);
  const auto& tgt = body<RingDecl>(n.target);
  if (src.field != tgt.field)
    error_at(ErrorKind::TypeMismatch, at_target, "rings over different fields (" + src.field + ", " + tgt.field + ")");
  const std::size_t mark = expr_refs_.size();
  const std::size_t map_at = peek().begin;
  punct("(");
  const auto maps = mappings(")");
  punct(")");
  n.images.assign(src.vars.size(), "");
  for (const auto& [v, e] : maps) {
    const auto it = std::find(src.vars.begin(), src.vars.end(), v);
    if (it == src.vars.end()) error_at(ErrorKind::UnknownName, map_at, "'" + v + "' is not a variable of " + n.source);
    auto& slot = n.images[static_cast<std::size_t>(it - src.vars.begin())];
    if (!slot.empty()) error_at(ErrorKind::TypeMismatch, map_at, "'" + v + "' mapped twice");
    slot = e;
  }
  for (std::size_t i = 0; i < src.vars.size(); ++i)
    if (n.images[i].empty()) error_at(ErrorKind::TypeMismatch, map_at, "no image for variable '" + src.vars[i] + "'");
  const auto gens = generators(tgt.field);
  std::set<std::string> allowed(gens.begin(), gens.end());
  allowed.insert(tgt.vars.begin(), tgt.vars.end());
  check_names(mark, allowed);
  declare(name, off, n);
}

// kernel k over P vars (x, ...) length t = (..) | (..) ...
void Parser::kernel_decl(std::size_t off) {
  const std::string name = new_name();
  keyword("over");
  KernelDecl k;
  k.base = ref({"pseudofield"}, "a pseudofield").name;
  keyword("vars");
  punct("(");
  const auto& pf = body<PseudoDecl>(k.base);
  const auto gens = generators(pf.field);
  do {
    const Tok& v = ident("a variable name");
    if (std::find(gens.begin(), gens.end(), v.text) != gens.end() ||
        std::find(k.vars.begin(), k.vars.end(), v.text) != k.vars.end())
      error_at(ErrorKind::TypeMismatch, v.begin, "variable '" + v.text + "' clashes with an existing name");
    k.vars.push_back(v.text);
  } while (accept(","));
  punct(")");
  keyword("length");
  k.length = integer("a length");
  punct("=");
  const std::size_t mark = expr_refs_.size();
  const std::size_t comps_at = peek().begin;
  do k.components.push_back(expression_list("a generator"));
  while (accept("|"));
  if (k.components.size() != pf.period)
    error_at(ErrorKind::TypeMismatch, comps_at,
             std::to_string(k.components.size()) + " components given, " + k.base + " has period " +
                 std::to_string(pf.period));
  std::set<std::string> allowed(gens.begin(), gens.end());
  allowed.insert(k.vars.begin(), k.vars.end());
  for (std::size_t i = mark; i < expr_refs_.size(); ++i)
    for (const auto& n : expr_names(expr_refs_[i].first)) {
      const auto [v, j] = split_shifted_name(n);
      if (j > k.length && std::find(k.vars.begin(), k.vars.end(), v) != k.vars.end())
        error_at(ErrorKind::TypeMismatch, expr_refs_[i].second, "'" + n + "' exceeds length " + std::to_string(k.length));
    }
  check_names(mark, allowed, true);
  declare(name, off, k);
}

// dsfield D = F sigma s delta (x -> ...)
void Parser::dsfield_decl(std::size_t off) {
  const std::string name = new_name();
  punct("=");
  DSFieldDecl d;
  d.field = ref({"field"}, "a field").name;
  keyword("sigma");
  if (is_word("id")) {
    next();
    d.sigma = "id";
  } else {
    const std::size_t at_sigma = peek().begin;
    d.sigma = ref({"sigma"}, "a sigma or 'id'").name;
    if (body<SigmaDecl>(d.sigma).field != d.field)
      error_at(ErrorKind::TypeMismatch, at_sigma, "'" + d.sigma + "' does not act on " + d.field);
  }
  keyword("delta");
  const std::size_t mark = expr_refs_.size();
  const std::size_t map_at = peek().begin;
  punct("(");
  d.deltas = mappings(")");
  punct(")");
  const auto trans = transcendental_generators(d.field);
  for (const auto& [g, _] : d.deltas)
    if (std::find(trans.begin(), trans.end(), g) == trans.end())
      error_at(ErrorKind::TypeMismatch, map_at, "'" + g + "' is not a transcendental generator of " + d.field);
  const auto gens = generators(d.field);
  check_names(mark, {gens.begin(), gens.end()});
  declare(name, off, d);
}

// pv Y over D (a) sign +
void Parser::pv_decl(std::size_t off) {
  const std::string name = new_name();
  keyword("over");
  PVDecl p;
  p.dsfield = ref({"dsfield"}, "a dsfield").name;
  const std::size_t mark = expr_refs_.size();
  punct("(");
  p.a = expression({")"}, "a coefficient");
  punct(")");
  keyword("sign");
  if (accept("+")) p.sign = 1;
  else if (accept("-")) p.sign = -1;
  else expected("'+' or '-'");
  const auto gens = generators(body<DSFieldDecl>(p.dsfield).field);
  check_names(mark, {gens.begin(), gens.end()});
  declare(name, off, p);
}

struct Signature {
  std::vector<std::string> positional;  // allowed kinds separated by '|'; "tuple" is (inclusion, ideal, power)
  bool variadic = false;                // the last positional repeats
  std::map<std::string, char> params;   // 'i' integer, 'e' expression, 'f' field name
  std::set<std::string> required;
};

const std::map<std::string, Signature>& signatures() {
  static const std::map<std::string, Signature> sigs = {
      {"decompose", {{"pseudofield"}, false, {{"samples", 'i'}}, {}}},
      {"compat", {{"pseudofield", "pseudofield"}, false, {{"over", 'f'}, {"maxperiod", 'i'}}, {"over"}}},
      {"lift", {{"inclusion", "ideal"}, false, {{"power", 'i'}, {"lmax", 'i'}}, {}}},
      {"witness", {{"tuple"}, true, {{"lmax", 'i'}}, {}}},
      {"stability", {{"ideal"}, false, {{"power", 'i'}}, {}}},
      {"prolong", {{"kernel"}, false, {}, {}}},
      {"realize", {{"kernel"}, false, {{"upto", 'i'}}, {"upto"}}},
      {"limitdegree", {{"field|kernel"}, false, {{"power", 'i'}, {"base", 'i'}, {"upto", 'i'}}, {"power"}}},
      {"invclosure", {{"ring", "ideal"}, true, {{"nmax", 'i'}, {"bound", 'i'}}, {}}},
      {"pv", {{"pv", "pv"}, false, {{"lmax", 'i'}, {"bound", 'i'}}, {}}},
      {"probe", {{"pseudofield"}, false, {{"mod", 'e'}, {"invert", 'e'}, {"bound", 'i'}}, {}}},
  };
  return sigs;
}

std::set<std::string> split_kinds(const std::string& s) {
  std::set<std::string> out;
  std::size_t b = 0;
  while (true) {
    const auto e = s.find('|', b);
    out.insert(s.substr(b, e == std::string::npos ? std::string::npos : e - b));
    if (e == std::string::npos) return out;
    b = e + 1;
  }
}

void Parser::command(std::size_t off) {
  Command c;
  c.pos = at(off);
  const Tok& op = ident("a command name");
  const auto sit = signatures().find(op.text);
  if (sit == signatures().end()) error_at(ErrorKind::UnknownName, op.begin, "unknown command '" + op.text + "'");
  const Signature& sig = sit->second;
  c.op = op.text;

  // positional arguments
  std::vector<std::size_t> arg_at;
  std::size_t i = 0;
  do {
    if (i >= sig.positional.size() && !sig.variadic) expected("';' or a parameter");
    const std::string& kinds = sig.positional[std::min(i, sig.positional.size() - 1)];
    arg_at.push_back(peek().begin);
    Arg a;
    if (kinds == "tuple") {
      punct("(");
      a.tuple = true;
      a.items.push_back(ref({"inclusion"}, "an inclusion").name);
      punct(",");
      const std::size_t at_ideal = peek().begin;
      a.items.push_back(ref({"ideal"}, "an ideal").name);
      if (body<IdealDecl>(a.items[1]).ring != body<InclusionDecl>(a.items[0]).source)
        error_at(ErrorKind::TypeMismatch, at_ideal, "'" + a.items[1] + "' is not an ideal of the source of " + a.items[0]);
      punct(",");
      const std::size_t at_d = peek().begin;
      const unsigned d = integer("a power");
      if (d < 1) error_at(ErrorKind::TypeMismatch, at_d, "power must be >= 1");
      a.items.push_back(std::to_string(d));
      punct(")");
    } else {
      a.items.push_back(ref(split_kinds(kinds), kinds == "field|kernel" ? "a field or kernel" : "a " + kinds).name);
    }
    c.args.push_back(std::move(a));
    ++i;
  } while (accept(","));
  if (c.args.size() < sig.positional.size()) expected("','");

  // cross-argument checks
  if (c.op == "lift" && body<IdealDecl>(c.args[1].items[0]).ring != body<InclusionDecl>(c.args[0].items[0]).source)
    error_at(ErrorKind::TypeMismatch, arg_at[1],
             "'" + c.args[1].items[0] + "' is not an ideal of the source of " + c.args[0].items[0]);
  if (c.op == "invclosure")
    for (std::size_t j = 1; j < c.args.size(); ++j)
      if (body<IdealDecl>(c.args[j].items[0]).ring != c.args[0].items[0])
        error_at(ErrorKind::TypeMismatch, arg_at[j], "'" + c.args[j].items[0] + "' is not an ideal of " + c.args[0].items[0]);
  if (c.op == "pv" && body<PVDecl>(c.args[0].items[0]).dsfield != body<PVDecl>(c.args[1].items[0]).dsfield)
    error_at(ErrorKind::TypeMismatch, arg_at[1], "PV rings over different dsfields");

  // keyword parameters
  while (peek().kind == Tok::Kind::Ident) {
    const Tok& key = next();
    const auto pit = sig.params.find(key.text);
    if (pit == sig.params.end())
      error_at(ErrorKind::TypeMismatch, key.begin, "'" + c.op + "' takes no parameter '" + key.text + "'");
    if (c.param(key.text)) error_at(ErrorKind::TypeMismatch, key.begin, "parameter '" + key.text + "' given twice");
    Param p;
    p.key = key.text;
    if (pit->second == 'i') {
      const std::size_t at_v = peek().begin;
      const unsigned v = integer("an integer");
      if (v < 1 && key.text != "base" && key.text != "upto" && key.text != "samples")
        error_at(ErrorKind::TypeMismatch, at_v, key.text + " must be >= 1");
      p.value = std::to_string(v);
    } else if (pit->second == 'f') {
      p.value = ref({"field"}, "a field").name;
    } else {
      const std::size_t mark = expr_refs_.size();
      punct("(");
      p.value = expression({")"}, "a polynomial in c");
      punct(")");
      p.expression = true;
      const auto gens = generators(body<PseudoDecl>(c.args[0].items[0]).field);
      std::set<std::string> allowed(gens.begin(), gens.end());
      allowed.insert("c");
      check_names(mark, allowed);
    }
    c.params.push_back(std::move(p));
  }
  for (const auto& r : sig.required)
    if (!c.param(r)) expected("parameter '" + r + "'");
  if (c.op == "limitdegree" && c.param("upto") && !std::holds_alternative<KernelDecl>(out_.find(c.args[0].items[0])->body))
    error_at(ErrorKind::TypeMismatch, arg_at[0], "'upto' applies to kernels only");
  out_.commands.push_back(std::move(c));
}

// expect a.b.0 = <json>
void Parser::expectation(std::size_t off) {
  if (out_.commands.empty()) error_at(ErrorKind::SyntaxError, off, "expected a command before 'expect'");
  Expectation e;
  e.pos = at(off);
  do {
    if (peek().kind != Tok::Kind::Ident && peek().kind != Tok::Kind::Int) expected("a path segment");
    if (!e.path.empty()) e.path += ".";
    e.path += next().text;
  } while (accept("."));
  punct("=");
  const std::size_t start = pos_;
  while (peek().kind != Tok::Kind::End && !is_punct(";")) next();
  if (pos_ == start) expected("a JSON value");
  const std::size_t b = toks_[start].begin, end = toks_[pos_ - 1].end;
  e.value = Json::parse(src_.substr(b, end - b), nullptr, false);
  if (e.value.is_discarded()) error_at(ErrorKind::SyntaxError, b, "expected a JSON value");
  out_.commands.back().expectations.push_back(std::move(e));
}

}  // namespace

Scenario parse_scenario(const std::string& text) { return Parser(text).run(); }

}  // namespace sigchev::cli
