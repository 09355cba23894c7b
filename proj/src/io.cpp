#include "dfo/io.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace dfo {

// ---------------------------------------------------------------- reader

std::vector<Sexp> read_sexps(const std::string& text, int line0) {
  std::vector<Sexp> stack_items;
  std::vector<std::vector<Sexp>> stack(1);
  std::vector<std::pair<int, int>> open_pos;
  int line = line0, col = 1;
  size_t i = 0;
  auto err = [&](const std::string& m) {
    fail("ParseError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + m);
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '\n') { ++line; col = 1; ++i; continue; }
    if (std::isspace((unsigned char)ch)) { ++col; ++i; continue; }
    if (ch == '(') {
      stack.emplace_back();
      open_pos.push_back({line, col});
      ++col; ++i;
      continue;
    }
    if (ch == ')') {
      if (stack.size() < 2) err("unbalanced ')'");
      Sexp e;
      e.atom = false;
      e.list = std::move(stack.back());
      e.line = open_pos.back().first;
      e.col = open_pos.back().second;
      stack.pop_back();
      open_pos.pop_back();
      stack.back().push_back(std::move(e));
      ++col; ++i;
      continue;
    }
    Sexp e;
    e.line = line;
    e.col = col;
    while (i < text.size() && !std::isspace((unsigned char)text[i]) && text[i] != '(' && text[i] != ')') {
      e.text += text[i];
      ++i; ++col;
    }
    stack.back().push_back(std::move(e));
  }
  if (stack.size() != 1) {
    line = open_pos.back().first;
    col = open_pos.back().second;
    err("unclosed '('");
  }
  return std::move(stack[0]);
}

std::string show_sexp(const Sexp& e) {
  if (e.atom) return e.text;
  std::string s = "(";
  for (size_t i = 0; i < e.list.size(); ++i) {
    if (i) s += ' ';
    s += show_sexp(e.list[i]);
  }
  return s + ")";
}

void parse_error(const Sexp& at, const std::string& msg) {
  fail("ParseError", "line " + std::to_string(at.line) + ", column " + std::to_string(at.col) + ": " + msg);
}

// ---------------------------------------------------------------- printers

std::string print_var(Var v) { return "v" + std::to_string(v); }
std::string print_varset(const VarSet& F) {
  std::string s = "{";
  bool first = true;
  for (Var v : F) {
    if (!first) s += ',';
    first = false;
    s += print_var(v);
  }
  return s + "}";
}
std::string print_term(const TermP& t) {
  switch (t->k) {
    case Term::K::Var: return print_var(t->v);
    case Term::K::Const: return t->name;
    case Term::K::App: {
      std::string s = "(" + t->name;
      for (auto& a : t->args) s += " " + print_term(a);
      return s + ")";
    }
  }
  return "?";
}
std::string print_subst(const Subst& s) {
  std::string r = "(";
  bool first = true;
  for (auto& [v, t] : s.m) {
    if (!first) r += ' ';
    first = false;
    r += "(" + print_var(v) + " " + print_term(t) + ")";
  }
  return r + ")";
}
static std::string args_str(const std::vector<TermP>& as) {
  std::string s;
  for (auto& a : as) s += " " + print_term(a);
  return s;
}
static std::string typed_const(const char* kw, const VarSet& F) {
  if (F.empty()) return kw;
  std::string s = std::string("(") + kw;
  for (Var v : F) s += " " + print_var(v);
  return s + ")";
}
std::string print_fo(const FoP& a) {
  switch (a->k) {
    case FK::Rel: return "(" + a->name + args_str(a->args) + ")";
    case FK::Eq: return "(=" + args_str(a->args) + ")";
    case FK::Top: return "top";
    case FK::Bot: return "bot";
    case FK::And: return "(and " + print_fo(a->a) + " " + print_fo(a->b) + ")";
    case FK::Or: return "(or " + print_fo(a->a) + " " + print_fo(a->b) + ")";
    case FK::Imp: return "(imp " + print_fo(a->a) + " " + print_fo(a->b) + ")";
    case FK::Forall: return "(forall " + print_var(a->v) + " " + print_fo(a->a) + ")";
    case FK::Exists: return "(exists " + print_var(a->v) + " " + print_fo(a->a) + ")";
  }
  return "?";
}
static const char* mt_kw(MK k) {
  switch (k) {
    case MK::And: return "and";
    case MK::Or: return "or";
    case MK::Imp: return "imp";
    case MK::Excl: return "excl";
    case MK::CoImp: return "coimp";
    case MK::Box: return "box";
    case MK::Dia: return "dia";
    case MK::Cyl: return "cyl";
    case MK::Sub: return "subst";
    case MK::SDia: return "sdia";
    case MK::SBox: return "sbox";
    default: return "?";
  }
}
std::string print_mt(const MtP& a) {
  switch (a->k) {
    case MK::Rel: return "(" + a->name + args_str(a->args) + ")";
    case MK::Eq: return "(=" + args_str(a->args) + ")";
    case MK::Top: return typed_const("top", a->type);
    case MK::Bot: return typed_const("bot", a->type);
    case MK::And: case MK::Or: case MK::Imp: case MK::Excl: case MK::CoImp:
      return std::string("(") + mt_kw(a->k) + " " + print_mt(a->a) + " " + print_mt(a->b) + ")";
    case MK::Box: case MK::Dia: case MK::Cyl:
      return std::string("(") + mt_kw(a->k) + " " + print_var(a->v) + " " + print_mt(a->a) + ")";
    case MK::Sub: case MK::SDia: case MK::SBox:
      return std::string("(") + mt_kw(a->k) + " " + print_subst(a->s) + " " + print_mt(a->a) + ")";
  }
  return "?";
}
static const char* st_kw(SK k) {
  switch (k) {
    case SK::AndHat: return "^and";
    case SK::OrCheck: return "vor";
    case SK::ExclHat: return "^excl";
    case SK::CoexclHat: return "^coexcl";
    case SK::ImpCheck: return "vimp";
    case SK::CoimpCheck: return "vcoimp";
    case SK::DiaHat: return "^dia";
    case SK::BoxCheck: return "vbox";
    case SK::Cyl: return "~cyl";
    case SK::Sub: return "~subst";
    case SK::SDiaHat: return "^sdia";
    case SK::SBoxCheck: return "vsbox";
    default: return "?";
  }
}
std::string print_struct(const StP& x) {
  switch (x->k) {
    case SK::Leaf: return print_mt(x->f);
    case SK::AtomHat: return "(^atom " + x->name + args_str(x->args) + ")";
    case SK::EqHat: return "(^=" + args_str(x->args) + ")";
    case SK::TopHat: return typed_const("^top", x->type);
    case SK::BotCheck: return typed_const("vbot", x->type);
    case SK::Meta: {
      std::string s = "(?meta " + std::to_string(x->meta);
      for (Var v : x->type) s += " " + print_var(v);
      return s + ")";
    }
    case SK::DiaHat: case SK::BoxCheck: case SK::Cyl:
      return std::string("(") + st_kw(x->k) + " " + print_var(x->v) + " " + print_struct(x->a) + ")";
    case SK::Sub: case SK::SDiaHat: case SK::SBoxCheck:
      return std::string("(") + st_kw(x->k) + " " + print_subst(x->s) + " " + print_struct(x->a) + ")";
    default:
      return std::string("(") + st_kw(x->k) + " " + print_struct(x->a) + " " + print_struct(x->b) + ")";
  }
}
std::string print_sequent(const Sequent& s) {
  return print_struct(s.l) + " |-" + print_varset(s.F) + " " + print_struct(s.r);
}
std::string print_bindings(const Bindings& b) {
  if (b.empty()) return "";
  std::string s = "(bind";
  if (b.x) s += " (x " + print_var(*b.x) + ")";
  if (b.y) s += " (y " + print_var(*b.y) + ")";
  if (b.z) s += " (z " + print_var(*b.z) + ")";
  if (b.t) s += " (t " + print_subst(*b.t) + ")";
  if (b.s) s += " (s " + print_subst(*b.s) + ")";
  if (b.term) s += " (term " + print_term(*b.term) + ")";
  if (b.cut) s += " (cut " + print_mt(b.cut) + ")";
  if (b.st) s += " (st " + print_struct(b.st) + ")";
  return s + ")";
}

// ---------------------------------------------------------------- pretty

static std::string pv(Var v) { return "v" + std::to_string(v); }
static std::string pterms(const std::vector<TermP>& as) {
  std::string s = "(";
  for (size_t i = 0; i < as.size(); ++i) s += (i ? "," : "") + print_term(as[i]);
  return s + ")";
}
static std::string psubst(const Subst& s) {
  std::string r;
  bool first = true;
  for (auto& [v, t] : s.m) {
    r += (first ? "" : ",") + print_term(t) + "/" + pv(v);
    first = false;
  }
  return r;
}
std::string pretty_fo(const FoP& a) {
  switch (a->k) {
    case FK::Rel: return a->name + (a->args.empty() ? "" : pterms(a->args));
    case FK::Eq: return print_term(a->args[0]) + " = " + print_term(a->args[1]);
    case FK::Top: return "⊤";
    case FK::Bot: return "⊥";
    case FK::And: return "(" + pretty_fo(a->a) + " ∧ " + pretty_fo(a->b) + ")";
    case FK::Or: return "(" + pretty_fo(a->a) + " ∨ " + pretty_fo(a->b) + ")";
    case FK::Imp: return "(" + pretty_fo(a->a) + " → " + pretty_fo(a->b) + ")";
    case FK::Forall: return "∀" + pv(a->v) + " " + pretty_fo(a->a);
    case FK::Exists: return "∃" + pv(a->v) + " " + pretty_fo(a->a);
  }
  return "?";
}
std::string pretty_mt(const MtP& a) {
  switch (a->k) {
    case MK::Rel: return a->name + (a->args.empty() ? "" : pterms(a->args));
    case MK::Eq: return print_term(a->args[0]) + " = " + print_term(a->args[1]);
    case MK::Top: return "⊤" + print_varset(a->type);
    case MK::Bot: return "⊥" + print_varset(a->type);
    case MK::And: return "(" + pretty_mt(a->a) + " ∧ " + pretty_mt(a->b) + ")";
    case MK::Or: return "(" + pretty_mt(a->a) + " ∨ " + pretty_mt(a->b) + ")";
    case MK::Imp: return "(" + pretty_mt(a->a) + " → " + pretty_mt(a->b) + ")";
    case MK::Excl: return "(" + pretty_mt(a->a) + " ⋗ " + pretty_mt(a->b) + ")";
    case MK::CoImp: return "(" + pretty_mt(a->a) + " ← " + pretty_mt(a->b) + ")";
    case MK::Box: return "[" + pv(a->v) + "]" + pretty_mt(a->a);
    case MK::Dia: return "⟨" + pv(a->v) + "⟩" + pretty_mt(a->a);
    case MK::Cyl: return "(" + pv(a->v) + ")" + pretty_mt(a->a);
    case MK::Sub: return "(" + psubst(a->s) + ")" + pretty_mt(a->a);
    case MK::SDia: return "⟨" + psubst(a->s) + "⟩" + pretty_mt(a->a);
    case MK::SBox: return "[" + psubst(a->s) + "]" + pretty_mt(a->a);
  }
  return "?";
}

// ---------------------------------------------------------------- sexp -> syntax

bool is_var_name(const std::string& s, Var* out) {
  if (s.size() < 2 || s[0] != 'v') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit((unsigned char)s[i])) return false;
  if (s[1] == '0') return false;
  if (s.size() > 9) return false;
  if (out) *out = std::stoi(s.substr(1));
  return true;
}

static const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "and", "or", "imp", "not", "excl", "coimp", "box", "dia", "cyl", "subst", "sdia", "sbox", "forall",
      "exists", "top", "bot", "=", "^atom", "^=", "^top", "vbot", "^and", "vor", "^excl", "^coexcl", "vimp",
      "vcoimp", "^dia", "vbox", "~cyl", "~subst", "^sdia", "vsbox", "?meta"};
  return k;
}
static bool good_symbol(const std::string& s) {
  if (s.empty() || keywords().count(s) || is_var_name(s)) return false;
  for (char c : s)
    if (!(std::isalnum((unsigned char)c) || c == '_' || c == '\'')) return false;
  return std::isalpha((unsigned char)s[0]) || s[0] == '_';
}

Var sexp_var(const Sexp& e) {
  Var v = 0;
  if (!e.atom || !is_var_name(e.text, &v)) parse_error(e, "expected a variable v<n>, got " + show_sexp(e));
  return v;
}
TermP sexp_term(const Sexp& e) {
  if (e.atom) {
    Var v = 0;
    if (is_var_name(e.text, &v)) return tvar(v);
    if (!good_symbol(e.text)) parse_error(e, "bad constant name: " + e.text);
    return tconst(e.text);
  }
  if (e.list.size() < 2 || !e.list[0].atom || !good_symbol(e.list[0].text))
    parse_error(e, "expected (f t ...)");
  std::vector<TermP> as;
  for (size_t i = 1; i < e.list.size(); ++i) as.push_back(sexp_term(e.list[i]));
  return tapp(e.list[0].text, std::move(as));
}
Subst sexp_subst(const Sexp& e) {
  if (e.atom) parse_error(e, "expected a substitution ((v t) ...)");
  Subst s;
  for (auto& p : e.list) {
    if (p.atom || p.list.size() != 2) parse_error(p, "expected (v t)");
    Var v = sexp_var(p.list[0]);
    if (s.has(v)) parse_error(p, "duplicate variable in substitution");
    s.m[v] = sexp_term(p.list[1]);
  }
  return s;
}
static std::vector<TermP> rest_terms(const Sexp& e, size_t from) {
  std::vector<TermP> as;
  for (size_t i = from; i < e.list.size(); ++i) as.push_back(sexp_term(e.list[i]));
  return as;
}
static VarSet rest_vars(const Sexp& e, size_t from) {
  VarSet F;
  for (size_t i = from; i < e.list.size(); ++i) F.insert(sexp_var(e.list[i]));
  return F;
}
static const std::string& head(const Sexp& e) {
  static const std::string none;
  if (e.atom || e.list.empty() || !e.list[0].atom) return none;
  return e.list[0].text;
}
static void arity(const Sexp& e, size_t n) {
  if (e.list.size() != n) parse_error(e, "wrong number of arguments in " + show_sexp(e));
}

FoP sexp_fo(const Sexp& e) {
  if (e.atom) {
    if (e.text == "top") return fo::top();
    if (e.text == "bot") return fo::bot();
    parse_error(e, "expected a formula, got " + e.text);
  }
  const std::string& h = head(e);
  if (h.empty()) parse_error(e, "expected a formula");
  if (h == "=") { arity(e, 3); return fo::eq(sexp_term(e.list[1]), sexp_term(e.list[2])); }
  if (h == "and") { arity(e, 3); return fo::conj(sexp_fo(e.list[1]), sexp_fo(e.list[2])); }
  if (h == "or") { arity(e, 3); return fo::disj(sexp_fo(e.list[1]), sexp_fo(e.list[2])); }
  if (h == "imp") { arity(e, 3); return fo::imp(sexp_fo(e.list[1]), sexp_fo(e.list[2])); }
  if (h == "not") { arity(e, 2); return fo::neg(sexp_fo(e.list[1])); }
  if (h == "forall") { arity(e, 3); return fo::forall(sexp_var(e.list[1]), sexp_fo(e.list[2])); }
  if (h == "exists") { arity(e, 3); return fo::exists(sexp_var(e.list[1]), sexp_fo(e.list[2])); }
  if (!good_symbol(h)) parse_error(e, "unknown connective or bad relation name: " + h);
  return fo::rel(h, rest_terms(e, 1));
}

MtP sexp_mt(const Sexp& e) {
  try {
    if (e.atom) {
      if (e.text == "top") return mt::top({});
      if (e.text == "bot") return mt::bot({});
      parse_error(e, "expected a formula, got " + e.text);
    }
    const std::string& h = head(e);
    if (h.empty()) parse_error(e, "expected a formula");
    if (h == "=") { arity(e, 3); return mt::eq(sexp_term(e.list[1]), sexp_term(e.list[2])); }
    if (h == "top") return mt::top(rest_vars(e, 1));
    if (h == "bot") return mt::bot(rest_vars(e, 1));
    static const std::map<std::string, MK> bin = {
        {"and", MK::And}, {"or", MK::Or}, {"imp", MK::Imp}, {"excl", MK::Excl}, {"coimp", MK::CoImp}};
    if (auto it = bin.find(h); it != bin.end()) {
      arity(e, 3);
      return mt::binary(it->second, sexp_mt(e.list[1]), sexp_mt(e.list[2]));
    }
    if (h == "not") {
      arity(e, 2);
      MtP a = sexp_mt(e.list[1]);
      return mt::imp(a, mt::bot(a->type));
    }
    if (h == "box") { arity(e, 3); return mt::box(sexp_var(e.list[1]), sexp_mt(e.list[2])); }
    if (h == "dia") { arity(e, 3); return mt::dia(sexp_var(e.list[1]), sexp_mt(e.list[2])); }
    if (h == "cyl") { arity(e, 3); return mt::cyl(sexp_var(e.list[1]), sexp_mt(e.list[2])); }
    if (h == "subst") { arity(e, 3); return mt::sub(sexp_subst(e.list[1]), sexp_mt(e.list[2])); }
    if (h == "sdia") { arity(e, 3); return mt::sdia(sexp_subst(e.list[1]), sexp_mt(e.list[2])); }
    if (h == "sbox") { arity(e, 3); return mt::sbox(sexp_subst(e.list[1]), sexp_mt(e.list[2])); }
    if (!good_symbol(h)) parse_error(e, "unknown connective or bad relation name: " + h);
    return mt::rel(h, rest_terms(e, 1));
  } catch (const Error& err) {
    if (err.kind == "TypeError")
      fail("TypeError", "line " + std::to_string(e.line) + ", column " + std::to_string(e.col) + ": " +
                           std::string(err.what()).substr(err.kind.size() + 2));
    throw;
  }
}

StP sexp_struct(const Sexp& e) {
  if (e.atom) {
    if (e.text == "^top") return st::top({});
    if (e.text == "vbot") return st::bot({});
    return st::leaf(sexp_mt(e));
  }
  const std::string& h = head(e);
  if (h == "^atom") {
    if (e.list.size() < 2 || !e.list[1].atom || !good_symbol(e.list[1].text)) parse_error(e, "expected (^atom R t ...)");
    return st::atom(e.list[1].text, rest_terms(e, 2));
  }
  if (h == "^=") { arity(e, 3); return st::eq(sexp_term(e.list[1]), sexp_term(e.list[2])); }
  if (h == "^top") return st::top(rest_vars(e, 1));
  if (h == "vbot") return st::bot(rest_vars(e, 1));
  if (h == "?meta") {
    if (e.list.size() < 2 || !e.list[1].atom) parse_error(e, "expected (?meta n v ...)");
    return st::meta(std::stoi(e.list[1].text), rest_vars(e, 2));
  }
  static const std::map<std::string, SK> bin = {{"^and", SK::AndHat},      {"vor", SK::OrCheck},
                                                {"^excl", SK::ExclHat},    {"^coexcl", SK::CoexclHat},
                                                {"vimp", SK::ImpCheck},    {"vcoimp", SK::CoimpCheck}};
  if (auto it = bin.find(h); it != bin.end()) {
    arity(e, 3);
    return st::binary(it->second, sexp_struct(e.list[1]), sexp_struct(e.list[2]));
  }
  if (h == "^dia") { arity(e, 3); return st::dia(sexp_var(e.list[1]), sexp_struct(e.list[2])); }
  if (h == "vbox") { arity(e, 3); return st::box(sexp_var(e.list[1]), sexp_struct(e.list[2])); }
  if (h == "~cyl") { arity(e, 3); return st::cyl(sexp_var(e.list[1]), sexp_struct(e.list[2])); }
  if (h == "~subst") { arity(e, 3); return st::sub(sexp_subst(e.list[1]), sexp_struct(e.list[2])); }
  if (h == "^sdia") { arity(e, 3); return st::sdia(sexp_subst(e.list[1]), sexp_struct(e.list[2])); }
  if (h == "vsbox") { arity(e, 3); return st::sbox(sexp_subst(e.list[1]), sexp_struct(e.list[2])); }
  return st::leaf(sexp_mt(e));
}

Bindings sexp_bindings(const Sexp& e) {
  if (head(e) != "bind") parse_error(e, "expected (bind ...)");
  Bindings b;
  for (size_t i = 1; i < e.list.size(); ++i) {
    const Sexp& p = e.list[i];
    if (p.atom || p.list.size() != 2 || !p.list[0].atom) parse_error(p, "expected (key value)");
    const std::string& k = p.list[0].text;
    const Sexp& v = p.list[1];
    if (k == "x") b.x = sexp_var(v);
    else if (k == "y") b.y = sexp_var(v);
    else if (k == "z") b.z = sexp_var(v);
    else if (k == "t") b.t = sexp_subst(v);
    else if (k == "s") b.s = sexp_subst(v);
    else if (k == "term") b.term = sexp_term(v);
    else if (k == "cut") b.cut = sexp_mt(v);
    else if (k == "st") b.st = sexp_struct(v);
    else parse_error(p, "unknown binding key " + k);
  }
  return b;
}

static Sexp single(const std::string& text) {
  auto v = read_sexps(text);
  if (v.size() != 1) fail("ParseError", "expected exactly one expression");
  return v[0];
}
TermP parse_term(const std::string& text) { return sexp_term(single(text)); }
FoP parse_fo(const std::string& text) { return sexp_fo(single(text)); }
MtP parse_mt(const std::string& text) { return sexp_mt(single(text)); }
StP parse_struct(const std::string& text) { return sexp_struct(single(text)); }

VarSet parse_varset_token(const std::string& tok) {
  std::string s = tok;
  if (s.rfind("|-", 0) == 0) s = s.substr(2);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') fail("ParseError", "bad type annotation " + tok);
  s = s.substr(1, s.size() - 2);
  VarSet F;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Var v = 0;
    if (!is_var_name(item, &v)) fail("ParseError", "bad variable in type annotation: " + item);
    F.insert(v);
  }
  return F;
}

static Sequent sequent_from(const std::vector<Sexp>& es, size_t at) {
  if (es.size() < at + 3) fail("ParseError", "expected X |-{F} Y");
  const Sexp& t = es[at + 1];
  if (!t.atom || t.text.rfind("|-", 0) != 0) parse_error(t, "expected a turnstile |-{...}");
  VarSet F = parse_varset_token(t.text);
  Sequent s = make_seq(sexp_struct(es[at]), sexp_struct(es[at + 2]));
  if (s.F != F) parse_error(t, "turnstile type " + print_varset(F) + " differs from structure type " + print_varset(s.F));
  return s;
}
Sequent parse_sequent(const std::string& text) {
  auto es = read_sexps(text);
  if (es.size() != 3) fail("ParseError", "expected X |-{F} Y");
  return sequent_from(es, 0);
}

// ---------------------------------------------------------------- files

std::string format_header() { return "dfo-format 1\n"; }

std::vector<std::string> strip_header(const std::string& text, int* first_line) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    lines.push_back(l);
  }
  size_t i = 0;
  while (i < lines.size() && (lines[i].empty() || lines[i][0] == '#')) ++i;
  if (i >= lines.size() || lines[i] != "dfo-format 1")
    fail("ParseError", "missing header line 'dfo-format 1'");
  if (first_line) *first_line = (int)i + 2;
  return std::vector<std::string>(lines.begin() + i + 1, lines.end());
}

namespace {
struct Numbering {
  std::map<const Deriv*, int> id;
  std::vector<const Deriv*> order;
  void visit(const DerivP& d) {
    if (id.count(d.get())) return;
    for (auto& k : d->kids) visit(k);
    id[d.get()] = (int)order.size() + 1;
    order.push_back(d.get());
  }
};
}  // namespace

std::string print_proof(const DerivP& d) {
  Numbering nb;
  nb.visit(d);
  std::string out = format_header() + "proof\n";
  for (const Deriv* n : nb.order) {
    out += "step " + std::to_string(nb.id[n]) + " " + rule_name(n->rule);
    if (n->dir == Dir::Up) out += ":up";
    std::string b = print_bindings(n->b);
    if (!b.empty()) out += " " + b;
    out += " concl: " + print_sequent(n->concl) + " from:";
    for (auto& k : n->kids) out += " " + std::to_string(nb.id[k.get()]);
    out += "\n";
  }
  return out;
}

DerivP parse_proof(const std::string& text) {
  int line0 = 1;
  auto lines = strip_header(text, &line0);
  size_t i = 0;
  auto skip = [&] {
    while (i < lines.size()) {
      auto& l = lines[i];
      size_t p = l.find_first_not_of(" \t");
      if (p == std::string::npos || l[p] == '#') { ++i; continue; }
      break;
    }
  };
  skip();
  if (i >= lines.size() || lines[i] != "proof") fail("ParseError", "expected 'proof' after the header");
  ++i;
  std::map<std::string, DerivP> nodes;
  std::map<std::string, int> used;
  std::string last;
  for (; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    size_t p = l.find_first_not_of(" \t");
    if (p == std::string::npos || l[p] == '#') continue;
    int ln = line0 + (int)i;
    auto es = read_sexps(l, ln);
    auto bad = [&](const std::string& m) { fail("ParseError", "line " + std::to_string(ln) + ": " + m); };
    if (es.size() < 6 || !es[0].atom || es[0].text != "step") bad("expected 'step <id> <schema> ...'");
    if (!es[1].atom) bad("bad step id");
    std::string id = es[1].text;
    if (nodes.count(id)) bad("duplicate step id " + id);
    if (!es[2].atom) bad("bad schema name");
    std::string sname = es[2].text;
    Dir dir = Dir::Down;
    if (sname.size() > 3 && sname.substr(sname.size() - 3) == ":up") {
      dir = Dir::Up;
      sname = sname.substr(0, sname.size() - 3);
    }
    auto rule = rule_by_name(sname);
    if (!rule) bad("unknown schema " + sname);
    size_t k = 3;
    Bindings b;
    if (!es[k].atom && head(es[k]) == "bind") b = sexp_bindings(es[k++]);
    if (k >= es.size() || !es[k].atom || es[k].text != "concl:") bad("expected 'concl:'");
    Sequent s = sequent_from(es, k + 1);
    k += 4;
    if (k >= es.size() || !es[k].atom || es[k].text != "from:") bad("expected 'from:'");
    std::vector<DerivP> kids;
    for (++k; k < es.size(); ++k) {
      if (!es[k].atom) bad("bad premise reference");
      auto it = nodes.find(es[k].text);
      if (it == nodes.end()) fail("DanglingRef", "line " + std::to_string(ln) + ": reference to undefined step " + es[k].text);
      used[es[k].text]++;
      kids.push_back(it->second);
    }
    nodes[id] = make_node(*rule, dir, std::move(b), std::move(s), std::move(kids));
    last = id;
  }
  if (last.empty()) fail("ParseError", "proof has no steps");
  for (auto& [id, n] : nodes)
    if (id != last && !used.count(id)) fail("ParseError", "step " + id + " is never used");
  return nodes[last];
}

// models

static size_t mixed_index(const std::vector<int>& args, int n) {
  size_t idx = 0;
  for (int a : args) idx = idx * n + a;
  return idx;
}
static size_t ipow(int n, int k) {
  size_t r = 1;
  for (int i = 0; i < k; ++i) r *= n;
  return r;
}

std::string print_model(const FoModel& m) {
  std::string out = format_header() + "model\ndomain " + std::to_string(m.n) + "\n";
  for (auto& [c, v] : m.consts) out += "const " + c + " " + std::to_string(v) + "\n";
  for (auto& [f, tab] : m.funcs) {
    out += "func " + f + " " + std::to_string(m.func_arity.at(f)) + " :";
    for (int v : tab) out += " " + std::to_string(v);
    out += "\n";
  }
  for (auto& [r, tab] : m.rels) {
    int k = m.rel_arity.at(r);
    out += "rel " + r + " " + std::to_string(k) + " :";
    for (size_t i = 0; i < tab.size(); ++i) {
      if (!tab[i]) continue;
      std::vector<int> args(k);
      size_t x = i;
      for (int j = k - 1; j >= 0; --j) { args[j] = (int)(x % m.n); x /= m.n; }
      out += " ";
      if (k == 0) out += "()";
      for (int j = 0; j < k; ++j) out += (j ? "," : "") + std::to_string(args[j]);
    }
    out += "\n";
  }
  return out;
}

FoModel parse_model(const std::string& text) {
  int line0 = 1;
  auto lines = strip_header(text, &line0);
  FoModel m;
  bool seen_model = false, seen_domain = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    int ln = line0 + (int)i;
    auto bad = [&](const std::string& msg) { fail("ParseError", "line " + std::to_string(ln) + ": " + msg); };
    std::stringstream ss(l);
    std::vector<std::string> w;
    std::string tok;
    while (ss >> tok) w.push_back(tok);
    if (w.empty() || w[0][0] == '#') continue;
    auto num = [&](const std::string& s) {
      try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) bad("bad number " + s);
        return v;
      } catch (const std::logic_error&) {
        bad("bad number " + s);
      }
      return 0;
    };
    if (!seen_model) {
      if (w.size() != 1 || w[0] != "model") bad("expected 'model'");
      seen_model = true;
      continue;
    }
    if (w[0] == "domain") {
      if (w.size() != 2) bad("expected 'domain N'");
      m.n = num(w[1]);
      if (m.n < 1) bad("domain must be nonempty");
      seen_domain = true;
      continue;
    }
    if (!seen_domain) bad("'domain' must come first");
    if (w[0] == "const") {
      if (w.size() != 3 || !good_symbol(w[1])) bad("expected 'const c k'");
      m.consts[w[1]] = num(w[2]);
    } else if (w[0] == "func") {
      if (w.size() < 4 || w[3] != ":" || !good_symbol(w[1])) bad("expected 'func f k : values'");
      int k = num(w[2]);
      if (k < 1) bad("function arity must be >= 1");
      m.func_arity[w[1]] = k;
      std::vector<int> tab;
      for (size_t j = 4; j < w.size(); ++j) tab.push_back(num(w[j]));
      if (tab.size() != ipow(m.n, k)) bad("function table must list n^k values");
      m.funcs[w[1]] = tab;
    } else if (w[0] == "rel") {
      if (w.size() < 4 || w[3] != ":" || !good_symbol(w[1])) bad("expected 'rel R k : tuples'");
      int k = num(w[2]);
      if (k < 0) bad("bad arity");
      m.rel_arity[w[1]] = k;
      std::vector<char> tab(ipow(m.n, k), 0);
      for (size_t j = 4; j < w.size(); ++j) {
        std::vector<int> args;
        if (w[j] != "()") {
          std::stringstream ts(w[j]);
          std::string part;
          while (std::getline(ts, part, ',')) args.push_back(num(part));
        }
        if ((int)args.size() != k) bad("tuple " + w[j] + " has the wrong length");
        for (int a : args)
          if (a < 0 || a >= m.n) bad("tuple element out of range");
        tab[mixed_index(args, m.n)] = 1;
      }
      m.rels[w[1]] = tab;
    } else {
      bad("unknown model line '" + w[0] + "'");
    }
  }
  if (!seen_model || !seen_domain) fail("ParseError", "model file needs 'model' and 'domain'");
  validate_model(m);
  return m;
}

static std::string body_text(const std::vector<std::string>& lines, size_t from) {
  std::string s;
  for (size_t i = from; i < lines.size(); ++i) {
    size_t p = lines[i].find_first_not_of(" \t");
    if (p != std::string::npos && lines[i][p] == '#') continue;
    s += lines[i] + "\n";
  }
  return s;
}
static size_t first_content(const std::vector<std::string>& lines, size_t i) {
  while (i < lines.size()) {
    size_t p = lines[i].find_first_not_of(" \t");
    if (p == std::string::npos || lines[i][p] == '#') { ++i; continue; }
    break;
  }
  return i;
}

Sequent parse_sequent_file(const std::string& text) {
  auto lines = strip_header(text, nullptr);
  size_t i = first_content(lines, 0);
  if (i >= lines.size() || lines[i] != "sequent") fail("ParseError", "expected 'sequent' after the header");
  return parse_sequent(body_text(lines, i + 1));
}
std::string print_sequent_file(const Sequent& s) { return format_header() + "sequent\n" + print_sequent(s) + "\n"; }

FormulaFile parse_formula_file(const std::string& text) {
  auto lines = strip_header(text, nullptr);
  size_t i = first_content(lines, 0);
  FormulaFile f;
  if (i >= lines.size()) fail("ParseError", "expected 'formula fo' or 'formula mt'");
  if (lines[i] == "formula fo") f.is_fo = true;
  else if (lines[i] != "formula mt") fail("ParseError", "expected 'formula fo' or 'formula mt'");
  ++i;
  i = first_content(lines, i);
  if (i < lines.size() && lines[i].rfind("type ", 0) == 0) {
    f.type = parse_varset_token(lines[i].substr(5));
    ++i;
  }
  std::string body = body_text(lines, i);
  if (f.is_fo) f.fo = parse_fo(body);
  else f.mt = parse_mt(body);
  return f;
}
std::string print_formula_file(const FormulaFile& f) {
  std::string out = format_header() + (f.is_fo ? "formula fo\n" : "formula mt\n");
  if (f.type) out += "type " + print_varset(*f.type) + "\n";
  out += (f.is_fo ? print_fo(f.fo) : print_mt(f.mt)) + "\n";
  return out;
}

}  // namespace dfo
