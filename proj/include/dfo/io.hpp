#pragma once
// s-expression surface syntax: printers and parsers

#include <string>
#include <vector>

#include "dfo/calculus.hpp"
#include "dfo/semantics.hpp"
#include "dfo/structures.hpp"
#include "dfo/syntax.hpp"

namespace dfo {

struct Sexp {
  bool atom = true;
  std::string text;
  std::vector<Sexp> list;
  int line = 1, col = 1;
};
std::vector<Sexp> read_sexps(const std::string& text, int line0 = 1);
std::string show_sexp(const Sexp& e);
[[noreturn]] void parse_error(const Sexp& at, const std::string& msg);

std::string print_var(Var v);
std::string print_varset(const VarSet& F);  // {v1,v2}
std::string print_term(const TermP& t);
std::string print_subst(const Subst& s);
std::string print_fo(const FoP& a);
std::string print_mt(const MtP& a);
std::string print_struct(const StP& x);
std::string print_sequent(const Sequent& s);
std::string print_bindings(const Bindings& b);
inline std::string print_formula(const FoP& a) { return print_fo(a); }
inline std::string print_formula(const MtP& a) { return print_mt(a); }

// unicode rendering, display only
std::string pretty_fo(const FoP& a);
std::string pretty_mt(const MtP& a);

bool is_var_name(const std::string& s, Var* out = nullptr);
Var sexp_var(const Sexp& e);
TermP sexp_term(const Sexp& e);
Subst sexp_subst(const Sexp& e);
FoP sexp_fo(const Sexp& e);
MtP sexp_mt(const Sexp& e);
StP sexp_struct(const Sexp& e);
Bindings sexp_bindings(const Sexp& e);

TermP parse_term(const std::string& text);
FoP parse_fo(const std::string& text);
MtP parse_mt(const std::string& text);
StP parse_struct(const std::string& text);
Sequent parse_sequent(const std::string& text);
VarSet parse_varset_token(const std::string& tok);  // "|-{v1,v2}" or "{v1,v2}"

// files
std::string format_header();
std::vector<std::string> strip_header(const std::string& text, int* first_line);  // checks "dfo-format 1"

std::string print_proof(const DerivP& d);
DerivP parse_proof(const std::string& text);

std::string print_model(const FoModel& m);
FoModel parse_model(const std::string& text);

Sequent parse_sequent_file(const std::string& text);
std::string print_sequent_file(const Sequent& s);

struct FormulaFile {
  bool is_fo = false;
  FoP fo;
  MtP mt;
  std::optional<VarSet> type;
};
FormulaFile parse_formula_file(const std::string& text);
std::string print_formula_file(const FormulaFile& f);

}  // namespace dfo
