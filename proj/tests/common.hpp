#pragma once
#include <functional>

#include "doctest.h"
#include "dfo/calculus.hpp"
#include "dfo/io.hpp"
#include "dfo/semantics.hpp"
#include "dfo/structures.hpp"
#include "dfo/syntax.hpp"
#include "dfo/translations.hpp"

using namespace dfo;

inline MtP M(const char* s) { return parse_mt(s); }
inline FoP FO(const char* s) { return parse_fo(s); }
inline StP S(const char* s) { return parse_struct(s); }
inline Sequent SEQ(const char* s) { return parse_sequent(s); }
inline TermP T(const char* s) { return sexp_term(read_sexps(s).at(0)); }
inline Subst SUB(const char* s) { return sexp_subst(read_sexps(s).at(0)); }
inline VarSet VS(std::initializer_list<int> v) { return VarSet(v); }
inline std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind;
  }
  return "";
}
