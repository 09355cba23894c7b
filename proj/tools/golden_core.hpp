#pragma once
// shared by the golden driver and the acceptance runner

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dfo/cli.hpp"
#include "dfo/io.hpp"

namespace golden {

namespace fs = std::filesystem;
using namespace dfo;

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << s;
}

inline std::vector<std::string> split_args(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
    } else if (!quoted && (c == ' ' || c == '\t')) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (any) out.push_back(cur);
  return out;
}

struct Case {
  std::string name;
  std::vector<std::string> args;
};

inline std::vector<Case> read_cases(const fs::path& dir) {
  std::vector<Case> cs;
  std::istringstream in(slurp(dir / "cases.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::runtime_error("bad case line: " + line);
    cs.push_back({line.substr(0, colon), split_args(line.substr(colon + 1))});
  }
  return cs;
}

inline std::string run_case(const Case& c) {
  std::ostringstream out, err;
  int code = run_cli(c.args, out, err);
  std::string r = "exit " + std::to_string(code) + "\n" + out.str();
  if (!err.str().empty()) r += "stderr: " + err.str();
  return r;
}

// parse, print, parse, print: the printer must be a fixed point and, for
// files without comments, reproduce the input
inline std::string round_trip(const fs::path& p) {
  std::string text = slurp(p), ext = p.extension().string();
  auto once = [&](const std::string& s) -> std::string {
    if (ext == ".proof") return print_proof(parse_proof(s));
    if (ext == ".model") return print_model(parse_model(s));
    if (ext == ".seq") return print_sequent_file(parse_sequent_file(s));
    return print_formula_file(parse_formula_file(s));
  };
  std::string a = once(text), b = once(a);
  if (a != b) return "printer not idempotent";
  if (text.find("\n#") == std::string::npos && a != text) return "not byte-identical after round trip";
  return "";
}

struct Summary {
  int cases = 0, proofs = 0, formulas = 0, models = 0, round_trips = 0;
  std::vector<std::string> failures;
};

// runs every case from inside dir and round-trips every well-formed input
inline Summary check_corpus(const fs::path& dir0) {
  fs::path dir = fs::absolute(dir0);
  Summary s;
  auto cases = read_cases(dir);
  fs::path old = fs::current_path();
  fs::current_path(dir);
  for (auto& c : cases) {
    ++s.cases;
    std::string got = run_case(c);
    fs::path exp = dir / "expected" / (c.name + ".txt");
    if (!fs::exists(exp) || slurp(exp) != got) s.failures.push_back(c.name + "\n" + got);
  }
  fs::current_path(old);
  for (auto sub : {"proofs", "formulas", "models", "sequents"})
    for (auto& e : fs::directory_iterator(dir / sub)) {
      std::string ext = e.path().extension().string();
      s.proofs += ext == ".proof";
      s.formulas += ext == ".mt" || ext == ".fo";
      s.models += ext == ".model";
      if (e.path().filename().string().rfind("bad_", 0) == 0) continue;
      ++s.round_trips;
      std::string why;
      try {
        why = round_trip(e.path());
      } catch (const std::exception& ex) {
        why = ex.what();
      }
      if (!why.empty()) s.failures.push_back("round trip " + e.path().filename().string() + ": " + why);
    }
  return s;
}

}  // namespace golden
