#ifndef CYCLIC_GOLDEN_HPP
#define CYCLIC_GOLDEN_HPP

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "expansions.hpp"

namespace cyclic {

struct GoldenFixture {
  std::string family;
  int arity = 0;
  bool expected_deviation = false;
  std::string text;
  int line = 0;
};

inline bool is_tensor_family(const std::string& fam) { return fam.rfind("ainf_", 0) == 0; }

inline std::vector<GoldenFixture> parse_golden_fixtures(const std::string& content) {
  std::vector<GoldenFixture> out;
  std::istringstream in(content);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(Errc::parse, "fixture line " + std::to_string(no) + " has no ':'");
    std::istringstream head(line.substr(0, colon));
    GoldenFixture f;
    f.line = no;
    std::string flag;
    if (!(head >> f.family >> f.arity)) throw Error(Errc::parse, "bad fixture header on line " + std::to_string(no));
    if (head >> flag) {
      if (flag != "expected-deviation") throw Error(Errc::parse, "unknown fixture flag '" + flag + "'");
      f.expected_deviation = true;
    }
    f.text = line.substr(colon + 1);
    while (!f.text.empty() && (f.text.back() == '\r' || f.text.back() == ' ')) f.text.pop_back();
    out.push_back(f);
  }
  return out;
}

/// Canonical term list of the general formula for a fixture family.
inline std::vector<std::string> generate_terms(const std::string& fam, int a) {
  if (fam == "face_relation") return term_strings(expand_face_relation(a));
  if (fam == "morphism_relation") return term_strings(expand_morphism_relation(a));
  if (fam == "composition") return term_strings(expand_composition(a));
  if (fam == "homotopy_relation") return term_strings(expand_homotopy_relation(a));
  if (fam == "ainf_relation") return term_strings(expand_ainf_relation(a));
  if (fam == "ainf_morphism_relation") return term_strings(expand_ainf_morphism_relation(a));
  if (fam == "ainf_composition") return term_strings(expand_ainf_composition(a));
  if (fam == "ainf_homotopy_relation") return term_strings(expand_ainf_homotopy_relation(a));
  throw Error(Errc::parse, "unknown fixture family '" + fam + "'");
}

inline std::vector<std::string> fixture_terms(const GoldenFixture& f) {
  return is_tensor_family(f.family) ? term_strings(parse_tensor_sum(f.text)) : term_strings(parse_face_sum(f.text));
}

enum class GoldenStatus { match, expected_deviation, mismatch };

struct GoldenResult {
  GoldenFixture fixture;
  GoldenStatus status = GoldenStatus::match;
  std::vector<std::string> only_fixture, only_generated;
  std::string diff;
};

inline std::string unified_term_diff(const GoldenFixture& f, const std::vector<std::string>& fix,
                                     const std::vector<std::string>& gen) {
  std::set<std::string> a(fix.begin(), fix.end()), b(gen.begin(), gen.end());
  std::ostringstream os;
  os << "--- fixture " << f.family << " " << f.arity << "\n+++ generated " << f.family << " " << f.arity << "\n";
  os << "@@ -1," << fix.size() << " +1," << gen.size() << " @@\n";
  for (auto& t : fix) os << (b.count(t) ? " " : "-") << t << "\n";
  for (auto& t : gen)
    if (!a.count(t)) os << "+" << t << "\n";
  return os.str();
}

inline GoldenResult check_golden(const GoldenFixture& f) {
  GoldenResult r;
  r.fixture = f;
  auto fix = fixture_terms(f);
  auto gen = generate_terms(f.family, f.arity);
  std::set<std::string> a(fix.begin(), fix.end()), b(gen.begin(), gen.end());
  for (auto& t : fix)
    if (!b.count(t)) r.only_fixture.push_back(t);
  for (auto& t : gen)
    if (!a.count(t)) r.only_generated.push_back(t);
  bool same = r.only_fixture.empty() && r.only_generated.empty();
  if (same && !f.expected_deviation) r.status = GoldenStatus::match;
  else if (!same && f.expected_deviation) r.status = GoldenStatus::expected_deviation;
  else r.status = GoldenStatus::mismatch;
  if (!same) r.diff = unified_term_diff(f, fix, gen);
  return r;
}

inline const char* golden_status_name(GoldenStatus s) {
  switch (s) {
    case GoldenStatus::match: return "MATCH";
    case GoldenStatus::expected_deviation: return "EXPECTED-DEVIATION";
    case GoldenStatus::mismatch: return "MISMATCH";
  }
  return "";
}

}  // namespace cyclic

#endif
