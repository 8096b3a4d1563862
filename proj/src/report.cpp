#include "exthall/report.hpp"

#include <json.hpp>

#include <sstream>

namespace exthall {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string VerificationReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["backend"] = backend;
  j["universe"] = universe;
  j["cases"] = cases;
  j["failures"] = nlohmann::json::array();
  for (const Failure& f : failures) {
    nlohmann::json jf;
    jf["operands"] = f.operands;
    jf["lhs"] = f.lhs;
    jf["rhs"] = f.rhs;
    jf["cite"] = f.cite;
    j["failures"].push_back(jf);
  }
  j["wall_ms"] = include_timing ? wall_ms : 0;
  j["version"] = version;
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os << "suite,x,y,l,lhs,rhs,cite\n";
  for (const Failure& f : failures) {
    auto get = [&](const char* k) {
      auto it = f.operands.find(k);
      return it == f.operands.end() ? std::string() : it->second;
    };
    os << csv_escape(suite) << "," << csv_escape(get("x")) << "," << csv_escape(get("y")) << ","
       << csv_escape(get("l")) << "," << csv_escape(f.lhs) << "," << csv_escape(f.rhs) << ","
       << csv_escape(f.cite) << "\n";
  }
  return os.str();
}

}  // namespace exthall
