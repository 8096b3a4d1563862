#pragma once

#include <map>
#include <string>
#include <vector>

namespace exthall {

inline constexpr const char* kVersion = "0.1.0";

struct Failure {
  std::map<std::string, std::string> operands;
  std::string lhs;
  std::string rhs;
  std::string cite;  // which identity was violated
};

struct VerificationReport {
  std::string suite;
  std::string backend;
  std::string universe;
  long cases = 0;
  std::vector<Failure> failures;
  long wall_ms = 0;
  std::string version = kVersion;

  bool passed() const { return failures.empty(); }

  // deterministic serialization: two runs with the same config and seed
  // produce identical bytes; measured wall time is only emitted on request
  std::string to_json(bool include_timing = false) const;
  std::string to_csv() const;
};

}  // namespace exthall
