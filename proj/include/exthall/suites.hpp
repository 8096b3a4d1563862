#pragma once

#include "exthall/hall.hpp"
#include "exthall/report.hpp"

#include <cstdint>

namespace exthall {

struct SuiteOptions {
  UniverseBounds bounds;
  std::uint64_t seed = 1;
  int witnesses = 20;    // sampled conflations for the per-witness suites
  int conflations = 50;  // sampled conflations for the descent suite
  int threads = 1;
};

const std::vector<std::string>& suite_names();

// Runs one named identity suite over the model of the given algebra and
// returns a structured report; exact rational equality throughout.
VerificationReport run_suite(const std::string& name, HallAlgebra& algebra,
                             const SuiteOptions& opts);

}  // namespace exthall
