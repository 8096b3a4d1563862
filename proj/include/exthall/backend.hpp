#pragma once

#include "exthall/graded.hpp"
#include "exthall/model.hpp"
#include "exthall/quiver.hpp"

#include <memory>
#include <string>

namespace exthall {

// Backend spec grammar:
//   quiver:<name>@<p>              name in {A1, A2, A3, file=<path>}
//   graded:@<p>,window=<lo>..<hi>
//   interval:@<p>,window=<lo>..<hi>
std::shared_ptr<Model> make_backend(const std::string& spec, std::uint64_t budget);

}  // namespace exthall
