#pragma once

#include "exthall/hall.hpp"

#include <string>

namespace exthall {

// Product expressions over basis symbols:
//   expr   := factor ('*' factor)*
//   factor := 'u[' name ']' | '(' expr ')'
// Names resolve through Model::parse_object (display names or full labels).
HallElement eval_expr(HallAlgebra& alg, MulType type, const std::string& expr);

}  // namespace exthall
