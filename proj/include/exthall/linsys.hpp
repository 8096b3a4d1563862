#pragma once

#include "exthall/fp.hpp"
#include "exthall/numbers.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace exthall {

// Linear conditions on a tuple of unknown matrices over F_p.
//
// Unknowns are matrix blocks; an equation is a sum of terms
// left * X[block] * right (optionally negated) set equal to a right-hand
// side matrix. Morphism spaces of representations, Sylvester equations and
// retraction searches all assemble into this shape.
class LinearSystem {
 public:
  explicit LinearSystem(int p) : p_(p) {}

  int add_unknown(int rows, int cols);

  struct Term {
    int block;
    FFMatrix left;
    FFMatrix right;
    bool negate = false;
  };

  void add_equation(const std::vector<Term>& terms, const FFMatrix& rhs);

  struct Solution {
    int p = 2;
    bool consistent = false;
    std::vector<std::pair<int, int>> shapes;
    std::vector<FFMatrix> particular;
    std::vector<std::vector<FFMatrix>> null_basis;

    long nullity() const { return static_cast<long>(null_basis.size()); }
    BigInt count() const;
    std::vector<FFMatrix> value(const std::vector<int>& coeffs) const;
    // iterate every solution tuple; throws BudgetError when count() > budget
    void for_each(std::uint64_t budget, const std::function<void(const std::vector<FFMatrix>&)>& fn) const;
  };

  Solution solve() const;

 private:
  int p_;
  std::vector<std::pair<int, int>> blocks_;
  std::vector<int> offsets_;
  int total_unknowns_ = 0;
  std::vector<std::vector<int>> rows_;  // augmented rows, length total_unknowns_ + 1
};

// Solution space of X*A - B*X = C where X has the shape of D.
// A and B must be square of sizes D.cols and D.rows respectively.
LinearSystem::Solution solve_intertwiner(const FFMatrix& a, const FFMatrix& b, const FFMatrix& c,
                                         const FFMatrix& d);

}  // namespace exthall
