#pragma once

#include "exthall/numbers.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace exthall {

// Canonical name of an isomorphism class in a fixed backend.
// Two objects of the backend are isomorphic iff their labels are equal;
// labels are content-addressed so they survive process restarts.
struct IsoClass {
  std::string backend;
  std::string label;
  std::string display;

  bool operator==(const IsoClass& o) const { return label == o.label; }
  bool operator!=(const IsoClass& o) const { return label != o.label; }
  bool operator<(const IsoClass& o) const { return label < o.label; }
};

struct ModelCapabilities {
  bool right_hom_finite = false;
  bool left_hom_finite = false;
  bool has_neg_ext = false;
  bool exact_case = false;
  bool triangulated_case = false;
};

enum class NegVariant { I, II };

// How a counting query is allowed to proceed:
//   Elements  - enumerate the morphism set itself and filter
//   Structure - count through subobject / rank-profile combinatorics
//   Auto      - Elements when it fits the budget, Structure otherwise
enum class CountRoute { Auto, Elements, Structure };

struct UniverseBounds {
  int max_total_dim = 3;
  int per_degree = 1;
};

// Contract implemented by every concrete category model.
// All operations are pure with respect to observable results; backends
// memoize internally behind a concurrent-read / exclusive-write table.
class Model {
 public:
  virtual ~Model() = default;

  virtual const std::string& id() const = 0;
  virtual int p() const = 0;
  virtual ModelCapabilities capabilities() const = 0;
  virtual std::uint64_t budget() const = 0;

  virtual IsoClass zero() const = 0;
  virtual std::vector<IsoClass> classes_up_to(const UniverseBounds& bounds) const = 0;

  virtual long hom_dim(const IsoClass& x, const IsoClass& y) const = 0;
  virtual long ext_dim(int i, const IsoClass& x, const IsoClass& y) const = 0;
  virtual long neg_ext_dim(NegVariant v, int i, const IsoClass& x, const IsoClass& y) const = 0;
  // (pos, neg): extension groups vanish above degree pos and below degree -neg
  virtual std::pair<int, int> ext_degree_bounds(const IsoClass& x, const IsoClass& y) const = 0;

  virtual BigInt aut_order(const IsoClass& x) const = 0;
  virtual IsoClass dsum(const IsoClass& x, const IsoClass& y) const = 0;

  // |(X, L)_Y|: inflations X -> L with cone isomorphic to Y
  virtual BigInt inflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                                 CountRoute route = CountRoute::Auto) const = 0;
  // |_X(L, Y)|: deflations L -> Y with cocone isomorphic to X
  virtual BigInt deflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                                 CountRoute route = CountRoute::Auto) const = 0;
  // |E(Y, X)_L|: extension classes of Y by X whose realization has middle L
  virtual BigInt extension_count(const IsoClass& y, const IsoClass& x, const IsoClass& l) const = 0;

  // every class that can carry a nonzero structure constant for the pair
  virtual std::vector<IsoClass> middle_candidates(const IsoClass& x, const IsoClass& y) const = 0;

  // image in the Grothendieck group, as a printable string
  virtual std::string image_string(const IsoClass& x) const = 0;

  // resolve a display name or a full label
  virtual IsoClass parse_object(const std::string& name) const = 0;

  // Krull-Schmidt factors, with multiplicity
  virtual std::vector<IsoClass> summands(const IsoClass& x) const = 0;
};

}  // namespace exthall
