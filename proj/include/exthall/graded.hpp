#pragma once

#include "exthall/model.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>

namespace exthall {

// Finitely supported sequence of dimensions indexed by integer degree;
// a complex of F_p vector spaces with zero differential.
struct GradedObject {
  std::map<int, int> dims;  // only strictly positive entries are stored

  int at(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
  void add(int n, int d);
  int total() const;
  bool is_zero() const { return dims.empty(); }
  int lo() const;  // lowest degree with support (0 when zero object)
  int hi() const;
  // (X[j])_n = x_{n+j}
  GradedObject shift(int j) const;
  GradedObject dsum(const GradedObject& o) const;
  bool operator==(const GradedObject& o) const { return dims == o.dims; }
};

// Degreewise ranks of a morphism, the invariant classifying it up to
// the two-sided base change action.
struct RankProfile {
  std::map<int, int> ranks;

  int at(int n) const {
    auto it = ranks.find(n);
    return it == ranks.end() ? 0 : it->second;
  }
  void set(int n, int r);
};

// Graded F_p vector spaces. With interval = false the window only bounds
// universe enumeration and the counting semantics are those of the ambient
// shift-closed category (every morphism has a cone). With interval = true
// the window is a hard boundary: conflations are ambient ones with all
// three terms supported inside the window.
class GradedBackend : public Model {
 public:
  GradedBackend(int p, int lo, int hi, bool interval, std::uint64_t budget);

  const std::string& id() const override { return id_; }
  int p() const override { return p_; }
  ModelCapabilities capabilities() const override { return caps_; }
  std::uint64_t budget() const override { return budget_; }

  IsoClass zero() const override;
  std::vector<IsoClass> classes_up_to(const UniverseBounds& bounds) const override;

  long hom_dim(const IsoClass& x, const IsoClass& y) const override;
  long ext_dim(int i, const IsoClass& x, const IsoClass& y) const override;
  long neg_ext_dim(NegVariant v, int i, const IsoClass& x, const IsoClass& y) const override;
  std::pair<int, int> ext_degree_bounds(const IsoClass& x, const IsoClass& y) const override;

  BigInt aut_order(const IsoClass& x) const override;
  IsoClass dsum(const IsoClass& x, const IsoClass& y) const override;

  BigInt inflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                         CountRoute route = CountRoute::Auto) const override;
  BigInt deflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                         CountRoute route = CountRoute::Auto) const override;
  BigInt extension_count(const IsoClass& y, const IsoClass& x, const IsoClass& l) const override;

  std::vector<IsoClass> middle_candidates(const IsoClass& x, const IsoClass& y) const override;
  std::string image_string(const IsoClass& x) const override;
  IsoClass parse_object(const std::string& name) const override;
  std::vector<IsoClass> summands(const IsoClass& x) const override;

  // --- model-specific surface ---

  IsoClass class_of(const GradedObject& o) const;
  GradedObject object_of(const IsoClass& c) const;

  int window_lo() const { return lo_; }
  int window_hi() const { return hi_; }
  bool interval() const { return interval_; }

  // cone of a morphism f: X -> L with rank profile r
  GradedObject cone_dims(const GradedObject& x, const GradedObject& l, const RankProfile& r) const;
  // cocone of a morphism g: L -> Y with rank profile r
  GradedObject cocone_dims(const GradedObject& l, const GradedObject& y, const RankProfile& r) const;
  // middle term of the extension class with profile s, where s_n is the rank
  // of the degree-n component Y_n -> X_{n+1}
  GradedObject middle_dims(const GradedObject& y, const GradedObject& x, const RankProfile& s) const;

 private:
  int p_;
  int lo_, hi_;
  bool interval_;
  std::uint64_t budget_;
  std::string id_;
  ModelCapabilities caps_;
  mutable std::unordered_map<std::string, GradedObject> registry_;
  mutable std::shared_mutex mu_;

  std::string label_of(const GradedObject& o) const;
  std::string display_of(const GradedObject& o) const;
};

}  // namespace exthall
