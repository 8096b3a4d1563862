#pragma once

#include "exthall/linsys.hpp"
#include "exthall/model.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

namespace exthall {

struct QuiverSpec {
  std::string name;
  int vertices = 1;
  std::vector<std::pair<int, int>> arrows;  // 0-based (src, dst)

  void validate() const;  // vertices >= 1, indices in range, acyclic
  static QuiverSpec linear(int n);  // A_n with arrows i -> i+1
  static QuiverSpec from_file(const std::string& path);
};

// Representation of a fixed quiver: one dimension per vertex and one
// matrix per arrow of shape dims[dst] x dims[src].
struct QuiverRep {
  std::vector<int> dims;
  std::vector<FFMatrix> maps;

  int total() const;
  bool is_zero() const { return total() == 0; }
  std::string encode() const;
  static QuiverRep zero_rep(const QuiverSpec& q, const std::vector<int>& dims, int p);
};

// per-vertex components of a morphism between two representations
using RepMorphism = std::vector<FFMatrix>;

class QuiverBackend : public Model {
 public:
  QuiverBackend(QuiverSpec spec, int p, std::uint64_t budget);

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

  const QuiverSpec& quiver() const { return spec_; }

  // canonical label of an arbitrary representation
  IsoClass class_of(const QuiverRep& r) const;
  // canonical block-diagonal representative
  QuiverRep rep_of(const IsoClass& c) const;
  std::vector<int> dims_of(const IsoClass& c) const;

  // every class with the given dimension vector; the list is certified
  // complete through the orbit-size identity
  //   sum over classes of prod_v |GL_{d_v}| / |Aut| = p^(#matrix cells)
  std::vector<IsoClass> classes_with_dims(const std::vector<int>& d) const;

  // full morphism space between concrete representations
  LinearSystem::Solution hom_space(const QuiverRep& x, const QuiverRep& y) const;
  long hom_dim_reps(const QuiverRep& x, const QuiverRep& y) const;

  // middle X (+) Y twisted by phi: arrow maps [[X_a, phi_a], [0, Y_a]]
  // with phi_a of shape x_dims[dst] x y_dims[src]
  QuiverRep twisted_middle(const QuiverRep& x, const QuiverRep& y,
                           const std::vector<FFMatrix>& phi) const;

  // kernel of a morphism as an abstract representation
  QuiverRep kernel_rep(const QuiverRep& l, const RepMorphism& g) const;
  // cokernel of a morphism as an abstract representation
  QuiverRep cokernel_rep(const QuiverRep& l, const QuiverRep& x, const RepMorphism& f) const;

  // all automorphisms of a concrete representation (budget-guarded)
  std::vector<RepMorphism> enumerate_aut(const QuiverRep& r) const;

  // canonical representatives of the known indecomposables fitting inside
  // the given dimension vector, growing the catalog when necessary
  std::vector<QuiverRep> indec_reps_within(const std::vector<int>& bound) const;

  // <d, e> = sum_v d_v e_v - sum_{a: i->j} d_i e_j
  long euler_form(const std::vector<int>& d, const std::vector<int>& e) const;

 private:
  struct Indec {
    QuiverRep rep;
    std::string payload;
    std::string display;
    int total = 0;
    long end_dim = 0;
    BigInt aut;
    int residue_deg = 1;  // End/rad is the field with p^residue_deg elements
  };

  struct ClassData {
    std::string label;
    std::string display;
    std::vector<int> dims;
    std::map<int, int> mult;  // catalog index -> multiplicity
    long end_dim = 0;
    BigInt aut;
    QuiverRep rep;
  };

  QuiverSpec spec_;
  int p_;
  std::uint64_t budget_;
  std::string id_;
  ModelCapabilities caps_;

  // All mutable state sits behind one recursive lock; backend calls nest
  // (canonical forms trigger catalog growth which peels representations).
  mutable std::recursive_mutex reg_mu_;
  mutable std::deque<Indec> catalog_;
  mutable std::map<std::string, int> catalog_by_payload_;
  mutable std::set<std::vector<int>> covered_;
  mutable std::unordered_map<std::string, std::string> canon_memo_;  // rep encode -> label
  mutable std::map<std::string, ClassData> registry_;
  mutable std::map<std::pair<int, int>, long> indec_hom_;
  mutable std::map<std::vector<int>, std::vector<std::string>> dims_classes_;
  mutable std::map<std::string, BigInt> subrep_memo_;

  const ClassData& data_of(const IsoClass& c) const;
  const ClassData& class_from_mult(const std::map<int, int>& mult) const;
  std::map<int, int> peel(const QuiverRep& r) const;
  bool try_split(const QuiverRep& r, const Indec& ind, QuiverRep* complement) const;
  void grow_catalog(const std::vector<int>& target) const;
  void discover_dims(const std::vector<int>& d) const;
  int add_indec(const QuiverRep& canonical) const;
  long indec_hom(int i, int j) const;
  long cells(const std::vector<int>& d) const;
  IsoClass make_class(const ClassData& cd) const;
  BigInt count_by_subreps(const IsoClass& x, const IsoClass& l, const IsoClass& y) const;
};

}  // namespace exthall
