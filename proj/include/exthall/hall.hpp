#pragma once

#include "exthall/model.hpp"

#include <map>
#include <memory>
#include <shared_mutex>

namespace exthall {

enum class MulType { F, G, Twisted };

std::string mul_type_name(MulType t);

// Finite formal sum of basis classes with exact rational coefficients.
class HallElement {
 public:
  HallElement() = default;

  void add(const IsoClass& c, const Rat& coeff);
  HallElement scaled(const Rat& c) const;
  HallElement operator+(const HallElement& o) const;
  bool operator==(const HallElement& o) const { return terms_ == o.terms_; }

  const std::map<IsoClass, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::string to_string() const;

 private:
  std::map<IsoClass, Rat> terms_;
};

// A structure constant together with the two routes that produced it.
// Construction fails when the defining two-sided identity does not hold.
struct ConstantRecord {
  IsoClass x, y, l;
  Rat value;
  Rat deflation_form;
  Rat inflation_form;
  std::string method;
};

// Derived quantities of a model: normalization factors, both families of
// structure constants, the two Hall products and the Euler-form twist.
class HallAlgebra {
 public:
  explicit HallAlgebra(std::shared_ptr<Model> model);

  const Model& model() const { return *model_; }

  // prod_{i>0} |E^i(X,Y)|^((-1)^i)
  Rat braces_pos(const IsoClass& x, const IsoClass& y) const;
  // 1 / ({X,Y}' |Hom(X,Y)|)
  Rat bracket(const IsoClass& x, const IsoClass& y) const;
  // prod_{i>0} |E^{-i}(X,Y)|^((-1)^i), per variant
  Rat braces_neg(NegVariant v, const IsoClass& x, const IsoClass& y) const;
  // correction factor of the two-sided G identity, from eight raw braces
  Rat hbar(const IsoClass& x, const IsoClass& y, const IsoClass& l) const;
  // sum_i (-1)^i dim E^i over all integer degrees
  long euler(const IsoClass& x, const IsoClass& y) const;

  Rat f_deflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                  CountRoute route = CountRoute::Auto) const;
  Rat f_inflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                  CountRoute route = CountRoute::Auto) const;
  Rat g_deflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                  CountRoute route = CountRoute::Auto) const;
  Rat g_inflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                  CountRoute route = CountRoute::Auto) const;

  ConstantRecord f_const(const IsoClass& x, const IsoClass& y, const IsoClass& l) const;
  ConstantRecord g_const(const IsoClass& x, const IsoClass& y, const IsoClass& l) const;

  // checked and cached structure constant of the requested product
  Rat constant(MulType t, const IsoClass& x, const IsoClass& y, const IsoClass& l) const;

  HallElement basis(const IsoClass& x) const;
  HallElement mul(const HallElement& a, const HallElement& b, MulType t) const;

  // persistent constant cache
  void load_cache(const std::string& path);
  void save_cache(const std::string& path) const;

 private:
  std::shared_ptr<Model> model_;
  mutable std::map<std::string, Rat> cache_;
  mutable std::shared_mutex cache_mu_;

  Rat q_hom(const IsoClass& x, const IsoClass& y) const;
};

}  // namespace exthall
