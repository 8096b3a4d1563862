#include "exthall/hall.hpp"

#include "exthall/errors.hpp"

#include <mutex>
#include <fstream>
#include <sstream>

namespace exthall {

std::string mul_type_name(MulType t) {
  switch (t) {
    case MulType::F: return "F";
    case MulType::G: return "G";
    case MulType::Twisted: return "twisted";
  }
  return "?";
}

void HallElement::add(const IsoClass& c, const Rat& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(c);
  if (it == terms_.end()) {
    terms_.emplace(c, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

HallElement HallElement::scaled(const Rat& c) const {
  HallElement r;
  if (c == 0) return r;
  for (auto& [cls, v] : terms_) r.terms_.emplace(cls, v * c);
  return r;
}

HallElement HallElement::operator+(const HallElement& o) const {
  HallElement r = *this;
  for (auto& [cls, v] : o.terms_) r.add(cls, v);
  return r;
}

std::string HallElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [cls, v] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + rat_str(v) + ")*u[" + cls.display + "]";
  }
  return s;
}

HallAlgebra::HallAlgebra(std::shared_ptr<Model> model) : model_(std::move(model)) {}

Rat HallAlgebra::q_hom(const IsoClass& x, const IsoClass& y) const {
  return qpow(model_->p(), model_->hom_dim(x, y));
}

Rat HallAlgebra::braces_pos(const IsoClass& x, const IsoClass& y) const {
  if (!model_->capabilities().right_hom_finite)
    throw CapabilityError("braces need a right locally homologically finite model");
  auto [pos, neg] = model_->ext_degree_bounds(x, y);
  (void)neg;
  long e = 0;
  for (int i = 1; i <= pos; ++i) {
    long d = model_->ext_dim(i, x, y);
    e += (i % 2 == 0) ? d : -d;
  }
  return qpow(model_->p(), e);
}

Rat HallAlgebra::bracket(const IsoClass& x, const IsoClass& y) const {
  return Rat(1) / (braces_pos(x, y) * q_hom(x, y));
}

Rat HallAlgebra::braces_neg(NegVariant v, const IsoClass& x, const IsoClass& y) const {
  if (!model_->capabilities().left_hom_finite)
    throw CapabilityError("negative braces need a left locally homologically finite model");
  auto [pos, neg] = model_->ext_degree_bounds(x, y);
  (void)pos;
  long e = 0;
  for (int i = 1; i <= neg; ++i) {
    long d = model_->neg_ext_dim(v, i, x, y);
    e += (i % 2 == 0) ? d : -d;
  }
  return qpow(model_->p(), e);
}

Rat HallAlgebra::hbar(const IsoClass& x, const IsoClass& y, const IsoClass& l) const {
  const NegVariant I = NegVariant::I, II = NegVariant::II;
  return braces_neg(II, y, x) / braces_neg(I, y, x) * braces_neg(I, y, l) / braces_neg(II, y, l) *
         braces_neg(I, l, x) / braces_neg(II, l, x) * braces_neg(II, l, l) / braces_neg(I, l, l);
}

long HallAlgebra::euler(const IsoClass& x, const IsoClass& y) const {
  auto [pos, neg] = model_->ext_degree_bounds(x, y);
  long e = model_->hom_dim(x, y);
  for (int i = 1; i <= pos; ++i) {
    long d = model_->ext_dim(i, x, y);
    e += (i % 2 == 0) ? d : -d;
  }
  for (int i = 1; i <= neg; ++i) {
    long d = model_->neg_ext_dim(NegVariant::I, i, x, y);
    e += (i % 2 == 0) ? d : -d;
  }
  return e;
}

Rat HallAlgebra::f_deflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                             CountRoute route) const {
  BigInt defl = model_->deflation_count(x, l, y, route);
  if (defl == 0) return 0;
  return Rat(defl, model_->aut_order(y)) * bracket(l, y) / bracket(y, y);
}

Rat HallAlgebra::f_inflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                             CountRoute route) const {
  BigInt infl = model_->inflation_count(x, l, y, route);
  if (infl == 0) return 0;
  return Rat(infl, model_->aut_order(x)) * bracket(x, l) / bracket(x, x);
}

Rat HallAlgebra::g_deflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                             CountRoute route) const {
  BigInt defl = model_->deflation_count(x, l, y, route);
  if (defl == 0) return 0;
  return Rat(defl, model_->aut_order(y)) * braces_neg(NegVariant::I, l, y) /
         braces_neg(NegVariant::I, y, y);
}

Rat HallAlgebra::g_inflation(const IsoClass& x, const IsoClass& y, const IsoClass& l,
                             CountRoute route) const {
  BigInt infl = model_->inflation_count(x, l, y, route);
  if (infl == 0) return 0;
  return Rat(infl, model_->aut_order(x)) * braces_neg(NegVariant::II, x, l) /
         braces_neg(NegVariant::II, x, x);
}

ConstantRecord HallAlgebra::f_const(const IsoClass& x, const IsoClass& y, const IsoClass& l) const {
  ConstantRecord r;
  r.x = x;
  r.y = y;
  r.l = l;
  r.deflation_form = f_deflation(x, y, l);
  r.inflation_form = f_inflation(x, y, l);
  r.method = "F: deflation and inflation route";
  if (r.deflation_form != r.inflation_form)
    throw IdentityError("two-sided F identity failed at (" + x.display + ", " + y.display + ", " +
                        l.display + "): " + rat_str(r.deflation_form) + " vs " +
                        rat_str(r.inflation_form));
  r.value = r.deflation_form;
  return r;
}

ConstantRecord HallAlgebra::g_const(const IsoClass& x, const IsoClass& y, const IsoClass& l) const {
  ConstantRecord r;
  r.x = x;
  r.y = y;
  r.l = l;
  r.deflation_form = g_deflation(x, y, l);
  r.inflation_form = g_inflation(x, y, l);
  r.method = "G: deflation and inflation route";
  // with the correction factor between the two sides computed from raw braces
  if (r.deflation_form * hbar(x, y, l) != r.inflation_form)
    throw IdentityError("two-sided G identity failed at (" + x.display + ", " + y.display + ", " +
                        l.display + "): " + rat_str(r.deflation_form) + " vs " +
                        rat_str(r.inflation_form));
  r.value = r.inflation_form;
  return r;
}

Rat HallAlgebra::constant(MulType t, const IsoClass& x, const IsoClass& y, const IsoClass& l) const {
  std::string key = mul_type_name(t) + "|" + x.label + "|" + y.label + "|" + l.label;
  {
    std::shared_lock lock(cache_mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Rat v;
  switch (t) {
    case MulType::F: v = f_const(x, y, l).value; break;
    case MulType::G: v = g_const(x, y, l).value; break;
    case MulType::Twisted:
      v = qpow(model_->p(), -euler(x, y)) * g_const(x, y, l).value;
      break;
  }
  std::unique_lock lock(cache_mu_);
  cache_.emplace(key, v);
  return v;
}

HallElement HallAlgebra::basis(const IsoClass& x) const {
  HallElement e;
  e.add(x, 1);
  return e;
}

HallElement HallAlgebra::mul(const HallElement& a, const HallElement& b, MulType t) const {
  if ((t == MulType::G || t == MulType::Twisted) && !model_->capabilities().left_hom_finite)
    throw CapabilityError("product needs negative braces, not available on " + model_->id());
  HallElement out;
  for (auto& [x, ax] : a.terms()) {
    for (auto& [y, by] : b.terms()) {
      Rat c = ax * by;
      for (const IsoClass& l : model_->middle_candidates(x, y)) {
        Rat f = constant(t, x, y, l);
        if (f != 0) out.add(l, c * f);
      }
    }
  }
  return out;
}

void HallAlgebra::load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;  // no cache yet
  std::string line;
  std::unique_lock lock(cache_mu_);
  while (std::getline(in, line)) {
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) continue;
    std::string key = line.substr(0, tab);
    std::string val = line.substr(tab + 1);
    auto slash = val.find('/');
    Rat r;
    if (slash == std::string::npos)
      r = Rat(BigInt(val));
    else
      r = Rat(BigInt(val.substr(0, slash)), BigInt(val.substr(slash + 1)));
    cache_.emplace(std::move(key), std::move(r));
  }
}

void HallAlgebra::save_cache(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write constant cache: " + path);
  std::shared_lock lock(cache_mu_);
  for (auto& [k, v] : cache_) out << k << '\t' << rat_str(v) << '\n';
}

}  // namespace exthall
