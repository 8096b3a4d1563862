#include "exthall/graded.hpp"

#include "exthall/counting.hpp"
#include "exthall/errors.hpp"

#include <mutex>
#include <algorithm>
#include <sstream>

namespace exthall {

void GradedObject::add(int n, int d) {
  if (d == 0) return;
  int v = at(n) + d;
  if (v == 0)
    dims.erase(n);
  else
    dims[n] = v;
}

int GradedObject::total() const {
  int t = 0;
  for (auto& [n, d] : dims) t += d;
  return t;
}

int GradedObject::lo() const { return dims.empty() ? 0 : dims.begin()->first; }
int GradedObject::hi() const { return dims.empty() ? 0 : dims.rbegin()->first; }

GradedObject GradedObject::shift(int j) const {
  GradedObject r;
  for (auto& [n, d] : dims) r.dims[n - j] = d;
  return r;
}

GradedObject GradedObject::dsum(const GradedObject& o) const {
  GradedObject r = *this;
  for (auto& [n, d] : o.dims) r.add(n, d);
  return r;
}

void RankProfile::set(int n, int r) {
  if (r == 0)
    ranks.erase(n);
  else
    ranks[n] = r;
}

GradedBackend::GradedBackend(int p, int lo, int hi, bool interval, std::uint64_t budget)
    : p_(p), lo_(lo), hi_(hi), interval_(interval), budget_(budget) {
  FieldSpec check(p);
  if (lo > hi) throw ParseError("empty degree window");
  std::ostringstream os;
  os << (interval_ ? "interval" : "graded") << ":@" << p_ << ",window=" << lo_ << ".." << hi_;
  id_ = os.str();
  caps_.right_hom_finite = true;
  caps_.left_hom_finite = !interval_;
  caps_.has_neg_ext = !interval_;
  caps_.exact_case = false;
  caps_.triangulated_case = !interval_;
}

std::string GradedBackend::label_of(const GradedObject& o) const {
  std::ostringstream os;
  os << (interval_ ? "interval" : "graded") << "@" << p_;
  if (interval_) os << "(" << lo_ << ".." << hi_ << ")";
  if (o.is_zero()) {
    os << ":0";
    return os.str();
  }
  os << ":w=" << o.lo() << ".." << o.hi() << ":[";
  for (int n = o.lo(); n <= o.hi(); ++n) {
    if (n > o.lo()) os << ",";
    os << o.at(n);
  }
  os << "]";
  return os.str();
}

std::string GradedBackend::display_of(const GradedObject& o) const {
  if (o.is_zero()) return "0";
  std::string s;
  for (auto& [n, d] : o.dims) {
    if (!s.empty()) s += "+";
    s += "k{" + std::to_string(n) + "}";
    if (d > 1) s += "^" + std::to_string(d);
  }
  return s;
}

IsoClass GradedBackend::class_of(const GradedObject& o) const {
  IsoClass c;
  c.backend = id_;
  c.label = label_of(o);
  c.display = display_of(o);
  {
    std::unique_lock lock(mu_);
    registry_.emplace(c.label, o);
  }
  return c;
}

GradedObject GradedBackend::object_of(const IsoClass& c) const {
  {
    std::shared_lock lock(mu_);
    auto it = registry_.find(c.label);
    if (it != registry_.end()) return it->second;
  }
  return object_of(parse_object(c.label));
}

IsoClass GradedBackend::zero() const { return class_of(GradedObject{}); }

std::vector<IsoClass> GradedBackend::classes_up_to(const UniverseBounds& bounds) const {
  int width = hi_ - lo_ + 1;
  int cap = bounds.per_degree;
  BigInt total = ipow(cap + 1, width);
  if (total > budget_)
    throw BudgetError("universe of " + total.str() + " classes exceeds budget");
  std::vector<IsoClass> out;
  std::vector<int> d(width, 0);
  while (true) {
    GradedObject o;
    for (int i = 0; i < width; ++i)
      if (d[i] > 0) o.dims[lo_ + i] = d[i];
    out.push_back(class_of(o));
    int k = 0;
    while (k < width) {
      if (++d[k] <= cap) break;
      d[k] = 0;
      ++k;
    }
    if (k == width) break;
  }
  std::sort(out.begin(), out.end(), [this](const IsoClass& a, const IsoClass& b) {
    GradedObject oa = object_of(a), ob = object_of(b);
    if (oa.total() != ob.total()) return oa.total() < ob.total();
    return a.label < b.label;
  });
  return out;
}

long GradedBackend::hom_dim(const IsoClass& x, const IsoClass& y) const {
  GradedObject ox = object_of(x), oy = object_of(y);
  long s = 0;
  for (auto& [n, d] : ox.dims) s += static_cast<long>(d) * oy.at(n);
  return s;
}

long GradedBackend::ext_dim(int i, const IsoClass& x, const IsoClass& y) const {
  if (i < 1) throw std::invalid_argument("ext_dim needs i >= 1");
  GradedObject ox = object_of(x), oy = object_of(y);
  long s = 0;
  for (auto& [n, d] : ox.dims) s += static_cast<long>(d) * oy.at(n + i);
  return s;
}

long GradedBackend::neg_ext_dim(NegVariant, int i, const IsoClass& x, const IsoClass& y) const {
  if (!caps_.has_neg_ext)
    throw CapabilityError("backend " + id_ + " does not expose negative extensions");
  if (i < 1) throw std::invalid_argument("neg_ext_dim needs i >= 1");
  // both variants agree in this model by construction
  GradedObject ox = object_of(x), oy = object_of(y);
  long s = 0;
  for (auto& [n, d] : ox.dims) s += static_cast<long>(d) * oy.at(n - i);
  return s;
}

std::pair<int, int> GradedBackend::ext_degree_bounds(const IsoClass& x, const IsoClass& y) const {
  GradedObject ox = object_of(x), oy = object_of(y);
  if (ox.is_zero() || oy.is_zero()) return {0, 0};
  int pos = oy.hi() - ox.lo();
  int neg = ox.hi() - oy.lo();
  return {std::max(0, pos), std::max(0, neg)};
}

BigInt GradedBackend::aut_order(const IsoClass& x) const {
  GradedObject o = object_of(x);
  BigInt a = 1;
  for (auto& [n, d] : o.dims) a *= gl_order(d, p_);
  return a;
}

IsoClass GradedBackend::dsum(const IsoClass& x, const IsoClass& y) const {
  return class_of(object_of(x).dsum(object_of(y)));
}

GradedObject GradedBackend::cone_dims(const GradedObject& x, const GradedObject& l,
                                      const RankProfile& r) const {
  GradedObject c;
  for (auto& [n, d] : l.dims) c.add(n, d - r.at(n));
  for (auto& [n, d] : x.dims) c.add(n - 1, d - r.at(n));
  return c;
}

GradedObject GradedBackend::cocone_dims(const GradedObject& l, const GradedObject& y,
                                        const RankProfile& r) const {
  GradedObject c;
  for (auto& [n, d] : l.dims) c.add(n, d - r.at(n));
  for (auto& [n, d] : y.dims) c.add(n + 1, d - r.at(n));
  return c;
}

GradedObject GradedBackend::middle_dims(const GradedObject& y, const GradedObject& x,
                                        const RankProfile& s) const {
  GradedObject m;
  for (auto& [n, d] : x.dims) m.add(n, d);
  for (auto& [n, d] : y.dims) m.add(n, d);
  for (auto& [n, r] : s.ranks) {
    m.add(n, -r);
    m.add(n + 1, -r);
  }
  return m;
}

namespace {

// iterate rank profiles 0 <= r_n <= cap_n over the listed degrees
void for_each_profile(const std::vector<std::pair<int, int>>& caps,
                      const std::function<void(const RankProfile&)>& fn) {
  std::vector<int> v(caps.size(), 0);
  while (true) {
    RankProfile r;
    for (std::size_t i = 0; i < caps.size(); ++i)
      if (v[i] > 0) r.ranks[caps[i].first] = v[i];
    fn(r);
    std::size_t k = 0;
    while (k < caps.size()) {
      if (++v[k] <= caps[k].second) break;
      v[k] = 0;
      ++k;
    }
    if (k == caps.size()) break;
  }
}

}  // namespace

BigInt GradedBackend::inflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                                      CountRoute) const {
  GradedObject ox = object_of(x), ol = object_of(l), oy = object_of(y);
  // morphisms f: X -> L grouped by rank profile; f is an inflation with cone Y
  // exactly when the cone dimensions match Y
  std::vector<std::pair<int, int>> caps;
  for (auto& [n, d] : ox.dims) {
    int c = std::min(d, ol.at(n));
    if (c > 0) caps.emplace_back(n, c);
  }
  BigInt total = 0;
  for_each_profile(caps, [&](const RankProfile& r) {
    if (!(cone_dims(ox, ol, r) == oy)) return;
    BigInt ways = 1;
    // count morphisms with this profile degree by degree
    GradedObject support = ox.dsum(ol);
    for (auto& [n, unused] : support.dims) {
      (void)unused;
      int xd = ox.at(n), ld = ol.at(n);
      if (xd == 0 || ld == 0) continue;
      ways *= count_rank_matrices(ld, xd, r.at(n), p_);
    }
    total += ways;
  });
  return total;
}

BigInt GradedBackend::deflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                                      CountRoute) const {
  GradedObject ox = object_of(x), ol = object_of(l), oy = object_of(y);
  std::vector<std::pair<int, int>> caps;
  for (auto& [n, d] : ol.dims) {
    int c = std::min(d, oy.at(n));
    if (c > 0) caps.emplace_back(n, c);
  }
  BigInt total = 0;
  for_each_profile(caps, [&](const RankProfile& r) {
    if (!(cocone_dims(ol, oy, r) == ox)) return;
    BigInt ways = 1;
    GradedObject support = ol.dsum(oy);
    for (auto& [n, unused] : support.dims) {
      (void)unused;
      int ld = ol.at(n), yd = oy.at(n);
      if (ld == 0 || yd == 0) continue;
      ways *= count_rank_matrices(yd, ld, r.at(n), p_);
    }
    total += ways;
  });
  return total;
}

BigInt GradedBackend::extension_count(const IsoClass& y, const IsoClass& x, const IsoClass& l) const {
  GradedObject oy = object_of(y), ox = object_of(x), ol = object_of(l);
  // classes in E(Y, X) are degreewise maps Y_n -> X_{n+1}
  std::vector<std::pair<int, int>> caps;
  for (auto& [n, d] : oy.dims) {
    int c = std::min(d, ox.at(n + 1));
    if (c > 0) caps.emplace_back(n, c);
  }
  BigInt total = 0;
  for_each_profile(caps, [&](const RankProfile& s) {
    if (!(middle_dims(oy, ox, s) == ol)) return;
    BigInt ways = 1;
    for (auto& [n, d] : oy.dims) {
      int xd = ox.at(n + 1);
      if (xd == 0) continue;
      ways *= count_rank_matrices(xd, d, s.at(n), p_);
    }
    total += ways;
  });
  return total;
}

std::vector<IsoClass> GradedBackend::middle_candidates(const IsoClass& x, const IsoClass& y) const {
  GradedObject ox = object_of(x), oy = object_of(y);
  std::vector<std::pair<int, int>> caps;
  for (auto& [n, d] : oy.dims) {
    int c = std::min(d, ox.at(n + 1));
    if (c > 0) caps.emplace_back(n, c);
  }
  std::vector<IsoClass> out;
  for_each_profile(caps, [&](const RankProfile& s) {
    IsoClass c = class_of(middle_dims(oy, ox, s));
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::string GradedBackend::image_string(const IsoClass& x) const {
  GradedObject o = object_of(x);
  if (o.is_zero()) return "[]";
  std::string s = "[";
  bool first = true;
  for (auto& [n, d] : o.dims) {
    if (!first) s += ",";
    s += std::to_string(n) + ":" + std::to_string(d);
    first = false;
  }
  return s + "]";
}

IsoClass GradedBackend::parse_object(const std::string& name) const {
  std::string s = name;
  // full label form
  auto wpos = s.find(":w=");
  if (s.size() > 2 && (s.rfind("graded@", 0) == 0 || s.rfind("interval@", 0) == 0)) {
    if (s.back() == '0' && wpos == std::string::npos) return class_of(GradedObject{});
    if (wpos == std::string::npos) throw ParseError("bad graded label: " + name);
    std::string rest = s.substr(wpos + 3);
    auto colon = rest.find(':');
    std::string range = rest.substr(0, colon);
    auto dots = range.find("..");
    int lo = std::stoi(range.substr(0, dots));
    std::string body = rest.substr(colon + 1);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw ParseError("bad graded label: " + name);
    body = body.substr(1, body.size() - 2);
    GradedObject o;
    int n = lo;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int d = std::stoi(tok);
      if (d > 0) o.dims[n] = d;
      ++n;
    }
    return class_of(o);
  }
  // display form: terms k{n} or k{n}^m joined by '+', or "0"
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "0") return class_of(GradedObject{});
  GradedObject o;
  std::stringstream ss(t);
  std::string term;
  while (std::getline(ss, term, '+')) {
    if (term.rfind("k{", 0) != 0) throw ParseError("bad graded object term: " + term);
    auto close = term.find('}');
    if (close == std::string::npos) throw ParseError("bad graded object term: " + term);
    int n = std::stoi(term.substr(2, close - 2));
    int mult = 1;
    if (close + 1 < term.size()) {
      if (term[close + 1] != '^') throw ParseError("bad graded object term: " + term);
      mult = std::stoi(term.substr(close + 2));
    }
    if (mult <= 0) throw ParseError("bad multiplicity in: " + term);
    o.add(n, mult);
  }
  return class_of(o);
}

std::vector<IsoClass> GradedBackend::summands(const IsoClass& x) const {
  GradedObject o = object_of(x);
  std::vector<IsoClass> out;
  for (auto& [n, d] : o.dims)
    for (int i = 0; i < d; ++i) {
      GradedObject a;
      a.dims[n] = 1;
      out.push_back(class_of(a));
    }
  return out;
}

}  // namespace exthall
