#include "exthall/quiver.hpp"

#include "exthall/counting.hpp"
#include "exthall/errors.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace exthall {

// ---------------------------------------------------------------------------
// QuiverSpec / QuiverRep
// ---------------------------------------------------------------------------

void QuiverSpec::validate() const {
  if (vertices < 1) throw ParseError("quiver needs at least one vertex");
  for (auto& [s, t] : arrows) {
    if (s < 0 || s >= vertices || t < 0 || t >= vertices)
      throw ParseError("arrow endpoint out of range");
    if (s == t) throw ParseError("quiver must be acyclic: loop at vertex " + std::to_string(s + 1));
  }
  // Kahn's algorithm
  std::vector<int> indeg(vertices, 0);
  for (auto& [s, t] : arrows) ++indeg[t];
  std::vector<int> queue;
  for (int v = 0; v < vertices; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  int seen = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++seen;
    for (auto& [s, t] : arrows)
      if (s == v && --indeg[t] == 0) queue.push_back(t);
  }
  if (seen != vertices) throw ParseError("quiver must be acyclic");
}

QuiverSpec QuiverSpec::linear(int n) {
  QuiverSpec q;
  q.name = "A" + std::to_string(n);
  q.vertices = n;
  for (int i = 0; i + 1 < n; ++i) q.arrows.emplace_back(i, i + 1);
  return q;
}

QuiverSpec QuiverSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open quiver file: " + path);
  QuiverSpec q;
  q.name = "file=" + path;
  if (!(in >> q.vertices)) throw ParseError("quiver file must start with the vertex count");
  int s, t;
  while (in >> s >> t) q.arrows.emplace_back(s - 1, t - 1);  // file is 1-based
  q.validate();
  return q;
}

int QuiverRep::total() const { return std::accumulate(dims.begin(), dims.end(), 0); }

std::string QuiverRep::encode() const {
  std::string s;
  for (std::size_t v = 0; v < dims.size(); ++v) {
    if (v) s += ',';
    s += std::to_string(dims[v]);
  }
  s += '|';
  for (std::size_t a = 0; a < maps.size(); ++a) {
    if (a) s += ';';
    s += maps[a].encode();
  }
  return s;
}

QuiverRep QuiverRep::zero_rep(const QuiverSpec& q, const std::vector<int>& dims, int p) {
  QuiverRep r;
  r.dims = dims;
  for (auto& [s, t] : q.arrows) r.maps.emplace_back(dims[t], dims[s], p);
  return r;
}

namespace {

QuiverRep decode_rep(const QuiverSpec& spec, int p, const std::string& payload) {
  auto bar = payload.find('|');
  if (bar == std::string::npos) throw ParseError("bad representation payload: " + payload);
  QuiverRep r;
  {
    std::stringstream ss(payload.substr(0, bar));
    std::string tok;
    while (std::getline(ss, tok, ',')) r.dims.push_back(std::stoi(tok));
  }
  if (static_cast<int>(r.dims.size()) != spec.vertices)
    throw ParseError("payload has wrong vertex count: " + payload);
  std::string rest = payload.substr(bar + 1);
  std::vector<std::string> toks;
  if (!rest.empty()) {
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ';')) toks.push_back(tok);
  }
  if (toks.size() != spec.arrows.size()) throw ParseError("payload has wrong arrow count: " + payload);
  for (std::size_t a = 0; a < toks.size(); ++a) {
    auto x = toks[a].find('x');
    auto colon = toks[a].find(':');
    int rows = std::stoi(toks[a].substr(0, x));
    int cols = std::stoi(toks[a].substr(x + 1, colon - x - 1));
    if (rows != r.dims[spec.arrows[a].second] || cols != r.dims[spec.arrows[a].first])
      throw ParseError("payload map shape mismatch: " + payload);
    FFMatrix m(rows, cols, p);
    std::string body = toks[a].substr(colon + 1);
    if (static_cast<int>(body.size()) != rows * cols)
      throw ParseError("payload map body mismatch: " + payload);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.set(i, j, body[i * cols + j] - '0');
    r.maps.push_back(std::move(m));
  }
  return r;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// QuiverBackend
// ---------------------------------------------------------------------------

QuiverBackend::QuiverBackend(QuiverSpec spec, int p, std::uint64_t budget)
    : spec_(std::move(spec)), p_(p), budget_(budget) {
  FieldSpec check(p);
  spec_.validate();
  id_ = "quiver:" + spec_.name + "@" + std::to_string(p_);
  caps_.right_hom_finite = true;
  caps_.left_hom_finite = true;
  caps_.has_neg_ext = true;  // all negative extension groups vanish
  caps_.exact_case = true;
  caps_.triangulated_case = false;
  // seed the catalog with everything cheap up to total dim = #vertices;
  // for the shipped quivers this already covers every indecomposable
  std::vector<int> seed(spec_.vertices, spec_.vertices);
  grow_catalog(seed);
}

long QuiverBackend::cells(const std::vector<int>& d) const {
  long c = 0;
  for (auto& [s, t] : spec_.arrows) c += static_cast<long>(d[s]) * d[t];
  return c;
}

long QuiverBackend::euler_form(const std::vector<int>& d, const std::vector<int>& e) const {
  long v = 0;
  for (int i = 0; i < spec_.vertices; ++i) v += static_cast<long>(d[i]) * e[i];
  for (auto& [s, t] : spec_.arrows) v -= static_cast<long>(d[s]) * e[t];
  return v;
}

LinearSystem::Solution QuiverBackend::hom_space(const QuiverRep& x, const QuiverRep& y) const {
  LinearSystem sys(p_);
  std::vector<int> blocks(spec_.vertices);
  for (int v = 0; v < spec_.vertices; ++v) blocks[v] = sys.add_unknown(y.dims[v], x.dims[v]);
  for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
    auto [s, t] = spec_.arrows[a];
    // f_t * X_a - Y_a * f_s = 0
    sys.add_equation({{blocks[t], FFMatrix::identity(y.dims[t], p_), x.maps[a], false},
                      {blocks[s], y.maps[a], FFMatrix::identity(x.dims[s], p_), true}},
                     FFMatrix(y.dims[t], x.dims[s], p_));
  }
  return sys.solve();
}

long QuiverBackend::hom_dim_reps(const QuiverRep& x, const QuiverRep& y) const {
  return hom_space(x, y).nullity();
}

QuiverRep QuiverBackend::twisted_middle(const QuiverRep& x, const QuiverRep& y,
                                        const std::vector<FFMatrix>& phi) const {
  QuiverRep m;
  m.dims.resize(spec_.vertices);
  for (int v = 0; v < spec_.vertices; ++v) m.dims[v] = x.dims[v] + y.dims[v];
  for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
    auto [s, t] = spec_.arrows[a];
    FFMatrix zero(y.dims[t], x.dims[s], p_);
    m.maps.push_back(block2x2(x.maps[a], phi[a], zero, y.maps[a]));
  }
  return m;
}

QuiverRep QuiverBackend::kernel_rep(const QuiverRep& l, const RepMorphism& g) const {
  std::vector<FFMatrix> bases(spec_.vertices);
  QuiverRep k;
  k.dims.resize(spec_.vertices);
  for (int v = 0; v < spec_.vertices; ++v) {
    bases[v] = g[v].kernel();
    k.dims[v] = bases[v].cols();
  }
  for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
    auto [s, t] = spec_.arrows[a];
    FFMatrix m(k.dims[t], k.dims[s], p_);
    FFMatrix image = l.maps[a] * bases[s];
    for (int j = 0; j < k.dims[s]; ++j) {
      auto coords = bases[t].solve(image.column(j));
      if (!coords) throw std::logic_error("kernel is not invariant under the arrow maps");
      m.set_column(j, *coords);
    }
    k.maps.push_back(std::move(m));
  }
  return k;
}

QuiverRep QuiverBackend::cokernel_rep(const QuiverRep& l, const QuiverRep& x,
                                      const RepMorphism& f) const {
  (void)x;
  QuiverRep q;
  q.dims.resize(spec_.vertices);
  std::vector<FFMatrix> proj(spec_.vertices);   // L_v -> coker_v
  std::vector<FFMatrix> section(spec_.vertices);  // coker_v -> L_v
  for (int v = 0; v < spec_.vertices; ++v) {
    FFMatrix b = f[v].column_basis();
    FFMatrix c = FFMatrix::complement(b);
    q.dims[v] = c.cols();
    FFMatrix inv = b.hstack(c).inverse();
    FFMatrix pi(c.cols(), l.dims[v], p_);
    for (int i = 0; i < c.cols(); ++i)
      for (int j = 0; j < l.dims[v]; ++j) pi.set(i, j, inv.at(b.cols() + i, j));
    proj[v] = std::move(pi);
    section[v] = std::move(c);
  }
  for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
    auto [s, t] = spec_.arrows[a];
    q.maps.push_back(proj[t] * (l.maps[a] * section[s]));
  }
  return q;
}

std::vector<RepMorphism> QuiverBackend::enumerate_aut(const QuiverRep& r) const {
  auto sol = hom_space(r, r);
  std::vector<RepMorphism> auts;
  sol.for_each(budget_, [&](const std::vector<FFMatrix>& m) {
    for (const auto& block : m)
      if (!block.invertible()) return;
    auts.push_back(m);
  });
  return auts;
}

std::vector<QuiverRep> QuiverBackend::indec_reps_within(const std::vector<int>& bound) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  grow_catalog(bound);
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(catalog_.size()); ++i) {
    bool fits = true;
    for (int v = 0; v < spec_.vertices; ++v)
      if (catalog_[i].rep.dims[v] > bound[v]) fits = false;
    if (fits) order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return catalog_[a].payload < catalog_[b].payload; });
  std::vector<QuiverRep> out;
  for (int i : order) out.push_back(catalog_[i].rep);
  return out;
}

// ---------------------------------------------------------------------------
// catalog: discovery of indecomposables, canonical forms
// ---------------------------------------------------------------------------

int QuiverBackend::add_indec(const QuiverRep& canonical) const {
  std::string payload = canonical.encode();
  auto it = catalog_by_payload_.find(payload);
  if (it != catalog_by_payload_.end()) return it->second;

  Indec ind;
  ind.rep = canonical;
  ind.payload = payload;
  ind.total = canonical.total();
  ind.end_dim = hom_space(canonical, canonical).nullity();
  BigInt aut = 0;
  {
    auto sol = hom_space(canonical, canonical);
    sol.for_each(budget_, [&](const std::vector<FFMatrix>& m) {
      for (const auto& b : m)
        if (!b.invertible()) return;
      aut += 1;
    });
  }
  ind.aut = aut;
  // |End| = |rad| + |units| and End/rad is a field for an indecomposable
  BigInt rad = ipow(p_, ind.end_dim) - aut;
  int res = 0;
  if (rad == 0) {
    res = static_cast<int>(ind.end_dim);
  } else {
    BigInt quot = ipow(p_, ind.end_dim) / rad;
    BigInt t = quot;
    while (t > 1) {
      if (t % p_ != 0) throw std::logic_error("endomorphism ring of indecomposable is not local");
      t /= p_;
      ++res;
    }
    if (rad * quot != ipow(p_, ind.end_dim))
      throw std::logic_error("endomorphism ring of indecomposable is not local");
  }
  ind.residue_deg = res;

  // display name: curated atoms for the shipped quivers, generic otherwise
  std::string name;
  if (spec_.name == "A1" && canonical.dims == std::vector<int>{1}) name = "k";
  if (spec_.name == "A2") {
    if (canonical.dims == std::vector<int>{1, 0}) name = "S1";
    if (canonical.dims == std::vector<int>{0, 1}) name = "S2";
    if (canonical.dims == std::vector<int>{1, 1}) name = "P1";
  }
  if (spec_.name == "A3") {
    if (canonical.dims == std::vector<int>{1, 0, 0}) name = "S1";
    if (canonical.dims == std::vector<int>{0, 1, 0}) name = "S2";
    if (canonical.dims == std::vector<int>{0, 0, 1}) name = "S3";
    if (canonical.dims == std::vector<int>{1, 1, 0}) name = "I2";
    if (canonical.dims == std::vector<int>{0, 1, 1}) name = "P2";
    if (canonical.dims == std::vector<int>{1, 1, 1}) name = "P1";
  }
  if (name.empty()) {
    name = "X[";
    for (std::size_t v = 0; v < canonical.dims.size(); ++v) {
      if (v) name += ",";
      name += std::to_string(canonical.dims[v]);
    }
    name += "]";
    int clash = 0;
    for (const auto& other : catalog_)
      if (other.display.rfind(name, 0) == 0) ++clash;
    if (clash > 0) name += "#" + std::to_string(clash + 1);
  }
  ind.display = name;

  catalog_.push_back(std::move(ind));
  int idx = static_cast<int>(catalog_.size()) - 1;
  catalog_by_payload_[payload] = idx;
  return idx;
}

void QuiverBackend::discover_dims(const std::vector<int>& d) const {
  const std::uint64_t disc_budget = std::min<std::uint64_t>(budget_, 1u << 18);
  BigInt space = ipow(p_, cells(d));
  if (space > disc_budget)
    throw BudgetError("indecomposable discovery for a dimension vector with " + space.str() +
                      " representations exceeds the enumeration budget");

  // enumerate every representation with this dimension vector
  std::vector<QuiverRep> reps;
  std::unordered_map<std::string, int> index;
  {
    QuiverRep base = QuiverRep::zero_rep(spec_, d, p_);
    std::vector<std::pair<std::size_t, std::pair<int, int>>> cell_list;
    for (std::size_t a = 0; a < spec_.arrows.size(); ++a)
      for (int i = 0; i < base.maps[a].rows(); ++i)
        for (int j = 0; j < base.maps[a].cols(); ++j) cell_list.push_back({a, {i, j}});
    std::vector<int> vals(cell_list.size(), 0);
    while (true) {
      reps.push_back(base);
      index[base.encode()] = static_cast<int>(reps.size()) - 1;
      std::size_t k = 0;
      while (k < cell_list.size()) {
        auto [a, ij] = cell_list[k];
        if (++vals[k] < p_) {
          base.maps[a].set(ij.first, ij.second, vals[k]);
          break;
        }
        vals[k] = 0;
        base.maps[a].set(ij.first, ij.second, 0);
        ++k;
      }
      if (k == cell_list.size()) break;
    }
  }

  // partition into isomorphism classes: close under base-change generators
  UnionFind uf(reps.size());
  int root = primitive_root(p_);
  for (int v = 0; v < spec_.vertices; ++v) {
    int n = d[v];
    if (n == 0) continue;
    std::vector<FFMatrix> gens;
    if (p_ > 2) {
      FFMatrix g = FFMatrix::identity(n, p_);
      g.set(0, 0, root);
      gens.push_back(g);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        FFMatrix g = FFMatrix::identity(n, p_);
        g.set(i, j, 1);
        gens.push_back(g);
      }
    for (const FFMatrix& g : gens) {
      FFMatrix ginv = g.inverse();
      for (std::size_t i = 0; i < reps.size(); ++i) {
        QuiverRep moved = reps[i];
        for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
          auto [s, t] = spec_.arrows[a];
          if (t == v) moved.maps[a] = g * moved.maps[a];
          if (s == v) moved.maps[a] = moved.maps[a] * ginv;
        }
        uf.unite(static_cast<int>(i), index.at(moved.encode()));
      }
    }
  }

  // canonical representative of each orbit = lexicographically least encoding
  std::map<int, int> best;  // root -> rep index with minimal encoding
  for (std::size_t i = 0; i < reps.size(); ++i) {
    int r = uf.find(static_cast<int>(i));
    auto it = best.find(r);
    if (it == best.end() || reps[i].encode() < reps[it->second].encode())
      best[r] = static_cast<int>(i);
  }
  std::vector<int> order;
  for (auto& [r, i] : best) order.push_back(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return reps[a].encode() < reps[b].encode(); });

  for (int i : order) {
    // decomposable classes peel completely with the existing catalog because
    // every proper summand has smaller total dimension
    QuiverRep cur = reps[i];
    bool stuck = false;
    while (!cur.is_zero() && !stuck) {
      stuck = true;
      for (int idx = 0; idx < static_cast<int>(catalog_.size()); ++idx) {
        if (catalog_[idx].total > cur.total()) continue;
        QuiverRep comp;
        if (try_split(cur, catalog_[idx], &comp)) {
          cur = comp;
          stuck = false;
          break;
        }
      }
    }
    if (!cur.is_zero()) add_indec(reps[i]);
  }
  covered_.insert(d);
}

void QuiverBackend::grow_catalog(const std::vector<int>& target) const {
  // visit uncovered dimension vectors below the target in ascending total order
  std::vector<std::vector<int>> todo;
  std::vector<int> cur(spec_.vertices, 0);
  std::function<void(int)> walk = [&](int v) {
    if (v == spec_.vertices) {
      if (std::accumulate(cur.begin(), cur.end(), 0) > 0 && !covered_.count(cur)) todo.push_back(cur);
      return;
    }
    for (int d = 0; d <= target[v]; ++d) {
      cur[v] = d;
      walk(v + 1);
    }
    cur[v] = 0;
  };
  walk(0);
  std::sort(todo.begin(), todo.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    int ta = std::accumulate(a.begin(), a.end(), 0);
    int tb = std::accumulate(b.begin(), b.end(), 0);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  const std::uint64_t disc_budget = std::min<std::uint64_t>(budget_, 1u << 18);
  for (const auto& d : todo) {
    if (ipow(p_, cells(d)) > disc_budget) continue;  // leave uncovered
    discover_dims(d);
  }
}

bool QuiverBackend::try_split(const QuiverRep& r, const Indec& ind, QuiverRep* complement) const {
  for (int v = 0; v < spec_.vertices; ++v)
    if (ind.rep.dims[v] > r.dims[v]) return false;
  auto hom = hom_space(ind.rep, r);
  if (hom.nullity() == 0 && ind.rep.total() > 0) return false;

  bool found = false;
  RepMorphism section, retraction;
  hom.for_each(budget_, [&](const std::vector<FFMatrix>& s) {
    if (found) return;
    for (int v = 0; v < spec_.vertices; ++v)
      if (s[v].rank() != ind.rep.dims[v]) return;  // need a split mono
    // solve for a retraction t with t s = id
    LinearSystem sys(p_);
    std::vector<int> blocks(spec_.vertices);
    for (int v = 0; v < spec_.vertices; ++v)
      blocks[v] = sys.add_unknown(ind.rep.dims[v], r.dims[v]);
    for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
      auto [sv, tv] = spec_.arrows[a];
      sys.add_equation({{blocks[tv], FFMatrix::identity(ind.rep.dims[tv], p_), r.maps[a], false},
                        {blocks[sv], ind.rep.maps[a], FFMatrix::identity(r.dims[sv], p_), true}},
                       FFMatrix(ind.rep.dims[tv], r.dims[sv], p_));
    }
    for (int v = 0; v < spec_.vertices; ++v)
      sys.add_equation({{blocks[v], FFMatrix::identity(ind.rep.dims[v], p_), s[v], false}},
                       FFMatrix::identity(ind.rep.dims[v], p_));
    auto sol = sys.solve();
    if (!sol.consistent) return;
    found = true;
    section = s;
    retraction = sol.particular;
  });
  if (!found) return false;
  *complement = kernel_rep(r, retraction);
  return true;
}

std::map<int, int> QuiverBackend::peel(const QuiverRep& r) const {
  std::map<int, int> mult;
  QuiverRep cur = r;
  while (!cur.is_zero()) {
    bool split = false;
    // prefer large summands: fewer peeling rounds
    std::vector<int> order(catalog_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return catalog_[a].total > catalog_[b].total; });
    for (int idx : order) {
      if (catalog_[idx].total > cur.total()) continue;
      QuiverRep comp;
      if (try_split(cur, catalog_[idx], &comp)) {
        ++mult[idx];
        cur = comp;
        split = true;
        break;
      }
    }
    if (!split) {
      std::size_t before = catalog_.size();
      grow_catalog(cur.dims);
      if (catalog_.size() == before)
        throw BudgetError("canonical form needs indecomposable discovery beyond the budget");
    }
  }
  return mult;
}

IsoClass QuiverBackend::make_class(const ClassData& cd) const {
  return IsoClass{id_, cd.label, cd.display};
}

const QuiverBackend::ClassData& QuiverBackend::class_from_mult(const std::map<int, int>& mult) const {
  // label: '+'-joined sorted indecomposable payloads with multiplicities
  std::vector<std::pair<std::string, int>> parts;
  for (auto& [idx, m] : mult) parts.emplace_back(catalog_[idx].payload, m);
  std::sort(parts.begin(), parts.end());
  std::string label = id_ + ":";
  if (parts.empty()) label += "0";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) label += "+";
    label += parts[i].first;
    if (parts[i].second > 1) label += "^" + std::to_string(parts[i].second);
  }
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    auto it = registry_.find(label);
    if (it != registry_.end()) return it->second;
  }

  ClassData cd;
  cd.label = label;
  cd.mult = mult;
  cd.dims.assign(spec_.vertices, 0);
  long res_sq = 0;
  BigInt aut = 1;
  long end_dim = 0;
  for (auto& [i, mi] : mult) {
    for (int v = 0; v < spec_.vertices; ++v) cd.dims[v] += mi * catalog_[i].rep.dims[v];
    for (auto& [j, mj] : mult) end_dim += static_cast<long>(mi) * mj * indec_hom(i, j);
    res_sq += static_cast<long>(catalog_[i].residue_deg) * mi * mi;
    aut *= gl_order(mi, ipow(p_, catalog_[i].residue_deg));
  }
  cd.end_dim = end_dim;
  assert(end_dim >= res_sq);
  cd.aut = aut * ipow(p_, end_dim - res_sq);

  // canonical representative: block diagonal in sorted payload order
  std::vector<int> expanded;
  {
    std::vector<std::pair<std::string, int>> by_payload;
    for (auto& [i, mi] : mult)
      for (int c = 0; c < mi; ++c) by_payload.emplace_back(catalog_[i].payload, i);
    std::sort(by_payload.begin(), by_payload.end());
    for (auto& [pl, i] : by_payload) expanded.push_back(i);
  }
  QuiverRep rep = QuiverRep::zero_rep(spec_, cd.dims, p_);
  std::vector<int> offset(spec_.vertices, 0);
  for (int i : expanded) {
    const QuiverRep& block = catalog_[i].rep;
    for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
      auto [s, t] = spec_.arrows[a];
      for (int r = 0; r < block.dims[t]; ++r)
        for (int c = 0; c < block.dims[s]; ++c)
          rep.maps[a].set(offset[t] + r, offset[s] + c, block.maps[a].at(r, c));
    }
    for (int v = 0; v < spec_.vertices; ++v) offset[v] += block.dims[v];
  }
  cd.rep = std::move(rep);

  // display: small summands first, earlier vertices first
  if (mult.empty()) {
    cd.display = "0";
  } else {
    std::vector<std::pair<std::tuple<int, std::vector<int>, std::string>, int>> terms;
    for (auto& [i, mi] : mult) {
      std::vector<int> neg;
      for (int dv : catalog_[i].rep.dims) neg.push_back(-dv);
      terms.push_back({{catalog_[i].total, neg, catalog_[i].payload}, i});
    }
    std::sort(terms.begin(), terms.end());
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (k) cd.display += "+";
      cd.display += catalog_[terms[k].second].display;
      int m = mult.at(terms[k].second);
      if (m > 1) cd.display += "^" + std::to_string(m);
    }
  }

  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  auto [it, inserted] = registry_.emplace(label, std::move(cd));
  return it->second;
}

IsoClass QuiverBackend::class_of(const QuiverRep& r) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::string enc = r.encode();
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    auto it = canon_memo_.find(enc);
    if (it != canon_memo_.end()) return make_class(registry_.at(it->second));
  }
  auto mult = peel(r);
  const ClassData& cd = class_from_mult(mult);
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    canon_memo_[enc] = cd.label;
  }
  return make_class(cd);
}

const QuiverBackend::ClassData& QuiverBackend::data_of(const IsoClass& c) const {
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    auto it = registry_.find(c.label);
    if (it != registry_.end()) return it->second;
  }
  IsoClass parsed = parse_object(c.label);
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  return registry_.at(parsed.label);
}

QuiverRep QuiverBackend::rep_of(const IsoClass& c) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_); return data_of(c).rep; }

std::vector<int> QuiverBackend::dims_of(const IsoClass& c) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_); return data_of(c).dims; }

long QuiverBackend::indec_hom(int i, int j) const {
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    auto it = indec_hom_.find({i, j});
    if (it != indec_hom_.end()) return it->second;
  }
  long h = hom_space(catalog_[i].rep, catalog_[j].rep).nullity();
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  indec_hom_[{i, j}] = h;
  return h;
}

// ---------------------------------------------------------------------------
// Model interface
// ---------------------------------------------------------------------------

IsoClass QuiverBackend::zero() const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_); return make_class(class_from_mult({})); }

std::vector<IsoClass> QuiverBackend::classes_with_dims(const std::vector<int>& d) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    auto it = dims_classes_.find(d);
    if (it != dims_classes_.end()) {
      std::vector<IsoClass> out;
      for (const std::string& label : it->second) out.push_back(make_class(registry_.at(label)));
      return out;
    }
  }

  auto enumerate = [&]() {
    // multisets of catalog indecomposables with dimension vectors summing to d
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(catalog_.size()); ++i) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return catalog_[a].payload < catalog_[b].payload; });
    std::vector<const ClassData*> found;
    std::map<int, int> mult;
    std::vector<int> rest = d;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (std::accumulate(rest.begin(), rest.end(), 0) == 0) {
        found.push_back(&class_from_mult(mult));
        return;
      }
      if (k == order.size()) return;
      int idx = order[k];
      const auto& bd = catalog_[idx].rep.dims;
      int cap = 1 << 20;
      for (int v = 0; v < spec_.vertices; ++v)
        if (bd[v] > 0) cap = std::min(cap, rest[v] / bd[v]);
      for (int m = 0; m <= cap; ++m) {
        if (m > 0) {
          mult[idx] = m;
          for (int v = 0; v < spec_.vertices; ++v) rest[v] -= bd[v];
        }
        rec(k + 1);
      }
      if (cap > 0) {
        for (int v = 0; v < spec_.vertices; ++v) rest[v] += cap * bd[v];
        mult.erase(idx);
      }
    };
    rec(0);
    return found;
  };

  auto certify = [&](const std::vector<const ClassData*>& found) {
    // sum of orbit sizes must exhaust the whole representation space
    BigInt group = 1;
    for (int v = 0; v < spec_.vertices; ++v) group *= gl_order(d[v], p_);
    Rat sum = 0;
    for (const ClassData* cd : found) sum += Rat(group, cd->aut);
    return sum == Rat(ipow(p_, cells(d)));
  };

  auto found = enumerate();
  if (!certify(found)) {
    grow_catalog(d);
    found = enumerate();
    if (!certify(found))
      throw BudgetError("class enumeration for a dimension vector is not certifiable within budget");
  }

  std::vector<std::string> labels;
  for (const ClassData* cd : found) labels.push_back(cd->label);
  std::sort(labels.begin(), labels.end());
  std::vector<IsoClass> out;
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    dims_classes_[d] = labels;
    for (const std::string& label : labels) out.push_back(make_class(registry_.at(label)));
  }
  return out;
}

std::vector<IsoClass> QuiverBackend::classes_up_to(const UniverseBounds& bounds) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::vector<IsoClass> out;
  std::vector<int> cur(spec_.vertices, 0);
  std::function<void(int, int)> walk = [&](int v, int left) {
    if (v == spec_.vertices) {
      for (auto& c : classes_with_dims(cur)) out.push_back(c);
      return;
    }
    for (int dd = 0; dd <= left; ++dd) {
      cur[v] = dd;
      walk(v + 1, left - dd);
    }
    cur[v] = 0;
  };
  walk(0, bounds.max_total_dim);
  std::sort(out.begin(), out.end(), [&](const IsoClass& a, const IsoClass& b) {
    int ta = 0, tb = 0;
    for (int v : dims_of(a)) ta += v;
    for (int v : dims_of(b)) tb += v;
    if (ta != tb) return ta < tb;
    return a.label < b.label;
  });
  return out;
}

long QuiverBackend::hom_dim(const IsoClass& x, const IsoClass& y) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  const ClassData& dx = data_of(x);
  const ClassData& dy = data_of(y);
  long h = 0;
  for (auto& [i, mi] : dx.mult)
    for (auto& [j, mj] : dy.mult) h += static_cast<long>(mi) * mj * indec_hom(i, j);
  return h;
}

long QuiverBackend::ext_dim(int i, const IsoClass& x, const IsoClass& y) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  if (i < 1) throw std::invalid_argument("ext_dim needs i >= 1");
  if (i >= 2) return 0;  // hereditary
  long e = hom_dim(x, y) - euler_form(dims_of(x), dims_of(y));
  assert(e >= 0);
  return e;
}

long QuiverBackend::neg_ext_dim(NegVariant, int i, const IsoClass&, const IsoClass&) const {
  if (i < 1) throw std::invalid_argument("neg_ext_dim needs i >= 1");
  return 0;
}

std::pair<int, int> QuiverBackend::ext_degree_bounds(const IsoClass&, const IsoClass&) const {
  return {1, 0};
}

BigInt QuiverBackend::aut_order(const IsoClass& x) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_); return data_of(x).aut; }

IsoClass QuiverBackend::dsum(const IsoClass& x, const IsoClass& y) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::map<int, int> mult = data_of(x).mult;
  for (auto& [i, m] : data_of(y).mult) mult[i] += m;
  return make_class(class_from_mult(mult));
}

namespace {

std::vector<int> add_dims(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

BigInt QuiverBackend::count_by_subreps(const IsoClass& x, const IsoClass& l,
                                       const IsoClass& y) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::string key = x.label + "|" + l.label + "|" + y.label;
  {
    std::lock_guard<std::recursive_mutex> lock(reg_mu_);
    auto it = subrep_memo_.find(key);
    if (it != subrep_memo_.end()) return it->second;
  }
  const ClassData& dl = data_of(l);
  std::vector<int> xd = dims_of(x);
  BigInt space = 1;
  for (int v = 0; v < spec_.vertices; ++v) space *= gaussian_binomial(dl.dims[v], xd[v], p_);
  if (space > budget_)
    throw BudgetError("subobject enumeration of " + space.str() + " candidates exceeds budget");

  BigInt count = 0;
  std::vector<FFMatrix> bases(spec_.vertices);
  std::function<void(int)> rec = [&](int v) {
    if (v == spec_.vertices) {
      // invariance of the subspace tuple under the arrow maps
      RepMorphism incl = bases;
      for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
        auto [s, t] = spec_.arrows[a];
        FFMatrix pushed = dl.rep.maps[a] * bases[s];
        if (bases[t].hstack(pushed).rank() != xd[t]) return;
      }
      // abstract subrepresentation
      QuiverRep sub;
      sub.dims = xd;
      for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
        auto [s, t] = spec_.arrows[a];
        FFMatrix m(xd[t], xd[s], p_);
        FFMatrix pushed = dl.rep.maps[a] * bases[s];
        for (int j = 0; j < xd[s]; ++j) {
          auto coords = bases[t].solve(pushed.column(j));
          if (!coords) return;
          m.set_column(j, *coords);
        }
        sub.maps.push_back(std::move(m));
      }
      if (class_of(sub).label != x.label) return;
      if (class_of(cokernel_rep(dl.rep, sub, incl)).label != y.label) return;
      count += 1;
      return;
    }
    for_each_subspace(dl.dims[v], xd[v], p_, budget_, [&](const FFMatrix& b) {
      bases[v] = b;
      rec(v + 1);
    });
  };
  rec(0);

  subrep_memo_[key] = count;
  return count;
}

BigInt QuiverBackend::inflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                                      CountRoute route) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::vector<int> xd = dims_of(x), ld = dims_of(l), yd = dims_of(y);
  if (add_dims(xd, yd) != ld) return 0;
  if (route == CountRoute::Auto) {
    BigInt hom = ipow(p_, hom_dim(x, l));
    route = (hom <= std::min<std::uint64_t>(budget_, 1u << 16)) ? CountRoute::Elements
                                                                : CountRoute::Structure;
  }
  if (route == CountRoute::Structure) return count_by_subreps(x, l, y) * aut_order(x);

  const QuiverRep rx = rep_of(x), rl = rep_of(l);
  BigInt count = 0;
  hom_space(rx, rl).for_each(budget_, [&](const std::vector<FFMatrix>& f) {
    for (int v = 0; v < spec_.vertices; ++v)
      if (f[v].rank() != rx.dims[v]) return;  // monomorphism of representations
    if (class_of(cokernel_rep(rl, rx, f)).label == y.label) count += 1;
  });
  return count;
}

BigInt QuiverBackend::deflation_count(const IsoClass& x, const IsoClass& l, const IsoClass& y,
                                      CountRoute route) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::vector<int> xd = dims_of(x), ld = dims_of(l), yd = dims_of(y);
  if (add_dims(xd, yd) != ld) return 0;
  if (route == CountRoute::Auto) {
    BigInt hom = ipow(p_, hom_dim(l, y));
    route = (hom <= std::min<std::uint64_t>(budget_, 1u << 16)) ? CountRoute::Elements
                                                                : CountRoute::Structure;
  }
  if (route == CountRoute::Structure) return count_by_subreps(x, l, y) * aut_order(y);

  const QuiverRep rl = rep_of(l), ry = rep_of(y);
  BigInt count = 0;
  hom_space(rl, ry).for_each(budget_, [&](const std::vector<FFMatrix>& g) {
    for (int v = 0; v < spec_.vertices; ++v)
      if (g[v].rank() != ry.dims[v]) return;  // epimorphism of representations
    if (class_of(kernel_rep(rl, g)).label == x.label) count += 1;
  });
  return count;
}

BigInt QuiverBackend::extension_count(const IsoClass& y, const IsoClass& x,
                                      const IsoClass& l) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::vector<int> xd = dims_of(x), ld = dims_of(l), yd = dims_of(y);
  if (add_dims(xd, yd) != ld) return 0;

  // realize every cocycle as a twisted middle and count matches, then divide
  // by the coboundary space: |E(Y,X)_L| = #{phi : M(phi) = L} / |B| with
  // |B| = p^(sum_v y_v x_v - hom(Y, X))
  const QuiverRep rx = rep_of(x), ry = rep_of(y);
  long phi_cells = 0;
  for (auto& [s, t] : spec_.arrows) phi_cells += static_cast<long>(yd[s]) * xd[t];
  BigInt space = ipow(p_, phi_cells);
  if (space > budget_)
    throw BudgetError("cocycle enumeration of " + space.str() + " candidates exceeds budget");

  std::vector<FFMatrix> phi;
  std::vector<std::pair<std::size_t, std::pair<int, int>>> cell_list;
  for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
    auto [s, t] = spec_.arrows[a];
    phi.emplace_back(xd[t], yd[s], p_);
    for (int i = 0; i < xd[t]; ++i)
      for (int j = 0; j < yd[s]; ++j) cell_list.push_back({a, {i, j}});
  }
  BigInt matches = 0;
  std::vector<int> vals(cell_list.size(), 0);
  while (true) {
    if (class_of(twisted_middle(rx, ry, phi)).label == l.label) matches += 1;
    std::size_t k = 0;
    while (k < cell_list.size()) {
      auto [a, ij] = cell_list[k];
      if (++vals[k] < p_) {
        phi[a].set(ij.first, ij.second, vals[k]);
        break;
      }
      vals[k] = 0;
      phi[a].set(ij.first, ij.second, 0);
      ++k;
    }
    if (k == cell_list.size()) break;
  }

  long hom0 = 0;
  for (int v = 0; v < spec_.vertices; ++v) hom0 += static_cast<long>(yd[v]) * xd[v];
  BigInt cobound = ipow(p_, hom0 - hom_dim(y, x));
  if (matches % cobound != 0) throw std::logic_error("cocycle count not divisible by coboundaries");
  return matches / cobound;
}

std::vector<IsoClass> QuiverBackend::middle_candidates(const IsoClass& x, const IsoClass& y) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  return classes_with_dims(add_dims(dims_of(x), dims_of(y)));
}

std::string QuiverBackend::image_string(const IsoClass& x) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::string s = "[";
  auto d = dims_of(x);
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (v) s += ",";
    s += std::to_string(d[v]);
  }
  return s + "]";
}

IsoClass QuiverBackend::parse_object(const std::string& name) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  std::string t;
  for (char c : name)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw ParseError("empty object name");

  std::string body = t;
  bool is_label = false;
  if (t.rfind(id_ + ":", 0) == 0) {
    body = t.substr(id_.size() + 1);
    is_label = true;
  }
  if (body == "0") return zero();

  std::map<int, int> mult;
  std::stringstream ss(body);
  std::string term;
  while (std::getline(ss, term, '+')) {
    int m = 1;
    auto caret = term.rfind('^');
    if (caret != std::string::npos) {
      m = std::stoi(term.substr(caret + 1));
      term = term.substr(0, caret);
    }
    if (m <= 0) throw ParseError("bad multiplicity in object term: " + term);
    int idx = -1;
    if (is_label || term.find('|') != std::string::npos) {
      auto it = catalog_by_payload_.find(term);
      if (it != catalog_by_payload_.end()) idx = it->second;
      if (idx < 0) {
        QuiverRep r = decode_rep(spec_, p_, term);
        IsoClass c = class_of(r);
        const ClassData& cd = data_of(c);
        if (cd.mult.size() != 1 || cd.mult.begin()->second != 1)
          throw ParseError("payload does not name an indecomposable: " + term);
        idx = cd.mult.begin()->first;
      }
    } else {
      for (int i = 0; i < static_cast<int>(catalog_.size()); ++i)
        if (catalog_[i].display == term) idx = i;
      if (idx < 0) {
        // "k3" style shorthand for powers of a single-letter atom
        std::size_t split = 0;
        while (split < term.size() && !isdigit(static_cast<unsigned char>(term[split]))) ++split;
        if (split > 0 && split < term.size()) {
          std::string atom = term.substr(0, split);
          for (int i = 0; i < static_cast<int>(catalog_.size()); ++i)
            if (catalog_[i].display == atom) {
              idx = i;
              m *= std::stoi(term.substr(split));
            }
        }
      }
    }
    if (idx < 0) throw ParseError("unknown object term: " + term);
    mult[idx] += m;
  }
  return make_class(class_from_mult(mult));
}

std::vector<IsoClass> QuiverBackend::summands(const IsoClass& x) const {
  std::lock_guard<std::recursive_mutex> lock(reg_mu_);
  const ClassData& cd = data_of(x);
  std::vector<IsoClass> out;
  for (auto& [i, m] : cd.mult)
    for (int c = 0; c < m; ++c) out.push_back(make_class(class_from_mult({{i, 1}})));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace exthall
