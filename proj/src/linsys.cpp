#include "exthall/linsys.hpp"

#include <cassert>
#include <stdexcept>

namespace exthall {

int LinearSystem::add_unknown(int rows, int cols) {
  blocks_.emplace_back(rows, cols);
  offsets_.push_back(total_unknowns_);
  total_unknowns_ += rows * cols;
  return static_cast<int>(blocks_.size()) - 1;
}

void LinearSystem::add_equation(const std::vector<Term>& terms, const FFMatrix& rhs) {
  for (int i = 0; i < rhs.rows(); ++i) {
    for (int j = 0; j < rhs.cols(); ++j) {
      std::vector<int> row(total_unknowns_ + 1, 0);
      for (const Term& t : terms) {
        const auto [br, bc] = blocks_[t.block];
        assert(t.left.cols() == br && t.right.rows() == bc);
        assert(t.left.rows() == rhs.rows() && t.right.cols() == rhs.cols());
        for (int r = 0; r < br; ++r) {
          int lv = t.left.at(i, r);
          if (lv == 0) continue;
          for (int c = 0; c < bc; ++c) {
            int coef = lv * t.right.at(c, j) % p_;
            if (t.negate) coef = (p_ - coef) % p_;
            int idx = offsets_[t.block] + r * bc + c;
            row[idx] = (row[idx] + coef) % p_;
          }
        }
      }
      row[total_unknowns_] = rhs.at(i, j);
      rows_.push_back(std::move(row));
    }
  }
}

LinearSystem::Solution LinearSystem::solve() const {
  Solution s;
  s.p = p_;
  s.shapes = blocks_;

  // gaussian elimination on a copy of the augmented rows
  std::vector<std::vector<int>> m = rows_;
  int n = total_unknowns_;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < n && r < static_cast<int>(m.size()); ++c) {
    int pr = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (m[i][c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    int inv = mod_inv(m[r][c], p_);
    for (int j = c; j <= n; ++j) m[r][j] = m[r][j] * inv % p_;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || m[i][c] == 0) continue;
      int f = m[i][c];
      for (int j = c; j <= n; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p_ + p_) % p_;
    }
    pivots.push_back(c);
    ++r;
  }
  for (int i = r; i < static_cast<int>(m.size()); ++i)
    if (m[i][n] != 0) {
      s.consistent = false;
      return s;
    }
  s.consistent = true;

  std::vector<int> flat(n, 0);
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) flat[pivots[i]] = m[i][n];

  auto unflatten = [&](const std::vector<int>& v) {
    std::vector<FFMatrix> out;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      FFMatrix mat(blocks_[b].first, blocks_[b].second, p_);
      int off = offsets_[b];
      for (int i = 0; i < mat.rows(); ++i)
        for (int j = 0; j < mat.cols(); ++j) mat.set(i, j, v[off + i * mat.cols() + j]);
      out.push_back(std::move(mat));
    }
    return out;
  };

  s.particular = unflatten(flat);

  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  for (int fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<int> v(n, 0);
    v[fc] = 1;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
      int coef = m[i][fc];
      if (coef != 0) v[pivots[i]] = (p_ - coef) % p_;
    }
    s.null_basis.push_back(unflatten(v));
  }
  return s;
}

BigInt LinearSystem::Solution::count() const {
  if (!consistent) return 0;
  return ipow(p, nullity());
}

std::vector<FFMatrix> LinearSystem::Solution::value(const std::vector<int>& coeffs) const {
  assert(coeffs.size() == null_basis.size());
  std::vector<FFMatrix> out = particular;
  for (std::size_t k = 0; k < null_basis.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (std::size_t b = 0; b < out.size(); ++b)
      out[b] = out[b] + null_basis[k][b].scaled(coeffs[k]);
  }
  return out;
}

void LinearSystem::Solution::for_each(std::uint64_t budget,
                                      const std::function<void(const std::vector<FFMatrix>&)>& fn) const {
  if (!consistent) return;
  if (count() > budget)
    throw BudgetError("solution space of size " + count().str() + " exceeds budget " +
                      std::to_string(budget));
  std::vector<int> coeffs(null_basis.size(), 0);
  while (true) {
    fn(value(coeffs));
    std::size_t k = 0;
    while (k < coeffs.size()) {
      if (++coeffs[k] < p) break;
      coeffs[k] = 0;
      ++k;
    }
    if (k == coeffs.size()) break;
  }
}

LinearSystem::Solution solve_intertwiner(const FFMatrix& a, const FFMatrix& b, const FFMatrix& c,
                                         const FFMatrix& d) {
  int m = d.rows(), n = d.cols();
  if (a.rows() != n || a.cols() != n || b.rows() != m || b.cols() != m)
    throw std::invalid_argument("solve_intertwiner: A must be n x n and B m x m for an m x n unknown");
  if (c.rows() != m || c.cols() != n) throw std::invalid_argument("solve_intertwiner: bad rhs shape");
  LinearSystem sys(d.field());
  int x = sys.add_unknown(m, n);
  sys.add_equation({{x, FFMatrix::identity(m, d.field()), a, false},
                    {x, b, FFMatrix::identity(n, d.field()), true}},
                   c);
  return sys.solve();
}

}  // namespace exthall
