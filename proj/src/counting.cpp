#include "exthall/counting.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace exthall {

BigInt gl_order(int n, const BigInt& q) {
  BigInt r = 1;
  BigInt qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  BigInt qi = 1;
  for (int i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= q;
  }
  return r;
}

BigInt gaussian_binomial(int n, int k, int p) {
  if (k < 0 || k > n) return 0;
  // q-Pascal recursion keeps everything integral
  static std::map<std::tuple<int, int, int>, BigInt> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::function<BigInt(int, int)> rec = [&](int nn, int kk) -> BigInt {
    if (kk == 0 || kk == nn) return 1;
    auto key = std::make_tuple(nn, kk, p);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigInt v = rec(nn - 1, kk - 1) + ipow(p, kk) * rec(nn - 1, kk);
    memo[key] = v;
    return v;
  };
  return rec(n, k);
}

BigInt count_rank_matrices(int m, int n, int r, int p) {
  if (r < 0 || r > std::min(m, n)) return 0;
  BigInt c = gaussian_binomial(n, r, p);
  BigInt pm = ipow(p, m);
  BigInt pi = 1;
  for (int i = 0; i < r; ++i) {
    c *= pm - pi;
    pi *= p;
  }
  return c;
}

namespace {

void subspace_rec(int n, int k, int p, const std::vector<int>& pivots, std::size_t pi,
                  std::vector<std::vector<int>>& rows, const std::function<void(const FFMatrix&)>& fn) {
  if (pi == pivots.size()) {
    // rows are a k x n row-echelon basis; emit as columns
    FFMatrix b(n, k, p);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j)
        if (rows[i][j] != 0) b.set(j, i, rows[i][j]);
    fn(b);
    return;
  }
  // free positions of row pi: columns right of its pivot that are not pivots
  std::vector<int> free_cols;
  for (int c = pivots[pi] + 1; c < n; ++c) {
    bool is_pivot = false;
    for (int q : pivots)
      if (q == c) is_pivot = true;
    if (!is_pivot) free_cols.push_back(c);
  }
  std::vector<int> vals(free_cols.size(), 0);
  while (true) {
    rows[pi].assign(n, 0);
    rows[pi][pivots[pi]] = 1;
    for (std::size_t t = 0; t < free_cols.size(); ++t) rows[pi][free_cols[t]] = vals[t];
    subspace_rec(n, k, p, pivots, pi + 1, rows, fn);
    std::size_t t = 0;
    while (t < vals.size()) {
      if (++vals[t] < p) break;
      vals[t] = 0;
      ++t;
    }
    if (t == vals.size()) break;
  }
}

}  // namespace

void for_each_subspace(int n, int k, int p, std::uint64_t budget,
                       const std::function<void(const FFMatrix&)>& fn) {
  if (k < 0 || k > n) return;
  if (gaussian_binomial(n, k, p) > budget)
    throw BudgetError("subspace enumeration of " + gaussian_binomial(n, k, p).str() +
                      " candidates exceeds budget " + std::to_string(budget));
  if (k == 0) {
    fn(FFMatrix(n, 0, p));
    return;
  }
  // iterate pivot column combinations c_0 < ... < c_{k-1}
  std::vector<int> pivots(k);
  for (int i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    std::vector<std::vector<int>> rows(k, std::vector<int>(n, 0));
    subspace_rec(n, k, p, pivots, 0, rows, fn);
    int i = k - 1;
    while (i >= 0 && pivots[i] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

void for_each_matrix(int rows, int cols, int p, std::uint64_t budget,
                     const std::function<void(const FFMatrix&)>& fn) {
  BigInt total = ipow(p, static_cast<long>(rows) * cols);
  if (total > budget)
    throw BudgetError("matrix enumeration of " + total.str() + " candidates exceeds budget " +
                      std::to_string(budget));
  FFMatrix m(rows, cols, p);
  std::vector<int> cells(static_cast<std::size_t>(rows) * cols, 0);
  while (true) {
    fn(m);
    std::size_t k = 0;
    while (k < cells.size()) {
      if (++cells[k] < p) {
        m.set(static_cast<int>(k) / cols, static_cast<int>(k) % cols, cells[k]);
        break;
      }
      cells[k] = 0;
      m.set(static_cast<int>(k) / cols, static_cast<int>(k) % cols, 0);
      ++k;
    }
    if (k == cells.size()) break;
  }
}

}  // namespace exthall
