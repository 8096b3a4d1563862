#include "exthall/fp.hpp"

#include "exthall/numbers.hpp"

#include <algorithm>
#include <cassert>

namespace exthall {

FieldSpec::FieldSpec(int prime) : p(prime) {
  if (prime < 2 || prime > 97 || !is_prime(prime))
    throw ParseError("field modulus must be a prime in [2, 97], got " + std::to_string(prime));
}

int mod_inv(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw std::invalid_argument("mod_inv of zero");
  int t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    int q = r / new_r;
    int tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return t;
}

FFMatrix::FFMatrix(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
  e_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

FFMatrix FFMatrix::identity(int n, int p) {
  FFMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FFMatrix FFMatrix::from_rows(const std::vector<std::vector<int>>& rows, int cols, int p) {
  FFMatrix m(static_cast<int>(rows.size()), cols, p);
  for (int i = 0; i < m.rows(); ++i) {
    assert(static_cast<int>(rows[i].size()) == cols);
    for (int j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void FFMatrix::set(int i, int j, int v) {
  v %= p_;
  if (v < 0) v += p_;
  e_[static_cast<std::size_t>(i) * cols_ + j] = v;
}

bool FFMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

FFMatrix FFMatrix::operator*(const FFMatrix& o) const {
  assert(cols_ == o.rows_ && p_ == o.p_);
  FFMatrix r(rows_, o.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      int a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        int v = (r.at(i, j) + a * o.at(k, j)) % p_;
        r.e_[static_cast<std::size_t>(i) * r.cols_ + j] = v;
      }
    }
  return r;
}

FFMatrix FFMatrix::operator+(const FFMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  FFMatrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = (e_[i] + o.e_[i]) % p_;
  return r;
}

FFMatrix FFMatrix::operator-(const FFMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  FFMatrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ((e_[i] - o.e_[i]) % p_ + p_) % p_;
  return r;
}

FFMatrix FFMatrix::scaled(int c) const {
  c %= p_;
  if (c < 0) c += p_;
  FFMatrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c % p_;
  return r;
}

FFMatrix FFMatrix::transpose() const {
  FFMatrix r(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

FFMatrix FFMatrix::hstack(const FFMatrix& o) const {
  assert(rows_ == o.rows_);
  FFMatrix r(rows_, cols_ + o.cols_, p_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
  }
  return r;
}

FFMatrix FFMatrix::vstack(const FFMatrix& o) const {
  assert(cols_ == o.cols_);
  FFMatrix r(rows_ + o.rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
  return r;
}

namespace {

// in-place reduced row echelon form; returns pivot columns
std::vector<int> rref(std::vector<std::vector<int>>& m, int p) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    int inv = mod_inv(m[r][c], p);
    for (int j = c; j < cols; ++j) m[r][j] = m[r][j] * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      int f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<int>> to_rows(const FFMatrix& a) {
  std::vector<std::vector<int>> m(a.rows(), std::vector<int>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m[i][j] = a.at(i, j);
  return m;
}

}  // namespace

int FFMatrix::rank() const {
  auto m = to_rows(*this);
  return static_cast<int>(rref(m, p_).size());
}

FFMatrix FFMatrix::inverse() const {
  assert(rows_ == cols_);
  auto m = to_rows(hstack(identity(rows_, p_)));
  auto pivots = rref(m, p_);
  if (static_cast<int>(pivots.size()) != rows_ || (rows_ > 0 && pivots[rows_ - 1] >= rows_))
    throw std::invalid_argument("inverse of singular matrix");
  FFMatrix r(rows_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rows_; ++j) r.set(i, j, m[i][rows_ + j]);
  return r;
}

FFMatrix FFMatrix::kernel() const {
  auto m = to_rows(*this);
  auto pivots = rref(m, p_);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FFMatrix k(cols_, static_cast<int>(free_cols.size()), p_);
  for (int fi = 0; fi < static_cast<int>(free_cols.size()); ++fi) {
    int fc = free_cols[fi];
    k.set(fc, fi, 1);
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
      int v = m[r][fc];
      if (v != 0) k.set(pivots[r], fi, p_ - v);
    }
  }
  return k;
}

std::optional<std::vector<int>> FFMatrix::solve(const std::vector<int>& b) const {
  assert(static_cast<int>(b.size()) == rows_);
  std::vector<std::vector<int>> m(rows_, std::vector<int>(cols_ + 1));
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m[i][j] = at(i, j);
    m[i][cols_] = ((b[i] % p_) + p_) % p_;
  }
  auto pivots = rref(m, p_);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  std::vector<int> x(cols_, 0);
  for (int r = 0; r < static_cast<int>(pivots.size()); ++r) x[pivots[r]] = m[r][cols_];
  return x;
}

FFMatrix FFMatrix::column_basis() const {
  auto m = to_rows(*this);
  auto pivots = rref(m, p_);
  FFMatrix r(rows_, static_cast<int>(pivots.size()), p_);
  for (int j = 0; j < static_cast<int>(pivots.size()); ++j)
    for (int i = 0; i < rows_; ++i) r.set(i, j, at(i, pivots[j]));
  return r;
}

FFMatrix FFMatrix::complement(const FFMatrix& basis) {
  int n = basis.rows();
  int p = basis.field();
  FFMatrix ext = basis.hstack(identity(n, p));
  auto m = to_rows(ext);
  auto pivots = rref(m, p);
  assert(static_cast<int>(pivots.size()) == n);
  FFMatrix c(n, n - basis.cols(), p);
  int cj = 0;
  for (int col : pivots) {
    if (col < basis.cols()) continue;
    for (int i = 0; i < n; ++i) c.set(i, cj, ext.at(i, col));
    ++cj;
  }
  assert(cj == n - basis.cols());
  return c;
}

std::vector<int> FFMatrix::column(int j) const {
  std::vector<int> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void FFMatrix::set_column(int j, const std::vector<int>& v) {
  assert(static_cast<int>(v.size()) == rows_);
  for (int i = 0; i < rows_; ++i) set(i, j, v[i]);
}

std::string FFMatrix::encode() const {
  std::string s;
  s.reserve(e_.size() + 8);
  s += std::to_string(rows_);
  s += 'x';
  s += std::to_string(cols_);
  s += ':';
  for (int v : e_) s += static_cast<char>('0' + v);
  return s;
}

FFMatrix block2x2(const FFMatrix& a, const FFMatrix& b, const FFMatrix& c, const FFMatrix& d) {
  return a.hstack(b).vstack(c.hstack(d));
}

}  // namespace exthall
