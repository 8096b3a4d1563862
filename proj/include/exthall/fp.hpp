#pragma once

#include "exthall/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exthall {

struct FieldSpec {
  int p = 2;
  FieldSpec() = default;
  explicit FieldSpec(int prime);
};

int mod_inv(int a, int p);

// Dense matrix over F_p; entries are canonical residues in [0, p).
class FFMatrix {
 public:
  FFMatrix() = default;
  FFMatrix(int rows, int cols, int p);
  static FFMatrix identity(int n, int p);
  static FFMatrix from_rows(const std::vector<std::vector<int>>& rows, int cols, int p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int field() const { return p_; }
  int at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, int v);

  bool operator==(const FFMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const FFMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  FFMatrix operator*(const FFMatrix& o) const;
  FFMatrix operator+(const FFMatrix& o) const;
  FFMatrix operator-(const FFMatrix& o) const;
  FFMatrix scaled(int c) const;
  FFMatrix transpose() const;
  FFMatrix hstack(const FFMatrix& o) const;
  FFMatrix vstack(const FFMatrix& o) const;

  int rank() const;
  bool invertible() const { return rows_ == cols_ && rank() == rows_; }
  FFMatrix inverse() const;
  // columns form a basis of {x : Ax = 0}; shape cols x nullity
  FFMatrix kernel() const;
  // particular solution of Ax = b, or nullopt when inconsistent
  std::optional<std::vector<int>> solve(const std::vector<int>& b) const;
  // independent columns spanning the column space
  FFMatrix column_basis() const;
  // C such that [basis | C] is invertible; basis must have independent columns
  static FFMatrix complement(const FFMatrix& basis);

  std::vector<int> column(int j) const;
  void set_column(int j, const std::vector<int>& v);
  const std::vector<int>& entries() const { return e_; }

  std::string encode() const;

 private:
  int rows_ = 0, cols_ = 0, p_ = 2;
  std::vector<int> e_;
};

// [[a, b], [c, d]]; shapes must be consistent
FFMatrix block2x2(const FFMatrix& a, const FFMatrix& b, const FFMatrix& c, const FFMatrix& d);

}  // namespace exthall
