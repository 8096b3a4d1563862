#pragma once

#include "exthall/fp.hpp"
#include "exthall/numbers.hpp"

#include <cstdint>
#include <functional>

namespace exthall {

// |GL_n(F_q)| = prod_{i<n} (q^n - q^i)
BigInt gl_order(int n, const BigInt& q);
inline BigInt gl_order(int n, int p) { return gl_order(n, BigInt(p)); }

// number of k-dimensional subspaces of F_p^n
BigInt gaussian_binomial(int n, int k, int p);

// number of m x n matrices over F_p of rank exactly r
BigInt count_rank_matrices(int m, int n, int r, int p);

// visit every k-dimensional subspace of F_p^n once, presented by an
// n x k basis matrix in column echelon position
void for_each_subspace(int n, int k, int p, std::uint64_t budget,
                       const std::function<void(const FFMatrix&)>& fn);

// visit every rows x cols matrix over F_p
void for_each_matrix(int rows, int cols, int p, std::uint64_t budget,
                     const std::function<void(const FFMatrix&)>& fn);

}  // namespace exthall
