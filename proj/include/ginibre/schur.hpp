#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ginibre/core.hpp"

namespace ginibre {

// Product over i<j of (x_i - x_j); 1 for fewer than two arguments.
Complex vandermonde(std::span<const Complex> x);

// e_k(x); zero for k > length.
Complex elementary_symmetric(std::size_t k, std::span<const Complex> x);

// All e_0..e_len.
std::vector<Complex> elementary_symmetric_all(std::span<const Complex> x);

// h_0..h_{k_max}.
std::vector<Complex> complete_homogeneous(std::size_t k_max, std::span<const Complex> x);

// True when the bialternant branch is used: min gap > 1e-4 (1 + max|x_i|).
bool well_separated(std::span<const Complex> x);

// s_lambda(x); zero if lambda has more parts than x has entries.
Complex schur_eval(const Partition& lambda, std::span<const Complex> x);

// Individual branches. The bialternant throws InvalidArgument at coincident arguments.
Complex schur_bialternant(const Partition& lambda, std::span<const Complex> x);
Complex schur_jacobi_trudi(const Partition& lambda, std::span<const Complex> x);

// Partitions with |lambda| <= weight_max and at most parts_max parts, ordered
// by weight and, within a weight, with larger leading parts first.
std::vector<Partition> partitions_up_to(int weight_max, int parts_max);

// Partitions of exactly `weight` with at most parts_max parts, each part <= max_part.
std::vector<Partition> partitions_of(int weight, int parts_max, int max_part);

// Partitions fitting in a parts_max x max_part box, ordered as partitions_up_to.
std::vector<Partition> partitions_in_box(int parts_max, int max_part);

// Partition I - delta for a strictly increasing index set I of non-negative integers.
Partition partition_from_index_set(std::span<const int> index_set);

struct SchurSumBound {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs = sum over |lambda| <= i of |s_lambda(x)|^2, rhs = prod(1 + |x_j|)^(2i).
SchurSumBound schur_sum_bound(std::span<const Complex> x, int i);

// Coefficient of s_lambda(x) t^{|lambda|} in prod_j (1 + x_j t)^i, i.e. the
// number s_{lambda'}(1^i). Exact; throws BudgetExceeded on 64-bit overflow.
std::uint64_t generating_coefficient(int i, const Partition& lambda);

// |sum_lambda C(i,lambda) s_lambda(x) t^{|lambda|} - prod_j(1 + x_j t)^i|.
double generating_identity_residual(std::span<const Complex> x, int i, Complex t);

}  // namespace ginibre
