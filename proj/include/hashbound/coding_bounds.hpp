#pragma once

// Hamming-bound arithmetic for binary codebooks.
//
// For an (L, M, d) code over a Q-ary alphabet the sphere-packing bound reads
//
//   M * sum_{i=0}^{floor((d-1)/2)} C(L, i) (Q-1)^i  <=  Q^L
//
// Everything is evaluated in exact integers; the division Q^L / M is never
// formed, so boundary cases are classified exactly.

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace hashbound {

using BigUint = boost::multiprecision::cpp_int;

struct BoundProblem {
  int code_length = 0;            // L, in bits
  std::uint64_t num_classes = 0;  // M
  int alphabet_size = 2;          // Q

  /// Throws InputError unless L >= 1, 2 <= M <= Q^L and Q >= 2.
  void validate() const;
};

struct MarginSet {
  int d_min_star = 0;
  int alpha_pos = 0;
  int alpha_neg = 0;
  /// Smallest bound-violating distance before clamping to L.
  int unclamped_d_min_star = 0;
  bool clamped = false;
};

/// Exact C(n, k); zero when k > n.
BigUint binomial(unsigned n, unsigned k);

/// sum_{i=0}^{floor((d-1)/2)} C(L, i) (Q-1)^i. Zero for d < 1.
BigUint sphere_volume(int code_length, int distance, int alphabet_size = 2);

/// M * sphere_volume(L, d) <= Q^L.
bool bound_holds(const BoundProblem& problem, int distance);

/// Smallest d that violates the bound while d - 1 satisfies it, clamped to L.
int solve_d_min_star(const BoundProblem& problem);

/// alpha_pos = L, alpha_neg = L - 2 d*.
MarginSet derive_margins(const BoundProblem& problem);

}  // namespace hashbound
