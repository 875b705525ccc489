#include "hashbound/coding_bounds.hpp"

#include <string>

#include "hashbound/errors.hpp"

namespace hashbound {

namespace {

BigUint power(unsigned base, int exponent) {
  BigUint result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

struct Solution {
  int unclamped;
  int clamped;
};

Solution solve(const BoundProblem& problem) {
  problem.validate();
  const int L = problem.code_length;
  const BigUint capacity = power(static_cast<unsigned>(problem.alphabet_size), L);
  const BigUint m = problem.num_classes;

  // The volume only grows when d crosses an odd value, so accumulate one
  // radius at a time instead of re-summing for every d.
  BigUint volume = 1;  // radius 0
  BigUint term_factor = 1;
  int radius = 0;
  for (int d = 2;; ++d) {
    const int needed = (d - 1) / 2;
    while (radius < needed) {
      ++radius;
      term_factor *= static_cast<unsigned>(problem.alphabet_size - 1);
      volume += binomial(static_cast<unsigned>(L), static_cast<unsigned>(radius)) * term_factor;
    }
    if (m * volume > capacity) return {d, d > L ? L : d};
  }
}

}  // namespace

void BoundProblem::validate() const {
  if (code_length < 1) {
    throw InputError("code_length must be >= 1, got " + std::to_string(code_length));
  }
  if (alphabet_size < 2) {
    throw InputError("alphabet_size must be >= 2, got " + std::to_string(alphabet_size));
  }
  if (num_classes < 2) {
    throw InputError("num_classes must be >= 2 (minimum distance needs two codewords), got " +
                     std::to_string(num_classes));
  }
  if (BigUint(num_classes) > power(static_cast<unsigned>(alphabet_size), code_length)) {
    throw InputError("num_classes " + std::to_string(num_classes) + " exceeds the " +
                     std::to_string(alphabet_size) + "^" + std::to_string(code_length) +
                     " distinct codewords available");
  }
}

BigUint binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigUint result = 1;
  // result stays equal to C(n - k + i, i) after step i, so each division is exact.
  for (unsigned i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

BigUint sphere_volume(int code_length, int distance, int alphabet_size) {
  if (distance < 1 || code_length < 0) return 0;
  const int radius = (distance - 1) / 2;
  BigUint sum = 0;
  BigUint factor = 1;
  for (int i = 0; i <= radius && i <= code_length; ++i) {
    sum += binomial(static_cast<unsigned>(code_length), static_cast<unsigned>(i)) * factor;
    factor *= static_cast<unsigned>(alphabet_size - 1);
  }
  return sum;
}

bool bound_holds(const BoundProblem& problem, int distance) {
  const BigUint lhs = BigUint(problem.num_classes) *
                      sphere_volume(problem.code_length, distance, problem.alphabet_size);
  return lhs <= power(static_cast<unsigned>(problem.alphabet_size), problem.code_length);
}

int solve_d_min_star(const BoundProblem& problem) { return solve(problem).clamped; }

MarginSet derive_margins(const BoundProblem& problem) {
  const Solution s = solve(problem);
  MarginSet margins;
  margins.d_min_star = s.clamped;
  margins.unclamped_d_min_star = s.unclamped;
  margins.clamped = s.unclamped != s.clamped;
  margins.alpha_pos = problem.code_length;
  margins.alpha_neg = problem.code_length - 2 * s.clamped;
  return margins;
}

}  // namespace hashbound
