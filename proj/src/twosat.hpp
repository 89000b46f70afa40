#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace atomemb {

// 2SAT over variables 0..n-1, solved via strongly connected components of
// the implication graph.
class TwoSat {
 public:
  explicit TwoSat(std::size_t n_vars) : n_(n_vars), adj_(2 * n_vars) {}

  // (x_a == va) or (x_b == vb)
  void add_clause(std::size_t a, bool va, std::size_t b, bool vb);
  void add_equal(std::size_t a, std::size_t b);
  void add_not_equal(std::size_t a, std::size_t b);
  void force(std::size_t a, bool va) { add_clause(a, va, a, va); }

  std::optional<std::vector<bool>> solve() const;

 private:
  std::size_t lit(std::size_t v, bool positive) const {
    return 2 * v + (positive ? 0 : 1);
  }
  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace atomemb
