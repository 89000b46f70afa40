#include "twosat.hpp"

#include <algorithm>

namespace atomemb {

void TwoSat::add_clause(std::size_t a, bool va, std::size_t b, bool vb) {
  // (a=va ∨ b=vb): ¬(a=va) → (b=vb) and symmetrically.
  adj_[lit(a, !va)].push_back(lit(b, vb));
  adj_[lit(b, !vb)].push_back(lit(a, va));
}

void TwoSat::add_equal(std::size_t a, std::size_t b) {
  add_clause(a, true, b, false);
  add_clause(a, false, b, true);
}

void TwoSat::add_not_equal(std::size_t a, std::size_t b) {
  add_clause(a, true, b, true);
  add_clause(a, false, b, false);
}

std::optional<std::vector<bool>> TwoSat::solve() const {
  // Iterative Tarjan SCC.
  const std::size_t m = 2 * n_;
  std::vector<std::size_t> index(m, 0), low(m, 0), comp(m, 0);
  std::vector<bool> on_stack(m, false), visited(m, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 1, next_comp = 0;

  struct Frame {
    std::size_t v;
    std::size_t child = 0;
  };
  for (std::size_t root = 0; root < m; ++root) {
    if (visited[root]) continue;
    std::vector<Frame> frames{{root}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      std::size_t v = f.v;
      if (f.child == 0) {
        visited[v] = true;
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (f.child < adj_[v].size()) {
        std::size_t w = adj_[v][f.child++];
        if (!visited[w]) {
          frames.push_back({w});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          for (;;) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }

  std::vector<bool> result(n_);
  for (std::size_t v = 0; v < n_; ++v) {
    if (comp[lit(v, true)] == comp[lit(v, false)]) return std::nullopt;
    // Tarjan numbers components in reverse topological order, so the
    // literal in the lower-numbered component is implied by the other.
    result[v] = comp[lit(v, true)] < comp[lit(v, false)];
  }
  return result;
}

}  // namespace atomemb
