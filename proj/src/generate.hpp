#pragma once

#include <cstdint>
#include <vector>

#include "instance.hpp"
#include "reductions.hpp"

namespace atomemb {

// Deterministic seeded pseudorandom stream (splitmix64), fixed across
// platforms so generated corpora are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // uniform-ish in [0, n)
  bool chance(double p);                 // true with probability ~p

 private:
  std::uint64_t state_;
};

// H is a cycle of `windings.size() >= 1 ? ... ` two atoms; G winds each cycle
// the given number of times. Positive iff all windings are equal.
Instance gen_toroidal(const std::vector<int>& windings);

// Random valid instance: a random tree of atoms plus extra pipes, vertices
// assigned to random atoms, simple G edges kept when an image exists.
Instance gen_random(std::uint64_t seed, std::size_t g_vertices,
                    std::size_t h_atoms, double density);

// Random clustered-planarity instance over a random cluster tree.
ClusteredInstance gen_cplan(std::uint64_t seed, std::size_t clusters,
                            std::size_t vertices, double density);

}  // namespace atomemb
