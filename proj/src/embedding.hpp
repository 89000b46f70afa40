#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "multigraph.hpp"

namespace atomemb {

// One end of an edge. side 0 sits at ends(e).first, side 1 at ends(e).second;
// a loop contributes both sides to the same vertex.
struct Dart {
  EdgeId edge;
  std::uint8_t side = 0;
  auto operator<=>(const Dart&) const = default;
};

// Cyclic edge-end order at every vertex. Stored as plain vectors; two
// rotations are the same when one is a cyclic shift of the other.
struct RotationSystem {
  std::map<VertexId, std::vector<Dart>> rot;
};

// Faces as orbits of next-dart-along-face; darts are directed edge sides.
std::vector<std::vector<Dart>> trace_faces(const Multigraph& g, const RotationSystem& rs);

// Sum of per-component Euler genus (2 - V + E - F) / 2; >= 0, 0 iff the
// rotation system is planar on every component.
int euler_genus(const Multigraph& g, const RotationSystem& rs);

bool test_planarity(const Multigraph& g);

// A genus-0 rotation system, or nullopt when g is nonplanar. Deterministic.
std::optional<RotationSystem> planar_rotation_system(const Multigraph& g);

// Streams genus-0 rotation systems in a canonical order: per vertex the
// lowest incident dart is anchored first and the remaining darts run through
// lexicographic permutations; vertices advance odometer-style, lowest id
// fastest. Internally prunes odometer blocks whose slow-changing suffix
// already induces positive genus (a planar system stays planar on every
// induced subgraph), which skips only non-planar candidates.
class PlanarRotationEnumerator {
 public:
  explicit PlanarRotationEnumerator(const Multigraph& g);
  // Same search, but the `slow` vertices occupy the slow odometer positions
  // (their rotations change last); the remaining vertices run fastest in
  // ascending id order. Used to enumerate one representative per achievable
  // rotation combination at `slow` via skip_to_next_projection().
  PlanarRotationEnumerator(const Multigraph& g, const std::vector<VertexId>& slow);
  // Next planar rotation system; nullopt when exhausted.
  std::optional<RotationSystem> next();
  // Makes the following next() skip every candidate that keeps the current
  // rotations at the `slow` vertices.
  void skip_to_next_projection() { skip_from_ = fast_count_; }
  // next() gives up (without exhausting) once the deadline passes.
  void set_deadline(std::chrono::steady_clock::time_point d) { deadline_ = d; }
  bool timed_out() const { return timed_out_; }
  // Upper bound on raw candidates (prod (deg-1)!), saturating.
  std::uint64_t raw_candidates() const { return raw_candidates_; }

 private:
  const Multigraph& g_;
  std::vector<VertexId> verts_;
  std::vector<std::vector<Dart>> tails_;   // permuted portion per vertex
  std::vector<Dart> anchors_;
  std::unordered_map<std::uint32_t, std::size_t> vpos_;  // vertex id -> index
  std::uint64_t raw_candidates_ = 1;
  std::size_t fast_count_ = 0;  // positions below this hold non-slow vertices
  std::size_t skip_from_ = 0;   // next() advances at this position first
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t steps_ = 0;
  bool exhausted_ = false;
  bool timed_out_ = false;
  bool first_ = true;

  void init();
  // Advances position k (positions below reset to the first permutation);
  // returns the highest index whose permutation changed, or -1 when done.
  int advance_at(std::size_t k);
  // Genus-0 test of the subgraph induced by verts_[k..].
  bool suffix_planar(std::size_t k) const;
  RotationSystem current() const;
};

// Convenience: up to `limit` planar rotation systems; overflow = true when a
// further one exists beyond the limit.
struct EnumerationResult {
  std::vector<RotationSystem> systems;
  bool overflow = false;
};
EnumerationResult enumerate_planar_rotation_systems(const Multigraph& g, std::size_t limit);

// One planar rotation system per achievable combination of rotations at the
// `marked` vertices; rotations elsewhere are an arbitrary planar completion.
EnumerationResult enumerate_planar_projections(const Multigraph& g,
                                               const std::vector<VertexId>& marked,
                                               std::size_t limit);

enum class Compatibility { Same, Opposite, Incompatible };

// Compares two cyclic label sequences (already mapped into a shared label
// space by the caller). Opposite wins when both relations hold (degree <= 2).
Compatibility rotations_compatible(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b);

// Whether v's rotation is the same in every genus-0 rotation system up to
// reflection of the whole embedding. Requires g connected and planar; decided
// structurally from the proper 1- and 2-cuts containing v. Degree-3 p-path
// poles (three single-edge bridges at a 2-cut) report not fixed: the two
// achievable rotations are mutual reflections, but each bridge carries its
// own orientation, so treating them as free matches the reflection 2SAT.
bool is_fixed_rotation(const Multigraph& g, VertexId v);

}  // namespace atomemb
