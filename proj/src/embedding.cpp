#include "embedding.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace atomemb {

namespace {

VertexId dart_vertex(const Multigraph& g, Dart d) {
  auto [a, b] = g.ends(d.edge);
  return d.side == 0 ? a : b;
}

std::vector<Dart> darts_at(const Multigraph& g, VertexId v) {
  std::vector<Dart> out;
  for (EdgeId e : g.incident_edges(v)) {
    auto [a, b] = g.ends(e);
    if (a == v) out.push_back({e, 0});
    if (b == v) out.push_back({e, 1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_rotation_system(const Multigraph& g, const RotationSystem& rs) {
  for (VertexId v : g.vertices()) {
    auto it = rs.rot.find(v);
    std::vector<Dart> have = it == rs.rot.end() ? std::vector<Dart>{} : it->second;
    std::sort(have.begin(), have.end());
    if (have != darts_at(g, v))
      throw GraphError("rotation system does not match graph");
  }
}

}  // namespace

std::vector<std::vector<Dart>> trace_faces(const Multigraph& g, const RotationSystem& rs) {
  check_rotation_system(g, rs);
  // A directed dart departs from its side: (e, s) goes from side s to 1-s.
  std::map<Dart, std::size_t> pos;  // position of each edge-end in its rotation
  for (auto& [v, order] : rs.rot)
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  std::vector<std::vector<Dart>> faces;
  std::set<Dart> used;
  std::vector<Dart> all;
  for (EdgeId e : g.edges()) {
    all.push_back({e, 0});
    all.push_back({e, 1});
  }
  for (Dart start : all) {
    if (used.count(start)) continue;
    std::vector<Dart> face;
    Dart d = start;
    do {
      used.insert(d);
      face.push_back(d);
      Dart arrive{d.edge, (std::uint8_t)(1 - d.side)};
      VertexId v = dart_vertex(g, arrive);
      const auto& order = rs.rot.at(v);
      std::size_t i = pos.at(arrive);
      d = order[(i + 1) % order.size()];
    } while (d != start);
    faces.push_back(std::move(face));
  }
  return faces;
}

int euler_genus(const Multigraph& g, const RotationSystem& rs) {
  auto faces = trace_faces(g, rs);
  auto comps = g.components();
  std::unordered_map<std::uint32_t, std::size_t> comp_of;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (VertexId v : comps[i]) comp_of[v.value] = i;
  std::vector<long> V(comps.size(), 0), E(comps.size(), 0), F(comps.size(), 0);
  for (std::size_t i = 0; i < comps.size(); ++i) V[i] = (long)comps[i].size();
  for (EdgeId e : g.edges()) ++E[comp_of.at(g.ends(e).first.value)];
  for (auto& f : faces) ++F[comp_of.at(dart_vertex(g, f.front()).value)];
  int genus = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    long f = E[i] == 0 ? 1 : F[i];
    long gi = (2 - (V[i] - E[i] + f)) / 2;
    genus += (int)gi;
  }
  return genus;
}

// ---- planarity through Boyer–Myrvold --------------------------------------

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::no_property,
                          boost::property<boost::edge_index_t, int>>;

// Simplification of one component: bundles collapsed, loops dropped.
struct SimpleComp {
  BoostGraph bg;
  std::vector<VertexId> verts;                        // boost index -> id
  std::vector<std::pair<VertexId, VertexId>> bedges;  // boost edge idx -> (u,v), u < v
};

SimpleComp build_simple(const Multigraph& g, const std::vector<VertexId>& comp) {
  SimpleComp sc;
  sc.verts = comp;
  std::unordered_map<std::uint32_t, std::size_t> idx;
  for (std::size_t i = 0; i < comp.size(); ++i) idx[comp[i].value] = i;
  sc.bg = BoostGraph(comp.size());
  std::set<std::pair<VertexId, VertexId>> seen;
  int eidx = 0;
  for (VertexId v : comp) {
    for (EdgeId e : g.incident_edges(v)) {
      auto [a, b] = g.ends(e);
      if (a == b) continue;
      auto key = std::minmax(a, b);
      std::pair<VertexId, VertexId> kp{key.first, key.second};
      if (!seen.insert(kp).second) continue;
      boost::add_edge(idx.at(a.value), idx.at(b.value),
                      boost::property<boost::edge_index_t, int>(eidx++), sc.bg);
      sc.bedges.push_back(kp);
    }
  }
  return sc;
}

}  // namespace

bool test_planarity(const Multigraph& g) {
  for (auto& comp : g.components()) {
    SimpleComp sc = build_simple(g, comp);
    if (!boost::boyer_myrvold_planarity_test(sc.bg)) return false;
  }
  return true;
}

std::optional<RotationSystem> planar_rotation_system(const Multigraph& g) {
  RotationSystem rs;
  for (VertexId v : g.vertices()) rs.rot[v];  // every vertex present
  for (auto& comp : g.components()) {
    SimpleComp sc = build_simple(g, comp);
    using Edge = boost::graph_traits<BoostGraph>::edge_descriptor;
    std::vector<std::vector<Edge>> embedding(boost::num_vertices(sc.bg));
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = sc.bg,
        boost::boyer_myrvold_params::embedding =
            boost::make_iterator_property_map(embedding.begin(),
                                              boost::get(boost::vertex_index, sc.bg)));
    if (!planar) return std::nullopt;
    auto eindex = boost::get(boost::edge_index, sc.bg);
    for (std::size_t i = 0; i < sc.verts.size(); ++i) {
      VertexId v = sc.verts[i];
      std::vector<Dart>& order = rs.rot[v];
      for (Edge be : embedding[i]) {
        auto [lo, hi] = sc.bedges[eindex[be]];
        VertexId w = lo == v ? hi : lo;
        // All parallel edges between v and w, nested: ascending ids at the
        // lower-id endpoint, descending at the other, so each bundle traces
        // bigon faces and keeps genus 0.
        std::vector<EdgeId> bundle;
        for (EdgeId e : g.incident_edges(v))
          if (!g.is_loop(e) && g.other_end(e, v) == w) bundle.push_back(e);
        std::sort(bundle.begin(), bundle.end());
        if (v != std::min(v, w)) std::reverse(bundle.begin(), bundle.end());
        for (EdgeId e : bundle) {
          auto [a, b] = g.ends(e);
          order.push_back({e, (std::uint8_t)(a == v ? 0 : 1)});
        }
      }
      // Loops sit in consecutive positions; each closes a face of its own.
      for (EdgeId e : g.incident_edges(v)) {
        if (g.is_loop(e)) {
          order.push_back({e, 0});
          order.push_back({e, 1});
        }
      }
    }
  }
  if (euler_genus(g, rs) != 0)
    throw GraphError("internal: planar embedding failed genus verification");
  return rs;
}

// ---- enumeration -----------------------------------------------------------

PlanarRotationEnumerator::PlanarRotationEnumerator(const Multigraph& g) : g_(g) {
  verts_ = g.vertices();
  fast_count_ = verts_.size();
  init();
}

PlanarRotationEnumerator::PlanarRotationEnumerator(const Multigraph& g,
                                                   const std::vector<VertexId>& slow)
    : g_(g) {
  std::unordered_set<std::uint32_t> is_slow;
  for (VertexId v : slow)
    if (g.has_vertex(v)) is_slow.insert(v.value);
  std::vector<VertexId> tail;
  for (VertexId v : g.vertices())
    (is_slow.count(v.value) ? tail : verts_).push_back(v);
  fast_count_ = verts_.size();
  verts_.insert(verts_.end(), tail.begin(), tail.end());
  init();
}

void PlanarRotationEnumerator::init() {
  for (std::size_t i = 0; i < verts_.size(); ++i) vpos_[verts_[i].value] = i;
  for (VertexId v : verts_) {
    std::vector<Dart> d = darts_at(g_, v);
    if (d.empty()) {
      anchors_.push_back(Dart{EdgeId{0xffffffffu}, 0});
      tails_.push_back({});
      continue;
    }
    anchors_.push_back(d.front());
    tails_.push_back(std::vector<Dart>(d.begin() + 1, d.end()));
    std::uint64_t fact = 1;
    for (std::size_t k = 2; k <= tails_.back().size(); ++k) {
      if (fact > UINT64_MAX / k) {
        fact = UINT64_MAX;
        break;
      }
      fact *= k;
    }
    if (raw_candidates_ > UINT64_MAX / (fact == 0 ? 1 : fact))
      raw_candidates_ = UINT64_MAX;
    else
      raw_candidates_ *= fact;
  }
}

int PlanarRotationEnumerator::advance_at(std::size_t k) {
  for (std::size_t i = 0; i < k && i < tails_.size(); ++i)
    std::sort(tails_[i].begin(), tails_[i].end());
  for (std::size_t i = k; i < tails_.size(); ++i) {
    if (std::next_permutation(tails_[i].begin(), tails_[i].end())) return (int)i;
    // wrapped back to sorted order; carry to the next vertex
  }
  return -1;
}

bool PlanarRotationEnumerator::suffix_planar(std::size_t k) const {
  // Rotation of each suffix vertex restricted to edges inside the suffix.
  auto key = [](Dart d) { return ((std::uint64_t)d.edge.value << 1) | d.side; };
  std::unordered_map<std::uint64_t, Dart> succ;  // dart -> next in its rotation
  std::vector<std::vector<std::size_t>> adj(verts_.size() - k);
  std::size_t edge_sides = 0;
  for (std::size_t i = k; i < verts_.size(); ++i) {
    std::vector<Dart> order;
    if (anchors_[i].edge.value != 0xffffffffu) order.push_back(anchors_[i]);
    for (Dart d : tails_[i]) order.push_back(d);
    std::vector<Dart> kept;
    for (Dart d : order) {
      auto [a, b] = g_.ends(d.edge);
      VertexId other = d.side == 0 ? b : a;
      auto it = vpos_.find(other.value);
      if (it == vpos_.end() || it->second < k) continue;
      kept.push_back(d);
      adj[i - k].push_back(it->second - k);
    }
    for (std::size_t j = 0; j < kept.size(); ++j)
      succ[key(kept[j])] = kept[(j + 1) % kept.size()];
    edge_sides += kept.size();
  }
  if (edge_sides == 0) return true;
  const std::size_t edges = edge_sides / 2;

  // Count faces by walking dart orbits.
  std::unordered_set<std::uint64_t> used;
  std::size_t faces = 0;
  for (const auto& kv : succ) {
    const std::uint64_t k0 = kv.first;
    if (used.count(k0)) continue;
    ++faces;
    std::uint64_t cur = k0;
    do {
      used.insert(cur);
      Dart d{EdgeId{(std::uint32_t)(cur >> 1)}, (std::uint8_t)(cur & 1)};
      Dart arrive{d.edge, (std::uint8_t)(1 - d.side)};
      cur = key(succ.at(key(arrive)));
    } while (cur != k0);
  }

  // Components over non-isolated suffix vertices; V - E + F == 2C iff every
  // component has genus zero.
  std::vector<int> comp(adj.size(), -1);
  std::size_t comps = 0, nverts = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (adj[s].empty() || comp[s] >= 0) continue;
    ++comps;
    std::vector<std::size_t> stack{s};
    comp[s] = (int)comps;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      ++nverts;
      for (std::size_t y : adj[x])
        if (comp[y] < 0) {
          comp[y] = (int)comps;
          stack.push_back(y);
        }
    }
  }
  return (long)nverts - (long)edges + (long)faces == 2 * (long)comps;
}

RotationSystem PlanarRotationEnumerator::current() const {
  RotationSystem rs;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    std::vector<Dart>& order = rs.rot[verts_[i]];
    if (anchors_[i].edge.value != 0xffffffffu) order.push_back(anchors_[i]);
    for (Dart d : tails_[i]) order.push_back(d);
  }
  return rs;
}

std::optional<RotationSystem> PlanarRotationEnumerator::next() {
  while (!exhausted_) {
    if (deadline_ && (++steps_ & 1023) == 0 &&
        std::chrono::steady_clock::now() > *deadline_) {
      timed_out_ = true;
      return std::nullopt;
    }
    int m;
    if (first_) {
      first_ = false;
      m = (int)tails_.size() - 1;
    } else {
      m = advance_at(skip_from_);
      if (m < 0) {
        exhausted_ = true;
        break;
      }
    }
    skip_from_ = 0;
    // Positions above m kept their permutations and were already validated;
    // recheck suffixes from m down. A failure at k dooms every completion of
    // positions below k, so the odometer jumps at k.
    bool ok = true;
    for (int k = m; k >= 0;) {
      if (deadline_ && (++steps_ & 1023) == 0 &&
          std::chrono::steady_clock::now() > *deadline_) {
        timed_out_ = true;
        return std::nullopt;
      }
      if (suffix_planar((std::size_t)k)) {
        --k;
        continue;
      }
      int m2 = advance_at((std::size_t)k);
      if (m2 < 0) {
        exhausted_ = true;
        ok = false;
        break;
      }
      k = m2;
    }
    if (ok) return current();
  }
  return std::nullopt;
}

EnumerationResult enumerate_planar_projections(const Multigraph& g,
                                               const std::vector<VertexId>& marked,
                                               std::size_t limit) {
  EnumerationResult res;
  PlanarRotationEnumerator en(g, marked);
  while (auto rs = en.next()) {
    if (res.systems.size() == limit) {
      res.overflow = true;
      return res;
    }
    res.systems.push_back(std::move(*rs));
    en.skip_to_next_projection();
  }
  return res;
}

EnumerationResult enumerate_planar_rotation_systems(const Multigraph& g, std::size_t limit) {
  EnumerationResult res;
  PlanarRotationEnumerator en(g);
  while (auto rs = en.next()) {
    if (res.systems.size() == limit) {
      res.overflow = true;
      return res;
    }
    res.systems.push_back(std::move(*rs));
  }
  return res;
}

// ---- rotation comparison ----------------------------------------------------

Compatibility rotations_compatible(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return Compatibility::Incompatible;
  std::size_t n = a.size();
  auto cyclic_equal = [n](const std::vector<std::uint32_t>& x,
                          const std::vector<std::uint32_t>& y) {
    if (n == 0) return true;
    for (std::size_t s = 0; s < n; ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        if (x[(s + i) % n] != y[i]) ok = false;
      if (ok) return true;
    }
    return false;
  };
  std::vector<std::uint32_t> rev(b.rbegin(), b.rend());
  if (cyclic_equal(a, rev)) return Compatibility::Opposite;
  if (cyclic_equal(a, b)) return Compatibility::Same;
  return Compatibility::Incompatible;
}

bool is_fixed_rotation(const Multigraph& g, VertexId v) {
  if (!g.connected()) throw GraphError("is_fixed_rotation requires connected graph");
  if (g.degree(v) <= 2) return true;
  for (VertexId u : proper_cut_vertices(g))
    if (u == v) return false;
  // The rotation at v changes only through moves at a proper 2-cut {v,w}:
  // cyclically permuting the arcs of bridges attached to v, or a Whitney flip
  // reversing one arc. Neither yields a genuinely new rotation (beyond a
  // reflection of the whole embedding) when at most two bridges attach to v
  // and at most one of their arcs has two or more edges.
  for (auto [a, b] : proper_two_cuts(g)) {
    if (a != v && b != v) continue;
    const VertexId w = a == v ? b : a;
    std::size_t attached = 0, wide = 0;
    for (const Bridge& br : bridges(g, {v, w})) {
      std::size_t arc = bridge_degree(g, br, v);
      if (arc >= 1) ++attached;
      if (arc >= 2) ++wide;
    }
    if (attached >= 3) return false;
    if (attached == 2 && wide == 2) return false;
  }
  return true;
}

}  // namespace atomemb
