#include "generate.hpp"

#include <algorithm>

namespace atomemb {

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

bool SplitMix64::chance(double p) {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

Instance gen_toroidal(const std::vector<int>& windings) {
  Instance inst;
  VertexId m = inst.h.add_vertex(), n = inst.h.add_vertex();
  EdgeId p = inst.h.add_edge(m, n), q = inst.h.add_edge(m, n);
  for (int wnd : windings) {
    std::vector<VertexId> ring;
    for (int i = 0; i < wnd; ++i) {
      VertexId a = inst.g.add_vertex(), b = inst.g.add_vertex();
      inst.vertex_atom[a.value] = m;
      inst.vertex_atom[b.value] = n;
      ring.push_back(a);
      ring.push_back(b);
    }
    for (std::size_t i = 0; i < ring.size(); ++i) {
      EdgeId e = inst.g.add_edge(ring[i], ring[(i + 1) % ring.size()]);
      inst.edge_image[e.value] = EdgeImage::pipe(i % 2 == 0 ? p : q);
    }
  }
  return inst;
}

Instance gen_random(std::uint64_t seed, std::size_t g_vertices,
                    std::size_t h_atoms, double density) {
  SplitMix64 rng(seed);
  Instance inst;
  if (h_atoms == 0) h_atoms = 1;

  std::vector<VertexId> atoms;
  for (std::size_t i = 0; i < h_atoms; ++i) atoms.push_back(inst.h.add_vertex());
  // Random tree plus a sprinkling of extra (possibly parallel) pipes.
  for (std::size_t i = 1; i < h_atoms; ++i)
    inst.h.add_edge(atoms[i], atoms[rng.below(i)]);
  for (std::size_t i = 0; i + 1 < h_atoms; ++i)
    if (rng.chance(density / 2))
      inst.h.add_edge(atoms[i], atoms[i + 1 + rng.below(h_atoms - i - 1)]);

  std::vector<VertexId> gvs;
  for (std::size_t i = 0; i < g_vertices; ++i) {
    VertexId v = inst.g.add_vertex();
    inst.vertex_atom[v.value] = atoms[rng.below(h_atoms)];
    gvs.push_back(v);
  }
  for (std::size_t i = 0; i < g_vertices; ++i) {
    for (std::size_t j = i + 1; j < g_vertices; ++j) {
      if (!rng.chance(density)) continue;
      VertexId a = inst.atom_of(gvs[i]), b = inst.atom_of(gvs[j]);
      if (a == b) {
        EdgeId e = inst.g.add_edge(gvs[i], gvs[j]);
        inst.edge_image[e.value] = EdgeImage::atom(a);
        continue;
      }
      std::vector<EdgeId> pipes;
      for (EdgeId p : inst.h.edges()) {
        auto e = inst.h.ends(p);
        if ((e.first == a && e.second == b) || (e.first == b && e.second == a))
          pipes.push_back(p);
      }
      if (pipes.empty()) continue;  // no image available: skip the edge
      EdgeId e = inst.g.add_edge(gvs[i], gvs[j]);
      inst.edge_image[e.value] = EdgeImage::pipe(pipes[rng.below(pipes.size())]);
    }
  }
  return inst;
}

ClusteredInstance gen_cplan(std::uint64_t seed, std::size_t clusters,
                            std::size_t vertices, double density) {
  SplitMix64 rng(seed);
  ClusteredInstance ci;
  if (clusters == 0) clusters = 1;
  std::vector<VertexId> nodes;
  for (std::size_t i = 0; i < clusters; ++i) {
    VertexId n = ci.tree.add_vertex();
    nodes.push_back(n);
    ci.node_names[n.value] = "c" + std::to_string(i);
    if (i > 0) ci.tree.add_edge(n, nodes[rng.below(i)]);
  }
  ci.root = nodes[0];

  std::vector<VertexId> gvs;
  for (std::size_t i = 0; i < vertices; ++i) {
    VertexId v = ci.g.add_vertex();
    gvs.push_back(v);
    ci.node_of_vertex[v.value] = nodes[rng.below(clusters)];
    ci.vertex_names[v.value] = "v" + std::to_string(i);
  }
  for (std::size_t i = 0; i < vertices; ++i)
    for (std::size_t j = i + 1; j < vertices; ++j)
      if (rng.chance(density)) ci.g.add_edge(gvs[i], gvs[j]);
  return ci;
}

}  // namespace atomemb
