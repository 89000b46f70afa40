#include "reductions.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace atomemb {

using nlohmann::json;

namespace {

std::string pick_name(const std::unordered_map<std::uint32_t, std::string>& names,
                      std::uint32_t id, const char* prefix) {
  auto it = names.find(id);
  if (it != names.end()) return it->second;
  std::unordered_set<std::string> taken;
  for (auto& [k, v] : names) taken.insert(v);
  std::string base = std::string(prefix) + std::to_string(id);
  while (taken.count(base)) base = "_" + base;
  return base;
}

std::string unique_name(std::unordered_set<std::string>& taken, std::string base) {
  while (!taken.insert(base).second) base = "_" + base;
  return base;
}

void expect_keys(const json& j, std::initializer_list<const char*> keys,
                 const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (auto& [k, _] : j.items()) {
    bool known = false;
    for (const char* want : keys)
      if (k == want) known = true;
    if (!known) throw ParseError(where + ": unknown field \"" + k + "\"");
  }
  for (const char* want : keys)
    if (!j.contains(want))
      throw ParseError(where + ": missing field \"" + std::string(want) + "\"");
}

// Parent pointers from the root, for tree-path computation.
struct TreeIndex {
  std::unordered_map<std::uint32_t, VertexId> parent;
  std::unordered_map<std::uint32_t, EdgeId> parent_edge;
  std::unordered_map<std::uint32_t, std::size_t> depth;
};

TreeIndex index_tree(const Multigraph& tree, VertexId root) {
  TreeIndex ti;
  ti.depth[root.value] = 0;
  std::vector<VertexId> queue{root};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId v = queue[i];
    for (EdgeId e : tree.incident_edges(v)) {
      VertexId w = tree.other_end(e, v);
      if (ti.depth.count(w.value)) continue;
      ti.depth[w.value] = ti.depth.at(v.value) + 1;
      ti.parent[w.value] = v;
      ti.parent_edge[w.value] = e;
      queue.push_back(w);
    }
  }
  return ti;
}

}  // namespace

// ---- clustered instances ----------------------------------------------------

std::vector<std::string> validate(const ClusteredInstance& ci) {
  std::vector<std::string> out;
  if (ci.tree.vertex_count() == 0) {
    out.push_back("cluster tree is empty");
    return out;
  }
  if (!ci.tree.has_vertex(ci.root)) out.push_back("root is not a tree node");
  if (!ci.tree.connected() ||
      ci.tree.edge_count() != ci.tree.vertex_count() - 1)
    out.push_back("cluster tree is not a tree");
  for (VertexId v : ci.g.vertices()) {
    auto it = ci.node_of_vertex.find(v.value);
    if (it == ci.node_of_vertex.end())
      out.push_back("vertex " + std::to_string(v.value) + " has no region");
    else if (!ci.tree.has_vertex(it->second))
      out.push_back("vertex " + std::to_string(v.value) + " maps to a non-node");
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (EdgeId e : ci.g.edges()) {
    auto [u, v] = ci.g.ends(e);
    if (u == v) out.push_back("graph has a loop");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) out.push_back("graph has a parallel edge");
  }
  return out;
}

ClusteredInstance parse_clustered(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  expect_keys(j, {"tree", "vertices", "edges"}, "clustered instance");
  if (!j["tree"].is_object()) throw ParseError("tree must be an object");

  ClusteredInstance ci;
  std::unordered_map<std::string, VertexId> node_by_name;
  for (auto& [name, parent] : j["tree"].items()) {
    (void)parent;
    VertexId n = ci.tree.add_vertex();
    node_by_name[name] = n;
    ci.node_names[n.value] = name;
  }
  bool have_root = false;
  for (auto& [name, parent] : j["tree"].items()) {
    if (parent.is_null()) {
      if (have_root) throw ParseError("tree has two roots");
      have_root = true;
      ci.root = node_by_name.at(name);
    } else if (parent.is_string()) {
      auto it = node_by_name.find(parent.get<std::string>());
      if (it == node_by_name.end())
        throw ParseError("tree node \"" + name + "\": unknown parent");
      ci.tree.add_edge(node_by_name.at(name), it->second);
    } else {
      throw ParseError("tree node \"" + name + "\": parent must be a string or null");
    }
  }
  if (!have_root) throw ParseError("tree has no root");
  if (!ci.tree.connected() ||
      ci.tree.edge_count() != ci.tree.vertex_count() - 1)
    throw ParseError("tree parent map contains a cycle");

  if (!j["vertices"].is_array()) throw ParseError("vertices must be an array");
  std::unordered_map<std::string, VertexId> v_by_name;
  for (auto& v : j["vertices"]) {
    expect_keys(v, {"id", "node"}, "vertex");
    std::string name = v.at("id").is_string() ? v.at("id").get<std::string>()
                                              : throw ParseError("vertex id must be a string");
    if (v_by_name.count(name)) throw ParseError("duplicate vertex id \"" + name + "\"");
    if (!v.at("node").is_string()) throw ParseError("vertex node must be a string");
    auto n = node_by_name.find(v.at("node").get<std::string>());
    if (n == node_by_name.end())
      throw ParseError("vertex \"" + name + "\": unknown node");
    VertexId gv = ci.g.add_vertex();
    v_by_name[name] = gv;
    ci.vertex_names[gv.value] = name;
    ci.node_of_vertex[gv.value] = n->second;
  }
  if (!j["edges"].is_array()) throw ParseError("edges must be an array");
  std::set<std::pair<VertexId, VertexId>> seen;
  for (auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("edges entries must be [vertex, vertex]");
    auto u = v_by_name.find(e[0].get<std::string>());
    auto v = v_by_name.find(e[1].get<std::string>());
    if (u == v_by_name.end() || v == v_by_name.end())
      throw ParseError("edge references an unknown vertex");
    if (u->second == v->second) throw ParseError("loops are not allowed");
    if (!seen.insert(std::minmax(u->second, v->second)).second)
      throw ParseError("parallel edges are not allowed");
    ci.g.add_edge(u->second, v->second);
  }
  return ci;
}

std::string clustered_to_json(const ClusteredInstance& ci) {
  TreeIndex ti = index_tree(ci.tree, ci.root);
  json j;
  j["tree"] = json::object();
  for (VertexId n : ci.tree.vertices()) {
    std::string name = pick_name(ci.node_names, n.value, "n");
    auto it = ti.parent.find(n.value);
    if (it == ti.parent.end())
      j["tree"][name] = nullptr;
    else
      j["tree"][name] = pick_name(ci.node_names, it->second.value, "n");
  }
  j["vertices"] = json::array();
  for (VertexId v : ci.g.vertices())
    j["vertices"].push_back(
        {{"id", pick_name(ci.vertex_names, v.value, "v")},
         {"node", pick_name(ci.node_names, ci.node_of_vertex.at(v.value).value, "n")}});
  j["edges"] = json::array();
  for (EdgeId e : ci.g.edges()) {
    auto [u, v] = ci.g.ends(e);
    j["edges"].push_back({pick_name(ci.vertex_names, u.value, "v"),
                          pick_name(ci.vertex_names, v.value, "v")});
  }
  return j.dump(2) + "\n";
}

// ---- polyhedra --------------------------------------------------------------

std::vector<VertexId> facet_vertices(const Multigraph& h,
                                     const std::vector<EdgeId>& facet) {
  const std::size_t k = facet.size();
  if (k < 2) throw GraphError("facet: a cycle needs at least two edges");
  for (EdgeId e : facet)
    if (!h.has_edge(e) || h.is_loop(e)) throw GraphError("facet: bad edge");
  auto [s0, s1] = h.ends(facet[0]);
  for (VertexId start : {std::min(s0, s1), std::max(s0, s1)}) {
    std::vector<VertexId> seq{start};
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      VertexId cur = seq.back();
      auto [a, b] = h.ends(facet[i]);
      if (a != cur && b != cur) {
        ok = false;
        break;
      }
      seq.push_back(h.other_end(facet[i], cur));
    }
    if (!ok || seq.back() != start) continue;
    seq.pop_back();
    std::set<VertexId> distinct(seq.begin(), seq.end());
    if (distinct.size() != seq.size()) continue;
    return seq;
  }
  throw GraphError("facet: edge list is not a cycle");
}

std::vector<std::string> validate(const Polyhedron& p) {
  std::vector<std::string> out;
  for (EdgeId e : p.h.edges())
    if (p.h.is_loop(e)) out.push_back("H has a loop");
  std::unordered_set<std::uint32_t> covered;
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    try {
      facet_vertices(p.h, p.facets[i]);
    } catch (const GraphError& ex) {
      out.push_back("facet " + std::to_string(i) + ": " + ex.what());
      continue;
    }
    for (EdgeId e : p.facets[i]) covered.insert(e.value);
  }
  for (EdgeId e : p.h.edges())
    if (!covered.count(e.value))
      out.push_back("edge " + std::to_string(e.value) + " lies in no facet");
  return out;
}

Polyhedron parse_polyhedron(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  expect_keys(j, {"H", "facets"}, "polyhedron");
  expect_keys(j["H"], {"atoms", "pipes"}, "H");

  Polyhedron p;
  std::unordered_map<std::string, VertexId> atom_by_name;
  std::unordered_map<std::string, EdgeId> pipe_by_name;
  if (!j["H"]["atoms"].is_array()) throw ParseError("H.atoms must be an array");
  for (auto& a : j["H"]["atoms"]) {
    if (!a.is_string()) throw ParseError("H.atoms entries must be strings");
    std::string name = a.get<std::string>();
    if (atom_by_name.count(name)) throw ParseError("duplicate atom id \"" + name + "\"");
    VertexId v = p.h.add_vertex();
    atom_by_name[name] = v;
    p.atom_names[v.value] = name;
  }
  if (!j["H"]["pipes"].is_array()) throw ParseError("H.pipes must be an array");
  for (auto& e : j["H"]["pipes"]) {
    expect_keys(e, {"id", "ends"}, "pipe");
    if (!e.at("id").is_string()) throw ParseError("pipe id must be a string");
    std::string name = e.at("id").get<std::string>();
    if (pipe_by_name.count(name)) throw ParseError("duplicate pipe id \"" + name + "\"");
    auto& ends = e.at("ends");
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
      throw ParseError("pipe \"" + name + "\": ends must be [atom, atom]");
    auto a0 = atom_by_name.find(ends[0].get<std::string>());
    auto a1 = atom_by_name.find(ends[1].get<std::string>());
    if (a0 == atom_by_name.end() || a1 == atom_by_name.end())
      throw ParseError("pipe \"" + name + "\": unknown atom");
    if (a0->second == a1->second)
      throw ParseError("pipe \"" + name + "\": loops are not allowed");
    EdgeId id = p.h.add_edge(a0->second, a1->second);
    pipe_by_name[name] = id;
    p.pipe_names[id.value] = name;
  }
  if (!j["facets"].is_array()) throw ParseError("facets must be an array");
  for (auto& f : j["facets"]) {
    if (!f.is_array()) throw ParseError("facets entries must be arrays");
    std::vector<EdgeId> fac;
    for (auto& e : f) {
      if (!e.is_string()) throw ParseError("facet entries must be edge ids");
      auto it = pipe_by_name.find(e.get<std::string>());
      if (it == pipe_by_name.end())
        throw ParseError("facet references unknown edge \"" + e.get<std::string>() + "\"");
      fac.push_back(it->second);
    }
    try {
      facet_vertices(p.h, fac);
    } catch (const GraphError& ex) {
      throw ParseError(std::string("facet is not a cycle: ") + ex.what());
    }
    p.facets.push_back(std::move(fac));
  }
  return p;
}

std::string polyhedron_to_json(const Polyhedron& p) {
  json j;
  j["H"]["atoms"] = json::array();
  for (VertexId a : p.h.vertices())
    j["H"]["atoms"].push_back(pick_name(p.atom_names, a.value, "a"));
  j["H"]["pipes"] = json::array();
  for (EdgeId e : p.h.edges()) {
    auto [x, y] = p.h.ends(e);
    j["H"]["pipes"].push_back({{"id", pick_name(p.pipe_names, e.value, "p")},
                               {"ends", {pick_name(p.atom_names, x.value, "a"),
                                         pick_name(p.atom_names, y.value, "a")}}});
  }
  j["facets"] = json::array();
  for (const auto& f : p.facets) {
    json jf = json::array();
    for (EdgeId e : f) jf.push_back(pick_name(p.pipe_names, e.value, "p"));
    j["facets"].push_back(jf);
  }
  return j.dump(2) + "\n";
}

LinkGraph link_graph(const Polyhedron& p, VertexId v) {
  if (!p.h.has_vertex(v)) throw GraphError("link: no such vertex");
  LinkGraph lk;
  for (EdgeId e : p.h.incident_edges(v)) {
    VertexId lv = lk.graph.add_vertex();
    lk.h_edge_of_local[lv.value] = e;
    lk.local_of_h_edge[e.value] = lv;
  }
  for (std::size_t fi = 0; fi < p.facets.size(); ++fi) {
    const auto& f = p.facets[fi];
    const auto seq = facet_vertices(p.h, f);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] != v) continue;
      EdgeId before = f[(i + seq.size() - 1) % seq.size()];
      EdgeId after = f[i];
      EdgeId le = lk.graph.add_edge(lk.local_of_h_edge.at(before.value),
                                    lk.local_of_h_edge.at(after.value));
      lk.facet_of_edge[le.value] = fi;
    }
  }
  return lk;
}

// ---- converters -------------------------------------------------------------

Instance from_cplanarity(const ClusteredInstance& ci) {
  auto diags = validate(ci);
  if (!diags.empty()) throw GraphError("from_cplanarity: " + diags.front());
  Instance inst;
  // Atoms and pipes inherit the tree's ids because the tree is copied
  // verbatim.
  inst.h = ci.tree;
  inst.atom_names = ci.node_names;
  TreeIndex ti = index_tree(ci.tree, ci.root);

  for (VertexId v : ci.g.vertices()) {
    VertexId gv = inst.g.add_vertex();
    if (gv != v) throw GraphError("from_cplanarity: id drift");
    inst.vertex_atom[gv.value] = ci.node_of_vertex.at(v.value);
    auto it = ci.vertex_names.find(v.value);
    if (it != ci.vertex_names.end()) inst.gvertex_names[gv.value] = it->second;
  }
  for (EdgeId e : ci.g.edges()) {
    auto [u, v] = ci.g.ends(e);
    VertexId nu = ci.node_of_vertex.at(u.value), nv = ci.node_of_vertex.at(v.value);
    // Tree path u -> v: climb both sides to the common ancestor.
    std::vector<std::pair<VertexId, EdgeId>> up, down;  // (node entered, edge used)
    VertexId a = nu, b = nv;
    while (ti.depth.at(a.value) > ti.depth.at(b.value)) {
      up.push_back({ti.parent.at(a.value), ti.parent_edge.at(a.value)});
      a = ti.parent.at(a.value);
    }
    while (ti.depth.at(b.value) > ti.depth.at(a.value)) {
      down.push_back({b, ti.parent_edge.at(b.value)});
      b = ti.parent.at(b.value);
    }
    while (a != b) {
      up.push_back({ti.parent.at(a.value), ti.parent_edge.at(a.value)});
      down.push_back({b, ti.parent_edge.at(b.value)});
      a = ti.parent.at(a.value);
      b = ti.parent.at(b.value);
    }
    std::vector<std::pair<VertexId, EdgeId>> path = up;  // nodes after each hop
    for (auto it = down.rbegin(); it != down.rend(); ++it) path.push_back(*it);

    if (path.empty()) {
      EdgeId ge = inst.g.add_edge(u, v);
      inst.edge_image[ge.value] = EdgeImage::atom(nu);
      continue;
    }
    VertexId prev = u;
    for (std::size_t i = 0; i < path.size(); ++i) {
      VertexId next =
          i + 1 == path.size() ? v : [&] {
            VertexId w = inst.g.add_vertex();
            inst.vertex_atom[w.value] = path[i].first;
            return w;
          }();
      EdgeId ge = inst.g.add_edge(prev, next);
      inst.edge_image[ge.value] = EdgeImage::pipe(path[i].second);
      prev = next;
    }
  }
  return inst;
}

Instance from_thickenability(const Polyhedron& p) {
  auto diags = validate(p);
  if (!diags.empty()) throw GraphError("from_thickenability: " + diags.front());
  Instance inst;
  inst.h = p.h;
  inst.atom_names = p.atom_names;
  inst.pipe_names = p.pipe_names;
  for (const auto& f : p.facets) {
    const auto seq = facet_vertices(p.h, f);
    std::vector<VertexId> ring;
    for (VertexId at : seq) {
      VertexId gv = inst.g.add_vertex();
      inst.vertex_atom[gv.value] = at;
      ring.push_back(gv);
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      EdgeId ge = inst.g.add_edge(ring[i], ring[(i + 1) % ring.size()]);
      inst.edge_image[ge.value] = EdgeImage::pipe(f[i]);
    }
  }
  return inst;
}

Polyhedron to_thickenability(const Instance& inst) {
  Polyhedron p;
  std::unordered_set<std::string> taken;
  std::unordered_map<std::uint32_t, std::pair<VertexId, VertexId>> sides;
  for (VertexId mu : inst.h.vertices()) {
    std::string base = pick_name(inst.atom_names, mu.value, "a");
    VertexId a0 = p.h.add_vertex(), a1 = p.h.add_vertex();
    sides[mu.value] = {a0, a1};
    p.atom_names[a0.value] = unique_name(taken, base + ".0");
    p.atom_names[a1.value] = unique_name(taken, base + ".1");
  }
  taken.clear();
  std::unordered_map<std::uint32_t, EdgeId> vertical;  // G vertex -> edge
  for (VertexId u : inst.g.vertices()) {
    // An isolated vertex contributes an edge lying in no facet, which a
    // 2-polyhedron forbids; it constrains neither side, so drop it.
    if (inst.g.degree(u) == 0) continue;
    auto [a0, a1] = sides.at(inst.atom_of(u).value);
    EdgeId e = p.h.add_edge(a0, a1);
    vertical[u.value] = e;
    p.pipe_names[e.value] =
        unique_name(taken, pick_name(inst.gvertex_names, u.value, "v"));
  }
  std::unordered_map<std::uint32_t, std::pair<EdgeId, EdgeId>> doubled;
  for (EdgeId rho : inst.h.edges()) {
    // Same as isolated vertices: a pipe no edge crosses yields facet-free
    // doubled edges and imposes no constraint.
    if (inst.pipe_degree(rho) == 0) continue;
    auto [mu, nu] = inst.h.ends(rho);
    EdgeId r0 = p.h.add_edge(sides.at(mu.value).first, sides.at(nu.value).first);
    EdgeId r1 = p.h.add_edge(sides.at(mu.value).second, sides.at(nu.value).second);
    doubled[rho.value] = {r0, r1};
    std::string base = pick_name(inst.pipe_names, rho.value, "p");
    p.pipe_names[r0.value] = unique_name(taken, base + ".0");
    p.pipe_names[r1.value] = unique_name(taken, base + ".1");
  }
  for (EdgeId ge : inst.g.edges()) {
    auto [u, v] = inst.g.ends(ge);
    EdgeImage img = inst.image_of(ge);
    if (!img.is_pipe) {
      p.facets.push_back({vertical.at(u.value), vertical.at(v.value)});
    } else {
      auto [r0, r1] = doubled.at(img.pipe_id().value);
      auto [mu, nu] = inst.h.ends(img.pipe_id());
      VertexId at_mu = inst.atom_of(u) == mu ? u : v;
      VertexId at_nu = inst.g.other_end(ge, at_mu);
      p.facets.push_back({r0, vertical.at(at_nu.value), r1,
                          vertical.at(at_mu.value)});
    }
  }
  return p;
}

}  // namespace atomemb
