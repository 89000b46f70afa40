#include "instance.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace atomemb {

using nlohmann::json;

std::vector<EdgeId> Instance::pipe_edges(EdgeId pipe) const {
  std::vector<EdgeId> out;
  for (EdgeId e : g.edges()) {
    auto it = edge_image.find(e.value);
    if (it != edge_image.end() && it->second.is_pipe && it->second.pipe_id() == pipe)
      out.push_back(e);
  }
  return out;
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  for (EdgeId e : inst.h.edges())
    if (inst.h.is_loop(e))
      out.push_back("H edge " + std::to_string(e.value) + ": loopless invariant violated");
  for (EdgeId e : inst.g.edges())
    if (inst.g.is_loop(e))
      out.push_back("G edge " + std::to_string(e.value) + ": loopless invariant violated");
  for (VertexId v : inst.g.vertices()) {
    auto it = inst.vertex_atom.find(v.value);
    if (it == inst.vertex_atom.end()) {
      out.push_back("G vertex " + std::to_string(v.value) + ": no atom assigned");
      continue;
    }
    if (!inst.h.has_vertex(it->second))
      out.push_back("G vertex " + std::to_string(v.value) + ": assigned atom does not exist");
  }
  for (EdgeId e : inst.g.edges()) {
    auto it = inst.edge_image.find(e.value);
    if (it == inst.edge_image.end()) {
      out.push_back("G edge " + std::to_string(e.value) + ": no image assigned");
      continue;
    }
    auto [u, v] = inst.g.ends(e);
    if (!inst.vertex_atom.count(u.value) || !inst.vertex_atom.count(v.value)) continue;
    VertexId au = inst.atom_of(u), av = inst.atom_of(v);
    const EdgeImage& img = it->second;
    if (au == av) {
      if (img.is_pipe)
        out.push_back("G edge " + std::to_string(e.value) +
                      ": endpoints share an atom, edge must map to that atom");
      else if (img.atom_id() != au)
        out.push_back("G edge " + std::to_string(e.value) + ": maps to the wrong atom");
    } else {
      if (!img.is_pipe) {
        out.push_back("G edge " + std::to_string(e.value) +
                      ": endpoints in different atoms, edge must map to a pipe");
      } else if (!inst.h.has_edge(img.pipe_id())) {
        out.push_back("G edge " + std::to_string(e.value) + ": mapped pipe does not exist");
      } else {
        auto [pa, pb] = inst.h.ends(img.pipe_id());
        if (!((pa == au && pb == av) || (pa == av && pb == au)))
          out.push_back("G edge " + std::to_string(e.value) +
                        ": mapped pipe does not join the endpoint atoms");
      }
    }
  }
  return out;
}

LocalGraph local_graph(const Instance& inst, VertexId atom) {
  if (!inst.h.has_vertex(atom)) throw GraphError("local_graph: unknown atom");
  LocalGraph lg;
  lg.atom = atom;
  for (VertexId v : inst.g.vertices()) {
    if (inst.atom_of(v) != atom) continue;
    VertexId lv = lg.graph.add_vertex();
    lg.local_of_g_vertex[v.value] = lv;
    lg.g_vertex_of_local[lv.value] = v;
  }
  for (EdgeId pipe : inst.h.incident_edges(atom)) {
    VertexId lv = lg.graph.add_vertex();
    lg.local_of_pipe[pipe.value] = lv;
    lg.pipe_of_local[lv.value] = pipe;
  }
  for (EdgeId e : inst.g.edges()) {
    auto [u, v] = inst.g.ends(e);
    EdgeImage img = inst.image_of(e);
    EdgeId le;
    if (!img.is_pipe) {
      if (img.atom_id() != atom) continue;
      le = lg.graph.add_edge(lg.local_of_g_vertex.at(u.value), lg.local_of_g_vertex.at(v.value));
    } else {
      VertexId in_atom;
      if (inst.atom_of(u) == atom)
        in_atom = u;
      else if (inst.atom_of(v) == atom)
        in_atom = v;
      else
        continue;
      le = lg.graph.add_edge(lg.local_of_g_vertex.at(in_atom.value),
                             lg.local_of_pipe.at(img.pipe_id().value));
    }
    lg.g_edge_of_local[le.value] = e;
    lg.local_of_g_edge[e.value] = le;
  }
  return lg;
}

bool is_normal(const Instance& inst) {
  for (EdgeId pipe : inst.h.edges())
    if (inst.pipe_degree(pipe) < 3) return false;
  for (VertexId atom : inst.h.vertices())
    if (!local_graph(inst, atom).graph.connected()) return false;
  return true;
}

namespace {

// Does this component of H (a cycle) satisfy the toroidal local condition?
bool component_toroidal(const Instance& inst, const std::vector<VertexId>& comp) {
  if (comp.size() < 2) return false;
  for (VertexId atom : comp) {
    if (inst.h.degree(atom) != 2) return false;
    for (EdgeId p : inst.h.incident_edges(atom))
      if (inst.h.is_loop(p)) return false;
  }
  for (VertexId atom : comp) {
    LocalGraph lg = local_graph(inst, atom);
    auto pipes = inst.h.incident_edges(atom);
    if (pipes.size() != 2) return false;
    VertexId va = lg.local_of_pipe.at(pipes[0].value);
    VertexId vb = lg.local_of_pipe.at(pipes[1].value);
    const Multigraph& L = lg.graph;
    if (!L.connected() || L.vertex_count() == 0) return false;
    if (L.is_cycle()) continue;  // both virtuals lie on it; any pair serves as poles
    Shape s = classify_shape(L);
    if (s.kind != Shape::PPath) return false;
    auto want = std::minmax(va, vb);
    if (s.pole_a != want.first || s.pole_b != want.second) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<VertexId>> toroidal_components(const Instance& inst) {
  std::vector<std::vector<VertexId>> out;
  for (auto& comp : inst.h.components())
    if (component_toroidal(inst, comp)) out.push_back(comp);
  return out;
}

std::vector<VertexId> nontoroidal_atoms(const Instance& inst) {
  std::unordered_set<std::uint32_t> tor;
  for (auto& comp : toroidal_components(inst))
    for (VertexId a : comp) tor.insert(a.value);
  std::vector<VertexId> out;
  for (VertexId a : inst.h.vertices())
    if (!tor.count(a.value)) out.push_back(a);
  return out;
}

std::size_t delta(const Instance& inst) {
  auto vstar = nontoroidal_atoms(inst);
  if (vstar.empty()) return 2;
  std::size_t d = 0;
  for (VertexId atom : vstar) {
    LocalGraph lg = local_graph(inst, atom);
    for (VertexId v : lg.graph.vertices()) d = std::max(d, lg.graph.degree(v));
  }
  return d;
}

PotentialReport potential(const Instance& inst) {
  PotentialReport rep;
  for (VertexId atom : inst.h.vertices()) {
    LocalGraph lg = local_graph(inst, atom);
    const Multigraph& L = lg.graph;
    rep.n += L.vertex_count();
    for (VertexId v : L.vertices())
      if (L.degree(v) >= 3) ++rep.n_ge3;
    // Cut classes are per connected component; cycles contribute nothing.
    for (auto& comp : L.components()) {
      Multigraph sub;
      for (VertexId v : comp) sub.add_vertex_with_id(v);
      std::set<EdgeId> edges;
      for (VertexId v : comp)
        for (EdgeId e : L.incident_edges(v)) edges.insert(e);
      for (EdgeId e : edges) {
        auto [x, y] = L.ends(e);
        sub.add_edge_with_id(e, x, y);
      }
      std::unordered_set<std::uint32_t> cutv, twocutv;
      for (VertexId v : proper_cut_vertices(sub)) cutv.insert(v.value);
      for (auto [a, b] : proper_two_cuts(sub)) {
        twocutv.insert(a.value);
        twocutv.insert(b.value);
      }
      for (VertexId v : comp) {
        PotentialEntry ent;
        ent.atom = atom;
        ent.local_vertex = v;
        ent.deg = sub.degree(v);
        if (cutv.count(v.value)) {
          ent.xi = 2;
          ent.sigma = 3;
        } else if (twocutv.count(v.value)) {
          ent.xi = 2;
          ent.sigma = 2;
        } else {
          ent.xi = 3;
          ent.sigma = 1;
        }
        std::uint64_t base = ent.deg > (std::size_t)ent.xi ? ent.deg - ent.xi : 0;
        std::uint64_t c = 1;
        for (int i = 0; i < ent.sigma; ++i) c *= base;
        ent.contribution = base == 0 ? 0 : c;
        rep.phi += ent.contribution;
        rep.entries.push_back(ent);
      }
    }
  }
  return rep;
}

// ---- JSON -------------------------------------------------------------------

namespace {

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
    if (!j.contains(want)) throw ParseError(where + ": missing field \"" + std::string(want) + "\"");
}

std::string str_field(const json& j, const char* key, const std::string& where) {
  if (!j.at(key).is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  expect_keys(j, {"H", "G"}, "instance");
  expect_keys(j["H"], {"atoms", "pipes"}, "H");
  expect_keys(j["G"], {"vertices", "edges"}, "G");

  Instance inst;
  std::unordered_map<std::string, VertexId> atom_by_name;
  std::unordered_map<std::string, EdgeId> pipe_by_name;
  std::unordered_map<std::string, VertexId> gv_by_name;

  if (!j["H"]["atoms"].is_array()) throw ParseError("H.atoms must be an array");
  for (auto& a : j["H"]["atoms"]) {
    if (!a.is_string()) throw ParseError("H.atoms entries must be strings");
    std::string name = a.get<std::string>();
    if (atom_by_name.count(name)) throw ParseError("duplicate atom id \"" + name + "\"");
    VertexId v = inst.h.add_vertex();
    atom_by_name[name] = v;
    inst.atom_names[v.value] = name;
  }
  if (!j["H"]["pipes"].is_array()) throw ParseError("H.pipes must be an array");
  for (auto& p : j["H"]["pipes"]) {
    expect_keys(p, {"id", "ends"}, "pipe");
    std::string name = str_field(p, "id", "pipe");
    if (pipe_by_name.count(name)) throw ParseError("duplicate pipe id \"" + name + "\"");
    auto& ends = p.at("ends");
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
      throw ParseError("pipe \"" + name + "\": ends must be [atom, atom]");
    auto a0 = atom_by_name.find(ends[0].get<std::string>());
    auto a1 = atom_by_name.find(ends[1].get<std::string>());
    if (a0 == atom_by_name.end() || a1 == atom_by_name.end())
      throw ParseError("pipe \"" + name + "\": unknown atom in ends");
    EdgeId e = inst.h.add_edge(a0->second, a1->second);
    pipe_by_name[name] = e;
    inst.pipe_names[e.value] = name;
  }
  if (!j["G"]["vertices"].is_array()) throw ParseError("G.vertices must be an array");
  for (auto& v : j["G"]["vertices"]) {
    expect_keys(v, {"id", "atom"}, "G vertex");
    std::string name = str_field(v, "id", "G vertex");
    if (gv_by_name.count(name)) throw ParseError("duplicate G vertex id \"" + name + "\"");
    auto a = atom_by_name.find(str_field(v, "atom", "G vertex"));
    if (a == atom_by_name.end())
      throw ParseError("G vertex \"" + name + "\": unknown atom");
    VertexId gv = inst.g.add_vertex();
    gv_by_name[name] = gv;
    inst.gvertex_names[gv.value] = name;
    inst.vertex_atom[gv.value] = a->second;
  }
  if (!j["G"]["edges"].is_array()) throw ParseError("G.edges must be an array");
  std::unordered_set<std::string> edge_names;
  for (auto& e : j["G"]["edges"]) {
    expect_keys(e, {"id", "ends", "pipe"}, "G edge");
    std::string name = str_field(e, "id", "G edge");
    if (!edge_names.insert(name).second)
      throw ParseError("duplicate G edge id \"" + name + "\"");
    auto& ends = e.at("ends");
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
      throw ParseError("G edge \"" + name + "\": ends must be [vertex, vertex]");
    auto u = gv_by_name.find(ends[0].get<std::string>());
    auto v = gv_by_name.find(ends[1].get<std::string>());
    if (u == gv_by_name.end() || v == gv_by_name.end())
      throw ParseError("G edge \"" + name + "\": unknown vertex in ends");
    EdgeId ge = inst.g.add_edge(u->second, v->second);
    inst.gedge_names[ge.value] = name;
    auto& pipe = e.at("pipe");
    if (pipe.is_null()) {
      VertexId au = inst.vertex_atom.at(u->second.value);
      VertexId av = inst.vertex_atom.at(v->second.value);
      if (au != av)
        throw ParseError("G edge \"" + name + "\": pipe is null but endpoints lie in different atoms");
      inst.edge_image[ge.value] = EdgeImage::atom(au);
    } else if (pipe.is_string()) {
      auto p = pipe_by_name.find(pipe.get<std::string>());
      if (p == pipe_by_name.end())
        throw ParseError("G edge \"" + name + "\": unknown pipe");
      inst.edge_image[ge.value] = EdgeImage::pipe(p->second);
    } else {
      throw ParseError("G edge \"" + name + "\": pipe must be a string or null");
    }
  }
  return inst;
}

namespace {

// Names generated for entities created by rewrites; '#' cannot collide with
// parsed names only by convention, so probe for uniqueness.
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

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json j;
  j["H"]["atoms"] = json::array();
  for (VertexId a : inst.h.vertices())
    j["H"]["atoms"].push_back(pick_name(inst.atom_names, a.value, "a"));
  j["H"]["pipes"] = json::array();
  for (EdgeId p : inst.h.edges()) {
    auto [x, y] = inst.h.ends(p);
    j["H"]["pipes"].push_back({{"id", pick_name(inst.pipe_names, p.value, "p")},
                               {"ends", {pick_name(inst.atom_names, x.value, "a"),
                                         pick_name(inst.atom_names, y.value, "a")}}});
  }
  j["G"]["vertices"] = json::array();
  for (VertexId v : inst.g.vertices()) {
    j["G"]["vertices"].push_back(
        {{"id", pick_name(inst.gvertex_names, v.value, "v")},
         {"atom", pick_name(inst.atom_names, inst.atom_of(v).value, "a")}});
  }
  j["G"]["edges"] = json::array();
  for (EdgeId e : inst.g.edges()) {
    auto [u, v] = inst.g.ends(e);
    json je = {{"id", pick_name(inst.gedge_names, e.value, "e")},
               {"ends", {pick_name(inst.gvertex_names, u.value, "v"),
                         pick_name(inst.gvertex_names, v.value, "v")}}};
    EdgeImage img = inst.image_of(e);
    if (img.is_pipe)
      je["pipe"] = pick_name(inst.pipe_names, img.pipe_id().value, "p");
    else
      je["pipe"] = nullptr;
    j["G"]["edges"].push_back(je);
  }
  return j.dump(2) + "\n";
}

}  // namespace atomemb
