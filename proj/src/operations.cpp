#include "operations.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace atomemb {
namespace {

struct Snapshot {
  std::uint32_t gv, ge, hv, he;
};

Snapshot take(const Instance& inst) {
  return {inst.g.vertex_id_bound(), inst.g.edge_id_bound(),
          inst.h.vertex_id_bound(), inst.h.edge_id_bound()};
}

void fill_created(const Instance& inst, const Snapshot& s, TraceEntry& e) {
  for (std::uint32_t i = s.gv; i < inst.g.vertex_id_bound(); ++i)
    if (inst.g.has_vertex(VertexId{i})) e.created_vertices.push_back(i);
  for (std::uint32_t i = s.ge; i < inst.g.edge_id_bound(); ++i)
    if (inst.g.has_edge(EdgeId{i})) e.created_edges.push_back(i);
  for (std::uint32_t i = s.hv; i < inst.h.vertex_id_bound(); ++i)
    if (inst.h.has_vertex(VertexId{i})) e.created_atoms.push_back(i);
  for (std::uint32_t i = s.he; i < inst.h.edge_id_bound(); ++i)
    if (inst.h.has_edge(EdgeId{i})) e.created_pipes.push_back(i);
}

void remove_g_edge(Instance& inst, EdgeId e) {
  inst.g.remove_edge(e);
  inst.edge_image.erase(e.value);
  inst.gedge_names.erase(e.value);
}

EdgeId add_g_edge(Instance& inst, VertexId u, VertexId v, EdgeImage img) {
  EdgeId e = inst.g.add_edge(u, v);
  inst.edge_image.emplace(e.value, img);
  return e;
}

VertexId add_g_vertex(Instance& inst, VertexId atom) {
  VertexId v = inst.g.add_vertex();
  inst.vertex_atom.emplace(v.value, atom);
  return v;
}

// Suppresses a pipe with fiber size <= 2. Returns the new ordinary stubs,
// one per endpoint in h.ends(pipe) order (absent when the fiber is empty).
struct SuppressStubs {
  std::optional<VertexId> at_first, at_second;
};

SuppressStubs suppress_core(Instance& inst, EdgeId pipe) {
  if (!inst.h.has_edge(pipe)) throw OpError("suppress: no such pipe");
  const auto fiber = inst.pipe_edges(pipe);
  if (fiber.size() > 2) throw OpError("suppress: pipe degree exceeds 2");
  const auto [mu, nu] = inst.h.ends(pipe);
  SuppressStubs stubs;
  if (!fiber.empty()) {
    VertexId up = add_g_vertex(inst, mu);
    VertexId vp = add_g_vertex(inst, nu);
    stubs.at_first = up;
    stubs.at_second = vp;
    for (EdgeId e : fiber) {
      const auto [a, b] = inst.g.ends(e);
      VertexId u = inst.atom_of(a) == mu ? a : b;
      VertexId v = inst.g.other_end(e, u);
      remove_g_edge(inst, e);
      add_g_edge(inst, u, up, EdgeImage::atom(mu));
      add_g_edge(inst, v, vp, EdgeImage::atom(nu));
    }
  }
  inst.h.remove_edge(pipe);
  inst.pipe_names.erase(pipe.value);
  return stubs;
}

// Splits an atom into one atom per local-graph component. Requires the local
// graph to be disconnected (and nonempty).
std::vector<VertexId> split_core(Instance& inst, VertexId atom) {
  LocalGraph lg = local_graph(inst, atom);
  const auto comps = lg.graph.components();
  if (comps.size() < 2) throw OpError("split: local graph is connected");
  std::vector<VertexId> new_atoms;
  for (const auto& comp : comps) {
    VertexId na = inst.h.add_vertex();
    new_atoms.push_back(na);
    for (VertexId lv : comp) {
      if (lg.is_virtual(lv)) {
        EdgeId pipe = lg.pipe_of_local.at(lv.value);
        VertexId other = inst.h.other_end(pipe, atom);
        inst.h.reattach(pipe, other, na);
      } else {
        inst.vertex_atom[lg.g_vertex_of_local.at(lv.value).value] = na;
      }
    }
  }
  for (auto& [ge, img] : inst.edge_image)
    if (!img.is_pipe && img.atom_id() == atom)
      img = EdgeImage::atom(inst.atom_of(inst.g.ends(EdgeId{ge}).first));
  inst.h.remove_vertex(atom);
  inst.atom_names.erase(atom.value);
  return new_atoms;
}

void hooks_core(Instance& inst, RewriteTrace* trace) {
  for (;;) {
    // Fiber sizes in one sweep; pipes of degree < 3 get suppressed first.
    std::unordered_map<std::uint32_t, std::size_t> fiber;
    for (const auto& [ge, img] : inst.edge_image)
      if (img.is_pipe) ++fiber[img.id];
    std::optional<EdgeId> low;
    for (EdgeId p : inst.h.edges()) {
      auto it = fiber.find(p.value);
      if (it == fiber.end() || it->second < 3) {
        low = p;
        break;
      }
    }
    if (low) {
      TraceEntry e;
      e.op = "suppress";
      e.auto_hook = true;
      e.pipe_params.push_back(low->value);
      Snapshot s = take(inst);
      suppress_core(inst, *low);
      fill_created(inst, s, e);
      if (trace) trace->entries.push_back(std::move(e));
      continue;
    }
    std::optional<VertexId> bad;
    for (VertexId a : inst.h.vertices()) {
      if (local_graph(inst, a).graph.components().size() >= 2) {
        bad = a;
        break;
      }
    }
    if (!bad) break;
    TraceEntry e;
    e.op = "split";
    e.auto_hook = true;
    e.pipe_params.push_back(bad->value);
    Snapshot s = take(inst);
    split_core(inst, *bad);
    fill_created(inst, s, e);
    if (trace) trace->entries.push_back(std::move(e));
  }
}

void finish(Instance& inst, TraceEntry&& e, RewriteTrace* trace, bool hooks) {
  if (trace) trace->entries.push_back(std::move(e));
  if (hooks) hooks_core(inst, trace);
}

}  // namespace

std::size_t RewriteTrace::op_count() const {
  std::size_t n = 0;
  for (const auto& e : entries)
    if (!e.auto_hook) ++n;
  return n;
}

Instance suppress(Instance inst, EdgeId pipe, RewriteTrace* trace, bool hooks) {
  TraceEntry e;
  e.op = "suppress";
  e.pipe_params.push_back(pipe.value);
  Snapshot s = take(inst);
  suppress_core(inst, pipe);
  fill_created(inst, s, e);
  finish(inst, std::move(e), trace, hooks);
  return inst;
}

Instance split(Instance inst, VertexId atom, RewriteTrace* trace, bool hooks) {
  if (!inst.h.has_vertex(atom)) throw OpError("split: no such atom");
  TraceEntry e;
  e.op = "split";
  e.pipe_params.push_back(atom.value);
  Snapshot s = take(inst);
  split_core(inst, atom);
  fill_created(inst, s, e);
  finish(inst, std::move(e), trace, hooks);
  return inst;
}

Instance detach(Instance inst, VertexId gv, RewriteTrace* trace, bool hooks) {
  if (!inst.g.has_vertex(gv)) throw OpError("detach: no such vertex");
  VertexId atom = inst.atom_of(gv);
  LocalGraph lg = local_graph(inst, atom);
  VertexId lv = lg.local_of_g_vertex.at(gv.value);
  for (const Bridge& b : bridges(lg.graph, {lv})) {
    Multigraph sub = bridge_subgraph(lg.graph, b, {lv});
    if (!is_ppath_with_pole(sub, lv))
      throw OpError("detach: a bridge is not a p-path with a pole at the vertex");
  }
  TraceEntry e;
  e.op = "detach";
  e.vertex_params.push_back(gv.value);
  Snapshot s = take(inst);
  for (EdgeId ge : inst.g.incident_edges(gv)) {
    const auto [a, b] = inst.g.ends(ge);
    VertexId leaf = add_g_vertex(inst, atom);
    if (a == gv)
      inst.g.reattach(ge, leaf, b);
    else
      inst.g.reattach(ge, a, leaf);
  }
  inst.g.remove_vertex(gv);
  inst.vertex_atom.erase(gv.value);
  inst.gvertex_names.erase(gv.value);
  fill_created(inst, s, e);
  finish(inst, std::move(e), trace, hooks);
  return inst;
}

Instance enclose(Instance inst, const LocalGraph& lg_in,
                 const std::vector<VertexId>& cut_local, const Bridge& bridge,
                 RewriteTrace* trace, bool hooks, VertexId* new_atom_out,
                 EdgeId* new_pipe_out) {
  VertexId nu = lg_in.atom;
  if (!inst.h.has_vertex(nu)) throw OpError("enclose: no such atom");
  LocalGraph lg = local_graph(inst, nu);
  for (VertexId c : cut_local)
    if (!lg.graph.has_vertex(c)) throw OpError("enclose: stale cut vertex");
  const auto candidate_bridges = bridges(lg.graph, cut_local);
  const Bridge* match = nullptr;
  for (const Bridge& b : candidate_bridges)
    if (b.edges == bridge.edges) {
      match = &b;
      break;
    }
  if (!match) throw OpError("enclose: not a bridge of the given cut");
  if (match->interior.empty())
    throw OpError("enclose: bridge has empty interior");

  TraceEntry te;
  te.op = "enclose";
  te.pipe_params.push_back(nu.value);
  for (VertexId c : cut_local)
    te.cut_params.push_back(
        lg.is_virtual(c) ? "p:" + std::to_string(lg.pipe_of_local.at(c.value).value)
                         : "v:" + std::to_string(lg.g_vertex_of_local.at(c.value).value));
  for (EdgeId le : match->edges) te.edge_params.push_back(lg.original(le).value);
  Snapshot s = take(inst);

  VertexId nu2 = inst.h.add_vertex();
  EdgeId pi = inst.h.add_edge(nu, nu2);
  std::set<std::uint32_t> cut;
  for (VertexId c : cut_local) cut.insert(c.value);

  for (VertexId lv : match->interior) {
    if (lg.is_virtual(lv)) {
      EdgeId rho = lg.pipe_of_local.at(lv.value);
      VertexId other = inst.h.other_end(rho, nu);
      inst.h.reattach(rho, other, nu2);
    } else {
      inst.vertex_atom[lg.g_vertex_of_local.at(lv.value).value] = nu2;
    }
  }
  for (EdgeId le : match->edges) {
    const auto [x, y] = lg.graph.ends(le);
    EdgeId ge = lg.original(le);
    bool x_cut = cut.count(x.value) != 0, y_cut = cut.count(y.value) != 0;
    if (!x_cut && !y_cut) {
      if (!lg.is_virtual(x) && !lg.is_virtual(y))
        inst.edge_image[ge.value] = EdgeImage::atom(nu2);
      continue;
    }
    VertexId vi = x_cut ? x : y;  // cut end
    VertexId u = x_cut ? y : x;   // interior end
    if (!lg.is_virtual(vi) && !lg.is_virtual(u)) {
      inst.edge_image[ge.value] = EdgeImage::pipe(pi);
      continue;
    }
    // Subdivide the original edge by w; the piece at the boundary vertex
    // maps to the new pipe, the remainder keeps the old image.
    EdgeImage old = inst.image_of(ge);
    VertexId anchor = lg.is_virtual(vi) ? lg.g_vertex_of_local.at(u.value)
                                        : lg.g_vertex_of_local.at(vi.value);
    VertexId z = inst.g.other_end(ge, anchor);
    VertexId w = add_g_vertex(inst, lg.is_virtual(vi) ? nu : nu2);
    remove_g_edge(inst, ge);
    add_g_edge(inst, anchor, w, EdgeImage::pipe(pi));
    add_g_edge(inst, w, z, old);
  }

  fill_created(inst, s, te);
  if (new_atom_out) *new_atom_out = nu2;
  if (new_pipe_out) *new_pipe_out = pi;
  finish(inst, std::move(te), trace, hooks);
  return inst;
}

Instance stretch_ordinary(Instance inst, VertexId gv,
                          const std::vector<EdgeId>& g_edges,
                          RewriteTrace* trace, bool hooks) {
  if (!inst.g.has_vertex(gv)) throw OpError("stretch: no such vertex");
  const auto inc = inst.g.incident_edges(gv);
  if (g_edges.empty() || g_edges.size() >= inc.size())
    throw OpError("stretch: need a proper nonempty edge subset");
  for (EdgeId e : g_edges)
    if (!std::binary_search(inc.begin(), inc.end(), e))
      throw OpError("stretch: edge not incident to the vertex");
  TraceEntry te;
  te.op = "stretch-ordinary";
  te.vertex_params.push_back(gv.value);
  for (EdgeId e : g_edges) te.edge_params.push_back(e.value);
  Snapshot s = take(inst);
  VertexId atom = inst.atom_of(gv);
  VertexId up = add_g_vertex(inst, atom);
  for (EdgeId e : g_edges) {
    const auto [a, b] = inst.g.ends(e);
    if (a == gv)
      inst.g.reattach(e, up, b);
    else
      inst.g.reattach(e, a, up);
  }
  add_g_edge(inst, gv, up, EdgeImage::atom(atom));
  fill_created(inst, s, te);
  finish(inst, std::move(te), trace, hooks);
  return inst;
}

Instance stretch_virtual(Instance inst, EdgeId pipe,
                         const std::vector<EdgeId>& g_edges,
                         RewriteTrace* trace, bool hooks, EdgeId* new_pipe_out) {
  if (!inst.h.has_edge(pipe)) throw OpError("stretch: no such pipe");
  const auto fiber = inst.pipe_edges(pipe);
  if (g_edges.empty() || g_edges.size() >= fiber.size())
    throw OpError("stretch: need a proper nonempty edge subset");
  for (EdgeId e : g_edges)
    if (!std::binary_search(fiber.begin(), fiber.end(), e))
      throw OpError("stretch: edge not in the pipe's fiber");
  TraceEntry te;
  te.op = "stretch-virtual";
  te.pipe_params.push_back(pipe.value);
  for (EdgeId e : g_edges) te.edge_params.push_back(e.value);
  Snapshot s = take(inst);
  const auto [mu, nu] = inst.h.ends(pipe);
  EdgeId rho2 = inst.h.add_edge(mu, nu);
  for (EdgeId e : g_edges) inst.edge_image[e.value] = EdgeImage::pipe(rho2);
  VertexId a = add_g_vertex(inst, mu);
  VertexId b = add_g_vertex(inst, nu);
  add_g_edge(inst, a, b, EdgeImage::pipe(pipe));
  add_g_edge(inst, a, b, EdgeImage::pipe(rho2));
  fill_created(inst, s, te);
  if (new_pipe_out) *new_pipe_out = rho2;
  finish(inst, std::move(te), trace, hooks);
  return inst;
}

Instance contract(Instance inst, EdgeId pipe, RewriteTrace* trace, bool hooks) {
  if (!inst.h.has_edge(pipe)) throw OpError("contract: no such pipe");
  const auto [mu, nu] = inst.h.ends(pipe);
  for (EdgeId p : inst.h.incident_edges(mu))
    if (p != pipe && inst.h.other_end(p, mu) == nu)
      throw OpError("contract: atoms joined by more than one pipe");
  LocalGraph lm = local_graph(inst, mu), ln = local_graph(inst, nu);
  VertexId vm = lm.local_of_pipe.at(pipe.value), vn = ln.local_of_pipe.at(pipe.value);
  bool both_stars = is_pstar_center(lm.graph, vm) && is_pstar_center(ln.graph, vn);
  bool one_path =
      is_ppath_with_pole(lm.graph, vm) || is_ppath_with_pole(ln.graph, vn);
  if (!both_stars && !one_path)
    throw OpError("contract: endpoints are neither p-star centers nor a p-path pole");
  std::size_t d = lm.graph.degree(vm);
  for (const Multigraph* g : {&lm.graph, &ln.graph})
    for (VertexId v : g->vertices())
      if (g->degree(v) > d)
        throw OpError("contract: virtual vertices do not have maximum degree");

  TraceEntry te;
  te.op = "contract";
  te.pipe_params.push_back(pipe.value);
  Snapshot s = take(inst);
  VertexId kappa = inst.h.add_vertex();
  inst.h.remove_edge(pipe);
  inst.pipe_names.erase(pipe.value);
  for (VertexId old : {mu, nu}) {
    for (EdgeId p : inst.h.incident_edges(old))
      inst.h.reattach(p, inst.h.other_end(p, old), kappa);
    inst.h.remove_vertex(old);
    inst.atom_names.erase(old.value);
  }
  for (auto& [gv, a] : inst.vertex_atom)
    if (a == mu || a == nu) a = kappa;
  for (auto& [ge, img] : inst.edge_image) {
    if (img.is_pipe ? img.pipe_id() == pipe
                    : (img.atom_id() == mu || img.atom_id() == nu))
      img = EdgeImage::atom(kappa);
  }
  fill_created(inst, s, te);
  finish(inst, std::move(te), trace, hooks);
  return inst;
}

Instance delete_edge(Instance inst, VertexId atom, EdgeId g_edge,
                     RewriteTrace* trace, bool hooks) {
  if (!inst.h.has_vertex(atom)) throw OpError("delete: no such atom");
  LocalGraph lg = local_graph(inst, atom);
  auto it = lg.local_of_g_edge.find(g_edge.value);
  if (it == lg.local_of_g_edge.end())
    throw OpError("delete: edge not in the local graph");
  EdgeId le = it->second;
  for (VertexId v : lg.graph.vertices())
    if (lg.graph.degree(v) > 3) throw OpError("delete: local graph not subcubic");
  {
    Multigraph probe = lg.graph;
    const std::size_t before = probe.components().size();
    probe.remove_edge(le);
    if (probe.components().size() <= before)
      throw OpError("delete: not a cut edge");
  }
  const auto [x, y] = lg.graph.ends(le);
  bool xv = lg.is_virtual(x), yv = lg.is_virtual(y);

  TraceEntry te;
  te.op = "delete";
  te.pipe_params.push_back(atom.value);
  te.edge_params.push_back(g_edge.value);
  Snapshot s = take(inst);
  if (!xv && !yv) {
    remove_g_edge(inst, g_edge);
  } else {
    VertexId ord = xv ? y : x;
    EdgeId rho = lg.pipe_of_local.at((xv ? x : y).value);
    std::size_t fiber = inst.pipe_degree(rho);
    if (fiber < 2 || fiber > 3)
      throw OpError("delete: pipe degree must be 2 or 3");
    VertexId mu = inst.h.other_end(rho, atom);
    VertexId w = inst.g.other_end(g_edge, lg.g_vertex_of_local.at(ord.value));
    remove_g_edge(inst, g_edge);
    SuppressStubs stubs = suppress_core(inst, rho);
    VertexId vprime =
        inst.atom_of(*stubs.at_first) == mu ? *stubs.at_first : *stubs.at_second;
    add_g_edge(inst, vprime, w, EdgeImage::atom(mu));
  }
  fill_created(inst, s, te);
  finish(inst, std::move(te), trace, hooks);
  return inst;
}

Instance run_hooks(Instance inst, RewriteTrace* trace) {
  hooks_core(inst, trace);
  return inst;
}

// ---- trace serialization ---------------------------------------------------

std::string trace_to_jsonl(const RewriteTrace& t) {
  std::string out;
  for (const auto& e : t.entries) {
    nlohmann::json j;
    j["op"] = e.op;
    j["auto"] = e.auto_hook;
    j["v"] = e.vertex_params;
    j["p"] = e.pipe_params;
    j["e"] = e.edge_params;
    j["cut"] = e.cut_params;
    j["created"] = {{"atoms", e.created_atoms},
                    {"pipes", e.created_pipes},
                    {"vertices", e.created_vertices},
                    {"edges", e.created_edges}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

RewriteTrace trace_from_jsonl(const std::string& text) {
  RewriteTrace t;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw OpError(std::string("trace: bad json line: ") + ex.what());
    }
    TraceEntry e;
    e.op = j.at("op").get<std::string>();
    e.auto_hook = j.at("auto").get<bool>();
    e.vertex_params = j.at("v").get<std::vector<std::uint32_t>>();
    e.pipe_params = j.at("p").get<std::vector<std::uint32_t>>();
    e.edge_params = j.at("e").get<std::vector<std::uint32_t>>();
    e.cut_params = j.at("cut").get<std::vector<std::string>>();
    const auto& c = j.at("created");
    e.created_atoms = c.at("atoms").get<std::vector<std::uint32_t>>();
    e.created_pipes = c.at("pipes").get<std::vector<std::uint32_t>>();
    e.created_vertices = c.at("vertices").get<std::vector<std::uint32_t>>();
    e.created_edges = c.at("edges").get<std::vector<std::uint32_t>>();
    t.entries.push_back(std::move(e));
  }
  return t;
}

Instance replay_trace(const Instance& initial, const RewriteTrace& t) {
  Instance inst = initial;
  bool leading = true;
  for (const auto& e : t.entries) {
    if (e.auto_hook) {
      // Hook entries are regenerated by the preceding op; leading ones come
      // from preprocessing.
      if (leading) {
        inst = run_hooks(std::move(inst));
        leading = false;
      }
      continue;
    }
    leading = false;
    auto eids = [&] {
      std::vector<EdgeId> r;
      for (auto v : e.edge_params) r.push_back(EdgeId{v});
      return r;
    };
    if (e.op == "suppress") {
      inst = suppress(std::move(inst), EdgeId{e.pipe_params.at(0)});
    } else if (e.op == "split") {
      inst = split(std::move(inst), VertexId{e.pipe_params.at(0)});
    } else if (e.op == "detach") {
      inst = detach(std::move(inst), VertexId{e.vertex_params.at(0)});
    } else if (e.op == "stretch-ordinary") {
      inst = stretch_ordinary(std::move(inst), VertexId{e.vertex_params.at(0)},
                              eids());
    } else if (e.op == "stretch-virtual") {
      inst = stretch_virtual(std::move(inst), EdgeId{e.pipe_params.at(0)}, eids());
    } else if (e.op == "contract") {
      inst = contract(std::move(inst), EdgeId{e.pipe_params.at(0)});
    } else if (e.op == "delete") {
      inst = delete_edge(std::move(inst), VertexId{e.pipe_params.at(0)},
                         EdgeId{e.edge_params.at(0)});
    } else if (e.op == "enclose") {
      LocalGraph lg = local_graph(inst, VertexId{e.pipe_params.at(0)});
      std::vector<VertexId> cut;
      for (const auto& tok : e.cut_params) {
        std::uint32_t id = (std::uint32_t)std::stoul(tok.substr(2));
        if (tok.rfind("v:", 0) == 0)
          cut.push_back(lg.local_of_g_vertex.at(id));
        else if (tok.rfind("p:", 0) == 0)
          cut.push_back(lg.local_of_pipe.at(id));
        else
          throw OpError("trace: bad cut token " + tok);
      }
      std::vector<EdgeId> want;
      for (auto v : e.edge_params) want.push_back(lg.local_of_g_edge.at(v));
      std::sort(want.begin(), want.end());
      const Bridge* match = nullptr;
      auto bs = bridges(lg.graph, cut);
      for (const Bridge& b : bs)
        if (b.edges == want) {
          match = &b;
          break;
        }
      if (!match) throw OpError("trace: enclose bridge not found");
      inst = enclose(std::move(inst), lg, cut, *match);
    } else {
      throw OpError("trace: unknown op " + e.op);
    }
  }
  return inst;
}

}  // namespace atomemb
