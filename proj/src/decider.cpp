#include "decider.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "embedding.hpp"
#include "twosat.hpp"

namespace atomemb {
namespace {

constexpr std::size_t kScanGuard = 1000000;

std::string atom_label(const Instance& inst, VertexId a) {
  auto it = inst.atom_names.find(a.value);
  if (it != inst.atom_names.end()) return it->second;
  return "atom#" + std::to_string(a.value);
}

std::string pipe_label(const Instance& inst, EdgeId p) {
  auto it = inst.pipe_names.find(p.value);
  if (it != inst.pipe_names.end()) return it->second;
  return "pipe#" + std::to_string(p.value);
}

std::optional<VertexId> first_nonplanar(const Instance& inst) {
  for (VertexId a : inst.h.vertices())
    if (!test_planarity(local_graph(inst, a).graph)) return a;
  return std::nullopt;
}

StepResult negative(Reason reason, std::string detail) {
  StepResult r;
  r.reason = reason;
  r.detail = std::move(detail);
  return r;
}

// Rotation at a local vertex in the reference (deterministic) planar
// embedding, reported as original G-edge ids; nullopt when nonplanar.
std::optional<std::vector<EdgeId>> ref_rotation(const LocalGraph& lg, VertexId lv) {
  auto rs = planar_rotation_system(lg.graph);
  if (!rs) return std::nullopt;
  std::vector<EdgeId> out;
  for (const Dart& d : rs->rot.at(lv)) out.push_back(lg.original(d.edge));
  return out;
}

// k consecutive entries starting at the lowest-id edge.
std::vector<EdgeId> consecutive_block(const std::vector<EdgeId>& rot, std::size_t k) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < rot.size(); ++i)
    if (rot[i].value < rot[start].value) start = i;
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(rot[(start + i) % rot.size()]);
  return out;
}

// A stable handle on a local vertex: the G vertex for an ordinary vertex,
// the pipe for a virtual one. Survives rewrites that keep the entity alive.
struct LocalRef {
  bool is_virtual = false;
  VertexId gv;
  EdgeId pipe;
};

LocalRef local_ref(const LocalGraph& lg, VertexId lv) {
  LocalRef r;
  r.is_virtual = lg.is_virtual(lv);
  if (r.is_virtual) r.pipe = lg.pipe_of_local.at(lv.value);
  else r.gv = lg.g_vertex_of_local.at(lv.value);
  return r;
}

Instance stretch_ref(Instance inst, const LocalRef& ref,
                     const std::vector<EdgeId>& originals, RewriteTrace* trace) {
  if (ref.is_virtual) return stretch_virtual(std::move(inst), ref.pipe, originals, trace);
  return stretch_ordinary(std::move(inst), ref.gv, originals, trace);
}

bool is_cut_edge(const Multigraph& g, EdgeId e) {
  if (g.is_loop(e)) return false;
  Multigraph probe = g;
  std::size_t before = probe.components().size();
  probe.remove_edge(e);
  return probe.components().size() > before;
}

// Does a degree-Delta vertex have structural freedom in its rotation? Only
// p-path poles and p-star centers do; everything else is treated as fixed.
// is_pstar_center accepts single-path arms, so centers left over from earlier
// detachments count as well.
bool structurally_unfixed(const Multigraph& g, VertexId v) {
  return is_ppath_with_pole(g, v) || is_pstar_center(g, v);
}

// Plain (not proper) cut vertices: step (i) excludes these.
std::set<std::uint32_t> plain_cut_vertices(const Multigraph& g) {
  std::set<std::uint32_t> out;
  for (VertexId v : g.vertices()) {
    Multigraph probe = g;
    std::size_t before = probe.components().size();
    probe.remove_vertex(v);
    if (probe.vertex_count() > 0 && probe.components().size() > before) out.insert(v.value);
  }
  return out;
}

}  // namespace

Instance preprocess(Instance inst, RewriteTrace* trace) {
  return run_hooks(std::move(inst), trace);
}

// ---- Subroutine 1 ---------------------------------------------------------

StepResult subroutine1(Instance inst, RewriteTrace* trace) {
  RewriteTrace own;
  if (!trace) trace = &own;
  const std::size_t D = delta(inst);

  // Later steps can re-expose earlier targets: enclosing the bridges of a cut
  // vertex turns it into a virtual vertex that is no longer a cut vertex, so a
  // 2-cut that step (i) had to skip may become eligible only afterwards. Run
  // the three steps to a joint fixpoint.
  for (std::size_t pass = 0;; ++pass) {
  if (pass > kScanGuard) throw GraphError("internal: subroutine 1 did not reach a fixpoint");
  bool pass_acted = false;

  // Step (i): split nonseparable bridges off proper 2-cuts hitting degree D.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > kScanGuard) throw GraphError("internal: subroutine 1 step (i) did not terminate");
    bool acted = false;
    for (VertexId a : nontoroidal_atoms(inst)) {
      LocalGraph lg = local_graph(inst, a);
      if (lg.graph.is_cycle()) continue;
      const auto cvs = plain_cut_vertices(lg.graph);
      for (auto [u, v] : proper_two_cuts(lg.graph)) {
        if (cvs.count(u.value) || cvs.count(v.value)) continue;
        const std::size_t du = lg.graph.degree(u), dv = lg.graph.degree(v);
        if (std::max(du, dv) != D) continue;
        for (const Bridge& b : bridges(lg.graph, {u, v})) {
          if (is_separable_bridge(lg.graph, b, u, v)) continue;
          std::vector<EdgeId> eu, ev;
          for (EdgeId le : b.edges) {
            auto [x, y] = lg.graph.ends(le);
            if (x == u || y == u) eu.push_back(lg.original(le));
            else if (x == v || y == v) ev.push_back(lg.original(le));
          }
          if (eu.empty() || eu.size() >= du) continue;
          if (ev.empty() || ev.size() >= dv) continue;
          const LocalRef ru = local_ref(lg, u), rv = local_ref(lg, v);
          inst = stretch_ref(std::move(inst), ru, eu, trace);
          inst = stretch_ref(std::move(inst), rv, ev, trace);
          acted = true;
          break;
        }
        if (acted) break;
      }
      if (acted) break;
    }
    if (!acted) break;
    pass_acted = true;
    if (auto bad = first_nonplanar(inst))
      return negative(Reason::NonplanarLocal, atom_label(inst, *bad));
  }

  // Step (ii): enclose one side of every proper 2-edge-cut; the hooks
  // immediately suppress the degree-2 pipe this creates.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > kScanGuard) throw GraphError("internal: subroutine 1 step (ii) did not terminate");
    bool acted = false;
    for (VertexId a : nontoroidal_atoms(inst)) {
      LocalGraph lg = local_graph(inst, a);
      if (lg.graph.is_cycle()) continue;
      auto sides = two_edge_cut_sides(lg.graph);
      if (sides.empty()) continue;
      const auto& s = sides.front();
      inst = enclose(std::move(inst), lg, {s.outside_e, s.outside_f}, s.enclosed, trace);
      acted = true;
      break;
    }
    if (!acted) break;
    pass_acted = true;
  }

  // Step (iii): enclose the bridges of each proper cut vertex of degree D.
  // Bridges that already are p-paths with a pole at the vertex stay as they
  // are, which makes the step idempotent: once every bridge is a p-path the
  // vertex is a p-star center and never qualifies again.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > kScanGuard) throw GraphError("internal: subroutine 1 step (iii) did not terminate");
    bool acted = false;
    for (VertexId a : nontoroidal_atoms(inst)) {
      LocalGraph lg = local_graph(inst, a);
      if (lg.graph.is_cycle()) continue;
      for (VertexId v : proper_cut_vertices(lg.graph)) {
        if (lg.graph.degree(v) != D) continue;
        const LocalRef ref = local_ref(lg, v);
        // Snapshot the bridges as original-edge sets; sibling bridges keep
        // their G edges while one of them is enclosed.
        std::vector<std::set<std::uint32_t>> bridge_sets;
        for (const Bridge& b : bridges(lg.graph, {v})) {
          if (b.interior.empty()) continue;
          Multigraph sub = bridge_subgraph(lg.graph, b, {v});
          if (is_ppath_with_pole(sub, v)) continue;
          std::set<std::uint32_t> s;
          for (EdgeId le : b.edges) s.insert(lg.original(le).value);
          bridge_sets.push_back(std::move(s));
        }
        if (bridge_sets.empty()) continue;
        for (const auto& want : bridge_sets) {
          LocalGraph cur = local_graph(inst, a);
          std::optional<VertexId> lv;
          if (ref.is_virtual) {
            auto it = cur.local_of_pipe.find(ref.pipe.value);
            if (it != cur.local_of_pipe.end()) lv = it->second;
          } else {
            auto it = cur.local_of_g_vertex.find(ref.gv.value);
            if (it != cur.local_of_g_vertex.end()) lv = it->second;
          }
          if (!lv) break;  // the vertex itself got rewritten away by hooks
          bool done = false;
          for (const Bridge& b : bridges(cur.graph, {*lv})) {
            std::set<std::uint32_t> have;
            for (EdgeId le : b.edges) have.insert(cur.original(le).value);
            if (have != want) continue;
            if (!b.interior.empty())
              inst = enclose(std::move(inst), cur, {*lv}, b, trace);
            done = true;
            break;
          }
          if (!done) continue;  // bridge dissolved by an earlier suppress
        }
        acted = true;
        break;
      }
      if (acted) break;
    }
    if (!acted) break;
    pass_acted = true;
  }

  if (!pass_acted) break;
  }

  return {std::move(inst), Reason::Positive, ""};
}

// ---- Subroutine 2 ---------------------------------------------------------

namespace {

// Set of pipes incident to atoms of toroidal cycles; E*(H) is the rest.
std::set<std::uint32_t> toroidal_pipes(const Instance& inst) {
  std::set<std::uint32_t> atoms;
  for (const auto& comp : toroidal_components(inst))
    for (VertexId a : comp) atoms.insert(a.value);
  std::set<std::uint32_t> out;
  for (EdgeId p : inst.h.edges()) {
    auto [mu, nu] = inst.h.ends(p);
    if (atoms.count(mu.value) || atoms.count(nu.value)) out.insert(p.value);
  }
  return out;
}

}  // namespace

StepResult subroutine2(Instance inst, RewriteTrace* trace) {
  RewriteTrace own;
  if (!trace) trace = &own;
  const std::size_t D = delta(inst);
  // Subroutine 1 may already have pushed the degree into the base-case range.
  if (D < 4) return {std::move(inst), Reason::Positive, ""};
  const std::size_t half = D / 2;

  // Step (iv): eliminate degree-D pipes with a p-path side.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > kScanGuard) throw GraphError("internal: subroutine 2 step (iv) did not terminate");
    bool acted = false;
    const auto excluded = toroidal_pipes(inst);
    for (EdgeId rho : inst.h.edges()) {
      if (excluded.count(rho.value)) continue;
      if (inst.pipe_degree(rho) != D) continue;
      auto [mu, nu] = inst.h.ends(rho);
      // Orient so that mu carries the p-path.
      LocalGraph lgm = local_graph(inst, mu);
      VertexId um = lgm.local_of_pipe.at(rho.value);
      if (!is_ppath_with_pole(lgm.graph, um)) {
        std::swap(mu, nu);
        lgm = local_graph(inst, mu);
        um = lgm.local_of_pipe.at(rho.value);
        if (!is_ppath_with_pole(lgm.graph, um)) continue;
      }
      // Multiple pipe between mu and nu?
      std::vector<EdgeId> joining;
      for (EdgeId p : inst.h.edges()) {
        auto e = inst.h.ends(p);
        if ((e.first == mu && e.second == nu) || (e.first == nu && e.second == mu))
          joining.push_back(p);
      }
      if (joining.size() == 1) {
        inst = contract(std::move(inst), rho, trace);
      } else {
        // (iv.b) Stretch the nu-side virtual vertices of the two pipes at the
        // p-path's poles.
        Shape s = classify_shape(lgm.graph);
        std::vector<EdgeId> pole_pipes;
        for (VertexId pole : {s.pole_a, s.pole_b}) {
          if (!lgm.is_virtual(pole))
            throw GraphError("internal: p-path pole at a degree-D multiple pipe is ordinary");
          pole_pipes.push_back(lgm.pipe_of_local.at(pole.value));
        }
        for (EdgeId p : pole_pipes) {
          LocalGraph lgn = local_graph(inst, nu);
          auto rot = ref_rotation(lgn, lgn.local_of_pipe.at(p.value));
          if (!rot) return negative(Reason::NonplanarLocal, atom_label(inst, nu));
          inst = stretch_virtual(std::move(inst), p, consecutive_block(*rot, half), trace);
        }
        if (auto bad = first_nonplanar(inst))
          return negative(Reason::NonplanarLocal, atom_label(inst, *bad));
      }
      acted = true;
      break;
    }
    if (!acted) break;
  }

  // Step (v): remaining degree-D pipes; both sides are now fixed or p-stars.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > kScanGuard) throw GraphError("internal: subroutine 2 step (v) did not terminate");
    bool acted = false;
    const auto excluded = toroidal_pipes(inst);
    for (EdgeId rho : inst.h.edges()) {
      if (excluded.count(rho.value)) continue;
      if (inst.pipe_degree(rho) != D) continue;
      auto [mu, nu] = inst.h.ends(rho);
      LocalGraph lgm = local_graph(inst, mu), lgn = local_graph(inst, nu);
      const VertexId u = lgm.local_of_pipe.at(rho.value), v = lgn.local_of_pipe.at(rho.value);
      const bool u_free = structurally_unfixed(lgm.graph, u);
      const bool v_free = structurally_unfixed(lgn.graph, v);
      if (!u_free && !v_free) {
        // (v.a) Both fixed: the rotations must be compatible up to reflection.
        auto rot_u = ref_rotation(lgm, u);
        if (!rot_u) return negative(Reason::NonplanarLocal, atom_label(inst, mu));
        auto rot_v = ref_rotation(lgn, v);
        if (!rot_v) return negative(Reason::NonplanarLocal, atom_label(inst, nu));
        std::vector<std::uint32_t> lu, lv;
        for (EdgeId e : *rot_u) lu.push_back(e.value);
        for (EdgeId e : *rot_v) lv.push_back(e.value);
        if (rotations_compatible(lu, lv) == Compatibility::Incompatible)
          return negative(Reason::IncompatibleRotations, pipe_label(inst, rho));
        inst = stretch_virtual(std::move(inst), rho, consecutive_block(*rot_u, half), trace);
      } else if (u_free && v_free) {
        // (v.b) Both p-stars: merge them.
        inst = contract(std::move(inst), rho, trace);
        if (auto bad = first_nonplanar(inst))
          return negative(Reason::NonplanarLocal, atom_label(inst, *bad));
      } else {
        // (v.c) One side fixed: peel its rotation into a chain of degree-3
        // virtual vertices.
        if (!u_free) {
          // fine: u is the fixed side
        } else {
          std::swap(mu, nu);
          std::swap(lgm, lgn);
        }
        for (std::size_t k = inst.pipe_degree(rho); k > 3; --k) {
          LocalGraph cur = local_graph(inst, mu);
          auto rot = ref_rotation(cur, cur.local_of_pipe.at(rho.value));
          if (!rot) return negative(Reason::NonplanarLocal, atom_label(inst, mu));
          inst = stretch_virtual(std::move(inst), rho, consecutive_block(*rot, 2), trace);
        }
        if (auto bad = first_nonplanar(inst))
          return negative(Reason::NonplanarLocal, atom_label(inst, *bad));
      }
      acted = true;
      break;
    }
    if (!acted) break;
  }

  // Steps (vi)/(vii): ordinary vertices of degree D.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > kScanGuard) throw GraphError("internal: subroutine 2 step (vi) did not terminate");
    bool acted = false;
    for (VertexId a : nontoroidal_atoms(inst)) {
      LocalGraph lg = local_graph(inst, a);
      for (VertexId lv : lg.graph.vertices()) {
        if (lg.is_virtual(lv) || lg.graph.degree(lv) != D) continue;
        const VertexId gv = lg.g_vertex_of_local.at(lv.value);
        if (is_fixed_rotation(lg.graph, lv)) {
          auto rot = ref_rotation(lg, lv);
          if (!rot) return negative(Reason::NonplanarLocal, atom_label(inst, a));
          inst = stretch_ordinary(std::move(inst), gv, consecutive_block(*rot, half), trace);
        } else {
          inst = detach(std::move(inst), gv, trace);
        }
        acted = true;
        break;
      }
      if (acted) break;
    }
    if (!acted) break;
  }

  if (delta(inst) >= D)
    throw GraphError("internal: subroutine 2 did not reduce the maximum degree");
  return {std::move(inst), Reason::Positive, ""};
}

// ---- niceness audit -------------------------------------------------------

bool is_nice(const Instance& inst, std::size_t d) {
  if (!is_normal(inst)) return false;
  if (delta(inst) > d) return false;
  const auto vstar = nontoroidal_atoms(inst);
  std::unordered_map<std::uint32_t, LocalGraph> locals;
  for (VertexId a : vstar) locals.emplace(a.value, local_graph(inst, a));
  // N1: degree-d vertices have fixed rotations unless the local graph is a
  // p-path or a p-star. The star test is the bridge-wise one: a center whose
  // arms include single paths still has every bridge detachable, which is all
  // the degree reduction needs.
  for (const auto& [av, lg] : locals) {
    const Multigraph& L = lg.graph;
    if (L.vertex_count() == 0 || L.edge_count() == 0) continue;
    if (L.is_cycle()) continue;
    if (classify_shape(L).kind == Shape::PPath) continue;
    bool star = false;
    for (VertexId lv : L.vertices())
      if (is_pstar_center(L, lv)) { star = true; break; }
    if (star) continue;
    for (VertexId lv : L.vertices())
      if (L.degree(lv) == d && !is_fixed_rotation(L, lv)) return false;
  }
  // N2: a pipe between two p-stars whose virtual vertices reach degree d must
  // be the only pipe between its atoms.
  const auto excluded = toroidal_pipes(inst);
  for (EdgeId rho : inst.h.edges()) {
    if (excluded.count(rho.value)) continue;
    auto [mu, nu] = inst.h.ends(rho);
    const LocalGraph& lgm = locals.at(mu.value);
    const LocalGraph& lgn = locals.at(nu.value);
    if (classify_shape(lgm.graph).kind != Shape::PStar) continue;
    if (classify_shape(lgn.graph).kind != Shape::PStar) continue;
    if (inst.pipe_degree(rho) < d) continue;
    std::size_t joining = 0;
    for (EdgeId p : inst.h.edges()) {
      auto e = inst.h.ends(p);
      if ((e.first == mu && e.second == nu) || (e.first == nu && e.second == mu)) ++joining;
    }
    if (joining > 1) return false;
  }
  return true;
}

// ---- terminal cases -------------------------------------------------------

bool decide_toroidal(const Instance& inst, const std::vector<VertexId>& atoms) {
  std::set<std::uint32_t> in_comp;
  for (VertexId a : atoms) in_comp.insert(a.value);
  std::unordered_set<std::uint32_t> seen;
  std::optional<std::size_t> winding;
  for (VertexId gv : inst.g.vertices()) {
    if (!in_comp.count(inst.atom_of(gv).value) || seen.count(gv.value)) continue;
    // Walk this G component, counting pipe crossings.
    std::size_t crossings = 0;
    std::vector<VertexId> stack{gv};
    seen.insert(gv.value);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (EdgeId e : inst.g.incident_edges(x)) {
        if (inst.image_of(e).is_pipe) ++crossings;
        VertexId y = inst.g.other_end(e, x);
        if (!seen.count(y.value)) {
          seen.insert(y.value);
          stack.push_back(y);
        }
      }
    }
    crossings /= 2;  // every edge was counted from both endpoints
    if (winding && *winding != crossings) return false;
    winding = crossings;
  }
  return true;
}

namespace {

struct SubcubicVerdict {
  bool embeddable = true;
  Reason reason = Reason::Positive;
  std::string detail;
};

// Postprocessing: delete local cut edges, then enclose+suppress one side of
// every proper 2-edge-cut, to a joint fixpoint. Atoms in `frozen` (toroidal
// cycles already decided by the winding criterion) are left untouched.
Instance postprocess_core(Instance inst, const std::set<std::uint32_t>& frozen,
                          RewriteTrace* trace) {
  auto active_atoms = [&](const Instance& cur) {
    std::vector<VertexId> out;
    for (VertexId a : cur.h.vertices())
      if (!frozen.count(a.value)) out.push_back(a);
    return out;
  };
  for (std::size_t guard = 0;; ++guard) {
    if (guard > kScanGuard) throw GraphError("internal: postprocessing did not terminate");
    bool acted = false;
    for (VertexId a : active_atoms(inst)) {
      LocalGraph lg = local_graph(inst, a);
      if (lg.graph.is_cycle()) continue;
      for (EdgeId le : lg.graph.edges()) {
        if (!is_cut_edge(lg.graph, le)) continue;
        inst = delete_edge(std::move(inst), a, lg.original(le), trace);
        acted = true;
        break;
      }
      if (acted) break;
    }
    if (acted) continue;
    for (VertexId a : active_atoms(inst)) {
      LocalGraph lg = local_graph(inst, a);
      if (lg.graph.is_cycle()) continue;
      auto sides = two_edge_cut_sides(lg.graph);
      if (sides.empty()) continue;
      const auto& s = sides.front();
      inst = enclose(std::move(inst), lg, {s.outside_e, s.outside_f}, s.enclosed, trace);
      acted = true;
      break;
    }
    if (!acted) break;
  }
  return inst;
}

// Lemma-13 style decision for everything outside toroidal cycles:
// postprocessing to cycles / p-paths / subdivided 3-connected locals, then
// planarity plus a reflection 2SAT over the pipes.
SubcubicVerdict decide_subcubic(Instance& inst, RewriteTrace* trace) {
  // The toroidal cycles present now have already been decided by the winding
  // criterion. Components that degenerate into toroidal cycles *during*
  // postprocessing stay in play: with every pipe at degree 3 the reflection
  // 2SAT decides them exactly.
  std::set<std::uint32_t> frozen_toroidal;
  for (const auto& comp : toroidal_components(inst))
    for (VertexId a : comp) frozen_toroidal.insert(a.value);
  inst = postprocess_core(std::move(inst), frozen_toroidal, trace);

  // Shape audit, planarity, and one reflection variable per non-cycle local.
  std::vector<VertexId> vstar;
  for (VertexId a : inst.h.vertices())
    if (!frozen_toroidal.count(a.value)) vstar.push_back(a);
  std::unordered_map<std::uint32_t, std::size_t> var_of_atom;
  std::vector<LocalGraph> locals;
  std::unordered_map<std::uint32_t, std::size_t> local_index;
  for (VertexId a : vstar) {
    LocalGraph lg = local_graph(inst, a);
    if (!test_planarity(lg.graph)) return {false, Reason::NonplanarLocal, atom_label(inst, a)};
    if (lg.graph.edge_count() == 0) continue;  // bare vertex left by deletions
    Shape s = classify_shape(lg.graph);
    if (s.kind == Shape::Other) {
      // Stars with single-path arms classify as Other; they behave like
      // p-stars for the reflection constraints.
      bool star = false;
      for (VertexId lv : lg.graph.vertices())
        if (is_pstar_center(lg.graph, lv)) { star = true; break; }
      if (!star)
        throw GraphError("internal: postprocessed local graph has an unexpected shape");
    }
    if (s.kind != Shape::Cycle) {
      var_of_atom.emplace(a.value, var_of_atom.size());
      local_index.emplace(a.value, locals.size());
      locals.push_back(std::move(lg));
    }
  }

  TwoSat sat(var_of_atom.size());
  std::set<std::uint32_t> in_vstar;
  for (VertexId a : vstar) in_vstar.insert(a.value);
  for (EdgeId rho : inst.h.edges()) {
    auto [mu, nu] = inst.h.ends(rho);
    if (!in_vstar.count(mu.value) || !in_vstar.count(nu.value)) continue;
    auto vm = var_of_atom.find(mu.value);
    auto vn = var_of_atom.find(nu.value);
    if (vm == var_of_atom.end() || vn == var_of_atom.end())
      throw GraphError("internal: pipe incident to a cycle local graph");
    const LocalGraph& lgm = locals[local_index.at(mu.value)];
    const LocalGraph& lgn = locals[local_index.at(nu.value)];
    auto ru = ref_rotation(lgm, lgm.local_of_pipe.at(rho.value));
    auto rv = ref_rotation(lgn, lgn.local_of_pipe.at(rho.value));
    if (!ru || !rv) throw GraphError("internal: planar local graph lost its embedding");
    std::vector<std::uint32_t> lu, lv;
    for (EdgeId e : *ru) lu.push_back(e.value);
    for (EdgeId e : *rv) lv.push_back(e.value);
    switch (rotations_compatible(lu, lv)) {
      case Compatibility::Opposite:
        sat.add_equal(vm->second, vn->second);
        break;
      case Compatibility::Same:
        sat.add_not_equal(vm->second, vn->second);
        break;
      case Compatibility::Incompatible:
        return {false, Reason::IncompatibleRotations, pipe_label(inst, rho)};
    }
  }
  if (!sat.solve()) return {false, Reason::UnsatTwoSat, "reflection constraints are unsatisfiable"};
  return {};
}

Decision finish_negative(DecideStats stats, Reason reason, std::string detail) {
  Decision d;
  d.embeddable = false;
  d.reason = reason;
  d.detail = std::move(detail);
  d.stats = std::move(stats);
  return d;
}

}  // namespace

Instance postprocess_subcubic(Instance inst, RewriteTrace* trace) {
  std::set<std::uint32_t> frozen;
  for (const auto& comp : toroidal_components(inst))
    for (VertexId a : comp) frozen.insert(a.value);
  return postprocess_core(std::move(inst), frozen, trace);
}

// ---- main algorithm -------------------------------------------------------

Decision decide(const Instance& input, RewriteTrace* trace) {
  {
    auto errs = validate(input);
    if (!errs.empty()) throw GraphError("decide: invalid instance: " + errs.front());
  }
  RewriteTrace own;
  if (!trace) trace = &own;

  Instance inst = preprocess(input, trace);
  Decision d;
  {
    auto pot = potential(inst);
    d.stats.initial_phi = pot.phi;
    d.stats.initial_n_ge3 = pot.n_ge3;
    d.stats.budget = 64 * (pot.phi + pot.n_ge3);
  }
  const std::size_t base_ops = trace->op_count();

  if (auto bad = first_nonplanar(inst))
    return finish_negative(std::move(d.stats), Reason::NonplanarLocal, atom_label(inst, *bad));

  while (delta(inst) >= 4) {
    ++d.stats.iterations;
    const std::size_t delta_before = delta(inst);
    const std::uint64_t phi_before = potential(inst).phi;

    StepResult r1 = subroutine1(std::move(inst), trace);
    if (!r1.inst) return finish_negative(std::move(d.stats), r1.reason, std::move(r1.detail));
    if (delta(*r1.inst) > delta_before)
      throw GraphError("internal: subroutine 1 increased the maximum degree");

    if (delta(*r1.inst) < delta_before) {
      // The maximum degree already fell; the invariants subroutine 2 relies on
      // hold only for the old degree, so restart the iteration instead.
      inst = std::move(*r1.inst);
    } else {
      StepResult r2 = subroutine2(std::move(*r1.inst), trace);
      if (!r2.inst) return finish_negative(std::move(d.stats), r2.reason, std::move(r2.detail));
      inst = std::move(*r2.inst);
    }

    const std::uint64_t phi_after = potential(inst).phi;
    d.stats.phi_after_iteration.push_back(phi_after);
    if (phi_after >= phi_before)
      throw GraphError("internal: potential did not decrease across an iteration");
    d.stats.ops = trace->op_count() - base_ops;
    if (d.stats.budget > 0 && d.stats.ops > d.stats.budget)
      throw GraphError("internal: operation budget exceeded");
  }

  for (const auto& comp : toroidal_components(inst))
    if (!decide_toroidal(inst, comp))
      return finish_negative(std::move(d.stats), Reason::ToroidalMismatch,
                             atom_label(inst, comp.front()));

  SubcubicVerdict sv = decide_subcubic(inst, trace);
  d.stats.ops = trace->op_count() - base_ops;
  if (d.stats.budget > 0 && d.stats.ops > d.stats.budget)
    throw GraphError("internal: operation budget exceeded");
  if (!sv.embeddable) return finish_negative(std::move(d.stats), sv.reason, std::move(sv.detail));

  d.embeddable = true;
  d.reason = Reason::Positive;
  return d;
}

}  // namespace atomemb
