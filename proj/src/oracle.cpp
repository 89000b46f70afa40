#include "oracle.hpp"

#include <algorithm>
#include <unordered_map>

namespace atomemb {
namespace {

// One side of a pipe-style constraint: a vertex of one searched graph whose
// rotation, translated through `label`, must be opposite to the other side's.
struct Side {
  std::size_t graph = 0;
  VertexId vertex;
  std::unordered_map<std::uint32_t, std::uint32_t> label;  // local edge -> shared
};

struct Problem {
  std::vector<const Multigraph*> graphs;
  std::vector<std::pair<Side, Side>> constraints;
};

std::vector<std::uint32_t> labeled_rotation(const RotationSystem& rs,
                                            const Side& s) {
  std::vector<std::uint32_t> out;
  for (const Dart& d : rs.rot.at(s.vertex)) out.push_back(s.label.at(d.edge.value));
  return out;
}

OracleResult search(const Problem& pb, const OracleLimits& limits) {
  const auto deadline = std::chrono::steady_clock::now() + limits.time_budget;
  OracleResult res;

  // Constraints only look at rotations of constrained vertices, so one
  // candidate per achievable rotation combination at those vertices suffices.
  std::vector<std::vector<VertexId>> marked(pb.graphs.size());
  for (const auto& c : pb.constraints) {
    marked[c.first.graph].push_back(c.first.vertex);
    marked[c.second.graph].push_back(c.second.vertex);
  }

  std::vector<std::vector<RotationSystem>> cands;
  for (std::size_t gi = 0; gi < pb.graphs.size(); ++gi) {
    PlanarRotationEnumerator en(*pb.graphs[gi], marked[gi]);
    en.set_deadline(deadline);
    std::vector<RotationSystem> systems;
    while (auto rs = en.next()) {
      if (systems.size() == limits.max_systems_per_graph) {
        res.verdict = OracleVerdict::Overflow;
        return res;
      }
      systems.push_back(std::move(*rs));
      en.skip_to_next_projection();
    }
    if (en.timed_out()) {
      res.verdict = OracleVerdict::Overflow;
      return res;
    }
    if (systems.empty()) {
      res.verdict = OracleVerdict::Negative;  // some graph is nonplanar
      return res;
    }
    cands.push_back(std::move(systems));
  }

  // Constraints checked as soon as both sides are assigned.
  std::vector<std::vector<const std::pair<Side, Side>*>> ready(pb.graphs.size());
  for (const auto& c : pb.constraints)
    ready[std::max(c.first.graph, c.second.graph)].push_back(&c);

  std::vector<std::size_t> choice(pb.graphs.size(), 0);
  std::size_t depth = 0;
  bool backtrack = false;
  for (;;) {
    if (!backtrack && depth == pb.graphs.size()) {
      res.verdict = OracleVerdict::Positive;
      for (std::size_t i = 0; i < pb.graphs.size(); ++i)
        res.witness.push_back(cands[i][choice[i]]);
      return res;
    }
    if (backtrack) {
      if (depth == 0) {
        res.verdict = OracleVerdict::Negative;
        return res;
      }
      --depth;
      ++choice[depth];
      backtrack = false;
    }
    if (choice[depth] >= cands[depth].size()) {
      backtrack = true;
      continue;
    }
    if (++res.nodes > limits.max_combinations ||
        std::chrono::steady_clock::now() > deadline) {
      res.verdict = OracleVerdict::Overflow;
      return res;
    }
    bool ok = true;
    for (const auto* c : ready[depth]) {
      const auto a = labeled_rotation(cands[c->first.graph][choice[c->first.graph]],
                                      c->first);
      const auto b = labeled_rotation(
          cands[c->second.graph][choice[c->second.graph]], c->second);
      if (rotations_compatible(a, b) != Compatibility::Opposite) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ++depth;
      if (depth < choice.size()) choice[depth] = 0;
    } else {
      ++choice[depth];
    }
  }
}

}  // namespace

OracleResult oracle_decide(const Instance& inst, const OracleLimits& limits) {
  auto diags = validate(inst);
  if (!diags.empty()) throw GraphError("oracle: invalid instance: " + diags.front());

  std::vector<LocalGraph> locals;
  std::unordered_map<std::uint32_t, std::size_t> index_of_atom;
  for (VertexId a : inst.h.vertices()) {
    index_of_atom[a.value] = locals.size();
    locals.push_back(local_graph(inst, a));
  }
  Problem pb;
  for (const LocalGraph& lg : locals) pb.graphs.push_back(&lg.graph);
  for (EdgeId rho : inst.h.edges()) {
    auto [mu, nu] = inst.h.ends(rho);
    auto make_side = [&](VertexId atom) {
      Side s;
      s.graph = index_of_atom.at(atom.value);
      const LocalGraph& lg = locals[s.graph];
      s.vertex = lg.local_of_pipe.at(rho.value);
      for (EdgeId le : lg.graph.incident_edges(s.vertex))
        s.label[le.value] = lg.original(le).value;
      return s;
    };
    pb.constraints.push_back({make_side(mu), make_side(nu)});
  }
  return search(pb, limits);
}

OracleResult neuwirth_check(const Polyhedron& p, const OracleLimits& limits) {
  auto diags = validate(p);
  if (!diags.empty()) throw GraphError("neuwirth: invalid polyhedron: " + diags.front());

  std::vector<LinkGraph> links;
  std::unordered_map<std::uint32_t, std::size_t> index_of_vertex;
  for (VertexId v : p.h.vertices()) {
    index_of_vertex[v.value] = links.size();
    links.push_back(link_graph(p, v));
  }
  Problem pb;
  for (const LinkGraph& lk : links) pb.graphs.push_back(&lk.graph);
  for (EdgeId e : p.h.edges()) {
    auto [u, v] = p.h.ends(e);
    auto make_side = [&](VertexId hv) {
      Side s;
      s.graph = index_of_vertex.at(hv.value);
      const LinkGraph& lk = links[s.graph];
      s.vertex = lk.local_of_h_edge.at(e.value);
      for (EdgeId le : lk.graph.incident_edges(s.vertex))
        s.label[le.value] = (std::uint32_t)lk.facet_of_edge.at(le.value);
      return s;
    };
    pb.constraints.push_back({make_side(u), make_side(v)});
  }
  return search(pb, limits);
}

}  // namespace atomemb
