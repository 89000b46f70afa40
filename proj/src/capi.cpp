#include "atomemb.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "decider.hpp"
#include "generate.hpp"
#include "instance.hpp"
#include "operations.hpp"
#include "oracle.hpp"
#include "reductions.hpp"

using namespace atomemb;

struct ae_instance {
  Instance v;
};
struct ae_clustered {
  ClusteredInstance v;
};
struct ae_polyhedron {
  Polyhedron v;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body, translating exceptions into error codes.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& ex) {
    g_last_error = ex.what();
    return AE_EPARSE;
  } catch (const OpError& ex) {
    g_last_error = ex.what();
    return AE_EINVAL;
  } catch (const GraphError& ex) {
    g_last_error = ex.what();
    return AE_EINVAL;
  } catch (const std::exception& ex) {
    g_last_error = ex.what();
    return AE_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return AE_EINTERNAL;
  }
}

OracleLimits to_limits(const ae_oracle_limits* limits) {
  OracleLimits out;
  if (limits) {
    out.max_systems_per_graph = static_cast<std::size_t>(limits->max_systems_per_graph);
    out.max_combinations = limits->max_combinations;
    out.time_budget = std::chrono::milliseconds(limits->time_budget_ms);
  }
  return out;
}

int to_verdict(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Positive: return AE_VERDICT_POSITIVE;
    case OracleVerdict::Negative: return AE_VERDICT_NEGATIVE;
    case OracleVerdict::Overflow: return AE_VERDICT_OVERFLOW;
  }
  return AE_VERDICT_OVERFLOW;
}

// First validation problem into *error_out (NULL when clean).
template <typename T>
int validate_into(const T& value, char** error_out) {
  if (!error_out) {
    g_last_error = "error_out is null";
    return AE_EINVAL;
  }
  auto errs = validate(value);
  *error_out = errs.empty() ? nullptr : dup_string(errs.front());
  return AE_OK;
}

}  // namespace

extern "C" {

const char* ae_last_error(void) { return g_last_error.c_str(); }

void ae_string_free(char* s) { std::free(s); }

/* ---- instances ---------------------------------------------------------- */

int ae_instance_parse(const char* json, ae_instance** out) {
  if (!json || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_instance{parse_instance(json)};
    return AE_OK;
  });
}

void ae_instance_free(ae_instance* inst) { delete inst; }

int ae_instance_to_json(const ae_instance* inst, char** json_out) {
  if (!inst || !json_out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *json_out = dup_string(instance_to_json(inst->v));
    return AE_OK;
  });
}

int ae_instance_validate(const ae_instance* inst, char** error_out) {
  if (!inst) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] { return validate_into(inst->v, error_out); });
}

int ae_normalize(const ae_instance* inst, ae_instance** out) {
  if (!inst || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    auto errs = validate(inst->v);
    if (!errs.empty()) {
      g_last_error = errs.front();
      return AE_EINVAL;
    }
    *out = new ae_instance{preprocess(inst->v)};
    return AE_OK;
  });
}

int ae_decide(const ae_instance* inst, ae_decision* decision_out,
              char** detail_out, char** witness_out) {
  if (!inst || !decision_out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    RewriteTrace trace;
    Decision d = decide(inst->v, &trace);
    decision_out->embeddable = d.embeddable ? 1 : 0;
    decision_out->reason = static_cast<int>(d.reason);
    decision_out->ops = d.stats.ops;
    decision_out->initial_phi = d.stats.initial_phi;
    decision_out->budget = d.stats.budget;
    decision_out->iterations = d.stats.iterations;
    if (detail_out) *detail_out = dup_string(d.detail);
    if (witness_out) *witness_out = dup_string(trace_to_jsonl(trace));
    return AE_OK;
  });
}

void ae_oracle_limits_default(ae_oracle_limits* limits) {
  if (!limits) return;
  OracleLimits def;
  limits->max_systems_per_graph = def.max_systems_per_graph;
  limits->max_combinations = def.max_combinations;
  limits->time_budget_ms = static_cast<uint64_t>(def.time_budget.count());
}

int ae_oracle_decide(const ae_instance* inst, const ae_oracle_limits* limits,
                     int* verdict_out, uint64_t* nodes_out) {
  if (!inst || !verdict_out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    OracleResult r = oracle_decide(inst->v, to_limits(limits));
    *verdict_out = to_verdict(r.verdict);
    if (nodes_out) *nodes_out = r.nodes;
    return AE_OK;
  });
}

int ae_export_dot(const ae_instance* inst, char** dot_out) {
  if (!inst || !dot_out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    std::ostringstream os;
    for (VertexId atom : inst->v.h.vertices()) {
      LocalGraph lg = local_graph(inst->v, atom);
      os << "graph atom_" << atom.value << " {\n";
      for (VertexId lv : lg.graph.vertices()) {
        os << "  n" << lv.value;
        if (lg.is_virtual(lv))
          os << " [shape=diamond, label=\"pipe " << lg.pipe_of_local.at(lv.value).value << "\"]";
        else
          os << " [label=\"v" << lg.g_vertex_of_local.at(lv.value).value << "\"]";
        os << ";\n";
      }
      for (EdgeId le : lg.graph.edges()) {
        auto [x, y] = lg.graph.ends(le);
        os << "  n" << x.value << " -- n" << y.value
           << " [label=\"e" << lg.original(le).value << "\"];\n";
      }
      os << "}\n";
    }
    *dot_out = dup_string(os.str());
    return AE_OK;
  });
}

/* ---- clustered planarity and thickenability ------------------------------ */

int ae_clustered_parse(const char* json, ae_clustered** out) {
  if (!json || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_clustered{parse_clustered(json)};
    return AE_OK;
  });
}

void ae_clustered_free(ae_clustered* ci) { delete ci; }

int ae_clustered_to_json(const ae_clustered* ci, char** json_out) {
  if (!ci || !json_out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *json_out = dup_string(clustered_to_json(ci->v));
    return AE_OK;
  });
}

int ae_clustered_validate(const ae_clustered* ci, char** error_out) {
  if (!ci) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] { return validate_into(ci->v, error_out); });
}

int ae_polyhedron_parse(const char* json, ae_polyhedron** out) {
  if (!json || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_polyhedron{parse_polyhedron(json)};
    return AE_OK;
  });
}

void ae_polyhedron_free(ae_polyhedron* p) { delete p; }

int ae_polyhedron_to_json(const ae_polyhedron* p, char** json_out) {
  if (!p || !json_out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *json_out = dup_string(polyhedron_to_json(p->v));
    return AE_OK;
  });
}

int ae_polyhedron_validate(const ae_polyhedron* p, char** error_out) {
  if (!p) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] { return validate_into(p->v, error_out); });
}

int ae_reduce_to_thickenability(const ae_instance* inst, ae_polyhedron** out) {
  if (!inst || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_polyhedron{to_thickenability(inst->v)};
    return AE_OK;
  });
}

int ae_reduce_from_thickenability(const ae_polyhedron* p, ae_instance** out) {
  if (!p || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_instance{from_thickenability(p->v)};
    return AE_OK;
  });
}

int ae_reduce_from_cplanarity(const ae_clustered* ci, ae_instance** out) {
  if (!ci || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_instance{from_cplanarity(ci->v)};
    return AE_OK;
  });
}

int ae_neuwirth_check(const ae_polyhedron* p, const ae_oracle_limits* limits,
                      int* verdict_out, uint64_t* nodes_out) {
  if (!p || !verdict_out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    OracleResult r = neuwirth_check(p->v, to_limits(limits));
    *verdict_out = to_verdict(r.verdict);
    if (nodes_out) *nodes_out = r.nodes;
    return AE_OK;
  });
}

/* ---- seeded generators ---------------------------------------------------- */

int ae_gen_random(uint64_t seed, uint64_t g_vertices, uint64_t h_atoms,
                  double density, ae_instance** out) {
  if (!out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_instance{gen_random(seed, static_cast<std::size_t>(g_vertices),
                                      static_cast<std::size_t>(h_atoms), density)};
    return AE_OK;
  });
}

int ae_gen_toroidal(const int* windings, size_t count, ae_instance** out) {
  if (!windings || count == 0 || !out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_instance{gen_toroidal(std::vector<int>(windings, windings + count))};
    return AE_OK;
  });
}

int ae_gen_cplan(uint64_t seed, uint64_t clusters, uint64_t vertices,
                 double density, ae_clustered** out) {
  if (!out) {
    g_last_error = "null argument";
    return AE_EINVAL;
  }
  return guarded([&] {
    *out = new ae_clustered{gen_cplan(seed, static_cast<std::size_t>(clusters),
                                      static_cast<std::size_t>(vertices), density)};
    return AE_OK;
  });
}

}  // extern "C"
