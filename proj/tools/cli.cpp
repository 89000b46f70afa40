// Command-line surface: decide, oracle cross-check, normalize, reduce,
// generate, export. Talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atomemb.h"

namespace {

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Owning wrapper for strings returned by the C API.
struct CStr {
  char* p = nullptr;
  ~CStr() { ae_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct InstancePtr {
  ae_instance* p = nullptr;
  ~InstancePtr() { ae_instance_free(p); }
};
struct ClusteredPtr {
  ae_clustered* p = nullptr;
  ~ClusteredPtr() { ae_clustered_free(p); }
};
struct PolyhedronPtr {
  ae_polyhedron* p = nullptr;
  ~PolyhedronPtr() { ae_polyhedron_free(p); }
};

int map_error(int rc) {
  switch (rc) {
    case AE_OK: return kExitPositive;
    case AE_EPARSE:
    case AE_EINVAL: return kExitInvalid;
    default: return kExitInternal;
  }
}

int fail(int rc) {
  std::cerr << "error: " << ae_last_error() << "\n";
  return map_error(rc);
}

// Parses + validates an instance; returns nonzero exit code on failure.
int load_instance(const std::string& text, InstancePtr& inst) {
  if (int rc = ae_instance_parse(text.c_str(), &inst.p); rc != AE_OK) return fail(rc);
  CStr err;
  if (int rc = ae_instance_validate(inst.p, &err.p); rc != AE_OK) return fail(rc);
  if (err.p) {
    std::cerr << "error: invalid instance: " << err.str() << "\n";
    return kExitInvalid;
  }
  return kExitPositive;
}

const char* reason_name(int reason) {
  switch (reason) {
    case AE_REASON_POSITIVE: return "positive";
    case AE_REASON_NONPLANAR_LOCAL: return "nonplanar-local";
    case AE_REASON_INCOMPATIBLE_ROTATIONS: return "incompatible-rotations";
    case AE_REASON_TOROIDAL_MISMATCH: return "toroidal-mismatch";
    case AE_REASON_UNSAT_2SAT: return "unsat-2sat";
    default: return "unknown";
  }
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int cmd_decide(const std::string& input, const std::string& witness_path,
               bool cross_check, std::uint64_t limit_combinations) {
  InstancePtr inst;
  if (int rc = load_instance(read_input(input), inst); rc != 0) return rc;

  ae_decision d{};
  CStr detail, witness;
  if (int rc = ae_decide(inst.p, &d, &detail.p, &witness.p); rc != AE_OK) return fail(rc);

  std::ostringstream out;
  out << "{\n"
      << "  \"embeddable\": " << (d.embeddable ? "true" : "false") << ",\n"
      << "  \"reason\": \"" << reason_name(d.reason) << "\",\n"
      << "  \"detail\": \"" << json_escape(detail.str()) << "\",\n"
      << "  \"ops\": " << d.ops << ",\n"
      << "  \"iterations\": " << d.iterations << "\n"
      << "}\n";
  std::cout << out.str();

  if (!witness_path.empty()) {
    std::ofstream w(witness_path, std::ios::binary);
    if (!w) {
      std::cerr << "error: cannot write " << witness_path << "\n";
      return kExitInternal;
    }
    w << "{\"embeddable\": " << (d.embeddable ? "true" : "false")
      << ", \"reason\": \"" << reason_name(d.reason)
      << "\", \"detail\": \"" << json_escape(detail.str()) << "\"}\n";
    w << witness.str();
  }

  if (cross_check) {
    ae_oracle_limits limits;
    ae_oracle_limits_default(&limits);
    if (limit_combinations) limits.max_combinations = limit_combinations;
    int verdict = AE_VERDICT_OVERFLOW;
    std::uint64_t nodes = 0;
    if (int rc = ae_oracle_decide(inst.p, &limits, &verdict, &nodes); rc != AE_OK)
      return fail(rc);
    if (verdict == AE_VERDICT_OVERFLOW) {
      std::cerr << "oracle: overflow, cross-check inconclusive\n";
    } else if ((verdict == AE_VERDICT_POSITIVE) != (d.embeddable != 0)) {
      std::cerr << "error: oracle disagrees with decide\n";
      return kExitInternal;
    }
  }
  return d.embeddable ? kExitPositive : kExitNegative;
}

int cmd_oracle(const std::string& input, std::uint64_t limit_combinations) {
  const std::string text = read_input(input);
  ae_oracle_limits limits;
  ae_oracle_limits_default(&limits);
  if (limit_combinations) limits.max_combinations = limit_combinations;

  int verdict = AE_VERDICT_OVERFLOW;
  std::uint64_t nodes = 0;
  // Polyhedron input (detected by its "facets" key) goes through the
  // link-graph check; everything else is an instance.
  if (text.find("\"facets\"") != std::string::npos) {
    PolyhedronPtr poly;
    if (int rc = ae_polyhedron_parse(text.c_str(), &poly.p); rc != AE_OK) return fail(rc);
    CStr err;
    if (int rc = ae_polyhedron_validate(poly.p, &err.p); rc != AE_OK) return fail(rc);
    if (err.p) {
      std::cerr << "error: invalid polyhedron: " << err.str() << "\n";
      return kExitInvalid;
    }
    if (int rc = ae_neuwirth_check(poly.p, &limits, &verdict, &nodes); rc != AE_OK)
      return fail(rc);
  } else {
    InstancePtr inst;
    if (int rc = load_instance(text, inst); rc != 0) return rc;
    if (int rc = ae_oracle_decide(inst.p, &limits, &verdict, &nodes); rc != AE_OK)
      return fail(rc);
  }

  const char* name = verdict == AE_VERDICT_POSITIVE   ? "positive"
                     : verdict == AE_VERDICT_NEGATIVE ? "negative"
                                                      : "overflow";
  std::cout << "{\"verdict\": \"" << name << "\", \"nodes\": " << nodes << "}\n";
  if (verdict == AE_VERDICT_OVERFLOW) return kExitInternal;
  return verdict == AE_VERDICT_POSITIVE ? kExitPositive : kExitNegative;
}

int emit_instance(ae_instance* inst, const std::string& format) {
  CStr text;
  int rc = format == "dot" ? ae_export_dot(inst, &text.p)
                           : ae_instance_to_json(inst, &text.p);
  if (rc != AE_OK) return fail(rc);
  std::cout << text.str();
  return kExitPositive;
}

int cmd_normalize(const std::string& input, const std::string& format) {
  InstancePtr inst;
  if (int rc = load_instance(read_input(input), inst); rc != 0) return rc;
  InstancePtr norm;
  if (int rc = ae_normalize(inst.p, &norm.p); rc != AE_OK) return fail(rc);
  return emit_instance(norm.p, format);
}

int cmd_export_dot(const std::string& input) {
  InstancePtr inst;
  if (int rc = load_instance(read_input(input), inst); rc != 0) return rc;
  return emit_instance(inst.p, "dot");
}

int cmd_reduce_to_thick(const std::string& input) {
  InstancePtr inst;
  if (int rc = load_instance(read_input(input), inst); rc != 0) return rc;
  PolyhedronPtr poly;
  if (int rc = ae_reduce_to_thickenability(inst.p, &poly.p); rc != AE_OK) return fail(rc);
  CStr text;
  if (int rc = ae_polyhedron_to_json(poly.p, &text.p); rc != AE_OK) return fail(rc);
  std::cout << text.str();
  return kExitPositive;
}

int cmd_reduce_from_thick(const std::string& input, const std::string& format) {
  PolyhedronPtr poly;
  const std::string text = read_input(input);
  if (int rc = ae_polyhedron_parse(text.c_str(), &poly.p); rc != AE_OK) return fail(rc);
  CStr err;
  if (int rc = ae_polyhedron_validate(poly.p, &err.p); rc != AE_OK) return fail(rc);
  if (err.p) {
    std::cerr << "error: invalid polyhedron: " << err.str() << "\n";
    return kExitInvalid;
  }
  InstancePtr inst;
  if (int rc = ae_reduce_from_thickenability(poly.p, &inst.p); rc != AE_OK) return fail(rc);
  return emit_instance(inst.p, format);
}

int cmd_reduce_from_cplan(const std::string& input, const std::string& format) {
  ClusteredPtr ci;
  const std::string text = read_input(input);
  if (int rc = ae_clustered_parse(text.c_str(), &ci.p); rc != AE_OK) return fail(rc);
  CStr err;
  if (int rc = ae_clustered_validate(ci.p, &err.p); rc != AE_OK) return fail(rc);
  if (err.p) {
    std::cerr << "error: invalid clustered instance: " << err.str() << "\n";
    return kExitInvalid;
  }
  InstancePtr inst;
  if (int rc = ae_reduce_from_cplanarity(ci.p, &inst.p); rc != AE_OK) return fail(rc);
  return emit_instance(inst.p, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomic embeddability of simplicial maps"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string witness_path, format = "json";
  bool cross_check = false;
  std::uint64_t limit_combinations = 0;
  std::uint64_t seed = 1;

  auto* decide = app.add_subcommand("decide", "decide atomic embeddability");
  decide->add_option("input", input, "instance JSON file, - for stdin");
  decide->add_option("--witness", witness_path, "write the rewrite trace here");
  decide->add_flag("--oracle", cross_check, "cross-check against the brute-force oracle");
  decide->add_option("--limit-combinations", limit_combinations, "oracle node cap");

  auto* oracle = app.add_subcommand("oracle", "brute-force verdict (instance or polyhedron)");
  oracle->add_option("input", input, "instance or polyhedron JSON file, - for stdin");
  oracle->add_option("--limit-combinations", limit_combinations, "search node cap");

  auto* normalize = app.add_subcommand("normalize", "suppress/split to a normal instance");
  normalize->add_option("input", input, "instance JSON file, - for stdin");
  normalize->add_option("--format", format, "json|dot")
      ->check(CLI::IsMember({"json", "dot"}));

  auto* reduce = app.add_subcommand("reduce", "translate between problem encodings");
  reduce->require_subcommand(1);
  auto* to_thick = reduce->add_subcommand("to-thick", "instance -> 2-polyhedron");
  to_thick->add_option("input", input, "instance JSON file, - for stdin");
  auto* from_thick = reduce->add_subcommand("from-thick", "2-polyhedron -> instance");
  from_thick->add_option("input", input, "polyhedron JSON file, - for stdin");
  from_thick->add_option("--format", format, "json|dot")
      ->check(CLI::IsMember({"json", "dot"}));
  auto* from_cplan = reduce->add_subcommand("from-cplan", "clustered planarity -> instance");
  from_cplan->add_option("input", input, "clustered JSON file, - for stdin");
  from_cplan->add_option("--format", format, "json|dot")
      ->check(CLI::IsMember({"json", "dot"}));

  auto* gen = app.add_subcommand("gen", "seeded instance generators");
  gen->require_subcommand(1);
  std::uint64_t gv = 8, ha = 3, clusters = 3, vertices = 8;
  double density = 0.45;
  std::vector<int> windings;
  auto* gen_random = gen->add_subcommand("random", "random simplicial map");
  gen_random->add_option("--seed", seed, "PRNG seed");
  gen_random->add_option("--gv", gv, "number of G vertices");
  gen_random->add_option("--ha", ha, "number of atoms");
  gen_random->add_option("--density", density, "edge density in [0,1]");
  auto* gen_cplan = gen->add_subcommand("cplan", "random clustered instance");
  gen_cplan->add_option("--seed", seed, "PRNG seed");
  gen_cplan->add_option("--clusters", clusters, "number of clusters");
  gen_cplan->add_option("--vertices", vertices, "number of vertices");
  gen_cplan->add_option("--density", density, "edge density in [0,1]");
  auto* gen_toroidal = gen->add_subcommand("toroidal", "toroidal winding instance");
  gen_toroidal->add_option("windings", windings, "winding multiset")->required();

  auto* export_dot = app.add_subcommand("export-dot", "one DOT graph per local graph");
  export_dot->add_option("input", input, "instance JSON file, - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (decide->parsed()) return cmd_decide(input, witness_path, cross_check, limit_combinations);
    if (oracle->parsed()) return cmd_oracle(input, limit_combinations);
    if (normalize->parsed()) return cmd_normalize(input, format);
    if (export_dot->parsed()) return cmd_export_dot(input);
    if (reduce->parsed()) {
      if (to_thick->parsed()) return cmd_reduce_to_thick(input);
      if (from_thick->parsed()) return cmd_reduce_from_thick(input, format);
      if (from_cplan->parsed()) return cmd_reduce_from_cplan(input, format);
    }
    if (gen->parsed()) {
      if (gen_random->parsed()) {
        InstancePtr inst;
        if (int rc = ae_gen_random(seed, gv, ha, density, &inst.p); rc != AE_OK)
          return fail(rc);
        return emit_instance(inst.p, "json");
      }
      if (gen_cplan->parsed()) {
        ClusteredPtr ci;
        if (int rc = ae_gen_cplan(seed, clusters, vertices, density, &ci.p); rc != AE_OK)
          return fail(rc);
        CStr text;
        if (int rc = ae_clustered_to_json(ci.p, &text.p); rc != AE_OK) return fail(rc);
        std::cout << text.str();
        return kExitPositive;
      }
      if (gen_toroidal->parsed()) {
        InstancePtr inst;
        if (int rc = ae_gen_toroidal(windings.data(), windings.size(), &inst.p); rc != AE_OK)
          return fail(rc);
        return emit_instance(inst.p, "json");
      }
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInternal;
  }
  return kExitInvalid;
}
