#include <doctest.h>

#include <cstring>
#include <string>

#include "atomemb.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { ae_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Inst {
  ae_instance* p = nullptr;
  ~Inst() { ae_instance_free(p); }
};

struct Poly {
  ae_polyhedron* p = nullptr;
  ~Poly() { ae_polyhedron_free(p); }
};

struct Clus {
  ae_clustered* p = nullptr;
  ~Clus() { ae_clustered_free(p); }
};

}  // namespace

TEST_CASE("c api: generate, serialize, reparse, decide") {
  Inst gen;
  REQUIRE(ae_gen_random(7, 8, 3, 0.45, &gen.p) == AE_OK);

  Str json;
  REQUIRE(ae_instance_to_json(gen.p, &json.p) == AE_OK);
  CHECK(json.str().find("\"G\"") != std::string::npos);

  Inst back;
  REQUIRE(ae_instance_parse(json.p, &back.p) == AE_OK);
  Str json2;
  REQUIRE(ae_instance_to_json(back.p, &json2.p) == AE_OK);
  CHECK(json.str() == json2.str());  // byte-identical round trip

  Str err;
  REQUIRE(ae_instance_validate(back.p, &err.p) == AE_OK);
  CHECK(err.p == nullptr);

  ae_decision d{};
  Str detail, witness;
  REQUIRE(ae_decide(back.p, &d, &detail.p, &witness.p) == AE_OK);
  CHECK((d.embeddable == 0 || d.embeddable == 1));

  int verdict = AE_VERDICT_OVERFLOW;
  uint64_t nodes = 0;
  ae_oracle_limits limits;
  ae_oracle_limits_default(&limits);
  REQUIRE(ae_oracle_decide(back.p, &limits, &verdict, &nodes) == AE_OK);
  REQUIRE(verdict != AE_VERDICT_OVERFLOW);
  CHECK((verdict == AE_VERDICT_POSITIVE) == (d.embeddable == 1));
}

TEST_CASE("c api: toroidal windings and decision reasons") {
  const int pos[] = {1, 1, 1};
  Inst good;
  REQUIRE(ae_gen_toroidal(pos, 3, &good.p) == AE_OK);
  ae_decision d{};
  REQUIRE(ae_decide(good.p, &d, nullptr, nullptr) == AE_OK);
  CHECK(d.embeddable == 1);
  CHECK(d.reason == AE_REASON_POSITIVE);

  const int neg[] = {1, 2};
  Inst bad;
  REQUIRE(ae_gen_toroidal(neg, 2, &bad.p) == AE_OK);
  Str detail;
  REQUIRE(ae_decide(bad.p, &d, &detail.p, nullptr) == AE_OK);
  CHECK(d.embeddable == 0);
  CHECK(d.reason == AE_REASON_TOROIDAL_MISMATCH);
  CHECK_FALSE(detail.str().empty());
}

TEST_CASE("c api: normalization produces a valid instance") {
  Inst gen;
  REQUIRE(ae_gen_random(3, 9, 3, 0.4, &gen.p) == AE_OK);
  Inst norm;
  REQUIRE(ae_normalize(gen.p, &norm.p) == AE_OK);
  Str err;
  REQUIRE(ae_instance_validate(norm.p, &err.p) == AE_OK);
  CHECK(err.p == nullptr);
}

TEST_CASE("c api: thickenability round trip keeps the verdict") {
  Inst gen;
  REQUIRE(ae_gen_random(11, 7, 2, 0.5, &gen.p) == AE_OK);
  ae_decision before{};
  REQUIRE(ae_decide(gen.p, &before, nullptr, nullptr) == AE_OK);

  Poly poly;
  REQUIRE(ae_reduce_to_thickenability(gen.p, &poly.p) == AE_OK);
  Str perr;
  REQUIRE(ae_polyhedron_validate(poly.p, &perr.p) == AE_OK);
  CHECK(perr.p == nullptr);

  Str pjson;
  REQUIRE(ae_polyhedron_to_json(poly.p, &pjson.p) == AE_OK);
  Poly back;
  REQUIRE(ae_polyhedron_parse(pjson.p, &back.p) == AE_OK);

  int verdict = AE_VERDICT_OVERFLOW;
  REQUIRE(ae_neuwirth_check(back.p, nullptr, &verdict, nullptr) == AE_OK);
  REQUIRE(verdict != AE_VERDICT_OVERFLOW);
  CHECK((verdict == AE_VERDICT_POSITIVE) == (before.embeddable == 1));

  Inst again;
  REQUIRE(ae_reduce_from_thickenability(back.p, &again.p) == AE_OK);
  ae_decision after{};
  REQUIRE(ae_decide(again.p, &after, nullptr, nullptr) == AE_OK);
  CHECK(after.embeddable == before.embeddable);
}

TEST_CASE("c api: clustered instances reduce and decide") {
  Clus ci;
  REQUIRE(ae_gen_cplan(5, 3, 7, 0.4, &ci.p) == AE_OK);
  Str cerr;
  REQUIRE(ae_clustered_validate(ci.p, &cerr.p) == AE_OK);
  CHECK(cerr.p == nullptr);

  Str cjson;
  REQUIRE(ae_clustered_to_json(ci.p, &cjson.p) == AE_OK);
  Clus back;
  REQUIRE(ae_clustered_parse(cjson.p, &back.p) == AE_OK);

  Inst inst;
  REQUIRE(ae_reduce_from_cplanarity(back.p, &inst.p) == AE_OK);
  ae_decision d{};
  REQUIRE(ae_decide(inst.p, &d, nullptr, nullptr) == AE_OK);
}

TEST_CASE("c api: dot export lists every local graph") {
  Inst gen;
  REQUIRE(ae_gen_random(2, 6, 3, 0.4, &gen.p) == AE_OK);
  Str dot;
  REQUIRE(ae_export_dot(gen.p, &dot.p) == AE_OK);
  CHECK(dot.str().find("graph atom_0") != std::string::npos);
  CHECK(dot.str().find(" -- ") != std::string::npos);
}

TEST_CASE("c api: error paths set codes and messages") {
  Inst inst;
  CHECK(ae_instance_parse("this is not json", &inst.p) == AE_EPARSE);
  CHECK(std::strlen(ae_last_error()) > 0);

  CHECK(ae_instance_parse(nullptr, &inst.p) == AE_EINVAL);
  CHECK(ae_instance_to_json(nullptr, nullptr) == AE_EINVAL);
  CHECK(ae_gen_toroidal(nullptr, 0, &inst.p) == AE_EINVAL);

  Poly poly;
  CHECK(ae_polyhedron_parse("{", &poly.p) == AE_EPARSE);
  Clus ci;
  CHECK(ae_clustered_parse("[]", &ci.p) == AE_EPARSE);
}
