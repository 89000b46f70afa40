#include <doctest.h>

#include <algorithm>

#include "operations.hpp"

using namespace atomemb;

namespace {

// Programmatic instance builder; keeps tests independent of the JSON layer.
struct Build {
  Instance inst;

  VertexId atom() { return inst.h.add_vertex(); }
  EdgeId pipe(VertexId a, VertexId b) { return inst.h.add_edge(a, b); }
  VertexId gv(VertexId at) {
    VertexId v = inst.g.add_vertex();
    inst.vertex_atom.emplace(v.value, at);
    return v;
  }
  EdgeId intra(VertexId u, VertexId v) {
    EdgeId e = inst.g.add_edge(u, v);
    inst.edge_image.emplace(e.value, EdgeImage::atom(inst.vertex_atom.at(u.value)));
    return e;
  }
  EdgeId cross(VertexId u, VertexId v, EdgeId p) {
    EdgeId e = inst.g.add_edge(u, v);
    inst.edge_image.emplace(e.value, EdgeImage::pipe(p));
    return e;
  }
};

// Two atoms joined by one pipe of the given fiber size, fiber endpoints
// otherwise isolated.
Build pipe_fixture(std::size_t fiber) {
  Build b;
  VertexId m = b.atom(), n = b.atom();
  EdgeId r = b.pipe(m, n);
  for (std::size_t i = 0; i < fiber; ++i) b.cross(b.gv(m), b.gv(n), r);
  return b;
}

}  // namespace

TEST_CASE("suppress splices stubs per side") {
  // [DERIVED] fiber 1: each side gains a pendant stub, pipe disappears.
  Build b = pipe_fixture(1);
  Instance out = suppress(b.inst, EdgeId{0}, nullptr, false);
  CHECK(validate(out).empty());
  CHECK(out.h.edge_count() == 0);
  CHECK(out.g.vertex_count() == 4);
  CHECK(out.g.edge_count() == 2);
  for (EdgeId e : out.g.edges()) CHECK_FALSE(out.image_of(e).is_pipe);

  // [DERIVED] fiber 2: both originals attach to one stub per side.
  Build b2 = pipe_fixture(2);
  Instance out2 = suppress(b2.inst, EdgeId{0}, nullptr, false);
  CHECK(validate(out2).empty());
  CHECK(out2.g.vertex_count() == 6);
  CHECK(out2.g.edge_count() == 4);
  VertexId stub_m{4};  // first created stub sits in the pipe's first atom
  CHECK(out2.atom_of(stub_m) == VertexId{0});
  CHECK(out2.g.degree(stub_m) == 2);

  // [TRIVIAL] fiber 0: plain pipe removal.
  Build b0 = pipe_fixture(0);
  Instance out0 = suppress(b0.inst, EdgeId{0}, nullptr, false);
  CHECK(out0.h.edge_count() == 0);
  CHECK(out0.g.vertex_count() == 0);

  Build b3 = pipe_fixture(3);
  CHECK_THROWS_AS(suppress(b3.inst, EdgeId{0}), OpError);
}

TEST_CASE("split separates local components") {
  Build b;
  VertexId a = b.atom();
  VertexId p = b.gv(a), q = b.gv(a), r = b.gv(a), s = b.gv(a);
  b.intra(p, q);
  b.intra(r, s);
  Instance out = split(b.inst, a, nullptr, false);
  CHECK(validate(out).empty());
  CHECK(out.h.vertex_count() == 2);
  CHECK(out.atom_of(p) == out.atom_of(q));
  CHECK(out.atom_of(r) == out.atom_of(s));
  CHECK(out.atom_of(p) != out.atom_of(r));
  CHECK(out.image_of(EdgeId{0}) == EdgeImage::atom(out.atom_of(p)));

  // pipes follow their component's virtual vertex
  Build c;
  VertexId x = c.atom(), y = c.atom();
  EdgeId rho = c.pipe(x, y);
  for (int i = 0; i < 3; ++i) c.cross(c.gv(x), c.gv(y), rho);
  VertexId i1 = c.gv(x), i2 = c.gv(x);
  c.intra(i1, i2);
  Instance out2 = split(c.inst, x, nullptr, false);
  CHECK(validate(out2).empty());
  CHECK(out2.h.vertex_count() == 3);
  auto [e1, e2] = out2.h.ends(rho);
  CHECK(((e1 == y) != (e2 == y)));
  CHECK(out2.atom_of(i1) != (e1 == y ? e2 : e1));

  CHECK_THROWS_AS(split(out2, y), OpError);  // connected local graph
}

TEST_CASE("detach explodes a vertex into leaves") {
  Build b;
  VertexId a = b.atom();
  VertexId c = b.gv(a), x = b.gv(a), y = b.gv(a), z = b.gv(a);
  b.intra(c, x);
  b.intra(c, y);
  b.intra(c, z);
  Instance out = detach(b.inst, c, nullptr, false);
  CHECK(validate(out).empty());
  CHECK_FALSE(out.g.has_vertex(c));
  CHECK(out.g.vertex_count() == 6);
  CHECK(out.g.edge_count() == 3);
  for (VertexId v : out.g.vertices()) CHECK(out.g.degree(v) == 1);

  // with hooks the now-disconnected local graph splits into three atoms
  Instance hooked = detach(b.inst, c);
  CHECK(hooked.h.vertex_count() == 3);
  CHECK(is_normal(hooked));

  // a K4 interior vertex has a non-p-path bridge
  Build k;
  VertexId ka = k.atom();
  VertexId kv[4];
  for (auto& v : kv) v = k.gv(ka);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k.intra(kv[i], kv[j]);
  CHECK_THROWS_AS(detach(k.inst, kv[0]), OpError);
}

TEST_CASE("enclose moves an ordinary bridge behind a new pipe") {
  Build b;
  VertexId nu = b.atom();
  VertexId v = b.gv(nu), a = b.gv(nu), c = b.gv(nu), x = b.gv(nu);
  EdgeId va = b.intra(v, a);
  b.intra(a, c);
  b.intra(v, x);
  LocalGraph lg = local_graph(b.inst, nu);
  VertexId lv = lg.local_of_g_vertex.at(v.value);
  auto bs = bridges(lg.graph, {lv});
  REQUIRE(bs.size() == 2);
  const Bridge& big = bs[0].interior.size() == 2 ? bs[0] : bs[1];
  VertexId natom;
  EdgeId npipe;
  Instance out =
      enclose(b.inst, lg, {lv}, big, nullptr, false, &natom, &npipe);
  CHECK(validate(out).empty());
  CHECK(out.h.vertex_count() == 2);
  CHECK(out.h.edge_count() == 1);
  CHECK(out.atom_of(a) == natom);
  CHECK(out.atom_of(c) == natom);
  CHECK(out.atom_of(v) == nu);
  CHECK(out.image_of(va) == EdgeImage::pipe(npipe));
  CHECK(out.pipe_degree(npipe) == 1);

  // a spanned single-edge bridge has empty interior and is rejected
  VertexId la = lg.local_of_g_vertex.at(a.value);
  auto bs2 = bridges(lg.graph, {lv, la});
  const Bridge* spanned = nullptr;
  for (const Bridge& br : bs2)
    if (br.interior.empty()) spanned = &br;
  REQUIRE(spanned != nullptr);
  CHECK_THROWS_AS(enclose(b.inst, lg, {lv, la}, *spanned), OpError);
}

TEST_CASE("enclose subdivides boundary edges at a virtual cut vertex") {
  Build b;
  VertexId mu = b.atom(), nu = b.atom();
  EdgeId rho = b.pipe(mu, nu);
  VertexId u[3], z[3];
  EdgeId ge[3];
  for (int i = 0; i < 3; ++i) {
    u[i] = b.gv(nu);
    z[i] = b.gv(mu);
    ge[i] = b.cross(u[i], z[i], rho);
  }
  b.intra(u[0], u[1]);
  b.intra(u[1], u[2]);
  b.intra(u[0], u[2]);
  LocalGraph lg = local_graph(b.inst, nu);
  VertexId lr = lg.local_of_pipe.at(rho.value);
  auto bs = bridges(lg.graph, {lr});
  REQUIRE(bs.size() == 1);
  VertexId natom;
  EdgeId npipe;
  Instance out =
      enclose(b.inst, lg, {lr}, bs[0], nullptr, false, &natom, &npipe);
  CHECK(validate(out).empty());
  CHECK(out.pipe_degree(npipe) == 3);
  CHECK(out.pipe_degree(rho) == 3);
  CHECK(out.g.vertex_count() == 9);  // three subdivision vertices
  for (int i = 0; i < 3; ++i) {
    CHECK(out.atom_of(u[i]) == natom);
    CHECK_FALSE(out.g.has_edge(ge[i]));
  }
  // nu's local graph is now a p-path between the two virtual vertices
  LocalGraph after = local_graph(out, nu);
  CHECK(classify_shape(after.graph).kind == Shape::PPath);

  // enclosing an interior virtual vertex reroutes its pipe
  Build c;
  VertexId cm = c.atom(), cn = c.atom();
  EdgeId crho = c.pipe(cm, cn);
  VertexId cv = c.gv(cn), cu = c.gv(cn), cx = c.gv(cn), cz = c.gv(cm);
  c.intra(cv, cu);
  c.cross(cu, cz, crho);
  c.intra(cv, cx);
  LocalGraph clg = local_graph(c.inst, cn);
  VertexId clv = clg.local_of_g_vertex.at(cv.value);
  auto cbs = bridges(clg.graph, {clv});
  REQUIRE(cbs.size() == 2);
  const Bridge& with_pipe = cbs[0].interior.size() == 2 ? cbs[0] : cbs[1];
  VertexId cna;
  Instance cout_ =
      enclose(c.inst, clg, {clv}, with_pipe, nullptr, false, &cna, nullptr);
  CHECK(validate(cout_).empty());
  auto [ra, rb] = cout_.h.ends(crho);
  CHECK(((ra == cm && rb == cna) || (ra == cna && rb == cm)));
}

TEST_CASE("stretch splits ordinary vertices and pipes") {
  Build b;
  VertexId a = b.atom();
  VertexId u = b.gv(a), n1 = b.gv(a), n2 = b.gv(a), n3 = b.gv(a);
  EdgeId e1 = b.intra(u, n1), e2 = b.intra(u, n2);
  b.intra(u, n3);
  Instance out = stretch_ordinary(b.inst, u, {e1, e2}, nullptr, false);
  CHECK(validate(out).empty());
  CHECK(out.g.degree(u) == 2);  // remaining edge + bridge to u'
  VertexId up{4};
  CHECK(out.g.degree(up) == 3);
  CHECK(out.atom_of(up) == a);
  CHECK_THROWS_AS(stretch_ordinary(b.inst, u, {}), OpError);
  CHECK_THROWS_AS(stretch_ordinary(b.inst, u, {e1, e2, EdgeId{2}}), OpError);

  Build p = pipe_fixture(3);
  auto fiber = p.inst.pipe_edges(EdgeId{0});
  EdgeId np;
  Instance out2 = stretch_virtual(p.inst, EdgeId{0}, {fiber[0], fiber[1]},
                                  nullptr, false, &np);
  CHECK(validate(out2).empty());
  CHECK(out2.h.edge_count() == 2);
  CHECK(out2.pipe_degree(EdgeId{0}) == 2);  // remaining edge + keeper f
  CHECK(out2.pipe_degree(np) == 3);
  CHECK(out2.g.vertex_count() == 8);
  CHECK_THROWS_AS(stretch_virtual(p.inst, EdgeId{0}, fiber), OpError);
}

TEST_CASE("contract merges across a pipe") {
  // one side a p-path with the pipe at a pole
  Build b;
  VertexId m = b.atom(), n = b.atom();
  EdgeId r = b.pipe(m, n);
  VertexId a = b.gv(m), c = b.gv(n);
  EdgeId ac = b.cross(a, c, r);
  Instance out = contract(b.inst, r, nullptr, false);
  CHECK(validate(out).empty());
  CHECK(out.h.vertex_count() == 1);
  CHECK(out.h.edge_count() == 0);
  CHECK(out.atom_of(a) == out.atom_of(c));
  CHECK_FALSE(out.image_of(ac).is_pipe);

  // both sides p-stars centered at the virtual vertices; hooks then split
  Build s;
  VertexId sm = s.atom(), sn = s.atom();
  EdgeId sr = s.pipe(sm, sn);
  VertexId a1 = s.gv(sm), a2 = s.gv(sm), b1 = s.gv(sn), b2 = s.gv(sn);
  s.cross(a1, b1, sr);
  s.cross(a2, b2, sr);
  Instance out2 = contract(s.inst, sr);
  CHECK(validate(out2).empty());
  CHECK(out2.h.vertex_count() == 2);
  CHECK(out2.atom_of(a1) == out2.atom_of(b1));
  CHECK(out2.atom_of(a1) != out2.atom_of(a2));

  // a second pipe between the same atoms blocks the contraction
  Build d;
  VertexId dm = d.atom(), dn = d.atom();
  EdgeId dr = d.pipe(dm, dn);
  d.pipe(dm, dn);
  d.cross(d.gv(dm), d.gv(dn), dr);
  CHECK_THROWS_AS(contract(d.inst, dr), OpError);
}

TEST_CASE("delete removes a cut edge") {
  // ordinary-ordinary: deletion disconnects and the hook splits
  Build b;
  VertexId a = b.atom();
  VertexId p = b.gv(a), q = b.gv(a);
  EdgeId pq = b.intra(p, q);
  Instance out = delete_edge(b.inst, a, pq);
  CHECK(validate(out).empty());
  CHECK(out.g.edge_count() == 0);
  CHECK(out.h.vertex_count() == 2);
  CHECK(out.atom_of(p) != out.atom_of(q));

  // ordinary-virtual: suppress the pipe and rejoin the far stub
  Build c;
  VertexId mu = c.atom(), nu = c.atom();
  EdgeId rho = c.pipe(mu, nu);
  VertexId u = c.gv(nu), w = c.gv(mu);
  EdgeId uw = c.cross(u, w, rho);
  VertexId s1 = c.gv(nu), s2 = c.gv(nu), t1 = c.gv(mu), t2 = c.gv(mu);
  c.cross(s1, t1, rho);
  c.cross(s2, t2, rho);
  Instance out2 = delete_edge(c.inst, nu, uw);
  CHECK(validate(out2).empty());
  CHECK(out2.h.edge_count() == 0);
  // w is rejoined to the mu-side stub v'
  REQUIRE(out2.g.degree(w) == 1);
  VertexId vp = out2.g.other_end(out2.g.incident_edges(w)[0], w);
  CHECK(out2.atom_of(vp) == out2.atom_of(w));
  CHECK(out2.g.degree(vp) == 3);  // t1, t2, w
  CHECK(out2.g.degree(u) == 0);

  // non-cut edges and non-subcubic local graphs are rejected
  Build t;
  VertexId ta = t.atom();
  VertexId tv[3];
  for (auto& v : tv) v = t.gv(ta);
  EdgeId te = t.intra(tv[0], tv[1]);
  t.intra(tv[1], tv[2]);
  t.intra(tv[0], tv[2]);
  CHECK_THROWS_AS(delete_edge(t.inst, ta, te), OpError);
}

TEST_CASE("hooks reach a normal fixpoint") {
  // chain of degree-2 pipes collapses entirely
  Build b;
  VertexId a1 = b.atom(), a2 = b.atom(), a3 = b.atom();
  EdgeId p1 = b.pipe(a1, a2), p2 = b.pipe(a2, a3);
  VertexId x1 = b.gv(a1), x2 = b.gv(a1), y1 = b.gv(a2), y2 = b.gv(a2);
  VertexId z1 = b.gv(a3), z2 = b.gv(a3);
  b.cross(x1, y1, p1);
  b.cross(x2, y2, p1);
  b.cross(y1, z1, p2);
  b.cross(y2, z2, p2);
  b.intra(x1, x2);
  b.intra(z1, z2);
  RewriteTrace trace;
  Instance out = run_hooks(b.inst, &trace);
  CHECK(validate(out).empty());
  CHECK(is_normal(out));
  CHECK(out.h.edge_count() == 0);
  CHECK(trace.op_count() == 0);  // hook entries only
  CHECK(trace.entries.size() >= 2);
  for (const auto& e : trace.entries) CHECK(e.auto_hook);
}

TEST_CASE("traces serialize and replay deterministically") {
  Build b;
  VertexId nu = b.atom();
  VertexId v = b.gv(nu), a = b.gv(nu), c = b.gv(nu), x = b.gv(nu), y = b.gv(nu);
  b.intra(v, a);
  b.intra(a, c);
  b.intra(c, v);
  b.intra(v, x);
  b.intra(x, y);
  b.intra(y, v);
  Instance initial = b.inst;

  RewriteTrace trace;
  Instance cur = run_hooks(initial, &trace);
  LocalGraph lg = local_graph(cur, nu);
  VertexId lv = lg.local_of_g_vertex.at(v.value);
  auto bs = bridges(lg.graph, {lv});
  REQUIRE(bs.size() == 2);
  cur = enclose(cur, lg, {lv}, bs[0], &trace);
  cur = stretch_ordinary(cur, v, {cur.g.incident_edges(v)[0]}, &trace);
  CHECK(validate(cur).empty());
  CHECK(trace.op_count() == 2);

  std::string jsonl = trace_to_jsonl(trace);
  RewriteTrace parsed = trace_from_jsonl(jsonl);
  CHECK(trace_to_jsonl(parsed) == jsonl);
  Instance replayed = replay_trace(initial, parsed);
  CHECK(instance_to_json(replayed) == instance_to_json(cur));
}
