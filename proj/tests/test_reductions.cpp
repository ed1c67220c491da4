#include <map>
#include <set>

#include "doctest.h"
#include "hpclab/graph.hpp"
#include "hpclab/maxflow.hpp"
#include "hpclab/sfm.hpp"
#include "hpclab/transcript.hpp"
#include "hpclab/verifiers.hpp"

using namespace hpclab;

TEST_CASE("weight ladder") {
  for (int n : {1, 2, 5, 8})
    for (int k : {1, 2, 3, 4}) {
      CHECK(layer_weight(n, k, k) == n + 1);
      for (int j = 0; j < k; ++j) CHECK(layer_weight(n, k, j) == (n + 1) * layer_weight(n, k, j + 1));
    }
  // Arbitrary precision: (n+1)^(k+1) far beyond 64 bits.
  BigInt w0 = layer_weight(30, 20, 0);
  CHECK(w0 == bigint_pow(BigInt(31), 21));
}

TEST_CASE("cut graph for n=1, k=1") {
  HpcInstance inst = sample_hpc(1, 9);
  LayeredGraph g = build_cut_graph(inst, 1);
  CHECK(g.vertex_count == 4);
  REQUIRE(g.edges.size() == 5);

  std::multiset<std::string> got;
  for (const auto& e : g.edges)
    got.insert(std::to_string(e.tail) + ">" + std::to_string(e.head) + ":" + e.weight.get_str());
  std::multiset<std::string> want{
      "0>2:4",  // s -> v(0,1) with w_0 = 4
      "2>3:2", "2>3:2",  // two parallel pointer edges of w_1 = 2
      "3>1:2",  // v(1,1) -> t with w_1
      "3>1:0",  // identity edge of weight i-1 = 0
  };
  CHECK(got == want);
}

TEST_CASE("cut graph weights and census") {
  HpcInstance inst2 = sample_hpc(2, 3);
  LayeredGraph g2 = build_cut_graph(inst2, 1);
  CHECK(layer_weight(2, 1, 1) == 3);
  CHECK(layer_weight(2, 1, 0) == 9);
  BigInt s_weight = 0;
  for (const auto& e : g2.edges)
    if (e.tail == g2.s) s_weight += e.weight;
  CHECK(s_weight == 9);  // s has out-degree one, weight w_0

  HpcInstance inst5 = sample_hpc(5, 3);
  LayeredGraph g5 = build_cut_graph(inst5, 3);
  CHECK(g5.vertex_count == 4 * 5 + 2);
  int input_dep = 0;
  for (const auto& e : g5.edges)
    if (e.prov != Provenance::Indep) {
      CHECK(e.weight == layer_weight(5, 3, (e.tail - 2) / 5 + 1));
      ++input_dep;
    }
  CHECK(input_dep > 0);
}

TEST_CASE("consecutive pointer capacity is twice the ladder weight") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    HpcInstance inst = sample_hpc(4, seed);
    int k = 3;
    LayeredGraph g = build_cut_graph(inst, k);
    PointerTrace tr = chase(inst, k);
    for (int j = 1; j <= k; ++j) {
      int u = g.layer_vertex(j - 1, tr.z[j - 1]);
      int v = g.layer_vertex(j, tr.z[j]);
      BigInt cap = 0;
      for (const auto& e : g.edges)
        if (e.tail == u && e.head == v) cap += e.weight;
      CHECK(cap == 2 * layer_weight(4, k, j));
    }
  }
}

TEST_CASE("max flow basics") {
  LayeredGraph g;
  g.vertex_count = 2;
  g.s = 0;
  g.t = 1;
  g.edges.push_back({0, 1, BigInt(7), Provenance::Indep});
  CHECK(max_flow(g).value == 7);
  CHECK(max_flow(g).cut_weight == 7);

  LayeredGraph disconnected;
  disconnected.vertex_count = 3;
  disconnected.s = 0;
  disconnected.t = 1;
  disconnected.edges.push_back({0, 2, BigInt(5), Provenance::Indep});
  CHECK(max_flow(disconnected).value == 0);
}

TEST_CASE("max flow agrees with exhaustive min cut") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    HpcInstance inst = sample_hpc(seed % 2 ? 2 : 1, seed);
    LayeredGraph g = build_cut_graph(inst, seed % 3 ? 1 : 2);
    MaxFlowResult mf = max_flow(g);
    CHECK(mf.value == brute_force_min_cut(g));
    CHECK(mf.cut_weight == mf.value);
  }
}

TEST_CASE("decode_cut") {
  CHECK(decode_cut(BigInt(6 * 31 + 2), 5) == 3);
  CHECK(decode_cut(BigInt(0), 5) == 1);
  CHECK(decode_cut(BigInt(12), 5) == 1);
  CHECK_THROWS_AS(decode_cut(BigInt(5), 5), std::runtime_error);
}

TEST_CASE("end-to-end cut decode equals chase") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    int n = 2 + seed % 4;
    int k = 1 + seed % 3;
    HpcInstance inst = sample_hpc(n, seed);
    LayeredGraph g = build_cut_graph(inst, k);
    MaxFlowResult mf = max_flow(g);
    CHECK(decode_cut(mf.value, n) == chase(inst, k).z[k]);
  }
}

TEST_CASE("flow certificate on the forced instance") {
  HpcInstance inst = sample_hpc(1, 4);
  LayeredGraph g = build_cut_graph(inst, 1);
  FlowCertificate cert = build_flow_certificate(inst, 1, g);
  REQUIRE(cert.families.size() == 1);
  REQUIRE(cert.families[0].size() == 1);
  CHECK(cert.families[0][0].flow == 2);
  CHECK(cert.pointer_path.flow == 0);  // i* = 1
  CHECK(cert.total_value == 2);
  CertificateCheck chk = check_certificate(g, cert);
  CHECK(chk.feasible);
  CHECK(chk.optimal);
  CHECK(cert.total_value == max_flow(g).value);
}

TEST_CASE("flow certificate totals and residual optimality") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    int n = 2 + seed % 3;
    int k = 1 + seed % 3;
    HpcInstance inst = sample_hpc(n, seed * 31 + 1);
    LayeredGraph g = build_cut_graph(inst, k);
    FlowCertificate cert = build_flow_certificate(inst, k, g);
    CertificateCheck chk = check_certificate(g, cert);
    CHECK(chk.feasible);
    CHECK(chk.optimal);
    MaxFlowResult mf = max_flow(g);
    CHECK(cert.total_value == mf.value);

    // total = K (n+1) + (i*-1) with K >= 1
    int istar = chase(inst, k).z[k];
    BigInt rem = cert.total_value - (istar - 1);
    CHECK(bigint_mod(rem, BigInt(n + 1)) == 0);
    CHECK(rem / (n + 1) >= 1);

    // A perturbed certificate can not stay both feasible and optimal.
    FlowCertificate bad = cert;
    bad.families[0][0].flow += 1;
    bad.total_value += 1;
    CertificateCheck bchk = check_certificate(g, bad);
    CHECK_FALSE((bchk.feasible && bchk.optimal));
  }
}

TEST_CASE("empty certificate is feasible but not optimal") {
  HpcInstance inst = sample_hpc(2, 8);
  LayeredGraph g = build_cut_graph(inst, 1);
  FlowCertificate empty;
  empty.total_value = 0;
  CertificateCheck chk = check_certificate(g, empty);
  CHECK(chk.feasible);
  CHECK_FALSE(chk.optimal);
}

TEST_CASE("certificate path over a missing edge throws") {
  HpcInstance inst = sample_hpc(2, 8);
  LayeredGraph g = build_cut_graph(inst, 1);
  FlowCertificate cert;
  FlowPath p;
  p.vertices = {g.s, 999, g.t};
  p.flow = 1;
  cert.pointer_path = p;
  cert.total_value = 1;
  CHECK_THROWS_AS(check_certificate(g, cert), std::invalid_argument);
}

TEST_CASE("simplify_graph preserves the cut value") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    int n = 1 + seed % 2;
    int k = 1 + seed % 2;
    HpcInstance inst = sample_hpc(n, seed);
    LayeredGraph g = build_cut_graph(inst, k);
    LayeredGraph simple = simplify_graph(g);
    CHECK(simple.simple);
    CHECK(simple.vertex_count == 2 + 3 * (k + 1) * n);

    // No parallel edges remain.
    std::set<std::pair<int, int>> seen;
    for (const auto& e : simple.edges) {
      CHECK_FALSE(seen.count({e.tail, e.head}));
      seen.insert({e.tail, e.head});
    }

    BigInt v1 = max_flow(g).value;
    BigInt v2 = max_flow(simple).value;
    CHECK(v1 == v2);
    if (n * (k + 1) * 3 <= 18) CHECK(v2 == brute_force_min_cut(simple));

    // Idempotence.
    LayeredGraph again = simplify_graph(simple);
    CHECK(max_flow(again).value == v2);
  }
}

TEST_CASE("undirected gadget arithmetic") {
  // A single directed edge becomes three parallel undirected s-t edges; every
  // cut gains the full offset plus twice the directed cut.
  LayeredGraph g;
  g.vertex_count = 2;
  g.s = 0;
  g.t = 1;
  g.edges.push_back({0, 1, BigInt(5), Provenance::Indep});
  UndirectedReduction und = to_undirected(g);
  CHECK(und.offset == 5);
  CHECK(und.graph.edges.size() == 3);
  BigInt w = max_flow(und.graph).value;
  CHECK(w == 15);
  CHECK((w - und.offset) / 2 == max_flow(g).value);
}

TEST_CASE("undirected reduction preserves the decode") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    int n = 1 + seed % 3;
    int k = 1 + seed % 2;
    HpcInstance inst = sample_hpc(n, seed + 5);
    LayeredGraph g = build_cut_graph(inst, k);
    BigInt direct = max_flow(g).value;
    UndirectedReduction und = to_undirected(g);
    CHECK(und.offset > 0);
    BigInt w = max_flow(und.graph).value;
    BigInt recovered = (w - und.offset) / 2;
    CHECK(bigint_mod(w - und.offset, BigInt(2)) == 0);
    CHECK(recovered == direct);
    CHECK(decode_cut(recovered, n) == chase(inst, k).z[k]);
  }
}

TEST_CASE("mis graph structure") {
  HpcInstance one = sample_hpc(1, 2);
  LayeredGraph m1 = build_mis_graph(one, 1);
  CHECK(m1.vertex_count == 3);
  CHECK(m1.edges.empty());  // single-element sets contain everything
  auto mis1 = lfmis(m1);
  CHECK(mis1.size() == 3);  // both layer vertices plus the isolated vertex

  // Adjacency follows the complement rule coordinate by coordinate.
  HpcInstance inst = sample_hpc(4, 77);
  int k = 2;
  LayeredGraph g = build_mis_graph(inst, k);
  CHECK(g.vertex_count == (k + 1) * 4 + 1);
  std::set<std::pair<int, int>> adj;
  for (const auto& e : g.edges) adj.insert({e.tail, e.head});
  for (int j = 0; j < k; ++j)
    for (int i = 1; i <= 4; ++i)
      for (int ip = 1; ip <= 4; ++ip) {
        const SetIntInstance& si = j % 2 == 0 ? inst.ab[i - 1] : inst.cd[i - 1];
        bool expect = !si.a[ip - 1] || !si.b[ip - 1];
        bool got = adj.count({g.layer_vertex(j, i), g.layer_vertex(j + 1, ip)}) > 0;
        CHECK(expect == got);
      }

  // Pointer vertices have exactly one joint non-neighbor in the next layer.
  PointerTrace tr = chase(inst, k);
  for (int j = 0; j < k; ++j) {
    int u = g.layer_vertex(j, tr.z[j]);
    int missing = 0, missing_at = 0;
    for (int ip = 1; ip <= 4; ++ip)
      if (!adj.count({u, g.layer_vertex(j + 1, ip)})) {
        ++missing;
        missing_at = ip;
      }
    CHECK(missing == 1);
    CHECK(missing_at == tr.z[j + 1]);
  }
}

TEST_CASE("lfmis decodes the pointer chain") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    int n = 2 + seed % 7;
    int k = 1 + seed % 4;
    HpcInstance inst = sample_hpc(n, seed * 13);
    LayeredGraph g = build_mis_graph(inst, k);
    std::vector<int> mis = lfmis(g);
    PointerTrace tr = chase(inst, k);
    // Exactly one vertex per layer, and it is the pointer vertex.
    for (int j = 0; j <= k; ++j) {
      int count = 0;
      for (int v : mis)
        if (v >= j * n && v < (j + 1) * n && v != mis_isolated_vertex(g)) ++count;
      CHECK(count == 1);
      CHECK(std::find(mis.begin(), mis.end(), g.layer_vertex(j, tr.z[j])) != mis.end());
    }
  }
}

TEST_CASE("lfmis on an edgeless graph keeps everything") {
  LayeredGraph g;
  g.directed = false;
  g.vertex_count = 6;
  CHECK(lfmis(g).size() == 6);
}

TEST_CASE("edge stream order and round-trip") {
  HpcInstance inst = sample_hpc(3, 15);
  LayeredGraph g = build_cut_graph(inst, 2);
  EdgeStream s = emit_stream(g);

  CHECK_FALSE(stream_order_violation(s).has_value());
  CHECK(s.edges.back().prov == Provenance::Indep);

  EdgeStream shuffled = s;
  std::swap(shuffled.edges.front(), shuffled.edges.back());
  CHECK(stream_order_violation(shuffled).has_value());

  // Per-player census against the instance.
  std::map<Provenance, int> count;
  for (const auto& e : s.edges) ++count[e.prov];
  int a_sets = 0, b_sets = 0, c_sets = 0, d_sets = 0;
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 3; ++c) {
      a_sets += inst.ab[i].a[c];
      b_sets += inst.ab[i].b[c];
      c_sets += inst.cd[i].a[c];
      d_sets += inst.cd[i].b[c];
    }
  }
  // k = 2: AB edges appear for layer 0 only, CD edges for layer 1 only.
  CHECK(count[Provenance::A] == a_sets);
  CHECK(count[Provenance::B] == b_sets);
  CHECK(count[Provenance::C] == c_sets);
  CHECK(count[Provenance::D] == d_sets);

  std::string text = to_text(s);
  EdgeStream back = parse_stream(text);
  CHECK(to_text(back) == text);
  LayeredGraph g2 = graph_from_stream(back);
  CHECK(max_flow(g2).value == max_flow(g).value);

  std::string gtext = to_text(g);
  CHECK(to_text(parse_graph(gtext)) == gtext);

  // MIS graphs stream too, with the U suffix on every edge line.
  EdgeStream ms = emit_stream(build_mis_graph(inst, 2));
  CHECK_FALSE(stream_order_violation(ms).has_value());
  std::string mtext = to_text(ms);
  CHECK(mtext.find(" U\n") != std::string::npos);
  CHECK(to_text(parse_stream(mtext)) == mtext);
}

TEST_CASE("graph text parsers reject malformed input") {
  CHECK_THROWS_AS(parse_graph("V 3\nE 0 1 5 indep\n"), std::invalid_argument);  // missing header
  CHECK_THROWS_AS(parse_graph("GRAPH kind=cut n=1 k=1 directed=1 simple=0\nV 4\nE 0 2 4 bogus\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("GRAPH kind=cut n=1 k=1 directed=1 simple=0\nV 4\nE 0 2 4 indep U\n"),
                  std::invalid_argument);  // U suffix on a directed graph
  CHECK_THROWS_AS(parse_stream("GRAPH kind=cut n=1 k=1 directed=1 simple=0\nV 4\n"),
                  std::invalid_argument);  // GRAPH header where STREAM expected
  CHECK_THROWS_AS(parse_transcript("phase=1 pair=CD from=PC to=PD bits=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript("PHASES 1\nphase=1 pair=XY from=PC to=PD bits=1\n"),
                  std::invalid_argument);
}

TEST_CASE("larger desk-scale decode still works") {
  HpcInstance inst = sample_hpc(10, 4242);
  int k = 5;
  LayeredGraph g = build_cut_graph(inst, k);
  CHECK(decode_cut(max_flow(g).value, 10) == chase(inst, k).z[k]);
  LayeredGraph mis = build_mis_graph(inst, k);
  std::vector<int> m = lfmis(mis);
  CHECK(std::find(m.begin(), m.end(), mis.layer_vertex(k, chase(inst, k).z[k])) != m.end());
}

TEST_CASE("sfm oracle evaluates cuts exactly") {
  HpcInstance inst = sample_hpc(2, 6);
  SubmodularOracle oracle = build_sfm_oracle(inst, 1);
  CHECK(oracle.ground_size() == 2 * 4);  // chain length 3 has 4 layers

  // f(empty) counts only the source edge.
  CHECK(oracle.evaluate({}) == layer_weight(2, 3, 0));
  // f(U) counts the edges into t.
  BigInt into_t = 0;
  for (const auto& e : oracle.base_graph().edges)
    if (e.head == oracle.base_graph().t) into_t += e.weight;
  std::vector<int> all;
  for (int i = 0; i < oracle.ground_size(); ++i) all.push_back(i);
  CHECK(oracle.evaluate(all) == into_t);
  CHECK(oracle.query_count() == 2);
  CHECK(oracle.weight_bound() >= into_t);

  CHECK_THROWS_AS(oracle.evaluate({99}), std::invalid_argument);
}

TEST_CASE("sfm oracle submodularity spot check") {
  HpcInstance inst = sample_hpc(2, 41);
  SubmodularOracle oracle = build_sfm_oracle(inst, 1);
  const int m = oracle.ground_size();
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    std::uint64_t b = rng.next() & ((1ULL << m) - 1);
    std::uint64_t a = b & rng.next();  // a subset of b
    int i = static_cast<int>(rng.uniform(m));
    if ((b >> i) & 1) continue;
    BigInt fa = oracle.evaluate_mask(a);
    BigInt fai = oracle.evaluate_mask(a | (1ULL << i));
    BigInt fb = oracle.evaluate_mask(b);
    BigInt fbi = oracle.evaluate_mask(b | (1ULL << i));
    CHECK(fai - fa >= fbi - fb);
  }
}

TEST_CASE("brute force sfm agrees with max flow and decodes the chain") {
  HpcInstance inst = sample_hpc(2, 123);
  SubmodularOracle oracle = build_sfm_oracle(inst, 1);
  SfmResult r = brute_force_sfm(oracle);
  CHECK(oracle.query_count() == (1ULL << oracle.ground_size()));
  CHECK(oracle.rounds_used() == 1);
  MaxFlowResult mf = max_flow(oracle.base_graph());
  CHECK(r.min_value == mf.value);
  CHECK(decode_cut(r.min_value, 2) == chase(inst, 3).z[3]);
}

TEST_CASE("replay_stream with the store-everything consumer") {
  HpcInstance inst = sample_hpc(2, 9);
  LayeredGraph g = build_cut_graph(inst, 1);
  EdgeStream s = emit_stream(g);

  StoreEverythingConsumer consumer(s);
  StreamConsumerReport rep = replay_stream(s, consumer, 1);
  CHECK(rep.passes_used == 1);
  CHECK(rep.output == max_flow(g).value.get_str());
  std::uint64_t payload_bits = 0;
  for (const auto& e : s.edges)
    payload_bits += 8 * (4 + std::to_string(e.tail).size() + std::to_string(e.head).size() +
                         e.weight.get_str().size());
  CHECK(rep.max_state_bits >= payload_bits);
  for (auto b : rep.state_bits_per_pass) CHECK(rep.max_state_bits >= b);

  StoreEverythingConsumer starved(s);
  CHECK_THROWS_AS(replay_stream(s, starved, 0), std::runtime_error);
}
