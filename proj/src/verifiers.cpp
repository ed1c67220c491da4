#include "hpclab/verifiers.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "hpclab/instances.hpp"

namespace hpclab {

int decode_cut(const BigInt& cut_value, int n) {
  if (cut_value < 0) throw std::invalid_argument("decode_cut: negative cut value");
  BigInt r = bigint_mod(cut_value, BigInt(n + 1));
  int istar = static_cast<int>(r.get_ui()) + 1;
  if (istar == n + 1)
    throw std::runtime_error("decode_cut: residue n is impossible for a valid reduction output");
  return istar;
}

FlowCertificate build_flow_certificate(const HpcInstance& inst, int k, const LayeredGraph& g) {
  if (g.kind != LayeredGraph::Kind::Cut || g.simple || !g.directed)
    throw std::invalid_argument("build_flow_certificate expects the multigraph cut construction");
  PointerTrace trace = chase(inst, k);
  const int n = inst.n;

  // Pointer vertices u_0..u_k.
  std::vector<int> u(k + 1);
  for (int j = 0; j <= k; ++j) u[j] = g.layer_vertex(j, trace.z[j]);

  // Distinct out-neighbors of u_{j-1} in layer j.
  std::vector<std::set<int>> heads(k + 1);
  for (const auto& e : g.edges) {
    if (e.prov == Provenance::Indep) continue;
    for (int j = 1; j <= k; ++j)
      if (e.tail == u[j - 1]) heads[j].insert(e.head);
  }

  FlowCertificate cert;
  cert.total_value = 0;
  cert.families.resize(k);
  for (int j = 1; j <= k; ++j) {
    BigInt wj = layer_weight(n, k, j);
    for (int head : heads[j]) {
      FlowPath p;
      p.vertices.push_back(g.s);
      for (int m = 0; m < j; ++m) p.vertices.push_back(u[m]);
      p.vertices.push_back(head);
      p.vertices.push_back(g.t);
      p.flow = wj;
      cert.families[j - 1].push_back(std::move(p));
      cert.total_value += wj;
    }
  }

  int istar = trace.z[k];
  cert.pointer_path.vertices.push_back(g.s);
  for (int j = 0; j <= k; ++j) cert.pointer_path.vertices.push_back(u[j]);
  cert.pointer_path.vertices.push_back(g.t);
  cert.pointer_path.flow = BigInt(istar - 1);
  cert.total_value += cert.pointer_path.flow;
  return cert;
}

namespace {

// Merged capacity per ordered vertex pair, the flow-side convention.
std::map<std::pair<int, int>, BigInt> merged_capacities(const LayeredGraph& g) {
  std::map<std::pair<int, int>, BigInt> cap;
  for (const auto& e : g.edges) cap[{e.tail, e.head}] += e.weight;
  return cap;
}

}  // namespace

CertificateCheck check_certificate(const LayeredGraph& g, const FlowCertificate& cert) {
  CertificateCheck out;
  auto cap = merged_capacities(g);

  std::map<std::pair<int, int>, BigInt> used;
  auto walk = [&](const FlowPath& p) -> std::optional<std::string> {
    if (p.flow < 0) return "negative path flow";
    if (p.flow == 0) return std::nullopt;  // zero flow uses no capacity
    if (p.vertices.size() < 2) return "path too short";
    if (p.vertices.front() != g.s || p.vertices.back() != g.t) return "path endpoints are not s..t";
    for (std::size_t m = 0; m + 1 < p.vertices.size(); ++m) {
      std::pair<int, int> key{p.vertices[m], p.vertices[m + 1]};
      if (!cap.count(key))
        return "path uses missing edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
      used[key] += p.flow;
    }
    return std::nullopt;
  };

  for (const auto& family : cert.families)
    for (const auto& p : family)
      if (auto err = walk(p)) {
        out.detail = *err;
        throw std::invalid_argument("check_certificate: " + *err);
      }
  if (auto err = walk(cert.pointer_path)) throw std::invalid_argument("check_certificate: " + *err);

  out.feasible = true;
  for (const auto& [key, f] : used)
    if (f > cap[key]) {
      out.feasible = false;
      out.detail = "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") overfull";
      break;
    }

  // Residual reachability: forward residual cap - used, backward residual =
  // used. Optimal iff t is unreachable from s.
  std::map<int, std::vector<int>> radj;
  auto add = [&](int u, int v) { radj[u].push_back(v); };
  for (const auto& [key, c] : cap) {
    BigInt f = used.count(key) ? used[key] : BigInt(0);
    if (c - f > 0) add(key.first, key.second);
    if (f > 0) add(key.second, key.first);
  }
  std::queue<int> q;
  std::set<int> seen;
  q.push(g.s);
  seen.insert(g.s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : radj[u])
      if (!seen.count(v)) {
        seen.insert(v);
        q.push(v);
      }
  }
  out.optimal = !seen.count(g.t);
  if (out.detail.empty())
    out.detail = out.feasible ? (out.optimal ? "feasible and residual-optimal" : "feasible, residual s-t path exists")
                              : out.detail;
  return out;
}

std::vector<int> lfmis(const LayeredGraph& g) {
  if (g.directed) throw std::invalid_argument("lfmis expects an undirected graph");
  std::vector<std::vector<int>> adj(g.vertex_count);
  for (const auto& e : g.edges) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<char> blocked(g.vertex_count, 0);
  std::vector<int> mis;
  for (int v = 0; v < g.vertex_count; ++v) {
    if (blocked[v]) continue;
    mis.push_back(v);
    for (int w : adj[v]) blocked[w] = 1;
  }
  return mis;
}

SfmResult brute_force_sfm(SubmodularOracle& oracle) {
  int m = oracle.ground_size();
  if (m > 24)
    throw ResourceError("brute_force_sfm: budget is 24 ground elements, got " + std::to_string(m));
  SfmResult best;
  bool first = true;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    BigInt val = oracle.evaluate_mask(mask);
    if (first || val < best.min_value) {
      first = false;
      best.min_value = val;
      best.argmin.clear();
      for (int i = 0; i < m; ++i)
        if ((mask >> i) & 1) best.argmin.push_back(i);
    }
  }
  return best;
}

StreamConsumerReport replay_stream(const EdgeStream& stream, StreamConsumer& consumer, int pass_limit) {
  StreamConsumerReport rep;
  int pass = 0;
  for (;;) {
    if (!consumer.wants_another_pass()) break;
    if (pass >= pass_limit)
      throw std::runtime_error("replay_stream: consumer wants pass " + std::to_string(pass + 1) +
                               " but the limit is " + std::to_string(pass_limit));
    ++pass;
    consumer.begin_pass(pass);
    for (const auto& e : stream.edges) consumer.consume_edge(e);
    std::uint64_t bits = consumer.end_pass();
    rep.state_bits_per_pass.push_back(bits);
    rep.max_state_bits = std::max(rep.max_state_bits, bits);
  }
  rep.passes_used = pass;
  rep.output = consumer.finish();
  return rep;
}

StoreEverythingConsumer::StoreEverythingConsumer(const EdgeStream& shape) : shape_(shape) {
  shape_.edges.clear();
}

void StoreEverythingConsumer::begin_pass(int) {}

void StoreEverythingConsumer::consume_edge(const GraphEdge& e) { stored_.push_back(e); }

std::uint64_t StoreEverythingConsumer::end_pass() {
  done_ = true;
  std::uint64_t bits = 0;
  for (const auto& e : stored_) {
    std::ostringstream os;
    os << "E " << e.tail << " " << e.head << " " << e.weight.get_str() << " " << provenance_name(e.prov);
    bits += 8 * os.str().size();
  }
  return bits;
}

bool StoreEverythingConsumer::wants_another_pass() const { return !done_; }

std::string StoreEverythingConsumer::finish() {
  if (!done_) throw std::runtime_error("store-everything consumer never received its pass");
  EdgeStream s = shape_;
  s.edges = stored_;
  LayeredGraph g = graph_from_stream(s);
  return max_flow(g).value.get_str();
}

void CheckReport::add(const std::string& name, bool pass, const std::string& detail) {
  lines_.push_back({name, pass, detail});
}

bool CheckReport::all_pass() const {
  for (const auto& l : lines_)
    if (!l.pass) return false;
  return true;
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  for (const auto& l : lines_) {
    os << "CHECK " << l.name << " " << (l.pass ? "PASS" : "FAIL");
    if (!l.detail.empty()) os << " " << l.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace hpclab
