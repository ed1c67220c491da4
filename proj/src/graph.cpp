#include "hpclab/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hpclab {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Indep: return "indep";
    case Provenance::A: return "A";
    case Provenance::B: return "B";
    case Provenance::C: return "C";
    default: return "D";
  }
}

Provenance parse_provenance(const std::string& s) {
  if (s == "indep") return Provenance::Indep;
  if (s == "A") return Provenance::A;
  if (s == "B") return Provenance::B;
  if (s == "C") return Provenance::C;
  if (s == "D") return Provenance::D;
  throw std::invalid_argument("unknown provenance tag: " + s);
}

int LayeredGraph::layer_vertex(int j, int i) const {
  if (j < 0 || j > k || i < 1 || i > n) throw std::invalid_argument("layer_vertex out of range");
  if (kind == Kind::Mis) return j * n + (i - 1);
  if (simple) return 2 + 3 * (j * n + (i - 1));  // hub of the split triple
  return 2 + j * n + (i - 1);
}

BigInt LayeredGraph::total_weight() const {
  BigInt sum = 0;
  for (const auto& e : edges) sum += e.weight;
  return sum;
}

BigInt layer_weight(int n, int k, int j) {
  if (j < 0 || j > k) throw std::invalid_argument("layer_weight: j out of range");
  return bigint_pow(BigInt(n + 1), static_cast<unsigned long>(k + 1 - j));
}

LayeredGraph build_cut_graph(const HpcInstance& inst, int k) {
  if (k < 1) throw std::invalid_argument("build_cut_graph: k must be >= 1");
  LayeredGraph g;
  g.kind = LayeredGraph::Kind::Cut;
  g.n = inst.n;
  g.k = k;
  g.directed = true;
  g.s = 0;
  g.t = 1;
  g.vertex_count = (k + 1) * inst.n + 2;

  const int n = inst.n;
  // Input-independent edges: the single source edge, one w_j edge per layer
  // vertex into t for j >= 1, and the identity edges of weight i-1 from the
  // last layer.
  g.edges.push_back({g.s, g.layer_vertex(0, 1), layer_weight(n, k, 0), Provenance::Indep});
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= n; ++i)
      g.edges.push_back({g.layer_vertex(j, i), g.t, layer_weight(n, k, j), Provenance::Indep});
  for (int i = 1; i <= n; ++i)
    g.edges.push_back({g.layer_vertex(k, i), g.t, BigInt(i - 1), Provenance::Indep});

  // Input-dependent edges: layer j -> j+1 follows the AB side for even j and
  // the CD side for odd j; each set contributes its own copy, so the target
  // coordinate yields two parallel edges.
  for (int j = 0; j < k; ++j) {
    bool ab_side = j % 2 == 0;
    for (int i = 1; i <= n; ++i) {
      const SetIntInstance& si = ab_side ? inst.ab[i - 1] : inst.cd[i - 1];
      for (int ip = 1; ip <= n; ++ip) {
        if (si.a[ip - 1])
          g.edges.push_back({g.layer_vertex(j, i), g.layer_vertex(j + 1, ip), layer_weight(n, k, j + 1),
                             ab_side ? Provenance::A : Provenance::C});
        if (si.b[ip - 1])
          g.edges.push_back({g.layer_vertex(j, i), g.layer_vertex(j + 1, ip), layer_weight(n, k, j + 1),
                             ab_side ? Provenance::B : Provenance::D});
      }
    }
  }
  return g;
}

LayeredGraph simplify_graph(const LayeredGraph& g) {
  if (g.simple) return g;  // idempotent
  if (g.kind != LayeredGraph::Kind::Cut || !g.directed)
    throw std::invalid_argument("simplify_graph expects the directed multigraph cut construction");
  LayeredGraph out;
  out.kind = LayeredGraph::Kind::Cut;
  out.n = g.n;
  out.k = g.k;
  out.directed = true;
  out.simple = true;
  out.s = 0;
  out.t = 1;
  out.vertex_count = 2 + 3 * (g.k + 1) * g.n;

  BigInt heavy = layer_weight(g.n, g.k, 0);  // effectively infinite inside a layer
  // hub = 2 + 3*(j*n + i-1); the two relays follow it.
  auto hub = [&](int j, int i) { return 2 + 3 * (j * g.n + (i - 1)); };
  for (int j = 0; j <= g.k; ++j)
    for (int i = 1; i <= g.n; ++i) {
      out.edges.push_back({hub(j, i), hub(j, i) + 1, heavy, Provenance::Indep});
      out.edges.push_back({hub(j, i), hub(j, i) + 2, heavy, Provenance::Indep});
    }

  auto translate = [&](int v, bool as_tail, Provenance prov) {
    if (v == g.s || v == g.t) return v;
    int idx = v - 2;  // j*n + i-1
    int base = 2 + 3 * idx;
    if (!as_tail) return base;  // edges enter through the hub
    // Outgoing input-dependent edges leave through the relay of their half.
    if (prov == Provenance::A || prov == Provenance::C) return base + 1;
    if (prov == Provenance::B || prov == Provenance::D) return base + 2;
    return base;  // input-independent edges leave from the hub
  };

  // The last layer has two input-independent edges into t per vertex (w_k and
  // the identity weight i-1); merge them so the result really is simple.
  std::vector<BigInt> tail_to_t(g.vertex_count, BigInt(0));
  std::vector<char> has_t_edge(g.vertex_count, 0);
  for (const auto& e : g.edges) {
    if (e.prov == Provenance::Indep && e.head == g.t) {
      tail_to_t[e.tail] += e.weight;
      has_t_edge[e.tail] = 1;
      continue;
    }
    out.edges.push_back({translate(e.tail, true, e.prov), translate(e.head, false, e.prov), e.weight, e.prov});
  }
  for (int v = 0; v < g.vertex_count; ++v)
    if (has_t_edge[v])
      out.edges.push_back({translate(v, true, Provenance::Indep), g.t, tail_to_t[v], Provenance::Indep});
  return out;
}

UndirectedReduction to_undirected(const LayeredGraph& g) {
  if (!g.directed) throw std::invalid_argument("to_undirected expects a directed graph");
  if (g.s < 0 || g.t < 0) throw std::invalid_argument("to_undirected needs s and t");
  UndirectedReduction out;
  out.graph.kind = g.kind;
  out.graph.n = g.n;
  out.graph.k = g.k;
  out.graph.vertex_count = g.vertex_count;
  out.graph.directed = false;
  out.graph.simple = false;
  out.graph.s = g.s;
  out.graph.t = g.t;
  out.offset = 0;
  for (const auto& e : g.edges) {
    out.graph.edges.push_back({g.s, e.head, e.weight, e.prov});
    out.graph.edges.push_back({e.tail, e.head, e.weight, e.prov});
    out.graph.edges.push_back({g.t, e.tail, e.weight, e.prov});
    out.offset += e.weight;
  }
  return out;
}

LayeredGraph build_mis_graph(const HpcInstance& inst, int k) {
  if (k < 1) throw std::invalid_argument("build_mis_graph: k must be >= 1");
  LayeredGraph g;
  g.kind = LayeredGraph::Kind::Mis;
  g.n = inst.n;
  g.k = k;
  g.directed = false;
  g.s = -1;
  g.t = -1;
  g.vertex_count = (k + 1) * inst.n + 1;  // one extra vertex with no edges

  const int n = inst.n;
  for (int i = 2; i <= n; ++i)
    g.edges.push_back({g.layer_vertex(0, 1), g.layer_vertex(0, i), BigInt(1), Provenance::Indep});

  // Complement rule: connect to the next layer wherever a set does NOT
  // contain the element.
  for (int j = 0; j < k; ++j) {
    bool ab_side = j % 2 == 0;
    for (int i = 1; i <= n; ++i) {
      const SetIntInstance& si = ab_side ? inst.ab[i - 1] : inst.cd[i - 1];
      for (int ip = 1; ip <= n; ++ip) {
        if (!si.a[ip - 1])
          g.edges.push_back({g.layer_vertex(j, i), g.layer_vertex(j + 1, ip), BigInt(1),
                             ab_side ? Provenance::A : Provenance::C});
        if (!si.b[ip - 1])
          g.edges.push_back({g.layer_vertex(j, i), g.layer_vertex(j + 1, ip), BigInt(1),
                             ab_side ? Provenance::B : Provenance::D});
      }
    }
  }
  return g;
}

int mis_isolated_vertex(const LayeredGraph& g) {
  if (g.kind != LayeredGraph::Kind::Mis) throw std::invalid_argument("not a MIS graph");
  return g.vertex_count - 1;
}

EdgeStream emit_stream(const LayeredGraph& g) {
  EdgeStream s;
  s.kind = g.kind;
  s.n = g.n;
  s.k = g.k;
  s.vertex_count = g.vertex_count;
  s.directed = g.directed;
  s.simple = g.simple;
  s.edges = g.edges;
  auto block = [](Provenance p) {
    switch (p) {
      case Provenance::D: return 0;
      case Provenance::C: return 1;
      case Provenance::B: return 2;
      case Provenance::A: return 3;
      default: return 4;
    }
  };
  std::stable_sort(s.edges.begin(), s.edges.end(), [&](const GraphEdge& x, const GraphEdge& y) {
    if (block(x.prov) != block(y.prov)) return block(x.prov) < block(y.prov);
    if (x.tail != y.tail) return x.tail < y.tail;
    if (x.head != y.head) return x.head < y.head;
    return x.weight < y.weight;
  });
  return s;
}

std::optional<std::string> stream_order_violation(const EdgeStream& s) {
  auto block = [](Provenance p) {
    switch (p) {
      case Provenance::D: return 0;
      case Provenance::C: return 1;
      case Provenance::B: return 2;
      case Provenance::A: return 3;
      default: return 4;
    }
  };
  for (std::size_t i = 1; i < s.edges.size(); ++i)
    if (block(s.edges[i - 1].prov) > block(s.edges[i].prov))
      return "edge " + std::to_string(i) + " breaks the D,C,B,A,indep block order";
  return std::nullopt;
}

LayeredGraph graph_from_stream(const EdgeStream& s) {
  LayeredGraph g;
  g.kind = s.kind;
  g.n = s.n;
  g.k = s.k;
  g.vertex_count = s.vertex_count;
  g.directed = s.directed;
  g.simple = s.simple;
  if (s.kind == LayeredGraph::Kind::Mis) {
    g.s = -1;
    g.t = -1;
  } else {
    g.s = 0;
    g.t = 1;
  }
  g.edges = s.edges;
  return g;
}

namespace {

const char* kind_name(LayeredGraph::Kind k) {
  switch (k) {
    case LayeredGraph::Kind::Cut: return "cut";
    case LayeredGraph::Kind::Mis: return "mis";
    default: return "generic";
  }
}

LayeredGraph::Kind parse_kind(const std::string& s) {
  if (s == "cut") return LayeredGraph::Kind::Cut;
  if (s == "mis") return LayeredGraph::Kind::Mis;
  if (s == "generic") return LayeredGraph::Kind::Generic;
  throw std::invalid_argument("unknown graph kind: " + s);
}

void write_edges(std::ostringstream& os, const std::vector<GraphEdge>& edges, bool directed) {
  for (const auto& e : edges) {
    os << "E " << e.tail << " " << e.head << " " << e.weight.get_str() << " " << provenance_name(e.prov);
    if (!directed) os << " U";
    os << "\n";
  }
}

void write_header(std::ostringstream& os, const char* what, LayeredGraph::Kind kind, int n, int k,
                  bool directed, bool simple, int vertex_count) {
  os << what << " kind=" << kind_name(kind) << " n=" << n << " k=" << k << " directed=" << (directed ? 1 : 0)
     << " simple=" << (simple ? 1 : 0) << "\n";
  os << "V " << vertex_count << "\n";
}

struct ParsedText {
  std::string what;
  LayeredGraph::Kind kind;
  int n, k, vertex_count;
  bool directed, simple;
  std::vector<GraphEdge> edges;
};

ParsedText parse_graph_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  ParsedText out{};
  bool saw_header = false, saw_v = false;
  auto attr = [](const std::string& tok, const char* key) {
    std::string p = std::string(key) + "=";
    if (tok.rfind(p, 0) != 0) throw std::invalid_argument("expected '" + p + "' in graph text");
    return tok.substr(p.size());
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "GRAPH" || tag == "STREAM") {
      std::string kt, nt, ktok, dt, st;
      ls >> kt >> nt >> ktok >> dt >> st;
      out.what = tag;
      out.kind = parse_kind(attr(kt, "kind"));
      out.n = std::stoi(attr(nt, "n"));
      out.k = std::stoi(attr(ktok, "k"));
      out.directed = attr(dt, "directed") == "1";
      out.simple = attr(st, "simple") == "1";
      saw_header = true;
    } else if (tag == "V") {
      ls >> out.vertex_count;
      saw_v = true;
    } else if (tag == "E") {
      GraphEdge e;
      std::string wtok, ptok, utok;
      ls >> e.tail >> e.head >> wtok >> ptok;
      e.weight = BigInt(wtok);
      e.prov = parse_provenance(ptok);
      if (ls >> utok) {
        if (utok != "U") throw std::invalid_argument("unexpected edge suffix: " + utok);
        if (out.directed) throw std::invalid_argument("undirected edge in a directed graph");
      } else if (!out.directed) {
        throw std::invalid_argument("directed edge line in an undirected graph");
      }
      out.edges.push_back(std::move(e));
    } else {
      throw std::invalid_argument("unknown line tag: " + tag);
    }
  }
  if (!saw_header || !saw_v) throw std::invalid_argument("graph text is missing header or V line");
  return out;
}

}  // namespace

std::string to_text(const LayeredGraph& g) {
  std::ostringstream os;
  write_header(os, "GRAPH", g.kind, g.n, g.k, g.directed, g.simple, g.vertex_count);
  write_edges(os, g.edges, g.directed);
  return os.str();
}

std::string to_text(const EdgeStream& s) {
  std::ostringstream os;
  write_header(os, "STREAM", s.kind, s.n, s.k, s.directed, s.simple, s.vertex_count);
  write_edges(os, s.edges, s.directed);
  return os.str();
}

LayeredGraph parse_graph(const std::string& text) {
  ParsedText p = parse_graph_text(text);
  EdgeStream s;
  s.kind = p.kind;
  s.n = p.n;
  s.k = p.k;
  s.vertex_count = p.vertex_count;
  s.directed = p.directed;
  s.simple = p.simple;
  s.edges = std::move(p.edges);
  return graph_from_stream(s);
}

EdgeStream parse_stream(const std::string& text) {
  ParsedText p = parse_graph_text(text);
  if (p.what != "STREAM") throw std::invalid_argument("expected a STREAM header");
  EdgeStream s;
  s.kind = p.kind;
  s.n = p.n;
  s.k = p.k;
  s.vertex_count = p.vertex_count;
  s.directed = p.directed;
  s.simple = p.simple;
  s.edges = std::move(p.edges);
  return s;
}

}  // namespace hpclab
