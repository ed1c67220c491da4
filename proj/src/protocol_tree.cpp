#include "hpclab/protocol_tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace hpclab {

int ProtocolTree::internal_node_count() const {
  int c = 0;
  for (const auto& nd : nodes)
    if (!nd.leaf) ++c;
  return c;
}

int ProtocolTree::leaf_count() const {
  int c = 0;
  for (const auto& nd : nodes)
    if (nd.leaf) ++c;
  return c;
}

int ProtocolTree::depth() const {
  std::function<int(int)> rec = [&](int id) -> int {
    const Node& nd = nodes.at(id);
    if (nd.leaf) return 0;
    return 1 + std::max(rec(nd.child[0]), rec(nd.child[1]));
  };
  return root < 0 ? 0 : rec(root);
}

void ProtocolTree::check_valid() const {
  if (domain_a < 1 || domain_b < 1) throw std::invalid_argument("protocol tree: empty input domain");
  if (root < 0 || root >= static_cast<int>(nodes.size()))
    throw std::invalid_argument("protocol tree: bad root");
  for (const auto& nd : nodes) {
    if (nd.leaf) continue;
    if (nd.owner != 0 && nd.owner != 1) throw std::invalid_argument("protocol tree: bad owner");
    int dom = nd.owner == 0 ? domain_a : domain_b;
    if (static_cast<int>(nd.p_one.size()) != dom)
      throw std::invalid_argument("protocol tree: probability table size must match the owner domain");
    for (const Rat& p : nd.p_one)
      if (p < 0 || p > 1) throw std::invalid_argument("protocol tree: probability outside [0,1]");
    for (int b = 0; b < 2; ++b)
      if (nd.child[b] < 0 || nd.child[b] >= static_cast<int>(nodes.size()))
        throw std::invalid_argument("protocol tree: dangling child");
  }
}

std::vector<LeafInfo> enumerate_leaves(const ProtocolTree& tree) {
  std::vector<LeafInfo> out;
  std::function<void(int, std::string&)> rec = [&](int id, std::string& bits) {
    const auto& nd = tree.nodes.at(id);
    if (nd.leaf) {
      out.push_back({id, bits});
      return;
    }
    for (int b = 0; b < 2; ++b) {
      bits.push_back(static_cast<char>('0' + b));
      rec(nd.child[b], bits);
      bits.pop_back();
    }
  };
  std::string bits;
  if (tree.root >= 0) rec(tree.root, bits);
  return out;
}

std::vector<Rat> leaf_distribution(const ProtocolTree& tree, int xa, int xb) {
  if (xa < 0 || xa >= tree.domain_a || xb < 0 || xb >= tree.domain_b)
    throw std::invalid_argument("leaf_distribution: input outside the tree domain");
  std::vector<Rat> out;
  std::function<void(int, const Rat&)> rec = [&](int id, const Rat& reach) {
    const auto& nd = tree.nodes.at(id);
    if (nd.leaf) {
      out.push_back(reach);
      return;
    }
    const Rat& p1 = nd.p_one[nd.owner == 0 ? xa : xb];
    rec(nd.child[0], reach * (Rat(1) - p1));
    rec(nd.child[1], reach * p1);
  };
  if (tree.root >= 0) rec(tree.root, Rat(1));
  return out;
}

int run_protocol(const ProtocolTree& tree, int xa, int xb, Rng& coins) {
  if (xa < 0 || xa >= tree.domain_a || xb < 0 || xb >= tree.domain_b)
    throw std::invalid_argument("run_protocol: input outside the tree domain");
  int id = tree.root;
  for (;;) {
    const auto& nd = tree.nodes.at(id);
    if (nd.leaf) return id;
    const Rat& p1 = nd.p_one[nd.owner == 0 ? xa : xb];
    // Draw u uniform in [0, den) and emit 1 iff u < num.
    BigInt den = p1.get_den(), num = p1.get_num();
    BigInt u;
    if (den == 1) {
      u = 0;
    } else if (den.fits_ulong_p()) {
      u = BigInt(static_cast<unsigned long>(coins.uniform(den.get_ui())));
    } else {
      throw std::invalid_argument("run_protocol: coin denominator too large for the seeded path");
    }
    int bit = (num > 0 && u < num) ? 1 : 0;
    id = nd.child[bit];
  }
}

int add_leaf(ProtocolTree& tree, int output) {
  ProtocolTree::Node nd;
  nd.leaf = true;
  nd.output = output;
  tree.nodes.push_back(nd);
  return static_cast<int>(tree.nodes.size()) - 1;
}

int add_node(ProtocolTree& tree, int owner, std::vector<Rat> p_one, int child0, int child1) {
  ProtocolTree::Node nd;
  nd.leaf = false;
  nd.owner = owner;
  nd.p_one = std::move(p_one);
  nd.child[0] = child0;
  nd.child[1] = child1;
  tree.nodes.push_back(nd);
  return static_cast<int>(tree.nodes.size()) - 1;
}

ProtocolTree silent_protocol(int domain_a, int domain_b) {
  ProtocolTree t;
  t.domain_a = domain_a;
  t.domain_b = domain_b;
  t.root = add_leaf(t);
  return t;
}

ProtocolTree announce_alice_protocol(int input_bits, int domain_b) {
  ProtocolTree t;
  t.domain_a = 1 << input_bits;
  t.domain_b = domain_b;
  // Level d announces bit d of Alice's input, lowest bit first.
  std::function<int(int)> build = [&](int d) -> int {
    if (d == input_bits) return add_leaf(t);
    int c0 = build(d + 1);
    int c1 = build(d + 1);
    std::vector<Rat> p(t.domain_a);
    for (int x = 0; x < t.domain_a; ++x) p[x] = Rat((x >> d) & 1);
    return add_node(t, 0, std::move(p), c0, c1);
  };
  t.root = build(0);
  return t;
}

ProtocolTree reveal_alice_bit_protocol(int input_bits, int domain_b, int bit) {
  if (bit < 0 || bit >= input_bits) throw std::invalid_argument("reveal_alice_bit: bit out of range");
  ProtocolTree t;
  t.domain_a = 1 << input_bits;
  t.domain_b = domain_b;
  int c0 = add_leaf(t);
  int c1 = add_leaf(t);
  std::vector<Rat> p(t.domain_a);
  for (int x = 0; x < t.domain_a; ++x) p[x] = Rat((x >> bit) & 1);
  t.root = add_node(t, 0, std::move(p), c0, c1);
  return t;
}

ProtocolTree random_protocol(int domain_a, int domain_b, int max_depth, Rng& rng) {
  ProtocolTree t;
  t.domain_a = domain_a;
  t.domain_b = domain_b;
  std::function<int(int)> build = [&](int d) -> int {
    bool make_leaf = d >= max_depth || (d > 0 && rng.uniform(3) == 0);
    if (make_leaf) return add_leaf(t);
    int owner = static_cast<int>(rng.uniform(2));
    int dom = owner == 0 ? domain_a : domain_b;
    std::vector<Rat> p(dom);
    for (int x = 0; x < dom; ++x) {
      unsigned long den = 1 + rng.uniform(6);
      unsigned long num = rng.uniform(den + 1);
      p[x] = Rat(num, den);
      p[x].canonicalize();
    }
    int c0 = build(d + 1);
    int c1 = build(d + 1);
    return add_node(t, owner, std::move(p), c0, c1);
  };
  t.root = build(0);
  return t;
}

namespace {

void print_node(const ProtocolTree& t, int id, std::ostringstream& os) {
  const auto& nd = t.nodes.at(id);
  if (nd.leaf) {
    if (nd.output >= 0)
      os << "(leaf out=" << nd.output << ")";
    else
      os << "(leaf)";
    return;
  }
  os << "(node " << (nd.owner == 0 ? 'A' : 'B') << " (";
  for (std::size_t i = 0; i < nd.p_one.size(); ++i) {
    if (i) os << ' ';
    os << nd.p_one[i].get_str();
  }
  os << ") ";
  print_node(t, nd.child[0], os);
  os << ' ';
  print_node(t, nd.child[1], os);
  os << ')';
}

struct Lexer {
  std::string s;
  std::size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip();
    if (pos >= s.size()) throw std::invalid_argument("protocol text ended early");
    return s[pos];
  }
  void expect(char c) {
    if (peek() != c) throw std::invalid_argument(std::string("expected '") + c + "' in protocol text");
    ++pos;
  }
  std::string token() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
           s[pos] != ')')
      ++pos;
    if (start == pos) throw std::invalid_argument("expected token in protocol text");
    return s.substr(start, pos - start);
  }
};

int parse_node(ProtocolTree& t, Lexer& lex) {
  lex.expect('(');
  std::string kind = lex.token();
  if (kind == "leaf") {
    int out = -1;
    if (lex.peek() != ')') {
      std::string tok = lex.token();
      if (tok.rfind("out=", 0) != 0) throw std::invalid_argument("bad leaf attribute: " + tok);
      out = std::stoi(tok.substr(4));
    }
    lex.expect(')');
    return add_leaf(t, out);
  }
  if (kind != "node") throw std::invalid_argument("expected node or leaf, got " + kind);
  std::string owner_tok = lex.token();
  if (owner_tok != "A" && owner_tok != "B") throw std::invalid_argument("node owner must be A or B");
  int owner = owner_tok == "B";
  lex.expect('(');
  std::vector<Rat> p;
  while (lex.peek() != ')') {
    Rat r(lex.token());
    r.canonicalize();
    p.push_back(r);
  }
  lex.expect(')');
  int c0 = parse_node(t, lex);
  int c1 = parse_node(t, lex);
  lex.expect(')');
  return add_node(t, owner, std::move(p), c0, c1);
}

}  // namespace

std::string to_text(const ProtocolTree& tree) {
  std::ostringstream os;
  os << "(tree domain_a=" << tree.domain_a << " domain_b=" << tree.domain_b << " ";
  print_node(tree, tree.root, os);
  os << ")";
  return os.str();
}

ProtocolTree parse_protocol_tree(const std::string& text) {
  Lexer lex{text};
  ProtocolTree t;
  lex.expect('(');
  if (lex.token() != "tree") throw std::invalid_argument("protocol text must start with (tree ...)");
  std::string da = lex.token(), db = lex.token();
  if (da.rfind("domain_a=", 0) != 0 || db.rfind("domain_b=", 0) != 0)
    throw std::invalid_argument("missing domain attributes");
  t.domain_a = std::stoi(da.substr(9));
  t.domain_b = std::stoi(db.substr(9));
  t.root = parse_node(t, lex);
  lex.expect(')');
  t.check_valid();
  return t;
}

}  // namespace hpclab
