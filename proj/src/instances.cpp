#include "hpclab/instances.hpp"

#include <algorithm>
#include <sstream>

namespace hpclab {

std::optional<std::string> SetIntInstance::violation() const {
  if (n < 1) return "universe size must be positive";
  if (a.size() != static_cast<std::size_t>(n) || b.size() != static_cast<std::size_t>(n))
    return "characteristic vectors must have length n";
  int hits = 0, where = 0;
  for (int i = 1; i <= n; ++i) {
    if (a[i - 1] > 1 || b[i - 1] > 1) return "non-bit entry";
    if (a[i - 1] && b[i - 1]) {
      ++hits;
      where = i;
    }
  }
  if (hits != 1) return "expected exactly one intersecting index, found " + std::to_string(hits);
  if (where != target) return "cached target does not match the intersection";
  return std::nullopt;
}

std::optional<std::string> PairIntInstance::violation() const {
  int hits = (x1 && y1 ? 1 : 0) + (x2 && y2 ? 1 : 0);
  if (hits != 1) return "expected exactly one intersecting index";
  int real = (x1 && y1) ? 1 : 2;
  if (real != k) return "cached answer index does not match";
  return std::nullopt;
}

std::optional<std::string> HpcInstance::violation() const {
  if (n < 1) return "universe size must be positive";
  if (ab.size() != static_cast<std::size_t>(n) || cd.size() != static_cast<std::size_t>(n))
    return "need n inner instances per side";
  for (int i = 0; i < n; ++i) {
    if (ab[i].n != n) return "ab[" + std::to_string(i) + "] has wrong universe size";
    if (cd[i].n != n) return "cd[" + std::to_string(i) + "] has wrong universe size";
    if (auto v = ab[i].violation()) return "ab[" + std::to_string(i) + "]: " + *v;
    if (auto v = cd[i].violation()) return "cd[" + std::to_string(i) + "]: " + *v;
  }
  return std::nullopt;
}

SetIntInstance sample_set_int(int n, std::uint64_t seed) {
  SeededChooser ch{Rng(seed)};
  return sample_set_int_with(n, ch);
}

HpcInstance sample_hpc(int n, std::uint64_t seed) {
  SeededChooser ch{Rng(seed)};
  return sample_hpc_with(n, ch);
}

PointerTrace chase(const HpcInstance& inst, int k) {
  if (k < 0) throw std::invalid_argument("chase: k must be >= 0");
  PointerTrace trace;
  trace.k = k;
  trace.z.reserve(k + 1);
  trace.z.push_back(1);
  for (int j = 0; j < k; ++j) {
    int cur = trace.z.back();
    trace.z.push_back(j % 2 == 0 ? inst.f_ab(cur) : inst.f_cd(cur));
  }
  return trace;
}

PairEmbedding embed_pair_int(const PairIntInstance& p, int n, std::uint64_t seed) {
  Rng root(seed);
  SeededChooser pub{root.split("public")};
  SeededChooser priv_a{root.split("alice")};
  SeededChooser priv_b{root.split("bob")};
  return embed_pair_int_with(p, n, pub, priv_a, priv_b);
}

std::vector<PairIntInstance> pair_int_support() {
  std::vector<PairIntInstance> out;
  const std::uint8_t mu[3][2] = {{0, 0}, {0, 1}, {1, 0}};
  for (int k = 1; k <= 2; ++k)
    for (const auto& other : mu) {
      PairIntInstance p;
      if (k == 1) {
        p.x1 = p.y1 = 1;
        p.x2 = other[0];
        p.y2 = other[1];
      } else {
        p.x2 = p.y2 = 1;
        p.x1 = other[0];
        p.y1 = other[1];
      }
      p.k = k;
      out.push_back(p);
    }
  return out;
}

std::vector<int> HpcEmbedding::public_a_slots() const {
  std::vector<int> v;
  for (int m = 1; m < slot; ++m) v.push_back(m);
  return v;
}
std::vector<int> HpcEmbedding::public_b_slots() const {
  std::vector<int> v;
  for (int m = slot + 1; m <= instance.n; ++m) v.push_back(m);
  return v;
}
std::vector<int> HpcEmbedding::private_a_slots() const { return public_b_slots(); }
std::vector<int> HpcEmbedding::private_b_slots() const { return public_a_slots(); }

namespace {

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> string_to_bits(const std::string& s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad bit character in instance text");
    bits.push_back(c == '1');
  }
  return bits;
}

int recompute_target(const SetIntInstance& inst) {
  int t = 0;
  for (int i = 1; i <= inst.n; ++i)
    if (inst.a[i - 1] && inst.b[i - 1]) {
      if (t) throw std::invalid_argument("instance text violates the unique-intersection promise");
      t = i;
    }
  if (!t) throw std::invalid_argument("instance text has no intersecting index");
  return t;
}

// Splits "key=value" tokens; returns value for the wanted key.
std::string field(const std::string& tok, const std::string& key) {
  if (tok.rfind(key + "=", 0) != 0) throw std::invalid_argument("expected field '" + key + "=' in: " + tok);
  return tok.substr(key.size() + 1);
}

}  // namespace

std::string to_text(const SetIntInstance& inst) {
  std::ostringstream os;
  os << "SI n=" << inst.n << " a=" << bits_to_string(inst.a) << " b=" << bits_to_string(inst.b) << "\n";
  return os.str();
}

std::string to_text(const HpcInstance& inst) {
  std::ostringstream os;
  os << "HPC n=" << inst.n << "\n";
  for (int i = 1; i <= inst.n; ++i)
    os << "AB " << i << " a=" << bits_to_string(inst.ab[i - 1].a) << " b=" << bits_to_string(inst.ab[i - 1].b)
       << "\n";
  for (int i = 1; i <= inst.n; ++i)
    os << "CD " << i << " c=" << bits_to_string(inst.cd[i - 1].a) << " d=" << bits_to_string(inst.cd[i - 1].b)
       << "\n";
  return os.str();
}

SetIntInstance parse_set_int(const std::string& text) {
  std::istringstream is(text);
  std::string tag, ntok, atok, btok;
  if (!(is >> tag >> ntok >> atok >> btok) || tag != "SI")
    throw std::invalid_argument("malformed SI line");
  SetIntInstance inst;
  inst.n = std::stoi(field(ntok, "n"));
  inst.a = string_to_bits(field(atok, "a"));
  inst.b = string_to_bits(field(btok, "b"));
  if (static_cast<int>(inst.a.size()) != inst.n || static_cast<int>(inst.b.size()) != inst.n)
    throw std::invalid_argument("SI bit length disagrees with n");
  inst.target = recompute_target(inst);
  return inst;
}

HpcInstance parse_hpc(const std::string& text) {
  std::istringstream is(text);
  std::string tag, ntok;
  if (!(is >> tag >> ntok) || tag != "HPC") throw std::invalid_argument("malformed HPC header");
  HpcInstance inst;
  inst.n = std::stoi(field(ntok, "n"));
  if (inst.n < 1) throw std::invalid_argument("HPC n must be positive");
  inst.ab.resize(inst.n);
  inst.cd.resize(inst.n);
  auto read_side = [&](const char* want, std::vector<SetIntInstance>& side, const char* k1, const char* k2) {
    for (int i = 1; i <= inst.n; ++i) {
      std::string side_tok, idx_tok, t1, t2;
      if (!(is >> side_tok >> idx_tok >> t1 >> t2) || side_tok != want || std::stoi(idx_tok) != i)
        throw std::invalid_argument(std::string("malformed ") + want + " line " + std::to_string(i));
      SetIntInstance& e = side[i - 1];
      e.n = inst.n;
      e.a = string_to_bits(field(t1, k1));
      e.b = string_to_bits(field(t2, k2));
      if (static_cast<int>(e.a.size()) != inst.n || static_cast<int>(e.b.size()) != inst.n)
        throw std::invalid_argument("bit length disagrees with n");
      e.target = recompute_target(e);
    }
  };
  read_side("AB", inst.ab, "a", "b");
  read_side("CD", inst.cd, "c", "d");
  return inst;
}

}  // namespace hpclab
