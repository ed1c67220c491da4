// hpclab: generate hidden-pointer-chasing instances, run the phase protocols,
// compile the min-cut / LFMIS / submodular reductions, and verify everything
// with exact arithmetic.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hpclab/graph.hpp"
#include "hpclab/info_theory.hpp"
#include "hpclab/instances.hpp"
#include "hpclab/maxflow.hpp"
#include "hpclab/protocols.hpp"
#include "hpclab/sfm.hpp"
#include "hpclab/verifiers.hpp"

using namespace hpclab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  return std::strtoull(v, nullptr, 10);
}

HpcInstance load_or_sample(const std::string& input, int n, std::uint64_t seed) {
  if (!input.empty()) return parse_hpc(read_input(input));
  return sample_hpc(n, seed);
}

ProtocolTree builtin_protocol(const std::string& name, int n) {
  if (name == "silent") return silent_protocol(1 << n, 1 << n);
  if (name == "announce-a") return announce_alice_protocol(n, 1 << n);
  if (name == "reveal-a1") return reveal_alice_bit_protocol(n, 1 << n, 0);
  throw std::runtime_error("unknown builtin protocol: " + name +
                           " (expected silent | announce-a | reveal-a1)");
}

std::vector<int> parse_query(const std::string& text) {
  std::vector<int> subset;
  if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
    std::uint64_t mask = std::strtoull(text.c_str(), nullptr, 16);
    for (int i = 0; i < 64; ++i)
      if ((mask >> i) & 1) subset.push_back(i);
    return subset;
  }
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) subset.push_back(std::stoi(tok));
  return subset;
}

// One full end-to-end verification pass over a sampled instance.
void verify_one(CheckReport& report, int n, int k, std::uint64_t seed) {
  HpcInstance inst = sample_hpc(n, seed);
  std::string tag = "n" + std::to_string(n) + "-k" + std::to_string(k) + "-s" + std::to_string(seed);
  PointerTrace tr = chase(inst, k);

  LayeredGraph g = build_cut_graph(inst, k);
  MaxFlowResult mf = max_flow(g);
  bool decode_ok = decode_cut(mf.value, n) == tr.z[k];
  report.add("cut-decode/" + tag, decode_ok, "cut=" + mf.value.get_str());

  FlowCertificate cert = build_flow_certificate(inst, k, g);
  CertificateCheck chk = check_certificate(g, cert);
  report.add("certificate/" + tag, chk.feasible && chk.optimal && cert.total_value == mf.value,
             chk.detail);

  LayeredGraph simple = simplify_graph(g);
  bool simple_ok = decode_cut(max_flow(simple).value, n) == tr.z[k];
  UndirectedReduction und = to_undirected(g);
  BigInt w = max_flow(und.graph).value;
  bool und_ok = (w - und.offset) % 2 == 0 && decode_cut((w - und.offset) / 2, n) == tr.z[k];
  report.add("transforms/" + tag, simple_ok && und_ok, "");

  LayeredGraph mis = build_mis_graph(inst, k);
  std::vector<int> m = lfmis(mis);
  bool mis_ok = std::find(m.begin(), m.end(), mis.layer_vertex(k, tr.z[k])) != m.end();
  int in_last_layer = 0;
  for (int v : m)
    if (v >= k * n && v < (k + 1) * n) ++in_last_layer;
  report.add("lfmis/" + tag, mis_ok && in_last_layer == 1, "");

  UpperBoundRun ub = run_upper_bound(inst, k);
  report.add("upper-bound/" + tag,
             ub.answer == tr.z[k] && ub.transcript.phase_count == k + 1 &&
                 !phase_violation(ub.transcript).has_value(),
             "bits=" + std::to_string(ub.transcript.total_bits()));

  // SFM agreement stays at the brute-force scale regardless of --n.
  int sn = std::min(n, 2);
  HpcInstance small = sample_hpc(sn, seed);
  SubmodularOracle oracle = build_sfm_oracle(small, 1);
  SfmResult sfm = brute_force_sfm(oracle);
  bool sfm_ok = sfm.min_value == max_flow(oracle.base_graph()).value &&
                decode_cut(sfm.min_value, sn) == chase(small, 3).z[3] &&
                oracle.query_count() == (1ULL << oracle.ground_size());
  report.add("sfm-agreement/n" + std::to_string(sn) + "-k1-s" + std::to_string(seed), sfm_ok,
             "min=" + sfm.min_value.get_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hidden-pointer chasing laboratory"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------------
  int n = 4, k = 2;
  std::uint64_t seed = env_or("HPCLAB_SEED", 1);
  std::string output, input;
  bool set_int_only = false;

  auto* gen = app.add_subcommand("generate", "sample an instance and write its text form");
  gen->add_option("--n", n, "universe size");
  gen->add_option("--seed", seed, "sampler seed");
  gen->add_flag("--set-int", set_int_only, "emit a single Set-Int instance instead of a full one");
  gen->add_option("-o,--output", output, "output file (default stdout)");

  // chase ---------------------------------------------------------------------
  auto* ch = app.add_subcommand("chase", "print the pointer chain");
  ch->add_option("--n", n, "universe size");
  ch->add_option("--k", k, "chain length");
  ch->add_option("--seed", seed, "sampler seed");
  ch->add_option("--input", input, "read the instance from a file instead of sampling");

  // reduce ---------------------------------------------------------------------
  auto* red = app.add_subcommand("reduce", "compile an instance into a reduction target");
  red->require_subcommand(1);
  bool simple = false, undirected = false, stream = false, stats = false;
  std::vector<std::string> queries;
  auto* red_cut = red->add_subcommand("cut", "weighted min s-t cut graph");
  auto* red_mis = red->add_subcommand("mis", "lexicographically-first MIS graph");
  auto* red_sfm = red->add_subcommand("sfm", "submodular cut-function oracle");
  for (CLI::App* sub : {red_cut, red_mis, red_sfm}) {
    sub->add_option("--n", n, "universe size");
    sub->add_option("--k", k, "chain length");
    sub->add_option("--seed", seed, "sampler seed");
    sub->add_option("--input", input, "read the instance from a file");
    sub->add_option("-o,--output", output, "output file (default stdout)");
  }
  red_cut->add_flag("--simple", simple, "apply the parallel-edge removal transform");
  red_cut->add_flag("--undirected", undirected, "apply the directed-to-undirected gadget");
  red_cut->add_flag("--stream", stream, "emit the edge stream in player order");
  red_mis->add_flag("--stream", stream, "emit the edge stream in player order");
  red_sfm->add_option("--query", queries,
                      "evaluate f on a subset: comma list of ground indices or 0x<mask>");
  red_sfm->add_flag("--stats", stats, "print query_count and rounds after the queries");

  // verify ---------------------------------------------------------------------
  std::uint64_t seeds = env_or("HPCLAB_SEEDS", 25);
  auto* ver = app.add_subcommand("verify", "run end-to-end decode and certificate checks");
  ver->add_option("--n", n, "universe size");
  ver->add_option("--k", k, "chain length");
  ver->add_option("--seeds", seeds, "number of sampled instances");
  ver->add_option("--seed", seed, "base seed");

  // measure ---------------------------------------------------------------------
  std::string protocol_file, builtin = "reveal-a1";
  auto* mea = app.add_subcommand("measure", "exact eps-solve / success / information-cost table");
  mea->add_option("--n", n, "Set-Int universe size (enumeration budget applies)");
  mea->add_option("--protocol", protocol_file, "protocol tree file (s-expression form)");
  mea->add_option("--builtin", builtin, "silent | announce-a | reveal-a1");

  // facts ---------------------------------------------------------------------
  std::uint64_t trials = env_or("HPCLAB_TRIALS", 200);
  std::string shapes_text = "2x2x2,3x2x2";
  auto* fac = app.add_subcommand("facts", "verify information-theory facts on random tables");
  fac->add_option("--trials", trials, "random tables per shape");
  fac->add_option("--seed", seed, "rng seed");
  fac->add_option("--shapes", shapes_text, "comma list of shapes like 2x2x2");

  // replay ---------------------------------------------------------------------
  int pass_limit = 1;
  std::string consumer_name = "store";
  auto* rep = app.add_subcommand("replay", "feed an edge stream to a pass-limited consumer");
  rep->add_option("--input", input, "stream file")->required();
  rep->add_option("--consumer", consumer_name, "consumer name (store)");
  rep->add_option("--pass-limit", pass_limit, "maximum number of passes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      write_output(output, set_int_only ? to_text(sample_set_int(n, seed)) : to_text(sample_hpc(n, seed)));
      return kExitPass;
    }

    if (ch->parsed()) {
      HpcInstance inst = load_or_sample(input, n, seed);
      PointerTrace tr = chase(inst, k);
      std::ostringstream os;
      for (int j = 0; j <= k; ++j) os << (j ? "," : "") << tr.z[j];
      os << "\n";
      std::cout << os.str();
      return kExitPass;
    }

    if (red->parsed()) {
      HpcInstance inst = load_or_sample(input, n, seed);
      n = inst.n;
      if (red_cut->parsed()) {
        LayeredGraph g = build_cut_graph(inst, k);
        if (simple) g = simplify_graph(g);
        if (undirected) {
          UndirectedReduction und = to_undirected(g);
          std::ostringstream os;
          os << "OFFSET " << und.offset.get_str() << "\n"
             << (stream ? to_text(emit_stream(und.graph)) : to_text(und.graph));
          write_output(output, os.str());
        } else {
          write_output(output, stream ? to_text(emit_stream(g)) : to_text(g));
        }
      } else if (red_mis->parsed()) {
        LayeredGraph g = build_mis_graph(inst, k);
        write_output(output, stream ? to_text(emit_stream(g)) : to_text(g));
      } else {
        SubmodularOracle oracle = build_sfm_oracle(inst, k);
        std::ostringstream os;
        os << "GROUND " << oracle.ground_size() << "\n";
        os << "M " << oracle.weight_bound().get_str() << "\n";
        for (const std::string& q : queries)
          os << "f(" << q << ") = " << oracle.evaluate(parse_query(q)).get_str() << "\n";
        if (stats)
          os << "stats queries=" << oracle.query_count() << " rounds=" << oracle.rounds_used() << "\n";
        write_output(output, os.str());
      }
      return kExitPass;
    }

    if (ver->parsed()) {
      CheckReport report;
      for (std::uint64_t s = 0; s < seeds; ++s) verify_one(report, n, k, seed + s);
      std::cout << report.to_text();
      return report.all_pass() ? kExitPass : kExitFail;
    }

    if (mea->parsed()) {
      ProtocolTree tree =
          protocol_file.empty() ? builtin_protocol(builtin, n) : parse_protocol_tree(read_input(protocol_file));
      PosteriorReport eps = measure_eps_solve(tree, n);
      std::ostringstream os;
      os << "transcripts " << eps.entries.size() << "\n";
      os << "eps-solve " << eps.epsilon.get_str() << "\n";
      if (n >= 2) {
        Rat succ = pair_int_success_probability(tree, n);
        os << "pair-int-success " << succ.get_str() << "\n";
      }
      JointTable prior;
      prior.dims = {tree.domain_a, tree.domain_b};
      prior.mass.assign(static_cast<std::size_t>(tree.domain_a) * tree.domain_b,
                        Rat(1, static_cast<unsigned long>(tree.domain_a) * tree.domain_b));
      for (auto& m : prior.mass) m.canonicalize();
      ExactReal ic = internal_info_cost(tree, prior);
      os << "information-cost-exact " << ic.describe() << "\n";
      os << "information-cost-bits ~" << ic.to_double() << "\n";
      os << "communication-cost-bits " << tree.depth() << "\n";
      std::cout << os.str();
      return kExitPass;
    }

    if (fac->parsed()) {
      std::vector<std::vector<int>> shapes;
      std::istringstream ss(shapes_text);
      std::string shape_tok;
      while (std::getline(ss, shape_tok, ',')) {
        std::vector<int> dims;
        std::istringstream ds(shape_tok);
        std::string d;
        while (std::getline(ds, d, 'x')) dims.push_back(std::stoi(d));
        if (!dims.empty()) shapes.push_back(dims);
      }
      CheckReport report = verify_facts(static_cast<int>(trials), shapes, seed);
      std::cout << report.to_text();
      return report.all_pass() ? kExitPass : kExitFail;
    }

    if (rep->parsed()) {
      EdgeStream s = parse_stream(read_input(input));
      if (consumer_name != "store") throw std::runtime_error("unknown consumer: " + consumer_name);
      StoreEverythingConsumer consumer(s);
      StreamConsumerReport r = replay_stream(s, consumer, pass_limit);
      std::cout << "passes " << r.passes_used << "\n"
                << "max-state-bits " << r.max_state_bits << "\n"
                << "output " << r.output << "\n";
      return kExitPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
