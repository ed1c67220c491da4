#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hpclab/graph.hpp"
#include "hpclab/maxflow.hpp"
#include "hpclab/numeric.hpp"
#include "hpclab/sfm.hpp"

namespace hpclab {

// Pointer index from a cut value: i* = (w mod (n+1)) + 1. On valid reduction
// outputs i* <= n; residue n means the value cannot come from the
// construction and is rejected.
int decode_cut(const BigInt& cut_value, int n);

// One s-t path with its flow value.
struct FlowPath {
  std::vector<int> vertices;
  BigInt flow;
};

// The explicit optimal flow: for every layer j a family of paths
// (s, u_0, ..., u_{j-1}, v, t) carrying w_j each, one per out-neighbor v of
// the pointer vertex u_{j-1}, plus the all-pointers path carrying i*-1.
struct FlowCertificate {
  std::vector<std::vector<FlowPath>> families;  // families[j-1] is P_j
  FlowPath pointer_path;                        // P*
  BigInt total_value;
};

FlowCertificate build_flow_certificate(const HpcInstance& inst, int k, const LayeredGraph& g);

struct CertificateCheck {
  bool feasible = false;
  bool optimal = false;
  std::string detail;
};

// Feasibility = per-edge flow within merged capacity plus path-shape checks;
// optimality = no s-t path in the residual graph (BFS reachability).
CertificateCheck check_certificate(const LayeredGraph& g, const FlowCertificate& cert);

// Greedy maximal independent set in vertex-id order (the lexicographic order
// of the MIS reduction). Works on any undirected graph.
std::vector<int> lfmis(const LayeredGraph& g);

struct SfmResult {
  BigInt min_value;
  std::vector<int> argmin;  // ground-set indices
};

// Exhaustive minimization through the oracle; budget |U| <= 24.
SfmResult brute_force_sfm(SubmodularOracle& oracle);

// --- streaming harness -----------------------------------------------------

class StreamConsumer {
 public:
  virtual ~StreamConsumer() = default;
  virtual void begin_pass(int pass) = 0;
  virtual void consume_edge(const GraphEdge& e) = 0;
  // Returns the consumer's state size in bits at the end of the pass.
  virtual std::uint64_t end_pass() = 0;
  virtual bool wants_another_pass() const = 0;
  virtual std::string finish() = 0;
};

struct StreamConsumerReport {
  int passes_used = 0;
  std::uint64_t max_state_bits = 0;
  std::vector<std::uint64_t> state_bits_per_pass;
  std::string output;
};

StreamConsumerReport replay_stream(const EdgeStream& stream, StreamConsumer& consumer, int pass_limit);

// Stores the whole stream in one pass and answers the exact min cut.
class StoreEverythingConsumer : public StreamConsumer {
 public:
  explicit StoreEverythingConsumer(const EdgeStream& shape);
  void begin_pass(int pass) override;
  void consume_edge(const GraphEdge& e) override;
  std::uint64_t end_pass() override;
  bool wants_another_pass() const override;
  std::string finish() override;

 private:
  EdgeStream shape_;
  std::vector<GraphEdge> stored_;
  bool done_ = false;
};

// --- CHECK reporting ---------------------------------------------------------

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

class CheckReport {
 public:
  void add(const std::string& name, bool pass, const std::string& detail = "");
  bool all_pass() const;
  const std::vector<CheckLine>& lines() const { return lines_; }
  std::string to_text() const;  // "CHECK <name> PASS|FAIL <details>" lines

 private:
  std::vector<CheckLine> lines_;
};

}  // namespace hpclab
