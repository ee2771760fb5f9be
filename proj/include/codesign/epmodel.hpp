#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "codesign/error_stats.hpp"

namespace codesign::epmodel {

// Expert-parallel all-to-all parameters. Defaults reproduce the published
// decode scenario: 32 tokens/device, ~7K hidden, FP8 dispatch + BF16 combine,
// 8 routed + 1 shared expert, 61 layers.
struct EpScenario {
  long tokens_per_device = 32;
  long hidden_dim = 7000;
  double dispatch_bytes = 1.0;  // per element
  double combine_bytes = 2.0;
  long fanout = 9;  // routed top-k + shared experts
  long layers = 61;

  void validate() const;
};

struct BandwidthModel {
  double nvlink_effective = 160e9;  // bytes/s
  double nic_effective = 40e9;
  double nic_peak = 50e9;

  void validate() const;
};

// Grouped top-k routing constraints.
enum class GroupScore {
  SUM_TOP2,  // sum of the two largest expert scores in the group
  SUM_TOPK,  // sum of the top_k largest in the group
  MAX,
};

struct RoutingPolicy {
  int n_experts = 256;
  int n_groups = 8;
  int experts_per_group = 32;
  int top_k = 8;
  int max_groups = 4;
  GroupScore group_score = GroupScore::SUM_TOP2;

  void validate() const;
};

// Two all-to-all passes (dispatch + combine) for one MoE layer step:
// (dispatch_bytes + combine_bytes) * tokens * fanout * hidden / bandwidth.
// GB means 1e9 bytes throughout.
double alltoall_time_s(const EpScenario& s, double bandwidth_bytes_per_s);

struct TpotBound {
  double per_layer_s = 0.0;  // 2 * alltoall (dual micro-batch overlap)
  double tpot_s = 0.0;       // layers * per_layer
  double tokens_per_s = 0.0;
  long tokens_per_s_floor = 0;
};

// Communication-bound TPOT under dual micro-batch overlap; per-message
// network latency deliberately excluded.
TpotBound tpot_bound(const EpScenario& s, double bandwidth_bytes_per_s);

struct RouteResult {
  std::vector<int> experts;  // selected expert ids, score-descending
  int node_count = 0;        // M: distinct groups among the selection
};

// Rank groups by group_score, keep the best max_groups, then select the
// global top_k restricted to the kept groups. Ties break toward the lower
// index. Throws SCORE_LENGTH_MISMATCH.
RouteResult node_limited_route(std::span<const double> scores,
                               const RoutingPolicy& policy);

struct DedupIbTime {
  double dedup_s = 0.0;   // M * t
  double naive_s = 0.0;   // fanout * t
  double reduction = 0.0; // fanout / M
};

// NVLink forwarding collapses per-token IB traffic from fanout*t to M*t.
DedupIbTime dedup_ib_time(int node_count, double t_per_copy_s, int fanout = 8);

// Multi-token prediction speedup: one draft token verified per step,
// draft-module overhead ignored, so TPS multiplies by 1 + accept_rate.
double mtp_speedup(double accept_rate);

struct RoutingSimResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> hist_unrestricted;  // index = M, size n_groups+1
  std::vector<std::uint64_t> hist_limited;
  double mean_m_unrestricted = 0.0;
  double mean_m_limited = 0.0;
  double mean_dedup_ratio_unrestricted = 0.0;  // mean of top_k / M
  double mean_dedup_ratio_limited = 0.0;
};

// Seeded Monte-Carlo over iid expert scores; per-trial RNG streams keep the
// result independent of thread count.
RoutingSimResult routing_sim(const RoutingPolicy& policy, std::uint64_t trials,
                             std::uint64_t seed,
                             const lowprec::Distribution& score_distribution,
                             bool parallel = true);

// Exact E[M] for unrestricted top-k over iid continuous scores:
// n_groups * (1 - C(n - per_group, k)/C(n, k)).
double unrestricted_mean_nodes_oracle(const RoutingPolicy& policy);

}  // namespace codesign::epmodel
