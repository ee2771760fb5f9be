#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace codesign::topology {

enum class TopologyKind { FT2, MPFT, FT3, REFERENCE };

// Abstract switch/link/endpoint counts for a fat-tree family instance.
// "inter_switch_links" counts switch-to-switch links only; endpoint (NIC)
// links are tracked separately and excluded from the cost model. For MPFT
// the endpoints are NIC-plane attachment points (one GPU-NIC pair per plane),
// so planes * FT2 endpoints, not node counts.
struct Topology {
  TopologyKind kind = TopologyKind::FT2;
  std::string name;
  std::uint64_t endpoints = 0;
  std::uint64_t switches = 0;
  std::uint64_t inter_switch_links = 0;
  std::uint64_t endpoint_links = 0;
  int planes = 1;
  int radix = 0;
};

// Two-layer fat-tree from switch radix r: r leaves with r/2 endpoints and r/2
// uplinks each, r/2 spines. Throws ODD_RADIX.
Topology build_ft2(int radix);

// Three-layer fat-tree: r pods of r/2 edge + r/2 aggregation switches,
// (r/2)^2 cores. Throws ODD_RADIX.
Topology build_ft3(int radix);

// planes independent FT2 instances; all counts scale linearly.
Topology build_mpft(int radix, int planes);

// Published reference rows consumed as data (never constructed).
Topology reference_slim_fly();
Topology reference_dragonfly();

struct CostModel {
  double switch_cost = 83009.0;  // dollars per switch
  double link_cost = 503.5;      // dollars per inter-switch link

  void validate() const;
};

struct TopologyCost {
  double total_usd = 0.0;
  double per_endpoint_usd = 0.0;
};

// total = switch_cost * switches + link_cost * inter_switch_links.
// Throws ZERO_ENDPOINTS.
TopologyCost topology_cost(const Topology& t, const CostModel& m);

// Solve the 2x2 linear system so that the model reproduces two known
// (switches, links, total cost) rows exactly. Used to re-derive the default
// calibration from the FT2 and FT3 anchors.
CostModel solve_cost_model(const Topology& a, double total_a,
                           const Topology& b, double total_b);

enum class LinkLayer { IB, ROCE, NVLINK };
enum class PathRelation { SAME_LEAF, CROSS_LEAF, CROSS_PLANE };

// Measured end-to-end hop latency constants per link layer (seconds).
struct HopLatency {
  double same_leaf_s = 0.0;
  std::optional<double> cross_leaf_s;
};

struct HopLatencyTable {
  HopLatency ib{2.8e-6, 3.7e-6};
  HopLatency roce{3.6e-6, 5.6e-6};
  HopLatency nvlink{3.33e-6, std::nullopt};

  const HopLatency& entry(LinkLayer layer) const;
};

// SAME_LEAF / CROSS_LEAF return the table constants. CROSS_PLANE applies only
// to multi-plane topologies: intra-node NVLink forwarding plus the target
// plane's cross-leaf path. Throws RELATION_NOT_APPLICABLE.
double path_latency_s(const Topology& t, PathRelation relation,
                      const HopLatencyTable& table, LinkLayer layer);

// Worst-case inter-switch hop count: 2 for two-layer trees, 4 for FT3.
int worst_case_switch_hops(const Topology& t);

// Hop-scaled extrapolation of the measured constants: same_leaf plus
// (hops/2) times the cross-leaf increment. Reproduces the cross-leaf constant
// for two-layer trees and preserves the FT2 < FT3 latency ordering.
double estimated_worst_case_latency_s(const Topology& t,
                                      const HopLatencyTable& table,
                                      LinkLayer layer);

}  // namespace codesign::topology
