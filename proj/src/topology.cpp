#include "codesign/topology.hpp"

#include <cmath>

#include "codesign/error.hpp"

namespace codesign::topology {

namespace {

void check_radix(int radix) {
  if (radix < 2 || radix % 2 != 0) {
    throw Error(ErrorCode::ODD_RADIX, "radix must be even and >= 2, got " +
                                          std::to_string(radix));
  }
}

}  // namespace

Topology build_ft2(int radix) {
  check_radix(radix);
  const auto r = static_cast<std::uint64_t>(radix);
  Topology t;
  t.kind = TopologyKind::FT2;
  t.name = "ft2-" + std::to_string(radix);
  t.radix = radix;
  t.endpoints = r * r / 2;           // r leaves * r/2 down-ports
  t.switches = 3 * r / 2;            // r leaves + r/2 spines
  t.inter_switch_links = r * r / 2;  // r leaves * r/2 uplinks
  t.endpoint_links = t.endpoints;
  return t;
}

Topology build_ft3(int radix) {
  check_radix(radix);
  const auto r = static_cast<std::uint64_t>(radix);
  Topology t;
  t.kind = TopologyKind::FT3;
  t.name = "ft3-" + std::to_string(radix);
  t.radix = radix;
  t.endpoints = r * r * r / 4;            // r pods * r/2 edges * r/2 hosts
  t.switches = 5 * r * r / 4;             // r*r pod switches + (r/2)^2 cores
  t.inter_switch_links = r * r * r / 2;   // edge-agg r^3/4 + agg-core r^3/4
  t.endpoint_links = t.endpoints;
  return t;
}

Topology build_mpft(int radix, int planes) {
  if (planes < 1) {
    throw Error(ErrorCode::CONFIG_INVALID, "field 'planes' is invalid");
  }
  Topology t = build_ft2(radix);
  const auto p = static_cast<std::uint64_t>(planes);
  t.kind = TopologyKind::MPFT;
  t.name = "mpft-" + std::to_string(radix) + "x" + std::to_string(planes);
  t.planes = planes;
  t.endpoints *= p;
  t.switches *= p;
  t.inter_switch_links *= p;
  t.endpoint_links *= p;
  return t;
}

Topology reference_slim_fly() {
  Topology t;
  t.kind = TopologyKind::REFERENCE;
  t.name = "slim-fly";
  t.endpoints = 32928;
  t.switches = 1568;
  t.inter_switch_links = 32928;
  t.endpoint_links = 32928;
  return t;
}

Topology reference_dragonfly() {
  Topology t;
  t.kind = TopologyKind::REFERENCE;
  t.name = "dragonfly";
  t.endpoints = 261632;
  t.switches = 16352;
  t.inter_switch_links = 384272;
  t.endpoint_links = 261632;
  return t;
}

void CostModel::validate() const {
  if (switch_cost < 0 || link_cost < 0) {
    throw Error(ErrorCode::CONFIG_INVALID, "field 'switch_cost/link_cost' is invalid");
  }
}

TopologyCost topology_cost(const Topology& t, const CostModel& m) {
  m.validate();
  if (t.endpoints == 0) {
    throw Error(ErrorCode::ZERO_ENDPOINTS, "topology has no endpoints");
  }
  TopologyCost c;
  c.total_usd = m.switch_cost * static_cast<double>(t.switches) +
                m.link_cost * static_cast<double>(t.inter_switch_links);
  c.per_endpoint_usd = c.total_usd / static_cast<double>(t.endpoints);
  return c;
}

CostModel solve_cost_model(const Topology& a, double total_a,
                           const Topology& b, double total_b) {
  const double sa = static_cast<double>(a.switches);
  const double la = static_cast<double>(a.inter_switch_links);
  const double sb = static_cast<double>(b.switches);
  const double lb = static_cast<double>(b.inter_switch_links);
  const double det = sa * lb - la * sb;
  if (det == 0.0) {
    throw Error(ErrorCode::INVALID_ARGUMENT, "degenerate calibration rows");
  }
  CostModel m;
  m.switch_cost = (total_a * lb - la * total_b) / det;
  m.link_cost = (sa * total_b - total_a * sb) / det;
  return m;
}

const HopLatency& HopLatencyTable::entry(LinkLayer layer) const {
  switch (layer) {
    case LinkLayer::IB: return ib;
    case LinkLayer::ROCE: return roce;
    case LinkLayer::NVLINK: return nvlink;
  }
  return ib;
}

double path_latency_s(const Topology& t, PathRelation relation,
                      const HopLatencyTable& table, LinkLayer layer) {
  const HopLatency& e = table.entry(layer);
  switch (relation) {
    case PathRelation::SAME_LEAF:
      return e.same_leaf_s;
    case PathRelation::CROSS_LEAF:
      if (!e.cross_leaf_s) {
        throw Error(ErrorCode::RELATION_NOT_APPLICABLE,
                    "link layer has no cross-leaf path");
      }
      return *e.cross_leaf_s;
    case PathRelation::CROSS_PLANE:
      if (t.planes < 2) {
        throw Error(ErrorCode::RELATION_NOT_APPLICABLE,
                    "cross-plane path requires a multi-plane topology");
      }
      if (!e.cross_leaf_s) {
        throw Error(ErrorCode::RELATION_NOT_APPLICABLE,
                    "link layer has no cross-leaf path");
      }
      // forward intra-node over NVLink, then traverse the target plane
      return table.nvlink.same_leaf_s + *e.cross_leaf_s;
  }
  throw Error(ErrorCode::RELATION_NOT_APPLICABLE, "unknown relation");
}

int worst_case_switch_hops(const Topology& t) {
  switch (t.kind) {
    case TopologyKind::FT2:
    case TopologyKind::MPFT:
      return 2;  // leaf -> spine -> leaf
    case TopologyKind::FT3:
      return 4;  // edge -> agg -> core -> agg -> edge
    case TopologyKind::REFERENCE:
      throw Error(ErrorCode::RELATION_NOT_APPLICABLE,
                  "hop structure unknown for reference topologies");
  }
  return 0;
}

double estimated_worst_case_latency_s(const Topology& t,
                                      const HopLatencyTable& table,
                                      LinkLayer layer) {
  const HopLatency& e = table.entry(layer);
  if (!e.cross_leaf_s) {
    throw Error(ErrorCode::RELATION_NOT_APPLICABLE,
                "link layer has no cross-leaf path");
  }
  const double extra = *e.cross_leaf_s - e.same_leaf_s;
  return e.same_leaf_s + (worst_case_switch_hops(t) / 2.0) * extra;
}

}  // namespace codesign::topology
