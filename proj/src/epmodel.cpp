#include "codesign/epmodel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "codesign/error.hpp"
#include "codesign/rng.hpp"

namespace codesign::epmodel {

namespace {

void require(bool ok, const std::string& field) {
  if (!ok) throw Error(ErrorCode::CONFIG_INVALID, "field '" + field + "' is invalid");
}

}  // namespace

void EpScenario::validate() const {
  require(tokens_per_device >= 0, "tokens_per_device");
  require(hidden_dim >= 1, "hidden_dim");
  require(dispatch_bytes >= 0 && combine_bytes >= 0, "dispatch_bytes/combine_bytes");
  require(fanout >= 1, "fanout");
  require(layers >= 1, "layers");
}

void BandwidthModel::validate() const {
  require(nvlink_effective > 0, "nvlink_effective");
  require(nic_effective > 0 && nic_peak > 0, "nic bandwidth");
  require(nic_effective <= nic_peak, "nic_effective (must be <= nic_peak)");
}

void RoutingPolicy::validate() const {
  require(n_experts >= 1, "n_experts");
  require(n_groups >= 1 && experts_per_group >= 1, "n_groups/experts_per_group");
  require(n_groups * experts_per_group == n_experts,
          "n_experts (must equal n_groups * experts_per_group)");
  require(max_groups >= 1 && max_groups <= n_groups, "max_groups");
  require(top_k >= 1 && top_k <= max_groups * experts_per_group, "top_k");
}

double alltoall_time_s(const EpScenario& s, double bandwidth_bytes_per_s) {
  s.validate();
  if (bandwidth_bytes_per_s <= 0) {
    throw Error(ErrorCode::CONFIG_INVALID, "field 'bandwidth' is invalid");
  }
  const double bytes = (s.dispatch_bytes + s.combine_bytes) *
                       static_cast<double>(s.tokens_per_device) *
                       static_cast<double>(s.fanout) *
                       static_cast<double>(s.hidden_dim);
  return bytes / bandwidth_bytes_per_s;
}

TpotBound tpot_bound(const EpScenario& s, double bandwidth_bytes_per_s) {
  TpotBound b;
  b.per_layer_s = 2.0 * alltoall_time_s(s, bandwidth_bytes_per_s);
  b.tpot_s = static_cast<double>(s.layers) * b.per_layer_s;
  if (b.tpot_s > 0) {
    b.tokens_per_s = 1.0 / b.tpot_s;
    b.tokens_per_s_floor = static_cast<long>(std::floor(b.tokens_per_s));
  }
  return b;
}

namespace {

double group_score_value(std::span<const double> scores, int group,
                         const RoutingPolicy& policy) {
  const int base = group * policy.experts_per_group;
  const int take = policy.group_score == GroupScore::MAX ? 1
                   : policy.group_score == GroupScore::SUM_TOP2
                       ? std::min(2, policy.experts_per_group)
                       : std::min(policy.top_k, policy.experts_per_group);
  if (take >= policy.experts_per_group) {
    double s = 0.0;
    for (int i = 0; i < policy.experts_per_group; ++i) s += scores[base + i];
    return s;
  }
  // partial sort of the group's top `take`
  std::array<double, 8> buf{};  // take <= top_k <= 8 in practice, else heap
  if (take <= 8) {
    int filled = 0;
    for (int i = 0; i < policy.experts_per_group; ++i) {
      const double v = scores[base + i];
      if (filled < take) {
        buf[filled++] = v;
        std::push_heap(buf.begin(), buf.begin() + filled, std::greater<>());
      } else if (v > buf[0]) {
        std::pop_heap(buf.begin(), buf.begin() + take, std::greater<>());
        buf[take - 1] = v;
        std::push_heap(buf.begin(), buf.begin() + take, std::greater<>());
      }
    }
    double s = 0.0;
    for (int i = 0; i < take; ++i) s += buf[i];
    return s;
  }
  std::vector<double> tmp(scores.begin() + base,
                          scores.begin() + base + policy.experts_per_group);
  std::nth_element(tmp.begin(), tmp.begin() + take - 1, tmp.end(), std::greater<>());
  double s = 0.0;
  for (int i = 0; i < take; ++i) s += tmp[i];
  return s;
}

}  // namespace

RouteResult node_limited_route(std::span<const double> scores,
                               const RoutingPolicy& policy) {
  policy.validate();
  if (scores.size() != static_cast<std::size_t>(policy.n_experts)) {
    throw Error(ErrorCode::SCORE_LENGTH_MISMATCH,
                "expected " + std::to_string(policy.n_experts) + " scores, got " +
                    std::to_string(scores.size()));
  }
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::INVALID_ARGUMENT, "scores must be finite");
    }
  }

  // rank groups, keep the best max_groups (ties to the lower group id)
  std::vector<int> groups(policy.n_groups);
  for (int g = 0; g < policy.n_groups; ++g) groups[g] = g;
  std::vector<double> gscore(policy.n_groups);
  for (int g = 0; g < policy.n_groups; ++g) {
    gscore[g] = group_score_value(scores, g, policy);
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [&](int a, int b) { return gscore[a] > gscore[b]; });
  std::vector<char> kept(policy.n_groups, 0);
  for (int i = 0; i < policy.max_groups; ++i) kept[groups[i]] = 1;

  // global top_k restricted to kept groups (ties to the lower expert id)
  std::vector<int> candidates;
  candidates.reserve(static_cast<std::size_t>(policy.max_groups) *
                     policy.experts_per_group);
  for (int e = 0; e < policy.n_experts; ++e) {
    if (kept[e / policy.experts_per_group]) candidates.push_back(e);
  }
  const auto better = [&](int a, int b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + policy.top_k,
                    candidates.end(), better);
  candidates.resize(policy.top_k);

  RouteResult r;
  r.experts = std::move(candidates);
  std::vector<char> seen(policy.n_groups, 0);
  for (int e : r.experts) {
    if (!seen[e / policy.experts_per_group]) {
      seen[e / policy.experts_per_group] = 1;
      ++r.node_count;
    }
  }
  return r;
}

DedupIbTime dedup_ib_time(int node_count, double t_per_copy_s, int fanout) {
  if (node_count < 1 || t_per_copy_s <= 0 || fanout < 1) {
    throw Error(ErrorCode::CONFIG_INVALID, "field 'node_count/t/fanout' is invalid");
  }
  DedupIbTime d;
  d.dedup_s = node_count * t_per_copy_s;
  d.naive_s = fanout * t_per_copy_s;
  d.reduction = static_cast<double>(fanout) / node_count;
  return d;
}

double mtp_speedup(double accept_rate) {
  if (!(accept_rate >= 0.0 && accept_rate <= 1.0)) {
    throw Error(ErrorCode::CONFIG_INVALID, "field 'accept_rate' is invalid");
  }
  return 1.0 + accept_rate;
}

RoutingSimResult routing_sim(const RoutingPolicy& policy, std::uint64_t trials,
                             std::uint64_t seed,
                             const lowprec::Distribution& score_distribution,
                             bool parallel) {
  policy.validate();
  if (trials < 1) throw Error(ErrorCode::CONFIG_INVALID, "field 'trials' is invalid");

  RoutingPolicy unrestricted = policy;
  unrestricted.max_groups = policy.n_groups;

  std::vector<std::uint8_t> m_unres(trials), m_lim(trials);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long long t = 0; t < static_cast<long long>(trials); ++t) {
    StreamRng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> scores(policy.n_experts);
    for (double& s : scores) s = score_distribution.sample(rng);
    m_unres[t] = static_cast<std::uint8_t>(
        node_limited_route(scores, unrestricted).node_count);
    m_lim[t] = static_cast<std::uint8_t>(
        node_limited_route(scores, policy).node_count);
  }

  RoutingSimResult res;
  res.trials = trials;
  res.seed = seed;
  res.hist_unrestricted.assign(policy.n_groups + 1, 0);
  res.hist_limited.assign(policy.n_groups + 1, 0);
  for (std::uint64_t i = 0; i < trials; ++i) {
    ++res.hist_unrestricted[m_unres[i]];
    ++res.hist_limited[m_lim[i]];
  }
  const double n = static_cast<double>(trials);
  for (int m = 1; m <= policy.n_groups; ++m) {
    const double cu = static_cast<double>(res.hist_unrestricted[m]);
    const double cl = static_cast<double>(res.hist_limited[m]);
    res.mean_m_unrestricted += cu * m / n;
    res.mean_m_limited += cl * m / n;
    res.mean_dedup_ratio_unrestricted += cu * (static_cast<double>(policy.top_k) / m) / n;
    res.mean_dedup_ratio_limited += cl * (static_cast<double>(policy.top_k) / m) / n;
  }
  return res;
}

double unrestricted_mean_nodes_oracle(const RoutingPolicy& policy) {
  // P(a fixed group is missed) = C(n - per_group, k) / C(n, k)
  double p_miss = 1.0;
  for (int i = 0; i < policy.top_k; ++i) {
    const int numer = policy.n_experts - policy.experts_per_group - i;
    if (numer <= 0) return static_cast<double>(policy.n_groups);  // every group hit
    p_miss *= static_cast<double>(numer) / static_cast<double>(policy.n_experts - i);
  }
  return policy.n_groups * (1.0 - p_miss);
}

}  // namespace codesign::epmodel
