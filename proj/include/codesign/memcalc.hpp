#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace codesign::memcalc {

enum class AttentionKind { MLA, GQA, MQA, MHA };
enum class FfnKind { DENSE, MOE };

struct AttentionConfig {
  AttentionKind kind = AttentionKind::MHA;
  int heads = 1;
  int head_dim = 1;     // per-head value/nope dimension
  int kv_heads = 1;     // GQA/MQA; MQA => 1, MHA => heads
  int latent_dim = 0;   // MLA compressed KV dimension
  int rope_dim = 0;     // MLA decoupled positional dimension
  int q_latent_dim = 0; // MLA query compression rank, 0 = uncompressed
};

struct FfnConfig {
  FfnKind kind = FfnKind::DENSE;
  int inter_dim = 1;          // dense FFN width (also the leading dense layers)
  int n_routed_experts = 0;
  int n_shared_experts = 0;
  int top_k = 0;
  int expert_inter_dim = 0;
  int n_dense_layers = 0;     // leading non-MoE layers
};

struct ModelConfig {
  std::string name;
  int layers = 1;
  int hidden_dim = 1;
  AttentionConfig attention;
  FfnConfig ffn;
  int vocab = 0;  // informational; embedding/LM-head excluded from FLOPs

  // Throws CONFIG_INVALID naming the offending field.
  void validate() const;
};

// Per-token KV-cache bytes.
//   GQA/MQA/MHA: layers * 2 * kv_heads * head_dim * bytes_per_element
//   MLA:         layers * (latent_dim + rope_dim) * bytes_per_element
std::uint64_t kv_bytes_per_token(const ModelConfig& cfg, int bytes_per_element);

// kv_bytes(a) / kv_bytes(b)
double kv_multiplier(const ModelConfig& a, const ModelConfig& b,
                     int bytes_per_element = 2);

// Forward-matmul MACs per token, split by component. Attention score/value
// terms use the average causal context seq_len/2. Gate/router and
// embedding/LM-head matmuls are excluded.
struct FlopsBreakdown {
  double attention_proj_macs = 0.0;
  double attention_score_macs = 0.0;
  double ffn_dense_macs = 0.0;
  double ffn_expert_macs = 0.0;
  double total_macs = 0.0;
  double forward_gflops = 0.0;  // 2 * MACs
  double train_gflops = 0.0;    // 3 * forward (backward = 2x forward)
};

FlopsBreakdown train_flops_per_token(const ModelConfig& cfg, long seq_len);

// Built-in model presets (keyed by name), overridable by user configs.
const std::vector<ModelConfig>& builtin_presets();
const ModelConfig* find_preset(const std::string& name);

}  // namespace codesign::memcalc
