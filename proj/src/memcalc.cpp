#include "codesign/memcalc.hpp"

#include "codesign/error.hpp"

namespace codesign::memcalc {

namespace {

void require(bool ok, const std::string& field) {
  if (!ok) throw Error(ErrorCode::CONFIG_INVALID, "model field '" + field + "' is invalid");
}

}  // namespace

void ModelConfig::validate() const {
  require(layers >= 1, "layers");
  require(hidden_dim >= 1, "hidden_dim");
  require(attention.heads >= 1, "attention.heads");
  require(attention.head_dim >= 1, "attention.head_dim");
  switch (attention.kind) {
    case AttentionKind::MLA:
      require(attention.latent_dim > 0, "attention.latent_dim");
      require(attention.rope_dim >= 0, "attention.rope_dim");
      break;
    case AttentionKind::MQA:
      require(attention.kv_heads == 1, "attention.kv_heads (MQA requires 1)");
      break;
    case AttentionKind::MHA:
      require(attention.kv_heads == attention.heads,
              "attention.kv_heads (MHA requires kv_heads == heads)");
      break;
    case AttentionKind::GQA:
      require(attention.kv_heads >= 1 && attention.kv_heads <= attention.heads,
              "attention.kv_heads");
      break;
  }
  require(ffn.inter_dim >= 1, "ffn.inter_dim");
  if (ffn.kind == FfnKind::MOE) {
    require(ffn.n_routed_experts >= 1, "ffn.n_routed_experts");
    require(ffn.top_k >= 1 && ffn.top_k <= ffn.n_routed_experts, "ffn.top_k");
    require(ffn.n_shared_experts >= 0, "ffn.n_shared_experts");
    require(ffn.expert_inter_dim >= 1, "ffn.expert_inter_dim");
    require(ffn.n_dense_layers >= 0 && ffn.n_dense_layers <= layers,
            "ffn.n_dense_layers");
  }
}

std::uint64_t kv_bytes_per_token(const ModelConfig& cfg, int bytes_per_element) {
  if (bytes_per_element < 1) {
    throw Error(ErrorCode::CONFIG_INVALID, "model field 'bytes_per_element' is invalid");
  }
  const AttentionConfig& at = cfg.attention;
  const auto layers = static_cast<std::uint64_t>(cfg.layers);
  switch (at.kind) {
    case AttentionKind::MLA:
      return layers * static_cast<std::uint64_t>(at.latent_dim + at.rope_dim) *
             bytes_per_element;
    case AttentionKind::GQA:
    case AttentionKind::MQA:
    case AttentionKind::MHA:
      return layers * 2ull * at.kv_heads * at.head_dim * bytes_per_element;
  }
  throw Error(ErrorCode::UNSUPPORTED_ATTENTION_KIND, "unknown attention kind");
}

double kv_multiplier(const ModelConfig& a, const ModelConfig& b,
                     int bytes_per_element) {
  return static_cast<double>(kv_bytes_per_token(a, bytes_per_element)) /
         static_cast<double>(kv_bytes_per_token(b, bytes_per_element));
}

FlopsBreakdown train_flops_per_token(const ModelConfig& cfg, long seq_len) {
  if (seq_len < 1) {
    throw Error(ErrorCode::CONFIG_INVALID, "model field 'seq_len' is invalid");
  }
  cfg.validate();

  const double h = cfg.hidden_dim;
  const double heads = cfg.attention.heads;
  const double hd = cfg.attention.head_dim;
  const double ctx = static_cast<double>(seq_len) / 2.0;  // causal average

  FlopsBreakdown out;

  if (cfg.attention.kind == AttentionKind::MLA) {
    const double rope = cfg.attention.rope_dim;
    const double lat = cfg.attention.latent_dim;
    const double qlat = cfg.attention.q_latent_dim;
    const double qk = hd + rope;
    out.attention_proj_macs += qlat > 0 ? h * qlat + qlat * heads * qk
                                        : h * heads * qk;
    out.attention_proj_macs += h * (lat + rope);     // joint KV down-projection
    out.attention_proj_macs += lat * heads * hd * 2; // K and V up-projections
    out.attention_proj_macs += heads * hd * h;       // output projection
    out.attention_score_macs = heads * qk * ctx + heads * hd * ctx;
  } else {
    const double kvh = cfg.attention.kv_heads;
    out.attention_proj_macs =
        h * heads * hd + 2 * h * kvh * hd + heads * hd * h;
    out.attention_score_macs = 2 * heads * hd * ctx;
  }
  out.attention_proj_macs *= cfg.layers;
  out.attention_score_macs *= cfg.layers;

  // gated FFN: gate + up + down projections
  if (cfg.ffn.kind == FfnKind::MOE) {
    const double active = cfg.ffn.top_k + cfg.ffn.n_shared_experts;
    const int moe_layers = cfg.layers - cfg.ffn.n_dense_layers;
    out.ffn_dense_macs = 3.0 * h * cfg.ffn.inter_dim * cfg.ffn.n_dense_layers;
    out.ffn_expert_macs = active * 3.0 * h * cfg.ffn.expert_inter_dim * moe_layers;
  } else {
    out.ffn_dense_macs = 3.0 * h * cfg.ffn.inter_dim * cfg.layers;
  }

  out.total_macs = out.attention_proj_macs + out.attention_score_macs +
                   out.ffn_dense_macs + out.ffn_expert_macs;
  out.forward_gflops = 2.0 * out.total_macs / 1e9;
  out.train_gflops = 3.0 * out.forward_gflops;
  return out;
}

const std::vector<ModelConfig>& builtin_presets() {
  static const std::vector<ModelConfig> presets = [] {
    std::vector<ModelConfig> v;

    ModelConfig dsv3;
    dsv3.name = "deepseek-v3";
    dsv3.layers = 61;
    dsv3.hidden_dim = 7168;
    dsv3.vocab = 129280;
    dsv3.attention = {AttentionKind::MLA, 128, 128, 1, 512, 64, 1536};
    dsv3.ffn = {FfnKind::MOE, 18432, 256, 1, 8, 2048, 3};
    v.push_back(dsv3);

    ModelConfig dsv2;
    dsv2.name = "deepseek-v2";
    dsv2.layers = 60;
    dsv2.hidden_dim = 5120;
    dsv2.vocab = 102400;
    dsv2.attention = {AttentionKind::MLA, 128, 128, 1, 512, 64, 1536};
    dsv2.ffn = {FfnKind::MOE, 12288, 160, 2, 6, 1536, 1};
    v.push_back(dsv2);

    ModelConfig qwen;
    qwen.name = "qwen2.5-72b";
    qwen.layers = 80;
    qwen.hidden_dim = 8192;
    qwen.vocab = 152064;
    qwen.attention = {AttentionKind::GQA, 64, 128, 8, 0, 0, 0};
    qwen.ffn = {FfnKind::DENSE, 29568, 0, 0, 0, 0, 0};
    v.push_back(qwen);

    ModelConfig llama;
    llama.name = "llama3.1-405b";
    llama.layers = 126;
    llama.hidden_dim = 16384;
    llama.vocab = 128256;
    llama.attention = {AttentionKind::GQA, 128, 128, 8, 0, 0, 0};
    llama.ffn = {FfnKind::DENSE, 53248, 0, 0, 0, 0, 0};
    v.push_back(llama);

    return v;
  }();
  return presets;
}

const ModelConfig* find_preset(const std::string& name) {
  for (const ModelConfig& m : builtin_presets()) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

}  // namespace codesign::memcalc
