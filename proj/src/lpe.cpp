#include "lpesr/lpe.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace lpesr {

LpeConfig make_config(int total_bits) {
  if (total_bits < 1 || total_bits > 24)
    throw Error(Errc::parameter, "make_config: bits must be in [1, 24], got " + std::to_string(total_bits));

  LpeConfig cfg;
  cfg.total_bits = total_bits;
  const int extra = total_bits >= 8 ? total_bits - 8 : total_bits;
  cfg.n_p = total_bits >= 8 ? 8 : 0;
  // Levels alternate between the central value and the mean difference, central first.
  cfg.n_c = (extra + 1) / 2;
  cfg.n_d = extra / 2;

  const int c_levels = 1 << cfg.n_c;
  const double c_width = 256.0 / c_levels;
  if (cfg.n_c > 0)
    for (int i = 0; i < c_levels; ++i) cfg.t_c.push_back(c_width * i);
  if (cfg.n_d > 0)
    for (int j = 0; j < (1 << cfg.n_d); ++j) cfg.t_d.push_back(5.0 * j);
  return cfg;
}

void validate(const LpeConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(Errc::parameter, "invalid LpeConfig: " + msg); };
  if (cfg.total_bits < 1 || cfg.total_bits > 24) fail("total_bits out of range");
  if (cfg.n_p != 0 && cfg.n_p != 8) fail("n_p must be 0 or 8");
  if (cfg.n_c < 0 || cfg.n_d < 0 || cfg.n_c + cfg.n_d + cfg.n_p != cfg.total_bits) fail("field widths do not add up");

  auto check_thresholds = [&](const std::vector<double>& t, int nbits, const char* name) {
    if (nbits == 0) {
      if (!t.empty()) fail(std::string(name) + " must be empty for a zero-width field");
      return;
    }
    if (t.size() != (std::size_t(1) << nbits)) fail(std::string(name) + " must hold 2^bits entries");
    if (t.front() != 0.0) fail(std::string(name) + " must start at 0");
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!(t[i] > t[i - 1])) fail(std::string(name) + " must be strictly increasing");
  };
  check_thresholds(cfg.t_c, cfg.n_c, "t_c");
  check_thresholds(cfg.t_d, cfg.n_d, "t_d");

  std::array<bool, 9> seen{};
  for (const Offset& o : cfg.neighbor_order) {
    if (o.dr < -1 || o.dr > 1 || o.dc < -1 || o.dc > 1 || (o.dr == 0 && o.dc == 0)) fail("bad neighbour offset");
    const int slot = (o.dr + 1) * 3 + (o.dc + 1);
    if (seen[slot]) fail("repeated neighbour offset");
    seen[slot] = true;
  }
}

std::uint32_t lbp(const Window& patch, const LpeConfig& cfg) {
  if (cfg.n_p != 8) throw Error(Errc::parameter, "lbp: config carries no LBP field");
  const double g_c = patch(1, 1);
  std::uint32_t bits = 0;
  for (int k = 0; k < 8; ++k) {
    const Offset o = cfg.neighbor_order[k];
    if (patch(1 + o.dr, 1 + o.dc) - g_c >= 0.0) bits |= 1u << k;
  }
  return bits;
}

double mean_abs_diff(const Window& patch) {
  return (patch.array() - patch(1, 1)).abs().sum() / 8.0;
}

namespace {

// Number of thresholds at or below each value, minus one, clamped at zero; matches quantize_level.
void levels_into(const double* v, std::size_t count, const std::vector<double>& thresholds, double* out) {
  std::fill(out, out + count, -1.0);
  for (double t : thresholds)
    for (std::size_t i = 0; i < count; ++i) out[i] += v[i] >= t ? 1.0 : 0.0;
  for (std::size_t i = 0; i < count; ++i) out[i] = out[i] < 0.0 ? 0.0 : out[i];
}

}  // namespace

void encode_row(const double* center, std::ptrdiff_t stride, std::size_t count, const LpeConfig& cfg,
                std::uint32_t* codes) {
  // Everything stays in doubles until the final pack so the column loops vectorise.
  thread_local std::vector<double> pattern, diff_sum, mean_diff, d_level, c_level;
  pattern.assign(count, 0.0);
  diff_sum.assign(count, 0.0);
  for (int k = 0; k < 8; ++k) {
    const double* nb = center + cfg.neighbor_order[k].dr * stride + cfg.neighbor_order[k].dc;
    const double weight = double(1u << k);
    double* pat = pattern.data();
    double* sum = diff_sum.data();
    for (std::size_t i = 0; i < count; ++i) {
      const double diff = nb[i] - center[i];
      pat[i] += diff >= 0.0 ? weight : 0.0;
      sum[i] += std::fabs(diff);
    }
  }
  mean_diff.resize(count);
  for (std::size_t i = 0; i < count; ++i) mean_diff[i] = diff_sum[i] / 8.0;
  d_level.resize(count);
  c_level.resize(count);
  levels_into(mean_diff.data(), count, cfg.t_d, d_level.data());
  levels_into(center, count, cfg.t_c, c_level.data());

  const bool use_pattern = cfg.n_p == 8;
  const bool use_d = cfg.n_d > 0, use_c = cfg.n_c > 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t code = use_pattern ? std::uint32_t(pattern[i]) : 0u;
    if (use_d) code |= std::uint32_t(d_level[i]) << cfg.n_p;
    if (use_c) code |= std::uint32_t(c_level[i]) << (cfg.n_d + cfg.n_p);
    codes[i] = code;
  }
}

LpeCode encode(const Window& patch, const LpeConfig& cfg) {
  return {encode_at(patch.data() + 4, 3, cfg), cfg.total_bits};
}

std::uint32_t lbp_field(std::uint32_t code, const LpeConfig& cfg) {
  return cfg.n_p == 0 ? 0u : code & ((1u << cfg.n_p) - 1u);
}

std::uint32_t d_field(std::uint32_t code, const LpeConfig& cfg) {
  return (code >> cfg.n_p) & ((1u << cfg.n_d) - 1u);
}

std::uint32_t c_field(std::uint32_t code, const LpeConfig& cfg) {
  return (code >> (cfg.n_d + cfg.n_p)) & ((1u << cfg.n_c) - 1u);
}

}  // namespace lpesr
