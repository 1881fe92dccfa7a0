#include <limits>

#include "secrelay/kernels/kernels.hpp"
#include "secrelay/kernels/point.hpp"

namespace secrelay::kernels::scalar {

GridMax grid_argmax(const RatioExcess& r, double step, std::size_t count) {
  GridMax best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < count; ++i) {
    const double v = eval_excess(r, static_cast<double>(i) * step);
    if (v > best.value) best = {i, v};
  }
  return best;
}

void af_batch(const BatchIn& in, double p_r, const BatchOut& out) {
  const std::size_t n = in.alpha.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatioPower rp = af_point(in.alpha[i], in.beta[i], in.mu[i], p_r);
    out.ratio[i] = rp.ratio;
    out.power[i] = rp.power;
  }
}

void df_batch(const BatchIn& in, double p_r, const BatchOut& out) {
  const std::size_t n = in.alpha.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatioPower rp = df_point(in.alpha[i], in.beta[i], in.mu[i], p_r);
    out.ratio[i] = rp.ratio;
    out.power[i] = rp.power;
  }
}

}  // namespace secrelay::kernels::scalar
