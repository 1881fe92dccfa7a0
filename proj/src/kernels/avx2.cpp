// AVX2 variants. This translation unit is compiled with -mavx2 (and without
// -mfma); it is only entered after a runtime CPU check.

#include <immintrin.h>

#include <array>
#include <limits>

#include "secrelay/kernels/kernels.hpp"
#include "secrelay/kernels/point.hpp"

namespace secrelay::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d select(__m256d mask, __m256d if_true, __m256d if_false) {
  return _mm256_blendv_pd(if_false, if_true, mask);
}

}  // namespace

GridMax grid_argmax(const RatioExcess& r, double step, std::size_t count) {
  const __m256d e2 = _mm256_set1_pd(r.e2), e1 = _mm256_set1_pd(r.e1), e0 = _mm256_set1_pd(r.e0);
  const __m256d d2 = _mm256_set1_pd(r.d2), d1 = _mm256_set1_pd(r.d1), d0 = _mm256_set1_pd(r.d0);
  const __m256d h = _mm256_set1_pd(step);
  const __m256d stride = _mm256_set1_pd(static_cast<double>(kLanes));

  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d x = _mm256_mul_pd(idx, h);
    const __m256d num = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(e2, x), e1), x), e0);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(d2, x), d1), x), d0);
    const __m256d v = _mm256_div_pd(num, den);
    const __m256d better = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
    best = select(better, v, best);
    best_idx = select(better, idx, best_idx);
    idx = _mm256_add_pd(idx, stride);
  }

  std::array<double, kLanes> lane_val{};
  std::array<double, kLanes> lane_idx{};
  _mm256_storeu_pd(lane_val.data(), best);
  _mm256_storeu_pd(lane_idx.data(), best_idx);

  GridMax out{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < kLanes; ++k) {
    const auto li = static_cast<std::size_t>(lane_idx[k]);
    if (lane_val[k] > out.value || (lane_val[k] == out.value && li < out.index)) out = {li, lane_val[k]};
  }
  for (; i < count; ++i) {
    const double v = eval_excess(r, static_cast<double>(i) * step);
    if (v > out.value) out = {i, v};
  }
  return out;
}

void af_batch(const BatchIn& in, double p_r, const BatchOut& out) {
  const std::size_t n = in.alpha.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d p = _mm256_set1_pd(p_r);
  const __m256d pp = _mm256_mul_pd(p, p);

  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(in.alpha.data() + i);
    const __m256d b = _mm256_loadu_pd(in.beta.data() + i);
    const __m256d mu = _mm256_loadu_pd(in.mu.data() + i);

    const __m256d active = _mm256_and_pd(_mm256_cmp_pd(a, b, _CMP_GT_OQ), _mm256_cmp_pd(mu, one, _CMP_NEQ_OQ));
    const __m256d ab = _mm256_mul_pd(a, b);
    const __m256d knee = _mm256_sqrt_pd(_mm256_div_pd(mu, ab));
    const __m256d full = _mm256_cmp_pd(p, knee, _CMP_LE_OQ);

    const __m256d amu = _mm256_mul_pd(a, mu);
    const __m256d bmu = _mm256_mul_pd(b, mu);
    const __m256d q = _mm256_mul_pd(ab, pp);
    const __m256d num1 = _mm256_add_pd(_mm256_add_pd(q, _mm256_mul_pd(_mm256_add_pd(amu, b), p)), mu);
    const __m256d den1 = _mm256_add_pd(_mm256_add_pd(q, _mm256_mul_pd(_mm256_add_pd(a, bmu), p)), mu);
    const __m256d r1 = _mm256_div_pd(num1, den1);

    const __m256d s2 = _mm256_mul_pd(two, _mm256_sqrt_pd(_mm256_mul_pd(ab, mu)));
    const __m256d r2 = _mm256_div_pd(_mm256_add_pd(_mm256_add_pd(s2, amu), b), _mm256_add_pd(_mm256_add_pd(s2, a), bmu));

    const __m256d ratio = select(active, select(full, r1, r2), one);
    const __m256d power = select(active, select(full, p, knee), zero);
    _mm256_storeu_pd(out.ratio.data() + i, ratio);
    _mm256_storeu_pd(out.power.data() + i, power);
  }
  for (; i < n; ++i) {
    const RatioPower rp = af_point(in.alpha[i], in.beta[i], in.mu[i], p_r);
    out.ratio[i] = rp.ratio;
    out.power[i] = rp.power;
  }
}

void df_batch(const BatchIn& in, double p_r, const BatchOut& out) {
  const std::size_t n = in.alpha.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d p = _mm256_set1_pd(p_r);

  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(in.alpha.data() + i);
    const __m256d b = _mm256_loadu_pd(in.beta.data() + i);
    const __m256d mu = _mm256_loadu_pd(in.mu.data() + i);

    const __m256d active = _mm256_cmp_pd(a, b, _CMP_GT_OQ);
    const __m256d hop = _mm256_div_pd(_mm256_add_pd(one, _mm256_mul_pd(a, p)), _mm256_add_pd(one, _mm256_mul_pd(b, p)));
    const __m256d full = _mm256_cmp_pd(hop, mu, _CMP_LE_OQ);
    const __m256d saved =
        _mm256_min_pd(_mm256_div_pd(_mm256_sub_pd(mu, one), _mm256_sub_pd(a, _mm256_mul_pd(b, mu))), p);

    const __m256d ratio = select(active, select(full, hop, mu), one);
    const __m256d power = select(active, select(full, p, saved), zero);
    _mm256_storeu_pd(out.ratio.data() + i, ratio);
    _mm256_storeu_pd(out.power.data() + i, power);
  }
  for (; i < n; ++i) {
    const RatioPower rp = df_point(in.alpha[i], in.beta[i], in.mu[i], p_r);
    out.ratio[i] = rp.ratio;
    out.power[i] = rp.power;
  }
}

}  // namespace secrelay::kernels::avx2
