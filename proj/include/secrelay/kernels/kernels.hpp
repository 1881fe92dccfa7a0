#pragma once
// Data-parallel inner loops.
//
// Every kernel has a portable scalar reference in kernels::scalar and, on
// x86-64, an AVX2 variant in kernels::avx2. The dispatched entry points in
// kernels:: pick the best variant the CPU supports once per process; the
// SECRELAY_ISA environment variable ("scalar" or "avx2") overrides the
// choice. Variants are bit-identical: the AVX2 code issues the same IEEE
// operations in the same order as the scalar loop (no FMA contraction).

#include <cstddef>
#include <span>
#include <string_view>

namespace secrelay::kernels {

/// excess(x) = (e2 x^2 + e1 x + e0) / (d2 x^2 + d1 x + d0), evaluated in
/// Horner form. Used for "ratio minus one" of two quadratics so that values
/// close to 1 keep full relative precision.
struct RatioExcess {
  double e2 = 0.0;
  double e1 = 0.0;
  double e0 = 0.0;
  double d2 = 0.0;
  double d1 = 0.0;
  double d0 = 1.0;
};

/// First index attaining the largest value (NaNs never win).
struct GridMax {
  std::size_t index = 0;
  double value = 0.0;
};

/// Per-realization log argument (2^(2C)) and relay power for a batch.
struct BatchOut {
  std::span<double> ratio;
  std::span<double> power;
};

struct BatchIn {
  std::span<const double> alpha;
  std::span<const double> beta;
  std::span<const double> mu;
};

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();

inline double eval_excess(const RatioExcess& r, double x) {
  return ((r.e2 * x + r.e1) * x + r.e0) / ((r.d2 * x + r.d1) * x + r.d0);
}

// Dispatched entry points.
//
// grid_argmax evaluates excess at x_i = i * step for i in [0, count).
GridMax grid_argmax(const RatioExcess& r, double step, std::size_t count);
// Closed-form AF / DF per realization at relay budget p_r; see point.hpp.
void af_batch(const BatchIn& in, double p_r, const BatchOut& out);
void df_batch(const BatchIn& in, double p_r, const BatchOut& out);

namespace scalar {
GridMax grid_argmax(const RatioExcess& r, double step, std::size_t count);
void af_batch(const BatchIn& in, double p_r, const BatchOut& out);
void df_batch(const BatchIn& in, double p_r, const BatchOut& out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SECRELAY_HAVE_AVX2_KERNELS 1
namespace avx2 {
GridMax grid_argmax(const RatioExcess& r, double step, std::size_t count);
void af_batch(const BatchIn& in, double p_r, const BatchOut& out);
void df_batch(const BatchIn& in, double p_r, const BatchOut& out);
}  // namespace avx2
#else
#define SECRELAY_HAVE_AVX2_KERNELS 0
#endif

}  // namespace secrelay::kernels
