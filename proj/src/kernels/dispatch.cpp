#include <cstdlib>
#include <string>

#include "secrelay/errors.hpp"
#include "secrelay/kernels/kernels.hpp"

namespace secrelay::kernels {

namespace {

struct Table {
  GridMax (*grid_argmax)(const RatioExcess&, double, std::size_t);
  void (*af_batch)(const BatchIn&, double, const BatchOut&);
  void (*df_batch)(const BatchIn&, double, const BatchOut&);
};

constexpr Table kScalar{&scalar::grid_argmax, &scalar::af_batch, &scalar::df_batch};
#if SECRELAY_HAVE_AVX2_KERNELS
constexpr Table kAvx2{&avx2::grid_argmax, &avx2::af_batch, &avx2::df_batch};
#endif

Isa select_isa() {
  if (const char* env = std::getenv("SECRELAY_ISA"); env != nullptr && *env != '\0') {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2") {
      if (!isa_available(Isa::Avx2)) throw ConfigError("SECRELAY_ISA=avx2 but the CPU lacks AVX2");
      return Isa::Avx2;
    }
    throw ConfigError("SECRELAY_ISA must be 'scalar' or 'avx2'");
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const Table& table() {
  static const Table t = [] {
#if SECRELAY_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) return kAvx2;
#endif
    return kScalar;
  }();
  return t;
}

void check_sizes(const BatchIn& in, const BatchOut& out) {
  const std::size_t n = in.alpha.size();
  if (in.beta.size() != n || in.mu.size() != n || out.ratio.size() != n || out.power.size() != n) {
    throw InvalidInput("batch spans must have equal length");
  }
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if SECRELAY_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

GridMax grid_argmax(const RatioExcess& r, double step, std::size_t count) {
  return table().grid_argmax(r, step, count);
}

void af_batch(const BatchIn& in, double p_r, const BatchOut& out) {
  check_sizes(in, out);
  table().af_batch(in, p_r, out);
}

void df_batch(const BatchIn& in, double p_r, const BatchOut& out) {
  check_sizes(in, out);
  table().df_batch(in, p_r, out);
}

}  // namespace secrelay::kernels
