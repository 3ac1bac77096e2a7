#pragma once

// Deterministic uniform sampling. The standard distributions are
// implementation-defined, so the engine output is mapped to doubles
// explicitly to keep results identical across toolchains.

#include <cstdint>
#include <random>

namespace hpk {

class DetRng {
public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }

private:
  std::mt19937_64 eng_;
};

}  // namespace hpk
