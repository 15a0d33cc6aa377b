#pragma once

#include <cstdint>
#include <stdexcept>

namespace bigj {

// Global truncation bounds. D = Lambda_+ filtration order, E = u-series
// order, R = sequence length, M_max = root-order bound for the adelic cells,
// G = Novikov total-degree bound.
struct EngineConfig {
  int D = 2;
  int E = 0;  // 0 = derive the default below
  int R = 4;
  int M_max = 3;
  int G = 2;
  std::uint64_t seed = 1;

  // Every membership test needs at most D polar orders from the exponential
  // plus the pole depth of the entries themselves.
  static int default_E(int D) { return 2 * D + 3 < D + 2 ? D + 2 : 2 * D + 3; }

  EngineConfig& finalize() {
    if (E == 0) E = default_E(D);
    validate();
    return *this;
  }

  void validate() const {
    if (D < 1 || E < 1 || R < 1 || M_max < 1 || G < 1)
      throw std::invalid_argument("config: all bounds must be >= 1");
    if (E < D + 2) throw std::invalid_argument("config: E must be >= D + 2");
  }

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

}  // namespace bigj
