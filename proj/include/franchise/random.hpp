#pragma once

#include <cstdint>
#include <random>

namespace franchise {

// mt19937_64 with an explicit bits-to-double mapping, so draws are identical
// across standard libraries (uniform_real_distribution is not portable).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<int>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace franchise
