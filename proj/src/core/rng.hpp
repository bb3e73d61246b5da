#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace qae {

// Seeded random stream. All draws go through hand-rolled transformations of
// the raw mt19937_64 output rather than std:: distributions, so a given seed
// produces the same sequence on every standard library implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  // Independent child stream; salting the seed through splitmix64 keeps
  // restart streams decorrelated from each other and from the parent.
  RngStream substream(std::uint64_t salt) const {
    return RngStream(splitmix64(splitmix64(seed_) ^ splitmix64(salt + 0x9e3779b97f4a7c15ull)));
  }

  std::uint64_t seed() const { return seed_; }

  // Uniform in [0, 1), 53-bit mantissa.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [0, n); rejection sampling keeps it exactly unbiased.
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = gen_();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % span);
  }

  // Standard normal via Box-Muller; the spare is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  // Binomial(n, p) as a Bernoulli sum. n stays in the low thousands here
  // (shot counts), so the O(n) loop is cheap and exactly reproducible.
  long binomial(long n, double p) {
    if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: bad arguments");
    long hits = 0;
    for (long i = 0; i < n; ++i) {
      if (uniform() < p) ++hits;
    }
    return hits;
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qae
