#ifndef NSLEARN_RNG_HPP
#define NSLEARN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace nslearn {

/// splitmix64 step (Steele, Lea, Flood 2014). Used only to derive
/// independent sub-stream seeds from one user seed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of sub-stream `stream` for a user seed: output number `stream` of a
/// splitmix64 sequence started at the user seed. Each generation stage
/// (mean draw, noise draw, ...) owns a fixed stream id, so scenarios that
/// share a stage consume identical variates for identical user seeds.
inline std::uint64_t derive_stream_seed(std::uint64_t seed,
                                        std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= stream; ++i) out = splitmix64_next(state);
  return out;
}

/// Standard-normal generator: mt19937_64 feeding a Box-Muller transform.
/// Self-contained (no std::normal_distribution) so that a given seed yields
/// the same stream on every platform and standard library.
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw strictly inside (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * 3.14159265358979323846 * uniform();
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Eigen::VectorXd vector(Eigen::Index size) {
    Eigen::VectorXd v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = (*this)();
    return v;
  }

  /// Column-major fill: entry (i, j) is draw number j * rows + i.
  Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = (*this)();
    }
    return m;
  }

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nslearn

#endif  // NSLEARN_RNG_HPP
