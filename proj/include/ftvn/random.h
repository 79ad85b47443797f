#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ftvn {

// Mixes (seed, index) into an independent 64-bit key (splitmix64 finalizer).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Generator for sample `index` of a run keyed by `seed`. Samples never share
// state, so any evaluation order reproduces the same stream.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index) : engine_(stream_key(seed, index)) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Product of n(n-1)/2 Givens rotations with uniform angles, followed by a
// random sign flip of each column. Not Haar distributed.
Eigen::MatrixXd random_orthogonal(int n, Stream& rng);
Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed);

}  // namespace ftvn
