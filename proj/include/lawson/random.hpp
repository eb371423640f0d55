#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace lawson {

// Portable sampling stream: std::mt19937_64 (its output sequence is fixed by
// the C++ standard), doubles from the top 53 bits, normals by Box-Muller.
// No std:: distribution is used since those are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  std::size_t index(std::size_t n);      // [0, n)
  double normal();
  Eigen::Vector4d unit4();  // uniform on S^3

  // Independent stream for a named branch of work.
  Rng fork(std::uint64_t salt);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lawson
