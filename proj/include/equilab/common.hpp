#ifndef EQUILAB_COMMON_HPP
#define EQUILAB_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equilab {

using Int = std::int64_t;

// Error taxonomy shared by all modules. CLI maps these to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input, broken laws, non-actions.
struct ValidationError : Error {
  using Error::Error;
};

// Configured bound exceeded (group order, apex size, field size, ...).
struct SizeError : Error {
  using Error::Error;
};

// Precondition violations: non-containment, inv(0), object mismatch.
struct DomainError : Error {
  using Error::Error;
};

// Deterministic seedable generator for property trials. splitmix64 keeps
// output identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  Int range(Int lo, Int hi) {  // inclusive bounds
    return lo + static_cast<Int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace equilab

#endif
