#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace tqftwb {

inline constexpr const char* kVersion = "0.4.1";

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad DSL text, bad model file, bad option values.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation exceeded a configured size bound.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but outside what the implementation handles.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

enum class Execution { serial, parallel };

/// Deterministic generator. Draws are implemented here rather than with the
/// <random> distributions, whose output is implementation-defined, so that
/// reports are byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace tqftwb
