#pragma once

#include <cstdint>
#include <vector>

namespace chaosbe {

/// Counter-based Gaussian source. The value at a given counter depends only
/// on (seed, stream, counter), so disjoint streams (and disjoint counter
/// ranges within a stream) can be consumed in parallel with bit-identical
/// results regardless of worker count.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Random access, does not touch the cursor.
  double uniform_at(std::uint64_t counter) const;   // in (0, 1)
  double normal_at(std::uint64_t counter) const;    // standard normal

  /// Sequential convenience access.
  double next_uniform() { return uniform_at(cursor_++); }
  double next_normal() { return normal_at(cursor_++); }
  std::uint64_t cursor() const { return cursor_; }
  void seek(std::uint64_t counter) { cursor_ = counter; }

  /// A source for a derived substream, e.g. one per parallel task.
  RandomSource substream(std::uint64_t id) const;

 private:
  std::uint64_t word_at(std::uint64_t counter) const;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t cursor_ = 0;
};

std::vector<double> standard_normals(const RandomSource& src, std::size_t n,
                                     std::uint64_t first_counter = 0);

/// Quantile of the standard normal (Wichura's PPND16, ~1e-15 accurate).
double inverse_normal_cdf(double p);

}  // namespace chaosbe
