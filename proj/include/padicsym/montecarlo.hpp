#pragma once

// Sampling checks. Samples are drawn in fixed-size chunks, chunk c from
// RandomStream(seed).split(c), so results do not depend on the thread count.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "padicsym/oracle.hpp"
#include "padicsym/rational.hpp"

namespace padicsym {

inline constexpr std::int64_t kChunkSize = 4096;
inline const std::string kTailLabel = "tail";

struct GofRow {
  std::string label;
  std::int64_t observed = 0;
  double expected = 0;  // expected count
  double z = 0;
};

struct GofReport {
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  double statistic = 0;
  int df = 0;
  double p_value = 1;
  std::vector<GofRow> rows;
};

/// Class labels of all samples; classes with some k_i > cutoff go to "tail".
TallyTable empirical_class_dist(int n, Int p, int K, std::int64_t samples, std::uint64_t seed, int cutoff,
                                int threads = 1);

/// Exact masses of the resolved classes of empirical_class_dist plus the tail.
std::map<std::string, BigRational> expected_class_masses(int n, Int p, int cutoff);

/// Pearson chi-square of tally against the expected masses (which must sum to 1).
GofReport gof_chisq(const TallyTable& tally, const std::map<std::string, BigRational>& expected);

struct IsotropyFrequency {
  std::int64_t samples = 0;
  std::int64_t isotropic = 0;
  std::int64_t undecided = 0;  // determinant still zero at the largest precision
  BigRational exact;
  double frequency() const { return samples ? static_cast<double>(isotropic) / samples : 0.0; }
  /// (observed - expected) / binomial standard deviation
  double z() const;
};

/// Samples start at precision K and gain p-adic digits until the class is certified.
IsotropyFrequency isotropy_frequency(int n, Int p, std::int64_t samples, std::uint64_t seed, int K = 4,
                                     int threads = 1);

/// Runs fn(chunk_samples, stream, tally) once per chunk and merges the tallies in chunk order.
TallyTable run_chunks(std::int64_t samples, std::uint64_t seed, int threads,
                      const std::function<void(std::int64_t, RandomStream&, TallyTable&)>& fn);

}  // namespace padicsym
