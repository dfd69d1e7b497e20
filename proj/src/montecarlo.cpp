#include "padicsym/montecarlo.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "padicsym/densities.hpp"

namespace padicsym {

TallyTable run_chunks(std::int64_t samples, std::uint64_t seed, int threads,
                      const std::function<void(std::int64_t, RandomStream&, TallyTable&)>& fn) {
  if (samples < 0) throw InvalidArgument("sample count must be >= 0");
  const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<TallyTable> parts(chunks);
  const RandomStream root(seed);
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c; (c = next++) < chunks;) {
      RandomStream rng = root.split(static_cast<std::uint64_t>(c));
      fn(std::min(kChunkSize, samples - c * kChunkSize), rng, parts[c]);
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::int64_t>(chunks, 1))));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  TallyTable out;
  for (const auto& part : parts) out.merge(part);
  return out;
}

TallyTable empirical_class_dist(int n, Int p, int K, std::int64_t samples, std::uint64_t seed, int cutoff,
                                int threads) {
  const Ring ring(p, K);
  if (n < 1 || cutoff < 0) throw InvalidArgument("need n >= 1 and cutoff >= 0");
  if (static_cast<long>(n) * cutoff > K - 1)
    throw PrecisionInsufficient("n * cutoff = " + std::to_string(n * cutoff) + " exceeds K - 1 = " +
                                std::to_string(K - 1));
  return run_chunks(samples, seed, threads, [&](std::int64_t count, RandomStream& rng, TallyTable& t) {
    for (std::int64_t i = 0; i < count; ++i) {
      ResidueMatrix X = sample_sym_matrix(n, ring, rng);
      try {
        SymClass cls = sym_canonical(ring, X).cls;
        bool resolved = cls.eldivs[n - 1] <= cutoff;
        t.add(resolved ? cls.label() : kTailLabel);
      } catch (const PrecisionExhausted&) {
        // M >= K > n * cutoff, so some exponent exceeds the cutoff
        t.add(kTailLabel);
      }
    }
  });
}

std::map<std::string, BigRational> expected_class_masses(int n, Int p, int cutoff) {
  std::map<std::string, BigRational> out;
  BigRational seen = 0;
  for (const auto& e : eldivs_up_to(n, cutoff))
    for (const auto& cls : classes_over(e)) {
      BigRational w = sym_class_prob(cls, p);
      out[cls.label()] = w;
      seen += w;
    }
  out[kTailLabel] = 1 - seen;
  return out;
}

GofReport gof_chisq(const TallyTable& tally, const std::map<std::string, BigRational>& expected) {
  if (expected.size() < 2) throw InvalidArgument("chi-square needs at least two classes");
  BigRational mass = 0;
  for (const auto& [label, w] : expected) mass += w;
  if (mass != 1) throw InvalidArgument("expected masses must sum to 1");
  for (const auto& [label, c] : tally.counts)
    if (!expected.count(label)) throw InvalidArgument("tally has a class with no expected mass: " + label);

  GofReport rep;
  rep.samples = tally.total;
  const double N = static_cast<double>(tally.total);
  for (const auto& [label, w] : expected) {
    const double e = w.get_d();
    if (e * N < 5)
      throw ExpectedCountTooSmall("expected count for " + label + " is " + std::to_string(e * N) + " < 5");
    GofRow row{label, tally.count(label), e * N, 0};
    const double diff = static_cast<double>(row.observed) - row.expected;
    rep.statistic += diff * diff / row.expected;
    row.z = diff / std::sqrt(N * e * (1 - e));
    rep.rows.push_back(row);
  }
  rep.df = static_cast<int>(expected.size()) - 1;
  rep.p_value = rep.statistic == 0 ? 1.0 : boost::math::gamma_q(rep.df / 2.0, rep.statistic / 2.0);
  return rep;
}

double IsotropyFrequency::z() const {
  const double e = exact.get_d(), N = static_cast<double>(samples);
  const double diff = static_cast<double>(isotropic) - N * e;
  const double var = N * e * (1 - e);
  if (var == 0) return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / std::sqrt(var);
}

namespace {

int max_precision(Int p) {
  int K = 0;
  for (__int128 m = 1; m * p < (static_cast<__int128>(1) << 62); m *= p) ++K;
  return K;
}

// Class of a Haar-random matrix, drawing further digits while the
// determinant is too divisible to certify the class.
std::optional<SymClass> classify_extending(int n, Int p, int K, RandomStream& rng) {
  const int K_max = max_precision(p);
  Ring ring(p, std::min(K, K_max));
  ResidueMatrix X = sample_sym_matrix(n, ring, rng);
  for (;;) {
    try {
      return sym_canonical(ring, X).cls;
    } catch (const PrecisionExhausted&) {
      if (ring.K() >= K_max) return std::nullopt;
      const Int top = ring.modulus();
      for (auto [i, j] : upper_triangle(n)) X(i, j) = X(j, i) = X(i, j) + top * rng.uniform(p);
      ring = ring.with_precision(ring.K() + 1);
    }
  }
}

}  // namespace

IsotropyFrequency isotropy_frequency(int n, Int p, std::int64_t samples, std::uint64_t seed, int K, int threads) {
  if (n < 1) throw InvalidArgument("need n >= 1");
  (void)Ring(p, K);
  TallyTable t = run_chunks(samples, seed, threads, [&](std::int64_t count, RandomStream& rng, TallyTable& tally) {
    for (std::int64_t i = 0; i < count; ++i) {
      auto cls = classify_extending(n, p, K, rng);
      if (!cls)
        tally.add("undecided");
      else
        tally.add(isotropic_by_invariants(qp_class(*cls, p), p) ? "isotropic" : "anisotropic");
    }
  });
  IsotropyFrequency f;
  f.samples = t.total;
  f.isotropic = t.count("isotropic");
  f.undecided = t.count("undecided");
  f.exact = isotropy_prob(n, p);
  return f;
}

}  // namespace padicsym
