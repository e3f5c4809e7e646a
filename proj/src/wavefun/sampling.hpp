#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cosmo/error.hpp"
#include "cosmo/parallel.hpp"
#include "cosmo/wavefun/wavefun.hpp"

namespace cosmo::wave::detail {

constexpr int kChunks = 64;

struct Moments {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    long total = count + o.count;
    double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / static_cast<double>(total);
    count = total;
  }
  Estimate estimate() const {
    Estimate e;
    e.value = mean;
    e.samples = count;
    e.error = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count)) : INFINITY;
    return e;
  }
};

// Runs sample(rng) in kChunks seeded streams and merges in chunk order.
template <class Sampler>
Estimate chunked_monte_carlo(const SamplingOptions& opt, Sampler&& sample) {
  if (opt.samples < 2) throw Error(ErrorKind::DimensionMismatch, "need at least two samples");
  std::vector<Moments> parts(kChunks);
  parallel_for(
      kChunks,
      [&](int c) {
        long share = opt.samples / kChunks + (c < opt.samples % kChunks ? 1 : 0);
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32U),
                          static_cast<std::uint32_t>(c)};
        std::mt19937_64 rng(seq);
        Moments m;
        for (long i = 0; i < share; ++i) m.add(sample(rng));
        parts[static_cast<size_t>(c)] = m;
      },
      opt.threads);
  Moments total;
  for (const auto& m : parts) total.merge(m);
  return total.estimate();
}

}  // namespace cosmo::wave::detail
