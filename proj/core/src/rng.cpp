// SPDX-License-Identifier: Apache-2.0

#include "gatebound/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gatebound {
namespace rng {

namespace {

// log(k!) without libm's lgamma (which touches the signgam global).
double log_factorial(std::int64_t k) {
  static const std::vector<double> table = [] {
    std::vector<double> t(1024);
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  if (k < static_cast<std::int64_t>(table.size())) return table[k];
  // Stirling series for lgamma(k+1).
  const double x = static_cast<double>(k) + 1.0;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * M_PI) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

} // namespace

std::uint32_t Pcg32::uniform_below(std::uint32_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  const std::uint32_t threshold = (-bound) % bound;
  for (;;) {
    const std::uint32_t r = next_u32();
    if (r >= threshold) return r % bound;
  }
}

double Pcg32::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::int64_t Pcg32::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: negative mean");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // Sequential CDF inversion.
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u > cdf && k < 1000000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // Hormann's PTRS transformed rejection, exact for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = uniform() - 0.5;
    double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const std::int64_t k = static_cast<std::int64_t>(kf);
    const double lhs =
        std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = kf * log_mean - mean - log_factorial(k);
    if (lhs <= rhs) return k;
  }
}

std::int64_t Pcg32::binomial(std::int64_t n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0)
    throw std::invalid_argument("binomial: bad parameters");
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < n; ++i)
    if (uniform() < p) ++hits;
  return hits;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Pcg32 derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  return derive_stream(seed, std::vector<std::uint64_t>(path));
}

Pcg32 derive_stream(std::uint64_t seed, const std::vector<std::uint64_t>& path) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t x : path) h = splitmix64(h ^ splitmix64(x));
  return Pcg32(h, splitmix64(h ^ 0xA02BDBF7BB3C0A7ULL));
}

AliasTable::AliasTable(const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("AliasTable: empty weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("AliasTable: negative weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("AliasTable: zero total weight");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * n / total;

  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));

  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back(); small.pop_back();
    const std::uint32_t l = large.back(); large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (std::uint32_t s : small) prob_[s] = 1.0;
  for (std::uint32_t l : large) prob_[l] = 1.0;
}

std::size_t AliasTable::sample(Pcg32& gen) const {
  const std::size_t i = gen.uniform_below(static_cast<std::uint32_t>(prob_.size()));
  return gen.uniform() < prob_[i] ? i : alias_[i];
}

} // namespace rng
} // namespace gatebound
