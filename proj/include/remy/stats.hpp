#pragma once

// Goodness-of-fit utilities for the Monte Carlo checks.

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "remy/law.hpp"

namespace remy {

struct StatReport {
  std::string name;
  double statistic = 0;
  double threshold = 0;
  bool pass = false;
  std::size_t sample_size = 0;
  std::size_t dof = 0;
};

inline constexpr double kMinExpectedCount = 5.0;

// Pearson test of observed counts against cell probabilities. Cells whose
// expected count falls below kMinExpectedCount are pooled, smallest first.
// The threshold is the (1 - alpha) chi-square quantile.
StatReport chi_square(const std::vector<long>& observed, const std::vector<double>& expected,
                      double alpha, std::string name = "chi_square");

// |count - n p| / sqrt(n p (1 - p)).
double binomial_z(long count, long n, double p);

// (1/2) sum |p - q| over aligned cells.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

template <typename T>
StatReport chi_square(const std::map<T, long>& observed, const Law<T>& expected, double alpha,
                      std::string name = "chi_square") {
  std::vector<long> o;
  std::vector<double> e;
  for (const auto& [k, p] : expected) {
    const auto it = observed.find(k);
    o.push_back(it == observed.end() ? 0 : it->second);
    e.push_back(to_double(p));
  }
  long outside = 0;
  for (const auto& [k, c] : observed)
    if (!expected.count(k)) outside += c;
  if (outside > 0) {
    // Outcomes of probability zero: the test fails outright.
    StatReport r;
    r.name = std::move(name);
    r.statistic = std::numeric_limits<double>::infinity();
    for (long c : o) r.sample_size += static_cast<std::size_t>(c);
    r.sample_size += static_cast<std::size_t>(outside);
    return r;
  }
  return chi_square(o, e, alpha, std::move(name));
}

// Empirical frequencies normalised by the total count.
template <typename T>
std::map<T, double> frequencies(const std::map<T, long>& counts) {
  double n = 0;
  for (const auto& [_, c] : counts) n += static_cast<double>(c);
  std::map<T, double> f;
  for (const auto& [k, c] : counts) f[k] = static_cast<double>(c) / n;
  return f;
}

// TV distance of two finite distributions on the union of their supports.
template <typename T>
double tv_distance(const std::map<T, double>& p, const std::map<T, double>& q) {
  double s = 0;
  for (const auto& [k, v] : p) {
    const auto it = q.find(k);
    s += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q)
    if (!p.count(k)) s += std::abs(v);
  return s / 2;
}

}  // namespace remy
