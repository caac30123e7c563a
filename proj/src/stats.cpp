#include "remy/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace remy {

StatReport chi_square(const std::vector<long>& observed, const std::vector<double>& expected,
                      double alpha, std::string name) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square: observed and expected differ in length");
  if (std::abs(std::accumulate(expected.begin(), expected.end(), 0.0) - 1.0) > 1e-12)
    throw std::invalid_argument("chi_square: expected probabilities do not sum to 1");
  StatReport r;
  r.name = std::move(name);
  long n = 0;
  for (long c : observed) n += c;
  r.sample_size = static_cast<std::size_t>(n);

  std::vector<std::size_t> order(expected.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return expected[a] < expected[b]; });

  std::vector<std::pair<double, double>> cells;  // (expected count, observed)
  double pe = 0, po = 0;
  for (auto i : order) {
    const double e = expected[i] * static_cast<double>(n);
    if (e <= 0 && observed[i] == 0) continue;
    if (pe + e < kMinExpectedCount || pe > 0) {
      pe += e;
      po += static_cast<double>(observed[i]);
      if (pe >= kMinExpectedCount) {
        cells.emplace_back(pe, po);
        pe = po = 0;
      }
    } else {
      cells.emplace_back(e, static_cast<double>(observed[i]));
    }
  }
  if (pe > 0 || po > 0) {
    if (cells.empty()) {
      cells.emplace_back(pe, po);
    } else {
      cells.back().first += pe;
      cells.back().second += po;
    }
  }
  for (const auto& [e, o] : cells) {
    if (e <= 0) {
      r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    r.statistic += (o - e) * (o - e) / e;
  }
  r.dof = cells.size() > 1 ? cells.size() - 1 : 0;
  if (r.dof == 0) {
    r.threshold = 0;
    r.pass = r.statistic == 0;
    return r;
  }
  boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.threshold = boost::math::quantile(boost::math::complement(dist, alpha));
  r.pass = r.statistic <= r.threshold;
  return r;
}

double binomial_z(long count, long n, double p) {
  const double nn = static_cast<double>(n);
  const double sd = std::sqrt(nn * p * (1 - p));
  const double diff = std::abs(static_cast<double>(count) - nn * p);
  if (sd == 0) return diff == 0 ? 0 : std::numeric_limits<double>::infinity();
  return diff / sd;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: supports differ");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2;
}

}  // namespace remy
