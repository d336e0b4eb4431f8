#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// library's information functionals.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bcregions/prob.hpp"

namespace oracle {

// Enumerates every outcome of the joint through JointPMF::at.
template <class Fn>
void for_each_outcome(const bcr::JointPMF& j, Fn&& fn) {
  const auto& vars = j.variables();
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    fn(idx, j.at(idx));
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (++idx[k] < vars[k].cardinality) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (vars.empty()) return;
  }
}

inline double entropy(const bcr::JointPMF& j, const bcr::Names& names) {
  std::vector<std::size_t> pos;
  for (const auto& n : names) pos.push_back(j.index_of(n));
  std::map<std::vector<std::size_t>, double> marginal;
  for_each_outcome(j, [&](const std::vector<std::size_t>& idx, double p) {
    std::vector<std::size_t> key;
    for (auto k : pos) key.push_back(idx[k]);
    marginal[key] += p;
  });
  double h = 0.0;
  for (const auto& [key, p] : marginal)
    if (p > 0) h -= p * std::log2(p);
  return h;
}

inline bcr::Names join(bcr::Names a, const bcr::Names& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline double mi(const bcr::JointPMF& j, const bcr::Names& a, const bcr::Names& b,
                 const bcr::Names& c = {}) {
  return oracle::entropy(j, join(a, c)) + oracle::entropy(j, join(b, c)) - oracle::entropy(j, join(join(a, b), c)) -
         oracle::entropy(j, c);
}

inline double h2(double p) {
  if (p <= 0 || p >= 1) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

// Alternating maximization for the capacity of a point-to-point channel
// w[x][y], in bits.
inline double blahut_arimoto(const std::vector<std::vector<double>>& w, int iterations = 5000,
                             double tol = 1e-13) {
  const std::size_t nx = w.size(), ny = w.front().size();
  std::vector<double> p(nx, 1.0 / nx), q(ny), d(nx);
  double lower = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) q[y] += p[x] * w[x][y];
    for (std::size_t x = 0; x < nx; ++x) {
      d[x] = 0.0;
      for (std::size_t y = 0; y < ny; ++y)
        if (w[x][y] > 0) d[x] += w[x][y] * std::log2(w[x][y] / q[y]);
    }
    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) z += p[x] * std::exp2(d[x]);
    lower = std::log2(z);
    const double upper = *std::max_element(d.begin(), d.end());
    for (std::size_t x = 0; x < nx; ++x) p[x] = p[x] * std::exp2(d[x]) / z;
    if (upper - lower < tol) break;
  }
  return lower;
}

}  // namespace oracle
