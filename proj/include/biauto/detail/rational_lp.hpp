#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace biauto::detail {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Feasibility of { x >= 0 : A x = b } over the rationals.
//
// Phase-one simplex on a dense tableau with Bland's rule, so it terminates
// and every pivot is exact. Returns a basic feasible point or nullopt.
inline std::optional<std::vector<Rational>> feasible_point(std::vector<std::vector<Rational>> const& a,
                                                           std::vector<Rational> const& b) {
  std::size_t m = a.size();
  std::size_t n = m == 0 ? 0 : a.front().size();
  if (m == 0) return std::vector<Rational>(n, 0);
  std::size_t cols = n + m;  // originals then artificials; rhs kept apart
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, 0));
  std::vector<Rational> rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    rhs[i] = flip ? Rational(-b[i]) : b[i];
    t[i][n + i] = 1;
    basis[i] = n + i;
  }
  // Reduced costs of the phase-one objective (sum of artificials, minimised).
  std::vector<Rational> cost(cols, 0);
  Rational value = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    value -= rhs[i];
  }
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = rhs[i] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) {
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
      }
      rhs[i] -= f * rhs[leave];
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j < cols; ++j) {
        if (t[leave][j] != 0) cost[j] -= f * t[leave][j];
      }
      value -= f * rhs[leave];
    }
    basis[leave] = enter;
  }
  if (value != 0) return std::nullopt;
  std::vector<Rational> x(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = rhs[i];
  }
  return x;
}

// Smallest positive integer vector proportional to a nonnegative rational one.
inline std::vector<Integer> scale_to_integers(std::vector<Rational> const& x) {
  Integer lcm = 1;
  for (auto const& v : x) {
    Integer d = boost::multiprecision::denominator(v);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> out;
  out.reserve(x.size());
  Integer g = 0;
  for (auto const& v : x) {
    Integer k = boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v));
    out.push_back(k);
    g = boost::multiprecision::gcd(g, k);
  }
  if (g > 1) {
    for (auto& v : out) v /= g;
  }
  return out;
}

}  // namespace biauto::detail
