#pragma once

// Enumeration of P^1(Q) by naive height.
//
// Within one height the order is: nonnegative before negative, then |num|,
// then den. The point at infinity is visited last among height-1 points.

#include "chatelet/rational.hpp"

#include <numeric>
#include <string>
#include <variant>
#include <vector>

namespace chatelet {

struct AtInfinity {
  friend bool operator==(AtInfinity, AtInfinity) { return true; }
};

/// An x-coordinate on P^1: a rational number or the point at infinity.
using Abscissa = std::variant<Rational, AtInfinity>;

inline bool is_infinite(const Abscissa& x) { return std::holds_alternative<AtInfinity>(x); }

inline std::string to_string(const Abscissa& x) {
  return is_infinite(x) ? std::string("inf") : std::get<Rational>(x).to_string();
}

/// (num, den) pairs with den > 0, gcd 1 and max(|num|, den) == height, in
/// canonical order. Height 0 yields just 0/1.
inline std::vector<std::pair<long, long>> fractions_of_height(long height) {
  std::vector<std::pair<long, long>> out;
  if (height == 0) {
    out.emplace_back(0, 1);
    return out;
  }
  std::vector<std::pair<long, long>> positive;
  for (long p = 1; p < height; ++p) {
    if (std::gcd(p, height) == 1) positive.emplace_back(p, height);
  }
  for (long q = 1; q <= height; ++q) {
    if (std::gcd(height, q) == 1) positive.emplace_back(height, q);
  }
  out = positive;
  for (auto [p, q] : positive) out.emplace_back(-p, q);
  return out;
}

/// Visits P^1(Q) points of height <= bound in canonical order until the
/// callback returns true. Returns whether it stopped early.
template <class Visitor>
bool for_each_abscissa(long bound, Visitor&& visit) {
  for (long h = 0; h <= bound; ++h) {
    for (auto [p, q] : fractions_of_height(h)) {
      if (visit(Abscissa(Rational(p, q)))) return true;
    }
    if (h == 1 && visit(Abscissa(AtInfinity{}))) return true;
  }
  return false;
}

/// Number of finite rationals with height <= bound.
inline long count_rationals_up_to(long bound) {
  long n = 0;
  for (long h = 0; h <= bound; ++h) n += static_cast<long>(fractions_of_height(h).size());
  return n;
}

}  // namespace chatelet
