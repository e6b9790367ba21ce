#pragma once

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <vector>

#include "ellrook.hpp"

namespace ellrook::test {

using rational = boost::multiprecision::cpp_rational;

inline Sampler sampler(std::uint64_t seed) {
  SamplerConfig c;
  c.seed = seed;
  return Sampler(c);
}

/// Draws families until `f` returns sides with cancellation below the harness limit.
inline IdentitySides well_conditioned(Sampler& s, FamilyTag tag, const std::function<IdentitySides(const WeightFamily&)>& f) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    try {
      const IdentitySides out = f(s.family(tag));
      if (out.condition() <= max_condition) return out;
    } catch (const PoleEncountered&) {
    }
  }
  ADD_FAILURE() << "no well-conditioned point found";
  return {};
}

/// All weakly increasing height vectors of length n with entries <= h.
inline std::vector<SkylineBoard> ferrers_boards(int n, int h) {
  std::vector<SkylineBoard> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int lo) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.emplace_back(cur);
      return;
    }
    for (int v = lo; v <= h; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// All height vectors of length n with entries <= h.
inline std::vector<SkylineBoard> skyline_boards(int n, int h) {
  std::vector<SkylineBoard> out;
  std::vector<int> cur(n, 0);
  while (true) {
    out.emplace_back(cur);
    int i = 0;
    while (i < n && cur[i] == h) cur[i++] = 0;
    if (i == n) break;
    ++cur[i];
  }
  return out;
}

/// Distinct rationals away from 0 and 1, enough to pin down a polynomial of degree < count.
inline std::vector<rational> rational_points(int count) {
  std::vector<rational> out;
  for (int j = 0; j < count; ++j) out.emplace_back(j + 2, 2 * j + 5);
  return out;
}

inline rational rpow(const rational& x, long k) {
  rational r = 1;
  for (long j = 0; j < k; ++j) r *= x;
  return r;
}

}  // namespace ellrook::test
