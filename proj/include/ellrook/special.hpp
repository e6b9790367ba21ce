#pragma once

#include <string>
#include <vector>

#include "ellrook/file.hpp"
#include "ellrook/rook.hpp"

namespace ellrook {

enum class SpecialKind { Stirling2, Stirling2R, Lah, LahR, Stirling1, Stirling1R, Abel, AbelR, AbelGen, AbelGenR };

/// A named family of special numbers; r and m are used by the restricted/generalized kinds.
struct SpecialFamily {
  SpecialKind kind = SpecialKind::Stirling2;
  int r = 1;
  int m = 0;

  bool uses_rooks() const {
    return kind == SpecialKind::Stirling2 || kind == SpecialKind::Stirling2R || kind == SpecialKind::Lah ||
           kind == SpecialKind::LahR;
  }
  bool restricted() const {
    return kind == SpecialKind::Stirling2R || kind == SpecialKind::LahR || kind == SpecialKind::Stirling1R ||
           kind == SpecialKind::AbelR || kind == SpecialKind::AbelGenR;
  }
  int effective_r() const { return restricted() ? r : 1; }

  std::string name() const {
    static const char* names[] = {"stirling2", "stirling2r", "lah",  "lahr",    "stirling1",
                                  "stirling1r", "abel",      "abelr", "abelgen", "abelgenr"};
    return names[static_cast<int>(kind)];
  }

  static SpecialFamily parse(const std::string& s, int r = 1, int m = 0) {
    static const char* names[] = {"stirling2", "stirling2r", "lah",  "lahr",    "stirling1",
                                  "stirling1r", "abel",      "abelr", "abelgen", "abelgenr"};
    for (int i = 0; i < 10; ++i)
      if (s == names[i]) return {static_cast<SpecialKind>(i), r, m};
    throw std::invalid_argument("unknown special family: " + s);
  }
};

/// Board realizing row n of a special family (n >= effective r).
inline SkylineBoard special_board(const SpecialFamily& f, int n) {
  const int r = f.effective_r();
  switch (f.kind) {
    case SpecialKind::Stirling2:
    case SpecialKind::Stirling2R:
    case SpecialKind::Stirling1:
    case SpecialKind::Stirling1R:
      return staircase(n, r);
    case SpecialKind::Lah:
    case SpecialKind::LahR:
      return rectangle(n + r - 1, n - r);
    default: {
      const int h = (f.kind == SpecialKind::AbelGen || f.kind == SpecialKind::AbelGenR) ? f.m : n;
      std::vector<int> c(n, h);
      for (int i = 0; i < std::min(r, n); ++i) c[i] = 0;
      return SkylineBoard(std::move(c));
    }
  }
}

/// The r-restricted Lah numbers are rook numbers at (aq^{2(1-r)}, bq^{1-r}).
inline int special_shift(const SpecialFamily& f) { return f.kind == SpecialKind::LahR ? 1 - f.r : 0; }

/// Generic evaluation with weight map w: T(0)/T(1) seeds below the board range.
template <class T, class W>
T special_value(const SpecialFamily& f, int n, int k, const W& w) {
  const int r = f.effective_r();
  if (n < r) {
    const bool seed = f.kind != SpecialKind::Abel && f.kind != SpecialKind::AbelR && f.kind != SpecialKind::AbelGen &&
                      f.kind != SpecialKind::AbelGenR;
    return (seed || n == 0) && n == r - 1 && k == r - 1 ? T(1) : T(0);
  }
  if (k < 0 || k > n) return T(0);
  const SkylineBoard B = special_board(f, n);
  if (f.uses_rooks()) return placement_weight_sum<T>(B, PlacementKind::rook(), n - k, w);
  return file_weight_sums<T>(B, n - k, w).row_only;
}

inline cplx special_number(const SpecialFamily& f, const WeightFamily& fam, int n, int k) {
  return special_value<cplx>(f, n, k, SmallWeights(shifted(fam, special_shift(f))));
}

/// Sum of |weight| behind special_number.
inline double special_scale(const SpecialFamily& f, const WeightFamily& fam, int n, int k) {
  SmallWeights w(shifted(fam, special_shift(f)));
  return special_value<double>(f, n, k, [&w](long j) { return std::abs(w(j)); });
}

/// Rows 0..n_max by the family's recursion, seeded with the board values at n = r
/// (n = 0 for the unrestricted kinds). Abel kinds have no row recursion and are not accepted.
inline std::vector<std::vector<cplx>> special_table_via_recursion(const SpecialFamily& f, const WeightFamily& fam,
                                                                  int n_max) {
  const int r = f.effective_r();
  const int n0 = f.restricted() ? r : 0;
  std::vector<std::vector<cplx>> t(n_max + 1);
  for (int n = 0; n <= std::min(n0, n_max); ++n) {
    t[n].assign(n + 1, cplx(0.0));
    for (int k = 0; k <= n; ++k) t[n][k] = special_number(f, fam, n, k);
  }
  for (int n = n0; n < n_max; ++n) {
    std::vector<cplx>& row = t[n + 1];
    row.assign(n + 2, cplx(0.0));
    const auto prev = [&](int k) { return k >= 0 && k <= n ? t[n][k] : cplx(0.0); };
    for (int k = 0; k <= n + 1; ++k) {
      switch (f.kind) {
        case SpecialKind::Stirling2:
        case SpecialKind::Stirling2R:
          if (k >= 1 && prev(k - 1) != cplx(0.0)) row[k] += big_weight(fam, static_cast<long>(k - 1)) * prev(k - 1);
          if (prev(k) != cplx(0.0)) row[k] += elliptic_number(fam, static_cast<long>(k)) * prev(k);
          break;
        case SpecialKind::Lah:
        case SpecialKind::LahR: {
          const WeightFamily g = shifted(fam, -n);
          if (k >= 1 && prev(k - 1) != cplx(0.0)) row[k] += big_weight(g, static_cast<long>(n + k - 1)) * prev(k - 1);
          if (prev(k) != cplx(0.0)) row[k] += elliptic_number(g, static_cast<long>(n + k)) * prev(k);
          break;
        }
        case SpecialKind::Stirling1:
        case SpecialKind::Stirling1R: {
          const WeightFamily g = shifted(fam, -n);
          if (prev(k) != cplx(0.0)) row[k] += elliptic_number(g, static_cast<long>(n)) * prev(k);
          if (k >= 1 && prev(k - 1) != cplx(0.0)) row[k] += big_weight(g, static_cast<long>(n)) * prev(k - 1);
          break;
        }
        default:
          throw std::invalid_argument("no row recursion for " + f.name());
      }
    }
  }
  return t;
}

// Named numbers.

inline cplx stirling2(const WeightFamily& fam, int n, int k) { return special_number({SpecialKind::Stirling2}, fam, n, k); }
inline cplx stirling2_r(const WeightFamily& fam, int n, int k, int r) {
  return special_number({SpecialKind::Stirling2R, r}, fam, n, k);
}
inline cplx lah(const WeightFamily& fam, int n, int k) { return special_number({SpecialKind::Lah}, fam, n, k); }
inline cplx lah_r(const WeightFamily& fam, int n, int k, int r) { return special_number({SpecialKind::LahR, r}, fam, n, k); }
/// r-restricted Lah board rook number without the parameter shift.
inline cplx lah_r_unshifted(const WeightFamily& fam, int n, int k, int r) {
  return lah_r(shifted(fam, r - 1), n, k, r);
}
inline cplx stirling1(const WeightFamily& fam, int n, int k) { return special_number({SpecialKind::Stirling1}, fam, n, k); }
inline cplx stirling1_r(const WeightFamily& fam, int n, int k, int r) {
  return special_number({SpecialKind::Stirling1R, r}, fam, n, k);
}
inline cplx abel(const WeightFamily& fam, int n, int k) { return special_number({SpecialKind::Abel}, fam, n, k); }
/// RowOnly file numbers of A^{(r)}_{m,n}: r empty columns, then n-r columns of height m.
inline cplx abel_gen(const WeightFamily& fam, int m, int n, int k, int r) {
  return special_number({SpecialKind::AbelGenR, r, m}, fam, n, k);
}

/// C(n-r,k-r) W_{aq^{-2m},bq^{-m}}(m)^{k-r} [m]_{aq^{-2m},bq^{-m}}^{n-k}
inline cplx abel_gen_closed(const WeightFamily& fam, int m, int n, int k, int r) {
  if (k < r || k > n) return cplx(0.0);
  const WeightFamily g = shifted(fam, -m);
  double binom = 1.0;
  for (int j = 1; j <= k - r; ++j) binom = binom * (n - r - j + 1) / j;
  return binom * std::pow(big_weight(g, static_cast<long>(m)), k - r) *
         std::pow(elliptic_number(g, static_cast<long>(m)), n - k);
}
inline cplx abel_closed(const WeightFamily& fam, int n, int k) { return abel_gen_closed(fam, n, n, k, 1); }
inline cplx abel_r_closed(const WeightFamily& fam, int n, int k, int r) { return abel_gen_closed(fam, n, n, k, r); }

/// The small-k evaluations: k = 0..3 only.
inline cplx stirling2_small_k(const WeightFamily& fam, int n, int k) {
  switch (k) {
    case 0:
      return n == 0 ? 1.0 : 0.0;
    case 1:
      return n == 0 ? 0.0 : 1.0;
    case 2:
      return std::pow(elliptic_number(fam, 2L), n - 1) - 1.0;
    case 3: {
      const cplx two_s = elliptic_number(shifted(fam, 1), 2L);
      return (std::pow(elliptic_number(fam, 3L), n - 1) - two_s * std::pow(elliptic_number(fam, 2L), n - 1) +
              small_weight(fam, 2L)) /
             two_s;
    }
    default:
      throw std::invalid_argument("stirling2_small_k: k > 3 has no known closed form");
  }
}

/// Carlitz's q-Stirling numbers of the second kind.
template <class T>
T carlitz_stirling2_q(int n, int k, const T& q) {
  T s(0);
  for (int j = 0; j <= k; ++j) {
    T term = ipow(q, static_cast<long>(j) * (j - 1) / 2) * q_binomial(q, k, j) * ipow(q_number(q, k - j), n);
    if (j % 2) s -= term;
    else s += term;
  }
  return s / q_factorial(q, k);
}

/// a;q Lah numbers in closed form.
inline cplx lah_aq_closed(int n, int k, cplx a, cplx q) {
  if (k < 1 || k > n) return n == 0 && k == 0 ? 1.0 : 0.0;
  const cplx q2 = q * q;
  const long e = static_cast<long>(k) * (k - 1) / 2 - static_cast<long>(n) * (n - 1) / 2 - static_cast<long>(n) * (k - 1);
  cplx r = ipow(q, e) * q_binomial(q, n, k) * q_factorial(q, n - 1) / q_factorial(q, k - 1);
  r *= q_pochhammer(a * ipow(q, k - n + 1), q, n + k);
  const cplx d = q_pochhammer(a * ipow(q, 3 - 2 * n), q2, n) * q_pochhammer(a * q2, q2, k);
  if (std::abs(d) < pole_threshold) throw PoleEncountered("lah_aq_closed: vanishing denominator");
  return r / d;
}

template <class T>
T lah_q_closed(int n, int k, const T& q) {
  if (k < 1 || k > n) return n == 0 && k == 0 ? T(1) : T(0);
  return ipow(q, static_cast<long>(k) * (k - 1)) * q_binomial(q, n, k) * q_factorial(q, n - 1) / q_factorial(q, k - 1);
}

inline cplx lah_r_aq_closed(int n, int k, int r, cplx a, cplx q) {
  if (k < r || k > n) return cplx(0.0);
  const cplx q2 = q * q;
  const long e = static_cast<long>(k) * (k - 1) / 2 - static_cast<long>(n) * (n - 1) / 2 -
                 static_cast<long>(n) * (k - 1) + static_cast<long>(r) * (r - 1);
  cplx v = ipow(q, e) * q_binomial(q, n + r - 1, k + r - 1) * q_factorial(q, n - r) / q_factorial(q, k - r);
  v *= q_pochhammer(a * ipow(q, 1 - n + k), q, n - k) * q_pochhammer(a * ipow(q, 1 + 2 * r), q2, k - r);
  const cplx d = q_pochhammer(a * ipow(q, 3 - 2 * n), q2, n - r);
  if (std::abs(d) < pole_threshold) throw PoleEncountered("lah_r_aq_closed: vanishing denominator");
  return v / d;
}

template <class T>
T lah_r_q_closed(int n, int k, int r, const T& q) {
  if (k < r || k > n) return T(0);
  return ipow(q, static_cast<long>(k) * (k - 1) - static_cast<long>(r) * (r - 1)) *
         q_binomial(q, n + r - 1, k + r - 1) * q_factorial(q, n - r) / q_factorial(q, k - r);
}

}  // namespace ellrook
