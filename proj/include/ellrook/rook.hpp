#pragma once

#include <cmath>
#include <unordered_map>
#include <vector>

#include "ellrook/boards.hpp"
#include "ellrook/weights.hpp"

namespace ellrook {

/// Memoized small weights w(l) of one family; evaluated lazily.
class SmallWeights {
 public:
  explicit SmallWeights(WeightFamily fam) : fam_(std::move(fam)) {}

  cplx operator()(long l) const {
    auto it = cache_.find(l);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(l, small_weight(fam_, l)).first->second;
  }

  const WeightFamily& family() const { return fam_; }

 private:
  WeightFamily fam_;
  mutable std::unordered_map<long, cplx> cache_;
};

/// Moduli of the memoized weights, for bounding cancellation.
class AbsWeights {
 public:
  explicit AbsWeights(const SmallWeights& w) : w_(w) {}
  double operator()(long l) const { return std::abs(w_(l)); }

 private:
  const SmallWeights& w_;
};

/// Sum over N_k of a rook or J-attack placement kind of prod_U w(J(i-1)+1-j-J r_(i,j)).
/// T may be complex, double, or an exact type; `w` maps an integer to T.
template <class T, class W>
T placement_weight_sum(const ExtendedBoard& B, PlacementKind kind, int k, const W& w) {
  T total(0);
  const int J = kind.width();
  auto column = [&](const detail::ColumnContext& ctx) {
    T f(1);
    for (int j : ctx.available) {
      if (ctx.rook && j <= *ctx.rook) continue;
      int nw = 0;
      for (const auto& r : ctx.left) nw += r && *r > j;
      f *= w(static_cast<long>(J) * (ctx.col - 1) + 1 - j - static_cast<long>(J) * nw);
    }
    return f;
  };
  for_each_weighted_placement(B, kind, k, T(1), column,
                              [&](const std::vector<std::optional<int>>&, const T& v) { total += v; });
  return total;
}

namespace detail {

inline void require_ferrers(const SkylineBoard& b) {
  if (!b.is_ferrers()) throw BadBoardSpec("rook numbers require a Ferrers board, got " + b.to_string());
}

}  // namespace detail

/// wt(P) = prod over U_B(P) of w(i - j - r_(i,j)(P)).
inline cplx rook_weight(const WeightFamily& fam, const Placement& P) {
  cplx r(1.0);
  const int J = P.kind.width();
  for (const auto& [c, nw] : uncancelled_cells(P)) r *= small_weight(fam, static_cast<long>(J) * (c.col - 1) + 1 - c.row - J * nw);
  return r;
}

inline cplx rook_number(const WeightFamily& fam, const SkylineBoard& board, int k) {
  detail::require_ferrers(board);
  if (k < 0 || k > board.n()) return cplx(0.0);
  return placement_weight_sum<cplx>(board, PlacementKind::rook(), k, SmallWeights(fam));
}

/// Sum of |weight| over the k-rook placements: the cancellation scale of r_k.
inline double rook_scale(const WeightFamily& fam, const SkylineBoard& board, int k) {
  SmallWeights w(fam);
  return placement_weight_sum<double>(board, PlacementKind::rook(), k, [&w](long j) { return std::abs(w(j)); });
}

inline std::vector<cplx> rook_numbers(const WeightFamily& fam, const SkylineBoard& board) {
  detail::require_ferrers(board);
  SmallWeights w(fam);
  std::vector<cplx> r(board.n() + 1);
  for (int k = 0; k <= board.n(); ++k) r[k] = placement_weight_sum<cplx>(board, PlacementKind::rook(), k, w);
  return r;
}

/// Builds the board column by column: appending a column of height m to l columns gives
/// r_k <- W_{aq^{2(l-m)},bq^{l-m}}(m-k) r_k + [m-k+1]_{same} r_{k-1}.
inline std::vector<cplx> rook_numbers_via_recursion(const WeightFamily& fam, const SkylineBoard& board) {
  detail::require_ferrers(board);
  std::vector<cplx> r{cplx(1.0)};
  for (int l = 0; l < board.n(); ++l) {
    const int m = board.heights[l];
    const WeightFamily g = shifted(fam, l - m);
    std::vector<cplx> next(l + 2, cplx(0.0));
    for (int k = 0; k <= l + 1; ++k) {
      if (k <= l && r[k] != cplx(0.0)) next[k] += big_weight(g, static_cast<long>(m - k)) * r[k];
      if (k >= 1 && r[k - 1] != cplx(0.0)) next[k] += elliptic_number(g, static_cast<long>(m - k + 1)) * r[k - 1];
    }
    r = std::move(next);
  }
  return r;
}

inline cplx rook_number_via_recursion(const WeightFamily& fam, const SkylineBoard& board, int k) {
  if (k < 0 || k > board.n()) return cplx(0.0);
  return rook_numbers_via_recursion(fam, board)[k];
}

/// prod_{j=1}^k [z-j+1]_{aq^{2(j-1)},bq^{j-1}}
inline cplx elliptic_falling(const WeightFamily& fam, cplx z, int k) {
  cplx r(1.0);
  for (int j = 1; j <= k; ++j) r *= elliptic_number(shifted(fam, j - 1), z - static_cast<double>(j - 1));
  return r;
}

/// lhs: sum_k r_{n-k} * falling product; rhs: prod_i [z+b_i-i+1]_{aq^{2(i-1-b_i)},bq^{i-1-b_i}}.
inline IdentitySides product_formula_sides(const WeightFamily& fam, const SkylineBoard& board, cplx z) {
  detail::require_ferrers(board);
  const int n = board.n();
  SmallWeights w(fam);
  AbsWeights aw(w);
  IdentitySides s{cplx(0.0), cplx(1.0), 0.0};
  for (int k = 0; k <= n; ++k) {
    const cplx f = elliptic_falling(fam, z, k);
    s.lhs += placement_weight_sum<cplx>(board, PlacementKind::rook(), n - k, w) * f;
    s.scale += placement_weight_sum<double>(board, PlacementKind::rook(), n - k, aw) * std::abs(f);
  }
  for (int i = 1; i <= n; ++i) {
    const int b = board.height(i);
    s.rhs *= elliptic_number(shifted(fam, i - 1 - b), z + static_cast<double>(b - i + 1));
  }
  return s;
}

/// Sum over n-rook placements of B_k (max(P) <= k) vs prod_i [k+b_i-i+1] at shifted parameters.
inline IdentitySides max_identity_sides(const WeightFamily& fam, const SkylineBoard& board, int k) {
  detail::require_ferrers(board);
  SmallWeights w(fam);
  AbsWeights aw(w);
  const ExtendedBoard B(board, k);
  IdentitySides s{placement_weight_sum<cplx>(B, PlacementKind::rook(), board.n(), w), cplx(1.0),
                  placement_weight_sum<double>(B, PlacementKind::rook(), board.n(), aw)};
  for (int i = 1; i <= board.n(); ++i) {
    const int b = board.height(i);
    s.rhs *= elliptic_number(shifted(fam, i - 1 - b), static_cast<long>(k + b - i + 1));
  }
  return s;
}

/// prod_i [b_i - i + 1]_{aq^{2(i-1-b_i)},bq^{i-1-b_i}}: the full-placement rook number.
inline cplx rook_number_full_product(const WeightFamily& fam, const SkylineBoard& board) {
  cplx r(1.0);
  for (int i = 1; i <= board.n(); ++i) {
    const int b = board.height(i);
    r *= elliptic_number(shifted(fam, i - 1 - b), static_cast<long>(b - i + 1));
  }
  return r;
}

/// Closed form of the a;q rook numbers of the l x m rectangle ([l] columns of height m).
inline cplx rect_rook_number_aq(int l, int m, int k, cplx a, cplx q) {
  if (k < 0 || k > std::min(l, m)) return cplx(0.0);
  const cplx q2 = q * q;
  cplx r = ipow(q, static_cast<long>(k) * (k + 1) / 2 - static_cast<long>(l) * m);
  r *= q_binomial(q, l, k) * q_factorial(q, m) / q_factorial(q, m - k);
  r *= q_pochhammer(a * ipow(q, l - m - k), q, k) * q_pochhammer(a * ipow(q, 1 + 2 * l - 2 * m), q2, m - k);
  const cplx d = q_pochhammer(a * ipow(q, 1 - 2 * m), q2, m);
  if (std::abs(d) < pole_threshold) throw PoleEncountered("rect_rook_number_aq: vanishing denominator");
  return r / d;
}

/// Garsia-Remmel q-rook number sum_P q^{u_B(P)}; exact for exact T.
template <class T>
T q_rook_number(const SkylineBoard& board, int k, const T& q) {
  detail::require_ferrers(board);
  if (k < 0 || k > board.n()) return T(0);
  return placement_weight_sum<T>(board, PlacementKind::rook(), k, [&q](long) { return q; });
}

}  // namespace ellrook
