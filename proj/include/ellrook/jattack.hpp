#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ellrook/file.hpp"
#include "ellrook/rook.hpp"

namespace ellrook {

inline cplx rook_number_j(const WeightFamily& fam, const SkylineBoard& board, int k, int J) {
  if (!board.is_j_attacking(J)) throw NotJAttackingBoard("board " + board.to_string() + " is not J-attacking");
  if (k < 0 || k > board.n()) return cplx(0.0);
  return placement_weight_sum<cplx>(board, PlacementKind::jattack(J), k, SmallWeights(fam));
}

inline double rook_scale_j(const WeightFamily& fam, const SkylineBoard& board, int k, int J) {
  if (k < 0 || k > board.n()) return 0.0;
  SmallWeights w(fam);
  return placement_weight_sum<double>(board, PlacementKind::jattack(J), k, [&w](long j) { return std::abs(w(j)); });
}

/// prod_{j=1}^k [z-J(j-1)]_{aq^{2J(j-1)},bq^{J(j-1)}}
inline cplx j_falling(const WeightFamily& fam, cplx z, int k, int J) {
  cplx r(1.0);
  for (int j = 1; j <= k; ++j) r *= elliptic_number(shifted(fam, J * (j - 1)), z - static_cast<double>(J * (j - 1)));
  return r;
}

/// lhs: prod_i [z+b_i-J(i-1)]_{aq^{2(J(i-1)-b_i)},bq^{J(i-1)-b_i}}; rhs: sum_k r^J_{n-k} * j_falling.
inline IdentitySides jump_product_sides(const WeightFamily& fam, const SkylineBoard& board, int J, cplx z) {
  if (!board.is_j_attacking(J)) throw NotJAttackingBoard("board " + board.to_string() + " is not J-attacking");
  const int n = board.n();
  SmallWeights w(fam);
  AbsWeights aw(w);
  IdentitySides s{cplx(1.0), cplx(0.0), 0.0};
  for (int i = 1; i <= n; ++i) {
    const int b = board.height(i), t = J * (i - 1) - b;
    s.lhs *= elliptic_number(shifted(fam, t), z + static_cast<double>(b - J * (i - 1)));
  }
  for (int k = 0; k <= n; ++k) {
    const cplx f = j_falling(fam, z, k, J);
    s.rhs += placement_weight_sum<cplx>(board, PlacementKind::jattack(J), n - k, w) * f;
    s.scale += placement_weight_sum<double>(board, PlacementKind::jattack(J), n - k, aw) * std::abs(f);
  }
  return s;
}

/// Sum of wt^J over the n-rook placements of the extended board B_z (integer z, wrap rule below ground).
inline cplx jump_extended_sum(const WeightFamily& fam, const SkylineBoard& board, int J, int z, double* scale = nullptr) {
  SmallWeights w(fam);
  const ExtendedBoard B(board, z);
  if (scale) *scale = placement_weight_sum<double>(B, PlacementKind::jattack(J), board.n(), AbsWeights(w));
  return placement_weight_sum<cplx>(B, PlacementKind::jattack(J), board.n(), w);
}

// Generalized Stirling numbers of the second kind on B_{I,J,n}.

inline cplx gen_stirling2(const WeightFamily& fam, int I, int J, int n, int k) {
  if (k < 0 || k > n) return cplx(0.0);
  if (n == 0) return cplx(1.0);
  return rook_number_j(fam, ij_board(I, J, n), n - k, J);
}

/// prod_{j=1}^k W_{aq^{-2I},bq^{-I}}(I+(j-1)J): the factor separating S~ from S.
inline cplx gen_stirling2_prefactor(const WeightFamily& fam, int I, int J, int k) {
  const WeightFamily g = shifted(fam, -I);
  cplx r(1.0);
  for (int j = 1; j <= k; ++j) r *= big_weight(g, static_cast<long>(I + (j - 1) * J));
  return r;
}

inline cplx gen_stirling2_normalized(const WeightFamily& fam, int I, int J, int n, int k) {
  return gen_stirling2(fam, I, J, n, k) / gen_stirling2_prefactor(fam, I, J, k);
}

/// Rows 0..n_max of S~ from S~_{n+1,k} = W(I+(k-1)J) S~_{n,k-1} + [I+kJ] S~_{n,k} at (aq^{-2I},bq^{-I}).
inline std::vector<std::vector<cplx>> gen_stirling2_via_recursion(const WeightFamily& fam, int I, int J, int n_max) {
  const WeightFamily g = shifted(fam, -I);
  std::vector<std::vector<cplx>> t{{cplx(1.0)}};
  for (int n = 0; n < n_max; ++n) {
    std::vector<cplx> row(n + 2, cplx(0.0));
    for (int k = 0; k <= n + 1; ++k) {
      if (k >= 1) row[k] += big_weight(g, static_cast<long>(I + (k - 1) * J)) * t[n][k - 1];
      if (k <= n) row[k] += elliptic_number(g, static_cast<long>(I + k * J)) * t[n][k];
    }
    t.push_back(std::move(row));
  }
  return t;
}

// Generalized Stirling numbers of the first kind: AboveRook file numbers on B_{I,J,n}.

inline cplx gen_stirling1(const WeightFamily& fam, int I, int J, int n, int k) {
  if (k < 0 || k > n) return cplx(0.0);
  if (n == 0) return cplx(1.0);
  return file_number(fam, ij_board(I, J, n), n - k, FileWeighting::AboveRook);
}

/// c_{n+1,k} = c_{n,k-1} + [I+nJ]_{aq^{-2(I+n(J-1))},bq^{-(I+n(J-1))}} c_{n,k}.
inline std::vector<std::vector<cplx>> gen_stirling1_via_recursion(const WeightFamily& fam, int I, int J, int n_max) {
  std::vector<std::vector<cplx>> t{{cplx(1.0)}};
  for (int n = 0; n < n_max; ++n) {
    const cplx N = elliptic_number(shifted(fam, -(I + n * (J - 1))), static_cast<long>(I + n * J));
    std::vector<cplx> row(n + 2, cplx(0.0));
    for (int k = 0; k <= n + 1; ++k) {
      if (k >= 1) row[k] += t[n][k - 1];
      if (k <= n) row[k] += N * t[n][k];
    }
    t.push_back(std::move(row));
  }
  return t;
}

// Colored restricted growth words.

struct RGWord {
  int I = 0, J = 1;
  std::vector<int> w;  // w_0..w_n with w_0 = 0
  std::vector<int> e;  // e_1..e_n

  int n() const { return static_cast<int>(e.size()); }
  int k() const { return *std::max_element(w.begin(), w.end()); }

  /// Positions s whose letter exceeds every earlier letter.
  std::vector<bool> max_positions() const {
    std::vector<bool> out(w.size(), false);
    int m = 0;
    for (std::size_t s = 1; s < w.size(); ++s) {
      if (w[s] > m) out[s] = true;
      m = std::max(m, w[s]);
    }
    return out;
  }

  bool valid() const {
    if (w.empty() || w[0] != 0 || e.size() + 1 != w.size()) return false;
    int m = 0;
    for (std::size_t s = 1; s < w.size(); ++s) {
      const int c = e[s - 1];
      if (w[s] < 0 || w[s] > m + 1 || c < 0) return false;
      if (w[s] > m) {
        if (c != 0) return false;
        m = w[s];
      } else if (w[s] == 0 ? c >= I : c >= J) {
        return false;
      }
    }
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int x : w) os << x;
    os << ':';
    for (int x : e) os << x;
    return os.str();
  }

  friend bool operator==(const RGWord&, const RGWord&) = default;
};

namespace detail {

inline void require_rg_range(int I, int J) {
  if (I < 0 || J < 1 || I > J) throw std::invalid_argument("RG words need 0 <= I <= J");
}

}  // namespace detail

/// All words of RG^{I,J}_{n,k}; k < 0 enumerates every k.
inline std::vector<RGWord> enumerate_rg_words(int I, int J, int n, int k = -1) {
  detail::require_rg_range(I, J);
  std::vector<RGWord> out;
  RGWord cur{I, J, {0}, {}};
  auto rec = [&](auto&& self, int m) -> void {
    if (cur.n() == n) {
      if (k < 0 || m == k) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= m + 1; ++v) {
      const int colors = v > m ? 1 : (v == 0 ? I : J);
      for (int c = 0; c < colors; ++c) {
        cur.w.push_back(v);
        cur.e.push_back(c);
        self(self, std::max(m, v));
        cur.w.pop_back();
        cur.e.pop_back();
      }
    }
  };
  rec(rec, 0);
  return out;
}

/// Rook in column s at the (I + w_s J - e_s)-th non-attacked cell from the bottom, if it exists.
inline Placement phi(const RGWord& g) {
  const SkylineBoard board = ij_board(g.I, g.J, g.n());
  Placement P{PlacementKind::jattack(g.J), board, std::vector<std::optional<int>>(g.n())};
  std::set<int> attacked;
  for (int s = 1; s <= g.n(); ++s) {
    std::vector<int> avail;
    for (int t = 1; t <= board.height(s); ++t)
      if (!attacked.count(t)) avail.push_back(t);
    const int idx = g.I + g.w[s] * g.J - g.e[s - 1];
    if (idx >= 1 && idx <= static_cast<int>(avail.size())) {
      const int rho = avail[idx - 1];
      P.rows[s - 1] = rho;
      for (int t : detail::attack_rows(attacked, rho, g.J, 0)) attacked.insert(t);
    }
  }
  return P;
}

inline RGWord phi_inverse(const Placement& P, int I, int J) {
  detail::require_rg_range(I, J);
  RGWord g{I, J, {0}, {}};
  std::set<int> attacked;
  int m = 0;
  for (int s = 1; s <= P.board.n(); ++s) {
    const auto& rook = P.rows[s - 1];
    if (!rook) {
      g.w.push_back(++m);
      g.e.push_back(0);
      continue;
    }
    int idx = 0;
    for (int t = 1; t <= *rook; ++t) idx += !attacked.count(t);
    if (idx <= I) {
      g.w.push_back(0);
      g.e.push_back(I - idx);
    } else {
      const int v = (idx - I + J - 1) / J;
      g.w.push_back(v);
      g.e.push_back(I + v * J - idx);
    }
    for (int t : detail::attack_rows(attacked, *rook, J, 0)) attacked.insert(t);
  }
  return g;
}

/// prod over non-record positions s of W_{aq^{-2I},bq^{-I}}(J |{t<s : w_t > w_s, t record}| + e_s).
inline cplx rg_word_weight(const WeightFamily& fam, const RGWord& g) {
  const WeightFamily h = shifted(fam, -g.I);
  const auto rec = g.max_positions();
  cplx r(1.0);
  for (int s = 1; s <= g.n(); ++s) {
    if (rec[s]) continue;
    int c = 0;
    for (int t = 1; t < s; ++t) c += rec[t] && g.w[t] > g.w[s];
    r *= big_weight(h, static_cast<long>(g.J * c + g.e[s - 1]));
  }
  return r;
}

inline cplx statistic_D(const WeightFamily& fam, int I, int J, int n, int k) {
  cplx r(0.0);
  for (const RGWord& g : enumerate_rg_words(I, J, n, k)) r += rg_word_weight(fam, g);
  return r;
}

}  // namespace ellrook
