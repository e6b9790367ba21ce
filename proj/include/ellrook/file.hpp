#pragma once

#include <vector>

#include "ellrook/rook.hpp"

namespace ellrook {

enum class FileWeighting { RowOnly, AboveRook };

template <class T>
struct FileSums {
  T row_only;
  T above_rook;

  friend FileSums operator*(const FileSums& x, const FileSums& y) {
    return {x.row_only * y.row_only, x.above_rook * y.above_rook};
  }
  const T& get(FileWeighting wt) const { return wt == FileWeighting::RowOnly ? row_only : above_rook; }
};

/// Both file weightings over F_k(B) in one pass:
/// RowOnly multiplies w(1-j) over unoccupied cells not below a rook,
/// AboveRook multiplies w(i-j) over cells above a rook.
template <class T, class W>
FileSums<T> file_weight_sums(const SkylineBoard& board, int k, const W& w) {
  FileSums<T> total{T(0), T(0)};
  if (k < 0 || k > board.n()) return total;
  auto column = [&](const detail::ColumnContext& ctx) {
    FileSums<T> f{T(1), T(1)};
    const int top = ctx.available.empty() ? 0 : ctx.available.back();
    for (int j = ctx.rook ? *ctx.rook + 1 : 1; j <= top; ++j) {
      f.row_only *= w(1L - j);
      if (ctx.rook) f.above_rook *= w(static_cast<long>(ctx.col) - j);
    }
    return f;
  };
  for_each_weighted_placement(board, PlacementKind::file(), k, FileSums<T>{T(1), T(1)}, column,
                              [&](const std::vector<std::optional<int>>&, const FileSums<T>& v) {
                                total.row_only += v.row_only;
                                total.above_rook += v.above_rook;
                              });
  return total;
}

inline cplx file_number(const WeightFamily& fam, const SkylineBoard& board, int k,
                        FileWeighting weighting = FileWeighting::RowOnly) {
  return file_weight_sums<cplx>(board, k, SmallWeights(fam)).get(weighting);
}

/// Sum of |weight| over F_k(B).
inline double file_scale(const WeightFamily& fam, const SkylineBoard& board, int k,
                         FileWeighting weighting = FileWeighting::RowOnly) {
  SmallWeights w(fam);
  return file_weight_sums<double>(board, k, [&w](long j) { return std::abs(w(j)); }).get(weighting);
}

inline std::vector<cplx> file_numbers(const WeightFamily& fam, const SkylineBoard& board,
                                      FileWeighting weighting = FileWeighting::RowOnly) {
  SmallWeights w(fam);
  std::vector<cplx> out(board.n() + 1);
  for (int k = 0; k <= board.n(); ++k) out[k] = file_weight_sums<cplx>(board, k, w).get(weighting);
  return out;
}

/// Column appending: f_k <- W_{aq^{-2m},bq^{-m}}(m) f_k + [m]_{same} f_{k-1}.
inline std::vector<cplx> file_numbers_via_recursion(const WeightFamily& fam, const SkylineBoard& board) {
  std::vector<cplx> f{cplx(1.0)};
  for (int l = 0; l < board.n(); ++l) {
    const int m = board.heights[l];
    const WeightFamily g = shifted(fam, -m);
    const cplx W = big_weight(g, static_cast<long>(m)), N = elliptic_number(g, static_cast<long>(m));
    std::vector<cplx> next(l + 2, cplx(0.0));
    for (int k = 0; k <= l + 1; ++k) {
      if (k <= l) next[k] += W * f[k];
      if (k >= 1) next[k] += N * f[k - 1];
    }
    f = std::move(next);
  }
  return f;
}

inline cplx file_number_via_recursion(const WeightFamily& fam, const SkylineBoard& board, int k) {
  if (k < 0 || k > board.n()) return cplx(0.0);
  return file_numbers_via_recursion(fam, board)[k];
}

/// lhs: prod_i [z+c_i]_{aq^{-2c_i},bq^{-c_i}}; rhs: sum_k f_{n-k} [z]^k.
inline IdentitySides file_product_sides(const WeightFamily& fam, const SkylineBoard& board, cplx z) {
  const int n = board.n();
  SmallWeights w(fam);
  AbsWeights aw(w);
  const cplx Z = elliptic_number(fam, z);
  IdentitySides s{cplx(1.0), cplx(0.0), 0.0};
  for (int c : board.heights) s.lhs *= elliptic_number(shifted(fam, -c), z + static_cast<double>(c));
  for (int k = 0; k <= n; ++k) {
    s.rhs += file_weight_sums<cplx>(board, n - k, w).row_only * std::pow(Z, k);
    s.scale += file_weight_sums<double>(board, n - k, aw).row_only * std::pow(std::abs(Z), k);
  }
  return s;
}

/// lhs: prod_i ([z] + [c_i]_{aq^{2(i-1-c_i)},bq^{i-1-c_i}}); rhs: sum_k f~_{n-k} [z]^k.
inline IdentitySides file_above_product_sides(const WeightFamily& fam, const SkylineBoard& board, cplx z) {
  const int n = board.n();
  SmallWeights w(fam);
  AbsWeights aw(w);
  const cplx Z = elliptic_number(fam, z);
  IdentitySides s{cplx(1.0), cplx(0.0), 0.0};
  for (int i = 1; i <= n; ++i) {
    const int c = board.height(i);
    s.lhs *= Z + elliptic_number(shifted(fam, i - 1 - c), static_cast<long>(c));
  }
  for (int k = 0; k <= n; ++k) {
    s.rhs += file_weight_sums<cplx>(board, n - k, w).above_rook * std::pow(Z, k);
    s.scale += file_weight_sums<double>(board, n - k, aw).above_rook * std::pow(std::abs(Z), k);
  }
  return s;
}

}  // namespace ellrook
