#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ellrook/errors.hpp"

namespace ellrook {

/// B(c_1,...,c_n): column i holds rows 1..c_i.
struct SkylineBoard {
  std::vector<int> heights;

  SkylineBoard() = default;
  explicit SkylineBoard(std::vector<int> h) : heights(std::move(h)) {
    for (int c : heights)
      if (c < 0) throw BadBoardSpec("negative column height");
  }

  int n() const { return static_cast<int>(heights.size()); }
  int height(int col) const { return heights[col - 1]; }
  int max_height() const { return heights.empty() ? 0 : *std::max_element(heights.begin(), heights.end()); }

  long area() const {
    long s = 0;
    for (int c : heights) s += c;
    return s;
  }

  bool is_ferrers() const { return std::is_sorted(heights.begin(), heights.end()); }

  bool is_j_attacking(int J) const {
    for (int i = 0; i + 1 < n(); ++i)
      if (heights[i] != 0 && heights[i + 1] < heights[i] + J - 1) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < n(); ++i) os << (i ? "," : "") << heights[i];
    return os.str();
  }

  /// Parses "0,2,3,5,5"; the empty string is the empty board.
  static SkylineBoard parse(const std::string& s) {
    std::vector<int> h;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      int v;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw BadBoardSpec("bad board literal: " + s);
      }
      if (used != tok.size() || v < 0) throw BadBoardSpec("bad board literal: " + s);
      h.push_back(v);
    }
    return SkylineBoard(std::move(h));
  }

  friend bool operator==(const SkylineBoard&, const SkylineBoard&) = default;
};

inline SkylineBoard rectangle(int columns, int height) { return SkylineBoard(std::vector<int>(columns, height)); }

inline SkylineBoard staircase(int n, int r = 1) {
  std::vector<int> h(n);
  for (int i = 0; i < n; ++i) h[i] = i < r ? 0 : i;
  return SkylineBoard(std::move(h));
}

/// B(I, I+J, ..., I+(n-1)J).
inline SkylineBoard ij_board(int I, int J, int n) {
  std::vector<int> h(n);
  for (int i = 0; i < n; ++i) h[i] = I + i * J;
  return SkylineBoard(std::move(h));
}

struct Cell {
  int col;
  int row;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct PlacementKind {
  enum Tag { NonattackingRook, File, JNonattacking } tag = NonattackingRook;
  int J = 1;

  static PlacementKind rook() { return {NonattackingRook, 1}; }
  static PlacementKind file() { return {File, 1}; }
  static PlacementKind jattack(int J) { return {JNonattacking, J}; }

  /// Attack width used by the engine: ordinary rooks attack exactly their own row.
  int width() const { return tag == JNonattacking ? J : 1; }
  friend bool operator==(const PlacementKind&, const PlacementKind&) = default;
};

/// Base board with `depth` rows 0, -1, ..., 1-depth appended below the ground.
struct ExtendedBoard {
  SkylineBoard base;
  int depth = 0;

  ExtendedBoard() = default;
  ExtendedBoard(SkylineBoard b, int d = 0) : base(std::move(b)), depth(d) {  // NOLINT(google-explicit-constructor)
    if (d < 0) throw BadBoardSpec("negative depth");
  }
  int n() const { return base.n(); }
  int lowest_row() const { return 1 - depth; }
  int top(int col) const { return base.height(col); }
};

/// One optional rook per column; column-major.
struct Placement {
  PlacementKind kind;
  ExtendedBoard board;
  std::vector<std::optional<int>> rows;

  int size() const {
    int c = 0;
    for (const auto& r : rows) c += r.has_value();
    return c;
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (rows[i]) out.push_back({i + 1, *rows[i]});
    return out;
  }
};

namespace detail {

/// Rows J-attacked by a rook at `rho`, given rows already attacked by rooks to its left.
inline std::vector<int> attack_rows(const std::set<int>& attacked, int rho, int J, int depth) {
  std::vector<int> out;
  int t = rho;
  if (rho >= 1) {
    for (; static_cast<int>(out.size()) < J; ++t)
      if (!attacked.count(t)) out.push_back(t);
    return out;
  }
  for (; static_cast<int>(out.size()) < J && t <= 0; ++t)
    if (!attacked.count(t)) out.push_back(t);
  // wrap: fewer than J free rows up to the ground, continue below the rook
  for (t = rho - 1; static_cast<int>(out.size()) < J && t >= 1 - depth; --t)
    if (!attacked.count(t)) out.push_back(t);
  return out;
}

/// Everything a column-weight functor may need when the engine fixes column `col`.
struct ColumnContext {
  int col;                                      // 1-based
  std::optional<int> rook;                      // row of the rook in this column
  const std::vector<std::optional<int>>& left;  // rows chosen in columns 1..col-1
  const std::vector<int>& available;            // ascending rows of this column not attacked from the left
  int J;
};

template <class Acc, class Factor, class Leaf>
void dfs(const ExtendedBoard& B, PlacementKind kind, int k, int col, int placed, std::set<int>& attacked,
         std::vector<std::optional<int>>& rows, const Acc& acc, Factor& factor, Leaf& leaf) {
  const int n = B.n();
  if (col > n) {
    if (placed == k) leaf(rows, acc);
    return;
  }
  const int remaining_cols = n - col + 1;
  std::vector<int> avail;
  for (int t = B.lowest_row(); t <= B.top(col); ++t)
    if (kind.tag == PlacementKind::File || !attacked.count(t)) avail.push_back(t);
  if (remaining_cols > k - placed) {
    ColumnContext ctx{col, std::nullopt, rows, avail, kind.width()};
    Acc next = acc * factor(ctx);
    rows.push_back(std::nullopt);
    dfs(B, kind, k, col + 1, placed, attacked, rows, next, factor, leaf);
    rows.pop_back();
  }
  if (placed < k) {
    for (int rho : avail) {
      ColumnContext ctx{col, rho, rows, avail, kind.width()};
      Acc next = acc * factor(ctx);
      std::vector<int> added;
      if (kind.tag != PlacementKind::File) {
        added = attack_rows(attacked, rho, kind.width(), B.depth);
        attacked.insert(added.begin(), added.end());
      }
      rows.push_back(rho);
      dfs(B, kind, k, col + 1, placed + 1, attacked, rows, next, factor, leaf);
      rows.pop_back();
      for (int t : added) attacked.erase(t);
    }
  }
}

inline void require_kind_precondition(const SkylineBoard& b, PlacementKind kind) {
  if (kind.tag == PlacementKind::JNonattacking && !b.is_j_attacking(kind.J))
    throw NotJAttackingBoard("board " + b.to_string() + " is not " + std::to_string(kind.J) + "-attacking");
}

struct Unit {
  friend Unit operator*(Unit, Unit) { return {}; }
};

}  // namespace detail

/// Column-by-column backtracking; `weight(ctx)` is multiplied in as each column is fixed,
/// and `leaf(rows, product)` is called once per complete placement of k rooks.
template <class Acc, class Factor, class Leaf>
void for_each_weighted_placement(const ExtendedBoard& B, PlacementKind kind, int k, const Acc& one, Factor&& weight,
                                 Leaf&& leaf) {
  detail::require_kind_precondition(B.base, kind);
  if (k < 0 || k > B.n()) return;
  std::set<int> attacked;
  std::vector<std::optional<int>> rows;
  rows.reserve(B.n());
  detail::dfs(B, kind, k, 1, 0, attacked, rows, one, weight, leaf);
}

template <class Visit>
void for_each_placement(const ExtendedBoard& B, PlacementKind kind, int k, Visit&& visit) {
  for_each_weighted_placement(
      B, kind, k, detail::Unit{}, [](const detail::ColumnContext&) { return detail::Unit{}; },
      [&](const std::vector<std::optional<int>>& rows, detail::Unit) { visit(Placement{kind, B, rows}); });
}

inline std::vector<Placement> enumerate_placements(const ExtendedBoard& B, PlacementKind kind, int k) {
  std::vector<Placement> out;
  for_each_placement(B, kind, k, [&](Placement p) { out.push_back(std::move(p)); });
  return out;
}

inline long count_placements(const ExtendedBoard& B, PlacementKind kind, int k) {
  long c = 0;
  for_each_weighted_placement(
      B, kind, k, detail::Unit{}, [](const detail::ColumnContext&) { return detail::Unit{}; },
      [&](const std::vector<std::optional<int>>&, detail::Unit) { ++c; });
  return c;
}

/// Builds a placement from explicit cells; validates the kind invariants.
inline Placement make_placement(const ExtendedBoard& B, PlacementKind kind, const std::vector<Cell>& cells) {
  Placement P{kind, B, std::vector<std::optional<int>>(B.n())};
  std::set<int> used_rows;
  for (const Cell& c : cells) {
    if (c.col < 1 || c.col > B.n() || c.row < B.lowest_row() || c.row > B.top(c.col))
      throw BadBoardSpec("cell outside board");
    if (P.rows[c.col - 1]) throw BadBoardSpec("two rooks in one column");
    if (kind.tag == PlacementKind::NonattackingRook && !used_rows.insert(c.row).second)
      throw BadBoardSpec("two rooks in one row");
    P.rows[c.col - 1] = c.row;
  }
  if (kind.tag == PlacementKind::JNonattacking) {
    std::set<int> attacked;
    for (int i = 0; i < B.n(); ++i) {
      if (!P.rows[i]) continue;
      if (attacked.count(*P.rows[i])) throw BadBoardSpec("rook is J-attacked");
      for (int t : detail::attack_rows(attacked, *P.rows[i], kind.J, B.depth)) attacked.insert(t);
    }
  }
  return P;
}

/// U_B(P) for the rook and J-attack kinds, each cell with its north-west rook count.
inline std::vector<std::pair<Cell, int>> uncancelled_cells(const Placement& P) {
  std::vector<std::pair<Cell, int>> out;
  std::set<int> attacked;
  const int J = P.kind.width();
  for (int i = 1; i <= P.board.n(); ++i) {
    const auto& rook = P.rows[i - 1];
    for (int j = P.board.lowest_row(); j <= P.board.top(i); ++j) {
      if (attacked.count(j) || (rook && j <= *rook)) continue;
      int nw = 0;
      for (int c = 0; c < i - 1; ++c) nw += P.rows[c] && *P.rows[c] > j;
      out.push_back({{i, j}, nw});
    }
    if (rook)
      for (int t : detail::attack_rows(attacked, *rook, J, P.board.depth)) attacked.insert(t);
  }
  return out;
}

/// Cells neither occupied nor below a rook of a file placement.
inline std::vector<Cell> file_uncancelled_cells(const Placement& Q) {
  std::vector<Cell> out;
  for (int i = 1; i <= Q.board.n(); ++i) {
    const auto& rook = Q.rows[i - 1];
    for (int j = rook ? *rook + 1 : Q.board.lowest_row(); j <= Q.board.top(i); ++j) out.push_back({i, j});
  }
  return out;
}

/// Rows J-attacked by each rook, in column order (the per-rook attack sets).
inline std::vector<std::pair<Cell, std::vector<int>>> j_attack_sets(const ExtendedBoard& B,
                                                                   const std::vector<Cell>& rooks, int J) {
  std::vector<Cell> sorted = rooks;
  std::sort(sorted.begin(), sorted.end());
  std::set<int> attacked;
  std::vector<std::pair<Cell, std::vector<int>>> out;
  for (const Cell& r : sorted) {
    auto rows = detail::attack_rows(attacked, r.row, J, B.depth);
    attacked.insert(rows.begin(), rows.end());
    out.push_back({r, rows});
  }
  return out;
}

/// Cells of the board lying in a J-attacked row strictly right of the attacking rook.
inline std::set<Cell> j_attacked_cells(const ExtendedBoard& B, const std::vector<Cell>& rooks, int J) {
  std::set<Cell> out;
  for (const auto& [r, rows] : j_attack_sets(B, rooks, J))
    for (int c = r.col + 1; c <= B.n(); ++c)
      for (int t : rows)
        if (t >= B.lowest_row() && t <= B.top(c)) out.insert({c, t});
  return out;
}

/// 0 without rooks below the ground, else the depth index 1-row of the lowest rook.
inline int max_stat(const Placement& P) {
  int m = 0;
  for (const auto& r : P.rows)
    if (r && *r <= 0) m = std::max(m, 1 - *r);
  return m;
}

}  // namespace ellrook
