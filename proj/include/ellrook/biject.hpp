#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ellrook/boards.hpp"

namespace ellrook {

// Set partitions from rook placements on St_n.

using SetPartition = std::vector<std::vector<int>>;

inline SetPartition canonical_partition(SetPartition p) {
  for (auto& b : p) std::sort(b.begin(), b.end());
  std::sort(p.begin(), p.end());
  return p;
}

inline std::string to_string(const SetPartition& p) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << (i ? ",{" : "{");
    for (std::size_t j = 0; j < p[i].size(); ++j) os << (j ? "," : "") << p[i][j];
    os << '}';
  }
  os << '}';
  return os.str();
}

/// A rook at (i,j) puts i and j into the same block.
inline SetPartition rooks_to_partition(const Placement& P) {
  const int n = P.board.n();
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Cell& c : P.cells()) parent[find(c.col)] = find(c.row);
  std::map<int, std::vector<int>> blocks;
  for (int x = 1; x <= n; ++x) blocks[find(x)].push_back(x);
  SetPartition out;
  for (auto& [root, b] : blocks) out.push_back(std::move(b));
  return canonical_partition(std::move(out));
}

/// Each element gets a rook in the row of the next smaller element of its block.
inline Placement partition_to_rooks(const SetPartition& p, int n) {
  std::vector<Cell> cells;
  for (auto b : p) {
    std::sort(b.begin(), b.end());
    for (std::size_t j = 1; j < b.size(); ++j) cells.push_back({b[j], b[j - 1]});
  }
  return make_placement(staircase(n), PlacementKind::rook(), cells);
}

// Permutations with restricted cycles from file placements on St_n^{(r)}.

struct PermutationCycles {
  std::vector<std::vector<int>> cycles;  // each cycle ends with its minimum; sorted by minimum

  std::string to_string() const {
    std::ostringstream os;
    for (const auto& c : cycles) {
      os << '(';
      for (std::size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j];
      os << ')';
    }
    return os.str();
  }
  friend bool operator==(const PermutationCycles&, const PermutationCycles&) = default;
};

inline PermutationCycles canonical_cycles(std::vector<std::vector<int>> cycles) {
  for (auto& c : cycles) {
    auto mn = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), mn + 1, c.end());
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& x, const auto& y) { return x.back() < y.back(); });
  return {std::move(cycles)};
}

/// Rooks are read right to left; a rook (alpha, l) puts alpha in front of the chain ending in l,
/// or, when alpha already ends a chain, hangs l's chain behind it.
inline PermutationCycles file_to_cycles(const Placement& Q) {
  const int n = Q.board.n();
  std::vector<std::vector<int>> chains;
  std::vector<int> chain_of(n + 1, -1);  // chain index containing x
  auto cells = Q.cells();
  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.col > y.col; });
  for (const Cell& c : cells) {
    const int alpha = c.col, l = c.row;
    const int ca = chain_of[alpha], cl = chain_of[l];
    if (ca < 0 && cl < 0) {
      chains.push_back({alpha, l});
      chain_of[alpha] = chain_of[l] = static_cast<int>(chains.size()) - 1;
    } else if (ca < 0) {
      chains[cl].insert(chains[cl].begin(), alpha);
      chain_of[alpha] = cl;
    } else if (cl < 0) {
      chains[ca].push_back(l);
      chain_of[l] = ca;
    } else {
      for (int x : chains[cl]) {
        chains[ca].push_back(x);
        chain_of[x] = ca;
      }
      chains[cl].clear();
    }
  }
  std::vector<std::vector<int>> cycles;
  for (auto& ch : chains)
    if (!ch.empty()) cycles.push_back(ch);
  for (int x = 1; x <= n; ++x)
    if (chain_of[x] < 0) cycles.push_back({x});
  return canonical_cycles(std::move(cycles));
}

/// With each cycle written minimum-last, every element gets a rook in the row of the
/// first smaller element to its right.
inline Placement cycles_to_file(const PermutationCycles& pc, int n, int r) {
  std::vector<Cell> cells;
  for (auto c : canonical_cycles(pc.cycles).cycles)
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (c[j] < c[i]) {
          cells.push_back({c[i], c[j]});
          break;
        }
  return make_placement(staircase(n, r), PlacementKind::file(), cells);
}

// Rooted (colored) forests from file placements on A^{(r)}_{m,n}.

/// Board with r empty columns followed by n-r columns of height m.
inline SkylineBoard abel_board(int m, int n, int r) {
  std::vector<int> c(n, m);
  for (int i = 0; i < std::min(r, n); ++i) c[i] = 0;
  return SkylineBoard(std::move(c));
}

struct RootedForest {
  int n = 0;
  std::map<int, int> parent;  // roots absent
  std::set<int> roots;
  std::map<int, int> colors;  // only vertices whose color is not 1

  int color(int v) const {
    auto it = colors.find(v);
    return it == colors.end() ? 1 : it->second;
  }
  bool acyclic() const {
    for (int v = 1; v <= n; ++v) {
      int x = v, steps = 0;
      while (parent.count(x)) {
        x = parent.at(x);
        if (++steps > n) return false;
      }
    }
    return true;
  }
  int root_of(int v) const {
    while (parent.count(v)) v = parent.at(v);
    return v;
  }
  /// "roots {6,7,9} edges 5->1 1->2 ..." with "/c" marking a color c > 1 on the child.
  std::string to_string() const {
    std::ostringstream os;
    os << "roots {";
    bool first = true;
    for (int v : roots) {
      os << (first ? "" : ",") << v;
      first = false;
    }
    os << "} edges";
    for (auto [v, p] : parent) {
      os << ' ' << p << "->" << v;
      if (color(v) != 1) os << '/' << color(v);
    }
    return os.str();
  }
  friend bool operator==(const RootedForest&, const RootedForest&) = default;
};

namespace detail {

inline void set_color(RootedForest& F, int v, int c) {
  if (c == 1) F.colors.erase(v);
  else F.colors[v] = c;
}

// Moves vertex y into the slot of x (parent and own color) and makes x a root. Children stay
// attached to their parent labels, so the color rule keyed on parent labels is preserved.
inline void take_slot(RootedForest& F, int x, int y) {
  if (x == y || !F.parent.count(x)) return;
  F.parent[y] = F.parent.at(x);
  set_color(F, y, F.color(x));
  F.parent.erase(x);
  set_color(F, x, 1);
  F.roots.erase(y);
  F.roots.insert(x);
}

}  // namespace detail

/// A rook at (i, (c-1)n + j) is the edge j -> i with color c on i. Cycles of the resulting
/// graph, each listed from its minimum, are chained in decreasing order of minima above vertex 1.
/// Colors travel with the source of each re-wired edge. For r > 1, vertex r then takes the slot of
/// vertex 1, leaving 1,...,r-1 as roots. Requires r >= 1.
inline RootedForest file_to_forest(const Placement& Q, int m, int n, int r) {
  if (r < 1) throw std::invalid_argument("file_to_forest needs r >= 1");
  (void)m;
  RootedForest F;
  F.n = n;
  for (const Cell& c : Q.cells()) {
    F.parent[c.col] = (c.row - 1) % n + 1;
    detail::set_color(F, c.col, (c.row - 1) / n + 1);
  }
  std::vector<std::vector<int>> cycles;
  std::set<int> seen;
  for (int v = 1; v <= n; ++v) {
    if (seen.count(v)) continue;
    std::vector<int> path;
    std::map<int, int> pos;
    int x = v;
    while (F.parent.count(x) && !seen.count(x) && !pos.count(x)) {
      pos[x] = static_cast<int>(path.size());
      path.push_back(x);
      x = F.parent.at(x);
    }
    if (F.parent.count(x) && pos.count(x)) {
      std::vector<int> cyc(path.begin() + pos[x], path.end());  // x, par(x), par^2(x), ...
      auto mn = std::min_element(cyc.begin(), cyc.end());
      std::rotate(cyc.begin(), mn, cyc.end());
      std::reverse(cyc.begin() + 1, cyc.end());  // edge direction from the minimum
      cycles.push_back(std::move(cyc));
    }
    for (int y : path) seen.insert(y);
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  const int L = static_cast<int>(cycles.size());
  if (L > 0) {
    std::vector<int> old_color(L);
    for (int i = 0; i < L; ++i) old_color[i] = F.color(cycles[i].front());
    F.parent.erase(cycles[L - 1].front());
    detail::set_color(F, cycles[L - 1].front(), 1);
    for (int i = 0; i + 1 < L; ++i) {
      F.parent[cycles[i].front()] = cycles[i + 1].back();
      detail::set_color(F, cycles[i].front(), old_color[i + 1]);
    }
    F.parent[1] = cycles[0].back();
    detail::set_color(F, 1, old_color[0]);
  }
  for (int v = 1; v <= n; ++v)
    if (!F.parent.count(v)) F.roots.insert(v);
  detail::take_slot(F, 1, r);
  return F;
}

inline Placement forest_to_file(RootedForest F, int m, int n, int r) {
  detail::take_slot(F, r, 1);
  std::vector<int> path;  // root of 1's tree down to the parent of 1
  for (int x = 1; F.parent.count(x);) {
    x = F.parent.at(x);
    path.push_back(x);
  }
  std::reverse(path.begin(), path.end());
  if (!path.empty()) {
    const int c1 = F.color(1);
    F.parent.erase(1);
    detail::set_color(F, 1, 1);
    // cut the path into cycles: the minimum of the remaining prefix opens the last cycle
    std::vector<std::vector<int>> cycles;  // increasing minima
    std::size_t end = path.size();
    while (end > 0) {
      auto mn = std::min_element(path.begin(), path.begin() + static_cast<long>(end));
      cycles.emplace_back(mn, path.begin() + static_cast<long>(end));
      end = static_cast<std::size_t>(mn - path.begin());
    }
    std::vector<int> edge_color(cycles.size());
    edge_color[0] = c1;
    for (std::size_t i = 1; i < cycles.size(); ++i) edge_color[i] = F.color(cycles[i - 1].front());
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      F.parent[cycles[i].front()] = cycles[i].back();
      detail::set_color(F, cycles[i].front(), edge_color[i]);
    }
  }
  std::vector<Cell> cells;
  for (auto [v, p] : F.parent) cells.push_back({v, (F.color(v) - 1) * n + p});
  return make_placement(abel_board(m, n, r), PlacementKind::file(), cells);
}

// Tube placements from rook placements on L_n^{(r)} = [n+r-1] x [n-r].

struct TubePlacement {
  std::vector<std::vector<int>> tubes;  // each listed bottom to top

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < tubes.size(); ++i) {
      os << (i ? ",(" : "(");
      for (std::size_t j = 0; j < tubes[i].size(); ++j) os << (j ? "," : "") << tubes[i][j];
      os << ')';
    }
    os << '}';
    return os.str();
  }
  friend bool operator==(const TubePlacement&, const TubePlacement&) = default;
};

/// Tubes holding 1..r first (in that order), then the others by bottom element.
inline TubePlacement canonical_tubes(TubePlacement T, int r) {
  auto key = [r](const std::vector<int>& t) {
    for (int x : t)
      if (x <= r) return std::pair{0, x};
    return std::pair{1, t.front()};
  };
  std::sort(T.tubes.begin(), T.tubes.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return T;
}

namespace detail {

// Slot p (1-based): first "on top of" every element, tubes in order and each tube bottom to top,
// then "below the bottom" of the first r tubes.
inline void tube_insert(std::vector<std::vector<int>>& tubes, int r, int p, int x) {
  int idx = 0;
  for (auto& t : tubes)
    for (std::size_t j = 0; j < t.size(); ++j)
      if (++idx == p) {
        t.insert(t.begin() + static_cast<long>(j) + 1, x);
        return;
      }
  const int b = p - idx;
  if (b < 1 || b > r) throw std::logic_error("tube slot out of range");
  tubes[b - 1].insert(tubes[b - 1].begin(), x);
}

inline int tube_remove(std::vector<std::vector<int>>& tubes, int r, int x) {
  for (std::size_t t = 0; t < tubes.size(); ++t) {
    auto it = std::find(tubes[t].begin(), tubes[t].end(), x);
    if (it == tubes[t].end()) continue;
    const long j = it - tubes[t].begin();
    tubes[t].erase(it);
    if (j == 0) {
      if (static_cast<int>(t) >= r) throw std::invalid_argument("tube leader must stay at the bottom");
      int total = 0;
      for (const auto& u : tubes) total += static_cast<int>(u.size());
      return total + static_cast<int>(t) + 1;
    }
    const int below = tubes[t][j - 1];
    int idx = 0;
    for (const auto& u : tubes)
      for (int y : u) {
        ++idx;
        if (y == below) return idx;
      }
  }
  throw std::invalid_argument("element not in any tube");
}

}  // namespace detail

inline TubePlacement rooks_to_tubes(const Placement& P, int n, int r) {
  const int cols = n + r - 1, rows = n - r;
  std::map<int, int> col_of_row;
  for (const Cell& c : P.cells()) col_of_row[c.row] = c.col;
  std::vector<std::vector<int>> tubes;
  std::set<int> used;
  for (int x = 1; x <= r; ++x) {
    tubes.push_back({x});
    used.insert(x);
  }
  for (int l = rows; l >= 1; --l)
    if (!col_of_row.count(l)) {
      tubes.push_back({n + 1 - l});
      used.insert(n + 1 - l);
    }
  std::vector<int> iota;
  for (int x = 1; x <= n; ++x)
    if (!used.count(x)) iota.push_back(x);
  std::vector<int> rook_rows;  // top to bottom
  for (auto it = col_of_row.rbegin(); it != col_of_row.rend(); ++it) rook_rows.push_back(it->first);
  for (std::size_t s = 0; s < rook_rows.size(); ++s) {
    std::set<int> lower;
    for (std::size_t u = s + 1; u < rook_rows.size(); ++u) lower.insert(col_of_row[rook_rows[u]]);
    int p = 0;
    for (int c = 1; c <= col_of_row[rook_rows[s]]; ++c) p += !lower.count(c);
    (void)cols;
    detail::tube_insert(tubes, r, p, iota[s]);
  }
  return canonical_tubes({tubes}, r);
}

inline Placement tubes_to_rooks(const TubePlacement& T0, int n, int r) {
  const int cols = n + r - 1, rows = n - r;
  auto tubes = canonical_tubes(T0, r).tubes;
  std::set<int> leaders;
  for (std::size_t t = r; t < tubes.size(); ++t) leaders.insert(tubes[t].front());
  std::vector<int> rook_rows;  // top to bottom
  for (int l = rows; l >= 1; --l)
    if (!leaders.count(n + 1 - l)) rook_rows.push_back(l);
  std::vector<int> iota;
  for (int x = r + 1; x <= n; ++x)
    if (!leaders.count(x)) iota.push_back(x);
  if (iota.size() != rook_rows.size()) throw std::invalid_argument("tube placement does not match board");
  std::vector<int> col(rook_rows.size());
  for (int s = static_cast<int>(iota.size()) - 1; s >= 0; --s) {
    const int p = detail::tube_remove(tubes, r, iota[s]);
    std::set<int> lower(col.begin() + s + 1, col.end());
    int seen = 0;
    for (int c = 1; c <= cols; ++c)
      if (!lower.count(c) && ++seen == p) {
        col[s] = c;
        break;
      }
  }
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < col.size(); ++s) cells.push_back({col[s], rook_rows[s]});
  return make_placement(rectangle(cols, rows), PlacementKind::rook(), cells);
}

}  // namespace ellrook
