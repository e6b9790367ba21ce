#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace ellrook;
using ellrook::test::ferrers_boards;
using ellrook::test::skyline_boards;

namespace {

using CellSet = std::set<Cell>;

CellSet cells_of(const std::vector<std::pair<Cell, int>>& u) {
  CellSet s;
  for (const auto& [c, nw] : u) s.insert(c);
  return s;
}

long elementary_symmetric(const std::vector<int>& xs, int k) {
  std::vector<long> e(k + 1, 0);
  e[0] = 1;
  for (int x : xs)
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * x;
  return e[k];
}

}  // namespace

TEST(Boards, ParseAndRender) {
  const SkylineBoard b = SkylineBoard::parse("0,2,3,5,5");
  EXPECT_EQ(b.heights, (std::vector<int>{0, 2, 3, 5, 5}));
  EXPECT_EQ(b.to_string(), "0,2,3,5,5");
  EXPECT_EQ(b.area(), 15);
  EXPECT_TRUE(b.is_ferrers());
  EXPECT_FALSE(SkylineBoard::parse("4,2,1").is_ferrers());
  EXPECT_EQ(SkylineBoard::parse("").n(), 0);
  EXPECT_THROW(SkylineBoard::parse("0,x"), BadBoardSpec);
  EXPECT_THROW(SkylineBoard::parse("1,-2"), BadBoardSpec);
}

TEST(Boards, NamedShapes) {
  EXPECT_EQ(staircase(4).heights, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(staircase(5, 3).heights, (std::vector<int>{0, 0, 0, 3, 4}));
  EXPECT_EQ(ij_board(2, 3, 3).heights, (std::vector<int>{2, 5, 8}));
  EXPECT_EQ(rectangle(2, 3).heights, (std::vector<int>{3, 3}));
}

TEST(Boards, JAttackingPredicate) {
  EXPECT_TRUE(ij_board(1, 2, 4).is_j_attacking(2));
  EXPECT_TRUE(SkylineBoard::parse("0,0,3").is_j_attacking(3));
  EXPECT_FALSE(SkylineBoard::parse("1,1,4").is_j_attacking(3));
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(count_placements(rectangle(3, 3), PlacementKind::rook(), 3), 6);
  EXPECT_EQ(count_placements(SkylineBoard::parse("0,2,3,5,5"), PlacementKind::rook(), 0), 1);
  EXPECT_EQ(count_placements(SkylineBoard::parse("2,2"), PlacementKind::file(), 2), 4);
  EXPECT_EQ(count_placements(rectangle(3, 3), PlacementKind::rook(), 4), 0);
}

TEST(Enumerate, RejectsJAttackOnUnsuitableBoard) {
  EXPECT_THROW(enumerate_placements(SkylineBoard::parse("1,1,4"), PlacementKind::jattack(3), 1), NotJAttackingBoard);
}

TEST(Enumerate, MakePlacementValidates) {
  const SkylineBoard b = rectangle(3, 3);
  EXPECT_THROW(make_placement(b, PlacementKind::rook(), {{1, 2}, {2, 2}}), BadBoardSpec);
  EXPECT_THROW(make_placement(b, PlacementKind::rook(), {{1, 4}}), BadBoardSpec);
  EXPECT_THROW(make_placement(b, PlacementKind::file(), {{1, 1}, {1, 2}}), BadBoardSpec);
  EXPECT_NO_THROW(make_placement(b, PlacementKind::file(), {{1, 2}, {2, 2}}));
  EXPECT_THROW(make_placement(ij_board(1, 2, 3), PlacementKind::jattack(2), {{1, 1}, {2, 2}}), BadBoardSpec);
}

TEST(Uncancelled, FigureExample) {
  const SkylineBoard b = SkylineBoard::parse("0,2,3,5,5");
  const Placement P = make_placement(b, PlacementKind::rook(), {{2, 2}, {3, 1}, {4, 4}, {5, 3}});
  const auto u = uncancelled_cells(P);
  EXPECT_EQ(cells_of(u), (CellSet{{3, 3}, {4, 5}, {5, 5}}));
  EXPECT_EQ(b.area() - P.size() - static_cast<long>(u.size()), 8);
}

TEST(Uncancelled, NorthWestCounts) {
  const Placement P = make_placement(rectangle(3, 3), PlacementKind::rook(), {{1, 3}, {3, 1}});
  const auto u = uncancelled_cells(P);
  EXPECT_EQ(cells_of(u), (CellSet{{2, 1}, {2, 2}, {3, 2}}));
  for (const auto& [c, nw] : u) EXPECT_EQ(nw, 1);
}

TEST(Uncancelled, EmptyPlacement) {
  const auto single = uncancelled_cells(make_placement(SkylineBoard::parse("1"), PlacementKind::rook(), {}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].first, (Cell{1, 1}));
  EXPECT_EQ(single[0].second, 0);
  EXPECT_EQ(cells_of(uncancelled_cells(make_placement(SkylineBoard::parse("1,1"), PlacementKind::rook(), {}))),
            (CellSet{{1, 1}, {2, 1}}));
}

TEST(FileUncancelled, RuleApplication) {
  const SkylineBoard b22 = SkylineBoard::parse("2,2");
  auto f = [](const Placement& Q) {
    const auto v = file_uncancelled_cells(Q);
    return CellSet(v.begin(), v.end());
  };
  EXPECT_EQ(f(make_placement(b22, PlacementKind::file(), {{1, 2}, {2, 1}})), (CellSet{{2, 2}}));
  EXPECT_EQ(f(make_placement(SkylineBoard::parse("2"), PlacementKind::file(), {{1, 1}})), (CellSet{{1, 2}}));
  EXPECT_EQ(f(make_placement(b22, PlacementKind::file(), {})), (CellSet{{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
}

TEST(JAttack, FigureAttackSets) {
  const ExtendedBoard B(SkylineBoard::parse("1,2,3,5,7,8,9"));
  const auto sets = j_attack_sets(B, {{2, 2}, {4, 1}, {6, 6}}, 2);
  ASSERT_EQ(sets.size(), 3u);
  EXPECT_EQ(sets[0].second, (std::vector<int>{2, 3}));
  EXPECT_EQ(sets[1].second, (std::vector<int>{1, 4}));
  EXPECT_EQ(sets[2].second, (std::vector<int>{6, 7}));
  const auto cells = j_attacked_cells(B, {{2, 2}, {4, 1}, {6, 6}}, 2);
  CellSet expect;
  for (int c = 3; c <= 7; ++c)
    for (int r : {2, 3}) expect.insert({c, r});
  for (int c = 5; c <= 7; ++c)
    for (int r : {1, 4}) expect.insert({c, r});
  expect.insert({7, 6});
  expect.insert({7, 7});
  EXPECT_EQ(cells, expect);
}

TEST(JAttack, NothingToTheLeft) {
  const ExtendedBoard B(SkylineBoard::parse("3,3,3"));
  for (const Cell& c : j_attacked_cells(B, {{3, 1}}, 2)) ADD_FAILURE() << "attacked " << c.col << "," << c.row;
  for (const Cell& c : j_attacked_cells(B, {{2, 1}}, 2)) EXPECT_EQ(c.col, 3);
}

TEST(MaxStat, Values) {
  const ExtendedBoard B(SkylineBoard::parse("1,2"), 3);
  EXPECT_EQ(max_stat(make_placement(B, PlacementKind::rook(), {{1, 1}, {2, 2}})), 0);
  EXPECT_EQ(max_stat(make_placement(B, PlacementKind::rook(), {{1, 0}})), 1);
  EXPECT_EQ(max_stat(make_placement(B, PlacementKind::rook(), {{2, -2}})), 3);
}

// Invariants.

TEST(BoardsProperty, PlacementsAreDistinctAndRespectTheirKind) {
  for (const SkylineBoard& b : skyline_boards(4, 3))
    for (int k = 0; k <= 4; ++k) {
      const auto rooks = enumerate_placements(b, PlacementKind::rook(), k);
      std::set<std::vector<std::optional<int>>> seen;
      for (const Placement& P : rooks) {
        EXPECT_TRUE(seen.insert(P.rows).second);
        EXPECT_EQ(P.size(), k);
        std::set<int> rows;
        for (const Cell& c : P.cells()) {
          EXPECT_TRUE(rows.insert(c.row).second);
          EXPECT_GE(c.row, 1);
          EXPECT_LE(c.row, b.height(c.col));
        }
      }
      // |F_k(B)| is the k-th elementary symmetric function of the heights
      EXPECT_EQ(count_placements(b, PlacementKind::file(), k), elementary_symmetric(b.heights, k)) << b.to_string();
    }
}

TEST(BoardsProperty, RookCountsFactorizeOnFerrersBoards) {
  // sum_k |N_{n-k}(B)| z(z-1)...(z-k+1) = prod_i (z + b_i - i + 1) for every integer z
  for (int n = 1; n <= 5; ++n)
    for (const SkylineBoard& b : ferrers_boards(n, 5)) {
      std::vector<long> cnt(n + 1);
      for (int k = 0; k <= n; ++k) cnt[k] = count_placements(b, PlacementKind::rook(), k);
      for (long z = 0; z <= n + 1; ++z) {
        long lhs = 0;
        for (int k = 0; k <= n; ++k) {
          long fall = 1;
          for (int j = 0; j < k; ++j) fall *= z - j;
          lhs += cnt[n - k] * fall;
        }
        long rhs = 1;
        for (int i = 1; i <= n; ++i) rhs *= z + b.height(i) - i + 1;
        EXPECT_EQ(lhs, rhs) << b.to_string() << " z=" << z;
      }
    }
}

TEST(BoardsProperty, JAttackPlacementsHaveNoAttackedRook) {
  for (int J = 1; J <= 3; ++J)
    for (int I = 0; I <= J; ++I) {
      const SkylineBoard b = ij_board(I, J, 4);
      for (int k = 0; k <= 4; ++k)
        for (const Placement& P : enumerate_placements(b, PlacementKind::jattack(J), k)) {
          const auto cells = P.cells();
          const auto attacked = j_attacked_cells(b, cells, J);
          for (const Cell& c : cells) EXPECT_FALSE(attacked.count(c));
        }
    }
}
