#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ellrook.hpp"

using namespace ellrook;

namespace {

cplx parse_complex(const std::string& s) {
  std::stringstream ss(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  ss >> re;
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw CLI::ValidationError("--z expects re,im");
  }
  return {re, im};
}

int demo(const std::string& which, const std::string& input) {
  const KeyValues kv = parse_key_values(input);
  const std::vector<Cell> cells = parse_cells(kv.has("rooks") ? kv.kv.at("rooks") : "");
  if (which == "partition") {
    const int n = kv.get_int("n");
    const Placement P = make_placement(staircase(n), PlacementKind::rook(), cells);
    const SetPartition p = rooks_to_partition(P);
    std::cout << to_string(p) << '\n';
    return partition_to_rooks(p, n).cells() == P.cells() ? 0 : 1;
  }
  if (which == "cycles") {
    const int n = kv.get_int("n"), r = kv.get_int("r", 1);
    const Placement Q = make_placement(staircase(n, r), PlacementKind::file(), cells);
    const PermutationCycles pc = file_to_cycles(Q);
    std::cout << pc.to_string() << '\n';
    return cycles_to_file(pc, n, r).cells() == Q.cells() ? 0 : 1;
  }
  if (which == "forest") {
    const int n = kv.get_int("n"), m = kv.get_int("m", n), r = kv.get_int("r", 1);
    const Placement Q = make_placement(abel_board(m, n, r), PlacementKind::file(), cells);
    const RootedForest F = file_to_forest(Q, m, n, r);
    std::cout << F.to_string() << '\n';
    return forest_to_file(F, m, n, r).cells() == Q.cells() ? 0 : 1;
  }
  if (which == "tubes") {
    const int n = kv.get_int("n"), r = kv.get_int("r", 1);
    const Placement P = make_placement(rectangle(n + r - 1, n - r), PlacementKind::rook(), cells);
    const TubePlacement T = rooks_to_tubes(P, n, r);
    std::cout << T.to_string() << '\n';
    return tubes_to_rooks(T, n, r).cells() == P.cells() ? 0 : 1;
  }
  if (which == "rg") {
    RGWord g{kv.get_int("I"), kv.get_int("J"), {}, {}};
    for (char c : kv.kv.at("word")) g.w.push_back(c - '0');
    for (char c : kv.kv.at("colors")) g.e.push_back(c - '0');
    if (!g.valid()) throw BadBoardSpec("invalid RG word " + g.to_string());
    const Placement P = phi(g);
    std::cout << "board " << P.board.base.to_string() << " rooks";
    for (const Cell& c : P.cells()) std::cout << " (" << c.col << ',' << c.row << ')';
    std::cout << '\n';
    return phi_inverse(P, g.I, g.J) == g ? 0 : 1;
  }
  throw CLI::ValidationError("unknown bijection: " + which);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic rook theory: identity checks, special number tables, bijection demos"};
  app.require_subcommand(1);

  CheckSpec spec;
  std::string family = "elliptic", z_text;
  std::optional<double> tol;
  bool as_json = false, list = false;
  auto* check = app.add_subcommand("check", "verify an identity at random generic points");
  check->add_option("identity", spec.identity, "identity name");
  check->add_flag("--list", list, "list identity names");
  check->add_option("--board", spec.board, "heights (0,2,3,5,5) or key=value parameters (n=5;r=2)");
  check->add_option("--family", family, "elliptic|abq|aq|zbq|q|pq|trivial");
  check->add_option("--trials", spec.trials);
  check->add_option("--tol", tol);
  check->add_option("--seed", spec.seed);
  check->add_option("--z", z_text, "fixed evaluation point re,im");
  check->add_option("--J", spec.J);
  check->add_option("--I", spec.I);
  check->add_option("--r", spec.r);
  check->add_flag("--json", as_json);

  std::string table_family, out_path, format = "csv";
  int nmax = 5, table_r = 1, table_m = 0;
  std::uint64_t table_seed = 1;
  std::string weights = "trivial";
  auto* table = app.add_subcommand("table", "emit a table of special numbers");
  table->add_option("number-family", table_family, "stirling2|stirling2r|lah|lahr|stirling1|stirling1r|abel|abelr|abelgen|abelgenr")
      ->required();
  table->add_option("--nmax", nmax);
  table->add_option("--family", weights, "weight family");
  table->add_option("--out", out_path, "output file (default stdout)");
  table->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--r", table_r);
  table->add_option("--m", table_m);
  table->add_option("--seed", table_seed, "seed for sampled weight parameters");

  std::string bijection, input;
  auto* demo_cmd = app.add_subcommand("demo", "apply a bijection to a placement");
  demo_cmd->add_option("bijection", bijection, "partition|cycles|forest|tubes|rg")->required();
  demo_cmd->add_option("--input", input, "e.g. n=8;r=3;rooks=(4,1),(5,2)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      if (list) {
        for (const auto& name : identity_names()) std::cout << name << '\n';
        return 0;
      }
      if (spec.identity.empty()) throw CLI::ValidationError("identity name required");
      spec.family = parse_family_tag(family);
      spec.tol = tol;
      if (!z_text.empty()) spec.z = parse_complex(z_text);
      const CheckReport rep = run_check(spec);
      if (as_json) std::cout << to_json(rep).dump(2) << '\n';
      else std::cout << to_line(rep) << '\n';
      return rep.passed ? 0 : 1;
    }
    if (*table) {
      const FamilyTag tag = parse_family_tag(weights);
      const SpecialFamily f = SpecialFamily::parse(table_family, table_r, table_m);
      SamplerConfig cfg;
      cfg.seed = table_seed;
      Sampler sampler(cfg);
      const WeightFamily fam = sampler.family(tag);
      const TableFormat fmt = format == "json" ? TableFormat::Json : TableFormat::Csv;
      if (out_path.empty()) {
        emit_table(f, nmax, tag, fam, fmt, std::cout);
      } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open " + out_path);
        emit_table(f, nmax, tag, fam, fmt, os);
        if (!os) throw std::runtime_error("write failed: " + out_path);
      }
      return 0;
    }
    return demo(bijection, input);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
