#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ellrook/biject.hpp"
#include "ellrook/jattack.hpp"
#include "ellrook/special.hpp"
#include "json.hpp"

namespace ellrook {

using bigint = boost::multiprecision::cpp_int;

// Weight family selection for sampled checks.

enum class FamilyTag { Elliptic, ABq, Aq, ZeroBq, PlainQ, FrakPQ, Trivial };

inline FamilyTag parse_family_tag(const std::string& s) {
  static const std::map<std::string, FamilyTag> m{{"elliptic", FamilyTag::Elliptic}, {"abq", FamilyTag::ABq},
                                                  {"aq", FamilyTag::Aq},             {"zbq", FamilyTag::ZeroBq},
                                                  {"q", FamilyTag::PlainQ},          {"pq", FamilyTag::FrakPQ},
                                                  {"trivial", FamilyTag::Trivial}};
  auto it = m.find(s);
  if (it == m.end()) throw std::invalid_argument("unknown weight family: " + s);
  return it->second;
}

inline std::string family_tag_name(FamilyTag t) {
  static const char* names[] = {"elliptic", "abq", "aq", "zbq", "q", "pq", "trivial"};
  return names[static_cast<int>(t)];
}

struct Range {
  double lo, hi;
};

struct SamplerConfig {
  std::uint64_t seed = 1;
  Range ab{0.5, 2.0};
  Range q{0.6, 0.95};
  Range p{0.05, 0.4};
  Range frak_p{1.1, 1.6};
  Range z_re{-1.0, 3.0};
  Range z_im{-0.5, 0.5};
  int max_resamples = 50;
};

/// Deterministic generic-point sampler. Uniforms come straight from the 64-bit engine
/// output so that streams are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(const SamplerConfig& cfg) : cfg_(cfg), eng_(cfg.seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(Range r) { return r.lo + (r.hi - r.lo) * uniform(); }

  /// Modulus in `modulus`; a nonreal phase keeps away from the real axis.
  cplx polar(Range modulus, bool nonreal) {
    const double m = uniform(modulus);
    double phi;
    if (nonreal) {
      phi = uniform({0.2, std::numbers::pi - 0.2});
      if (uniform() < 0.5) phi = -phi;
    } else {
      phi = uniform({-std::numbers::pi, std::numbers::pi});
    }
    return std::polar(m, phi);
  }

  cplx ab() { return polar(cfg_.ab, false); }
  cplx q() { return polar(cfg_.q, true); }
  Nome p() { return Nome(polar(cfg_.p, false)); }
  cplx frak_p() { return polar(cfg_.frak_p, true); }
  cplx z() { return {uniform(cfg_.z_re), uniform(cfg_.z_im)}; }

  WeightFamily family(FamilyTag t) {
    switch (t) {
      case FamilyTag::Elliptic: {
        const cplx a = ab(), b = ab(), qq = q();
        return FullElliptic{a, b, qq, p()};
      }
      case FamilyTag::ABq: {
        const cplx a = ab(), b = ab();
        return ABq{a, b, q()};
      }
      case FamilyTag::Aq: {
        const cplx a = ab();
        return Aq{a, q()};
      }
      case FamilyTag::ZeroBq: {
        const cplx b = ab();
        return ZeroBq{b, q()};
      }
      case FamilyTag::PlainQ:
        return PlainQ{q()};
      case FamilyTag::FrakPQ: {
        const cplx a = ab(), b = ab(), P = frak_p();
        return FrakPQ{a, b, P, q()};
      }
      case FamilyTag::Trivial:
        return PlainQ{cplx(1.0)};
    }
    throw std::logic_error("unreachable");
  }

  const SamplerConfig& config() const { return cfg_; }

 private:
  SamplerConfig cfg_;
  std::mt19937_64 eng_;
};

// Board / parameter specs: either heights "0,2,3" or key=value pairs "n=5;r=2;m=8".

struct KeyValues {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  int get_int(const std::string& k, std::optional<int> dflt = std::nullopt) const {
    auto it = kv.find(k);
    if (it == kv.end()) {
      if (dflt) return *dflt;
      throw BadBoardSpec("missing parameter " + k);
    }
    try {
      std::size_t used = 0;
      const int v = std::stoi(it->second, &used);
      if (used != it->second.size()) throw BadBoardSpec("bad value for " + k);
      return v;
    } catch (const std::logic_error&) {
      throw BadBoardSpec("bad value for " + k + ": " + it->second);
    }
  }
};

inline KeyValues parse_key_values(const std::string& s) {
  KeyValues out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw BadBoardSpec("expected key=value, got " + tok);
    out.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

/// Accepts "n=5,r=2" as well as "n=5;r=2" when no heights are present.
inline KeyValues parse_params(std::string s) {
  if (s.find('=') == std::string::npos) throw BadBoardSpec("expected key=value parameters, got '" + s + "'");
  if (s.find('(') == std::string::npos) std::replace(s.begin(), s.end(), ',', ';');
  return parse_key_values(s);
}

/// "n=8;r=3;rooks=(4,1),(5,2)" -> cells.
inline std::vector<Cell> parse_cells(const std::string& s) {
  std::vector<Cell> out;
  static const std::regex re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it)
    out.push_back({std::stoi((*it)[1]), std::stoi((*it)[2])});
  return out;
}

// Exact counting oracles (classical recursions, independent of boards).

inline bigint binomial_count(long n, long k) {
  if (k < 0 || k > n) return 0;
  bigint r = 1;
  for (long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

inline bigint factorial_count(long n) {
  bigint r = 1;
  for (long j = 2; j <= n; ++j) r *= j;
  return r;
}

/// r-Stirling numbers of the second kind (r = 1: classical).
inline bigint stirling2_count(int n, int k, int r = 1) {
  if (n < r) return n == 0 && k == 0 && r <= 1 ? 1 : 0;
  std::vector<bigint> row(n + 2, 0);
  row[r] = 1;
  for (int m = r; m < n; ++m) {
    std::vector<bigint> next(n + 2, 0);
    for (int j = r; j <= m + 1; ++j) next[j] = (j >= 1 ? row[j - 1] : bigint(0)) + bigint(j) * row[j];
    row = std::move(next);
  }
  return k >= 0 && k <= n ? row[k] : bigint(0);
}

/// Unsigned r-Stirling numbers of the first kind.
inline bigint stirling1_count(int n, int k, int r = 1) {
  if (n < r) return n == 0 && k == 0 && r <= 1 ? 1 : 0;
  std::vector<bigint> row(n + 2, 0);
  row[r] = 1;
  for (int m = r; m < n; ++m) {
    std::vector<bigint> next(n + 2, 0);
    for (int j = r; j <= m + 1; ++j) next[j] = (j >= 1 ? row[j - 1] : bigint(0)) + bigint(m) * row[j];
    row = std::move(next);
  }
  return k >= 0 && k <= n ? row[k] : bigint(0);
}

inline bigint lah_r_count(int n, int k, int r = 1) {
  if (k < r || k > n) return n == 0 && k == 0 && r <= 1 ? 1 : 0;
  return binomial_count(n + r - 1, k + r - 1) * factorial_count(n - r) / factorial_count(k - r);
}

/// C(n-r,k-r) m^{n-k}: forests on A^{(r)}_{m,n}.
inline bigint forest_count(int m, int n, int k, int r = 1) {
  if (k < r || k > n) return 0;
  return binomial_count(n - r, k - r) * boost::multiprecision::pow(bigint(m), static_cast<unsigned>(n - k));
}

/// Forest with k trees where 1..r lie in distinct trees, 1..r-1 are roots, roots carry color 1
/// and an edge j -> i of color c satisfies (c-1)n + j <= m.
inline bool valid_abel_forest(const RootedForest& F, int m, int n, int r, int k) {
  if (F.n != n || !F.acyclic() || static_cast<int>(F.roots.size()) != k) return false;
  for (int v = 1; v <= n; ++v)
    if (F.parent.count(v) == F.roots.count(v)) return false;
  for (int v = 1; v < r; ++v)
    if (!F.roots.count(v)) return false;
  std::set<int> trees;
  for (int v = 1; v <= r; ++v) trees.insert(F.root_of(v));
  if (static_cast<int>(trees.size()) != std::min(r, n)) return false;
  for (auto [v, c] : F.colors) {
    auto it = F.parent.find(v);
    if (it == F.parent.end() || c < 1 || (c - 1) * n + it->second > m) return false;
  }
  return true;
}

// Check reports.

struct CheckReport {
  std::string identity_name;
  std::string board;
  std::string family;
  int trials = 0;
  double max_rel_err = 0.0;
  int resamples = 0;
  std::uint64_t seed = 0;
  bool passed = false;
};

inline nlohmann::json to_json(const CheckReport& r) {
  return {{"identity_name", r.identity_name}, {"board", r.board},         {"family", r.family},
          {"trials", r.trials},               {"max_rel_err", r.max_rel_err}, {"resamples", r.resamples},
          {"seed", r.seed},                   {"passed", r.passed}};
}

inline std::string to_line(const CheckReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.identity_name << " board=" << r.board << " family=" << r.family
     << " trials=" << r.trials << " max_rel_err=" << r.max_rel_err << " resamples=" << r.resamples
     << " seed=" << r.seed;
  return os.str();
}

struct CheckSpec {
  std::string identity;
  std::string board;
  FamilyTag family = FamilyTag::Elliptic;
  int trials = 25;
  std::optional<double> tol;  // default per identity
  std::uint64_t seed = 1;
  std::optional<cplx> z;
  int I = 1, J = 1, r = 1;
  SamplerConfig sampler{};
};

/// Identities whose floating-point cancellation exceeds this are resampled.
inline constexpr double max_condition = 1e6;

/// One evaluated residual: relative error plus the cancellation estimate behind it.
struct Residual {
  double err;
  double condition;
};

inline Residual residual(const IdentitySides& s) { return {s.rel_err(), s.condition()}; }
inline Residual residual(cplx x, cplx y) { return {rel_diff(x, y), 1.0}; }
/// x against y where x is a sum whose absolute terms add up to scale.
inline Residual residual(cplx x, cplx y, double scale) { return residual(IdentitySides{x, y, scale}); }

struct TrialContext {
  const CheckSpec& spec;
  WeightFamily fam;
  cplx z;
  Sampler& sampler;
};

namespace detail {

using NumericCheck = std::function<std::vector<Residual>(TrialContext&)>;

/// Outcome of an exact check: number of objects examined and whether all agreed.
struct ExactOutcome {
  long examined = 0;
  bool ok = true;
};
using ExactCheck = std::function<ExactOutcome(const CheckSpec&)>;

struct IdentityEntry {
  double default_tol;
  NumericCheck numeric;
  ExactCheck exact;
};

inline SkylineBoard board_of(const CheckSpec& s) { return SkylineBoard::parse(s.board); }

inline std::vector<Residual> table_residuals(const std::vector<std::vector<cplx>>& got,
                                             const std::function<cplx(int, int)>& want,
                                             const std::function<double(int, int)>& scale, int n_from) {
  std::vector<Residual> out;
  for (int n = n_from; n < static_cast<int>(got.size()); ++n)
    for (int k = 0; k < static_cast<int>(got[n].size()); ++k)
      out.push_back(residual(got[n][k], want(n, k), scale(n, k)));
  return out;
}

template <class F>
F& family_as(WeightFamily& fam, const char* what) {
  if (auto* f = std::get_if<F>(&fam)) return *f;
  throw std::invalid_argument(std::string(what) + " needs the " + family_name(WeightFamily(F{})) + " family");
}

/// a -> a q^{sa}, b -> b q^{sb} (base q/frak_p for FrakPQ).
inline WeightFamily shift_ab(const WeightFamily& fam, long sa, long sb) {
  return std::visit(
      [&](const auto& f) -> WeightFamily {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullElliptic>)
          return FullElliptic{f.a * ipow(f.q, sa), f.b * ipow(f.q, sb), f.q, f.p};
        else if constexpr (std::is_same_v<F, ABq>)
          return ABq{f.a * ipow(f.q, sa), f.b * ipow(f.q, sb), f.q};
        else if constexpr (std::is_same_v<F, Aq>)
          return Aq{f.a * ipow(f.q, sa), f.q};
        else if constexpr (std::is_same_v<F, ZeroBq>)
          return ZeroBq{f.b * ipow(f.q, sb), f.q};
        else if constexpr (std::is_same_v<F, PlainQ>)
          return f;
        else {
          const cplx Q = f.q / f.frak_p;
          return FrakPQ{f.a * ipow(Q, sa), f.b * ipow(Q, sb), f.frak_p, f.q};
        }
      },
      fam);
}

inline std::vector<Residual> analytic_theta(TrialContext& c, int which) {
  Sampler& s = c.sampler;
  const Nome p = s.p();
  const cplx x = s.ab(), y = s.ab(), u = s.ab(), v = s.ab();
  switch (which) {
    case 0:
      return {residual(theta(x, p), -x * theta(1.0 / x, p))};
    case 1:
      return {residual(theta(p.value() * x, p), -theta(x, p) / x)};
    default: {
      const cplx lhs = theta_multi({x * y, x / y, u * v, u / v}, p) - theta_multi({x * v, x / v, u * y, u / y}, p);
      const cplx rhs = u / y * theta_multi({y * v, y / v, x * u, x / u}, p);
      const double scale = std::abs(theta_multi({x * y, x / y, u * v, u / v}, p)) +
                           std::abs(theta_multi({x * v, x / v, u * y, u / y}, p));
      return {residual(IdentitySides{lhs, rhs, scale})};
    }
  }
}

inline const std::map<std::string, IdentityEntry>& identity_registry() {
  static const std::map<std::string, IdentityEntry> reg = [] {
    std::map<std::string, IdentityEntry> m;
    auto num = [&m](const std::string& name, double tol, NumericCheck f) { m[name] = {tol, std::move(f), {}}; };
    auto exact = [&m](const std::string& name, ExactCheck f) { m[name] = {0.0, {}, std::move(f)}; };

    // Product formulas.
    num("product-rook", 1e-8, [](TrialContext& c) {
      return std::vector<Residual>{residual(product_formula_sides(c.fam, board_of(c.spec), c.z))};
    });
    num("product-file", 1e-8, [](TrialContext& c) {
      return std::vector<Residual>{residual(file_product_sides(c.fam, board_of(c.spec), c.z))};
    });
    num("product-file-above", 1e-8, [](TrialContext& c) {
      return std::vector<Residual>{residual(file_above_product_sides(c.fam, board_of(c.spec), c.z))};
    });
    num("product-jump", 1e-8, [](TrialContext& c) {
      return std::vector<Residual>{residual(jump_product_sides(c.fam, board_of(c.spec), c.spec.J, c.z))};
    });
    // Integer z: the extended-board placement sum against both sides of the product formula.
    num("product-jump-extended", 1e-8, [](TrialContext& c) {
      const SkylineBoard B = board_of(c.spec);
      long zi = 0;
      if (!c.spec.z || !as_integer(*c.spec.z, zi)) zi = static_cast<long>(c.spec.J) * B.n();
      const IdentitySides s = jump_product_sides(c.fam, B, c.spec.J, cplx(static_cast<double>(zi)));
      double scale = 0.0;
      const cplx ext = jump_extended_sum(c.fam, B, c.spec.J, static_cast<int>(zi), &scale);
      return std::vector<Residual>{residual(s), residual(IdentitySides{ext, s.lhs, scale}),
                                   residual(IdentitySides{ext, s.rhs, std::max(scale, s.scale)})};
    });
    num("max-identity", 1e-8, [](TrialContext& c) {
      const SkylineBoard B = board_of(c.spec);
      std::vector<Residual> out;
      for (int k = 0; k <= 3; ++k) out.push_back(residual(max_identity_sides(c.fam, B, k)));
      return out;
    });

    // Recursions against enumeration.
    num("recursion-rook", 1e-9, [](TrialContext& c) {
      const SkylineBoard B = board_of(c.spec);
      const auto a = rook_numbers(c.fam, B), b = rook_numbers_via_recursion(c.fam, B);
      std::vector<Residual> out;
      for (std::size_t k = 0; k < a.size(); ++k)
        out.push_back(residual(a[k], b[k], rook_scale(c.fam, B, static_cast<int>(k))));
      return out;
    });
    num("recursion-file", 1e-9, [](TrialContext& c) {
      const SkylineBoard B = board_of(c.spec);
      const auto a = file_numbers(c.fam, B), b = file_numbers_via_recursion(c.fam, B);
      std::vector<Residual> out;
      for (std::size_t k = 0; k < a.size(); ++k)
        out.push_back(residual(a[k], b[k], file_scale(c.fam, B, static_cast<int>(k))));
      return out;
    });
    num("recursion-genstirling2", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      const int I = c.spec.I, J = c.spec.J;
      return table_residuals(gen_stirling2_via_recursion(c.fam, I, J, n),
                             [&](int m, int k) { return gen_stirling2(c.fam, I, J, m, k); },
                             [&](int m, int k) { return m == 0 ? 1.0 : rook_scale_j(c.fam, ij_board(I, J, m), m - k, J); }, 0);
    });
    num("recursion-genstirling1", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      const int I = c.spec.I, J = c.spec.J;
      return table_residuals(gen_stirling1_via_recursion(c.fam, I, J, n),
                             [&](int m, int k) { return gen_stirling1(c.fam, I, J, m, k); },
                             [&](int m, int k) {
                               return m == 0 ? 1.0 : file_scale(c.fam, ij_board(I, J, m), m - k, FileWeighting::AboveRook);
                             }, 0);
    });
    for (const std::string kind : {"stirling2", "stirling2r", "lah", "lahr", "stirling1", "stirling1r"}) {
      num("recursion-" + kind, 1e-9, [kind](TrialContext& c) {
        const KeyValues kv = parse_params(c.spec.board);
        const SpecialFamily f = SpecialFamily::parse(kind, kv.get_int("r", c.spec.r));
        const int n0 = f.restricted() ? f.r : 0;
        return table_residuals(special_table_via_recursion(f, c.fam, kv.get_int("n")),
                               [&](int m, int k) { return special_number(f, c.fam, m, k); },
                               [&](int m, int k) { return special_scale(f, c.fam, m, k); }, n0);
      });
    }
    // The binomial recursion shifts a by q^{k-1} and b by q^{2k-2}.
    num("recursion-binomial", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      std::vector<Residual> out;
      for (int m = 0; m < n; ++m)
        for (int k = 0; k <= m + 1; ++k) {
          const cplx lhs = elliptic_binomial(c.fam, m + 1, k);
          const cplx t1 = elliptic_binomial(c.fam, m, k);
          const cplx t2 = k >= 1 ? elliptic_binomial(c.fam, m, k - 1) *
                                       big_weight(shift_ab(c.fam, k - 1, 2L * (k - 1)), static_cast<long>(m + 1 - k))
                                 : cplx(0.0);
          out.push_back(residual(IdentitySides{lhs, t1 + t2, std::abs(t1) + std::abs(t2)}));
        }
      return out;
    });
    num("recursion-number", 1e-10, [](TrialContext& c) {
      std::vector<Residual> out;
      cplx sum(1.0);
      double scale = 1.0;
      for (int n = 2; n <= 8; ++n) {
        const cplx W = big_weight(c.fam, static_cast<long>(n - 1));
        sum += W;
        scale += std::abs(W);
        out.push_back(residual(IdentitySides{elliptic_number(c.fam, static_cast<long>(n)), sum, scale}));
      }
      const long y = 2;
      const cplx t1 = elliptic_number(c.fam, y);
      const cplx t2 = big_weight(c.fam, y) * elliptic_number(shifted(c.fam, y), c.z - static_cast<double>(y));
      out.push_back(residual(IdentitySides{elliptic_number(c.fam, c.z), t1 + t2, std::abs(t1) + std::abs(t2)}));
      return out;
    });

    // Closed forms against enumeration.
    num("closed-form-full-product", 1e-9, [](TrialContext& c) {
      const SkylineBoard B = board_of(c.spec);
      return std::vector<Residual>{residual(rook_number(c.fam, B, B.n()), rook_number_full_product(c.fam, B))};
    });
    num("closed-form-aqrect", 1e-9, [](TrialContext& c) {
      const KeyValues kv = parse_params(c.spec.board);
      const int l = kv.get_int("l"), mm = kv.get_int("m");
      const Aq& f = family_as<Aq>(c.fam, "closed-form-aqrect");
      std::vector<Residual> out;
      for (int k = 0; k <= std::min(l, mm); ++k)
        out.push_back(residual(rook_number(c.fam, rectangle(l, mm), k), rect_rook_number_aq(l, mm, k, f.a, f.q),
                               rook_scale(c.fam, rectangle(l, mm), k)));
      return out;
    });
    num("closed-form-lah", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      std::vector<Residual> out;
      if (auto* f = std::get_if<Aq>(&c.fam)) {
        for (int k = 0; k <= n; ++k)
          out.push_back(residual(lah(c.fam, n, k), lah_aq_closed(n, k, f->a, f->q), special_scale({SpecialKind::Lah}, c.fam, n, k)));
      } else {
        const PlainQ& g = family_as<PlainQ>(c.fam, "closed-form-lah");
        for (int k = 0; k <= n; ++k)
          out.push_back(residual(lah(c.fam, n, k), lah_q_closed(n, k, g.q), special_scale({SpecialKind::Lah}, c.fam, n, k)));
      }
      return out;
    });
    num("closed-form-lahr", 1e-9, [](TrialContext& c) {
      const KeyValues kv = parse_params(c.spec.board);
      const int n = kv.get_int("n"), r = kv.get_int("r", c.spec.r);
      std::vector<Residual> out;
      if (auto* f = std::get_if<Aq>(&c.fam)) {
        for (int k = r; k <= n; ++k)
          out.push_back(residual(lah_r(c.fam, n, k, r), lah_r_aq_closed(n, k, r, f->a, f->q),
                                 special_scale({SpecialKind::LahR, r}, c.fam, n, k)));
      } else {
        const PlainQ& g = family_as<PlainQ>(c.fam, "closed-form-lahr");
        for (int k = r; k <= n; ++k)
          out.push_back(residual(lah_r(c.fam, n, k, r), lah_r_q_closed(n, k, r, g.q),
                                 special_scale({SpecialKind::LahR, r}, c.fam, n, k)));
      }
      return out;
    });
    num("closed-form-abel", 1e-9, [](TrialContext& c) {
      const KeyValues kv = parse_params(c.spec.board);
      const int n = kv.get_int("n"), mm = kv.get_int("m", n), r = kv.get_int("r", c.spec.r);
      std::vector<Residual> out;
      for (int k = r; k <= n; ++k)
        out.push_back(residual(abel_gen(c.fam, mm, n, k, r), abel_gen_closed(c.fam, mm, n, k, r),
                               special_scale({SpecialKind::AbelGenR, r, mm}, c.fam, n, k)));
      return out;
    });
    num("closed-form-stirling2", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      std::vector<Residual> out;
      for (int k = 0; k <= std::min(n, 3); ++k)
        out.push_back(residual(stirling2(c.fam, n, k), stirling2_small_k(c.fam, n, k),
                               special_scale({SpecialKind::Stirling2}, c.fam, n, k)));
      return out;
    });
    num("closed-form-carlitz", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      const PlainQ& g = family_as<PlainQ>(c.fam, "closed-form-carlitz");
      std::vector<Residual> out;
      for (int k = 0; k <= n; ++k)
        out.push_back(residual(stirling2(c.fam, n, k), carlitz_stirling2_q(n, k, g.q),
                               special_scale({SpecialKind::Stirling2}, c.fam, n, k)));
      return out;
    });
    num("rg-statistic", 1e-10, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      const int I = c.spec.I, J = c.spec.J;
      std::vector<Residual> out;
      for (const RGWord& g : enumerate_rg_words(I, J, n)) {
        const cplx lhs = rook_weight(c.fam, phi(g));
        out.push_back(residual(lhs, gen_stirling2_prefactor(c.fam, I, J, g.k()) * rg_word_weight(c.fam, g)));
      }
      for (int k = 0; k <= n; ++k) {
        double scale = 0.0;
        for (const RGWord& g : enumerate_rg_words(I, J, n, k)) scale += std::abs(rg_word_weight(c.fam, g));
        out.push_back(residual(statistic_D(c.fam, I, J, n, k), gen_stirling2_normalized(c.fam, I, J, n, k), scale));
      }
      return out;
    });
    // Lower-triangular inverse pair: sum_k S_{n,k} s_{k,r} = [r = n], residual relative to sum |terms|.
    num("matrix-inverse", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      std::vector<Residual> out;
      for (int m = 0; m <= n; ++m)
        for (int r = 0; r <= m; ++r) {
          cplx sum(0.0);
          double scale = 0.0;
          for (int k = r; k <= m; ++k) {
            const double sign = (k - r) % 2 ? -1.0 : 1.0;
            const cplx t = gen_stirling2_normalized(c.fam, 0, 1, m, k) * sign * gen_stirling1(c.fam, 0, 1, k, r);
            sum += t;
            scale += std::abs(t);
          }
          out.push_back({std::abs(sum - cplx(r == m ? 1.0 : 0.0)) / std::max(scale, 1e-300), 1.0});
        }
      return out;
    });
    num("rook-equivalence", 1e-9, [](TrialContext& c) {
      const int n = parse_params(c.spec.board).get_int("n");
      std::vector<int> h(n);
      for (int i = 0; i < n; ++i) h[i] = 2 * i;
      const auto a = rook_numbers(c.fam, rectangle(n, n - 1)), b = rook_numbers(c.fam, SkylineBoard(h));
      std::vector<Residual> out;
      for (int k = 0; k <= n; ++k)
        out.push_back(residual(a[k], b[k],
                               std::max(rook_scale(c.fam, rectangle(n, n - 1), k), rook_scale(c.fam, SkylineBoard(h), k))));
      return out;
    });
    // Every column order of the board gives the same file numbers.
    num("file-permutation", 1e-9, [](TrialContext& c) {
      SkylineBoard B = board_of(c.spec);
      const auto ref = file_numbers(c.fam, B);
      std::vector<int> h = B.heights;
      std::sort(h.begin(), h.end());
      std::vector<Residual> out;
      do {
        const SkylineBoard P(h);
        const auto v = file_numbers(c.fam, P);
        for (std::size_t k = 0; k < v.size(); ++k) {
          const int kk = static_cast<int>(k);
          out.push_back(residual(v[k], ref[k], std::max(file_scale(c.fam, P, kk), file_scale(c.fam, B, kk))));
        }
      } while (std::next_permutation(h.begin(), h.end()));
      return out;
    });

    // Analytic substrate.
    num("theta-inversion", 1e-10, [](TrialContext& c) { return analytic_theta(c, 0); });
    num("quasi-periodicity", 1e-10, [](TrialContext& c) { return analytic_theta(c, 1); });
    num("addition-formula", 1e-10, [](TrialContext& c) { return analytic_theta(c, 2); });
    num("ellipticity", 1e-9, [](TrialContext& c) {
      const FullElliptic f = family_as<FullElliptic>(c.fam, "ellipticity");
      const cplx p = f.p.value();
      std::vector<Residual> out;
      for (long k = -2; k <= 5; ++k) {
        const cplx w = small_weight(c.fam, k);
        out.push_back(residual(small_weight(FullElliptic{f.a * p, f.b, f.q, f.p}, k), w));
        out.push_back(residual(small_weight(FullElliptic{f.a, f.b * p, f.q, f.p}, k), w));
      }
      return out;
    });
    num("weight-shift", 1e-10, [](TrialContext& c) {
      std::vector<Residual> out;
      for (long k = 0; k <= 3; ++k)
        for (long n = 0; n <= 4; ++n) {
          out.push_back(residual(small_weight(c.fam, k + n), small_weight(shifted(c.fam, k), n)));
          out.push_back(residual(big_weight(c.fam, k + n), big_weight(c.fam, k) * big_weight(shifted(c.fam, k), n)));
        }
      cplx prod(1.0);
      for (long k = 1; k <= 5; ++k) {
        prod *= small_weight(c.fam, k);
        out.push_back(residual(big_weight(c.fam, k), prod));
      }
      return out;
    });

    // Degenerations.
    num("degeneration-p0", 1e-12, [](TrialContext& c) {
      const SkylineBoard B = board_of(c.spec);
      const FullElliptic& f = family_as<FullElliptic>(c.fam, "degeneration-p0");
      const WeightFamily e = FullElliptic{f.a, f.b, f.q, Nome()}, g = ABq{f.a, f.b, f.q};
      const auto x = rook_numbers(e, B), y = rook_numbers(g, B);
      std::vector<Residual> out;
      for (std::size_t k = 0; k < x.size(); ++k) out.push_back(residual(x[k], y[k], rook_scale(g, B, static_cast<int>(k))));
      for (long k = 0; k <= 4; ++k) out.push_back(residual(elliptic_number(e, c.z + static_cast<double>(k)), elliptic_number(g, c.z + static_cast<double>(k))));
      return out;
    });
    num("degeneration-pq", 1e-10, [](TrialContext& c) {
      const FrakPQ& f = family_as<FrakPQ>(c.fam, "degeneration-pq");
      const WeightFamily g = ABq{f.a, f.b, f.q / f.frak_p};
      std::vector<Residual> out;
      for (long k = -2; k <= 5; ++k) {
        out.push_back(residual(small_weight(c.fam, k), small_weight(g, k)));
        if (k != 0) out.push_back(residual(elliptic_number(c.fam, k), elliptic_number(g, k)));
      }
      // noninteger z: (q/p)^z = q^z / p^z only when the principal logs add up
      if (std::abs(std::log(f.q / f.frak_p) - (std::log(f.q) - std::log(f.frak_p))) < 1e-12)
        out.push_back(residual(elliptic_number(c.fam, c.z), elliptic_number(g, c.z)));
      return out;
    });

    // Bijections: exhaustive roundtrips and exact counts.
    exact("bijection-partition", [](const CheckSpec& s) {
      const int n = parse_params(s.board).get_int("n");
      ExactOutcome o;
      std::set<SetPartition> seen;
      for (int k = 0; k <= n; ++k) {
        long cnt = 0;
        for (const Placement& P : enumerate_placements(staircase(n), PlacementKind::rook(), n - k)) {
          const SetPartition p = rooks_to_partition(P);
          ++cnt;
          o.ok = o.ok && static_cast<int>(p.size()) == k && partition_to_rooks(p, n).cells() == P.cells() && seen.insert(p).second;
        }
        o.examined += cnt;
        o.ok = o.ok && bigint(cnt) == stirling2_count(n, k);
      }
      return o;
    });
    exact("bijection-cycles", [](const CheckSpec& s) {
      const KeyValues kv = parse_params(s.board);
      const int n = kv.get_int("n"), r = kv.get_int("r", s.r);
      ExactOutcome o;
      std::set<std::vector<std::vector<int>>> seen;
      for (int k = 0; k <= n; ++k) {
        long cnt = 0;
        for (const Placement& Q : enumerate_placements(staircase(n, r), PlacementKind::file(), n - k)) {
          const PermutationCycles pc = file_to_cycles(Q);
          ++cnt;
          std::set<const std::vector<int>*> hit;
          for (int x = 1; x <= r; ++x)
            for (const auto& cyc : pc.cycles)
              if (std::find(cyc.begin(), cyc.end(), x) != cyc.end()) hit.insert(&cyc);
          o.ok = o.ok && static_cast<int>(pc.cycles.size()) == k && static_cast<int>(hit.size()) == std::min(r, n) &&
                 cycles_to_file(pc, n, r).cells() == Q.cells() && seen.insert(pc.cycles).second;
        }
        o.examined += cnt;
        o.ok = o.ok && bigint(cnt) == stirling1_count(n, k, r);
      }
      return o;
    });
    exact("bijection-abel", [](const CheckSpec& s) {
      const KeyValues kv = parse_params(s.board);
      const int n = kv.get_int("n"), m = kv.get_int("m", n), r = kv.get_int("r", s.r);
      ExactOutcome o;
      std::set<std::pair<std::map<int, int>, std::map<int, int>>> seen;
      for (int k = 0; k <= n; ++k) {
        long cnt = 0;
        for (const Placement& Q : enumerate_placements(abel_board(m, n, r), PlacementKind::file(), n - k)) {
          const RootedForest F = file_to_forest(Q, m, n, r);
          ++cnt;
          o.ok = o.ok && valid_abel_forest(F, m, n, r, k) && forest_to_file(F, m, n, r).cells() == Q.cells() &&
                 seen.insert({F.parent, F.colors}).second;
        }
        o.examined += cnt;
        o.ok = o.ok && bigint(cnt) == forest_count(m, n, k, r);
      }
      return o;
    });
    exact("bijection-tubes", [](const CheckSpec& s) {
      const KeyValues kv = parse_params(s.board);
      const int n = kv.get_int("n"), r = kv.get_int("r", s.r);
      ExactOutcome o;
      std::set<std::vector<std::vector<int>>> seen;
      for (int k = r; k <= n; ++k) {
        long cnt = 0;
        for (const Placement& P : enumerate_placements(rectangle(n + r - 1, n - r), PlacementKind::rook(), n - k)) {
          const TubePlacement T = rooks_to_tubes(P, n, r);
          ++cnt;
          std::set<int> all;
          bool nonempty = true;
          for (const auto& t : T.tubes) {
            nonempty = nonempty && !t.empty();
            all.insert(t.begin(), t.end());
          }
          std::set<std::size_t> holders;
          for (int x = 1; x <= r; ++x)
            for (std::size_t i = 0; i < T.tubes.size(); ++i)
              if (std::find(T.tubes[i].begin(), T.tubes[i].end(), x) != T.tubes[i].end()) holders.insert(i);
          o.ok = o.ok && nonempty && static_cast<int>(T.tubes.size()) == k && static_cast<int>(all.size()) == n &&
                 static_cast<int>(holders.size()) == r && tubes_to_rooks(T, n, r).cells() == P.cells() &&
                 seen.insert(T.tubes).second;
        }
        o.examined += cnt;
        o.ok = o.ok && bigint(cnt) == lah_r_count(n, k, r);
      }
      return o;
    });
    exact("bijection-rg", [](const CheckSpec& s) {
      const KeyValues kv = parse_params(s.board);
      const int n = kv.get_int("n"), I = kv.get_int("I", s.I), J = kv.get_int("J", s.J);
      ExactOutcome o;
      const SkylineBoard B = ij_board(I, J, n);
      for (int k = 0; k <= n; ++k) {
        const auto words = enumerate_rg_words(I, J, n, k);
        std::set<std::vector<std::optional<int>>> seen;
        for (const RGWord& g : words) {
          const Placement P = phi(g);
          o.ok = o.ok && P.size() == n - k && phi_inverse(P, I, J) == g && seen.insert(P.rows).second;
        }
        o.examined += static_cast<long>(words.size());
        o.ok = o.ok && static_cast<long>(words.size()) == count_placements(B, PlacementKind::jattack(J), n - k);
      }
      return o;
    });
    return m;
  }();
  return reg;
}

}  // namespace detail

inline std::vector<std::string> identity_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : detail::identity_registry()) out.push_back(k);
  return out;
}

/// Runs one identity over `trials` generic points. Points where a denominator vanishes or
/// where floating-point cancellation exceeds `max_condition` are redrawn and counted.
inline CheckReport run_check(const CheckSpec& spec) {
  const auto& reg = detail::identity_registry();
  auto it = reg.find(spec.identity);
  if (it == reg.end()) throw UnknownIdentity("unknown identity: " + spec.identity);
  const detail::IdentityEntry& e = it->second;

  CheckReport rep;
  rep.identity_name = spec.identity;
  rep.board = spec.board;
  rep.family = family_tag_name(spec.family);
  rep.seed = spec.seed;

  if (e.exact) {
    const auto o = e.exact(spec);
    rep.trials = static_cast<int>(o.examined);
    rep.max_rel_err = o.ok ? 0.0 : 1.0;
    rep.passed = o.ok;
    return rep;
  }

  SamplerConfig cfg = spec.sampler;
  cfg.seed = spec.seed;
  Sampler sampler(cfg);
  const double tol = spec.tol.value_or(e.default_tol);
  bool exhausted = false;
  for (int t = 0; t < spec.trials; ++t) {
    bool done = false;
    for (int attempt = 0; attempt <= cfg.max_resamples && !done; ++attempt) {
      TrialContext ctx{spec, sampler.family(spec.family), cplx(0.0), sampler};
      ctx.z = spec.z ? *spec.z : sampler.z();
      try {
        const auto res = e.numeric(ctx);
        bool ill = false;
        double worst = 0.0;
        for (const Residual& r : res) {
          ill = ill || !(r.condition <= max_condition);
          worst = std::max(worst, std::isnan(r.err) ? INFINITY : r.err);
        }
        if (ill && spec.family != FamilyTag::Trivial) {
          ++rep.resamples;
          continue;
        }
        rep.max_rel_err = std::max(rep.max_rel_err, worst);
        done = true;
      } catch (const PoleEncountered&) {
        ++rep.resamples;
      }
    }
    if (!done) exhausted = true;
    ++rep.trials;
  }
  rep.passed = !exhausted && rep.max_rel_err < tol;
  return rep;
}

// Tables of special numbers.

enum class TableFormat { Csv, Json };

/// Exact integer table at trivial weights.
inline std::vector<std::vector<bigint>> special_table_exact(const SpecialFamily& f, int n_max) {
  std::vector<std::vector<bigint>> t(n_max + 1);
  const auto one = [](long) { return bigint(1); };
  for (int n = 0; n <= n_max; ++n) {
    t[n].resize(n + 1);
    for (int k = 0; k <= n; ++k) t[n][k] = special_value<bigint>(f, n, k, one);
  }
  return t;
}

inline std::vector<std::vector<cplx>> special_table(const SpecialFamily& f, const WeightFamily& fam, int n_max) {
  std::vector<std::vector<cplx>> t(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    t[n].resize(n + 1);
    for (int k = 0; k <= n; ++k) t[n][k] = special_number(f, fam, n, k);
  }
  return t;
}

/// Writes rows (family, n, k, value) at trivial weights, (family, n, k, re, im) otherwise.
inline void emit_table(const SpecialFamily& f, int n_max, FamilyTag tag, const WeightFamily& fam, TableFormat fmt,
                       std::ostream& os) {
  const bool exact = tag == FamilyTag::Trivial;
  std::vector<std::vector<bigint>> ex;
  std::vector<std::vector<cplx>> nu;
  if (exact) ex = special_table_exact(f, n_max);
  else nu = special_table(f, fam, n_max);
  if (fmt == TableFormat::Csv) {
    os << (exact ? "family,n,k,value\n" : "family,n,k,re,im\n");
    os.precision(17);
    for (int n = 0; n <= n_max; ++n)
      for (int k = 0; k <= n; ++k) {
        os << f.name() << ',' << n << ',' << k << ',';
        if (exact) os << ex[n][k] << '\n';
        else os << nu[n][k].real() << ',' << nu[n][k].imag() << '\n';
      }
    return;
  }
  nlohmann::json j;
  j["family"] = f.name();
  j["weights"] = family_tag_name(tag);
  j["rows"] = nlohmann::json::array();
  for (int n = 0; n <= n_max; ++n)
    for (int k = 0; k <= n; ++k) {
      nlohmann::json row{{"family", f.name()}, {"n", n}, {"k", k}};
      if (exact) row["value"] = ex[n][k].str();
      else {
        row["re"] = nu[n][k].real();
        row["im"] = nu[n][k].imag();
      }
      j["rows"].push_back(row);
    }
  os << j.dump(2) << '\n';
}

}  // namespace ellrook
