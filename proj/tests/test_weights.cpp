#include "support.hpp"

using namespace ellrook;
using ellrook::test::well_conditioned;
using ellrook::test::rational;
using ellrook::test::sampler;

namespace {

// Weights built straight from theta quotients.
cplx w_oracle(cplx a, cplx b, cplx q, Nome p, cplx k) {
  const cplx qk = cpow(q, k);
  return theta_multi({a * qk * qk * q, b * qk, a * qk / (q * q * b)}, p) /
         theta_multi({a * qk * qk / q, b * qk * q * q, a * qk / b}, p) * q;
}

cplx W_oracle(cplx a, cplx b, cplx q, Nome p, cplx k) {
  const cplx qk = cpow(q, k);
  return theta_multi({a * q * qk * qk, b * q, b * q * q, a / (q * b), a / b}, p) /
         theta_multi({a * q, b * qk * q, b * qk * q * q, a * qk / (q * b), a * qk / b}, p) * qk;
}

cplx number_oracle(cplx a, cplx b, cplx q, Nome p, cplx z) {
  const cplx qz = cpow(q, z);
  return theta_multi({qz, a * qz, b * q * q, a / b}, p) / theta_multi({q, a * q, b * qz * q, a * qz / (q * b)}, p);
}

const std::vector<FamilyTag> all_tags{FamilyTag::Elliptic, FamilyTag::ABq,    FamilyTag::Aq,
                                      FamilyTag::ZeroBq,   FamilyTag::PlainQ, FamilyTag::FrakPQ};

}  // namespace

TEST(Weights, EllipticMatchesThetaQuotients) {
  Sampler s = sampler(21);
  for (int t = 0; t < 100; ++t) {
    const FullElliptic f = std::get<FullElliptic>(s.family(FamilyTag::Elliptic));
    const cplx z = s.z();
    for (long k = -3; k <= 6; ++k) {
      EXPECT_LT(rel_diff(small_weight(f, k), w_oracle(f.a, f.b, f.q, f.p, cplx(k))), 1e-11);
      EXPECT_LT(rel_diff(big_weight(f, k), W_oracle(f.a, f.b, f.q, f.p, cplx(k))), 1e-11);
    }
    EXPECT_LT(rel_diff(small_weight(f, z), w_oracle(f.a, f.b, f.q, f.p, z)), 1e-11);
    EXPECT_LT(rel_diff(elliptic_number(f, z), number_oracle(f.a, f.b, f.q, f.p, z)), 1e-11);
  }
}

TEST(Weights, BigWeightZeroIsOne) {
  Sampler s = sampler(22);
  for (FamilyTag tag : all_tags) EXPECT_EQ(big_weight(s.family(tag), 0L), cplx(1.0)) << family_tag_name(tag);
}

TEST(Weights, ElementaryNumbers) {
  Sampler s = sampler(23);
  for (FamilyTag tag : all_tags) {
    const WeightFamily f = s.family(tag);
    EXPECT_LT(std::abs(elliptic_number(f, 0L)), 1e-14) << family_tag_name(tag);
    EXPECT_LT(std::abs(elliptic_number(f, 1L) - 1.0), 1e-13) << family_tag_name(tag);
  }
}

TEST(Weights, PlainQ) {
  const cplx q(0.3, 0.4);
  const WeightFamily f = PlainQ{q};
  EXPECT_EQ(small_weight(f, 5L), q);
  EXPECT_LT(rel_diff(big_weight(f, 4L), ipow(q, 4)), 1e-15);
  EXPECT_LT(rel_diff(elliptic_number(f, 4L), q_number(q, 4)), 1e-15);
  EXPECT_LT(rel_diff(elliptic_binomial(f, 5, 2), q_binomial(q, 5, 2)), 1e-14);
}

TEST(Weights, TrivialFamilyCounts) {
  const WeightFamily one = PlainQ{cplx(1.0)};
  EXPECT_EQ(elliptic_number(one, cplx(2.5, 0.5)), cplx(2.5, 0.5));
  EXPECT_EQ(elliptic_binomial(one, 6, 3), cplx(20.0));
  EXPECT_EQ(small_weight(one, 7L), cplx(1.0));
}

// Limits computed by hand from the a,b;q weights.
TEST(Weights, AqIsTheHandComputedLimit) {
  const cplx a(0.8, 0.3), q(0.5, 0.6);
  const WeightFamily f = Aq{a, q};
  for (long k = -2; k <= 5; ++k) {
    const cplx expect = (1.0 - a * ipow(q, 2 * k + 1)) / ((1.0 - a * ipow(q, 2 * k - 1)) * q);
    EXPECT_LT(rel_diff(small_weight(f, k), expect), 1e-14);
  }
  EXPECT_LT(rel_diff(elliptic_number(f, 3L), (1.0 - ipow(q, 3)) * (1.0 - a * ipow(q, 3)) /
                                                  ((1.0 - q) * (1.0 - a * q)) * ipow(q, -2)),
            1e-14);
}

TEST(Weights, ZeroBqIsTheHandComputedLimit) {
  const cplx b(1.3, -0.4), q(0.5, 0.6);
  const WeightFamily f = ZeroBq{b, q};
  for (long k = -2; k <= 5; ++k) {
    const cplx expect = q * (1.0 - b * ipow(q, k)) / (1.0 - b * ipow(q, k + 2));
    EXPECT_LT(rel_diff(small_weight(f, k), expect), 1e-14);
  }
}

TEST(Weights, DegenerateFamiliesApproachTheirLimits) {
  const cplx a(0.8, 0.3), b(1.3, -0.4), q(0.5, 0.6);
  for (long k = -2; k <= 4; ++k) {
    EXPECT_LT(rel_diff(small_weight(ABq{a, 1e-13 * b, q}, k), small_weight(Aq{a, q}, k)), 1e-9);
    EXPECT_LT(rel_diff(small_weight(ABq{1e-13 * a, b, q}, k), small_weight(ZeroBq{b, q}, k)), 1e-9);
    EXPECT_LT(rel_diff(small_weight(Aq{1e13 * a, q}, k), small_weight(PlainQ{q}, k)), 1e-9);
  }
}

TEST(Weights, FrakPQMatchesDisplayedFormula) {
  Sampler s = sampler(24);
  for (int t = 0; t < 50; ++t) {
    const FrakPQ f = std::get<FrakPQ>(s.family(FamilyTag::FrakPQ));
    const cplx P = f.frak_p, q = f.q, a = f.a, b = f.b;
    for (long k = -2; k <= 5; ++k) {
      const cplx Pk = ipow(P, k), qk = ipow(q, k);
      const cplx expect = (Pk * Pk * P - a * qk * qk * q) * (Pk - b * qk) * (b * Pk / (P * P) - a * qk / (q * q)) /
                          ((Pk * Pk / P - a * qk * qk / q) * (Pk * P * P - b * qk * q * q) * (b * Pk - a * qk)) * P * q;
      EXPECT_LT(rel_diff(small_weight(f, k), expect), 1e-11);
      EXPECT_LT(rel_diff(small_weight(f, k), small_weight(ABq{a, b, q / P}, k)), 1e-11);
      EXPECT_LT(rel_diff(elliptic_number(f, k), elliptic_number(ABq{a, b, q / P}, k)), 1e-10);
    }
  }
}

TEST(Weights, PoleIsReported) {
  const cplx q(0.5, 0.2);
  EXPECT_THROW(small_weight(Aq{1.0 / q, q}, 1L), PoleEncountered);
}

TEST(Weights, ShiftParams) {
  const auto [a0, b0] = shift_params(cplx(2.0), cplx(3.0), cplx(0.5), 0);
  EXPECT_EQ(a0, cplx(2.0));
  EXPECT_EQ(b0, cplx(3.0));
  const auto [a1, b1] = shift_params(cplx(1.0), cplx(1.0), cplx(2.0), 1);
  EXPECT_EQ(a1, cplx(4.0));
  EXPECT_EQ(b1, cplx(2.0));
}

TEST(Weights, BinomialBoundaries) {
  Sampler s = sampler(25);
  for (FamilyTag tag : all_tags) {
    const WeightFamily f = s.family(tag);
    EXPECT_EQ(elliptic_binomial(f, 3, 5), cplx(0.0));
    EXPECT_EQ(elliptic_binomial(f, 3, -1), cplx(0.0));
    EXPECT_LT(std::abs(elliptic_binomial(f, 0, 0) - 1.0), 1e-15);
    EXPECT_LT(std::abs(elliptic_binomial(f, 4, 4) - 1.0), 1e-13);
  }
}

TEST(QAnalogues, ExactValues) {
  EXPECT_EQ(q_number(2L, 3), 7L);
  EXPECT_EQ(q_factorial(1L, 3), 6L);
  EXPECT_EQ(q_falling(1L, 4, 2), 12L);
  const rational q(1, 2);
  EXPECT_EQ(q_binomial(q, 4, 2), rational(1) + q + 2 * q * q + q * q * q + q * q * q * q);
}

// Invariants over generic points of every family.

TEST(WeightsProperty, BigWeightIsProductOfSmall) {
  Sampler s = sampler(31);
  for (FamilyTag tag : all_tags)
    for (int t = 0; t < 20; ++t) {
      const WeightFamily f = s.family(tag);
      cplx prod(1.0);
      for (long k = 1; k <= 6; ++k) {
        prod *= small_weight(f, k);
        EXPECT_LT(rel_diff(big_weight(f, k), prod), 1e-11) << family_tag_name(tag);
      }
    }
}

TEST(WeightsProperty, ShiftRelations) {
  Sampler s = sampler(32);
  for (FamilyTag tag : all_tags)
    for (int t = 0; t < 20; ++t) {
      const WeightFamily f = s.family(tag);
      for (long k = 0; k <= 3; ++k)
        for (long n = -2; n <= 4; ++n) {
          EXPECT_LT(rel_diff(small_weight(f, k + n), small_weight(shifted(f, k), n)), 1e-11) << family_tag_name(tag);
          if (n >= 0) {
            EXPECT_LT(rel_diff(big_weight(f, k + n), big_weight(f, k) * big_weight(shifted(f, k), n)), 1e-11)
                << family_tag_name(tag);
          }
        }
    }
}

TEST(WeightsProperty, NumbersTelescope) {
  Sampler s = sampler(33);
  for (FamilyTag tag : all_tags)
    for (int t = 0; t < 20; ++t) {
      for (long n = 1; n <= 8; ++n) {
        const IdentitySides sides = well_conditioned(s, tag, [n](const WeightFamily& f) {
          IdentitySides out{elliptic_number(f, n), cplx(0.0)};
          for (long j = 0; j < n; ++j) {
            out.rhs += big_weight(f, j);
            out.scale += std::abs(big_weight(f, j));
          }
          return out;
        });
        EXPECT_LT(sides.rel_err(), 1e-10) << family_tag_name(tag);
      }
    }
}

TEST(WeightsProperty, NumberSplitsAtAnyIntegerPoint) {
  Sampler s = sampler(34);
  for (FamilyTag tag : all_tags)
    for (int t = 0; t < 20; ++t) {
      const WeightFamily f = s.family(tag);
      const cplx z = s.z();
      for (long y = 1; y <= 3; ++y) {
        const cplx rhs = elliptic_number(f, y) + big_weight(f, y) * elliptic_number(shifted(f, y), z - cplx(y));
        EXPECT_LT(rel_diff(elliptic_number(f, z), rhs), 1e-10) << family_tag_name(tag);
      }
    }
}

TEST(WeightsProperty, BigWeightStepAtComplexArgument) {
  Sampler s = sampler(35);
  for (int t = 0; t < 50; ++t) {
    const WeightFamily f = s.family(FamilyTag::Elliptic);
    const cplx k = s.z();
    EXPECT_LT(rel_diff(big_weight(f, k + 1.0), big_weight(f, k) * small_weight(f, k + 1.0)), 1e-10);
  }
}

TEST(WeightsProperty, TotalEllipticity) {
  Sampler s = sampler(36);
  for (int t = 0; t < 100; ++t) {
    const FullElliptic f = std::get<FullElliptic>(s.family(FamilyTag::Elliptic));
    const cplx p = f.p.value();
    for (long k = -2; k <= 5; ++k) {
      const cplx w = small_weight(f, k);
      EXPECT_LT(rel_diff(small_weight(FullElliptic{f.a * p, f.b, f.q, f.p}, k), w), 1e-10);
      EXPECT_LT(rel_diff(small_weight(FullElliptic{f.a, f.b * p, f.q, f.p}, k), w), 1e-10);
    }
  }
}

TEST(WeightsProperty, NomeZeroIsTheABqFamily) {
  Sampler s = sampler(37);
  for (int t = 0; t < 50; ++t) {
    const ABq g = std::get<ABq>(s.family(FamilyTag::ABq));
    const FullElliptic f{g.a, g.b, g.q, Nome()};
    const cplx z = s.z();
    for (long k = -2; k <= 5; ++k) EXPECT_LT(rel_diff(small_weight(f, k), small_weight(g, k)), 1e-14);
    EXPECT_LT(rel_diff(elliptic_number(f, z), elliptic_number(g, z)), 1e-13);
  }
}

TEST(WeightsProperty, BinomialRecursion) {
  Sampler s = sampler(38);
  for (FamilyTag tag : all_tags)
    for (int t = 0; t < 10; ++t) {
      const WeightFamily f = s.family(tag);
      for (long n = 0; n < 6; ++n)
        for (long k = 1; k <= n + 1; ++k) {
          // the b-parameter shift is q^{2k-2}, the a-parameter shift q^{k-1}
          WeightFamily g = std::visit(
              [k](const auto& x) -> WeightFamily {
                using F = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<F, FullElliptic>)
                  return FullElliptic{x.a * ipow(x.q, k - 1), x.b * ipow(x.q, 2 * k - 2), x.q, x.p};
                else if constexpr (std::is_same_v<F, ABq>)
                  return ABq{x.a * ipow(x.q, k - 1), x.b * ipow(x.q, 2 * k - 2), x.q};
                else if constexpr (std::is_same_v<F, Aq>)
                  return Aq{x.a * ipow(x.q, k - 1), x.q};
                else if constexpr (std::is_same_v<F, ZeroBq>)
                  return ZeroBq{x.b * ipow(x.q, 2 * k - 2), x.q};
                else if constexpr (std::is_same_v<F, PlainQ>)
                  return x;
                else {
                  const cplx Q = x.q / x.frak_p;
                  return FrakPQ{x.a * ipow(Q, k - 1), x.b * ipow(Q, 2 * k - 2), x.frak_p, x.q};
                }
              },
              f);
          const cplx t1 = elliptic_binomial(f, n, k), t2 = elliptic_binomial(f, n, k - 1) * big_weight(g, n + 1 - k);
          const double scale = std::abs(t1) + std::abs(t2);
          EXPECT_LT(std::abs(elliptic_binomial(f, n + 1, k) - t1 - t2) / scale, 1e-10) << family_tag_name(tag);
        }
    }
}
