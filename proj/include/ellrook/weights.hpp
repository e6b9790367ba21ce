#pragma once

#include <complex>
#include <string>
#include <utility>
#include <variant>

#include "ellrook/theta.hpp"

namespace ellrook {

// Weight families. Each has its own closed formulas; `shifted(s)` realizes
// a -> a q^{2s}, b -> b q^s (with q/frak_p as the base for FrakPQ).

struct FullElliptic {
  cplx a, b, q;
  Nome p;
};

struct ABq {
  cplx a, b, q;
};

struct Aq {
  cplx a, q;
};

struct ZeroBq {
  cplx b, q;
};

struct PlainQ {
  cplx q;
};

struct FrakPQ {
  cplx a, b, frak_p, q;
};

using WeightFamily = std::variant<FullElliptic, ABq, Aq, ZeroBq, PlainQ, FrakPQ>;

inline std::pair<cplx, cplx> shift_params(cplx a, cplx b, cplx q, long k) {
  return {a * ipow(q, 2 * k), b * ipow(q, k)};
}

namespace detail {

inline cplx denom(cplx d) {
  if (std::abs(d) < pole_threshold) throw PoleEncountered("vanishing factor in denominator");
  return d;
}

inline cplx om(cplx x) { return cplx(1.0) - x; }

// (x;q)_n for n >= 0 at p = 0.
inline cplx qpoch(cplx x, cplx q, long n) {
  cplx r(1.0);
  for (long k = 0; k < n; ++k, x *= q) r *= cplx(1.0) - x;
  return r;
}

inline cplx qpoch_den(cplx x, cplx q, long n) {
  cplx r(1.0);
  for (long k = 0; k < n; ++k, x *= q) r *= denom(cplx(1.0) - x);
  return r;
}

inline cplx qp_den(cplx x, cplx q, const Nome& p, long n) {
  cplx r(1.0);
  for (long k = 0; k < n; ++k, x *= q) r *= denom(theta(x, p));
  return r;
}

inline cplx ab_small(cplx a, cplx b, cplx q, const Nome& p, cplx k) {
  const cplx qk = cpow(q, k);
  const cplx num = theta_multi({a * qk * qk * q, b * qk, a * qk / (q * q * b)}, p);
  const cplx den = theta_denominator({a * qk * qk / q, b * qk * q * q, a * qk / b}, p);
  return q * num / den;
}

inline cplx ab_big(cplx a, cplx b, cplx q, const Nome& p, cplx k) {
  const cplx qk = cpow(q, k);
  const cplx num = theta_multi({a * q * qk * qk, b * q, b * q * q, a / (q * b), a / b}, p);
  const cplx den = theta_denominator({a * q, b * qk * q, b * qk * q * q, a * qk / (q * b), a * qk / b}, p);
  return qk * num / den;
}

inline cplx ab_number(cplx a, cplx b, cplx q, const Nome& p, cplx z) {
  const cplx qz = cpow(q, z);
  const cplx num = theta_multi({qz, a * qz, b * q * q, a / b}, p);
  const cplx den = theta_denominator({q, a * q, b * qz * q, a * qz / (q * b)}, p);
  return num / den;
}

inline cplx ab_binomial(cplx a, cplx b, cplx q, const Nome& p, long n, long k) {
  if (k < 0 || k > n) return cplx(0.0);
  const long m = n - k;
  const cplx qk = ipow(q, k);
  const cplx num = qp_shifted_factorial(q * qk, q, p, m) * qp_shifted_factorial(a * q * qk, q, p, m) *
                   qp_shifted_factorial(b * q * qk, q, p, m) * qp_shifted_factorial(a * q / (qk * b), q, p, m);
  const cplx den = qp_den(q, q, p, m) * qp_den(a * q, q, p, m) * qp_den(b * q * qk * qk, q, p, m) *
                   qp_den(a * q / b, q, p, m);
  return num / den;
}

}  // namespace detail

inline WeightFamily shifted(const WeightFamily& fam, long s) {
  return std::visit(
      [s](const auto& f) -> WeightFamily {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullElliptic>) {
          auto [a, b] = shift_params(f.a, f.b, f.q, s);
          return FullElliptic{a, b, f.q, f.p};
        } else if constexpr (std::is_same_v<F, ABq>) {
          auto [a, b] = shift_params(f.a, f.b, f.q, s);
          return ABq{a, b, f.q};
        } else if constexpr (std::is_same_v<F, Aq>) {
          return Aq{f.a * ipow(f.q, 2 * s), f.q};
        } else if constexpr (std::is_same_v<F, ZeroBq>) {
          return ZeroBq{f.b * ipow(f.q, s), f.q};
        } else if constexpr (std::is_same_v<F, PlainQ>) {
          return f;
        } else {
          auto [a, b] = shift_params(f.a, f.b, f.q / f.frak_p, s);
          return FrakPQ{a, b, f.frak_p, f.q};
        }
      },
      fam);
}

inline cplx small_weight(const WeightFamily& fam, cplx k) {
  using detail::denom;
  using detail::om;
  return std::visit(
      [k](const auto& f) -> cplx {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullElliptic>) {
          return detail::ab_small(f.a, f.b, f.q, f.p, k);
        } else if constexpr (std::is_same_v<F, ABq>) {
          return detail::ab_small(f.a, f.b, f.q, Nome(), k);
        } else if constexpr (std::is_same_v<F, Aq>) {
          const cplx q2k = cpow(f.q, 2.0 * k);
          return om(f.a * q2k * f.q) / denom(om(f.a * q2k / f.q)) / f.q;
        } else if constexpr (std::is_same_v<F, ZeroBq>) {
          const cplx qk = cpow(f.q, k);
          return f.q * om(f.b * qk) / denom(om(f.b * qk * f.q * f.q));
        } else if constexpr (std::is_same_v<F, PlainQ>) {
          return f.q;
        } else {
          const cplx P = f.frak_p, q = f.q, a = f.a, b = f.b;
          const cplx Pk = cpow(P, k), qk = cpow(q, k);
          const cplx num = (Pk * Pk * P - a * qk * qk * q) * (Pk - b * qk) * (b * Pk / (P * P) - a * qk / (q * q));
          const cplx den = denom(Pk * Pk / P - a * qk * qk / q) * denom(Pk * P * P - b * qk * q * q) *
                           denom(b * Pk - a * qk);
          return num / den * P * q;
        }
      },
      fam);
}

inline cplx small_weight(const WeightFamily& fam, long k) { return small_weight(fam, cplx(static_cast<double>(k))); }
inline cplx small_weight(const WeightFamily& fam, int k) { return small_weight(fam, static_cast<long>(k)); }

inline cplx big_weight(const WeightFamily& fam, cplx k) {
  using detail::denom;
  using detail::om;
  return std::visit(
      [k](const auto& f) -> cplx {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullElliptic>) {
          return detail::ab_big(f.a, f.b, f.q, f.p, k);
        } else if constexpr (std::is_same_v<F, ABq>) {
          return detail::ab_big(f.a, f.b, f.q, Nome(), k);
        } else if constexpr (std::is_same_v<F, Aq>) {
          const cplx qk = cpow(f.q, k);
          return om(f.a * f.q * qk * qk) / denom(om(f.a * f.q)) / qk;
        } else if constexpr (std::is_same_v<F, ZeroBq>) {
          const cplx qk = cpow(f.q, k), q = f.q, b = f.b;
          return qk * om(b * q) * om(b * q * q) / (denom(om(b * qk * q)) * denom(om(b * qk * q * q)));
        } else if constexpr (std::is_same_v<F, PlainQ>) {
          return cpow(f.q, k);
        } else {
          return detail::ab_big(f.a, f.b, f.q / f.frak_p, Nome(), k);
        }
      },
      fam);
}

inline cplx big_weight(const WeightFamily& fam, long k) {
  if (k == 0) return cplx(1.0);
  return big_weight(fam, cplx(static_cast<double>(k)));
}
inline cplx big_weight(const WeightFamily& fam, int k) { return big_weight(fam, static_cast<long>(k)); }

inline cplx elliptic_number(const WeightFamily& fam, cplx z) {
  using detail::denom;
  using detail::om;
  return std::visit(
      [z](const auto& f) -> cplx {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullElliptic>) {
          return detail::ab_number(f.a, f.b, f.q, f.p, z);
        } else if constexpr (std::is_same_v<F, ABq>) {
          return detail::ab_number(f.a, f.b, f.q, Nome(), z);
        } else if constexpr (std::is_same_v<F, Aq>) {
          const cplx qz = cpow(f.q, z), q = f.q, a = f.a;
          return om(qz) * om(a * qz) / (denom(om(q)) * denom(om(a * q))) * q / qz;
        } else if constexpr (std::is_same_v<F, ZeroBq>) {
          const cplx qz = cpow(f.q, z), q = f.q, b = f.b;
          return om(qz) * om(b * q * q) / (denom(om(q)) * denom(om(b * qz * q)));
        } else if constexpr (std::is_same_v<F, PlainQ>) {
          if (f.q == cplx(1.0)) return z;
          return om(cpow(f.q, z)) / denom(om(f.q));
        } else {
          const cplx P = f.frak_p, q = f.q, a = f.a, b = f.b;
          const cplx Pz = cpow(P, z), qz = cpow(q, z);
          const cplx num = (Pz - qz) * (Pz - a * qz) * (P * P - b * q * q) * (b - a);
          const cplx den = denom(P - q) * denom(P - a * q) * denom(Pz * P - b * qz * q) * denom(b * Pz / P - a * qz / q);
          return num / den;
        }
      },
      fam);
}

inline cplx elliptic_number(const WeightFamily& fam, long n) { return elliptic_number(fam, cplx(static_cast<double>(n))); }
inline cplx elliptic_number(const WeightFamily& fam, int n) { return elliptic_number(fam, static_cast<long>(n)); }

inline cplx elliptic_binomial(const WeightFamily& fam, long n, long k) {
  if (k < 0 || k > n) return cplx(0.0);
  using detail::qpoch;
  using detail::qpoch_den;
  return std::visit(
      [n, k](const auto& f) -> cplx {
        using F = std::decay_t<decltype(f)>;
        const long m = n - k;
        if constexpr (std::is_same_v<F, FullElliptic>) {
          return detail::ab_binomial(f.a, f.b, f.q, f.p, n, k);
        } else if constexpr (std::is_same_v<F, ABq>) {
          return detail::ab_binomial(f.a, f.b, f.q, Nome(), n, k);
        } else if constexpr (std::is_same_v<F, Aq>) {
          const cplx q = f.q, qk1 = ipow(q, k + 1);
          return qpoch(qk1, q, m) * qpoch(f.a * qk1, q, m) / (qpoch_den(q, q, m) * qpoch_den(f.a * q, q, m)) *
                 ipow(q, k * (k - n));
        } else if constexpr (std::is_same_v<F, ZeroBq>) {
          const cplx q = f.q, qk1 = ipow(q, k + 1);
          return qpoch(qk1, q, m) * qpoch(f.b * qk1, q, m) /
                 (qpoch_den(q, q, m) * qpoch_den(f.b * qk1 * ipow(q, k), q, m));
        } else if constexpr (std::is_same_v<F, PlainQ>) {
          if (f.q == cplx(1.0)) {
            double r = 1.0;
            for (long j = 1; j <= m; ++j) r = r * static_cast<double>(k + j) / static_cast<double>(j);
            return r;
          }
          return qpoch(ipow(f.q, k + 1), f.q, m) / qpoch_den(f.q, f.q, m);
        } else {
          return detail::ab_binomial(f.a, f.b, f.q / f.frak_p, Nome(), n, k);
        }
      },
      fam);
}

inline std::string family_name(const WeightFamily& fam) {
  static const char* names[] = {"elliptic", "abq", "aq", "zbq", "q", "pq"};
  return names[fam.index()];
}

// Classical q-analogues, usable with exact rationals or integers.

template <class T>
T q_number(const T& q, long n) {
  T r(0), qk(1);
  for (long j = 0; j < n; ++j) {
    r += qk;
    qk *= q;
  }
  return r;
}

template <class T>
T q_falling(const T& q, long n, long k) {
  T r(1);
  for (long j = 0; j < k; ++j) r *= q_number(q, n - j);
  return r;
}

template <class T>
T q_factorial(const T& q, long n) {
  return q_falling(q, n, n);
}

template <class T>
T q_binomial(const T& q, long n, long k) {
  if (k < 0 || k > n) return T(0);
  return q_falling(q, n, k) / q_factorial(q, k);
}

/// (x;q)_n for n >= 0.
template <class T>
T q_pochhammer(T x, const T& q, long n) {
  T r(1);
  for (long j = 0; j < n; ++j) {
    r *= T(1) - x;
    x *= q;
  }
  return r;
}

}  // namespace ellrook
