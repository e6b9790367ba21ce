#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "ellrook/errors.hpp"

namespace ellrook {

using cplx = std::complex<double>;

/// Denominator factors with modulus below this are treated as vanishing.
inline constexpr double pole_threshold = 1e-300;

class Nome {
 public:
  Nome() = default;
  Nome(cplx p) : p_(p) {  // NOLINT(google-explicit-constructor)
    if (!(std::abs(p) < 1.0)) throw std::domain_error("nome must satisfy |p| < 1");
  }
  Nome(double p) : Nome(cplx(p, 0.0)) {}  // NOLINT(google-explicit-constructor)

  cplx value() const { return p_; }
  bool is_zero() const { return p_ == cplx(0.0, 0.0); }

 private:
  cplx p_{0.0, 0.0};
};

struct ThetaEvalConfig {
  double truncation_tolerance = 1e-17;
  long max_terms = 10000;
};

/// x^k for integer k by repeated squaring, so integer powers never touch a branch cut.
template <class T>
T ipow(T x, long k) {
  if (k < 0) return T(1) / ipow(x, -k);
  T r(1);
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

/// True when z is a real integer; `k` receives it.
inline bool as_integer(cplx z, long& k) {
  if (z.imag() != 0.0) return false;
  double r = std::round(z.real());
  if (r != z.real() || std::abs(r) > 1e15) return false;
  k = static_cast<long>(r);
  return true;
}

/// q^z: exact squaring for integer z, principal branch exp(z log q) otherwise.
inline cplx cpow(cplx q, cplx z) {
  long k;
  if (as_integer(z, k)) return ipow(q, k);
  return std::exp(z * std::log(q));
}

/// Modified Jacobi theta function prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x).
inline cplx theta(cplx x, const Nome& nome, const ThetaEvalConfig& cfg = {}) {
  if (x == cplx(0.0, 0.0)) throw ZeroArgument("theta: x = 0");
  if (nome.is_zero()) return cplx(1.0) - x;
  const cplx p = nome.value();
  const double ap = std::abs(p);
  const double bound = std::max(std::abs(x), ap / std::abs(x));
  cplx r(1.0);
  cplx pj(1.0);
  double apj = 1.0;
  for (long j = 0; j < cfg.max_terms; ++j) {
    if (j > 0 && apj * bound < cfg.truncation_tolerance) return r;
    r *= (cplx(1.0) - pj * x) * (cplx(1.0) - pj * p / x);
    pj *= p;
    apj *= ap;
  }
  if (apj * bound < cfg.truncation_tolerance) return r;
  throw NoConvergence("theta: max_terms reached");
}

inline cplx theta_multi(std::span<const cplx> xs, const Nome& nome, const ThetaEvalConfig& cfg = {}) {
  cplx r(1.0);
  for (const cplx& x : xs) r *= theta(x, nome, cfg);
  return r;
}

inline cplx theta_multi(std::initializer_list<cplx> xs, const Nome& nome, const ThetaEvalConfig& cfg = {}) {
  return theta_multi(std::span<const cplx>(xs.begin(), xs.size()), nome, cfg);
}

/// Product of thetas used as a denominator; throws if any factor vanishes.
inline cplx theta_denominator(std::initializer_list<cplx> xs, const Nome& nome) {
  cplx r(1.0);
  for (const cplx& x : xs) {
    cplx t = theta(x, nome);
    if (std::abs(t) < pole_threshold) throw PoleEncountered("vanishing theta factor in denominator");
    r *= t;
  }
  return r;
}

/// Theta shifted factorial (a;q,p)_n.
inline cplx qp_shifted_factorial(cplx a, cplx q, const Nome& nome, long n) {
  cplx r(1.0);
  if (n >= 0) {
    cplx x = a;
    for (long k = 0; k < n; ++k, x *= q) r *= theta(x, nome);
    return r;
  }
  cplx x = a * ipow(q, n);
  for (long k = 0; k < -n; ++k, x *= q) {
    cplx t = theta(x, nome);
    if (std::abs(t) < pole_threshold) throw PoleEncountered("qp_shifted_factorial: vanishing factor");
    r *= t;
  }
  return cplx(1.0) / r;
}

}  // namespace ellrook

namespace ellrook {

/// |x - y| / max(|x|, |y|, 1e-30).
template <class T>
double rel_diff(const T& x, const T& y) {
  using std::abs;
  const double d = static_cast<double>(abs(x - y));
  return d / std::max({static_cast<double>(abs(x)), static_cast<double>(abs(y)), 1e-30});
}

/// Two sides of an identity; `scale` bounds the magnitude of the summed terms
/// so that scale / |value| estimates cancellation in floating point.
struct IdentitySides {
  cplx lhs;
  cplx rhs;
  double scale = 0.0;

  double rel_err() const { return rel_diff(lhs, rhs); }
  double condition() const {
    const double m = std::max(std::abs(lhs), std::abs(rhs));
    return m > 0.0 ? scale / m : (scale > 0.0 ? INFINITY : 1.0);
  }
};

}  // namespace ellrook
