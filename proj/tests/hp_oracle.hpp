#pragma once

// High-precision reference formulas for the policy constants. Written
// directly from the mathematical definitions in 50-digit decimal arithmetic,
// sharing no code with the library.

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace tldp::test {

using hp = boost::multiprecision::cpp_dec_float_50;

inline hp hp_effective_source(hp kappa, hp n_p, hp gamma, hp d) {
  const hp base = kappa * n_p;
  if (base == 0) return hp(0);
  return boost::multiprecision::pow(base, (d + 3) / (d + 3 + gamma));
}

inline hp hp_r_tilde(hp n_q, hp kappa, hp n_p, hp gamma, hp d, hp c_r) {
  const hp n = n_q + hp_effective_source(kappa, n_p, gamma, d);
  return c_r * boost::multiprecision::pow(boost::multiprecision::log(n) / n, hp(1) / (d + 3));
}

inline hp hp_log_term(hp n_q, hp kappa, hp n_p, hp gamma, hp d) {
  const hp s = hp_effective_source(kappa, n_p, gamma, d);
  return boost::multiprecision::log(n_q > s ? n_q : s);
}

inline hp hp_conf(hp n, hp log_term) {
  return 2 * boost::multiprecision::sqrt(log_term / n);
}

inline hp hp_omega(hp r, hp log_term) {
  return boost::multiprecision::ceil(log_term / (r * r));
}

inline double rel_err(double got, const hp& want) {
  const hp diff = boost::multiprecision::abs(hp(got) - want);
  const hp denom = boost::multiprecision::abs(want);
  return denom == 0 ? static_cast<double>(diff) : static_cast<double>(diff / denom);
}

}  // namespace tldp::test
