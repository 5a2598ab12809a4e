#include "mdsgame/analytic_model.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mdsgame::model {
namespace {

// C(n, i) by multiplicative recurrence; exact in double well past n = 50,
// at which point the callers below switch to log-domain terms anyway.
double binomial(int n, int i) {
  if (i < 0 || i > n) return 0.0;
  if (i > n - i) i = n - i;
  double c = 1.0;
  for (int j = 0; j < i; ++j) c = c * (n - j) / (j + 1);
  return c;
}

double binomial_term(int n, int i, double p) {
  // C(n,i) p^i (1-p)^(n-i), stable for both small and large n.
  if (p <= 0.0) return i == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return i == n ? 1.0 : 0.0;
  if (n <= 50) {
    return binomial(n, i) * std::pow(p, i) * std::pow(1.0 - p, n - i);
  }
  const double log_c = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                       std::lgamma(n - i + 1.0);
  return std::exp(log_c + i * std::log(p) + (n - i) * std::log1p(-p));
}

}  // namespace

double coded_load(double base_load, int k, int r) {
  return base_load * (1.0 + static_cast<double>(r) / k);
}

double p_success(const NetworkParams& params, ModelVariant variant) {
  const double x =
      params.alpha * params.lambda * (1.0 + static_cast<double>(params.r) / params.k);
  const double e = std::exp(-x);
  if (variant == ModelVariant::literal) {
    return e * std::pow(1.0 - e, params.m_nodes - 1);
  }
  return (1.0 - e) * std::exp(-x * (params.m_nodes - 1));
}

double p_at_least_k(double p_p, int n_total, int k) {
  if (k < 1 || k > n_total) {
    throw std::invalid_argument("p_at_least_k: need 1 <= k <= n_total");
  }
  if (p_p >= 1.0) return 1.0;
  if (p_p <= 0.0) return 0.0;
  double sum = 0.0;
  for (int i = k; i <= n_total; ++i) sum += binomial_term(n_total, i, p_p);
  return sum < 0.0 ? 0.0 : (sum > 1.0 ? 1.0 : sum);
}

double p_partial(double p_p, int n_total, int k, int n, int m) {
  if (n < 1 || n >= k || m < 0 || m > n || m > k || n - m > n_total - k) {
    throw std::invalid_argument("p_partial: combinatorial bounds violated");
  }
  if (p_p <= 0.0 || p_p >= 1.0) {
    // n >= 1 received and N - n >= r + 1 >= 1 lost are both impossible at the
    // extremes, except p_p = 1 with n = N which the n < k <= N bound excludes.
    return 0.0;
  }
  return binomial(k, m) * binomial(n_total - k, n - m) * std::pow(p_p, n) *
         std::pow(1.0 - p_p, n_total - n);
}

double p_recover_from_success(double p_p, int n_total, int k) {
  double sum = p_at_least_k(p_p, n_total, k);
  for (int n = 1; n < k; ++n) {
    // Terms with n - m > N - k have no valid reception pattern (not enough
    // redundant slots to fill), so m starts high enough to skip them.
    const int m_lo = std::max(1, n - (n_total - k));
    for (int m = m_lo; m <= n; ++m) {
      sum += (static_cast<double>(m) / k) * p_partial(p_p, n_total, k, n, m);
    }
  }
  return sum < 0.0 ? 0.0 : (sum > 1.0 ? 1.0 : sum);
}

double p_recover(const NetworkParams& params, ModelVariant variant) {
  return p_recover_from_success(p_success(params, variant),
                                params.k + params.r, params.k);
}

double throughput(const NetworkParams& params, double p_f) {
  const double ag = params.alpha * params.load;
  const double e = std::exp(-ag);
  const int m = params.m_nodes;
  return std::pow(1.0 - e, m) * p_f * std::exp(-ag * (m - 1)) /
         (1.0 + params.alpha - e);
}

double delay(const NetworkParams& params, double th) {
  const double x = (1.0 + params.m_nodes * params.probing_rate) * th;
  const double base = x / (params.m_nodes * params.probing_rate);
  // pow(0, 0) = 1 makes the M_d = 1 identity D = 0 hold even at X = 0;
  // pow(0, negative) = inf marks the X = 0, M_d > 1 region invalid.
  const double d =
      (std::pow(base, 1.0 - params.m_nodes) - 1.0) / (params.q * params.probing_rate);
  return d;
}

ModelOutputs evaluate_coupled(const NetworkParams& params, ModelVariant variant,
                              double load_multiplier) {
  ModelOutputs out;
  out.p_p = p_success(params, variant);
  out.q_p = 1.0 - out.p_p;
  const int n_total = params.k + params.r;
  out.p_k = p_at_least_k(out.p_p, n_total, params.k);
  out.p_f = p_recover_from_success(out.p_p, n_total, params.k);
  NetworkParams coded = params;
  coded.load = params.load * load_multiplier;
  out.th = throughput(coded, out.p_f);
  out.x = (1.0 + params.m_nodes * params.probing_rate) * out.th;
  out.d = delay(params, out.th);
  out.valid = out.x > 0.0 && out.d > 0.0 && std::isfinite(out.d);
  return out;
}

ModelOutputs evaluate(const NetworkParams& params, ModelVariant variant) {
  return evaluate_coupled(params, variant,
                          1.0 + static_cast<double>(params.r) / params.k);
}

EnumerationOutputs enumerate_reception(int n_total, int k, double p_p) {
  if (n_total < 1 || n_total > 24 || k < 1 || k > n_total) {
    throw std::invalid_argument("enumerate_reception: need 1 <= k <= n_total <= 24");
  }
  EnumerationOutputs out;
  const std::uint32_t sys_mask = (k == 32 ? ~0u : (1u << k) - 1u);
  for (std::uint32_t mask = 0; mask < (1u << n_total); ++mask) {
    double prob = 1.0;
    for (int i = 0; i < n_total; ++i) {
      prob *= (mask >> i & 1u) ? p_p : 1.0 - p_p;
    }
    if (prob == 0.0) continue;
    const int received = std::popcount(mask);
    if (received >= k) {
      out.p_at_least_k += prob;
      out.p_recover += prob;
    } else {
      const int originals = std::popcount(mask & sys_mask);
      out.p_recover += prob * originals / k;
    }
  }
  return out;
}

}  // namespace mdsgame::model
