#pragma once

// Closed-form network model: per-packet success probability on a slotted
// non-persistent CSMA channel, recovery probability of an (N, k) coded
// generation, network throughput, and overall propagation delay. All
// functions are pure; invalid delay regions are reported through a validity
// flag so sweeps can traverse them.
namespace mdsgame::model {

// The printed per-packet success formula and its role-swapped reading; both
// are kept because the source material is ambiguous about which factor is
// "this node transmits" and which is "the others stay silent".
enum class ModelVariant { literal, swapped };

struct NetworkParams {
  int m_nodes = 3;           // M_d: active users sharing the channel
  double probing_rate = 1.0;  // R: opaque positive probing-rate parameter
  double alpha = 0.2;        // normalized sensing time
  double q = 1.53;           // delay-curve constant
  double lambda = 1.2;       // Poisson arrival rate per node
  double load = 3.6;         // G: offered traffic, packets per slot network-wide
  int k = 8;                 // source packets per generation
  int r = 0;                 // redundant packets per generation

  bool valid() const {
    return m_nodes >= 1 && probing_rate > 0 && alpha > 0 && q > 0 &&
           lambda >= 0 && load >= 0 && k >= 1 && r >= 0;
  }
};

struct ModelOutputs {
  double p_p = 0;   // per-coded-packet transmission success probability
  double q_p = 1;   // 1 - p_p
  double p_k = 0;   // P(receive >= k of the N coded packets)
  double p_f = 0;   // P(an original packet is received or recovered)
  double th = 0;    // network throughput
  double x = 0;     // (1 + M_d R) Th aggregate
  double d = 0;     // overall propagation delay, slots
  bool valid = false;  // X > 0 and D finite and strictly positive
};

// base_load * (1 + r/k): traffic inflation caused by the redundancy.
double coded_load(double base_load, int k, int r);

// Per-packet success probability with x = alpha * lambda * (1 + r/k).
// literal: e^-x (1 - e^-x)^(M-1); swapped: (1 - e^-x) e^-x(M-1).
double p_success(const NetworkParams& params, ModelVariant variant);

// Binomial tail: P(at least k of n_total arrive), per-packet probability p_p.
double p_at_least_k(double p_p, int n_total, int k);

// P(exactly n of N arrive, m of them from the systematic half):
// C(k,m) C(N-k,n-m) p_p^n (1-p_p)^(N-n). Bounds violations throw.
double p_partial(double p_p, int n_total, int k, int n, int m);

// Full-or-partial recovery probability given the per-packet success
// probability: P_k plus the partial credit sum over n < k of (m/k) weights.
double p_recover_from_success(double p_p, int n_total, int k);

// As above with p_p derived from the network parameters.
double p_recover(const NetworkParams& params, ModelVariant variant);

// Th = (1 - e^-aG)^M * P_f * e^-aG(M-1) / (1 + a - e^-aG), where G is read
// from params.load and must already be the coded load.
double throughput(const NetworkParams& params, double p_f);

// D = (1/(qR)) ((X / (M_d R))^(1 - M_d) - 1) with X = (1 + M_d R) Th.
double delay(const NetworkParams& params, double th);

// Chains coded_load -> p_success -> p_recover -> throughput -> delay.
// The coupled variant lets a caller inject the congestion multiplier the
// channel actually sees (e.g. the mean coded-load factor over all players);
// the plain variant uses this player's own (1 + r/k).
ModelOutputs evaluate(const NetworkParams& params, ModelVariant variant);
ModelOutputs evaluate_coupled(const NetworkParams& params, ModelVariant variant,
                              double load_multiplier);

// Brute-force reference: enumerate all 2^N reception patterns with
// independent per-packet probability p_p; recovery scores 1 when >= k
// arrive, else (received systematic packets)/k. Used to validate the closed
// forms; n_total is capped at 24 to bound the enumeration.
struct EnumerationOutputs {
  double p_at_least_k = 0;
  double p_recover = 0;
};
EnumerationOutputs enumerate_reception(int n_total, int k, double p_p);

}  // namespace mdsgame::model
