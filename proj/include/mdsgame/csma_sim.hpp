#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Slotted non-persistent CSMA Monte Carlo simulator. One slot = one packet
// transmission time. Each slot: Poisson generation arrivals are encoded and
// enqueued; every node with a pending packet, zero backoff, and an idle
// previous slot transmits; a lone transmitter succeeds (subject to a Bernoulli
// erasure), two or more collide; collision losers and busy sensers redraw a
// uniform [1, W] backoff. Coded losses are absorbed by the code (no
// retransmission); conventional mode retransmits from the head of the queue.
namespace mdsgame::sim {

struct SimConfig {
  int m_nodes = 3;            // M: contending nodes
  double lambda_slot = 0.01;  // mean generation arrivals per slot per node
  int k = 8;                  // source packets per generation
  int r = 0;                  // redundant packets (coding on)
  double p_e = 0.1;           // independent per-packet erasure probability
  int backoff_window = 2;     // W: backoff drawn uniformly from [1, W]
  std::int64_t slots = 15000; // horizon
  std::uint64_t seed = 1;
  bool coding_enabled = true; // false = conventional head-of-line retransmit
  // Optional per-node redundancy override for heterogeneous strategy
  // profiles; empty means every node uses r.
  std::vector<int> r_per_node;
  // Cross-check a 1% sample of recoveries by running the real codec end to
  // end (separate RNG stream, so the traffic trajectory is unaffected).
  bool verify_decoding = true;

  bool valid() const {
    return m_nodes >= 1 && lambda_slot >= 0 && k >= 1 && r >= 0 &&
           p_e >= 0 && p_e <= 1 && backoff_window >= 1 && slots >= 1 &&
           (r_per_node.empty() ||
            static_cast<int>(r_per_node.size()) == m_nodes);
  }
};

struct GenerationRecord {
  std::int64_t id = 0;
  int owner = 0;
  std::int64_t arrival_slot = 0;
  int packets_total = 0;            // k + r coded, k conventional
  int sent = 0;
  int received = 0;
  std::int64_t recovered_at = -1;   // slot boundary of the k-th delivery; -1 = never
};

struct SimResult {
  double throughput = 0;       // recovered original-packet-equivalents per slot
  std::optional<double> mean_delay;  // over recovered generations, slots
  double collision_rate = 0;   // collision slots / total slots
  double recovery_rate = 0;    // recovered / arrived generations
  std::int64_t generations_arrived = 0;
  std::int64_t generations_recovered = 0;
  // Exact conservation counters: enqueued == delivered + dropped + queued_end.
  std::int64_t packets_enqueued = 0;
  std::int64_t packets_delivered = 0;
  std::int64_t packets_dropped = 0;
  std::int64_t packets_queued_end = 0;
  std::int64_t attempts = 0;       // transmission attempts, collisions included
  std::int64_t successes = 0;      // lone transmissions surviving erasure
  std::int64_t erasures = 0;       // lone transmissions erased by the channel
  std::int64_t collision_slots = 0;
  std::vector<GenerationRecord> generations;
};

struct Estimate {
  double value = 0;
  double stderr_value = 0;
  std::int64_t samples = 0;
};

SimResult simulate(const SimConfig& cfg);

// Fraction of transmission attempts that end in non-collided, non-erased
// delivery, over a horizon of `trials` slots. No attempts -> nullopt.
std::optional<Estimate> estimate_p_success(const SimConfig& cfg,
                                           std::int64_t trials);

// Channel-level oracle for the recovery probability: draw n_total independent
// Bernoulli(p) receptions per trial; score 1 when >= k arrive, otherwise
// (received systematic packets)/k. Mean with empirical standard error.
Estimate estimate_p_recover(int n_total, int k, double p, std::int64_t trials,
                            std::uint64_t seed);

// Mean delay at each offered load (lambda_slot values); nullopt entries where
// nothing was recovered.
std::vector<std::pair<double, std::optional<double>>> measured_delay_curve(
    const SimConfig& base, const std::vector<double>& loads);

}  // namespace mdsgame::sim
