#include "mdsgame/csma_sim.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "mdsgame/erasure_code.hpp"
#include "mdsgame/rng.hpp"

namespace mdsgame::sim {
namespace {

// Synthetic end-to-end codec round trip: random payloads, encode, keep a
// random k-subset, decode, compare. The hot loop only counts receptions; this
// spot check keeps that shortcut honest.
void verify_recovery_by_decoding(int k, int n_total, rng::SplitMix64& rng) {
  ec::CodeParams params{k, n_total - k};
  ec::Generation source(k);
  for (auto& packet : source) {
    packet.resize(16);
    for (auto& byte : packet) {
      byte = static_cast<std::uint8_t>(rng.next_int(0, 255));
    }
  }
  const ec::CodeWord coded = ec::encode(source, params);
  // Reservoir-sample k distinct indices out of n_total.
  std::vector<int> chosen(k);
  for (int i = 0; i < k; ++i) chosen[i] = i;
  for (int i = k; i < n_total; ++i) {
    const auto j = rng.next_int(0, i);
    if (j < static_cast<std::uint64_t>(k)) chosen[j] = i;
  }
  std::vector<ec::CodedPacket> received;
  received.reserve(k);
  for (int idx : chosen) received.push_back(coded[idx]);
  const ec::Generation decoded = ec::decode(received, params);
  if (decoded != source) {
    throw std::logic_error("csma_sim: sampled decode cross-check failed");
  }
}

}  // namespace

SimResult simulate(const SimConfig& cfg) {
  if (!cfg.valid()) {
    throw std::invalid_argument("simulate: invalid SimConfig");
  }
  const int m = cfg.m_nodes;
  std::vector<rng::SplitMix64> node_rng;
  node_rng.reserve(m);
  for (int i = 0; i < m; ++i) node_rng.emplace_back(cfg.seed, i);
  rng::SplitMix64 verifier_rng(cfg.seed, static_cast<std::uint64_t>(m) + 1);

  std::vector<std::deque<std::int64_t>> queue(m);  // generation ids, FIFO
  std::vector<int> backoff(m, 0);
  std::vector<GenerationRecord> gens;
  SimResult res;
  bool prev_busy = false;
  std::vector<int> txers, busy_sensors;

  for (std::int64_t t = 0; t < cfg.slots; ++t) {
    for (int i = 0; i < m; ++i) {
      const int arrivals = node_rng[i].next_poisson(cfg.lambda_slot);
      for (int a = 0; a < arrivals; ++a) {
        const int r_i = cfg.r_per_node.empty() ? cfg.r : cfg.r_per_node[i];
        const int total = cfg.coding_enabled ? cfg.k + r_i : cfg.k;
        GenerationRecord g;
        g.id = static_cast<std::int64_t>(gens.size());
        g.owner = i;
        g.arrival_slot = t;
        g.packets_total = total;
        gens.push_back(g);
        for (int p = 0; p < total; ++p) queue[i].push_back(g.id);
        res.packets_enqueued += total;
      }
    }

    txers.clear();
    busy_sensors.clear();
    for (int i = 0; i < m; ++i) {
      if (queue[i].empty() || backoff[i] != 0) continue;
      (prev_busy ? busy_sensors : txers).push_back(i);
    }

    if (txers.size() == 1) {
      const int i = txers[0];
      GenerationRecord& g = gens[queue[i].front()];
      ++g.sent;
      ++res.attempts;
      const bool erased = node_rng[i].bernoulli(cfg.p_e);
      if (!erased) {
        queue[i].pop_front();
        ++res.packets_delivered;
        ++res.successes;
        ++g.received;
        if (g.recovered_at < 0 && g.received >= cfg.k) {
          g.recovered_at = t + 1;  // delivery completes at the slot boundary
          ++res.generations_recovered;
          if (cfg.verify_decoding && cfg.coding_enabled &&
              res.generations_recovered % 100 == 1) {
            verify_recovery_by_decoding(cfg.k, g.packets_total, verifier_rng);
          }
        }
      } else {
        ++res.erasures;
        if (cfg.coding_enabled) {
          queue[i].pop_front();  // the code absorbs the loss
          ++res.packets_dropped;
        }
        // conventional: packet stays at the head for retransmission
      }
    } else if (txers.size() >= 2) {
      ++res.collision_slots;
      for (int i : txers) {
        GenerationRecord& g = gens[queue[i].front()];
        ++g.sent;
        ++res.attempts;
        if (cfg.coding_enabled) {
          queue[i].pop_front();
          ++res.packets_dropped;
        }
        backoff[i] = static_cast<int>(
            node_rng[i].next_int(1, cfg.backoff_window));
      }
    }
    for (int i : busy_sensors) {
      backoff[i] = static_cast<int>(node_rng[i].next_int(1, cfg.backoff_window));
    }
    for (int i = 0; i < m; ++i) {
      if (backoff[i] > 0) {
        bool acted = false;
        for (int j : txers) acted |= (j == i);
        for (int j : busy_sensors) acted |= (j == i);
        if (!acted) --backoff[i];
      }
    }
    prev_busy = !txers.empty();
  }

  for (const auto& q : queue) res.packets_queued_end += q.size();
  if (res.packets_enqueued !=
      res.packets_delivered + res.packets_dropped + res.packets_queued_end) {
    throw std::logic_error("simulate: packet conservation violated");
  }

  res.generations_arrived = static_cast<std::int64_t>(gens.size());
  double delay_sum = 0.0;
  for (const GenerationRecord& g : gens) {
    if (g.recovered_at >= 0) delay_sum += static_cast<double>(g.recovered_at - g.arrival_slot);
  }
  if (res.generations_recovered > 0) {
    res.mean_delay = delay_sum / static_cast<double>(res.generations_recovered);
  }
  res.throughput = static_cast<double>(res.generations_recovered) * cfg.k /
                   static_cast<double>(cfg.slots);
  res.collision_rate = static_cast<double>(res.collision_slots) /
                       static_cast<double>(cfg.slots);
  res.recovery_rate =
      gens.empty() ? 0.0
                   : static_cast<double>(res.generations_recovered) /
                         static_cast<double>(gens.size());
  res.generations = std::move(gens);
  return res;
}

std::optional<Estimate> estimate_p_success(const SimConfig& cfg,
                                           std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("estimate_p_success: trials >= 1");
  SimConfig run = cfg;
  run.slots = trials;
  const SimResult res = simulate(run);
  if (res.attempts == 0) return std::nullopt;
  Estimate est;
  est.samples = res.attempts;
  est.value = static_cast<double>(res.successes) /
              static_cast<double>(res.attempts);
  est.stderr_value = std::sqrt(est.value * (1.0 - est.value) /
                               static_cast<double>(res.attempts));
  return est;
}

Estimate estimate_p_recover(int n_total, int k, double p, std::int64_t trials,
                            std::uint64_t seed) {
  if (n_total < 1 || k < 1 || k > n_total || p < 0.0 || p > 1.0 || trials < 1) {
    throw std::invalid_argument("estimate_p_recover: bad arguments");
  }
  rng::SplitMix64 rng(seed, 0x7265636f76657200ull);  // dedicated oracle stream
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    int received = 0, originals = 0;
    for (int i = 0; i < n_total; ++i) {
      if (rng.bernoulli(p)) {
        ++received;
        if (i < k) ++originals;
      }
    }
    const double score =
        received >= k ? 1.0 : static_cast<double>(originals) / k;
    sum += score;
    sum_sq += score * score;
  }
  Estimate est;
  est.samples = trials;
  est.value = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var =
        (sum_sq - sum * sum / static_cast<double>(trials)) /
        static_cast<double>(trials - 1);
    est.stderr_value = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
  }
  return est;
}

std::vector<std::pair<double, std::optional<double>>> measured_delay_curve(
    const SimConfig& base, const std::vector<double>& loads) {
  if (loads.empty()) {
    throw std::invalid_argument("measured_delay_curve: loads must be nonempty");
  }
  std::vector<std::pair<double, std::optional<double>>> out;
  out.reserve(loads.size());
  for (double load : loads) {
    SimConfig cfg = base;
    cfg.lambda_slot = load;
    out.emplace_back(load, simulate(cfg).mean_delay);
  }
  return out;
}

}  // namespace mdsgame::sim
