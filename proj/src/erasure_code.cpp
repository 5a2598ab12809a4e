#include "mdsgame/erasure_code.hpp"

#include <algorithm>
#include <cstddef>

namespace mdsgame::ec {

using gf::Element;
using gf::gf_add;
using gf::gf_inv;
using gf::gf_mul;

std::vector<std::vector<Element>> build_generator(const CodeParams& params) {
  if (params.k < 1 || params.r < 0 || params.n_total() > 256) {
    throw CodeError(CodeError::Kind::unsupported_parameters,
                    "build_generator: need k >= 1, r >= 0, k + r <= 256");
  }
  const int k = params.k;
  const int n = params.n_total();
  std::vector<std::vector<Element>> gen(n, std::vector<Element>(k, 0));
  for (int i = 0; i < k; ++i) gen[i][i] = 1;
  // Cauchy block: row points x_i = k + i, column points y_j = j. The two sets
  // are disjoint in GF(256) for n <= 256, so every entry 1/(x_i + y_j) exists
  // and every square submatrix is invertible.
  for (int i = k; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      gen[i][j] = gf_inv(static_cast<Element>(i ^ j));
    }
  }
  return gen;
}

CodeWord encode(const Generation& generation, const CodeParams& params) {
  if (static_cast<int>(generation.size()) != params.k) {
    throw CodeError(CodeError::Kind::length_mismatch,
                    "encode: generation must hold exactly k packets");
  }
  const std::size_t len = generation.empty() ? 0 : generation[0].size();
  for (const Packet& p : generation) {
    if (p.size() != len) {
      throw CodeError(CodeError::Kind::length_mismatch,
                      "encode: source packets must share one length");
    }
  }
  const auto gen = build_generator(params);
  CodeWord out;
  out.reserve(params.n_total());
  for (int i = 0; i < params.n_total(); ++i) {
    CodedPacket pkt;
    pkt.index = i;
    if (i < params.k) {
      pkt.payload = generation[i];
    } else {
      pkt.payload.assign(len, 0);
      for (int j = 0; j < params.k; ++j) {
        const Element coeff = gen[i][j];
        if (coeff == 0) continue;
        const Packet& src = generation[j];
        for (std::size_t b = 0; b < len; ++b) {
          pkt.payload[b] = gf_add(pkt.payload[b], gf_mul(coeff, src[b]));
        }
      }
    }
    out.push_back(std::move(pkt));
  }
  return out;
}

Generation decode(const std::vector<CodedPacket>& received,
                  const CodeParams& params) {
  if (params.k < 1 || params.r < 0 || params.n_total() > 256) {
    throw CodeError(CodeError::Kind::unsupported_parameters,
                    "decode: need k >= 1, r >= 0, k + r <= 256");
  }
  const int k = params.k;
  const int n = params.n_total();
  if (static_cast<int>(received.size()) < k) {
    throw CodeError(CodeError::Kind::insufficient_packets,
                    "decode: fewer than k packets received, recovery impossible");
  }
  std::vector<bool> seen(n, false);
  std::size_t len = received[0].payload.size();
  for (const CodedPacket& pkt : received) {
    if (pkt.index < 0 || pkt.index >= n) {
      throw CodeError(CodeError::Kind::index_out_of_range,
                      "decode: packet index outside [0, N)");
    }
    if (seen[pkt.index]) {
      throw CodeError(CodeError::Kind::duplicate_index,
                      "decode: duplicate packet index");
    }
    seen[pkt.index] = true;
    if (pkt.payload.size() != len) {
      throw CodeError(CodeError::Kind::length_mismatch,
                      "decode: received payloads must share one length");
    }
  }

  // Pick k packets, lowest indices first so a complete systematic prefix is
  // used as-is (no elimination needed for those rows).
  std::vector<const CodedPacket*> picked(received.size());
  for (std::size_t i = 0; i < received.size(); ++i) picked[i] = &received[i];
  std::sort(picked.begin(), picked.end(),
            [](const CodedPacket* a, const CodedPacket* b) {
              return a->index < b->index;
            });
  picked.resize(k);

  if (picked.back()->index == k - 1) {  // sorted, so this means indices 0..k-1
    Generation out(k);
    for (const CodedPacket* pkt : picked) out[pkt->index] = pkt->payload;
    return out;
  }

  // Solve A * source = payloads where row i of A is the generator row of the
  // i-th picked packet. Gauss-Jordan over GF(256) on [A | payloads].
  const auto gen = build_generator(params);
  std::vector<std::vector<Element>> a(k, std::vector<Element>(k));
  std::vector<Packet> rhs(k);
  for (int i = 0; i < k; ++i) {
    a[i] = gen[picked[i]->index];
    rhs[i] = picked[i]->payload;
  }
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int row = col; row < k; ++row) {
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) {
      // Unreachable for a Cauchy-based generator; guards against corruption.
      throw CodeError(CodeError::Kind::unsupported_parameters,
                      "decode: singular submatrix");
    }
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    const Element inv = gf_inv(a[col][col]);
    for (int j = 0; j < k; ++j) a[col][j] = gf_mul(a[col][j], inv);
    for (std::size_t b = 0; b < len; ++b) {
      rhs[col][b] = gf_mul(rhs[col][b], inv);
    }
    for (int row = 0; row < k; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Element factor = a[row][col];
      for (int j = 0; j < k; ++j) {
        a[row][j] = gf_add(a[row][j], gf_mul(factor, a[col][j]));
      }
      for (std::size_t b = 0; b < len; ++b) {
        rhs[row][b] = gf_add(rhs[row][b], gf_mul(factor, rhs[col][b]));
      }
    }
  }
  Generation out(k);
  for (int i = 0; i < k; ++i) out[i] = std::move(rhs[i]);
  return out;
}

}  // namespace mdsgame::ec
