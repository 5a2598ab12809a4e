#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdsgame/gf256.hpp"

// Systematic MDS (N, k) erasure code over GF(2^8). The generator stacks the
// k x k identity on top of an r x k Cauchy block, so every k x k submatrix is
// invertible and any k of the N coded packets reconstruct the source exactly
// (minimum distance N - k + 1).
namespace mdsgame::ec {

using Packet = std::vector<std::uint8_t>;

struct CodeParams {
  int k = 1;  // source packets per generation
  int r = 0;  // redundant packets

  int n_total() const { return k + r; }
};

struct CodedPacket {
  int index = 0;  // row of the generator this packet carries, 0..N-1
  Packet payload;
};

using Generation = std::vector<Packet>;
using CodeWord = std::vector<CodedPacket>;

class CodeError : public std::runtime_error {
 public:
  enum class Kind {
    unsupported_parameters,
    length_mismatch,
    insufficient_packets,
    duplicate_index,
    index_out_of_range,
  };

  CodeError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// N x k generator matrix, row-major. Throws unsupported_parameters when
// k < 1, r < 0, or N > 256 (the Cauchy construction needs N distinct field
// points disjoint from the k column points).
std::vector<std::vector<gf::Element>> build_generator(const CodeParams& params);

// k equal-length source packets -> N coded packets; the first k are the
// source itself (systematic prefix).
CodeWord encode(const Generation& generation, const CodeParams& params);

// Any k received packets (distinct indices) -> the exact source generation.
// Fewer than k -> insufficient_packets.
Generation decode(const std::vector<CodedPacket>& received,
                  const CodeParams& params);

}  // namespace mdsgame::ec
