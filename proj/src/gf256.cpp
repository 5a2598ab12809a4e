#include "mdsgame/gf256.hpp"

#include <array>
#include <stdexcept>

namespace mdsgame::gf {
namespace {

struct Tables {
  // exp table doubled so gf_mul can skip the mod-255 of log sums
  std::array<Element, 512> exp;
  std::array<int, 256> log;
};

constexpr Tables build_tables() {
  Tables t{};
  unsigned value = 1;
  for (int power = 0; power < 255; ++power) {
    t.exp[power] = static_cast<Element>(value);
    t.log[value] = power;
    value <<= 1;
    if (value & 0x100) value ^= kReductionPoly;
  }
  for (int power = 255; power < 512; ++power) t.exp[power] = t.exp[power - 255];
  t.log[0] = -1;  // log of zero is undefined; callers test for zero first
  return t;
}

constexpr Tables kTables = build_tables();

}  // namespace

Element gf_mul(Element a, Element b) {
  if (a == 0 || b == 0) return 0;
  return kTables.exp[kTables.log[a] + kTables.log[b]];
}

Element gf_inv(Element a) {
  if (a == 0) throw std::domain_error("gf_inv: zero has no inverse in GF(256)");
  return kTables.exp[255 - kTables.log[a]];
}

Element gf_div(Element a, Element b) {
  if (b == 0) throw std::domain_error("gf_div: division by zero in GF(256)");
  if (a == 0) return 0;
  return kTables.exp[kTables.log[a] + 255 - kTables.log[b]];
}

}  // namespace mdsgame::gf
