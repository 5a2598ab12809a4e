#pragma once

#include <cstdint>

// GF(2^8) arithmetic under the reduction polynomial x^8+x^4+x^3+x^2+1 (0x11D),
// the conventional Reed-Solomon field. Addition is xor; multiplication runs
// through log/exp tables built once at startup from the generator 0x02.
namespace mdsgame::gf {

using Element = std::uint8_t;

inline constexpr unsigned kReductionPoly = 0x11D;

Element gf_mul(Element a, Element b);
Element gf_div(Element a, Element b);  // b != 0, else std::domain_error
Element gf_inv(Element a);             // a != 0, else std::domain_error

inline Element gf_add(Element a, Element b) { return a ^ b; }
inline Element gf_sub(Element a, Element b) { return a ^ b; }  // char 2: same as add

}  // namespace mdsgame::gf
