#ifndef DXM_MAPEXPR_HPP
#define DXM_MAPEXPR_HPP

#include <string>
#include <utility>

#include "dxm/polynomial.hpp"

namespace dxm {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, size_t offset)
      : InputError(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Parses a rational-map expression over the grammar
//   expr: complex literals a, bi, a+bi (decimal or scientific), the variable
//   z, operators + - * / ^ (integer exponents), parentheses.
// Arithmetic is exact over Gaussian rationals; the result is normalized
// (gcd-reduced, monic denominator). Throws ParseError with the offending
// offset on malformed input.
std::pair<Polynomial<RatCx>, Polynomial<RatCx>> parse_map(
    const std::string& text);

}  // namespace dxm

#endif  // DXM_MAPEXPR_HPP
