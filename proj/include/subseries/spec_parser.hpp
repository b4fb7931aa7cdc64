#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "subseries/series.hpp"
#include "subseries/subsequence.hpp"

namespace subseries {

// Malformed spec text; offset is the byte position the parser stopped at.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::size_t offset, const std::string& message)
      : std::runtime_error("at byte " + std::to_string(offset) + ": " + message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// harmonic | pseries:<p> | geometric:<r> | const:<c> | expr:<formula in n>
//
// Formulas: numbers, n, + - * /, ^ (right associative), unary minus,
// parentheses, and log exp sqrt abs sin cos.
MonotoneSeries parse_series(std::string_view text);

// id | pow2 | geom:<r> | poly:<beta> | squares | cubes | nodigit:<d[,d...]>:<base>
// | affine:<a>:<b> | list:[v1,v2,...]
Subsequence parse_subsequence(std::string_view text);

// Either kind, decided by the leading tag.
std::variant<MonotoneSeries, Subsequence> parse_spec(std::string_view text);

// Compiles an `expr:` formula body into a term rule; `base_offset` shifts the
// reported error offsets.
TermRule compile_formula(std::string_view formula, std::size_t base_offset = 0);

}  // namespace subseries
