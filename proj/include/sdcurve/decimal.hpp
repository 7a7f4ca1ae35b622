// Shortest round-trip decimal formatting and exact-to-nearest parsing for
// each working precision.

#ifndef SDCURVE_DECIMAL_HPP_
#define SDCURVE_DECIMAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "sdcurve/bigfloat.hpp"

namespace sdcurve {

std::string format_shortest(float value);
std::string format_shortest(double value);
std::string format_shortest(const BigFloat& value);
std::string format_shortest(std::int64_t value);

// Whole-string parses; throw std::invalid_argument on junk or out-of-range.
float parse_binary32(std::string_view text);
double parse_binary64(std::string_view text);
std::int64_t parse_integer(std::string_view text);

}  // namespace sdcurve

#endif  // SDCURVE_DECIMAL_HPP_
