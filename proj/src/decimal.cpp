#include "sdcurve/decimal.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace sdcurve {
namespace {

template <class T>
std::string shortest(T value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, end);
}

template <class T>
T parse_whole(std::string_view text, const char* what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec == std::errc::invalid_argument || ptr != last) {
    throw std::invalid_argument(std::string("not a valid ") + what + ": '" + std::string(text) + "'");
  }
  if (ec == std::errc::result_out_of_range) {
    throw std::invalid_argument(std::string(what) + " out of range: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_shortest(float value) { return shortest(value); }
std::string format_shortest(double value) { return shortest(value); }
std::string format_shortest(const BigFloat& value) { return value.to_string(); }
std::string format_shortest(std::int64_t value) { return std::to_string(value); }

float parse_binary32(std::string_view text) { return parse_whole<float>(text, "binary32 number"); }
double parse_binary64(std::string_view text) { return parse_whole<double>(text, "binary64 number"); }
std::int64_t parse_integer(std::string_view text) { return parse_whole<std::int64_t>(text, "integer"); }

}  // namespace sdcurve
