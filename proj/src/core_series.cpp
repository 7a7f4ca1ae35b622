#include "sdcurve/core_series.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace sdcurve {

EvalMode EvalMode::extended(int bits) {
  if (bits < 64) {
    throw std::invalid_argument("extended precision needs at least 64 bits, got " + std::to_string(bits));
  }
  return {Precision::extended, bits};
}

EvalMode EvalMode::parse(std::string_view name) {
  if (name == "single") return binary32();
  if (name == "double") return binary64();
  if (name == "big") return extended();
  if (name.starts_with("big:")) {
    const std::string_view digits = name.substr(4);
    int bits = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("bad precision in mode '" + std::string(name) + "'");
    }
    return extended(bits);
  }
  throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected single, double, big or big:<bits>)");
}

std::string EvalMode::name() const {
  switch (kind) {
    case Precision::binary32:
      return "single";
    case Precision::binary64:
      return "double";
    case Precision::extended:
      return "big:" + std::to_string(bits);
  }
  return "?";
}

TermBudget TermBudget::at_most(std::int64_t terms) {
  if (terms < 1) throw std::invalid_argument("term budget must be positive");
  return {terms};
}

std::string_view branch_name(Branch branch) {
  switch (branch) {
    case Branch::direct:
      return "direct";
    case Branch::reflected:
      return "reflected";
    case Branch::zero_shortcut:
      return "zero_shortcut";
  }
  return "?";
}

}  // namespace sdcurve
