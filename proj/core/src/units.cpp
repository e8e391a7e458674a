#include "wnc/units.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace wnc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view context) {
  s = trim(s);
  // Accept a unicode minus sign as typed in many documents.
  std::string buf(s);
  if (buf.rfind("−", 0) == 0) buf.replace(0, 3, "-");
  if (!buf.empty() && buf.front() == '+') buf.erase(0, 1);
  double value = 0.0;
  const char* first = buf.data();
  const char* last = buf.data() + buf.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (buf.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "' in " + std::string(context));
  }
  return value;
}

enum class PowerUnit { dbm, watt, milliwatt };

// Splits "<numbers> <unit>" into the numeric part and the unit.
std::pair<std::string_view, PowerUnit> split_unit(std::string_view text) {
  text = trim(text);
  auto ends_with_ci = [&](std::string_view suffix) {
    if (text.size() < suffix.size()) return false;
    auto tail = text.substr(text.size() - suffix.size());
    for (std::size_t i = 0; i < suffix.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(tail[i])) != suffix[i]) return false;
    }
    return true;
  };
  if (ends_with_ci("dbm")) return {text.substr(0, text.size() - 3), PowerUnit::dbm};
  if (ends_with_ci("mw")) return {text.substr(0, text.size() - 2), PowerUnit::milliwatt};
  if (ends_with_ci("w")) return {text.substr(0, text.size() - 1), PowerUnit::watt};
  throw std::invalid_argument("power value '" + std::string(text) +
                              "' needs an explicit unit suffix (dBm, W or mW)");
}

double to_watts(double value, PowerUnit unit) {
  switch (unit) {
    case PowerUnit::dbm:
      return dbm_to_watts(value);
    case PowerUnit::milliwatt:
      return value * 1e-3;
    case PowerUnit::watt:
      return value;
  }
  return value;
}

}  // namespace

double parse_power(std::string_view text) {
  auto [number, unit] = split_unit(text);
  const double watts = to_watts(parse_number(number, text), unit);
  if (!(watts >= 0.0) || !std::isfinite(watts)) {
    throw std::invalid_argument("power '" + std::string(text) + "' is out of range");
  }
  return watts;
}

std::vector<double> parse_power_grid(std::string_view text) {
  auto [numbers, unit] = split_unit(text);
  numbers = trim(numbers);
  std::vector<double> values;
  if (numbers.find(':') != std::string_view::npos) {
    const auto c1 = numbers.find(':');
    const auto c2 = numbers.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw std::invalid_argument("power range must be start:step:stop, got '" + std::string(text) + "'");
    }
    const double start = parse_number(numbers.substr(0, c1), text);
    const double step = parse_number(numbers.substr(c1 + 1, c2 - c1 - 1), text);
    const double stop = parse_number(numbers.substr(c2 + 1), text);
    if (!(step > 0.0) || stop < start) {
      throw std::invalid_argument("power range '" + std::string(text) + "' must have step > 0 and stop >= start");
    }
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(start + step * static_cast<double>(i));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= numbers.size()) {
      const auto comma = numbers.find(',', pos);
      const auto item = numbers.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      values.push_back(parse_number(item, text));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  std::vector<double> watts;
  watts.reserve(values.size());
  for (double v : values) {
    const double w = to_watts(v, unit);
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("power grid '" + std::string(text) + "' contains a non-positive power");
    }
    if (!watts.empty() && !(w > watts.back())) {
      throw std::invalid_argument("power grid '" + std::string(text) + "' must be strictly increasing");
    }
    watts.push_back(w);
  }
  return watts;
}

}  // namespace wnc
