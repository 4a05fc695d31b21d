#include "twext/angle.hpp"

#include <cmath>
#include <numbers>

namespace twext {

Angle Angle::parse(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      const auto n = std::stoll(s, &used);
      if (used != s.size()) throw DomainError("bad angle '" + s + "'");
      return Angle(n, 1);
    }
    const auto n = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw DomainError("bad angle '" + s + "'");
    const auto rest = s.substr(slash + 1);
    const auto d = std::stoll(rest, &used);
    if (used != rest.size()) throw DomainError("bad angle '" + s + "'");
    return Angle(n, d);
  } catch (const std::logic_error&) {
    throw DomainError("bad angle '" + s + "'");
  }
}

double Angle::radians() const { return 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_); }

}  // namespace twext
