#include "cvnet/real.hpp"

#include <stdexcept>

namespace cvnet {

Real parse_real(const std::string& text) {
  try {
    Real out(text);
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
}

std::string format_real(const Real& x, int digits) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

}  // namespace cvnet
