#include "rfp/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace rfp {

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

double round_sig(double value, int digits) {
  return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

}  // namespace rfp
