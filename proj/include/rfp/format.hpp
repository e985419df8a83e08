#ifndef RFP_FORMAT_HPP
#define RFP_FORMAT_HPP

#include <string>

namespace rfp {

/// printf "%.<digits>g" rendering; used for every CSV/JSON/table number.
std::string format_sig(double value, int digits);

/// Rounds to `digits` significant digits (the value a reader of
/// format_sig(value, digits) would recover).
double round_sig(double value, int digits);

/// 10 * log10(ratio)
double to_db(double ratio);

}  // namespace rfp

#endif  // RFP_FORMAT_HPP
