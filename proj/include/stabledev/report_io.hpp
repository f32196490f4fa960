#pragma once

#include <iosfwd>
#include <string>

#include "stabledev/verifier.hpp"

namespace stabledev {

// Shortest round-trip decimal form ("nan", "inf" and "-inf" for non-finite values).
std::string format_number(double v);

void write_report_csv(const VerificationReport& report, std::ostream& out);
std::string report_json(const VerificationReport& report);

}  // namespace stabledev
