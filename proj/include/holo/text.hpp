#pragma once

#include <string>
#include <vector>

namespace holo {

// Shortest decimal form that parses back to the identical double (via
// std::to_chars). Used everywhere a double has to survive a text round trip.
std::string format_double(double v);

// Strict double parse of the whole string; throws DomainError otherwise.
double parse_double(const std::string& s);

// Strict integer parse of the whole string; throws DomainError otherwise.
int parse_int(const std::string& s);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace holo
