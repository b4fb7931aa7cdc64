#pragma once

#include <string>

namespace subseries {

// Shortest decimal form of x that parses back to the same double.
std::string shortest(double x);

// Fixed significant-digit form used in tables and CSV ("%.15g").
std::string sig15(double x);

}  // namespace subseries
