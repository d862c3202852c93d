#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace indep {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an input violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input is valid but exceeds what an engine can handle
/// (e.g. brute force beyond one machine word of outcomes).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `INT` or `INT/INT` (optional sign, surrounding blanks ignored).
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise; always fully reduced.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

BigInt to_bigint(unsigned __int128 value);

}  // namespace indep
