#ifndef PMC_RATIONAL_HPP
#define PMC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <stdexcept>

namespace pmc {

// Exact arbitrary-precision rational scalar. All arithmetic in the toolkit
// is exact; there is no floating-point mode.
using Rational = boost::multiprecision::cpp_rational;
using Integer  = boost::multiprecision::cpp_int;

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

std::string to_string(const Rational& r);

// Parses "a" or "a/b" with optional sign. Throws std::invalid_argument.
Rational parse_rational(const std::string& s);

} // namespace pmc

#endif
