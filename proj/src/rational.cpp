#include "pmc/rational.hpp"

#include <sstream>

namespace pmc {

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

} // namespace pmc
