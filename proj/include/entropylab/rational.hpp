#ifndef ENTROPYLAB_RATIONAL_HPP
#define ENTROPYLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace entropylab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// 2^{-k} as an exact rational.
inline Rat dyadic(unsigned k) {
    Int den = Int(1) << k;
    return Rat(1, den);
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Serializes as "p/q" (or "p" when q == 1).
std::string rat_to_string(const Rat& r);

// Parses "p/q", "p" or a plain decimal like "0.9".
Rat rat_from_string(const std::string& s);

double rat_to_double(const Rat& r);

} // namespace entropylab

#endif
