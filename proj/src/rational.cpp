#include "entropylab/rational.hpp"

#include <stdexcept>

namespace entropylab {

std::string rat_to_string(const Rat& r) {
    Int num = numerator(r);
    Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ipart = s.substr(0, dot);
        std::string fpart = s.substr(dot + 1);
        bool neg = !ipart.empty() && ipart[0] == '-';
        if (neg) ipart = ipart.substr(1);
        if (ipart.empty()) ipart = "0";
        Int num(ipart);
        Int den = 1;
        for (char c : fpart) {
            if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal: " + s);
            num = num * 10 + (c - '0');
            den *= 10;
        }
        Rat r(num, den);
        return neg ? Rat(-r) : r;
    }
    return Rat(Int(s));
}

double rat_to_double(const Rat& r) {
    return static_cast<double>(r);
}

} // namespace entropylab
