#pragma once

#include <gmpxx.h>

#include <string>

#include "flexdp/errors.hpp"

namespace flexdp {

// All charge and probability arithmetic is exact; Rat is the only numeric
// type used for them anywhere in the library.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// k^e for small nonnegative e.
inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out(1);
    for (unsigned long i = 0; i < e; ++i) out *= base;
    return out;
}

// "p/q" or "p". Used by the .req parser and the CLI.
inline Rat parse_rat(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(mpz_class(s));
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) fail(Err::Parse, "zero denominator in '" + s + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        fail(Err::Parse, "bad rational '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Decimal rendering for human output only; never used in comparisons.
std::string rat_approx(const Rat& r);

} // namespace flexdp
