#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpd {

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;

// Error taxonomy, mirrored by CLI exit codes.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Precondition holds formally but the theory offers no construction,
// or a constructive search was exhausted.
struct theory_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct undecided_error : theory_error {
    using theory_error::theory_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parse "p", "-p/q" style exact rational literals.
inline Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw input_error("bad rational literal: '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Squarefree part of a nonzero rational, as a signed squarefree integer
/// representing its class in Q*/Q*^2.  p/q ~ p*q, then strip square factors.
Int square_class(const Rat& r);

/// Odd prime factors (with multiplicity removed) of |n|, plus 2 if even.
std::vector<Int> prime_support(const Int& n);

}  // namespace qpd
