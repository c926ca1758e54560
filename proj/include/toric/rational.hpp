#ifndef TORIC_RATIONAL_HPP
#define TORIC_RATIONAL_HPP

// Exact arithmetic base layer: arbitrary-precision rationals, lattice and
// rational vectors, and the M/N pairing.  No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Lattice vectors (both M-side and N-side) and rational points in M_R.
using ZVec = std::vector<long long>;
using QVec = std::vector<Rat>;

inline long long dot(const ZVec& a, const ZVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const QVec& a, const ZVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
    return s;
}

inline QVec to_qvec(const ZVec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

inline long long to_ll(const Rat& r) {
    if (!is_integral(r)) throw std::invalid_argument("to_ll: not an integer");
    return static_cast<long long>(numerator(r));
}

// Serialize a rational as "p" or "p/q" (q > 0, reduced).
inline std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rat(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

inline ZVec primitive(ZVec v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (long long& x : v) x /= g;
    return v;
}

}  // namespace toric

#endif
