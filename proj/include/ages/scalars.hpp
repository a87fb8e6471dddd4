#ifndef AGES_SCALARS_HPP
#define AGES_SCALARS_HPP

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ages {

// Errors shared across the library.  input_error: bad arguments or files;
// data_error: structurally valid input that violates a semantic contract
// (failed decode, broken metric axioms); resource_error: a search or
// enumeration would exceed its documented soft limit.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact scalar used by the combinatorial predicates.  int64 components are
// enough for the distance alphabets handled here (boost::rational keeps
// values normalized and compares overflow-safely).
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}
inline double to_double(double d) { return d; }

// Parses "p/q", a plain integer, or a decimal literal, exactly.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw input_error("empty rational literal");
    std::size_t slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            long long p = std::stoll(text.substr(0, slash));
            long long q = std::stoll(text.substr(slash + 1));
            if (q == 0) throw input_error("zero denominator in '" + text + "'");
            return Rat(p, q);
        }
        std::size_t dot = text.find('.');
        if (dot == std::string::npos) return Rat(std::stoll(text));
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.size() > 12) frac = frac.substr(0, 12);  // int64 headroom
        bool neg = !whole.empty() && whole[0] == '-';
        long long w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
        long long f = frac.empty() ? 0 : std::stoll(frac);
        long long scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rat magnitude = Rat(std::llabs(w)) + Rat(f, scale);
        return neg || w < 0 ? -magnitude : magnitude;
    } catch (const std::invalid_argument&) {
        throw input_error("bad rational literal '" + text + "'");
    } catch (const std::out_of_range&) {
        throw input_error("rational literal out of range '" + text + "'");
    }
}

inline std::string format_scalar(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

inline std::string format_scalar(double d) {
    std::ostringstream os;
    os.precision(12);
    os << d;
    return os.str();
}

// Scalar-mode glue: exact comparisons for Rat, tolerance-aware ones for
// double.  `tol` is a relative tolerance and is ignored in exact mode.
template <typename S>
inline bool scalar_eq(const S& a, const S& b, double tol = 1e-9) {
    if constexpr (std::is_same_v<S, Rat>) {
        (void)tol;
        return a == b;
    } else {
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return std::fabs(a - b) <= tol * scale;
    }
}

template <typename S>
inline bool scalar_le(const S& a, const S& b, double tol = 1e-9) {
    if constexpr (std::is_same_v<S, Rat>) {
        (void)tol;
        return a <= b;
    } else {
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return a <= b + tol * scale;
    }
}

template <typename S>
inline S scalar_abs(const S& a) {
    if constexpr (std::is_same_v<S, Rat>) {
        return a < Rat(0) ? -a : a;
    } else {
        return std::fabs(a);
    }
}

}  // namespace ages

#endif  // AGES_SCALARS_HPP
