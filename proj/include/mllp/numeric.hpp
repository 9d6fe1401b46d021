#pragma once

// Scalar layer: the whole library is templated on the arithmetic type.
// Two scalars are supported out of the box:
//   * double             -- fast path, tolerance-based comparisons
//   * mllp::Rational     -- exact arithmetic (boost cpp_rational), all
//                           tolerances collapse to zero
//
// Tolerances are data, not policy: every algorithm receives them explicitly
// so tests can tighten or loosen individual knobs.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mllp {

using Rational = boost::multiprecision::cpp_rational;

/// Comparison tolerances used across the solver and the reduction maps.
/// Zero-initialise (the Rational defaults) to demand exactness.
template <typename T>
struct Tolerances {
    T feasibility{};  ///< row/bound violation allowance
    T optimality{};   ///< threshold below which an estimate counts as zero
    T pivot{};        ///< smallest acceptable pivot magnitude
    T sign{};         ///< dead zone of sign() for coefficients and bounds

    static Tolerances defaults();
};

template <>
inline Tolerances<double> Tolerances<double>::defaults() {
    return {1e-9, 1e-9, 1e-10, 1e-12};
}

template <>
inline Tolerances<Rational> Tolerances<Rational>::defaults() {
    return {};  // exact mode: all zero
}

/// Finite stand-in for +infinity on upper bounds. Anything at or above the
/// cap is treated as "no real bound" by the enumeration oracle and by the
/// unboundedness certificate.
template <typename T>
inline T default_bound_cap() {
    return T(1000000000);  // 1e9, exact in both scalar types
}

/// Three-valued sign with a symmetric dead zone around zero.
template <typename T>
inline int sign_of(const T& v, const T& tol = T{}) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

inline double abs_of(double v) { return std::fabs(v); }
inline Rational abs_of(const Rational& v) { return boost::multiprecision::abs(v); }

/// Catch-all for boost expression templates: materialize, then take abs.
template <typename Tag, typename A1, typename A2, typename A3, typename A4>
inline Rational abs_of(const boost::multiprecision::detail::expression<Tag, A1, A2, A3, A4>& e) {
    return abs_of(Rational(e));
}

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// Parse a scalar from text. Accepts integers, decimal notation and "p/q"
/// fractions; for Rational, decimal strings are converted exactly.
template <typename T>
T scalar_from_string(const std::string& text);

template <>
inline double scalar_from_string<double>(const std::string& text) {
    std::size_t pos = text.find('/');
    if (pos != std::string::npos) {
        double num = std::stod(text.substr(0, pos));
        double den = std::stod(text.substr(pos + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator: " + text);
        return num / den;
    }
    return std::stod(text);
}

template <>
inline Rational scalar_from_string<Rational>(const std::string& text) {
    std::size_t pos = text.find('/');
    if (pos != std::string::npos) {
        Rational num = scalar_from_string<Rational>(text.substr(0, pos));
        Rational den = scalar_from_string<Rational>(text.substr(pos + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return num / den;
    }
    // Decimal or integer literal: scale the fraction digits exactly.
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    std::size_t dot = s.find('.');
    std::string digits = s;
    long exp10 = 0;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        exp10 = static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty()) throw std::invalid_argument("bad number: " + text);
    boost::multiprecision::cpp_int num(digits);
    boost::multiprecision::cpp_int den = 1;
    for (long i = 0; i < exp10; ++i) den *= 10;
    Rational r(num, den);
    return neg ? -r : r;
}

/// Lossless conversion from double (every finite double is a rational).
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
    Rational r(v);
    return r;
}

template <typename T>
T scalar_from_double(double v);

template <>
inline double scalar_from_double<double>(double v) { return v; }

template <>
inline Rational scalar_from_double<Rational>(double v) { return rational_from_double(v); }

/// Render a scalar for reports; Rational prints as "p/q".
template <typename T>
inline std::string scalar_to_string(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace mllp
