#pragma once

// Exact scalar arithmetic. Every quantity in this library is a rational
// number; there is no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace rbx {

using Int = boost::multiprecision::cpp_int;
using Scalar = boost::multiprecision::cpp_rational;

inline Int num(const Scalar& s) { return boost::multiprecision::numerator(s); }
inline Int den(const Scalar& s) { return boost::multiprecision::denominator(s); }

/// Renders a rational as "p/q", or just "p" when q = 1.
inline std::string to_string(const Scalar& s) {
    if (den(s) == 1) return num(s).str();
    return num(s).str() + "/" + den(s).str();
}

/// Parses "p/q" or "p" (optional sign, arbitrary precision). Returns
/// nothing on malformed input; never accepts floating-point syntax.
inline std::optional<Scalar> parse_rational(const std::string& text) {
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Scalar(Int(text));
        }
        std::string p = text.substr(0, slash), q = text.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) return std::nullopt;
        Int qi(q);
        if (qi == 0) return std::nullopt;
        return Scalar(Int(p), qi);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Scalar parse_rational_or_throw(const std::string& text) {
    auto r = parse_rational(text);
    if (!r) throw std::invalid_argument("not a rational: '" + text + "'");
    return *r;
}

/// Element of K[t]/(t^2): a + b t with t^2 = 0. Used to expand structure
/// axioms to first order as a code path independent of the cochain
/// machinery.
struct Dual {
    Scalar a;  // constant term
    Scalar b;  // coefficient of t

    Dual() = default;
    Dual(Scalar a0) : a(std::move(a0)) {}
    Dual(Scalar a0, Scalar b0) : a(std::move(a0)), b(std::move(b0)) {}

    bool is_zero() const { return a == 0 && b == 0; }

    friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
    friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
    friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
    friend Dual operator*(const Dual& x, const Dual& y) {
        return {x.a * y.a, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
    Dual& operator+=(const Dual& y) { a += y.a; b += y.b; return *this; }
    Dual& operator-=(const Dual& y) { a -= y.a; b -= y.b; return *this; }
};

inline std::string to_string(const Dual& d) {
    return to_string(d.a) + " + (" + to_string(d.b) + ")t";
}

}  // namespace rbx
