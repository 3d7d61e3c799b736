#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cohdof {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction in canonical form: denominator > 0, gcd(|num|, den) = 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(std::int64_t n, std::int64_t d) : Rational(BigInt(n), BigInt(d)) {}

    /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view text) {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '"')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '"')) s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        auto slash = text.find('/');
        auto to_int = [](std::string_view s) {
            if (s.empty()) throw std::invalid_argument("empty integer in fraction");
            std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
            if (i == s.size()) throw std::invalid_argument("bad integer in fraction");
            for (std::size_t k = i; k < s.size(); ++k)
                if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad integer in fraction");
            return BigInt(std::string(s));
        };
        if (slash == std::string_view::npos) return Rational(to_int(text), BigInt(1));
        return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_.sign(); }
    bool is_integer() const { return den_ == 1; }

    /// Always "p/q", also for integers ("3/1", "0/1").
    std::string str() const { return num_.str() + "/" + den_.str(); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(Rational a) {
        a.num_ = -a.num_;
        return a;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt lhs = a.num_ * b.den_;
        BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Shorthand for literals in tests and tables: frac(17, 24).
inline Rational frac(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace cohdof
