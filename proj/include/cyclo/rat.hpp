#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace cyclo {

/// Exact rational number in canonical form: reduced, denominator > 0.
/// Every public operation preserves canonical form and never rounds;
/// equality is structural.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long long n) : v_(static_cast<long>(n)) {}
    Rat(long long num, long long den);
    Rat(const mpz_class& num, const mpz_class& den);
    explicit Rat(const mpz_class& n) : v_(n) {}

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const;
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    /// "num/den" in canonical form; bare "num" when the denominator is 1.
    std::string str() const;

    /// Inverse of str(). Accepts "num" and "num/den"; the result is
    /// canonicalized, so parse(x.str()) == x for every Rat x.
    static std::optional<Rat> parse(std::string_view s);

    double to_double() const { return v_.get_d(); }

private:
    mpq_class v_;
};

Rat abs(const Rat& r);

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace cyclo
