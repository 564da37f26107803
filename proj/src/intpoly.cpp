#include "cyclo/intpoly.hpp"

#include <ostream>
#include <stdexcept>

namespace cyclo {

namespace {
const mpz_class kZero = 0;
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    trim();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::monomial(const mpz_class& coeff, unsigned exponent) {
    if (sgn(coeff) == 0) return IntPoly{};
    std::vector<mpz_class> c(exponent + 1, kZero);
    c.back() = coeff;
    return IntPoly(std::move(c));
}

const mpz_class& IntPoly::coeff(unsigned i) const {
    return i < c_.size() ? c_[i] : kZero;
}

void IntPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), kZero);
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    return a + (-b);
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1, kZero);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly{};
    std::vector<mpz_class> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(c));
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("IntPoly: division by zero polynomial");
    if (is_zero()) return IntPoly{};
    if (degree() < divisor.degree()) return std::nullopt;

    std::vector<mpz_class> rem = c_;
    std::vector<mpz_class> quot(c_.size() - divisor.c_.size() + 1, kZero);
    const mpz_class& lead = divisor.c_.back();
    for (size_t i = quot.size(); i-- > 0;) {
        mpz_class& top = rem[i + divisor.c_.size() - 1];
        if (sgn(top) == 0) continue;
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        if (sgn(r) != 0) return std::nullopt;
        quot[i] = q;
        for (size_t j = 0; j < divisor.c_.size(); ++j) rem[i + j] -= q * divisor.c_[j];
    }
    for (const auto& x : rem)
        if (sgn(x) != 0) return std::nullopt;
    return IntPoly(std::move(quot));
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (sgn(c_[i]) == 0) continue;
        if (!out.empty()) out += sgn(c_[i]) > 0 ? " + " : " - ";
        else if (sgn(c_[i]) < 0) out += "-";
        mpz_class a = ::abs(c_[i]);
        bool unit = a == 1 && i > 0;
        if (!unit) out += a.get_str();
        if (i > 0) {
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
    return os << p.str();
}

}  // namespace cyclo
