#include "cyclo/rat.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace cyclo {

Rat::Rat(long long num, long long den)
    : Rat(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw std::domain_error("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::operator-() const {
    Rat r;
    r.v_ = -v_;
    return r;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::optional<Rat> Rat::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    auto valid_int = [](std::string_view t) {
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = slash == std::string_view::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(ns) || !valid_int(ds)) return std::nullopt;
    mpz_class num(std::string(ns), 10);
    mpz_class den(std::string(ds), 10);
    if (sgn(den) == 0) return std::nullopt;
    return Rat(num, den);
}

Rat abs(const Rat& r) {
    return r.sign() < 0 ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

}  // namespace cyclo
