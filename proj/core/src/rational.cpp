#include "fogran/rational.hpp"

#include "fogran/error.hpp"

#include <cmath>

namespace fogran {

Rational::Rational(long p, long q) {
    if (q == 0) throw DomainError("zero denominator");
    v_ = mpq_class(p, q);
    v_.canonicalize();
}

Rational::Rational(const BigInt& p, const BigInt& q) {
    if (q == 0) throw DomainError("zero denominator");
    v_ = mpq_class(p, q);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view s) {
    std::string str(s);
    if (str.empty()) throw DomainError("empty rational literal");
    auto bad = [&] { return DomainError("malformed rational '" + str + "'"); };
    auto is_int = [](const std::string& x) {
        size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (x[i] < '0' || x[i] > '9') return false;
        return true;
    };
    auto to_z = [](std::string x) {
        if (!x.empty() && x[0] == '+') x.erase(0, 1);
        return BigInt(x, 10);
    };
    if (auto slash = str.find('/'); slash != std::string::npos) {
        auto p = str.substr(0, slash), q = str.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) throw bad();
        return Rational(to_z(p), to_z(q));
    }
    if (auto dot = str.find('.'); dot != std::string::npos) {
        auto ip = str.substr(0, dot), fp = str.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (ip == "-" || ip == "+" || ip.empty()) ip += "0";
        if (!is_int(ip) || (!fp.empty() && !is_int(fp)) || (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
            throw bad();
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        Rational frac = fp.empty() ? Rational(0) : Rational(to_z(fp), scale);
        Rational whole(to_z(ip));
        return neg ? whole - frac : whole + frac;
    }
    if (!is_int(str)) throw bad();
    return Rational(to_z(str));
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite value");
    return Rational(mpq_class(x));
}

BigInt Rational::floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

BigInt binom(long n, long k) {
    if (k < 0 || n < 0 || n < k) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

long binom_small(long n, long k) {
    BigInt b = binom(n, k);
    if (mpz_sizeinbase(b.get_mpz_t(), 2) > 62) throw DomainError("binomial coefficient too large");
    return b.get_si();
}

}  // namespace fogran
