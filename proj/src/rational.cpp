#include "nsvoa/rational.hpp"

#include <limits>
#include <stdexcept>

namespace nsvoa {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits64(i128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    u128 a = abs128(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(a >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(a)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    i128 nn = n, dd = d;
    if (dd < 0) {
        nn = -nn;
        dd = -dd;
    }
    u128 g = gcd128(abs128(nn), abs128(dd));
    if (g > 1) {
        nn /= static_cast<i128>(g);
        dd /= static_cast<i128>(g);
    }
    if (fits64(nn) && fits64(dd)) {
        num_ = static_cast<std::int64_t>(nn);
        den_ = static_cast<std::int64_t>(dd);
    } else {
        mpq_class q(to_mpz(nn), to_mpz(dd));
        set_from_mpq(q);
    }
}

Rational::Rational(const mpq_class& q) { set_from_mpq(q); }

void Rational::set_from_mpq(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<mpq_class>(q);
    }
}

Rational Rational::parse(const std::string& text) {
    try {
        mpq_class q(text, 10);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument(text);
        return Rational(q);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
    return q;
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    if (big_ || num_ == std::numeric_limits<std::int64_t>::min()) return Rational(mpq_class(-to_mpq()));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t s;
            if (!__builtin_add_overflow(num_, o.num_, &s)) {
                num_ = s;
                return *this;
            }
        }
        i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
        i128 d = static_cast<i128>(den_) * o.den_;
        u128 g = gcd128(abs128(n), static_cast<u128>(d));
        if (g > 1) {
            n /= static_cast<i128>(g);
            d /= static_cast<i128>(g);
        }
        if (fits64(n) && fits64(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        set_from_mpq(mpq_class(to_mpz(n), to_mpz(d)));
        return *this;
    }
    mpq_class r = to_mpq() + o.to_mpq();
    set_from_mpq(r);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        i128 n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
        u128 g1 = gcd128(abs128(n1), static_cast<u128>(d2));
        u128 g2 = gcd128(abs128(n2), static_cast<u128>(d1));
        if (g1 > 1) {
            n1 /= static_cast<i128>(g1);
            d2 /= static_cast<i128>(g1);
        }
        if (g2 > 1) {
            n2 /= static_cast<i128>(g2);
            d1 /= static_cast<i128>(g2);
        }
        i128 n = n1 * n2, d = d1 * d2;
        if (fits64(n) && fits64(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        set_from_mpq(mpq_class(to_mpz(n), to_mpz(d)));
        return *this;
    }
    mpq_class r = to_mpq() * o.to_mpq();
    set_from_mpq(r);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!o.big_) {
        Rational inv;
        if (o.num_ == std::numeric_limits<std::int64_t>::min()) {
            inv = Rational(mpq_class(1 / o.to_mpq()));
        } else if (o.num_ < 0) {
            inv.num_ = -o.den_;
            inv.den_ = -o.num_;
        } else {
            inv.num_ = o.den_;
            inv.den_ = o.num_;
        }
        return *this *= inv;
    }
    mpq_class r = to_mpq() / o.to_mpq();
    set_from_mpq(r);
    return *this;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a value is big iff it does not fit inline
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Rational binomial(long long n, long long k) {
    if (k < 0) return Rational(0);
    Rational r(1);
    for (long long i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
    return r;
}

}  // namespace nsvoa
