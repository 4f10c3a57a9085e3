#include "nsvoa/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace nsvoa {

namespace {

int merge_level(int a, int b) {
    if (a < 0) return b;
    if (b < 0 || a == b) return a;
    throw std::invalid_argument("Scalar: mixing levels m=" + std::to_string(a) + " and m=" + std::to_string(b));
}

// If m + 2 = k^2 returns {k, false}; if m + 2 = 2k^2 returns {k, true}; else {0, false}.
std::pair<long long, bool> collapse_of(int m) {
    long long n = m + 2;
    long long s = isqrt(n);
    if (s * s == n) return {s, false};
    if (n % 2 == 0) {
        long long t = isqrt(n / 2);
        if (t * t == n / 2) return {t, true};
    }
    return {0, false};
}

// Interval [lo, hi] containing sqrt(n), with width 2^-bits.
std::pair<mpq_class, mpq_class> sqrt_interval(const mpz_class& n, unsigned bits) {
    mpz_class scaled = n << (2 * bits);
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    mpz_class den = mpz_class(1) << bits;
    mpq_class lo(s, den), hi(s + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    if (s * s == scaled) hi = lo;
    return {lo, hi};
}

}  // namespace

long long isqrt(long long n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

Scalar::Scalar(Rational v) {
    c_[0] = std::move(v);
    recompute_mask();
}

void Scalar::recompute_mask() {
    mask_ = 0;
    for (int k = 0; k < kDim; ++k)
        if (!c_[static_cast<std::size_t>(k)].is_zero()) mask_ |= 1u << k;
}

void Scalar::canonicalize() {
    if (m_ >= 0 && (mask_ & 0xF0u)) {
        auto [k, twice] = collapse_of(m_);
        if (k != 0) {
            for (int b = 0; b < 4; ++b) {
                Rational& src = c_[static_cast<std::size_t>(b | kR)];
                if (src.is_zero()) continue;
                if (!twice) {
                    c_[static_cast<std::size_t>(b)] += src * Rational(k);
                } else if (b & kSqrt2) {
                    c_[static_cast<std::size_t>(b & ~kSqrt2)] += src * Rational(2 * k);
                } else {
                    c_[static_cast<std::size_t>(b | kSqrt2)] += src * Rational(k);
                }
                src = Rational(0);
            }
        }
    }
    recompute_mask();
    if (!(mask_ & 0xF0u)) m_ = -1;
}

Scalar Scalar::normalize(std::array<Rational, kDim> coords, int m) {
    if (m < -1) throw std::invalid_argument("Scalar: level must be nonnegative");
    Scalar s;
    s.c_ = std::move(coords);
    s.m_ = m;
    s.recompute_mask();
    if (m < 0 && (s.mask_ & 0xF0u)) throw std::invalid_argument("Scalar: r-coordinates need a level");
    s.canonicalize();
    return s;
}

Scalar Scalar::i() {
    std::array<Rational, kDim> c{};
    c[kI] = 1;
    return normalize(std::move(c), -1);
}

Scalar Scalar::sqrt2() {
    std::array<Rational, kDim> c{};
    c[kSqrt2] = 1;
    return normalize(std::move(c), -1);
}

Scalar Scalar::r(int m) {
    std::array<Rational, kDim> c{};
    c[kR] = 1;
    return normalize(std::move(c), m);
}

Scalar Scalar::sqrt_half_m_plus_2(int m) {
    // r / sqrt2 = r sqrt2 / 2
    std::array<Rational, kDim> c{};
    c[kR | kSqrt2] = Rational(1, 2);
    return normalize(std::move(c), m);
}

Scalar Scalar::operator-() const {
    Scalar s(*this);
    for (auto& x : s.c_)
        if (!x.is_zero()) x = -x;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.mask_ == 0) return *this;
    if ((o.mask_ & 0xF0u) && (mask_ & 0xF0u)) merge_level(m_, o.m_);
    if (o.mask_ & 0xF0u) m_ = o.m_;
    for (int k = 0; k < kDim; ++k)
        if (o.mask_ & (1u << k)) c_[static_cast<std::size_t>(k)] += o.c_[static_cast<std::size_t>(k)];
    recompute_mask();
    if (!(mask_ & 0xF0u)) m_ = -1;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.mask_ == 0 || b.mask_ == 0) return Scalar();
    if (a.mask_ == 1 && b.mask_ == 1) return Scalar(a.c_[0] * b.c_[0]);
    int m = -1;
    bool ar = a.mask_ & 0xF0u, br = b.mask_ & 0xF0u;
    if (ar && br) m = merge_level(a.m_, b.m_);
    else if (ar) m = a.m_;
    else if (br) m = b.m_;
    std::array<Rational, Scalar::kDim> out{};
    for (int x = 0; x < Scalar::kDim; ++x) {
        if (!(a.mask_ & (1u << x))) continue;
        for (int y = 0; y < Scalar::kDim; ++y) {
            if (!(b.mask_ & (1u << y))) continue;
            Rational t = a.c_[static_cast<std::size_t>(x)] * b.c_[static_cast<std::size_t>(y)];
            int both = x & y;
            if (both & Scalar::kI) t = -t;
            if (both & Scalar::kSqrt2) t *= Rational(2);
            if (both & Scalar::kR) t *= Rational(m + 2);
            out[static_cast<std::size_t>(x ^ y)] += t;
        }
    }
    Scalar s;
    s.c_ = std::move(out);
    s.m_ = m;
    s.recompute_mask();
    if (!(s.mask_ & 0xF0u)) s.m_ = -1;
    return s;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::flip(unsigned bit) const {
    Scalar s(*this);
    for (int k = 0; k < kDim; ++k)
        if ((static_cast<unsigned>(k) & bit) && !s.c_[static_cast<std::size_t>(k)].is_zero())
            s.c_[static_cast<std::size_t>(k)] = -s.c_[static_cast<std::size_t>(k)];
    return s;
}

Scalar Scalar::conj() const { return flip(kI); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    if (mask_ == 1) return Scalar(Rational(1) / c_[0]);
    Scalar num(1);
    Scalar x(*this);
    for (unsigned bit : {static_cast<unsigned>(kR), static_cast<unsigned>(kSqrt2), static_cast<unsigned>(kI)}) {
        Scalar cj = x.flip(bit);
        num *= cj;
        x *= cj;
    }
    if (!x.is_rational()) throw std::logic_error("Scalar: norm not rational");
    Rational inv = Rational(1) / x.c_[0];
    return num * Scalar(inv);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.mask_ == 1 && mask_ == 1) {
        c_[0] /= o.c_[0];
        recompute_mask();
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.mask_ != b.mask_) return false;
    if ((a.mask_ & 0xF0u) && a.m_ != b.m_) return false;
    for (int k = 0; k < Scalar::kDim; ++k)
        if ((a.mask_ & (1u << k)) && !(a.c_[static_cast<std::size_t>(k)] == b.c_[static_cast<std::size_t>(k)]))
            return false;
    return true;
}

Sign Scalar::real_sign() const {
    if (!is_real()) throw std::invalid_argument("real_sign: scalar " + str() + " is not real");
    if (is_zero()) return Sign::zero;
    if (mask_ == 1) return c_[0].sign() > 0 ? Sign::positive : Sign::negative;
    // value = a + b sqrt2 + c r + d sqrt(2(m+2)); the basis is independent over Q
    // in canonical form so the value is nonzero and refinement terminates.
    mpq_class a = c_[0].to_mpq(), b = c_[kSqrt2].to_mpq(), c = c_[kR].to_mpq(), d = c_[kR | kSqrt2].to_mpq();
    mpz_class n2 = 2, nr = m_ + 2, n2r = 2 * (m_ + 2);
    for (unsigned bits = 16;; bits *= 2) {
        mpq_class lo = a, hi = a;
        auto add = [&](const mpq_class& coef, const mpz_class& n) {
            if (coef == 0) return;
            auto [l, h] = sqrt_interval(n, bits);
            if (coef > 0) {
                lo += coef * l;
                hi += coef * h;
            } else {
                lo += coef * h;
                hi += coef * l;
            }
        };
        add(b, n2);
        if (m_ >= 0) {
            add(c, nr);
            add(d, n2r);
        }
        if (lo > 0) return Sign::positive;
        if (hi < 0) return Sign::negative;
        if (bits > (1u << 20)) throw std::logic_error("real_sign: refinement did not separate from zero");
    }
}

std::string Scalar::str() const {
    if (is_zero()) return "0";
    static const char* const names[kDim] = {"", "i", "sqrt2", "i*sqrt2", "r", "i*r", "sqrt2*r", "i*sqrt2*r"};
    std::string out;
    std::string rname = m_ >= 0 ? "sqrt(" + std::to_string(m_ + 2) + ")" : "r";
    for (int k = 0; k < kDim; ++k) {
        if (!(mask_ & (1u << k))) continue;
        const Rational& v = c_[static_cast<std::size_t>(k)];
        std::string name = names[k];
        if (k & 4) name.replace(name.size() - 1, 1, rname);
        std::string mag = v.sign() < 0 ? (-v).str() : v.str();
        std::string term;
        if (k == 0) term = mag;
        else if (mag == "1") term = name;
        else term = mag + "*" + name;
        if (out.empty()) out = (v.sign() < 0 ? "-" : "") + term;
        else out += (v.sign() < 0 ? " - " : " + ") + term;
    }
    return out;
}

std::size_t Scalar::hash() const {
    std::size_t h = mask_;
    for (int k = 0; k < kDim; ++k)
        if (mask_ & (1u << k)) h = h * 1000003u ^ c_[static_cast<std::size_t>(k)].hash();
    return h;
}

}  // namespace nsvoa
