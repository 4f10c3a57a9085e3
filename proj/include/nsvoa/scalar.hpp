#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nsvoa/rational.hpp"

namespace nsvoa {

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Element of Q(i, sqrt2, r) with r^2 = m + 2.
///
/// Coordinate k refers to the basis element i^(k&1) sqrt2^((k>>1)&1) r^((k>>2)&1),
/// so the order is {1, i, sqrt2, i sqrt2, r, i r, sqrt2 r, i sqrt2 r}.
/// A scalar without r-coordinates is "unbound" (m = -1) and mixes freely with
/// any level; two bound scalars must agree on m.
class Scalar {
public:
    static constexpr int kDim = 8;
    static constexpr int kI = 1;
    static constexpr int kSqrt2 = 2;
    static constexpr int kR = 4;

    Scalar() = default;
    Scalar(int v) : Scalar(Rational(v)) {}         // NOLINT(google-explicit-constructor)
    Scalar(long long v) : Scalar(Rational(v)) {}   // NOLINT(google-explicit-constructor)
    Scalar(Rational v);                            // NOLINT(google-explicit-constructor)

    /// Builds from raw coordinates and puts the result in canonical form.
    static Scalar normalize(std::array<Rational, kDim> coords, int m);

    static Scalar i();
    static Scalar sqrt2();
    /// r = sqrt(m + 2), collapsed when m + 2 is a square or twice a square.
    static Scalar r(int m);
    /// sqrt(m + 2) / sqrt(2).
    static Scalar sqrt_half_m_plus_2(int m);

    const Rational& coord(int k) const { return c_[static_cast<std::size_t>(k)]; }
    const std::array<Rational, kDim>& coords() const { return c_; }
    int m() const { return m_; }
    bool is_bound() const { return m_ >= 0; }

    bool is_zero() const { return mask_ == 0; }
    bool is_rational() const { return (mask_ & ~1u) == 0; }
    /// Only meaningful when is_rational().
    const Rational& rational() const { return c_[0]; }
    bool is_real() const { return (mask_ & 0xAAu) == 0; }

    /// Exact sign of a real scalar under sqrt2 > 0, r > 0. Throws on non-real input.
    Sign real_sign() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    Scalar inverse() const;
    /// Complex conjugate (i -> -i).
    Scalar conj() const;

    /// Human-readable form, e.g. "1/2 + 3*sqrt2*sqrt(3)".
    std::string str() const;
    std::size_t hash() const;

private:
    void recompute_mask();
    void canonicalize();
    Scalar flip(unsigned bit) const;

    std::array<Rational, kDim> c_{};
    int m_ = -1;
    unsigned mask_ = 0;  // bit k set iff coordinate k is nonzero
};

/// Largest k with k*k <= n (n >= 0).
long long isqrt(long long n);

}  // namespace nsvoa
