#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace nsvoa {

/// Exact element of (1/2)Z, stored as twice its value.
class Half {
public:
    constexpr Half() = default;
    constexpr explicit Half(int integer) : twice_(2 * integer) {}

    static constexpr Half from_twice(int twice) {
        Half h;
        h.twice_ = twice;
        return h;
    }
    /// Parses "n", "-n", "n/2" or "-n/2".
    static Half parse(const std::string& text);

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr bool is_half_odd() const { return twice_ % 2 != 0; }
    /// Only meaningful when is_integer().
    constexpr int as_int() const { return twice_ / 2; }
    /// Floor of the value.
    constexpr int floor() const { return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2); }

    constexpr Half operator-() const { return from_twice(-twice_); }
    constexpr Half operator+(Half o) const { return from_twice(twice_ + o.twice_); }
    constexpr Half operator-(Half o) const { return from_twice(twice_ - o.twice_); }
    constexpr Half& operator+=(Half o) { twice_ += o.twice_; return *this; }
    constexpr Half& operator-=(Half o) { twice_ -= o.twice_; return *this; }
    constexpr Half operator*(int k) const { return from_twice(twice_ * k); }

    constexpr auto operator<=>(const Half&) const = default;

    /// "3", "-5/2", ...
    std::string str() const;

private:
    int twice_ = 0;
};

constexpr Half half_odd(int numerator_over_two) { return Half::from_twice(numerator_over_two); }

inline std::string Half::str() const {
    if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

inline Half Half::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            int v = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return Half(v);
        }
        std::size_t used = 0;
        int num = std::stoi(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument(text);
        std::string den_text = text.substr(slash + 1);
        int den = std::stoi(den_text, &used);
        if (used != den_text.size()) throw std::invalid_argument(text);
        if (den == 1) return Half(num);
        if (den == 2) return from_twice(num);
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("not a half-integer: '" + text + "'");
}

}  // namespace nsvoa

template <>
struct std::hash<nsvoa::Half> {
    std::size_t operator()(const nsvoa::Half& h) const noexcept { return std::hash<int>{}(h.twice()); }
};
