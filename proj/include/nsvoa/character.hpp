#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "nsvoa/half.hpp"
#include "nsvoa/scalar.hpp"

namespace nsvoa {

/// Truncated q,z-series  q^h z^q0 * sum dim(l, e) q^l z^e  over l <= truncation.
struct CharacterSeries {
    Scalar weight_offset;
    Scalar charge_offset;
    Half truncation;
    std::map<std::pair<Half, int>, long long> dims;  // (relative level, relative charge) -> dimension

    long long at(Half level, int charge) const {
        auto it = dims.find({level, charge});
        return it == dims.end() ? 0 : it->second;
    }
    void set(Half level, int charge, long long d) {
        if (level > truncation) return;
        if (d == 0) dims.erase({level, charge});
        else dims[{level, charge}] = d;
    }
    /// Dimensions summed over charge at one level.
    long long level_total(Half level) const {
        long long t = 0;
        for (const auto& [k, d] : dims)
            if (k.first == level) t += d;
        return t;
    }

    /// Sum of series with identical offsets, truncated at the smaller order.
    CharacterSeries operator+(const CharacterSeries& o) const;
    /// Product: offsets add, truncated at the smaller order.
    CharacterSeries operator*(const CharacterSeries& o) const;
    bool operator==(const CharacterSeries& o) const {
        return weight_offset == o.weight_offset && charge_offset == o.charge_offset && truncation == o.truncation &&
               dims == o.dims;
    }
};

inline CharacterSeries CharacterSeries::operator+(const CharacterSeries& o) const {
    if (!(weight_offset == o.weight_offset) || !(charge_offset == o.charge_offset))
        throw std::invalid_argument("CharacterSeries: sum needs equal offsets");
    CharacterSeries out{weight_offset, charge_offset, std::min(truncation, o.truncation), {}};
    for (const auto* s : {this, &o})
        for (const auto& [k, d] : s->dims)
            if (k.first <= out.truncation) out.set(k.first, k.second, out.at(k.first, k.second) + d);
    return out;
}

inline CharacterSeries CharacterSeries::operator*(const CharacterSeries& o) const {
    CharacterSeries out{weight_offset + o.weight_offset, charge_offset + o.charge_offset,
                        std::min(truncation, o.truncation), {}};
    for (const auto& [a, da] : dims)
        for (const auto& [b, db] : o.dims) {
            Half l = a.first + b.first;
            if (l > out.truncation) continue;
            out.set(l, a.second + b.second, out.at(l, a.second + b.second) + da * db);
        }
    return out;
}

}  // namespace nsvoa
