#pragma once

#include <string>
#include <vector>

#include "nsvoa/verma.hpp"

namespace nsvoa {

enum class Convention { standard, paper_strict };
Convention parse_convention(const std::string& s);
std::string convention_name(Convention c);

/// Label (j, k) of a unitary minimal-model module at level m.
struct MinimalLabel {
    int m = 1;
    Half j = half_odd(1), k = half_odd(1);

    Scalar c() const;
    Scalar h() const;
    Scalar q() const;
    VermaParams params() const { return {c(), h(), q()}; }
    std::string str() const;
    bool operator==(const MinimalLabel&) const = default;
};

/// Checks j, k in {1/2, 3/2, ...} and the range of the convention.
bool admissible(const MinimalLabel& l, Convention conv);
MinimalLabel make_label(int m, Half j, Half k, Convention conv = Convention::standard);

/// All admissible labels, ordered by j then k.
std::vector<MinimalLabel> spectrum(int m, Convention conv = Convention::standard);

enum class Chirality { chiral, anti_chiral, both, neither };
std::string chirality_name(Chirality c);
/// Decided from the level-1/2 Gram entries 2h - q and 2h + q.
Chirality classify_chirality(const MinimalLabel& l);

/// Upper bound on the fusion rule N(l1 l2; l3) from the U(1)-charge argument.
int fusion_upper_bound(const MinimalLabel& l1, const MinimalLabel& l2, const MinimalLabel& l3);
/// h3 - h1 - h2.
Scalar leading_exponent(const MinimalLabel& l1, const MinimalLabel& l2, const MinimalLabel& l3);

}  // namespace nsvoa
