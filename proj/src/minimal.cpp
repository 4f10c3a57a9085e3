#include "nsvoa/minimal.hpp"

#include <stdexcept>

namespace nsvoa {

namespace {

Scalar hs(Half v) { return Scalar(Rational(v.twice(), 2)); }

void same_level(const MinimalLabel& a, const MinimalLabel& b, const MinimalLabel& c) {
    if (a.m != b.m || a.m != c.m) throw std::invalid_argument("labels from different levels m");
}

}  // namespace

Convention parse_convention(const std::string& s) {
    if (s == "standard") return Convention::standard;
    if (s == "paper-strict") return Convention::paper_strict;
    throw std::invalid_argument("unknown convention '" + s + "' (expected standard or paper-strict)");
}

std::string convention_name(Convention c) { return c == Convention::standard ? "standard" : "paper-strict"; }

Scalar MinimalLabel::c() const { return Scalar(Rational(3 * m, m + 2)); }

Scalar MinimalLabel::h() const { return (hs(j) * hs(k) - Scalar(Rational(1, 4))) * Scalar(Rational(1, m + 2)); }

Scalar MinimalLabel::q() const { return (hs(j) - hs(k)) * Scalar(Rational(1, m + 2)); }

std::string MinimalLabel::str() const { return "(" + j.str() + "," + k.str() + ")"; }

bool admissible(const MinimalLabel& l, Convention conv) {
    if (l.m < 1) return false;
    if (!l.j.is_half_odd() || !l.k.is_half_odd() || l.j < Half(0) || l.k < Half(0)) return false;
    int bound = conv == Convention::standard ? l.m + 2 : l.m;
    return l.j + l.k < Half(bound);
}

MinimalLabel make_label(int m, Half j, Half k, Convention conv) {
    MinimalLabel l{m, j, k};
    if (!admissible(l, conv))
        throw std::invalid_argument("label " + l.str() + " is not admissible at m=" + std::to_string(m) + " (" +
                                    convention_name(conv) + ")");
    return l;
}

std::vector<MinimalLabel> spectrum(int m, Convention conv) {
    if (m < 1) throw std::invalid_argument("spectrum: m must be positive");
    std::vector<MinimalLabel> out;
    for (int tj = 1; tj < 2 * (m + 2); tj += 2)
        for (int tk = 1; tk < 2 * (m + 2); tk += 2) {
            MinimalLabel l{m, Half::from_twice(tj), Half::from_twice(tk)};
            if (admissible(l, conv)) out.push_back(l);
        }
    return out;
}

std::string chirality_name(Chirality c) {
    switch (c) {
        case Chirality::chiral: return "chiral";
        case Chirality::anti_chiral: return "anti-chiral";
        case Chirality::both: return "both";
        case Chirality::neither: return "neither";
    }
    return "?";
}

Chirality classify_chirality(const MinimalLabel& l) {
    Ns2Module M(l.params(), ModuleKind::verma);
    // <G+[-1/2]1, G+[-1/2]1> = 2h - q, <G-[-1/2]1, G-[-1/2]1> = 2h + q
    bool chiral = M.gram(half_odd(1), 1)[0][0].is_zero();
    bool anti = M.gram(half_odd(1), -1)[0][0].is_zero();
    if (chiral && anti) return Chirality::both;
    if (chiral) return Chirality::chiral;
    if (anti) return Chirality::anti_chiral;
    return Chirality::neither;
}

int fusion_upper_bound(const MinimalLabel& l1, const MinimalLabel& l2, const MinimalLabel& l3) {
    same_level(l1, l2, l3);
    Scalar d = l3.q() - l1.q() - l2.q();
    if (d == Scalar(1) || d == Scalar(-1)) return 1;
    if (!d.is_zero()) return 0;
    return classify_chirality(l1) == Chirality::neither ? 2 : 1;
}

Scalar leading_exponent(const MinimalLabel& l1, const MinimalLabel& l2, const MinimalLabel& l3) {
    same_level(l1, l2, l3);
    return l3.h() - l1.h() - l2.h();
}

}  // namespace nsvoa
