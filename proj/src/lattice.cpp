#include "nsvoa/lattice.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nsvoa {

namespace {

void add_state(FockVector& v, const FockState& s, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = v.find(s);
    if (it == v.end()) {
        v.emplace(s, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

FockVector scaled(FockVector v, const Scalar& c) {
    if (c.is_zero()) return {};
    for (auto& [k, x] : v) x *= c;
    return v;
}

int max_level(const FockVector& v) {
    int n = 0;
    for (const auto& [s, c] : v) n = std::max(n, s.level());
    return n;
}

// sum over j of :b(j) b(n-j): with b(0) acting by `zero`, scaled by `coef`.
FockVector normal_ordered_square(int form, const Scalar& zero, int n, const FockVector& v) {
    FockVector out;
    auto b = [&](int k, const FockVector& w) {
        if (k != 0) return apply_oscillator(form, k, w);
        return scaled(w, zero);
    };
    const int top = std::max(max_level(v), 0);
    const int start = n >= 0 ? (n + 1) / 2 : -((-n) / 2);  // ceil(n/2)
    for (int hi = start; hi <= std::max(top, n - start); ++hi) {
        int lo = n - hi;
        if (lo > hi) continue;
        FockVector w = b(lo, b(hi, v));
        axpy(out, Scalar(lo == hi ? 1 : 2), w);
    }
    return out;
}

}  // namespace

int FockState::level() const {
    int n = 0;
    for (int k : parts) n += k;
    return n;
}

std::string FockState::str(const char* oscillator) const {
    std::string s;
    for (int k : parts) s += std::string(oscillator) + "(-" + std::to_string(k) + ")";
    if (sector != 0) s += "e^{" + std::to_string(sector) + "}";
    return s.empty() ? "1" : s;
}

FockVector fock_unit(FockState s) {
    FockVector v;
    v.emplace(std::move(s), Scalar(1));
    return v;
}

std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int max_part) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(left, max_part); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    if (n >= 0) rec(n, n);
    return out;
}

FockVector apply_oscillator(int form, int n, const FockVector& v) {
    if (n == 0) throw std::invalid_argument("apply_oscillator: zero mode is module specific");
    FockVector out;
    for (const auto& [s, c] : v) {
        if (n < 0) {
            FockState t = s;
            auto pos = std::lower_bound(t.parts.begin(), t.parts.end(), -n, std::greater<int>());
            t.parts.insert(pos, -n);
            add_state(out, t, c);
        } else {
            long mult = std::count(s.parts.begin(), s.parts.end(), n);
            if (mult == 0) continue;
            FockState t = s;
            t.parts.erase(std::find(t.parts.begin(), t.parts.end(), n));
            add_state(out, t, c * Scalar(static_cast<long long>(form) * n * mult));
        }
    }
    return out;
}

std::string cocycle_name(Cocycle c) { return c == Cocycle::sign ? "sign" : "trivial"; }

int LatticeVOA::epsilon(int p, int pp) const {
    if (cocycle_ == Cocycle::trivial) return 1;
    return ((p * pp) % 2 == 0) ? 1 : -1;
}

FockVector LatticeVOA::alpha(int n, const FockVector& v) const {
    if (n != 0) return apply_oscillator(-1, n, v);
    FockVector out;
    for (const auto& [s, c] : v) add_state(out, s, c * Scalar(-s.sector));
    return out;
}

FockVector LatticeVOA::exp_mode(int p, const Rational& t, const FockVector& v) const {
    if (!t.is_integer())
        throw std::invalid_argument("exponent " + t.str() + " of (e^{" + std::to_string(p) +
                                    "alpha}) is not allowed; allowed: integers");
    return exp_mode(p, static_cast<long long>(t.numerator().get_si()), v);
}

FockVector LatticeVOA::exp_mode(int p, long long t, const FockVector& v) const {
    // Y(e^b, x) = E^-(x) E^+(x) e_b x^{b(0)} with b = p alpha
    FockVector out;
    if (p == 0) {
        if (t == -1) return v;  // identity field
        return out;
    }
    for (const auto& [s, c] : v) {
        const long long pairing = -static_cast<long long>(p) * s.sector;  // <b, gamma>
        const FockVector base = fock_unit(s);
        const int N = s.level();
        // S+_d base for d = 0..N
        std::vector<FockVector> plus{base};
        for (int d = 1; d <= N; ++d) {
            FockVector acc;
            for (int k = 1; k <= d; ++k) axpy(acc, Scalar(p), apply_oscillator(-1, k, plus[static_cast<std::size_t>(d - k)]));
            plus.push_back(scaled(acc, Scalar(Rational(-1, d))));
        }
        for (int d2 = 0; d2 <= N; ++d2) {
            long long d1 = -t - 1 - pairing + d2;
            if (d1 < 0 || plus[static_cast<std::size_t>(d2)].empty()) continue;
            // S-_{d1} applied to plus[d2]
            std::vector<FockVector> minus{plus[static_cast<std::size_t>(d2)]};
            for (long long d = 1; d <= d1; ++d) {
                FockVector acc;
                for (long long k = 1; k <= d; ++k)
                    axpy(acc, Scalar(p), apply_oscillator(-1, static_cast<int>(-k), minus[static_cast<std::size_t>(d - k)]));
                minus.push_back(scaled(acc, Scalar(Rational(1, d))));
            }
            FockVector term = minus.back();
            const Scalar coef = c * Scalar(epsilon(p, s.sector));
            for (const auto& [u, x] : term) {
                FockState shifted = u;
                shifted.sector += p;
                add_state(out, shifted, coef * x);
            }
        }
    }
    return out;
}

FockVector LatticeVOA::virasoro(int n, const FockVector& v) const {
    // -1/2 sum :alpha alpha: (form -1 makes this the standard conformal vector) + 1/2 (-n-1) alpha(n)
    FockVector out;
    for (const auto& [s, c] : v) {
        FockVector one = fock_unit(s);
        FockVector quad = normal_ordered_square(-1, Scalar(-s.sector), n, one);
        axpy(out, c * Scalar(Rational(-1, 2)), quad);
        axpy(out, c * Scalar(Rational(-n - 1, 2)), alpha(n, one));
    }
    return out;
}

FockVector LatticeVOA::normal_square(int n, const FockVector& v) const {
    FockVector out;
    for (const auto& [s, c] : v) axpy(out, c, normal_ordered_square(-1, Scalar(-s.sector), n, fock_unit(s)));
    return out;
}

LatticeVOA::GradeInfo LatticeVOA::grade_of(const FockVector& v) const {
    if (v.empty()) throw std::invalid_argument("grade_of: zero vector");
    GradeInfo g{Scalar(), Scalar(-v.begin()->first.sector), ((v.begin()->first.sector % 2) + 2) % 2};
    FockVector l0 = virasoro(0, v);
    const auto& [s0, c0] = *v.begin();
    auto it = l0.find(s0);
    g.weight = it == l0.end() ? Scalar() : it->second / c0;
    FockVector diff = l0;
    axpy(diff, -g.weight, v);
    if (!diff.empty()) throw std::invalid_argument("grade_of: not an L(0) eigenvector");
    for (const auto& [s, c] : v)
        if (s.sector != s0.sector) throw std::invalid_argument("grade_of: mixed sectors");
    return g;
}

std::vector<FockState> LatticeVOA::basis(int max_level, int max_sector) {
    std::vector<FockState> out;
    for (int p = -max_sector; p <= max_sector; ++p)
        for (int n = 0; n <= max_level; ++n)
            for (auto& parts : partitions(n)) out.push_back(FockState{parts, p});
    return out;
}

FockVector HeisenbergFock::a(int n, const FockVector& v) const {
    if (n != 0) return apply_oscillator(1, n, v);
    return scaled(v, s_);
}

FockVector HeisenbergFock::virasoro(int n, const FockVector& v) const {
    FockVector out = normal_ordered_square(1, s_, n, v);
    out = scaled(out, Scalar(Rational(1, 2)));
    axpy(out, Scalar::i() * Scalar(Rational(-n - 1, 2)), a(n, v));
    return out;
}

Scalar HeisenbergFock::weight_of(const FockVector& v) const {
    if (v.empty()) throw std::invalid_argument("weight_of: zero vector");
    FockVector l0 = virasoro(0, v);
    const auto& [s0, c0] = *v.begin();
    auto it = l0.find(s0);
    Scalar w = it == l0.end() ? Scalar() : it->second / c0;
    FockVector diff = l0;
    axpy(diff, -w, v);
    if (!diff.empty()) throw std::invalid_argument("weight_of: not an L(0) eigenvector");
    return w;
}

}  // namespace nsvoa
