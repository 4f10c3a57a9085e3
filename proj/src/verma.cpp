#include "nsvoa/verma.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nsvoa {

namespace {

Scalar half_scalar(Half h) { return Scalar(Rational(h.twice(), 2)); }

int mode_charge(const ModeSymbol& x) {
    if (x.kind == Kind::Gp) return 1;
    if (x.kind == Kind::Gm) return -1;
    return 0;
}

void add_term(StateVector& v, const Monomial& mono, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = v.find(mono);
    if (it == v.end()) {
        v.emplace(mono, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

}  // namespace

Grade grade_of(const Monomial& mono) {
    Grade g{Half(0), 0};
    for (const auto& x : mono) {
        g.first -= x.index;
        g.second += mode_charge(x);
    }
    return g;
}

Grade grade_of(const StateVector& v) {
    if (v.empty()) throw std::invalid_argument("grade_of: zero vector has no grade");
    Grade g = grade_of(v.begin()->first);
    for (const auto& [mono, c] : v)
        if (grade_of(mono) != g) throw std::invalid_argument("grade_of: inhomogeneous vector");
    return g;
}

std::string monomial_str(const Monomial& mono) {
    if (mono.empty()) return "1";
    std::string s;
    for (const auto& x : mono) s += x.str();
    return s;
}

StateVector unit_vector(const Monomial& mono) {
    StateVector v;
    v.emplace(mono, Scalar(1));
    return v;
}

ModeSymbol anti_involution(const ModeSymbol& x) {
    switch (x.kind) {
        case Kind::L: return ModeSymbol::L(-x.index);
        case Kind::J: return ModeSymbol::J(-x.index);
        case Kind::Gp: return ModeSymbol::Gm(-x.index);
        case Kind::Gm: return ModeSymbol::Gp(-x.index);
        case Kind::C: return x;
        default: throw std::invalid_argument("anti_involution: not an ns2 mode");
    }
}

std::vector<ModeSymbol> negative_modes(Half level) {
    std::vector<ModeSymbol> out;
    for (int n = 1; 2 * n <= level.twice(); ++n) {
        out.push_back(ModeSymbol::J(Half(-n)));
        out.push_back(ModeSymbol::L(Half(-n)));
    }
    for (int t = 1; t <= level.twice(); t += 2) {
        out.push_back(ModeSymbol::Gp(Half::from_twice(-t)));
        out.push_back(ModeSymbol::Gm(Half::from_twice(-t)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

int max_charge(Half level) {
    int k = 0;
    while ((k + 1) * (k + 1) <= level.twice()) ++k;
    return k;
}

std::vector<Monomial> enumerate_basis(Half level, int charge) {
    std::vector<Monomial> out;
    if (level < Half(0)) return out;
    const std::vector<ModeSymbol> modes = negative_modes(level);
    Monomial cur;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int weight_left, int charge_left) {
        if (weight_left == 0) {
            if (charge_left == 0) out.push_back(cur);
            return;
        }
        if (i == modes.size()) return;
        const ModeSymbol& x = modes[i];
        const int w = (-x.index).twice();
        const int e = mode_charge(x);
        const int max_mult = x.is_odd() ? 1 : weight_left / w;
        for (int k = 0; k <= max_mult && k * w <= weight_left; ++k) {
            for (int t = 0; t < k; ++t) cur.push_back(x);
            rec(i + 1, weight_left - k * w, charge_left - k * e);
            for (int t = 0; t < k; ++t) cur.pop_back();
        }
    };
    rec(0, level.twice(), charge);
    std::sort(out.begin(), out.end(), MonoLess{});
    return out;
}

std::string module_kind_name(ModuleKind k) {
    switch (k) {
        case ModuleKind::verma: return "verma";
        case ModuleKind::vacuum_quotient: return "vacuum-quotient";
        case ModuleKind::irreducible: return "irreducible";
    }
    return "?";
}

Ns2Module::Ns2Module(VermaParams params, ModuleKind kind) : params_(std::move(params)), kind_(kind) {
    if (kind_ == ModuleKind::vacuum_quotient && (!params_.h.is_zero() || !params_.q.is_zero()))
        throw std::invalid_argument("vacuum quotient needs h = q = 0");
}

const std::vector<Monomial>& Ns2Module::verma_basis(Half level, int charge) {
    Grade g{level, charge};
    auto it = basis_cache_.find(g);
    if (it != basis_cache_.end()) return it->second;
    auto& b = basis_cache_[g];
    b = enumerate_basis(level, charge);
    auto& idx = index_cache_[g];
    for (std::size_t i = 0; i < b.size(); ++i) idx.emplace(b[i], i);
    return b;
}

std::size_t Ns2Module::index_of(const Grade& g, const Monomial& mono) {
    verma_basis(g.first, g.second);
    auto& idx = index_cache_.at(g);
    auto it = idx.find(mono);
    if (it == idx.end()) throw std::logic_error("monomial " + monomial_str(mono) + " not in basis");
    return it->second;
}

const StateVector& Ns2Module::apply_verma(const ModeSymbol& x, const Monomial& mono) {
    auto key = std::make_pair(x, mono);
    auto it = apply_cache_.find(key);
    if (it != apply_cache_.end()) return it->second;
    StateVector r = compute_apply(x, mono);
    return apply_cache_.emplace(std::move(key), std::move(r)).first->second;
}

StateVector Ns2Module::compute_apply(const ModeSymbol& x, const Monomial& mono) {
    StateVector out;
    if (x.kind == Kind::C) {
        add_term(out, mono, params_.c);
        return out;
    }
    if (x.index.twice() == 0) {
        Grade g = grade_of(mono);
        if (x.kind == Kind::L) add_term(out, mono, params_.h + half_scalar(g.first));
        else if (x.kind == Kind::J) add_term(out, mono, params_.q + Scalar(g.second));
        else throw std::invalid_argument("apply: bad zero mode " + x.str());
        return out;
    }
    const bool negative = x.index < Half(0);
    if (mono.empty()) {
        if (negative) add_term(out, Monomial{x}, Scalar(1));
        return out;
    }
    const ModeSymbol& y = mono.front();
    if (negative && x <= y) {
        if (x == y && x.is_odd()) return out;  // fermionic square
        Monomial m;
        m.reserve(mono.size() + 1);
        m.push_back(x);
        m.insert(m.end(), mono.begin(), mono.end());
        add_term(out, m, Scalar(1));
        return out;
    }
    // x y rest = (-1)^{|x||y|} y (x rest) + [x, y] rest
    const Monomial rest(mono.begin() + 1, mono.end());
    const Scalar sign(x.is_odd() && y.is_odd() ? -1 : 1);
    StateVector inner = apply_verma(x, rest);
    for (const auto& [m2, c2] : inner) {
        const StateVector& t = apply_verma(y, m2);
        for (const auto& [m3, c3] : t) add_term(out, m3, sign * c2 * c3);
    }
    const LinComb xy = bracket(x, y);
    for (const auto& [z, cz] : xy.terms()) {
        const StateVector& t = apply_verma(z, rest);
        for (const auto& [m3, c3] : t) add_term(out, m3, cz * c3);
    }
    return out;
}

StateVector Ns2Module::apply_verma(const ModeSymbol& x, const StateVector& v) {
    StateVector out;
    for (const auto& [mono, c] : v)
        for (const auto& [m2, c2] : apply_verma(x, mono)) add_term(out, m2, c * c2);
    return out;
}

StateVector Ns2Module::apply(const ModeSymbol& x, const StateVector& v) {
    StateVector out = apply_verma(x, v);
    if (kind_ == ModuleKind::verma) return out;
    return reduce(std::move(out));
}

StateVector Ns2Module::create(const Monomial& mono) {
    StateVector v = unit_vector(Monomial{});
    for (auto it = mono.rbegin(); it != mono.rend(); ++it) v = apply(*it, v);
    return v;
}

StateVector Ns2Module::reduce(StateVector v) {
    if (kind_ == ModuleKind::verma || v.empty()) return v;
    submodule(grade_of(v)).reduce(v);
    return v;
}

const Echelon<Monomial, MonoGreater>& Ns2Module::submodule(const Grade& g) {
    auto it = sub_cache_.find(g);
    if (it != sub_cache_.end()) return it->second;
    Echelon<Monomial, MonoGreater> e;
    if (kind_ == ModuleKind::irreducible) {
        for (auto& v : radical_basis(g.first, g.second)) e.insert(std::move(v));
    } else if (kind_ == ModuleKind::vacuum_quotient && g.first > Half(0)) {
        // U(ns-) applied to G+-[-1/2]1; every slice is reached by one negative mode from a lower slice.
        if (g.first == half_odd(1) && (g.second == 1 || g.second == -1))
            e.insert(unit_vector(Monomial{ModeSymbol::G(g.second, half_odd(-1))}));
        for (const auto& x : negative_modes(g.first)) {
            Grading gx = grading(x);
            Grade lower{g.first - gx.weight, g.second - gx.charge};
            if (lower.first < Half(0) || std::abs(lower.second) > max_charge(lower.first)) continue;
            const auto& sub = submodule(lower);
            std::vector<StateVector> rows;
            for (const auto& [pivot, row] : sub.rows()) rows.push_back(row);
            for (const auto& row : rows) e.insert(apply_verma(x, row));
        }
    }
    return sub_cache_.emplace(g, std::move(e)).first->second;
}

std::vector<Monomial> Ns2Module::basis(Half level, int charge) {
    const auto& vb = verma_basis(level, charge);
    if (kind_ == ModuleKind::verma) return vb;
    const auto& sub = submodule({level, charge});
    std::vector<Monomial> out;
    for (const auto& mono : vb)
        if (!sub.is_pivot(mono)) out.push_back(mono);
    return out;
}

std::size_t Ns2Module::dim(Half level, int charge) { return basis(level, charge).size(); }

const Mat& Ns2Module::gram(Half level, int charge) {
    Grade g{level, charge};
    auto it = gram_cache_.find(g);
    if (it != gram_cache_.end()) return it->second;
    const std::vector<Monomial> b = verma_basis(level, charge);
    Mat m(b.size(), Vec(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].empty()) {
            m[i][i] = Scalar(1);
            continue;
        }
        // <x b', v> = <b', w(x) v>
        const ModeSymbol& x = b[i].front();
        const Monomial rest(b[i].begin() + 1, b[i].end());
        const Grade lower = grade_of(rest);
        const ModeSymbol wx = anti_involution(x);
        const Mat& lg = gram(lower.first, lower.second);
        const std::size_t ri = index_of(lower, rest);
        for (std::size_t j = 0; j < b.size(); ++j) {
            Scalar s;
            for (const auto& [mono, c] : apply_verma(wx, b[j])) {
                const Scalar& e = lg[ri][index_of(lower, mono)];
                if (!e.is_zero()) s += c * e;
            }
            m[i][j] = s;
        }
    }
    return gram_cache_.emplace(g, std::move(m)).first->second;
}

Scalar Ns2Module::form(const StateVector& u, const StateVector& v) {
    if (u.empty() || v.empty()) return Scalar();
    Grade g = grade_of(u);
    if (grade_of(v) != g) return Scalar();
    const Mat& m = gram(g.first, g.second);
    Scalar s;
    for (const auto& [a, ca] : u)
        for (const auto& [b, cb] : v) {
            const Scalar& e = m[index_of(g, a)][index_of(g, b)];
            if (!e.is_zero()) s += ca * cb * e;
        }
    return s;
}

std::vector<StateVector> Ns2Module::radical_basis(Half level, int charge) {
    const auto& b = verma_basis(level, charge);
    std::vector<StateVector> out;
    if (b.empty()) return out;
    for (const auto& k : kernel(gram(level, charge), b.size())) {
        StateVector v;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!k[i].is_zero()) v.emplace(b[i], k[i]);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<StateVector> Ns2Module::singular_vectors(Half level, int charge) {
    const std::vector<Monomial> b = verma_basis(level, charge);
    std::vector<StateVector> out;
    if (b.empty() || level == Half(0)) return out;
    Mat stacked;
    std::vector<ModeSymbol> positive;
    for (const auto& x : negative_modes(level)) positive.push_back(anti_involution(x));
    for (const auto& x : positive) {
        Grading gx = grading(x);
        Grade target{level - (-gx.weight), charge + gx.charge};
        const auto& tb = verma_basis(target.first, target.second);
        if (tb.empty()) continue;
        Mat block(tb.size(), Vec(b.size()));
        for (std::size_t j = 0; j < b.size(); ++j)
            for (const auto& [mono, c] : apply_verma(x, b[j])) block[index_of(target, mono)][j] = c;
        for (auto& row : block) stacked.push_back(std::move(row));
    }
    for (const auto& k : kernel(stacked, b.size())) {
        StateVector v;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!k[i].is_zero()) v.emplace(b[i], k[i]);
        out.push_back(std::move(v));
    }
    return out;
}

CharacterSeries Ns2Module::character(Half cutoff) {
    CharacterSeries s{params_.h, params_.q, cutoff, {}};
    for (int t = 0; t <= cutoff.twice(); ++t) {
        Half level = Half::from_twice(t);
        int mc = max_charge(level);
        for (int e = -mc; e <= mc; ++e) s.set(level, e, static_cast<long long>(dim(level, e)));
    }
    return s;
}

}  // namespace nsvoa
