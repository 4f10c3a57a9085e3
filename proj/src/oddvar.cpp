#include "nsvoa/oddvar.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsvoa {

namespace {

int popcount2(int mask) { return (mask & 1) + ((mask >> 1) & 1); }

StateVector scaled(StateVector v, const Scalar& c) {
    if (c.is_zero()) return {};
    for (auto& [k, x] : v) x *= c;
    return v;
}

void add(StateVector& y, const Scalar& a, const StateVector& x) { axpy(y, a, x); }

Half mono_weight(const Monomial& mono) { return grade_of(mono).first; }

int mono_parity(const Monomial& mono) {
    int p = 0;
    for (const auto& x : mono) p ^= x.parity();
    return p;
}

/// Mode x = g_(m) of a generator field: J(n) = mu_(n), L(n) = omega_(n+1), G(r) = tau_(r+1/2).
int field_index(const ModeSymbol& x) {
    switch (x.kind) {
        case Kind::J: return x.index.as_int();
        case Kind::L: return x.index.as_int() + 1;
        default: return (x.index.twice() + 1) / 2;
    }
}

std::string phi_name(int mask) {
    static const char* names[] = {"", "phi1 ", "phi2 ", "phi1 phi2 "};
    return names[mask];
}

/// G_i(-1/2) acting on a Grassmann polynomial; the odd operator passes phi^I with (-1)^{|I|}.
GrassmannVec odd_apply(VacuumVOA& voa, int i, const GrassmannVec& p) {
    GrassmannVec out;
    for (int mask = 0; mask < 4; ++mask)
        out[mask] = scaled(voa.G(i, half_odd(-1), p[mask]), Scalar(popcount2(mask) % 2 ? -1 : 1));
    return out;
}

GrassmannVec apply_even(VacuumVOA& voa, int n, const GrassmannVec& p) {
    GrassmannVec out;
    for (int mask = 0; mask < 4; ++mask) out[mask] = voa.L(n, p[mask]);
    return out;
}

/// Substitutes (x, phi) -> (-x, -phi) in a coefficient of x^k.
GrassmannVec negate_variables(GrassmannVec p, int k) {
    for (int mask = 0; mask < 4; ++mask)
        if ((popcount2(mask) + k) % 2 != 0) p[mask] = scaled(std::move(p[mask]), Scalar(-1));
    return p;
}

std::string describe(const std::string& what, const StateVector& u, int k, const StateVector& w) {
    return what + " for u = " + (u.empty() ? "0" : monomial_str(u.begin()->first)) + " at x^" + std::to_string(k) +
           " on " + (w.empty() ? "0" : monomial_str(w.begin()->first));
}

StateVector table_bracket(VacuumVOA& voa, const ModeSymbol& x, const ModeSymbol& y, const StateVector& w) {
    StateVector out;
    const LinComb xy = bracket(x, y);
    for (const auto& [z, c] : xy.terms()) add(out, c, voa.apply(z, w));
    return out;
}

}  // namespace

int grassmann_sign(int a, int b) {
    if (a & b) return 0;
    return (a & 2) && (b & 1) ? -1 : 1;  // phi2 phi1 = -phi1 phi2
}

GrassmannNumber phi(int i) {
    if (i != 1 && i != 2) throw std::invalid_argument("phi index must be 1 or 2");
    GrassmannNumber g;
    g[i] = Scalar(1);
    return g;
}

GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b) {
    GrassmannNumber out;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            if (int s = grassmann_sign(x, y)) out[x | y] += Scalar(s) * a[x] * b[y];
    return out;
}

GrassmannNumber operator+(const GrassmannNumber& a, const GrassmannNumber& b) {
    GrassmannNumber out;
    for (int x = 0; x < 4; ++x) out[x] = a[x] + b[x];
    return out;
}

GrassmannNumber operator*(const Scalar& s, const GrassmannNumber& a) {
    GrassmannNumber out;
    for (int x = 0; x < 4; ++x) out[x] = s * a[x];
    return out;
}

GrassmannVec operator*(const GrassmannNumber& a, const GrassmannVec& v) {
    GrassmannVec out;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            if (int s = grassmann_sign(x, y)) add(out[x | y], Scalar(s) * a[x], v[y]);
    return out;
}

void axpy(GrassmannVec& y, const Scalar& a, const GrassmannVec& x) {
    for (int mask = 0; mask < 4; ++mask) add(y[mask], a, x[mask]);
}

GrassmannVec dphi(int i, const GrassmannVec& v) {
    GrassmannVec out;
    for (int mask = 0; mask < 4; ++mask) {
        if (!(mask & i)) continue;
        // phi^mask = sign * phi_i phi^(mask without i)
        const int rest = mask & ~i;
        add(out[rest], Scalar(grassmann_sign(i, rest)), v[mask]);
    }
    return out;
}

bool is_zero(const GrassmannVec& v) {
    return std::all_of(v.slot.begin(), v.slot.end(), [](const StateVector& s) { return s.empty(); });
}

std::string grassmann_str(const GrassmannVec& v) {
    std::string out;
    for (int mask = 0; mask < 4; ++mask)
        for (const auto& [mono, c] : v[mask]) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ") " + phi_name(mask) + monomial_str(mono);
        }
    return out.empty() ? "0" : out;
}

Half weight_of(const StateVector& v) {
    if (v.empty()) throw std::invalid_argument("weight_of: zero vector");
    const Half w = mono_weight(v.begin()->first);
    for (const auto& [mono, c] : v)
        if (mono_weight(mono) != w) throw std::invalid_argument("weight_of: inhomogeneous vector");
    return w;
}

int parity_of(const StateVector& v) {
    if (v.empty()) throw std::invalid_argument("parity_of: zero vector");
    return mono_parity(v.begin()->first);
}

VacuumVOA::VacuumVOA(Scalar c, Half cutoff)
    : module_(VermaParams{std::move(c), Scalar(), Scalar()}, ModuleKind::irreducible), cutoff_(cutoff) {}

StateVector VacuumVOA::vacuum() { return unit_vector({}); }
StateVector VacuumVOA::tau(int sign) { return unit_vector({ModeSymbol::G(sign, half_odd(-3))}); }
StateVector VacuumVOA::mu() { return unit_vector({ModeSymbol::J(Half(-1))}); }
StateVector VacuumVOA::omega() { return unit_vector({ModeSymbol::L(Half(-2))}); }

StateVector VacuumVOA::apply(const ModeSymbol& x, const StateVector& v) {
    // the module reduces one grade at a time; G1, G2 mix charges
    std::map<int, StateVector> parts;
    for (const auto& [mono, c] : v) parts[grade_of(mono).second].emplace(mono, c);
    StateVector out;
    for (const auto& [q, part] : parts) add(out, Scalar(1), module_.apply(x, part));
    return out;
}

StateVector VacuumVOA::G(int i, Half r, const StateVector& v) {
    const Scalar inv_sqrt2 = Scalar::sqrt2().inverse();
    const StateVector plus = apply(ModeSymbol::Gp(r), v);
    const StateVector minus = apply(ModeSymbol::Gm(r), v);
    const Scalar a = i == 1 ? inv_sqrt2 : -Scalar::i() * inv_sqrt2;  // 1/sqrt2 or 1/(i sqrt2)
    const Scalar b = i == 1 ? a : -a;
    StateVector out;
    add(out, a, plus);
    add(out, b, minus);
    return out;
}

StateVector VacuumVOA::L(int n, const StateVector& v) { return apply(ModeSymbol::L(Half(n)), v); }

std::vector<StateVector> VacuumVOA::basis(Half max_weight) {
    std::vector<StateVector> out;
    for (Half level; level <= max_weight; level += half_odd(1))
        for (int q = -max_charge(level); q <= max_charge(level); ++q)
            for (const auto& mono : module_.basis(level, q)) out.push_back(unit_vector(mono));
    return out;
}

StateVector VacuumVOA::generator_mode(Kind g, int k, const StateVector& v) {
    switch (g) {
        case Kind::J: return apply(ModeSymbol::J(Half(k)), v);
        case Kind::L: return apply(ModeSymbol::L(Half(k - 1)), v);
        case Kind::Gp: return apply(ModeSymbol::Gp(half_odd(2 * k - 1)), v);
        case Kind::Gm: return apply(ModeSymbol::Gm(half_odd(2 * k - 1)), v);
        default: throw std::logic_error("not a generator field");
    }
}

StateVector VacuumVOA::mode(const StateVector& u, int n, const StateVector& w) {
    for (const auto& [um, uc] : u)
        if (mono_weight(um) > cutoff_)
            throw std::invalid_argument("state " + monomial_str(um) + " has weight beyond the cutoff " +
                                        cutoff_.str());
    return mode_unchecked(u, n, w);
}

StateVector VacuumVOA::mode_unchecked(const StateVector& u, int n, const StateVector& w) {
    StateVector out;
    for (const auto& [um, uc] : u)
        for (const auto& [wm, wc] : w) add(out, uc * wc, mode_on(um, n, wm));
    return out;
}

StateVector VacuumVOA::mode_on(const Monomial& u, int n, const Monomial& w) {
    const Half wt_w = mono_weight(w);
    if (mono_weight(u) + wt_w - Half(n + 1) < Half(0)) return {};
    if (u.empty()) return n == -1 ? unit_vector(w) : StateVector{};
    const auto key = std::make_tuple(u, n, w);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    const ModeSymbol& x = u.front();
    const Monomial rest(u.begin() + 1, u.end());
    const int m = field_index(x);
    StateVector out;
    if (rest.empty() && m == -1) {
        out = generator_mode(x.kind, n, unit_vector(w));
    } else {
        const Half wt_rest = mono_weight(rest);
        const Half wt_g = x.kind == Kind::J ? Half(1) : x.kind == Kind::L ? Half(2) : half_odd(3);
        const int sign = ((m % 2 != 0) ^ (x.is_odd() && mono_parity(rest))) ? -1 : 1;
        // a_(m-j) b_(n+j): b_(n+j) w vanishes once its weight is negative
        int top = (wt_rest + wt_w - Half(n + 1)).floor();
        if (m >= 0) top = std::min(top, m);
        for (int j = 0; j <= top; ++j) {
            const StateVector inner = mode_on(rest, n + j, w);
            if (inner.empty()) continue;
            const Scalar c(binomial(m, j) * Rational(j % 2 ? -1 : 1));
            add(out, c, generator_mode(x.kind, m - j, inner));
        }
        // b_(m+n-j) a_(j): a_(j) w vanishes once its weight is negative
        top = (wt_g + wt_w - Half(1)).floor();
        if (m >= 0) top = std::min(top, m);
        for (int j = 0; j <= top; ++j) {
            const StateVector inner = generator_mode(x.kind, j, unit_vector(w));
            if (inner.empty()) continue;
            const Scalar c(binomial(m, j) * Rational(j % 2 ? sign : -sign));
            for (const auto& [im, ic] : inner) add(out, c * ic, mode_on(rest, m + n - j, im));
        }
    }
    return cache_.emplace(key, std::move(out)).first->second;
}

OddVertexOperator assemble_odd(VacuumVOA& voa, const StateVector& u) {
    if (!u.empty() && weight_of(u) + half_odd(1) > voa.cutoff())
        throw std::invalid_argument("assemble_odd: weight of u exceeds cutoff - 1/2");
    OddVertexOperator y;
    y.states[0] = u;
    y.states[1] = voa.G(1, half_odd(-1), u);
    y.states[2] = voa.G(2, half_odd(-1), u);
    y.states[3] = voa.G(2, half_odd(-1), y.states[1]);
    for (int mask = 0; mask < 4; ++mask) y.parity[static_cast<std::size_t>(mask)] = y.states[mask].empty() ? -1 : parity_of(y.states[mask]);
    return y;
}

GrassmannVec odd_coefficient(VacuumVOA& voa, const OddVertexOperator& y, int k, const StateVector& w, Half limit) {
    GrassmannVec out;
    if (w.empty()) return out;
    for (int mask = 0; mask < 4; ++mask) {
        const StateVector& s = y.states[mask];
        if (s.empty() || weight_of(s) + weight_of(w) + Half(k) > limit) continue;
        out[mask] = voa.mode_unchecked(s, -k - 1, w);
    }
    return out;
}

bool OddReport::ok() const {
    return std::all_of(relations.begin(), relations.end(), [](const IdentityReport& r) { return r.ok(); });
}

OddReport check_vacuum_and_creation(VacuumVOA& voa, Half max_weight) {
    OddReport rep;
    IdentityReport vac{"vacuum property", 0, {}, 0};
    const OddVertexOperator one = assemble_odd(voa, VacuumVOA::vacuum());
    for (const auto& w : voa.basis(voa.cutoff()))
        for (int k = -3; k <= 3; ++k) {
            GrassmannVec expect;
            if (k == 0) expect[0] = w;
            vac.expect(odd_coefficient(voa, one, k, w) == expect, describe("Y(1,(x,phi)) != 1", w, k, w));
        }
    rep.relations.push_back(vac);

    IdentityReport cre{"creation property", 0, {}, 0};
    const Half top = std::min(max_weight, voa.cutoff() - half_odd(1));
    for (const auto& u : voa.basis(top)) {
        const OddVertexOperator y = assemble_odd(voa, u);
        const int lowest = -(weight_of(u) + Half(2)).floor();
        for (int k = lowest; k < 0; ++k)
            cre.expect(is_zero(odd_coefficient(voa, y, k, VacuumVOA::vacuum())),
                       describe("singular term", u, k, VacuumVOA::vacuum()));
        cre.expect(odd_coefficient(voa, y, 0, VacuumVOA::vacuum())[0] == u,
                   describe("limit differs", u, 0, VacuumVOA::vacuum()));
    }
    rep.relations.push_back(cre);

    IdentityReport at_zero{"specialization phi = 0", 0, {}, 0};
    IdentityReport par{"slot parities", 0, {}, 0};
    for (const auto& u : voa.basis(top)) {
        const OddVertexOperator y = assemble_odd(voa, u);
        const int p = parity_of(u);
        for (int mask = 1; mask < 4; ++mask) {
            const int want = popcount2(mask) == 1 ? 1 - p : p;
            par.expect(y.parity[static_cast<std::size_t>(mask)] < 0 || y.parity[static_cast<std::size_t>(mask)] == want,
                       "slot " + phi_name(mask) + "of " + monomial_str(u.begin()->first));
        }
        for (const auto& w : voa.basis(voa.cutoff() - weight_of(u)))
            for (int k = -(weight_of(u) + weight_of(w)).floor() - 1; k <= (voa.cutoff() - weight_of(u) - weight_of(w)).floor(); ++k)
                at_zero.expect(odd_coefficient(voa, y, k, w, voa.cutoff())[0] == voa.mode(u, -k - 1, w), describe("slot 1 differs", u, k, w));
    }
    rep.relations.push_back(at_zero);
    rep.relations.push_back(par);
    return rep;
}

OddReport check_derivative_properties(VacuumVOA& voa, const StateVector& u) {
    OddReport rep;
    IdentityReport gder[2] = {{"G1(-1/2)-derivative", 0, {}, 0}, {"G2(-1/2)-derivative", 0, {}, 0}};
    IdentityReport lder{"L(-1)-derivative", 0, {}, 0};
    const Half cut = voa.cutoff();
    const Half wt_u = weight_of(u);
    const OddVertexOperator y = assemble_odd(voa, u);
    // Slot I of every coefficient at x^k has weight base + |I|/2 + k on both sides, so
    // comparing all slots of weight <= cutoff is a consistent truncation.
    for (const auto& w : voa.basis(cut)) {
        const Half wt_w = weight_of(w);
        const int lowest = -(wt_u + wt_w).floor() - 3;
        const int highest = (cut - wt_u - wt_w - half_odd(1)).floor();
        for (int k = lowest; k <= highest; ++k) {
            const GrassmannVec here = odd_coefficient(voa, y, k, w, cut);
            const GrassmannVec next = odd_coefficient(voa, y, k + 1, w, cut);
            for (int i = 1; i <= 2 && wt_u + Half(1) <= cut; ++i) {
                const OddVertexOperator yg = assemble_odd(voa, voa.G(i, half_odd(-1), u));
                GrassmannVec rhs = dphi(i, here);
                axpy(rhs, Scalar(k + 1), phi(i) * next);
                gder[i - 1].expect(odd_coefficient(voa, yg, k, w, cut) == rhs, describe("mismatch", u, k, w));
            }
            if (wt_u + half_odd(3) <= cut) {
                const OddVertexOperator yl = assemble_odd(voa, voa.L(-1, u));
                GrassmannVec rhs;
                axpy(rhs, Scalar(k + 1), next);
                lder.expect(odd_coefficient(voa, yl, k, w, cut) == rhs, describe("mismatch", u, k, w));
            }
        }
    }
    rep.relations.push_back(gder[0]);
    rep.relations.push_back(gder[1]);
    rep.relations.push_back(lder);
    return rep;
}

IdentityReport check_skew_symmetry(VacuumVOA& voa, const StateVector& u, const StateVector& v) {
    IdentityReport rep{"skew-symmetry", 0, {}, 0};
    const OddVertexOperator yu = assemble_odd(voa, u);
    const OddVertexOperator yv = assemble_odd(voa, v);
    const Half wt = weight_of(u) + weight_of(v);
    const Scalar sign(parity_of(u) && parity_of(v) ? -1 : 1);
    const int lowest = -wt.floor() - 2;
    const Half cut = voa.cutoff();
    const int highest = (cut - wt).floor();
    for (int k = lowest; k <= highest; ++k) {
        const GrassmannVec lhs = odd_coefficient(voa, yu, k, v, cut);
        // e^{x L(-1)} Y(v, (-x, -phi)) u at x^k
        GrassmannVec shifted;
        for (int j = 0; k - j >= lowest; ++j) {
            GrassmannVec term = negate_variables(odd_coefficient(voa, yv, k - j, u, cut - Half(j)), k - j);
            Rational fact(1);
            for (int t = 0; t < j; ++t) {
                term = apply_even(voa, -1, term);
                fact = fact * Rational(t + 1);
            }
            axpy(shifted, Scalar(Rational(1) / fact), term);
        }
        // e^{phi1 G1(-1/2) + phi2 G2(-1/2)}: the exponent squared is nilpotent of order 3
        auto B = [&](const GrassmannVec& p) {
            GrassmannVec out = phi(1) * odd_apply(voa, 1, p);
            axpy(out, Scalar(1), phi(2) * odd_apply(voa, 2, p));
            return out;
        };
        const GrassmannVec once = B(shifted);
        GrassmannVec rhs = shifted;
        axpy(rhs, Scalar(1), once);
        axpy(rhs, Scalar(Rational(1, 2)), B(once));
        for (int mask = 0; mask < 4; ++mask)
            if (wt + half_odd(popcount2(mask)) + Half(k) > cut) rhs[mask].clear();
        GrassmannVec diff = lhs;
        axpy(diff, -sign, rhs);
        rep.expect(is_zero(diff), describe("mismatch", u, k, v) + ": " + grassmann_str(diff));
    }
    return rep;
}

OddReport check_generator_commutators(VacuumVOA& voa, int max_index) {
    struct Gen {
        StateVector state;
        Kind kind;
    };
    const std::vector<Gen> gens = {{VacuumVOA::tau(1), Kind::Gp},
                                   {VacuumVOA::tau(-1), Kind::Gm},
                                   {VacuumVOA::mu(), Kind::J},
                                   {VacuumVOA::omega(), Kind::L}};
    auto modes = [&](Kind k) {
        std::vector<std::pair<ModeSymbol, int>> out;  // symbol and field index
        for (int t = -2 * max_index; t <= 2 * max_index; ++t) {
            const bool odd = k == Kind::Gp || k == Kind::Gm;
            if ((t % 2 != 0) != odd) continue;
            const ModeSymbol x{Algebra::ns2, k, Half::from_twice(t)};
            out.emplace_back(x, field_index(x));
        }
        return out;
    };
    OddReport rep;
    IdentityReport table{"commutators match the bracket table", 0, {}, 0};
    IdentityReport iter{"commutator formula with reconstructed iterates", 0, {}, 0};
    for (const auto& a : gens)
        for (const auto& b : gens) {
            const Scalar sign(a.kind != Kind::J && a.kind != Kind::L && b.kind != Kind::J && b.kind != Kind::L ? -1 : 1);
            const Half wt_ab = weight_of(a.state) + weight_of(b.state);
            for (const auto& [x, p] : modes(a.kind))
                for (const auto& [y, q] : modes(b.kind)) {
                    const Half raise = std::max(Half(0), -x.index) + std::max(Half(0), -y.index);
                    for (const auto& w : voa.basis(voa.cutoff() - raise)) {
                        StateVector lhs = voa.mode_unchecked(a.state, p, voa.mode_unchecked(b.state, q, w));
                        add(lhs, -sign, voa.mode_unchecked(b.state, q, voa.mode_unchecked(a.state, p, w)));
                        const std::string what = "[" + x.str() + ", " + y.str() + "] on " + monomial_str(w.begin()->first);
                        table.expect(lhs == table_bracket(voa, x, y, w), what);
                        StateVector rhs;
                        for (int j = 0; Half(j) <= wt_ab - Half(1) && (p < 0 || j <= p); ++j) {
                            const StateVector ab = voa.mode_unchecked(a.state, j, b.state);
                            if (!ab.empty()) add(rhs, Scalar(binomial(p, j)), voa.mode_unchecked(ab, p + q - j, w));
                        }
                        iter.expect(lhs == rhs, what);
                    }
                }
        }
    rep.relations.push_back(table);
    rep.relations.push_back(iter);
    return rep;
}

OddReport check_odd_vertex_operators(VacuumVOA& voa, Half max_weight) {
    OddReport rep = check_vacuum_and_creation(voa, max_weight);
    auto merge_into = [&](const IdentityReport& r) {
        for (auto& have : rep.relations)
            if (have.name == r.name) {
                have.merge(r);
                return;
            }
        rep.relations.push_back(r);
    };
    const auto states = voa.basis(std::min(max_weight, voa.cutoff() - Half(1)));
    for (const auto& u : states)
        for (const auto& r : check_derivative_properties(voa, u).relations) merge_into(r);
    const auto pair_states = voa.basis(std::min(max_weight, voa.cutoff() - half_odd(1)));
    for (const auto& u : pair_states)
        for (const auto& v : pair_states)
            if (weight_of(u) + weight_of(v) <= voa.cutoff()) merge_into(check_skew_symmetry(voa, u, v));
    for (const auto& r : check_generator_commutators(voa).relations) merge_into(r);
    return rep;
}

}  // namespace nsvoa
