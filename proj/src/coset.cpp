#include "nsvoa/coset.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>

namespace nsvoa {

namespace {

void add_term(TensorVec& v, const TensorKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = v.find(k);
    if (it == v.end()) {
        v.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

void add_outer(TensorVec& out, const StateVector& l, const FockVector& r, const Scalar& coef) {
    for (const auto& [m1, c1] : l)
        for (const auto& [s2, c2] : r) add_term(out, TensorKey{m1, s2}, coef * c1 * c2);
}

TensorVec unit(const TensorKey& k) {
    TensorVec v;
    v.emplace(k, Scalar(1));
    return v;
}

int floor_half(Half h) {
    int t = h.twice();
    return t >= 0 ? t / 2 : -((-t + 1) / 2);
}

long long floor_div(long long a, long long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

Scalar q(long long n, long long d = 1) { return Scalar(Rational(n, d)); }

Kind kind_of(Current c) {
    switch (c) {
        case Current::E: return Kind::E;
        case Current::F: return Kind::F;
        case Current::H: return Kind::H;
        case Current::R: break;
    }
    throw std::invalid_argument("rho has no affine kind");
}

Current current_of(Kind k) {
    switch (k) {
        case Kind::E: return Current::E;
        case Kind::F: return Current::F;
        case Kind::H: return Current::H;
        default: throw std::invalid_argument("not an affine current");
    }
}

// Coefficient c with w = c v, if w is proportional to the nonzero v.
bool proportional(const TensorVec& w, const TensorVec& v, Scalar& c) {
    if (w.empty()) {
        c = Scalar();
        return true;
    }
    auto it = w.find(v.begin()->first);
    if (it == w.end()) return false;
    c = it->second / v.begin()->second;
    TensorVec d = w;
    axpy(d, -c, v);
    return d.empty();
}

std::string key_str(const TensorKey& k) { return monomial_str(k.first) + " x " + k.second.str("a"); }

TensorKey ground() { return TensorKey{Monomial{}, FockState{}}; }

}  // namespace

TensorGrade tensor_grade(const TensorKey& key) {
    Grade g = grade_of(key.first);
    return TensorGrade{key.second.sector, g.second, g.first + Half(key.second.level())};
}

int tensor_parity(const TensorKey& key) {
    int p = grade_of(key.first).second + key.second.sector;
    return ((p % 2) + 2) % 2;
}

std::string tensor_str(const TensorVec& v) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : v) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*" + key_str(k);
    }
    return s;
}

std::string current_name(Current c) {
    switch (c) {
        case Current::E: return "E";
        case Current::F: return "F";
        case Current::H: return "H";
        case Current::R: return "R";
    }
    return "?";
}

CosetAKS::CosetAKS(MinimalLabel label, Cocycle cocycle)
    : label_(label),
      left_(label.params(), ModuleKind::irreducible),
      lattice_(cocycle),
      kappa_(Scalar::sqrt_half_m_plus_2(label.m)) {}

TensorVec CosetAKS::mode_on_key(LeftField u, RightField v, long long t, const TensorKey& key) {
    const Grade lg = grade_of(key.first);
    const Half level = lg.first;
    const int odd_left = ((lg.second % 2) + 2) % 2;
    const int osc = key.second.level();
    const long long kInf = LLONG_MAX / 4;

    long long left_lo = -kInf, left_hi = kInf;
    switch (u) {
        case LeftField::identity: left_lo = left_hi = -1; break;
        case LeftField::J: left_hi = floor_half(level); break;
        case LeftField::Gp:
        case LeftField::Gm: left_hi = floor_half(level + half_odd(1)); break;
        case LeftField::L: left_hi = floor_half(level) + 1; break;
    }
    long long right_lo = -kInf, right_hi = kInf;
    int exp_p = 0;
    switch (v) {
        case RightField::identity: right_lo = right_hi = -1; break;
        case RightField::alpha: right_hi = osc; break;
        case RightField::exp_plus:
        case RightField::exp_minus: {
            exp_p = v == RightField::exp_plus ? 1 : -1;
            const long long pairing = -static_cast<long long>(exp_p) * key.second.sector;
            right_hi = osc - 1 - pairing;
            break;
        }
    }
    const bool odd_right = exp_p != 0;
    const Scalar sign((odd_right && odd_left) ? -1 : 1);
    const long long lo = std::max(left_lo, t - 1 - right_hi);
    const long long hi = std::min(left_hi, t - 1 - right_lo);

    TensorVec out;
    const StateVector w1 = unit_vector(key.first);
    const FockVector w2 = fock_unit(key.second);
    for (long long i = lo; i <= hi; ++i) {
        const long long j = t - 1 - i;
        FockVector r;
        switch (v) {
            case RightField::identity: r = w2; break;
            case RightField::alpha: r = lattice_.alpha(static_cast<int>(j), w2); break;
            case RightField::exp_plus:
            case RightField::exp_minus: r = lattice_.exp_mode(exp_p, j, w2); break;
        }
        if (r.empty()) continue;
        StateVector l;
        switch (u) {
            case LeftField::identity: l = w1; break;
            case LeftField::J: l = left_.apply_verma(ModeSymbol::J(Half(static_cast<int>(i))), w1); break;
            case LeftField::Gp: l = left_.apply_verma(ModeSymbol::Gp(Half::from_twice(static_cast<int>(2 * i - 1))), w1); break;
            case LeftField::Gm: l = left_.apply_verma(ModeSymbol::Gm(Half::from_twice(static_cast<int>(2 * i - 1))), w1); break;
            case LeftField::L: l = left_.apply_verma(ModeSymbol::L(Half(static_cast<int>(i - 1))), w1); break;
        }
        if (l.empty()) continue;
        add_outer(out, l, r, sign);
    }
    return out;
}

TensorVec CosetAKS::tensor_mode(LeftField u, RightField v, const Rational& t, const TensorVec& w) {
    if (!t.is_integer())
        throw std::invalid_argument("exponent " + t.str() + " is not allowed on this module; allowed: integers");
    return tensor_mode(u, v, static_cast<long long>(t.numerator().get_si()), w);
}

TensorVec CosetAKS::tensor_mode(LeftField u, RightField v, long long t, const TensorVec& w) {
    TensorVec out;
    for (const auto& [k, c] : w) axpy(out, c, mode_on_key(u, v, t, k));
    return out;
}

TensorVec CosetAKS::left_square(int n, const TensorKey& key) {
    // sum_{i<0} J(i) J(n-i) + sum_{i>=0} J(n-i) J(i)
    const int top = floor_half(grade_of(key.first).first);
    const StateVector w1 = unit_vector(key.first);
    StateVector acc;
    auto J = [](int k) { return ModeSymbol::J(Half(k)); };
    for (int i = n - top; i <= -1; ++i) axpy(acc, Scalar(1), left_.apply_verma(J(i), left_.apply_verma(J(n - i), w1)));
    for (int i = 0; i <= top; ++i) axpy(acc, Scalar(1), left_.apply_verma(J(n - i), left_.apply_verma(J(i), w1)));
    TensorVec out;
    add_outer(out, acc, fock_unit(key.second), Scalar(1));
    return out;
}

TensorVec CosetAKS::right_square(int n, const TensorKey& key) {
    TensorVec out;
    add_outer(out, unit_vector(key.first), lattice_.normal_square(n, fock_unit(key.second)), Scalar(1));
    return out;
}

TensorVec CosetAKS::current_on_key(Current x, int n, const TensorKey& key) {
    const int m = label_.m;
    const TensorVec w = unit(key);
    TensorVec out;
    switch (x) {
        case Current::E: return tensor_mode(LeftField::Gp, RightField::exp_minus, n, w);
        case Current::F: axpy(out, q(m + 2, 2), tensor_mode(LeftField::Gm, RightField::exp_plus, n, w)); return out;
        case Current::H:
            axpy(out, q(-m), tensor_mode(LeftField::identity, RightField::alpha, n, w));
            axpy(out, q(m + 2), tensor_mode(LeftField::J, RightField::identity, n, w));
            return out;
        case Current::R:
            axpy(out, kappa_, tensor_mode(LeftField::J, RightField::identity, n, w));
            axpy(out, -kappa_, tensor_mode(LeftField::identity, RightField::alpha, n, w));
            return out;
    }
    return out;
}

TensorVec CosetAKS::sugawara_on_key(int n, const TensorKey& key) {
    const int m = label_.m;
    const TensorVec w = unit(key);
    TensorVec out = tensor_mode(LeftField::L, RightField::identity, n + 1, w);
    axpy(out, q(m + 2, 4), left_square(n, key));
    axpy(out, q(-(m + 2), 2), tensor_mode(LeftField::J, RightField::alpha, n + 1, w));
    axpy(out, q(m, 4), right_square(n, key));
    return out;
}

TensorVec CosetAKS::current(Current x, int n, const TensorVec& w) {
    TensorVec out;
    for (const auto& [k, c] : w) {
        auto key = std::make_tuple(static_cast<int>(x), n, k);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, current_on_key(x, n, k)).first;
        axpy(out, c, it->second);
    }
    return out;
}

TensorVec CosetAKS::sugawara(int n, const TensorVec& w) {
    TensorVec out;
    for (const auto& [k, c] : w) {
        auto key = std::make_tuple(4, n, k);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, sugawara_on_key(n, k)).first;
        axpy(out, c, it->second);
    }
    return out;
}

TensorVec CosetAKS::total_virasoro(int n, const TensorVec& w) {
    TensorVec out = tensor_mode(LeftField::L, RightField::identity, n + 1, w);
    for (const auto& [k, c] : w) add_outer(out, unit_vector(k.first), lattice_.virasoro(n, fock_unit(k.second)), c);
    return out;
}

TensorVec CosetAKS::reduce(const TensorVec& v) {
    // components sharing a Fock state share one N=2 grade when v is homogeneous
    std::map<FockState, StateVector> parts;
    for (const auto& [k, c] : v) parts[k.second].emplace(k.first, c);
    TensorVec out;
    for (auto& [s, l] : parts) add_outer(out, left_.reduce(std::move(l)), fock_unit(s), Scalar(1));
    return out;
}

std::vector<TensorKey> CosetAKS::basis(const TensorGrade& g) {
    std::vector<TensorKey> out;
    for (int lt = 0; lt <= g.level.twice(); ++lt) {
        const int rest = g.level.twice() - lt;
        if (rest % 2 != 0) continue;
        const Half l = Half::from_twice(lt);
        if (std::abs(g.charge) > max_charge(l) || ((g.charge - lt) % 2) != 0) continue;
        const std::vector<Monomial> lb = left_.basis(l, g.charge);
        if (lb.empty()) continue;
        for (const auto& parts : partitions(rest / 2))
            for (const auto& mono : lb) out.push_back(TensorKey{mono, FockState{parts, g.sector}});
    }
    return out;
}

std::vector<TensorGrade> CosetAKS::window(Half cutoff, int window) {
    std::vector<TensorGrade> out;
    for (int p = -window; p <= window; ++p)
        for (int t = 0; t <= cutoff.twice(); ++t) {
            const Half d = Half::from_twice(t);
            const int mc = max_charge(d);
            for (int c = -mc; c <= mc; ++c) {
                TensorGrade g{p, c, d};
                if (!basis(g).empty()) out.push_back(g);
            }
        }
    return out;
}

TensorGrade CosetAKS::shifted(const TensorGrade& g, Current x, int n) const {
    const int dp = x == Current::E ? -1 : x == Current::F ? 1 : 0;
    // currents carry weight one for the untwisted total grading level - sector^2/2
    const int twice = g.level.twice() - 2 * n + dp * (2 * g.sector + dp);
    return TensorGrade{g.sector + dp, g.charge - dp, Half::from_twice(twice)};
}

Rational CosetAKS::standard_weight(const TensorGrade& g) const {
    return Rational(g.level.twice(), 2) - Rational(static_cast<long long>(g.sector) * g.sector, 2);
}

Mat CosetAKS::matrix(Current x, int n, const TensorGrade& g, Half cutoff, int window) {
    if (std::abs(g.sector) > window || g.level > cutoff || g.level < Half(0))
        throw std::out_of_range("grade outside the truncation window; increase --cutoff or --window");
    const std::vector<TensorKey> src = basis(g);
    const std::vector<TensorKey> dst = basis(shifted(g, x, n));
    std::map<TensorKey, std::size_t> idx;
    for (std::size_t i = 0; i < dst.size(); ++i) idx.emplace(dst[i], i);
    Mat a(dst.size(), Vec(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [k, c] : reduce(current(x, n, unit(src[j])))) {
            auto it = idx.find(k);
            if (it == idx.end()) throw std::logic_error("current mode left its target grade");
            a[it->second][j] = c;
        }
    return a;
}

bool CosetReport::ok() const {
    if (!level_found) return false;
    for (const auto& r : relations)
        if (!r.ok()) return false;
    return true;
}

namespace {

std::vector<TensorKey> window_keys(CosetAKS& coset, Half cutoff, int window) {
    std::vector<TensorKey> keys;
    for (const auto& g : coset.window(cutoff, window))
        for (auto& k : coset.basis(g)) keys.push_back(std::move(k));
    return keys;
}

std::string mode_str(const std::string& name, int n) { return name + "(" + std::to_string(n) + ")"; }

}  // namespace

CosetReport verify_affine_relations(CosetAKS& coset, Half cutoff, int window, int max_index) {
    CosetReport rep;
    const std::vector<TensorKey> keys = window_keys(coset, cutoff, window);
    const Current sl2[] = {Current::E, Current::F, Current::H};

    {
        const TensorVec v = unit(ground());
        TensorVec w = coset.current(Current::E, 1, coset.current(Current::F, -1, v));
        axpy(w, Scalar(-1), coset.current(Current::F, -1, coset.current(Current::E, 1, v)));
        axpy(w, Scalar(-1), coset.current(Current::H, 0, v));
        rep.level_found = proportional(coset.reduce(w), v, rep.level);
    }

    IdentityReport homogeneity{"homogeneity", 0, {}, 0};
    for (const auto& k : keys) {
        const TensorGrade g = tensor_grade(k);
        for (Current x : {Current::E, Current::F, Current::H, Current::R})
            for (int n = -max_index; n <= max_index; ++n) {
                const TensorGrade target = coset.shifted(g, x, n);
                bool ok = true;
                for (const auto& [k2, c] : coset.current(x, n, unit(k)))
                    if (!(tensor_grade(k2) == target) || tensor_parity(k2) != tensor_parity(k)) ok = false;
                homogeneity.expect(ok, mode_str(current_name(x), n) + " on " + key_str(k));
            }
    }

    IdentityReport invariance{"level invariance", 0, {}, 0};
    for (const auto& k : keys) {
        const TensorVec v = unit(k);
        for (int p : {1, 2}) {
            TensorVec w = coset.current(Current::E, p, coset.current(Current::F, -p, v));
            axpy(w, Scalar(-1), coset.current(Current::F, -p, coset.current(Current::E, p, v)));
            axpy(w, Scalar(-1), coset.current(Current::H, 0, v));
            axpy(w, -(rep.level * Scalar(p)), v);
            invariance.expect(rep.level_found && coset.reduce(w).empty(), "[E(" + std::to_string(p) + "),F(" + std::to_string(-p) +
                                                                ")] on " + key_str(k));
        }
    }

    for (std::size_t xi = 0; xi < 3; ++xi)
        for (std::size_t yi = xi; yi < 3; ++yi) {
            const Current x = sl2[xi], y = sl2[yi];
            IdentityReport r{"[" + current_name(x) + "," + current_name(y) + "]", 0, {}, 0};
            for (const auto& k : keys) {
                const TensorVec v = unit(k);
                for (int a = -max_index; a <= max_index; ++a)
                    for (int b = -max_index; b <= max_index; ++b) {
                        TensorVec lhs = coset.current(x, a, coset.current(y, b, v));
                        axpy(lhs, Scalar(-1), coset.current(y, b, coset.current(x, a, v)));
                        const LinComb table = bracket(ModeSymbol{Algebra::affine_sl2, kind_of(x), Half(a)},
                                                      ModeSymbol{Algebra::affine_sl2, kind_of(y), Half(b)});
                        for (const auto& [z, cz] : table.terms()) {
                            if (z.kind == Kind::K) axpy(lhs, -(cz * rep.level), v);
                            else axpy(lhs, -cz, coset.current(current_of(z.kind), floor_half(z.index), v));
                        }
                        r.expect(coset.reduce(lhs).empty(), "[" + mode_str(current_name(x), a) + "," + mode_str(current_name(y), b) +
                                                  "] on " + key_str(k));
                    }
            }
            rep.relations.push_back(std::move(r));
        }
    rep.relations.push_back(std::move(invariance));
    rep.relations.push_back(std::move(homogeneity));
    IdentityReport level_value{"level equals m", 0, {}, 0};
    level_value.expect(rep.level_found && rep.level == Scalar(coset.m()),
                       "measured level " + (rep.level_found ? rep.level.str() : std::string("undefined")));
    rep.relations.push_back(std::move(level_value));
    return rep;
}

TensorVec omega_identity_residual(int m, Cocycle cocycle) {
    CosetAKS vac(make_label(m, half_odd(1), half_odd(1)), cocycle);
    const TensorVec v = unit(ground());
    TensorVec r = vac.sugawara(-2, v);
    // Liouville element a(-1)^2/2 + i a(-2)/2 with a(n) = i R(n)
    axpy(r, q(-1, 2), vac.current(Current::R, -1, vac.current(Current::R, -1, v)));
    axpy(r, q(-1, 2), vac.current(Current::R, -2, v));
    axpy(r, Scalar(-1), vac.total_virasoro(-2, v));
    return vac.reduce(r);
}

TensorVec omega_quadratic_residual(int m, Cocycle cocycle) {
    CosetAKS vac(make_label(m, half_odd(1), half_odd(1)), cocycle);
    const TensorVec v = unit(ground());
    TensorVec r = vac.sugawara(-2, v);
    axpy(r, q(-1, 2), vac.current(Current::R, -1, vac.current(Current::R, -1, v)));
    axpy(r, Scalar(-1), vac.tensor_mode(LeftField::L, RightField::identity, -1, v));
    TensorVec aa = vac.tensor_mode(LeftField::identity, RightField::alpha, -1,
                                   vac.tensor_mode(LeftField::identity, RightField::alpha, -1, v));
    axpy(r, q(1, 2), aa);
    return vac.reduce(r);
}

CosetReport verify_rho_and_virasoro(CosetAKS& coset, Half cutoff, int window, int max_index) {
    CosetReport rep;
    rep.level_found = true;
    const std::vector<TensorKey> keys = window_keys(coset, cutoff, window);
    const int m = coset.m();
    const Scalar c = q(3 * m, m + 2);

    for (Current x : {Current::E, Current::F, Current::H, Current::R}) {
        IdentityReport r{"[R," + current_name(x) + "]", 0, {}, 0};
        for (const auto& k : keys) {
            const TensorVec v = unit(k);
            for (int a = -max_index; a <= max_index; ++a)
                for (int b = -max_index; b <= max_index; ++b) {
                    TensorVec lhs = coset.current(Current::R, a, coset.current(x, b, v));
                    axpy(lhs, Scalar(-1), coset.current(x, b, coset.current(Current::R, a, v)));
                    if (x == Current::R && a + b == 0) axpy(lhs, Scalar(a), v);  // [R(a), R(-a)] = -a
                    r.expect(coset.reduce(lhs).empty(), "[" + mode_str("R", a) + "," + mode_str(current_name(x), b) + "] on " +
                                              key_str(k));
                }
        }
        rep.relations.push_back(std::move(r));
    }

    IdentityReport vir{"omega_sl2 virasoro", 0, {}, 0};
    IdentityReport primary{"currents of weight one", 0, {}, 0};
    for (const auto& k : keys) {
        const TensorVec v = unit(k);
        for (int a = -max_index; a <= max_index; ++a)
            for (int b = -max_index; b <= max_index; ++b) {
                TensorVec lhs = coset.sugawara(a, coset.sugawara(b, v));
                axpy(lhs, Scalar(-1), coset.sugawara(b, coset.sugawara(a, v)));
                axpy(lhs, Scalar(-(a - b)), coset.sugawara(a + b, v));
                if (a + b == 0) axpy(lhs, -(c * q(static_cast<long long>(a) * a * a - a, 12)), v);
                vir.expect(coset.reduce(lhs).empty(), "[" + mode_str("L", a) + "," + mode_str("L", b) + "] on " + key_str(k));
                for (Current x : {Current::E, Current::F, Current::H, Current::R}) {
                    TensorVec w = coset.sugawara(a, coset.current(x, b, v));
                    axpy(w, Scalar(-1), coset.current(x, b, coset.sugawara(a, v)));
                    if (x != Current::R) axpy(w, Scalar(b), coset.current(x, a + b, v));
                    primary.expect(coset.reduce(w).empty(), "[" + mode_str("L", a) + "," + mode_str(current_name(x), b) + "] on " +
                                                  key_str(k));
                }
            }
    }
    rep.relations.push_back(std::move(vir));
    rep.relations.push_back(std::move(primary));

    IdentityReport charge{"omega_sl2 central charge", 0, {}, 0};
    {
        const TensorVec v = unit(ground());
        TensorVec w = coset.sugawara(2, coset.sugawara(-2, v));
        axpy(w, Scalar(-1), coset.sugawara(-2, coset.sugawara(2, v)));
        axpy(w, Scalar(-4), coset.sugawara(0, v));
        Scalar half_c;
        if (proportional(coset.reduce(w), v, half_c)) {
            rep.sugawara_c = half_c * Scalar(2);
            charge.expect(rep.sugawara_c == c, "measured " + rep.sugawara_c.str() + ", expected " + c.str());
        } else {
            charge.fail("central term not proportional to the ground state");
        }
    }
    rep.relations.push_back(std::move(charge));

    IdentityReport quad{"omega identity, quadratic part", 0, {}, 0};
    const TensorVec rq = omega_quadratic_residual(m, coset.lattice().cocycle());
    quad.expect(rq.empty(), "residual " + tensor_str(rq));
    rep.relations.push_back(std::move(quad));

    IdentityReport ident{"omega_sl2 + omega_rho = omega_total", 0, {}, 0};
    const TensorVec res = omega_identity_residual(m, coset.lattice().cocycle());
    if (!res.empty()) rep.residual = tensor_str(res);
    ident.expect(res.empty(), "residual " + rep.residual);
    rep.relations.push_back(std::move(ident));
    return rep;
}

Decomposition find_affine_hw(CosetAKS& coset, Half cutoff, int window) {
    Decomposition dec;
    const int m = coset.m();
    const std::vector<TensorGrade> grades = coset.window(cutoff, window);
    std::map<TensorGrade, std::vector<TensorVec>> hw;

    for (const auto& g : grades) {
        const std::vector<TensorKey> src = coset.basis(g);
        std::map<std::pair<int, TensorKey>, std::size_t> rows;
        std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(src.size());
        int op = 0;
        for (Current x : {Current::E, Current::F, Current::H, Current::R}) {
            for (int n = x == Current::E ? 0 : 1; coset.shifted(g, x, n).level >= Half(0); ++n, ++op) {
                for (std::size_t j = 0; j < src.size(); ++j)
                    for (const auto& [k, c] : coset.reduce(coset.current(x, n, unit(src[j])))) {
                        auto it = rows.emplace(std::make_pair(op, k), rows.size()).first;
                        cols[j].emplace_back(it->second, c);
                    }
            }
        }
        Mat a(rows.size(), Vec(src.size()));
        for (std::size_t j = 0; j < src.size(); ++j)
            for (const auto& [i, c] : cols[j]) a[i][j] = c;
        for (const auto& kv : kernel(a, src.size())) {
            TensorVec v;
            for (std::size_t j = 0; j < src.size(); ++j)
                if (!kv[j].is_zero()) v.emplace(src[j], kv[j]);
            AffineHighestWeight h;
            h.grade = g;
            h.vector = v;
            Scalar k;
            const bool k_ok = proportional(coset.reduce(coset.current(Current::H, 0, v)), v, k);
            const bool s_ok = proportional(coset.reduce(coset.current(Current::R, 0, v)), v, h.s);
            const bool w_ok = proportional(coset.reduce(coset.sugawara(0, v)), v, h.weight);
            h.charge = coset.label().q() + Scalar(g.charge);
            const bool integral = k_ok && k.is_rational() && k.rational().is_integer();
            h.k = integral ? static_cast<int>(k.rational().numerator().get_si()) : -1;
            dec.k_range.expect(integral && s_ok && w_ok && h.k >= 0 && h.k <= m,
                               "k = " + (k_ok ? k.str() : std::string("not an eigenvalue")) + " at " + tensor_str(v));
            hw[g].push_back(v);
            dec.highest_weights.push_back(std::move(h));
        }
    }

    // Sources of a grade: highest-weight grades of equal sector + charge whose H(0) eigenvalue
    // lies in [0, m] and whose untwisted total weight is not above the grade's.
    const Scalar mq = coset.label().q() * Scalar(m + 2);
    if (!mq.is_rational() || !mq.rational().is_integer()) throw std::logic_error("(m+2) q is not an integer");
    const long long base = mq.rational().numerator().get_si();
    for (const auto& g : grades) {
        const long long n = g.sector + g.charge;
        const long long a = base + (m + 2) * n;  // H(0) eigenvalue is a - 2 sector
        const Rational tg = coset.standard_weight(g);
        struct Source {
            TensorGrade grade;
            long long weight_gap;
        };
        std::vector<Source> sources;
        bool contained = true;
        for (long long p = floor_div(a - m + 1, 2); 2 * p <= a; ++p) {
            const int c1 = static_cast<int>(n - p);
            const Rational dmax = tg + Rational(p * p, 2);
            for (int t = 0; Rational(t, 2) <= dmax; ++t) {
                if (((t - c1) % 2) != 0) continue;
                const TensorGrade s{static_cast<int>(p), c1, Half::from_twice(t)};
                const Rational gap = tg - coset.standard_weight(s);
                if (!gap.is_integer()) continue;
                if (std::abs(p) > window || s.level > cutoff) {
                    // charge c needs N=2 level at least c^2/2; such grades are nonempty
                    if (t * 1LL >= static_cast<long long>(c1) * c1) contained = false;
                    continue;
                }
                sources.push_back({s, gap.numerator().get_si()});
            }
        }
        if (!contained) {
            ++dec.skipped_grades;
            continue;
        }
        ++dec.certified_grades;

        Echelon<TensorKey> span;
        bool stayed = true;
        for (const auto& src : sources) {
            auto it = hw.find(src.grade);
            if (it == hw.end()) continue;
            const int dp = g.sector - src.grade.sector;
            // lowering modes of positive weight, in a fixed order; F(0) is applied first
            std::vector<std::pair<Current, int>> modes;
            for (int w = 1; w <= src.weight_gap; ++w)
                for (Current x : {Current::E, Current::F, Current::H, Current::R}) modes.push_back({x, -w});
            std::vector<std::size_t> chosen;
            std::function<void(std::size_t, long long, int, int)> rec = [&](std::size_t i, long long left, int ne,
                                                                           int nf) {
                if (left == 0) {
                    const int zeros = dp + ne - nf;
                    if (zeros < 0) return;
                    for (const auto& v0 : it->second) {
                        TensorVec v = v0;
                        for (int z = 0; z < zeros && !v.empty(); ++z) v = coset.current(Current::F, 0, v);
                        for (auto c = chosen.rbegin(); c != chosen.rend() && !v.empty(); ++c)
                            v = coset.current(modes[*c].first, modes[*c].second, v);
                        v = coset.reduce(v);
                        if (v.empty()) continue;
                        for (const auto& [k, c] : v)
                            if (!(tensor_grade(k) == g)) stayed = false;
                        span.insert(v);
                    }
                    return;
                }
                for (std::size_t j = i; j < modes.size(); ++j) {
                    const int w = -modes[j].second;
                    if (w > left) break;
                    chosen.push_back(j);
                    rec(j, left - w, ne + (modes[j].first == Current::E), nf + (modes[j].first == Current::F));
                    chosen.pop_back();
                }
            };
            rec(0, src.weight_gap, 0, 0);
        }
        const std::size_t dim = coset.basis(g).size();
        dec.completeness.expect(stayed && span.rank() == dim,
                                "grade (sector " + std::to_string(g.sector) + ", charge " + std::to_string(g.charge) +
                                    ", level " + g.level.str() + "): descendants span " +
                                    std::to_string(span.rank()) + " of " + std::to_string(dim));
    }
    return dec;
}

}  // namespace nsvoa
