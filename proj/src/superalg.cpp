#include "nsvoa/superalg.hpp"

#include <optional>
#include <stdexcept>

namespace nsvoa {

namespace {

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::L: return "L";
        case Kind::J: return "J";
        case Kind::Gp: return "G+";
        case Kind::Gm: return "G-";
        case Kind::C: return "C";
        case Kind::a: return "a";
        case Kind::d: return "d";
        case Kind::E: return "E";
        case Kind::F: return "F";
        case Kind::H: return "H";
        case Kind::K: return "K";
    }
    return "?";
}

bool kind_in(Algebra alg, Kind k) {
    switch (alg) {
        case Algebra::ns2: return k == Kind::L || k == Kind::J || k == Kind::Gp || k == Kind::Gm || k == Kind::C;
        case Algebra::virasoro: return k == Kind::L || k == Kind::C;
        case Algebra::heisenberg: return k == Kind::a || k == Kind::d;
        case Algebra::affine_sl2: return k == Kind::E || k == Kind::F || k == Kind::H || k == Kind::K;
    }
    return false;
}

Scalar q(long long n, long long d = 1) { return Scalar(Rational(n, d)); }

Scalar half_value(Half h) { return q(h.twice(), 2); }

// Brackets for one orientation of each unordered pair; nullopt means "use the other orientation".
std::optional<LinComb> ns2_oriented(const ModeSymbol& x, const ModeSymbol& y) {
    const Algebra alg = x.algebra;
    if (x.is_central() || y.is_central()) return LinComb();
    const Half m = x.index, n = y.index;
    const bool zero_sum = (m + n).twice() == 0;
    const ModeSymbol central{alg, Kind::C, Half()};
    LinComb out;
    if (x.kind == Kind::L && y.kind == Kind::L) {
        Scalar mm = half_value(m), nn = half_value(n);
        out.add(ModeSymbol{alg, Kind::L, m + n}, mm - nn);
        if (zero_sum) out.add(central, (mm * mm * mm - mm) * q(1, 12));
        return out;
    }
    if (x.kind == Kind::J && y.kind == Kind::J) {
        if (zero_sum) out.add(central, half_value(m) * q(1, 3));
        return out;
    }
    if (x.kind == Kind::L && y.kind == Kind::J) {
        out.add(ModeSymbol::J(m + n), -half_value(n));
        return out;
    }
    if (x.kind == Kind::L && y.is_odd()) {
        out.add(ModeSymbol{alg, y.kind, m + n}, half_value(m) * q(1, 2) - half_value(n));
        return out;
    }
    if (x.kind == Kind::J && y.is_odd()) {
        out.add(ModeSymbol{alg, y.kind, m + n}, y.kind == Kind::Gp ? q(1) : q(-1));
        return out;
    }
    if (x.kind == Kind::Gp && y.kind == Kind::Gm) {
        Scalar r = half_value(m), s = half_value(n);
        out.add(ModeSymbol::L(m + n), q(2));
        out.add(ModeSymbol::J(m + n), r - s);
        if (zero_sum) out.add(central, (r * r - q(1, 4)) * q(1, 3));
        return out;
    }
    if (x.is_odd() && y.kind == x.kind) return out;
    return std::nullopt;
}

std::optional<LinComb> heis_oriented(const ModeSymbol& x, const ModeSymbol& y) {
    LinComb out;
    if (x.is_central() || y.is_central()) return out;
    if ((x.index + y.index).twice() == 0) out.add(ModeSymbol{Algebra::heisenberg, Kind::d, Half()}, half_value(x.index));
    return out;
}

std::optional<LinComb> sl2_oriented(const ModeSymbol& x, const ModeSymbol& y) {
    LinComb out;
    if (x.is_central() || y.is_central()) return out;
    const Half p = x.index, qq = y.index;
    const bool zero_sum = (p + qq).twice() == 0;
    const ModeSymbol K{Algebra::affine_sl2, Kind::K, Half()};
    auto mode = [&](Kind k) { return ModeSymbol{Algebra::affine_sl2, k, p + qq}; };
    if (x.kind == Kind::E && y.kind == Kind::F) {
        out.add(mode(Kind::H), q(1));
        if (zero_sum) out.add(K, half_value(p));
        return out;
    }
    if (x.kind == Kind::H && y.kind == Kind::E) {
        out.add(mode(Kind::E), q(2));
        return out;
    }
    if (x.kind == Kind::H && y.kind == Kind::F) {
        out.add(mode(Kind::F), q(-2));
        return out;
    }
    if (x.kind == Kind::H && y.kind == Kind::H) {
        if (zero_sum) out.add(K, q(2) * half_value(p));
        return out;
    }
    if (x.kind == y.kind) return out;  // [E,E] = [F,F] = 0
    return std::nullopt;
}

std::optional<LinComb> oriented(const ModeSymbol& x, const ModeSymbol& y) {
    switch (x.algebra) {
        case Algebra::ns2:
        case Algebra::virasoro: return ns2_oriented(x, y);
        case Algebra::heisenberg: return heis_oriented(x, y);
        case Algebra::affine_sl2: return sl2_oriented(x, y);
    }
    return std::nullopt;
}

}  // namespace

ModeSymbol ModeSymbol::validated() const {
    if (!kind_in(algebra, kind)) throw std::invalid_argument(std::string("mode kind ") + kind_name(kind) + " not in algebra");
    if (is_central()) {
        if (index.twice() != 0) throw std::invalid_argument("central element carries no index");
    } else if (is_odd()) {
        if (!index.is_half_odd()) throw std::invalid_argument(str() + ": odd modes need index in Z+1/2");
    } else if (!index.is_integer()) {
        throw std::invalid_argument(str() + ": even modes need an integral index");
    }
    return *this;
}

std::string ModeSymbol::str() const {
    if (is_central()) return kind_name(kind);
    return std::string(kind_name(kind)) + "[" + index.str() + "]";
}

ModeSymbol ModeSymbol::parse(const std::string& text, Algebra algebra) {
    auto open = text.find('[');
    std::string name = text.substr(0, open);
    for (Kind k : {Kind::J, Kind::L, Kind::Gp, Kind::Gm, Kind::C, Kind::a, Kind::d, Kind::E, Kind::F, Kind::H, Kind::K}) {
        if (name != kind_name(k) || !kind_in(algebra, k)) continue;
        ModeSymbol x{algebra, k, Half()};
        if (open != std::string::npos) {
            if (text.back() != ']') break;
            x.index = Half::parse(text.substr(open + 1, text.size() - open - 2));
        }
        return x.validated();
    }
    throw std::invalid_argument("unknown mode symbol '" + text + "'");
}

void LinComb::add(const ModeSymbol& x, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(x);
    if (it == terms_.end()) {
        terms_.emplace(x, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Scalar LinComb::coefficient(const ModeSymbol& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Scalar() : it->second;
}

LinComb& LinComb::operator+=(const LinComb& o) {
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
}

LinComb LinComb::scaled(const Scalar& c) const {
    LinComb out;
    for (const auto& [x, v] : terms_) out.add(x, v * c);
    return out;
}

std::string LinComb::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [x, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*" + x.str();
    }
    return s;
}

LinComb bracket(const ModeSymbol& x, const ModeSymbol& y) {
    if (x.algebra != y.algebra) throw std::invalid_argument("bracket: modes from different algebras");
    x.validated();
    y.validated();
    if (auto r = oriented(x, y)) return *r;
    auto r = oriented(y, x);
    if (!r) throw std::logic_error("bracket: no table entry for " + x.str() + ", " + y.str());
    int sign = (x.is_odd() && y.is_odd()) ? 1 : -1;  // -(-1)^{|x||y|}
    return r->scaled(Scalar(sign));
}

LinComb bracket(const LinComb& x, const LinComb& y) {
    LinComb out;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) out += bracket(a, b).scaled(ca * cb);
    return out;
}

Grading grading(const ModeSymbol& x) {
    if (x.is_central()) throw std::invalid_argument("grading: central element has no grading");
    Grading g;
    g.weight = -x.index;
    switch (x.algebra) {
        case Algebra::ns2: {
            Scalar l = bracket(ModeSymbol::L(Half(0)), x).coefficient(x);
            Scalar j = bracket(ModeSymbol::J(Half(0)), x).coefficient(x);
            // [L0, x] = w x and [J0, x] = e x; both are rational
            g.weight = Half::from_twice(static_cast<int>((l.rational() * Rational(2)).numerator().get_si()));
            g.charge = static_cast<int>(j.rational().numerator().get_si());
            break;
        }
        case Algebra::affine_sl2: {
            Scalar h = bracket(ModeSymbol{Algebra::affine_sl2, Kind::H, Half(0)}, x).coefficient(x);
            g.charge = h.is_zero() ? 0 : static_cast<int>(h.rational().numerator().get_si());
            break;
        }
        default: break;
    }
    return g;
}

}  // namespace nsvoa

namespace nsvoa {

std::vector<ModeSymbol> generators(Algebra algebra, Half max_abs) {
    std::vector<ModeSymbol> out;
    std::vector<Kind> kinds;
    switch (algebra) {
        case Algebra::ns2: kinds = {Kind::J, Kind::L, Kind::Gp, Kind::Gm, Kind::C}; break;
        case Algebra::virasoro: kinds = {Kind::L, Kind::C}; break;
        case Algebra::heisenberg: kinds = {Kind::a, Kind::d}; break;
        case Algebra::affine_sl2: kinds = {Kind::E, Kind::F, Kind::H, Kind::K}; break;
    }
    for (Kind k : kinds) {
        ModeSymbol probe{algebra, k, Half()};
        if (probe.is_central()) continue;
        for (int t = -max_abs.twice(); t <= max_abs.twice(); ++t) {
            ModeSymbol x{algebra, k, Half::from_twice(t)};
            if (x.is_odd() != (t % 2 != 0)) continue;
            out.push_back(x);
        }
    }
    for (Kind k : kinds) {
        ModeSymbol z{algebra, k, Half()};
        if (z.is_central()) out.push_back(z);
    }
    return out;
}

IdentityReport check_skew_symmetry(Algebra algebra, Half max_abs) {
    IdentityReport rep{"super skew-symmetry", 0, {}, 0};
    auto gens = generators(algebra, max_abs);
    for (const auto& x : gens)
        for (const auto& y : gens) {
            int sign = (x.is_odd() && y.is_odd()) ? 1 : -1;
            rep.expect(bracket(x, y) == bracket(y, x).scaled(Scalar(sign)), x.str() + "," + y.str());
        }
    return rep;
}

IdentityReport check_jacobi(Algebra algebra, Half max_abs) {
    IdentityReport rep{"super Jacobi", 0, {}, 0};
    auto gens = generators(algebra, max_abs);
    auto single = [](const ModeSymbol& x) {
        LinComb l;
        l.add(x, Scalar(1));
        return l;
    };
    auto sgn = [](const ModeSymbol& a, const ModeSymbol& b) { return Scalar(a.is_odd() && b.is_odd() ? -1 : 1); };
    for (const auto& x : gens)
        for (const auto& y : gens)
            for (const auto& z : gens) {
                LinComb total = bracket(single(x), bracket(y, z)).scaled(sgn(x, z));
                total += bracket(single(y), bracket(z, x)).scaled(sgn(y, x));
                total += bracket(single(z), bracket(x, y)).scaled(sgn(z, y));
                rep.expect(total.empty(), x.str() + "," + y.str() + "," + z.str() + " -> " + total.str());
            }
    return rep;
}

IdentityReport check_grading_additivity(Algebra algebra, Half max_abs) {
    IdentityReport rep{"grading additivity", 0, {}, 0};
    auto gens = generators(algebra, max_abs);
    for (const auto& x : gens)
        for (const auto& y : gens) {
            if (x.is_central() || y.is_central()) continue;
            Grading gx = grading(x), gy = grading(y);
            bool ok = true;
            const LinComb xy = bracket(x, y);
            for (const auto& [z, c] : xy.terms()) {
                if (z.is_central()) {
                    ok = ok && (gx.weight + gy.weight).twice() == 0 && gx.charge + gy.charge == 0;
                    continue;
                }
                Grading gz = grading(z);
                ok = ok && gz.weight == gx.weight + gy.weight && gz.charge == gx.charge + gy.charge;
            }
            rep.expect(ok, x.str() + "," + y.str());
        }
    return rep;
}

}  // namespace nsvoa
