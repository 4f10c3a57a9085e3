#include <doctest.h>

#include <random>

#include "nsvoa/oddvar.hpp"

using namespace nsvoa;

namespace {

Scalar q(long long n, long long d = 1) { return Scalar(Rational(n, d)); }

StateVector scaled(StateVector v, const Scalar& c) {
    if (c.is_zero()) return {};
    for (auto& [k, x] : v) x *= c;
    return v;
}

StateVector sum(const StateVector& a, const Scalar& c, const StateVector& b) {
    StateVector out = a;
    axpy(out, c, b);
    return out;
}

const Scalar inv_sqrt2 = Scalar::sqrt2().inverse();

// tau1 = (tau+ + tau-)/sqrt2, tau2 = (tau+ - tau-)/(i sqrt2)
StateVector tau1() { return scaled(sum(VacuumVOA::tau(1), Scalar(1), VacuumVOA::tau(-1)), inv_sqrt2); }
StateVector tau2() {
    return scaled(sum(VacuumVOA::tau(1), Scalar(-1), VacuumVOA::tau(-1)), -Scalar::i() * inv_sqrt2);
}

void require_ok(const IdentityReport& r) {
    INFO(r.name << ": " << (r.failures.empty() ? "" : r.failures.front()));
    CHECK(r.checked > 0);
    CHECK(r.ok());
}

}  // namespace

TEST_CASE("grassmann algebra laws") {
    CHECK(phi(1) * phi(1) == GrassmannNumber{});
    CHECK(phi(2) * phi(2) == GrassmannNumber{});
    CHECK(phi(1) * phi(2) == Scalar(-1) * (phi(2) * phi(1)));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    auto random = [&] {
        GrassmannNumber g;
        for (int k = 0; k < 4; ++k) g[k] = q(d(rng), 1 + (d(rng) + 5));
        return g;
    };
    for (int t = 0; t < 200; ++t) {
        const GrassmannNumber a = random(), b = random(), c = random();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
    GrassmannVec v;
    v[3] = VacuumVOA::omega();
    CHECK(dphi(1, v)[2] == VacuumVOA::omega());
    CHECK(dphi(2, v)[1] == scaled(VacuumVOA::omega(), q(-1)));
    CHECK(is_zero(dphi(1, dphi(1, v))));
}

TEST_CASE("reconstructed vertex operators") {
    VacuumVOA voa(q(1), half_odd(7));
    const auto states = voa.basis(Half(2));
    SUBCASE("vacuum gives the identity family") {
        for (const auto& w : states)
            for (int n = -3; n <= 3; ++n)
                CHECK(voa.mode(VacuumVOA::vacuum(), n, w) == (n == -1 ? w : StateVector{}));
    }
    SUBCASE("generators give their mode families") {
        for (const auto& w : states)
            for (int n = -2; n <= 2; ++n) {
                CHECK(voa.mode(VacuumVOA::tau(1), n, w) == voa.apply(ModeSymbol::Gp(half_odd(2 * n - 1)), w));
                CHECK(voa.mode(VacuumVOA::mu(), n, w) == voa.apply(ModeSymbol::J(Half(n)), w));
                CHECK(voa.mode(VacuumVOA::omega(), n, w) == voa.L(n - 1, w));
            }
    }
    SUBCASE("creation: u_(-1) 1 = u") {
        for (const auto& u : states) {
            CHECK(voa.mode(u, -1, VacuumVOA::vacuum()) == u);
            CHECK(voa.mode(u, 0, VacuumVOA::vacuum()).empty());
        }
    }
    SUBCASE("weight beyond the cutoff is rejected") {
        const StateVector big = unit_vector({ModeSymbol::L(Half(-4))});
        CHECK_THROWS_AS(voa.mode(big, 0, VacuumVOA::vacuum()), std::invalid_argument);
    }
}

TEST_CASE("odd expansion of J(-1)1") {
    VacuumVOA voa(q(1), half_odd(7));
    const OddVertexOperator h = assemble_odd(voa, VacuumVOA::mu());
    CHECK(h.states[0] == VacuumVOA::mu());
    CHECK(h.states[1] == scaled(tau2(), -Scalar::i()));
    CHECK(h.states[2] == scaled(tau1(), Scalar::i()));
    CHECK(h.states[3] == scaled(VacuumVOA::omega(), Scalar::i() * q(-2)));
    // phi+ = (-phi1 + i phi2)/sqrt2, phi- = (phi1 + i phi2)/sqrt2
    const GrassmannNumber plus = inv_sqrt2 * (Scalar(-1) * phi(1) + Scalar::i() * phi(2));
    const GrassmannNumber minus = inv_sqrt2 * (phi(1) + Scalar::i() * phi(2));
    GrassmannVec expect;
    expect[0] = VacuumVOA::mu();
    GrassmannVec t;
    t[0] = VacuumVOA::tau(1);
    axpy(expect, Scalar(1), plus * t);
    t[0] = VacuumVOA::tau(-1);
    axpy(expect, Scalar(1), minus * t);
    t[0] = VacuumVOA::omega();
    axpy(expect, Scalar(2), (plus * minus) * t);
    CHECK(h.states == expect);
    CHECK(h.parity == std::array<int, 4>{0, 1, 1, 0});
}

TEST_CASE("the top slot is G2 G1 u = -G1 G2 u") {
    VacuumVOA voa(q(1), half_odd(7));
    for (const auto& u : voa.basis(Half(2))) {
        const OddVertexOperator y = assemble_odd(voa, u);
        const StateVector g1g2 = voa.G(1, half_odd(-1), voa.G(2, half_odd(-1), u));
        CHECK(y.states[3] == scaled(g1g2, q(-1)));
    }
}

TEST_CASE("vacuum odd operator is constant 1") {
    VacuumVOA voa(q(1), half_odd(7));
    const OddVertexOperator one = assemble_odd(voa, VacuumVOA::vacuum());
    for (int mask = 1; mask < 4; ++mask) CHECK(one.states[mask].empty());
}

TEST_CASE("derivative properties on single states") {
    VacuumVOA voa(q(1), half_odd(7));
    for (const auto& r : check_derivative_properties(voa, tau1()).relations) require_ok(r);
    for (const auto& r : check_derivative_properties(voa, VacuumVOA::omega()).relations)
        if (r.name == "L(-1)-derivative") require_ok(r);
    for (const auto& r : check_derivative_properties(voa, VacuumVOA::vacuum()).relations) CHECK(r.ok());
}

TEST_CASE("reversing the top slot breaks the G1-derivative property") {
    VacuumVOA voa(q(1), half_odd(7));
    OddVertexOperator y = assemble_odd(voa, VacuumVOA::mu());
    y.states[3] = scaled(y.states[3], q(-1));
    const OddVertexOperator yg = assemble_odd(voa, voa.G(1, half_odd(-1), VacuumVOA::mu()));
    // phi2 slot at x^0 on the vacuum: Y(G2 G1 mu) against d/dphi1 of phi1 phi2 Y(top slot)
    const int k = 0;
    GrassmannVec rhs = dphi(1, odd_coefficient(voa, y, k, VacuumVOA::vacuum()));
    axpy(rhs, Scalar(k + 1), phi(1) * odd_coefficient(voa, y, k + 1, VacuumVOA::vacuum()));
    CHECK_FALSE(odd_coefficient(voa, yg, k, VacuumVOA::vacuum()) == rhs);
}

TEST_CASE("skew-symmetry") {
    VacuumVOA voa(q(1), Half(3));
    require_ok(check_skew_symmetry(voa, VacuumVOA::tau(1), VacuumVOA::tau(-1)));
    require_ok(check_skew_symmetry(voa, VacuumVOA::vacuum(), VacuumVOA::vacuum()));
    require_ok(check_skew_symmetry(voa, VacuumVOA::omega(), VacuumVOA::vacuum()));
    require_ok(check_skew_symmetry(voa, VacuumVOA::mu(), VacuumVOA::tau(1)));
}

TEST_CASE("full odd-variable checks at c = 1 and c = 3/2") {
    for (const Scalar& c : {q(1), q(3, 2)}) {
        VacuumVOA voa(c, half_odd(7));
        const OddReport rep = check_odd_vertex_operators(voa, Half(2));
        for (const auto& r : rep.relations) require_ok(r);
        CHECK(rep.ok());
    }
}

TEST_CASE("generator commutators and the U(1) level") {
    VacuumVOA voa(q(1), half_odd(7));
    const OddReport rep = check_generator_commutators(voa, 1);
    CHECK(rep.ok());
    // The J(1)J(-1) bracket on the vacuum gives c/3.
    const StateVector jj = voa.mode(VacuumVOA::mu(), 1, voa.mode(VacuumVOA::mu(), -1, VacuumVOA::vacuum()));
    CHECK(jj == scaled(VacuumVOA::vacuum(), q(1, 3)));
}
