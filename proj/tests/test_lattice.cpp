#include "doctest.h"
#include "nsvoa/lattice.hpp"

using namespace nsvoa;

namespace {

Scalar q(long long n, long long d = 1) { return Scalar(Rational(n, d)); }
FockVector st(std::vector<int> parts, int p = 0) { return fock_unit(FockState{std::move(parts), p}); }

FockVector scaled(FockVector v, const Scalar& c) {
    if (c.is_zero()) return {};
    for (auto& [k, x] : v) x *= c;
    return v;
}

// Supercommutator of two operator families on v.
template <class A, class B>
FockVector super_commutator(A&& a, int pa, B&& b, int pb, const FockVector& v) {
    FockVector out = a(b(v));
    axpy(out, Scalar((pa * pb) % 2 ? 1 : -1), b(a(v)));
    return out;
}

}  // namespace

TEST_CASE("oscillator and zero-mode action") {
    LatticeVOA V;
    CHECK(V.alpha(1, st({1})) == scaled(st({}), q(-1)));
    CHECK(V.alpha(0, st({}, 1)) == scaled(st({}, 1), q(-1)));
    CHECK(V.alpha(2, st({2, 2, 1})) == scaled(st({2, 1}), q(-4)));
    CHECK(V.alpha(-3, st({2, 1})) == st({3, 2, 1}));
    HeisenbergFock M(q(3, 2));
    CHECK(M.a(1, st({1})) == st({}));
    CHECK(M.a(0, st({2})) == scaled(st({2}), q(3, 2)));
}

TEST_CASE("creation property of exponential modes") {
    LatticeVOA V;
    FockVector vac = st({});
    // top nonvanishing coefficient on the vacuum is x^0, i.e. t = -1
    CHECK(V.exp_mode(-1, -1LL, vac) == st({}, -1));
    CHECK(V.exp_mode(-1, 0LL, vac).empty());
    CHECK(V.exp_mode(2, -1LL, vac) == st({}, 2));
    // t = -2 gives the translation: (e^b)_(-2) 1 = b(-1) e^b
    CHECK(V.exp_mode(1, -2LL, vac) == st({1}, 1));
    CHECK_THROWS_WITH(V.exp_mode(1, Rational(1, 2), vac), doctest::Contains("allowed: integers"));
}

TEST_CASE("Heisenberg relations as operators") {
    LatticeVOA V;
    HeisenbergFock M(q(2, 3));
    auto states = LatticeVOA::basis(3, 2);
    for (const auto& s : states) {
        FockVector v = fock_unit(s);
        for (int m = -3; m <= 3; ++m)
            for (int n = -3; n <= 3; ++n) {
                FockVector c = V.alpha(m, V.alpha(n, v));
                axpy(c, q(-1), V.alpha(n, V.alpha(m, v)));
                CHECK(c == (m + n == 0 ? scaled(v, q(-m)) : FockVector{}));
                if (s.sector != 0) continue;
                FockVector d = M.a(m, M.a(n, v));
                axpy(d, q(-1), M.a(n, M.a(m, v)));
                CHECK(d == (m + n == 0 ? scaled(v, q(m)) : FockVector{}));
                CHECK(M.a(0, v) == scaled(v, q(2, 3)));
            }
    }
}

TEST_CASE("modified Virasoro elements have central charge 4") {
    LatticeVOA V;
    auto L = [&](int n, const FockVector& v) { return V.virasoro(n, v); };
    CHECK(probe_central_charge(L) == q(4));
    CHECK(check_virasoro(L, q(4), LatticeVOA::basis(3, 2), 2).ok());
    for (Scalar s : {q(0), q(1, 2), Scalar::i()}) {
        HeisenbergFock M(s);
        auto Lm = [&](int n, const FockVector& v) { return M.virasoro(n, v); };
        CHECK(probe_central_charge(Lm) == q(4));
        CHECK(check_virasoro(Lm, q(4), LatticeVOA::basis(3, 0), 2).ok());
    }
    // a wrong central charge is detected
    CHECK_FALSE(check_virasoro(L, q(1), LatticeVOA::basis(1, 0), 2).ok());
}

TEST_CASE("weights from the modified L(0)") {
    LatticeVOA V;
    CHECK(V.virasoro(0, st({})).empty());
    CHECK(V.virasoro(0, st({1})) == st({1}));
    auto g = V.grade_of(st({}));
    CHECK(g.weight.is_zero());
    CHECK(g.parity == 0);
    for (int p = -3; p <= 3; ++p) {
        auto gp = V.grade_of(st({2, 1}, p));
        CHECK(gp.charge == q(-p));
        CHECK(gp.parity == ((p % 2) + 2) % 2);
        // oscillator level plus the sector contribution -p^2/2 + p/2
        CHECK(gp.weight == q(3) + q(-p * p + p, 2));
    }
    HeisenbergFock M(q(0));
    CHECK(M.weight_of(st({2})) == q(2));
    FockVector mixed = st({1});
    axpy(mixed, q(1), st({}));
    CHECK_THROWS(V.grade_of(mixed));
}

TEST_CASE("L(-1) is the translation operator") {
    LatticeVOA V;
    for (int p = -2; p <= 2; ++p) CHECK(V.virasoro(-1, st({}, p)) == scaled(st({1}, p), q(p)));
    for (const auto& s : LatticeVOA::basis(2, 1)) {
        FockVector v = fock_unit(s);
        for (int n = -2; n <= 2; ++n) {
            FockVector c = V.virasoro(-1, V.alpha(n, v));
            axpy(c, q(-1), V.alpha(n, V.virasoro(-1, v)));
            CHECK(c == scaled(V.alpha(n - 1, v), q(-n)));
        }
    }
}

TEST_CASE("locality of exponential fields") {
    for (Cocycle cc : {Cocycle::sign, Cocycle::trivial}) {
        LatticeVOA V(cc);
        for (const auto& s : LatticeVOA::basis(2, 2)) {
            FockVector v = fock_unit(s);
            for (int m = -3; m <= 2; ++m)
                for (int n = -3; n <= 2; ++n) {
                    auto A = [&](int p, int t) { return [&V, p, t](const FockVector& w) { return V.exp_mode(p, static_cast<long long>(t), w); }; };
                    // {e^a_(m), e^-a_(n)} = 0
                    CHECK(super_commutator(A(1, m), 1, A(-1, n), 1, v).empty());
                    // {e^a_(m), e^a_(n)} = eps(a,a) (e^2a)_(m+n)
                    FockVector c = super_commutator(A(1, m), 1, A(1, n), 1, v);
                    CHECK(c == scaled(V.exp_mode(2, static_cast<long long>(m + n), v), q(V.epsilon(1, 1))));
                    // [alpha(m), (e^{pa})_(n)] = <alpha, p alpha> (e^{pa})_(m+n)
                    for (int p : {-1, 1, 2}) {
                        auto al = [&V, m](const FockVector& w) { return V.alpha(m, w); };
                        FockVector d = super_commutator(al, 0, A(p, n), p, v);
                        CHECK(d == scaled(V.exp_mode(p, static_cast<long long>(m + n), v), q(-p)));
                    }
                }
        }
    }
}
