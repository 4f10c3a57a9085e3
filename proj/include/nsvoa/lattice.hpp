#pragma once

#include <compare>
#include <string>
#include <vector>

#include "nsvoa/linalg.hpp"
#include "nsvoa/report.hpp"

namespace nsvoa {

/// Fock basis state prod b(-n_i) |sector>. Parts are positive and sorted
/// in decreasing order; sector is p for e^{p alpha} (always 0 in M(1,s)).
struct FockState {
    std::vector<int> parts;
    int sector = 0;

    int level() const;
    std::string str(const char* oscillator) const;
    auto operator<=>(const FockState&) const = default;
};

using FockVector = SparseVec<FockState>;

FockVector fock_unit(FockState s);
/// All partitions of n into positive parts, each sorted decreasingly.
std::vector<std::vector<int>> partitions(int n);

/// Multiply / contract by one oscillator mode with [b(m), b(n)] = form*m*delta.
/// b(0) is not handled here.
FockVector apply_oscillator(int form, int n, const FockVector& v);

enum class Cocycle { sign, trivial };
std::string cocycle_name(Cocycle c);

/// Rank-one lattice vertex superalgebra V_L with <alpha, alpha> = -1.
class LatticeVOA {
public:
    explicit LatticeVOA(Cocycle cocycle = Cocycle::sign) : cocycle_(cocycle) {}

    Cocycle cocycle() const { return cocycle_; }
    /// epsilon(p alpha, p' alpha).
    int epsilon(int p, int pp) const;

    /// alpha(n); alpha(0) acts on e^{p alpha} by -p.
    FockVector alpha(int n, const FockVector& v) const;
    /// Mode (e^{p alpha})_(t), the coefficient of x^{-t-1}. Exponents are integers
    /// because all pairings are; anything else is rejected naming that set.
    FockVector exp_mode(int p, const Rational& t, const FockVector& v) const;
    FockVector exp_mode(int p, long long t, const FockVector& v) const;
    /// Modes of -alpha(-1)^2/2 + alpha(-2)/2.
    FockVector virasoro(int n, const FockVector& v) const;
    /// Coefficient of x^{-n-2} in :alpha(x)^2:.
    FockVector normal_square(int n, const FockVector& v) const;

    struct GradeInfo {
        Scalar weight;
        Scalar charge;
        int parity;
    };
    /// Eigenvalues of the modified L(0) and alpha(0); throws if v is not homogeneous.
    GradeInfo grade_of(const FockVector& v) const;

    /// Basis states with oscillator level <= max_level in sectors |p| <= max_sector.
    static std::vector<FockState> basis(int max_level, int max_sector);

private:
    Cocycle cocycle_;
};

/// Heisenberg Fock module M(1,s) with [a(m), a(n)] = m delta and a(0) = s.
class HeisenbergFock {
public:
    explicit HeisenbergFock(Scalar s) : s_(std::move(s)) {}
    const Scalar& s() const { return s_; }

    FockVector a(int n, const FockVector& v) const;
    /// Modes of a(-1)^2/2 + i a(-2)/2.
    FockVector virasoro(int n, const FockVector& v) const;
    Scalar weight_of(const FockVector& v) const;

private:
    Scalar s_;
};

/// Virasoro relations of the given mode family with central charge c on the given states.
template <class ModeFn>
IdentityReport check_virasoro(ModeFn&& L, const Scalar& c, const std::vector<FockState>& states, int max_index) {
    IdentityReport rep{"virasoro relations", 0, {}, 0};
    for (const auto& st : states) {
        FockVector v = fock_unit(st);
        for (int m = -max_index; m <= max_index; ++m)
            for (int n = -max_index; n <= max_index; ++n) {
                FockVector lhs = L(m, L(n, v));
                axpy(lhs, Scalar(-1), L(n, L(m, v)));
                FockVector rhs;
                axpy(rhs, Scalar(m - n), L(m + n, v));
                if (m + n == 0) axpy(rhs, c * Scalar(Rational(m * m * m - m, 12)), v);
                axpy(lhs, Scalar(-1), rhs);
                rep.expect(lhs.empty(), "[L(" + std::to_string(m) + "),L(" + std::to_string(n) + ")] on " +
                                            st.str("b"));
            }
    }
    return rep;
}

/// Central charge read off from ([L(2), L(-2)] - 4 L(0)) v = (c/2) v on the ground state.
template <class ModeFn>
Scalar probe_central_charge(ModeFn&& L) {
    FockVector vac = fock_unit({});
    FockVector w = L(2, L(-2, vac));
    axpy(w, Scalar(-1), L(-2, L(2, vac)));
    axpy(w, Scalar(-4), L(0, vac));
    if (w.empty()) return Scalar();
    if (w.size() != 1 || !(w.begin()->first == FockState{})) throw std::logic_error("central probe left the vacuum line");
    return w.begin()->second * Scalar(2);
}

}  // namespace nsvoa
