#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "nsvoa/report.hpp"
#include "nsvoa/verma.hpp"

namespace nsvoa {

/// Element of E[phi1, phi2], coefficients on the basis 1, phi1, phi2, phi1 phi2
/// (indexed by the bit masks 0, 1, 2, 3). Products respect phi_i^2 = 0 and
/// phi1 phi2 = -phi2 phi1.
template <class T>
struct Grassmann {
    std::array<T, 4> slot{};

    T& operator[](int mask) { return slot[static_cast<std::size_t>(mask)]; }
    const T& operator[](int mask) const { return slot[static_cast<std::size_t>(mask)]; }
    bool operator==(const Grassmann&) const = default;
};

/// Sign of phi^a phi^b = sign * phi^(a|b); zero when the masks overlap.
int grassmann_sign(int a, int b);

using GrassmannNumber = Grassmann<Scalar>;
using GrassmannVec = Grassmann<StateVector>;

GrassmannNumber phi(int i);  // phi1 or phi2
GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b);
GrassmannNumber operator+(const GrassmannNumber& a, const GrassmannNumber& b);
GrassmannNumber operator*(const Scalar& s, const GrassmannNumber& a);
/// Product of a Grassmann number with a vector-valued polynomial (numbers placed on the left).
GrassmannVec operator*(const GrassmannNumber& a, const GrassmannVec& v);
void axpy(GrassmannVec& y, const Scalar& a, const GrassmannVec& x);
/// Left derivative d/dphi_i.
GrassmannVec dphi(int i, const GrassmannVec& v);
bool is_zero(const GrassmannVec& v);
std::string grassmann_str(const GrassmannVec& v);

/// Vertex operators of the vacuum algebra V_ns2(c,0,0), taken as the irreducible quotient.
/// Generator states map to their mode families; every other PBW monomial g_(m)u' resolves
/// through the iterate formula
///   (a_(m)b)_(n) = sum_j (-1)^j C(m,j) [a_(m-j) b_(n+j) - (-1)^(m+|a||b|) b_(m+n-j) a_(j)].
/// Results are cached per (monomial, mode, monomial); not safe for concurrent mutation.
class VacuumVOA {
public:
    /// `cutoff` bounds the weight of states whose vertex operators may be requested.
    VacuumVOA(Scalar c, Half cutoff);

    Ns2Module& module() { return module_; }
    const Scalar& central_charge() const { return module_.params().c; }
    Half cutoff() const { return cutoff_; }

    static StateVector vacuum();
    static StateVector tau(int sign);  // G+-(-3/2)1
    static StateVector mu();           // J(-1)1
    static StateVector omega();        // L(-2)1

    /// u_(n) w, the coefficient of x^{-n-1} in Y(u,x)w, in canonical form.
    /// States of weight beyond the cutoff are rejected.
    StateVector mode(const StateVector& u, int n, const StateVector& w);
    /// As mode() without the weight check; the G-slots of an odd operator reach cutoff + 1/2.
    StateVector mode_unchecked(const StateVector& u, int n, const StateVector& w);
    /// G1(r) = (G+(r) + G-(r))/sqrt2 and G2(r) = (G+(r) - G-(r))/sqrt(-2), sqrt(-2) = i sqrt2.
    StateVector G(int i, Half r, const StateVector& v);
    StateVector L(int n, const StateVector& v);
    /// Any ns2 mode, on vectors whose components may differ in charge.
    StateVector apply(const ModeSymbol& x, const StateVector& v);

    /// Basis of V at each weight up to `max_weight`.
    std::vector<StateVector> basis(Half max_weight);

private:
    StateVector mode_on(const Monomial& u, int n, const Monomial& w);
    StateVector generator_mode(Kind g, int k, const StateVector& v);

    Ns2Module module_;
    Half cutoff_;
    std::map<std::tuple<Monomial, int, Monomial>, StateVector> cache_;
};

Half weight_of(const StateVector& v);  // common level of a nonzero vector (charges may mix)
int parity_of(const StateVector& v);   // number of G modes mod 2

/// The four states whose ordinary vertex operators make up Y(u,(x,phi1,phi2)):
/// u, G1(-1/2)u, G2(-1/2)u and G2(-1/2)G1(-1/2)u on 1, phi1, phi2, phi1 phi2.
/// The last slot is ordered so that the G_i(-1/2)-derivative property holds with left
/// derivatives; it equals -G1(-1/2)G2(-1/2)u.
struct OddVertexOperator {
    GrassmannVec states;
    std::array<int, 4> parity{};  // -1 for a zero slot
};

OddVertexOperator assemble_odd(VacuumVOA& voa, const StateVector& u);
/// Coefficient of x^k in Y(u,(x,phi1,phi2))w. Slots whose weight exceeds `limit` are left zero.
GrassmannVec odd_coefficient(VacuumVOA& voa, const OddVertexOperator& y, int k, const StateVector& w,
                             Half limit = Half(1 << 20));

struct OddReport {
    std::vector<IdentityReport> relations;
    bool ok() const;
};

/// Y(1,(x,phi)) = 1 and the creation property, for u of weight <= max_weight.
OddReport check_vacuum_and_creation(VacuumVOA& voa, Half max_weight);
/// G_i(-1/2)- and L(-1)-derivative properties on every coefficient slot of weight <= cutoff.
OddReport check_derivative_properties(VacuumVOA& voa, const StateVector& u);
/// Skew-symmetry on every coefficient slot of weight <= cutoff.
IdentityReport check_skew_symmetry(VacuumVOA& voa, const StateVector& u, const StateVector& v);
/// Brackets of the modes of tau+-, mu, omega with |index| <= max_index: from the
/// reconstructed operators, against the structure-constant table and against the
/// commutator formula built from reconstructed iterates.
OddReport check_generator_commutators(VacuumVOA& voa, int max_index = 2);
/// Every check above on all basis states of weight <= max_weight.
OddReport check_odd_vertex_operators(VacuumVOA& voa, Half max_weight);

}  // namespace nsvoa
