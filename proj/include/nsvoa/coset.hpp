#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nsvoa/lattice.hpp"
#include "nsvoa/minimal.hpp"

namespace nsvoa {

/// Basis vector w1 (x) w2: a canonical N=2 monomial and a lattice Fock state.
using TensorKey = std::pair<Monomial, FockState>;
using TensorVec = SparseVec<TensorKey>;

/// Sector p of e^{p alpha}, relative N=2 charge, and level = N=2 level + oscillator level.
struct TensorGrade {
    int sector = 0;
    int charge = 0;
    Half level;
    auto operator<=>(const TensorGrade&) const = default;
};

TensorGrade tensor_grade(const TensorKey& key);
/// Koszul parity: relative N=2 charge plus sector, mod 2.
int tensor_parity(const TensorKey& key);
std::string tensor_str(const TensorVec& v);

/// Generator fields of the two factors whose tensor products build the coset currents.
enum class LeftField { identity, J, Gp, Gm, L };      // 1, J(-1)1, G+-(-3/2)1, L(-2)1
enum class RightField { identity, alpha, exp_plus, exp_minus };  // 1, alpha(-1), e^{+-alpha}

enum class Current { E, F, H, R };
std::string current_name(Current c);

/// Affine sl2 currents and the commuting Heisenberg field rho acting on
/// L_ns2(c_m, h, q) (x) V_L, with the N=2 factor the radical quotient of the Verma module.
/// Operators act on Verma representatives and return unreduced representatives; since the
/// quotient map intertwines every mode, reduce() applied to a final result gives the value in
/// the irreducible module. Reducing only at the end avoids radicals at the high N=2 levels
/// that intermediate vectors pass through. Operator images are memoized per basis vector;
/// not safe for concurrent mutation.
class CosetAKS {
public:
    CosetAKS(MinimalLabel label, Cocycle cocycle = Cocycle::sign);

    const MinimalLabel& label() const { return label_; }
    int m() const { return label_.m; }
    const LatticeVOA& lattice() const { return lattice_; }
    Ns2Module& left() { return left_; }
    /// sqrt((m+2)/2), the prefactor of rho.
    const Scalar& kappa() const { return kappa_; }

    /// Coefficient of x^{-t-1} in Y(u,x) (x) Y(v,x) acting on w, with the Koszul sign
    /// (-1)^{|v||w1|}. Exponents are integers on these modules; others are rejected.
    TensorVec tensor_mode(LeftField u, RightField v, const Rational& t, const TensorVec& w);
    TensorVec tensor_mode(LeftField u, RightField v, long long t, const TensorVec& w);

    /// E(n), F(n), H(n), R(n): modes of e, f, h, rho at x^{-n-1}.
    TensorVec current(Current x, int n, const TensorVec& w);
    /// Modes L_sl2(n) of omega_sl2 at x^{-n-2}.
    TensorVec sugawara(int n, const TensorVec& w);
    /// L_ns2(n) (x) 1 + 1 (x) modified L(n) of V_L.
    TensorVec total_virasoro(int n, const TensorVec& w);

    /// Canonical representative in the irreducible quotient (componentwise radical reduction).
    TensorVec reduce(const TensorVec& v);

    /// Basis of one grade (possibly empty).
    std::vector<TensorKey> basis(const TensorGrade& g);
    /// Nonempty grades with |sector| <= window and level <= cutoff.
    std::vector<TensorGrade> window(Half cutoff, int window);
    /// Matrix of a current mode from grade g to its image grade, on the grade bases.
    Mat matrix(Current x, int n, const TensorGrade& g, Half cutoff, int window);
    /// Grade reached by one mode of x from g.
    TensorGrade shifted(const TensorGrade& g, Current x, int n) const;
    /// Level minus sector^2/2: the weight for omega_ns2 + the unmodified V_L element, up to h.
    Rational standard_weight(const TensorGrade& g) const;

private:
    TensorVec mode_on_key(LeftField u, RightField v, long long t, const TensorKey& key);
    TensorVec left_square(int n, const TensorKey& key);
    TensorVec right_square(int n, const TensorKey& key);
    TensorVec current_on_key(Current x, int n, const TensorKey& key);
    TensorVec sugawara_on_key(int n, const TensorKey& key);

    MinimalLabel label_;
    Ns2Module left_;
    LatticeVOA lattice_;
    Scalar kappa_;
    std::map<std::tuple<int, int, TensorKey>, TensorVec> cache_;
};

struct CosetReport {
    std::vector<IdentityReport> relations;
    bool level_found = false;
    Scalar level;      // central scalar measured in [E(1), F(-1)] - H(0) on the ground state
    Scalar sugawara_c;  // central charge read off from the omega_sl2 modes
    std::string residual;  // omega identity residual, empty when it vanishes
    bool ok() const;
};

/// Affine sl2 relations (with level invariance) on all window states, mode indices |n| <= max_index.
CosetReport verify_affine_relations(CosetAKS& coset, Half cutoff, int window, int max_index = 2);
/// rho commutes with E, F, H; rho is a Heisenberg field; omega_sl2 is Virasoro with c = 3m/(m+2)
/// and makes the currents primary of weight one; and the state identity
/// omega_sl2 + omega_rho = omega_total in the vacuum algebra.
CosetReport verify_rho_and_virasoro(CosetAKS& coset, Half cutoff, int window, int max_index = 2);

/// omega_sl2 + omega_rho - omega_total in L_ns2(c_m,0,0) (x) V_L, where omega_rho is the
/// Liouville element under a(n) = i R(n). Zero iff the identity holds.
TensorVec omega_identity_residual(int m, Cocycle cocycle = Cocycle::sign);
/// omega_sl2 - rho(-1)^2 rho / 2 - omega_ns2 - (-alpha(-1)^2/2): the quadratic part of the identity.
TensorVec omega_quadratic_residual(int m, Cocycle cocycle = Cocycle::sign);

struct AffineHighestWeight {
    int k = 0;           // H(0) eigenvalue
    Scalar s;            // R(0) eigenvalue, raw
    Scalar weight;       // L_sl2(0) eigenvalue
    Scalar charge;       // N=2 U(1) charge
    TensorGrade grade;
    TensorVec vector;
};

struct Decomposition {
    std::vector<AffineHighestWeight> highest_weights;
    IdentityReport k_range{"k in {0..m}", 0, {}, 0};
    IdentityReport completeness{"completeness", 0, {}, 0};
    long certified_grades = 0;
    long skipped_grades = 0;  // grades whose possible highest-weight sources leave the window
    bool ok() const { return k_range.ok() && completeness.ok(); }
};

/// Vectors annihilated by E(n >= 0), F(n >= 1), H(n >= 1), R(n >= 1), and the certificate that
/// lowering modes applied to them span every grade whose sources lie in the window.
Decomposition find_affine_hw(CosetAKS& coset, Half cutoff, int window);

}  // namespace nsvoa
