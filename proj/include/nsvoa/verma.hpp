#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsvoa/character.hpp"
#include "nsvoa/linalg.hpp"
#include "nsvoa/superalg.hpp"

namespace nsvoa {

struct VermaParams {
    Scalar c, h, q;
};

/// Product of negative ns2 modes in canonical order (ascending ModeSymbol),
/// read left to right as operators applied to the highest-weight vector.
using Monomial = std::vector<ModeSymbol>;

/// Basis order: shorter monomials first, then lexicographic in mode order.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};
/// Reverse basis order. Vectors are keyed this way so that echelon pivots
/// fall on the latest basis monomials and quotient representatives stay short.
struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return MonoLess{}(b, a); }
};

using StateVector = SparseVec<Monomial, MonoGreater>;
using Grade = std::pair<Half, int>;  // (level, relative charge)

Grade grade_of(const Monomial& mono);
/// Grade of a nonzero homogeneous vector; throws on inhomogeneous input.
Grade grade_of(const StateVector& v);
std::string monomial_str(const Monomial& mono);
StateVector unit_vector(const Monomial& mono);

/// The contravariant anti-involution: L_n -> L_-n, J_n -> J_-n, G+-_r -> G-+_-r.
ModeSymbol anti_involution(const ModeSymbol& x);

/// All negative ns2 modes of weight at most `level`, ascending.
std::vector<ModeSymbol> negative_modes(Half level);

/// PBW basis of the Verma module at one grade, in basis order.
std::vector<Monomial> enumerate_basis(Half level, int charge);
/// Largest |charge| that can occur at `level`.
int max_charge(Half level);

enum class ModuleKind { verma, vacuum_quotient, irreducible };
std::string module_kind_name(ModuleKind k);

/// Verma module M(c,h,q) or one of its quotients, computed grade by grade.
/// Quotients are represented on Verma monomials: every vector is kept in the
/// canonical form that has no component on a pivot of the submodule slice.
/// Caches are filled lazily; an instance is not safe for concurrent mutation.
class Ns2Module {
public:
    Ns2Module(VermaParams params, ModuleKind kind);

    const VermaParams& params() const { return params_; }
    ModuleKind kind() const { return kind_; }

    /// PBW basis of the Verma module (cached).
    const std::vector<Monomial>& verma_basis(Half level, int charge);
    /// Monomials that survive in the quotient, in basis order.
    std::vector<Monomial> basis(Half level, int charge);
    std::size_t dim(Half level, int charge);

    /// Module action of an ns2 mode, result in canonical form.
    StateVector apply(const ModeSymbol& x, const StateVector& v);
    /// Action in the Verma module itself (no reduction).
    StateVector apply_verma(const ModeSymbol& x, const StateVector& v);
    const StateVector& apply_verma(const ModeSymbol& x, const Monomial& mono);
    /// Applies the monomial's modes right to left to the highest-weight vector.
    StateVector create(const Monomial& mono);
    StateVector reduce(StateVector v);

    /// Shapovalov matrix on verma_basis(level, charge).
    const Mat& gram(Half level, int charge);
    /// Bilinear form on Verma vectors of a common grade.
    Scalar form(const StateVector& u, const StateVector& v);
    /// Kernel of the Gram matrix, as Verma vectors.
    std::vector<StateVector> radical_basis(Half level, int charge);
    /// Vectors annihilated by all positive modes of index at most `level`.
    std::vector<StateVector> singular_vectors(Half level, int charge);

    CharacterSeries character(Half cutoff);

private:
    const Echelon<Monomial, MonoGreater>& submodule(const Grade& g);
    std::size_t index_of(const Grade& g, const Monomial& mono);
    StateVector compute_apply(const ModeSymbol& x, const Monomial& mono);

    VermaParams params_;
    ModuleKind kind_;
    std::map<Grade, std::vector<Monomial>> basis_cache_;
    std::map<Grade, std::map<Monomial, std::size_t>> index_cache_;
    std::map<std::pair<ModeSymbol, Monomial>, StateVector> apply_cache_;
    std::map<Grade, Mat> gram_cache_;
    std::map<Grade, Echelon<Monomial, MonoGreater>> sub_cache_;
};

}  // namespace nsvoa
