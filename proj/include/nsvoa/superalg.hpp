#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsvoa/half.hpp"
#include "nsvoa/report.hpp"
#include "nsvoa/scalar.hpp"

namespace nsvoa {

enum class Algebra { ns2, virasoro, heisenberg, affine_sl2 };

// Declaration order doubles as the PBW order of kinds inside one monomial.
enum class Kind { J, L, Gp, Gm, C, a, d, E, F, H, K };

/// One generator mode, e.g. G+[-3/2]. Central kinds carry index 0.
struct ModeSymbol {
    Algebra algebra = Algebra::ns2;
    Kind kind = Kind::L;
    Half index;

    static ModeSymbol L(Half n) { return {Algebra::ns2, Kind::L, n}; }
    static ModeSymbol J(Half n) { return {Algebra::ns2, Kind::J, n}; }
    static ModeSymbol Gp(Half r) { return {Algebra::ns2, Kind::Gp, r}; }
    static ModeSymbol Gm(Half r) { return {Algebra::ns2, Kind::Gm, r}; }
    static ModeSymbol C() { return {Algebra::ns2, Kind::C, Half()}; }
    static ModeSymbol G(int sign, Half r) { return sign > 0 ? Gp(r) : Gm(r); }

    /// Validates index integrality and algebra/kind compatibility.
    ModeSymbol validated() const;

    bool is_central() const { return kind == Kind::C || kind == Kind::d || kind == Kind::K; }
    bool is_odd() const { return kind == Kind::Gp || kind == Kind::Gm; }
    int parity() const { return is_odd() ? 1 : 0; }

    std::string str() const;
    /// Inverse of str() for the given algebra.
    static ModeSymbol parse(const std::string& text, Algebra algebra = Algebra::ns2);

    auto operator<=>(const ModeSymbol&) const = default;
};

/// Finite linear combination of modes with Scalar coefficients.
class LinComb {
public:
    LinComb() = default;
    void add(const ModeSymbol& x, const Scalar& c);
    const std::map<ModeSymbol, Scalar>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Scalar coefficient(const ModeSymbol& x) const;
    LinComb& operator+=(const LinComb& o);
    LinComb scaled(const Scalar& c) const;
    bool operator==(const LinComb& o) const { return terms_ == o.terms_; }
    std::string str() const;

private:
    std::map<ModeSymbol, Scalar> terms_;
};

/// Super-bracket [x, y] = xy - (-1)^{|x||y|} yx.
LinComb bracket(const ModeSymbol& x, const ModeSymbol& y);

/// Bracket extended bilinearly to combinations (central symbols bracket to 0).
LinComb bracket(const LinComb& x, const LinComb& y);

struct Grading {
    Half weight;  // weight raised by the mode, i.e. -index
    int charge = 0;
    auto operator<=>(const Grading&) const = default;
};

/// Grading read off from the brackets with the zero-mode Cartan elements.
Grading grading(const ModeSymbol& x);

/// Noncentral generators with |index| <= max_abs, followed by the central ones.
std::vector<ModeSymbol> generators(Algebra algebra, Half max_abs);

/// [x,y] = -(-1)^{|x||y|}[y,x] over all generator pairs.
IdentityReport check_skew_symmetry(Algebra algebra, Half max_abs);
/// Graded Jacobi identity over all generator triples.
IdentityReport check_jacobi(Algebra algebra, Half max_abs);
/// Every table entry is homogeneous of the summed grading.
IdentityReport check_grading_additivity(Algebra algebra, Half max_abs);

}  // namespace nsvoa
