#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "nsvoa/cli.hpp"
#include "nsvoa/coset.hpp"
#include "nsvoa/lattice.hpp"
#include "nsvoa/linalg.hpp"
#include "nsvoa/minimal.hpp"
#include "nsvoa/oddvar.hpp"
#include "nsvoa/superalg.hpp"
#include "nsvoa/verma.hpp"

using namespace nsvoa;

namespace {

Half h2(int twice) { return Half::from_twice(twice); }
Scalar q(long long n, long long d = 1) { return Scalar(Rational(n, d)); }

// Outcome of one criterion: failures are short descriptions, empty means pass.
struct Outcome {
    long checked = 0;
    std::vector<std::string> failures;
    void expect(bool cond, const std::string& what) {
        ++checked;
        if (!cond) failures.push_back(what);
    }
    void absorb(const IdentityReport& r) {
        checked += r.checked;
        if (!r.ok())
            failures.push_back(r.name + " (" + std::to_string(r.failure_count) + " failures" +
                               (r.failures.empty() ? "" : ", first: " + r.failures.front()) + ")");
    }
};

Outcome superalgebra_soundness() {
    Outcome o;
    IdentityReport skew = check_skew_symmetry(Algebra::ns2, Half(3));
    skew.name = "skew-symmetry";
    o.absorb(skew);
    IdentityReport jac = check_jacobi(Algebra::ns2, Half(3));
    jac.name = "Jacobi";
    o.absorb(jac);
    o.expect(jac.checked == 27 * 27 * 27, "Jacobi did not cover every triple");
    return o;
}

// Coefficients of prod (1+z t^{n-1/2})(1+z^-1 t^{n-1/2}) / (1-t^n)^2 by (2*level, charge).
std::map<std::pair<int, int>, long long> generating_function(int max_twice) {
    std::map<std::pair<int, int>, long long> f{{{0, 0}, 1}};
    auto multiply = [&](int w, int e, bool fermion) {
        std::map<std::pair<int, int>, long long> g;
        for (const auto& [k, c] : f)
            for (int mult = 0;; ++mult) {
                const int t = k.first + mult * w;
                if (t > max_twice || (fermion && mult > 1)) break;
                g[{t, k.second + mult * e}] += c;
            }
        f = g;
    };
    for (int t = 1; t <= max_twice; t += 2) {
        multiply(t, 1, true);
        multiply(t, -1, true);
    }
    for (int n = 2; n <= max_twice; n += 2) {
        multiply(n, 0, false);
        multiply(n, 0, false);
    }
    return f;
}

Outcome verma_combinatorics() {
    Outcome o;
    const auto f = generating_function(8);
    for (int t = 0; t <= 8; ++t)
        for (int e = -5; e <= 5; ++e) {
            const auto it = f.find({t, e});
            const long long expect = it == f.end() ? 0 : it->second;
            const long long got = static_cast<long long>(enumerate_basis(h2(t), e).size());
            o.expect(got == expect, "count at level " + h2(t).str() + " charge " + std::to_string(e) + ": " +
                                        std::to_string(got) + " vs " + std::to_string(expect));
        }
    o.expect(enumerate_basis(Half(1), 0).size() == 3, "level-1 charge-0 count is not 3");
    return o;
}

Outcome gram_contravariance() {
    Outcome o;
    Ns2Module M({q(5, 3), q(1, 7), q(-2, 9)}, ModuleKind::verma);
    const auto modes = generators(Algebra::ns2, h2(5));
    for (int t = 0; t <= 5; ++t)
        for (int e = -max_charge(h2(t)); e <= max_charge(h2(t)); ++e)
            for (const auto& u : M.verma_basis(h2(t), e))
                for (const auto& x : modes) {
                    if (x.is_central()) continue;
                    const StateVector xu = M.apply(x, unit_vector(u));
                    if (xu.empty()) continue;
                    const Grade target = grade_of(xu);
                    if (target.first > h2(5)) continue;
                    for (const auto& v : M.verma_basis(target.first, target.second)) {
                        const StateVector wv = M.apply(anti_involution(x), unit_vector(v));
                        o.expect(M.form(xu, unit_vector(v)) == M.form(unit_vector(u), wv),
                                 "contravariance for " + monomial_str(u) + ", " + monomial_str(v));
                    }
                }
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 13);
    for (int t = 0; t < 20; ++t) {
        const Scalar h = q(num(rng), den(rng)), qq = q(num(rng), den(rng)), c = q(num(rng), den(rng));
        Ns2Module V({c, h, qq}, ModuleKind::verma);
        o.expect(V.gram(h2(1), 1)[0][0] == q(2) * h - qq, "level-1/2 charge +1 entry");
        o.expect(V.gram(h2(1), -1)[0][0] == q(2) * h + qq, "level-1/2 charge -1 entry");
    }
    return o;
}

Outcome unitary_spectrum() {
    Outcome o;
    for (int m = 1; m <= 3; ++m) {
        const auto labels = spectrum(m);
        o.expect(labels.size() == static_cast<std::size_t>((m + 1) * (m + 2) / 2),
                 "spectrum size at m = " + std::to_string(m));
        for (const auto& l : labels) {
            Ns2Module M(l.params(), ModuleKind::verma);
            for (int t = 0; t <= 4; ++t)
                for (int e = -max_charge(h2(t)); e <= max_charge(h2(t)); ++e) {
                    const Mat& g = M.gram(h2(t), e);
                    if (!g.empty()) o.expect(is_psd(g), "Gram not PSD for " + l.str() + " at level " + h2(t).str());
                }
            const Chirality c = classify_chirality(l);
            const bool chiral = c == Chirality::chiral || c == Chirality::both;
            const bool anti = c == Chirality::anti_chiral || c == Chirality::both;
            o.expect(chiral == (l.k == h2(1)), "chirality of " + l.str());
            o.expect(anti == (l.j == h2(1)), "anti-chirality of " + l.str());
        }
    }
    return o;
}

// Evaluates every clause as stated, including bound 0 off (m+2)(q3-q1-q2) in {-1,0,1}.
Outcome fusion_bounds() {
    Outcome o;
    long literal_violations = 0;
    std::string first;
    for (int m : {2, 3}) {
        const auto s = spectrum(m);
        const Scalar width(Rational(m + 2));
        for (const auto& a : s)
            for (const auto& b : s)
                for (const auto& c : s) {
                    const int bound = fusion_upper_bound(a, b, c);
                    const Scalar d = width * (c.q() - a.q() - b.q());
                    const std::string triple = "m=" + std::to_string(m) + " " + a.str() + " " + b.str() + " " + c.str();
                    const Chirality ch = classify_chirality(a);
                    const bool reduced = ch != Chirality::neither;
                    if (d == q(0)) {
                        o.expect(bound <= (reduced ? 1 : 2), "bound on the zero shift for " + triple);
                    } else if (d == q(1) || d == q(-1)) {
                        o.expect(bound <= 1, "bound on a unit shift for " + triple);
                    } else {
                        // q3 = q1 + q2 +- 1 carries bound 1 under the charge argument
                        const bool unit_charge = d == width || d == -width;
                        if (unit_charge) {
                            ++o.checked;
                            if (bound != 0 && literal_violations++ == 0)
                                first = triple + " has bound " + std::to_string(bound);
                        } else {
                            o.expect(bound == 0, "nonzero bound off every window for " + triple);
                        }
                    }
                }
    }
    if (literal_violations > 0)
        o.failures.push_back("bound 0 off the unit window fails on " + std::to_string(literal_violations) +
                             " triples where q3 = q1 + q2 +- 1, first: " + first);
    return o;
}

Outcome free_field_central_charges() {
    Outcome o;
    LatticeVOA V;
    std::vector<FockState> states;
    for (const auto& st : LatticeVOA::basis(3, 3))
        if (V.grade_of(fock_unit(st)).weight.rational() <= Rational(3)) states.push_back(st);
    auto L = [&](int n, const FockVector& v) { return V.virasoro(n, v); };
    o.expect(probe_central_charge(L) == q(4), "V_L central charge");
    IdentityReport rl = check_virasoro(L, q(4), states, 3);
    rl.name = "V_L Virasoro relations";
    o.absorb(rl);
    HeisenbergFock M(q(0));
    auto Lm = [&](int n, const FockVector& v) { return M.virasoro(n, v); };
    o.expect(probe_central_charge(Lm) == q(4), "M(1,0) central charge");
    IdentityReport rm = check_virasoro(Lm, q(4), LatticeVOA::basis(3, 0), 3);
    rm.name = "M(1,0) Virasoro relations";
    o.absorb(rm);
    return o;
}

Outcome anti_kazama_suzuki() {
    Outcome o;
    CosetAKS cs(make_label(1, h2(1), h2(1)));
    const CosetReport aff = verify_affine_relations(cs, h2(5), 2);
    o.expect(aff.level_found && aff.level == q(1), "measured level is not 1");
    for (const auto& r : aff.relations) o.absorb(r);
    const CosetReport rho = verify_rho_and_virasoro(cs, h2(5), 2);
    o.expect(rho.sugawara_c == q(1), "Sugawara central charge is not 1");
    for (const auto& r : rho.relations) o.absorb(r);
    return o;
}

Outcome decomposition_witness() {
    Outcome o;
    CosetAKS cs(make_label(1, h2(1), h2(1)));
    const Decomposition d = find_affine_hw(cs, h2(5), 2);
    o.absorb(d.k_range);
    o.absorb(d.completeness);
    for (const auto& h : d.highest_weights) o.expect(h.k == 0 || h.k == 1, "k = " + std::to_string(h.k));
    o.expect(d.certified_grades > 0, "no grade certified");
    o.expect(!d.highest_weights.empty(), "no highest-weight vector");
    return o;
}

Outcome odd_variable_calculus() {
    Outcome o;
    for (const Scalar& c : {q(1), q(3, 2)}) {
        VacuumVOA voa(c, h2(7));
        const OddReport rep = check_odd_vertex_operators(voa, Half(2));
        for (const auto& r : rep.relations) o.absorb(r);
    }
    return o;
}

Outcome cli_determinism() {
    Outcome o;
    const std::vector<std::vector<std::string>> commands = {
        {"spectrum", "--m", "3"},
        {"spectrum", "--m", "2", "--format", "csv"},
        {"gram", "--m", "1", "--level", "3/2", "--charge", "1"},
        {"singular", "--m", "2", "--level", "1", "--charge", "0"},
        {"singular", "--m", "2", "--level", "1", "--charge", "0", "--radical", "--format", "csv"},
        {"character", "--m", "2", "--cutoff", "2"},
        {"fusion-bound", "--m", "3", "--labels", "(1/2,1/2);(3/2,1/2);(3/2,1/2)"},
        {"chirality", "--m", "3", "--label", "1/2,5/2"},
        {"coset", "verify", "--m", "1", "--cutoff", "1", "--window", "1"},
        {"coset", "decompose", "--m", "1", "--cutoff", "1", "--window", "1"},
        {"oddvar", "check", "--m", "2", "--cutoff", "2"},
    };
    const auto dir = std::filesystem::temp_directory_path() / ("nsvoa-acceptance-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    for (const auto& base : commands) {
        std::string name;
        for (const auto& a : base) name += (name.empty() ? "" : " ") + a;
        auto run = [](const std::vector<std::string>& args, int& code, std::string& err) {
            std::ostringstream out, e;
            code = run_command(args, out, e);
            err = e.str();
            return out.str();
        };
        int c1, c2, c3, c4;
        std::string e1, e2, e3, e4;
        const std::string a = run(base, c1, e1), b = run(base, c2, e2);
        auto cached = base;
        cached.insert(cached.end(), {"--cache-dir", dir.string()});
        const std::string cold = run(cached, c3, e3), warm = run(cached, c4, e4);
        o.expect(a == b && c1 == c2, "two plain runs differ: " + name);
        o.expect(cold == a && c3 == c1, "cache-cold run differs: " + name);
        o.expect(warm == a && c4 == c1, "cache-warm run differs: " + name);
        o.expect(e4.find("cache: hit") != std::string::npos, "warm run missed the cache: " + name);
    }
    std::filesystem::remove_all(dir);
    return o;
}

struct Criterion {
    int number;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "superalgebra skew-symmetry and Jacobi, |index| <= 3", 10, superalgebra_soundness},
        {2, "Verma basis counts to level 4", 10, verma_combinatorics},
        {3, "contravariance to level 5/2 and level-1/2 Gram entries", 30, gram_contravariance},
        {4, "unitary spectrum, PSD Gram to level 2, chirality", 300, unitary_spectrum},
        {5, "fusion bound table for m = 2, 3", 60, fusion_bounds},
        {6, "free-field central charge 4", 60, free_field_central_charges},
        {7, "anti-Kazama-Suzuki relations, m = 1, cutoff 5/2, |p| <= 2", 600, anti_kazama_suzuki},
        {8, "affine highest-weight decomposition, m = 1", 600, decomposition_witness},
        {9, "odd-variable calculus at c = 1, 3/2", 300, odd_variable_calculus},
        {10, "CLI determinism, cold and warm cache", 60, cli_determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) out.failures.push_back("runtime over the limit");
        const bool pass = out.failures.empty() && out.checked > 0;
        if (!pass) ++failed;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit_seconds);
        std::cout << "criterion " << c.number << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  ["
                  << out.checked << " checks, " << timing << "]\n";
        for (const auto& f : out.failures) std::cout << "    " << f << "\n";
        std::cout.flush();
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
