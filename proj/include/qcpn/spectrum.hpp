#pragma once
// Eigenvalue-sequence engine for the Dolbeault Laplacian and Dirac operator:
// the order-one eigenvalue formula, multiplicities via branching, solidity
// classification, limit-point analysis, compact-resolvent verdicts, and
// assembled spectrum tables (CSV/JSON).

#include "qcpn/calculus.hpp"
#include "qcpn/repr.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace qcpn {

// ---- the eigenvalue formula --------------------------------------------------

// exact in Q(q): mu_l = (A (l)_lambda + 1)(B (l)_{lambda^{-1}} + 1) mu0
inline QRational eigenvalue(long l, const QRational& A, const QRational& B,
                            const QRational& lambda, const QRational& mu0) {
    if (lambda.is_zero()) throw std::invalid_argument("eigenvalue: lambda must be nonzero");
    if (l < 0) throw std::invalid_argument("eigenvalue: negative index");
    QRational li = qint(static_cast<unsigned>(l), lambda);
    QRational lii = qint(static_cast<unsigned>(l), QRational(1) / lambda);
    return (A * li + QRational(1)) * (B * lii + QRational(1)) * mu0;
}

// numeric quantum integer (m)_lam = 1 + lam + ... + lam^{m-1}
inline Rat qint_num(long m, const Rat& lam) {
    if (m < 0) throw std::invalid_argument("qint_num: negative index");
    Rat acc = 0, pw = 1;
    for (long i = 0; i < m; ++i) {
        acc += pw;
        pw *= lam;
    }
    return acc;
}

inline Rat eigenvalue_num(long l, const Rat& A, const Rat& B, const Rat& lam, const Rat& mu0) {
    if (lam == 0) throw std::invalid_argument("eigenvalue_num: lambda must be nonzero");
    return (A * qint_num(l, lam) + 1) * (B * qint_num(l, Rat(1) / lam) + 1) * mu0;
}

// ---- multiplicities ----------------------------------------------------------

// Dimension of the (k, l, family) block of Omega^{(0,k)}.
inline long multiplicity(int n, int k, int l, Family family) {
    if (l < 0) throw std::invalid_argument("multiplicity: negative l");
    for (const auto& w : omega_weights(n, k, l))
        if (w.family == family && w.l == (family == Family::harmonic ? 0 : l))
            return weyl_dim(w.weight);
    throw std::invalid_argument("multiplicity: invalid family for (k,l)");
}

// ---- solidity ----------------------------------------------------------------

enum class Solidity { solid0, solid_plus, solid_minus, not_solid, undecided };

inline const char* solidity_name(Solidity s) {
    switch (s) {
        case Solidity::solid0: return "solid0";
        case Solidity::solid_plus: return "solid+";
        case Solidity::solid_minus: return "solid-";
        case Solidity::not_solid: return "not-solid";
        case Solidity::undecided: return "undecided";
    }
    return "?";
}

// a_flags = (A != 0, A != lambda - 1) as tri-states from the calculus module.
// Conditions: solid0 (lambda = 1): A != 0 or B != 0; solid+ (lambda > 1):
// A != 0 and B != lambda^{-1} - 1; solid- (0 < lambda < 1): A != lambda - 1
// and B != 0.  The B-condition for solid+ follows the limit computation, not
// the printed inequality (see verdict notes).
inline Solidity solidity_verdict(const Rat& lambda, std::pair<TriState, TriState> a_flags,
                                 const Rat& B) {
    if (lambda <= 0) throw std::invalid_argument("solidity_verdict: lambda must be positive");
    if (lambda == 1) {
        if (B != 0) return Solidity::solid0;
        if (a_flags.first == TriState::nonzero) return Solidity::solid0;
        if (a_flags.first == TriState::zero) return Solidity::not_solid;
        return Solidity::undecided;
    }
    if (lambda > 1) {
        if (B == Rat(1) / lambda - 1) return Solidity::not_solid;
        if (a_flags.first == TriState::nonzero) return Solidity::solid_plus;
        if (a_flags.first == TriState::zero) return Solidity::not_solid;
        return Solidity::undecided;
    }
    // 0 < lambda < 1
    if (B == 0) return Solidity::not_solid;
    if (a_flags.second == TriState::nonzero) return Solidity::solid_minus;
    if (a_flags.second == TriState::zero) return Solidity::not_solid;
    return Solidity::undecided;
}

// Finite limit of the eigenvalue sequence for lambda > 1 in the degenerate
// regimes; nullopt when the sequence diverges.
inline std::optional<Rat> limit_point(const Rat& lambda, const Rat& A, const Rat& B) {
    if (lambda <= 1) throw std::invalid_argument("limit_point: lambda must exceed 1");
    Rat linv = Rat(1) / lambda;
    if (A == 0) return Rat(1) + B / (Rat(1) - linv);
    if (B == linv - 1) return A / (linv - 1);
    return std::nullopt;
}

// ---- compact resolvent verdict -------------------------------------------------

enum class Verdict { positive, negative, undecided };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::positive: return "positive";
        case Verdict::negative: return "negative";
        case Verdict::undecided: return "undecided";
    }
    return "?";
}

struct VerdictReport {
    int n = 2;
    Rat q0;
    Rat lambda_val;
    std::vector<Rat> B_vals;
    std::vector<Solidity> per_rung;
    Verdict overall = Verdict::undecided;
    std::vector<Rat> limit_points;  // finite limits exhibited on negative rungs
    std::string harmonic;
    int euler_characteristic = 1;  // from H^(0,0) = C, H^(0,m) = 0
    int index = 1;                 // Fredholm index of the associated operator
    std::vector<std::string> notes;
};

inline VerdictReport compact_resolvent_verdict(const LadderData& d, const Rat& q0) {
    if (q0 <= 0) throw std::invalid_argument("compact_resolvent_verdict: q0 must be positive");
    if (q0 == 1) throw std::invalid_argument("compact_resolvent_verdict: q0 = 1 is classical");
    VerdictReport rep;
    rep.n = d.n;
    rep.q0 = q0;
    rep.lambda_val = d.lambda.eval(q0);
    rep.harmonic = d.harmonic;
    rep.notes.push_back(
        "solid+ uses B != lambda^{-1} - 1 (limit computation); the printed "
        "inequality B != lambda - 1 disagrees and is not used");
    rep.notes.push_back(
        "A statuses are symbolic facts (A != 0, A != lambda - 1 as functions of "
        "q) applied at the chosen parameter value");
    bool any_undecided = false, all_solid = true;
    for (size_t k = 0; k < d.B.size(); ++k) {
        Rat bval = d.B[k].eval(q0);
        rep.B_vals.push_back(bval);
        Solidity s = solidity_verdict(rep.lambda_val, d.A[k], bval);
        rep.per_rung.push_back(s);
        if (s == Solidity::undecided) any_undecided = true;
        if (s == Solidity::not_solid) {
            all_solid = false;
            if (rep.lambda_val > 1) {
                Rat a_num = d.A[k].first == TriState::zero ? Rat(0) : Rat(1);
                if (auto lp = limit_point(rep.lambda_val, a_num, bval)) rep.limit_points.push_back(*lp);
            }
        }
    }
    // positive verdict = every rung solid and the harmonic spaces finite
    // (the ladder records H^(0,0) = C and vanishing above)
    if (any_undecided)
        rep.overall = Verdict::undecided;
    else
        rep.overall = all_solid ? Verdict::positive : Verdict::negative;
    return rep;
}

// ---- spectrum tables -----------------------------------------------------------

struct SpectrumRow {
    int k = 0;
    int l = 0;
    Family family = Family::harmonic;
    Rat eigenvalue;
    long multiplicity = 1;
};

struct SpectrumTable {
    int n = 2;
    Rat q0;
    std::vector<SpectrumRow> rows;
    std::string note = "A_k and mu_k are synthetic overrides, not derived values";
};

struct SpectrumOverrides {
    std::vector<Rat> A;   // per rung k = 0..n-2, positive
    std::vector<Rat> mu;  // base eigenvalues per rung, positive
};

inline SpectrumTable assemble_spectrum(int n, const Rat& q0, int l_max, const LadderData& d,
                                       const SpectrumOverrides& ov) {
    if (n < 2 || d.n != n) throw std::invalid_argument("assemble_spectrum: rank mismatch");
    if (ov.A.size() != static_cast<size_t>(n - 1) || ov.mu.size() != static_cast<size_t>(n - 1))
        throw std::invalid_argument("assemble_spectrum: overrides must cover k = 0..n-2");
    for (const Rat& v : ov.A)
        if (v <= 0) throw std::invalid_argument("assemble_spectrum: overrides must be positive");
    for (const Rat& v : ov.mu)
        if (v <= 0) throw std::invalid_argument("assemble_spectrum: overrides must be positive");
    Rat lam = d.lambda.eval(q0);
    SpectrumTable t;
    t.n = n;
    t.q0 = q0;
    auto rung_eig = [&](int k, int l) {
        Rat B = d.B[static_cast<size_t>(k)].eval(q0);
        return eigenvalue_num(l, ov.A[static_cast<size_t>(k)], B, lam,
                              ov.mu[static_cast<size_t>(k)]);
    };
    t.rows.push_back({0, 0, Family::harmonic, Rat(0), 1});
    for (int k = 0; k <= n - 1; ++k)
        for (int l = 0; l <= l_max; ++l) {
            // coexact block of degree k is the rung-k sequence
            if (k <= n - 2)
                t.rows.push_back(
                    {k, l, Family::coexact, rung_eig(k, l), multiplicity(n, k, l, Family::coexact)});
            // exact block of degree k shares the eigenvalue of the coexact
            // block one degree below (the two are isomorphic comodules)
            if (k >= 1)
                t.rows.push_back(
                    {k, l, Family::exact, rung_eig(k - 1, l), multiplicity(n, k, l, Family::exact)});
        }
    return t;
}

struct DiracRow {
    int k = 0;
    int l = 0;
    double value = 0;
    long multiplicity = 1;
};

// Signed square roots of the Laplacian spectrum: each coexact eigenvalue mu
// with multiplicity d contributes +sqrt(mu) and -sqrt(mu), d each; the kernel
// row survives with multiplicity 1.
inline std::vector<DiracRow> dirac_spectrum(const SpectrumTable& t) {
    std::vector<DiracRow> out;
    for (const auto& r : t.rows) {
        if (r.family == Family::harmonic) {
            out.push_back({r.k, r.l, 0.0, r.multiplicity});
        } else if (r.family == Family::coexact) {
            double s = std::sqrt(r.eigenvalue.get_d());
            out.push_back({r.k, r.l, s, r.multiplicity});
            out.push_back({r.k, r.l, -s, r.multiplicity});
        }
    }
    return out;
}

inline std::string spectrum_csv(const SpectrumTable& t) {
    std::ostringstream os;
    os << "k,l,family,eigenvalue,multiplicity\n";
    for (const auto& r : t.rows)
        os << r.k << "," << r.l << "," << family_name(r.family) << ","
           << r.eigenvalue.get_str() << "," << r.multiplicity << "\n";
    return os.str();
}

inline std::string spectrum_json(const SpectrumTable& t) {
    std::ostringstream os;
    os << "{\"n\":" << t.n << ",\"q0\":\"" << t.q0.get_str() << "\",\"note\":\"" << t.note
       << "\",\"rows\":[";
    bool first = true;
    for (const auto& r : t.rows) {
        if (!first) os << ",";
        first = false;
        os << "{\"k\":" << r.k << ",\"l\":" << r.l << ",\"family\":\"" << family_name(r.family)
           << "\",\"eigenvalue\":\"" << r.eigenvalue.get_str() << "\",\"multiplicity\":"
           << r.multiplicity << "}";
    }
    os << "]}";
    return os.str();
}

}  // namespace qcpn
