#include <catch2/catch_amalgamated.hpp>

#include "qcpn/spectrum.hpp"

using namespace qcpn;

TEST_CASE("eigenvalue formula basics") {
    // l = 0 collapses to the base eigenvalue
    CHECK(eigenvalue(0, QRational(7), QRational(5), QRational::q_power(2), QRational(3)) ==
          QRational(3));
    // numeric worked example: lambda=4, A=1, B=4/5, mu0=1, l=2 -> 12
    CHECK(eigenvalue_num(2, Rat(1), Rat(4, 5), Rat(4), Rat(1)) == Rat(12));
    // lambda = 1 degenerates to (A l + 1)(B l + 1) mu0
    for (long l = 0; l <= 6; ++l)
        CHECK(eigenvalue_num(l, Rat(2), Rat(3), Rat(1), Rat(5)) ==
              Rat(2 * l + 1) * Rat(3 * l + 1) * 5);
    CHECK_THROWS(eigenvalue(1, QRational(1), QRational(1), QRational(0), QRational(1)));
    CHECK_THROWS(eigenvalue_num(2, Rat(1), Rat(1), Rat(0), Rat(1)));
}

TEST_CASE("one-form ladder specialization") {
    // with B = lambda^{-1} the second factor becomes (l+1)_{lambda^{-1}}
    QRational lam = QRational::q_power(2);
    QRational linv = QRational(1) / lam;
    QRational A = QRational::q_power(3) + QRational(1);
    QRational mu = QRational(2);
    for (long l = 0; l <= 6; ++l) {
        QRational lhs = eigenvalue(l, A, linv, lam, mu);
        QRational rhs = (A * qint(static_cast<unsigned>(l), lam) + QRational(1)) *
                        qint(static_cast<unsigned>(l + 1), linv) * mu;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("multiplicities from branching") {
    // n=2, k=0 coexact: weight 2(l+1)w1 has sl_2 dimension 2l+3
    for (int l = 0; l <= 5; ++l) CHECK(multiplicity(2, 0, l, Family::coexact) == 2 * l + 3);
    CHECK(multiplicity(3, 0, 4, Family::harmonic) == 1);
    CHECK(multiplicity(3, 1, 0, Family::coexact) == 10);  // weyl_dim(3 w1) in sl_3
    CHECK(multiplicity(3, 1, 0, Family::exact) == 8);     // weyl_dim(w1 + w2), adjoint
    CHECK_THROWS(multiplicity(3, 0, 2, Family::exact));      // no exact family at k = 0
    CHECK_THROWS(multiplicity(3, 1, 2, Family::harmonic));   // harmonic only at k = 0
    CHECK_THROWS(multiplicity(3, 2, 1, Family::coexact));    // no coexact at top degree
}

TEST_CASE("solidity classification") {
    auto both = std::pair<TriState, TriState>{TriState::nonzero, TriState::nonzero};
    auto none = std::pair<TriState, TriState>{TriState::zero, TriState::zero};
    auto undec = std::pair<TriState, TriState>{TriState::undecided, TriState::undecided};
    CHECK(solidity_verdict(Rat(4), both, Rat(4, 5)) == Solidity::solid_plus);
    CHECK(solidity_verdict(Rat(1), none, Rat(0)) == Solidity::not_solid);
    CHECK(solidity_verdict(Rat(1), none, Rat(2)) == Solidity::solid0);
    CHECK(solidity_verdict(Rat(1), both, Rat(0)) == Solidity::solid0);
    CHECK(solidity_verdict(Rat(1, 4), none, Rat(1)) == Solidity::not_solid);  // A = lambda - 1
    CHECK(solidity_verdict(Rat(1, 4), both, Rat(1)) == Solidity::solid_minus);
    CHECK(solidity_verdict(Rat(1, 4), both, Rat(0)) == Solidity::not_solid);
    // degenerate B on the solid+ branch: B = lambda^{-1} - 1
    CHECK(solidity_verdict(Rat(4), both, Rat(-3, 4)) == Solidity::not_solid);
    CHECK(solidity_verdict(Rat(4), undec, Rat(4, 5)) == Solidity::undecided);
    CHECK_THROWS(solidity_verdict(Rat(-1), both, Rat(1)));
    CHECK(std::string(solidity_name(Solidity::solid_minus)) == "solid-");
}

TEST_CASE("limit points") {
    CHECK(*limit_point(Rat(4), Rat(0), Rat(4, 5)) == Rat(31, 15));
    CHECK(*limit_point(Rat(4), Rat(0), Rat(0)) == Rat(1));
    CHECK(*limit_point(Rat(4), Rat(2), Rat(-3, 4)) == Rat(-8, 3));
    CHECK_FALSE(limit_point(Rat(4), Rat(2), Rat(1)).has_value());
    CHECK_THROWS(limit_point(Rat(1), Rat(0), Rat(0)));
    // the A = 0 sequence actually converges to the stated limit
    Rat lp = *limit_point(Rat(36, 25), Rat(0), Rat(1, 2));
    Rat mu = eigenvalue_num(200, Rat(0), Rat(1, 2), Rat(36, 25), Rat(1));
    Rat err = mu - lp;
    if (err < 0) err = -err;
    CHECK(err < Rat(1, 1000000000));
}

TEST_CASE("growth and sign-alternation properties") {
    // lambda > 1, A, B > 0: strictly increasing and unbounded
    Rat lam(121, 100), A(1), B(1, 2), mu0(3);
    Rat prev = eigenvalue_num(0, A, B, lam, mu0);
    for (long l = 1; l <= 1000; ++l) {
        Rat cur = eigenvalue_num(l, A, B, lam, mu0);
        REQUIRE(cur > prev);
        prev = cur;
    }
    CHECK(prev > Rat(1000000) * mu0);
    // lambda in (-1,0) with A != 0 and the one-form B = lambda^{-1} goes
    // negative somewhere below l = 50
    Rat bad(-1, 2);
    bool negative = false;
    for (long l = 0; l <= 50 && !negative; ++l)
        negative = eigenvalue_num(l, Rat(1), Rat(1) / bad, bad, Rat(1)) < 0;
    CHECK(negative);
}

TEST_CASE("compact resolvent verdicts") {
    for (int n : {2, 3}) {
        const CrossTable& T = derive_cross_table(n).table;
        LadderData d = ladder(n, T);
        for (const Rat& q0 : {Rat(4, 5), Rat(11, 10), Rat(2)}) {
            VerdictReport rep = compact_resolvent_verdict(d, q0);
            INFO("n=" << n << " q0=" << q0.get_str());
            CHECK(rep.overall == Verdict::positive);
            CHECK(rep.per_rung.size() == static_cast<size_t>(n - 1));
            for (Solidity s : rep.per_rung)
                CHECK((s == Solidity::solid_plus || s == Solidity::solid_minus));
            CHECK(rep.harmonic == "H^(0,0) = C*1; H^(0,m) = 0 for m >= 1");
            CHECK(rep.euler_characteristic == 1);
            CHECK(rep.index == 1);
            REQUIRE_FALSE(rep.notes.empty());
            CHECK(rep.notes.front().find("lambda^{-1} - 1") != std::string::npos);
        }
        CHECK_THROWS(compact_resolvent_verdict(d, Rat(1)));
        CHECK_THROWS(compact_resolvent_verdict(d, Rat(-2)));
    }
}

TEST_CASE("synthetic ladder with vanishing A is negative") {
    const CrossTable& T = derive_cross_table(2).table;
    LadderData d = ladder(2, T);
    d.A[0] = {TriState::zero, TriState::zero};
    VerdictReport rep = compact_resolvent_verdict(d, Rat(2));
    CHECK(rep.overall == Verdict::negative);
    REQUIRE(rep.limit_points.size() == 1);
    // lambda = 4, B = q^-2 (1)^{-1} at q = 2 gives 1/4; limit 1 + (1/4)/(3/4)
    CHECK(rep.limit_points[0] == Rat(4, 3));
    d.A[0] = {TriState::undecided, TriState::undecided};
    CHECK(compact_resolvent_verdict(d, Rat(2)).overall == Verdict::undecided);
}

TEST_CASE("assembled spectrum table") {
    int n = 3;
    const CrossTable& T = derive_cross_table(n).table;
    LadderData d = ladder(n, T);
    SpectrumOverrides ov{{Rat(1), Rat(2)}, {Rat(1), Rat(3, 2)}};
    SpectrumTable t = assemble_spectrum(n, Rat(11, 10), 3, d, ov);
    // harmonic row: eigenvalue 0, multiplicity 1
    REQUIRE_FALSE(t.rows.empty());
    CHECK(t.rows.front().family == Family::harmonic);
    CHECK(t.rows.front().eigenvalue == 0);
    CHECK(t.rows.front().multiplicity == 1);
    CHECK(t.note.find("not derived values") != std::string::npos);
    // exact rows at degree k pair with coexact rows at degree k-1: equal
    // eigenvalue and equal dimension (multiplicity doubling)
    for (const auto& r : t.rows) {
        if (r.family != Family::exact) continue;
        bool matched = false;
        for (const auto& s : t.rows)
            if (s.family == Family::coexact && s.k == r.k - 1 && s.l == r.l) {
                CHECK(s.eigenvalue == r.eigenvalue);
                CHECK(s.multiplicity == r.multiplicity);
                matched = true;
            }
        CHECK(matched);
    }
    // nonpositive overrides rejected
    SpectrumOverrides bad{{Rat(0), Rat(2)}, {Rat(1), Rat(1)}};
    CHECK_THROWS(assemble_spectrum(n, Rat(11, 10), 3, d, bad));
    SpectrumOverrides wrong{{Rat(1)}, {Rat(1)}};
    CHECK_THROWS(assemble_spectrum(n, Rat(11, 10), 3, d, wrong));
}

TEST_CASE("monotone eigenvalues in the assembled table") {
    int n = 2;
    const CrossTable& T = derive_cross_table(n).table;
    LadderData d = ladder(n, T);
    SpectrumOverrides ov{{Rat(1)}, {Rat(1)}};
    SpectrumTable t = assemble_spectrum(n, Rat(11, 10), 200, d, ov);
    Rat prev(-1);
    for (const auto& r : t.rows) {
        if (r.family != Family::coexact || r.k != 0) continue;
        CHECK(r.eigenvalue > prev);
        prev = r.eigenvalue;
    }
}

TEST_CASE("dirac spectrum is the signed square root") {
    int n = 2;
    const CrossTable& T = derive_cross_table(n).table;
    LadderData d = ladder(n, T);
    SpectrumOverrides ov{{Rat(1)}, {Rat(1)}};
    SpectrumTable t = assemble_spectrum(n, Rat(2), 2, d, ov);
    auto dt = dirac_spectrum(t);
    // one zero row plus a +/- pair per coexact row
    long coexact = 0;
    for (const auto& r : t.rows)
        if (r.family == Family::coexact) ++coexact;
    CHECK(dt.size() == 1 + 2 * static_cast<size_t>(coexact));
    CHECK(dt.front().value == 0.0);
    CHECK(dt.front().multiplicity == 1);
    for (size_t i = 1; i + 1 < dt.size(); i += 2) {
        CHECK(dt[i].value == Catch::Approx(-dt[i + 1].value));
        CHECK(dt[i].multiplicity == dt[i + 1].multiplicity);
        CHECK(dt[i].value * dt[i].value ==
              Catch::Approx(dt[i].value * dt[i].value).epsilon(1e-12));
    }
}

TEST_CASE("csv and json emission") {
    int n = 2;
    const CrossTable& T = derive_cross_table(n).table;
    LadderData d = ladder(n, T);
    SpectrumOverrides ov{{Rat(1)}, {Rat(1)}};
    SpectrumTable t = assemble_spectrum(n, Rat(2), 1, d, ov);
    std::string csv = spectrum_csv(t);
    CHECK(csv.rfind("k,l,family,eigenvalue,multiplicity\n", 0) == 0);
    CHECK(csv.find("0,0,harmonic,0,1") != std::string::npos);
    std::string json = spectrum_json(t);
    CHECK(json.find("\"rows\":[") != std::string::npos);
    // determinism: identical inputs give byte-identical output
    CHECK(csv == spectrum_csv(assemble_spectrum(n, Rat(2), 1, d, ov)));
    CHECK(json == spectrum_json(assemble_spectrum(n, Rat(2), 1, d, ov)));
}
