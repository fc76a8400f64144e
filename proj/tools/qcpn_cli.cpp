// Command-line surface: verification suites with machine-readable reports,
// branching/spectrum/dimension tables, and the ladder presentation.
//
// Data stream (stdout or --out) is deterministic for identical configs;
// progress and timing diagnostics go to stderr only.

#include <CLI11.hpp>
#include <json.hpp>

#include "qcpn/spectrum.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using namespace qcpn;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUndecided = 2;

struct Row {
    std::string suite, item, ref, status, witness;
};

struct Report {
    std::vector<Row> rows;

    void add(std::string suite, std::string item, std::string ref, bool ok, std::string witness) {
        rows.push_back({std::move(suite), std::move(item), std::move(ref),
                        ok ? "pass" : "fail", std::move(witness)});
    }
    void add_status(std::string suite, std::string item, std::string ref, std::string status,
                    std::string witness) {
        rows.push_back(
            {std::move(suite), std::move(item), std::move(ref), std::move(status), std::move(witness)});
    }
    int exit_code() const {
        bool undecided = false;
        for (const auto& r : rows) {
            if (r.status == "fail") return kExitFail;
            if (r.status == "undecided") undecided = true;
        }
        return undecided ? kExitUndecided : kExitOk;
    }
    std::string render(const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back(json{{"suite", r.suite},
                                   {"item", r.item},
                                   {"paper_ref", r.ref},
                                   {"status", r.status},
                                   {"witness", r.witness},
                                   {"elapsed_ms", 0}});
            return arr.dump(2) + "\n";
        }
        if (format == "csv") {
            std::string out = "suite,item,paper_ref,status,witness,elapsed_ms\n";
            for (const auto& r : rows) {
                std::string w = r.witness;
                for (auto& ch : w)
                    if (ch == ',') ch = ';';
                out += r.suite + "," + r.item + "," + r.ref + "," + r.status + "," + w + ",0\n";
            }
            return out;
        }
        std::string out;
        for (const auto& r : rows)
            out += r.suite + "/" + r.item + ": " + r.status + "  [" + r.witness + "]\n";
        return out;
    }
};

void emit(const std::string& data, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << data;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << data;
    }
}

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

// ---- verification suites ----------------------------------------------------

void suite_relations(Report& rep, int n) {
    auto u = [&](int i, int j) { return FrtElement::gen(n, i, j); };
    QRational q = QRational::q(), qi = QRational::q_power(-1);
    long checked = 0;
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i)
        for (int j = 1; j <= n && ok; ++j)
            for (int k = 1; k <= n && ok; ++k)
                for (int l = 1; l <= n && ok; ++l) {
                    if (i == k && j == l) continue;
                    FrtElement lhs = u(i, j) * u(k, l);
                    FrtElement rhs(n);
                    if (i == k) {
                        if (j > l) continue;
                        rhs = q * (u(k, l) * u(i, j));
                    } else if (j == l) {
                        if (i > k) continue;
                        rhs = q * (u(k, l) * u(i, j));
                    } else if (i < k && j > l) {
                        rhs = u(k, l) * u(i, j);
                    } else if (i < k && j < l) {
                        rhs = u(k, l) * u(i, j) + (q - qi) * (u(i, l) * u(k, j));
                    } else {
                        continue;
                    }
                    ++checked;
                    if (!(lhs - rhs).is_zero()) ok = false;
                }
    rep.add("relations", "defining-relations", "frt-presentation", ok,
            std::to_string(checked) + " identities at n=" + std::to_string(n));
    FrtElement d = det_q(n);
    bool central = true;
    for (int i = 1; i <= n && central; ++i)
        for (int j = 1; j <= n && central; ++j)
            if (!(d * FrtElement::gen(n, i, j) - FrtElement::gen(n, i, j) * d).is_zero())
                central = false;
    rep.add("relations", "detq-central", "quantum-determinant", central, "det_q commutes");
    rep.add("relations", "detq-grouplike-unit", "quantum-determinant", is_identity(d),
            "det_q = 1 in the quotient");
}

void suite_hopf(Report& rep, int n) {
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i)
        for (int j = 1; j <= n && ok; ++j) {
            FrtElement left(n), right(n);
            for (int k = 1; k <= n; ++k) {
                left = left + antipode(FrtElement::gen(n, i, k)) * FrtElement::gen(n, k, j);
                right = right + FrtElement::gen(n, i, k) * antipode(FrtElement::gen(n, k, j));
            }
            FrtElement target = FrtElement::scalar(n, QRational(i == j ? 1 : 0));
            if (!equal_mod_ideal(left, target) || !equal_mod_ideal(right, target)) ok = false;
        }
    rep.add("hopf", "antipode-axiom", "hopf-structure", ok,
            "S(u)u = uS(u) = delta on all generators, n=" + std::to_string(n));
    bool star_ok = true;
    for (int i = 1; i <= n && star_ok; ++i)
        for (int j = 1; j <= n && star_ok; ++j)
            if (!equal_mod_ideal(star(star(FrtElement::gen(n, i, j))), FrtElement::gen(n, i, j)))
                star_ok = false;
    rep.add("hopf", "star-involution", "star-structure", star_ok, "** = id on generators");
}

void suite_leibniz(Report& rep, int n) {
    const CrossTable& T = derive_cross_table(n).table;
    auto [lambda, zeta] = leibniz_constants(ZExpr::z(n, 1, n), T);
    rep.add("leibniz", "lambda", "leibniz-constant", lambda == QRational::q_power(2),
            "lambda = " + lambda.str());
    rep.add("leibniz", "zeta", "leibniz-constant", zeta == QRational::q_power(-2),
            "zeta = " + zeta.str());
    rep.add("leibniz", "self-conjugacy", "self-conjugacy", (lambda * zeta).is_one(),
            "lambda * zeta = 1");
}

void suite_nu(Report& rep, int n, std::optional<int> only_k) {
    const CrossTable& T = derive_cross_table(n).table;
    for (int k = 0; k <= n - 2; ++k) {
        if (only_k && *only_k != k) continue;
        NuReport r = verify_nu(n, k, T);
        std::string item = "nu-" + std::to_string(k);
        rep.add("nu", item + "-highest-weight", "nu-ladder", r.highest && r.weight_ok,
                "weight checked against (k+1)w1 + w_{n-k-1}");
        rep.add("nu", item + "-dbar", "nu-ladder", r.dbar_nonzero && r.dbar_formula_ok,
                "dbar nu_k = (" + r.ratio.str() + ") * chain");
    }
}

void suite_bconst(Report& rep, int n) {
    const CrossTable& T = derive_cross_table(n).table;
    ZExpr z = ZExpr::z(n, 1, n);
    for (int k = 0; k <= n - 2; ++k) {
        QRational B = b_constant(z, nu_k(n, k), T);
        QRational expect = QRational::q_power(-2) / qint(static_cast<unsigned>(k + 1),
                                                         QRational::q_power(2));
        rep.add("bconst", "B-" + std::to_string(k), "b-constant", B == expect,
                "B = " + B.str());
    }
}

void suite_solidity(Report& rep, int n, const Rat& q0) {
    const CrossTable& T = derive_cross_table(n).table;
    LadderData d = ladder(n, T);
    VerdictReport v = compact_resolvent_verdict(d, q0);
    for (size_t k = 0; k < v.per_rung.size(); ++k) {
        Solidity s = v.per_rung[k];
        std::string status = s == Solidity::undecided
                                 ? "undecided"
                                 : (s == Solidity::not_solid ? "fail" : "pass");
        rep.add_status("solidity", "rung-" + std::to_string(k), "solidity-conditions", status,
                       std::string(solidity_name(s)) + ", lambda = " + v.lambda_val.get_str() +
                           ", B = " + v.B_vals[k].get_str());
    }
    rep.add_status("solidity", "overall", "compact-resolvent-theorem",
                   v.overall == Verdict::positive
                       ? "pass"
                       : (v.overall == Verdict::undecided ? "undecided" : "fail"),
                   std::string(verdict_name(v.overall)) + "; " + v.harmonic +
                       "; euler characteristic 1; index 1");
    for (const auto& note : v.notes)
        rep.add_status("solidity", "note", "verdict-notes", "pass", note);
}

void suite_hodge(Report& rep, int n) {
    const CrossResult& cr = derive_cross_table(n);
    if (!cr.ok) {
        rep.add("hodge", "cross-table", "maximal-prolongation", false, "derivation failed");
        return;
    }
    const CrossTable& T = cr.table;
    int N = n - 1, m = 2 * (n - 1);
    bool dims_ok = true;
    for (int k = 0; k <= m; ++k) {
        long count = 0;
        for (uint32_t I = 0; I < (1u << (n - 1)); ++I)
            for (uint32_t J = 0; J < (1u << (n - 1)); ++J)
                if (std::popcount(I) + std::popcount(J) == k) ++count;
        if (count != binom(m, k)) dims_ok = false;
    }
    rep.add("hodge", "graded-dimensions", "hk-basis", dims_ok, "dim = binom(2n-2, k)");
    ExtElement kap = kappa(n, T);
    bool central = true, powers_ok = true, star_ok = true, lef_ok = true;
    ExtElement pw = ExtElement::one(n);
    for (int mm = 1; mm <= N; ++mm) {
        pw = wedge_ext(pw, kap, T);
        if (pw.is_zero()) powers_ok = false;
        for (const auto& [key, c] : pw.terms)
            if (key.first != key.second) powers_ok = false;  // diagonal support
    }
    if (!wedge_ext(pw, kap, T).is_zero()) powers_ok = false;
    for (uint32_t I = 0; I < (1u << (n - 1)) && central; ++I)
        for (uint32_t J = 0; J < (1u << (n - 1)) && central; ++J) {
            ExtElement x = ExtElement::basis(n, I, J);
            if (!(wedge_ext(kap, x, T) == wedge_ext(x, kap, T))) central = false;
            int deg = std::popcount(I) + std::popcount(J);
            ExtElement ss = hodge_star(hodge_star(x, T), T);
            if (!(ss == Gauss(QRational(deg % 2 == 0 ? 1 : -1)) * x)) star_ok = false;
        }
    for (int a = 0; a <= N && lef_ok; ++a)
        for (int b = 0; b <= N && lef_ok; ++b) {
            if (a + b > N) continue;
            auto basis = qext_detail::bidegree_basis(n, a, b);
            auto target = qext_detail::bidegree_basis(n, a + (N - a - b), b + (N - a - b));
            Matrix<Gauss> M(target.size(), basis.size());
            for (size_t c = 0; c < basis.size(); ++c) {
                ExtElement im = lefschetz_pow(
                    ExtElement::basis(n, basis[c].first, basis[c].second), N - a - b, T);
                for (size_t r = 0; r < target.size(); ++r) {
                    auto it = im.terms.find(target[r]);
                    if (it != im.terms.end()) M.at(r, c) = it->second;
                }
            }
            if (rank(M) != basis.size()) lef_ok = false;
        }
    rep.add("hodge", "kappa-central", "kahler-form", central, "kappa commutes with all basis forms");
    rep.add("hodge", "kappa-powers", "kahler-form", powers_ok,
            "kappa^m nonzero with diagonal support up to N, zero beyond");
    rep.add("hodge", "lefschetz-ranks", "hard-lefschetz", lef_ok, "L^{N-a-b} injective per bidegree");
    rep.add("hodge", "star-squared", "hodge-map", star_ok, "** = (-1)^k");
}

void suite_gelfand(Report& rep, int n, std::optional<int> only_k, int lmax) {
    for (int k = 0; k <= n - 1; ++k) {
        if (only_k && *only_k != k) continue;
        GelfandReport g = gelfand_check(n, k, lmax);
        rep.add("gelfand", "degree-" + std::to_string(k), "gelfand-type", g.ok,
                std::to_string(g.collisions.size()) + " weight collisions, l <= " +
                    std::to_string(lmax));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectral engine for the quantum projective space"};
    app.require_subcommand(1);

    int n = 3, lmax = 10, degree_bound = 0;
    std::optional<int> kopt;
    std::string qstr = "11/10", format = "text", out_path, overrides_path, partition_str;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--n", n, "rank parameter (n >= 2)");
        c->add_option("--k", kopt, "restrict to a single degree/rung");
        c->add_option("--lmax", lmax, "largest sequence index");
        c->add_option("--q", qstr, "exact rational parameter value, e.g. 11/10");
        c->add_option("--format", format, "output format: json, csv, or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        c->add_option("--degree-bound", degree_bound,
                      "reserved; ideal membership is exact and needs no bound");
        c->add_option("--out", out_path, "write the data stream to a file");
        c->add_option("--overrides", overrides_path, "JSON file with positive A_k, mu_k overrides");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "relations|hopf|leibniz|nu|bconst|solidity|hodge|gelfand")
        ->required()
        ->check(CLI::IsMember(
            {"relations", "hopf", "leibniz", "nu", "bconst", "solidity", "hodge", "gelfand"}));
    add_common(verify);

    CLI::App* branch_cmd = app.add_subcommand("branch", "restriction of an irreducible comodule");
    branch_cmd->add_option("--partition", partition_str, "partition, e.g. 3,2")->required();
    add_common(branch_cmd);

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "assembled Laplacian spectrum table");
    add_common(spectrum_cmd);

    CLI::App* dims_cmd = app.add_subcommand("dims", "graded dimensions of the exterior algebra");
    add_common(dims_cmd);

    CLI::App* ladder_cmd = app.add_subcommand("ladder", "the ladder presentation data");
    add_common(ladder_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (n < 2) throw std::invalid_argument("--n must be at least 2");
        auto t0 = std::chrono::steady_clock::now();
        int code = kExitOk;
        if (verify->parsed()) {
            Rat q0 = parse_rat(qstr);
            if (suite == "solidity" && (q0 == 0 || q0 == 1 || q0 == -1))
                throw std::invalid_argument("--q must avoid {-1, 0, 1} for numeric verdicts");
            Report rep;
            if (suite == "relations") suite_relations(rep, n);
            else if (suite == "hopf") suite_hopf(rep, n);
            else if (suite == "leibniz") suite_leibniz(rep, n);
            else if (suite == "nu") suite_nu(rep, n, kopt);
            else if (suite == "bconst") suite_bconst(rep, n);
            else if (suite == "solidity") suite_solidity(rep, n, q0);
            else if (suite == "hodge") suite_hodge(rep, n);
            else if (suite == "gelfand") suite_gelfand(rep, n, kopt, lmax);
            emit(rep.render(format), out_path);
            code = rep.exit_code();
        } else if (branch_cmd->parsed()) {
            Partition mu = Partition::parse(partition_str);
            auto rows = branch(mu, n);
            if (format == "json") {
                json arr = json::array();
                for (const auto& v : rows)
                    arr.push_back(json{{"summand", v.str()},
                                       {"dim", n == 2 ? 1
                                                      : weyl_dim(WeightA::from_partition(v.nu, n - 1))}});
                emit(arr.dump(2) + "\n", out_path);
            } else {
                std::string data = format == "csv" ? "summand,dim\n" : "";
                for (const auto& v : rows)
                    data += v.str() + (format == "csv" ? "," : "  dim ") +
                            std::to_string(n == 2 ? 1
                                                  : weyl_dim(WeightA::from_partition(v.nu, n - 1))) +
                            "\n";
                emit(data, out_path);
            }
        } else if (spectrum_cmd->parsed()) {
            Rat q0 = parse_rat(qstr);
            if (q0 <= 0 || q0 == 1)
                throw std::invalid_argument("--q must be positive and different from 1");
            const CrossTable& T = derive_cross_table(n).table;
            LadderData d = ladder(n, T);
            SpectrumOverrides ov;
            if (!overrides_path.empty()) {
                std::ifstream f(overrides_path);
                if (!f) throw std::runtime_error("cannot read overrides file " + overrides_path);
                json j = json::parse(f);
                for (const auto& s : j.at("A")) ov.A.push_back(parse_rat(s.get<std::string>()));
                for (const auto& s : j.at("mu")) ov.mu.push_back(parse_rat(s.get<std::string>()));
            } else {
                ov.A.assign(static_cast<size_t>(n - 1), Rat(1));
                ov.mu.assign(static_cast<size_t>(n - 1), Rat(1));
            }
            SpectrumTable t = assemble_spectrum(n, q0, lmax, d, ov);
            emit(format == "json" ? spectrum_json(t) + "\n" : spectrum_csv(t), out_path);
        } else if (dims_cmd->parsed()) {
            int m = 2 * (n - 1);
            if (format == "json") {
                json arr = json::array();
                for (int k = 0; k <= m; ++k) arr.push_back(json{{"k", k}, {"dim", binom(m, k)}});
                emit(arr.dump(2) + "\n", out_path);
            } else {
                std::string data = format == "csv" ? "k,dim\n" : "";
                for (int k = 0; k <= m; ++k)
                    data += std::to_string(k) + (format == "csv" ? "," : "  dim ") +
                            std::to_string(binom(m, k)) + "\n";
                emit(data, out_path);
            }
        } else if (ladder_cmd->parsed()) {
            const CrossTable& T = derive_cross_table(n).table;
            LadderData d = ladder(n, T);
            if (format == "json") {
                json j;
                j["n"] = d.n;
                j["z"] = d.z.str();
                j["lambda"] = d.lambda.str();
                j["zeta"] = d.zeta.str();
                json theta = json::array(), bs = json::array(), as = json::array();
                for (const auto& t : d.Theta) theta.push_back(t.str());
                for (const auto& b : d.B) bs.push_back(b.str());
                for (const auto& a : d.A)
                    as.push_back(json{{"nonzero", tri_str(a.first)},
                                      {"ne_lambda_minus_1", tri_str(a.second)}});
                j["Theta"] = theta;
                j["B"] = bs;
                j["A_status"] = as;
                j["harmonic"] = d.harmonic;
                j["mu"] = "symbolic positive unknowns";
                emit(j.dump(2) + "\n", out_path);
            } else {
                std::string data = "z = " + d.z.str() + "\nlambda = " + d.lambda.str() +
                                   "\nzeta = " + d.zeta.str() + "\n";
                for (size_t k = 0; k < d.Theta.size(); ++k)
                    data += "Theta_" + std::to_string(k) + " = " + d.Theta[k].str() +
                            "\n  B = " + d.B[k].str() + ", A: nonzero = " + tri_str(d.A[k].first) +
                            ", ne_lambda_minus_1 = " + tri_str(d.A[k].second) + "\n";
                data += d.harmonic + "\n";
                emit(data, out_path);
            }
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cerr << "completed in " << ms << " ms\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
