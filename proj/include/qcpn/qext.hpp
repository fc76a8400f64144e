#pragma once
// The finite q-exterior algebra of the Heckenberger-Kolb calculus on quantum
// projective space: basis e^+_I ^ e^-_J, the degree-(1,1) cross-commutation
// table (derived from the maximal prolongation via the FRT engine), the
// Kahler form, Lefschetz operator, primitivity, Weil-formula Hodge map and
// the U_q(l_{n-1}) action.

#include "qcpn/frt.hpp"
#include "qcpn/linalg.hpp"
#include "qcpn/qrational.hpp"

#include <bit>
#include <cstdint>
#include <sstream>

namespace qcpn {

// e^-_b ^ e^+_a = sum_{c,d} coeff e^+_c ^ e^-_d
struct CrossTable {
    int n = 2;
    std::map<std::pair<int, int>, std::vector<std::tuple<int, int, QRational>>> t;
};

using ExtKey = std::pair<uint32_t, uint32_t>;  // (I mask, J mask), bit a-1 = index a

class ExtElement {
  public:
    int n = 2;
    std::map<ExtKey, Gauss> terms;

    ExtElement() = default;
    explicit ExtElement(int rank) : n(rank) {}
    static ExtElement zero(int rank) { return ExtElement(rank); }
    static ExtElement one(int rank) {
        ExtElement e(rank);
        e.terms[{0, 0}] = Gauss(1);
        return e;
    }
    static ExtElement basis(int rank, uint32_t I, uint32_t J) {
        ExtElement e(rank);
        e.terms[{I, J}] = Gauss(1);
        return e;
    }
    static ExtElement e_plus(int rank, int a) { return basis(rank, 1u << (a - 1), 0); }
    static ExtElement e_minus(int rank, int a) { return basis(rank, 0, 1u << (a - 1)); }

    bool is_zero() const { return terms.empty(); }

    void add_term(const ExtKey& k, const Gauss& c) {
        if (c.is_zero()) return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend ExtElement operator+(const ExtElement& x, const ExtElement& y) {
        ExtElement r = x;
        for (const auto& [k, c] : y.terms) r.add_term(k, c);
        return r;
    }
    friend ExtElement operator-(const ExtElement& x, const ExtElement& y) {
        ExtElement r = x;
        for (const auto& [k, c] : y.terms) r.add_term(k, Gauss(0) - c);
        return r;
    }
    friend ExtElement operator*(const Gauss& c, const ExtElement& x) {
        ExtElement r(x.n);
        if (c.is_zero()) return r;
        for (const auto& [k, v] : x.terms) r.terms[k] = c * v;
        return r;
    }
    friend bool operator==(const ExtElement& x, const ExtElement& y) {
        return x.n == y.n && x.terms == y.terms;
    }

    // bidegree when homogeneous
    std::optional<std::pair<int, int>> bidegree() const {
        std::optional<std::pair<int, int>> bd;
        for (const auto& [k, c] : terms) {
            std::pair<int, int> d{std::popcount(k.first), std::popcount(k.second)};
            if (!bd)
                bd = d;
            else if (*bd != d)
                return std::nullopt;
        }
        return bd ? bd : std::optional<std::pair<int, int>>{{0, 0}};
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [k, c] : terms) {
            if (!out.empty()) out += " + ";
            std::string mono;
            auto emit = [&](uint32_t mask, const char* tag) {
                if (!mask) return;
                if (!mono.empty()) mono += "^";
                mono += tag;
                mono += "[";
                bool first = true;
                for (int a = 1; a <= 31; ++a)
                    if (mask & (1u << (a - 1))) {
                        if (!first) mono += ",";
                        first = false;
                        mono += std::to_string(a);
                    }
                mono += "]";
            };
            emit(k.first, "e+");
            emit(k.second, "e-");
            if (mono.empty())
                out += c.str();
            else
                out += "(" + c.str() + ")*" + mono;
        }
        return out;
    }
};

namespace qext_detail {

using Terms = std::vector<std::tuple<uint32_t, uint32_t, Gauss>>;

// append e^-_d on the right of a basis monomial
inline void append_minus(uint32_t I, uint32_t J, const Gauss& c, int d, Terms& out) {
    uint32_t bit = 1u << (d - 1);
    if (J & bit) return;
    int inv = std::popcount(J >> d);  // larger indices present
    Gauss f = c * Gauss((QRational(0) - QRational::q_power(-1)).pow(inv));
    out.emplace_back(I, J | bit, f);
}

// append e^+_a on the right; e^+ letters must cross every e^- via the table
inline void append_plus(int n, const CrossTable& T, uint32_t I, uint32_t J, const Gauss& c, int a,
                        Terms& out) {
    if (J == 0) {
        uint32_t bit = 1u << (a - 1);
        if (I & bit) return;
        int inv = std::popcount(I >> a);
        Gauss f = c * Gauss((QRational(0) - QRational::q()).pow(inv));
        out.emplace_back(I | bit, 0u, f);
        return;
    }
    int jtop = 32 - std::countl_zero(J);  // largest index present in J
    uint32_t J2 = J & ~(1u << (jtop - 1));
    auto it = T.t.find({jtop, a});
    if (it == T.t.end()) throw std::logic_error("CrossTable: missing entry");
    for (const auto& [cc, dd, coef] : it->second) {
        Terms mid;
        append_plus(n, T, I, J2, c * Gauss(coef), cc, mid);
        for (const auto& [I3, J3, c3] : mid) append_minus(I3, J3, c3, dd, out);
    }
}

}  // namespace qext_detail

inline ExtElement wedge_ext(const ExtElement& x, const ExtElement& y, const CrossTable& T) {
    if (x.n != y.n) throw std::invalid_argument("wedge_ext: rank mismatch");
    ExtElement out(x.n);
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) {
            qext_detail::Terms cur = {{kx.first, kx.second, cx * cy}};
            for (int a = 1; a <= x.n - 1; ++a) {
                if (!(ky.first & (1u << (a - 1)))) continue;
                qext_detail::Terms next;
                for (const auto& [I, J, c] : cur) qext_detail::append_plus(x.n, T, I, J, c, a, next);
                cur = std::move(next);
            }
            for (int d = 1; d <= x.n - 1; ++d) {
                if (!(ky.second & (1u << (d - 1)))) continue;
                qext_detail::Terms next;
                for (const auto& [I, J, c] : cur) qext_detail::append_minus(I, J, c, d, next);
                cur = std::move(next);
            }
            for (const auto& [I, J, c] : cur) out.add_term({I, J}, c);
        }
    return out;
}

inline ExtElement kappa(int n, const CrossTable& T) {
    ExtElement k(n);
    for (int a = 1; a <= n - 1; ++a)
        k = k + Gauss::i() * wedge_ext(ExtElement::e_minus(n, a), ExtElement::e_plus(n, a), T);
    return k;
}

inline ExtElement lefschetz(const ExtElement& x, const CrossTable& T) {
    return wedge_ext(kappa(x.n, T), x, T);
}

inline ExtElement lefschetz_pow(ExtElement x, int m, const CrossTable& T) {
    for (int i = 0; i < m; ++i) x = lefschetz(x, T);
    return x;
}

// primitive iff L^{N-a-b+1} x = 0, with N = n-1 the complex middle degree
inline bool is_primitive(const ExtElement& x, const CrossTable& T) {
    if (x.is_zero()) return true;
    auto bd = x.bidegree();
    if (!bd) throw std::invalid_argument("is_primitive: inhomogeneous input");
    int N = x.n - 1;
    int m = N - bd->first - bd->second + 1;
    if (m <= 0) return x.is_zero();
    return lefschetz_pow(x, m, T).is_zero();
}

// ---- U_q(l_{n-1}) action ---------------------------------------------------

struct LeviTables {
    int n = 2;
    // K_k eigenvalues (q-powers) of e^+_a / e^-_a, index [k][a], 1-based
    std::vector<std::vector<QRational>> kplus, kminus;
    // E_k / F_k actions: [k][a] -> list of (target index, coeff)
    std::vector<std::vector<std::vector<std::pair<int, QRational>>>> eplus, eminus, fplus, fminus;
};

namespace qext_detail {

inline LeviTables build_levi_tables(int n) {
    LeviTables t;
    t.n = n;
    auto sized = [&](auto& v) { v.assign(static_cast<size_t>(n), {}); };
    sized(t.kplus);
    sized(t.kminus);
    sized(t.eplus);
    sized(t.eminus);
    sized(t.fplus);
    sized(t.fminus);
    for (int k = 1; k <= n - 1; ++k) {
        t.kplus[static_cast<size_t>(k)].assign(static_cast<size_t>(n), QRational(1));
        t.kminus[static_cast<size_t>(k)].assign(static_cast<size_t>(n), QRational(1));
        for (int a = 1; a <= n - 1; ++a) {
            auto mp = act_on_z(uq_K(k), a, n, n);
            auto it = mp.find({a, n});
            t.kplus[static_cast<size_t>(k)][static_cast<size_t>(a)] =
                it == mp.end() ? QRational(0) : it->second;
            auto mm = act_on_z(uq_K(k), n, a, n);
            auto jt = mm.find({n, a});
            t.kminus[static_cast<size_t>(k)][static_cast<size_t>(a)] =
                jt == mm.end() ? QRational(0) : jt->second;
        }
    }
    for (int k = 1; k <= n - 2; ++k) {
        auto& ep = t.eplus[static_cast<size_t>(k)];
        auto& em = t.eminus[static_cast<size_t>(k)];
        auto& fp = t.fplus[static_cast<size_t>(k)];
        auto& fm = t.fminus[static_cast<size_t>(k)];
        ep.assign(static_cast<size_t>(n), {});
        em.assign(static_cast<size_t>(n), {});
        fp.assign(static_cast<size_t>(n), {});
        fm.assign(static_cast<size_t>(n), {});
        for (int a = 1; a <= n - 1; ++a) {
            for (auto [X, tgtp, tgtm] :
                 {std::tuple{uq_E(k), &ep, &em}, std::tuple{uq_F(k), &fp, &fm}}) {
                for (const auto& [cd, coeff] : act_on_z(X, a, n, n))
                    if (cd.second == n && cd.first < n)
                        (*tgtp)[static_cast<size_t>(a)].emplace_back(cd.first, coeff);
                for (const auto& [cd, coeff] : act_on_z(X, n, a, n))
                    if (cd.first == n && cd.second < n)
                        (*tgtm)[static_cast<size_t>(a)].emplace_back(cd.second, coeff);
            }
        }
    }
    return t;
}

}  // namespace qext_detail

inline const LeviTables& levi_tables(int n) {
    static std::map<int, LeviTables> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, qext_detail::build_levi_tables(n)).first;
    return it->second;
}

namespace qext_detail {

// letters of a monomial: (sector +1/-1, index), pluses first, each ascending
inline std::vector<std::pair<int, int>> letters_of(int n, const ExtKey& k) {
    std::vector<std::pair<int, int>> ls;
    for (int a = 1; a <= n - 1; ++a)
        if (k.first & (1u << (a - 1))) ls.emplace_back(+1, a);
    for (int a = 1; a <= n - 1; ++a)
        if (k.second & (1u << (a - 1))) ls.emplace_back(-1, a);
    return ls;
}

// reassemble a letter list (pluses first within each sector, possibly
// unsorted) into basis form with the sector commutation factors
inline void resort_letters(int n, const std::vector<std::pair<int, int>>& ls, const Gauss& c,
                           ExtElement& out) {
    uint32_t I = 0, J = 0;
    Gauss f = c;
    QRational mq = QRational(0) - QRational::q();
    QRational mqi = QRational(0) - QRational::q_power(-1);
    std::vector<int> plus, minus;
    for (const auto& [sec, a] : ls) (sec > 0 ? plus : minus).push_back(a);
    for (int a : plus) {
        uint32_t bit = 1u << (a - 1);
        if (I & bit) return;
        f = f * Gauss(mq.pow(std::popcount(I >> a)));
        I |= bit;
    }
    for (int a : minus) {
        uint32_t bit = 1u << (a - 1);
        if (J & bit) return;
        f = f * Gauss(mqi.pow(std::popcount(J >> a)));
        J |= bit;
    }
    out.add_term({I, J}, f);
}

}  // namespace qext_detail

// action of a single U_q(l_{n-1}) generator; K_k for k <= n-1, E_k/F_k for
// k <= n-2 (the Levi part)
inline ExtElement lmod_act(UqType type, int k, const ExtElement& x) {
    const LeviTables& t = levi_tables(x.n);
    int n = x.n;
    bool is_k = type == UqType::K || type == UqType::Kinv;
    if (k < 1 || k > n - 1 || (!is_k && k > n - 2))
        throw std::invalid_argument("lmod_act: not a U_q(l) generator");
    ExtElement out(n);
    auto kweight = [&](int sec, int a) -> const QRational& {
        return sec > 0 ? t.kplus[static_cast<size_t>(k)][static_cast<size_t>(a)]
                       : t.kminus[static_cast<size_t>(k)][static_cast<size_t>(a)];
    };
    for (const auto& [key, c] : x.terms) {
        auto ls = qext_detail::letters_of(n, key);
        if (is_k) {
            QRational f(1);
            for (const auto& [sec, a] : ls) f *= kweight(sec, a);
            if (type == UqType::Kinv) f = f.inverse();
            out.add_term(key, Gauss(f) * c);
            continue;
        }
        if (type == UqType::E) {
            // E |> (vw) = (K |> v)(E |> w) + (E |> v) w
            QRational prefix(1);
            for (size_t tpos = 0; tpos < ls.size(); ++tpos) {
                auto [sec, a] = ls[tpos];
                const auto& tab = sec > 0 ? t.eplus[static_cast<size_t>(k)][static_cast<size_t>(a)]
                                          : t.eminus[static_cast<size_t>(k)][static_cast<size_t>(a)];
                for (const auto& [tgt, coeff] : tab) {
                    auto ls2 = ls;
                    ls2[tpos].second = tgt;
                    qext_detail::resort_letters(n, ls2, c * Gauss(prefix * coeff), out);
                }
                prefix *= kweight(sec, a);
            }
        } else {
            // F |> (vw) = v (F |> w) + (F |> v)(K^{-1} |> w)
            QRational suffix(1);  // inverse K-weight of the letters after tpos
            for (size_t s = 0; s < ls.size(); ++s) suffix /= kweight(ls[s].first, ls[s].second);
            for (size_t tpos = 0; tpos < ls.size(); ++tpos) {
                auto [sec, a] = ls[tpos];
                suffix *= kweight(sec, a);
                const auto& tab = sec > 0 ? t.fplus[static_cast<size_t>(k)][static_cast<size_t>(a)]
                                          : t.fminus[static_cast<size_t>(k)][static_cast<size_t>(a)];
                for (const auto& [tgt, coeff] : tab) {
                    auto ls2 = ls;
                    ls2[tpos].second = tgt;
                    qext_detail::resort_letters(n, ls2, c * Gauss(suffix * coeff), out);
                }
            }
        }
    }
    return out;
}

// ---- cross-table derivation ------------------------------------------------

struct CrossResult {
    CrossTable table;
    bool ok = false;
    std::vector<std::string> notes;
};

namespace qext_detail {

// Derivation from the maximal prolongation: the degree-2 relations of the
// calculus are spanned by sum da_i (x) db_i over all sum a_i db_i = 0, with
// a_i, b_i in the span of 1 and the z generators.  The kernel is computed
// exactly in O_q(SU_n) via det-homogenized normal forms, pushed to the
// (2n-2)^2-dimensional space Lambda^1 (x) Lambda^1, and the cross moves are
// read off the quotient.
inline CrossResult derive_cross_table_impl(int n) {
    CrossResult res;
    res.table.n = n;
    int m = 2 * (n - 1);  // dim Lambda^1
    FrtElement det = det_q(n);

    // coefficient symbols: 1, the z generators, and quadratic z monomials;
    // differential symbols b: the z generators
    struct Sym {
        std::vector<std::pair<int, int>> f;  // product of z factors (empty = 1)
    };
    std::vector<Sym> as, bs;
    as.push_back({});
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            as.push_back({{{i, j}}});
            bs.push_back({{{i, j}}});
        }
    // Quadratic coefficient symbols are what exposes the same-sector
    // relations; they are affordable for n <= 3.  For larger ranks the
    // same-sector relations are seeded below instead (their shape is
    // rank-independent) and certified by the dimension count together with
    // the invariant battery on the finished table.
    if (n <= 3)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l) as.push_back({{{i, j}, {k, l}}});
    size_t pad_to = 0;
    for (const auto& s : as) pad_to = std::max(pad_to, s.f.size());

    // Columns come in two kinds: realize(a * db) and realize((db) * a).  The
    // first carries the relation contribution [da] (x) [db]; the second equals
    // d(ba) - b(da), whose d(ba) part drops, leaving -[db] (x) [da].
    using RowKey = std::pair<int, FrtWord>;
    using Col = std::map<RowKey, QRational>;
    auto letter_plus = [&](int c) { return c - 1; };
    auto letter_minus = [&](int c) { return (n - 1) + c - 1; };

    struct ColSym {
        bool right;     // realize((db) a) instead of realize(a db)
        size_t ai, bi;  // indices into as / bs
    };
    std::vector<Col> cols;
    std::vector<ColSym> col_sym;
    auto add_col = [&](bool right, size_t ai, size_t bi) {
        const Sym& A = as[ai];
        auto [Bi, Bj] = bs[bi].f.front();
        // homogenize every column to a common z-degree with det factors
        FrtElement af = FrtElement::one(n);
        for (const auto& [i, j] : A.f) af = af * z_gen(i, j, n);
        for (size_t pad = A.f.size(); pad < pad_to; ++pad) af = af * det;
        Col col;
        auto put = [&](int letter, const FrtElement& f) {
            for (const auto& [w, c] : f.terms) {
                RowKey key{letter, w};
                auto [it, fresh] = col.emplace(key, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) col.erase(it);
                }
            }
        };
        for (int c = 1; c <= n - 1; ++c) {
            // d z_{kl} components: e^+_c leg u^k_c S(u^n_l), e^-_c leg u^k_n S(u^c_l)
            FrtElement plus_leg =
                FrtElement::gen(n, Bi, c) * frt_detail::antipode_gen_cached(n, n, Bj);
            FrtElement minus_leg =
                FrtElement::gen(n, Bi, n) * frt_detail::antipode_gen_cached(n, c, Bj);
            put(letter_plus(c), right ? plus_leg * af : af * plus_leg);
            put(letter_minus(c), right ? minus_leg * af : af * minus_leg);
        }
        cols.push_back(std::move(col));
        col_sym.push_back({right, ai, bi});
    };
    for (size_t ai = 0; ai < as.size(); ++ai)
        for (size_t bi = 0; bi < bs.size(); ++bi) {
            add_col(false, ai, bi);
            if (!as[ai].f.empty()) add_col(true, ai, bi);
        }

    // exact kernel of the column family (sparse elimination with coordinates)
    struct PivotRow {
        RowKey key;
        Col col;                        // reduced column, leading coeff 1 at key
        std::map<size_t, QRational> coord;  // expression in original columns
    };
    std::vector<PivotRow> pivots;
    std::vector<std::map<size_t, QRational>> kernel;
    for (size_t j = 0; j < cols.size(); ++j) {
        Col v = cols[j];
        std::map<size_t, QRational> coord{{j, QRational(1)}};
        for (const auto& p : pivots) {
            auto it = v.find(p.key);
            if (it == v.end()) continue;
            QRational f = it->second;
            for (const auto& [rk, cv] : p.col) {
                auto [jt, fresh] = v.emplace(rk, QRational(0) - f * cv);
                if (!fresh) {
                    jt->second -= f * cv;
                    if (jt->second.is_zero()) v.erase(jt);
                }
            }
            for (const auto& [ci, cv] : p.coord) {
                auto [jt, fresh] = coord.emplace(ci, QRational(0) - f * cv);
                if (!fresh) {
                    jt->second -= f * cv;
                    if (jt->second.is_zero()) coord.erase(jt);
                }
            }
        }
        if (v.empty()) {
            kernel.push_back(std::move(coord));
            continue;
        }
        QRational lead = v.begin()->second;
        QRational inv = lead.inverse();
        PivotRow p;
        p.key = v.begin()->first;
        for (auto& [rk, cv] : v) p.col.emplace(rk, cv * inv);
        for (auto& [ci, cv] : coord) p.coord.emplace(ci, cv * inv);
        pivots.push_back(std::move(p));
    }

    // push each kernel vector to Lambda^1 (x) Lambda^1; the class of the
    // differential of a product follows the Leibniz rule with counit collapse
    auto letter_of = [&](int i, int j) -> std::optional<int> {
        if (j == n && i < n) return letter_plus(i);
        if (i == n && j < n) return letter_minus(j);
        return std::nullopt;
    };
    auto cls = [&](const Sym& s) {  // letters of [d s] (each with coefficient 1)
        std::vector<int> ls;
        for (size_t t = 0; t < s.f.size(); ++t) {
            bool eps = true;  // counit of the complementary factors
            for (size_t u = 0; u < s.f.size(); ++u)
                if (u != t && s.f[u] != std::pair<int, int>{n, n}) eps = false;
            if (!eps) continue;
            if (auto l = letter_of(s.f[t].first, s.f[t].second)) ls.push_back(*l);
        }
        return ls;
    };
    std::vector<std::vector<QRational>> relations;
    for (const auto& kv : kernel) {
        std::vector<QRational> vec(static_cast<size_t>(m * m), QRational(0));
        bool nonzero = false;
        for (const auto& [ci, cv] : kv) {
            auto [right, ai, bi] = col_sym[ci];
            auto lbs = cls(bs[bi]);
            for (int la : cls(as[ai]))
                for (int lb : lbs) {
                    if (right)
                        vec[static_cast<size_t>(lb * m + la)] -= cv;
                    else
                        vec[static_cast<size_t>(la * m + lb)] += cv;
                    nonzero = true;
                }
        }
        if (nonzero) relations.push_back(std::move(vec));
    }

    // For n >= 4 seed the same-sector relations directly (for n <= 3 they
    // fall out of the quadratic-coefficient syzygies and are re-verified at
    // the end): squares vanish and
    //   e+_j (x) e+_i + q    e+_i (x) e+_j   (i < j)
    //   e-_j (x) e-_i + q^-1 e-_i (x) e-_j   (i < j)
    if (n >= 4) {
        QRational qq = QRational::q();
        auto unit = [&](int l1, int l2) {
            std::vector<QRational> v(static_cast<size_t>(m * m), QRational(0));
            v[static_cast<size_t>(l1 * m + l2)] = QRational(1);
            return v;
        };
        for (int i = 1; i <= n - 1; ++i) {
            relations.push_back(unit(i - 1, i - 1));
            relations.push_back(unit((n - 1) + i - 1, (n - 1) + i - 1));
            for (int j = i + 1; j <= n - 1; ++j) {
                auto v = unit(j - 1, i - 1);
                v[static_cast<size_t>((i - 1) * m + (j - 1))] = qq;
                relations.push_back(std::move(v));
                auto w = unit((n - 1) + j - 1, (n - 1) + i - 1);
                w[static_cast<size_t>(((n - 1) + i - 1) * m + (n - 1) + (j - 1))] =
                    QRational::q_power(-1);
                relations.push_back(std::move(w));
            }
        }
    }

    // The relation space is a U_q(l)-submodule of Lambda^1 (x) Lambda^1, so
    // close the seed span under the E_k / F_k tensor actions before reducing.
    {
        const LeviTables& lt = levi_tables(n);
        auto sector = [&](int l) { return l < n - 1 ? +1 : -1; };
        auto index = [&](int l) { return l < n - 1 ? l + 1 : l - (n - 1) + 1; };
        auto kw = [&](int k, int l) -> const QRational& {
            return sector(l) > 0 ? lt.kplus[static_cast<size_t>(k)][static_cast<size_t>(index(l))]
                                 : lt.kminus[static_cast<size_t>(k)][static_cast<size_t>(index(l))];
        };
        auto gen_tab = [&](bool e, int k, int l) -> const std::vector<std::pair<int, QRational>>& {
            auto& per = e ? (sector(l) > 0 ? lt.eplus : lt.eminus)
                          : (sector(l) > 0 ? lt.fplus : lt.fminus);
            return per[static_cast<size_t>(k)][static_cast<size_t>(index(l))];
        };
        auto to_letter = [&](int sec, int a) { return sec > 0 ? a - 1 : (n - 1) + a - 1; };
        // E_k (v (x) w) = (K v) (x) (E w) + (E v) (x) w
        // F_k (v (x) w) = v (x) (F w) + (F v) (x) (K^{-1} w)
        auto act_vec = [&](bool e, int k, const std::vector<QRational>& v) {
            std::vector<QRational> out(static_cast<size_t>(m * m), QRational(0));
            for (int l1 = 0; l1 < m; ++l1)
                for (int l2 = 0; l2 < m; ++l2) {
                    const QRational& c = v[static_cast<size_t>(l1 * m + l2)];
                    if (c.is_zero()) continue;
                    for (const auto& [tgt, cf] : gen_tab(e, k, l2)) {
                        int nl2 = to_letter(sector(l2), tgt);
                        QRational w = e ? kw(k, l1) * cf : cf;
                        out[static_cast<size_t>(l1 * m + nl2)] += c * w;
                    }
                    for (const auto& [tgt, cf] : gen_tab(e, k, l1)) {
                        int nl1 = to_letter(sector(l1), tgt);
                        QRational w = e ? cf : cf / kw(k, l2);
                        out[static_cast<size_t>(nl1 * m + l2)] += c * w;
                    }
                }
            return out;
        };
        // incremental echelon basis; only independent images are kept
        std::vector<std::vector<QRational>> basis;  // echelon rows
        std::vector<size_t> lead;
        auto insert = [&](std::vector<QRational> v) {
            for (size_t r = 0; r < basis.size(); ++r) {
                if (v[lead[r]].is_zero()) continue;
                QRational f = v[lead[r]];
                for (size_t c = 0; c < v.size(); ++c) v[c] -= f * basis[r][c];
            }
            size_t l = v.size();
            for (size_t c = 0; c < v.size(); ++c)
                if (!v[c].is_zero()) {
                    l = c;
                    break;
                }
            if (l == v.size()) return false;
            QRational inv = v[l].inverse();
            for (size_t c = l; c < v.size(); ++c) v[c] *= inv;
            basis.push_back(std::move(v));
            lead.push_back(l);
            return true;
        };
        std::vector<std::vector<QRational>> queue = relations;
        for (auto& v : queue) insert(v);
        queue.assign(basis.begin(), basis.end());
        while (!queue.empty()) {
            auto v = queue.back();
            queue.pop_back();
            for (int k = 1; k <= n - 2; ++k)
                for (bool e : {true, false}) {
                    auto img = act_vec(e, k, v);
                    if (insert(img)) queue.push_back(basis.back());
                }
        }
        relations = std::move(basis);
    }

    // row reduce the relation span
    Matrix<QRational> R(relations.size(), static_cast<size_t>(m * m));
    for (size_t r = 0; r < relations.size(); ++r)
        for (size_t c = 0; c < static_cast<size_t>(m * m); ++c) R.at(r, c) = relations[r][c];
    auto rpv = rref(R);
    size_t rdim = rpv.size();
    size_t want = static_cast<size_t>(m * m - (m * (m - 1)) / 2);
    res.notes.push_back("relation space dimension " + std::to_string(rdim) + ", expected " +
                        std::to_string(want));
    if (rdim != want) return res;

    // reduce e^-_b (x) e^+_a against the relations into span{e^+_c (x) e^-_d}
    auto idx_pm = [&](int c, int d) { return static_cast<size_t>((c - 1) * m + (n - 1) + (d - 1)); };
    auto idx_mp = [&](int b, int a) {
        return static_cast<size_t>(((n - 1) + (b - 1)) * m + (a - 1));
    };
    for (int b = 1; b <= n - 1; ++b)
        for (int a = 1; a <= n - 1; ++a) {
            // unknowns: rdim relation coefficients + (n-1)^2 target coeffs
            size_t nt = static_cast<size_t>((n - 1) * (n - 1));
            Matrix<QRational> Asys(static_cast<size_t>(m * m), rdim + nt);
            std::vector<QRational> rhs(static_cast<size_t>(m * m), QRational(0));
            for (size_t r = 0; r < rdim; ++r)
                for (size_t cidx = 0; cidx < static_cast<size_t>(m * m); ++cidx)
                    Asys.at(cidx, r) = R.at(r, cidx);
            for (int c = 1; c <= n - 1; ++c)
                for (int d = 1; d <= n - 1; ++d)
                    Asys.at(idx_pm(c, d), rdim + static_cast<size_t>((c - 1) * (n - 1) + (d - 1))) =
                        QRational(1);
            rhs[idx_mp(b, a)] = QRational(1);
            auto sol = solve(Asys, rhs);
            if (!sol) {
                res.notes.push_back("no reduction for e-_" + std::to_string(b) + " ^ e+_" +
                                    std::to_string(a));
                return res;
            }
            // uniqueness of the target part
            for (const auto& nv : nullspace(Asys)) {
                for (size_t c = rdim; c < rdim + nt; ++c)
                    if (!nv[c].is_zero()) {
                        res.notes.push_back("non-unique reduction for e-_" + std::to_string(b) +
                                            " ^ e+_" + std::to_string(a));
                        return res;
                    }
            }
            std::vector<std::tuple<int, int, QRational>> row;
            for (int c = 1; c <= n - 1; ++c)
                for (int d = 1; d <= n - 1; ++d) {
                    QRational v = (*sol)[rdim + static_cast<size_t>((c - 1) * (n - 1) + (d - 1))];
                    if (!v.is_zero()) row.emplace_back(c, d, v);
                }
            res.table.t[{b, a}] = std::move(row);
        }

    // the printed same-sector relations must lie in the relation span
    auto in_span = [&](std::vector<QRational> v) {
        Matrix<QRational> Asys(static_cast<size_t>(m * m), rdim);
        for (size_t r = 0; r < rdim; ++r)
            for (size_t cidx = 0; cidx < static_cast<size_t>(m * m); ++cidx)
                Asys.at(cidx, r) = R.at(r, cidx);
        return solve(Asys, v).has_value();
    };
    QRational q = QRational::q();
    for (int i = 1; i <= n - 1; ++i) {
        for (int j = 1; j <= n - 1; ++j) {
            std::vector<QRational> v(static_cast<size_t>(m * m), QRational(0));
            if (i == j) {
                v[static_cast<size_t>((i - 1) * m + (j - 1))] = QRational(1);  // e+_i e+_i
                if (!in_span(v)) {
                    res.notes.push_back("missing relation e+_i ^ e+_i = 0");
                    return res;
                }
                std::vector<QRational> w(static_cast<size_t>(m * m), QRational(0));
                w[static_cast<size_t>(((n - 1) + i - 1) * m + (n - 1) + (j - 1))] = QRational(1);
                if (!in_span(w)) {
                    res.notes.push_back("missing relation e-_i ^ e-_i = 0");
                    return res;
                }
            } else if (i < j) {
                // e+_j ^ e+_i + q e+_i ^ e+_j
                std::vector<QRational> v2(static_cast<size_t>(m * m), QRational(0));
                v2[static_cast<size_t>((j - 1) * m + (i - 1))] = QRational(1);
                v2[static_cast<size_t>((i - 1) * m + (j - 1))] = q;
                if (!in_span(v2)) {
                    res.notes.push_back("missing e+ commutation relation");
                    return res;
                }
                std::vector<QRational> v3(static_cast<size_t>(m * m), QRational(0));
                v3[static_cast<size_t>(((n - 1) + j - 1) * m + (n - 1) + (i - 1))] = QRational(1);
                v3[static_cast<size_t>(((n - 1) + i - 1) * m + (n - 1) + (j - 1))] =
                    QRational::q_power(-1);
                if (!in_span(v3)) {
                    res.notes.push_back("missing e- commutation relation");
                    return res;
                }
            }
        }
    }
    res.ok = true;
    res.notes.push_back("cross table derived from the maximal prolongation");
    return res;
}

}  // namespace qext_detail

inline const CrossResult& derive_cross_table(int n) {
    static std::map<int, CrossResult> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, qext_detail::derive_cross_table_impl(n)).first;
    return it->second;
}

// ---- Hodge map -------------------------------------------------------------

namespace qext_detail {

inline std::vector<ExtKey> bidegree_basis(int n, int a, int b) {
    std::vector<ExtKey> out;
    for (uint32_t I = 0; I < (1u << (n - 1)); ++I) {
        if (std::popcount(I) != a) continue;
        for (uint32_t J = 0; J < (1u << (n - 1)); ++J)
            if (std::popcount(J) == b) out.push_back({I, J});
    }
    return out;
}

}  // namespace qext_detail

// Weil formula on the Lefschetz decomposition x = sum_j L^j p_j:
// *(L^j p) = (-1)^{k(k+1)/2} i^{a'-b'} (j!/(N-j-k)!) L^{N-j-k}(p)
inline ExtElement hodge_star(const ExtElement& x, const CrossTable& T) {
    if (x.is_zero()) return x;
    auto bd = x.bidegree();
    if (!bd) {
        // apply per bidegree component
        std::map<std::pair<int, int>, ExtElement> comps;
        for (const auto& [k, c] : x.terms) {
            std::pair<int, int> d{std::popcount(k.first), std::popcount(k.second)};
            auto [it, fresh] = comps.emplace(d, ExtElement(x.n));
            it->second.add_term(k, c);
        }
        ExtElement out(x.n);
        for (const auto& [d, comp] : comps) out = out + hodge_star(comp, T);
        return out;
    }
    int n = x.n, N = n - 1;
    auto [a, b] = *bd;
    int jmax = std::min(a, b);
    // primitive bases per layer
    std::vector<std::vector<ExtElement>> prim(static_cast<size_t>(jmax) + 1);
    std::vector<ExtElement> lifted;  // L^j applied to each primitive basis vector
    std::vector<std::pair<int, size_t>> layer_of;
    for (int j = 0; j <= jmax; ++j) {
        int aa = a - j, bb = b - j;
        if (aa + bb > N) continue;  // no primitives above middle degree
        auto basis = qext_detail::bidegree_basis(n, aa, bb);
        if (basis.empty()) continue;
        int mexp = N - aa - bb + 1;
        // nullspace of L^mexp on the (aa,bb) component
        auto target = qext_detail::bidegree_basis(n, aa + mexp, bb + mexp);
        Matrix<Gauss> M(target.size(), basis.size());
        std::vector<ExtElement> images;
        for (size_t cidx = 0; cidx < basis.size(); ++cidx) {
            ExtElement im = lefschetz_pow(ExtElement::basis(n, basis[cidx].first, basis[cidx].second),
                                          mexp, T);
            for (size_t r = 0; r < target.size(); ++r) {
                auto it = im.terms.find(target[r]);
                if (it != im.terms.end()) M.at(r, cidx) = it->second;
            }
        }
        for (const auto& nv : nullspace(M)) {
            ExtElement p(n);
            for (size_t cidx = 0; cidx < basis.size(); ++cidx)
                if (!nv[cidx].is_zero()) p.add_term(basis[cidx], nv[cidx]);
            prim[static_cast<size_t>(j)].push_back(p);
            layer_of.emplace_back(j, prim[static_cast<size_t>(j)].size() - 1);
            lifted.push_back(lefschetz_pow(p, j, T));
        }
    }
    // solve x = sum coords * lifted
    auto full = qext_detail::bidegree_basis(n, a, b);
    Matrix<Gauss> A(full.size(), lifted.size());
    std::vector<Gauss> rhs(full.size(), Gauss(0));
    for (size_t c = 0; c < lifted.size(); ++c)
        for (size_t r = 0; r < full.size(); ++r) {
            auto it = lifted[c].terms.find(full[r]);
            if (it != lifted[c].terms.end()) A.at(r, c) = it->second;
        }
    for (size_t r = 0; r < full.size(); ++r) {
        auto it = x.terms.find(full[r]);
        if (it != x.terms.end()) rhs[r] = it->second;
    }
    auto sol = solve(A, rhs);
    if (!sol) throw std::runtime_error("hodge_star: Lefschetz decomposition failed");
    ExtElement out(n);
    int k0 = a + b;
    for (size_t c = 0; c < lifted.size(); ++c) {
        if ((*sol)[c].is_zero()) continue;
        auto [j, pi] = layer_of[c];
        int aa = a - j, bb = b - j, k = aa + bb;
        mpz_class fact = 1;
        for (int v = 2; v <= j; ++v) fact *= v;
        mpz_class denf = 1;
        for (int v = 2; v <= N - j - k; ++v) denf *= v;
        QRational ratio(Rat(fact) / Rat(denf));
        // the sign uses the primitive degree k = a' + b'
        Gauss coef = Gauss::i_power(aa - bb) * Gauss(ratio) *
                     Gauss(QRational((k * (k + 1) / 2) % 2 == 0 ? 1 : -1));
        out = out + coef * (*sol)[c] *
                        lefschetz_pow(prim[static_cast<size_t>(j)][pi], N - j - k, T);
    }
    return out;
}

}  // namespace qcpn
