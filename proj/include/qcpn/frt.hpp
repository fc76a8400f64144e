#pragma once
// The quantized coordinate algebra O_q(SU_n) in its FRT presentation:
// straightening normal forms for words in the generators u^i_j, quantum
// determinant, antipode by quantum minors, star structure, the dual pairing
// with U_q(sl_n) and the induced left action.

#include "qcpn/qrational.hpp"
#include "qcpn/repr.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace qcpn {

// A word in the generators; letter code (i-1)*n + (j-1) encodes u^i_j.
using FrtWord = std::vector<uint8_t>;

struct FrtWordLess {
    bool operator()(const FrtWord& a, const FrtWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

class FrtElement {
  public:
    int n = 2;
    std::map<FrtWord, QRational, FrtWordLess> terms;

    FrtElement() = default;
    explicit FrtElement(int rank) : n(rank) {}

    static FrtElement zero(int rank) { return FrtElement(rank); }
    static FrtElement scalar(int rank, const QRational& c) {
        FrtElement e(rank);
        if (!c.is_zero()) e.terms[{}] = c;
        return e;
    }
    static FrtElement one(int rank) { return scalar(rank, QRational(1)); }
    // u^i_j, 1-based
    static FrtElement gen(int rank, int i, int j) {
        if (i < 1 || j < 1 || i > rank || j > rank)
            throw std::invalid_argument("FrtElement::gen: index out of range");
        FrtElement e(rank);
        e.terms[{static_cast<uint8_t>((i - 1) * rank + (j - 1))}] = QRational(1);
        return e;
    }

    bool is_zero() const { return terms.empty(); }
    int row_of(uint8_t code) const { return code / n + 1; }
    int col_of(uint8_t code) const { return code % n + 1; }

    void add_term(const FrtWord& w, const QRational& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend FrtElement operator+(const FrtElement& x, const FrtElement& y) {
        FrtElement r = x;
        for (const auto& [w, c] : y.terms) r.add_term(w, c);
        return r;
    }
    friend FrtElement operator-(const FrtElement& x, const FrtElement& y) {
        FrtElement r = x;
        for (const auto& [w, c] : y.terms) r.add_term(w, QRational(0) - c);
        return r;
    }
    friend FrtElement operator*(const QRational& c, const FrtElement& x) {
        FrtElement r(x.n);
        if (c.is_zero()) return r;
        for (const auto& [w, v] : x.terms) r.terms[w] = c * v;
        return r;
    }
    friend bool operator==(const FrtElement& x, const FrtElement& y) {
        return x.n == y.n && x.terms == y.terms;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [w, c] : terms) d = std::max<int>(d, static_cast<int>(w.size()));
        return d;
    }
};

namespace frt_detail {

// Straighten an arbitrary linear combination of words into the normal form
// with letter codes weakly increasing.  The rewriting system is the standard
// quantum-matrix straightening: it terminates and is confluent.
inline FrtElement straighten(int n, const std::map<FrtWord, QRational, FrtWordLess>& input) {
    FrtElement out(n);
    std::map<FrtWord, QRational, FrtWordLess> work(input);
    while (!work.empty()) {
        auto it = std::prev(work.end());
        FrtWord w = it->first;
        QRational c = it->second;
        work.erase(it);
        if (c.is_zero()) continue;
        size_t t = 0;
        bool normal = true;
        for (; t + 1 < w.size(); ++t)
            if (w[t] > w[t + 1]) {
                normal = false;
                break;
            }
        if (normal) {
            out.add_term(w, c);
            continue;
        }
        int a = w[t] / n + 1, b = w[t] % n + 1;      // u^a_b
        int cc = w[t + 1] / n + 1, d = w[t + 1] % n + 1;  // u^c_d, (a,b) > (c,d)
        FrtWord swapped = w;
        std::swap(swapped[t], swapped[t + 1]);
        auto push = [&](const FrtWord& ww, const QRational& coeff) {
            if (coeff.is_zero()) return;
            auto [jt, fresh] = work.emplace(ww, coeff);
            if (!fresh) {
                jt->second += coeff;
                if (jt->second.is_zero()) work.erase(jt);
            }
        };
        if (a == cc || b == d) {
            // same row or same column: u^a_b u^a_d = q^{-1} u^a_d u^a_b (d<b)
            push(swapped, c * QRational::q_power(-1));
        } else if (b < d) {
            push(swapped, c);  // commuting case
        } else {
            // u^a_b u^c_d = u^c_d u^a_b - (q - q^{-1}) u^c_b u^a_d
            push(swapped, c);
            FrtWord corr = w;
            corr[t] = static_cast<uint8_t>((cc - 1) * n + (b - 1));
            corr[t + 1] = static_cast<uint8_t>((a - 1) * n + (d - 1));
            push(corr, c * (QRational::q_power(-1) - QRational::q()));
        }
    }
    return out;
}

}  // namespace frt_detail

inline FrtElement normalize(const FrtElement& raw) {
    return frt_detail::straighten(raw.n, raw.terms);
}

inline FrtElement mul(const FrtElement& x, const FrtElement& y) {
    if (x.n != y.n) throw std::invalid_argument("FrtElement: rank mismatch");
    std::map<FrtWord, QRational, FrtWordLess> prod;
    for (const auto& [wx, cx] : x.terms)
        for (const auto& [wy, cy] : y.terms) {
            FrtWord w = wx;
            w.insert(w.end(), wy.begin(), wy.end());
            QRational c = cx * cy;
            auto [it, fresh] = prod.emplace(w, c);
            if (!fresh) it->second += c;
        }
    return frt_detail::straighten(x.n, prod);
}

inline FrtElement operator*(const FrtElement& x, const FrtElement& y) { return mul(x, y); }

inline QRational counit(const FrtElement& a) {
    QRational acc(0);
    for (const auto& [w, c] : a.terms) {
        bool diag = true;
        for (uint8_t g : w)
            if (g / a.n != g % a.n) {
                diag = false;
                break;
            }
        if (diag) acc += c;
    }
    return acc;
}

namespace frt_detail {

inline void permutations(int m, const std::function<void(const std::vector<int>&, int)>& fn) {
    std::vector<int> perm(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<size_t>(i)] = i;
    do {
        int inv = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inv;
        fn(perm, inv);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace frt_detail

inline FrtElement det_q(int n) {
    std::map<FrtWord, QRational, FrtWordLess> acc;
    frt_detail::permutations(n, [&](const std::vector<int>& perm, int inv) {
        FrtWord w;
        for (int i = 0; i < n; ++i)
            w.push_back(static_cast<uint8_t>(i * n + perm[static_cast<size_t>(i)]));
        QRational c = (QRational(0) - QRational::q()).pow(inv);
        auto [it, fresh] = acc.emplace(w, c);
        if (!fresh) it->second += c;
    });
    return frt_detail::straighten(n, acc);
}

// Antipode of a single generator by the quantum-minor formula:
// S(u^i_j) = (-q)^{i-j} sum_sigma (-q)^{l(sigma)} u^{sigma(k_1)}_{l_1} ...
// with rows {1..n}\{j} and columns {1..n}\{i} in increasing order.
inline FrtElement antipode_gen(int n, int i, int j) {
    std::vector<int> rows, cols;
    for (int t = 1; t <= n; ++t) {
        if (t != j) rows.push_back(t);
        if (t != i) cols.push_back(t);
    }
    std::map<FrtWord, QRational, FrtWordLess> acc;
    QRational pre = (QRational(0) - QRational::q()).pow(i - j);
    frt_detail::permutations(n - 1, [&](const std::vector<int>& perm, int inv) {
        FrtWord w;
        for (int t = 0; t < n - 1; ++t) {
            int r = rows[static_cast<size_t>(perm[static_cast<size_t>(t)])];
            int c = cols[static_cast<size_t>(t)];
            w.push_back(static_cast<uint8_t>((r - 1) * n + (c - 1)));
        }
        QRational cf = pre * (QRational(0) - QRational::q()).pow(inv);
        auto [it, fresh] = acc.emplace(w, cf);
        if (!fresh) it->second += cf;
    });
    return frt_detail::straighten(n, acc);
}

namespace frt_detail {

inline const FrtElement& antipode_gen_cached(int n, int i, int j) {
    static std::map<std::tuple<int, int, int>, FrtElement> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto key = std::make_tuple(n, i, j);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, antipode_gen(n, i, j)).first;
    return it->second;
}

}  // namespace frt_detail

// Antipode, extended anti-multiplicatively; S-images expand immediately.
inline FrtElement antipode(const FrtElement& a) {
    FrtElement out(a.n);
    for (const auto& [w, c] : a.terms) {
        FrtElement prod = FrtElement::scalar(a.n, c);
        for (size_t t = w.size(); t-- > 0;) {
            int i = w[t] / a.n + 1, j = w[t] % a.n + 1;
            prod = prod * frt_detail::antipode_gen_cached(a.n, i, j);
        }
        out = out + prod;
    }
    return out;
}

// Star structure (u^i_j)^* = S(u^j_i), conjugate-linear anti-multiplicative;
// coefficients in Q(q) are their own conjugates (q real).
inline FrtElement star(const FrtElement& a) {
    FrtElement out(a.n);
    for (const auto& [w, c] : a.terms) {
        FrtElement prod = FrtElement::scalar(a.n, c);
        for (size_t t = w.size(); t-- > 0;) {
            int i = w[t] / a.n + 1, j = w[t] % a.n + 1;
            prod = prod * frt_detail::antipode_gen_cached(a.n, j, i);
        }
        out = out + prod;
    }
    return out;
}

// Membership of a in the two-sided ideal <det_q - 1> of O_q(M_n): since
// det_q is central and grouplike, a lies in the ideal iff within each
// residue class of degree mod n the det-homogenization cancels exactly.
inline bool in_determinant_ideal(const FrtElement& a) {
    if (a.is_zero()) return true;
    int n = a.n;
    FrtElement det = det_q(n);
    // split by degree
    std::map<int, FrtElement> parts;
    for (const auto& [w, c] : a.terms) {
        auto [it, fresh] = parts.emplace(static_cast<int>(w.size()), FrtElement(n));
        it->second.add_term(w, c);
    }
    std::map<int, FrtElement> classes;  // residue -> homogenized sum
    std::map<int, int> top;             // residue -> max degree
    for (const auto& [d, part] : parts) {
        int r = d % n;
        auto it = top.find(r);
        top[r] = it == top.end() ? d : std::max(it->second, d);
    }
    for (const auto& [d, part] : parts) {
        int r = d % n;
        FrtElement x = part;
        for (int k = 0; k < (top[r] - d) / n; ++k) x = x * det;
        auto [it, fresh] = classes.emplace(r, x);
        if (!fresh) it->second = it->second + x;
    }
    for (const auto& [r, x] : classes)
        if (!x.is_zero()) return false;
    return true;
}

inline bool equal_mod_ideal(const FrtElement& a, const FrtElement& b) {
    return in_determinant_ideal(a - b);
}

inline bool is_identity(const FrtElement& a) {
    return in_determinant_ideal(a - FrtElement::one(a.n));
}

// ---- U_q(sl_n) ------------------------------------------------------------

enum class UqType : uint8_t { E, F, K, Kinv };

struct UqGen {
    UqType type;
    int i;  // simple-root index, 1-based
};

struct UqTerm {
    QRational c;
    std::vector<UqGen> w;  // word, leftmost factor first
};

using UqElement = std::vector<UqTerm>;

inline UqElement uq_gen(UqType t, int i) { return {{QRational(1), {{t, i}}}}; }
inline UqElement uq_E(int i) { return uq_gen(UqType::E, i); }
inline UqElement uq_F(int i) { return uq_gen(UqType::F, i); }
inline UqElement uq_K(int i) { return uq_gen(UqType::K, i); }
inline UqElement uq_Kinv(int i) { return uq_gen(UqType::Kinv, i); }
inline UqElement uq_one() { return {{QRational(1), {}}}; }

inline UqElement uq_scale(const QRational& c, const UqElement& x) {
    UqElement r = x;
    for (auto& t : r) t.c *= c;
    return r;
}
inline UqElement uq_mul(const UqElement& x, const UqElement& y) {
    UqElement r;
    for (const auto& a : x)
        for (const auto& b : y) {
            UqTerm t{a.c * b.c, a.w};
            t.w.insert(t.w.end(), b.w.begin(), b.w.end());
            r.push_back(std::move(t));
        }
    return r;
}
inline UqElement uq_add(const UqElement& x, const UqElement& y) {
    UqElement r = x;
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

// antipode on U_q(sl_n): S(E) = -EK^{-1}, S(F) = -KF, S(K) = K^{-1}
inline UqElement uq_antipode(const UqElement& x) {
    UqElement out;
    for (const auto& t : x) {
        UqElement prod = {{t.c, {}}};
        for (size_t s = t.w.size(); s-- > 0;) {
            const UqGen& g = t.w[s];
            UqElement img;
            switch (g.type) {
                case UqType::E:
                    img = uq_scale(QRational(-1), uq_mul(uq_E(g.i), uq_Kinv(g.i)));
                    break;
                case UqType::F:
                    img = uq_scale(QRational(-1), uq_mul(uq_K(g.i), uq_F(g.i)));
                    break;
                case UqType::K: img = uq_Kinv(g.i); break;
                case UqType::Kinv: img = uq_K(g.i); break;
            }
            prod = uq_mul(prod, img);
        }
        out.insert(out.end(), prod.begin(), prod.end());
    }
    return out;
}

namespace frt_detail {

// <K_i^{+-1}, u^a_a> exponent
inline int k_exp(int i, int a) { return (i == a - 1 ? 1 : 0) - (i == a ? 1 : 0); }

// Pairing of a U_q word against a virtual monomial with given row and column
// index vectors (the monomial u^{rows_1}_{cols_1} ... u^{rows_r}_{cols_r}).
inline QRational pair_word(const std::vector<UqGen>& xw, size_t xi,
                           std::vector<int>& rows, const std::vector<int>& cols) {
    if (xi == xw.size()) {
        for (size_t t = 0; t < rows.size(); ++t)
            if (rows[t] != cols[t]) return QRational(0);
        return QRational(1);
    }
    const UqGen& g = xw[xi];
    if (g.type == UqType::K || g.type == UqType::Kinv) {
        // first leg must be diagonal: middle indices equal the rows
        int e = 0;
        for (int a : rows) e += k_exp(g.i, a);
        if (g.type == UqType::Kinv) e = -e;
        QRational f = QRational::q_power(e);
        return f * pair_word(xw, xi + 1, rows, cols);
    }
    QRational acc(0);
    if (g.type == UqType::E) {
        // one position t0 pairs E_i with u^{i+1}_i; letters after it pair K_i
        for (size_t t0 = 0; t0 < rows.size(); ++t0) {
            if (rows[t0] != g.i + 1) continue;
            int e = 0;
            for (size_t s = t0 + 1; s < rows.size(); ++s) e += k_exp(g.i, rows[s]);
            int saved = rows[t0];
            rows[t0] = g.i;  // middle index
            acc += QRational::q_power(e) * pair_word(xw, xi + 1, rows, cols);
            rows[t0] = saved;
        }
    } else {
        // F_i: one position pairs F_i with u^i_{i+1}; letters before pair K^{-1}
        for (size_t t0 = 0; t0 < rows.size(); ++t0) {
            if (rows[t0] != g.i) continue;
            int e = 0;
            for (size_t s = 0; s < t0; ++s) e -= k_exp(g.i, rows[s]);
            int saved = rows[t0];
            rows[t0] = g.i + 1;
            acc += QRational::q_power(e) * pair_word(xw, xi + 1, rows, cols);
            rows[t0] = saved;
        }
    }
    return acc;
}

}  // namespace frt_detail

inline QRational pair(const UqElement& x, const FrtElement& a) {
    QRational acc(0);
    for (const auto& xt : x) {
        if (xt.c.is_zero()) continue;
        for (const auto& [w, c] : a.terms) {
            std::vector<int> rows, cols;
            for (uint8_t g : w) {
                rows.push_back(g / a.n + 1);
                cols.push_back(g % a.n + 1);
            }
            QRational v = frt_detail::pair_word(xt.w, 0, rows, cols);
            acc += xt.c * c * v;
        }
    }
    return acc;
}

namespace frt_detail {

// single-generator left action on one monomial, appended into out (raw words)
inline void act_gen_word(UqType type, int i, int n, const FrtWord& w, const QRational& c,
                         std::map<FrtWord, QRational, FrtWordLess>& out) {
    auto push = [&](const FrtWord& ww, const QRational& coeff) {
        if (coeff.is_zero()) return;
        auto [it, fresh] = out.emplace(ww, coeff);
        if (!fresh) it->second += coeff;
    };
    if (type == UqType::K || type == UqType::Kinv) {
        int e = 0;
        for (uint8_t g : w) e -= k_exp(i, g / n + 1);
        if (type == UqType::Kinv) e = -e;
        push(w, c * QRational::q_power(e));
        return;
    }
    if (type == UqType::E) {
        // E_i |> (ab) = (K_i |> a)(E_i |> b) + (E_i |> a) b;
        // E_i |> u^{i+1}_b = -q u^i_b
        int prefix = 0;
        for (size_t t = 0; t < w.size(); ++t) {
            int row = w[t] / n + 1, col = w[t] % n + 1;
            if (row == i + 1) {
                FrtWord ww = w;
                ww[t] = static_cast<uint8_t>((i - 1) * n + (col - 1));
                push(ww, c * QRational::q_power(-prefix) * (QRational(0) - QRational::q()));
            }
            prefix += k_exp(i, row);
        }
        return;
    }
    // F_i |> (ab) = a (F_i |> b) + (F_i |> a)(K_i^{-1} |> b);
    // F_i |> u^i_b = -q^{-1} u^{i+1}_b
    int total = 0;
    for (uint8_t g : w) total += k_exp(i, g / n + 1);
    int prefix = 0;
    for (size_t t = 0; t < w.size(); ++t) {
        int row = w[t] / n + 1, col = w[t] % n + 1;
        int suffix = total - prefix - k_exp(i, row);
        if (row == i) {
            FrtWord ww = w;
            ww[t] = static_cast<uint8_t>(i * n + (col - 1));
            push(ww, c * QRational::q_power(suffix) * (QRational(0) - QRational::q_power(-1)));
        }
        prefix += k_exp(i, row);
    }
}

inline FrtElement act_gen(UqType type, int i, const FrtElement& a) {
    std::map<FrtWord, QRational, FrtWordLess> out;
    for (const auto& [w, c] : a.terms) act_gen_word(type, i, a.n, w, c, out);
    return straighten(a.n, out);
}

}  // namespace frt_detail

// Left action X |> a = <S(X), a_(1)> a_(2), via the twisted product rule.
inline FrtElement act(const UqElement& x, const FrtElement& a) {
    FrtElement out(a.n);
    for (const auto& t : x) {
        if (t.c.is_zero()) continue;
        FrtElement cur = a;
        for (size_t s = t.w.size(); s-- > 0;) cur = frt_detail::act_gen(t.w[s].type, t.w[s].i, cur);
        out = out + t.c * cur;
    }
    return out;
}

inline FrtElement z_gen(int i, int j, int n) {
    if (i < 1 || j < 1 || i > n || j > n) throw std::invalid_argument("z_gen: index out of range");
    return FrtElement::gen(n, i, n) * frt_detail::antipode_gen_cached(n, n, j);
}

// K-weight signature of a monomial (exponent of q under act(K_k))
inline std::vector<int> k_signature(int n, const FrtWord& w) {
    std::vector<int> e(static_cast<size_t>(n - 1), 0);
    for (uint8_t g : w) {
        int row = g / n + 1;
        for (int k = 1; k <= n - 1; ++k) e[static_cast<size_t>(k - 1)] += frt_detail::k_exp(k, row);
    }
    // act(K_k, m) = q^{sum (delta_{k,row} - delta_{k,row-1})} m = q^{-k_exp sum}
    for (auto& v : e) v = -v;
    return e;
}

// Highest-weight detection in O_q(SU_n): a must be killed by every E_k and be
// a simultaneous K-eigenvector modulo the determinant ideal.
inline std::optional<WeightA> highest_weight(const FrtElement& a) {
    if (a.is_zero()) throw std::invalid_argument("highest_weight: zero input");
    int n = a.n;
    std::map<std::vector<int>, FrtElement> classes;
    for (const auto& [w, c] : a.terms) {
        auto sig = k_signature(n, w);
        auto [it, fresh] = classes.emplace(sig, FrtElement(n));
        it->second.add_term(w, c);
    }
    std::optional<std::vector<int>> weight;
    for (const auto& [sig, part] : classes) {
        if (in_determinant_ideal(part)) continue;
        if (weight) return std::nullopt;  // two surviving weights
        weight = sig;
    }
    if (!weight) throw std::invalid_argument("highest_weight: input is zero in O_q(SU_n)");
    for (int k = 1; k <= n - 1; ++k)
        if (!in_determinant_ideal(act(uq_E(k), a))) return std::nullopt;
    return WeightA(n, *weight);
}

// Coefficients of X |> z_{ij} = sum_{c,d} coeff(c,d) z_{cd}; the span of the
// z-generators is a left subcomodule, with coefficient <S(X), u^i_c S(u^d_j)>.
inline std::map<std::pair<int, int>, QRational> act_on_z(const UqElement& x, int i, int j, int n) {
    std::map<std::pair<int, int>, QRational> out;
    UqElement sx = uq_antipode(x);
    for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d) {
            FrtElement m = FrtElement::gen(n, i, c) * frt_detail::antipode_gen_cached(n, d, j);
            QRational v = pair(sx, m);
            if (!v.is_zero()) out[{c, d}] = v;
        }
    return out;
}

// ---- textual format --------------------------------------------------------

inline std::string frt_str(const FrtElement& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : a.terms) {
        if (!first) out += " + ";
        first = false;
        std::string mono;
        for (uint8_t g : w) {
            if (!mono.empty()) mono += "*";
            mono += "u[" + std::to_string(g / a.n + 1) + "][" + std::to_string(g % a.n + 1) + "]";
        }
        std::string cs = c.str();
        bool simple = c.is_one();
        if (mono.empty())
            out += cs;
        else if (simple)
            out += mono;
        else
            out += "(" + cs + ")*" + mono;
    }
    return out;
}

}  // namespace qcpn
