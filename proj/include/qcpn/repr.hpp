#pragma once
// Type-A weight/partition combinatorics: horizontal-strip branching from
// U_q(sl_n) down to U_q(l_{n-1}), Weyl dimensions, antiholomorphic-form weight
// families and the multiplicity-free (Gelfand) check.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcpn {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, no trailing zeros

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) { normalize(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) { normalize(); }

    void normalize() {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (size_t i = 0; i + 1 < parts.size(); ++i)
            if (parts[i] < parts[i + 1]) throw std::invalid_argument("Partition: parts must decrease");
        for (int p : parts)
            if (p < 0) throw std::invalid_argument("Partition: negative part");
    }

    int rows() const { return static_cast<int>(parts.size()); }
    int part(int i) const { return (i >= 0 && i < rows()) ? parts[static_cast<size_t>(i)] : 0; }
    int boxes() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }

    Partition conjugate() const {
        std::vector<int> c;
        for (int j = 0; j < part(0); ++j) {
            int h = 0;
            while (h < rows() && part(h) > j) ++h;
            c.push_back(h);
        }
        return Partition(c);
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
    static Partition parse(const std::string& s);
};

inline Partition Partition::parse(const std::string& s) {
    size_t i = 0;
    auto skip = [&] { while (i < s.size() && s[i] == ' ') ++i; };
    skip();
    bool paren = i < s.size() && s[i] == '(';
    if (paren) ++i;
    std::vector<int> parts;
    for (;;) {
        skip();
        if (i >= s.size() || s[i] == ')') break;
        if (!isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("Partition::parse: " + s);
        int v = 0;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        parts.push_back(v);
        skip();
        if (i < s.size() && s[i] == ',') ++i;
    }
    if (paren) {
        if (i >= s.size() || s[i] != ')') throw std::invalid_argument("Partition::parse: missing )");
    }
    return Partition(parts);
}

// Weight of sl_n in the fundamental-weight basis.
struct WeightA {
    int n = 2;                // rank parameter: weights of sl_n
    std::vector<int> a;       // coefficients a_1..a_{n-1}

    WeightA() = default;
    WeightA(int rank, std::vector<int> coeffs) : n(rank), a(std::move(coeffs)) {
        a.resize(static_cast<size_t>(n - 1), 0);
    }
    static WeightA zero(int rank) { return WeightA(rank, {}); }
    static WeightA fundamental(int rank, int k) {
        WeightA w = zero(rank);
        if (k < 1 || k > rank - 1) throw std::invalid_argument("fundamental: index out of range");
        w.a[static_cast<size_t>(k - 1)] = 1;
        return w;
    }

    bool dominant() const {
        return std::all_of(a.begin(), a.end(), [](int v) { return v >= 0; });
    }

    // partition with parts p_i = a_i + ... + a_{n-1}
    Partition to_partition() const {
        if (!dominant()) throw std::invalid_argument("to_partition: non-dominant");
        std::vector<int> p(a.size());
        int acc = 0;
        for (size_t i = a.size(); i-- > 0;) {
            acc += a[i];
            p[i] = acc;
        }
        return Partition(p);
    }
    static WeightA from_partition(const Partition& mu, int rank) {
        if (mu.rows() > rank - 1) throw std::invalid_argument("from_partition: too many rows");
        std::vector<int> a(static_cast<size_t>(rank - 1), 0);
        for (int i = 0; i < rank - 1; ++i) a[static_cast<size_t>(i)] = mu.part(i) - mu.part(i + 1);
        return WeightA(rank, a);
    }

    WeightA operator+(const WeightA& o) const {
        WeightA r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
        return r;
    }
    WeightA scaled(int c) const {
        WeightA r = *this;
        for (auto& v : r.a) v *= c;
        return r;
    }
    friend bool operator==(const WeightA& x, const WeightA& y) { return x.n == y.n && x.a == y.a; }
    friend bool operator<(const WeightA& x, const WeightA& y) {
        return std::tie(x.n, x.a) < std::tie(y.n, y.a);
    }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += (a[i] == 1 ? "" : std::to_string(a[i]) + "*") + std::string("w") + std::to_string(i + 1);
        }
        return s.empty() ? "0" : s;
    }
};

// Irreducible U_q(l_{n-1})-module V_nu(m): sl_{n-1} highest weight nu (as a
// partition with < n-1 rows) together with the central K_{n-1} weight m.
struct LevWeight {
    Partition nu;
    int m = 0;

    LevWeight() = default;
    LevWeight(Partition p, int mm) : nu(std::move(p)), m(mm) {}

    friend bool operator==(const LevWeight& x, const LevWeight& y) { return x.nu == y.nu && x.m == y.m; }
    friend bool operator<(const LevWeight& x, const LevWeight& y) {
        return std::tie(x.nu, x.m) < std::tie(y.nu, y.m);
    }
    std::string str() const { return "V[" + nu.str() + "](m=" + std::to_string(m) + ")"; }
    static LevWeight parse(const std::string& s) {
        auto lb = s.find("V[");
        auto rb = s.find("](m=");
        auto end = s.rfind(')');
        if (lb != 0 || rb == std::string::npos || end == std::string::npos)
            throw std::invalid_argument("LevWeight::parse: " + s);
        Partition p = Partition::parse(s.substr(2, rb - 2));
        int mm = std::stoi(s.substr(rb + 4, end - rb - 4));
        return LevWeight(p, mm);
    }
};

// All nu interlacing mu: mu_1 >= nu_1 >= mu_2 >= nu_2 >= ..., in
// lexicographically descending order.
inline std::vector<Partition> hsc(const Partition& mu) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == mu.rows()) {
            out.emplace_back(std::vector<int>(cur));
            return;
        }
        int hi = mu.part(i), lo = mu.part(i + 1);
        for (int v = hi; v >= lo; --v) {
            cur.push_back(v);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Type-A Weyl dimension formula via the product over positive roots.
inline long weyl_dim(const WeightA& mu) {
    if (!mu.dominant()) throw std::invalid_argument("weyl_dim: non-dominant weight");
    // lambda_i = partial sums; (mu + rho, eps_i - eps_j) = l_i - l_j + j - i
    std::vector<long> l(static_cast<size_t>(mu.n), 0);
    for (int i = 0; i < mu.n - 1; ++i)
        for (int j = 0; j <= i; ++j) l[static_cast<size_t>(j)] += mu.a[static_cast<size_t>(i)];
    mpz_class num = 1, den = 1;
    for (int i = 0; i < mu.n; ++i)
        for (int j = i + 1; j < mu.n; ++j) {
            num *= l[static_cast<size_t>(i)] - l[static_cast<size_t>(j)] + j - i;
            den *= j - i;
        }
    mpz_class d = num / den;
    return d.get_si();
}

// Branching of V_mu from U_q(sl_n) to U_q(l_{n-1}), one summand per
// horizontal strip: V_{nu - nu_{n-1} w_{n-1}}(nu_{n-1} - |mu \ nu|).
inline std::vector<LevWeight> branch(const Partition& mu, int n) {
    if (mu.rows() > n - 1) throw std::invalid_argument("branch: partition has too many rows");
    std::vector<LevWeight> out;
    for (const Partition& nu : hsc(mu)) {
        int last = nu.part(n - 2);  // nu_{n-1}
        std::vector<int> bar;
        for (int i = 0; i < n - 2; ++i) bar.push_back(nu.part(i) - last);
        int strip = mu.boxes() - nu.boxes();
        out.emplace_back(Partition(bar), last - strip);
    }
    return out;
}

inline int frobenius_mult(const Partition& mu, const LevWeight& v, int n) {
    int c = 0;
    for (const auto& w : branch(mu, n))
        if (w == v) ++c;
    return c;
}

enum class Family { exact, coexact, harmonic };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::exact: return "exact";
        case Family::coexact: return "coexact";
        default: return "harmonic";
    }
}

struct OmegaWeight {
    WeightA weight;
    Family family;
    int l = 0;
};

// Decomposition of Omega^{(0,k)} for O_q(CP^{n-1}) into highest weights:
// exact family (l+k) w1 + w_{n-k} + l w_{n-1} for 1 <= k <= n-1, coexact
// family (l+k+1) w1 + w_{n-k-1} + l w_{n-1} for 0 <= k <= n-2 (at k = 0 this
// reads (l+1) w1 + (l+1) w_{n-1}), harmonic line only at k = 0.
inline std::vector<OmegaWeight> omega_weights(int n, int k, int l_max) {
    if (k < 0 || k > n - 1) throw std::invalid_argument("omega_weights: k out of range");
    auto fam_weight = [&](int kk, int l, bool coex) {
        WeightA w = WeightA::zero(n);
        int c1 = l + kk + (coex ? 1 : 0);
        w.a[0] += c1;
        int mid = coex ? n - kk - 1 : n - kk;
        if (mid >= 1 && mid <= n - 1) w.a[static_cast<size_t>(mid - 1)] += 1;
        w.a[static_cast<size_t>(n - 2)] += l;
        return w;
    };
    std::vector<OmegaWeight> out;
    if (k == 0) out.push_back({WeightA::zero(n), Family::harmonic, 0});
    for (int l = 0; l <= l_max; ++l) {
        if (k >= 1) out.push_back({fam_weight(k, l, false), Family::exact, l});
        if (k <= n - 2) out.push_back({fam_weight(k, l, true), Family::coexact, l});
    }
    return out;
}

struct GelfandReport {
    bool ok = true;
    std::vector<std::pair<OmegaWeight, OmegaWeight>> collisions;
};

inline GelfandReport gelfand_check(int n, int k, int l_max) {
    GelfandReport rep;
    auto ws = omega_weights(n, k, l_max);
    std::map<WeightA, OmegaWeight> seen;
    for (const auto& w : ws) {
        auto [it, fresh] = seen.emplace(w.weight, w);
        if (!fresh) {
            rep.ok = false;
            rep.collisions.emplace_back(it->second, w);
        }
    }
    return rep;
}

// Kramer's table of spherical weights, shipped as static data.  Weights are
// lists of (fundamental index, coefficient).
using SphericalWeight = std::vector<std::pair<int, int>>;

inline std::vector<SphericalWeight> spherical_weights(const std::string& family,
                                                      int p1 = 0, int p2 = 0) {
    std::vector<SphericalWeight> out;
    if (family == "Gr") {  // Gr_{r,s}, r <= s
        int r = p1, s = p2;
        if (r < 1 || s < r) throw std::invalid_argument("spherical_weights: Gr needs 1 <= r <= s");
        for (int i = 1; i <= r; ++i) {
            if (i == r + s - i)
                out.push_back({{i, 2}});
            else
                out.push_back({{i, 1}, {r + s - i, 1}});
        }
    } else if (family == "Q_odd") {  // Q_{2n+1}
        out = {{{1, 2}}, {{2, 1}}};
    } else if (family == "L") {  // L_n
        for (int i = 1; i <= p1; ++i) out.push_back({{i, 2}});
    } else if (family == "Q_even") {  // Q_{2n}
        out = {{{1, 2}}, {{2, 1}}};
    } else if (family == "S_even") {  // S_{2m}; crossed node picks 2m-1 or 2m
        int m = p1, node = p2 ? p2 : 2 * p1;
        for (int i = 2; i <= 2 * m - 2; i += 2) out.push_back({{i, 1}});
        out.push_back({{node, 2}});
    } else if (family == "S_odd") {  // S_{2m+1}
        int m = p1;
        for (int i = 2; i <= 2 * m - 2; i += 2) out.push_back({{i, 1}});
        out.push_back({{2 * m, 1}, {2 * m + 1, 1}});
    } else if (family == "OP2") {
        out = {{{1, 1}, {5, 1}}, {{6, 1}}};
    } else if (family == "F") {
        out = {{{1, 2}}, {{2, 1}}, {{6, 1}}};
    } else {
        throw std::invalid_argument("spherical_weights: unknown family " + family);
    }
    return out;
}

}  // namespace qcpn
