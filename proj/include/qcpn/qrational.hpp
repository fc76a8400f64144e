#pragma once
// Exact arithmetic in Q(q): Laurent polynomials and rational functions in the
// deformation parameter q, with arbitrary-precision fraction coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcpn {

using Rat = mpq_class;

struct evaluation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Laurent polynomial sum_{k} c[k - low] * q^k.  Invariant: c is empty (zero)
// or both ends of c are nonzero.
struct Laurent {
    int low = 0;
    std::vector<Rat> c;

    Laurent() = default;
    static Laurent zero() { return Laurent{}; }
    static Laurent term(const Rat& coeff, int k) {
        Laurent r;
        if (coeff != 0) {
            r.low = k;
            r.c.push_back(coeff);
        }
        return r;
    }
    static Laurent one() { return term(1, 0); }

    bool is_zero() const { return c.empty(); }
    int high() const { return low + static_cast<int>(c.size()) - 1; }

    void trim() {
        size_t a = 0, b = c.size();
        while (b > a && c[b - 1] == 0) --b;
        while (a < b && c[a] == 0) ++a;
        if (a == b) {
            c.clear();
            low = 0;
            return;
        }
        if (a > 0) c.erase(c.begin(), c.begin() + static_cast<long>(a));
        c.resize(b - a);
        low += static_cast<int>(a);
    }

    Rat coeff(int k) const {
        if (c.empty() || k < low || k > high()) return Rat(0);
        return c[static_cast<size_t>(k - low)];
    }

    friend Laurent operator+(const Laurent& x, const Laurent& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        int lo = std::min(x.low, y.low);
        int hi = std::max(x.high(), y.high());
        Laurent r;
        r.low = lo;
        r.c.assign(static_cast<size_t>(hi - lo + 1), Rat(0));
        for (size_t i = 0; i < x.c.size(); ++i) r.c[static_cast<size_t>(x.low - lo) + i] += x.c[i];
        for (size_t i = 0; i < y.c.size(); ++i) r.c[static_cast<size_t>(y.low - lo) + i] += y.c[i];
        r.trim();
        return r;
    }
    friend Laurent operator-(const Laurent& x) {
        Laurent r = x;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend Laurent operator-(const Laurent& x, const Laurent& y) { return x + (-y); }
    friend Laurent operator*(const Laurent& x, const Laurent& y) {
        if (x.is_zero() || y.is_zero()) return Laurent{};
        Laurent r;
        r.low = x.low + y.low;
        r.c.assign(x.c.size() + y.c.size() - 1, Rat(0));
        for (size_t i = 0; i < x.c.size(); ++i)
            for (size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
        r.trim();
        return r;
    }
    friend bool operator==(const Laurent& x, const Laurent& y) {
        return x.low == y.low && x.c == y.c;
    }
    Laurent shifted(int k) const {
        Laurent r = *this;
        if (!r.is_zero()) r.low += k;
        return r;
    }
};

namespace detail {

// Ordinary polynomial helpers on coefficient vectors (index = exponent).

inline void poly_trim(std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    while (!a.empty() && a.size() >= b.size()) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        poly_trim(a);
    }
    return a;
}

inline std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& v : a) v /= lead;
    }
    return a;
}

inline std::vector<Rat> poly_divexact(std::vector<Rat> a, const std::vector<Rat>& b) {
    poly_trim(a);
    if (a.empty()) return a;
    if (a.size() < b.size()) throw std::logic_error("poly_divexact: degree mismatch");
    std::vector<Rat> qout(a.size() - b.size() + 1, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        qout[off] = f;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        poly_trim(a);
    }
    if (!a.empty()) throw std::logic_error("poly_divexact: nonzero remainder");
    return qout;
}

}  // namespace detail

// Rational function num/den in q.  Canonical form: den has lowest exponent 0,
// is monic, and gcd(num, den) = 1 (with any pure q-power pulled into num).
class QRational {
  public:
    QRational() : num_(), den_(Laurent::one()) {}
    QRational(int v) : num_(Laurent::term(Rat(v), 0)), den_(Laurent::one()) {}
    QRational(const Rat& v) : num_(Laurent::term(v, 0)), den_(Laurent::one()) {}
    QRational(const Laurent& n) : num_(n), den_(Laurent::one()) {}
    QRational(const Laurent& n, const Laurent& d) : num_(n), den_(d) {
        if (d.is_zero()) throw std::invalid_argument("QRational: zero denominator");
        canonicalize();
    }

    static QRational q_power(int k) { return QRational(Laurent::term(Rat(1), k)); }
    static QRational q() { return q_power(1); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Laurent::one() && den_ == Laurent::one(); }
    bool is_polynomial() const { return den_ == Laurent::one(); }

    friend QRational operator+(const QRational& x, const QRational& y) {
        return QRational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend QRational operator-(const QRational& x, const QRational& y) {
        return QRational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend QRational operator-(const QRational& x) {
        QRational r = x;
        r.num_ = -r.num_;
        return r;
    }
    friend QRational operator*(const QRational& x, const QRational& y) {
        return QRational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend QRational operator/(const QRational& x, const QRational& y) {
        if (y.is_zero()) throw std::invalid_argument("QRational: division by zero");
        return QRational(x.num_ * y.den_, x.den_ * y.num_);
    }
    QRational& operator+=(const QRational& o) { return *this = *this + o; }
    QRational& operator-=(const QRational& o) { return *this = *this - o; }
    QRational& operator*=(const QRational& o) { return *this = *this * o; }
    QRational& operator/=(const QRational& o) { return *this = *this / o; }

    QRational inverse() const {
        if (is_zero()) throw std::invalid_argument("QRational: inverse of zero");
        return QRational(den_, num_);
    }

    QRational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QRational r(1), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const QRational& x, const QRational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const QRational& x, const QRational& y) { return !(x == y); }

    // Exact evaluation at a rational point.
    Rat eval(const Rat& q0) const {
        auto eval_laurent = [&](const Laurent& p) -> Rat {
            if (p.is_zero()) return Rat(0);
            Rat acc(0);
            for (size_t i = p.c.size(); i-- > 0;) acc = acc * q0 + p.c[i];
            if (p.low != 0) {
                if (q0 == 0) {
                    if (p.low < 0) throw evaluation_error("negative exponent at q0 = 0");
                    return Rat(0);
                }
                Rat pw(1);
                int e = std::abs(p.low);
                for (int i = 0; i < e; ++i) pw *= q0;
                if (p.low > 0)
                    acc *= pw;
                else
                    acc /= pw;
            }
            return acc;
        };
        Rat d = eval_laurent(den_);
        if (d == 0) throw evaluation_error("pole");
        return eval_laurent(num_) / d;
    }
    double eval_double(const Rat& q0) const { return eval(q0).get_d(); }

    std::string str() const;
    static QRational parse(const std::string& s);

  private:
    Laurent num_, den_;

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Laurent::one();
            return;
        }
        // pull the denominator's q-power into the numerator
        num_.low -= den_.low;
        den_.low = 0;
        auto g = detail::poly_gcd(num_.c, den_.c);
        if (g.size() > 1) {
            num_.c = detail::poly_divexact(num_.c, g);
            den_.c = detail::poly_divexact(den_.c, g);
            num_.trim();
            den_.trim();
            num_.low -= den_.low;  // divexact may expose a q-power in den
            den_.low = 0;
        }
        Rat lead = den_.c.back();
        if (lead != 1) {
            for (auto& v : num_.c) v /= lead;
            for (auto& v : den_.c) v /= lead;
        }
    }
};

// quantum integer (m)_lambda = sum_{i<m} lambda^i
inline QRational qint(unsigned m, const QRational& lambda) {
    QRational acc(0), p(1);
    for (unsigned i = 0; i < m; ++i) {
        acc += p;
        p *= lambda;
    }
    return acc;
}

// bracket [m]_q = q^{1-m} + q^{3-m} + ... + q^{m-1}
inline QRational qbracket(unsigned m) {
    Laurent r;
    for (unsigned i = 0; i < m; ++i) r = r + Laurent::term(Rat(1), 1 - static_cast<int>(m) + 2 * static_cast<int>(i));
    return QRational(r);
}

inline QRational qfactorial(unsigned m) {
    QRational r(1);
    for (unsigned i = 1; i <= m; ++i) r *= qbracket(i);
    return r;
}

inline QRational qbinom(unsigned n, unsigned r) {
    if (r > n) throw std::invalid_argument("qbinom: r > n");
    return qfactorial(n) / (qfactorial(r) * qfactorial(n - r));
}

// ---- printing / parsing ----------------------------------------------------

namespace detail {

inline std::string rat_str(const Rat& v) { return v.get_str(); }

inline std::string laurent_str(const Laurent& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = p.low; k <= p.high(); ++k) {
        Rat c = p.coeff(k);
        if (c == 0) continue;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string body;
        if (k == 0) {
            body = rat_str(a);
        } else {
            std::string qpart = (k == 1) ? "q" : ("q^" + std::to_string(k));
            body = (a == 1) ? qpart : rat_str(a) + "*" + qpart;
        }
        out += body;
    }
    return out;
}

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
};

inline long parse_int(Lexer& lx) {
    lx.skip();
    bool neg = lx.eat('-');
    if (!neg) lx.eat('+');
    lx.skip();
    if (lx.i >= lx.s.size() || !isdigit(static_cast<unsigned char>(lx.s[lx.i])))
        throw parse_error("expected integer in: " + lx.s);
    long v = 0;
    while (lx.i < lx.s.size() && isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
        v = v * 10 + (lx.s[lx.i] - '0');
        ++lx.i;
    }
    return neg ? -v : v;
}

inline Laurent parse_laurent(Lexer& lx, char stop) {
    Laurent acc;
    bool first = true;
    for (;;) {
        lx.skip();
        if (lx.i >= lx.s.size() || lx.peek() == stop) break;
        int sign = 1;
        if (lx.eat('-'))
            sign = -1;
        else if (lx.eat('+')) {
        } else if (!first)
            throw parse_error("expected + or - in: " + lx.s);
        first = false;
        Rat coeff(1);
        bool have_coeff = false;
        lx.skip();
        if (lx.i < lx.s.size() && isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
            long numv = parse_int(lx);
            long denv = 1;
            if (lx.eat('/')) denv = parse_int(lx);
            coeff = Rat(numv, denv);
            coeff.canonicalize();
            have_coeff = true;
            lx.eat('*');
        }
        int k = 0;
        lx.skip();
        if (lx.i < lx.s.size() && lx.s[lx.i] == 'q') {
            ++lx.i;
            k = 1;
            if (lx.eat('^')) k = static_cast<int>(parse_int(lx));
        } else if (!have_coeff) {
            throw parse_error("expected term in: " + lx.s);
        }
        acc = acc + Laurent::term(sign < 0 ? Rat(-coeff) : coeff, k);
    }
    return acc;
}

}  // namespace detail

inline std::string QRational::str() const {
    if (is_polynomial()) return detail::laurent_str(num_);
    return "(" + detail::laurent_str(num_) + ")/(" + detail::laurent_str(den_) + ")";
}

inline QRational QRational::parse(const std::string& s) {
    detail::Lexer lx(s);
    if (lx.peek() == '(') {
        lx.eat('(');
        Laurent n = detail::parse_laurent(lx, ')');
        if (!lx.eat(')')) throw parse_error("expected ) in: " + s);
        if (lx.eat('/')) {
            if (!lx.eat('(')) throw parse_error("expected ( in: " + s);
            Laurent d = detail::parse_laurent(lx, ')');
            if (!lx.eat(')')) throw parse_error("expected ) in: " + s);
            lx.skip();
            if (lx.i != s.size()) throw parse_error("trailing input: " + s);
            return QRational(n, d);
        }
        lx.skip();
        if (lx.i != s.size()) throw parse_error("trailing input: " + s);
        return QRational(n);
    }
    Laurent n = detail::parse_laurent(lx, '\0');
    lx.skip();
    if (lx.i != s.size()) throw parse_error("trailing input: " + s);
    return QRational(n);
}

// Gaussian extension Q(q)(i), used by the Kahler form and the Hodge map.
struct Gauss {
    QRational re, im;

    Gauss() = default;
    Gauss(const QRational& r) : re(r) {}
    Gauss(int v) : re(v) {}
    Gauss(const QRational& r, const QRational& i) : re(r), im(i) {}
    static Gauss i() { return Gauss(QRational(0), QRational(1)); }
    // i^k
    static Gauss i_power(long k) {
        long m = ((k % 4) + 4) % 4;
        switch (m) {
            case 0: return Gauss(1);
            case 1: return i();
            case 2: return Gauss(QRational(-1));
            default: return Gauss(QRational(0), QRational(-1));
        }
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Gauss conj() const { return Gauss(re, QRational(0) - im); }

    friend Gauss operator+(const Gauss& x, const Gauss& y) { return {x.re + y.re, x.im + y.im}; }
    friend Gauss operator-(const Gauss& x, const Gauss& y) { return {x.re - y.re, x.im - y.im}; }
    friend Gauss operator-(const Gauss& x) { return {-x.re, -x.im}; }
    friend Gauss operator*(const Gauss& x, const Gauss& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    Gauss inverse() const {
        QRational n = re * re + im * im;
        if (n.is_zero()) throw std::invalid_argument("Gauss: inverse of zero");
        return {re / n, (QRational(0) - im) / n};
    }
    friend Gauss operator/(const Gauss& x, const Gauss& y) { return x * y.inverse(); }
    friend bool operator==(const Gauss& x, const Gauss& y) { return x.re == y.re && x.im == y.im; }
    friend bool operator!=(const Gauss& x, const Gauss& y) { return !(x == y); }
    Gauss& operator+=(const Gauss& o) { return *this = *this + o; }
    Gauss& operator-=(const Gauss& o) { return *this = *this - o; }
    Gauss& operator*=(const Gauss& o) { return *this = *this * o; }

    std::string str() const {
        if (im.is_zero()) return re.str();
        std::string s = re.is_zero() ? "" : re.str() + " + ";
        return s + "(" + im.str() + ")*i";
    }
};

}  // namespace qcpn
