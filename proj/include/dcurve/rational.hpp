#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "dcurve/errors.hpp"

namespace dcurve {

/// Univariate polynomial in t with arbitrary-precision rational coefficients.
///
/// Coefficients are stored in ascending degree with no trailing zeros; the
/// zero polynomial has an empty coefficient vector and degree -1.
class QPoly {
  public:
    QPoly() = default;
    QPoly(int c) : QPoly(mpq_class(c)) {}
    QPoly(const mpq_class& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly t() { return QPoly(std::vector<mpq_class>{mpq_class(0), mpq_class(1)}); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    mpq_class coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return mpq_class(0);
        return c_[k];
    }
    const mpq_class& leading() const {
        if (is_zero()) throw domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<mpq_class> r(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<mpq_class> r(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return QPoly(std::move(r));
    }
    QPoly operator-() const {
        std::vector<mpq_class> r(c_);
        for (auto& x : r) x = -x;
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        if (a.c_.size() + b.c_.size() < 10) {
            std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, mpq_class(0));
            for (size_t i = 0; i < a.c_.size(); ++i)
                for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
            return QPoly(std::move(r));
        }
        // larger products run over the integers; mpq arithmetic hides a gcd
        // in every operation
        auto [ca, za] = a.content_primitive();
        auto [cb, zb] = b.content_primitive();
        std::vector<mpz_class> r(za.size() + zb.size() - 1);
        for (size_t i = 0; i < za.size(); ++i) {
            if (za[i] == 0) continue;
            for (size_t j = 0; j < zb.size(); ++j)
                if (zb[j] != 0) r[i + j] += za[i] * zb[j];
        }
        mpq_class scale = ca * cb;
        std::vector<mpq_class> out(r.size());
        for (size_t i = 0; i < r.size(); ++i) out[i] = mpq_class(r[i]) * scale;
        return QPoly(std::move(out));
    }
    friend QPoly operator*(const QPoly& a, const mpq_class& s) {
        if (s == 0) return QPoly();
        std::vector<mpq_class> r(a.c_);
        for (auto& x : r) x *= s;
        return QPoly(std::move(r));
    }

    /// Euclidean division: a = b*q + r with deg(r) < deg(b).
    static std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
        if (b.is_zero()) throw division_by_zero("polynomial division by zero");
        QPoly r = a;
        std::vector<mpq_class> q;
        if (a.degree() >= b.degree()) q.assign(a.degree() - b.degree() + 1, mpq_class(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int k = r.degree() - b.degree();
            mpq_class c = r.leading() / b.leading();
            q[k] = c;
            std::vector<mpq_class> sub(k + b.c_.size(), mpq_class(0));
            for (size_t i = 0; i < b.c_.size(); ++i) sub[k + i] = b.c_[i] * c;
            r = r - QPoly(std::move(sub));
        }
        return {QPoly(std::move(q)), r};
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0. Computed modularly:
    /// word-prime images with CRT lifting and a trial-division certificate,
    /// falling back to the subresultant pseudo-remainder sequence if the
    /// prime table runs out. The common coprime case costs one word-size
    /// Euclid.
    static QPoly gcd(const QPoly& a, const QPoly& b) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        if (a.degree() == 0 || b.degree() == 0) return QPoly(1);

        std::vector<mpz_class> za = a.integer_primitive(), zb = b.integer_primitive();
        if (za.size() < zb.size()) za.swap(zb);

        mpz_class lead_gcd;
        mpz_gcd(lead_gcd.get_mpz_t(), za.back().get_mpz_t(), zb.back().get_mpz_t());

        std::vector<mpz_class> lift;     // CRT accumulation, degree = best so far
        std::vector<mpz_class> prev_sym; // symmetric lift from the previous round
        mpz_class modulus = 1;
        for (unsigned long p : modgcd_primes()) {
            if (mpz_fdiv_ui(za.back().get_mpz_t(), p) == 0) continue;
            if (mpz_fdiv_ui(zb.back().get_mpz_t(), p) == 0) continue;
            std::vector<unsigned long> image = zp_gcd(zp_reduce(za, p), zp_reduce(zb, p), p);
            if (image.size() == 1) return QPoly(1);
            if (!lift.empty() && image.size() > lift.size()) continue; // unlucky prime
            // scale the monic image so all images agree: leading coeff lead_gcd
            unsigned long scale = mpz_fdiv_ui(lead_gcd.get_mpz_t(), p);
            for (auto& c : image) c = mulmod(c, scale, p);
            if (lift.empty() || image.size() < lift.size()) {
                lift.assign(image.begin(), image.end());
                modulus = p;
                prev_sym.clear();
            } else {
                crt_step(lift, modulus, image, p);
                modulus *= p;
            }
            std::vector<mpz_class> sym = lift;
            for (auto& c : sym)
                if (2 * c > modulus) c -= modulus;
            if (sym == prev_sym) {
                std::vector<mpz_class> cand = sym;
                z_make_primitive(cand);
                if (z_divides(cand, za) && z_divides(cand, zb)) {
                    std::vector<mpq_class> out(cand.begin(), cand.end());
                    return QPoly(std::move(out)).monic();
                }
            }
            prev_sym = std::move(sym);
        }
        return subresultant_gcd(za, zb);
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        mpq_class inv = 1 / leading();
        return *this * inv;
    }

    /// Exact quotient p / g; g must divide p. Runs over integer primitive
    /// parts so no rational arithmetic happens in the inner loop.
    static QPoly exact_div(const QPoly& p, const QPoly& g) {
        if (g.is_zero()) throw division_by_zero("polynomial exact division by zero");
        if (p.is_zero() || g.is_one()) return p;
        if (g.degree() == 0) return p * (1 / g.coeff(0));
        auto [cp, zp] = p.content_primitive();
        auto [cg, zg] = g.content_primitive();
        std::vector<mpz_class> zq = z_divide_exact(zp, zg);
        mpq_class scale = cp / cg;
        std::vector<mpq_class> out(zq.size());
        for (size_t i = 0; i < zq.size(); ++i) out[i] = mpq_class(zq[i]) * scale;
        return QPoly(std::move(out));
    }

    QPoly derivative() const {
        if (c_.size() <= 1) return QPoly();
        std::vector<mpq_class> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<int>(i);
        return QPoly(std::move(r));
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    /// Compact form, descending powers: "t^2+1", "-t+1/2", "0".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const mpq_class& c = c_[k];
            if (c == 0) continue;
            mpq_class mag = c < 0 ? mpq_class(-c) : c;
            bool neg = c < 0;
            std::string piece;
            if (k == 0) {
                piece = mag.get_str();
            } else {
                std::string var = k == 1 ? "t" : "t^" + std::to_string(k);
                piece = (mag == 1) ? var : mag.get_str() + "*" + var;
            }
            if (out.empty())
                out = (neg ? "-" : "") + piece;
            else
                out += (neg ? "-" : "+") + piece;
        }
        return out;
    }

  private:
    std::vector<mpq_class> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    /// Split a nonzero polynomial as (positive rational content, primitive
    /// integer coefficient vector); content * primitive reproduces it.
    std::pair<mpq_class, std::vector<mpz_class>> content_primitive() const {
        mpz_class lcm = 1;
        for (const auto& q : c_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> z(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) {
            mpq_class scaled = c_[i] * mpq_class(lcm);
            z[i] = scaled.get_num(); // denominator is 1 after scaling
        }
        mpz_class content = 0;
        for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content > 1)
            for (auto& c : z) c /= content;
        return {mpq_class(content) / mpq_class(lcm), std::move(z)};
    }

    /// Integer coefficient vector after clearing denominators and dividing
    /// out the content; the polynomial must be nonzero.
    std::vector<mpz_class> integer_primitive() const { return content_primitive().second; }

    /// Exact quotient of integer coefficient vectors; the division must come
    /// out even (Gauss guarantees this for primitive part quotients).
    static std::vector<mpz_class> z_divide_exact(std::vector<mpz_class> a,
                                                 const std::vector<mpz_class>& d) {
        std::vector<mpz_class> q(a.size() - d.size() + 1);
        while (a.size() >= d.size()) {
            if (a.back() % d.back() != 0)
                throw internal_error("inexact polynomial division");
            mpz_class qc = a.back() / d.back();
            size_t off = a.size() - d.size();
            q[off] = qc;
            if (qc != 0)
                for (size_t i = 0; i + 1 < d.size(); ++i) a[off + i] -= qc * d[i];
            a.pop_back();
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        if (!a.empty()) throw internal_error("inexact polynomial division");
        return q;
    }

    static void z_make_primitive(std::vector<mpz_class>& z) {
        mpz_class content = 0;
        for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content > 1)
            for (auto& c : z) c /= content;
    }

    /// Pseudo-remainder over Z: lc(b)^(deg a - deg b + 1) * a mod b.
    /// Result trimmed; empty vector encodes zero.
    static std::vector<mpz_class> z_pseudo_rem(std::vector<mpz_class> a,
                                               const std::vector<mpz_class>& b) {
        int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
        const mpz_class& lb = b.back();
        for (int k = da; k >= db; --k) {
            mpz_class lead = a[k];
            for (auto& c : a) c *= lb;
            if (lead != 0)
                for (int i = 0; i <= db; ++i) a[k - db + i] -= lead * b[i];
        }
        a.resize(db > 0 ? db : 0);
        while (!a.empty() && a.back() == 0) a.pop_back();
        return a;
    }

    /// Brown's subresultant PRS; inputs primitive, both of degree >= 1.
    static QPoly subresultant_gcd(std::vector<mpz_class> za, std::vector<mpz_class> zb) {
        mpz_class g = 1, h = 1;
        for (;;) {
            int d = static_cast<int>(za.size()) - static_cast<int>(zb.size());
            std::vector<mpz_class> r = z_pseudo_rem(za, zb);
            if (r.empty()) break;
            if (r.size() == 1) return QPoly(1);
            mpz_class divisor = g;
            for (int i = 0; i < d; ++i) divisor *= h;
            for (auto& c : r) c /= divisor;
            za.swap(zb);
            zb.swap(r);
            g = za.back();
            if (d > 0) {
                mpz_class gp, hp;
                mpz_pow_ui(gp.get_mpz_t(), g.get_mpz_t(), d);
                mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), d - 1);
                h = gp / hp;
            }
        }
        z_make_primitive(zb);
        std::vector<mpq_class> out(zb.begin(), zb.end());
        return QPoly(std::move(out)).monic();
    }

    /// Exact divisibility over Z for primitive divisor candidates.
    static bool z_divides(const std::vector<mpz_class>& d, std::vector<mpz_class> a) {
        if (d.empty()) return false;
        while (a.size() >= d.size()) {
            if (a.back() % d.back() != 0) return false;
            mpz_class q = a.back() / d.back();
            size_t off = a.size() - d.size();
            for (size_t i = 0; i < d.size(); ++i) a[off + i] -= q * d[i];
            if (a.back() != 0) return false;
            a.pop_back();
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a.empty();
    }

    static unsigned long mulmod(unsigned long a, unsigned long b, unsigned long p) {
        return static_cast<unsigned long>((static_cast<unsigned long long>(a) * b) % p);
    }
    static unsigned long powmod(unsigned long a, unsigned long e, unsigned long p) {
        unsigned long r = 1;
        for (; e; e >>= 1) {
            if (e & 1) r = mulmod(r, a, p);
            a = mulmod(a, a, p);
        }
        return r;
    }

    static std::vector<unsigned long> zp_reduce(const std::vector<mpz_class>& z,
                                                unsigned long p) {
        std::vector<unsigned long> r(z.size());
        for (size_t i = 0; i < z.size(); ++i) {
            r[i] = mpz_fdiv_ui(z[i].get_mpz_t(), p);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    /// Monic gcd over Z/p; coefficient vectors ascending, empty = zero.
    static std::vector<unsigned long> zp_gcd(std::vector<unsigned long> a,
                                             std::vector<unsigned long> b, unsigned long p) {
        auto rem = [&](std::vector<unsigned long> x, const std::vector<unsigned long>& y) {
            unsigned long inv = powmod(y.back(), p - 2, p);
            while (x.size() >= y.size()) {
                unsigned long c = mulmod(x.back(), inv, p);
                size_t off = x.size() - y.size();
                for (size_t i = 0; i < y.size(); ++i) {
                    unsigned long sub = mulmod(c, y[i], p);
                    x[off + i] = (x[off + i] + p - sub) % p;
                }
                while (!x.empty() && x.back() == 0) x.pop_back();
            }
            return x;
        };
        while (!b.empty()) {
            std::vector<unsigned long> r = rem(std::move(a), b);
            a = std::move(b);
            b = std::move(r);
        }
        unsigned long inv = powmod(a.back(), p - 2, p);
        for (auto& c : a) c = mulmod(c, inv, p);
        return a;
    }

    /// One CRT step: lift (mod m) and image (mod p) into lift (mod m*p).
    static void crt_step(std::vector<mpz_class>& lift, const mpz_class& m,
                         const std::vector<unsigned long>& image, unsigned long p) {
        mpz_class m_mod_p_inv;
        {
            unsigned long mp = mpz_fdiv_ui(m.get_mpz_t(), p);
            m_mod_p_inv = powmod(mp, p - 2, p);
        }
        for (size_t i = 0; i < lift.size(); ++i) {
            unsigned long have = mpz_fdiv_ui(lift[i].get_mpz_t(), p);
            unsigned long want = i < image.size() ? image[i] : 0;
            unsigned long diff = (want + p - have) % p;
            unsigned long mult = mulmod(diff, static_cast<unsigned long>(m_mod_p_inv.get_ui()), p);
            lift[i] += m * static_cast<unsigned long>(mult);
        }
    }

    static const std::vector<unsigned long>& modgcd_primes() {
        static const std::vector<unsigned long> table = [] {
            std::vector<unsigned long> v;
            mpz_class p = mpz_class(1) << 31;
            while (v.size() < 128) {
                mpz_class q;
                mpz_nextprime(q.get_mpz_t(), p.get_mpz_t());
                v.push_back(q.get_ui());
                p = q;
            }
            return v;
        }();
        return table;
    }
};

/// Element of the base differential field Q(t) with derivation d/dt.
///
/// Canonical form: gcd(num, den) = 1 and den monic; zero is 0/1. Equality is
/// structural equality of canonical forms, so zero tests are exact. Values
/// are immutable after construction and safe to share across threads.
class ScalarRat {
  public:
    ScalarRat() : num_(), den_(1) {}
    ScalarRat(int n) : num_(n), den_(1) {}
    ScalarRat(const mpq_class& q) : num_(q), den_(1) {}
    ScalarRat(const QPoly& num) : num_(num), den_(1) {}
    ScalarRat(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
        canonicalize();
    }

    static ScalarRat t() { return ScalarRat(QPoly::t()); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    /// True iff d/dt annihilates the value, i.e. the value lies in Q.
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

    // Sums and products of canonical fractions are renormalized with the
    // classical small-gcd algorithms (Knuth 4.5.1) instead of one big gcd.
    friend ScalarRat operator+(const ScalarRat& a, const ScalarRat& b) {
        return add_impl(a, b, false);
    }
    friend ScalarRat operator-(const ScalarRat& a, const ScalarRat& b) {
        return add_impl(a, b, true);
    }
    ScalarRat operator-() const {
        ScalarRat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    friend ScalarRat operator*(const ScalarRat& a, const ScalarRat& b) {
        if (a.is_zero() || b.is_zero()) return ScalarRat(0);
        QPoly g1 = QPoly::gcd(a.num_, b.den_);
        QPoly g2 = QPoly::gcd(b.num_, a.den_);
        ScalarRat r;
        r.num_ = QPoly::exact_div(a.num_, g1) * QPoly::exact_div(b.num_, g2);
        r.den_ = QPoly::exact_div(a.den_, g2) * QPoly::exact_div(b.den_, g1);
        return r; // cross-cancellation leaves a canonical monic-den fraction
    }
    friend ScalarRat operator/(const ScalarRat& a, const ScalarRat& b) {
        return a * b.inv();
    }
    ScalarRat inv() const {
        if (is_zero()) throw division_by_zero("inverse of zero");
        ScalarRat r;
        mpq_class lead = num_.leading();
        mpq_class scale = 1 / lead;
        r.num_ = den_ * scale;
        r.den_ = num_ * scale;
        return r;
    }
    ScalarRat pow(int e) const {
        if (e < 0) throw domain_error("negative exponent");
        ScalarRat r(1), base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * base;
            base = base * base;
        }
        return r;
    }

    /// delta(p/q) = (p'q - pq')/q^2. For squarefree q the result is already
    /// canonical; otherwise the shared gcd(q, q') part is cancelled first.
    ScalarRat derive() const {
        QPoly dq = den_.derivative();
        QPoly g = QPoly::gcd(den_, dq);
        if (g.is_one()) {
            ScalarRat r;
            r.num_ = num_.derivative() * den_ - num_ * dq;
            r.den_ = den_ * den_;
            if (r.num_.is_zero()) r.den_ = QPoly(1);
            return r;
        }
        QPoly qg = QPoly::exact_div(den_, g);
        return ScalarRat(num_.derivative() * qg - num_ * QPoly::exact_div(dq, g), den_ * qg);
    }

    friend bool operator==(const ScalarRat& a, const ScalarRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ScalarRat& a, const ScalarRat& b) { return !(a == b); }

    /// Canonical form: "(t^2+1)/(t+2)", "1/t", "t^2+1", "0".
    std::string str() const {
        if (den_.is_one()) return num_.str();
        std::string n = num_.str();
        if (multi_term(num_)) n = "(" + n + ")";
        std::string d = den_.str();
        if (multi_term(den_)) d = "(" + d + ")";
        return n + "/" + d;
    }

    static bool multi_term(const QPoly& p) {
        int nonzero = 0;
        for (int k = 0; k <= p.degree(); ++k)
            if (p.coeff(k) != 0) ++nonzero;
        return nonzero > 1;
    }

  private:
    QPoly num_, den_;

    /// Knuth 4.5.1 addition of canonical fractions: the only gcds taken are
    /// between the denominators and of the combined numerator with that gcd.
    static ScalarRat add_impl(const ScalarRat& a, const ScalarRat& b, bool negate) {
        if (a.is_zero()) return negate ? -b : b;
        if (b.is_zero()) return a;
        QPoly n2 = negate ? -b.num_ : b.num_;
        QPoly g1 = QPoly::gcd(a.den_, b.den_);
        ScalarRat r;
        if (g1.is_one()) {
            r.num_ = a.num_ * b.den_ + n2 * a.den_;
            r.den_ = a.den_ * b.den_;
        } else {
            QPoly t = a.num_ * QPoly::exact_div(b.den_, g1) + n2 * QPoly::exact_div(a.den_, g1);
            if (t.is_zero()) return ScalarRat(0);
            QPoly g2 = QPoly::gcd(t, g1);
            r.num_ = QPoly::exact_div(t, g2);
            r.den_ = QPoly::exact_div(a.den_, g1) * QPoly::exact_div(b.den_, g2);
        }
        if (r.num_.is_zero()) return ScalarRat(0);
        return r;
    }

    void canonicalize() {
        if (den_.is_zero()) throw division_by_zero("zero denominator");
        if (num_.is_zero()) {
            den_ = QPoly(1);
            return;
        }
        QPoly g = QPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = QPoly::exact_div(num_, g);
            den_ = QPoly::exact_div(den_, g);
        }
        mpq_class lead = den_.leading();
        if (lead != 1) {
            mpq_class inv = 1 / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }
};

namespace detail {

inline bool scalar_multi_term(const ScalarRat& c) {
    return ScalarRat::multi_term(c.num()) || !c.den().is_one();
}

// A single-term numerator with unit denominator chains safely in a product
// ("3*t^2*D"); fractions are safe too since * and / are left-associative.
// Only a multi-term unit-denominator numerator needs parentheses.
inline bool scalar_needs_parens_in_product(const ScalarRat& c) {
    return c.den().is_one() && ScalarRat::multi_term(c.num());
}

/// Append one coefficient*variable term to a " + "/" - " joined sum.
inline void append_scalar_term(std::string& out, const ScalarRat& c, const std::string& var) {
    bool neg = !c.num().is_zero() && c.num().leading() < 0;
    ScalarRat mag = neg ? -c : c;
    std::string piece;
    if (var.empty()) {
        piece = mag.str();
        if (neg && scalar_multi_term(mag) && !out.empty()) piece = "(" + piece + ")";
    } else if (mag.is_one()) {
        piece = var;
    } else {
        piece = mag.str();
        if (scalar_needs_parens_in_product(mag)) piece = "(" + piece + ")";
        piece += "*" + var;
    }
    if (out.empty())
        out = (neg ? "-" : "") + piece;
    else
        out += (neg ? " - " : " + ") + piece;
}

} // namespace detail

} // namespace dcurve
