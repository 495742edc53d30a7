#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dcurve/errors.hpp"
#include "dcurve/ore.hpp"
#include "dcurve/rational.hpp"

namespace dcurve {

enum class Indet : int { x = 0, y = 1, u = 2 };

inline const char* indet_name(Indet v) {
    switch (v) {
        case Indet::x: return "x";
        case Indet::y: return "y";
        default: return "u";
    }
}

/// A derivative variable v^(k): an indeterminate together with its order.
struct DerivVar {
    Indet indet;
    int order; // >= 0
    auto operator<=>(const DerivVar&) const = default;

    std::string str() const {
        std::string s = indet_name(indet);
        if (order >= 1 && order <= 3)
            s += std::string(order, '\'');
        else if (order > 3)
            s += "^(" + std::to_string(order) + ")";
        return s;
    }
};

/// Power product of derivative variables; factors sorted by (indet, order),
/// exponents > 0. The empty product is 1.
struct Monomial {
    std::vector<std::pair<DerivVar, int>> vars;

    bool operator==(const Monomial&) const = default;
    bool is_one() const { return vars.empty(); }
    int total_degree() const {
        int d = 0;
        for (const auto& [v, e] : vars) d += e;
        return d;
    }
    int exponent(DerivVar v) const {
        for (const auto& [w, e] : vars)
            if (w == v) return e;
        return 0;
    }
    Monomial times(const Monomial& o) const {
        Monomial r;
        size_t i = 0, j = 0;
        while (i < vars.size() || j < o.vars.size()) {
            if (j == o.vars.size() || (i < vars.size() && vars[i].first < o.vars[j].first))
                r.vars.push_back(vars[i++]);
            else if (i == vars.size() || o.vars[j].first < vars[i].first)
                r.vars.push_back(o.vars[j++]);
            else {
                r.vars.emplace_back(vars[i].first, vars[i].second + o.vars[j].second);
                ++i, ++j;
            }
        }
        return r;
    }
    /// Multiply by v^-1; the exponent of v must be positive.
    Monomial divide_var(DerivVar v) const {
        Monomial r;
        for (const auto& [w, e] : vars) {
            if (w == v) {
                if (e > 1) r.vars.emplace_back(w, e - 1);
            } else {
                r.vars.emplace_back(w, e);
            }
        }
        return r;
    }
    /// Componentwise divisibility test.
    bool divides(const Monomial& o) const {
        for (const auto& [v, e] : vars)
            if (o.exponent(v) < e) return false;
        return true;
    }
    Monomial quotient(const Monomial& den) const {
        Monomial r;
        for (const auto& [v, e] : vars) {
            int d = e - den.exponent(v);
            if (d > 0) r.vars.emplace_back(v, d);
        }
        return r;
    }
};

/// Graded lexicographic order: total degree first, then exponents compared
/// from the highest DerivVar (under the fixed storage order x < y < u,
/// lower order < higher order) downward. Purely a canonical-form concern.
struct MonoGrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        auto ia = a.vars.rbegin(), ib = b.vars.rbegin();
        while (ia != a.vars.rend() && ib != b.vars.rend()) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia, ++ib;
        }
        return ia == a.vars.rend() && ib != b.vars.rend();
    }
};

/// Ranking on derivative variables (total order compatible with derivation).
/// Elimination rankings compare the indeterminate first, orderly rankings
/// the order first.
struct Ranking {
    enum class Kind { orderly, elimination };
    Kind kind;
    std::array<Indet, 3> perm; // ascending: perm[0] ranked lowest

    static Ranking elimination(Indet lo, Indet mid, Indet hi) {
        return {Kind::elimination, {lo, mid, hi}};
    }
    static Ranking orderly(Indet lo, Indet mid, Indet hi) {
        return {Kind::orderly, {lo, mid, hi}};
    }
    static Ranking elimination_xyu() { return elimination(Indet::x, Indet::y, Indet::u); }
    static Ranking elimination_yxu() { return elimination(Indet::y, Indet::x, Indet::u); }
    static Ranking orderly_xyu() { return orderly(Indet::x, Indet::y, Indet::u); }

    int rank_of(Indet v) const {
        for (int i = 0; i < 3; ++i)
            if (perm[i] == v) return i;
        return -1;
    }
    bool less(DerivVar a, DerivVar b) const {
        if (kind == Kind::elimination) {
            if (a.indet != b.indet) return rank_of(a.indet) < rank_of(b.indet);
            return a.order < b.order;
        }
        if (a.order != b.order) return a.order < b.order;
        return rank_of(a.indet) < rank_of(b.indet);
    }
};

/// Sparse differential polynomial in x, y, u and their derivatives with
/// ScalarRat coefficients. No zero coefficients are stored; the zero
/// polynomial is the empty map. Terms are kept in graded-lex order, which
/// fixes printing and hashing. Immutable value semantics throughout.
class DiffPoly {
  public:
    using TermMap = std::map<Monomial, ScalarRat, MonoGrlexLess>;

    DiffPoly() = default;
    DiffPoly(const ScalarRat& c) {
        if (!c.is_zero()) terms_[Monomial{}] = c;
    }
    DiffPoly(int c) : DiffPoly(ScalarRat(c)) {}

    static DiffPoly var(Indet v, int order = 0) {
        return term(Monomial{{{DerivVar{v, order}, 1}}}, ScalarRat(1));
    }
    static DiffPoly var(DerivVar v) { return var(v.indet, v.order); }
    static DiffPoly term(const Monomial& m, const ScalarRat& c) {
        DiffPoly p;
        if (!c.is_zero()) p.terms_[m] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    /// The value as a field element, if the polynomial has no variables.
    std::optional<ScalarRat> constant_value() const {
        if (terms_.empty()) return ScalarRat(0);
        if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
        return std::nullopt;
    }
    bool is_constant() const { return constant_value().has_value(); }

    ScalarRat coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ScalarRat(0) : it->second;
    }

    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
        DiffPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) {
        DiffPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    DiffPoly operator-() const {
        DiffPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
        DiffPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    friend DiffPoly operator*(const DiffPoly& a, const ScalarRat& s) {
        if (s.is_zero()) return DiffPoly();
        DiffPoly r = a;
        for (auto& [m, c] : r.terms_) c = c * s;
        return r;
    }
    DiffPoly scaled_by_inverse(const ScalarRat& s) const { return *this * s.inv(); }

    DiffPoly pow(int e) const {
        if (e < 0) throw domain_error("negative exponent");
        DiffPoly r(1), base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * base;
            base = base * base;
        }
        return r;
    }

    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

    /// Total derivative: Leibniz over monomials plus derivation of the
    /// ScalarRat coefficients.
    DiffPoly derive() const {
        DiffPoly r;
        for (const auto& [m, c] : terms_) {
            r.add_term(m, c.derive());
            for (const auto& [v, e] : m.vars) {
                Monomial bumped = m.divide_var(v).times(Monomial{{{DerivVar{v.indet, v.order + 1}, 1}}});
                r.add_term(bumped, c * ScalarRat(e));
            }
        }
        return r;
    }

    /// Largest k such that v^(k) appears effectively; nullopt when absent.
    std::optional<int> order_in(Indet v) const {
        std::optional<int> best;
        for (const auto& [m, c] : terms_)
            for (const auto& [w, e] : m.vars)
                if (w.indet == v && (!best || w.order > *best)) best = w.order;
        return best;
    }

    int degree_in(DerivVar v) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
        return d;
    }

    /// Coefficient of v^power, as a polynomial free of v.
    DiffPoly coeff_of(DerivVar v, int power) const {
        DiffPoly r;
        for (const auto& [m, c] : terms_)
            if (m.exponent(v) == power) {
                Monomial stripped = m;
                std::erase_if(stripped.vars, [&](const auto& p) { return p.first == v; });
                r.add_term(stripped, c);
            }
        return r;
    }

    /// Partial derivative with respect to one derivative variable.
    DiffPoly partial(DerivVar v) const {
        DiffPoly r;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(v);
            if (e > 0) r.add_term(m.divide_var(v), c * ScalarRat(e));
        }
        return r;
    }

    std::set<DerivVar> variables() const {
        std::set<DerivVar> s;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.vars) s.insert(v);
        return s;
    }

    bool uses_only(std::initializer_list<Indet> allowed) const {
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.vars) {
                bool ok = false;
                for (Indet a : allowed)
                    if (v.indet == a) ok = true;
                if (!ok) return false;
            }
        return true;
    }

    /// Degree at most one in the derivatives of u jointly (coefficients may
    /// involve x and y).
    bool linear_in_u() const {
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (const auto& [v, e] : m.vars)
                if (v.indet == Indet::u) d += e;
            if (d > 1) return false;
        }
        return true;
    }

    /// Total degree at most one in all derivative variables.
    bool affine_linear() const {
        for (const auto& [m, c] : terms_)
            if (m.total_degree() > 1) return false;
        return true;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    /// Highest term under the canonical graded-lex order.
    std::pair<Monomial, ScalarRat> leading_term() const {
        if (is_zero()) throw domain_error("leading term of zero polynomial");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    /// Canonical print: descending graded-lex terms, e.g. "y' - x' - x".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string var;
            for (const auto& [v, e] : it->first.vars) {
                if (!var.empty()) var += "*";
                var += v.str();
                if (e > 1) var += "^" + std::to_string(e);
            }
            detail::append_scalar_term(out, it->second, var);
        }
        return out;
    }

  private:
    TermMap terms_;

    void add_term(const Monomial& m, const ScalarRat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
};

/// Leader, initial and separant of a nonconstant differential polynomial
/// under a ranking.
struct LeaderParts {
    DerivVar leader;
    int degree;       // degree of the leader in the polynomial
    DiffPoly initial; // leading coefficient in the leader
    DiffPoly separant; // partial derivative w.r.t. the leader
};

inline LeaderParts leader_initial_separant(const DiffPoly& f, const Ranking& r) {
    auto vars = f.variables();
    if (vars.empty()) throw domain_error("leader of a constant polynomial");
    DerivVar lead = *vars.begin();
    for (DerivVar v : vars)
        if (r.less(lead, v)) lead = v;
    int d = f.degree_in(lead);
    return {lead, d, f.coeff_of(lead, d), f.partial(lead)};
}

/// Exact division in the polynomial ring; throws if g does not divide f.
inline DiffPoly dp_exact_div(const DiffPoly& f, const DiffPoly& g) {
    if (g.is_zero()) throw division_by_zero("exact division by zero polynomial");
    DiffPoly q, r = f;
    auto [gm, gc] = g.leading_term();
    while (!r.is_zero()) {
        auto [rm, rc] = r.leading_term();
        if (!gm.divides(rm)) throw domain_error("non-exact polynomial division");
        DiffPoly t = DiffPoly::term(rm.quotient(gm), rc / gc);
        q = q + t;
        r = r - t * g;
    }
    return q;
}

/// Ritt-Kolchin remainder of f with respect to a single quasi-linear g,
/// together with the reduction certificate:
///   multiplier * f = remainder + sum_k cofactors[k] * derive^k(g).
/// The multiplier is the product of separant/initial powers actually used.
struct PremResult {
    DiffPoly remainder;
    DiffPoly multiplier;
    int separant_steps = 0; // eliminations of proper derivatives of the leader
    int initial_steps = 0;  // degree reductions in the leader itself
    std::map<int, DiffPoly> cofactors;
};

inline PremResult dp_prem(const DiffPoly& f, const DiffPoly& g, const Ranking& rk) {
    if (g.is_constant()) throw domain_error("reduction by a constant polynomial");
    LeaderParts lp = leader_initial_separant(g, rk);
    if (lp.degree != 1) throw domain_error("reducer is not quasi-linear in its leader");
    const DiffPoly& s = lp.initial; // separant = initial for degree-1 leader
    DerivVar ug = lp.leader;

    PremResult res;
    res.remainder = f;
    res.multiplier = DiffPoly(1);

    // cache of derivatives of g
    std::vector<DiffPoly> dg = {g};
    auto deriv_of_g = [&](int j) -> const DiffPoly& {
        while (static_cast<int>(dg.size()) <= j) dg.push_back(dg.back().derive());
        return dg[j];
    };

    for (;;) {
        // highest derivative of the leader still present
        int top = -1;
        for (DerivVar v : res.remainder.variables())
            if (v.indet == ug.indet && v.order >= ug.order) top = std::max(top, v.order);
        if (top < 0) break;
        int j = top - ug.order;
        DerivVar v{ug.indet, top};
        const DiffPoly& reducer = deriv_of_g(j);
        int d = res.remainder.degree_in(v);
        DiffPoly c = res.remainder.coeff_of(v, d);
        DiffPoly vpow = DiffPoly::var(v).pow(d - 1);
        res.remainder = s * res.remainder - c * vpow * reducer;
        res.multiplier = s * res.multiplier;
        for (auto& [k, cof] : res.cofactors) cof = s * cof;
        auto [it, ignored] = res.cofactors.try_emplace(j, DiffPoly(0));
        it->second = it->second + c * vpow;
        if (j > 0)
            ++res.separant_steps;
        else
            ++res.initial_steps;
    }
    return res;
}

/// Differential remainder sequence f1, f2, f3, ... with
/// f_i = prem(f_{i-2}, f_{i-1}) under the elimination ranking x<y<u,
/// continued until the first element free of u. Requires both inputs linear
/// in u with ord_u f1 >= ord_u f2 >= 0 (on equal orders f2 reduces first).
inline std::vector<DiffPoly> remainder_sequence(const DiffPoly& f1, const DiffPoly& f2,
                                                const Ranking& rk) {
    if (rk.kind != Ranking::Kind::elimination || rk.perm[2] != Indet::u)
        throw domain_error("remainder sequence requires an elimination ranking ending in u");
    if (!f1.linear_in_u() || !f2.linear_in_u())
        throw domain_error("remainder sequence requires inputs linear in u");
    auto o1 = f1.order_in(Indet::u), o2 = f2.order_in(Indet::u);
    if (!o1 || !o2) throw domain_error("remainder sequence requires u in both inputs");
    if (*o1 < *o2) throw domain_error("remainder sequence requires ord_u f1 >= ord_u f2");

    std::vector<DiffPoly> chain = {f1, f2};
    while (chain.back().order_in(Indet::u)) {
        size_t n = chain.size();
        chain.push_back(dp_prem(chain[n - 2], chain[n - 1], rk).remainder);
    }
    return chain;
}

/// A formal fraction of differential polynomials.
struct Fraction {
    DiffPoly num, den;
    Fraction() : num(0), den(1) {}
    Fraction(DiffPoly n, DiffPoly d) : num(std::move(n)), den(std::move(d)) {}
    Fraction(const DiffPoly& n) : num(n), den(1) {}
};

/// Order of a reduced fraction of affine-linear polynomials in u:
/// max of the u-orders, nullopt (-infinity) when both parts are in the base
/// field. Reducedness is the cross-multiplication proportionality test;
/// a proportional pair with a nonconstant member is rejected.
inline std::optional<int> ord_reduced_linear_fraction(const DiffPoly& p, const DiffPoly& q) {
    if (!p.uses_only({Indet::u}) || !q.uses_only({Indet::u}))
        throw domain_error("fraction parts must be polynomials in u only");
    if (!p.affine_linear() || !q.affine_linear())
        throw domain_error("fraction parts must be affine-linear in u");
    if (q.is_zero()) throw division_by_zero("zero denominator");

    auto vars = p.variables();
    for (DerivVar v : q.variables()) vars.insert(v);
    // coefficient vectors including the constant slot
    std::vector<ScalarRat> a, b;
    for (DerivVar v : vars) {
        a.push_back(p.coeff(Monomial{{{v, 1}}}));
        b.push_back(q.coeff(Monomial{{{v, 1}}}));
    }
    a.push_back(p.coeff(Monomial{}));
    b.push_back(q.coeff(Monomial{}));
    bool proportional = true;
    for (size_t i = 0; i < a.size() && proportional; ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) {
                proportional = false;
                break;
            }
    if (vars.empty()) return std::nullopt; // both in the base field
    if (proportional) throw domain_error("fraction not reduced: proportional pair");
    auto op = p.order_in(Indet::u), oq = q.order_in(Indet::u);
    if (!op) return oq;
    if (!oq) return op;
    return std::max(*op, *oq);
}

/// Result of substituting fractions for indeterminates: the formal fraction
/// num/den with den = prod_v den_v^den_pow[v].
struct SubstResult {
    DiffPoly num, den;
    std::map<Indet, int> den_pow;
};

/// Substitute rational expressions for whole differential indeterminates.
/// Derivatives are expanded as (P/Q)^(s) = P_s / Q^(s+1) with
/// P_s = P_{s-1}' * Q - s * P_{s-1} * Q'. The substituted polynomial
/// vanishes at the given fractions iff the returned numerator is zero.
inline SubstResult substitute(const DiffPoly& f, const std::map<Indet, Fraction>& subs) {
    for (const auto& [v, fr] : subs)
        if (fr.den.is_zero()) throw division_by_zero("substitution with zero denominator");

    // numerator towers per substituted indeterminate
    std::map<Indet, std::vector<DiffPoly>> tower;
    for (const auto& [v, fr] : subs) {
        auto k = f.order_in(v);
        if (!k) continue;
        std::vector<DiffPoly> t = {fr.num};
        DiffPoly dden = fr.den.derive();
        for (int s = 1; s <= *k; ++s)
            t.push_back(t.back().derive() * fr.den - t.back() * dden * ScalarRat(s));
        tower[v] = std::move(t);
    }

    auto den_exp_of = [&](const Monomial& m) {
        std::map<Indet, int> d;
        for (const auto& [v, e] : m.vars)
            if (subs.count(v.indet)) d[v.indet] += e * (v.order + 1);
        return d;
    };

    std::map<Indet, int> dmax;
    for (const auto& [v, fr] : subs) dmax[v] = 0;
    for (const auto& [m, c] : f.terms())
        for (const auto& [v, d] : den_exp_of(m)) dmax[v] = std::max(dmax[v], d);

    DiffPoly num;
    for (const auto& [m, c] : f.terms()) {
        Monomial untouched;
        DiffPoly part(c);
        for (const auto& [v, e] : m.vars) {
            if (subs.count(v.indet))
                part = part * tower.at(v.indet)[v.order].pow(e);
            else
                untouched.vars.emplace_back(v, e);
        }
        part = part * DiffPoly::term(untouched, ScalarRat(1));
        auto dm = den_exp_of(m);
        for (const auto& [v, top] : dmax) {
            int deficit = top - (dm.count(v) ? dm.at(v) : 0);
            if (deficit > 0) part = part * subs.at(v).den.pow(deficit);
        }
        num = num + part;
    }
    DiffPoly den(1);
    for (const auto& [v, top] : dmax)
        if (top > 0) den = den * subs.at(v).den.pow(top);
    return {num, den, dmax};
}

/// The operator applied to a differential indeterminate, as a polynomial:
/// sum a_i * v^(i).
inline DiffPoly operator_poly(const OreOp& op, Indet v) {
    DiffPoly r;
    if (op.is_zero()) return r;
    for (int i = 0; i <= *op.degree(); ++i)
        r = r + DiffPoly::var(v, i) * op.coeff(i);
    return r;
}

} // namespace dcurve
