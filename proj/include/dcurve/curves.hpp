#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcurve/diffpoly.hpp"
#include "dcurve/errors.hpp"
#include "dcurve/ore.hpp"
#include "dcurve/resultant.hpp"

namespace dcurve {

/// Linear differential curve F = L1(x) + L2(y) + a with L1, L2 in F[D].
/// At least one operator must be nonzero.
struct LinearCurve {
    OreOp l1, l2;
    ScalarRat a;

    LinearCurve(OreOp L1, OreOp L2, ScalarRat A)
        : l1(std::move(L1)), l2(std::move(L2)), a(std::move(A)) {
        if (l1.is_zero() && l2.is_zero())
            throw domain_error("linear curve requires a nonzero operator part");
    }

    DiffPoly to_poly() const {
        return operator_poly(l1, Indet::x) + operator_poly(l2, Indet::y) + DiffPoly(a);
    }
    std::string str() const { return to_poly().str(); }

    friend bool operator==(const LinearCurve& f, const LinearCurve& g) {
        return f.l1 == g.l1 && f.l2 == g.l2 && f.a == g.a;
    }
};

/// Split a linear differential polynomial in x, y into (L1, L2, a) form.
inline LinearCurve linear_curve_from_poly(const DiffPoly& f) {
    if (!f.uses_only({Indet::x, Indet::y}))
        throw domain_error("linear curve polynomial may involve only x and y");
    if (!f.affine_linear())
        throw domain_error("polynomial is not linear in x, y and their derivatives");
    std::vector<ScalarRat> c1, c2;
    ScalarRat a(0);
    for (const auto& [m, c] : f.terms()) {
        if (m.is_one()) {
            a = c;
            continue;
        }
        DerivVar v = m.vars[0].first;
        auto& vec = v.indet == Indet::x ? c1 : c2;
        if (static_cast<int>(vec.size()) <= v.order) vec.resize(v.order + 1, ScalarRat(0));
        vec[v.order] = c;
    }
    return LinearCurve(OreOp(std::move(c1)), OreOp(std::move(c2)), std::move(a));
}

/// Cross-multiplication equality of formal fractions: a/b = c/d iff ad = cb.
inline bool equal_cross_mult(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
}

/// Pair of arbitrary reduced fractions of polynomials in u (reducedness is
/// asserted by the caller; it is not decidable here for nonlinear parts).
class GeneralRationalParam {
  public:
    GeneralRationalParam(Fraction c1, Fraction c2) : c1_(std::move(c1)), c2_(std::move(c2)) {
        for (const Fraction* f : {&c1_, &c2_}) {
            if (!f->num.uses_only({Indet::u}) || !f->den.uses_only({Indet::u}))
                throw domain_error("parametrization coordinates must be fractions in u");
            if (f->den.is_zero()) throw division_by_zero("zero coordinate denominator");
        }
        if (c1_.num.is_constant() && c1_.den.is_constant() && c2_.num.is_constant() &&
            c2_.den.is_constant())
            throw domain_error("both coordinates lie in the base field");
    }

    const Fraction& coord1() const { return c1_; }
    const Fraction& coord2() const { return c2_; }

    std::string str() const {
        return "(" + fraction_str(c1_) + ", " + fraction_str(c2_) + ")";
    }

    static std::string fraction_str(const Fraction& f) {
        if (f.den == DiffPoly(1)) return f.num.str();
        auto wrap = [](const std::string& s) {
            return s.find_first_of("+-*/ ") != std::string::npos ? "(" + s + ")" : s;
        };
        return wrap(f.num.str()) + "/" + wrap(f.den.str());
    }

  private:
    Fraction c1_, c2_;
};

/// Linear differential rational parametrization: both coordinates are
/// reduced fractions of affine-linear polynomials in u, with cached orders
/// m1, m2 (nullopt encodes -infinity for a coordinate lying in the base
/// field; at most one coordinate may be constant).
class LinearRationalParam {
  public:
    LinearRationalParam(Fraction c1, Fraction c2) : c1_(std::move(c1)), c2_(std::move(c2)) {
        m1_ = ord_reduced_linear_fraction(c1_.num, c1_.den);
        m2_ = ord_reduced_linear_fraction(c2_.num, c2_.den);
        if (!m1_ && !m2_) throw domain_error("both coordinates lie in the base field");
    }

    const Fraction& coord1() const { return c1_; }
    const Fraction& coord2() const { return c2_; }
    std::optional<int> m1() const { return m1_; }
    std::optional<int> m2() const { return m2_; }

    bool polynomial() const { return c1_.den == DiffPoly(1) && c2_.den == DiffPoly(1); }

    GeneralRationalParam general() const { return GeneralRationalParam(c1_, c2_); }

    std::string str() const {
        return "(" + GeneralRationalParam::fraction_str(c1_) + ", " +
               GeneralRationalParam::fraction_str(c2_) + ")";
    }

  private:
    Fraction c1_, c2_;
    std::optional<int> m1_, m2_;
};

inline bool equal_cross_mult(const GeneralRationalParam& p, const GeneralRationalParam& q) {
    return equal_cross_mult(p.coord1(), q.coord1()) && equal_cross_mult(p.coord2(), q.coord2());
}

/// True iff F vanishes identically at the parametrization: the cleared
/// numerator of F(P(u)) is the zero polynomial.
inline bool verify_on_curve(const DiffPoly& f, const GeneralRationalParam& p) {
    if (!f.uses_only({Indet::x, Indet::y}))
        throw domain_error("curve polynomial may involve only x and y");
    auto r = substitute(f, {{Indet::x, p.coord1()}, {Indet::y, p.coord2()}});
    return r.num.is_zero();
}

inline bool verify_on_curve(const DiffPoly& f, const LinearRationalParam& p) {
    return verify_on_curve(f, p.general());
}

/// Properness verdict of the differential-resultant criterion: proper iff
/// R != 0 and ord_x R = m2, ord_y R = m1.
struct ProperReport {
    DiffPoly resultant;
    std::optional<int> ord_x, ord_y;
    int expected_ord_x = 0; // m2
    int expected_ord_y = 0; // m1
    bool proper = false;
};

/// The operator part and constant of an affine-linear polynomial in u.
inline std::pair<OreOp, ScalarRat> operator_part(const DiffPoly& p) {
    auto ord = p.order_in(Indet::u);
    std::vector<ScalarRat> coeffs(ord ? *ord + 1 : 0, ScalarRat(0));
    for (int k = 0; ord && k <= *ord; ++k) {
        auto c = p.coeff_of(DerivVar{Indet::u, k}, 1).constant_value();
        if (!c) throw domain_error("coefficients must lie in the base field");
        coeffs[k] = *c;
    }
    auto constant = p.coeff(Monomial{});
    return {OreOp(std::move(coeffs)), constant};
}

/// Properness of a polynomial parametrization (unit denominators): the
/// operator parts must have trivial gcrd.
inline bool proper_check_poly(const LinearRationalParam& p) {
    if (!p.polynomial())
        throw domain_error("polynomial properness check requires unit denominators");
    OreOp l1 = operator_part(p.coord1().num).first;
    OreOp l2 = operator_part(p.coord2().num).first;
    OreOp g = gcrd(l1, l2);
    return *g.degree() == 0;
}

/// Resultant-based properness check for linear rational parametrizations.
/// Builds f1 = x*Q1 - P1, f2 = y*Q2 - P2 and tests R != 0, ord_x R = m2,
/// ord_y R = m1.
inline ProperReport proper_check_rational(const LinearRationalParam& p) {
    if (!p.m1() || !p.m2())
        throw domain_error("resultant properness check requires nonconstant coordinates");
    DiffPoly f1 = DiffPoly::var(Indet::x) * p.coord1().den - Fraction(p.coord1()).num;
    DiffPoly f2 = DiffPoly::var(Indet::y) * p.coord2().den - p.coord2().num;
    ProperReport rep;
    rep.resultant = diff_resultant(f1, f2);
    rep.ord_x = rep.resultant.order_in(Indet::x);
    rep.ord_y = rep.resultant.order_in(Indet::y);
    rep.expected_ord_x = *p.m2();
    rep.expected_ord_y = *p.m1();
    rep.proper = !rep.resultant.is_zero() && rep.ord_x == p.m2() && rep.ord_y == p.m1();
    return rep;
}

/// Order-based properness test against a known defining polynomial: proper
/// iff m1 = ord_y F and m2 = ord_x F. The parametrization must verify on F.
inline bool proper_check_via_curve(const DiffPoly& f, const LinearRationalParam& p) {
    if (!verify_on_curve(f, p))
        throw domain_error("parametrization does not verify on the curve");
    return p.m1() == f.order_in(Indet::y) && p.m2() == f.order_in(Indet::x);
}

/// Unirationality of a linear differential curve: true iff gcld(L1, L2) has
/// degree zero. Returns the monic gcld as witness either way.
inline std::pair<bool, OreOp> is_unirational(const LinearCurve& f) {
    OreOp g = gcld(f.l1, f.l2);
    return {*g.degree() == 0, g};
}

/// Linear-differential-curve parametrization. Runs the extended left
/// Euclidean algorithm on (L1, L2); if the last remainder c is not a unit the
/// curve is not unirational and nothing is returned. Otherwise the proper
/// polynomial parametrization
///   ( A_n(u) + A_{n-1}(-a/c),  B_n(u) + B_{n-1}(-a/c) )
/// is built from the Euclidean cofactors.
inline std::optional<LinearRationalParam> ldcp(const LinearCurve& f) {
    EleResult e = ele(f.l1, f.l2);
    if (*e.r_last.degree() != 0) return std::nullopt;
    ScalarRat c = e.r_last.coeff(0);
    ScalarRat s = -f.a / c;
    DiffPoly p1 = operator_poly(e.a_n, Indet::u) + DiffPoly(e.a_prev.apply(s));
    DiffPoly p2 = operator_poly(e.b_n, Indet::u) + DiffPoly(e.b_prev.apply(s));
    LinearRationalParam out{Fraction(p1), Fraction(p2)};
    assert(verify_on_curve(f.to_poly(), out));
    assert(proper_check_poly(out));
    return out;
}

/// Implicitization of a proper polynomial parametrization via the
/// differential remainder sequence of (x - P1(u), y - P2(u)). The u-free
/// terminus, normalized to leading coefficient one, is the defining linear
/// polynomial.
inline LinearCurve implicitize_poly(const LinearRationalParam& p) {
    if (!p.polynomial())
        throw domain_error("polynomial implicitization requires unit denominators");
    if (!proper_check_poly(p)) throw domain_error("parametrization is not proper");
    DiffPoly f1 = DiffPoly::var(Indet::x) - p.coord1().num;
    DiffPoly f2 = DiffPoly::var(Indet::y) - p.coord2().num;
    DiffPoly fl;
    if (!p.m1())
        fl = f1; // constant first coordinate: x - a1 is already the curve
    else if (!p.m2())
        fl = f2;
    else {
        auto chain = *p.m1() >= *p.m2()
                         ? remainder_sequence(f1, f2, Ranking::elimination_xyu())
                         : remainder_sequence(f2, f1, Ranking::elimination_xyu());
        fl = chain.back();
    }
    if (fl.is_zero()) throw internal_error("implicitization terminus vanished");
    fl = fl * fl.leading_term().second.inv();
    LinearCurve out = linear_curve_from_poly(fl);
    assert(verify_on_curve(out.to_poly(), p.general()));
    return out;
}

/// Implicitization data for a proper linear rational parametrization: the
/// u-free terminus f_l of the remainder sequence of (xQ1 - P1, yQ2 - P2)
/// (a nonzero implicit multiple with ord_x = m2, ord_y = m1), the previous
/// element f_prev = g*u + h of u-order zero, and the differential resultant.
/// The irreducible defining polynomial itself is not extracted.
struct ImplicitRecord {
    DiffPoly f_l;
    DiffPoly f_prev;
    DiffPoly resultant;
};

inline ImplicitRecord implicitize_rational(const LinearRationalParam& p) {
    ProperReport rep = proper_check_rational(p);
    if (!rep.proper) throw domain_error("parametrization is not proper");
    DiffPoly f1 = DiffPoly::var(Indet::x) * p.coord1().den - p.coord1().num;
    DiffPoly f2 = DiffPoly::var(Indet::y) * p.coord2().den - p.coord2().num;
    auto chain = *p.m1() >= *p.m2() ? remainder_sequence(f1, f2, Ranking::elimination_xyu())
                                    : remainder_sequence(f2, f1, Ranking::elimination_xyu());
    DiffPoly fl = chain.back();
    DiffPoly fprev = chain[chain.size() - 2];
    if (fl.is_zero()) throw internal_error("implicitization terminus vanished");
    if (fprev.order_in(Indet::u) != std::optional<int>(0))
        throw internal_error("penultimate remainder is not of u-order zero");
    return {fl, fprev, rep.resultant};
}

/// Inversion map of a proper parametrization with m1, m2 >= 1: from
/// f_prev = g*u + h the inverse is u = -h/g, returned as the pair (-h, g).
inline std::pair<DiffPoly, DiffPoly> inversion(const LinearRationalParam& p) {
    if (!p.m1() || *p.m1() < 1 || !p.m2() || *p.m2() < 1)
        throw domain_error("inversion requires coordinate orders >= 1");
    ImplicitRecord rec = implicitize_rational(p);
    DiffPoly g = rec.f_prev.coeff_of(DerivVar{Indet::u, 0}, 1);
    DiffPoly h = rec.f_prev - g * DiffPoly::var(Indet::u);
    if (g.is_zero()) throw internal_error("inversion coefficient vanished");
    return {-h, g};
}

/// Reparametrization by the Mobius transform u -> (a*u + b)/(c*u + d) with
/// ad - bc != 0. Denominators are cleared; the output verifies on any curve
/// the input verifies on.
inline GeneralRationalParam mobius_apply(const GeneralRationalParam& p, const ScalarRat& a,
                                         const ScalarRat& b, const ScalarRat& c,
                                         const ScalarRat& d) {
    if ((a * d - b * c).is_zero()) throw domain_error("degenerate Mobius transform");
    DiffPoly top = DiffPoly::var(Indet::u) * a + DiffPoly(b);
    DiffPoly bot = DiffPoly::var(Indet::u) * c + DiffPoly(d);
    auto transform = [&](const Fraction& f) -> Fraction {
        auto rn = substitute(f.num, {{Indet::u, Fraction(top, bot)}});
        auto rd = substitute(f.den, {{Indet::u, Fraction(top, bot)}});
        int alpha = rn.den_pow.at(Indet::u);
        int beta = rd.den_pow.at(Indet::u);
        int m = std::min(alpha, beta);
        DiffPoly num = rn.num * bot.pow(beta - m);
        DiffPoly den = rd.num * bot.pow(alpha - m);
        if (den.is_zero()) throw internal_error("Mobius transform produced zero denominator");
        return {num, den};
    };
    return GeneralRationalParam(transform(p.coord1()), transform(p.coord2()));
}

/// Order relation of a parametrized curve (declared reduced orders m1, m2):
/// ord_x F + m1 = ord_y F + m2 with ord_x F <= m2 and ord_y F <= m1.
inline bool order_relation_check(const DiffPoly& f, const GeneralRationalParam& p, int m1,
                                 int m2) {
    (void)p; // the caller guarantees verify_on_curve(f, p)
    auto ox = f.order_in(Indet::x), oy = f.order_in(Indet::y);
    if (!ox || !oy) return false;
    return *ox + m1 == *oy + m2 && *ox <= m2 && *oy <= m1;
}

/// Membership of A in the differential ideal [B] for linear polynomials:
/// returns D with A.L1 = D*B.L1, A.L2 = D*B.L2 and A.a = D(B.a) when such an
/// operator exists. A positive answer with deg D > 0 certifies that A is not
/// unirational.
inline std::optional<OreOp> ideal_membership_linear(const LinearCurve& a, const LinearCurve& b) {
    std::optional<OreOp> d;
    auto accept = [&](const OreOp& an, const OreOp& bn) -> bool {
        if (bn.is_zero()) return an.is_zero();
        auto [q, r] = rquo_rrem(an, bn);
        if (!r.is_zero()) return false;
        if (d && !(*d == q)) return false;
        d = q;
        return true;
    };
    if (!accept(a.l1, b.l1)) return std::nullopt;
    if (!accept(a.l2, b.l2)) return std::nullopt;
    if (!d) return std::nullopt;
    if (!(a.a == d->apply(b.a))) return std::nullopt;
    return d;
}

} // namespace dcurve
