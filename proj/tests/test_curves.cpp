#include <catch_amalgamated.hpp>

#include <random>

#include "dcurve/curves.hpp"

using namespace dcurve;

namespace {

ScalarRat T() { return ScalarRat::t(); }
DiffPoly X(int k = 0) { return DiffPoly::var(Indet::x, k); }
DiffPoly Y(int k = 0) { return DiffPoly::var(Indet::y, k); }
DiffPoly U(int k = 0) { return DiffPoly::var(Indet::u, k); }
OreOp D() { return OreOp::delta(); }
OreOp op(std::vector<ScalarRat> c) { return OreOp(std::move(c)); }

// Example 5.6 curves
LinearCurve curve_562() { return LinearCurve(op({ScalarRat(-1), ScalarRat(-1)}), D(), 0); }
LinearCurve curve_564() {
    return LinearCurve(op({T(), T()}), op({ScalarRat(1), ScalarRat(1)}), 0);
}

QPoly random_qpoly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-3, 3);
    std::vector<mpq_class> c(deg(rng) + 1);
    for (auto& x : c) x = coef(rng);
    return QPoly(std::move(c));
}

OreOp random_op(std::mt19937& rng, int max_deg = 3) {
    std::uniform_int_distribution<int> deg(1, max_deg);
    std::vector<ScalarRat> c(deg(rng) + 1);
    for (auto& x : c) x = ScalarRat(random_qpoly(rng, 2));
    return OreOp(std::move(c));
}

/// Random curve with unit gcld, operator degrees >= 1 (rejection sampled).
LinearCurve random_unirational_curve(std::mt19937& rng) {
    for (;;) {
        OreOp l1 = random_op(rng), l2 = random_op(rng);
        if (l1.is_zero() || l2.is_zero()) continue;
        if (*gcld(l1, l2).degree() != 0) continue;
        return LinearCurve(l1, l2, ScalarRat(random_qpoly(rng, 1)));
    }
}

bool curves_equal_up_to_multiple(const LinearCurve& f, const LinearCurve& g) {
    DiffPoly a = f.to_poly(), b = g.to_poly();
    return a * b.leading_term().second == b * a.leading_term().second;
}

} // namespace

TEST_CASE("linear curve construction and splitting") {
    CHECK_THROWS_AS(LinearCurve(OreOp(), OreOp(), T()), domain_error);
    LinearCurve c = curve_562();
    CHECK(c.to_poly() == Y(1) - X(1) - X());
    LinearCurve back = linear_curve_from_poly(Y(1) - X(1) - X());
    CHECK(back == c);
    CHECK_THROWS_AS(linear_curve_from_poly(X() * Y()), domain_error);
    CHECK_THROWS_AS(linear_curve_from_poly(X() - U()), domain_error);
}

TEST_CASE("parametrization construction rules") {
    CHECK_THROWS_AS(LinearRationalParam(Fraction(DiffPoly(T())), Fraction(DiffPoly(1))),
                    domain_error);
    CHECK_THROWS_AS(LinearRationalParam(Fraction(U() * ScalarRat(2), U()), Fraction(U())),
                    domain_error);
    CHECK_THROWS_AS(LinearRationalParam(Fraction(U(), DiffPoly(0)), Fraction(U())),
                    division_by_zero);
    CHECK_THROWS_AS(LinearRationalParam(Fraction(X()), Fraction(U())), domain_error);

    LinearRationalParam p{Fraction(U(2) + DiffPoly(1), U()), Fraction(U(1))};
    CHECK(p.m1() == 2);
    CHECK(p.m2() == 1);
    CHECK_FALSE(p.polynomial());

    // one constant coordinate is allowed
    LinearRationalParam degenerate{Fraction(DiffPoly(T())), Fraction(U())};
    CHECK_FALSE(degenerate.m1().has_value());
    CHECK(degenerate.m2() == 0);
}

TEST_CASE("verification of paper parametrization/curve pairs") {
    // (u^2, u') on x'^2 - 4xy^2
    DiffPoly a1 = X(1) * X(1) - X() * Y() * Y() * ScalarRat(4);
    GeneralRationalParam p1{Fraction(U() * U()), Fraction(U(1))};
    CHECK(verify_on_curve(a1, p1));

    // (-u'/u^2, (u-u')/u^2) on y' - x' - x
    DiffPoly a2 = Y(1) - X(1) - X();
    GeneralRationalParam p2{Fraction(-U(1), U() * U()), Fraction(U() - U(1), U() * U())};
    CHECK(verify_on_curve(a2, p2));

    // (u, u) does not verify on x
    CHECK_FALSE(verify_on_curve(X(), GeneralRationalParam{Fraction(U()), Fraction(U())}));

    CHECK_THROWS_AS(verify_on_curve(X() - U(), p1), domain_error);
}

TEST_CASE("unirationality decision") {
    // x'' - y': gcld = D
    auto [ok1, g1] = is_unirational(LinearCurve(D() * D(), -D(), 0));
    CHECK_FALSE(ok1);
    CHECK(g1 == D());

    // y' - x' - x: gcld = 1
    auto [ok2, g2] = is_unirational(curve_562());
    CHECK(ok2);
    CHECK(g2 == OreOp(1));

    // x' + x + t y' + (t+1) y: gcld = D + 1
    LinearCurve c563(op({ScalarRat(1), ScalarRat(1)}), op({T() + ScalarRat(1), T()}), 0);
    auto [ok3, g3] = is_unirational(c563);
    CHECK_FALSE(ok3);
    CHECK(g3 == op({ScalarRat(1), ScalarRat(1)}));
}

TEST_CASE("LDCP on the worked examples") {
    // (1) x'' - y' is not unirational
    CHECK_FALSE(ldcp(LinearCurve(D() * D(), -D(), 0)).has_value());

    // (2) y' - x' - x: the pinned Euclidean trace reproduces (u', u + u')
    auto p2 = ldcp(curve_562());
    REQUIRE(p2.has_value());
    CHECK(verify_on_curve(curve_562().to_poly(), *p2));
    CHECK(proper_check_poly(*p2));
    CHECK(p2->m1() == 1);
    CHECK(p2->m2() == 1);
    CHECK(equal_cross_mult(p2->coord1(), Fraction(U(1))));
    CHECK(equal_cross_mult(p2->coord2(), Fraction(U() + U(1))));

    // (3) x' + x + t y' + (t+1) y is not unirational
    LinearCurve c563(op({ScalarRat(1), ScalarRat(1)}), op({T() + ScalarRat(1), T()}), 0);
    CHECK_FALSE(ldcp(c563).has_value());

    // (4) t x' + t x + y' + y: the paper representative (u'+u, -tu'+(1-t)u)
    auto p4 = ldcp(curve_564());
    REQUIRE(p4.has_value());
    CHECK(verify_on_curve(curve_564().to_poly(), *p4));
    CHECK(equal_cross_mult(p4->coord1(), Fraction(U(1) + U())));
    CHECK(equal_cross_mult(p4->coord2(),
                           Fraction(U(1) * (-T()) + U() * (ScalarRat(1) - T()))));

    // nonzero constant term: y - x' - t gives (u, u' + t)
    LinearCurve c5(-D(), OreOp(1), -T());
    auto p5 = ldcp(c5);
    REQUIRE(p5.has_value());
    CHECK(equal_cross_mult(p5->coord1(), Fraction(U())));
    CHECK(equal_cross_mult(p5->coord2(), Fraction(U(1) + DiffPoly(T()))));
    CHECK(verify_on_curve(c5.to_poly(), *p5));

    // degenerate curve c*x + a parametrizes as (-a/c, u)
    LinearCurve c6(OreOp(ScalarRat(2)), OreOp(), T());
    auto p6 = ldcp(c6);
    REQUIRE(p6.has_value());
    CHECK(equal_cross_mult(p6->coord1(), Fraction(DiffPoly(-T() / ScalarRat(2)))));
    CHECK(equal_cross_mult(p6->coord2(), Fraction(U())));
    CHECK(verify_on_curve(c6.to_poly(), *p6));
}

TEST_CASE("polynomial properness via gcrd") {
    LinearRationalParam good{Fraction(U(1)), Fraction(U() + U(1))};
    CHECK(proper_check_poly(good));
    LinearRationalParam good2{Fraction(U(1) + U()),
                              Fraction(U(1) * (-T()) + U() * (ScalarRat(1) - T()))};
    CHECK(proper_check_poly(good2));
    LinearRationalParam bad{Fraction(U(1)), Fraction(U(2))};
    CHECK_FALSE(proper_check_poly(bad));
    CHECK_THROWS_AS(proper_check_poly(LinearRationalParam(Fraction(U(), U(1)), Fraction(U()))),
                    domain_error);
}

TEST_CASE("rational properness via the differential resultant") {
    // Example 4.8: ((u''+1)/u, (u''+1)/u) is improper: ord_x R = 0 against m2 = 2
    Fraction c48(U(2) + DiffPoly(1), U());
    LinearRationalParam p48{c48, c48};
    ProperReport rep = proper_check_rational(p48);
    CHECK_FALSE(rep.proper);
    CHECK(rep.ord_x == 0);
    CHECK(rep.expected_ord_x == 2);
    DiffPoly d = Y() - X();
    CHECK(rep.resultant == d * d * d);

    // (u', u + u') is proper with matching orders
    LinearRationalParam p2{Fraction(U(1)), Fraction(U() + U(1))};
    ProperReport rep2 = proper_check_rational(p2);
    CHECK(rep2.proper);
    CHECK(rep2.ord_x == 1);
    CHECK(rep2.ord_y == 1);

    // the degree-1 parametrization of Remark 4.10 is improper
    LinearRationalParam p410{Fraction(U(2), U(1) + U(3)),
                             Fraction(U(1) + U(2) * ScalarRat(2), U(4))};
    CHECK_FALSE(proper_check_rational(p410).proper);

    CHECK_THROWS_AS(proper_check_rational(LinearRationalParam(Fraction(DiffPoly(T())),
                                                              Fraction(U()))),
                    domain_error);
}

TEST_CASE("properness against a known curve") {
    DiffPoly f = Y(1) - X(1) - X();
    LinearRationalParam p{Fraction(U(1)), Fraction(U() + U(1))};
    CHECK(proper_check_via_curve(f, p));

    // improper chain-composed parametrization of orders (2, 2)
    LinearRationalParam composed{Fraction(U(2)), Fraction(U(1) + U(2))};
    CHECK(verify_on_curve(f, composed));
    CHECK_FALSE(proper_check_via_curve(f, composed));

    // degenerate branch: x - t with (t, u)
    LinearRationalParam degenerate{Fraction(DiffPoly(T())), Fraction(U())};
    CHECK(proper_check_via_curve(X() - DiffPoly(T()), degenerate));

    CHECK_THROWS_AS(proper_check_via_curve(X(), p), domain_error);
}

TEST_CASE("implicitization of polynomial parametrizations") {
    LinearRationalParam p{Fraction(U(1)), Fraction(U() + U(1))};
    CHECK(implicitize_poly(p) == curve_562());

    LinearRationalParam q{Fraction(U()), Fraction(U(1) + DiffPoly(T()))};
    LinearCurve expect_q(-D(), OreOp(1), -T()); // y - x' - t
    CHECK(implicitize_poly(q) == expect_q);

    LinearRationalParam r{Fraction(U()), Fraction(U())};
    CHECK(implicitize_poly(r).to_poly() == Y() - X());

    // improper input is rejected
    CHECK_THROWS_AS(implicitize_poly(LinearRationalParam(Fraction(U(1)), Fraction(U(2)))),
                    domain_error);
}

TEST_CASE("implicitization of rational parametrizations") {
    LinearRationalParam p{Fraction(U(1)), Fraction(U() + U(1))};
    ImplicitRecord rec = implicitize_rational(p);
    CHECK(rec.f_l == X() + X(1) - Y(1));
    CHECK(rec.f_prev == Y() - X() - U());
    CHECK(rec.resultant == Y(1) - X(1) - X());
    CHECK(rec.f_l.order_in(Indet::x) == 1);
    CHECK(rec.f_l.order_in(Indet::y) == 1);
    auto sub = substitute(rec.f_l, {{Indet::x, p.coord1()}, {Indet::y, p.coord2()}});
    CHECK(sub.num.is_zero());

    LinearRationalParam q{Fraction(U()), Fraction(U(1) + DiffPoly(T()))};
    ImplicitRecord rq = implicitize_rational(q);
    CHECK(rq.f_l == X(1) - Y() + DiffPoly(T()));
    CHECK(rq.f_prev == X() - U());
    CHECK(rq.f_prev.order_in(Indet::u) == 0);

    Fraction c48(U(2) + DiffPoly(1), U());
    CHECK_THROWS_AS(implicitize_rational(LinearRationalParam(c48, c48)), domain_error);
}

TEST_CASE("inversion examples") {
    // (u', u + u'): u = y - x
    LinearRationalParam p{Fraction(U(1)), Fraction(U() + U(1))};
    auto [num, den] = inversion(p);
    CHECK(equal_cross_mult(Fraction(num, den), Fraction(Y() - X())));

    // reproduction identity: num(P) - u * den(P) clears to zero
    auto rn = substitute(num, {{Indet::x, p.coord1()}, {Indet::y, p.coord2()}});
    auto rd = substitute(den, {{Indet::x, p.coord1()}, {Indet::y, p.coord2()}});
    CHECK(rn.num * rd.den == U() * rd.num * rn.den);

    // order bounds of the inversion map
    CHECK(num.order_in(Indet::x).value_or(-1) < 1);
    CHECK(num.order_in(Indet::y).value_or(-1) < 1);
    CHECK(den.order_in(Indet::x).value_or(-1) < 1);
    CHECK(den.order_in(Indet::y).value_or(-1) < 1);

    // (u, u' + t) is rejected: m1 = 0
    CHECK_THROWS_AS(inversion(LinearRationalParam(Fraction(U()), Fraction(U(1) + DiffPoly(T())))),
                    domain_error);

    // (u'+u, -tu'+(1-t)u): u = t*x + y
    LinearRationalParam p4{Fraction(U(1) + U()),
                           Fraction(U(1) * (-T()) + U() * (ScalarRat(1) - T()))};
    auto [n4, d4] = inversion(p4);
    CHECK(equal_cross_mult(Fraction(n4, d4), Fraction(X() * T() + Y())));
}

TEST_CASE("Mobius transformation") {
    GeneralRationalParam p1{Fraction(U(1)), Fraction(U() + U(1))};
    // u -> 1/u gives (-u'/u^2, (u-u')/u^2)
    GeneralRationalParam image = mobius_apply(p1, 0, 1, 1, 0);
    GeneralRationalParam expected{Fraction(-U(1), U() * U()),
                                  Fraction(U() - U(1), U() * U())};
    CHECK(equal_cross_mult(image, expected));
    CHECK(verify_on_curve(Y(1) - X(1) - X(), image));

    // identity transform is a fixed point
    CHECK(equal_cross_mult(mobius_apply(p1, 1, 0, 0, 1), p1));

    // (u^2, u') under u -> u + 1 gives ((u+1)^2, u'), still on x'^2 - 4xy^2
    GeneralRationalParam p2{Fraction(U() * U()), Fraction(U(1))};
    GeneralRationalParam shifted = mobius_apply(p2, 1, 1, 0, 1);
    DiffPoly up1 = U() + DiffPoly(1);
    CHECK(equal_cross_mult(shifted, GeneralRationalParam{Fraction(up1 * up1), Fraction(U(1))}));
    CHECK(verify_on_curve(X(1) * X(1) - X() * Y() * Y() * ScalarRat(4), shifted));

    CHECK_THROWS_AS(mobius_apply(p1, 1, 2, 2, 4), domain_error);
}

TEST_CASE("order relation of verified pairs") {
    GeneralRationalParam p1{Fraction(U() * U()), Fraction(U(1))};
    CHECK(order_relation_check(X(1) * X(1) - X() * Y() * Y() * ScalarRat(4), p1, 0, 1));

    GeneralRationalParam p2{Fraction(U(1)), Fraction(U() + U(1))};
    CHECK(order_relation_check(Y(1) - X(1) - X(), p2, 1, 1));

    // (uu'', u') on y''x + (y')^2 y - y'x' with orders (2, 1)
    GeneralRationalParam p3{Fraction(U() * U(2)), Fraction(U(1))};
    DiffPoly a3 = Y(2) * X() + Y(1) * Y(1) * Y() - Y(1) * X(1);
    CHECK(verify_on_curve(a3, p3));
    CHECK(order_relation_check(a3, p3, 2, 1));

    CHECK_FALSE(order_relation_check(Y(1) - X(1) - X(), p2, 2, 1));
}

TEST_CASE("ideal membership for linear curves") {
    LinearCurve a(D() * D(), -D(), 0);  // x'' - y'
    LinearCurve b(D(), OreOp(-1), 0);   // x' - y
    auto d = ideal_membership_linear(a, b);
    REQUIRE(d.has_value());
    CHECK(*d == D());

    // the membership hook: positive witness of degree > 0 means not unirational
    CHECK(*d->degree() > 0);
    CHECK_FALSE(is_unirational(a).first);

    LinearCurve c = curve_562();
    auto self = ideal_membership_linear(c, c);
    REQUIRE(self.has_value());
    CHECK(*self == OreOp(1));

    CHECK_FALSE(ideal_membership_linear(a, c).has_value());
}

TEST_CASE("LDCP roundtrip property") {
    std::mt19937 rng(140814);
    for (int i = 0; i < 15; ++i) {
        LinearCurve f = random_unirational_curve(rng);
        auto p = ldcp(f);
        REQUIRE(p.has_value());
        CHECK(verify_on_curve(f.to_poly(), *p));
        CHECK(proper_check_poly(*p));
        ProperReport rep = proper_check_rational(*p);
        CHECK(rep.proper);

        // Theorem-level order law: coordinate orders match operator degrees
        CHECK(p->m1() == f.l2.degree());
        CHECK(p->m2() == f.l1.degree());

        CHECK(curves_equal_up_to_multiple(implicitize_poly(*p), f));

        // resultant membership: R vanishes at the parametrization
        auto sub = substitute(rep.resultant,
                              {{Indet::x, p->coord1()}, {Indet::y, p->coord2()}});
        CHECK(sub.num.is_zero());
    }
}

TEST_CASE("Mobius stability of LDCP outputs") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-3, 3);
    int done = 0;
    while (done < 10) {
        LinearCurve f = random_unirational_curve(rng);
        auto p = ldcp(f);
        REQUIRE(p.has_value());
        ScalarRat a(coef(rng)), b(coef(rng)), c(coef(rng)), d(coef(rng));
        if ((a * d - b * c).is_zero()) continue;
        ++done;
        GeneralRationalParam moved = mobius_apply(p->general(), a, b, c, d);
        CHECK(verify_on_curve(f.to_poly(), moved));
    }
}

TEST_CASE("inversion identity on roundtrip samples") {
    std::mt19937 rng(2025);
    int done = 0;
    while (done < 8) {
        LinearCurve f = random_unirational_curve(rng);
        auto p = ldcp(f);
        REQUIRE(p.has_value());
        if (!p->m1() || *p->m1() < 1 || !p->m2() || *p->m2() < 1) continue;
        ++done;
        auto [num, den] = inversion(*p);
        auto rn = substitute(num, {{Indet::x, p->coord1()}, {Indet::y, p->coord2()}});
        auto rd = substitute(den, {{Indet::x, p->coord1()}, {Indet::y, p->coord2()}});
        CHECK(rn.num * rd.den == U() * rd.num * rn.den);
        for (const DiffPoly* part : {&num, &den}) {
            CHECK(part->order_in(Indet::x).value_or(-1) < *p->m2());
            CHECK(part->order_in(Indet::y).value_or(-1) < *p->m1());
        }
    }
}
