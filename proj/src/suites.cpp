#include "udf/suites.hpp"

#include <algorithm>

#include "udf/udf.hpp"

namespace udf::suites {

using h1::Element;
using h1::Monomial;
using h1::Tensor;
using jet::CrossedElement;
using jet::JetPoly;

static Element right_antipode_product(const Tensor &t)
{
    Element r;
    for (auto &[k, c] : t.terms()) r += h1::multiply(Element(k[0], c), h1::antipode(k[1]));
    return r;
}

VerificationReport hopf(int degree)
{
    VerificationReport rep;
    rep.suite = "hopf";
    for (const Monomial &m : h1::monomials_up_to(degree)) {
        Tensor d = h1::coproduct(m);
        Tensor l = h1::coproduct_leg(d, 1), r = h1::coproduct_leg(d, 2);
        rep.add("coassociative " + m.str(), l == r, digest(l.str()), digest(r.str()));
        if (m.degree() > std::min(degree, 4)) continue;
        Element e(h1::counit(Element(m)));
        Element sl = h1::multiply_antipode_left(d), sr = right_antipode_product(d);
        rep.add("m(S x 1)D = e on " + m.str(), sl == e, sl.str(), e.str());
        rep.add("m(1 x S)D = e on " + m.str(), sr == e, sr.str(), e.str());
    }
    auto small = h1::monomials_up_to(std::min(degree, 2));
    for (const Monomial &a : small)
        for (const Monomial &b : small) {
            Element ea(a), eb(b), ab = ea * eb;
            std::string id = a.str() + " * " + b.str();
            Tensor lhs = h1::coproduct(ab), rhs = h1::compose(h1::coproduct(a), h1::coproduct(b));
            rep.add("D multiplicative on " + id, lhs == rhs, digest(lhs.str()), digest(rhs.str()));
            rep.add("e multiplicative on " + id, h1::counit(ab) == h1::counit(ea) * h1::counit(eb));
            Element s = h1::antipode(ab), t = h1::antipode(b) * h1::antipode(a);
            rep.add("S anti-multiplicative on " + id, s == t, s.str(), t.str());
        }
    return rep;
}

VerificationReport jet(int degree)
{
    VerificationReport rep;
    rep.suite = "jet";
    for (int d = 0; d <= std::min(degree, 3); ++d) {
        auto f = jet::faithfulness_rank(d);
        rep.add("faithful at degree " + std::to_string(d), f.full_rank(), std::to_string(f.rank),
                std::to_string(f.monomials));
    }
    CrossedElement a = CrossedElement::function("f", jet::parse_word("a"));
    CrossedElement b = CrossedElement::function("g", jet::parse_word("Bc"));
    auto mons = h1::monomials_up_to(degree);
    for (const Monomial &h1m : mons)
        for (const Monomial &h2m : mons) {
            if (h1m.degree() + h2m.degree() > degree) continue;
            CrossedElement l = jet::act(Element(h1m) * Element(h2m), a), r = jet::act(h1m, jet::act(h2m, a));
            rep.add("act(" + h1m.str() + " " + h2m.str() + ") composes", l == r, digest(l.str()), digest(r.str()));
        }
    CrossedElement ab = jet::cross_multiply(a, b);
    for (const Monomial &h : h1::monomials_up_to(std::min(degree, 3))) {
        CrossedElement lhs = jet::act(h, ab), rhs;
        const Tensor d = h1::coproduct(h);
        for (auto &[k, c] : d.terms()) rhs += jet::cross_multiply(jet::act(k[0], a), jet::act(k[1], b)).scaled(c);
        rep.add("Leibniz for " + h.str(), lhs == rhs, digest(lhs.str()), digest(rhs.str()));
    }
    const std::vector<std::string> words{"a", "b", "A", "ab", "aB", "Ab", "ba", "abA", "id"};
    for (auto &s1 : words)
        for (auto &s2 : words) {
            auto w1 = jet::parse_word(s1), w2 = jet::parse_word(s2);
            auto v = jet::JetVariant::Delta2Prime;
            JetPoly lhs = jet::jet_of_product(jet::concat(w1, w2), 2, v);
            JetPoly rhs = jet::jet_of_product(w1, 2, v) + jet::prefix(w1, jet::jet_of_product(w2, 2, v));
            rep.add("delta_2' cocycle " + s1 + "," + s2, lhs == rhs, digest(lhs.str()), digest(rhs.str()));
        }
    for (auto &s : words) {
        auto w = jet::parse_word(s);
        for (int n = 1; n <= 4; ++n) {
            JetPoly z = jet::jet_of_product(jet::concat(w, jet::inverse(w)), n);
            rep.add("delta_" + std::to_string(n) + "(w w^-1) = 0 for " + s, z.is_zero(), z.str(), "0");
        }
    }
    return rep;
}

VerificationReport fedosov(int degree)
{
    using namespace weyl;
    VerificationReport rep;
    rep.suite = "fedosov";
    Params p;
    Cut cut;
    cut.max_m = degree;
    cut.max_deg = 2 * degree;
    for (Kind k : {Kind::HatF, Kind::AlphaHatG, Kind::UAlphaInv, Kind::UAlphaBeta, Kind::VAlphaBeta}) {
        auto spec = family_spec(k, p);
        WeylSection rec = solve_recursion(spec, p, degree, degree + 1).triangle(degree);
        WeylSection closed = build_closed(spec, p, degree, degree).triangle(degree);
        WeylSection fed = fedosov_iterate(spec, p, cut).triangle(degree);
        std::string d = digest(rec.to_json().dump());
        rep.add(kind_name(k) + " closed form = recursion", closed == rec, digest(closed.to_json().dump()), d);
        rep.add(kind_name(k) + " Fedosov iteration = recursion", fed == rec, digest(fed.to_json().dump()), d);
    }
    {
        const int N = 3, nw = 3, M = engine::max_u_degree(N);
        Cut order;
        order.max_order = N;
        WeylSection f = solve_recursion(family_spec(Kind::HatF, p), p, M, nw + M + 2).pruned(order);
        Cut window;
        window.max_order = N - 1;
        window.max_n = nw;
        rep.add("D f^ = 0 (order 3)", connection(f, p).pruned(window).is_zero());
    }
    JetPoly phi = JetPoly::from_letter(jet::function_letter("f"));
    for (int m = 0; m <= std::min(degree, 4); ++m)
        for (int n = 0; m + n <= std::min(degree, 4); ++n)
            for (int y = -1; y <= 1; ++y) {
                std::string id = "u^" + std::to_string(m) + " v^" + std::to_string(n) + " y^" + std::to_string(y);
                WeylSection a = WeylSection::monomial(m, n, CoeffExpr(phi, y));
                FormSection dd = connection1(connection(a, p), p);
                rep.add("D^2 = 0 on " + id, dd.is_zero());
                FormSection x;
                x.s = a;
                x.dx = a;
                x.dy = a.scaled(HbarScalar(2));
                x.dxdy = a;
                FormSection lhs = fedosov_delta(fedosov_delta_inv(x)) + fedosov_delta_inv(fedosov_delta(x));
                FormSection rhs = x;
                if (m == 0 && n == 0) rhs.s = WeylSection();
                rep.add("delta delta^-1 + delta^-1 delta = id - projection on " + id, lhs == rhs);
            }
    return rep;
}

}  // namespace udf::suites
