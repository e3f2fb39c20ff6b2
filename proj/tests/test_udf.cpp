#include <doctest.h>

#include "udf/udf.hpp"

using namespace udf;
using namespace udf::engine;
using h1::Element;
using h1::Tensor;

namespace {

JetPoly letter(const std::string &name, const jet::GroupWord &w = {})
{
    return JetPoly::from_letter(jet::function_letter(name, 0, 0, w));
}
HbarScalar half_i_hbar(long sign) { return HbarScalar(GaussianRational(0, mpq_class(sign, 2)), 1); }

}  // namespace

TEST_SUITE("udf_engine")
{
    TEST_CASE("order 0 of R and of the star product")
    {
        CHECK(extract_R(0).orders.at(0) == Tensor::unit(2));
        StarEngine eng(0);
        auto a = jet::parse_word("a"), b = jet::parse_word("b");
        auto prod = eng.star(CrossedElement::function("f", a), CrossedElement::function("g", b));
        CHECK(prod == CrossedElement(letter("f") * letter("g", a), jet::parse_word("ab")));
    }

    TEST_CASE("single order-1 contribution")
    {
        Tuple m{1, 0, 0, 0, 0}, n{0, 0, 1, 0, 0};
        CHECK(contribution(m, n, 1) == Tensor::pure(Element::X(), Element::Y()).scaled(half_i_hbar(1)));
    }

    TEST_CASE("unit laws at order 3")
    {
        StarEngine eng(3);
        CrossedElement unit(JetPoly(HbarScalar(1)), {});
        for (auto w : {"a", "ab", "Ba"}) {
            auto g = CrossedElement::function("g", jet::parse_word(w));
            CHECK(eng.star(unit, g) == g);
            CHECK(eng.star(g, unit) == g);
        }
    }

    TEST_CASE("star_via_R")
    {
        RTensor r0;
        r0.orders.push_back(Tensor::unit(2));
        auto fa = CrossedElement::function("f", jet::parse_word("a"));
        auto gb = CrossedElement::function("g", jet::parse_word("bA"));
        CHECK(star_via_R(r0, fa, gb, 2) == jet::cross_multiply(fa, gb));
        RTensor R = extract_R(2);
        CrossedElement unit(JetPoly(HbarScalar(1)), {});
        CHECK(star_via_R(R, unit, gb, 2) == gb);
        StarEngine eng(2);
        CHECK(star_via_R(R, fa, gb, 2) == eng.star(fa, gb));
    }

    TEST_CASE("verify_udf")
    {
        RTensor r0;
        r0.orders.push_back(Tensor::unit(2));
        CHECK(verify_udf(r0, 0).ok());
        RTensor R = extract_R(3);
        CHECK(counit_leg(R.orders[1], 1).is_zero());
        CHECK(counit_leg(R.orders[1], 2).is_zero());
        auto rep = verify_udf(R, 3);
        CHECK(rep.ok());
        CHECK(rep.passed() == 6);
    }

    TEST_CASE("inverse readings agree through order 3, only the Moyal one is a UDF at order 4")
    {
        CHECK(extract_R(3, {}, InverseReading::Normalized).total() == extract_R(3).total());
        CHECK(verify_udf(extract_R(4), 4).ok());
        CHECK_FALSE(verify_udf(extract_R(4, {}, InverseReading::Normalized), 4).ok());
    }

    TEST_CASE("twist")
    {
        RTensor R = extract_R(2);
        TwistResult t = twist(R, 2);
        CHECK(t.R_inverse.orders[1] == -R.orders[1]);
        CHECK(t.v.at(0) == Element::one());
        CHECK(t.coproduct.at("Y").order_part(0) == h1::coproduct(Element::Y()));
        CHECK(verify_twist(R, t, 2).ok());
        auto anti = verify_twisted_antipode(t, 2);
        MESSAGE("twisted antipode (informational): " << anti.summary());
        RTensor bad;
        bad.orders.push_back(Tensor::pure(Element::X(), Element::one()));
        CHECK_THROWS(twist(bad, 1));
    }

    TEST_CASE("RTensor json round trip and degree bound")
    {
        RTensor R = extract_R(2);
        CHECK(RTensor::from_json(R.to_json()).total() == R.total());
        CHECK(max_u_degree(0) == 0);
        CHECK(max_u_degree(1) == 1);
        CHECK(max_u_degree(2) == 3);
        CHECK(max_u_degree(3) == 4);
    }
}
