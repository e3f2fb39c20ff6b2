#include <doctest.h>

#include "udf/jet.hpp"
#include "udf/suites.hpp"

using namespace udf;
using namespace udf::jet;

namespace {

JetPoly L(int id) { return JetPoly::from_letter(id); }
const GroupWord a{1}, b{2};

}  // namespace

TEST_SUITE("jet_model")
{
    TEST_CASE("words reduce")
    {
        CHECK(parse_word("aA").empty());
        CHECK(parse_word("id").empty());
        CHECK(parse_word("aBb") == a);
        CHECK(inverse(parse_word("ab")) == parse_word("BA"));
        CHECK(word_str(parse_word("aB")) == "aB");
    }

    TEST_CASE("generator action")
    {
        auto fa = CrossedElement::function("f", a);
        CHECK(act(h1::Element::X(), fa) == CrossedElement(L(function_letter("f", 1, 0)), a));
        CHECK(act(h1::Element::delta(1), fa) == CrossedElement(L(jet_letter(1, 1)) * L(function_letter("f")), a));
        CrossedElement ag(L(function_letter("g", 0, 0, a)), {});
        CHECK(act(h1::Element::X(), ag) ==
              CrossedElement(L(function_letter("g", 1, 0, a)) + L(jet_letter(1, 1)) * L(function_letter("g", 0, 1, a)),
                             {}));
    }

    TEST_CASE("Y on normal-ordered letters carries the commutator correction")
    {
        JetPoly f = L(function_letter("f", 2, 0));
        CHECK(apply_Y(f) == L(function_letter("f", 2, 1)) + f.scaled(HbarScalar(2)));
    }

    TEST_CASE("crossed product")
    {
        auto fa = CrossedElement::function("f", a), gb = CrossedElement::function("g", b);
        CHECK(cross_multiply(fa, gb) == CrossedElement(L(function_letter("f")) * L(function_letter("g", 0, 0, a)),
                                                       parse_word("ab")));
        auto f = CrossedElement::function("f", {}), g = CrossedElement::function("g", {});
        CHECK(cross_multiply(f, g) == CrossedElement(L(function_letter("f")) * L(function_letter("g")), {}));
        CHECK(cross_multiply(fa, CrossedElement(JetPoly(HbarScalar(1)), {})) == fa);
    }

    TEST_CASE("jets of products")
    {
        CHECK(jet_of_product(parse_word("ab"), 1) == L(jet_letter(1, 1)) + L(jet_letter(2, 1, a)));
        for (int n = 1; n <= 4; ++n) CHECK(jet_of_product({}, n).is_zero());
        auto v = JetVariant::Delta2Prime;
        CHECK(jet_of_product(parse_word("ab"), 2, v) == jet_of_product(a, 2, v) + prefix(a, jet_of_product(b, 2, v)));
        // inverse-generator jets are rewritten through forward jets: d1(a^-1) = -a^-1(d1(a))
        CHECK(jet_of_product(parse_word("A"), 1) == -L(jet_letter(1, 1, parse_word("A"))));
        CHECK(jet_of_unreduced(parse_word("aA"), 2).is_zero());
    }

    TEST_CASE("faithfulness")
    {
        for (int d : {0, 1, 3}) {
            auto f = faithfulness_rank(d);
            CHECK(f.full_rank());
        }
        CHECK(faithfulness_rank(1).monomials == 4);
    }

    TEST_CASE("action composes and is compatible with the coproduct")
    {
        auto rep = suites::jet(4);
        CHECK(rep.failed() == 0);
        CHECK(rep.passed() > 100);
    }
}
