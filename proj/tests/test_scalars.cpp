#include <doctest.h>

#include <random>

#include "udf/scalars.hpp"

using namespace udf;

namespace {

GaussianRational gq(long re_n, long re_d, long im_n = 0, long im_d = 1)
{
    return GaussianRational(mpq_class(re_n, re_d), mpq_class(im_n, im_d));
}

HbarScalar random_scalar(std::mt19937 &rng)
{
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), ex(-2, 3), count(0, 3);
    HbarScalar s;
    for (int i = count(rng); i > 0; --i) {
        auto c = gq(coef(rng), den(rng), coef(rng), den(rng));
        s += HbarScalar(c, ex(rng));
    }
    return s;
}

}  // namespace

TEST_SUITE("exact_scalars")
{
    TEST_CASE("exponent cancellation")
    {
        HbarScalar inv_h(GaussianRational(1), -1), ih4(gq(0, 1, 1, 4), 1);
        CHECK(inv_h * ih4 == HbarScalar(gq(0, 1, 1, 4)));
    }

    TEST_CASE("i squared is -1") { CHECK(I_UNIT * I_UNIT == GaussianRational(-1)); }

    TEST_CASE("monomial inverse")
    {
        HbarScalar minus_ih(gq(0, 1, -1, 1), 1);
        CHECK(minus_ih.inverse() == HbarScalar(I_UNIT, -1));
        CHECK(minus_ih * minus_ih.inverse() == HbarScalar(1));
        CHECK_THROWS_WITH(HbarScalar(HbarScalar(1) + HbarScalar::hbar()).inverse(), "non-invertible scalar");
        CHECK_THROWS(HbarScalar().inverse());
    }

    TEST_CASE("valuation")
    {
        HbarScalar a = HbarScalar(gq(0, 1, -1, 1), -1) + HbarScalar(GaussianRational(3), 2);
        CHECK(a.valuation() == -1);
        CHECK_FALSE(HbarScalar().valuation().has_value());
        CHECK(HbarScalar(7).valuation() == 0);
    }

    TEST_CASE("truncate")
    {
        HbarScalar a = HbarScalar(I_UNIT, -1) + HbarScalar::hbar(3);
        CHECK(a.truncate(2) == HbarScalar(I_UNIT, -1));
        CHECK(HbarScalar(5).truncate(0) == HbarScalar(5));
        HbarScalar b = HbarScalar::hbar(2) + HbarScalar::hbar(1);
        CHECK(b.truncate(2) == b);
    }

    TEST_CASE("canonical rationals")
    {
        CHECK(GaussianRational(mpq_class(2, 4)) == GaussianRational::frac(1, 2));
        CHECK(GaussianRational(mpq_class(2, 2)).is_one());
    }

    TEST_CASE("ring axioms, valuation and truncation on random inputs")
    {
        std::mt19937 rng(7);
        for (int i = 0; i < 200; ++i) {
            HbarScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + b == b + a);
            CHECK(a - a == HbarScalar());
            if (!a.is_zero() && !b.is_zero()) CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
            CHECK(a.truncate(2).truncate(0) == a.truncate(0));
            CHECK(a.truncate(0).truncate(2) == a.truncate(0));
            CHECK(HbarScalar::mul(a, b, 1) == (a * b).truncate(1));
        }
    }

    TEST_CASE("ascending storage and json round trip")
    {
        HbarScalar a = HbarScalar::hbar(3) + HbarScalar(gq(1, 3, -2, 5), -2) + HbarScalar(1);
        int last = -100;
        for (auto &[e, c] : a.terms()) {
            CHECK(e > last);
            last = e;
        }
        CHECK(HbarScalar::from_json(a.to_json()) == a);
    }

    TEST_CASE("big integers do not overflow")
    {
        HbarScalar a(GaussianRational(mpq_class("1000000000000000000000")));
        CHECK((a * a).coeff(0).re() == mpq_class("1000000000000000000000000000000000000000000"));
    }
}
