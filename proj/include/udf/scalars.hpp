#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace udf {

// a + b i with exact rationals
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }
    static GaussianRational frac(long num, long den) { return GaussianRational(mpq_class(num, den)); }
    static GaussianRational i() { return GaussianRational(0, 1); }

    const mpq_class &re() const { return re_; }
    const mpq_class &im() const { return im_; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational &operator+=(const GaussianRational &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &o);
    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
    GaussianRational inverse() const;
    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator<(const GaussianRational &a, const GaussianRational &b)
    {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }
    std::string str() const;

private:
    mpq_class re_, im_;
};

// Laurent polynomial in hbar, exponents ascending, no zero entries
class HbarScalar {
public:
    using Term = std::pair<int, GaussianRational>;

    HbarScalar() = default;
    HbarScalar(long v) : HbarScalar(GaussianRational(v)) {}
    HbarScalar(const GaussianRational &c, int exp = 0)
    {
        if (!c.is_zero()) terms_.emplace_back(exp, c);
    }
    static HbarScalar hbar(int e = 1) { return HbarScalar(GaussianRational(1), e); }
    static HbarScalar frac(long n, long d) { return HbarScalar(GaussianRational::frac(n, d)); }

    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_one(); }
    std::optional<int> valuation() const
    {
        if (terms_.empty()) return std::nullopt;
        return terms_.front().first;
    }
    std::optional<int> top() const
    {
        if (terms_.empty()) return std::nullopt;
        return terms_.back().first;
    }
    GaussianRational coeff(int e) const;

    HbarScalar operator-() const;
    HbarScalar &operator+=(const HbarScalar &o);
    HbarScalar &operator-=(const HbarScalar &o) { return *this += -o; }
    friend HbarScalar operator+(HbarScalar a, const HbarScalar &b) { return a += b; }
    friend HbarScalar operator-(HbarScalar a, const HbarScalar &b) { return a -= b; }
    friend HbarScalar operator*(const HbarScalar &a, const HbarScalar &b) { return mul(a, b); }
    HbarScalar &operator*=(const HbarScalar &o) { return *this = mul(*this, o); }
    // product keeping only exponents <= max_exp
    static HbarScalar mul(const HbarScalar &a, const HbarScalar &b, int max_exp = 1 << 29);
    HbarScalar scaled(const GaussianRational &c) const;
    HbarScalar shifted(int de) const;
    HbarScalar truncate(int N) const;
    // drops exponents below lo
    HbarScalar truncate_below(int lo) const;
    // throws "non-invertible scalar" unless a nonzero monomial
    HbarScalar inverse() const;

    friend bool operator==(const HbarScalar &a, const HbarScalar &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const HbarScalar &a, const HbarScalar &b) { return !(a == b); }
    friend bool operator<(const HbarScalar &a, const HbarScalar &b);

    std::string str() const;
    std::string latex() const;
    nlohmann::json to_json() const;
    static HbarScalar from_json(const nlohmann::json &j);

private:
    std::vector<Term> terms_;
};

inline const GaussianRational I_UNIT = GaussianRational::i();

}  // namespace udf
