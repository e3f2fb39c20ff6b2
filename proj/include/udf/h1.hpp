#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "udf/scalars.hpp"

namespace udf::h1 {

// delta_n powers, then X^x, then Y^y
struct Monomial {
    std::vector<std::pair<int, int>> d;  // (n, exponent), n ascending, exponent >= 1
    int x = 0;
    int y = 0;

    bool is_one() const { return d.empty() && x == 0 && y == 0; }
    int delta_weight() const;
    int degree() const;  // filtration degree: sum n*e + x + y
    std::string str() const;
    std::string latex() const;
    nlohmann::json to_json() const;
    static Monomial from_json(const nlohmann::json &j);
    void add_delta(int n, int e = 1);

    friend bool operator==(const Monomial &, const Monomial &) = default;
    friend auto operator<=>(const Monomial &a, const Monomial &b)
    {
        if (auto c = a.d <=> b.d; c != 0) return c;
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

class Element {
public:
    using Map = std::map<Monomial, HbarScalar>;

    Element() = default;
    Element(const HbarScalar &c);
    Element(const Monomial &m, const HbarScalar &c = HbarScalar(1));
    static Element one() { return Element(HbarScalar(1)); }
    static Element X();
    static Element Y();
    static Element delta(int n);
    // delta_2 - 1/2 delta_1^2
    static Element delta2p();
    // Y + c
    static Element Y_plus(const GaussianRational &c);

    const Map &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const Monomial &m, const HbarScalar &c);

    Element operator-() const;
    Element &operator+=(const Element &o);
    Element &operator-=(const Element &o);
    friend Element operator+(Element a, const Element &b) { return a += b; }
    friend Element operator-(Element a, const Element &b) { return a -= b; }
    friend Element operator*(const Element &a, const Element &b);
    Element scaled(const HbarScalar &c) const;
    Element truncate(int N) const;
    HbarScalar coeff(const Monomial &m) const;
    int max_degree() const;

    friend bool operator==(const Element &a, const Element &b) { return a.terms_ == b.terms_; }
    std::string str() const;
    std::string latex() const;
    nlohmann::json to_json() const;
    static Element from_json(const nlohmann::json &j);

private:
    Map terms_;
};

Element multiply(const Element &a, const Element &b, int N = 1 << 29);
Element pow(const Element &a, int k);
Element left_X(const Element &e);
Element left_Y(const Element &e);
Element left_delta(int n, const Element &e);
Element monomial_product(const Monomial &a, const Monomial &b);

class Tensor {
public:
    using Key = std::vector<Monomial>;
    using Map = std::map<Key, HbarScalar>;

    explicit Tensor(int rank = 2) : rank_(rank) {}
    static Tensor unit(int rank);
    static Tensor pure(const Element &a, const Element &b);
    static Tensor pure3(const Element &a, const Element &b, const Element &c);

    int rank() const { return rank_; }
    const Map &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const Key &k, const HbarScalar &c);

    Tensor &operator+=(const Tensor &o);
    Tensor &operator-=(const Tensor &o);
    friend Tensor operator+(Tensor a, const Tensor &b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor &b) { return a -= b; }
    Tensor operator-() const;
    Tensor scaled(const HbarScalar &c) const;
    Tensor truncate(int N) const;
    // part whose scalars are exactly hbar^k
    Tensor order_part(int k) const;

    friend bool operator==(const Tensor &a, const Tensor &b) { return a.rank_ == b.rank_ && a.terms_ == b.terms_; }
    std::string str() const;
    std::string latex() const;
    nlohmann::json to_json() const;
    static Tensor from_json(const nlohmann::json &j, int rank);

private:
    int rank_;
    Map terms_;
};

// leg-wise product; throws on rank mismatch
Tensor compose(const Tensor &s, const Tensor &t, int N = 1 << 29);

Tensor coproduct(const Element &a);
Tensor coproduct(const Monomial &m);
HbarScalar counit(const Element &a);
Element antipode(const Element &a);
Element antipode(const Monomial &m);
// Delta applied to leg 1 or 2 of a rank-2 tensor
Tensor coproduct_leg(const Tensor &t, int leg);
// counit applied to leg 1 or 2 of a rank-2 tensor
Element counit_leg(const Tensor &t, int leg);
// m(S x 1) t
Element multiply_antipode_left(const Tensor &t, int N = 1 << 29);
// a (x) 1 (x) ... style embedding of a rank-2 tensor into rank 3: slots are the legs used
Tensor embed3(const Tensor &t, int first_slot, int second_slot);
// all PBW monomials with degree <= d
std::vector<Monomial> monomials_up_to(int d);

}  // namespace udf::h1
