#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "udf/h1.hpp"
#include "udf/jet.hpp"
#include "udf/report.hpp"
#include "udf/weyl.hpp"

namespace udf::engine {

using jet::CrossedElement;
using jet::GroupWord;
using jet::JetPoly;
using weyl::Params;

// R = sum_k orders[k], orders[k] carrying hbar^k inside its scalars
struct RTensor {
    int max_order = 0;
    std::vector<h1::Tensor> orders;

    h1::Tensor total() const;
    nlohmann::json to_json() const;
    static RTensor from_json(const nlohmann::json &j);
    std::string str() const;
    // each order with (-i hbar/2)^k pulled out
    std::string latex() const;
};

// largest u-degree a factor can carry and still reach order N at the origin
int max_u_degree(int N);

// how the inverse factors U_a^-1 and a(U_b^-1) are obtained: the Moyal inverse of U_a and a(U_b),
// or the normalized solutions of the inverse equations (the two agree through hbar^3)
enum class InverseReading { Moyal, Normalized };

// the five-factor product, sections cached per group words
class StarEngine {
public:
    StarEngine(int N, Params p = {}, InverseReading r = InverseReading::Moyal) : N_(N), p_(p), reading_(r) {}

    CrossedElement star(const CrossedElement &a, const CrossedElement &b);
    // one pair of terms: the jet polynomial in front of the word w1 w2
    JetPoly star_term(const JetPoly &phi, const GroupWord &w1, const JetPoly &psi, const GroupWord &w2);
    const weyl::WeylSection &section(weyl::Kind k, const GroupWord &w1, const GroupWord &w2);
    int order() const { return N_; }
    const Params &params() const { return p_; }

private:
    static constexpr const char *kLeft = "F#";
    static constexpr const char *kRight = "G#";
    // the product for placeholder functions, before substituting the actual jets
    JetPoly generic_term(const GroupWord &w1, const GroupWord &w2);
    weyl::WeylSection build(const weyl::SectionSpec &s) const;
    weyl::WeylSection inverse_of(const weyl::SectionSpec &s) const;
    int N_;
    Params p_;
    InverseReading reading_;
    std::map<std::tuple<int, GroupWord, GroupWord>, weyl::WeylSection> cache_;
    std::map<std::pair<GroupWord, GroupWord>, JetPoly> generic_;
};

// splits f*alpha(g)-bilinear jet polynomials (generators a, b) into H1 (x) H1
h1::Tensor extract(const JetPoly &p);
RTensor extract_R(int N, const Params &p = {}, InverseReading r = InverseReading::Moyal);

// the single term C_{m;n}: coefficients of the five factors at the given indices
using Tuple = std::array<int, 5>;
h1::Tensor contribution(const Tuple &m, const Tuple &n, int N, const Params &p = {});
// all tuples that contribute at exactly hbar^k, with their values
std::vector<std::pair<std::pair<Tuple, Tuple>, h1::Tensor>> contributions_at(int k, const Params &p = {});

CrossedElement star_via_R(const RTensor &R, const CrossedElement &a, const CrossedElement &b, int N);

VerificationReport verify_udf(const RTensor &R, int N);

struct TwistResult {
    RTensor R_inverse;
    std::vector<h1::Element> v;  // per order
    h1::Element v_inverse;
    std::map<std::string, h1::Tensor> coproduct;  // X, Y, d1
    std::map<std::string, h1::Element> antipode;
};
TwistResult twist(const RTensor &R, int N);
// R^-1 R = 1, v v^-1 = 1, coassociativity of the twisted coproduct
VerificationReport verify_twist(const RTensor &R, const TwistResult &t, int N);
// m(S~ x 1) D~(a) = e(a) on the generators to order min(N, 2); informational only
VerificationReport verify_twisted_antipode(const TwistResult &t, int N);

}  // namespace udf::engine
