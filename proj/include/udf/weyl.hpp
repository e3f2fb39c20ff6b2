#pragma once

#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "udf/jet.hpp"

namespace udf::weyl {

using jet::JetPoly;

// sign of the fiber bracket ([u,v] = sigma*i*hbar) and the scale of Delta (c * y^3 d2'(w) u^2 dx)
struct Params {
    int sigma = -1;
    GaussianRational c_delta = GaussianRational::frac(1, 2);
};

// y-graded coefficient: y-exponent -> jet polynomial
class CoeffExpr {
public:
    using Map = std::map<int, JetPoly>;

    CoeffExpr() = default;
    CoeffExpr(const JetPoly &p, int yexp = 0) { add(yexp, p); }

    const Map &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add(int yexp, const JetPoly &p);
    JetPoly at(int yexp) const;

    CoeffExpr &operator+=(const CoeffExpr &o);
    CoeffExpr &operator-=(const CoeffExpr &o);
    friend CoeffExpr operator+(CoeffExpr a, const CoeffExpr &b) { return a += b; }
    friend CoeffExpr operator-(CoeffExpr a, const CoeffExpr &b) { return a -= b; }
    CoeffExpr scaled(const HbarScalar &c) const;
    CoeffExpr times(const JetPoly &p, int yshift = 0) const;
    static CoeffExpr mul(const CoeffExpr &a, const CoeffExpr &b, int max_hbar = 1 << 29);
    CoeffExpr truncate(int max_hbar) const;
    // d/dx and d/dy through the X and Y actions
    CoeffExpr dx() const;
    CoeffExpr dy() const;
    std::optional<int> valuation() const;

    friend bool operator==(const CoeffExpr &a, const CoeffExpr &b) { return a.t_ == b.t_; }
    std::string str() const;
    std::string latex() const;
    nlohmann::json to_json() const;

private:
    Map t_;
};

// which terms to keep: per (hbar exponent k, m, n)
struct Cut {
    int max_deg = INT_MAX;    // 2k + m + n
    int max_m = INT_MAX;
    int max_n = INT_MAX;
    int max_order = INT_MAX;  // k + m: the hbar order any later restriction to the origin reaches
    int hbar_limit(int m, int n) const;
    bool drops(int m, int n) const { return m > max_m || n > max_n; }
};

using Index = std::pair<int, int>;

class WeylSection {
public:
    using Map = std::map<Index, CoeffExpr>;

    WeylSection() = default;
    static WeylSection constant(const CoeffExpr &c);
    static WeylSection monomial(int m, int n, const CoeffExpr &c);

    const Map &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add(int m, int n, const CoeffExpr &c);
    CoeffExpr coeff(int m, int n) const;

    WeylSection &operator+=(const WeylSection &o);
    WeylSection &operator-=(const WeylSection &o);
    friend WeylSection operator+(WeylSection a, const WeylSection &b) { return a += b; }
    friend WeylSection operator-(WeylSection a, const WeylSection &b) { return a -= b; }
    WeylSection scaled(const HbarScalar &c) const;
    WeylSection times(const JetPoly &p, int yshift = 0) const;
    WeylSection pruned(const Cut &c) const;
    // only terms with m + n <= total
    WeylSection triangle(int total) const;

    WeylSection dx() const;
    WeylSection dy() const;
    WeylSection du() const;
    WeylSection dv() const;
    WeylSection mul_u() const;
    WeylSection mul_v() const;

    friend bool operator==(const WeylSection &a, const WeylSection &b) { return a.t_ == b.t_; }
    std::string table(int m_max, int n_max, bool latex) const;
    nlohmann::json to_json() const;

private:
    Map t_;
};

struct FormSection {
    WeylSection s, dx, dy, dxdy;
    bool is_zero() const { return s.is_zero() && dx.is_zero() && dy.is_zero() && dxdy.is_zero(); }
    FormSection &operator+=(const FormSection &o);
    FormSection &operator-=(const FormSection &o);
    friend FormSection operator+(FormSection a, const FormSection &b) { return a += b; }
    friend FormSection operator-(FormSection a, const FormSection &b) { return a -= b; }
    FormSection scaled(const HbarScalar &c) const;
    FormSection pruned(const Cut &c) const;
    friend bool operator==(const FormSection &, const FormSection &) = default;
};

WeylSection moyal(const WeylSection &a, const WeylSection &b, const Params &p, const Cut &cut = {});
// a∘b restricted to u = v = 0, using the pairing of u^m v^n against u^n v^m
CoeffExpr pair_at_origin(const WeylSection &a, const WeylSection &b, const Params &p, int max_hbar = 1 << 29);
CoeffExpr restrict_origin(const WeylSection &a);
// inverse of 1 + E under the Moyal product, by W = 1 - E∘W; E must raise the cut's order
WeylSection moyal_inverse(const WeylSection &a, const Params &p, const Cut &cut);

// Delta_w = c * y^3 * poly * u^2 dx
FormSection delta_form(const JetPoly &poly);
// the c * d2'(w) polynomial used by the recursions
JetPoly delta_poly(const jet::GroupWord &w, const Params &p);

// D a = d a - delta a + (i/h)[r, a] on 0-forms, r the connection 1-form
FormSection connection(const WeylSection &a, const Params &p, const Cut &cut = {});
// D on 1-forms, result in the dx^dy slot
FormSection connection1(const FormSection &b, const Params &p, const Cut &cut = {});
// D a + (i/h)(Delta_L∘a - a∘Delta_R); zero exactly on the sections built here
FormSection twisted_connection(const WeylSection &a, const JetPoly &cl, const JetPoly &cr, const Params &p,
                               const Cut &cut = {});

FormSection fedosov_delta(const FormSection &a);
FormSection fedosov_delta_inv(const FormSection &a);

enum class Kind { HatF, AlphaHatG, UAlphaInv, UAlphaBeta, VAlphaBeta };
Kind parse_kind(const std::string &s);
std::string kind_name(Kind k);

// seed and the two Delta polynomials of a family
struct SectionSpec {
    JetPoly seed;
    JetPoly cl, cr;
};
// the families for generators a, b and function letters f, g
SectionSpec family_spec(Kind k, const Params &p, const std::string &letter = "");
SectionSpec family_spec_words(Kind k, const jet::GroupWord &w1, const jet::GroupWord &w2, const JetPoly &fn,
                              const Params &p);

// ground truth: the first-order coefficient recursions, exact for m <= M, n <= Nmax
WeylSection solve_recursion(const SectionSpec &s, const Params &p, int M, int Nmax);
// closed form with the A_m induction (corrected reading)
WeylSection build_closed(const SectionSpec &s, const Params &p, int M, int Nmax);
// the closed forms exactly as printed, for discrepancy reports
WeylSection build_printed(Kind k, const Params &p, int M, int Nmax);
// unique fixed point of the Fedosov iteration under a closed cut (max_m, max_deg)
WeylSection fedosov_iterate(const SectionSpec &s, const Params &p, const Cut &cut);

}  // namespace udf::weyl
