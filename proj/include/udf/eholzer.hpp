#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include <json.hpp>

#include "udf/report.hpp"

namespace udf::eholzer {

using Q = mpq_class;

enum class Which { Rising, Binomial };

// X (X+1) ... (X+n-1)
Q rising(const Q &X, int n);
// X (X-1) ... (X-n+1) / n!, zero for n < 0
Q binom(const Q &X, int n);
Q pochhammer_binom(const Q &X, int n, Which which);

Q parse_rational(const std::string &s);
std::string rational_str(const Q &q);

// the associativity identity: both sides at one point (k2, l2, m2 stand for 2k, 2l, 2m)
struct Sides {
    Q lhs, rhs;
    bool excluded = false;
};
Sides assoc_sides(int n, int p, const Q &k2, const Q &l2, const Q &m2);
VerificationReport assoc_identity_check(int n, const Q &k2, const Q &l2, const Q &m2);

// denominator-cleared sides of Zagier's identity, x eliminated through x + y + z = n - 1
Q zagier_P(int n, const Q &y, const Q &z, const Q &a);
Q zagier_Q(int n, const Q &y, const Q &z, const Q &a);
// the identity itself before clearing denominators
Sides zagier_raw(int n, const Q &y, const Q &z, const Q &a);
// the a = 1/2 specialization and its reduced form
Sides half_product_form(int n, const Q &y, const Q &z);
Sides half_reduced_form(int n, const Q &y, const Q &z);
VerificationReport zagier_check(int n, const Q &a, const Q &y, const Q &z);

Q S0(int n, const Q &A, const Q &B);
Q S(int n, const Q &X);
// S0 = S, the two-step relation (n >= 1) and both recurrences at one point
VerificationReport s_sums_check(int n, const Q &A, const Q &B);

// the triple sum identity with E read as one scalar for all three markers
Sides triple_sides(int l1, int l2, int l3, const Q &E);
VerificationReport triple_identity_check(int l1, int l2, int l3, const Q &E);

// batch runs; grids must have more points per variable than the degree bound
struct GridSpec {
    std::string identity;  // assoc, zagier, half, lemma, two-step, triple
    int n_max = 0;
    std::vector<Q> grid;   // empty: the default grid sized from the degree bound
    std::vector<Q> a_values;
    static GridSpec from_json(const nlohmann::json &j);
};
int degree_bound(const std::string &identity, int n);
std::vector<Q> default_grid(const std::string &identity, int n);
VerificationReport run_grid(const GridSpec &spec, int jobs = 1);

}  // namespace udf::eholzer
