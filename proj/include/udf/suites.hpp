#pragma once

#include "udf/report.hpp"

// invariant suites shared by the unit tests and the command-line verifier
namespace udf::suites {

// coassociativity and both antipode axioms on monomials up to `degree`, algebra-map properties on products
VerificationReport hopf(int degree);
// action composition, Leibniz compatibility with the coproduct, delta_2' cocycle, faithfulness
VerificationReport jet(int degree);
// recursion = closed form = Fedosov iteration for m+n <= degree; D f^ = 0, D^2 = 0, the delta homotopy formula
VerificationReport fedosov(int degree);

}  // namespace udf::suites
