#pragma once

#include "onofri/rational.hpp"

#include <iosfwd>

namespace onofri {

struct IdentityRecord {
    int n;
    int k;
    Rational exact_value;
    Rational claimed;
    bool match;  // exact_value == claimed
};

// Exact value of int_0^inf t^k / (1+t)^n dt = k! (n-k-2)! / (n-1)!.
// Requires n >= 2 and 0 <= k <= n-2.
Rational beta_integral_exact(int n, int k);

// C(n-1,k) * beta_integral_exact(n,k) against 1/(n-k-1), in exact arithmetic.
IdentityRecord induction_identity(int n, int k);

// sum_{k=0}^{n-2} 1/(n-k-1) against the harmonic number H_{n-1}.
IdentityRecord harmonic_closure(int n);

// Upper bound R^{k+1-n}/(n-k-1) on the tail int_R^inf t^k/(1+t)^n dt, R > 1.
double remainder_bound(int n, int k, double R);

// CSV table: n,k,exact_num,exact_den,claimed_num,claimed_den,match for every
// admissible pair with n <= n_max, followed by one harmonic row per n.
void write_identity_csv(std::ostream& out, int n_max);

}  // namespace onofri
