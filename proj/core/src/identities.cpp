#include "onofri/identities.hpp"

#include "onofri/numeric.hpp"

#include <ostream>
#include <stdexcept>

namespace onofri {

namespace {

void require_pair(int n, int k) {
    if (n < 2) throw std::invalid_argument("identities: n must be >= 2");
    if (k < 0 || k > n - 2) throw std::invalid_argument("identities: k must satisfy 0 <= k <= n-2");
}

}  // namespace

Rational beta_integral_exact(int n, int k) {
    require_pair(n, k);
    return Rational(factorial(k) * factorial(n - k - 2), factorial(n - 1));
}

IdentityRecord induction_identity(int n, int k) {
    require_pair(n, k);
    const Rational exact = Rational(binomial_coefficient(n - 1, k), 1) * beta_integral_exact(n, k);
    const Rational claimed(BigInt(1), BigInt(n - k - 1));
    return IdentityRecord{n, k, exact, claimed, exact == claimed};
}

IdentityRecord harmonic_closure(int n) {
    if (n < 2) throw std::invalid_argument("harmonic_closure: n must be >= 2");
    Rational sum;
    for (int k = 0; k <= n - 2; ++k) sum += Rational(BigInt(1), BigInt(n - k - 1));
    const Rational claimed = harmonic_number(n - 1);
    return IdentityRecord{n, -1, sum, claimed, sum == claimed};
}

double remainder_bound(int n, int k, double R) {
    require_pair(n, k);
    if (!(R > 1.0)) throw std::invalid_argument("remainder_bound: R must be > 1");
    return real_pow(R, k + 1.0 - n) / (n - k - 1);
}

void write_identity_csv(std::ostream& out, int n_max) {
    out << "n,k,exact_num,exact_den,claimed_num,claimed_den,match\n";
    for (int n = 2; n <= n_max; ++n) {
        for (int k = 0; k <= n - 2; ++k) {
            const IdentityRecord rec = induction_identity(n, k);
            out << n << "," << k << "," << rec.exact_value.num().str() << ","
                << rec.exact_value.den().str() << "," << rec.claimed.num().str() << ","
                << rec.claimed.den().str() << "," << (rec.match ? 1 : 0) << "\n";
        }
        const IdentityRecord h = harmonic_closure(n);
        out << n << ",harmonic," << h.exact_value.num().str() << "," << h.exact_value.den().str()
            << "," << h.claimed.num().str() << "," << h.claimed.den().str() << ","
            << (h.match ? 1 : 0) << "\n";
    }
}

}  // namespace onofri
