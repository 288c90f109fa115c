#ifndef ZIGZAG_SCALAR_POLY_HPP
#define ZIGZAG_SCALAR_POLY_HPP

#include <vector>

#include "zigzag/fp_linalg.hpp"
#include "zigzag/padic.hpp"

namespace zigzag {

// Cached Teichmueller representative [lam] at working precision.
const ExtScalar& eteich(long p, int K, long lam);
// Cached exact binomial C(n,k) embedded at working precision.
const ExtScalar& ebinom(long p, int K, long n, long k);

// Homogeneous degree-r polynomial over E with truncated coefficients;
// c[j] multiplies X^(r-j) Y^j.
struct EPoly {
    long p = 0;
    long r = 0;
    int K = 0;
    std::vector<ExtScalar> c;

    static EPoly zero(long p, long r, int K);
    static EPoly monomial(long p, long r, int K, long j, const ExtScalar& coeff);

    bool is_zero() const;         // all coefficients vanish within precision
    bool is_exact_zero() const;   // all coefficients are exact zeros
    EPoly operator+(const EPoly& o) const;
    EPoly operator-(const EPoly& o) const;
    EPoly scaled(const ExtScalar& s) const;

    // Substitutions entering the Hecke formula and the KZ action.
    EPoly sub_hecke_plus(const ExtScalar& neg_teich) const;  // P(X, yX + pY)
    EPoly sub_px() const;                                    // P(pX, Y)
    EPoly sub_upper(const ExtScalar& y) const;               // P(X, yX + Y)
    EPoly sub_lower(const ExtScalar& x) const;               // P(X + xY, Y)
    EPoly sub_diag(const ExtScalar& u, const ExtScalar& w) const;  // P(uX, wY)
    EPoly sub_swap() const;                                  // P(Y, X)

    // Reduction mod pi; requires decidably integral coefficients.
    FpPoly residue() const;

    std::string str() const;
};

}  // namespace zigzag

#endif
