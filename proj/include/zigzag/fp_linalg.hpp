#ifndef ZIGZAG_FP_LINALG_HPP
#define ZIGZAG_FP_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "zigzag/padic.hpp"

namespace zigzag {

using fp_t = uint32_t;

inline fp_t fp_norm(long x, long p) {
    long r = x % p;
    return static_cast<fp_t>(r < 0 ? r + p : r);
}
fp_t fp_inv(fp_t a, long p);
fp_t fp_pow(fp_t a, long e, long p);
long primitive_root(long p);

// Pascal triangle mod p, cached per prime; row n holds C(n,k) for k <= n.
const std::vector<std::vector<fp_t>>& pascal_fp(long p, long upto);

// Homogeneous polynomial of degree r in X, Y over F_p; c[j] is the
// coefficient of X^(r-j) Y^j.
struct FpPoly {
    long p = 0;
    long r = 0;
    std::vector<fp_t> c;

    static FpPoly zero(long p, long r) { return FpPoly{p, r, std::vector<fp_t>(r + 1, 0)}; }
    static FpPoly monomial(long p, long r, long j, fp_t coeff = 1);
    static FpPoly theta(long p);  // X^p Y - X Y^p, degree p+1

    bool is_zero() const {
        for (fp_t v : c)
            if (v) return false;
        return true;
    }
    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly scaled(fp_t s) const;
    FpPoly operator*(const FpPoly& o) const;  // degrees add
    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p == b.p && a.r == b.r && a.c == b.c;
    }
};

// Element of GL_2(F_p).
struct Gamma2 {
    long p = 0;
    fp_t a = 1, b = 0, c = 0, d = 1;
    fp_t det() const { return fp_norm(static_cast<long>(a) * d - static_cast<long>(b) * c, p); }
};

// The substitution P(aX+cY, bX+dY), expanded exactly.
FpPoly gamma_act(const Gamma2& g, const FpPoly& P);

// Quotient by theta = X^p Y - X Y^p when it divides P.
std::optional<FpPoly> theta_factor(const FpPoly& P);

// Row space kept in reduced echelon form over F_p.
class FpSpan {
public:
    FpSpan(long p, long width) : p_(p), width_(width) {}

    // Returns true when v enlarges the span.
    bool insert(std::vector<fp_t> v);
    // v reduced against the span (residual supported off the pivot columns).
    std::vector<fp_t> reduce(std::vector<fp_t> v) const;
    bool contains(const std::vector<fp_t>& v) const;
    // Coordinates of v in terms of the echelon rows; nullopt if outside.
    std::optional<std::vector<fp_t>> coords(const std::vector<fp_t>& v) const;

    long dim() const { return static_cast<long>(rows_.size()); }
    long width() const { return width_; }
    const std::vector<std::vector<fp_t>>& rows() const { return rows_; }
    const std::vector<long>& pivots() const { return pivots_; }

private:
    long p_;
    long width_;
    std::vector<std::vector<fp_t>> rows_;
    std::vector<long> pivots_;
};

// Nullspace basis of the m x n system rows*x = 0.
std::vector<std::vector<fp_t>> fp_nullspace(const std::vector<std::vector<fp_t>>& rows, long n,
                                            long p);
// One solution of rows*x = b, if any.
std::optional<std::vector<fp_t>> fp_solve(const std::vector<std::vector<fp_t>>& rows,
                                          const std::vector<fp_t>& b, long n, long p);

}  // namespace zigzag

#endif
