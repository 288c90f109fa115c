#ifndef ZIGZAG_PADIC_HPP
#define ZIGZAG_PADIC_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace zigzag {

// Raised when a result cannot be certified at the working precision.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation's preconditions are violated.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Exact half-integer, used for valuations in E = Q_p(pi), pi^2 = p.
// Stored as twice the value so that comparisons stay integral.
struct HalfInt {
    long twice = 0;

    static HalfInt of_vpi(long vpi) { return HalfInt{vpi}; }
    static HalfInt whole(long n) { return HalfInt{2 * n}; }
    static HalfInt half(long n) { return HalfInt{n}; }

    bool is_integer() const { return twice % 2 == 0; }
    long num() const { return twice % 2 == 0 ? twice / 2 : twice; }
    long den() const { return twice % 2 == 0 ? 1 : 2; }
    double approx() const { return 0.5 * static_cast<double>(twice); }

    friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
    friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
    friend bool operator<=(HalfInt a, HalfInt b) { return a.twice <= b.twice; }
    friend bool operator>(HalfInt a, HalfInt b) { return a.twice > b.twice; }
    friend bool operator>=(HalfInt a, HalfInt b) { return a.twice >= b.twice; }
    friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }

    std::string str() const;
};

// An element of E = Q_p(pi) with pi^2 = p, held in truncated canonical form
//
//     pi^vpi * (d0 + d1*pi + d2*pi^2 + ...),   0 <= di < p,  d0 != 0.
//
// The digit vector carries only the reliable digits: the value is known
// modulo pi^(vpi + ndigits) and nothing more.  Zero is tagged separately;
// an inexact zero remembers the pi-power below which all digits vanished,
// an exact zero has infinite floor.  Elements of Z_p are exactly the values
// with even vpi and vanishing odd-position digits.
class ExtScalar {
public:
    ExtScalar() : p_(0), vpi_(0), zero_(true), exact_(true) {}

    static ExtScalar zero(long p) { return ExtScalar(p); }
    static ExtScalar zero_mod(long p, long floor_vpi);
    static ExtScalar one(long p, int nd) { return from_long(p, 1, nd); }
    static ExtScalar pi(long p, int nd);
    static ExtScalar from_long(long p, long value, int nd);
    static ExtScalar from_mpz(long p, const mpz_class& value, int nd);
    // num/den with p not dividing den.
    static ExtScalar from_rational(long p, const mpz_class& num, const mpz_class& den, int nd);
    // Teichmueller representative of lam mod p: the (p-1)-st root of unity
    // congruent to lam, with teichmuller(0) = 0.
    static ExtScalar teichmuller(long p, long lam, int nd);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && exact_; }
    // pi-valuation of a nonzero value.
    long vpi() const;
    // The value is known modulo pi^floor_vpi(); infinite (LONG_MAX) for exact 0.
    long floor_vpi() const;
    int ndigits() const { return static_cast<int>(digits_.size()); }
    int digit(size_t i) const { return i < digits_.size() ? digits_[i] : 0; }

    // Exact valuation as a half-integer; nullopt for zero of either kind.
    std::optional<HalfInt> valuation() const;

    ExtScalar operator-() const;
    ExtScalar operator+(const ExtScalar& o) const;
    ExtScalar operator-(const ExtScalar& o) const;
    ExtScalar operator*(const ExtScalar& o) const;
    ExtScalar& operator+=(const ExtScalar& o) { *this = *this + o; return *this; }
    ExtScalar& operator-=(const ExtScalar& o) { *this = *this - o; return *this; }
    ExtScalar& operator*=(const ExtScalar& o) { *this = *this * o; return *this; }

    ExtScalar inv() const;
    ExtScalar div(const ExtScalar& o) const { return *this * o.inv(); }
    ExtScalar pow_u(unsigned long e) const;
    // Multiplication by p^e / pi^e: pure valuation shifts, no digit work.
    ExtScalar mul_p_pow(long e) const { return mul_pi_pow(2 * e); }
    ExtScalar mul_pi_pow(long e) const;

    bool is_integral() const;
    // Image in O_E/pi = F_p; requires the value to be decidably integral.
    long residue() const;

    // Identical canonical content (same digits, same floor bookkeeping).
    bool same_scalar(const ExtScalar& o) const;
    // a == b modulo pi^floor for the common floor; raises precision_error
    // if the common floor is below min_floor_vpi.
    bool congruent(const ExtScalar& o, long min_floor_vpi) const;

    std::string str() const;
    // Accepts the CLI scalar syntax: `pi^e*(d0 + d1*pi + ...)`, `p` as an
    // alias for pi^2, and plain (signed) integers.
    static ExtScalar parse(long p, std::string_view text, int nd);

private:
    explicit ExtScalar(long p) : p_(p), vpi_(0), zero_(true), exact_(true) {}

    void normalize(std::vector<int32_t>&& buf, long base, long floor);

    long p_;
    long vpi_;    // valuation for nonzero; known-zero floor for inexact zero
    bool zero_;
    bool exact_;  // meaningful only when zero_
    std::vector<int32_t> digits_;
};

ExtScalar operator*(long a, const ExtScalar& b);

}  // namespace zigzag

#endif
