#ifndef ZIGZAG_INSTANCE_HPP
#define ZIGZAG_INSTANCE_HPP

#include <optional>

#include "zigzag/binom.hpp"
#include "zigzag/padic.hpp"

namespace zigzag {

// The seven windows of the tau-line that drive the case analysis.
enum class TauWindow { LtT, EqT, BetweenTAndHalf, EqTHalf, BetweenHalfAndT1, EqT1, GtT1 };

bool in_window(HalfInt tau, long t, TauWindow w);
const char* window_name(TauWindow w);

// A slope-3/2 problem instance: p, r = 3 + n(p-1)p^t and a_p with
// v(a_p) = 3/2, together with the derived constants
//
//   c  = (a_p^2 - (r-2) C(r-1,2) p^3) / (p a_p),   tau  = v(c),
//   c~ = (a_p^2 -       C(r,3)   p^3) / (p a_p),   tau~ = v(c~).
struct Instance {
    long p = 0, r = 0;
    int K = 0;
    ExtScalar ap;
    long t = 0, n = 0;
    ExtScalar c, ctilde;
    HalfInt tau, tautilde;

    long t0() const { return std::min(HalfInt::whole(t), tautilde).num(); }

    static Instance make(long p, long r, const ExtScalar& ap, int K);
    static int min_precision(long p, long r);
};

// Searches small digit patterns of the unit of a_p = pi^3 u until tau lands
// in the window; the witness is reproducible from its digit string.
std::optional<Instance> scan_instance(long p, long r, int K, TauWindow w);

}  // namespace zigzag

#endif
