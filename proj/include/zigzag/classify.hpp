#ifndef ZIGZAG_CLASSIFY_HPP
#define ZIGZAG_CLASSIFY_HPP

#include <array>
#include <vector>

#include "zigzag/instance.hpp"
#include "zigzag/fp_linalg.hpp"
#include "zigzag/report.hpp"

namespace zigzag {

enum class Slope { Half, One, ThreeHalves };
long slope_b(Slope s);

// Smooth character of Q_p^x: an unramified part (value on p) times a power
// of the cyclotomic character mod p.
struct Eta {
    fp_t unram = 1;
    long omega = 0;
    friend bool operator==(const Eta& a, const Eta& b);
};

// A scalar in F_p-bar, up to the lam <-> 1/lam symmetry where noted:
// zero, a unit of F_p, or the root pair of X^2 - trace X + 1 when that
// polynomial is irreducible over F_p.
struct LambdaDesc {
    enum class Kind { Zero, InFp, RootPair } kind = Kind::Zero;
    fp_t value = 0;  // InFp
    fp_t trace = 0;  // RootPair

    static LambdaDesc zero() { return LambdaDesc{}; }
    static LambdaDesc unit(fp_t v);
    // lam + 1/lam = trace with lam lam^-1 = 1; lists both roots when the
    // quadratic splits over F_p.
    static LambdaDesc from_trace(fp_t trace, long p, bool* split = nullptr,
                                 std::array<fp_t, 2>* roots = nullptr);
    LambdaDesc inverse(long p) const;
    std::string str(long p) const;
    friend bool operator==(const LambdaDesc& a, const LambdaDesc& b);
};

// Semisimple two-dimensional mod-p representation of the local Galois
// group, either induced from the quadratic unramified extension or a sum
// of two characters mu_lam omega^w1 (+) mu_(1/lam) omega^w2, twisted by eta.
struct GaloisDesc {
    long p = 0;
    bool irreducible = true;
    long ind_exp = 0;  // irreducible: ind(omega_2^ind_exp) x eta
    LambdaDesc lam;    // reducible: attached to the w1 summand
    long w1 = 0, w2 = 0;
    Eta eta;

    // the Frobenius orbit {e, pe} minimum, with eta's omega part folded in
    long canonical_ind_exp() const;
    std::string str() const;
};

bool same_galois(const GaloisDesc& a, const GaloisDesc& b);

// pi(r, lam, eta): the smooth-side parameter triple.
struct SmoothDesc {
    long p = 0;
    long r = 0;
    LambdaDesc lam;
    Eta eta;
    bool corner = false;  // (r, lam) in {(0, +-1), (p-1, +-1)}
    std::string str() const;
};

// The four invariants driving the slope-3/2 case split, plus the window.
struct InvariantBundle {
    long p = 0, r = 0;
    long b = 3, t = 0, n = 0;
    ExtScalar c, ctilde;
    HalfInt tau, tautilde;
    TauWindow window;
};

InvariantBundle compute_invariants(long p, long r, const ExtScalar& ap);

// The classifier: exceptional-weight reductions for slopes 1/2, 1, 3/2.
GaloisDesc classify(long p, long r, const ExtScalar& ap, Slope slope);

// Breuil's semisimple correspondence, Galois to smooth; one supersingular
// term for irreducible input, a principal-series pair otherwise.
std::vector<SmoothDesc> llc_forward(const GaloisDesc& g);
// Unique preimage of a forward image; rejects multisets not in the image.
GaloisDesc llc_inverse(const std::vector<SmoothDesc>& reps);

// Presentation of a surviving factor as a quotient of ind J_i by a
// polynomial in the Hecke operator.
enum class FactorPres { Zero, SupersingularByLLC, TMinusLam1Inv, TMinusLam1, T, Quadratic };

struct NinepartRow {
    FactorPres f1 = FactorPres::Zero;
    FactorPres f2 = FactorPres::Zero;
    FactorPres f3 = FactorPres::Zero;
    bool f3_vanishing_unproven = false;  // the window t < tau < t+1/2
};

NinepartRow ninepart_expectation(TauWindow w);

// Checks that the classifier branch composed with the forward map agrees
// with the local factors assembled from the surviving F_i.
VerificationReport classifier_consistency(const Instance& inst);

}  // namespace zigzag

#endif
