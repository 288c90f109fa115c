#ifndef ZIGZAG_BINOM_HPP
#define ZIGZAG_BINOM_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

#include "zigzag/padic.hpp"
#include "zigzag/report.hpp"

namespace zigzag {

// Exact C(n,k); k outside [0,n] gives 0 (the usual convention).
mpz_class binom_exact(long n, long k);

// Exact p-adic valuation of C(n,k).
long val_binom(long p, long n, long k);

// Number of carries when adding k and n-k in base p (Kummer).  Used as the
// independent cross-oracle for val_binom.
long kummer_carries(long p, long n, long k);

enum class SumRange {
    Open,        // 0 < j < r
    OneToRm2,    // 1 < j <= r-2
    TwoToRm1,    // 2 < j <= r-1
    TwoLeRm1,    // 2 <= j < r-1
    TwoOpen,     // 2 < j < r
    All,         // 0 <= j <= r
};

struct SumSpec {
    long p = 0;
    long r = 0;
    long cls = 0;     // residue class of j mod (p-1)
    long weight = 0;  // the i in C(j,i)
    SumRange range = SumRange::Open;
};

// Exact sum of C(j,weight)*C(r,j) over j = cls mod (p-1) in the range.
// flags an empty range in *empty when given.
mpz_class residue_class_sum(const SumSpec& spec, bool* empty = nullptr);

// The binomial congruence lemmas: L1 needs r = 3 mod (p-1) and certifies
// p^i C(r,i) = 0 mod p^(t+4) for i >= 4 with t = v(r-3); L2 is the r = 2
// analogue at t+3 (i >= 3), L3 the r = 1 analogue at t+2 (i >= 2).
enum class CongruenceLemma { L1, L2, L3 };
VerificationReport check_congruence_lemma(long p, long r, CongruenceLemma which);

// The residue-class sum propositions; ids follow the module's operation
// list (P4 and P8 about r = 3 + n(p-1)p^t classes 3 and 2, P6 class 1,
// P5 about s = 1 + n(p-1)p^t, P7 about r = 2 + n(p-1)p^t).
enum class SumProp { P4, P5, P6, P7, P8 };
int sum_prop_parts(SumProp prop);
VerificationReport check_sum_proposition(long p, long r, SumProp prop, int part);

struct BetaFamily {
    long p = 0, r = 0, t = 0;
    mpz_class bprime;                 // 2*bprime = 1 mod p^(t+1)
    std::vector<long> indices;        // the j's: j = 2 mod (p-1), 2 <= j < r-1
    std::vector<mpz_class> values;    // beta_j per index
};

// Builds the corrected coefficient family beta_j (beta_2 and beta_2p absorb
// the defect so that the i = 0,1 weighted sums vanish) and verifies its four
// congruence properties exactly.
BetaFamily beta_coefficients(long p, long r, VerificationReport& report);

// r = b + n(p-1)p^t decomposition; returns false unless r > b, r = b mod
// (p-1) and n > 0.
bool exceptional_shape(long p, long r, long b, long* t_out, long* n_out);

}  // namespace zigzag

#endif
