#ifndef ZIGZAG_SYMMOD_HPP
#define ZIGZAG_SYMMOD_HPP

#include <memory>
#include <optional>
#include <vector>

#include "zigzag/fp_linalg.hpp"
#include "zigzag/report.hpp"

namespace zigzag {

// The three composition factors of Q = V_r / (X_(r-1) + V_r**) for
// r = 3 mod (p-1): V_m twisted by det^twist.
struct JHFactor {
    long m = 0;
    long twist = 0;
    friend bool operator==(JHFactor a, JHFactor b) { return a.m == b.m && a.twist == b.twist; }
};

inline JHFactor J1(long p) { return JHFactor{p - 4, 3}; }
inline JHFactor J2(long /*p*/) { return JHFactor{1, 1}; }
inline JHFactor J3(long p) { return JHFactor{p - 2, 2}; }

// Everything needed to reduce mod-p polynomial values into Q and push them
// to the composition factors with the normalized projection maps:
//
//   - to J1 through the head quotient Q / im(V_r*)          (both cases)
//   - to J2 via the socle copy of V_1 x D inside im(V_r*)   (case 2 only)
//   - to J3 as the top of im(V_r*)                          (both cases)
//
// The maps are found by solving the equivariance equations on Q and pinned
// by the generator images X^(r-3)Y^3 -> X^(p-4), theta X^(r-p-1) -> X,
// theta X^(r-p-2)Y -> X^(p-2).
class QuotientBasis {
public:
    // Requires p >= 5, r >= 2p+1, r = 3 mod (p-1).
    QuotientBasis(long p, long r);

    long p() const { return p_; }
    long r() const { return r_; }
    int qcase() const { return case_; }  // 1: r != 3 mod p, 2: r = 3 mod p
    long dim_q() const;
    long dim_m() const;
    bool split_case1() const { return split_; }
    bool nonsplit_case2() const { return nonsplit_; }

    std::vector<fp_t> class_of(const FpPoly& P) const;
    bool class_is_zero(const FpPoly& P) const;

    // Normalized projection to the factor; J2/J3 demand the class to sit in
    // the right subquotient and throw precondition_error otherwise.
    FpPoly project(const FpPoly& P, const JHFactor& target) const;
    std::optional<FpPoly> project_class(const std::vector<fp_t>& cls,
                                        const JHFactor& target) const;

    VerificationReport structure_report() const;

private:
    void build();
    std::vector<std::vector<fp_t>> hom_space(const std::vector<std::vector<fp_t>>& act_src,
                                             long dim_src, long m_target, long twist) const;

    long p_, r_;
    int case_ = 0;
    bool split_ = false;
    bool nonsplit_ = false;
    std::unique_ptr<FpSpan> w_;        // X_(r-1) + V_r**
    std::vector<long> qcols_;          // complement coordinates defining Q
    std::vector<Gamma2> gens_;
    std::vector<std::vector<std::vector<fp_t>>> act_q_;  // per generator, dimQ x dimQ
    std::unique_ptr<FpSpan> m_;        // image of V_r^* in Q coordinates
    std::vector<std::vector<std::vector<fp_t>>> act_m_;  // per generator, dimM x dimM
    std::vector<std::vector<fp_t>> proj1_;  // (p-3) x dimQ
    std::vector<std::vector<fp_t>> proj3_;  // (p-1) x dimM
    std::vector<std::vector<fp_t>> psi_;    // dimQ x 2, case 2 only
};

}  // namespace zigzag

#endif
