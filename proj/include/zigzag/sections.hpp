#ifndef ZIGZAG_SECTIONS_HPP
#define ZIGZAG_SECTIONS_HPP

#include "zigzag/blocks.hpp"
#include "zigzag/symmod.hpp"

namespace zigzag {

// The per-window statements about the subquotients F1, F2, F3 cut out of
// the reduced lattice by the three composition factors.
enum class SectionProp { F1, F2LeT, F2Gt, F3LeT, F3LtT1, F3GeT1 };

const char* section_prop_name(SectionProp id);

// Builds the section's explicit function f, computes (T - a_p) f, reduces
// into the factor and compares with the closed-form image.
VerificationReport verify_section_prop(SectionProp id, const Instance& inst,
                                       const QuotientBasis& Q);

// Solves T f = h with f supported in the closed ball of the given radius,
// peeling radii from the outside in (each parent star has a unique
// candidate).  Returns the solution if one exists.
std::optional<FpTreeFunction> hecke_preimage_in_ball(const FpTreeFunction& h, int radius);

// Bounded-support corroboration that sum_lam [g0_(1,[lam]), Y] has no Hecke
// preimage among J2-valued functions, plus a planted control.
VerificationReport lemma62_bounded_search(long p, int radius);

}  // namespace zigzag

#endif
