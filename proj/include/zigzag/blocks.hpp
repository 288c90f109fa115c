#ifndef ZIGZAG_BLOCKS_HPP
#define ZIGZAG_BLOCKS_HPP

#include "zigzag/hecke.hpp"
#include "zigzag/instance.hpp"

namespace zigzag {

// The explicit functions supported on a segment of the tree whose Hecke
// images collapse by telescoping.  ChiPrime, Psi and PsiPrime carry a
// nonzero residue parameter.
enum class BlockId { Chi, ChiPrime, Phi, Xi, XiPrime, XiDblPrime, Psi, PsiPrime };

const char* block_name(BlockId id);
bool block_takes_param(BlockId id);

// The finite sum exactly as the corresponding lemma writes it.
TreeFunction build_block(BlockId id, long param, const Instance& inst);

// What (T - a_p) applied to a block must look like: the principal terms, an
// optional residual of constrained monomial shape and scale, and the O-bound
// on everything else.
struct TelescopeClaim {
    TreeFunction principal;
    std::vector<long> allowed_monomials;   // residual shape (coefficient indices)
    std::optional<HalfInt> residual_scale; // required divisibility on the shape
    HalfInt obound;                        // bound off the shape
};

TelescopeClaim telescope_claim(BlockId id, long param, const Instance& inst);

// Checks the block's hypotheses, computes (T - a_p) block with the Hecke
// engine, strips the claimed principal part and certifies the remainder.
VerificationReport verify_telescoping(BlockId id, long param, const Instance& inst);

}  // namespace zigzag

#endif
