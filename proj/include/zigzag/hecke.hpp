#ifndef ZIGZAG_HECKE_HPP
#define ZIGZAG_HECKE_HPP

#include <map>
#include <optional>

#include "zigzag/symmod.hpp"
#include "zigzag/tree.hpp"

namespace zigzag {

enum class HeckeOp { T, Plus, Minus };

// Finitely supported section of the Sym^r local system on the tree:
// a finite map from canonical vertices to polynomial values.
class TreeFunction {
public:
    TreeFunction() = default;
    TreeFunction(long p, long r, int K) : p_(p), r_(r), K_(K) {}
    static TreeFunction term(long p, long r, int K, const TreeVertex& v, EPoly value);

    long p() const { return p_; }
    long r() const { return r_; }
    int K() const { return K_; }
    const std::map<TreeVertex, EPoly>& support() const { return supp_; }
    bool empty() const { return supp_.empty(); }
    int max_radius() const;

    void add_term(const TreeVertex& v, const EPoly& value);
    TreeFunction operator+(const TreeFunction& o) const;
    TreeFunction operator-(const TreeFunction& o) const;
    TreeFunction scaled(const ExtScalar& s) const;
    // Left translation by g; g given as an explicit matrix.
    TreeFunction translated(const Gl2E& g) const;

    std::string str() const;

private:
    long p_ = 0, r_ = 0;
    int K_ = 0;
    std::map<TreeVertex, EPoly> supp_;
};

TreeFunction hecke_apply(const TreeFunction& f, HeckeOp which);

// Minimal coefficient valuation across the support; nullopt when f has no
// nonzero coefficient.  `certified_floor` is the lowest zero-tag floor seen,
// i.e. the pi-power up to which vanishing coefficients are actually known
// to vanish.
struct ValuationScan {
    std::optional<HalfInt> min_val;
    long certified_floor_vpi;
    TreeVertex where;
    long monomial = -1;
};
ValuationScan scan_valuations(const TreeFunction& f);

// Certifies that every coefficient of f - g has valuation >= s.
VerificationReport big_o_compare(const TreeFunction& f, const TreeFunction& g, HalfInt s);

// J-valued mod-p function on the tree.
struct FpTreeFunction {
    long p = 0;
    JHFactor factor;
    std::map<TreeVertex, FpPoly> supp;

    static FpTreeFunction term(long p, JHFactor J, const TreeVertex& v, FpPoly value);
    void add_term(const TreeVertex& v, const FpPoly& value);
    FpTreeFunction operator+(const FpTreeFunction& o) const;
    FpTreeFunction operator-(const FpTreeFunction& o) const;
    FpTreeFunction scaled(fp_t s) const;
    bool empty() const { return supp.empty(); }
    friend bool operator==(const FpTreeFunction& a, const FpTreeFunction& b) {
        return a.p == b.p && a.factor == b.factor && a.supp == b.supp;
    }
    std::string str() const;
};

FpTreeFunction fp_hecke_apply(const FpTreeFunction& f);

// Reduce mod pi and push every value through the normalized projection to
// the factor.  Raises precondition_error on non-integral coefficients or on
// classes outside the factor's subquotient (with the vertex in the message).
FpTreeFunction reduce_and_project(const TreeFunction& f, const JHFactor& target,
                                  const QuotientBasis& Q);

}  // namespace zigzag

#endif
