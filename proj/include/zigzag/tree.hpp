#ifndef ZIGZAG_TREE_HPP
#define ZIGZAG_TREE_HPP

#include <string>
#include <vector>

#include "zigzag/scalar_poly.hpp"

namespace zigzag {

// Canonical vertex representative on the Bruhat-Tits tree for GL_2(Q_p):
// side 0 is (p^m, lam; 0, 1), side 1 is (1, 0; p*lam, p^(m+1)), where lam
// is the Teichmueller word [w0] + [w1] p + ... + [w_(m-1)] p^(m-1).
struct TreeVertex {
    int side = 0;
    int depth = 0;
    std::vector<int> word;

    static TreeVertex origin() { return TreeVertex{0, 0, {}}; }
    static TreeVertex alpha() { return TreeVertex{1, 0, {}}; }
    static TreeVertex g0(std::vector<int> w) {
        return TreeVertex{0, static_cast<int>(w.size()), std::move(w)};
    }
    static TreeVertex g1(std::vector<int> w) {
        return TreeVertex{1, static_cast<int>(w.size()), std::move(w)};
    }

    // distance from the origin vertex
    int radius() const { return side == 0 ? depth : depth + 1; }

    friend bool operator==(const TreeVertex& a, const TreeVertex& b) {
        return a.side == b.side && a.depth == b.depth && a.word == b.word;
    }
    friend bool operator<(const TreeVertex& a, const TreeVertex& b) {
        if (a.side != b.side) return a.side < b.side;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.word < b.word;
    }
    std::string str() const;
};

struct Gl2E {
    ExtScalar a, b, c, d;

    Gl2E() = default;
    Gl2E(ExtScalar a_, ExtScalar b_, ExtScalar c_, ExtScalar d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Gl2E identity(long p, int K);
    Gl2E operator*(const Gl2E& o) const;
    ExtScalar det() const { return a * d - b * c; }
    bool is_identity() const;
};

// The Teichmueller word as an exact scalar.
ExtScalar teich_word_value(long p, int K, const std::vector<int>& word);
Gl2E vertex_matrix(long p, int K, const TreeVertex& v);

struct CosetDecomp {
    TreeVertex vertex;
    Gl2E k;      // in GL_2(Z_p); g = p^zexp * rep * k
    long zexp;   // power of p stripped into the center
};

// Writes g = rep * h with h in KZ and rep the canonical vertex matrix.
// Raises precision_error when an entry valuation cannot be decided.
CosetDecomp coset_normalize(const Gl2E& g);

// KZ action on values: v -> k.v using the usual substitution, with the
// central p acting trivially.
EPoly kz_act(const Gl2E& k, const EPoly& v);

// Same action reduced mod pi: k must be in GL_2(Z_p).
Gamma2 reduce_mod_pi(const Gl2E& k);

}  // namespace zigzag

#endif
