#include "zigzag/symmod.hpp"

#include <deque>
#include <sstream>

namespace zigzag {

namespace {

// Action matrices of the generators on V_m twisted by det^twist; column j is
// the image of X^(m-j) Y^j.
std::vector<std::vector<std::vector<fp_t>>> module_action(long p, long m, long twist,
                                                          const std::vector<Gamma2>& gens) {
    std::vector<std::vector<std::vector<fp_t>>> mats;
    for (const auto& g : gens) {
        fp_t dt = fp_pow(g.det(), twist, p);
        std::vector<std::vector<fp_t>> mat(m + 1, std::vector<fp_t>(m + 1, 0));
        for (long j = 0; j <= m; ++j) {
            FpPoly img = gamma_act(g, FpPoly::monomial(p, m, j));
            for (long i = 0; i <= m; ++i)
                mat[i][j] = static_cast<fp_t>(1UL * img.c[i] * dt % p);
        }
        mats.push_back(std::move(mat));
    }
    return mats;
}

std::vector<fp_t> matvec(const std::vector<std::vector<fp_t>>& A, const std::vector<fp_t>& v,
                         long p) {
    std::vector<fp_t> out(A.size(), 0);
    for (size_t i = 0; i < A.size(); ++i) {
        unsigned long acc = 0;
        for (size_t j = 0; j < v.size(); ++j) acc += 1UL * A[i][j] * v[j] % p;
        out[i] = static_cast<fp_t>(acc % p);
    }
    return out;
}

// Solutions L (dt x ds) of L*S_g = T_g*L for all generators.
std::vector<std::vector<std::vector<fp_t>>> intertwiners(
    const std::vector<std::vector<std::vector<fp_t>>>& src,
    const std::vector<std::vector<std::vector<fp_t>>>& dst, long ds, long dt, long p) {
    long nunk = ds * dt;
    std::vector<std::vector<fp_t>> rows;
    for (size_t gi = 0; gi < src.size(); ++gi) {
        const auto& S = src[gi];
        const auto& T = dst[gi];
        for (long s = 0; s < dt; ++s)
            for (long t = 0; t < ds; ++t) {
                std::vector<fp_t> row(nunk, 0);
                for (long k = 0; k < ds; ++k)
                    row[s * ds + k] = (row[s * ds + k] + S[k][t]) % p;
                for (long k = 0; k < dt; ++k)
                    row[k * ds + t] =
                        static_cast<fp_t>((row[k * ds + t] + 1UL * (p - T[s][k])) % p);
                rows.push_back(std::move(row));
            }
    }
    auto basis = fp_nullspace(rows, nunk, p);
    std::vector<std::vector<std::vector<fp_t>>> out;
    for (const auto& v : basis) {
        std::vector<std::vector<fp_t>> L(dt, std::vector<fp_t>(ds, 0));
        for (long s = 0; s < dt; ++s)
            for (long k = 0; k < ds; ++k) L[s][k] = v[s * ds + k];
        out.push_back(std::move(L));
    }
    return out;
}

bool is_unit_multiple_of_e0(const std::vector<fp_t>& v, fp_t* scale) {
    if (v.empty() || v[0] == 0) return false;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i]) return false;
    *scale = v[0];
    return true;
}

}  // namespace

QuotientBasis::QuotientBasis(long p, long r) : p_(p), r_(r) {
    if (p < 5) throw precondition_error("QuotientBasis: p >= 5 required");
    if (r < 2 * p + 1) throw precondition_error("QuotientBasis: r >= 2p+1 required");
    if ((r - 3) % (p - 1) != 0)
        throw precondition_error("QuotientBasis: r = 3 mod (p-1) required");
    case_ = (r % p == 3 % p) ? 2 : 1;
    build();
}

long QuotientBasis::dim_q() const { return static_cast<long>(qcols_.size()); }
long QuotientBasis::dim_m() const { return m_->dim(); }

void QuotientBasis::build() {
    long p = p_, r = r_;
    long g0 = primitive_root(p);
    gens_ = {Gamma2{p, 1, 1, 0, 1}, Gamma2{p, 0, 1, 1, 0},
             Gamma2{p, static_cast<fp_t>(g0), 0, 0, 1}};

    // W = X_(r-1) + V_r**
    w_ = std::make_unique<FpSpan>(p, r + 1);
    std::deque<FpPoly> queue;
    FpPoly seed = FpPoly::monomial(p, r, 1);  // X^(r-1) Y
    if (w_->insert(seed.c)) queue.push_back(seed);
    while (!queue.empty()) {
        FpPoly v = queue.front();
        queue.pop_front();
        for (const auto& g : gens_) {
            FpPoly img = gamma_act(g, v);
            if (w_->insert(img.c)) queue.push_back(img);
        }
    }
    // theta^2 = X^2p Y^2 - 2 X^(p+1) Y^(p+1) + X^2 Y^2p times monomials
    for (long i = 0; i <= r - 2 * p - 2; ++i) {
        std::vector<fp_t> v(r + 1, 0);
        v[i + 2] = (v[i + 2] + 1) % p;
        v[i + p + 1] = (v[i + p + 1] + 2 * (p - 1)) % p;
        v[i + 2 * p] = (v[i + 2 * p] + 1) % p;
        w_->insert(v);
    }

    std::vector<bool> ispivot(r + 1, false);
    for (long c : w_->pivots()) ispivot[c] = true;
    for (long j = 0; j <= r; ++j)
        if (!ispivot[j]) qcols_.push_back(j);

    long expect = case_ == 2 ? 2 * p - 2 : 2 * p - 4;
    if (dim_q() != expect) {
        std::ostringstream os;
        os << "dim Q = " << dim_q() << ", expected " << expect;
        throw std::runtime_error("QuotientBasis: structural failure: " + os.str());
    }

    // generator action on Q
    long q = dim_q();
    for (const auto& g : gens_) {
        std::vector<std::vector<fp_t>> A(q, std::vector<fp_t>(q, 0));
        for (long t = 0; t < q; ++t) {
            FpPoly mono = FpPoly::monomial(p, r, qcols_[t]);
            auto cls = class_of(gamma_act(g, mono));
            for (long s = 0; s < q; ++s) A[s][t] = cls[s];
        }
        act_q_.push_back(std::move(A));
    }

    // M = image of V_r^* (theta * V_(r-p-1)) inside Q
    m_ = std::make_unique<FpSpan>(p, q);
    FpPoly theta = FpPoly::theta(p);
    for (long i = 0; i <= r - p - 1; ++i) {
        FpPoly v = theta * FpPoly::monomial(p, r - p - 1, i);
        m_->insert(class_of(v));
    }
    long expect_m = case_ == 2 ? p + 1 : p - 1;
    if (dim_m() != expect_m)
        throw std::runtime_error("QuotientBasis: structural failure: dim M = " +
                                 std::to_string(dim_m()));

    for (size_t gi = 0; gi < gens_.size(); ++gi) {
        long dm = dim_m();
        std::vector<std::vector<fp_t>> A(dm, std::vector<fp_t>(dm, 0));
        for (long t = 0; t < dm; ++t) {
            auto y = matvec(act_q_[gi], m_->rows()[t], p);
            auto cs = m_->coords(y);
            if (!cs)
                throw std::runtime_error("QuotientBasis: image of V_r^* is not stable");
            for (long s = 0; s < dm; ++s) A[s][t] = (*cs)[s];
        }
        act_m_.push_back(std::move(A));
    }

    // projection to J1 = V_(p-4) x D^3, killing M
    {
        auto target = module_action(p, p - 4, 3, gens_);
        auto homs = intertwiners(act_q_, target, q, p - 3, p);
        if (homs.size() != 1)
            throw std::runtime_error("QuotientBasis: Hom(Q, J1) has dimension " +
                                     std::to_string(homs.size()));
        proj1_ = homs[0];
        auto img = matvec(proj1_, class_of(FpPoly::monomial(p, r, 3)), p);
        fp_t s = 0;
        if (!is_unit_multiple_of_e0(img, &s))
            throw std::runtime_error(
                "QuotientBasis: X^(r-3)Y^3 does not hit the expected J1 line");
        fp_t fix = fp_inv(s, p);
        for (auto& row : proj1_)
            for (auto& x : row) x = static_cast<fp_t>(1UL * x * fix % p);
    }

    // socle copy of J2 = V_1 x D inside M (case 2), and the J3 projection
    {
        auto j2act = module_action(p, 1, 1, gens_);
        auto homs = intertwiners(j2act, act_q_, 2, q, p);
        if (case_ == 2) {
            if (homs.size() != 1)
                throw std::runtime_error("QuotientBasis: Hom(J2, Q) has dimension " +
                                         std::to_string(homs.size()));
            psi_ = homs[0];
            // normalize: psi(X) = class(theta X^(r-p-1))
            auto anchor = class_of(theta * FpPoly::monomial(p, r - p - 1, 0));
            fp_t num = 0, den = 0;
            for (long i = 0; i < q; ++i) {
                if (psi_[i][0]) den = psi_[i][0];
                if (anchor[i]) num = anchor[i];
                if (den && num) break;
            }
            if (!den) throw std::runtime_error("QuotientBasis: degenerate J2 embedding");
            long idx = 0;
            while (psi_[idx][0] == 0) ++idx;
            fp_t s = static_cast<fp_t>(1UL * anchor[idx] * fp_inv(psi_[idx][0], p) % p);
            for (auto& row : psi_)
                for (auto& x : row) x = static_cast<fp_t>(1UL * x * s % p);
            for (long i = 0; i < q; ++i)
                if (psi_[i][0] != anchor[i])
                    throw std::runtime_error(
                        "QuotientBasis: theta X^(r-p-1) is not the socle anchor");
        } else if (!homs.empty()) {
            throw std::runtime_error("QuotientBasis: unexpected J2 constituent in case 1");
        }
    }
    {
        auto target = module_action(p, p - 2, 2, gens_);
        auto homs = intertwiners(act_m_, target, dim_m(), p - 1, p);
        if (homs.size() != 1)
            throw std::runtime_error("QuotientBasis: Hom(M, J3) has dimension " +
                                     std::to_string(homs.size()));
        proj3_ = homs[0];
        FpPoly theta2 = FpPoly::theta(p);
        auto anchor_cls = class_of(theta2 * FpPoly::monomial(p, r - p - 1, 1));
        auto cs = m_->coords(anchor_cls);
        if (!cs) throw std::runtime_error("QuotientBasis: theta X^(r-p-2)Y not in im V_r^*");
        auto img = matvec(proj3_, *cs, p);
        fp_t s = 0;
        if (!is_unit_multiple_of_e0(img, &s))
            throw std::runtime_error(
                "QuotientBasis: theta X^(r-p-2)Y does not hit the expected J3 line");
        fp_t fix = fp_inv(s, p);
        for (auto& row : proj3_)
            for (auto& x : row) x = static_cast<fp_t>(1UL * x * fix % p);
    }

    // splitness of Q in case 1 / non-splitness of im V_r^* in case 2
    if (case_ == 1) {
        auto j1act = module_action(p, p - 4, 3, gens_);
        auto homs = intertwiners(j1act, act_q_, p - 3, q, p);
        split_ = false;
        for (const auto& L : homs) {
            // composite with proj1 is a scalar; nonzero scalar gives a section
            for (long t = 0; t < p - 3 && !split_; ++t) {
                std::vector<fp_t> col(q);
                for (long i = 0; i < q; ++i) col[i] = L[i][t];
                auto back = matvec(proj1_, col, p);
                for (fp_t x : back)
                    if (x) split_ = true;
            }
        }
    } else {
        auto j3act = module_action(p, p - 2, 2, gens_);
        auto homs = intertwiners(j3act, act_m_, p - 1, dim_m(), p);
        nonsplit_ = homs.empty();
    }
}

std::vector<fp_t> QuotientBasis::class_of(const FpPoly& P) const {
    if (P.p != p_ || P.r != r_) throw precondition_error("class_of: wrong ambient");
    auto red = w_->reduce(P.c);
    std::vector<fp_t> cls(qcols_.size());
    for (size_t i = 0; i < qcols_.size(); ++i) cls[i] = red[qcols_[i]];
    return cls;
}

bool QuotientBasis::class_is_zero(const FpPoly& P) const {
    for (fp_t x : class_of(P))
        if (x) return false;
    return true;
}

std::optional<FpPoly> QuotientBasis::project_class(const std::vector<fp_t>& cls,
                                                   const JHFactor& target) const {
    long p = p_;
    if (target == J1(p)) {
        auto img = matvec(proj1_, cls, p);
        FpPoly out = FpPoly::zero(p, p - 4);
        out.c = img;
        return out;
    }
    if (target == J2(p)) {
        if (case_ != 2)
            throw precondition_error("projection to J2 undefined when r != 3 mod p");
        std::vector<std::vector<fp_t>> rows(cls.size(), std::vector<fp_t>(2));
        for (size_t i = 0; i < cls.size(); ++i) {
            rows[i][0] = psi_[i][0];
            rows[i][1] = psi_[i][1];
        }
        auto sol = fp_solve(rows, cls, 2, p);
        if (!sol) return std::nullopt;
        FpPoly out = FpPoly::zero(p, 1);
        out.c = *sol;
        return out;
    }
    if (target == J3(p)) {
        auto cs = m_->coords(cls);
        if (!cs) return std::nullopt;
        auto img = matvec(proj3_, *cs, p);
        FpPoly out = FpPoly::zero(p, p - 2);
        out.c = img;
        return out;
    }
    throw precondition_error("project: unknown factor");
}

FpPoly QuotientBasis::project(const FpPoly& P, const JHFactor& target) const {
    auto out = project_class(class_of(P), target);
    if (!out)
        throw precondition_error("project: class does not lie in the required subquotient");
    return *out;
}

VerificationReport QuotientBasis::structure_report() const {
    long p = p_, r = r_;
    VerificationReport rep;
    rep.title = "q-structure";
    rep.param("p=" + std::to_string(p));
    rep.param("r=" + std::to_string(r));
    rep.param("case=" + std::to_string(case_));
    rep.param("dimQ=" + std::to_string(dim_q()));
    rep.param(case_ == 1 ? "JH={J1,J3}" : "JH={J1,J2,J3}");

    long expect = case_ == 2 ? 2 * p - 2 : 2 * p - 4;
    rep.add("dim Q", dim_q() == expect);
    rep.add("dim im V_r^*", dim_m() == (case_ == 2 ? p + 1 : p - 1));
    if (case_ == 1)
        rep.add("sequence splits", split_);
    else
        rep.add("V_r^*/V_r^** does not split", nonsplit_);

    FpPoly theta = FpPoly::theta(p);
    // generator images
    rep.add("X^(r-3)Y^3 -> X^(p-4) in J1",
            project(FpPoly::monomial(p, r, 3), J1(p)) == FpPoly::monomial(p, p - 4, 0));
    bool low_die = true;
    for (long i = 0; i <= 2; ++i)
        low_die = low_die && project(FpPoly::monomial(p, r, i), J1(p)).is_zero();
    rep.add("X^(r-i)Y^i -> 0 in J1, i <= 2", low_die);
    if (case_ == 2) {
        rep.add("theta X^(r-p-1) -> X in J2",
                project(theta * FpPoly::monomial(p, r - p - 1, 0), J2(p)) ==
                    FpPoly::monomial(p, 1, 0));
        rep.add("theta Y^(r-p-1) -> Y in J2",
                project(theta * FpPoly::monomial(p, r - p - 1, r - p - 1), J2(p)) ==
                    FpPoly::monomial(p, 1, 1));
    }
    rep.add("theta X^(r-p-1) -> 0 in J3",
            project(theta * FpPoly::monomial(p, r - p - 1, 0), J3(p)).is_zero());
    rep.add("theta X^(r-p-2)Y -> X^(p-2) in J3",
            project(theta * FpPoly::monomial(p, r - p - 1, 1), J3(p)) ==
                FpPoly::monomial(p, p - 2, 0));
    return rep;
}

}  // namespace zigzag
