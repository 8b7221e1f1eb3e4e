#pragma once

// Homotopy operators on the arity-2 part of the (w,w) blocks.
//
//   phi(U) = sum_l d_l ^^ (x_l U)                               (1-chains -> 2-chains)
//   Phi(A_1 ^^ A_2) = sum_l d_l ^^ A_1 ^^ (x_l A_2)   if TR      (2-chains -> 3-chains)
//                   = sum_l d_l ^^ (x_l A_1) ^^ A_2   if TL
//   Psi = d Phi + phi d
//
// Phi is applied to canonical words, so A_1 is the factor with the smaller |alpha| (and
// the smaller |beta| on ties). A word of C_2^{(w,w)} then sits in the stratum
// (a_1, b_1) = (|alpha_1|, |beta_1|) with 1 <= a_1 <= 1 + w/2. Psi acts on each stratum as
// a scalar modulo lower strata:
//   TR (a_1 + b_1 <= 2 + w): Psi = (n + |B_2|) + terms in (a_1, b_1 - 1) and (1, 0)
//   TL (a_1 + b_1 >  2 + w): Psi = (n + |B_1|) + terms in (a_1, b_1 + 1) and (1, 0)
// and Psi = n + w + 1 exactly on the stratum (1, 0). Peeling off one scalar at a time
// yields nonzero c_i with prod (Psi + c_i) U = 0; on a cycle Psi = d Phi, which turns the
// annihilator into an explicit primitive.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schouten/basis.hpp"
#include "schouten/boundary.hpp"
#include "schouten/chain.hpp"
#include "schouten/errors.hpp"
#include "schouten/multivector.hpp"
#include "schouten/polynomial.hpp"

namespace schouten {

/// Raised by certify_exact for an input with nonzero boundary; carries that boundary.
class NotACycle : public std::invalid_argument {
public:
    NotACycle(const std::string& what, Chain boundary) : std::invalid_argument(what), boundary_(std::move(boundary)) {}
    const Chain& boundary() const { return boundary_; }

private:
    Chain boundary_;
};

enum class PairType { TR, TL };

inline const char* to_string(PairType t) { return t == PairType::TR ? "TR" : "TL"; }

namespace detail {

inline void require_arity(const WedgeWord& w, std::size_t arity, const char* who)
{
    if (w.arity() != arity)
        throw std::invalid_argument(std::string(who) + " expects words of arity " + std::to_string(arity) + ", got "
                                    + std::to_string(w.arity()));
}

inline Generator times_coordinate(Generator g, int l)
{
    g.beta.bump(l - 1, 1);
    return g;
}

inline Generator constant_field(int n, int l) { return Generator{MultiIndex(n), DirectionSet::from_mask(DirectionSet::bit(l))}; }

}  // namespace detail

/// TR iff |A_1| + |B_1| < |A_2| + |B_2|, or the sums tie and |A_1| <= |A_2|.
inline PairType classify_type(const WedgeWord& word)
{
    detail::require_arity(word, 2, "classify_type");
    const auto& a = word[0];
    const auto& b = word[1];
    const int s1 = a.alpha.size() + a.beta.degree(), s2 = b.alpha.size() + b.beta.degree();
    if (s1 < s2 || (s1 == s2 && a.alpha.size() <= b.alpha.size()))
        return PairType::TR;
    return PairType::TL;
}

/// phi(U) = sum_l d_l ^^ (x_l U) on 1-chains.
inline Chain phi_op(const Chain& u)
{
    Chain out;
    for (const auto& [w, c] : u.terms()) {
        detail::require_arity(w, 1, "phi_op");
        const int n = w.dim();
        for (int l = 1; l <= n; ++l)
            out.add_raw({detail::constant_field(n, l), detail::times_coordinate(w[0], l)}, c);
    }
    return out;
}

/// Phi on 2-chains, per canonical word by its TR/TL type, extended linearly.
inline Chain capital_phi(const Chain& u)
{
    Chain out;
    for (const auto& [w, c] : u.terms()) {
        detail::require_arity(w, 2, "capital_phi");
        const int n = w.dim();
        const bool tr = classify_type(w) == PairType::TR;
        for (int l = 1; l <= n; ++l) {
            if (tr)
                out.add_raw({detail::constant_field(n, l), w[0], detail::times_coordinate(w[1], l)}, c);
            else
                out.add_raw({detail::constant_field(n, l), detail::times_coordinate(w[0], l), w[1]}, c);
        }
    }
    return out;
}

/// Psi = d Phi + phi d on 2-chains.
inline Chain psi(const Chain& u) { return boundary(capital_phi(u)) + phi_op(boundary(u)); }

/// Representative (a_1, b_1) of a canonical arity-2 word.
struct PairStratum {
    int a1 = 0;
    int b1 = 0;
    friend auto operator<=>(const PairStratum&, const PairStratum&) = default;
};

inline PairStratum stratum_of(const WedgeWord& word)
{
    detail::require_arity(word, 2, "stratum_of");
    return {word[0].alpha.size(), word[0].beta.degree()};
}

/// Bookkeeping of the strata of C_2^{(w,w)}.
class Stratification {
public:
    explicit Stratification(int w) : w_(w)
    {
        if (w < 0)
            throw std::invalid_argument("first weight must be >= 0");
    }

    int w() const { return w_; }
    int omega() const { return w_ / 2; }
    int omega_e() const { return (w_ % 2 == 1) ? omega() + 1 : omega(); }

    /// Representative rule: 1 <= a_1 <= 1 + w/2, 0 <= b_1 <= 2 + w, and b_1 <= (2 + w)/2 on
    /// the self-mirrored column 2 a_1 = 2 + w.
    bool is_representative(PairStratum s) const
    {
        if (s.a1 < 1 || 2 * s.a1 > 2 + w_ || s.b1 < 0 || s.b1 > 2 + w_)
            return false;
        return 2 * s.a1 != 2 + w_ || 2 * s.b1 <= 2 + w_;
    }

    std::vector<PairStratum> strata() const
    {
        std::vector<PairStratum> out;
        for (int a = 1; 2 * a <= 2 + w_; ++a)
            for (int b = 0; b <= 2 + w_; ++b)
                if (is_representative({a, b}))
                    out.push_back({a, b});
        return out;
    }

    bool is_tl(PairStratum s) const { return s.a1 + s.b1 > 2 + w_; }

    /// l with a_1 + b_1 = l + 2 + w (TL strata have l >= 1).
    int tl_diagonal(PairStratum s) const { return s.a1 + s.b1 - 2 - w_; }

    /// p = a_1 + b_1 (TR strata have p <= 2 + w).
    int tr_diagonal(PairStratum s) const { return s.a1 + s.b1; }

    /// TR strata above the rectangle b_1 <= 1 + Omega_e.
    bool in_roof(PairStratum s) const { return !is_tl(s) && s.b1 > 1 + omega_e(); }
    bool in_rectangle(PairStratum s) const { return !is_tl(s) && s.b1 <= 1 + omega_e(); }

private:
    int w_;
};

/// Terms of c whose words lie in stratum s.
inline Chain project_stratum(const Chain& c, PairStratum s)
{
    Chain out;
    for (const auto& [w, v] : c.terms())
        if (stratum_of(w) == s)
            out.add(w, v);
    return out;
}

inline std::set<PairStratum> strata_present(const Chain& c)
{
    std::set<PairStratum> out;
    for (const auto& [w, v] : c.terms())
        out.insert(stratum_of(w));
    return out;
}

/// Checks that every word of c is an arity-2 word of C_2^{(w,w)} on R^n.
inline void require_pair_block(const Chain& c, int n, int w)
{
    for (const auto& [word, v] : c.terms()) {
        if (word.dim() != n)
            throw DimensionMismatch("chain word " + to_text(word) + " is not on R^" + std::to_string(n));
        if (weight_signature(word) != WeightSignature{2, w, w})
            throw WeightMismatch("chain word " + to_text(word) + " is not in C_2^(" + std::to_string(w) + ","
                                 + std::to_string(w) + ")");
    }
}

enum class DescentStep { tl_diagonal, tr_diagonal, rectangle_layer, terminal };

inline const char* to_string(DescentStep s)
{
    switch (s) {
    case DescentStep::tl_diagonal:
        return "tl-diagonal";
    case DescentStep::tr_diagonal:
        return "tr-diagonal";
    case DescentStep::rectangle_layer:
        return "rectangle-layer";
    case DescentStep::terminal:
        return "terminal";
    }
    return "?";
}

struct DescentResult {
    std::vector<Rational> constants;  // c_i, all nonzero, with prod (Psi + c_i) U = 0
    std::vector<DescentStep> steps;

    /// prod (t + c_i)
    Polynomial product() const
    {
        Polynomial p = Polynomial::constant(1);
        for (const auto& c : constants)
            p = p * Polynomial::linear_root(-c);
        return p;
    }
};

/// Removes one stratum scalar at a time: TL diagonals from the lowest l (lowest a_1 first),
/// then the TR roof by diagonals from the highest p (highest a_1 first), then the rectangle
/// by horizontal layers from the top, finishing with Psi = n + w + 1 on (1, 0).
inline DescentResult structured_descent(const Chain& u, int n, int w)
{
    require_pair_block(u, n, w);
    const Stratification strat(w);
    const std::size_t max_steps = strat.strata().size() + 2;
    DescentResult result;
    Chain v = u;
    while (!v.is_zero()) {
        if (result.constants.size() >= max_steps)
            throw InvariantViolation("structured descent did not terminate within " + std::to_string(max_steps)
                                     + " steps");
        const auto present = strata_present(v);
        std::optional<PairStratum> tl, roof;
        int top_layer = -1;
        bool wide_bottom = false;
        for (auto s : present) {
            if (!strat.is_representative(s))
                throw InvariantViolation("word outside the representative strata");
            if (strat.is_tl(s)) {
                if (!tl || strat.tl_diagonal(s) < strat.tl_diagonal(*tl)
                    || (strat.tl_diagonal(s) == strat.tl_diagonal(*tl) && s.a1 < tl->a1))
                    tl = s;
            } else if (strat.in_roof(s)) {
                if (!roof || strat.tr_diagonal(s) > strat.tr_diagonal(*roof)
                    || (strat.tr_diagonal(s) == strat.tr_diagonal(*roof) && s.a1 > roof->a1))
                    roof = s;
            } else {
                top_layer = std::max(top_layer, s.b1);
                if (s.b1 == 0 && s.a1 >= 2)
                    wide_bottom = true;
            }
        }
        Rational lambda;
        DescentStep step;
        if (tl) {
            lambda = n + w + 2 + strat.tl_diagonal(*tl) - tl->a1;
            step = DescentStep::tl_diagonal;
        } else if (roof) {
            lambda = n + 2 + w - strat.tr_diagonal(*roof) + roof->a1;
            step = DescentStep::tr_diagonal;
        } else if (top_layer > 0 || wide_bottom) {
            lambda = n + w + 2 - top_layer;
            step = DescentStep::rectangle_layer;
        } else {
            lambda = n + w + 1;
            step = DescentStep::terminal;
        }
        if (lambda == 0)
            throw InvariantViolation("descent produced a zero constant");
        v = psi(v) - v * lambda;
        result.constants.push_back(-lambda);
        result.steps.push_back(step);
    }
    return result;
}

/// p(Psi) U by Horner's rule.
inline Chain apply_polynomial(const Polynomial& p, const Chain& u)
{
    Chain acc;
    for (int k = p.degree(); k >= 0; --k) {
        acc = psi(acc);
        acc += u * p[k];
    }
    return acc;
}

/// Minimal monic p with p(Psi) U = 0, from the Krylov sequence U, Psi U, Psi^2 U, ...
/// Its constant term is nonzero (it divides the structured-descent product).
inline Polynomial annihilating_polynomial(const Chain& u)
{
    struct Reduced {
        WedgeWord pivot;
        Chain vec;                    // reduced Krylov vector
        std::vector<Rational> combo;  // its expression in Psi^0 U .. Psi^d U
    };
    std::vector<Reduced> basis;
    Chain krylov = u;
    for (std::size_t d = 0;; ++d) {
        Chain r = krylov;
        std::vector<Rational> combo(d + 1);
        combo[d] = 1;
        for (const auto& b : basis) {
            const Rational f = r.coefficient(b.pivot);
            if (f == 0)
                continue;
            const Rational pv = b.vec.coefficient(b.pivot);
            const Rational s = f / pv;
            r -= b.vec * s;
            for (std::size_t k = 0; k < b.combo.size(); ++k)
                combo[k] -= s * b.combo[k];
        }
        if (r.is_zero()) {
            Polynomial p(std::move(combo));
            if (p[0] == 0)
                throw InvariantViolation("annihilating polynomial has zero constant term");
            return p;
        }
        basis.push_back({r.terms().begin()->first, std::move(r), std::move(combo)});
        krylov = psi(krylov);
    }
}

struct ExactnessCertificate {
    int n = 0;
    int w = 0;
    Chain cycle;      // U
    Chain primitive;  // V with d V = U
    Polynomial annihilator;  // p with p(Psi) U = 0, p(0) != 0
    Polynomial quotient;     // g with p(t) = p(0) + t g(t)
};

/// For a cycle U in C_2^{(w,w)}: V = -(1/p(0)) Phi(g(Psi) U), verified by d V = U.
inline ExactnessCertificate certify_exact(const Chain& u, int n, int w)
{
    require_pair_block(u, n, w);
    Chain du = boundary(u);
    if (!du.is_zero())
        throw NotACycle("input chain is not a cycle", std::move(du));
    ExactnessCertificate cert{n, w, u, {}, annihilating_polynomial(u), {}};
    cert.quotient = cert.annihilator.drop_constant_over_t();
    const Rational p0 = cert.annihilator[0];
    cert.primitive = capital_phi(apply_polynomial(cert.quotient, u)) * Rational(-1 / p0);
    if (boundary(cert.primitive) != u)
        throw InvariantViolation("constructed primitive does not bound the cycle");
    return cert;
}

/// One failure of the leading-scalar/stratum prediction for Psi on a basis word.
struct PsiViolation {
    std::string word;
    std::string detail;
};

struct PsiStructureReport {
    int n = 0;
    int w = 0;
    std::size_t words_checked = 0;
    std::size_t tr_words = 0;
    std::size_t tl_words = 0;
    std::size_t eigen_words = 0;  // words of stratum (1, 0) checked for Psi = n + w + 1
    bool tl_vacuous = false;      // W_[TL] empty (Omega_e = 0)
    std::vector<PsiViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// Recomputes Psi on every basis word of C_2^{(w,w)}, subtracts the predicted leading
/// scalar and checks that the residual lies in the predicted strata; also checks
/// Psi = n + w + 1 exactly on the stratum (1, 0).
inline PsiStructureReport verify_psi_structure(int n, int w)
{
    const Stratification strat(w);
    const auto basis = enumerate_basis(n, 2, w, w);
    PsiStructureReport report{n, w};
    report.tl_vacuous = strat.omega_e() == 0;
    for (const auto& word : basis.words()) {
        ++report.words_checked;
        const PairStratum s = stratum_of(word);
        if (!strat.is_representative(s)) {
            report.violations.push_back({to_text(word), "stratum outside the representative range"});
            continue;
        }
        const PairType type = classify_type(word);
        if ((type == PairType::TL) != strat.is_tl(s))
            report.violations.push_back({to_text(word), "type disagrees with the stratum rule"});
        const Chain image = psi(Chain::single(word, Rational(1)));
        const int lead = type == PairType::TR ? n + word[1].beta.degree() : n + word[0].beta.degree();
        const Chain residual = image - Chain::single(word, Rational(lead));
        const PairStratum next = type == PairType::TR ? PairStratum{s.a1, s.b1 - 1} : PairStratum{s.a1, s.b1 + 1};
        (type == PairType::TR ? report.tr_words : report.tl_words) += 1;
        for (const auto& [rw, rc] : residual.terms()) {
            if (weight_signature(rw) != WeightSignature{2, w, w}) {
                report.violations.push_back({to_text(word), "Psi left the block via " + to_text(rw)});
                break;
            }
            const PairStratum rs = stratum_of(rw);
            if (rs != next && rs != PairStratum{1, 0}) {
                report.violations.push_back(
                    {to_text(word), std::string(to_string(type)) + " residual term " + to_text(rw) + " in stratum ("
                                        + std::to_string(rs.a1) + "," + std::to_string(rs.b1) + ")"});
                break;
            }
        }
        if (s == PairStratum{1, 0}) {
            ++report.eigen_words;
            if (image != Chain::single(word, Rational(n + w + 1)))
                report.violations.push_back({to_text(word), "Psi is not n + w + 1 on the stratum (1,0)"});
        }
    }
    return report;
}

}  // namespace schouten
