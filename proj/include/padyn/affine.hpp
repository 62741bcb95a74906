#pragma once

// Closed-form decomposition of F(x) = alpha x + beta.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padyn/engine.hpp"

namespace padyn {

/// An exact integer of K: sum_i c_i pi^i, each c_i an integer polynomial in y.
using Literal = std::vector<std::vector<std::int64_t>>;

inline Literal literal_from_int(std::int64_t v) { return {{v}}; }

/// The digits of x as a literal; exact for elements built from finitely many digits.
inline Literal to_literal(const Element& x)
{
    const RingSpec& r = x.ring();
    Literal out;
    for (int d : x.digits()) {
        std::vector<std::int64_t> comp(static_cast<std::size_t>(r.f()));
        std::uint64_t v = static_cast<std::uint64_t>(d);
        for (auto& c : comp) {
            c = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(r.p()));
            v /= static_cast<std::uint64_t>(r.p());
        }
        out.push_back(std::move(comp));
    }
    while (!out.empty() && std::all_of(out.back().begin(), out.back().end(), [](auto c) { return c == 0; }))
        out.pop_back();
    if (out.empty()) out.push_back({0});
    return out;
}

namespace detail {

using boost::multiprecision::cpp_int;

// Exact arithmetic in Z[y, pi]/(u(y), E(pi)), coefficients in the basis
// pi^i y^j with i < e, j < f.
class ExactRing {
public:
    explicit ExactRing(const RingSpec& r) : e_(r.e()), f_(r.f())
    {
        for (auto c : r.unram_poly()) u_.emplace_back(c);
        for (int i = 0; i < e_; ++i) {
            std::vector<cpp_int> w = reduce_w(to_big(r.eis_poly()[i]));
            eis_.insert(eis_.end(), w.begin(), w.end());
        }
    }

    std::vector<cpp_int> from_literal(const Literal& lit) const
    {
        std::vector<cpp_int> acc(static_cast<std::size_t>(e_ * f_), 0);
        for (std::size_t i = lit.size(); i-- > 0;) {
            acc = mul_pi(acc);
            const auto w = reduce_w(to_big(lit[i]));
            for (int k = 0; k < f_; ++k) acc[k] += w[k];
        }
        return acc;
    }

    std::vector<cpp_int> one() const
    {
        std::vector<cpp_int> o(static_cast<std::size_t>(e_ * f_), 0);
        o[0] = 1;
        return o;
    }

    std::vector<cpp_int> mul(const std::vector<cpp_int>& a, const std::vector<cpp_int>& b) const
    {
        std::vector<cpp_int> t(static_cast<std::size_t>((2 * e_ - 1) * f_), 0);
        for (int i = 0; i < e_; ++i)
            for (int j = 0; j < e_; ++j) {
                const auto w = w_mul(&a[i * f_], &b[j * f_]);
                for (int k = 0; k < f_; ++k) t[(i + j) * f_ + k] += w[k];
            }
        for (int d = 2 * e_ - 2; d >= e_; --d) {
            std::vector<cpp_int> c(t.begin() + d * f_, t.begin() + (d + 1) * f_);
            for (int i = 0; i < e_; ++i) {
                const auto w = w_mul(c.data(), &eis_[i * f_]);
                for (int k = 0; k < f_; ++k) t[(d - e_ + i) * f_ + k] -= w[k];
            }
        }
        t.resize(static_cast<std::size_t>(e_ * f_));
        return t;
    }

    std::vector<cpp_int> pow(std::vector<cpp_int> b, std::uint64_t k) const
    {
        auto r = one();
        while (k > 0) {
            if (k & 1) r = mul(r, b);
            k >>= 1;
            if (k > 0) b = mul(b, b);
        }
        return r;
    }

private:
    static std::vector<cpp_int> to_big(const std::vector<std::int64_t>& v)
    {
        return {v.begin(), v.end()};
    }

    std::vector<cpp_int> reduce_w(std::vector<cpp_int> a) const
    {
        a.resize(std::max(a.size(), static_cast<std::size_t>(f_)), 0);
        for (std::size_t d = a.size(); d-- > static_cast<std::size_t>(f_);) {
            const cpp_int c = a[d];
            a[d] = 0;
            for (int i = 0; i < f_; ++i) a[d - f_ + i] -= c * u_[i];
        }
        a.resize(f_);
        return a;
    }

    std::vector<cpp_int> w_mul(const cpp_int* a, const cpp_int* b) const
    {
        std::vector<cpp_int> t(static_cast<std::size_t>(2 * f_ - 1), 0);
        for (int i = 0; i < f_; ++i)
            for (int j = 0; j < f_; ++j) t[i + j] += a[i] * b[j];
        return reduce_w(std::move(t));
    }

    std::vector<cpp_int> mul_pi(const std::vector<cpp_int>& a) const
    {
        std::vector<cpp_int> r(a.size(), 0);
        for (int i = 0; i + 1 < e_; ++i)
            for (int k = 0; k < f_; ++k) r[(i + 1) * f_ + k] = a[i * f_ + k];
        for (int i = 0; i < e_; ++i) {
            const auto w = w_mul(&a[(e_ - 1) * f_], &eis_[i * f_]);
            for (int k = 0; k < f_; ++k) r[i * f_ + k] -= w[k];
        }
        return r;
    }

    int e_, f_;
    std::vector<cpp_int> u_;
    std::vector<cpp_int> eis_;
};

} // namespace detail

enum class Certainty { yes, no, unknown };

constexpr std::string_view to_string(Certainty c) noexcept
{
    switch (c) {
    case Certainty::yes: return "yes";
    case Certainty::no: return "no";
    case Certainty::unknown: return "unknown";
    }
    return "?";
}

/// Exact test: alpha is a root of unity iff alpha^m = 1 for m = (q-1) p^s.
inline Certainty is_root_of_unity(const Literal& alpha, const RingPtr& r)
{
    const detail::ExactRing x(*r);
    const auto a = x.from_literal(alpha);
    return x.pow(a, torsion_exponent(*r)) == x.one() ? Certainty::yes : Certainty::no;
}

/// For an element known only to finite precision the answer is never "yes".
inline Certainty is_root_of_unity(const Element& alpha)
{
    if (alpha.val() != 0) return Certainty::no;
    const auto m = torsion_exponent(alpha.ring());
    return alpha.pow(m) == Element::one(alpha.ring_ptr()) ? Certainty::unknown : Certainty::no;
}

/// Exact multiplicative order of a root of unity.
inline std::uint64_t root_of_unity_order(const Literal& alpha, const RingPtr& r)
{
    const detail::ExactRing x(*r);
    const auto a = x.from_literal(alpha);
    const auto m = torsion_exponent(*r);
    for (std::uint64_t d = 1; d <= m; ++d)
        if (m % d == 0 && x.pow(a, d) == x.one()) return d;
    fail(errc::invalid_input, "not a root of unity");
}

inline int order_in_residue(const Element& alpha) { return residue_order(alpha); }

/// E_k = val((alpha^{l p^{k+1}} - 1) / (alpha^{l p^k} - 1)). Entries equal e
/// from the first k with val(alpha^{l p^k} - 1) > e/(p-1) on.
inline EVector e_vector(const Element& alpha, int ell)
{
    const RingSpec& r = alpha.ring();
    const Element one = Element::one(alpha.ring_ptr());
    const std::int64_t p = r.p();
    const int e = r.e();
    Element a = alpha.pow(static_cast<std::uint64_t>(ell));
    int w = (a - one).val();
    if (w == kInfinity)
        fail(errc::root_of_unity_suspected, "alpha^" + std::to_string(ell) + " = 1 at working precision");
    EVector E = EVector::constant(e);
    while (static_cast<std::int64_t>(w) * (p - 1) <= e) {
        a = a.pow(static_cast<std::uint64_t>(p));
        const int w2 = (a - one).val();
        if (w2 == kInfinity)
            fail(errc::precision_exhausted, "e-vector needs more than " + std::to_string(r.precision()) + " digits");
        E.prefix.push_back(w2 - w);
        w = w2;
    }
    return E.normalize();
}

/// (q - 1) q^{v* - 1} / l type-(l, E) clopen sets per unit sphere.
inline std::uint64_t component_count(int v_star, int ell, const RingSpec& r)
{
    const std::uint64_t q = r.residue_size();
    return (q - 1) * r.residue_count(v_star - 1) / static_cast<std::uint64_t>(ell);
}

/// pi^valuation * unit, with valuation possibly negative.
struct KValue {
    int valuation = kInfinity;
    std::optional<Element> unit;
};

enum class AffineCase { translation, attracting, periodic, minimal };

constexpr std::string_view to_string(AffineCase c) noexcept
{
    switch (c) {
    case AffineCase::translation: return "translation";
    case AffineCase::attracting: return "A";
    case AffineCase::periodic: return "B";
    case AffineCase::minimal: return "C";
    }
    return "?";
}

struct AffineReport {
    AffineCase kind = AffineCase::translation;
    /// beta / (1 - alpha); absent for translations.
    std::optional<KValue> fixed_point;
    Certainty root_of_unity = Certainty::no;
    /// Exact order (case B) or residue order (case C).
    std::uint64_t ell = 0;
    int v_star = 0;
    std::uint64_t component_count = 0;
    /// Translation: type (1, e) at level 0; case C: type (l, E) at level v*.
    std::optional<MinimalTypeDescriptor> type;
};

inline AffineReport affine_classify(const Literal& alpha_lit, const Literal& beta_lit, const RingPtr& r)
{
    const Element alpha = Element::from_literal(r, alpha_lit);
    const Element beta = Element::from_literal(r, beta_lit);
    const detail::ExactRing x(*r);
    const auto a = x.from_literal(alpha_lit);
    const auto zero = std::vector<detail::cpp_int>(a.size(), 0);
    if (a == zero) fail(errc::degenerate_map, "alpha = 0 gives a constant map");
    const bool alpha_one = a == x.one();
    if (alpha_one && x.from_literal(beta_lit) == zero) fail(errc::degenerate_map, "alpha = 1, beta = 0 is the identity");

    AffineReport rep;
    if (alpha_one) {
        rep.kind = AffineCase::translation;
        rep.type = MinimalTypeDescriptor{1, EVector::constant(r->e()), 0, r->p()};
        return rep;
    }

    const Element one = Element::one(r);
    const Element d = one - alpha;
    const int vd = d.val();
    if (vd == kInfinity) fail(errc::precision_exhausted, "1 - alpha vanishes at working precision");
    KValue fp;
    const int vb = beta.val();
    if (vb != kInfinity) {
        const Element bu = beta.div_pi_pow(vb);
        const Element du = d.div_pi_pow(vd);
        fp.valuation = vb - vd;
        fp.unit = bu * invert(du);
    }
    rep.fixed_point = fp;

    if (alpha.val() > 0) {
        rep.kind = AffineCase::attracting;
        return rep;
    }
    rep.root_of_unity = is_root_of_unity(alpha_lit, r);
    if (rep.root_of_unity == Certainty::yes) {
        rep.kind = AffineCase::periodic;
        rep.ell = root_of_unity_order(alpha_lit, r);
        return rep;
    }
    rep.kind = AffineCase::minimal;
    const int ell = order_in_residue(alpha);
    rep.ell = static_cast<std::uint64_t>(ell);
    rep.v_star = (alpha.pow(static_cast<std::uint64_t>(ell)) - one).val();
    if (rep.v_star == kInfinity)
        fail(errc::precision_exhausted, "alpha^l - 1 vanishes at working precision");
    rep.component_count = component_count(rep.v_star, ell, *r);
    rep.type = MinimalTypeDescriptor{static_cast<std::size_t>(ell), e_vector(alpha, ell), rep.v_star, r->p()};
    return rep;
}

} // namespace padyn
