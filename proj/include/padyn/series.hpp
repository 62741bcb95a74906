#pragma once

// Convergent power series with coefficients in O_K, stored as a finite
// coefficient list plus a certificate that every omitted coefficient has
// valuation >= tail_val.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "padyn/ring.hpp"

namespace padyn {

struct ConvergentSeries {
    RingPtr ring;
    std::vector<Element> coeffs;
    /// kInfinity for an exact polynomial.
    int tail_val = kInfinity;

    static ConvergentSeries polynomial(const RingPtr& r, std::vector<Element> c)
    {
        return make(r, std::move(c), kInfinity);
    }

    static ConvergentSeries from_ints(const RingPtr& r, const std::vector<std::int64_t>& c)
    {
        std::vector<Element> e;
        e.reserve(c.size());
        for (auto v : c) e.push_back(Element::from_int(r, v));
        return make(r, std::move(e), kInfinity);
    }

    static ConvergentSeries make(const RingPtr& r, std::vector<Element> c, int tail)
    {
        if (tail < 1) fail(errc::invalid_input, "tail_val must be >= 1");
        for (const auto& x : c)
            if (!x.ring().same_as(*r)) fail(errc::ring_mismatch, "series coefficient from another ring");
        ConvergentSeries s{r, std::move(c), tail};
        if (s.coeffs.empty()) s.coeffs.push_back(Element::zero(r));
        return s;
    }

    bool is_polynomial() const noexcept { return tail_val == kInfinity; }
    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

    /// Number of pi-digits the series determines: min(N, tail_val, coefficient precisions).
    int precision() const
    {
        int p = std::min(ring->precision(), tail_val);
        for (const auto& c : coeffs) p = std::min(p, c.known_prec());
        return p;
    }

    const Element& operator[](std::size_t i) const { return coeffs[i]; }
};

namespace detail {

inline void trim_series(ConvergentSeries& s)
{
    while (s.coeffs.size() > 1 && s.coeffs.back().is_zero() && s.coeffs.back().known_prec() >= s.precision())
        s.coeffs.pop_back();
}

inline std::vector<Element> poly_mul(const RingPtr& r, const std::vector<Element>& a, const std::vector<Element>& b)
{
    std::vector<Element> out(a.size() + b.size() - 1, Element::zero(r));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() && a[i].known_prec() == r->precision()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline std::vector<Element> poly_add(const RingPtr& r, const std::vector<Element>& a, const std::vector<Element>& b)
{
    std::vector<Element> out(std::max(a.size(), b.size()), Element::zero(r));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

} // namespace detail

inline void check_ring(const ConvergentSeries& s, const Element& x)
{
    if (!s.ring->same_as(x.ring())) fail(errc::ring_mismatch, "point and series belong to different rings");
}

inline void check_ring(const ConvergentSeries& a, const ConvergentSeries& b)
{
    if (!a.ring->same_as(*b.ring)) fail(errc::ring_mismatch, "series belong to different rings");
}

/// Horner evaluation; the result is known to min(known_prec(x), precision of phi).
inline Element eval(const ConvergentSeries& phi, const Element& x)
{
    check_ring(phi, x);
    Element r = phi.coeffs.back();
    for (std::size_t i = phi.coeffs.size() - 1; i-- > 0;) r = r * x + phi.coeffs[i];
    return r.truncated(std::min(phi.tail_val, x.known_prec()));
}

/// x_{j+1} = phi(x_j), k times.
inline Element orbit_eval(const ConvergentSeries& phi, Element x, std::uint64_t k)
{
    for (std::uint64_t i = 0; i < k; ++i) x = eval(phi, x);
    return x;
}

inline ConvergentSeries derivative(const ConvergentSeries& phi)
{
    std::vector<Element> c;
    for (std::size_t i = 1; i < phi.coeffs.size(); ++i)
        c.push_back(phi.coeffs[i] * Element::from_int(phi.ring, static_cast<std::int64_t>(i)));
    return ConvergentSeries::make(phi.ring, std::move(c), phi.tail_val);
}

inline ConvergentSeries add(const ConvergentSeries& a, const ConvergentSeries& b)
{
    check_ring(a, b);
    auto s = ConvergentSeries::make(a.ring, detail::poly_add(a.ring, a.coeffs, b.coeffs), std::min(a.tail_val, b.tail_val));
    detail::trim_series(s);
    return s;
}

inline ConvergentSeries mul(const ConvergentSeries& a, const ConvergentSeries& b)
{
    check_ring(a, b);
    auto s = ConvergentSeries::make(a.ring, detail::poly_mul(a.ring, a.coeffs, b.coeffs), std::min(a.tail_val, b.tail_val));
    detail::trim_series(s);
    return s;
}

/// phi(psi(x)). Omitted terms of either factor only perturb the result at
/// valuation >= the smaller of the two tail certificates.
inline ConvergentSeries compose(const ConvergentSeries& phi, const ConvergentSeries& psi)
{
    check_ring(phi, psi);
    const RingPtr& r = phi.ring;
    std::vector<Element> acc{phi.coeffs.back()};
    for (std::size_t i = phi.coeffs.size() - 1; i-- > 0;) {
        acc = detail::poly_mul(r, acc, psi.coeffs);
        acc[0] += phi.coeffs[i];
    }
    auto s = ConvergentSeries::make(r, std::move(acc), std::min(phi.tail_val, psi.tail_val));
    detail::trim_series(s);
    return s;
}

/// phi composed with itself k times (k >= 1), by binary powering.
inline ConvergentSeries iterate(const ConvergentSeries& phi, std::uint64_t k)
{
    if (k == 0) fail(errc::invalid_input, "iterate needs k >= 1");
    ConvergentSeries result = ConvergentSeries::from_ints(phi.ring, {0, 1});
    ConvergentSeries base = phi;
    bool first = true;
    while (k > 0) {
        if (k & 1) {
            result = first ? base : compose(result, base);
            first = false;
        }
        k >>= 1;
        if (k > 0) base = compose(base, base);
    }
    return result;
}

/// Largest j with val(a_j) = 0, or kInfinity when every known coefficient
/// lies in the maximal ideal.
inline int weierstrass_degree(const ConvergentSeries& phi)
{
    for (std::size_t i = phi.coeffs.size(); i-- > 0;)
        if (phi.coeffs[i].known_prec() > 0 && phi.coeffs[i].val() == 0) return static_cast<int>(i);
    return kInfinity;
}

struct WeierstrassFactors {
    std::vector<Element> g; // monic, degree j
    ConvergentSeries h;     // constant term a unit, every other coefficient in P_K
};

namespace detail {

// a = q * g + r with g monic; deg r < deg g.
inline void poly_divmod_monic(const RingPtr& ring, std::vector<Element> a, const std::vector<Element>& g,
                              std::vector<Element>& q, std::vector<Element>& r)
{
    const std::size_t j = g.size() - 1;
    if (a.size() <= j) {
        q = {Element::zero(ring)};
        a.resize(std::max<std::size_t>(j, 1), Element::zero(ring));
        r = std::move(a);
        return;
    }
    q.assign(a.size() - j, Element::zero(ring));
    for (std::size_t d = a.size() - 1; d >= j; --d) {
        const Element c = a[d];
        q[d - j] = c;
        for (std::size_t i = 0; i <= j; ++i) a[d - j + i] -= c * g[i];
        if (d == j) break;
    }
    a.resize(std::max<std::size_t>(j, 1));
    r = std::move(a);
}

} // namespace detail

/// phi = g * h with g monic of degree wideg(phi), computed by Hensel lifting
/// one pi-digit at a time up to the series' precision.
inline WeierstrassFactors weierstrass_factor(const ConvergentSeries& phi)
{
    const RingPtr& r = phi.ring;
    const int j = weierstrass_degree(phi);
    if (j == kInfinity)
        fail(errc::all_coefficients_small, "every coefficient is divisible by pi at the known precision");
    const int prec = phi.precision();
    const Element aj_inv = invert(phi.coeffs[j]);

    std::vector<Element> g(j + 1, Element::zero(r));
    for (int i = 0; i <= j; ++i) g[i] = phi.coeffs[i] * aj_inv;
    g[j] = Element::one(r);
    std::vector<Element> h{phi.coeffs[j]};

    std::vector<Element> target;
    for (const auto& c : phi.coeffs) target.push_back(c.truncated(prec));

    for (int k = 1; k < prec; ++k) {
        auto gh = detail::poly_mul(r, g, h);
        for (auto& c : gh) c = -c;
        auto diff = detail::poly_add(r, target, gh);
        bool done = true;
        for (auto& d : diff) {
            if (d.val() < k) fail(errc::precision_exhausted, "Hensel step lost the congruence");
            if (!d.is_zero()) done = false;
            d = d.div_pi_pow(k);
        }
        if (done) break;
        std::vector<Element> Q, R;
        detail::poly_divmod_monic(r, diff, g, Q, R);
        for (std::size_t i = 0; i < R.size() && i < static_cast<std::size_t>(j); ++i)
            g[i] += (R[i] * aj_inv).mul_pi_pow(k);
        if (h.size() < Q.size()) h.resize(Q.size(), Element::zero(r));
        for (std::size_t i = 0; i < Q.size(); ++i) h[i] += Q[i].mul_pi_pow(k);
    }
    for (auto& c : g) c = c.truncated(prec);
    for (auto& c : h) c = c.truncated(prec);
    auto hs = ConvergentSeries::make(r, std::move(h), phi.tail_val);
    detail::trim_series(hs);
    return {std::move(g), std::move(hs)};
}

} // namespace padyn
