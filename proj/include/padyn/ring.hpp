#pragma once

// Exact arithmetic in O_K / pi^N O_K for a finite extension K of Q_p built as
// one unramified step W = Z_p[y]/(u(y)) followed by one Eisenstein step
// O_K = W[pi]/(E(pi)).
//
// Elements are stored in the basis { pi^i y^j : i < e, j < f } with integer
// coefficients reduced modulo p^M, M = ceil(N/e) + 1. Since p^M O_K =
// pi^{eM} O_K this is an honest quotient ring that contains O_K/pi^N with
// room to spare; the canonical pi-adic digit expansion is computed on demand.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "padyn/error.hpp"

namespace padyn {

/// Valuation marker for "zero at the known precision". Compares greater than
/// every finite valuation.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

class RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;
using Coeffs = std::vector<std::int64_t>;

namespace detail {

using u128 = unsigned __int128;

inline std::int64_t mod_norm(std::int64_t a, std::int64_t m)
{
    a %= m;
    return a < 0 ? a + m : a;
}

inline std::int64_t add_mod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    std::int64_t s = a + b;
    return s >= m ? s - m : s;
}

inline std::int64_t sub_mod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return a >= b ? a - b : a + m - b;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>(static_cast<u128>(a) * static_cast<u128>(b) % static_cast<u128>(m));
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p, little-endian, no trailing zeros.
using FpPoly = std::vector<std::int64_t>;

inline void fp_trim(FpPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::int64_t fp_inv(std::int64_t a, std::int64_t p)
{
    std::int64_t r = 1, b = mod_norm(a, p), k = p - 2;
    while (k > 0) {
        if (k & 1) r = mul_mod(r, b, p);
        b = mul_mod(b, b, p);
        k >>= 1;
    }
    return r;
}

inline FpPoly fp_rem(FpPoly a, const FpPoly& m, std::int64_t p)
{
    fp_trim(a);
    const std::int64_t lead_inv = fp_inv(m.back(), p);
    while (a.size() >= m.size()) {
        const std::int64_t c = mul_mod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = sub_mod(a[shift + i], mul_mod(c, m[i], p), p);
        fp_trim(a);
    }
    return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::int64_t p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    return fp_rem(std::move(r), m, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::int64_t p)
{
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or: a monic u of degree f is irreducible over F_p iff
// gcd(x^{p^i} - x, u) = 1 for every 1 <= i <= f/2.
inline bool fp_irreducible(const FpPoly& u, std::int64_t p)
{
    const std::size_t f = u.size() - 1;
    if (f <= 1) return f == 1;
    FpPoly h = fp_rem({0, 1}, u, p);
    for (std::size_t i = 1; i <= f / 2; ++i) {
        FpPoly acc{1};
        for (std::int64_t k = 0; k < p; ++k) acc = fp_mulmod(acc, h, u, p);
        h = acc;
        FpPoly t = h;
        t.resize(std::max<std::size_t>(t.size(), 2), 0);
        t[1] = sub_mod(t[1], 1, p);
        fp_trim(t);
        if (fp_gcd(u, t, p).size() > 1) return false;
    }
    return true;
}

inline int vp_int(std::int64_t a, std::int64_t p, int cap)
{
    if (a == 0) return cap;
    int v = 0;
    while (a % p == 0 && v < cap) {
        a /= p;
        ++v;
    }
    return v;
}

} // namespace detail

/// Position of a point of O_K / pi^n. The index packs the first n digits as
/// sum d_i q^i with q = p^f, so for K = Q_p it is the integer residue itself.
struct ResidueClass {
    int level = 0;
    std::uint64_t index = 0;

    friend auto operator<=>(const ResidueClass&, const ResidueClass&) = default;
};

/// The field K: p, residue degree f, ramification index e, the two defining
/// polynomials and the working precision N (in pi-digits). Immutable.
class RingSpec {
public:
    /// unram_poly: f+1 integers, little-endian, monic and irreducible mod p.
    /// eis_poly: e+1 coefficients, each a little-endian vector over y.
    static RingPtr create(std::int64_t p, int f, std::vector<std::int64_t> unram_poly, int e,
                          std::vector<std::vector<std::int64_t>> eis_poly, int precision)
    {
        if (!detail::is_prime(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
        if (f < 1 || e < 1) fail(errc::invalid_input, "residue degree and ramification index must be >= 1");
        if (precision < e + 2)
            fail(errc::precision_too_small,
                 "precision " + std::to_string(precision) + " < e + 2 = " + std::to_string(e + 2));

        auto r = std::shared_ptr<RingSpec>(new RingSpec());
        r->p_ = p;
        r->f_ = f;
        r->e_ = e;
        r->n_ = precision;
        r->m_ = (precision + e - 1) / e + 1;

        // p^M must leave headroom for a + b without overflow.
        constexpr std::int64_t limit = std::int64_t{1} << 62;
        std::int64_t mod = 1;
        for (int i = 0; i < r->m_; ++i) {
            if (mod > limit / p)
                fail(errc::precision_too_large, "p^" + std::to_string(r->m_) + " does not fit in 62 bits");
            mod *= p;
        }
        r->mod_ = mod;
        r->q_ = 1;
        for (int i = 0; i < f; ++i) r->q_ *= static_cast<std::uint64_t>(p);

        if (unram_poly.size() != static_cast<std::size_t>(f) + 1)
            fail(errc::not_irreducible, "unramified polynomial must have degree f = " + std::to_string(f));
        detail::FpPoly ubar(unram_poly.size());
        for (std::size_t i = 0; i < unram_poly.size(); ++i) ubar[i] = detail::mod_norm(unram_poly[i], p);
        if (unram_poly.back() != 1) fail(errc::not_irreducible, "unramified polynomial must be monic");
        if (!detail::fp_irreducible(ubar, p))
            fail(errc::not_irreducible, "unramified polynomial is reducible over F_" + std::to_string(p));
        r->unram_.resize(unram_poly.size());
        for (std::size_t i = 0; i < unram_poly.size(); ++i) r->unram_[i] = detail::mod_norm(unram_poly[i], mod);

        if (eis_poly.size() != static_cast<std::size_t>(e) + 1)
            fail(errc::not_eisenstein, "Eisenstein polynomial must have degree e = " + std::to_string(e));
        r->eis_literal_ = eis_poly;
        r->unram_literal_ = unram_poly;
        r->eis_.assign(static_cast<std::size_t>(e) * f, 0);
        for (int i = 0; i <= e; ++i) {
            Coeffs w = r->w_from_ints(eis_poly[i]);
            if (i == e) {
                Coeffs one(f, 0);
                one[0] = 1;
                if (w != one) fail(errc::not_eisenstein, "Eisenstein polynomial must be monic");
                continue;
            }
            const int v = r->w_vp(w.data());
            if (i == 0 && v != 1)
                fail(errc::not_eisenstein, "constant term must have p-adic valuation exactly 1");
            if (i > 0 && v < 1) fail(errc::not_eisenstein, "coefficient " + std::to_string(i) + " is not divisible by p");
            std::copy(w.begin(), w.end(), r->eis_.begin() + static_cast<std::ptrdiff_t>(i) * f);
        }
        r->init_p_over_pi();
        return r;
    }

    std::int64_t p() const noexcept { return p_; }
    int f() const noexcept { return f_; }
    int e() const noexcept { return e_; }
    int degree() const noexcept { return e_ * f_; }
    int precision() const noexcept { return n_; }
    /// q = p^f, the size of the residue field.
    std::uint64_t residue_size() const noexcept { return q_; }
    /// Internal coefficient modulus p^M.
    std::int64_t modulus() const noexcept { return mod_; }
    int width() const noexcept { return e_ * f_; }
    bool is_qp() const noexcept { return e_ == 1 && f_ == 1; }
    const std::vector<std::int64_t>& unram_poly() const noexcept { return unram_literal_; }
    /// E(pi) - pi^e as e blocks of f internal coefficients.
    const Coeffs& eis_coeffs() const noexcept { return eis_; }
    const std::vector<std::vector<std::int64_t>>& eis_poly() const noexcept { return eis_literal_; }

    /// Largest level n whose cycle invariants fit the precision ledger
    /// N >= 2n + e + 2.
    int analysis_budget() const noexcept { return (n_ - e_ - 2) / 2; }

    /// Same field presentation at possibly different precision.
    RingPtr with_precision(int precision) const
    {
        return create(p_, f_, unram_literal_, e_, eis_literal_, precision);
    }

    bool same_as(const RingSpec& o) const noexcept
    {
        return this == &o ||
               (p_ == o.p_ && f_ == o.f_ && e_ == o.e_ && n_ == o.n_ && unram_ == o.unram_ && eis_ == o.eis_);
    }

    /// Digit string of residue digits, least significant first.
    std::string format_digits(std::span<const int> digits) const
    {
        auto chr = [](std::int64_t v) {
            return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
        };
        std::string s;
        const bool dotted = f_ > 1 || p_ > 36;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (dotted && i > 0) s += '.';
            std::int64_t d = digits[i];
            if (p_ > 36) {
                s += std::to_string(d);
                continue;
            }
            for (int j = 0; j < f_; ++j) {
                s += chr(d % p_);
                d /= p_;
            }
        }
        return s;
    }

    std::vector<int> residue_digits(const ResidueClass& r) const
    {
        std::vector<int> d(static_cast<std::size_t>(r.level));
        std::uint64_t x = r.index;
        for (auto& v : d) {
            v = static_cast<int>(x % q_);
            x /= q_;
        }
        return d;
    }

    std::string format_residue(const ResidueClass& r) const { return format_digits(residue_digits(r)); }

    /// q^n, or LevelTooLarge when it does not fit a 64-bit index.
    std::uint64_t residue_count(int n) const
    {
        std::uint64_t c = 1;
        for (int i = 0; i < n; ++i) {
            if (c > std::numeric_limits<std::uint64_t>::max() / q_)
                fail(errc::level_too_large, "q^" + std::to_string(n) + " overflows a residue index");
            c *= q_;
        }
        return c;
    }

    // Raw coefficient arithmetic. Element is the intended interface.

    // --- arithmetic on W = Z[y]/(u, p^M): arrays of f coefficients ---

    Coeffs w_from_ints(const std::vector<std::int64_t>& v) const
    {
        std::vector<std::int64_t> a(std::max<std::size_t>(v.size(), static_cast<std::size_t>(f_)), 0);
        for (std::size_t i = 0; i < v.size(); ++i) a[i] = detail::mod_norm(v[i], mod_);
        for (std::size_t d = a.size(); d-- > static_cast<std::size_t>(f_);) {
            const std::int64_t c = a[d];
            a[d] = 0;
            for (int i = 0; i < f_; ++i)
                a[d - f_ + i] = detail::sub_mod(a[d - f_ + i], detail::mul_mod(c, unram_[i], mod_), mod_);
        }
        a.resize(f_);
        return a;
    }

    void w_mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const
    {
        if (f_ == 1) {
            out[0] = detail::mul_mod(a[0], b[0], mod_);
            return;
        }
        std::int64_t tmp[64];
        std::vector<std::int64_t> big;
        std::int64_t* t = tmp;
        if (2 * f_ - 1 > 64) {
            big.assign(2 * f_ - 1, 0);
            t = big.data();
        } else {
            std::fill(tmp, tmp + 2 * f_ - 1, 0);
        }
        for (int i = 0; i < f_; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < f_; ++j) t[i + j] = detail::add_mod(t[i + j], detail::mul_mod(a[i], b[j], mod_), mod_);
        }
        for (int d = 2 * f_ - 2; d >= f_; --d) {
            const std::int64_t c = t[d];
            if (c == 0) continue;
            for (int i = 0; i < f_; ++i)
                t[d - f_ + i] = detail::sub_mod(t[d - f_ + i], detail::mul_mod(c, unram_[i], mod_), mod_);
        }
        std::copy(t, t + f_, out);
    }

    int w_vp(const std::int64_t* a) const
    {
        int v = m_;
        for (int j = 0; j < f_; ++j) v = std::min(v, detail::vp_int(a[j], p_, m_));
        return v;
    }

    Coeffs w_pow(Coeffs base, std::uint64_t k) const
    {
        Coeffs r(f_, 0), t(f_);
        r[0] = 1;
        while (k > 0) {
            if (k & 1) {
                w_mul(r.data(), base.data(), t.data());
                r = t;
            }
            w_mul(base.data(), base.data(), t.data());
            base = t;
            k >>= 1;
        }
        return r;
    }

    // Newton iteration for the inverse of a unit of W.
    Coeffs w_inverse(const Coeffs& a) const
    {
        Coeffs x = w_pow(a, q_ - 2);
        Coeffs ax(f_), two_minus(f_), nx(f_);
        for (int reached = 1; reached < m_; reached *= 2) {
            w_mul(a.data(), x.data(), ax.data());
            for (int j = 0; j < f_; ++j) two_minus[j] = detail::sub_mod(0, ax[j], mod_);
            two_minus[0] = detail::add_mod(two_minus[0], 2 % mod_, mod_);
            w_mul(x.data(), two_minus.data(), nx.data());
            x = nx;
        }
        return x;
    }

    // --- arithmetic on O_K/p^M: arrays of e*f coefficients, index i*f + j ---

    Coeffs mul(const Coeffs& a, const Coeffs& b) const
    {
        if (e_ == 1) {
            Coeffs r(f_);
            w_mul(a.data(), b.data(), r.data());
            return r;
        }
        Coeffs t(static_cast<std::size_t>(2 * e_ - 1) * f_, 0);
        Coeffs prod(f_);
        for (int i = 0; i < e_; ++i) {
            const std::int64_t* ai = a.data() + i * f_;
            if (std::all_of(ai, ai + f_, [](std::int64_t v) { return v == 0; })) continue;
            for (int j = 0; j < e_; ++j) {
                w_mul(ai, b.data() + j * f_, prod.data());
                for (int k = 0; k < f_; ++k)
                    t[(i + j) * f_ + k] = detail::add_mod(t[(i + j) * f_ + k], prod[k], mod_);
            }
        }
        for (int d = 2 * e_ - 2; d >= e_; --d) {
            const std::int64_t* c = t.data() + d * f_;
            if (std::all_of(c, c + f_, [](std::int64_t v) { return v == 0; })) continue;
            Coeffs cd(c, c + f_);
            for (int i = 0; i < e_; ++i) {
                w_mul(cd.data(), eis_.data() + i * f_, prod.data());
                for (int k = 0; k < f_; ++k)
                    t[(d - e_ + i) * f_ + k] = detail::sub_mod(t[(d - e_ + i) * f_ + k], prod[k], mod_);
            }
        }
        t.resize(static_cast<std::size_t>(e_) * f_);
        return t;
    }

    Coeffs mul_pi(const Coeffs& a) const
    {
        Coeffs r(a.size(), 0);
        for (int i = 0; i + 1 < e_; ++i)
            for (int k = 0; k < f_; ++k) r[(i + 1) * f_ + k] = a[i * f_ + k];
        const std::int64_t* top = a.data() + (e_ - 1) * f_;
        Coeffs prod(f_);
        for (int i = 0; i < e_; ++i) {
            w_mul(top, eis_.data() + i * f_, prod.data());
            for (int k = 0; k < f_; ++k) r[i * f_ + k] = detail::sub_mod(r[i * f_ + k], prod[k], mod_);
        }
        return r;
    }

    // Exact division by pi of an element whose constant W-coefficient is
    // divisible by p. The top p-adic digit of the result is not meaningful,
    // which is below every precision handed out (N <= e(M-1)).
    Coeffs div_pi(const Coeffs& a) const
    {
        Coeffs r(a.size(), 0);
        for (int i = 1; i < e_; ++i)
            for (int k = 0; k < f_; ++k) r[(i - 1) * f_ + k] = a[i * f_ + k];
        Coeffs c0(f_);
        for (int k = 0; k < f_; ++k) c0[k] = a[k] / p_;
        Coeffs prod(f_);
        for (int i = 0; i < e_; ++i) {
            w_mul(c0.data(), p_over_pi_.data() + i * f_, prod.data());
            for (int k = 0; k < f_; ++k) r[i * f_ + k] = detail::add_mod(r[i * f_ + k], prod[k], mod_);
        }
        return r;
    }

    // p/pi = -u0^{-1} (pi^{e-1} + sum_{0<i<e} a_i pi^{i-1}) where a_0 = p*u0.
    void init_p_over_pi()
    {
        Coeffs u0(f_);
        for (int k = 0; k < f_; ++k) u0[k] = eis_[k] / p_;
        const Coeffs u0inv = w_inverse(u0);
        Coeffs s(static_cast<std::size_t>(e_) * f_, 0);
        s[(e_ - 1) * f_] = 1;
        for (int i = 1; i < e_; ++i)
            for (int k = 0; k < f_; ++k)
                s[(i - 1) * f_ + k] = detail::add_mod(s[(i - 1) * f_ + k], eis_[i * f_ + k], mod_);
        p_over_pi_.assign(s.size(), 0);
        Coeffs prod(f_);
        for (int i = 0; i < e_; ++i) {
            w_mul(u0inv.data(), s.data() + i * f_, prod.data());
            for (int k = 0; k < f_; ++k) p_over_pi_[i * f_ + k] = detail::sub_mod(0, prod[k], mod_);
        }
    }

    int valuation(const Coeffs& a, int cap) const
    {
        int v = kInfinity;
        for (int i = 0; i < e_; ++i) {
            const int w = w_vp(a.data() + i * f_);
            if (w < m_) v = std::min(v, e_ * w + i);
        }
        return v >= cap ? kInfinity : v;
    }

    Coeffs digit_coeffs(std::uint64_t d) const
    {
        Coeffs c(static_cast<std::size_t>(e_) * f_, 0);
        for (int k = 0; k < f_; ++k) {
            c[k] = static_cast<std::int64_t>(d % static_cast<std::uint64_t>(p_));
            d /= static_cast<std::uint64_t>(p_);
        }
        return c;
    }

    std::uint64_t leading_digit(const Coeffs& a) const
    {
        std::uint64_t d = 0;
        for (int k = f_ - 1; k >= 0; --k) d = d * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(a[k] % p_);
        return d;
    }

    std::vector<int> digits(Coeffs a, int n) const
    {
        std::vector<int> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const std::uint64_t d = leading_digit(a);
            out[i] = static_cast<int>(d);
            const Coeffs dc = digit_coeffs(d);
            for (int k = 0; k < f_; ++k) a[k] = detail::sub_mod(a[k], dc[k], mod_);
            if (i + 1 < n) a = div_pi(a);
        }
        return out;
    }

private:
    RingSpec() = default;

    std::int64_t p_ = 0;
    int f_ = 0;
    int e_ = 0;
    int n_ = 0;
    int m_ = 0;
    std::int64_t mod_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::int64_t> unram_;
    std::vector<std::int64_t> unram_literal_;
    std::vector<std::vector<std::int64_t>> eis_literal_;
    Coeffs eis_;
    Coeffs p_over_pi_;
};

/// An integer of K known modulo pi^known_prec.
class Element {
public:
    Element() = default;

    Element(RingPtr ring, Coeffs coeffs, int prec) : ring_(std::move(ring)), c_(std::move(coeffs)), prec_(prec) {}

    static Element zero(const RingPtr& r) { return {r, Coeffs(r->width(), 0), r->precision()}; }

    static Element one(const RingPtr& r) { return from_int(r, 1); }

    static Element from_int(const RingPtr& r, std::int64_t v)
    {
        Coeffs c(r->width(), 0);
        c[0] = detail::mod_norm(v, r->modulus());
        return {r, std::move(c), r->precision()};
    }

    static Element uniformizer(const RingPtr& r)
    {
        if (r->e() == 1) {
            // pi = -a_0 when E(x) = x + a_0.
            Coeffs c(r->width());
            for (int k = 0; k < r->f(); ++k) c[k] = detail::sub_mod(0, r->eis_coeffs()[k], r->modulus());
            return {r, std::move(c), r->precision()};
        }
        Coeffs c(r->width(), 0);
        c[r->f()] = 1;
        return {r, std::move(c), r->precision()};
    }

    /// sum_i d_i pi^i with d_i residue digits in [0, q).
    static Element from_digits(const RingPtr& r, std::span<const int> digits)
    {
        Coeffs acc(r->width(), 0);
        for (std::size_t i = digits.size(); i-- > 0;) {
            acc = r->mul_pi(acc);
            const Coeffs d = r->digit_coeffs(static_cast<std::uint64_t>(digits[i]));
            for (int k = 0; k < r->f(); ++k) acc[k] = detail::add_mod(acc[k], d[k], r->modulus());
        }
        return {r, std::move(acc), r->precision()};
    }

    /// sum_i c_i pi^i with each c_i an integer polynomial in y.
    static Element from_literal(const RingPtr& r, const std::vector<std::vector<std::int64_t>>& pi_coeffs)
    {
        Coeffs acc(r->width(), 0);
        for (std::size_t i = pi_coeffs.size(); i-- > 0;) {
            acc = r->mul_pi(acc);
            const Coeffs w = r->w_from_ints(pi_coeffs[i]);
            for (int k = 0; k < r->f(); ++k) acc[k] = detail::add_mod(acc[k], w[k], r->modulus());
        }
        return {r, std::move(acc), r->precision()};
    }

    /// Residue digit d in [0, q) viewed as an element of C.
    static Element digit(const RingPtr& r, std::uint64_t d) { return {r, r->digit_coeffs(d), r->precision()}; }

    bool valid() const noexcept { return static_cast<bool>(ring_); }
    const RingSpec& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }
    const Coeffs& coeffs() const noexcept { return c_; }
    int known_prec() const noexcept { return prec_; }

    /// Index of the first nonzero digit, or kInfinity when every known digit vanishes.
    int val() const { return ring_->valuation(c_, prec_); }
    bool is_zero() const { return val() == kInfinity; }
    bool is_unit() const { return prec_ > 0 && val() == 0; }

    std::vector<int> digits() const { return ring_->digits(c_, prec_); }

    std::vector<int> digits(int n) const
    {
        if (n > prec_)
            fail(errc::precision_exceeded,
                 "requested " + std::to_string(n) + " digits of an element known to " + std::to_string(prec_));
        return ring_->digits(c_, n);
    }

    /// First digit, i.e. the image in the residue field.
    std::uint64_t residue() const
    {
        if (prec_ < 1) fail(errc::precision_exceeded, "element carries no digits");
        return ring_->leading_digit(c_);
    }

    Element truncated(int n) const { return {ring_, c_, std::min(prec_, n)}; }

    Element operator-() const
    {
        Coeffs r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = detail::sub_mod(0, c_[i], ring_->modulus());
        return {ring_, std::move(r), prec_};
    }

    friend Element operator+(const Element& a, const Element& b)
    {
        check_same(a, b);
        Coeffs r(a.c_.size());
        const auto m = a.ring_->modulus();
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = detail::add_mod(a.c_[i], b.c_[i], m);
        return {a.ring_, std::move(r), std::min(a.prec_, b.prec_)};
    }

    friend Element operator-(const Element& a, const Element& b)
    {
        check_same(a, b);
        Coeffs r(a.c_.size());
        const auto m = a.ring_->modulus();
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = detail::sub_mod(a.c_[i], b.c_[i], m);
        return {a.ring_, std::move(r), std::min(a.prec_, b.prec_)};
    }

    friend Element operator*(const Element& a, const Element& b)
    {
        check_same(a, b);
        return {a.ring_, a.ring_->mul(a.c_, b.c_), std::min(a.prec_, b.prec_)};
    }

    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator-=(const Element& o) { return *this = *this - o; }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    /// Equal at the smaller of the two known precisions.
    friend bool operator==(const Element& a, const Element& b) { return (a - b).val() == kInfinity; }

    Element pow(std::uint64_t k) const
    {
        Element r = one(ring_).truncated(prec_);
        Element b = *this;
        while (k > 0) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    /// Multiplication by pi^n gains n digits of precision, capped at N.
    Element mul_pi_pow(int n) const
    {
        Coeffs r = c_;
        for (int i = 0; i < n; ++i) r = ring_->mul_pi(r);
        return {ring_, std::move(r), std::min(ring_->precision(), prec_ + n)};
    }

    /// Exact division by pi^n; consumes n digits of precision.
    Element div_pi_pow(int n) const
    {
        if (n > prec_)
            fail(errc::precision_exhausted,
                 "division by pi^" + std::to_string(n) + " of an element known to " + std::to_string(prec_));
        const int v = val();
        if (v < n) fail(errc::not_divisible, "valuation " + std::to_string(v) + " < " + std::to_string(n));
        Coeffs r = c_;
        for (int i = 0; i < n; ++i) r = ring_->div_pi(r);
        return {ring_, std::move(r), prec_ - n};
    }

private:
    static void check_same(const Element& a, const Element& b)
    {
        if (!a.ring_ || !b.ring_ || !a.ring_->same_as(*b.ring_))
            fail(errc::ring_mismatch, "operands belong to different rings");
    }

    RingPtr ring_;
    Coeffs c_;
    int prec_ = 0;
};

inline int val(const Element& a) { return a.val(); }

/// Inverse of a unit by Newton iteration x <- x(2 - ax).
inline Element invert(const Element& a)
{
    if (a.known_prec() < 1 || a.val() != 0) fail(errc::not_a_unit, "element is not a unit at its known precision");
    const RingPtr& r = a.ring_ptr();
    const std::uint64_t q = r->residue_size();
    Element x = q == 2 ? Element::one(r) : a.pow(q - 2);
    const Element two = Element::from_int(r, 2);
    for (int reached = 1; reached < r->precision() + r->e(); reached *= 2) x = x * (two - a * x);
    return x.truncated(a.known_prec());
}

inline ResidueClass reduce(const Element& a, int n)
{
    if (n > a.known_prec())
        fail(errc::precision_exceeded,
             "cannot reduce mod pi^" + std::to_string(n) + " an element known to " + std::to_string(a.known_prec()));
    const auto& r = a.ring();
    (void)r.residue_count(n);
    const auto d = a.digits(n);
    std::uint64_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * r.residue_size() + static_cast<std::uint64_t>(d[i]);
    return {n, idx};
}

/// Canonical representative of a residue class: its digits followed by zeros.
inline Element lift(const RingPtr& r, const ResidueClass& c)
{
    const auto d = r->residue_digits(c);
    return Element::from_digits(r, d);
}

inline Element random_element(const RingPtr& r, std::mt19937_64& rng, int min_val = 0)
{
    std::vector<int> d(static_cast<std::size_t>(r->precision()), 0);
    for (std::size_t i = static_cast<std::size_t>(std::max(0, min_val)); i < d.size(); ++i)
        d[i] = static_cast<int>(rng() % r->residue_size());
    return Element::from_digits(r, d);
}

inline Element random_unit(const RingPtr& r, std::mt19937_64& rng)
{
    Element x = random_element(r, rng);
    if (x.residue() != 0) return x;
    return x + Element::digit(r, 1 + rng() % (r->residue_size() - 1));
}

/// Largest s such that K can contain a primitive p^s-th root of unity,
/// i.e. p^{s-1}(p-1) <= e.
inline int max_p_power_root_exponent(const RingSpec& r)
{
    int s = 0;
    std::int64_t phi = r.p() - 1;
    while (phi <= r.e()) {
        ++s;
        phi *= r.p();
    }
    return s;
}

/// Every root of unity of K satisfies x^m = 1 for m = (q - 1) p^s.
inline std::uint64_t torsion_exponent(const RingSpec& r)
{
    std::uint64_t m = r.residue_size() - 1;
    for (int i = 0; i < max_p_power_root_exponent(r); ++i) m *= static_cast<std::uint64_t>(r.p());
    return m;
}

/// Q_p(pi) presented with u = the lexicographically first monic irreducible
/// polynomial of degree f over F_p and E(x) = x^e - p.
inline RingPtr make_standard_ring(std::int64_t p, int f, int e, int precision)
{
    std::vector<std::int64_t> u;
    if (f == 1) {
        u = {0, 1};
    } else {
        if (!detail::is_prime(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
        detail::FpPoly cand(static_cast<std::size_t>(f) + 1, 0);
        cand[f] = 1;
        for (;;) {
            if (detail::fp_irreducible(cand, p)) break;
            std::size_t i = 0;
            while (i < static_cast<std::size_t>(f) && ++cand[i] == p) cand[i++] = 0;
            if (i == static_cast<std::size_t>(f)) fail(errc::not_irreducible, "no irreducible polynomial found");
        }
        u = cand;
    }
    std::vector<std::vector<std::int64_t>> eis(static_cast<std::size_t>(e) + 1, std::vector<std::int64_t>{0});
    eis[0] = {-p};
    eis[e] = {1};
    return RingSpec::create(p, f, std::move(u), e, std::move(eis), precision);
}

} // namespace padyn
