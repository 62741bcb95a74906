#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padyn/ring.hpp"

using namespace padyn;

namespace {

RingPtr z2(int n = 8) { return make_standard_ring(2, 1, 1, n); }
RingPtr z3(int n = 8) { return make_standard_ring(3, 1, 1, n); }
RingPtr q2s(int n = 8) { return make_standard_ring(2, 1, 2, n); }
RingPtr q4(int n = 8) { return make_standard_ring(2, 2, 1, n); }

std::string digits_of(const Element& x, int n) { return x.ring().format_digits(x.digits(n)); }

errc code_of(auto&& f)
{
    try {
        f();
    } catch (const error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return errc::invalid_input;
}

} // namespace

TEST(RingSpec, BuildsBaseAndExtensions)
{
    auto a = RingSpec::create(2, 1, {0, 1}, 1, {{-2}, {1}}, 8);
    EXPECT_EQ(a->degree(), 1);
    EXPECT_EQ(a->residue_size(), 2u);
    auto b = RingSpec::create(2, 1, {0, 1}, 2, {{-2}, {0}, {1}}, 8);
    EXPECT_EQ(b->e(), 2);
    EXPECT_EQ(b->degree(), 2);
    auto c = RingSpec::create(2, 2, {1, 1, 1}, 1, {{-2}, {1}}, 8);
    EXPECT_EQ(c->f(), 2);
    EXPECT_EQ(c->residue_size(), 4u);
    EXPECT_EQ(c->degree(), 2);
}

TEST(RingSpec, RejectsBadData)
{
    EXPECT_EQ(code_of([] { RingSpec::create(4, 1, {0, 1}, 1, {{-4}, {1}}, 8); }), errc::not_prime);
    EXPECT_EQ(code_of([] { RingSpec::create(2, 2, {1, 0, 1}, 1, {{-2}, {1}}, 8); }), errc::not_irreducible);
    EXPECT_EQ(code_of([] { RingSpec::create(2, 1, {0, 1}, 2, {{-4}, {0}, {1}}, 8); }), errc::not_eisenstein);
    EXPECT_EQ(code_of([] { RingSpec::create(2, 1, {0, 1}, 2, {{-2}, {1}, {1}}, 8); }), errc::not_eisenstein);
    EXPECT_EQ(code_of([] { RingSpec::create(2, 1, {0, 1}, 2, {{-2}, {0}, {1}}, 3); }), errc::precision_too_small);
    EXPECT_EQ(code_of([] { RingSpec::create(2, 1, {0, 1}, 1, {{-2}, {1}}, 70); }), errc::precision_too_large);
}

TEST(RingSpec, IrreducibilityAgreesWithRootSearchForQuadratics)
{
    // a quadratic over F_p is irreducible iff it has no root
    for (std::int64_t p : {2, 3, 5})
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b) {
                bool root = false;
                for (std::int64_t x = 0; x < p; ++x) root = root || (x * x + b * x + a) % p == 0;
                bool built = true;
                try {
                    RingSpec::create(p, 2, {a, b, 1}, 1, {{-p}, {1}}, 6);
                } catch (const error& e) {
                    EXPECT_EQ(e.code(), errc::not_irreducible);
                    built = false;
                }
                EXPECT_EQ(built, !root) << "p=" << p << " a=" << a << " b=" << b;
            }
}

TEST(Element, AdditionAndMultiplication)
{
    auto r = z2();
    EXPECT_EQ(digits_of(Element::from_int(r, 1) + Element::from_int(r, 1), 2), "01");
    auto s = q2s();
    const auto pi = Element::uniformizer(s);
    EXPECT_EQ(pi * pi, Element::from_int(s, 2));
    EXPECT_EQ((pi * pi).val(), 2);
    auto t = z3();
    EXPECT_EQ(digits_of(Element::from_int(t, 4) * Element::from_int(t, 7), 4), "1001");
    EXPECT_EQ(-Element::from_int(t, 1) + Element::one(t), Element::zero(t));
}

TEST(Element, Valuation)
{
    for (auto r : {z2(), z3(), q2s(), q4()}) {
        EXPECT_EQ(Element::from_int(r, r->p()).val(), r->e());
        EXPECT_EQ(Element::one(r).val(), 0);
        EXPECT_EQ(Element::zero(r).val(), kInfinity);
    }
    auto s = q2s();
    EXPECT_EQ((Element::from_int(s, 2) + Element::uniformizer(s)).val(), 1);
}

TEST(Element, InverseMatchesExtendedEuclid)
{
    auto r = make_standard_ring(2, 1, 1, 4);
    EXPECT_EQ(digits_of(invert(Element::from_int(r, 3)), 4), "1101");
    EXPECT_EQ(invert(Element::one(r)), Element::one(r));
    auto t = make_standard_ring(3, 1, 1, 3);
    const auto inv2 = invert(Element::from_int(t, 2));
    EXPECT_EQ(reduce(inv2, 3).index, 14u);
    for (std::int64_t p : {2, 3, 5, 7}) {
        auto rp = make_standard_ring(p, 1, 1, 6);
        const auto m = oracle::ipow(p, 6);
        for (std::int64_t a = 1; a < 200; ++a) {
            if (a % p == 0) continue;
            EXPECT_EQ(static_cast<std::int64_t>(reduce(invert(Element::from_int(rp, a)), 6).index), oracle::inverse_mod(a, m))
                << "p=" << p << " a=" << a;
        }
    }
    EXPECT_THROW(invert(Element::from_int(r, 2)), error);
}

TEST(Element, ReduceAndLift)
{
    auto r = z2();
    const auto c = reduce(Element::from_int(r, 6), 2);
    EXPECT_EQ(r->format_residue(c), "01");
    auto s = q2s();
    EXPECT_EQ(s->format_residue(reduce(Element::uniformizer(s) * Element::uniformizer(s), 1)), "0");
    for (auto ring : {z2(), z3(), q2s(), q4()})
        for (int n = 0; n <= 3; ++n)
            for (std::uint64_t i = 0; i < ring->residue_count(n); ++i) {
                const ResidueClass rc{n, i};
                EXPECT_EQ(reduce(lift(ring, rc), n), rc);
            }
    EXPECT_EQ(code_of([&] { reduce(Element::one(r), 9); }), errc::precision_exceeded);
}

TEST(Element, ResidueIndexIsIntegerValueInQp)
{
    for (std::int64_t p : {2, 3, 5}) {
        auto r = make_standard_ring(p, 1, 1, 6);
        for (std::int64_t v = 0; v < 300; ++v)
            EXPECT_EQ(static_cast<std::int64_t>(reduce(Element::from_int(r, v), 4).index), v % oracle::ipow(p, 4));
    }
}

TEST(Element, AgreesWithNaiveArithmetic)
{
    std::mt19937_64 rng(11);
    for (auto r : {z2(12), z3(10), q2s(12), q4(10), make_standard_ring(3, 2, 1, 8), make_standard_ring(3, 1, 2, 10)}) {
        const oracle::Field F(r->p(), r->f(), r->e(), r->precision() / r->e() + 2, r->unram_poly());
        const int n = r->precision() - 1;
        for (int trial = 0; trial < 40; ++trial) {
            const std::uint64_t ia = rng() % r->residue_count(3), ib = rng() % r->residue_count(3);
            const Element a = lift(r, {3, ia}), b = lift(r, {3, ib});
            const auto A = F.from_index(ia, 3), B = F.from_index(ib, 3);
            std::vector<int> want;
            for (auto d : F.digits(F.mul(F.add(A, B), F.sub(A, B)), n)) want.push_back(static_cast<int>(d));
            EXPECT_EQ(((a + b) * (a - b)).digits(n), want);
        }
    }
}

TEST(Element, PrecisionLedger)
{
    auto r = z2(8);
    const auto x = Element::from_int(r, 12);
    const auto y = x.div_pi_pow(2);
    EXPECT_EQ(y, Element::from_int(r, 3));
    EXPECT_EQ(y.known_prec(), 6);
    EXPECT_EQ(code_of([&] { x.div_pi_pow(3); }), errc::not_divisible);
    EXPECT_EQ(code_of([&] { y.digits(7); }), errc::precision_exceeded);
    EXPECT_EQ(code_of([&] { Element::zero(r).div_pi_pow(9); }), errc::precision_exhausted);
    EXPECT_EQ(code_of([&] { (void)(Element::one(r) + Element::one(z3())); }), errc::ring_mismatch);
}

TEST(Element, ValuationIsAdditive)
{
    std::mt19937_64 rng(3);
    for (auto r : {z2(12), q2s(12), q4(10)})
        for (int i = 0; i < 100; ++i) {
            const auto a = random_element(r, rng, static_cast<int>(rng() % 3));
            const auto b = random_element(r, rng, static_cast<int>(rng() % 3));
            if (a.val() + b.val() < r->precision() - 2) {
                EXPECT_EQ((a * b).val(), a.val() + b.val());
            }
        }
}

TEST(Element, UnramifiedTeichmullerCube)
{
    auto r = q4(8);
    const auto y = Element::from_literal(r, {{0, 1}});
    EXPECT_EQ(y.pow(3), Element::one(r));
    EXPECT_EQ(reduce(y, 1).index, 2u);
}

TEST(Element, TorsionExponent)
{
    // (q - 1) p^s with s the largest exponent such that p^{s-1}(p-1) <= e
    EXPECT_EQ(torsion_exponent(*z2()), 2u);
    EXPECT_EQ(torsion_exponent(*z3()), 2u);
    EXPECT_EQ(torsion_exponent(*q2s()), 4u);
    EXPECT_EQ(torsion_exponent(*q4()), 6u);
}
