#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padyn/finite_dynamics.hpp"

using namespace padyn;

namespace {

ConvergentSeries poly(const RingPtr& r, std::vector<std::int64_t> c) { return ConvergentSeries::from_ints(r, c); }

std::vector<std::uint64_t> table(const ConvergentSeries& phi, int n)
{
    const auto m = induce(phi, n);
    std::vector<std::uint64_t> t;
    for (std::uint64_t i = 0; i < m.size(); ++i) t.push_back(m(i));
    return t;
}

} // namespace

TEST(Induce, SmallTables)
{
    auto r = make_standard_ring(2, 1, 1, 10);
    EXPECT_EQ(table(poly(r, {1, 1}), 2), (std::vector<std::uint64_t>{1, 2, 3, 0}));
    EXPECT_EQ(table(poly(r, {0, 0, 1}), 2), (std::vector<std::uint64_t>{0, 1, 0, 1}));
    EXPECT_EQ(table(poly(r, {0, 3}), 2), (std::vector<std::uint64_t>{0, 3, 2, 1}));
}

TEST(Induce, LazyBeyondCap)
{
    auto r = make_standard_ring(2, 1, 1, 20);
    const auto m = induce(poly(r, {1, 1}), 6, 32);
    EXPECT_FALSE(m.materialized());
    EXPECT_EQ(m(63), 0u);
    EXPECT_THROW(find_cycles(m), error);
    EXPECT_TRUE(induce(poly(r, {1, 1}), 5, 32).materialized());
}

TEST(Induce, CapFromEnvironment)
{
    ::setenv("PADIC_MAX_TABLE", "16", 1);
    EXPECT_EQ(table_cap(), 16u);
    ::unsetenv("PADIC_MAX_TABLE");
    EXPECT_EQ(table_cap(), std::uint64_t{1} << 20);
}

TEST(FindCycles, Examples)
{
    auto r2 = make_standard_ring(2, 1, 1, 10);
    auto g = find_cycles(induce(poly(r2, {1, 1}), 1));
    ASSERT_EQ(g.cycles.size(), 1u);
    EXPECT_EQ(g.cycles[0].reps, (std::vector<std::uint64_t>{0, 1}));

    g = find_cycles(induce(poly(r2, {0, 0, 1}), 2));
    ASSERT_EQ(g.cycles.size(), 2u);
    EXPECT_EQ(g.cycles[0].reps, (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(g.cycles[1].reps, (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(g.tail_count(), 2u);
    EXPECT_EQ(g.cycle_of[2], 0u);
    EXPECT_EQ(g.cycle_of[3], 1u);

    auto r3 = make_standard_ring(3, 1, 1, 10);
    g = find_cycles(induce(poly(r3, {0, 2}), 1));
    ASSERT_EQ(g.cycles.size(), 2u);
    EXPECT_EQ(g.cycles[0].reps, (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(g.cycles[1].reps, (std::vector<std::uint64_t>{1, 2}));
}

TEST(FindCycles, AgreesWithBruteForce)
{
    std::mt19937_64 rng(21);
    for (auto r : {make_standard_ring(2, 1, 1, 10), make_standard_ring(3, 1, 1, 10), make_standard_ring(2, 1, 2, 10),
                   make_standard_ring(2, 2, 1, 10)}) {
        const oracle::Field F(r->p(), r->f(), r->e(), 12, r->unram_poly());
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Element> c;
            oracle::Poly op;
            for (int i = 0; i < 4; ++i) {
                const auto idx = rng() % r->residue_count(3);
                c.push_back(lift(r, {3, idx}));
                op.c.push_back(F.from_index(idx, 3));
            }
            const auto phi = ConvergentSeries::polynomial(r, c);
            for (int n = 1; n <= 3; ++n) {
                const auto bt = oracle::level_table(F, op, n);
                EXPECT_EQ(table(phi, n), bt);
                const auto bg = oracle::functional_graph(bt);
                const auto g = find_cycles(induce(phi, n));
                ASSERT_EQ(g.cycles.size(), bg.cycles.size());
                EXPECT_EQ(g.tail_count(), bg.tails);
                for (const auto& cy : g.cycles) {
                    const auto& want = bg.cycles[bg.cycle_of.at(cy.reps.front())];
                    EXPECT_EQ(std::set<std::uint64_t>(cy.reps.begin(), cy.reps.end()), want);
                    for (std::size_t j = 0; j < cy.length(); ++j)
                        EXPECT_EQ(bt[cy.reps[j]], cy.reps[(j + 1) % cy.length()]);
                }
            }
        }
    }
}

TEST(Invariants, MultiplicationByThree)
{
    auto r = make_standard_ring(2, 1, 1, 12);
    const auto phi = poly(r, {0, 3});
    const auto g = find_cycles(induce(phi, 1));
    const auto inv0 = invariants(phi, g.cycles[0]);
    EXPECT_EQ(inv0.a, Element::from_int(r, 3));
    EXPECT_EQ(inv0.B, kInfinity);
    EXPECT_EQ(classify(inv0).kind, CycleClass::splits);
    const auto inv1 = invariants(phi, g.cycles[1]);
    EXPECT_EQ(inv1.b, Element::one(r));
    EXPECT_EQ(inv1.A, 1);
    EXPECT_EQ(inv1.B, 0);
    EXPECT_EQ(classify(inv1).kind, CycleClass::grows);
}

TEST(Invariants, LinearMapAtZero)
{
    std::mt19937_64 rng(4);
    for (auto r : {make_standard_ring(2, 1, 2, 12), make_standard_ring(2, 2, 1, 12), make_standard_ring(5, 1, 1, 10)}) {
        const auto alpha = random_unit(r, rng);
        const auto phi = ConvergentSeries::polynomial(r, {Element::zero(r), alpha});
        const auto inv = invariants(phi, Cycle{1, {0}});
        EXPECT_EQ(inv.a, alpha);
        EXPECT_TRUE(inv.b.is_zero());
    }
}

TEST(Invariants, NeedPrecision)
{
    auto r = make_standard_ring(2, 1, 1, 7);
    const auto phi = poly(r, {1, 1});
    try {
        invariants(phi, Cycle{3, {0, 1, 2, 3, 4, 5, 6, 7}});
        ADD_FAILURE();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::precision_exhausted);
    }
}

TEST(Classify, Examples)
{
    auto r2 = make_standard_ring(2, 1, 1, 12);
    const auto sq = poly(r2, {0, 0, 1});
    EXPECT_EQ(classify(invariants(sq, Cycle{1, {0}})).kind, CycleClass::grows_tails);
    auto r3 = make_standard_ring(3, 1, 1, 12);
    const auto c = classify(invariants(poly(r3, {0, 2}), Cycle{1, {0}}));
    EXPECT_EQ(c.kind, CycleClass::partially_splits);
    EXPECT_EQ(c.ell, 2);
    EXPECT_EQ(c.fixed_digit, 0u);
}

TEST(Lift, Examples)
{
    auto r2 = make_standard_ring(2, 1, 1, 12);
    const auto phi = poly(r2, {0, 3});
    const Cycle zero{1, {0}};
    const auto res = lift(phi, zero, classify(invariants(phi, zero)));
    ASSERT_EQ(res.cycles.size(), 2u);
    EXPECT_EQ(res.cycles[0].reps, (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(res.cycles[1].reps, (std::vector<std::uint64_t>{2}));

    const auto grow = lift(phi, Cycle{1, {1}}, Classification{CycleClass::grows, 1, 0});
    ASSERT_EQ(grow.cycles.size(), 1u);
    EXPECT_EQ(grow.cycles[0].length(), 2u);

    auto r3 = make_standard_ring(3, 1, 1, 12);
    const auto psi = poly(r3, {0, 2});
    const auto ps = lift(psi, zero, classify(invariants(psi, zero)));
    ASSERT_EQ(ps.cycles.size(), 2u);
    EXPECT_EQ(ps.cycles[0].reps, (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(ps.cycles[1].reps, (std::vector<std::uint64_t>{3, 6}));
}

TEST(Lift, WrongClassIsCaught)
{
    auto r2 = make_standard_ring(2, 1, 1, 12);
    const auto phi = poly(r2, {0, 3});
    try {
        lift(phi, Cycle{1, {0}}, Classification{CycleClass::grows, 1, 0});
        ADD_FAILURE();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::classification_mismatch);
    }
}

TEST(Linearize, Examples)
{
    auto r3 = make_standard_ring(3, 1, 1, 12);
    CycleInvariants inv{Element::one(r3), Element::zero(r3), 0, 0, 0, 1, 1};
    for (std::uint64_t t = 0; t < 3; ++t) EXPECT_EQ(linearize(inv, t), t);
    inv.a = Element::zero(r3);
    inv.b = Element::from_int(r3, 2);
    for (std::uint64_t t = 0; t < 3; ++t) EXPECT_EQ(linearize(inv, t), 2u);
    // Psi^l(t) - t = (a^l - 1)(t + b/(a - 1)) with a = 2, b = 1, l = 2 mod 3
    inv.a = Element::from_int(r3, 2);
    inv.b = Element::one(r3);
    for (std::int64_t t = 0; t < 3; ++t) {
        const auto twice = linearize(inv, linearize(inv, static_cast<std::uint64_t>(t)));
        // b/(a - 1) = 1, a^2 - 1 = 3 = 0 mod 3, so Psi^2 is the identity
        EXPECT_EQ(static_cast<std::int64_t>(twice), t);
        const std::int64_t direct = ((2 * t + 1) % 3 * 2 + 1) % 3;
        EXPECT_EQ(static_cast<std::int64_t>(twice), direct);
    }
}

TEST(Census, ClassIdentitiesOnRandomMaps)
{
    std::mt19937_64 rng(31);
    for (auto r : {make_standard_ring(2, 1, 1, 12), make_standard_ring(3, 1, 1, 12), make_standard_ring(2, 1, 2, 12),
                   make_standard_ring(2, 2, 1, 12), make_standard_ring(5, 1, 1, 12)}) {
        const auto q = static_cast<std::size_t>(r->residue_size());
        const auto p = static_cast<std::size_t>(r->p());
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<Element> c;
            for (int i = 0; i < 5; ++i) c.push_back(random_element(r, rng));
            const auto phi = ConvergentSeries::polynomial(r, c);
            for (int n = 1; n <= 2; ++n)
                for (const auto& cy : find_cycles(induce(phi, n)).cycles) {
                    const auto cls = classify(invariants(phi, cy));
                    const auto got = lift_cycle(phi, cy).census();
                    const std::size_t k = cy.length();
                    switch (cls.kind) {
                    case CycleClass::grows: EXPECT_EQ(got, (LiftCensus{{{p * k, q / p}}, 0})); break;
                    case CycleClass::splits: EXPECT_EQ(got, (LiftCensus{{{k, q}}, 0})); break;
                    case CycleClass::grows_tails: EXPECT_EQ(got, (LiftCensus{{{k, 1}}, k * q - k})); break;
                    case CycleClass::partially_splits: {
                        const auto l = static_cast<std::size_t>(cls.ell);
                        EXPECT_EQ(got, (LiftCensus{{{k, 1}, {k * l, (q - 1) / l}}, 0}));
                        break;
                    }
                    }
                }
        }
    }
}

TEST(Invariants, AHatIsWitnessIndependent)
{
    std::mt19937_64 rng(41);
    for (auto r : {make_standard_ring(2, 1, 1, 14), make_standard_ring(2, 1, 2, 14), make_standard_ring(2, 2, 1, 14)}) {
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<Element> c;
            for (int i = 0; i < 4; ++i) c.push_back(random_element(r, rng));
            const auto phi = ConvergentSeries::polynomial(r, c);
            const auto dphi = derivative(phi);
            for (int n = 1; n <= 2; ++n)
                for (const auto& cy : find_cycles(induce(phi, n)).cycles) {
                    const auto base = invariants(phi, dphi, cy);
                    for (auto rep : cy.reps)
                        for (std::uint64_t t = 0; t < r->residue_size(); ++t) {
                            const auto x = lift(r, {n, rep}) + Element::digit(r, t).mul_pi_pow(n);
                            const auto inv = point_invariants(phi, dphi, x, cy.length(), n);
                            EXPECT_EQ(inv.A_hat, base.A_hat);
                            EXPECT_EQ(inv.a.truncated(n), base.a.truncated(n));
                            EXPECT_EQ(std::min(inv.B, base.A_hat), std::min(base.B, base.A_hat));
                        }
                }
        }
    }
}

TEST(Invariants, MinBNDependsOnWitnessWhenMultiplierIsNotOne)
{
    // y x on the unramified quadratic extension of Q_2: b_1(0) = 0 but
    // b_1(2) = y - 1 is a unit, so only min(B, A_hat) is an invariant.
    auto r = make_standard_ring(2, 2, 1, 12);
    const auto phi = ConvergentSeries::polynomial(r, {Element::zero(r), Element::from_literal(r, {{0, 1}})});
    const auto dphi = derivative(phi);
    const auto at0 = point_invariants(phi, dphi, Element::zero(r), 1, 1);
    const auto at2 = point_invariants(phi, dphi, Element::from_int(r, 2), 1, 1);
    EXPECT_EQ(at0.a.val(), 0);
    EXPECT_EQ(std::min(at0.B, 1), 1);
    EXPECT_EQ(std::min(at2.B, 1), 0);
    EXPECT_EQ(std::min(at0.B, at0.A_hat), std::min(at2.B, at2.A_hat));
}
