#pragma once

// Seeded property suites run by `padyn verify`. Each property reports a
// trial count and, on failure, the first counterexample.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "padyn/io.hpp"

namespace padyn {

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// "none" or "classify": corrupt every classification before the lift census check.
    std::string inject = "none";
    int precision = 16;
};

struct Counterexample {
    std::string detail;
    std::optional<ConvergentSeries> map;
    std::optional<ResidueClass> residue;
};

struct PropertyResult {
    std::string name;
    std::string ring;
    std::size_t trials = 0;
    std::optional<Counterexample> failure;

    bool passed() const { return !failure.has_value(); }
};

inline std::string ring_label(const RingSpec& r)
{
    return "p=" + std::to_string(r.p()) + ",e=" + std::to_string(r.e()) + ",f=" + std::to_string(r.f());
}

/// A polynomial of degree 1..max_degree with random coefficients.
inline ConvergentSeries random_polynomial(const RingPtr& r, std::mt19937_64& rng, int max_degree)
{
    const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree));
    std::vector<Element> c;
    for (int i = 0; i <= d; ++i) c.push_back(random_element(r, rng));
    return ConvergentSeries::polynomial(r, std::move(c));
}

/// Agreement of the engine with the closed form of a case-C affine map on the
/// unit sphere: component count, base length and E prefix to depth e_depth.
inline CheckReport affine_engine_agreement(const Literal& alpha, const RingPtr& r, int e_depth = 4)
{
    const auto rep = affine_classify(alpha, literal_from_int(0), r);
    if (rep.kind != AffineCase::minimal) return {false, "alpha is not in case C"};
    const int L = std::min(r->analysis_budget(), rep.v_star + 6);
    if (L < rep.v_star + 1) return {false, "v* = " + std::to_string(rep.v_star) + " is beyond the analysis budget"};
    const auto phi = ConvergentSeries::polynomial(r, {Element::zero(r), Element::from_literal(r, alpha)});
    const auto t = decompose(phi, L);
    const std::uint64_t q = r->residue_size();
    std::size_t count = 0;
    for (const auto& n : t.nodes) {
        if (n.level != rep.v_star || n.basin || !n.cls || n.reps.front() % q == 0) continue;
        ++count;
        const auto ty = infer_type(t, n.id);
        if (!ty) return {false, "no type read at " + r->format_residue({n.level, n.reps.front()})};
        if (ty->k != rep.ell || !(ty->E.head(e_depth) == rep.type->E.head(e_depth)))
            return {false, "node " + r->format_residue({n.level, n.reps.front()}) + " has type (" +
                               std::to_string(ty->k) + ", " + to_string(ty->E) + "), closed form (" +
                               std::to_string(rep.ell) + ", " + to_string(rep.type->E) + ")"};
    }
    if (count != rep.component_count)
        return {false, "engine found " + std::to_string(count) + " unit-sphere components at level " +
                           std::to_string(rep.v_star) + ", closed form " + std::to_string(rep.component_count)};
    return {};
}

namespace detail {

class Suite {
public:
    Suite(RingPtr r, const VerifyOptions& opt) : r_(std::move(r)), opt_(opt), rng_(opt.seed) {}

    std::vector<PropertyResult> run()
    {
        prop("ring.axioms", [&](PropertyResult& pr) { ring_axioms(pr); });
        prop("ring.digit_roundtrip", [&](PropertyResult& pr) { digit_roundtrip(pr); });
        prop("series.iterate", [&](PropertyResult& pr) { iterate_agrees(pr); });
        prop("series.weierstrass", [&](PropertyResult& pr) { weierstrass(pr); });
        prop("dynamics.brute_cycles", [&](PropertyResult& pr) { brute_cycles(pr); });
        prop("dynamics.lift_census", [&](PropertyResult& pr) { lift_census(pr); });
        prop("dynamics.congruences", [&](PropertyResult& pr) { congruences(pr); });
        prop("dynamics.witness_independence", [&](PropertyResult& pr) { witness_independence(pr); });
        prop("engine.partition", [&](PropertyResult& pr) { partition(pr); });
        prop("affine.engine_agreement", [&](PropertyResult& pr) { affine_agreement(pr); });
        return std::move(out_);
    }

private:
    template <class F>
    void prop(const char* name, F body)
    {
        PropertyResult pr{name, ring_label(*r_), 0, std::nullopt};
        try {
            body(pr);
        } catch (const error& ex) {
            pr.failure = Counterexample{ex.what(), cur_map_, cur_res_};
        }
        cur_map_.reset();
        cur_res_.reset();
        out_.push_back(std::move(pr));
    }

    void expect(PropertyResult& pr, bool ok, const std::string& msg)
    {
        if (!ok && !pr.failure) pr.failure = Counterexample{msg, cur_map_, cur_res_};
    }

    ConvergentSeries next_map(int max_degree)
    {
        cur_map_ = random_polynomial(r_, rng_, max_degree);
        cur_res_.reset();
        return *cur_map_;
    }

    void ring_axioms(PropertyResult& pr)
    {
        const Element one = Element::one(r_);
        for (int i = 0; i < 50 && !pr.failure; ++i, ++pr.trials) {
            const Element a = random_element(r_, rng_), b = random_element(r_, rng_), c = random_element(r_, rng_);
            expect(pr, (a + b) + c == a + (b + c), "addition is not associative");
            expect(pr, a * (b + c) == a * b + a * c, "multiplication does not distribute");
            expect(pr, a * b == b * a, "multiplication does not commute");
            expect(pr, a - a == Element::zero(r_), "a - a != 0");
            const Element u = random_unit(r_, rng_);
            expect(pr, u * invert(u) == one, "u * invert(u) != 1");
        }
    }

    void digit_roundtrip(PropertyResult& pr)
    {
        for (int i = 0; i < 50 && !pr.failure; ++i, ++pr.trials) {
            const Element a = random_element(r_, rng_);
            const auto d = a.digits();
            expect(pr, Element::from_digits(r_, d) == a, "from_digits(digits(a)) != a");
            const int n = 1 + static_cast<int>(rng_() % 4);
            const auto c = reduce(a, n);
            expect(pr, reduce(lift(r_, c), n) == c, "reduce(lift(c)) != c");
            expect(pr, a.val() == kInfinity || a.div_pi_pow(a.val()).is_unit(), "a / pi^val(a) is not a unit");
        }
    }

    void iterate_agrees(PropertyResult& pr)
    {
        for (int i = 0; i < 20 && !pr.failure; ++i, ++pr.trials) {
            const auto phi = next_map(3);
            const auto k = 1 + rng_() % 4;
            const auto it = iterate(phi, k);
            const Element x = random_element(r_, rng_);
            expect(pr, eval(it, x) == orbit_eval(phi, x, k), "iterate(phi, " + std::to_string(k) + ")(x) != phi^k(x)");
        }
    }

    void weierstrass(PropertyResult& pr)
    {
        for (int i = 0; i < 20 && !pr.failure; ++i, ++pr.trials) {
            const int d = static_cast<int>(rng_() % 5);
            const int len = d + 1 + static_cast<int>(rng_() % 4);
            std::vector<Element> c;
            for (int j = 0; j < len; ++j) {
                if (j == d)
                    c.push_back(random_unit(r_, rng_));
                else
                    c.push_back(random_element(r_, rng_, 1));
            }
            const auto phi = ConvergentSeries::make(r_, c, r_->precision());
            cur_map_ = phi;
            const auto w = weierstrass_factor(phi);
            expect(pr, static_cast<int>(w.g.size()) == d + 1 && w.g.back() == Element::one(r_), "g is not monic of degree wideg");
            const auto gh = detail::poly_mul(r_, w.g, w.h.coeffs);
            for (std::size_t j = 0; j < std::max(gh.size(), c.size()); ++j) {
                const Element lhs = j < gh.size() ? gh[j] : Element::zero(r_);
                const Element rhs = j < c.size() ? c[j] : Element::zero(r_);
                expect(pr, lhs == rhs, "g*h differs from phi at x^" + std::to_string(j));
            }
            expect(pr, w.h.coeffs.front().is_unit(), "h(0) is not a unit");
        }
    }

    // Cycles of phi_n against an independent search: the periodic points are
    // the image of phi_n^{q^n}, each cycle traced by direct evaluation.
    void brute_cycles(PropertyResult& pr)
    {
        for (int i = 0; i < 8 && !pr.failure; ++i) {
            const auto phi = next_map(4);
            for (int n = 1; n <= 3 && !pr.failure; ++n, ++pr.trials) {
                const std::uint64_t size = r_->residue_count(n);
                std::vector<std::uint64_t> img(size);
                for (std::uint64_t x = 0; x < size; ++x) img[x] = reduce(eval(phi, lift(r_, {n, x})), n).index;
                std::set<std::uint64_t> periodic;
                for (std::uint64_t x = 0; x < size; ++x) {
                    std::uint64_t y = x;
                    for (std::uint64_t s = 0; s < size; ++s) y = img[y];
                    periodic.insert(y);
                }
                std::multiset<std::size_t> want;
                std::set<std::uint64_t> seen;
                for (auto x : periodic) {
                    if (seen.count(x)) continue;
                    std::size_t len = 0;
                    std::uint64_t y = x;
                    do {
                        seen.insert(y);
                        y = img[y];
                        ++len;
                    } while (y != x);
                    want.insert(len);
                }
                const auto g = find_cycles(induce(phi, n));
                std::multiset<std::size_t> got;
                std::set<std::uint64_t> on;
                for (const auto& c : g.cycles) {
                    got.insert(c.length());
                    for (std::size_t j = 0; j < c.length(); ++j) {
                        on.insert(c.reps[j]);
                        cur_res_ = ResidueClass{n, c.reps[j]};
                        expect(pr, img[c.reps[j]] == c.reps[(j + 1) % c.length()], "cycle reps are not consecutive");
                    }
                }
                cur_res_.reset();
                expect(pr, got == want, "cycle lengths at level " + std::to_string(n) + " differ from direct search");
                expect(pr, on == periodic, "periodic points at level " + std::to_string(n) + " differ from direct search");
            }
        }
    }

    std::vector<Cycle> cycles_upto(const ConvergentSeries& phi, int max_n)
    {
        std::vector<Cycle> all;
        for (int n = 1; n <= max_n; ++n)
            for (auto& c : find_cycles(induce(phi, n)).cycles) all.push_back(std::move(c));
        return all;
    }

    static Classification corrupt(Classification c)
    {
        switch (c.kind) {
        case CycleClass::grows: c.kind = CycleClass::splits; break;
        case CycleClass::splits: c.kind = CycleClass::grows; break;
        case CycleClass::grows_tails: c.kind = CycleClass::splits; break;
        case CycleClass::partially_splits: c.kind = CycleClass::grows_tails; break;
        }
        return c;
    }

    void lift_census(PropertyResult& pr)
    {
        for (int i = 0; i < 8 && !pr.failure; ++i) {
            const auto phi = next_map(5);
            const auto dphi = derivative(phi);
            for (const auto& c : cycles_upto(phi, 3)) {
                if (pr.failure) break;
                cur_res_ = ResidueClass{c.level, c.reps.front()};
                auto cls = classify(invariants(phi, dphi, c));
                if (opt_.inject == "classify") cls = corrupt(cls);
                lift(phi, c, cls);
                ++pr.trials;
            }
        }
    }

    // a_{n+1} = a_n^r and pi b_{n+1} = b_n (1 + a_n + ... + a_n^{r-1}) mod pi^n,
    // both at one point x of a lifted cycle of length r k.
    void congruences(PropertyResult& pr)
    {
        for (int i = 0; i < 8 && !pr.failure; ++i) {
            const auto phi = next_map(5);
            const auto dphi = derivative(phi);
            for (const auto& c : cycles_upto(phi, 3)) {
                if (pr.failure) break;
                const int n = c.level;
                for (const auto& up : lift_cycle(phi, c).cycles) {
                    const Element x = up.witness(r_);
                    cur_res_ = ResidueClass{up.level, up.reps.front()};
                    const std::size_t rr = up.length() / c.length();
                    const auto lo = point_invariants(phi, dphi, x, c.length(), n);
                    const auto hi = point_invariants(phi, dphi, x, up.length(), n + 1);
                    Element geom = Element::zero(r_), pw = Element::one(r_);
                    for (std::size_t j = 0; j < rr; ++j) {
                        geom += pw;
                        pw *= lo.a;
                    }
                    expect(pr, hi.a.truncated(n) == lo.a.pow(rr).truncated(n), "a_{n+1} != a_n^r mod pi^n");
                    expect(pr, hi.b.mul_pi_pow(1).truncated(n) == (lo.b * geom).truncated(n),
                           "pi b_{n+1} != b_n (1 + ... + a_n^{r-1}) mod pi^n");
                    ++pr.trials;
                }
            }
        }
    }

    void witness_independence(PropertyResult& pr)
    {
        const std::uint64_t q = r_->residue_size();
        for (int i = 0; i < 6 && !pr.failure; ++i) {
            const auto phi = next_map(4);
            const auto dphi = derivative(phi);
            for (const auto& c : cycles_upto(phi, 2)) {
                if (pr.failure) break;
                const int n = c.level;
                cur_res_ = ResidueClass{n, c.reps.front()};
                const auto base = invariants(phi, dphi, c);
                for (auto rep : c.reps)
                    for (std::uint64_t t = 0; t < q; ++t) {
                        const Element x = lift(r_, {n, rep}) + Element::digit(r_, t).mul_pi_pow(n);
                        const auto inv = point_invariants(phi, dphi, x, c.length(), n);
                        expect(pr, inv.A_hat == base.A_hat, "A_hat depends on the witness");
                        expect(pr, std::min(inv.B, base.A_hat) == std::min(base.B, base.A_hat),
                               "min(B, A_hat) depends on the witness");
                        ++pr.trials;
                    }
            }
        }
    }

    void partition(PropertyResult& pr)
    {
        const int L = std::min(4, r_->analysis_budget());
        for (int i = 0; i < 5 && !pr.failure; ++i, ++pr.trials) {
            const auto phi = next_map(4);
            const auto t = decompose(phi, L);
            const auto rep = check_partition(t);
            expect(pr, rep.ok, rep.message);
        }
    }

    void affine_agreement(PropertyResult& pr)
    {
        int done = 0;
        for (int attempt = 0; attempt < 50 && done < 3 && !pr.failure; ++attempt) {
            Literal alpha;
            for (int j = 0; j < 3; ++j) {
                std::vector<std::int64_t> w(static_cast<std::size_t>(r_->f()));
                for (auto& v : w) v = static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(r_->p()));
                alpha.push_back(std::move(w));
            }
            if (std::all_of(alpha[0].begin(), alpha[0].end(), [](auto v) { return v == 0; })) continue;
            if (Element::from_literal(r_, alpha) == Element::one(r_)) continue;
            const auto rep = affine_classify(alpha, literal_from_int(0), r_);
            if (rep.kind != AffineCase::minimal || rep.v_star + 1 > r_->analysis_budget()) continue;
            cur_map_ = ConvergentSeries::polynomial(r_, {Element::zero(r_), Element::from_literal(r_, alpha)});
            const auto chk = affine_engine_agreement(alpha, r_);
            expect(pr, chk.ok, chk.message);
            ++done;
            ++pr.trials;
        }
    }

    RingPtr r_;
    VerifyOptions opt_;
    std::mt19937_64 rng_;
    std::optional<ConvergentSeries> cur_map_;
    std::optional<ResidueClass> cur_res_;
    std::vector<PropertyResult> out_;
};

} // namespace detail

/// The default ring set (p, e, f) in {(2,1,1), (3,1,1), (2,2,1), (2,1,2)}.
inline std::vector<RingPtr> verify_rings(int precision)
{
    return {make_standard_ring(2, 1, 1, precision), make_standard_ring(3, 1, 1, precision),
            make_standard_ring(2, 1, 2, precision), make_standard_ring(2, 2, 1, precision)};
}

inline std::vector<PropertyResult> run_verify(const std::vector<RingPtr>& rings, const VerifyOptions& opt)
{
    std::vector<PropertyResult> all;
    for (const auto& r : rings) {
        auto res = detail::Suite(r, opt).run();
        all.insert(all.end(), res.begin(), res.end());
    }
    return all;
}

inline Json to_json(const std::vector<PropertyResult>& results, const VerifyOptions& opt)
{
    Json j;
    j["seed"] = opt.seed;
    j["inject"] = opt.inject;
    Json props = Json::array();
    bool ok = true;
    for (const auto& pr : results) {
        Json x;
        x["name"] = pr.name;
        x["ring"] = pr.ring;
        x["trials"] = pr.trials;
        x["passed"] = pr.passed();
        if (pr.failure) {
            ok = false;
            Json ce;
            ce["detail"] = pr.failure->detail;
            if (pr.failure->map) ce["map"] = to_json(*pr.failure->map);
            if (pr.failure->residue) {
                ce["level"] = pr.failure->residue->level;
                ce["residue"] = pr.failure->map ? pr.failure->map->ring->format_residue(*pr.failure->residue)
                                                : std::to_string(pr.failure->residue->index);
            }
            x["counterexample"] = ce;
        }
        props.push_back(std::move(x));
    }
    j["properties"] = std::move(props);
    j["ok"] = ok;
    return j;
}

} // namespace padyn
