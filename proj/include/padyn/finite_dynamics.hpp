#pragma once

// Induced maps phi_n on O_K / pi^n, their cycles, the lifting invariants
// a_n, b_n and the four lift behaviours.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padyn/series.hpp"

namespace padyn {

enum class CycleClass { grows, splits, grows_tails, partially_splits };

constexpr std::string_view to_string(CycleClass c) noexcept
{
    switch (c) {
    case CycleClass::grows: return "grows";
    case CycleClass::splits: return "splits";
    case CycleClass::grows_tails: return "grows_tails";
    case CycleClass::partially_splits: return "partially_splits";
    }
    return "?";
}

struct Classification {
    CycleClass kind = CycleClass::grows;
    /// Order of a_n in the residue field; 1 unless partially splitting.
    int ell = 1;
    /// -b_n/(a_n - 1) mod pi when partially splitting.
    std::uint64_t fixed_digit = 0;
};

/// Default cap on materialized tables; PADIC_MAX_TABLE overrides it.
inline std::uint64_t table_cap()
{
    if (const char* env = std::getenv("PADIC_MAX_TABLE")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return std::uint64_t{1} << 20;
}

/// phi_n on the q^n residues. The table is filled when q^n <= cap; beyond
/// that points are evaluated on demand.
class LevelMap {
public:
    LevelMap(ConvergentSeries phi, int n, std::uint64_t cap) : phi_(std::move(phi)), n_(n)
    {
        if (n < 0) fail(errc::invalid_input, "level must be >= 0");
        if (n > phi_.precision())
            fail(errc::precision_exhausted,
                 "level " + std::to_string(n) + " exceeds the map's precision " + std::to_string(phi_.precision()));
        size_ = phi_.ring->residue_count(n);
        if (size_ <= cap) {
            table_.resize(size_);
            for (std::uint64_t i = 0; i < size_; ++i) table_[i] = compute(i);
        }
    }

    const ConvergentSeries& phi() const noexcept { return phi_; }
    const RingPtr& ring() const noexcept { return phi_.ring; }
    int level() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }
    bool materialized() const noexcept { return !table_.empty() || size_ == 0; }
    const std::vector<std::uint64_t>& table() const noexcept { return table_; }

    std::uint64_t operator()(std::uint64_t idx) const { return table_.empty() ? compute(idx) : table_[idx]; }

private:
    std::uint64_t compute(std::uint64_t idx) const
    {
        if (n_ == 0) return 0;
        return reduce(eval(phi_, lift(phi_.ring, {n_, idx})), n_).index;
    }

    ConvergentSeries phi_;
    int n_;
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> table_;
};

inline LevelMap induce(const ConvergentSeries& phi, int n) { return LevelMap(phi, n, table_cap()); }
inline LevelMap induce(const ConvergentSeries& phi, int n, std::uint64_t cap) { return LevelMap(phi, n, cap); }

/// x_1 -> x_2 -> ... -> x_k -> x_1 under phi_n, rotated so reps[0] is the
/// smallest residue index.
struct Cycle {
    int level = 0;
    std::vector<std::uint64_t> reps;

    std::size_t length() const noexcept { return reps.size(); }
    Element witness(const RingPtr& r) const { return lift(r, {level, reps.front()}); }

    friend bool operator==(const Cycle&, const Cycle&) = default;
};

inline bool canonical_less(const Cycle& a, const Cycle& b)
{
    if (a.length() != b.length()) return a.length() < b.length();
    return a.reps.front() < b.reps.front();
}

struct FunctionalGraph {
    std::vector<Cycle> cycles;
    /// For every residue, the index into `cycles` of the cycle it falls into.
    std::vector<std::size_t> cycle_of;
    std::vector<bool> on_cycle;

    std::size_t tail_count() const
    {
        return static_cast<std::size_t>(std::count(on_cycle.begin(), on_cycle.end(), false));
    }
};

namespace detail {

// Cycles of a map on local node ids 0..m-1. Returns local cycles (rotated to
// the smallest label) plus the cycle each node ends up in.
template <class Succ, class Label>
FunctionalGraph functional_graph(std::size_t m, int level, Succ succ, Label label)
{
    FunctionalGraph g;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::uint8_t> state(m, 0);
    std::vector<std::size_t> raw_of(m, none);
    std::vector<std::vector<std::size_t>> raw;
    g.on_cycle.assign(m, false);
    std::vector<std::size_t> path;
    for (std::size_t s = 0; s < m; ++s) {
        if (state[s] != 0) continue;
        path.clear();
        std::size_t v = s;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = succ(v);
        }
        std::size_t target;
        if (state[v] == 1) {
            target = raw.size();
            std::vector<std::size_t> cyc;
            auto it = std::find(path.begin(), path.end(), v);
            for (auto jt = it; jt != path.end(); ++jt) {
                cyc.push_back(*jt);
                g.on_cycle[*jt] = true;
            }
            raw.push_back(std::move(cyc));
        } else {
            target = raw_of[v];
        }
        for (auto u : path) {
            state[u] = 2;
            raw_of[u] = target;
        }
    }

    std::vector<Cycle> cycles;
    cycles.reserve(raw.size());
    for (auto& c : raw) {
        Cycle cy{level, {}};
        for (auto u : c) cy.reps.push_back(label(u));
        auto mn = std::min_element(cy.reps.begin(), cy.reps.end());
        std::rotate(cy.reps.begin(), mn, cy.reps.end());
        cycles.push_back(std::move(cy));
    }
    std::vector<std::size_t> order(cycles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return canonical_less(cycles[a], cycles[b]); });
    std::vector<std::size_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = i;
        g.cycles.push_back(std::move(cycles[order[i]]));
    }
    g.cycle_of.resize(m);
    for (std::size_t u = 0; u < m; ++u) g.cycle_of[u] = rank[raw_of[u]];
    return g;
}

} // namespace detail

inline FunctionalGraph find_cycles(const LevelMap& m)
{
    if (!m.materialized())
        fail(errc::level_too_large, "level " + std::to_string(m.level()) + " has " + std::to_string(m.size()) +
                                        " residues, above the table cap");
    return detail::functional_graph(
        static_cast<std::size_t>(m.size()), m.level(), [&](std::size_t v) { return static_cast<std::size_t>(m(v)); },
        [](std::size_t v) { return static_cast<std::uint64_t>(v); });
}

struct CycleInvariants {
    Element a;
    Element b;
    int A = 0;     // val(a - 1)
    int B = 0;     // val(b)
    int A_hat = 0; // min(A, n)
    int level = 0;
    std::size_t length = 0;
};

/// Precision needed at level n for b_n to be meaningful mod pi^{n+e+2}.
inline int required_precision(const RingSpec& r, int n) { return 2 * n + r.e() + 2; }

/// a_n and b_n at an arbitrary witness x of a k-cycle at level n.
inline CycleInvariants point_invariants(const ConvergentSeries& phi, const ConvergentSeries& dphi, const Element& x,
                                        std::size_t k, int n)
{
    const int need = required_precision(*phi.ring, n);
    if (phi.precision() < need || x.known_prec() < need)
        fail(errc::precision_exhausted, "level " + std::to_string(n) + " needs " + std::to_string(need) +
                                            " digits, have " + std::to_string(std::min(phi.precision(), x.known_prec())));
    Element a = Element::one(phi.ring);
    Element y = x;
    for (std::size_t j = 0; j < k; ++j) {
        a *= eval(dphi, y);
        y = eval(phi, y);
    }
    const Element d = y - x;
    if (d.val() < n) fail(errc::invalid_input, "witness is not on a cycle of phi_" + std::to_string(n));
    CycleInvariants inv;
    inv.b = d.div_pi_pow(n);
    inv.a = a;
    inv.A = (a - Element::one(phi.ring)).val();
    inv.B = inv.b.val();
    inv.A_hat = std::min(inv.A, n);
    inv.level = n;
    inv.length = k;
    return inv;
}

inline CycleInvariants invariants(const ConvergentSeries& phi, const ConvergentSeries& dphi, const Cycle& c)
{
    return point_invariants(phi, dphi, c.witness(phi.ring), c.length(), c.level);
}

inline CycleInvariants invariants(const ConvergentSeries& phi, const Cycle& c)
{
    return invariants(phi, derivative(phi), c);
}

/// Multiplicative order of a unit modulo pi.
inline int residue_order(const Element& a)
{
    if (a.val() != 0) fail(errc::not_a_unit, "residue order of a non-unit");
    const RingPtr& r = a.ring_ptr();
    const Element abar = Element::digit(r, a.residue());
    Element t = abar;
    int ell = 1;
    while (t.residue() != 1) {
        t = (t * abar);
        t = Element::digit(r, t.residue());
        ++ell;
    }
    return ell;
}

inline Classification classify(const CycleInvariants& inv)
{
    Classification c;
    if (inv.a.val() > 0) {
        c.kind = CycleClass::grows_tails;
        return c;
    }
    if (inv.A > 0) {
        c.kind = inv.B > 0 ? CycleClass::splits : CycleClass::grows;
        return c;
    }
    c.kind = CycleClass::partially_splits;
    c.ell = residue_order(inv.a);
    const Element one = Element::one(inv.a.ring_ptr());
    c.fixed_digit = ((-inv.b) * invert((inv.a - one).truncated(1))).residue();
    return c;
}

/// Ψ(t) = b_n + a_n t mod pi on residue digits.
inline std::uint64_t linearize(const CycleInvariants& inv, std::uint64_t t)
{
    const RingPtr& r = inv.a.ring_ptr();
    return (inv.b + inv.a * Element::digit(r, t)).residue();
}

/// (length, count) pairs sorted by length.
using Census = std::vector<std::pair<std::size_t, std::size_t>>;

inline Census census_of(const std::vector<Cycle>& cycles)
{
    std::map<std::size_t, std::size_t> m;
    for (const auto& c : cycles) ++m[c.length()];
    return {m.begin(), m.end()};
}

struct LiftCensus {
    Census cycles;
    std::size_t tail_points = 0;

    friend bool operator==(const LiftCensus&, const LiftCensus&) = default;
};

/// What the lifts of a k-cycle must look like, given its class.
inline LiftCensus predicted_census(const RingSpec& r, std::size_t k, const Classification& c)
{
    const auto q = static_cast<std::size_t>(r.residue_size());
    const auto p = static_cast<std::size_t>(r.p());
    switch (c.kind) {
    case CycleClass::grows: return {{{p * k, q / p}}, 0};
    case CycleClass::splits: return {{{k, q}}, 0};
    case CycleClass::grows_tails: return {{{k, 1}}, k * q - k};
    case CycleClass::partially_splits:
        return {{{k, 1}, {k * static_cast<std::size_t>(c.ell), (q - 1) / static_cast<std::size_t>(c.ell)}}, 0};
    }
    return {};
}

inline std::string census_string(const LiftCensus& c)
{
    std::string s;
    for (const auto& [len, cnt] : c.cycles) {
        if (!s.empty()) s += ", ";
        s += std::to_string(cnt) + "x" + std::to_string(len);
    }
    if (c.tail_points) s += " + " + std::to_string(c.tail_points) + " tail points";
    return s;
}

struct LiftResult {
    std::vector<Cycle> cycles;
    std::size_t tail_points = 0;

    LiftCensus census() const { return {census_of(cycles), tail_points}; }
};

/// Cycles of phi_{n+1} inside the balls of c, by enumerating the k q points
/// above the cycle.
inline LiftResult lift_cycle(const ConvergentSeries& phi, const Cycle& c)
{
    const RingPtr& r = phi.ring;
    const int n = c.level;
    const std::uint64_t q = r->residue_size();
    const std::uint64_t qn = r->residue_count(n);
    (void)r->residue_count(n + 1);
    if (n + 1 > phi.precision()) fail(errc::precision_exhausted, "lift beyond the map's precision");
    const std::size_t k = c.length();
    std::map<std::uint64_t, std::size_t> rep_pos;
    for (std::size_t i = 0; i < k; ++i) rep_pos[c.reps[i]] = i;

    // local id i*q + t  <->  residue reps[i] + t q^n
    auto label = [&](std::size_t id) { return c.reps[id / q] + static_cast<std::uint64_t>(id % q) * qn; };
    std::vector<std::size_t> succ(k * q);
    for (std::size_t id = 0; id < succ.size(); ++id) {
        const std::uint64_t img = reduce(eval(phi, lift(r, {n + 1, label(id)})), n + 1).index;
        const auto it = rep_pos.find(img % qn);
        if (it == rep_pos.end()) fail(errc::invalid_input, "cycle is not invariant under phi_" + std::to_string(n));
        succ[id] = it->second * q + static_cast<std::size_t>(img / qn);
    }
    auto g = detail::functional_graph(succ.size(), n + 1, [&](std::size_t v) { return succ[v]; }, label);
    return {std::move(g.cycles), g.tail_count()};
}

/// Lifts of c, checked against the census its class predicts.
inline LiftResult lift(const ConvergentSeries& phi, const Cycle& c, const Classification& cls, bool cross_check = true)
{
    LiftResult res = lift_cycle(phi, c);
    if (cross_check) {
        const LiftCensus want = predicted_census(*phi.ring, c.length(), cls);
        const LiftCensus got = res.census();
        if (!(want == got))
            fail(errc::classification_mismatch, "cycle at level " + std::to_string(c.level) + " starting " +
                                                    phi.ring->format_residue({c.level, c.reps.front()}) + " classified " +
                                                    std::string(to_string(cls.kind)) + " predicts " +
                                                    census_string(want) + ", enumeration found " + census_string(got));
    }
    return res;
}

} // namespace padyn
