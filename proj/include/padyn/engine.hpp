#pragma once

// Minimal decomposition O_K = A ⊔ B ⊔ C by lifting cycles level by level and
// closing branches as soon as their long-run behaviour is determined.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padyn/finite_dynamics.hpp"

namespace padyn {

/// (E_0, E_1, ...): finitely many leading entries, then `eventual` forever.
struct EVector {
    std::vector<int> prefix;
    int eventual = 1;

    static EVector constant(int e) { return {{}, e}; }

    int at(std::size_t j) const { return j < prefix.size() ? prefix[j] : eventual; }

    /// Last index whose entry differs from the eventual value, -1 if none.
    int stabilization_index() const { return static_cast<int>(prefix.size()) - 1; }

    std::vector<int> head(std::size_t n) const
    {
        std::vector<int> h(n);
        for (std::size_t j = 0; j < n; ++j) h[j] = at(j);
        return h;
    }

    EVector& normalize()
    {
        while (!prefix.empty() && prefix.back() == eventual) prefix.pop_back();
        return *this;
    }

    friend bool operator==(const EVector& a, const EVector& b) = default;
};

inline EVector prepend(int e0, const EVector& rest)
{
    EVector v{{e0}, rest.eventual};
    v.prefix.insert(v.prefix.end(), rest.prefix.begin(), rest.prefix.end());
    return v.normalize();
}

inline std::string to_string(const EVector& v)
{
    std::string s = "(";
    for (std::size_t j = 0; j <= v.prefix.size(); ++j) s += std::to_string(v.at(j)) + ",";
    return s + std::to_string(v.eventual) + ",...)";
}

/// A clopen set of type (k, E) rooted at a growing k-cycle at `level`.
struct MinimalTypeDescriptor {
    std::size_t k = 1;
    EVector E;
    int level = 0;
    std::int64_t p = 2;

    /// Does the schedule grow (rather than split) at level + s?
    bool grows_at(int s) const
    {
        int pos = 0;
        for (std::size_t j = 0; pos < s; ++j) pos += E.at(j);
        return pos == s;
    }

    /// (p_s): k, then kp repeated E_0 times, kp^2 repeated E_1 times, ...
    std::vector<std::uint64_t> odometer(std::size_t terms) const
    {
        std::vector<std::uint64_t> out;
        std::uint64_t len = k;
        for (std::size_t s = 0; s < terms; ++s) {
            out.push_back(len);
            if (grows_at(static_cast<int>(s))) len *= static_cast<std::uint64_t>(p);
        }
        return out;
    }

    friend bool operator==(const MinimalTypeDescriptor& a, const MinimalTypeDescriptor& b)
    {
        return a.k == b.k && a.E == b.E && a.level == b.level && a.p == b.p;
    }
};

/// Expected (count, length) of the cycles inside a type-(k, E) set at
/// levels level, level+1, ..., level+depth.
inline std::vector<LiftCensus> census_schedule(const MinimalTypeDescriptor& t, const RingSpec& r, int depth)
{
    std::vector<LiftCensus> out;
    std::size_t count = 1, len = t.k;
    const auto q = static_cast<std::size_t>(r.residue_size());
    const auto p = static_cast<std::size_t>(r.p());
    for (int s = 0; s <= depth; ++s) {
        out.push_back({{{len, count}}, 0});
        if (t.grows_at(s)) {
            count *= q / p;
            len *= p;
        } else {
            count *= q;
        }
    }
    return out;
}

enum class VerdictKind { attracting_periodic, indifferent_periodic, minimal_type, basin, unresolved };

constexpr std::string_view to_string(VerdictKind v) noexcept
{
    switch (v) {
    case VerdictKind::attracting_periodic: return "attracting_periodic";
    case VerdictKind::indifferent_periodic: return "indifferent_periodic";
    case VerdictKind::minimal_type: return "minimal_type";
    case VerdictKind::basin: return "basin";
    case VerdictKind::unresolved: return "unresolved";
    }
    return "?";
}

struct Verdict {
    VerdictKind kind = VerdictKind::unresolved;
    std::size_t period = 0;
    /// Indifferent orbits: deepest level at which the chain was followed.
    int certified_to = 0;
    std::optional<MinimalTypeDescriptor> type;
    /// Basin leaves: id of the cycle node the tail falls into.
    std::size_t target = 0;
    int level_reached = 0;
};

// ---------------------------------------------------------------------------
// Local predictions

enum class SplitCase { separate = 1, distinguished = 2, deepen = 3 };

struct SplitPlan {
    SplitCase which = SplitCase::deepen;
    /// Level at which the non-distinguished descendants all grow.
    int grow_level = 0;
};

inline SplitPlan resolve_splitting(const CycleInvariants& inv)
{
    const int n = inv.level;
    if (inv.A_hat > inv.B) return {SplitCase::separate, n + inv.B};
    if (inv.A <= inv.B && inv.A < n) return {SplitCase::distinguished, n + inv.A};
    return {SplitCase::deepen, 0};
}

struct GrowthPrediction {
    bool deepen = false;
    MinimalTypeDescriptor type;
    int deepen_level = 0;
    std::size_t expected_length = 0;
};

/// Behaviour of a growing cycle at level n >= e+1, from gamma = A_hat alone.
inline GrowthPrediction predict_growing(const RingSpec& r, const CycleInvariants& inv)
{
    const int n = inv.level;
    const int e = r.e();
    const std::int64_t p = r.p();
    if (n < e + 1)
        fail(errc::precondition_level, "growth prediction needs level >= e+1 = " + std::to_string(e + 1) + ", got " +
                                           std::to_string(n));
    const std::int64_t gamma = inv.A_hat;
    const std::int64_t g = gamma * (p - 1);
    GrowthPrediction out;
    out.type.k = inv.length;
    out.type.level = n;
    out.type.p = p;
    out.type.E = EVector::constant(e);
    if (g > e) return out;

    std::int64_t term = g;
    int j = 0;
    while (term < e) {
        term *= p;
        ++j;
    }
    if (term == e) {
        // log_p(e / (gamma (p-1))) = j is an integer
        out.deepen = true;
        out.deepen_level = static_cast<int>(n - gamma + e * p / (p - 1));
        std::size_t len = inv.length;
        for (int i = 0; i <= j; ++i) len *= static_cast<std::size_t>(p);
        out.expected_length = len;
        return out;
    }
    for (std::int64_t t = g; t < e; t *= p) out.type.E.prefix.push_back(static_cast<int>(t));
    out.type.E.normalize();
    return out;
}

/// Periodic orbit certified by the class of a cycle, if any.
inline std::optional<Verdict> periodic_certificate(const Classification& cls, const CycleInvariants& inv)
{
    if (cls.kind == CycleClass::grows_tails)
        return Verdict{VerdictKind::attracting_periodic, inv.length, inv.level, std::nullopt, 0, inv.level};
    if (cls.kind == CycleClass::partially_splits ||
        (cls.kind == CycleClass::splits && resolve_splitting(inv).which == SplitCase::distinguished))
        return Verdict{VerdictKind::indifferent_periodic, inv.length, inv.level, std::nullopt, 0, inv.level};
    return std::nullopt;
}

/// Candidate periods of periodic points, read off the cycles at level n >= e+1.
inline std::set<std::size_t> possible_periods(const ConvergentSeries& phi, int level)
{
    const RingSpec& r = *phi.ring;
    if (level < r.e() + 1)
        fail(errc::precondition_level, "possible periods need level >= e+1 = " + std::to_string(r.e() + 1));
    const auto dphi = derivative(phi);
    const auto g = find_cycles(induce(phi, level));
    std::set<std::size_t> out;
    const std::int64_t p = r.p();
    for (const auto& c : g.cycles) {
        const auto inv = invariants(phi, dphi, c);
        const auto cls = classify(inv);
        if (cls.kind != CycleClass::grows) out.insert(c.length());
        if (cls.kind == CycleClass::grows || cls.kind == CycleClass::splits) {
            const std::int64_t denom = (p - 1) * inv.A_hat;
            std::int64_t t = denom;
            while (t < r.e()) t *= p;
            if (t == r.e()) out.insert(static_cast<std::size_t>(c.length() * p * r.e() / denom));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The tree

struct Node {
    std::size_t id = 0;
    std::optional<std::size_t> parent;
    int level = 0;
    std::vector<std::uint64_t> reps;
    bool basin = false;
    std::optional<Classification> cls;
    int A = 0;
    int B = 0;
    int A_hat = 0;
    std::string plan;
    std::vector<std::size_t> children;
    std::optional<Verdict> verdict;

    std::size_t length() const noexcept { return reps.size(); }
    Cycle cycle() const { return {level, reps}; }
};

struct DecomposeOptions {
    int max_level = 0;
    bool trust_predictions = false;
};

struct DecompositionTree {
    RingPtr ring;
    ConvergentSeries phi;
    int max_level = 0;
    bool trust_predictions = false;
    /// "verified" when phi^n != id was checked exactly, "assumed" otherwise.
    std::string hypothesis;
    std::vector<Node> nodes;

    const Node& root() const { return nodes.front(); }

    std::size_t count(VerdictKind k) const
    {
        return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [&](const Node& n) {
            return n.verdict && n.verdict->kind == k;
        }));
    }

    bool has_unresolved() const { return count(VerdictKind::unresolved) > 0; }
};

/// Decides "phi^n is never the identity" for polynomial input. Returns
/// "verified" or "assumed"; throws HypothesisViolated when it fails.
inline std::string check_hypothesis(const ConvergentSeries& phi)
{
    if (!phi.is_polynomial()) return "assumed";
    ConvergentSeries s = phi;
    while (s.coeffs.size() > 1 && s.coeffs.back().is_zero()) s.coeffs.pop_back();
    if (s.degree() != 1) return "verified";
    const RingPtr& r = s.ring;
    const Element& alpha = s.coeffs[1];
    const Element& beta = s.coeffs[0];
    const Element one = Element::one(r);
    if (alpha == one) {
        if (beta.is_zero()) fail(errc::hypothesis_violated, "phi is the identity");
        return "verified";
    }
    if (alpha.val() == 0 && alpha.pow(torsion_exponent(*r)) == one)
        fail(errc::hypothesis_violated, "the linear part is a root of unity, so an iterate of phi is the identity");
    return "verified";
}

namespace detail {

struct Expectation {
    int from = 0;
    int to = 0;
    // Either a class requirement (length == 0) or a length requirement.
    CycleClass kind = CycleClass::splits;
    std::size_t length = 0;
    std::string reason;
};

class Engine {
public:
    Engine(const ConvergentSeries& phi, const DecomposeOptions& opt)
        : phi_(phi), dphi_(derivative(phi)), ring_(phi.ring), opt_(opt)
    {
    }

    DecompositionTree run()
    {
        const RingSpec& r = *ring_;
        if (opt_.max_level < r.e() + 1)
            fail(errc::level_cap_too_small,
                 "max level " + std::to_string(opt_.max_level) + " is below e+1 = " + std::to_string(r.e() + 1));
        const int prec = std::min(r.precision(), phi_.precision());
        if (required_precision(r, opt_.max_level) > prec)
            fail(errc::precision_exhausted, "max level " + std::to_string(opt_.max_level) + " needs precision " +
                                                std::to_string(required_precision(r, opt_.max_level)) +
                                                ", have " + std::to_string(prec));
        tree_.ring = ring_;
        tree_.phi = phi_;
        tree_.max_level = opt_.max_level;
        tree_.trust_predictions = opt_.trust_predictions;
        tree_.hypothesis = check_hypothesis(phi_);

        Node root;
        root.level = 0;
        root.reps = {0};
        root.plan = "level 1 census";
        add(std::move(root));

        const auto g = find_cycles(induce(phi_, 1));
        std::vector<std::size_t> cycle_ids;
        for (std::size_t ci = 0; ci < g.cycles.size(); ++ci) {
            const std::size_t id = add(cycle_node(g.cycles[ci], 0));
            cycle_ids.push_back(id);
            std::vector<std::uint64_t> tails;
            for (std::size_t v = 0; v < g.cycle_of.size(); ++v)
                if (!g.on_cycle[v] && g.cycle_of[v] == ci) tails.push_back(v);
            if (!tails.empty()) {
                Node b;
                b.parent = 0;
                b.level = 1;
                b.reps = std::move(tails);
                b.basin = true;
                b.plan = "tail";
                Verdict v;
                v.kind = VerdictKind::basin;
                v.target = id;
                v.level_reached = 1;
                b.verdict = v;
                add(std::move(b));
            }
        }
        for (auto id : cycle_ids) expand(id, {});
        return std::move(tree_);
    }

private:
    std::size_t add(Node n)
    {
        n.id = tree_.nodes.size();
        if (n.parent) tree_.nodes[*n.parent].children.push_back(n.id);
        tree_.nodes.push_back(std::move(n));
        return tree_.nodes.back().id;
    }

    Node cycle_node(const Cycle& c, std::size_t parent)
    {
        Node n;
        n.parent = parent;
        n.level = c.level;
        n.reps = c.reps;
        const auto inv = invariants(phi_, dphi_, c);
        n.cls = classify(inv);
        n.A = inv.A;
        n.B = inv.B;
        n.A_hat = inv.A_hat;
        invs_[n.level].emplace(c.reps.front(), inv);
        return n;
    }

    const CycleInvariants& inv_of(const Node& n) const { return invs_.at(n.level).at(n.reps.front()); }

    [[noreturn]] void mismatch(const Node& n, const std::string& what) const
    {
        fail(errc::classification_mismatch, "cycle " + ring_->format_residue({n.level, n.reps.front()}) + " at level " +
                                                std::to_string(n.level) + ": " + what);
    }

    void check(const Node& n, const std::vector<Expectation>& ex) const
    {
        if (opt_.trust_predictions) return;
        for (const auto& x : ex) {
            if (n.level < x.from || n.level > x.to) continue;
            if (x.length != 0) {
                if (n.length() != x.length)
                    mismatch(n, "expected length " + std::to_string(x.length) + " (" + x.reason + "), found " +
                                    std::to_string(n.length()));
            } else if (n.cls->kind != x.kind) {
                mismatch(n, "expected class " + std::string(to_string(x.kind)) + " (" + x.reason + "), found " +
                                std::string(to_string(n.cls->kind)));
            }
        }
    }

    // One level of actual lifting below a type prediction.
    void verify_type(const Node& n, const MinimalTypeDescriptor& t)
    {
        const auto lr = lift(phi_, n.cycle(), *n.cls, true);
        if (n.level + 1 > opt_.max_level) return;
        const CycleClass want = t.E.at(0) > 1 ? CycleClass::splits : CycleClass::grows;
        for (const auto& c : lr.cycles) {
            const auto cls = classify(invariants(phi_, dphi_, c));
            if (cls.kind != want)
                mismatch(n, "type " + to_string(t.E) + " predicts lifts that " + std::string(to_string(want)) +
                                ", found " + std::string(to_string(cls.kind)));
        }
    }

    void expand(std::size_t id, std::vector<Expectation> ex)
    {
        const RingSpec& r = *ring_;
        const int n = tree_.nodes[id].level;
        const std::size_t k = tree_.nodes[id].length();
        const Classification cls = *tree_.nodes[id].cls;
        const CycleInvariants inv = inv_of(tree_.nodes[id]);
        const bool predict = n >= r.e() + 1;

        if (cls.kind == CycleClass::grows_tails) {
            tree_.nodes[id].plan = "attracting orbit; rest of the balls in its basin";
            tree_.nodes[id].verdict = periodic_certificate(cls, inv);
            return;
        }

        bool chain = cls.kind == CycleClass::partially_splits;
        std::optional<SplitPlan> split;
        if (predict && cls.kind == CycleClass::grows) {
            const auto pred = predict_growing(r, inv);
            if (!pred.deepen) {
                tree_.nodes[id].plan = "type " + to_string(pred.type.E);
                Verdict v;
                v.kind = VerdictKind::minimal_type;
                v.period = 0;
                v.type = pred.type;
                v.level_reached = n;
                tree_.nodes[id].verdict = v;
                if (!opt_.trust_predictions) verify_type(tree_.nodes[id], pred.type);
                return;
            }
            tree_.nodes[id].plan = "deepen to level " + std::to_string(pred.deepen_level);
            ex.push_back({pred.deepen_level, pred.deepen_level, CycleClass::grows, pred.expected_length,
                          "integer-log growth"});
        } else if (predict && cls.kind == CycleClass::splits) {
            split = resolve_splitting(inv);
            switch (split->which) {
            case SplitCase::separate:
                tree_.nodes[id].plan = "split until level " + std::to_string(split->grow_level) + ", then grow";
                ex.push_back({n + 1, split->grow_level - 1, CycleClass::splits, 0, "separating split"});
                ex.push_back({split->grow_level, split->grow_level, CycleClass::grows, 0, "separating split"});
                break;
            case SplitCase::distinguished:
                tree_.nodes[id].plan = "indifferent chain; others grow at level " + std::to_string(split->grow_level);
                chain = true;
                break;
            case SplitCase::deepen: tree_.nodes[id].plan = "deepen"; break;
            }
        } else if (cls.kind == CycleClass::partially_splits) {
            tree_.nodes[id].plan = "indifferent chain";
        } else {
            tree_.nodes[id].plan = "lift";
        }

        if (n >= opt_.max_level) {
            if (chain && predict) {
                tree_.nodes[id].verdict =
                    Verdict{VerdictKind::indifferent_periodic, k, n, std::nullopt, 0, n};
            } else {
                tree_.nodes[id].verdict = Verdict{VerdictKind::unresolved, 0, 0, std::nullopt, 0, n};
            }
            return;
        }

        std::erase_if(ex, [&](const Expectation& x) { return x.to <= n; });
        const auto lr = lift(phi_, tree_.nodes[id].cycle(), cls, true);
        std::vector<std::size_t> kids;
        for (const auto& c : lr.cycles) kids.push_back(add(cycle_node(c, id)));

        std::vector<std::vector<Expectation>> kid_ex(kids.size(), ex);
        if (split && split->which == SplitCase::distinguished) {
            std::size_t found = 0;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                const Node& c = tree_.nodes[kids[i]];
                const bool same = c.cls->kind == CycleClass::splits && c.A <= c.B && c.A < c.level;
                if (same) {
                    ++found;
                    continue;
                }
                kid_ex[i].push_back({n + 1, split->grow_level - 1, CycleClass::splits, 0, "non-distinguished lift"});
                kid_ex[i].push_back({split->grow_level, split->grow_level, CycleClass::grows, 0, "non-distinguished lift"});
            }
            if (found != 1 && !opt_.trust_predictions)
                mismatch(tree_.nodes[id], "expected exactly one distinguished lift, found " + std::to_string(found));
        }
        if (cls.kind == CycleClass::partially_splits && !opt_.trust_predictions) {
            for (auto kid : kids) {
                const Node& c = tree_.nodes[kid];
                const bool ok = c.length() == k ? c.cls->kind == CycleClass::partially_splits
                                                : (c.cls->kind == CycleClass::grows || c.cls->kind == CycleClass::splits);
                if (!ok) mismatch(c, "unexpected class " + std::string(to_string(c.cls->kind)) + " below a partial split");
            }
        }
        for (std::size_t i = 0; i < kids.size(); ++i) check(tree_.nodes[kids[i]], kid_ex[i]);
        for (std::size_t i = 0; i < kids.size(); ++i) expand(kids[i], kid_ex[i]);
    }

    ConvergentSeries phi_;
    ConvergentSeries dphi_;
    RingPtr ring_;
    DecomposeOptions opt_;
    DecompositionTree tree_;
    std::map<int, std::map<std::uint64_t, CycleInvariants>> invs_;
};

} // namespace detail

inline DecompositionTree decompose(const ConvergentSeries& phi, const DecomposeOptions& opt)
{
    return detail::Engine(phi, opt).run();
}

inline DecompositionTree decompose(const ConvergentSeries& phi, int max_level)
{
    return decompose(phi, DecomposeOptions{max_level, false});
}

// ---------------------------------------------------------------------------
// Reading the tree

/// Type (k, E) of the clopen set of a node, read from its subtree: the node
/// must grow, its descendants must split uniformly until they all grow at a
/// common level, and those must share a type in turn. The root counts as a
/// growing 1-cycle at level 0 when phi_1 consists of p^{f-1} p-cycles.
inline std::optional<MinimalTypeDescriptor> infer_type(const DecompositionTree& t, std::size_t id)
{
    const Node& n = t.nodes[id];
    const RingSpec& r = *t.ring;
    if (n.verdict && n.verdict->kind == VerdictKind::minimal_type) return n.verdict->type;
    if (n.verdict) return std::nullopt;
    if (n.id == 0) {
        const std::size_t want = static_cast<std::size_t>(r.residue_size() / static_cast<std::uint64_t>(r.p()));
        if (n.children.size() != want) return std::nullopt;
        for (auto c : n.children)
            if (t.nodes[c].basin || t.nodes[c].length() != static_cast<std::size_t>(r.p())) return std::nullopt;
    } else if (!n.cls || n.cls->kind != CycleClass::grows) {
        return std::nullopt;
    }
    std::vector<std::size_t> frontier = n.children;
    int level = n.level + 1;
    while (!frontier.empty()) {
        bool all_grow = true, all_split = true;
        for (auto c : frontier) {
            const Node& m = t.nodes[c];
            if (m.basin || !m.cls) return std::nullopt;
            all_grow = all_grow && m.cls->kind == CycleClass::grows;
            all_split = all_split && m.cls->kind == CycleClass::splits;
        }
        if (all_grow) {
            std::optional<MinimalTypeDescriptor> sub;
            for (auto c : frontier) {
                auto s = infer_type(t, c);
                if (!s) return std::nullopt;
                s->level = 0;
                if (sub && !(*sub == *s)) return std::nullopt;
                sub = s;
            }
            MinimalTypeDescriptor out;
            out.k = n.id == 0 ? 1 : n.length();
            out.level = n.level;
            out.p = r.p();
            out.E = prepend(level - n.level, sub->E);
            return out;
        }
        if (!all_split) return std::nullopt;
        std::vector<std::size_t> next;
        for (auto c : frontier) {
            if (t.nodes[c].verdict) return std::nullopt;
            next.insert(next.end(), t.nodes[c].children.begin(), t.nodes[c].children.end());
        }
        frontier = std::move(next);
        ++level;
    }
    return std::nullopt;
}

struct CheckReport {
    bool ok = true;
    std::string message;
};

/// Leaf balls tile O_K: total measure is exactly 1 and no ball contains another.
inline CheckReport check_partition(const DecompositionTree& t)
{
    const RingSpec& r = *t.ring;
    const std::uint64_t q = r.residue_size();
    std::map<int, std::uint64_t> per_level;
    std::set<std::pair<int, std::uint64_t>> balls;
    for (const auto& n : t.nodes) {
        if (!n.verdict) continue;
        for (auto rep : n.reps) {
            if (!balls.insert({n.level, rep}).second)
                return {false, "ball " + r.format_residue({n.level, rep}) + " covered twice"};
            ++per_level[n.level];
        }
    }
    if (balls.empty()) return {false, "no leaves"};
    for (const auto& [lvl, idx] : balls) {
        std::uint64_t qm = 1;
        for (int m = 0; m < lvl; ++m) {
            if (balls.count({m, idx % qm}))
                return {false, "ball " + r.format_residue({lvl, idx}) + " lies inside leaf ball " +
                                   r.format_residue({m, idx % qm})};
            qm *= q;
        }
    }
    // sum_n c_n q^{-n} == 1, normalised from the deepest level upwards
    const int deepest = per_level.rbegin()->first;
    std::uint64_t carry = 0;
    for (int lvl = deepest; lvl >= 1; --lvl) {
        carry += per_level.count(lvl) ? per_level[lvl] : 0;
        if (carry % q != 0) return {false, "leaf measure at level " + std::to_string(lvl) + " is not a whole ball"};
        carry /= q;
    }
    carry += per_level.count(0) ? per_level[0] : 0;
    if (carry != 1) return {false, "leaf measure sums to " + std::to_string(carry) + " instead of 1"};
    return {};
}

/// Cycle through x mod pi^m under phi_m; 0 if x mod pi^m is not periodic.
inline std::size_t trace_length(const ConvergentSeries& phi, const Element& x, int m)
{
    const RingPtr& r = phi.ring;
    const auto start = reduce(x, m);
    const std::uint64_t bound = r->residue_count(m);
    ResidueClass y = start;
    for (std::uint64_t i = 1; i <= bound; ++i) {
        y = reduce(eval(phi, lift(r, y)), m);
        if (y == start) return static_cast<std::size_t>(i);
    }
    return 0;
}

/// The minimal component through x traces a single cycle of length p_s on
/// each level level+s, as the odometer of its type demands.
inline CheckReport check_minimality(const ConvergentSeries& phi, const Element& x, const MinimalTypeDescriptor& t,
                                    int up_to_level)
{
    const auto odo = t.odometer(static_cast<std::size_t>(std::max(0, up_to_level - t.level) + 1));
    for (int m = std::max(t.level, 1); m <= up_to_level; ++m) {
        const std::size_t len = trace_length(phi, x, m);
        if (len != odo[static_cast<std::size_t>(m - t.level)])
            return {false, "level " + std::to_string(m) + ": trace is a cycle of length " + std::to_string(len) +
                               ", odometer needs " + std::to_string(odo[static_cast<std::size_t>(m - t.level)])};
    }
    return {};
}

/// Cycles of phi_{level+s} inside X_c for s = 0..depth, by exhaustive lifting.
inline std::vector<LiftCensus> descendant_census(const ConvergentSeries& phi, const Cycle& c, int depth)
{
    std::vector<LiftCensus> out;
    std::vector<Cycle> cur{c};
    for (int s = 0; s <= depth; ++s) {
        out.push_back({census_of(cur), 0});
        if (s == depth) break;
        std::vector<Cycle> next;
        for (const auto& x : cur)
            for (auto& y : lift_cycle(phi, x).cycles) next.push_back(std::move(y));
        cur = std::move(next);
    }
    return out;
}

/// Census mode of the minimality check: the cycles inside X_c follow the
/// grow/split schedule of type t level by level.
inline CheckReport census_report(const ConvergentSeries& phi, const Cycle& c, const MinimalTypeDescriptor& t, int depth)
{
    const auto got = descendant_census(phi, c, depth);
    const auto want = census_schedule(t, *phi.ring, depth);
    for (int s = 0; s <= depth; ++s)
        if (!(got[s] == want[s]))
            return {false, "level " + std::to_string(c.level + s) + ": found " + census_string(got[s]) +
                               ", schedule needs " + census_string(want[s])};
    return {};
}

/// Number of disjoint invariant clopen pieces (cycles) inside X_c at levels
/// level, level+step, ..., level+rounds*step.
inline std::vector<std::size_t> component_growth(const ConvergentSeries& phi, const Cycle& c, int rounds, int step)
{
    const auto census = descendant_census(phi, c, rounds * step);
    std::vector<std::size_t> out;
    for (int j = 0; j <= rounds; ++j) {
        std::size_t total = 0;
        for (const auto& [len, cnt] : census[static_cast<std::size_t>(j * step)].cycles) total += cnt;
        out.push_back(total);
    }
    return out;
}

} // namespace padyn
