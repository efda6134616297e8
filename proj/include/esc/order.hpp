#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "esc/tally.hpp"

namespace esc {

/// Parameters of the evident-safety order: dose count and the balance
/// strength r >= 1 weighting a toxicity against r tolerations at the
/// top dose.  Larger r coarsens the order (every relation at r holds
/// at r+1).
struct SafetyParams {
    int doses;
    int balance = 2;

    SafetyParams(int d, int r = 2) : doses(d), balance(r) {
        if (d < 1) throw std::invalid_argument("safety params: doses >= 1 required");
        if (r < 1) throw std::invalid_argument("safety params: balance >= 1 required");
    }
};

/// Integer coordinates (eta, gamma) of a formal tally difference over
/// the atomic-arrow basis.  The difference lies in the order exactly
/// when every coordinate is non-negative.
struct DeltaCoords {
    std::vector<long long> eta;
    std::vector<long long> gamma;

    bool nonnegative() const {
        for (long long v : eta)
            if (v < 0) return false;
        for (long long v : gamma)
            if (v < 0) return false;
        return true;
    }
    friend bool operator==(const DeltaCoords&, const DeltaCoords&) = default;
};

/// Coordinates of [to - from].  Solves the linear recurrences
///   gamma_1 = -dt_1,            gamma_d = gamma_{d-1} - dt_d
///   eta_1   = sum(dn) + (1+r)*gamma_D,   eta_{d+1} = eta_d - dn_d
/// which determine (eta, gamma) uniquely.
inline DeltaCoords delta_coords(const Tally& from, const Tally& to, const SafetyParams& params) {
    const int doses = params.doses;
    if (from.doses() != doses || to.doses() != doses)
        throw std::invalid_argument("delta_coords: dimension mismatch");
    DeltaCoords c;
    c.gamma.resize(static_cast<std::size_t>(doses));
    c.eta.resize(static_cast<std::size_t>(doses));
    long long gamma_prev = 0, dn_sum = 0;
    for (int d = 1; d <= doses; ++d) {
        const long long dt = to.tox(d) - from.tox(d);
        gamma_prev -= dt;
        c.gamma[static_cast<std::size_t>(d - 1)] = gamma_prev;
        dn_sum += to.evaluable(d) - from.evaluable(d);
    }
    long long eta = dn_sum + (1 + params.balance) * c.gamma.back();
    for (int d = 1; d <= doses; ++d) {
        c.eta[static_cast<std::size_t>(d - 1)] = eta;
        eta -= to.evaluable(d) - from.evaluable(d);
    }
    return c;
}

/// q lies below q2 in the evident-safety order ("q2 is evidently at
/// least as safe as q").
inline bool leq(const Tally& q, const Tally& q2, const SafetyParams& params) {
    return delta_coords(q, q2, params).nonnegative();
}

/// The dose-monotone suborder: q2 has at least as much tolerated dose
/// intensity as q without a raised toxicity profile.  Independent of r.
inline bool leq0(const Tally& q, const Tally& q2) {
    if (q.doses() != q2.doses()) throw std::invalid_argument("leq0: dimension mismatch");
    const auto [u, n] = dose_intensities(q);
    const auto [u2, n2] = dose_intensities(q2);
    const DoseCountVector t = toxicity_profile(q);
    const DoseCountVector t2 = toxicity_profile(q2);
    (void)n;
    (void)n2;
    for (int d = 1; d <= q.doses(); ++d)
        if (u.at(d) > u2.at(d) || t.at(d) < t2.at(d)) return false;
    return true;
}

namespace detail {

inline DeltaCoords absolute_coords(const Tally& q, const SafetyParams& params) {
    return delta_coords(Tally::zeros(params.doses), q, params);
}

/// Inverts (eta, gamma) back to a tally via T_d = -gamma_d and
/// N_d = eta_d + (1+r) * T_D; empty when the counts are not a valid tally.
inline std::optional<Tally> coords_to_tally(const DeltaCoords& c, const SafetyParams& params) {
    const std::size_t doses = c.gamma.size();
    std::vector<int> t(doses), n(doses);
    const long long top_profile = -c.gamma.back();
    long long profile_prev = 0, net_next = 0;
    for (std::size_t i = doses; i-- > 0;) {
        const long long net = c.eta[i] + (1 + params.balance) * top_profile;
        const long long ni = net - net_next;
        net_next = net;
        n[i] = static_cast<int>(ni);
        if (ni < 0) return std::nullopt;
    }
    for (std::size_t i = 0; i < doses; ++i) {
        const long long profile = -c.gamma[i];
        const long long ti = profile - profile_prev;
        profile_prev = profile;
        if (ti < 0 || ti > n[i]) return std::nullopt;
        t[i] = static_cast<int>(ti);
    }
    return Tally(std::move(t), std::move(n));
}

inline DeltaCoords componentwise(const DeltaCoords& a, const DeltaCoords& b, bool take_min) {
    DeltaCoords out = a;
    for (std::size_t i = 0; i < out.eta.size(); ++i)
        out.eta[i] = take_min ? std::min(a.eta[i], b.eta[i]) : std::max(a.eta[i], b.eta[i]);
    for (std::size_t i = 0; i < out.gamma.size(); ++i)
        out.gamma[i] = take_min ? std::min(a.gamma[i], b.gamma[i]) : std::max(a.gamma[i], b.gamma[i]);
    return out;
}

inline std::optional<Tally> bound(const Tally& q, const Tally& q2, const SafetyParams& params,
                                  bool take_min) {
    if (q.doses() != params.doses || q2.doses() != params.doses)
        throw std::invalid_argument("meet/join: dimension mismatch");
    const DeltaCoords c =
        componentwise(absolute_coords(q, params), absolute_coords(q2, params), take_min);
    return coords_to_tally(c, params);
}

}  // namespace detail

/// Greatest lower / least upper bound in coordinate space.  The bound
/// exists as a tally only when the inverted counts are valid; otherwise
/// there is no bound and the empty optional is an ordinary outcome.
inline std::optional<Tally> meet(const Tally& q, const Tally& q2, const SafetyParams& params) {
    return detail::bound(q, q2, params, /*take_min=*/true);
}

inline std::optional<Tally> join(const Tally& q, const Tally& q2, const SafetyParams& params) {
    return detail::bound(q, q2, params, /*take_min=*/false);
}

/// Elements of the set with nothing else above them; canonical
/// ascending order for determinism.  Duplicates are collapsed.
inline std::vector<Tally> maximal_elements(std::vector<Tally> set, const SafetyParams& params) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::vector<Tally> out;
    for (const Tally& m : set) {
        bool dominated = false;
        for (const Tally& e : set) {
            if (e == m) continue;
            if (leq(m, e, params)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(m);
    }
    return out;
}

/// Covering relation of the order restricted to a finite set of
/// distinct tallies.  Edges point from the less safe to the safer
/// tally; nodes are listed in canonical order.
struct HasseEdges {
    std::vector<Tally> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // indices into nodes
};

inline HasseEdges transitive_reduction(std::vector<Tally> set, const SafetyParams& params) {
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end())
        throw std::invalid_argument("transitive_reduction: tallies must be distinct");
    const std::size_t n = set.size();
    std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            below[i][j] = i != j && leq(set[i], set[j], params);
    HasseEdges h;
    h.nodes = std::move(set);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!below[i][j]) continue;
            bool covered = false;
            for (std::size_t k = 0; k < n && !covered; ++k)
                covered = below[i][k] && below[k][j];
            if (!covered) h.edges.emplace_back(i, j);
        }
    }
    return h;
}

/// DOT rendering of a Hasse diagram.  Every node carries its tally text
/// as label and its dose recommendation as both a fill color and a
/// "rec" attribute; output is deterministic for fixed input.
inline std::string hasse_dot(const HasseEdges& hasse, const std::map<Tally, int>& labels) {
    static const char* palette[] = {"red",    "blue", "green",   "orange", "purple",
                                    "brown",  "cyan", "magenta", "gray"};
    constexpr std::size_t palette_size = sizeof(palette) / sizeof(palette[0]);
    std::ostringstream os;
    os << "digraph hasse {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=box, style=filled];\n";
    for (std::size_t i = 0; i < hasse.nodes.size(); ++i) {
        const auto it = labels.find(hasse.nodes[i]);
        if (it == labels.end())
            throw std::invalid_argument("hasse_dot: missing label for " +
                                        to_string(hasse.nodes[i]));
        const int rec = it->second;
        const char* color =
            rec >= 0 && static_cast<std::size_t>(rec) < palette_size ? palette[rec] : "white";
        os << "  n" << i << " [label=\"" << to_string(hasse.nodes[i]) << "\", fillcolor=\""
           << color << "\", rec=" << rec << "];\n";
    }
    for (const auto& [src, dst] : hasse.edges) os << "  n" << src << " -> n" << dst << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace esc
