#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace esc {

/// Per-dose toxicity record t/n: t toxicities among n evaluable
/// participants, for dose levels 1..D.  Immutable value type; the
/// invariant 0 <= t_d <= n_d holds for every dose.
class Tally {
public:
    struct DoseCount {
        int tox = 0;
        int evaluable = 0;
        friend bool operator==(const DoseCount&, const DoseCount&) = default;
    };

    explicit Tally(int doses) : counts_(check_doses(doses)) {}

    Tally(std::vector<int> tox, std::vector<int> evaluable) {
        if (tox.size() != evaluable.size() || tox.empty())
            throw std::invalid_argument("tally: count vectors must match and be nonempty");
        counts_.reserve(tox.size());
        for (std::size_t i = 0; i < tox.size(); ++i)
            counts_.push_back(checked(tox[i], evaluable[i]));
    }

    static Tally zeros(int doses) { return Tally(doses); }

    int doses() const { return static_cast<int>(counts_.size()); }

    /// Accessors take 1-based dose levels, matching the domain convention
    /// (dose level 0 is a recommendation value, never a tally index).
    int tox(int dose) const { return at(dose).tox; }
    int evaluable(int dose) const { return at(dose).evaluable; }
    int tolerated(int dose) const { return at(dose).evaluable - at(dose).tox; }

    /// New tally with (dtox/dn) added at one dose.  Deltas may be negative;
    /// the result must still satisfy the tally invariant.
    Tally adjusted(int dose, int dtox, int dn) const {
        Tally out = *this;
        DoseCount& c = out.counts_[index(dose)];
        c = checked(c.tox + dtox, c.evaluable + dn);
        return out;
    }

    int total_tox() const {
        int s = 0;
        for (const DoseCount& c : counts_) s += c.tox;
        return s;
    }
    int total_evaluable() const {
        int s = 0;
        for (const DoseCount& c : counts_) s += c.evaluable;
        return s;
    }

    friend bool operator==(const Tally&, const Tally&) = default;

    /// Lexicographic on (t_1, n_1, ..., t_D, n_D); the canonical ordering
    /// used for deterministic output.
    friend bool operator<(const Tally& a, const Tally& b) {
        if (a.doses() != b.doses()) return a.doses() < b.doses();
        for (std::size_t i = 0; i < a.counts_.size(); ++i) {
            if (a.counts_[i].tox != b.counts_[i].tox)
                return a.counts_[i].tox < b.counts_[i].tox;
            if (a.counts_[i].evaluable != b.counts_[i].evaluable)
                return a.counts_[i].evaluable < b.counts_[i].evaluable;
        }
        return false;
    }

    /// Componentwise sum; the monoidal operation with unit all-0/0.
    friend Tally operator+(const Tally& a, const Tally& b) {
        if (a.doses() != b.doses())
            throw std::invalid_argument("tally: dimension mismatch in +");
        Tally out = a;
        for (std::size_t i = 0; i < out.counts_.size(); ++i) {
            out.counts_[i].tox += b.counts_[i].tox;
            out.counts_[i].evaluable += b.counts_[i].evaluable;
        }
        return out;
    }

private:
    std::vector<DoseCount> counts_;

    static std::vector<DoseCount> check_doses(int doses) {
        if (doses < 1) throw std::invalid_argument("tally: need at least one dose");
        return std::vector<DoseCount>(static_cast<std::size_t>(doses));
    }
    static DoseCount checked(int tox, int evaluable) {
        if (tox < 0 || evaluable < tox)
            throw std::invalid_argument("tally: requires 0 <= t <= n at every dose");
        return DoseCount{tox, evaluable};
    }
    std::size_t index(int dose) const {
        if (dose < 1 || dose > doses())
            throw std::out_of_range("tally: dose level out of range");
        return static_cast<std::size_t>(dose - 1);
    }
    const DoseCount& at(int dose) const { return counts_[index(dose)]; }
};

/// Dose-wise count vector: a toxicity profile T (non-decreasing) or a
/// tolerated/net dose intensity U/N (non-increasing).
struct DoseCountVector {
    enum class Kind { ToxProfile, ToleratedIntensity, NetIntensity };

    Kind kind;
    std::vector<int> values;

    DoseCountVector(Kind k, std::vector<int> v) : kind(k), values(std::move(v)) {
        if (values.empty()) throw std::invalid_argument("dose count vector: empty");
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            const bool ok = kind == Kind::ToxProfile ? values[i] <= values[i + 1]
                                                     : values[i] >= values[i + 1];
            if (!ok) throw std::invalid_argument("dose count vector: monotonicity violated");
        }
        if (values.back() < 0 || values.front() < 0)
            throw std::invalid_argument("dose count vector: negative count");
    }

    int at(int dose) const { return values.at(static_cast<std::size_t>(dose - 1)); }
    friend bool operator==(const DoseCountVector&, const DoseCountVector&) = default;
};

/// T_d = sum of toxicities at doses <= d (a sequence of lower tails).
inline DoseCountVector toxicity_profile(const Tally& q) {
    std::vector<int> t(static_cast<std::size_t>(q.doses()));
    int acc = 0;
    for (int d = 1; d <= q.doses(); ++d) {
        acc += q.tox(d);
        t[static_cast<std::size_t>(d - 1)] = acc;
    }
    return {DoseCountVector::Kind::ToxProfile, std::move(t)};
}

/// U_d = tolerations at doses >= d, N_d = evaluable at doses >= d
/// (sequences of upper tails, decreasing like survival curves).
inline std::pair<DoseCountVector, DoseCountVector> dose_intensities(const Tally& q) {
    std::vector<int> u(static_cast<std::size_t>(q.doses()));
    std::vector<int> n(static_cast<std::size_t>(q.doses()));
    int uacc = 0, nacc = 0;
    for (int d = q.doses(); d >= 1; --d) {
        uacc += q.tolerated(d);
        nacc += q.evaluable(d);
        u[static_cast<std::size_t>(d - 1)] = uacc;
        n[static_cast<std::size_t>(d - 1)] = nacc;
    }
    return {DoseCountVector{DoseCountVector::Kind::ToleratedIntensity, std::move(u)},
            DoseCountVector{DoseCountVector::Kind::NetIntensity, std::move(n)}};
}

/// The embedding q |-> (T, U); injective, inverted by successive
/// differencing in sigma_invert.
inline std::pair<DoseCountVector, DoseCountVector> sigma_embed(const Tally& q) {
    return {toxicity_profile(q), dose_intensities(q).first};
}

inline Tally sigma_invert(const DoseCountVector& tox_profile,
                          const DoseCountVector& tolerated_intensity) {
    if (tox_profile.kind != DoseCountVector::Kind::ToxProfile ||
        tolerated_intensity.kind != DoseCountVector::Kind::ToleratedIntensity)
        throw std::invalid_argument("sigma_invert: wrong vector kinds");
    const std::size_t doses = tox_profile.values.size();
    if (tolerated_intensity.values.size() != doses)
        throw std::invalid_argument("sigma_invert: dimension mismatch");
    std::vector<int> t(doses), n(doses);
    for (std::size_t i = 0; i < doses; ++i) {
        const int ti = tox_profile.values[i] - (i == 0 ? 0 : tox_profile.values[i - 1]);
        const int ui = tolerated_intensity.values[i] -
                       (i + 1 < doses ? tolerated_intensity.values[i + 1] : 0);
        if (ti < 0 || ui < 0)
            throw std::invalid_argument("sigma_invert: not in the image of the embedding");
        t[i] = ti;
        n[i] = ti + ui;
    }
    return Tally(std::move(t), std::move(n));
}

/// Count of participants dosed at each level whose assessment has not
/// yet resolved.
struct PendingCounts {
    std::vector<int> counts;

    explicit PendingCounts(int doses) {
        if (doses < 1) throw std::invalid_argument("pending counts: need >= 1 dose");
        counts.assign(static_cast<std::size_t>(doses), 0);
    }
    explicit PendingCounts(std::vector<int> c) : counts(std::move(c)) {
        if (counts.empty()) throw std::invalid_argument("pending counts: empty");
        for (int v : counts)
            if (v < 0) throw std::invalid_argument("pending counts: negative");
    }

    int doses() const { return static_cast<int>(counts.size()); }
    int at(int dose) const { return counts.at(static_cast<std::size_t>(dose - 1)); }
    friend bool operator==(const PendingCounts&, const PendingCounts&) = default;
};

/// Resolved tally plus pending assessments: the trial state a rolling
/// enrollment rule must decide from.
struct EnrolledState {
    Tally tally;
    PendingCounts pending;

    EnrolledState(Tally q, PendingCounts p) : tally(std::move(q)), pending(std::move(p)) {
        if (tally.doses() != pending.doses())
            throw std::invalid_argument("enrolled state: dimension mismatch");
    }
};

/// Worst-case resolution of the enrolled state: every pending assessment
/// counted as a toxicity at its pending dose, resolved counts retained.
inline Tally pessimize(const EnrolledState& state) {
    Tally out = state.tally;
    for (int d = 1; d <= out.doses(); ++d) {
        const int p = state.pending.at(d);
        if (p > 0) out = out.adjusted(d, p, p);
    }
    return out;
}

/// Canonical text form: D whitespace-separated "t/n" tokens, lowest dose
/// first.  parse_tally and to_string round-trip exactly.
inline std::string to_string(const Tally& q) {
    std::ostringstream os;
    for (int d = 1; d <= q.doses(); ++d) {
        if (d > 1) os << ' ';
        os << q.tox(d) << '/' << q.evaluable(d);
    }
    return os.str();
}

inline Tally parse_tally(const std::string& text) {
    std::istringstream is(text);
    std::vector<int> t, n;
    std::string token;
    while (is >> token) {
        const std::size_t slash = token.find('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == token.size())
            throw std::invalid_argument("tally parse: expected t/n, got '" + token + "'");
        std::size_t pos_t = 0, pos_n = 0;
        int ti = 0, ni = 0;
        try {
            ti = std::stoi(token.substr(0, slash), &pos_t);
            ni = std::stoi(token.substr(slash + 1), &pos_n);
        } catch (const std::exception&) {
            throw std::invalid_argument("tally parse: bad count in '" + token + "'");
        }
        if (pos_t != slash || pos_n != token.size() - slash - 1 || ti < 0 || ni < 0)
            throw std::invalid_argument("tally parse: bad count in '" + token + "'");
        t.push_back(ti);
        n.push_back(ni);
    }
    if (t.empty()) throw std::invalid_argument("tally parse: empty input");
    return Tally(std::move(t), std::move(n));
}

}  // namespace esc
