#include "odb/growth.hpp"

#include <sstream>

#include "odb/rng.hpp"

namespace odb {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::odb: return "odb";
        case Variant::weak: return "weak";
        case Variant::strict: return "strict";
        case Variant::inhomogeneous: return "inhomogeneous";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "odb") return Variant::odb;
    if (name == "weak") return Variant::weak;
    if (name == "strict") return Variant::strict;
    if (name == "inhomogeneous") return Variant::inhomogeneous;
    throw ArgumentError("unknown variant: " + name);
}

double MarkField::prob_at(int x) const {
    if (probabilities.size() == 1) return probabilities[0];
    return probabilities[std::size_t(x)];
}

bool MarkField::mark(int x, int t) const {
    if (x < 0 || t < 0 || x > x_max || t > t_max) return false;
    if (explicit_marks) return grid[std::size_t(t) * (x_max + 1) + x] != 0;
    return u01(hash4(seed, kStreamMarks, std::uint64_t(x), std::uint64_t(t))) < prob_at(x);
}

MarkField random_mark_field(int x_max, int t_max, std::vector<double> probabilities,
                            std::uint64_t seed) {
    if (x_max < 0 || t_max < 0) throw ArgumentError("mark field window must be nonnegative");
    if (probabilities.empty()) throw ArgumentError("need at least one mark probability");
    if (probabilities.size() != 1 && probabilities.size() != std::size_t(x_max) + 1)
        throw ArgumentError("per-site probability vector must have x_max+1 entries");
    for (double p : probabilities)
        if (!(p > 0.0 && p < 1.0)) throw ArgumentError("mark probabilities must lie in (0,1)");
    MarkField f;
    f.x_max = x_max;
    f.t_max = t_max;
    f.probabilities = std::move(probabilities);
    f.seed = seed;
    return f;
}

MarkField explicit_mark_field(int x_max, int t_max,
                              const std::vector<std::pair<int, int>>& marks) {
    if (x_max < 0 || t_max < 0) throw ArgumentError("mark field window must be nonnegative");
    MarkField f;
    f.x_max = x_max;
    f.t_max = t_max;
    f.probabilities = {0.5};  // unused for explicit fields
    f.explicit_marks = true;
    f.grid.assign(std::size_t(t_max + 1) * (x_max + 1), 0);
    for (auto [x, t] : marks) {
        if (x < 0 || t < 0 || x > x_max || t > t_max)
            throw ArgumentError("explicit mark outside the window");
        f.grid[std::size_t(t) * (x_max + 1) + x] = 1;
    }
    return f;
}

namespace {

constexpr std::int64_t kNegInf = HeightTrace::neg_inf;

inline std::int64_t saturating_inc(std::int64_t h) { return h == kNegInf ? kNegInf : h + 1; }

}  // namespace

HeightTrace simulate(Variant variant, int x_max, int t_max, const MarkField& field) {
    if (x_max < 0 || t_max < 0) throw ArgumentError("window must be nonnegative");
    if (variant == Variant::inhomogeneous && !field.explicit_marks &&
        field.probabilities.size() != std::size_t(x_max) + 1)
        throw ArgumentError("inhomogeneous variant needs one probability per site");
    if (field.x_max < x_max || field.t_max < t_max - 1)
        throw ArgumentError("mark field window smaller than simulation window");

    HeightTrace tr;
    tr.x_max = x_max;
    tr.t_max = t_max;
    tr.variant = variant;
    tr.heights.assign(std::size_t(t_max + 1) * (x_max + 1), kNegInf);
    tr.at(0, 0) = 0;

    // Per-site rested flags for the strict variant: true when the height did
    // not increase at the previous step (all sites start rested).
    std::vector<std::uint8_t> rested(std::size_t(x_max) + 1, 1);

    for (int t = 1; t <= t_max; ++t) {
        const int tc = t - 1;  // coin row consumed by the step t-1 -> t
        switch (variant) {
            case Variant::odb:
            case Variant::inhomogeneous:
                for (int x = 0; x <= x_max; ++x) {
                    const std::int64_t left = x > 0 ? tr.at(x - 1, tc) : kNegInf;
                    std::int64_t stay = tr.at(x, tc);
                    if (stay != kNegInf && field.mark(x, tc)) ++stay;
                    tr.at(x, t) = std::max(left, stay);
                }
                break;
            case Variant::weak:
                for (int x = 0; x <= x_max; ++x) {
                    const std::int64_t left = x > 0 ? tr.at(x - 1, tc) : kNegInf;
                    const std::int64_t base = std::max(left, tr.at(x, tc));
                    tr.at(x, t) =
                        (base != kNegInf && field.mark(x, tc)) ? base + 1 : base;
                }
                break;
            case Variant::strict: {
                std::vector<std::uint8_t> rested_next(rested);
                for (int x = 0; x <= x_max; ++x) {
                    const std::int64_t here = tr.at(x, tc);
                    const std::int64_t left = x > 0 ? tr.at(x - 1, tc) : kNegInf;
                    std::int64_t next = here;
                    if (left > here) {
                        next = left;  // forced transport up to the left height
                    } else if (x > 0 && rested[std::size_t(x - 1)] && left == here &&
                               here != kNegInf && field.mark(x, tc)) {
                        next = here + 1;
                    }
                    tr.at(x, t) = next;
                    rested_next[std::size_t(x)] = (next == here) ? 1 : 0;
                }
                rested.swap(rested_next);
                break;
            }
        }
    }
    return tr;
}

HeightTrace simulate(Variant variant, int x_max, int t_max, std::vector<double> probabilities,
                     std::uint64_t seed) {
    MarkField f = random_mark_field(x_max, std::max(t_max - 1, 0), std::move(probabilities), seed);
    return simulate(variant, x_max, t_max, f);
}

void validate(const HeightTrace& tr) {
    auto fail = [&](int x, int t, const char* what) {
        throw ComputeError("trace invariant violated at x=" + std::to_string(x) +
                           " t=" + std::to_string(t) + ": " + what);
    };
    if (tr.at(0, 0) != 0) fail(0, 0, "h_0(0) != 0");
    for (int x = 1; x <= tr.x_max; ++x)
        if (tr.at(x, 0) != kNegInf) fail(x, 0, "h_0(x>0) finite");
    for (int t = 0; t <= tr.t_max; ++t) {
        for (int x = 0; x <= tr.x_max; ++x) {
            const std::int64_t h = tr.at(x, t);
            if (t + 1 <= tr.t_max && h > tr.at(x, t + 1)) fail(x, t, "decreasing in t");
            if (x > 0) {
                const std::int64_t hl = tr.at(x - 1, t);
                if (hl != kNegInf && h != kNegInf && hl > h + 1) fail(x, t, "Lipschitz");
            }
            const bool reachable = x <= t;
            if (reachable != (h != kNegInf)) fail(x, t, "reachability");
            if (h == kNegInf) continue;
            std::int64_t cap = 0;
            switch (tr.variant) {
                case Variant::odb:
                case Variant::inhomogeneous: cap = t - x; break;
                case Variant::weak: cap = t; break;
                case Variant::strict: cap = std::min(t - x, x); break;
            }
            if (h < 0 || h > cap) fail(x, t, "height range");
        }
    }
}

std::string trace_to_csv(const HeightTrace& tr) {
    std::ostringstream os;
    os << "x,t,h\n";
    for (int x = 0; x <= tr.x_max; ++x)
        for (int t = 0; t <= tr.t_max; ++t) {
            os << x << ',' << t << ',';
            const std::int64_t h = tr.at(x, t);
            if (h == kNegInf)
                os << "-inf";
            else
                os << h;
            os << '\n';
        }
    return os.str();
}

}  // namespace odb
