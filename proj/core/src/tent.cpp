#include "qmc/tent.hpp"

#include <cstdint>
#include <map>
#include <utility>

#include "qmc/errors.hpp"

namespace qmc {

Rational tent_coordinate(const Rational& y) {
    if (y.sign() < 0 || y > Rational(1)) throw ConfigError("tent argument outside [0,1]");
    return (Rational(2) * y - Rational(1)).abs();
}

std::vector<Rational> tent_point(const std::vector<Rational>& y) {
    std::vector<Rational> x;
    x.reserve(y.size());
    for (const Rational& c : y) x.push_back(tent_coordinate(c));
    return x;
}

PointSet tent_pullback(const PointSet& p) {
    PointSet out(p.dim());
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out.append(tent_point(p.point(i)));
    return out;
}

namespace {

struct Target {
    int j;
    std::int64_t k;
    int sign;
};

// where one univariate input coefficient lands under f -> f(|2x-1|)
std::vector<Target> targets(int j, std::int64_t k) {
    if (j == -1) {
        if (k == 0) return {{0, 0, +1}};
        return {{-1, 0, +1}, {0, 0, -1}};
    }
    std::int64_t half = std::int64_t{1} << j;
    return {{j + 1, half - k - 1, +1}, {j + 1, k + half, +1}};
}

}  // namespace

FaberCoefficients tent_coefficient_map(const FaberCoefficients& c, int level_budget) {
    if (c.domain() != DomainKind::NonPeriodic)
        throw ConfigError("tent coefficient map expects nonperiodic input");
    if (level_budget < -1 || level_budget > c.max_level())
        throw ConfigError("level budget exceeds the table's completeness");

    int d = c.dim();
    FaberCoefficients out(DomainKind::Periodic, d, level_budget + 1);
    std::map<LevelIndex, Rational> acc;

    std::vector<std::vector<Target>> tg(d);
    for (const auto& [idx, val] : c.entries()) {
        bool within = true;
        for (int i = 0; i < d; ++i)
            if (idx.j[i] > level_budget) within = false;
        if (!within) continue;
        for (int i = 0; i < d; ++i) tg[i] = targets(idx.j[i], idx.k[i]);

        LevelIndex oidx;
        oidx.j.assign(d, 0);
        oidx.k.assign(d, 0);
        std::vector<std::size_t> pos(d, 0);
        for (;;) {
            int sign = 1;
            for (int i = 0; i < d; ++i) {
                const Target& t = tg[i][pos[i]];
                oidx.j[i] = t.j;
                oidx.k[i] = t.k;
                sign *= t.sign;
            }
            acc[oidx] += sign > 0 ? val : -val;
            int i = d - 1;
            for (; i >= 0; --i) {
                if (++pos[i] < tg[i].size()) break;
                pos[i] = 0;
            }
            if (i < 0) break;
        }
    }

    for (auto& [idx, val] : acc) out.set(idx, std::move(val));
    return out;
}

FaberCoefficients tent_coefficient_map(const FaberCoefficients& c) {
    return tent_coefficient_map(c, c.max_level());
}

}  // namespace qmc
