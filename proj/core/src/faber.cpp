#include "qmc/faber.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>

#include "qmc/errors.hpp"

namespace qmc {

namespace {

// x - floor(x), exact
Rational frac_one(const Rational& x) {
    mpz_t fl;
    mpz_init(fl);
    mpz_fdiv_q(fl, mpq_numref(x.raw()), mpq_denref(x.raw()));
    Rational shift;
    mpq_set_z(shift.raw(), fl);
    mpz_clear(fl);
    return x - shift;
}

Rational dyadic_point(std::uint64_t num, unsigned log2_den) {
    return Rational::dyadic(num, log2_den);
}

}  // namespace

FaberCoefficients::FaberCoefficients(DomainKind kind, int d, int max_level)
    : kind_(kind), d_(d), max_level_(max_level) {
    if (d < 1) throw ConfigError("coefficient table needs dimension >= 1");
    if (max_level < -1) throw ConfigError("level budget must be >= -1");
    if (max_level > 62) throw ConfigError("level budget too large");
}

void FaberCoefficients::validate_index(const LevelIndex& idx) const {
    if (static_cast<int>(idx.j.size()) != d_ || static_cast<int>(idx.k.size()) != d_)
        throw ConfigError("level index has wrong dimension");
    for (int i = 0; i < d_; ++i) {
        int j = idx.j[i];
        std::int64_t k = idx.k[i];
        if (j < -1 || j > max_level_) throw ConfigError("level out of range");
        if (j == -1) {
            std::int64_t kmax = kind_ == DomainKind::NonPeriodic ? 1 : 0;
            if (k < 0 || k > kmax) throw ConfigError("boundary index out of range");
        } else {
            if (k < 0 || k >= (std::int64_t{1} << j)) throw ConfigError("shift index out of range");
        }
    }
}

void FaberCoefficients::set(const LevelIndex& idx, Rational value) {
    validate_index(idx);
    if (value.is_zero())
        entries_.erase(idx);
    else
        entries_[idx] = std::move(value);
}

Rational FaberCoefficients::get(const LevelIndex& idx) const {
    validate_index(idx);
    auto it = entries_.find(idx);
    return it == entries_.end() ? Rational(0) : it->second;
}

void FaberCoefficients::write_csv(std::ostream& os) const {
    for (int i = 1; i <= d_; ++i) os << 'j' << i << ',';
    for (int i = 1; i <= d_; ++i) os << 'k' << i << ',';
    os << "numerator,denominator\n";
    for (const auto& [idx, val] : entries_) {
        for (int i = 0; i < d_; ++i) os << idx.j[i] << ',';
        for (int i = 0; i < d_; ++i) os << idx.k[i] << ',';
        os << val.num_string() << ',' << val.den_string() << '\n';
    }
}

Rational faber_hat(int j, std::int64_t k, const Rational& x, DomainKind kind) {
    if (j < -1) throw ConfigError("level must be >= -1");
    Rational xv = x;
    if (kind == DomainKind::Periodic) {
        xv = frac_one(x);
        if (j == -1) {
            if (k != 0) throw ConfigError("periodic boundary index must be 0");
            return Rational(1);
        }
    } else {
        if (x.sign() < 0 || x > Rational(1)) throw ConfigError("hat argument outside [0,1]");
        if (j == -1) {
            if (k != 0 && k != 1) throw ConfigError("boundary index out of range");
            Rational v = Rational(1) - (xv - Rational(k)).abs();
            return v.sign() > 0 ? v : Rational(0);
        }
    }
    if (k < 0 || k >= (std::int64_t{1} << j)) throw ConfigError("shift index out of range");
    Rational left = Rational(static_cast<long>(k)) / Rational(std::int64_t{1} << j);
    Rational half = Rational(1, 2 * (std::int64_t{1} << j));  // 2^-(j+1)
    Rational mid = left + half;
    Rational scale(2 * (std::int64_t{1} << j));  // 2^(j+1)
    if (xv <= left || xv >= left + half + half) return Rational(0);
    if (xv <= mid) return scale * (xv - left);
    return scale * (left + half + half - xv);
}

namespace {

struct Tap {
    std::size_t grid_index;  // multiple of the finest step along this axis
    Rational weight;
};

// taps of the univariate analysis functional at (j, k), on the grid of
// mesh 2^-(levels+1): level -1 samples an endpoint, level j >= 0 takes the
// centered second difference -1/2 [f(t) - 2 f(t+h) + f(t+2h)].
std::vector<Tap> stencil(int j, std::int64_t k, int levels, DomainKind kind) {
    std::size_t n = std::size_t{1} << (levels + 1);
    if (j == -1) {
        if (kind == DomainKind::Periodic) return {{0, Rational(1)}};
        return {{k == 0 ? 0 : n, Rational(1)}};
    }
    std::size_t step = n >> (j + 1);
    std::size_t base = static_cast<std::size_t>(k) * 2 * step;
    return {{base, Rational(-1, 2)}, {base + step, Rational(1)}, {base + 2 * step, Rational(-1, 2)}};
}

std::vector<std::int64_t> index_range(int j, DomainKind kind) {
    if (j == -1) {
        if (kind == DomainKind::Periodic) return {0};
        return {0, 1};
    }
    std::vector<std::int64_t> r(std::size_t{1} << j);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::int64_t>(i);
    return r;
}

}  // namespace

FaberCoefficients analyze(const std::function<Rational(const std::vector<Rational>&)>& f, int d,
                          int max_level, DomainKind kind) {
    FaberCoefficients out(kind, d, max_level);
    int levels = max_level < 0 ? -1 : max_level;
    std::size_t n = std::size_t{1} << (levels + 1);  // finest mesh 1/n
    std::size_t axis = n + 1;

    std::size_t total = 1;
    for (int i = 0; i < d; ++i) {
        if (total > (std::size_t{1} << 26) / axis) throw BudgetError("analysis grid too large");
        total *= axis;
    }

    // evaluate f once per grid node, then every stencil is a table lookup
    std::vector<Rational> grid(total);
    std::vector<std::size_t> gi(d, 0);
    std::vector<Rational> pt(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (int i = 0; i < d; ++i) {
            std::size_t g = gi[i];
            if (kind == DomainKind::Periodic && g == n) g = 0;
            pt[i] = dyadic_point(g, static_cast<unsigned>(levels + 1));
        }
        grid[flat] = f(pt);
        for (int i = d - 1; i >= 0; --i) {
            if (++gi[i] < axis) break;
            gi[i] = 0;
        }
    }

    LevelIndex idx;
    idx.j.assign(d, -1);
    idx.k.assign(d, 0);
    std::vector<std::vector<Tap>> taps(d);

    // odometer over level vectors in {-1..max_level}^d, then index vectors
    std::vector<int> jv(d, -1);
    for (;;) {
        std::vector<std::vector<std::int64_t>> kranges(d);
        for (int i = 0; i < d; ++i) kranges[i] = index_range(jv[i], kind);
        std::vector<std::size_t> kpos(d, 0);
        for (;;) {
            for (int i = 0; i < d; ++i) {
                idx.j[i] = jv[i];
                idx.k[i] = kranges[i][kpos[i]];
                taps[i] = stencil(jv[i], idx.k[i], levels, kind);
            }
            Rational coeff;
            std::vector<std::size_t> tpos(d, 0);
            for (;;) {
                std::size_t flat = 0;
                Rational w(1);
                for (int i = 0; i < d; ++i) {
                    flat = flat * axis + taps[i][tpos[i]].grid_index;
                    w *= taps[i][tpos[i]].weight;
                }
                coeff += w * grid[flat];
                int i = d - 1;
                for (; i >= 0; --i) {
                    if (++tpos[i] < taps[i].size()) break;
                    tpos[i] = 0;
                }
                if (i < 0) break;
            }
            out.set(idx, std::move(coeff));
            int i = d - 1;
            for (; i >= 0; --i) {
                if (++kpos[i] < kranges[i].size()) break;
                kpos[i] = 0;
            }
            if (i < 0) break;
        }
        int i = d - 1;
        for (; i >= 0; --i) {
            if (++jv[i] <= max_level) break;
            jv[i] = -1;
        }
        if (i < 0) break;
    }
    return out;
}

Rational reconstruct(const FaberCoefficients& c, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != c.dim()) throw ConfigError("point has wrong dimension");
    Rational sum;
    for (const auto& [idx, val] : c.entries()) {
        Rational term = val;
        for (int i = 0; i < c.dim() && !term.is_zero(); ++i)
            term *= faber_hat(idx.j[i], idx.k[i], x[i], c.domain());
        sum += term;
    }
    return sum;
}

namespace {

NormReport level_aggregate(const FaberCoefficients& c, bool squared) {
    int d = c.dim();
    int top = c.max_level();

    std::map<std::vector<int>, Rational> sums;
    for (const auto& [idx, val] : c.entries()) {
        Rational v = squared ? val * val : val.abs();
        sums[idx.j] += v;
    }

    std::size_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= static_cast<std::size_t>(top + 2);
        if (count > (std::size_t{1} << 20)) throw BudgetError("too many levels to report");
    }

    NormReport rep;
    rep.levels.reserve(count);
    std::vector<int> jv(d, -1);
    for (;;) {
        unsigned l1 = 0;
        for (int ji : jv) l1 += static_cast<unsigned>(ji < 0 ? -ji : ji);
        unsigned shift = squared ? 3 * l1 : l1;
        Rational weight = Rational(1);
        // 2^shift; shift stays small (levels are), but go via pow for clarity
        weight = pow(Rational(2), shift);
        auto it = sums.find(jv);
        Rational value = it == sums.end() ? Rational(0) : weight * it->second;
        rep.levels.push_back({jv, value});
        if (rep.arg_sup.empty() ? !value.is_zero() : value > rep.sup) {
            rep.sup = value;
            rep.arg_sup = jv;
        }
        int i = d - 1;
        for (; i >= 0; --i) {
            if (++jv[i] <= top) break;
            jv[i] = -1;
        }
        if (i < 0) break;
    }
    return rep;
}

}  // namespace

NormReport dyadic_h2_norm(const FaberCoefficients& c) { return level_aggregate(c, true); }

NormReport besov_1inf_norm(const FaberCoefficients& c) { return level_aggregate(c, false); }

}  // namespace qmc
