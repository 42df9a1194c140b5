#include "qmc/kernels.hpp"

#include <gmp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>

#include "qmc/errors.hpp"
#include "qmc/fixedpoint.hpp"
#include "qmc/numeric.hpp"
#include "qmc/polynomial.hpp"

namespace qmc {

namespace {

using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

void check_unit(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw ConfigError("kernel argument outside [0,1]");
}

struct Mpz {
    mpz_t z;
    Mpz() { mpz_init(z); }
    Mpz(const Mpz& o) { mpz_init_set(z, o.z); }
    Mpz& operator=(const Mpz& o) {
        if (this != &o) mpz_set(z, o.z);
        return *this;
    }
    ~Mpz() { mpz_clear(z); }
};

void set_i128(mpz_t z, i128 v) {
    bool neg = v < 0;
    u128 u = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
    std::uint64_t limbs[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
    mpz_import(z, 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
    if (neg) mpz_neg(z, z);
}

Rational make_rational(const mpz_t num, const mpz_t den) {
    Rational r;
    mpz_set(mpq_numref(r.raw()), num);
    mpz_set(mpq_denref(r.raw()), den);
    mpq_canonicalize(r.raw());
    return r;
}

Rational k1_1d(const Rational& x, const Rational& y) {
    Rational u = (x - y).abs();
    return Rational(1) + bernoulli(BernoulliPoly::B1, x) * bernoulli(BernoulliPoly::B1, y) +
           Rational(1, 4) * bernoulli(BernoulliPoly::B2, x) * bernoulli(BernoulliPoly::B2, y) -
           Rational(1, 24) * bernoulli(BernoulliPoly::B4, u);
}

Rational k2_1d(const Rational& x, const Rational& y) {
    Rational t = Rational(1) - x - y + Rational(2) * x * y;
    if (x > y) {
        Rational u = x - y;
        t += u * u * u / Rational(6);
    }
    t -= x * (Rational(1) - y) * (x * x - Rational(2) * y + y * y) / Rational(6);
    return t;
}

Rational k3_1d(const Rational& x, const Rational& y) {
    const Rational& m = x < y ? x : y;
    return Rational(1) + x * y + m * m * m / Rational(3) -
           (x + y) * m * m / Rational(2) + x * y * m;
}

Rational kernel1d_unchecked(KernelId id, const Rational& x, const Rational& y) {
    switch (id) {
        case KernelId::K1: return k1_1d(x, y);
        case KernelId::K2: return k2_1d(x, y);
        default: return k3_1d(x, y);
    }
}

// rows [lo, hi); row i owns the pairs (i, 0..i)
struct RowBlock {
    std::size_t lo, hi;
};

// Partitioning depends only on the point count, never on the thread count,
// and every partial is exact, so any schedule reproduces the same bits.
std::vector<RowBlock> row_blocks(std::size_t n) {
    std::size_t nb = std::min<std::size_t>(64, n);
    std::vector<RowBlock> blocks;
    blocks.reserve(nb);
    u128 total = static_cast<u128>(n) * (n + 1) / 2;
    std::size_t lo = 0;
    u128 cum = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        u128 target = total * (b + 1) / nb;
        std::size_t hi = lo;
        while (hi < n && (cum < target || hi == lo)) cum += ++hi;
        if (b + 1 == nb) hi = n;
        blocks.push_back({lo, hi});
        lo = hi;
    }
    return blocks;
}

void run_blocks(std::size_t nblocks, int threads, const std::function<void(std::size_t)>& work) {
    int t = std::clamp(threads, 1, 64);
    if (t == 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) work(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto loop = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            work(b);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < t; ++i) pool.emplace_back(loop);
    loop();
    for (auto& th : pool) th.join();
}

// ---- generic exact path ----------------------------------------------

// S1 = sum_x prod_i factor(x_i), S2 = sum_{x,y} K^d(x,y), both exact
std::pair<Rational, Rational> sums_generic(KernelId id, const PointSet& p, int threads) {
    std::size_t n = p.size();
    int d = static_cast<int>(p.dim());
    auto blocks = row_blocks(n);
    std::vector<Rational> diag(blocks.size()), off(blocks.size()), single(blocks.size());
    run_blocks(blocks.size(), threads, [&](std::size_t b) {
        Rational dsum, osum, ssum;
        for (std::size_t i = blocks[b].lo; i < blocks[b].hi; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational t(1);
                for (int c = 0; c < d; ++c) t *= kernel1d_unchecked(id, p.at(i, c), p.at(j, c));
                osum += t;
            }
            Rational t(1);
            for (int c = 0; c < d; ++c) t *= kernel1d_unchecked(id, p.at(i, c), p.at(i, c));
            dsum += t;
            if (id != KernelId::K1) {
                Rational s(1);
                for (int c = 0; c < d; ++c) s *= kernel_mean_factor(id, p.at(i, c));
                ssum += s;
            }
        }
        diag[b] = std::move(dsum);
        off[b] = std::move(osum);
        single[b] = std::move(ssum);
    });
    Rational s1, s2;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        s2 += diag[b] + Rational(2) * off[b];
        s1 += single[b];
    }
    if (id == KernelId::K1) s1 = Rational(static_cast<long>(n));
    return {std::move(s1), std::move(s2)};
}

// ---- scaled-integer exact path ---------------------------------------

// All coordinates as a/D over one denominator D <= 2^24; per-dimension
// kernel numerators then fit comfortably in 128 bits:
//   K1 = [720 D^4 + 180 D^2 p1(a) p1(b) + 5 p2(a) p2(b) - q4] / (720 D^4)
//        p1 = 2a - D, p2 = 6a^2 - 6aD + D^2, q4 = 30 (w(D-w))^2 - D^4, w = |a-b|
//   K2 = [6 D^4 - 6 D^3 (a+b) + 12 D^2 ab + D (a-b)_+^3
//         - a (D-b)(a^2 - 2bD + b^2)] / (6 D^4)
//   K3 = [6 D^4 + 6 D^2 ab + 2 D m^3 - 3 D (a+b) m^2 + 6 D abm] / (6 D^4)
// and the single-sum factors over 24 D^4.
struct ScaledEval {
    KernelId id;
    i64 D;
    i128 D2, D3, D4;

    explicit ScaledEval(KernelId kid, i64 den) : id(kid), D(den) {
        D2 = static_cast<i128>(D) * D;
        D3 = D2 * D;
        D4 = D2 * D2;
    }

    i128 pair_num(i64 a, i64 b) const {
        switch (id) {
            case KernelId::K1: {
                i64 p1a = 2 * a - D, p1b = 2 * b - D;
                i64 p2a = 6 * a * a - 6 * a * D + static_cast<i64>(D2);
                i64 p2b = 6 * b * b - 6 * b * D + static_cast<i64>(D2);
                i64 w = a > b ? a - b : b - a;
                i128 t = static_cast<i128>(w) * (D - w);
                i128 q4 = 30 * t * t - D4;
                return 720 * D4 + 180 * D2 * (static_cast<i128>(p1a) * p1b) +
                       5 * (static_cast<i128>(p2a) * p2b) - q4;
            }
            case KernelId::K2: {
                i128 t = 6 * D4 - 6 * D3 * (a + b) + 12 * D2 * (static_cast<i128>(a) * b);
                if (a > b) {
                    i128 u = a - b;
                    t += D * u * u * u;
                }
                i128 q = static_cast<i128>(a) * a - 2 * static_cast<i128>(b) * D +
                         static_cast<i128>(b) * b;
                t -= static_cast<i128>(a) * (D - b) * q;
                return t;
            }
            default: {
                i64 m = a < b ? a : b;
                i128 ab = static_cast<i128>(a) * b;
                i128 m2 = static_cast<i128>(m) * m;
                return 6 * D4 + 6 * D2 * ab + 2 * D * m2 * m - 3 * D * (a + b) * m2 +
                       6 * D * ab * m;
            }
        }
    }

    i128 single_num(i64 a) const {
        i128 a2 = static_cast<i128>(a) * a;
        i128 a3 = a2 * a;
        i128 a4 = a2 * a2;
        if (id == KernelId::K2) return 12 * D4 + a * D3 - 2 * D * a3 + a4;
        return 24 * D4 + 12 * a * D3 + 6 * D2 * a2 - 4 * D * a3 + a4;
    }

    void pair_den(mpz_t out, int d) const {
        set_i128(out, (id == KernelId::K1 ? 720 : 6) * D4);
        mpz_pow_ui(out, out, static_cast<unsigned long>(d));
    }

    void single_den(mpz_t out, int d) const {
        set_i128(out, 24 * D4);
        mpz_pow_ui(out, out, static_cast<unsigned long>(d));
    }
};

// lcm of the coordinate denominators if it stays below 2^24
bool common_denominator(const PointSet& p, i64& D) {
    Mpz l;
    mpz_set_ui(l.z, 1);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t c = 0; c < p.dim(); ++c) {
            mpz_lcm(l.z, l.z, mpq_denref(p.at(i, c).raw()));
            if (mpz_sizeinbase(l.z, 2) > 25) return false;
        }
    unsigned long v = mpz_get_ui(l.z);
    if (v > (1ul << 24)) return false;
    D = static_cast<i64>(v);
    return true;
}

std::pair<Rational, Rational> sums_scaled(KernelId id, const PointSet& p, i64 D, int threads) {
    std::size_t n = p.size();
    int d = static_cast<int>(p.dim());
    ScaledEval ev(id, D);

    std::vector<i64> a(n * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) {
            const Rational& x = p.at(i, c);
            i64 den = static_cast<i64>(mpz_get_ui(mpq_denref(x.raw())));
            i64 num = mpz_get_si(mpq_numref(x.raw()));
            a[i * d + c] = num * (D / den);
        }

    auto blocks = row_blocks(n);
    std::vector<Mpz> diag(blocks.size()), off(blocks.size()), single(blocks.size());
    run_blocks(blocks.size(), threads, [&](std::size_t b) {
        Mpz t1, t2;
        for (std::size_t i = blocks[b].lo; i < blocks[b].hi; ++i) {
            const i64* xi = &a[i * d];
            for (std::size_t j = 0; j <= i; ++j) {
                const i64* xj = &a[j * d];
                set_i128(t1.z, ev.pair_num(xi[0], xj[0]));
                for (int c = 1; c < d; ++c) {
                    set_i128(t2.z, ev.pair_num(xi[c], xj[c]));
                    mpz_mul(t1.z, t1.z, t2.z);
                }
                mpz_add(j == i ? diag[b].z : off[b].z, j == i ? diag[b].z : off[b].z, t1.z);
            }
            if (id != KernelId::K1) {
                set_i128(t1.z, ev.single_num(xi[0]));
                for (int c = 1; c < d; ++c) {
                    set_i128(t2.z, ev.single_num(xi[c]));
                    mpz_mul(t1.z, t1.z, t2.z);
                }
                mpz_add(single[b].z, single[b].z, t1.z);
            }
        }
    });

    Mpz s2num, s1num, den;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        mpz_addmul_ui(s2num.z, off[b].z, 2);
        mpz_add(s2num.z, s2num.z, diag[b].z);
        mpz_add(s1num.z, s1num.z, single[b].z);
    }
    ev.pair_den(den.z, d);
    Rational s2 = make_rational(s2num.z, den.z);
    Rational s1;
    if (id == KernelId::K1) {
        s1 = Rational(static_cast<long>(n));
    } else {
        ev.single_den(den.z, d);
        s1 = make_rational(s1num.z, den.z);
    }
    return {std::move(s1), std::move(s2)};
}

// ---- fixed-point path -------------------------------------------------

struct FixedTables {
    // per point and dimension, three precomputed columns whose meaning
    // depends on the kernel (see fill())
    std::vector<Fixed> c0, c1, c2;
    Fixed konst;   // additive constant of the per-dimension pair term (K1 only)
    Fixed c6, c3, c2i, c24;  // 1/6, 1/3, 1/2, 1/24
    Fixed one;
};

FixedTables fixed_tables(KernelId id, const PointSet& p) {
    std::size_t n = p.size();
    std::size_t d = p.dim();
    FixedTables t;
    t.c0.resize(n * d);
    t.c1.resize(n * d);
    t.c2.resize(n * d);
    t.one = Fixed::from_int(1);
    t.c6 = Fixed::from_rational(Rational(1, 6));
    t.c3 = Fixed::from_rational(Rational(1, 3));
    t.c2i = Fixed::from_rational(Rational(1, 2));
    t.c24 = Fixed::from_rational(Rational(1, 24));
    t.konst = Fixed::from_rational(Rational(721, 720));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < d; ++c) {
            const Rational& x = p.at(i, c);
            Fixed fx = Fixed::from_rational(x);
            std::size_t at = i * d + c;
            switch (id) {
                case KernelId::K1:
                    t.c0[at] = Fixed::from_rational(bernoulli(BernoulliPoly::B1, x));
                    t.c1[at] = Fixed::from_rational(Rational(1, 2) *
                                                    bernoulli(BernoulliPoly::B2, x));
                    t.c2[at] = fx;
                    break;
                case KernelId::K2:
                    t.c0[at] = fx;
                    t.c1[at] = fx * fx;
                    t.c2[at] = t.one - fx;
                    break;
                default:
                    t.c0[at] = fx;
                    t.c1[at] = fx * fx;
                    t.c2[at] = fx * fx * fx;
                    break;
            }
        }
    return t;
}

// one dimension of the pair term
Fixed fixed_pair_dim(KernelId id, const FixedTables& t, std::size_t ia, std::size_t ib) {
    switch (id) {
        case KernelId::K1: {
            // 1 + 1/720 + B1 B1 + (B2/2)(B2/2) - (1/24)(u^2 - u)^2, u = |x-y|
            Fixed u = t.c2[ia] - t.c2[ib];
            u = u.abs();
            Fixed w = u * u - u;
            return t.konst + t.c0[ia] * t.c0[ib] + t.c1[ia] * t.c1[ib] - t.c24 * (w * w);
        }
        case KernelId::K2: {
            const Fixed& x = t.c0[ia];
            const Fixed& y = t.c0[ib];
            Fixed xy = x * y;
            Fixed v = t.one - x - y + xy + xy;
            if (x > y) {
                Fixed u = x - y;
                v += t.c6 * ((u * u) * u);
            }
            Fixed q = t.c1[ia] - y - y + t.c1[ib];  // x^2 - 2y + y^2
            v -= t.c6 * ((x * t.c2[ib]) * q);
            return v;
        }
        default: {
            const Fixed& x = t.c0[ia];
            const Fixed& y = t.c0[ib];
            std::size_t im = x <= y ? ia : ib;
            Fixed xy = x * y;
            return t.one + xy + t.c3 * t.c2[im] - t.c2i * ((x + y) * t.c1[im]) + xy * t.c0[im];
        }
    }
}

Fixed fixed_single_dim(KernelId id, const Fixed& x, const FixedTables& t) {
    // Horner on the closed-form factor
    static const Rational kF2[] = {Rational(1, 2), Rational(1, 24), Rational(0),
                                   Rational(-1, 12), Rational(1, 24)};
    static const Rational kF3[] = {Rational(1), Rational(1, 2), Rational(1, 4),
                                   Rational(-1, 6), Rational(1, 24)};
    const Rational* cs = id == KernelId::K2 ? kF2 : kF3;
    Fixed acc = Fixed::from_rational(cs[4]);
    for (int i = 3; i >= 0; --i) acc = acc * x + Fixed::from_rational(cs[i]);
    (void)t;
    return acc;
}

std::pair<Rational, Rational> sums_fixed(KernelId id, const PointSet& p, int threads) {
    std::size_t n = p.size();
    std::size_t d = p.dim();
    FixedTables t = fixed_tables(id, p);

    auto blocks = row_blocks(n);
    std::vector<Fixed> diag(blocks.size()), off(blocks.size()), single(blocks.size());
    run_blocks(blocks.size(), threads, [&](std::size_t b) {
        Fixed dsum, osum, ssum;
        for (std::size_t i = blocks[b].lo; i < blocks[b].hi; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Fixed v = fixed_pair_dim(id, t, i * d, j * d);
                for (std::size_t c = 1; c < d; ++c) v *= fixed_pair_dim(id, t, i * d + c, j * d + c);
                if (j == i)
                    dsum += v;
                else
                    osum += v;
            }
            if (id != KernelId::K1) {
                Fixed s = fixed_single_dim(id, t.c0[i * d], t);
                for (std::size_t c = 1; c < d; ++c) s *= fixed_single_dim(id, t.c0[i * d + c], t);
                ssum += s;
            }
        }
        diag[b] = dsum;
        off[b] = osum;
        single[b] = ssum;
    });

    Fixed s2f, s1f;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        s2f += diag[b] + off[b] + off[b];
        s1f += single[b];
    }
    Rational s1 = id == KernelId::K1 ? Rational(static_cast<long>(n)) : s1f.to_rational();
    return {std::move(s1), s2f.to_rational()};
}

}  // namespace

const char* kernel_name(KernelId id) {
    switch (id) {
        case KernelId::K1: return "K1";
        case KernelId::K2: return "K2";
        default: return "K3";
    }
}

Rational bernoulli(BernoulliPoly p, const Rational& x) {
    switch (p) {
        case BernoulliPoly::B1: return x - Rational(1, 2);
        case BernoulliPoly::B2: return x * x - x + Rational(1, 6);
        default: {
            Rational x2 = x * x;
            return x2 * x2 - Rational(2) * x2 * x + x2 - Rational(1, 30);
        }
    }
}

Rational kernel1d(KernelId id, const Rational& x, const Rational& y) {
    check_unit(x);
    check_unit(y);
    return kernel1d_unchecked(id, x, y);
}

Rational kernel_tensor(KernelId id, const std::vector<Rational>& x,
                       const std::vector<Rational>& y) {
    if (x.size() != y.size()) throw ConfigError("kernel arguments of different dimension");
    Rational t(1);
    for (std::size_t i = 0; i < x.size(); ++i) t *= kernel1d(id, x[i], y[i]);
    return t;
}

Rational kernel_mean_factor(KernelId id, const Rational& x) {
    switch (id) {
        case KernelId::K1: return Rational(1);
        case KernelId::K2:
            return Rational(1, 2) + x / Rational(24) - x * x * x / Rational(12) +
                   x * x * x * x / Rational(24);
        default:
            return Rational(1) + x / Rational(2) + x * x / Rational(4) -
                   x * x * x / Rational(6) + x * x * x * x / Rational(24);
    }
}

Rational kernel_mean_check(KernelId id, const Rational& x) {
    check_unit(x);
    // piecewise polynomials of K(x, .) in y, split at y = x
    Polynomial low, high;
    switch (id) {
        case KernelId::K1: {
            Polynomial b1({Rational(-1, 2), Rational(1)});
            Polynomial b2({Rational(1, 6), Rational(-1), Rational(1)});
            Polynomial b4({Rational(-1, 30), Rational(0), Rational(1), Rational(-2), Rational(1)});
            Polynomial common = Polynomial::constant(Rational(1)) +
                                b1 * bernoulli(BernoulliPoly::B1, x) +
                                b2 * (Rational(1, 4) * bernoulli(BernoulliPoly::B2, x));
            low = common - b4.compose_affine(Rational(-1), x) * Rational(1, 24);
            high = common - b4.compose_affine(Rational(1), -x) * Rational(1, 24);
            break;
        }
        case KernelId::K2: {
            Polynomial base({Rational(1) - x, Rational(2) * x - Rational(1)});
            Polynomial tail = Polynomial({Rational(1), Rational(-1)}) *
                              Polynomial({x * x, Rational(-2), Rational(1)}) *
                              (-x / Rational(6));
            base += tail;
            Polynomial cube = Polynomial::monomial(3, Rational(1, 6));
            low = base + cube.compose_affine(Rational(-1), x);
            high = base;
            break;
        }
        default: {
            low = Polynomial({Rational(1), x, x / Rational(2), Rational(-1, 6)});
            high = Polynomial({Rational(1) - x * x * x / Rational(6), x + x * x / Rational(2)});
            break;
        }
    }
    return low.integral(Rational(0), x) + high.integral(x, Rational(1));
}

Rational kernel_double_integral(KernelId id, int d) {
    if (d < 1) throw ConfigError("dimension must be positive");
    switch (id) {
        case KernelId::K1: return Rational(1);
        case KernelId::K2: return pow(Rational(61, 120), static_cast<unsigned>(d));
        default: return pow(Rational(13, 10), static_cast<unsigned>(d));
    }
}

WceResult wce_squared(KernelId id, const PointSet& p, const WceOptions& opts) {
    std::size_t n = p.size();
    if (n == 0) throw ConfigError("worst-case error of an empty point set");
    if (opts.digits < 1 || opts.digits > 10000) throw ConfigError("unreasonable digit count");
    int d = static_cast<int>(p.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) check_unit(p.at(i, c));

    WceMode mode = opts.mode;
    if (mode == WceMode::Auto) mode = n <= 8192 ? WceMode::Exact : WceMode::Fixed60;

    std::pair<Rational, Rational> s;
    if (mode == WceMode::Exact) {
        i64 D = 0;
        if (common_denominator(p, D))
            s = sums_scaled(id, p, D, opts.threads);
        else
            s = sums_generic(id, p, opts.threads);
    } else {
        s = sums_fixed(id, p, opts.threads);
    }

    Rational nn(static_cast<long>(n));
    Rational sq = kernel_double_integral(id, d) - Rational(2) / nn * s.first +
                  s.second / (nn * nn);

    if (sq.sign() < 0) {
        // exact arithmetic cannot go negative; fixed point may undershoot by
        // far less than its documented bound
        if (mode == WceMode::Exact || sq < -pow(Rational(1, 10), 50))
            throw std::logic_error("squared worst-case error came out negative");
        sq = Rational(0);
    }

    WceResult r;
    r.squared_error = std::move(sq);
    r.error_digits = sqrt_to_digits(r.squared_error, opts.digits);
    r.kernel = id;
    r.n_points = n;
    r.dim = d;
    r.used_mode = mode;
    return r;
}

}  // namespace qmc
