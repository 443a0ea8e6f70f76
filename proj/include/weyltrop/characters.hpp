#pragma once

// Partitions, Maya diagrams and core partitions; Schur functions and
// universal characters via (twisted) Jacobi-Trudi determinants; q-series
// and elliptic-gamma numerics; and the numeric certification of the
// character-polynomial specializations of the tau functions through the
// bilinear relation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "weyltrop/painleve.hpp"

namespace weyltrop {

using Real = boost::multiprecision::mpfr_float;

// Global working precision for Real; returns the digit count actually set.
inline unsigned set_real_precision_bits(unsigned bits) {
    unsigned digits = static_cast<unsigned>(bits * 0.30103) + 3;
    Real::default_precision(digits);
    return digits;
}

inline Real real_from_rat(const Rat& r) {
    return Real(numerator(r).str()) / Real(denominator(r).str());
}

// ---------------------------------------------------------------------------
// Partitions.

struct Partition {
    std::vector<long> parts;  // weakly decreasing, positive

    Partition() = default;
    explicit Partition(std::vector<long> p) : parts(std::move(p)) {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw BadShape("partition parts must be positive");
            if (i + 1 < parts.size() && parts[i] < parts[i + 1])
                throw BadShape("partition parts must be weakly decreasing");
        }
    }
    bool operator==(const Partition&) const = default;

    long rows() const { return static_cast<long>(parts.size()); }
    long row(long i) const {  // 1-based, 0 beyond the last row
        return i >= 1 && i <= rows() ? parts[static_cast<size_t>(i - 1)] : 0;
    }
    long cells() const {
        long s = 0;
        for (long p : parts) s += p;
        return s;
    }
    Partition conjugate() const {
        std::vector<long> c;
        for (long j = 1; j <= row(1); ++j) {
            long cnt = 0;
            for (long p : parts) cnt += p >= j ? 1 : 0;
            c.push_back(cnt);
        }
        return Partition(std::move(c));
    }
};

// Cell (i, j) of the Young diagram with its hook length
// h_ij = lambda_i + lambda'_j - i - j + 1.
struct HookCell {
    long i = 0, j = 0, hook = 0;
};

inline std::vector<HookCell> hook_cells(const Partition& la) {
    Partition conj = la.conjugate();
    std::vector<HookCell> out;
    for (long i = 1; i <= la.rows(); ++i)
        for (long j = 1; j <= la.row(i); ++j)
            out.push_back({i, j, la.row(i) + conj.row(j) - i - j + 1});
    return out;
}

inline bool is_n_core(const Partition& la, int N) {
    if (N <= 0) throw BadShape("core order must be positive");
    for (const HookCell& c : hook_cells(la))
        if (c.hook % N == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Maya diagrams. A Maya diagram contains all sufficiently negative integers
// and excludes all sufficiently positive ones; it is stored as a floor below
// which everything is present plus the descending list of members above it.

struct MayaDiagram {
    long full_below = 0;      // every integer <= full_below is a member
    std::vector<long> above;  // members > full_below, strictly descending
};

// m(nu) = union over residues k = 1..N of { N z + k : z < nu_k }.
inline MayaDiagram maya_from_nu(const std::vector<long>& nu, int N) {
    if (static_cast<int>(nu.size()) != N) throw ShapeMismatch("nu must have N entries");
    MayaDiagram m;
    long t0 = N * (nu[0] - 1) + 1;
    for (int k = 2; k <= N; ++k) t0 = std::min(t0, N * (nu[static_cast<size_t>(k - 1)] - 1) + k);
    m.full_below = t0;
    for (int k = 1; k <= N; ++k) {
        for (long z = nu[static_cast<size_t>(k - 1)] - 1;; --z) {
            long v = N * z + k;
            if (v <= t0) break;
            m.above.push_back(v);
        }
    }
    std::sort(m.above.begin(), m.above.end(), std::greater<long>());
    return m;
}

// Extract the partition via m_i - m_{i+1} = lambda_i - lambda_{i+1} + 1 with
// the vacuum normalization (lambda eventually zero).
inline Partition partition_of(const MayaDiagram& m) {
    long s = static_cast<long>(m.above.size());
    std::vector<long> parts;
    for (long i = 1; i <= s; ++i) {
        long li = m.above[static_cast<size_t>(i - 1)] + i - (m.full_below + s + 1);
        if (li < 0) throw AssumptionViolated("member list inconsistent with the full floor");
        parts.push_back(li);
    }
    return Partition(std::move(parts));
}

inline Partition core_partition(const std::vector<long>& nu, int N) {
    return partition_of(maya_from_nu(nu, N));
}

// ---------------------------------------------------------------------------
// The p_k polynomials and character determinants, generic over the value
// type (exact rationals, symbolic Laurent polynomials, or high-precision
// reals).

namespace detail {

template <typename T>
T char_scalar(const Rat& r) {
    if constexpr (std::is_same_v<T, Rat>)
        return r;
    else if constexpr (std::is_same_v<T, LaurentPoly>)
        return LaurentPoly(CoeffElement(r));
    else
        return real_from_rat(r);
}

}  // namespace detail

// p_0..p_kmax from x_1..x_kmax through the Newton-type recurrence
// k p_k = sum_{m=1}^{k} m x_m p_{k-m}.
template <typename T>
std::vector<T> p_sequence(const std::vector<T>& x, long kmax) {
    if (static_cast<long>(x.size()) < kmax)
        throw IndexOutOfRange("p_sequence needs x_1..x_kmax");
    std::vector<T> p;
    p.push_back(detail::char_scalar<T>(Rat(1)));
    for (long k = 1; k <= kmax; ++k) {
        T acc = detail::char_scalar<T>(Rat(0));
        for (long m = 1; m <= k; ++m)
            acc = acc + detail::char_scalar<T>(Rat(m)) * x[static_cast<size_t>(m - 1)] *
                            p[static_cast<size_t>(k - m)];
        p.push_back(acc * detail::char_scalar<T>(Rat(1, k)));
    }
    return p;
}

template <typename T>
T p_k(long k, const std::vector<T>& x) {
    if (k < 0) return detail::char_scalar<T>(Rat(0));
    return p_sequence(x, k)[static_cast<size_t>(k)];
}

// Determinant by expansion over column subsets (O(2^n n) ring operations;
// no division, so it works for polynomial entries too).
template <typename T>
T determinant(const std::vector<std::vector<T>>& m) {
    size_t n = m.size();
    if (n == 0) return detail::char_scalar<T>(Rat(1));
    if (n > 20) throw IndexOutOfRange("determinant size out of range");
    std::vector<T> dp(size_t(1) << n, detail::char_scalar<T>(Rat(0)));
    dp[0] = detail::char_scalar<T>(Rat(1));
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        size_t r = static_cast<size_t>(__builtin_popcount(mask)) - 1;  // row index
        T acc = detail::char_scalar<T>(Rat(0));
        int pos = 0;  // rank of the column within the mask
        for (size_t c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            T term = m[r][c] * dp[mask & ~(1u << c)];
            if ((r + static_cast<size_t>(pos)) % 2 == 0)
                acc = acc + term;
            else
                acc = acc - term;
            ++pos;
        }
        dp[mask] = acc;
    }
    return dp[(size_t(1) << n) - 1];
}

// Largest p-index needed by the twisted Jacobi-Trudi determinant. The x rows
// reach p_{lambda_1 + r - 1} and the y rows reach p_{mu_1 + r' - 1},
// independently of the other block.
inline long power_sum_count_x(const Partition& la) {
    return std::max<long>(0, la.row(1) + la.rows() - 1);
}
inline long power_sum_count_y(const Partition& mu) {
    return std::max<long>(0, mu.row(1) + mu.rows() - 1);
}

// The twisted Jacobi-Trudi determinant: rows 1..r' carry
// p_{mu_{r'-i+1}+i-j}(y), rows r'+1..r+r' carry p_{lambda_{i-r'}-i+j}(x).
template <typename T>
T universal_character(const Partition& la, const Partition& mu, const std::vector<T>& x,
                      const std::vector<T>& y) {
    long r = la.rows(), rp = mu.rows();
    long n = r + rp;
    if (n == 0) return detail::char_scalar<T>(Rat(1));
    long kx = power_sum_count_x(la), ky = power_sum_count_y(mu);
    std::vector<T> px = p_sequence(x, kx);
    std::vector<T> py = p_sequence(y, ky);
    auto p_at = [](const std::vector<T>& p, long e) {
        if (e < 0 || e >= static_cast<long>(p.size())) return detail::char_scalar<T>(Rat(0));
        return p[static_cast<size_t>(e)];
    };
    std::vector<std::vector<T>> m;
    for (long i = 1; i <= n; ++i) {
        std::vector<T> row;
        for (long j = 1; j <= n; ++j) {
            if (i <= rp)
                row.push_back(p_at(py, mu.row(rp - i + 1) + i - j));
            else
                row.push_back(p_at(px, la.row(i - rp) - i + j));
        }
        m.push_back(std::move(row));
    }
    return determinant(m);
}

template <typename T>
T schur(const Partition& la, const std::vector<T>& x) {
    return universal_character(la, Partition{}, x, std::vector<T>{});
}

// ---------------------------------------------------------------------------
// q-series numerics.

struct QContext {
    Real q, b0, b1, c;
    long T = 64;             // truncation index for infinite products
    Real tolerance;          // relative tolerance for certifications
    unsigned precision_bits = 200;

    QContext(const Rat& q_, const Rat& b0_, const Rat& b1_, const Rat& c_, long T_ = 64,
             unsigned bits = 200) {
        precision_bits = bits;
        set_real_precision_bits(bits);
        q = real_from_rat(q_);
        b0 = real_from_rat(b0_);
        b1 = real_from_rat(b1_);
        c = real_from_rat(c_);
        T = T_;
        tolerance = pow(Real(10), -20);
        if (abs(q) >= 1) throw NonConvergent("|q| must be < 1");
        if (T_ < 1) throw IndexOutOfRange("truncation must be positive");
    }
};

// (z; q)_infty truncated to i < T.
inline Real pochhammer1(const Real& z, const Real& q, long T) {
    if (abs(q) >= 1) throw NonConvergent("|q| must be < 1");
    Real acc(1), qi(1);
    for (long i = 0; i < T; ++i) {
        acc *= (Real(1) - z * qi);
        qi *= q;
    }
    return acc;
}

// (z; p, q)_infty truncated to i, j < T.
inline Real pochhammer2(const Real& z, const Real& p, const Real& q, long T) {
    if (abs(p) >= 1 || abs(q) >= 1) throw NonConvergent("|p|, |q| must be < 1");
    Real acc(1), pi(1);
    for (long i = 0; i < T; ++i) {
        acc *= pochhammer1(z * pi, q, T);
        pi *= p;
    }
    return acc;
}

// Gamma(z; p, q) = (p q / z; p, q)_infty / (z; p, q)_infty.
inline Real elliptic_gamma(const Real& z, const Real& p, const Real& q, long T) {
    if (z == 0) throw DivisionByZero("elliptic gamma at z = 0");
    return pochhammer2(p * q / z, p, q, T) / pochhammer2(z, p, q, T);
}

// ---------------------------------------------------------------------------
// Closed-form tau values: the Schur specialization.

namespace detail {

inline Real real_ipow(const Real& b, long e) {
    if (e >= 0) return pow(b, static_cast<unsigned long>(e));
    return Real(1) / pow(b, static_cast<unsigned long>(-e));
}

}  // namespace detail

struct SchurSpecialization {
    Real F;              // prefactor F(t)
    Real H;              // hook product H_nu
    std::vector<Real> x; // x_1, x_2, ...
    Partition lambda;    // the N-core lambda(nu)
};

// F(t) = (q^{2N} t^{2N}; q^{2N}, q^{2N}) / (q^2 t^2; q^2, q^2)
//        * Gamma(-q^{N-1} t^{N-1}; q^{N-1}, q^{N-1}).
inline Real schur_F(const QContext& ctx, int N, const Real& t) {
    const Real& q = ctx.q;
    Real q2N = detail::real_ipow(q, 2 * N), t2N = detail::real_ipow(t, 2 * N);
    Real qN1 = detail::real_ipow(q, N - 1), tN1 = detail::real_ipow(t, N - 1);
    Real num = pochhammer2(q2N * t2N, q2N, q2N, ctx.T);
    Real den = pochhammer2(q * q * t * t, q * q, q * q, ctx.T);
    Real gam = elliptic_gamma(-qN1 * tN1, qN1, qN1, ctx.T);
    return num / den * gam;
}

enum class CharMode { Schur, UC };

// Memoizes full sigma values and the expensive infinite-product prefactors.
// Prefactors only depend on kappa and (in the universal-character case) the
// integer exponent e with c_nu = c q^{2e}; the last tuple slot is the mode.
struct SigmaCache {
    std::map<std::tuple<std::vector<long>, long, int>, Real> values;
    std::map<std::tuple<long, long, int>, Real> prefactors;
};

namespace detail {

template <typename Compute>
Real cached_prefactor(SigmaCache* cache, long e, long kappa, int mode, Compute&& compute) {
    if (!cache) return compute();
    auto key = std::make_tuple(e, kappa, mode);
    auto it = cache->prefactors.find(key);
    if (it != cache->prefactors.end()) return it->second;
    Real value = compute();
    cache->prefactors.emplace(key, value);
    return value;
}

}  // namespace detail

inline SchurSpecialization schur_prefactors(const QContext& ctx, int N,
                                            const std::vector<long>& nu, long kappa,
                                            SigmaCache* cache = nullptr) {
    SchurSpecialization out;
    const Real& q = ctx.q;
    Real t = detail::real_ipow(q, kappa) / ctx.b0;
    out.lambda = core_partition(nu, N);
    out.F = detail::cached_prefactor(cache, 0, kappa, 0,
                                     [&] { return schur_F(ctx, N, t); });
    out.H = Real(1);
    for (const HookCell& cell : hook_cells(out.lambda)) {
        Real qh = detail::real_ipow(q, cell.hook);
        Real half = Real(cell.i - cell.j) / 2;
        out.H *= (qh - Real(1) / qh) * pow(q, half);
    }
    long kmax = std::max<long>(1, power_sum_count_x(out.lambda));
    for (long n = 1; n <= kmax; ++n) {
        Real tn = detail::real_ipow(t, n), qn = detail::real_ipow(q, n);
        out.x.push_back((tn + Real(1) / tn) / (Real(n) * (qn - Real(1) / qn)));
    }
    return out;
}

inline Real sigma_schur(const QContext& ctx, int N, const std::vector<long>& nu, long kappa,
                        SigmaCache* cache = nullptr) {
    SchurSpecialization s = schur_prefactors(ctx, N, nu, kappa, cache);
    return s.F * s.H * schur(s.lambda, s.x);
}

// ---------------------------------------------------------------------------
// Closed-form tau values: the universal-character specialization, N = 2g+2.

struct UcSpecialization {
    Real F;               // prefactor F~(c_nu, t)
    Real H;               // hook product H~_nu
    std::vector<Real> x, y;
    Partition lambda_odd, lambda_even;  // (g+1)-cores of the two sublattices
    Real c_nu;
};

// F~(c, t) = (-c q^3 t^2, -c^{-1} q^3 t^2; q^2, q^4) (q^{4g+4} t^{4g+4}; ...)
//            / (q^4 t^4; q^4, q^4)
//            * Gamma(-c^{1/2} q^{3/2} t, -c^{-1/2} q^{3/2} t; q, q^2)
//            * Gamma(-q^{2g} t^{2g}; q^{2g}, q^{2g}).
inline Real uc_F(const QContext& ctx, int g, const Real& c, const Real& t) {
    const Real& q = ctx.q;
    long T = ctx.T;
    Real q2 = q * q, q4 = q2 * q2;
    Real q3t2 = q * q2 * t * t;
    Real a = pochhammer2(-c * q3t2, q2, q4, T) * pochhammer2(-q3t2 / c, q2, q4, T);
    Real qNN = detail::real_ipow(q, 4 * g + 4), tNN = detail::real_ipow(t, 4 * g + 4);
    Real b = pochhammer2(qNN * tNN, qNN, qNN, T);
    Real den = pochhammer2(q4 * detail::real_ipow(t, 4), q4, q4, T);
    if (c <= 0) throw AssumptionViolated("c must be positive for the half powers");
    Real half3 = Real(3) / 2;
    Real sc = sqrt(c), q32 = pow(q, half3);
    Real gam1 = elliptic_gamma(-sc * q32 * t, q, q2, T) * elliptic_gamma(-q32 * t / sc, q, q2, T);
    Real q2g = detail::real_ipow(q, 2 * g), t2g = detail::real_ipow(t, 2 * g);
    Real gam2 = elliptic_gamma(-q2g * t2g, q2g, q2g, T);
    return a * b / den * gam1 * gam2;
}

inline UcSpecialization uc_prefactors(const QContext& ctx, int g, const std::vector<long>& nu,
                                      long kappa, SigmaCache* cache = nullptr) {
    int N = 2 * g + 2;
    if (g < 1 || static_cast<int>(nu.size()) != N)
        throw BadShape("universal-character case needs N = 2g+2 entries");
    const Real& q = ctx.q;
    UcSpecialization out;
    std::vector<long> odd, even;
    long sum_odd = 0, sum_even = 0;
    for (int n = 1; n <= N; ++n) {
        long v = nu[static_cast<size_t>(n - 1)];
        if (n % 2 == 1) {
            odd.push_back(v);
            sum_odd += v;
        } else {
            even.push_back(v);
            sum_even += v;
        }
    }
    out.lambda_odd = core_partition(odd, g + 1);
    out.lambda_even = core_partition(even, g + 1);
    out.c_nu = ctx.c * detail::real_ipow(q, 2 * (sum_even - sum_odd));
    Real t = detail::real_ipow(q, kappa) / ctx.b0;
    out.F = detail::cached_prefactor(cache, sum_even - sum_odd, kappa, 1,
                                     [&] { return uc_F(ctx, g, out.c_nu, t); });

    Real half_wt = Real(out.lambda_even.cells() - out.lambda_odd.cells()) / 2;
    out.H = pow(out.c_nu, half_wt);
    for (const HookCell& cell : hook_cells(out.lambda_odd)) {
        Real qh = detail::real_ipow(q, 2 * cell.hook);
        out.H *= qh - Real(1) / qh;
    }
    for (const HookCell& cell : hook_cells(out.lambda_even)) {
        Real qh = detail::real_ipow(q, 2 * cell.hook);
        out.H *= Real(1) / qh - qh;
    }

    long kx = std::max<long>(1, power_sum_count_x(out.lambda_odd));
    long ky = std::max<long>(1, power_sum_count_y(out.lambda_even.conjugate()));
    long kmax = std::max(kx, ky);
    for (long n = 1; n <= kmax; ++n) {
        Real t2n = detail::real_ipow(t, 2 * n), qn = detail::real_ipow(q, n);
        Real q2n = qn * qn;
        Real mc = detail::real_ipow(-out.c_nu, n);
        Real core = t2n + Real(1) / t2n;
        Real qq = qn + Real(1) / qn;
        if (n <= kx)
            out.x.push_back((core - mc * qq) / (Real(n) * (q2n - Real(1) / q2n)));
        if (n <= ky)
            out.y.push_back((core - qq / mc) / (Real(n) * (Real(1) / q2n - q2n)));
    }
    return out;
}

inline Real sigma_uc(const QContext& ctx, int g, const std::vector<long>& nu, long kappa,
                     SigmaCache* cache = nullptr) {
    UcSpecialization s = uc_prefactors(ctx, g, nu, kappa, cache);
    return s.F * s.H *
           universal_character(s.lambda_odd, s.lambda_even.conjugate(), s.x, s.y);
}

// ---------------------------------------------------------------------------
// Bilinear certification.

inline Real sigma_value(const QContext& ctx, int N, std::vector<long> nu, long kappa,
                        CharMode mode, SigmaCache* cache = nullptr) {
    if (static_cast<int>(nu.size()) != N) throw ShapeMismatch("nu must have N entries");
    int mode_tag = mode == CharMode::Schur ? 0 : 1;
    // sigma is well defined modulo nu -> nu + (1,...,1); normalize the key
    long base = nu.back();
    for (long& v : nu) v -= base;
    if (cache) {
        auto it = cache->values.find({nu, kappa, mode_tag});
        if (it != cache->values.end()) return it->second;
    }
    Real out;
    if (mode == CharMode::Schur) {
        out = sigma_schur(ctx, N, nu, kappa, cache);
    } else {
        if (N % 2 != 0 || N < 4) throw BadShape("universal-character mode needs N = 2g+2");
        out = sigma_uc(ctx, N / 2 - 1, nu, kappa, cache);
    }
    if (cache) cache->values.emplace(std::make_tuple(nu, kappa, mode_tag), out);
    return out;
}

// Relative residual of the bilinear relation
//   q^{N nu_i - |nu| + i - 1} (prod_j (a_{i+j-1}/q)^{j/N}) (t^N - t^{-N})
//     sigma_nu^kappa sigma_{nu+e_i}^kappa
//   = t sigma_nu^{kappa-1} sigma_{nu+e_i}^{kappa+1}
//     - (1/t) sigma_nu^{kappa+1} sigma_{nu+e_i}^{kappa-1},   t = q^kappa / b0.
inline Real verify_bilinear(const QContext& ctx, int N, const std::vector<long>& nu, int i,
                            long kappa, CharMode mode, SigmaCache* cache = nullptr) {
    if (static_cast<int>(nu.size()) != N) throw ShapeMismatch("nu must have N entries");
    if (i < 1 || i > N) throw IndexOutOfRange("direction index");
    const Real& q = ctx.q;
    Real t = detail::real_ipow(q, kappa) / ctx.b0;

    auto a_of = [&](int m) -> Real {
        int r = ((m - 1) % N + N) % N + 1;  // cyclic index in 1..N
        if (mode == CharMode::Schur) return q;
        return r % 2 == 1 ? ctx.c : q * q / ctx.c;
    };
    long abs_nu = 0;
    for (long v : nu) abs_nu += v;
    Real pref = detail::real_ipow(q, N * nu[static_cast<size_t>(i - 1)] - abs_nu + i - 1);
    for (int j = 1; j <= N; ++j) {
        Real base = a_of(i + j - 1) / q;
        if (base <= 0) throw AssumptionViolated("fractional power of a non-positive value");
        Real frac = Real(j) / N;
        pref *= pow(base, frac);
    }
    pref *= detail::real_ipow(t, N) - detail::real_ipow(t, -N);

    std::vector<long> nup = nu;
    nup[static_cast<size_t>(i - 1)] += 1;
    Real lhs = pref * sigma_value(ctx, N, nu, kappa, mode, cache) *
               sigma_value(ctx, N, nup, kappa, mode, cache);
    Real rhs = t * sigma_value(ctx, N, nu, kappa - 1, mode, cache) *
                   sigma_value(ctx, N, nup, kappa + 1, mode, cache) -
               sigma_value(ctx, N, nu, kappa + 1, mode, cache) *
                   sigma_value(ctx, N, nup, kappa - 1, mode, cache) / t;
    Real al = abs(lhs), ar = abs(rhs);
    Real scale = al > ar ? al : ar;
    if (scale < pow(Real(2), -3 * static_cast<int>(ctx.precision_bits)))
        throw DegenerateScale("both sides of the bilinear relation underflow");
    return abs(lhs - rhs) / scale;
}

// ---------------------------------------------------------------------------
// Direct comparison of a tau expression against its closed form.

namespace detail {

inline Real eval_poly_real(const LaurentPoly& p, long D, const std::map<ParamId, Real>& roots,
                           const std::map<VarId, Real>& vals) {
    Real out(0);
    for (const auto& [e, c] : p.terms) {
        Real term(0);
        for (const auto& [pe, k] : c.terms) {
            Real m = real_from_rat(k);
            for (const auto& [pid, x] : pe) {
                Rat scaled = x * D;
                if (denominator(scaled) != 1)
                    throw NonClearedExponent("exponent not cleared by root order D");
                m *= real_ipow(roots.at(pid), static_cast<long>(numerator(scaled)));
            }
            term += m;
        }
        for (const auto& [v, x] : e) term *= real_ipow(vals.at(v), x);
        out += term;
    }
    return out;
}

inline Real eval_expr_real(const RationalExpression& e, long D,
                           const std::map<ParamId, Real>& roots,
                           const std::map<VarId, Real>& vals) {
    Real den = eval_poly_real(e.den, D, roots, vals);
    if (den == 0) throw PoleAtPoint("denominator vanished at the evaluation point");
    return eval_poly_real(e.num, D, roots, vals) / den;
}

}  // namespace detail

// Evaluate tau(Lambda) numerically under the character specialization and
// compare with the closed form; returns the relative difference. The word
// reaching Lambda is rebuilt from its (nu, kappa) coordinates.
inline Real verify_specialization_against_tau(const QContext& ctx, const AffineConfigA& A,
                                              const DivisorClass& divisor, CharMode mode) {
    const ShapeConfig& cfg = A.cfg;
    int N = A.N;
    if (mode == CharMode::UC && (N % 2 != 0 || N < 4))
        throw BadShape("universal-character mode needs N = 2g+2");
    // the representation identifies q with b0 b1, so the numeric parameters
    // must sit on that locus
    Real mismatch = abs(ctx.b0 * ctx.b1 - ctx.q);
    if (mismatch > ctx.tolerance * abs(ctx.q))
        throw AssumptionViolated("the specialization requires q = b0 b1");
    NuKappa nk = nu_kappa_of(A, divisor);
    std::vector<long> nu;
    for (const Int& v : nk.nu) nu.push_back(static_cast<long>(v));
    long kappa = static_cast<long>(nk.kappa);

    // word reaching Lambda from the base point E_N^1 (nu = 0, kappa = 0)
    AWord word;
    auto append_times = [&](const AWord& w, long times) {
        AWord use = times >= 0 ? w : inverse_word_A(A, w);
        for (long k = 0; k < std::abs(times); ++k) word.insert(word.end(), use.begin(), use.end());
    };
    for (int n = 1; n <= N - 1; ++n)
        append_times(translation_word_A(A, n), nu[static_cast<size_t>(n - 1)]);
    append_times(kappa_translation_word_A(), kappa);
    AWordResult r = apply_word_A(A, FrameKind::TAU, word);
    RationalExpression expr = r.exprs.at(tau_var_id(cfg, N, 1));

    // parameter roots consistent with the a-pattern of the specialization
    long D = clearing_root_order(expr);
    auto root_of = [&](const Real& target) -> Real {
        Real inv_d = Real(1) / D;
        return pow(target, inv_d);
    };
    std::map<ParamId, Real> roots;
    for (int n = 1; n <= N - 1; ++n) {
        Real target = mode == CharMode::Schur ? ctx.q
                                              : (n % 2 == 1 ? ctx.c : ctx.q * ctx.q / ctx.c);
        roots.emplace(A.a(n), root_of(target));
    }
    roots.emplace(A.b(0), root_of(ctx.b0));
    roots.emplace(A.b(1), root_of(ctx.b1));

    // seed tau values
    std::map<VarId, Real> vals;
    for (int n = 1; n <= N; ++n) {
        Real up, dn;
        if (mode == CharMode::Schur) {
            up = schur_F(ctx, N, Real(1) / ctx.b0);
            dn = schur_F(ctx, N, ctx.b1);
        } else {
            int g = N / 2 - 1;
            Real cc = n % 2 == 0 ? ctx.c : ctx.c / (ctx.q * ctx.q);
            up = uc_F(ctx, g, cc, Real(1) / ctx.b0);
            dn = uc_F(ctx, g, cc, ctx.b1);
        }
        vals.emplace(tau_var_id(cfg, n, 1), up);
        vals.emplace(tau_var_id(cfg, n, -1), dn);
    }

    Real value = detail::eval_expr_real(expr, D, roots, vals);
    Real closed = sigma_value(ctx, N, nu, kappa, mode);
    Real av = abs(value), ac = abs(closed);
    Real scale = av > ac ? av : ac;
    if (scale < pow(Real(2), -3 * static_cast<int>(ctx.precision_bits)))
        throw DegenerateScale("both values underflow");
    return abs(value - closed) / scale;
}

}  // namespace weyltrop
