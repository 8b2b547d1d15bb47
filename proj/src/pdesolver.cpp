#include "hiz/pdesolver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>

namespace hiz {

namespace {

// dense exponent vector over edges_of(k)
using Dense = std::vector<int>;

Dense to_dense(const EdgeMonomial& m, int k) {
    Dense d(edges_of(k).size(), 0);
    for (const auto& [e, n] : m.exponents()) d[edge_rank(e, k)] = n;
    return d;
}

EdgeMonomial from_dense(const Dense& d, int k) {
    auto es = edges_of(k);
    std::map<EdgeIndex, int> m;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) m[es[i]] = d[i];
    return EdgeMonomial(std::move(m));
}

// sum over vertices of sigma_{e,c} sigma_{f,c}; +-1 for edges sharing one
// vertex, 2 on the diagonal, 0 for disjoint edges
int edge_coupling(const EdgeIndex& e, const EdgeIndex& f) {
    auto sig = [](const EdgeIndex& g, int c) { return (c == g.a) - (c == g.b); };
    std::array<int, 4> verts{e.a, e.b, f.a, f.b};
    std::sort(verts.begin(), verts.end());
    int s = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i && verts[i] == verts[i - 1]) continue;
        s += sig(e, verts[i]) * sig(f, verts[i]);
    }
    return s;
}

// per-point data shared by all monomial evaluations
struct PointData {
    std::vector<Rational> inv_tau;        // 1/tau_e
    std::vector<Rational> lam2_tau;       // lambda_e^2 / tau_e
    std::vector<Rational> lam2_tau2;      // lambda_e^2 / tau_e^2
    std::vector<Rational> lam_over_tau;   // lambda_e / tau_e
    std::vector<std::vector<int>> J;      // edge_coupling table

    PointData(const SpectralPoint& pt, int k) {
        auto es = edges_of(k);
        inv_tau.reserve(es.size());
        for (const auto& e : es) {
            Rational tau = pt.tau(e);
            Rational lam = pt.lambda_diff(e);
            inv_tau.push_back(Rational(1) / tau);
            lam_over_tau.push_back(lam / tau);
            lam2_tau.push_back(lam * lam / tau);
            lam2_tau2.push_back(lam * lam / (tau * tau));
        }
        J.assign(es.size(), std::vector<int>(es.size(), 0));
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = 0; j < es.size(); ++j) J[i][j] = edge_coupling(es[i], es[j]);
    }

    Rational power_product(const Dense& n) const {
        Rational g(1);
        for (std::size_t i = 0; i < n.size(); ++i)
            for (int t = 0; t < n[i]; ++t) g *= inv_tau[i];
        return g;
    }
};

// L[g_M] = A_M - i*Bt_M with
//   A_M  = g [ sum_e (2 n_e(n_e+1) - y) lam_e^2/tau_e^2
//              + sum_{e != f} n_e n_f J_ef (lam_e/tau_e)(lam_f/tau_f) ]
//   Bt_M = 2 g sum_e n_e lam_e^2/tau_e
// The drift term of a degree-d monomial lands at grade d-? one below the
// second-derivative terms, which is what the level-by-level solve exploits.
struct TermValues {
    Rational A;
    Rational Bt;
};

TermValues pde_terms(const Dense& n, const PointData& pd, const Rational& y) {
    Rational g = pd.power_product(n);
    Rational A(0), Bt(0);
    for (std::size_t e = 0; e < n.size(); ++e) {
        if (n[e]) {
            A += (Rational(2 * n[e] * (n[e] + 1)) - y) * pd.lam2_tau2[e];
            Bt += Rational(2 * n[e]) * pd.lam2_tau[e];
        } else {
            A += -y * pd.lam2_tau2[e];
        }
        for (std::size_t f = e + 1; f < n.size(); ++f)
            if (n[e] && n[f] && pd.J[e][f])
                A += Rational(2 * n[e] * n[f] * pd.J[e][f]) * pd.lam_over_tau[e] * pd.lam_over_tau[f];
    }
    return {g * A, g * Bt};
}

// ---------------------------------------------------------------------------
// modular linear algebra: word-size primes, CRT, rational reconstruction
// ---------------------------------------------------------------------------

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// descending primes just below 2^62 (so CRT products stay in Integer, and
// mulmod fits in 128 bits)
std::uint64_t nth_solver_prime(std::size_t i) {
    static std::vector<std::uint64_t> primes;
    static std::uint64_t cursor = (1ull << 62) - 1;
    while (primes.size() <= i) {
        while (!is_prime_u64(cursor)) --cursor;
        primes.push_back(cursor);
        --cursor;
    }
    return primes[i];
}

struct BadPrime : std::exception {
    const char* what() const noexcept override { return "prime divides a denominator"; }
};

std::uint64_t mod_of_rational(const Rational& q, std::uint64_t p) {
    Integer num = numerator(q) % p;
    Integer den = denominator(q) % p;
    std::uint64_t n = static_cast<std::uint64_t>(num >= 0 ? num : num + p);
    std::uint64_t d = static_cast<std::uint64_t>(den);
    if (d == 0) throw BadPrime{};
    return mulmod(n, powmod(d, p - 2, p), p);
}

// num/den from a residue mod M with |num|, den <= sqrt(M/2), by the
// continued-fraction bound of the extended Euclid run
bool rational_reconstruct(const Integer& a, const Integer& M, Rational& out) {
    Integer bound = sqrt(M / 2);
    Integer r0 = M, r1 = a % M;
    if (r1 < 0) r1 += M;
    Integer s0 = 0, s1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0) return false;
    Integer num = r1, den = s1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound) return false;
    if (gcd(num, den) != 1) return false;
    out = Rational(num, den);
    return true;
}

// Gauss-Jordan elimination mod p with ascending column order (pivots claim the
// lexicographically-smallest columns, so free columns are the largest).
struct ModEliminator {
    std::uint64_t p;
    std::size_t ncols;
    std::vector<std::vector<std::uint64_t>> rows;  // RREF, ncols+1 with rhs
    std::vector<std::size_t> pivot_col;
    std::vector<int> pivot_of_col;
    bool inconsistent = false;

    ModEliminator(std::uint64_t p_, std::size_t ncols_)
        : p(p_), ncols(ncols_), pivot_of_col(ncols_, -1) {}

    int rank() const { return static_cast<int>(rows.size()); }

    bool add_row(std::vector<std::uint64_t> row) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::uint64_t f = row[pivot_col[r]];
            if (!f) continue;
            const auto& pr = rows[r];
            for (std::size_t c = 0; c <= ncols; ++c)
                if (pr[c]) row[c] = (row[c] + p - mulmod(f, pr[c], p)) % p;
        }
        std::size_t c = 0;
        while (c < ncols && row[c] == 0) ++c;
        if (c == ncols) {
            if (row[ncols] != 0) inconsistent = true;
            return false;
        }
        std::uint64_t inv = powmod(row[c], p - 2, p);
        for (auto& v : row) v = mulmod(v, inv, p);
        for (auto& pr : rows) {
            std::uint64_t f = pr[c];
            if (!f) continue;
            for (std::size_t i = 0; i <= ncols; ++i)
                if (row[i]) pr[i] = (pr[i] + p - mulmod(f, row[i], p)) % p;
        }
        pivot_of_col[c] = static_cast<int>(rows.size());
        pivot_col.push_back(c);
        rows.push_back(std::move(row));
        return true;
    }

    std::vector<std::uint64_t> solution(std::vector<std::size_t>* free_cols) const {
        std::vector<std::uint64_t> sol(ncols, 0);
        for (std::size_t r = 0; r < rows.size(); ++r) sol[pivot_col[r]] = rows[r][ncols];
        if (free_cols) {
            free_cols->clear();
            for (std::size_t c = 0; c < ncols; ++c)
                if (pivot_of_col[c] < 0) free_cols->push_back(c);
        }
        return sol;
    }
};

// Incremental exact reduced row echelon form. Column order is semantic: the
// free (non-pivot) columns are the lexicographically-largest dependent
// monomials, which is the gauge-fixing convention.
class Eliminator {
public:
    explicit Eliminator(std::size_t ncols) : ncols_(ncols), pivot_of_col_(ncols, -1) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    void reduce(std::vector<Rational>& row) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rational f = row[pivot_col_[r]];
            if (f == 0) continue;
            const auto& pr = rows_[r];
            for (std::size_t c = 0; c <= ncols_; ++c)
                if (pr[c] != 0) row[c] -= f * pr[c];
        }
    }

    // returns true if the row added a pivot; throws on an inconsistent row
    bool add_row(std::vector<Rational> row) {
        reduce(row);
        std::size_t c = 0;
        while (c < ncols_ && row[c] == 0) ++c;
        if (c == ncols_) {
            if (row[ncols_] != 0)
                throw std::runtime_error("inconsistent residual system (implementation bug)");
            return false;
        }
        Rational inv = Rational(1) / row[c];
        for (auto& v : row) v *= inv;
        for (auto& pr : rows_) {
            Rational f = pr[c];
            if (f == 0) continue;
            for (std::size_t i = 0; i <= ncols_; ++i)
                if (row[i] != 0) pr[i] -= f * row[i];
        }
        pivot_of_col_[c] = static_cast<int>(rows_.size());
        pivot_col_.push_back(c);
        rows_.push_back(std::move(row));
        return true;
    }

    // Batch insertion; among queued rows prefers the smallest leading column,
    // breaking ties by the bit length of the pivot entry.
    void add_rows(std::vector<std::vector<Rational>> batch) {
        for (auto& r : batch) reduce(r);
        while (!batch.empty()) {
            std::size_t best = batch.size();
            std::size_t best_col = ncols_ + 1;
            std::size_t best_bits = 0;
            for (std::size_t i = 0; i < batch.size(); ++i) {
                std::size_t c = 0;
                while (c < ncols_ && batch[i][c] == 0) ++c;
                if (c == ncols_) continue;
                std::size_t bits = bit_size(batch[i][c]);
                if (c < best_col || (c == best_col && bits < best_bits)) {
                    best = i;
                    best_col = c;
                    best_bits = bits;
                }
            }
            if (best == batch.size()) {
                for (auto& r : batch) add_row(std::move(r));  // consistency check on zero rows
                return;
            }
            auto row = std::move(batch[best]);
            batch.erase(batch.begin() + best);
            add_row(std::move(row));
            for (auto& r : batch) {
                // re-reduce only against the newest pivot
                Rational f = r[pivot_col_.back()];
                if (f == 0) continue;
                const auto& pr = rows_.back();
                for (std::size_t c = 0; c <= ncols_; ++c)
                    if (pr[c] != 0) r[c] -= f * pr[c];
            }
        }
    }

    // pivot variables take the reduced rhs, free variables zero
    std::vector<Rational> solution(std::vector<std::size_t>* free_cols) const {
        std::vector<Rational> sol(ncols_, Rational(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) sol[pivot_col_[r]] = rows_[r][ncols_];
        if (free_cols) {
            free_cols->clear();
            for (std::size_t c = 0; c < ncols_; ++c)
                if (pivot_of_col_[c] < 0) free_cols->push_back(c);
        }
        return sol;
    }

private:
    std::size_t ncols_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivot_col_;
    std::vector<int> pivot_of_col_;
};

} // namespace

GaussianRational pde_apply(const ChiSeries& s, const SpectralPoint& pt, const Rational& y) {
    if (s.k() != pt.k()) throw std::invalid_argument("series/point k mismatch");
    pt.validate();
    PointData pd(pt, s.k());
    GaussianRational total;
    for (const auto& [m, c] : s.terms()) {
        Rational cv = c.eval(y);
        if (cv == 0) continue;
        auto tv = pde_terms(to_dense(m, s.k()), pd, y);
        // i^deg * c * (A - i Bt)
        GaussianRational val(tv.A * cv, -tv.Bt * cv);
        total += times_i_power(val, m.total_degree());
    }
    return total;
}

SolveResult solve_chi(int k, const Rational& y, int per_edge_cap, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k >= 2 required");
    if (per_edge_cap < 0) throw std::invalid_argument("per_edge_cap >= 0 required");
    const int E = static_cast<int>(edges_of(k).size());
    const int max_degree = E * per_edge_cap;

    std::mt19937_64 rng(seed);
    SolveResult result;
    result.seed = seed;
    result.chi = ChiSeries::one(k, max_degree);

    std::map<EdgeMonomial, Rational> coeffs;
    coeffs[EdgeMonomial()] = Rational(1);

    const bool verbose = std::getenv("HIZ_SOLVE_VERBOSE") != nullptr;
    for (int level = 0; level < max_degree; ++level) {
        auto level_start = std::chrono::steady_clock::now();
        auto unknowns = monomials_of_degree(k, level + 1, per_edge_cap);
        if (unknowns.empty()) break;
        auto knowns = monomials_of_degree(k, level, per_edge_cap);
        std::vector<Dense> unk_dense, kn_dense;
        std::vector<Rational> kn_coeff;
        for (const auto& m : unknowns) unk_dense.push_back(to_dense(m, k));
        for (const auto& m : knowns) {
            auto it = coeffs.find(m);
            if (it != coeffs.end() && it->second != 0) {
                kn_dense.push_back(to_dense(m, k));
                kn_coeff.push_back(it->second);
            }
        }

        const std::size_t ncols = unknowns.size();
        auto make_row = [&]() {
            SpectralPoint pt = random_spectral_point(k, rng);
            PointData pd(pt, k);
            std::vector<Rational> row(ncols + 1, Rational(0));
            for (std::size_t c = 0; c < ncols; ++c) row[c] = pde_terms(unk_dense[c], pd, y).Bt;
            Rational rhs(0);
            for (std::size_t i = 0; i < kn_dense.size(); ++i)
                rhs -= kn_coeff[i] * pde_terms(kn_dense[i], pd, y).A;
            row[ncols] = rhs;
            return row;
        };

        // Exact rows; elimination runs modulo word-size primes and the
        // candidate solution is reconstructed and then verified exactly
        // against every sampled row, so the result is exact regardless of the
        // modular route.
        std::vector<std::vector<Rational>> rows;
        rows.reserve(ncols + 8);
        for (std::size_t i = 0; i < ncols + 2; ++i) rows.push_back(make_row());

        std::vector<Rational> sol(ncols, Rational(0));
        std::vector<std::size_t> free_cols;
        bool solved = false;
        for (int attempt = 0; attempt < 4 && !solved; ++attempt) {
            // rank saturation judged modulo the first prime of this attempt
            std::size_t prime_base = static_cast<std::size_t>(attempt) * 8;
            std::uint64_t p0 = nth_solver_prime(prime_base);
            ModEliminator lead(p0, ncols);
            auto mod_row = [&](const std::vector<Rational>& r, std::uint64_t p) {
                std::vector<std::uint64_t> m(r.size());
                for (std::size_t i = 0; i < r.size(); ++i) m[i] = mod_of_rational(r[i], p);
                return m;
            };
            try {
                for (const auto& r : rows) lead.add_row(mod_row(r, p0));
                int stale = 0;
                while (lead.rank() < static_cast<int>(ncols) && stale < 3) {
                    rows.push_back(make_row());
                    if (lead.add_row(mod_row(rows.back(), p0)))
                        stale = 0;
                    else
                        ++stale;
                }
            } catch (const BadPrime&) {
                continue;  // restart the attempt from a different prime base
            }
            if (lead.inconsistent)
                throw std::runtime_error("inconsistent residual system (implementation bug)");

            // accumulate primes until every entry reconstructs and the exact
            // verification passes
            std::vector<Integer> crt(ncols);
            auto lead_sol = lead.solution(&free_cols);
            for (std::size_t c = 0; c < ncols; ++c) crt[c] = lead_sol[c];
            Integer modulus(p0);
            bool attempt_failed = false;
            for (std::size_t extra = 1; extra < 8 && !solved && !attempt_failed; ++extra) {
                // try to reconstruct with the primes so far
                bool recon_ok = true;
                for (std::size_t c = 0; c < ncols && recon_ok; ++c)
                    recon_ok = rational_reconstruct(crt[c], modulus, sol[c]);
                if (recon_ok) {
                    bool verified = true;
                    for (const auto& r : rows) {
                        Rational acc(0);
                        for (std::size_t c = 0; c < ncols; ++c)
                            if (r[c] != 0 && sol[c] != 0) acc += r[c] * sol[c];
                        if (acc != r[ncols]) {
                            verified = false;
                            break;
                        }
                    }
                    if (verified) {
                        solved = true;
                        break;
                    }
                }
                // add one more prime
                std::uint64_t p = nth_solver_prime(prime_base + extra);
                ModEliminator e(p, ncols);
                try {
                    for (const auto& r : rows) e.add_row(mod_row(r, p));
                } catch (const BadPrime&) {
                    continue;  // skip this prime
                }
                std::vector<std::size_t> fc;
                auto s = e.solution(&fc);
                if (fc != free_cols) {
                    attempt_failed = true;  // unlucky prime pattern; restart
                    break;
                }
                // CRT combine
                Integer pI(p);
                Integer m_inv_p;  // modulus^{-1} mod p
                {
                    std::uint64_t mp = static_cast<std::uint64_t>(modulus % pI);
                    m_inv_p = powmod(mp, p - 2, p);
                }
                for (std::size_t c = 0; c < ncols; ++c) {
                    Integer diff = (Integer(s[c]) - crt[c]) % pI;
                    if (diff < 0) diff += pI;
                    Integer t = (diff * m_inv_p) % pI;
                    crt[c] += modulus * t;
                }
                modulus *= pI;
            }
        }
        if (!solved)
            throw std::runtime_error("level solve failed to reconstruct an exact solution");

        for (std::size_t c = 0; c < ncols; ++c)
            if (sol[c] != 0) coeffs[unknowns[c]] = sol[c];
        for (auto c : free_cols) result.gauge.free_monomials.push_back(unknowns[c]);
        if (verbose) {
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                      level_start).count();
            std::cerr << "solve k=" << k << " level " << (level + 1) << "/" << max_degree << ": "
                      << ncols << " unknowns, rank " << elim.rank() << ", " << dt << "s\n";
        }
    }

    result.gauge.identity_count = static_cast<int>(result.gauge.free_monomials.size());
    for (const auto& [m, c] : coeffs) result.chi.set_coeff(m, YPolynomial(c));
    return result;
}

std::vector<std::pair<std::array<int, 6>, int>> cubic_identity_terms() {
    // edge positions within a quadruple, lex: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3)
    auto idx = [](int a, int b) {
        static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return table[a][b];
    };
    std::vector<std::pair<std::array<int, 6>, int>> terms;
    auto add = [&](std::initializer_list<std::pair<int, int>> edges, int sign) {
        std::array<int, 6> alpha{};
        for (auto [a, b] : edges) alpha[idx(a, b)] += 1;
        terms.push_back({alpha, sign});
    };
    const std::array<std::pair<std::pair<int, int>, std::pair<int, int>>, 3> opposite = {
        {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}}};
    for (auto [e, f] : opposite) {
        add({e, e, f}, +1);
        add({f, f, e}, +1);
    }
    for (auto [e, f] : opposite)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                std::pair<int, int> g{a, b};
                if (g == e || g == f) continue;
                add({e, f, g}, -1);
            }
    for (int skip = 0; skip < 4; ++skip) {
        std::array<int, 3> v{};
        int t = 0;
        for (int a = 0; a < 4; ++a)
            if (a != skip) v[t++] = a;
        add({{v[0], v[1]}, {v[1], v[2]}, {v[0], v[2]}}, +1);
    }
    return terms;
}

Rational cubic_identity_residual(const SpectralPoint& pt, const std::array<int, 4>& quadruple) {
    if (pt.k() < 4) throw std::invalid_argument("k >= 4 point required");
    pt.validate();
    std::array<Rational, 6> tau;
    int t = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            int va = quadruple[a], vb = quadruple[b];
            tau[t++] = (pt.lambda[va - 1] - pt.lambda[vb - 1]) * (pt.x[va - 1] - pt.x[vb - 1]);
        }
    Rational total(0);
    for (const auto& [alpha, sign] : cubic_identity_terms()) {
        Rational v(sign);
        for (int e = 0; e < 6; ++e)
            for (int p = 0; p < alpha[e]; ++p) v *= tau[e];
        total += v;
    }
    return total;
}

std::vector<std::map<EdgeMonomial, Rational>> cubic_identity_gauge_vectors(int k, int per_edge_cap) {
    std::vector<std::map<EdgeMonomial, Rational>> vectors;
    if (k < 4 || per_edge_cap < 2) return vectors;
    auto all_edges = edges_of(k);
    auto terms = cubic_identity_terms();

    std::vector<int> quad(4);
    auto for_each_quad = [&](auto&& body) {
        for (int a = 1; a <= k; ++a)
            for (int b = a + 1; b <= k; ++b)
                for (int c = b + 1; c <= k; ++c)
                    for (int d = c + 1; d <= k; ++d) body(std::array<int, 4>{a, b, c, d});
    };

    for_each_quad([&](std::array<int, 4> q) {
        // ranks of the quadruple's edges within edges_of(k), in quadruple-lex order
        std::array<int, 6> inner{};
        int t = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) inner[t++] = edge_rank(EdgeIndex(q[a], q[b]), k);
        std::vector<int> outer;
        for (std::size_t r = 0; r < all_edges.size(); ++r)
            if (std::find(inner.begin(), inner.end(), static_cast<int>(r)) == inner.end())
                outer.push_back(static_cast<int>(r));

        // shift ranges keeping every term's exponents within [0, cap]
        std::vector<std::pair<int, int>> range(all_edges.size());
        for (int e : inner) range[e] = {0, per_edge_cap - 2};
        for (int e : outer) range[e] = {-2, per_edge_cap - 2};

        std::vector<int> sigma(all_edges.size());
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == all_edges.size()) {
                std::map<EdgeMonomial, Rational> vec;
                for (const auto& [alpha, sign] : terms) {
                    std::map<EdgeIndex, int> mono;
                    for (int e = 0; e < 6; ++e) {
                        int exp = 2 - alpha[e] + sigma[inner[e]];
                        if (exp) mono[all_edges[inner[e]]] = exp;
                    }
                    for (int e : outer) {
                        int exp = 2 + sigma[e];
                        if (exp) mono[all_edges[e]] = exp;
                    }
                    vec[EdgeMonomial(mono)] += Rational(sign);
                }
                vectors.push_back(std::move(vec));
                return;
            }
            for (int s = range[i].first; s <= range[i].second; ++s) {
                sigma[i] = s;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    });
    return vectors;
}

int expected_gauge_dimension(int k, int per_edge_cap) {
    auto vectors = cubic_identity_gauge_vectors(k, per_edge_cap);
    if (vectors.empty()) return 0;
    std::map<EdgeMonomial, std::size_t> col;
    for (const auto& v : vectors)
        for (const auto& [m, c] : v)
            if (!col.count(m)) col.emplace(m, col.size());
    Eliminator elim(col.size());
    int rank = 0;
    for (const auto& v : vectors) {
        std::vector<Rational> row(col.size() + 1, Rational(0));
        for (const auto& [m, c] : v) row[col[m]] = c;
        if (elim.add_row(std::move(row))) ++rank;
    }
    return rank;
}

std::vector<Rational> id_residuals(const SpectralPoint& pt) {
    if (pt.k() != 3) throw std::invalid_argument("k=3 point required");
    pt.validate();
    const auto& x = pt.x;
    const auto& l = pt.lambda;
    auto T = [&](int a, int b) { return (l[a - 1] - l[b - 1]) * (x[a - 1] - x[b - 1]); };
    auto L = [&](int a, int b) { return l[a - 1] - l[b - 1]; };
    // V_a = v_{bc} = i / ((l_b - l_c)(x_b - x_c)) for (a,b,c) a cyclic triple
    auto V = [&](int a) {
        int b = a % 3 + 1, c = b % 3 + 1;
        return GaussianRational(Rational(0), Rational(1) / ((l[b - 1] - l[c - 1]) * (x[b - 1] - x[c - 1])));
    };
    const std::array<std::array<int, 3>, 3> cyc = {{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};

    std::vector<Rational> out;
    // id0: sum (l_a-l_b)(l_c-l_a) tau_bc^2 = sum (l_a-l_b)^2 tau_ca tau_bc
    Rational id0(0);
    for (auto [a, b, c] : cyc)
        id0 += L(a, b) * L(c, a) * T(b, c) * T(b, c) - L(a, b) * L(a, b) * T(c, a) * T(b, c);
    out.push_back(id0);

    GaussianRational id1, id2, id3;
    GaussianRational sumV2;
    for (int a = 1; a <= 3; ++a) sumV2 += V(a) * V(a);
    GaussianRational V123 = V(1) * V(2) * V(3);
    for (auto [a, b, c] : cyc) {
        Rational lab = L(a, b), lac = L(a, c), lbc = L(b, c);
        id1 += V(b) * V(c) * (lab * lac);
        id2 += V(b) * V(b) * V(c) * V(c) * (lab * lac) + (V123 * V(a)) * (lbc * lbc);
        id3 += V(b) * V(b) * V(c) * V(c) * (V(b) * V(b) + V(c) * V(c)) * (lab * lac) +
               (V123 * (V(a) * sumV2 + V123 * Rational(1, 2))) * (lbc * lbc);
    }
    for (const auto& z : {id1, id2, id3}) {
        if (z.im != 0) throw std::logic_error("identity residual not real");
        out.push_back(z.re);
    }
    return out;
}

} // namespace hiz
