#include "hiz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <thread>

namespace hiz {

namespace {

constexpr double kStructureTol = 1e-12;

double gauss(std::mt19937_64& rng) {
    double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::complex<double> cgauss(std::mt19937_64& rng) {
    double re = gauss(rng), im = gauss(rng);
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

// classical Gram-Schmidt with positive diagonal "R": exactly Haar for
// Gaussian input, no phase correction needed
void gram_schmidt(CMatrix& m) {
    int n = m.n;
    for (int j = 0; j < n; ++j) {
        for (int t = 0; t < j; ++t) {
            std::complex<double> dot = 0;
            for (int i = 0; i < n; ++i) dot += std::conj(m.at(i, t)) * m.at(i, j);
            for (int i = 0; i < n; ++i) m.at(i, j) -= dot * m.at(i, t);
        }
        double norm = 0;
        for (int i = 0; i < n; ++i) norm += std::norm(m.at(i, j));
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) m.at(i, j) /= norm;
    }
}

void check_unitary(const CMatrix& m) {
    int n = m.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::complex<double> dot = 0;
            for (int t = 0; t < n; ++t) dot += std::conj(m.at(t, i)) * m.at(t, j);
            double expect = (i == j) ? 1.0 : 0.0;
            if (std::abs(dot - expect) > kStructureTol * n)
                throw std::runtime_error("Haar sample failed the unitarity check");
        }
}

// U J U^T = J with J the interleaved block form diag([[0,1],[-1,0]])
void check_symplectic(const CMatrix& m) {
    int n = m.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::complex<double> v = 0;
            for (int t = 0; t < n / 2; ++t)
                v += m.at(i, 2 * t) * m.at(j, 2 * t + 1) - m.at(i, 2 * t + 1) * m.at(j, 2 * t);
            double expect = 0.0;
            if (i / 2 == j / 2) {
                if (i % 2 == 0 && j % 2 == 1) expect = 1.0;
                if (i % 2 == 1 && j % 2 == 0) expect = -1.0;
            }
            if (std::abs(v - expect) > kStructureTol * n)
                throw std::runtime_error("Haar sample failed the symplectic check");
        }
}

CMatrix haar_unitary(int k, std::mt19937_64& rng) {
    CMatrix m(k);
    for (auto& z : m.a) z = cgauss(rng);
    gram_schmidt(m);
    return m;
}

CMatrix haar_orthogonal(int k, std::mt19937_64& rng) {
    CMatrix m(k);
    for (auto& z : m.a) z = gauss(rng);
    gram_schmidt(m);
    return m;
}

// quaternion Ginibre embedded as 2k x 2k complex, orthonormalized by
// quaternionic Gram-Schmidt: each quaternion column is (v, partner(v)) with
// partner(v)[2i] = -conj(v[2i+1]), partner(v)[2i+1] = conj(v[2i])
CMatrix haar_symplectic_embedded(int k, std::mt19937_64& rng) {
    int n = 2 * k;
    CMatrix m(n);
    for (int bi = 0; bi < k; ++bi)
        for (int bj = 0; bj < k; ++bj) {
            std::complex<double> w = cgauss(rng), z = cgauss(rng);
            m.at(2 * bi, 2 * bj) = w;
            m.at(2 * bi, 2 * bj + 1) = z;
            m.at(2 * bi + 1, 2 * bj) = -std::conj(z);
            m.at(2 * bi + 1, 2 * bj + 1) = std::conj(w);
        }
    CMatrix q(n);
    for (int j = 0; j < k; ++j) {
        std::vector<std::complex<double>> v(n);
        for (int i = 0; i < n; ++i) v[i] = m.at(i, 2 * j);
        for (int t = 0; t < 2 * j; ++t) {
            std::complex<double> dot = 0;
            for (int i = 0; i < n; ++i) dot += std::conj(q.at(i, t)) * v[i];
            for (int i = 0; i < n; ++i) v[i] -= dot * q.at(i, t);
        }
        double norm = 0;
        for (int i = 0; i < n; ++i) norm += std::norm(v[i]);
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) q.at(i, 2 * j) = v[i] / norm;
        for (int i = 0; i < k; ++i) {
            q.at(2 * i, 2 * j + 1) = -std::conj(q.at(2 * i + 1, 2 * j));
            q.at(2 * i + 1, 2 * j + 1) = std::conj(q.at(2 * i, 2 * j));
        }
    }
    return q;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// tr(Lambda U X U^dagger) for diagonal Lambda
std::complex<double> conjugated_trace(const CMatrix& u, const std::vector<double>& xdiag,
                                      const std::vector<double>& ldiag) {
    int n = u.n;
    std::complex<double> tr = 0;
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t)
            tr += ldiag[i] * u.at(i, t) * xdiag[t] * std::conj(u.at(i, t));
    return tr;
}

struct BatchStats {
    std::complex<double> sum{0, 0};
    double sum_norm2 = 0;  // sum |z|^2
    std::uint64_t n = 0;
};

MCEstimate merge_batches(const std::vector<BatchStats>& batches, std::uint64_t seed) {
    MCEstimate est;
    std::complex<double> total{0, 0};
    double norm2 = 0;
    std::uint64_t n = 0;
    for (const auto& b : batches) {
        total += b.sum;
        norm2 += b.sum_norm2;
        n += b.n;
    }
    est.samples = n;
    est.seed = seed;
    est.mean = total / static_cast<double>(n);
    // Var(Re) + Var(Im) = E|z|^2 - |E z|^2
    double var = norm2 / static_cast<double>(n) - std::norm(est.mean);
    est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
    return est;
}

MCEstimate run_mc(Ensemble ens, const std::vector<double>& xdiag, const std::vector<double>& ldiag,
                  int k, std::uint64_t samples, std::uint64_t seed) {
    const std::uint64_t batch_size = 1 << 14;
    const std::uint64_t nbatches = (samples + batch_size - 1) / batch_size;
    std::vector<std::uint64_t> batch_seeds(nbatches);
    std::uint64_t state = seed;
    for (auto& s : batch_seeds) s = splitmix64(state);

    auto run_batch = [&](std::uint64_t b) {
        std::mt19937_64 rng(batch_seeds[b]);
        std::uint64_t count = std::min(batch_size, samples - b * batch_size);
        BatchStats st;
        st.n = count;
        bool structure_checked = false;
        for (std::uint64_t s = 0; s < count; ++s) {
            CMatrix u = (ens == Ensemble::unitary)      ? haar_unitary(k, rng)
                        : (ens == Ensemble::orthogonal) ? haar_orthogonal(k, rng)
                                                        : haar_symplectic_embedded(k, rng);
            if (!structure_checked) {  // one structure audit per batch keeps cost negligible
                check_unitary(u);
                if (ens == Ensemble::symplectic) check_symplectic(u);
                structure_checked = true;
            }
            std::complex<double> tr = conjugated_trace(u, xdiag, ldiag);
            if (ens == Ensemble::symplectic) tr *= 0.5;  // quaternionic trace
            std::complex<double> z = std::exp(std::complex<double>(0, 1) * tr);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::runtime_error("non-finite Monte Carlo value");
            st.sum += z;
            st.sum_norm2 += std::norm(z);
        }
        return st;
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<BatchStats> stats(nbatches);
    if (nbatches <= 1 || hw == 1) {
        for (std::uint64_t b = 0; b < nbatches; ++b) stats[b] = run_batch(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            for (std::uint64_t b = next.fetch_add(1); b < nbatches; b = next.fetch_add(1))
                stats[b] = run_batch(b);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::uint64_t>(hw, nbatches); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return merge_batches(stats, seed);
}

} // namespace

HaarSample sample_haar(Ensemble ens, int k, std::mt19937_64& rng) {
    HaarSample s;
    s.ensemble = ens;
    s.k = k;
    s.matrix = (ens == Ensemble::unitary)      ? haar_unitary(k, rng)
               : (ens == Ensemble::orthogonal) ? haar_orthogonal(k, rng)
                                               : haar_symplectic_embedded(k, rng);
    check_unitary(s.matrix);
    if (ens == Ensemble::symplectic) check_symplectic(s.matrix);
    return s;
}

std::complex<double> hciz_unitary_det(const SpectralPoint& pt) {
    pt.validate();
    int k = pt.k();
    std::vector<double> x(k), l(k);
    for (int i = 0; i < k; ++i) {
        x[i] = static_cast<double>(pt.x[i]);
        l[i] = static_cast<double>(pt.lambda[i]);
    }
    // det(e^{i x_a l_b}) by LU with partial pivoting
    std::vector<std::complex<double>> m(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            m[static_cast<std::size_t>(a) * k + b] = std::exp(std::complex<double>(0, x[a] * l[b]));
    std::complex<double> det = 1;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::abs(m[static_cast<std::size_t>(r) * k + c]) >
                std::abs(m[static_cast<std::size_t>(piv) * k + c]))
                piv = r;
        if (piv != c) {
            for (int t = 0; t < k; ++t)
                std::swap(m[static_cast<std::size_t>(c) * k + t], m[static_cast<std::size_t>(piv) * k + t]);
            det = -det;
        }
        det *= m[static_cast<std::size_t>(c) * k + c];
        for (int r = c + 1; r < k; ++r) {
            std::complex<double> f =
                m[static_cast<std::size_t>(r) * k + c] / m[static_cast<std::size_t>(c) * k + c];
            for (int t = c; t < k; ++t)
                m[static_cast<std::size_t>(r) * k + t] -= f * m[static_cast<std::size_t>(c) * k + t];
        }
    }
    double dx = 1, dl = 1;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            dx *= x[i] - x[j];
            dl *= l[i] - l[j];
        }
    // c_k = prod_{p<k} p! * i^{-k(k-1)/2}
    double fact = 1;
    for (int p = 1; p < k; ++p)
        for (int q = 1; q <= p; ++q) fact *= q;
    int phase = ((-k * (k - 1) / 2) % 4 + 4) % 4;
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return fact * ipow[phase] * det / (dx * dl);
}

MCEstimate mc_group_integral(Ensemble ens, const SpectralPoint& pt, std::uint64_t samples,
                             std::uint64_t seed) {
    pt.validate();
    if (samples < 1000) throw std::invalid_argument("samples >= 1000 required");
    int k = pt.k();
    std::vector<double> xdiag, ldiag;
    if (ens == Ensemble::symplectic) {
        for (int i = 0; i < k; ++i) {
            double xv = static_cast<double>(pt.x[i]), lv = static_cast<double>(pt.lambda[i]);
            xdiag.insert(xdiag.end(), {xv, xv});
            ldiag.insert(ldiag.end(), {lv, lv});
        }
    } else {
        for (int i = 0; i < k; ++i) {
            xdiag.push_back(static_cast<double>(pt.x[i]));
            ldiag.push_back(static_cast<double>(pt.lambda[i]));
        }
    }
    return run_mc(ens, xdiag, ldiag, k, samples, seed);
}

MCEstimate mc_exponent_mean(Ensemble ens, const CMatrix& X, const CMatrix& Lambda,
                            std::uint64_t samples, std::uint64_t seed) {
    // general (non-diagonal) X: fold U X U^dagger against diagonal Lambda is not
    // enough, so do the full product per sample
    int n = X.n;
    int k = (ens == Ensemble::symplectic) ? n / 2 : n;
    const std::uint64_t batch_size = 1 << 14;
    const std::uint64_t nbatches = (samples + batch_size - 1) / batch_size;
    std::vector<std::uint64_t> batch_seeds(nbatches);
    std::uint64_t state = seed;
    for (auto& s : batch_seeds) s = splitmix64(state);
    std::vector<BatchStats> stats(nbatches);
    for (std::uint64_t b = 0; b < nbatches; ++b) {
        std::mt19937_64 rng(batch_seeds[b]);
        std::uint64_t count = std::min(batch_size, samples - b * batch_size);
        BatchStats st;
        st.n = count;
        for (std::uint64_t s = 0; s < count; ++s) {
            CMatrix u = (ens == Ensemble::unitary)      ? haar_unitary(k, rng)
                        : (ens == Ensemble::orthogonal) ? haar_orthogonal(k, rng)
                                                        : haar_symplectic_embedded(k, rng);
            std::complex<double> tr = 0;
            for (int i = 0; i < n; ++i)
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q)
                        for (int j = 0; j < n; ++j)
                            tr += Lambda.at(i, p) * u.at(p, q) * X.at(q, j) * std::conj(u.at(i, j));
            if (ens == Ensemble::symplectic) tr *= 0.5;
            std::complex<double> z = std::exp(std::complex<double>(0, 1) * tr);
            st.sum += z;
            st.sum_norm2 += std::norm(z);
        }
        stats[b] = st;
    }
    return merge_batches(stats, seed);
}

std::complex<double> reconstruct_full_integral(const ChiSeries& series, const Rational& y,
                                               const SpectralPoint& pt) {
    pt.validate();
    int k = pt.k();
    if (series.k() != k) throw std::invalid_argument("series/point k mismatch");
    // beta from y = beta(beta/2 - 1); only even beta series are exact
    int beta = -1;
    for (int b : {2, 4, 6, 8}) {
        if (Rational(b) * (Rational(b, 2) - 1) == y) beta = b;
    }
    if (beta < 0) throw std::invalid_argument("y must correspond to an even beta");
    int half = beta / 2;
    bool signed_weights = (half % 2 == 1);

    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::complex<double> total = 0;
    do {
        int sign = 1;
        if (signed_weights) {
            // parity of perm
            std::vector<bool> seen(k, false);
            for (int i = 0; i < k; ++i) {
                if (seen[i]) continue;
                int len = 0;
                for (int j = i; !seen[j]; j = perm[j]) {
                    seen[j] = true;
                    ++len;
                }
                if (len % 2 == 0) sign = -sign;
            }
        }
        SpectralPoint pp = pt.permuted_lambda(perm);
        GaussianRational chi = series_eval(series, pp, y);
        double phase = 0;
        for (int a = 0; a < k; ++a)
            phase += static_cast<double>(pp.lambda[a]) * static_cast<double>(pp.x[a]);
        std::complex<double> chif(static_cast<double>(chi.re), static_cast<double>(chi.im));
        total += static_cast<double>(sign) * std::exp(std::complex<double>(0, phase)) * chif;
    } while (std::next_permutation(perm.begin(), perm.end()));

    double dx = 1, dl = 1;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            dx *= static_cast<double>(pt.x[i] - pt.x[j]);
            dl *= static_cast<double>(pt.lambda[i] - pt.lambda[j]);
        }
    double denom = std::pow(dx * dl, half);
    return total / denom;
}

double pde_residual_numeric(const ChiSeries& series, const Rational& y, const SpectralPoint& pt) {
    pt.validate();
    int k = pt.k();
    if (series.k() != k) throw std::invalid_argument("series/point k mismatch");
    auto es = edges_of(k);
    const double yv = static_cast<double>(y);
    std::vector<double> tau(es.size()), lam(es.size());
    for (std::size_t e = 0; e < es.size(); ++e) {
        tau[e] = static_cast<double>(pt.tau(es[e]));
        lam[e] = static_cast<double>(pt.lambda_diff(es[e]));
    }
    auto coupling = [&](const EdgeIndex& e, const EdgeIndex& f) {
        auto sig = [](const EdgeIndex& g, int c) { return (c == g.a) - (c == g.b); };
        int s = 0;
        std::array<int, 4> verts{e.a, e.b, f.a, f.b};
        std::sort(verts.begin(), verts.end());
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (i && verts[i] == verts[i - 1]) continue;
            s += sig(e, verts[i]) * sig(f, verts[i]);
        }
        return s;
    };
    std::complex<double> total = 0;
    for (const auto& [m, c] : series.terms()) {
        double cv = static_cast<double>(c.eval(y));
        if (cv == 0) continue;
        std::vector<int> n(es.size(), 0);
        for (const auto& [e, p] : m.exponents()) n[edge_rank(e, k)] = p;
        double g = 1;
        for (std::size_t e = 0; e < es.size(); ++e) g /= std::pow(tau[e], n[e]);
        double A = 0, Bt = 0;
        for (std::size_t e = 0; e < es.size(); ++e) {
            A += (2.0 * n[e] * (n[e] + 1) - yv) * lam[e] * lam[e] / (tau[e] * tau[e]);
            if (n[e]) Bt += 2.0 * n[e] * lam[e] * lam[e] / tau[e];
            for (std::size_t f = e + 1; f < es.size(); ++f)
                if (n[e] && n[f])
                    A += 2.0 * n[e] * n[f] * coupling(es[e], es[f]) * (lam[e] / tau[e]) *
                         (lam[f] / tau[f]);
        }
        std::complex<double> val(A * cv, -Bt * cv);
        static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        total += ipow[m.total_degree() % 4] * val;
    }
    return std::abs(total);
}

} // namespace hiz
