#include "dskg/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace dskg {

void Grid::validate() const {
    if (n < 1 || n > 3) throw std::invalid_argument("grid: n must be 1, 2 or 3");
    if (N < 4 || N % 2 != 0) throw std::invalid_argument("grid: N must be even and >= 4");
    if (!(L > 0.0)) throw std::invalid_argument("grid: L must be > 0");
}

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int d = 0; d < n; ++d) s *= static_cast<std::size_t>(N);
    return s;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < n; ++d) v *= dx();
    return v;
}

Field Field::zeros(const Grid& g) { return Field{g, std::vector<double>(g.size(), 0.0)}; }

bool Field::all_finite() const {
    for (double v : samples)
        if (!std::isfinite(v)) return false;
    return true;
}

SpectralField SpectralField::zeros(const Grid& g) {
    return SpectralField{g, std::vector<std::complex<double>>(g.size())};
}

namespace {

// One cached FFTW workspace per (n, N); plans are reused under a lock and
// data is copied through the fftw-allocated buffer.
struct FftWorkspace {
    fftw_complex* buf = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    std::size_t size = 0;

    FftWorkspace(int n, int N) {
        size = 1;
        int dims[3] = {N, N, N};
        for (int d = 0; d < n; ++d) size *= static_cast<std::size_t>(N);
        buf = fftw_alloc_complex(size);
        forward = fftw_plan_dft(n, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft(n, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftWorkspace() {
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(buf);
    }
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;
};

std::mutex g_fft_mutex;

FftWorkspace& workspace_for(const Grid& g) {
    static std::map<std::pair<int, int>, std::unique_ptr<FftWorkspace>> cache;
    auto key = std::make_pair(g.n, g.N);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FftWorkspace>(g.n, g.N)).first;
    return *it->second;
}

}  // namespace

SpectralField transform(const Field& field) {
    field.grid.validate();
    if (field.samples.size() != field.grid.size())
        throw std::invalid_argument("transform: sample count does not match grid");
    SpectralField out = SpectralField::zeros(field.grid);
    const double scale = 1.0 / std::sqrt(static_cast<double>(field.grid.size()));
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    FftWorkspace& ws = workspace_for(field.grid);
    for (std::size_t i = 0; i < ws.size; ++i) {
        ws.buf[i][0] = field.samples[i];
        ws.buf[i][1] = 0.0;
    }
    fftw_execute(ws.forward);
    for (std::size_t i = 0; i < ws.size; ++i)
        out.coeffs[i] = std::complex<double>(ws.buf[i][0] * scale, ws.buf[i][1] * scale);
    return out;
}

Field inverse(const SpectralField& sf) {
    sf.grid.validate();
    if (sf.coeffs.size() != sf.grid.size())
        throw std::invalid_argument("inverse: coefficient count does not match grid");
    Field out = Field::zeros(sf.grid);
    const double scale = 1.0 / std::sqrt(static_cast<double>(sf.grid.size()));
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    FftWorkspace& ws = workspace_for(sf.grid);
    for (std::size_t i = 0; i < ws.size; ++i) {
        ws.buf[i][0] = sf.coeffs[i].real();
        ws.buf[i][1] = sf.coeffs[i].imag();
    }
    fftw_execute(ws.backward);
    for (std::size_t i = 0; i < ws.size; ++i) out.samples[i] = ws.buf[i][0] * scale;
    return out;
}

double wavenumber_sq(const Grid& g, std::size_t i) {
    const double dxi = 2.0 * M_PI / g.L;
    double ksq = 0.0;
    std::size_t rest = i;
    for (int d = g.n - 1; d >= 0; --d) {
        const int idx = static_cast<int>(rest % static_cast<std::size_t>(g.N));
        rest /= static_cast<std::size_t>(g.N);
        const double xi = dxi * g.axis_wave_index(idx);
        ksq += xi * xi;
    }
    return ksq;
}

void dealias(SpectralField& sf) {
    const int cut = sf.grid.N / 3;
    const std::size_t total = sf.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (int d = 0; d < sf.grid.n; ++d) {
            const int idx = static_cast<int>(rest % static_cast<std::size_t>(sf.grid.N));
            rest /= static_cast<std::size_t>(sf.grid.N);
            if (std::abs(sf.grid.axis_wave_index(idx)) > cut) {
                sf.coeffs[i] = 0.0;
                break;
            }
        }
    }
}

Field dealias(const Field& f) {
    SpectralField sf = transform(f);
    dealias(sf);
    return inverse(sf);
}

double sobolev_norm(const SpectralField& sf, double mu, NormKind kind, double shift) {
    if (mu < 0.0 && kind == NormKind::homogeneous)
        throw std::invalid_argument("sobolev_norm: homogeneous order must be >= 0");
    if (shift < 0.0) throw std::invalid_argument("sobolev_norm: shift must be >= 0");
    const double w = sf.grid.cell_volume();
    double acc = 0.0;
    for (std::size_t i = 0; i < sf.coeffs.size(); ++i) {
        const double ksq = wavenumber_sq(sf.grid, i);
        const double mag2 = std::norm(sf.coeffs[i]);
        double weight;
        if (kind == NormKind::homogeneous)
            weight = (ksq == 0.0 && mu == 0.0) ? 1.0 : std::pow(ksq, mu);
        else
            weight = std::pow(1.0 + ksq, mu);
        acc += (weight + shift) * mag2;
    }
    return std::sqrt(acc * w);
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += v * v;
    return std::sqrt(acc * f.grid.cell_volume());
}

double grad_sobolev_norm(const SpectralField& sf, double mu) {
    const double w = sf.grid.cell_volume();
    double acc = 0.0;
    for (std::size_t i = 0; i < sf.coeffs.size(); ++i) {
        const double ksq = wavenumber_sq(sf.grid, i);
        if (ksq == 0.0) continue;
        acc += std::pow(ksq, mu) * ksq * std::norm(sf.coeffs[i]);
    }
    return std::sqrt(acc * w);
}

double Trajectory::dt() const {
    if (snapshots.size() < 2) return 0.0;
    return snapshots[1].t - snapshots[0].t;
}

double x_norm(const Trajectory& traj, double mu, const PhysicalParams& params,
              double Q, NormRegime regime) {
    if (Q < 0.0) throw std::invalid_argument("x_norm: requires Q >= 0");
    if (regime == NormRegime::H_nonneg && params.H < 0.0)
        throw std::invalid_argument("x_norm: H_nonneg regime with H < 0");
    if (regime == NormRegime::H_neg && params.H >= 0.0)
        throw std::invalid_argument("x_norm: H_neg regime with H >= 0");
    if (traj.snapshots.empty()) return 0.0;

    const double sqrtQ = std::sqrt(Q);
    double sup_ut = 0.0, sup_grad = 0.0, sup_u = 0.0;
    std::vector<double> l2t_a(traj.snapshots.size()), l2t_b(traj.snapshots.size());

    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const StateSnapshot& s = traj.snapshots[i];
        const SpectralField su = transform(s.u);
        const SpectralField sut = transform(s.ut);
        const double eHt = std::exp(params.H * s.t);
        if (regime == NormRegime::H_nonneg) {
            sup_ut = std::max(sup_ut, sobolev_norm(sut, mu) / params.c);
            const double g = grad_sobolev_norm(su, mu) / eHt;
            sup_grad = std::max(sup_grad, g);
            sup_u = std::max(sup_u, sqrtQ * sobolev_norm(su, mu));
            l2t_a[i] = g * g;
        } else {
            const double wut = eHt * sobolev_norm(sut, mu);
            sup_ut = std::max(sup_ut, wut / params.c);
            sup_grad = std::max(sup_grad, grad_sobolev_norm(su, mu));
            const double wu = eHt * sobolev_norm(su, mu);
            sup_u = std::max(sup_u, sqrtQ * wu);
            l2t_a[i] = wut * wut;
            l2t_b[i] = wu * wu;
        }
    }

    auto trapezoid = [&](const std::vector<double>& v) {
        double acc = 0.0;
        const double dt = traj.dt();
        for (std::size_t i = 0; i + 1 < v.size(); ++i) acc += 0.5 * dt * (v[i] + v[i + 1]);
        return acc;
    };

    if (regime == NormRegime::H_nonneg)
        return sup_ut + sup_grad + sup_u + std::sqrt(params.H) * std::sqrt(trapezoid(l2t_a));
    return sup_ut + sup_grad + sup_u +
           std::sqrt(-params.H) / params.c * std::sqrt(trapezoid(l2t_a)) +
           std::sqrt(-params.H * Q) * std::sqrt(trapezoid(l2t_b));
}

double d_norm(const Field& u0, const Field& u1, double mu,
              const PhysicalParams& params, double Q) {
    if (!(u0.grid == u1.grid)) throw std::invalid_argument("d_norm: grid mismatch");
    if (Q < 0.0) throw std::invalid_argument("d_norm: requires Q >= 0");
    const SpectralField s0 = transform(u0);
    const SpectralField s1 = transform(u1);
    return sobolev_norm(s1, mu) / params.c + grad_sobolev_norm(s0, mu) +
           std::sqrt(Q) * sobolev_norm(s0, mu);
}

}  // namespace dskg
