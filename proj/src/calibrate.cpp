#include "qcgeom/calibrate.hpp"

#include <cmath>
#include <complex>

namespace qcgeom {

namespace {

using Cplx = std::complex<double>;
using CMat = std::vector<std::vector<Cplx>>;

// cyclic triple (i,j,k) starting at i
void cyclic(int i, int& j, int& k) {
    j = i % 3 + 1;
    k = j % 3 + 1;
}

// I_s as a matrix in h_basis coordinates (orthonormal, J-invariant span)
RealMatrix cplx_structure_matrix(const HatFrame& f, int s) {
    const std::size_t m = f.h_basis.size();
    RealMatrix is(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const QVector ji = apply_J(s, f.h_basis[i]);
        for (std::size_t j = 0; j < m; ++j) is(j, i) = flat_inner(ji, f.h_basis[j]);
    }
    return is;
}

// columns: complex coordinates (in h_basis) of a basis of H^{1,0} w.r.t. I_s,
// built greedily as e_a - i I_s e_a over the h_basis seeds
std::vector<std::vector<Cplx>> complex_basis(const RealMatrix& is) {
    const std::size_t m = is.rows();
    std::vector<std::vector<double>> accepted;  // real span of chosen pairs
    std::vector<std::vector<Cplx>> cols;
    for (std::size_t a = 0; a < m && cols.size() < m / 2; ++a) {
        std::vector<double> u(m, 0.0);
        u[a] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& w : accepted) {
                const double c = dot(u, w);
                for (std::size_t i = 0; i < m; ++i) u[i] -= c * w[i];
            }
        const double nrm = vec_norm(u);
        if (nrm < 1e-8) continue;
        for (double& v : u) v /= nrm;
        std::vector<double> iu = is.apply(u);
        accepted.push_back(u);
        accepted.push_back(iu);
        std::vector<Cplx> col(m);
        for (std::size_t i = 0; i < m; ++i) col[i] = Cplx(u[i], -iu[i]);
        cols.push_back(std::move(col));
    }
    if (cols.size() != m / 2)
        throw LinearSolveFailure("complex_basis: could not complete a (1,0) basis");
    return cols;
}

// C[k][l] = form(v_k, v_l), complex-bilinear extension of the real 2-form W
CMat form_on_basis(const RealMatrix& w_re, const RealMatrix& w_im,
                   const std::vector<std::vector<Cplx>>& basis) {
    const std::size_t m = w_re.rows(), nb = basis.size();
    CMat c(nb, std::vector<Cplx>(nb));
    for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
            Cplx acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                Cplx row = 0.0;
                for (std::size_t j = 0; j < m; ++j)
                    row += Cplx(w_re(i, j), w_im(i, j)) * basis[l][j];
                acc += basis[k][i] * row;
            }
            c[k][l] = acc;
        }
    return c;
}

struct MuRatios {
    double mu[3];
};

MuRatios mu_ratios(const HatFrame& f) {
    const std::size_t m = f.h_basis.size();
    std::array<RealMatrix, 3> is;
    for (int s = 1; s <= 3; ++s) is[s - 1] = cplx_structure_matrix(f, s);

    // omega_s entries on h_basis for both the induced and the ambient metric:
    // hat-omega_s = ghat(I_s ., .) = Is^T Ghat, ambient Omega_s = Is^T
    std::array<RealMatrix, 3> what, wamb;
    for (int s = 0; s < 3; ++s) {
        wamb[s] = is[s].transposed();
        what[s] = is[s].transposed() * f.ghat;
    }

    MuRatios out{};
    for (int i = 1; i <= 3; ++i) {
        int j, k;
        cyclic(i, j, k);
        const auto basis = complex_basis(is[i - 1]);
        const CMat c_amb = form_on_basis(wamb[j - 1], wamb[k - 1], basis);
        const CMat c_hat = form_on_basis(what[j - 1], what[k - 1], basis);
        const Cplx pf_amb = pfaffian(c_amb);
        const Cplx pf_hat = pfaffian(c_hat);
        if (std::abs(pf_hat) < 1e-300 || std::abs(pf_amb) < 1e-300)
            throw PfaffianSingular("compute_mu: vanishing Pfaffian");
        const Cplx ratio = pf_amb / pf_hat;
        if (std::abs(ratio.imag()) > 1e-8 * std::abs(ratio))
            throw NonPositiveMu("compute_mu: ratio of Pfaffians is not real");
        if (!(ratio.real() > 0.0))
            throw NonPositiveMu("compute_mu: ratio of Pfaffians is not positive");
        out.mu[i - 1] = ratio.real();
        (void)m;
    }
    return out;
}

double f_at(const SurfaceSpec& spec, const QVector& p) {
    return calibrate(hat_structure(spec, p)).f;
}

}  // namespace

double compute_mu(const HatFrame& frame) {
    const MuRatios r = mu_ratios(frame);
    for (int s = 1; s < 3; ++s)
        if (std::abs(r.mu[s] - r.mu[0]) > 1e-10 * std::abs(r.mu[0]))
            throw InconsistentCalibration(
                "compute_mu: Pfaffian ratios disagree across s (" +
                std::to_string(std::abs(r.mu[s] - r.mu[0]) / std::abs(r.mu[0])) + ")");
    return r.mu[0];
}

double mu_determinant_oracle(const HatFrame& frame) {
    // Cholesky of ghat on the (ambient-orthonormal) h_basis: the ghat-
    // orthonormal basis is L^-T, the ambient Gram matrix there is L^-1 L^-T,
    // so det = prod(diag L)^-2 and mu = prod(diag L)^-1/2.
    const RealMatrix& g = frame.ghat;
    const std::size_t n = g.rows();
    RealMatrix l(n, n);
    double log_det = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = g(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) throw LinearSolveFailure("mu_determinant_oracle: ghat not positive");
        l(j, j) = std::sqrt(d);
        log_det += std::log(l(j, j));
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = g(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return std::exp(-0.5 * log_det);
}

CalibratedFrame calibrate(const HatFrame& frame) {
    CalibratedFrame c;
    c.base = frame;

    const MuRatios ratios = mu_ratios(frame);
    c.mu = ratios.mu[0];
    c.mu_s_dev = 0.0;
    for (int s = 1; s < 3; ++s)
        c.mu_s_dev = std::max(c.mu_s_dev, std::abs(ratios.mu[s] - c.mu) / std::abs(c.mu));
    if (c.mu_s_dev > 1e-10)
        throw InconsistentCalibration("calibrate: mu is not independent of s (dev " +
                                      std::to_string(c.mu_s_dev) + ")");

    const std::size_t n = frame.n();
    c.f = std::pow(c.mu, 1.0 / (static_cast<double>(n) + 2.0));
    c.g = frame.ghat * c.f;

    // r from g(r, X) = II(J_sN, J_sX), solved at s = 1 and cross-checked
    const std::size_t m = frame.h_basis.size();
    std::array<std::vector<double>, 3> rs;
    for (int s = 1; s <= 3; ++s) {
        std::vector<double> b(m);
        for (std::size_t i = 0; i < m; ++i)
            b[i] = frame.ii(frame.JN[s - 1], apply_J(s, frame.h_basis[i]));
        rs[s - 1] = solve_spd(c.g, b);
    }
    const double r_scale = 1.0 + vec_norm(rs[0]);
    for (int s = 1; s < 3; ++s) {
        std::vector<double> d(m);
        for (std::size_t i = 0; i < m; ++i) d[i] = rs[s][i] - rs[0][i];
        c.r_cross_dev = std::max(c.r_cross_dev, vec_norm(d) / r_scale);
    }
    if (c.r_cross_dev > 1e-8)
        throw InconsistentCalibration("calibrate: r solutions disagree across s (dev " +
                                      std::to_string(c.r_cross_dev) + ")");
    c.r = frame.from_h_coords(rs[0]);

    // S from II(J_sN, J_sN) = -f (S/2 + g(r,r)); off-diagonal terms must vanish
    const double grr = dot(rs[0], c.g.apply(rs[0]));
    double s_vals[3];
    double ii_scale = frame.II_H.max_abs();
    for (int s = 0; s < 3; ++s) {
        const double iiss = frame.ii(frame.JN[s], frame.JN[s]);
        ii_scale = std::max(ii_scale, std::abs(iiss));
        s_vals[s] = -2.0 * iiss / c.f - 2.0 * grr;
    }
    c.S = (s_vals[0] + s_vals[1] + s_vals[2]) / 3.0;
    c.S_spread = 0.0;
    for (double sv : s_vals) c.S_spread = std::max(c.S_spread, std::abs(sv - c.S));
    for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) {
            const double off = std::abs(frame.ii(frame.JN[s], frame.JN[t]));
            if (off > 1e-8 * std::max(ii_scale, 1e-300))
                throw InconsistentCalibration(
                    "calibrate: II(J_sN, J_tN) cross term is not negligible");
        }

    for (int s = 1; s <= 3; ++s)
        c.xi[s - 1] = frame.JN[s - 1] * (1.0 / c.f) + apply_J(s, c.r);
    return c;
}

double f_ratio_check(const SurfaceSpec& spec, const std::vector<QVector>& points,
                     const std::function<double(const QVector&)>& ref) {
    double c0 = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double ratio = f_at(spec, points[i]) / ref(points[i]);
        if (i == 0) {
            c0 = ratio;
            continue;
        }
        worst = std::max(worst, std::abs(ratio - c0) / std::abs(c0));
    }
    return worst;
}

double df_along(const SurfaceSpec& spec, const QVector& p, const QVector& x, double step) {
    const auto phi = [&](double t) {
        return f_at(spec, project_to_surface(spec, p + x * t));
    };
    const auto central = [&](double h) { return (phi(h) - phi(-h)) / (2.0 * h); };
    const double d1 = central(step);
    const double d2 = central(step / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

namespace {

double eta_pairing(const SurfaceSpec& spec, const QVector& q, int s, const QVector& v,
                   bool calibrated) {
    const HatFrame fr = hat_structure(spec, q);
    const double scale = calibrated ? calibrate(fr).f : 1.0;
    return scale * flat_inner(fr.JN[s - 1], v);
}

double circulation(const SurfaceSpec& spec, const QVector& p, int s, const QVector& x,
                   const QVector& y, double eps, bool calibrated) {
    // centered loop: odd-order quadrature errors cancel pairwise
    const double h = eps / 2.0;
    const QVector c1 = project_to_surface(spec, p - x * h - y * h);
    const QVector c2 = project_to_surface(spec, p + x * h - y * h);
    const QVector c3 = project_to_surface(spec, p + x * h + y * h);
    const QVector c4 = project_to_surface(spec, p - x * h + y * h);
    const QVector* loop[5] = {&c1, &c2, &c3, &c4, &c1};
    double acc = 0.0;
    for (int e = 0; e < 4; ++e) {
        const QVector mid = project_to_surface(spec, (*loop[e] + *loop[e + 1]) * 0.5);
        acc += eta_pairing(spec, mid, s, *loop[e + 1] - *loop[e], calibrated);
    }
    return acc / (eps * eps);
}

}  // namespace

double deta_fd(const SurfaceSpec& spec, const QVector& p, int s, const QVector& x,
               const QVector& y, double step, bool calibrated) {
    const double d1 = circulation(spec, p, s, x, y, step, calibrated);
    const double d2 = circulation(spec, p, s, x, y, step / 2.0, calibrated);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace qcgeom
