#include "qcgeom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qcgeom/surface.hpp"

namespace qcgeom {

namespace {

struct Check {
    std::string name;
    double residual;
    double tol;
};

BatteryResult finish(const std::string& name, std::vector<Check> checks,
                     std::vector<std::pair<std::string, double>> metrics) {
    BatteryResult r;
    r.name = name;
    r.metrics = std::move(metrics);
    r.score = 0.0;
    for (const Check& c : checks) {
        const double scaled = c.residual / c.tol;
        if (scaled > r.score) {
            r.score = scaled;
            r.note = c.name;
        }
        r.metrics.emplace_back(c.name, c.residual);
    }
    r.pass = r.score < 1.0;
    return r;
}

struct PointData {
    QVector p;
    CalibratedFrame cf;
};

std::vector<PointData> calibrated_points(const SurfaceSpec& spec,
                                         const std::vector<QVector>& pts, double sp1_tol) {
    std::vector<PointData> out;
    out.reserve(pts.size());
    for (const QVector& p : pts)
        out.push_back({p, calibrate(hat_structure(spec, p, sp1_tol))});
    return out;
}

RealMatrix mean_delta(const std::vector<PointData>& pts) {
    RealMatrix mean = assemble_delta(pts.front().cf);
    for (std::size_t i = 1; i < pts.size(); ++i) mean += assemble_delta(pts[i].cf);
    mean *= 1.0 / static_cast<double>(pts.size());
    return mean;
}

double delta_pair(const RealMatrix& d, const QVector& a, const QVector& b) {
    return dot(a.coords(), d.apply(b.coords()));
}

BatteryResult battery_einstein(const SurfaceSpec& spec, const std::vector<PointData>& pts) {
    const RealMatrix dbar = mean_delta(pts);
    const double dscale = std::max(1.0, dbar.max_abs());

    double worst_i = 0.0, worst_ii = 0.0, worst_iii_spread = 0.0, worst_iii_cross = 0.0,
           worst_iv = 0.0;
    for (const PointData& pd : pts) {
        const HatFrame& fr = pd.cf.base;
        const double f = pd.cf.f;
        const std::vector<QVector> tb = fr.tangent_basis();
        double ii_scale = fr.II_H.max_abs();
        for (int s = 0; s < 3; ++s)
            ii_scale = std::max(ii_scale, std::abs(fr.ii(fr.JN[s], fr.JN[s])));

        for (std::size_t i = 0; i < tb.size(); ++i)
            for (std::size_t j = i; j < tb.size(); ++j)
                worst_i = std::max(worst_i, std::abs(delta_pair(dbar, tb[i], tb[j]) +
                                                     f * fr.ii(tb[i], tb[j])));
        worst_iii_spread = std::max(worst_iii_spread, pd.cf.S_spread);
        for (int s = 0; s < 3; ++s)
            for (int t = s + 1; t < 3; ++t)
                worst_iii_cross =
                    std::max(worst_iii_cross,
                             std::abs(fr.ii(fr.JN[s], fr.JN[t])) / std::max(ii_scale, 1e-300));
    }

    // derivative identities on a subset of points (finite differences are the
    // dominant cost)
    const std::size_t nfd = std::min<std::size_t>(pts.size(), 20);
    for (std::size_t k = 0; k < nfd; ++k) {
        const PointData& pd = pts[k];
        const HatFrame& fr = pd.cf.base;
        const double f = pd.cf.f;
        for (const QVector& h : fr.h_basis) {
            const double lhs = df_along(spec, pd.p, h);
            for (int s = 1; s <= 3; ++s) {
                const double rhs = -f * fr.ii(fr.JN[s - 1], apply_J(s, h));
                worst_ii = std::max(worst_ii, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
            }
        }
        for (int s = 1; s <= 3; ++s) {
            worst_iv = std::max(worst_iv, std::abs(df_along(spec, pd.p, fr.JN[s - 1])));
            worst_iv = std::max(worst_iv, std::abs(df_along(spec, pd.p, pd.cf.xi[s - 1])));
        }
    }

    return finish("einstein",
                  {{"delta_restriction", worst_i / dscale, 1e-8},
                   {"df_matches_ii", worst_ii, 1e-5},
                   {"s_spread", worst_iii_spread, 1e-8},
                   {"ii_cross_terms", worst_iii_cross, 1e-8},
                   {"df_normal_directions", worst_iv, 1e-5}},
                  {});
}

BatteryResult battery_mu(const std::vector<PointData>& pts) {
    double worst = 0.0, worst_s = 0.0;
    for (const PointData& pd : pts) {
        const double mu = pd.cf.mu;
        const double oracle = mu_determinant_oracle(pd.cf.base);
        worst = std::max(worst, std::abs(mu - oracle) / std::abs(oracle));
        worst_s = std::max(worst_s, pd.cf.mu_s_dev);
    }
    return finish("mu", {{"pfaffian_vs_det", worst, 1e-10}, {"s_independence", worst_s, 1e-10}},
                  {});
}

BatteryResult battery_delta(const SurfaceSpec& spec, const std::vector<PointData>& pts,
                            double tol_const) {
    std::vector<RealMatrix> deltas;
    deltas.reserve(pts.size());
    for (const PointData& pd : pts) deltas.push_back(assemble_delta(pd.cf));
    RealMatrix mean(deltas.front().rows(), deltas.front().rows());
    for (const RealMatrix& d : deltas) mean += d;
    mean *= 1.0 / static_cast<double>(deltas.size());
    const double scale = std::max(mean.max_abs(), 1e-300);
    double dev = 0.0;
    for (const RealMatrix& d : deltas) dev = std::max(dev, (d - mean).max_abs());
    dev /= scale;

    DeltaForm df;
    df.matrix = mean;
    double jres = 0.0;
    {
        DeltaForm tmp = delta_constancy(deltas, std::max(dev * 2, tol_const));
        jres = tmp.j_residual;
    }
    bool quadruples_ok = true;
    try {
        signature(df);
    } catch (const QuadrupleViolation&) {
        quadruples_ok = false;
    }

    // restriction identity Delta(A,B) = g(A_H, B_H) + S/2 sum eta_s(A) eta_s(B)
    double worst_restrict = 0.0, worst_grad = 0.0;
    for (const PointData& pd : pts) {
        const HatFrame& fr = pd.cf.base;
        const std::vector<QVector> tb = fr.tangent_basis();
        for (std::size_t i = 0; i < tb.size(); ++i)
            for (std::size_t j = i; j < tb.size(); ++j) {
                double eta_term = 0.0;
                QVector ah = tb[i], bh = tb[j];
                for (int s = 1; s <= 3; ++s) {
                    const double ea = pd.cf.eta(s, tb[i]);
                    const double eb = pd.cf.eta(s, tb[j]);
                    eta_term += ea * eb;
                    ah -= pd.cf.xi[s - 1] * ea;
                    bh -= pd.cf.xi[s - 1] * eb;
                }
                const double g_h = dot(fr.h_coords(ah), pd.cf.g.apply(fr.h_coords(bh)));
                const double lhs = delta_pair(mean, tb[i], tb[j]);
                worst_restrict =
                    std::max(worst_restrict, std::abs(lhs - g_h - 0.5 * pd.cf.S * eta_term));
            }
    }
    const std::size_t nfd = std::min<std::size_t>(pts.size(), 6);
    for (std::size_t k = 0; k < nfd; ++k) {
        const PointData& pd = pts[k];
        const HatFrame& fr = pd.cf.base;
        std::vector<QVector> dirs = {fr.h_basis[0], fr.JN[0], fr.JN[1], fr.JN[2]};
        for (const QVector& a : dirs) {
            const double lhs = delta_pair(mean, fr.N, a);
            worst_grad = std::max(worst_grad, std::abs(lhs - df_along(spec, pd.p, a)));
        }
    }

    return finish("delta",
                  {{"constancy_dev", dev, tol_const},
                   {"j_residual", jres, 1e-8},
                   {"quadruple_structure", quadruples_ok ? 0.0 : 1.0, 0.5},
                   {"restriction_identity", worst_restrict / std::max(1.0, scale), 1e-8},
                   {"gradient_identity", worst_grad, 1e-5}},
                  {});
}

BatteryResult battery_reeb(const SurfaceSpec& spec, const std::vector<PointData>& pts) {
    double worst_bi1 = 0.0;
    for (const PointData& pd : pts) {
        const HatFrame& fr = pd.cf.base;
        for (int s = 1; s <= 3; ++s)
            for (int t = 1; t <= 3; ++t) {
                const double pairing = pd.cf.f * flat_inner(fr.JN[t - 1], pd.cf.xi[s - 1]);
                worst_bi1 = std::max(worst_bi1, std::abs(pairing - (s == t ? 1.0 : 0.0)));
            }
    }

    // finite-difference structure checks on a few points
    double worst_deta_hat = 0.0, worst_contraction = 0.0;
    const std::size_t nfd = std::min<std::size_t>(pts.size(), 3);
    for (std::size_t k = 0; k < nfd; ++k) {
        const PointData& pd = pts[k];
        const HatFrame& fr = pd.cf.base;
        const std::size_t nx = std::min<std::size_t>(fr.h_basis.size(), 2);
        for (int s = 1; s <= 3; ++s) {
            for (std::size_t i = 0; i < nx; ++i) {
                const QVector& x = fr.h_basis[i];
                const QVector jx = apply_J(s, x);
                const double fd = deta_fd(spec, pd.p, s, x, jx, 1e-3, false);
                const double exact = 2.0 * dot(fr.h_coords(apply_J(s, x)),
                                               fr.ghat.apply(fr.h_coords(jx)));
                worst_deta_hat =
                    std::max(worst_deta_hat, std::abs(fd - exact) / (1.0 + std::abs(exact)));
                const double contr = deta_fd(spec, pd.p, s, pd.cf.xi[s - 1], x, 1e-3, true);
                worst_contraction = std::max(worst_contraction, std::abs(contr));
            }
        }
    }

    return finish("reeb",
                  {{"reeb_normalization", worst_bi1, 1e-10},
                   {"deta_matches_2omega", worst_deta_hat, 1e-4},
                   {"reeb_contraction", worst_contraction, 1e-4}},
                  {});
}

BatteryResult battery_potentials(const SurfaceSpec& spec, const std::vector<PointData>& pts) {
    std::vector<RealMatrix> deltas;
    for (const PointData& pd : pts) deltas.push_back(assemble_delta(pd.cf));
    const DeltaForm df = delta_constancy(deltas, 1.0);
    std::vector<QVector> points;
    for (const PointData& pd : pts) points.push_back(pd.p);
    const HeisenbergReport rep = heisenberg_invariants(spec, points, df);
    return finish("potentials",
                  {{"fl0_dev", rep.fl0_dev, 1e-6},
                   {"potential_fit_residual", rep.potential_fit_residual, 1e-6}},
                  {{"fl0_constant", rep.c0}});
}

BatteryResult battery_conformal(const std::vector<PointData>& pts, std::uint64_t seed) {
    const HorizontalStructure base = horizontal_structure(pts.front().cf.base);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double factor = uniform_real(rng, 0.1, 10.0);
        // random rotation from a unit quaternion
        const Quaternion q = random_unit_quaternion(rng);
        RealMatrix rot(3, 3);
        {
            const double w = q.t, xq = q.x, yq = q.y, zq = q.z;
            rot(0, 0) = 1 - 2 * (yq * yq + zq * zq);
            rot(0, 1) = 2 * (xq * yq - w * zq);
            rot(0, 2) = 2 * (xq * zq + w * yq);
            rot(1, 0) = 2 * (xq * yq + w * zq);
            rot(1, 1) = 1 - 2 * (xq * xq + zq * zq);
            rot(1, 2) = 2 * (yq * zq - w * xq);
            rot(2, 0) = 2 * (xq * zq - w * yq);
            rot(2, 1) = 2 * (yq * zq + w * xq);
            rot(2, 2) = 1 - 2 * (xq * xq + yq * yq);
        }
        HorizontalStructure moved = base;
        moved.metric = base.metric * factor;
        for (int s = 0; s < 3; ++s) {
            RealMatrix acc(base.metric.rows(), base.metric.rows());
            for (int t = 0; t < 3; ++t) acc += base.cplx[t] * rot(t, s);
            moved.cplx[s] = acc;
        }
        const ConformalPair rec = recover_conformal_pair(base, moved, 1e-6);
        worst = std::max(worst, std::abs(rec.factor - factor) / factor);
        worst = std::max(worst, (rec.rotation - rot).max_abs());
    }
    return finish("conformal", {{"recover_round_trip", worst, 1e-8}}, {});
}

}  // namespace

const std::vector<std::string> kAllBatteries = {"einstein", "mu",         "delta",
                                                "reeb",     "potentials", "conformal"};

bool is_known_battery(const std::string& name) {
    return std::find(kAllBatteries.begin(), kAllBatteries.end(), name) != kAllBatteries.end();
}

std::vector<BatteryResult> run_batteries(const SurfaceSpec& spec,
                                         const std::vector<std::string>& names,
                                         const VerifyOptions& opts) {
    for (const std::string& n : names)
        if (!is_known_battery(n)) throw InputError("unknown battery '" + n + "'");

    const std::vector<QVector> points = sample_points(spec, opts.samples, opts.rng_seed);
    const std::vector<PointData> pts = calibrated_points(spec, points, opts.tol_sp1);

    std::vector<BatteryResult> out;
    for (const std::string& name : names) {
        if (name == "einstein") out.push_back(battery_einstein(spec, pts));
        else if (name == "mu") out.push_back(battery_mu(pts));
        else if (name == "delta") out.push_back(battery_delta(spec, pts, opts.tol_const));
        else if (name == "reeb") out.push_back(battery_reeb(spec, pts));
        else if (name == "conformal") out.push_back(battery_conformal(pts, opts.rng_seed));
        else if (name == "potentials") {
            try {
                out.push_back(battery_potentials(spec, pts));
            } catch (const NotDegenerate&) {
                if (names.size() == 1) throw;
                BatteryResult r;
                r.name = "potentials";
                r.pass = true;
                r.skipped = true;
                r.note = "not degenerate";
                out.push_back(r);
            }
        }
    }
    return out;
}

}  // namespace qcgeom
