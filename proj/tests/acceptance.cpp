// Acceptance suite: exercises the classifier end to end on the model
// hyperquadrics at n = 1 and n = 2, their random affine images, the
// calibration cross-oracles, the identity batteries and the negative control.
// One PASS/FAIL line per criterion; exit code is the number of failures.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcgeom/classify.hpp"
#include "qcgeom/verify.hpp"
#include "test_util.hpp"

using namespace qcgeom;
using qcgeom::testutil::load_surface;
using qcgeom::testutil::random_affine;
using qcgeom::testutil::run_cli;
using qcgeom::testutil::surface_path;

namespace {

int failures = 0;

void report(int idx, const char* what, bool pass, const std::string& detail) {
    std::printf("%s  %2d  %-34s %s\n", pass ? "PASS" : "FAIL", idx, what, detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

struct Model {
    const char* file;
    QuadricClass label;
};

const std::array<Model, 3> kModelsN1 = {{{"heisenberg_n1.qcs", QuadricClass::Parabolic},
                                         {"sphere_n1.qcs", QuadricClass::Sphere},
                                         {"hyperboloid_n1.qcs", QuadricClass::Hyperboloid}}};
const std::array<Model, 3> kModelsN2 = {{{"heisenberg_n2.qcs", QuadricClass::Parabolic},
                                         {"sphere_n2.qcs", QuadricClass::Sphere},
                                         {"hyperboloid_n2.qcs", QuadricClass::Hyperboloid}}};

// 1. classify returns the expected label with residual < 1e-6 for all six
// model files
void criterion_1() {
    bool pass = true;
    double worst = 0.0;
    std::string bad;
    for (const auto& models : {kModelsN1, kModelsN2})
        for (const Model& m : models) {
            const Classification c = classify(load_surface(m.file));
            worst = std::max(worst, c.residual);
            if (c.label != m.label || c.residual >= 1e-6) {
                pass = false;
                bad = std::string(" first failure: ") + m.file;
            }
        }
    report(1, "three-quadric classification", pass,
           "6/6 labels, worst residual " + fmt("%.2e", worst) + bad);
}

// 2. 100 random affine images of each n=1 model keep their labels with
// residual < 1e-6
void criterion_2() {
    std::mt19937_64 rng(20140915);
    int correct = 0, total = 0;
    double worst = 0.0;
    for (const Model& m : kModelsN1) {
        const SurfaceSpec model = load_surface(m.file);
        for (int trial = 0; trial < 100; ++trial) {
            const SurfaceSpec img = transform_surface(model, random_affine(2, rng));
            ++total;
            try {
                const Classification c = classify(img);
                worst = std::max(worst, c.residual);
                if (c.label == m.label && c.residual < 1e-6) ++correct;
            } catch (const GeomError&) {
            }
        }
    }
    report(2, "affine invariance of the label", correct == total && total == 300,
           std::to_string(correct) + "/300 correct, worst residual " + fmt("%.2e", worst));
}

// 3. Pfaffian-ratio mu agrees with the determinant oracle to 1e-10 relative
void criterion_3() {
    std::mt19937_64 rng(5183);
    double worst = 0.0;
    std::vector<SurfaceSpec> surfaces;
    for (const Model& m : kModelsN1) surfaces.push_back(load_surface(m.file));
    for (int trial = 0; trial < 10; ++trial) {
        const SurfaceSpec& model = surfaces[trial % 3];
        surfaces.push_back(transform_surface(model, random_affine(2, rng)));
    }
    for (const SurfaceSpec& s : surfaces)
        for (const QVector& p : sample_points(s, 50, 61)) {
            const HatFrame fr = hat_structure(s, p);
            const double mu = compute_mu(fr);
            const double oracle = mu_determinant_oracle(fr);
            worst = std::max(worst, std::abs(mu - oracle) / oracle);
        }
    report(3, "calibration cross-oracle", worst < 1e-10,
           "13 surfaces x 50 points, worst relative deviation " + fmt("%.2e", worst));
}

// 4. the qc-Einstein identities of the calibrated structure
void criterion_4() {
    double worst_i = 0.0, worst_ii = 0.0, worst_iii = 0.0, worst_iv = 0.0;
    for (const Model& m : kModelsN1) {
        const SurfaceSpec spec = load_surface(m.file);
        const std::vector<QVector> pts = sample_points(spec, 20, 67);
        std::vector<CalibratedFrame> cfs;
        std::vector<RealMatrix> deltas;
        for (const QVector& p : pts) {
            cfs.push_back(calibrate(hat_structure(spec, p)));
            deltas.push_back(assemble_delta(cfs.back()));
        }
        RealMatrix mean(deltas[0].rows(), deltas[0].rows());
        for (const RealMatrix& d : deltas) mean += d;
        mean *= 1.0 / static_cast<double>(deltas.size());

        for (std::size_t k = 0; k < pts.size(); ++k) {
            const CalibratedFrame& cf = cfs[k];
            const HatFrame& fr = cf.base;
            // (i) the constant form restricted to TM is -f II
            const std::vector<QVector> tb = fr.tangent_basis();
            for (std::size_t i = 0; i < tb.size(); ++i)
                for (std::size_t j = i; j < tb.size(); ++j) {
                    const double lhs = dot(tb[i].coords(), mean.apply(tb[j].coords()));
                    worst_i = std::max(worst_i, std::abs(lhs + cf.f * fr.ii(tb[i], tb[j])));
                }
            // (iii) S agrees across s and the II cross terms vanish
            worst_iii = std::max(worst_iii, cf.S_spread);
            double ii_scale = fr.II_H.max_abs();
            for (int s = 0; s < 3; ++s)
                ii_scale = std::max(ii_scale, std::abs(fr.ii(fr.JN[s], fr.JN[s])));
            for (int s = 0; s < 3; ++s)
                for (int t = s + 1; t < 3; ++t)
                    worst_iii = std::max(
                        worst_iii, std::abs(fr.ii(fr.JN[s], fr.JN[t])) / ii_scale);
            // (ii) df along horizontal directions, all three structures
            for (const QVector& h : fr.h_basis) {
                const double lhs = df_along(spec, pts[k], h);
                for (int s = 1; s <= 3; ++s) {
                    const double rhs = -cf.f * fr.ii(fr.JN[s - 1], apply_J(s, h));
                    worst_ii = std::max(worst_ii, std::abs(lhs - rhs));
                }
            }
            // (iv) df vanishes along J_sN and the Reeb fields
            for (int s = 0; s < 3; ++s) {
                worst_iv = std::max(worst_iv, std::abs(df_along(spec, pts[k], fr.JN[s])));
                worst_iv = std::max(worst_iv, std::abs(df_along(spec, pts[k], cf.xi[s])));
            }
        }
    }
    const bool pass = worst_i < 1e-8 && worst_ii < 1e-5 && worst_iii < 1e-8 && worst_iv < 1e-5;
    report(4, "qc-Einstein identity battery", pass,
           "(i) " + fmt("%.1e", worst_i) + "  (ii) " + fmt("%.1e", worst_ii) + "  (iii) " +
               fmt("%.1e", worst_iii) + "  (iv) " + fmt("%.1e", worst_iv));
}

// 5. Heisenberg closed forms: calibrating factor, II, kernel slot
void criterion_5() {
    const SurfaceSpec heis = load_surface("heisenberg_n1.qcs");
    const std::vector<QVector> pts = sample_points(heis, 50, 71);
    const double c_expect = std::pow(2.0, -1.0 / 3.0);
    double worst_f = 0.0, worst_ii = 0.0;
    std::vector<RealMatrix> deltas;
    for (const QVector& p : pts) {
        const CalibratedFrame cf = calibrate(hat_structure(heis, p));
        const double ref = std::sqrt(1.0 + 4.0 * p.slot(0).norm_sq());
        worst_f = std::max(worst_f, std::abs(cf.f / ref - c_expect) / c_expect);
        // II(X,Y) = -2 <X_H, Y_H> / sqrt(1+4|q|^2) with X_H the projection
        // that kills the p slot
        for (std::size_t i = 0; i < cf.base.h_basis.size(); ++i)
            for (std::size_t j = 0; j < cf.base.h_basis.size(); ++j) {
                double qpart = 0.0;
                for (int mcomp = 0; mcomp < 4; ++mcomp)
                    qpart += cf.base.h_basis[i][mcomp] * cf.base.h_basis[j][mcomp];
                worst_ii =
                    std::max(worst_ii, std::abs(cf.base.II_H(i, j) + 2.0 * qpart / ref));
            }
        deltas.push_back(assemble_delta(cf));
    }
    const DeltaForm df = delta_constancy(deltas);
    const Inertia in = signature(df);
    // kernel must be exactly the p-slot quadruple
    const SymEigen eig = sym_eigen(df.matrix);
    double kernel_leak = 0.0;
    double scale = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (std::abs(eig.values[k]) >= 1e-8 * scale) continue;
        for (int i = 0; i < 4; ++i) kernel_leak = std::max(kernel_leak, std::abs(eig.vectors(i, k)));
    }
    const bool pass = worst_f < 1e-8 && worst_ii < 1e-8 && in.zero == 1 && kernel_leak < 1e-8;
    report(5, "Heisenberg closed forms", pass,
           "f-ratio " + fmt("%.1e", worst_f) + ", II " + fmt("%.1e", worst_ii) +
               ", kernel quadruples " + std::to_string(in.zero) + ", q-slot leak " +
               fmt("%.1e", kernel_leak));
}

// 6. frozen constants of the three models
void criterion_6() {
    bool pass = true;
    double worst = 0.0;
    auto check = [&](double got, double want) {
        const double dev = std::abs(got - want);
        worst = std::max(worst, dev);
        if (dev >= 1e-8) pass = false;
    };

    QVector p(2);
    p[4] = 1.0;
    const CalibratedFrame cs = calibrate(hat_structure(load_surface("sphere_n1.qcs"), p));
    check(cs.f, 1.0);
    check(cs.S, 2.0);
    const RealMatrix ds = assemble_delta(cs);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) check(ds(i, j), i == j ? 1.0 : 0.0);

    const CalibratedFrame ch = calibrate(hat_structure(load_surface("hyperboloid_n1.qcs"), p));
    check(ch.f, 1.0);
    check(ch.S, -2.0);
    const RealMatrix dh = assemble_delta(ch);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) check(dh(i, j), i == j ? (i < 4 ? 1.0 : -1.0) : 0.0);

    const CalibratedFrame cg =
        calibrate(hat_structure(load_surface("heisenberg_n1.qcs"), QVector(2)));
    check(cg.f, std::pow(2.0, -1.0 / 3.0));
    check(cg.S, 0.0);

    report(6, "derived model constants", pass, "worst deviation " + fmt("%.2e", worst));
}

// 7. parallelism of the form over 32 points, eigenvalue quadruple structure
void criterion_7() {
    std::mt19937_64 rng(7451);
    double worst = 0.0;
    bool pass = true;
    std::vector<SurfaceSpec> surfaces;
    for (const auto& models : {kModelsN1, kModelsN2})
        for (const Model& m : models) surfaces.push_back(load_surface(m.file));
    for (int trial = 0; trial < 3; ++trial)
        surfaces.push_back(
            transform_surface(surfaces[trial], random_affine(2, rng)));
    for (const SurfaceSpec& s : surfaces) {
        try {
            const DeltaForm df = delta_constancy(s, sample_points(s, 32, 73));
            worst = std::max(worst, df.constancy_dev);
            signature(df);  // throws on a quadruple violation
        } catch (const GeomError&) {
            pass = false;
        }
    }
    report(7, "parallel form constancy", pass && worst < 1e-6,
           "9 surfaces, worst constancy_dev " + fmt("%.2e", worst));
}

// 8. degenerate-case potentials on Heisenberg and 10 affine images
void criterion_8() {
    std::mt19937_64 rng(26539);
    const SurfaceSpec heis = load_surface("heisenberg_n1.qcs");
    double worst_fl0 = 0.0, worst_fit = 0.0;
    bool pass = true;
    for (int trial = 0; trial <= 10; ++trial) {
        const SurfaceSpec s =
            trial == 0 ? heis : transform_surface(heis, random_affine(2, rng));
        try {
            const std::vector<QVector> pts = sample_points(s, 30, 79);
            const HeisenbergReport rep =
                heisenberg_invariants(s, pts, delta_constancy(s, pts));
            worst_fl0 = std::max(worst_fl0, rep.fl0_dev);
            worst_fit = std::max(worst_fit, rep.potential_fit_residual);
        } catch (const GeomError&) {
            pass = false;
        }
    }
    report(8, "degenerate-case potentials", pass && worst_fl0 < 1e-6 && worst_fit < 1e-6,
           "f l0 spread " + fmt("%.2e", worst_fl0) + ", potential fit " +
               fmt("%.2e", worst_fit));
}

// 9. the skewed ellipsoid is rejected everywhere, exit code 2
void criterion_9() {
    const SurfaceSpec skew = load_surface("skewed_ellipsoid_n1.qcs");
    double min_sp1 = 1e300;
    for (const QVector& p : sample_points(skew, 20, 83))
        min_sp1 = std::min(min_sp1, check_qc(eval_jet2(skew, p)).sp1_residual);
    const auto cli = run_cli("classify -s " + surface_path("skewed_ellipsoid_n1.qcs"));
    report(9, "negative control rejection", min_sp1 > 1e-2 && cli.exit_code == 2,
           "min sp1_residual " + fmt("%.2e", min_sp1) + ", classify exit code " +
               std::to_string(cli.exit_code));
}

// 10. Reeb normalization and the contraction identity
void criterion_10() {
    double worst_bi1 = 0.0, worst_contr = 0.0;
    for (const Model& m : kModelsN1) {
        const SurfaceSpec spec = load_surface(m.file);
        const std::vector<QVector> pts = sample_points(spec, 20, 89);
        for (const QVector& p : pts) {
            const CalibratedFrame cf = calibrate(hat_structure(spec, p));
            for (int s = 1; s <= 3; ++s)
                for (int t = 1; t <= 3; ++t)
                    worst_bi1 = std::max(
                        worst_bi1, std::abs(cf.f * flat_inner(cf.base.JN[t - 1],
                                                              cf.xi[s - 1]) -
                                            (s == t ? 1.0 : 0.0)));
        }
        for (std::size_t k = 0; k < 3; ++k) {
            const CalibratedFrame cf = calibrate(hat_structure(spec, pts[k]));
            for (int s = 1; s <= 3; ++s)
                for (std::size_t i = 0; i < 2; ++i)
                    worst_contr = std::max(
                        worst_contr, std::abs(deta_fd(spec, pts[k], s, cf.xi[s - 1],
                                                      cf.base.h_basis[i], 1e-3, true)));
        }
    }
    report(10, "Reeb normalization", worst_bi1 < 1e-10 && worst_contr < 1e-4,
           "eta_t(xi_s) deviation " + fmt("%.2e", worst_bi1) + ", contraction " +
               fmt("%.2e", worst_contr));
}

// 11. conformal pair recovery round trips
void criterion_11() {
    std::mt19937_64 rng(30203);
    const SurfaceSpec sph = load_surface("sphere_n1.qcs");
    const HatFrame fr = hat_structure(sph, sample_points(sph, 1, 97).front());
    const HorizontalStructure base = horizontal_structure(fr);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double factor = uniform_real(rng, 0.1, 10.0);
        const Quaternion q = random_unit_quaternion(rng);
        RealMatrix rot(3, 3);
        rot(0, 0) = 1 - 2 * (q.y * q.y + q.z * q.z);
        rot(0, 1) = 2 * (q.x * q.y - q.t * q.z);
        rot(0, 2) = 2 * (q.x * q.z + q.t * q.y);
        rot(1, 0) = 2 * (q.x * q.y + q.t * q.z);
        rot(1, 1) = 1 - 2 * (q.x * q.x + q.z * q.z);
        rot(1, 2) = 2 * (q.y * q.z - q.t * q.x);
        rot(2, 0) = 2 * (q.x * q.z - q.t * q.y);
        rot(2, 1) = 2 * (q.y * q.z + q.t * q.x);
        rot(2, 2) = 1 - 2 * (q.x * q.x + q.y * q.y);
        HorizontalStructure moved = base;
        moved.metric = base.metric * factor;
        for (int s = 0; s < 3; ++s) {
            RealMatrix acc(base.metric.rows(), base.metric.rows());
            for (int t = 0; t < 3; ++t) acc += base.cplx[t] * rot(t, s);
            moved.cplx[s] = acc;
        }
        const ConformalPair rec = recover_conformal_pair(base, moved);
        worst = std::max(worst, std::abs(rec.factor - factor) / factor);
        worst = std::max(worst, (rec.rotation - rot).max_abs());
    }
    report(11, "conformal pair recovery", worst < 1e-8,
           "50 round trips, worst deviation " + fmt("%.2e", worst));
}

}  // namespace

int main() {
    std::printf("acceptance suite: qc-hypersurface classification engine\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures == 0)
        std::printf("all 11 acceptance criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
