#include "qcgeom/classify.hpp"

#include <algorithm>
#include <cmath>

namespace qcgeom {

namespace {

QVector apply_real(const RealMatrix& m, const QVector& v) {
    return QVector(m.apply(v.coords()));
}

QuatMatrix scale_entries(QuatMatrix m, double s) {
    for (std::size_t a = 0; a < m.dim(); ++a)
        for (std::size_t b = 0; b < m.dim(); ++b) m(a, b) *= s;
    return m;
}

struct EigenSplit {
    SymEigen eig;
    std::vector<QVector> kernel;    // |lambda| below threshold
    std::vector<QVector> positive;  // as QVectors (columns)
    std::vector<QVector> negative;
    double scale = 0.0;
};

EigenSplit split_eigen(const RealMatrix& delta, double eps_rank) {
    EigenSplit out;
    out.eig = sym_eigen(delta);
    const std::size_t dim = delta.rows();
    const std::size_t qd = dim / 4;
    for (double v : out.eig.values) out.scale = std::max(out.scale, std::abs(v));
    for (std::size_t k = 0; k < dim; ++k) {
        QVector col(qd);
        for (std::size_t r = 0; r < dim; ++r) col[r] = out.eig.vectors(r, k);
        const double lam = out.eig.values[k];
        if (std::abs(lam) < eps_rank * (out.scale > 0 ? out.scale : 1.0))
            out.kernel.push_back(col);
        else if (lam > 0)
            out.positive.push_back(col);
        else
            out.negative.push_back(col);
    }
    return out;
}

// Greedy quaternionic Gram-Schmidt with respect to the (quaternion-valued)
// form B(u, v) = <<u, Delta v>>, over the given seed vectors. Accepts columns
// until `want` of them are found; sign_required picks the definite branch.
std::vector<QVector> quat_gs_basis(const RealMatrix& delta, const std::vector<QVector>& seeds,
                                   std::size_t want, int sign_required) {
    std::vector<QVector> cols;
    for (const QVector& seed : seeds) {
        if (cols.size() == want) break;
        QVector u = seed;
        for (int pass = 0; pass < 2; ++pass)
            for (const QVector& w : cols) {
                const Quaternion coef = qherm_dot(w, apply_real(delta, u));
                // columns are normalized to B(w,w) = +-1
                const double sgn = static_cast<double>(sign_required);
                u -= right_mul(w, coef * sgn);
            }
        const double d = qherm_dot(u, apply_real(delta, u)).t;
        if (std::abs(d) < 1e-12 * (1.0 + u.norm_sq())) continue;
        if ((d > 0 ? 1 : -1) != sign_required) continue;
        u *= 1.0 / std::sqrt(std::abs(d));
        cols.push_back(u);
    }
    if (cols.size() != want)
        throw LinearSolveFailure("normalize_affine: could not build a congruence basis");
    return cols;
}

QuatMatrix columns_to_matrix(const std::vector<QVector>& cols) {
    const std::size_t n = cols.front().quat_dim();
    QuatMatrix w(n);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t a = 0; a < n; ++a) w(a, c) = cols[c].slot(a);
    return w;
}

}  // namespace

std::string to_string(QuadricClass c) {
    switch (c) {
        case QuadricClass::Parabolic: return "Parabolic";
        case QuadricClass::Sphere: return "Sphere";
        case QuadricClass::Hyperboloid: return "Hyperboloid";
    }
    return {};
}

RealMatrix assemble_delta(const CalibratedFrame& cf) {
    const HatFrame& fr = cf.base;
    const std::size_t dim = fr.p.real_dim();
    const std::size_t qd = fr.quat_dim();
    const QVector xi_transversal = fr.N * (1.0 / cf.f) + cf.r;

    std::vector<QVector> proj(dim, QVector(qd));
    std::vector<double> lambda(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const QVector e = QVector::unit(qd, i);
        lambda[i] = cf.f * flat_inner(fr.N, e);
        proj[i] = e - xi_transversal * lambda[i];
        if (std::abs(flat_inner(proj[i], fr.N)) > 1e-10 * (1.0 + proj[i].norm()))
            throw ProjectionNotTangent("assemble_delta: projected basis vector not tangent");
    }

    RealMatrix delta(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            const double v = -cf.f * fr.ii(proj[i], proj[j]) + 0.5 * cf.S * lambda[i] * lambda[j];
            delta(i, j) = delta(j, i) = v;
        }
    return delta;
}

DeltaForm delta_constancy(const std::vector<RealMatrix>& deltas, double tol) {
    if (deltas.size() < 2) throw InputError("delta_constancy: need at least 2 points");
    const std::size_t dim = deltas.front().rows();
    RealMatrix mean(dim, dim);
    for (const RealMatrix& d : deltas) mean += d;
    mean *= 1.0 / static_cast<double>(deltas.size());

    const double scale = mean.max_abs();
    double dev = 0.0;
    for (const RealMatrix& d : deltas) dev = std::max(dev, (d - mean).max_abs());
    DeltaForm out;
    out.matrix = mean;
    out.constancy_dev = dev / (scale > 0 ? scale : 1.0);

    const std::size_t qd = dim / 4;
    double jres = 0.0;
    for (int s = 1; s <= 3; ++s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const QVector e = QVector::unit(qd, i);
            const QVector d1 = apply_real(mean, apply_J(s, e));
            const QVector d2 = apply_J(s, apply_real(mean, e));
            acc += (d1 - d2).norm_sq();
        }
        jres = std::max(jres, std::sqrt(acc));
    }
    out.j_residual = jres / std::max(mean.frobenius_norm(), 1e-300);

    if (out.constancy_dev >= tol)
        throw NotParallel("delta_constancy: form varies across points (dev " +
                          std::to_string(out.constancy_dev) + ")");
    return out;
}

DeltaForm delta_constancy(const SurfaceSpec& spec, const std::vector<QVector>& points,
                          double tol, double sp1_tol) {
    std::vector<RealMatrix> deltas;
    deltas.reserve(points.size());
    for (const QVector& p : points)
        deltas.push_back(assemble_delta(calibrate(hat_structure(spec, p, sp1_tol))));
    return delta_constancy(deltas, tol);
}

Inertia signature(const DeltaForm& delta, double eps_rank) {
    const SymEigen eig = sym_eigen(delta.matrix);
    const std::size_t dim = eig.values.size();
    double scale = 0.0;
    for (double v : eig.values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return {0, 0, dim / 4};

    std::size_t pos = 0, neg = 0, zero = 0;
    for (double v : eig.values) {
        if (std::abs(v) < eps_rank * scale)
            ++zero;
        else if (v > 0)
            ++pos;
        else
            ++neg;
    }
    if (pos % 4 || neg % 4 || zero % 4)
        throw QuadrupleViolation("signature: eigenvalue sign counts not divisible by 4");

    // clustered multiplicities must also come in quadruples
    std::size_t cluster = 1;
    for (std::size_t i = 1; i <= dim; ++i) {
        if (i < dim && eig.values[i] - eig.values[i - 1] <= 1e-8 * scale) {
            ++cluster;
            continue;
        }
        if (cluster % 4)
            throw QuadrupleViolation("signature: eigenvalue cluster of size " +
                                     std::to_string(cluster));
        cluster = 1;
    }
    return {pos / 4, neg / 4, zero / 4};
}

QuadricFit fit_quadric(const RealMatrix& delta, const std::vector<QVector>& points) {
    const std::size_t dim = delta.rows();
    if (points.size() < dim + 2)
        throw InputError("fit_quadric: need at least 4(n+1)+2 sample points");
    RealMatrix design(points.size(), dim + 1);
    std::vector<double> rhs(points.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
        const QVector& x = points[r];
        for (std::size_t cidx = 0; cidx < dim; ++cidx) design(r, cidx) = x[cidx];
        design(r, dim) = 1.0;
        rhs[r] = -dot(x.coords(), delta.apply(x.coords()));
    }
    std::vector<double> sol;
    try {
        sol = solve_least_squares(design, rhs);
    } catch (const RankDeficientFit&) {
        throw RankDeficientFit("fit_quadric: sample points do not determine the quadric");
    }

    QuadricFit fit;
    fit.b.assign(sol.begin(), sol.begin() + dim);
    fit.c = sol[dim];
    for (std::size_t r = 0; r < points.size(); ++r) {
        double e = -rhs[r] + fit.c;
        for (std::size_t cidx = 0; cidx < dim; ++cidx) e += fit.b[cidx] * points[r][cidx];
        fit.residual = std::max(fit.residual, std::abs(e));
    }
    return fit;
}

double model_equation(QuadricClass label, const QVector& z) {
    const std::size_t d = z.quat_dim();
    double qsum = 0.0;
    for (std::size_t a = 0; a + 1 < d; ++a) qsum += z.slot(a).norm_sq();
    const Quaternion p = z.slot(d - 1);
    switch (label) {
        case QuadricClass::Parabolic: return qsum + p.t;
        case QuadricClass::Sphere: return qsum + p.norm_sq() - 1.0;
        case QuadricClass::Hyperboloid: return qsum - p.norm_sq() + 1.0;
    }
    return 0.0;
}

AffineMap normalize_affine(const DeltaForm& delta, const std::vector<double>& b, double c,
                           const Inertia& inertia, double eps_rank) {
    const RealMatrix& d = delta.matrix;
    const std::size_t dim = d.rows();
    const std::size_t qd = dim / 4;
    const std::size_t n = qd - 1;
    const EigenSplit es = split_eigen(d, eps_rank);
    const QVector bv{b};

    QuadricClass label;
    if (inertia.pos == qd && inertia.neg == 0 && inertia.zero == 0)
        label = QuadricClass::Sphere;
    else if (inertia.pos == n && inertia.neg == 1 && inertia.zero == 0)
        label = QuadricClass::Hyperboloid;
    else if (inertia.pos == n && inertia.neg == 0 && inertia.zero == 1)
        label = QuadricClass::Parabolic;
    else
        throw InconsistentClassification("normalize_affine: inertia matches no model quadric");

    if (label == QuadricClass::Parabolic) {
        QVector b_im(qd), b_ker(qd);
        for (std::size_t k = 0; k < dim; ++k) {
            QVector col(qd);
            for (std::size_t r = 0; r < dim; ++r) col[r] = es.eig.vectors(r, k);
            const double comp = flat_inner(bv, col);
            if (std::abs(es.eig.values[k]) < eps_rank * es.scale)
                b_ker += col * comp;
            else
                b_im += col * comp;
        }
        const double bk_norm = b_ker.norm();
        if (bk_norm < 1e-8 * (1.0 + bv.norm()))
            throw DegenerateLinearPart(
                "normalize_affine: linear part vanishes on the kernel line");
        const QVector v0 = b_ker * (1.0 / bk_norm);

        // pseudo-inverse solve Delta O_im = -b_im / 2 on the image
        QVector o_im(qd);
        for (std::size_t k = 0; k < dim; ++k) {
            const double lam = es.eig.values[k];
            if (std::abs(lam) < eps_rank * es.scale) continue;
            QVector col(qd);
            for (std::size_t r = 0; r < dim; ++r) col[r] = es.eig.vectors(r, k);
            o_im += col * (flat_inner(b_im * -0.5, col) / lam);
        }
        const double cprime = c - flat_inner(o_im, apply_real(d, o_im));
        const QVector origin = o_im - v0 * (cprime / bk_norm);

        std::vector<QVector> cols = quat_gs_basis(d, es.positive, n, +1);
        cols.push_back(v0 * (1.0 / bk_norm));
        const QuatMatrix w_inv = columns_to_matrix(cols).inverse();

        AffineMap f;
        f.a = w_inv;
        f.q0 = -w_inv.apply(origin);
        return f;
    }

    // nondegenerate cases: O = -Delta^-1 b / 2, rho0 = <Delta O, O> - c
    QVector origin(qd);
    for (std::size_t k = 0; k < dim; ++k) {
        QVector col(qd);
        for (std::size_t r = 0; r < dim; ++r) col[r] = es.eig.vectors(r, k);
        origin += col * (flat_inner(bv * -0.5, col) / es.eig.values[k]);
    }
    const double rho0 = flat_inner(origin, apply_real(d, origin)) - c;
    const double rho_scale = 1.0 + std::abs(c) + es.scale * origin.norm_sq();

    if (label == QuadricClass::Sphere) {
        if (!(rho0 > 1e-10 * rho_scale))
            throw InconsistentClassification(
                "normalize_affine: positive definite form with non-positive level");
        std::vector<QVector> seeds;
        for (std::size_t a = 0; a < qd; ++a) seeds.push_back(QVector::unit(qd, 4 * a));
        const QuatMatrix w_inv = columns_to_matrix(quat_gs_basis(d, seeds, qd, +1)).inverse();
        AffineMap f;
        f.a = scale_entries(w_inv, 1.0 / std::sqrt(rho0));
        f.q0 = -f.a.apply(origin);
        return f;
    }

    if (!(rho0 < -1e-10 * rho_scale))
        throw InconsistentClassification(
            "normalize_affine: signature (4n,4) form with non-negative level");
    std::vector<QVector> cols = quat_gs_basis(d, es.positive, n, +1);
    const std::vector<QVector> neg = quat_gs_basis(d, es.negative, 1, -1);
    cols.push_back(neg.front());
    const QuatMatrix w_inv = columns_to_matrix(cols).inverse();
    AffineMap f;
    f.a = scale_entries(w_inv, 1.0 / std::sqrt(-rho0));
    f.q0 = -f.a.apply(origin);
    return f;
}

Classification classify(const SurfaceSpec& spec, const ClassifyOptions& opts) {
    const std::vector<QVector> points = sample_points(spec, opts.samples, opts.rng_seed);

    Classification out;
    std::vector<RealMatrix> deltas;
    deltas.reserve(points.size());
    double s_sum = 0.0;
    for (const QVector& p : points) {
        const HatFrame fr = hat_structure(spec, p, opts.tol_sp1);
        const CalibratedFrame cf = calibrate(fr);
        deltas.push_back(assemble_delta(cf));
        out.sp1_max = std::max(out.sp1_max, fr.diag.sp1_residual);
        out.mu_dev_max = std::max(out.mu_dev_max, cf.mu_s_dev);
        out.s_spread = std::max(out.s_spread, cf.S_spread);
        s_sum += cf.S;
    }
    out.points_used = points.size();
    out.s_mean = s_sum / static_cast<double>(points.size());

    out.delta = delta_constancy(deltas, opts.tol_const);
    out.inertia = signature(out.delta, opts.eps_rank);

    const std::size_t n = spec.n();
    if (out.inertia.pos == n + 1 && out.inertia.neg == 0 && out.inertia.zero == 0)
        out.label = QuadricClass::Sphere;
    else if (out.inertia.pos == n && out.inertia.neg == 1 && out.inertia.zero == 0)
        out.label = QuadricClass::Hyperboloid;
    else if (out.inertia.pos == n && out.inertia.neg == 0 && out.inertia.zero == 1)
        out.label = QuadricClass::Parabolic;
    else
        throw InconsistentClassification("classify: inertia (" + std::to_string(out.inertia.pos) +
                                         "," + std::to_string(out.inertia.neg) + "," +
                                         std::to_string(out.inertia.zero) +
                                         ") matches no model quadric");

    const QuadricFit fit = fit_quadric(out.delta.matrix, points);
    double max_x2 = 0.0;
    for (const QVector& p : points) max_x2 = std::max(max_x2, p.norm_sq());
    if (fit.residual >= 1e-6 * (1.0 + out.delta.matrix.frobenius_norm() * max_x2))
        throw InconsistentClassification("classify: quadric fit residual too large (" +
                                         std::to_string(fit.residual) + ")");
    out.fit_b = fit.b;
    out.fit_c = fit.c;
    out.fit_residual = fit.residual;

    out.normalizer = normalize_affine(out.delta, fit.b, fit.c, out.inertia, opts.eps_rank);
    for (const QVector& p : points)
        out.residual = std::max(
            out.residual, std::abs(model_equation(out.label, affine_apply(out.normalizer, p))));
    return out;
}

HeisenbergReport heisenberg_invariants(const SurfaceSpec& spec,
                                       const std::vector<QVector>& points,
                                       const DeltaForm& delta, double eps_rank) {
    const Inertia in = signature(delta, eps_rank);
    const std::size_t n = spec.n();
    if (!(in.pos == n && in.neg == 0 && in.zero == 1))
        throw NotDegenerate("heisenberg_invariants: form is not degenerate of rank 4n");

    const RealMatrix& d = delta.matrix;
    const std::size_t dim = d.rows();
    const std::size_t qd = dim / 4;
    const EigenSplit es = split_eigen(d, eps_rank);

    const QuadricFit fit = fit_quadric(d, points);
    const QVector bv{fit.b};
    QVector b_ker(qd);
    for (const QVector& k : es.kernel) b_ker += k * flat_inner(bv, k);
    const double bk_norm = b_ker.norm();
    if (bk_norm < 1e-8 * (1.0 + bv.norm()))
        throw DegenerateLinearPart("heisenberg_invariants: no linear part on the kernel");
    const QVector v0 = b_ker * (1.0 / bk_norm);

    // pseudo-inverse via the eigendecomposition, zeroing the kernel quadruple
    RealMatrix dprime(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double lam = es.eig.values[k];
        if (std::abs(lam) < eps_rank * es.scale) continue;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                dprime(i, j) += es.eig.vectors(i, k) * es.eig.vectors(j, k) / lam;
    }

    std::vector<double> fl0;
    RealMatrix design(points.size(), 5);
    std::vector<double> rhs(points.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
        const QVector& x = points[r];
        const CalibratedFrame cf = calibrate(hat_structure(spec, x));
        const QVector& nrm = cf.base.N;
        fl0.push_back(cf.f * flat_inner(v0, nrm));
        const double h = flat_inner(apply_real(dprime, nrm), nrm);
        design(r, 0) = 1.0;
        design(r, 1) = flat_inner(v0, x);
        for (int s = 1; s <= 3; ++s) design(r, 1 + s) = flat_inner(apply_J(s, v0), x);
        rhs[r] = cf.f * cf.f * h;
    }

    HeisenbergReport rep;
    double lo = fl0.front(), hi = fl0.front(), mean = 0.0;
    for (double v : fl0) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
    }
    mean /= static_cast<double>(fl0.size());
    rep.c0 = mean;
    rep.fl0_dev = (hi - lo) / std::max(std::abs(mean), 1e-300);

    const std::vector<double> coef = solve_least_squares(design, rhs);
    double scale = 1.0;
    for (double v : rhs) scale = std::max(scale, std::abs(v));
    for (std::size_t r = 0; r < points.size(); ++r) {
        double e = -rhs[r];
        for (int k = 0; k < 5; ++k) e += design(r, k) * coef[k];
        rep.potential_fit_residual = std::max(rep.potential_fit_residual, std::abs(e) / scale);
    }
    return rep;
}

}  // namespace qcgeom
