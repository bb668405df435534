#include "qcgeom/frame.hpp"

#include <algorithm>
#include <cmath>

namespace qcgeom {

namespace {

double hess_form(const Jet2& jet, const QVector& a, const QVector& b) {
    const RealMatrix& h = jet.hess();
    const std::size_t d = a.real_dim();
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) row += h(i, j) * b[j];
        s += a[i] * row;
    }
    return s;
}

// Orthonormal basis of the complement of span{N0, J_s N0} inside R^{4d},
// seeded with coordinate directions in fixed index order.
std::vector<QVector> build_h_basis(const QVector& n0) {
    const std::size_t d = n0.real_dim();
    std::vector<QVector> fixed = {n0, apply_J(1, n0), apply_J(2, n0), apply_J(3, n0)};
    for (QVector& v : fixed) v *= 1.0 / v.norm();

    std::vector<QVector> basis;
    basis.reserve(d - 4);
    for (std::size_t i = 0; i < d && basis.size() < d - 4; ++i) {
        QVector v = QVector::unit(n0.quat_dim(), i);
        for (int pass = 0; pass < 2; ++pass) {
            for (const QVector& w : fixed) v -= w * flat_inner(v, w);
            for (const QVector& w : basis) v -= w * flat_inner(v, w);
        }
        const double nrm = v.norm();
        if (nrm < 1e-10) continue;
        basis.push_back(v * (1.0 / nrm));
    }
    if (basis.size() != d - 4)
        throw LinearSolveFailure("could not complete a horizontal basis");
    return basis;
}

RealMatrix ii_matrix(const Jet2& jet, const std::vector<QVector>& basis, double grad_norm,
                     int orientation) {
    const std::size_t m = basis.size();
    RealMatrix ii(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double v = -orientation * hess_form(jet, basis[i], basis[j]) / grad_norm;
            ii(i, j) = ii(j, i) = v;
        }
    return ii;
}

struct IIAnalysis {
    QVector n0;
    std::vector<QVector> h_basis;
    QCDiagnostics diag;
    int orientation = 1;
};

IIAnalysis analyze(const Jet2& jet) {
    const std::size_t dim = jet.dim() / 4;
    QVector grad{jet.grad()};
    const double gn = grad.norm();
    if (gn <= 1e-12) throw VanishingGradient("unit_normal: |grad rho| below 1e-12");

    IIAnalysis out;
    out.n0 = grad * (1.0 / gn);
    out.h_basis = build_h_basis(out.n0);

    const RealMatrix ii0 = ii_matrix(jet, out.h_basis, gn, +1);
    const SymEigen eig = sym_eigen(ii0);
    const double lo = eig.values.front(), hi = eig.values.back();
    const double scale = std::max(std::abs(lo), std::abs(hi));

    if (hi < 0.0) {
        out.diag.definiteness = Definiteness::NegativeDefinite;
        out.orientation = 1;
    } else if (lo > 0.0) {
        out.diag.definiteness = Definiteness::PositiveDefinite;
        out.orientation = -1;  // flip so II ends up negative definite
    } else {
        out.diag.definiteness = Definiteness::Indefinite;
        out.orientation = 1;
    }
    out.diag.min_abs_ii_eigen = std::min(std::abs(lo), std::abs(hi));
    for (double v : eig.values) out.diag.min_abs_ii_eigen = std::min(out.diag.min_abs_ii_eigen, std::abs(v));

    double resid = 0.0;
    const std::size_t m = out.h_basis.size();
    for (int s = 1; s <= 3; ++s) {
        std::vector<QVector> jb(m, QVector(dim));
        for (std::size_t i = 0; i < m; ++i) jb[i] = apply_J(s, out.h_basis[i]);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                const double a = -hess_form(jet, jb[i], jb[j]) / gn;
                resid = std::max(resid, std::abs(a - ii0(i, j)));
            }
    }
    out.diag.sp1_residual = scale > 0 ? resid / scale : resid;
    return out;
}

}  // namespace

double HatFrame::ii(const QVector& a, const QVector& b) const {
    return second_fundamental(jet, N, a, b);
}

std::vector<double> HatFrame::h_coords(const QVector& x) const {
    std::vector<double> c(h_basis.size());
    for (std::size_t i = 0; i < h_basis.size(); ++i) c[i] = flat_inner(x, h_basis[i]);
    return c;
}

QVector HatFrame::from_h_coords(const std::vector<double>& c) const {
    QVector v(quat_dim());
    for (std::size_t i = 0; i < h_basis.size(); ++i) v += h_basis[i] * c[i];
    return v;
}

std::vector<QVector> HatFrame::tangent_basis() const {
    std::vector<QVector> t = h_basis;
    for (int s = 0; s < 3; ++s) t.push_back(JN[s]);
    return t;
}

RealMatrix HatFrame::ii_tangent() const {
    const std::vector<QVector> tb = tangent_basis();
    RealMatrix m(tb.size(), tb.size());
    for (std::size_t i = 0; i < tb.size(); ++i)
        for (std::size_t j = i; j < tb.size(); ++j) m(i, j) = m(j, i) = ii(tb[i], tb[j]);
    return m;
}

QVector unit_normal(const Jet2& jet) {
    const IIAnalysis a = analyze(jet);
    return a.n0 * static_cast<double>(a.orientation);
}

double second_fundamental(const Jet2& jet, const QVector& n, const QVector& a,
                          const QVector& b) {
    const QVector grad{jet.grad()};
    const double gn = grad.norm();
    if (gn <= 1e-12) throw VanishingGradient("second_fundamental: |grad rho| below 1e-12");
    if (std::abs(flat_inner(a, n)) > 1e-10 * (1.0 + a.norm()) ||
        std::abs(flat_inner(b, n)) > 1e-10 * (1.0 + b.norm()))
        throw NotTangent("second_fundamental: arguments must be tangent");
    const double sign = flat_inner(n, grad) >= 0 ? 1.0 : -1.0;
    return -sign * hess_form(jet, a, b) / gn;
}

QCDiagnostics check_qc(const Jet2& jet, double) {
    return analyze(jet).diag;
}

HatFrame hat_structure(const SurfaceSpec& spec, const QVector& p, double sp1_tol) {
    HatFrame f;
    f.p = p;
    f.jet = eval_jet2(spec, p);
    const QVector grad{f.jet.grad()};
    f.grad_norm = grad.norm();
    if (std::abs(f.jet.value()) > 1e-10 * (1.0 + f.grad_norm * p.norm()))
        throw GeomError("hat_structure: point is not on the surface");

    const IIAnalysis a = analyze(f.jet);
    f.diag = a.diag;
    if (!f.diag.passes(sp1_tol))
        throw NotQCHypersurface(
            "hat_structure: II on H is not a definite Sp(1)-invariant form (sp1_residual " +
                std::to_string(f.diag.sp1_residual) + ")",
            f.diag);

    f.orientation = a.orientation;
    f.N = a.n0 * static_cast<double>(a.orientation);
    for (int s = 1; s <= 3; ++s) f.JN[s - 1] = apply_J(s, f.N);
    f.h_basis = a.h_basis;
    f.II_H = ii_matrix(f.jet, f.h_basis, f.grad_norm, f.orientation);
    f.ghat = f.II_H * -1.0;

    const std::size_t m = f.h_basis.size();
    RealMatrix sys = f.ghat * 2.0;
    for (int s = 0; s < 3; ++s) {
        std::vector<double> b(m);
        for (std::size_t i = 0; i < m; ++i) b[i] = f.ii(f.JN[s], f.h_basis[i]);
        f.alpha_hat[s] = b;
        // 2 II(rhat, X) = -II(J_s N, X)  <=>  2 ghat(rhat, X) = alpha_s(X)
        f.rhat[s] = f.from_h_coords(solve_spd(sys, b));
    }
    return f;
}

HorizontalStructure horizontal_structure(const HatFrame& frame) {
    HorizontalStructure h;
    h.p = frame.p;
    h.h_basis = frame.h_basis;
    h.metric = frame.ghat;
    const std::size_t m = frame.h_basis.size();
    for (int s = 1; s <= 3; ++s) {
        RealMatrix is(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            const QVector ji = apply_J(s, frame.h_basis[i]);
            for (std::size_t j = 0; j < m; ++j) is(j, i) = flat_inner(ji, frame.h_basis[j]);
        }
        h.cplx[s - 1] = is;
    }
    return h;
}

ConformalPair recover_conformal_pair(const HorizontalStructure& a,
                                     const HorizontalStructure& b, double tol) {
    const std::size_t m = a.h_basis.size();
    if (b.h_basis.size() != m || (a.p - b.p).norm() > 1e-10 * (1.0 + a.p.norm()))
        throw NotSameHorizontal("recover_conformal_pair: structures at different points");

    // change of basis: columns of c express b's basis in a's basis
    RealMatrix c(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        QVector resid = b.h_basis[k];
        for (std::size_t i = 0; i < m; ++i) {
            const double coef = flat_inner(b.h_basis[k], a.h_basis[i]);
            c(i, k) = coef;
            resid -= a.h_basis[i] * coef;
        }
        if (resid.norm() > 1e-10 * (1.0 + b.h_basis[k].norm()))
            throw NotSameHorizontal("recover_conformal_pair: horizontal spans disagree");
    }

    const RealMatrix g2 = c * b.metric * c.transposed();
    std::array<RealMatrix, 3> i2;
    for (int s = 0; s < 3; ++s) i2[s] = c * b.cplx[s] * c.transposed();

    // factor from the trace ratio of the metrics
    const std::vector<double> diag_sol = [&] {
        // tr(g1^-1 g2) via solves against basis vectors
        std::vector<double> t(m);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<double> col(m);
            for (std::size_t i = 0; i < m; ++i) col[i] = g2(i, j);
            t[j] = solve_spd(a.metric, col)[j];
        }
        return t;
    }();
    double factor = 0.0;
    for (double t : diag_sol) factor += t;
    factor /= static_cast<double>(m);

    ConformalPair out;
    out.factor = factor;
    out.rotation = RealMatrix(3, 3);
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) {
            double tr = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) tr += i2[s](i, j) * a.cplx[t](i, j);
            out.rotation(t, s) = tr / static_cast<double>(m);
        }

    double resid = 0.0;
    {
        const RealMatrix dg = g2 - a.metric * factor;
        resid = std::max(resid, dg.max_abs() / std::max(1e-300, a.metric.max_abs()));
        for (int s = 0; s < 3; ++s) {
            RealMatrix rec(m, m);
            for (int t = 0; t < 3; ++t) rec += a.cplx[t] * out.rotation(t, s);
            resid = std::max(resid, (i2[s] - rec).max_abs());
        }
        RealMatrix rtr = out.rotation.transposed() * out.rotation;
        resid = std::max(resid, (rtr - RealMatrix::identity(3)).max_abs());
    }
    out.residual = resid;
    if (!(factor > 0.0) || resid > tol)
        throw NotConformallyRelated(
            "recover_conformal_pair: structures are not conformally related (residual " +
            std::to_string(resid) + ")");
    return out;
}

ConformalPair recover_conformal_pair(const HatFrame& a, const HatFrame& b, double tol) {
    return recover_conformal_pair(horizontal_structure(a), horizontal_structure(b), tol);
}

}  // namespace qcgeom
