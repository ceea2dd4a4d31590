#include "slicereg/singular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rootfind.hpp"

namespace slicereg {

namespace {

Eigen::Vector3d imag_vec(const Quaternion& q) { return {q.x, q.y, q.z}; }

struct DerivativeScales {
    double d = 1.0, s = 1.0;
};

DerivativeScales derivative_scales(const SliceFunction& f, std::uint64_t seed) {
    DerivativeScales sc;
    const StemPtr d = f.stem()->derivative();
    for (Complex z : f.domain().sample_d_plus(40, seed)) {
        const StemValue dv = d->eval(z);
        sc.d = std::max({sc.d, dv.f1.norm(), dv.f2.norm()});
        sc.s = std::max(sc.s, f.stem()->f2_hat(z).norm());
    }
    return sc;
}

}  // namespace

bool in_singular_set(const SliceFunction& f, const Quaternion& y, double tol) {
    const DerivativeScales sc = derivative_scales(f, 42);
    const SliceCoordinates sl = decompose(y);
    const Quaternion d = f.slice_derivative_at(y);
    if (sl.is_real) return d.norm() < tol * sc.d;
    const Quaternion s = f.spherical_derivative_at(y);
    return std::fabs(dot(d, s)) < tol * sc.d * sc.s &&
           std::fabs(dot(d, sl.J.value() * s)) < tol * sc.d * sc.s;
}

SphereSection sphere_section(const SliceFunction& f, double alpha, double beta, double tol) {
    if (beta <= 0.0) throw std::invalid_argument("sphere_section: beta must be positive");
    // f~ = (df/dx) conj(f'_s) is affine in the unit J on the sphere:
    // f~(alpha + J beta) = p + J q, recovered from the slices of +/- i.
    const Quaternion xp = Quaternion(alpha) + Quaternion::i() * beta;
    const Quaternion xm = Quaternion(alpha) - Quaternion::i() * beta;
    const Quaternion A = f.slice_derivative_at(xp) * f.spherical_derivative_at(xp).conj();
    const Quaternion B = f.slice_derivative_at(xm) * f.spherical_derivative_at(xm).conj();
    const Quaternion p = (A + B) * 0.5;
    const Quaternion q = -(Quaternion::i() * (A - B)) * 0.5;

    // Singular units solve <qv, J> = p0 and <pv, J> = -q0 on the unit sphere.
    SphereSection out;
    const double scale = std::max({1.0, p.norm(), q.norm()});
    const double t = tol * scale;
    const double geps = 1e-6;

    Eigen::Matrix<double, 2, 3> M;
    M.row(0) = imag_vec(q).transpose();
    M.row(1) = imag_vec(p).transpose();
    const Eigen::Vector2d rhs(p.w, -q.w);

    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(
        M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector2d sv = svd.singularValues();
    const int rank = (sv[0] > t) + (sv[1] > t);

    if (rank == 0) {
        out.kind = (rhs.norm() < t) ? SphereSectionKind::WholeSphere : SphereSectionKind::Empty;
        return out;
    }

    // Minimum-norm solution of the active constraints.
    Eigen::Vector3d j0 = Eigen::Vector3d::Zero();
    for (int n = 0; n < rank; ++n)
        j0 += svd.matrixV().col(n) * (svd.matrixU().col(n).dot(rhs) / sv[n]);
    if ((M * j0 - rhs).norm() > t) {
        out.kind = SphereSectionKind::Empty;
        return out;
    }

    const double h = j0.norm();
    if (rank == 1) {
        // One plane: a circle, a tangency point, or empty.
        if (h < 1.0 - geps) {
            out.kind = SphereSectionKind::Circle;
            const Eigen::Vector3d axis = svd.matrixV().col(0);
            out.circle_axis = Quaternion{0.0, axis[0], axis[1], axis[2]};
            out.circle_offset = axis.dot(j0);
        } else if (h <= 1.0 + geps) {
            out.kind = SphereSectionKind::OnePoint;
            const Eigen::Vector3d j = j0 / h;
            out.units = {Quaternion{0.0, j[0], j[1], j[2]}};
        } else {
            out.kind = SphereSectionKind::Empty;
        }
        return out;
    }

    // Two independent planes: a line meeting the sphere in 0, 1 or 2 units.
    const Eigen::Vector3d dir = svd.matrixV().col(2);
    if (h < 1.0 - geps) {
        const double s = std::sqrt(1.0 - h * h);
        const Eigen::Vector3d ja = j0 + s * dir, jb = j0 - s * dir;
        out.kind = SphereSectionKind::TwoPoints;
        out.units = {Quaternion{0.0, ja[0], ja[1], ja[2]}, Quaternion{0.0, jb[0], jb[1], jb[2]}};
    } else if (h <= 1.0 + geps) {
        out.kind = SphereSectionKind::OnePoint;
        const Eigen::Vector3d j = j0 / h;
        out.units = {Quaternion{0.0, j[0], j[1], j[2]}};
    } else {
        out.kind = SphereSectionKind::Empty;
    }
    return out;
}

namespace {

// The degenerate set is the zero set of the extended spherical derivative
// R(z) = F2(z)/beta; testing F2 itself would report spurious zeros near the
// real axis, where F2 always vanishes by oddness.
struct SphericalResidual {
    StemPtr stem, dstem;

    Quaternion value(Complex z) const { return stem->f2_hat(z); }

    // d/dalpha R = (F')_2 / beta and d/dbeta R = ((F')_1 - R) / beta.
    Eigen::Matrix<double, 4, 2> jacobian(Complex z) const {
        const double beta = z.imag();
        const StemValue dv = dstem->eval(z);
        const Quaternion ca = dv.f2 / beta;
        const Quaternion cb = (dv.f1 - value(z)) / beta;
        Eigen::Matrix<double, 4, 2> J;
        J << ca.w, cb.w, ca.x, cb.x, ca.y, cb.y, ca.z, cb.z;
        return J;
    }

    // Gradient-based local Lipschitz bound; both column quotients stay finite
    // as beta -> 0 because of the Cauchy-Riemann relations.
    double lipschitz(Complex z) const {
        const double beta = z.imag();
        const StemValue dv = dstem->eval(z);
        return (dv.f2.norm() + (dv.f1 - value(z)).norm()) / beta;
    }
};

std::vector<Complex> cell_centers(const SliceFunction& f, std::size_t n,
                                  const std::function<bool(Complex, double)>& keep) {
    const BoundingBox& bb = f.domain().bbox();
    const double b0 = std::max(bb.beta_min, 0.0);
    const double da = (bb.alpha_max - bb.alpha_min) / static_cast<double>(n);
    const double db = (bb.beta_max - b0) / static_cast<double>(n);
    const double diag = std::hypot(da, db);
    std::vector<Complex> out;
    for (std::size_t ia = 0; ia < n; ++ia)
        for (std::size_t ib = 0; ib < n; ++ib) {
            const Complex z(bb.alpha_min + (ia + 0.5) * da, b0 + (ib + 0.5) * db);
            if (z.imag() <= 0.0 || f.domain().interior_distance(z) <= 0.0) continue;
            if (keep(z, diag)) out.push_back(z);
        }
    return out;
}

std::vector<Complex> thin_cells(const SliceFunction& f, const SphericalResidual& res,
                                std::size_t n) {
    return cell_centers(f, n, [&](Complex z, double diag) {
        return res.value(z).norm() < diag * res.lipschitz(z);
    });
}

}  // namespace

DegenerateSet degenerate_set(const SliceFunction& f, std::size_t grid_n, std::uint64_t seed) {
    DegenerateSet out;
    const SphericalResidual res{f.stem(), f.stem()->derivative()};
    double fscale = 1.0;
    for (Complex z : f.domain().sample_d_plus(40, seed))
        fscale = std::max(fscale, res.value(z).norm());

    // Seeds: local minima of |R|^2 plus thin cells (the minima miss valley
    // lines, which have no isolated grid minimum along the valley direction).
    const auto obj = [&](Complex z) { return res.value(z).norm2(); };
    std::vector<Complex> seeds = detail::grid_local_minima(obj, f.domain(), grid_n);
    {
        std::vector<Complex> thin = thin_cells(f, res, 60);
        seeds.insert(seeds.end(), thin.begin(), thin.end());
    }

    std::vector<Complex> roots;
    for (Complex z0 : seeds) {
        Complex z = z0;
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const Quaternion r = res.value(z);
            const Eigen::Vector4d rv(r.w, r.x, r.y, r.z);
            const Eigen::Vector2d step = res.jacobian(z).colPivHouseholderQr().solve(-rv);
            if (!step.allFinite()) break;
            Complex zn = z + Complex(step[0], step[1]);
            // Keep the iterate strictly in the upper half plane.
            if (zn.imag() <= 0.0) zn = Complex(zn.real(), 0.5 * z.imag());
            z = zn;
            if (std::abs(z) > 1e6) break;
            if (step.norm() < 1e-12 * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged || z.imag() <= 0.0) continue;
        if (f.domain().interior_distance(z) <= 0.0) continue;
        if (res.value(z).norm() > 1e-8 * fscale) continue;
        roots.push_back(z);
    }
    detail::dedup_points(roots, 1e-6);

    if (roots.empty()) return out;

    // Isolated zeros attract all nearby seeds to the same few points after
    // deduplication, while a zero curve keeps one refined root per seed
    // strung along it.
    const bool curve = f.classify(seed).slice_preserving || roots.size() >= 10;

    if (curve) {
        out.kind = DegenerateKind::Curve;
        if (f.classify(seed).slice_preserving) {
            // Spread samples along the whole curve: project each thin cell
            // center onto the curve with minimal-norm Gauss-Newton steps.
            for (Complex z0 : thin_cells(f, res, 150)) {
                Complex z = z0;
                for (int it = 0; it < 30; ++it) {
                    const Quaternion r = res.value(z);
                    const Eigen::Vector4d rv(r.w, r.x, r.y, r.z);
                    const Eigen::Vector2d step =
                        res.jacobian(z)
                            .bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                            .solve(-rv);
                    if (!step.allFinite()) break;
                    Complex zn = z + Complex(step[0], step[1]);
                    if (zn.imag() <= 0.0) zn = Complex(zn.real(), 0.5 * z.imag());
                    z = zn;
                    if (step.norm() < 1e-12 * (1.0 + std::abs(z))) break;
                }
                if (z.imag() > 0.0 && f.domain().interior_distance(z) > 0.0 &&
                    res.value(z).norm() <= 1e-8 * fscale)
                    out.curve_points.push_back(z);
            }
        } else {
            out.curve_points = roots;
        }
    } else {
        out.kind = DegenerateKind::Spheres;
        for (Complex z : roots) out.spheres.push_back({z.real(), z.imag()});
    }
    return out;
}

namespace {

double wing_distance(const Quaternion& v, const WingSetReport& wings) {
    const double inf = std::numeric_limits<double>::infinity();
    switch (wings.kind) {
        case WingSetKind::Empty:
            return inf;
        case WingSetKind::WholeDomain:
            return 0.0;
        case WingSetKind::Circle: {
            const WingCircle& c = *wings.circle;
            const Quaternion w = v - c.center;
            const double pu = dot(w, c.u), pv = dot(w, c.v);
            const Quaternion rest = w - c.u * pu - c.v * pv;
            const double in_plane = std::hypot(pu, pv) - c.radius;
            return std::sqrt(in_plane * in_plane + rest.norm2());
        }
        default: {
            double best = inf;
            for (const Quaternion& c : wings.values) best = std::min(best, (v - c).norm());
            return best;
        }
    }
}

std::vector<Quaternion> witness_units(const SliceFunction& f, std::size_t extra,
                                      std::uint64_t seed) {
    std::vector<Quaternion> units;
    const FunctionClass& cls = f.classify(seed);
    if (cls.preserved_slice) units.push_back(cls.preserved_slice->value());
    units.push_back(Quaternion::i());
    units.push_back(Quaternion::j());
    units.push_back(Quaternion::k());
    // Quasi-uniform directions (Fibonacci sphere).
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    const std::size_t m = 9 + extra;
    for (std::size_t n = 0; n < m; ++n) {
        const double t = (n + 0.5) / static_cast<double>(m);
        const double ct = 1.0 - 2.0 * t;
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const double ph = golden * static_cast<double>(n);
        units.push_back(Quaternion{0.0, st * std::cos(ph), st * std::sin(ph), ct});
    }
    return units;
}

std::optional<Quaternion> witness_search(const SliceFunction& f, const DegenerateSet& deg,
                                         const WingSetReport& wings, std::size_t grid_n,
                                         std::size_t extra_units, std::uint64_t seed) {
    (void)deg;
    const DerivativeScales sc = derivative_scales(f, seed);
    const StemPtr d = f.stem()->derivative();

    for (const Quaternion& Jq : witness_units(f, extra_units, seed)) {
        const auto h = [&](Complex z) -> Eigen::Vector2d {
            const StemValue dv = d->eval(z);
            const Quaternion dval = dv.f1 + Jq * dv.f2;
            const Quaternion sval = f.stem()->f2_hat(z);
            return {dot(dval, sval), dot(dval, Jq * sval)};
        };
        const auto jac = [&](Complex z) -> Eigen::Matrix2d {
            const double step = 1e-6 * (1.0 + std::abs(z));
            Eigen::Matrix2d m;
            m.col(0) = (h(z + Complex(step, 0)) - h(z - Complex(step, 0))) / (2.0 * step);
            m.col(1) = (h(z + Complex(0, step)) - h(z - Complex(0, step))) / (2.0 * step);
            return m;
        };
        const auto obj = [&](Complex z) { return h(z).squaredNorm(); };

        std::vector<Complex> seeds = detail::grid_local_minima(obj, f.domain(), grid_n);
        for (Complex z0 : seeds) {
            const auto res = detail::newton2(h, jac, z0);
            if (!res.converged || res.z.imag() <= 0.0) continue;
            if (f.domain().interior_distance(res.z) <= 0.0) continue;
            if (h(res.z).norm() > 1e-8 * sc.d * sc.s) continue;
            // Witness must avoid the degenerate set and the wings.
            const Quaternion sval = f.stem()->f2_hat(res.z);
            if (sval.norm() < 1e-5 * sc.s) continue;
            const Quaternion x = Quaternion(res.z.real()) + Jq * res.z.imag();
            const Quaternion v = f.eval(x);
            if (wing_distance(v, wings) < 1e-4 * (1.0 + v.norm())) continue;
            return x;
        }
    }
    return std::nullopt;
}

}  // namespace

ExtraSingularReport extra_singular_dimension(const SliceFunction& f, const DegenerateSet& deg,
                                             const WingSetReport& wings, std::uint64_t seed) {
    ExtraSingularReport rep;
    std::optional<Quaternion> w = witness_search(f, deg, wings, 80, 0, seed);
    if (!w && deg.dim() == 2 && wings.kind == WingSetKind::Empty &&
        f.domain().is_product_domain()) {
        // This combination forces a nonempty remainder on product domains;
        // escalate the search before giving up.
        w = witness_search(f, deg, wings, 160, 12, seed + 7);
    }
    if (w) {
        rep.dim = 2;
        rep.witness = w;
    }
    return rep;
}

DimensionTriple dimension_triple(const SliceFunction& f, std::uint64_t seed) {
    if (f.classify(seed).slice_constant)
        throw std::invalid_argument("dimension_triple: slice constants are excluded");
    DimensionTriple t;
    const DegenerateSet deg = degenerate_set(f, 200, seed);
    t.d = deg.dim();
    const WingSetReport wings = find_wings(f, seed);
    switch (wings.kind) {
        case WingSetKind::Empty: t.w = -1; break;
        case WingSetKind::One:
        case WingSetKind::Two: t.w = 2; break;
        case WingSetKind::Circle: t.w = 3; break;
        case WingSetKind::WholeDomain: t.w = 3; break;
    }
    t.m = extra_singular_dimension(f, deg, wings, seed).dim;
    return t;
}

bool admissible_triple(const DimensionTriple& t, DomainKind kind) {
    static const DimensionTriple product[] = {
        {-1, -1, -1}, {-1, -1, 2}, {-1, 2, -1}, {-1, 2, 2}, {-1, 3, -1}, {-1, 3, 2},
        {2, -1, 2},   {2, 2, -1},  {2, 2, 2},   {3, -1, -1}, {3, -1, 2},
    };
    for (const DimensionTriple& a : product) {
        if (a.d != t.d || a.w != t.w || a.m != t.m) continue;
        if (kind == DomainKind::ProductDomain) return true;
        return t.w == -1;  // slice domains admit no wings
    }
    return false;
}

}  // namespace slicereg
