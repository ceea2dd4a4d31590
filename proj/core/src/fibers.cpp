#include "slicereg/fibers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rootfind.hpp"
#include "slicereg/singular.hpp"

namespace slicereg {

namespace {

StemPtr constant_stem(const Quaternion& c) { return make_polynomial({c}); }

double value_scale(const SliceFunction& f, std::uint64_t seed) {
    double scale = 1.0;
    for (Complex z : f.domain().sample_d_plus(60, seed)) {
        const StemValue v = f.stem()->eval(z);
        scale = std::max({scale, v.f1.norm(), v.f2.norm()});
    }
    return scale;
}

// Residuals of the fiber system for value c at z:
//   g1 = |F1 - c|^2 - |F2|^2,   g2 = <F1 - c, F2>.
struct FiberSystem {
    StemPtr stem, dstem;
    Quaternion c;

    Eigen::Vector2d residual(Complex z) const {
        const StemValue v = stem->eval(z);
        const Quaternion r = v.f1 - c;
        return {r.norm2() - v.f2.norm2(), dot(r, v.f2)};
    }

    // Cauchy-Riemann converts alpha-derivatives of the stem into
    // beta-derivatives: dF1/dbeta = -(F')_2, dF2/dbeta = (F')_1.
    Eigen::Matrix2d jacobian(Complex z) const {
        const StemValue v = stem->eval(z);
        const StemValue d = dstem->eval(z);
        const Quaternion r = v.f1 - c;
        Eigen::Matrix2d m;
        m(0, 0) = 2.0 * (dot(r, d.f1) - dot(v.f2, d.f2));
        m(0, 1) = -2.0 * (dot(r, d.f2) + dot(v.f2, d.f1));
        m(1, 0) = dot(d.f1, v.f2) + dot(r, d.f2);
        m(1, 1) = -dot(d.f2, v.f2) + dot(r, d.f1);
        return m;
    }
};

}  // namespace

bool normal_vanishes(const SliceFunction& f, const Quaternion& c) {
    const StemPtr g = stem_sub(f.stem(), constant_stem(c));
    if (const auto* p = g->poly_coeffs()) {
        double scale = 1.0;
        for (const Quaternion& a : *p) scale += a.norm();
        const std::vector<Quaternion> n = poly_convolve(*p, poly_conj(*p));
        for (const Quaternion& a : n)
            if (a.norm() > 1e-10 * scale * scale) return false;
        return true;
    }
    double scale = 1.0, res = 0.0;
    for (Complex z : f.domain().sample_d_plus(200, 42)) {
        const StemValue v = g->eval(z);
        scale = std::max({scale, v.f1.norm(), v.f2.norm()});
        res = std::max({res, std::fabs(v.f1.norm2() - v.f2.norm2()),
                        std::fabs(dot(v.f1, v.f2))});
    }
    return res < 1e-7 * scale * scale;
}

ImaginaryUnit wing_phi(const SliceFunction& f, const Quaternion& c, Complex z) {
    const StemValue v = f.stem()->eval(z);
    if (v.f2.norm() == 0.0) throw std::domain_error("wing_phi: spherical derivative vanishes");
    return ImaginaryUnit((c - v.f1) * v.f2.inverse());
}

Quaternion wing_point(const SliceFunction& f, const Quaternion& c, Complex z) {
    return Quaternion(z.real()) + wing_phi(f, c, z).value() * z.imag();
}

FiberReport solve_fiber(const SliceFunction& f, const Quaternion& c, std::size_t grid_n,
                        std::uint64_t seed) {
    FiberReport rep;
    rep.value = c;
    const double scale = value_scale(f, seed);
    const double val_tol = 1e-6 * (scale + c.norm());

    if (normal_vanishes(f, c)) {
        // Either f is constant equal to c or the fiber is a wing.
        double dev = 0.0;
        for (Complex z : f.domain().sample_d_plus(40, seed)) {
            const StemValue v = f.stem()->eval(z);
            dev = std::max({dev, (v.f1 - c).norm(), v.f2.norm()});
        }
        if (dev < val_tol) {
            rep.whole_domain = true;
            return rep;
        }
        Wing w;
        w.value = c;
        const DegenerateSet deg = degenerate_set(f, grid_n / 2, seed);
        for (const SphereRecord& s : deg.spheres) {
            const StemValue v = f.stem()->eval(Complex(s.alpha, s.beta));
            if ((v.f1 - c).norm() < val_tol) {
                w.degenerate_spheres.push_back(s);
                rep.spheres.push_back(s);
            }
        }
        rep.wing = std::move(w);
        return rep;
    }

    const FiberSystem sys{f.stem(), f.stem()->derivative(), c};
    const auto obj = [&](Complex z) { return sys.residual(z).squaredNorm(); };
    std::vector<Complex> roots;
    for (Complex z0 : detail::grid_local_minima(obj, f.domain(), grid_n)) {
        const auto res = detail::newton2([&](Complex z) { return sys.residual(z); },
                                         [&](Complex z) { return sys.jacobian(z); }, z0);
        // Roots that collapse onto the real axis are real zeros (handled by
        // the 1D search below), not spheres.
        if (!res.converged || res.z.imag() <= 1e-8 * (1.0 + std::abs(res.z))) continue;
        if (f.domain().interior_distance(res.z) <= 0.0) continue;
        if (sys.residual(res.z).norm() > 1e-9 * scale * scale) continue;
        roots.push_back(res.z);
    }
    detail::dedup_points(roots, 1e-7);

    for (Complex z : roots) {
        const StemValue v = f.stem()->eval(z);
        if (v.f2.norm() < 1e-7 * scale) {
            if ((v.f1 - c).norm() < val_tol) rep.spheres.push_back({z.real(), z.imag()});
            continue;
        }
        try {
            const Quaternion p = wing_point(f, c, z);
            if ((f.eval(p) - c).norm() < val_tol) rep.isolated.push_back(p);
        } catch (const std::domain_error&) {
            // quotient not a unit: spurious root, drop it
        }
    }

    // Real fiber points exist only on slice domains.
    if (!f.domain().minus_reals()) {
        const BoundingBox& bb = f.domain().bbox();
        const StemPtr d = f.stem()->derivative();
        const std::size_t n1 = std::max<std::size_t>(grid_n, 100);
        std::vector<double> reals;
        for (std::size_t ia = 0; ia + 1 <= n1; ++ia) {
            double a = bb.alpha_min +
                       (bb.alpha_max - bb.alpha_min) * (ia + 0.5) / static_cast<double>(n1);
            if (f.domain().interior_distance(Complex(a, 0.0)) <= 0.0) continue;
            // 1D Gauss-Newton on |F1(alpha) - c|^2.
            bool ok = false;
            for (int it = 0; it < 50; ++it) {
                const Quaternion r = f.stem()->eval(Complex(a, 0.0)).f1 - c;
                const Quaternion da = d->eval(Complex(a, 0.0)).f1;
                if (da.norm2() == 0.0) break;
                const double step = -dot(r, da) / da.norm2();
                a += step;
                if (std::fabs(step) < 1e-13 * (1.0 + std::fabs(a))) {
                    ok = true;
                    break;
                }
                if (!std::isfinite(a) || std::fabs(a) > 1e6) break;
            }
            if (!ok || f.domain().interior_distance(Complex(a, 0.0)) <= 0.0) continue;
            if ((f.stem()->eval(Complex(a, 0.0)).f1 - c).norm() > val_tol) continue;
            bool dup = false;
            for (double b : reals)
                if (std::fabs(a - b) < 1e-7 * (1.0 + std::fabs(a))) dup = true;
            if (!dup) reals.push_back(a);
        }
        std::sort(reals.begin(), reals.end());
        rep.real_points = std::move(reals);
    }
    return rep;
}

namespace {

// Orthonormal pair spanning the complement of C_J = Span(1, J).
std::pair<Quaternion, Quaternion> perp_basis(const Quaternion& J) {
    const std::array<Quaternion, 3> cand = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    std::size_t best = 0;
    double best_abs = std::fabs(dot(J, cand[0]));
    for (std::size_t c = 1; c < cand.size(); ++c)
        if (std::fabs(dot(J, cand[c])) < best_abs - 1e-15)
            best = c, best_abs = std::fabs(dot(J, cand[c]));
    Quaternion k1 = cand[best] - J * dot(J, cand[best]);
    k1 = k1 / k1.norm();
    return {k1, J * k1};
}

}  // namespace

WingSetReport find_wings(const SliceFunction& f, std::uint64_t seed) {
    WingSetReport rep;
    if (!f.domain().is_product_domain()) return rep;  // wings need product domains

    const FunctionClass& cls = f.classify(seed);
    if (cls.slice_constant) {
        // Every attained value is a wing value.
        rep.kind = WingSetKind::WholeDomain;
        for (Complex z : f.domain().sample_d_plus(2, seed)) {
            const StemValue v = f.stem()->eval(z);
            rep.values.push_back(v.f1 + Quaternion::i() * v.f2);
        }
        return rep;
    }
    if (cls.tilde_r) return rep;  // non-constant translates of slice preserving: no wings

    const double scale = value_scale(f, seed);

    // Residual samples for the Gauss-Newton refinement of candidate values.
    const std::vector<Complex> zs = f.domain().sample_d_plus(24, seed + 1);
    std::vector<StemValue> fs;
    for (Complex z : zs) fs.push_back(f.stem()->eval(z));

    auto refine = [&](Quaternion c) -> std::optional<Quaternion> {
        const int m = static_cast<int>(zs.size());
        for (int it = 0; it < 40; ++it) {
            Eigen::MatrixXd A(2 * m, 4);
            Eigen::VectorXd r(2 * m);
            for (int s = 0; s < m; ++s) {
                const StemValue& v = fs[static_cast<std::size_t>(s)];
                const Quaternion d1 = v.f1 - c;
                r[2 * s] = d1.norm2() - v.f2.norm2();
                r[2 * s + 1] = dot(d1, v.f2);
                A.row(2 * s) << -2.0 * d1.w, -2.0 * d1.x, -2.0 * d1.y, -2.0 * d1.z;
                A.row(2 * s + 1) << -v.f2.w, -v.f2.x, -v.f2.y, -v.f2.z;
            }
            const Eigen::Vector4d step = A.colPivHouseholderQr().solve(-r);
            if (!step.allFinite()) return std::nullopt;
            c = c + Quaternion{step[0], step[1], step[2], step[3]};
            if (step.norm() < 1e-13 * (1.0 + c.norm())) break;
            if (c.norm() > 1e6 * scale) return std::nullopt;
        }
        if (!normal_vanishes(f, c)) return std::nullopt;
        return c;
    };

    // Harvest candidate values from a handful of slices.
    std::vector<Quaternion> units = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    if (cls.preserved_slice) units.insert(units.begin(), cls.preserved_slice->value());
    {
        std::mt19937_64 rng(seed + 2);
        std::normal_distribution<double> g;
        for (int n = 0; n < 8; ++n) {
            Quaternion u{0.0, g(rng), g(rng), g(rng)};
            if (u.norm() > 1e-6) units.push_back(u / u.norm());
        }
        const std::size_t m = units.size();
        for (std::size_t n = 0; n < m; ++n) units.push_back(-units[n]);
    }

    std::vector<Quaternion> found;
    const std::vector<Complex> zgrid = f.domain().sample_d_plus(100, seed + 3);
    for (const Quaternion& J : units) {
        for (std::size_t s = 0; s < zgrid.size(); s += 7) {
            const StemValue v = f.stem()->eval(zgrid[s]);
            if (auto c = refine(v.f1 + J * v.f2)) found.push_back(*c);
        }
    }

    // Cluster.
    std::vector<Quaternion> clusters;
    for (const Quaternion& c : found) {
        bool dup = false;
        for (const Quaternion& d : clusters)
            if ((c - d).norm() < 1e-6 * (scale + c.norm())) dup = true;
        if (!dup) clusters.push_back(c);
    }

    if (clusters.empty()) return rep;

    if (cls.tilde_c && !cls.tilde_r && clusters.size() >= 2) {
        // f = g a + b with g one-slice preserving: the wing values form the
        // circle {c : |c - b| = |d - b|, (c - d) a^-1 perp C_J}.
        const Quaternion& a = cls.witness_a;
        const Quaternion& b = cls.witness_b;
        const Quaternion J = cls.preserved_slice->value();
        const Quaternion d = clusters.front();
        auto [k1, k2] = perp_basis(J);
        Quaternion u = k1 * a, v = k2 * a;
        u = u / u.norm();
        v = v / v.norm();
        const Quaternion w = b - d;
        const Quaternion center = d + u * dot(w, u) + v * dot(w, v);
        const double rho2 = (d - b).norm2() - (center - b).norm2();
        if (rho2 > 0.0) {
            WingCircle circle{center, std::sqrt(rho2), u, v};
            // Keep only circles that really consist of wing values.
            const Quaternion probe =
                center + (u * std::cos(1.0) + v * std::sin(1.0)) * circle.radius;
            if (normal_vanishes(f, probe)) {
                rep.kind = WingSetKind::Circle;
                rep.circle = circle;
                rep.values = {clusters.front(), probe};
                return rep;
            }
        }
    }

    if (clusters.size() == 1) {
        rep.kind = WingSetKind::One;
        rep.values = clusters;
    } else {
        rep.kind = WingSetKind::Two;
        rep.values = {clusters[0], clusters[1]};
    }
    return rep;
}

SliceFunction wing_selection(const SliceFunction& f, const Quaternion& c, double r) {
    const StemPtr shifted = stem_sub(f.stem(), constant_stem(c));
    const StemPtr g =
        stem_add(constant_stem(c), stem_mul(make_polynomial({Quaternion(-r), Quaternion(1.0)}),
                                            shifted));
    return SliceFunction(g, f.domain());
}

SliceFunction schwarz_wing_function(ComplexMap g, ComplexMap dg, SymmetricDomain domain) {
    ComplexMap lower = [g](Complex z) { return -1.0 / std::conj(g(z)); };
    ComplexMap dlower;
    if (dg) {
        dlower = [g, dg](Complex z) {
            const Complex gc = std::conj(g(z));
            return std::conj(dg(z)) / (gc * gc);
        };
    }
    return SliceFunction(make_two_slices(std::move(g), std::move(lower), std::move(dg),
                                         std::move(dlower)),
                         std::move(domain));
}

MultiplicityReport total_multiplicity(const SliceFunction& f, const Quaternion& y) {
    const auto* pc = f.stem()->poly_coeffs();
    if (!pc) throw std::invalid_argument("total_multiplicity: polynomial stem required");
    double scale = 1.0;
    for (const Quaternion& a : *pc) scale += a.norm();

    // Multiplicity of y as a zero of f - f(y); f(y) from the coefficients so
    // that y need not lie in the (possibly punctured) domain.
    std::vector<Quaternion> p = *pc;
    if (!p.empty()) {
        Quaternion fy, yn(1.0);
        for (const Quaternion& a : p) {
            fy = fy + yn * a;
            yn = yn * y;
        }
        p[0] = p[0] - fy;
    }

    std::vector<Quaternion> n = poly_convolve(p, poly_conj(p));
    double nmax = 0.0;
    for (const Quaternion& a : n) nmax = std::max(nmax, a.norm());
    if (nmax < 1e-10 * scale * scale)
        throw std::invalid_argument("total_multiplicity: normal function vanishes identically");

    MultiplicityReport rep;
    const double tol = 1e-9 * scale * scale;
    while (n.size() >= 3) {
        const PolyQuadDivision div = poly_divide_quadratic(n, y.real(), y.norm2());
        if (div.rem0.norm() > tol || div.rem1.norm() > tol) break;
        n = div.quotient;
        ++rep.multiplicity;
    }
    rep.cofactor = std::move(n);
    return rep;
}

}  // namespace slicereg
