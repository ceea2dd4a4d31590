// Command line front end: evaluate the example functions, compute Jacobians,
// fibers, wings and singular-set data, and print the classification table.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "slicereg/fibers.hpp"
#include "slicereg/jacobian.hpp"
#include "slicereg/registry.hpp"
#include "slicereg/singular.hpp"

using nlohmann::json;
using namespace slicereg;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

Quaternion parse_quaternion(const std::string& text) {
    std::istringstream in(text);
    double c[4];
    char sep = ',';
    for (int n = 0; n < 4; ++n) {
        if (n > 0 && (!(in >> sep) || sep != ',')) throw CLI::ValidationError("expected w,x,y,z");
        if (!(in >> c[n])) throw CLI::ValidationError("expected w,x,y,z");
    }
    return {c[0], c[1], c[2], c[3]};
}

struct FunctionArgs {
    std::string name;
    std::string stem_json;
    std::string bbox;

    SliceFunction resolve() const {
        if (!name.empty()) {
            const RegistryEntry* e = find_function(name);
            if (!e) throw CLI::ValidationError("unknown function \"" + name + "\"");
            SliceFunction f = e->fn;
            return apply_bbox(std::move(f));
        }
        if (stem_json.empty()) throw CLI::ValidationError("need --fn or --fn-json");
        return apply_bbox(
            SliceFunction(stem_from_json(stem_json), SymmetricDomain::quaternions_minus_reals()));
    }

    SliceFunction apply_bbox(SliceFunction f) const {
        if (bbox.empty()) return f;
        std::istringstream in(bbox);
        double a0, a1, b1;
        char s1, s2;
        if (!(in >> a0 >> s1 >> a1 >> s2 >> b1) || s1 != ',' || s2 != ',')
            throw CLI::ValidationError("--bbox expects amin,amax,bmax");
        SymmetricDomain d = f.domain();
        d.set_bbox({a0, a1, 0.0, b1});
        return SliceFunction(f.stem(), d);
    }
};

void attach_function_options(CLI::App* cmd, FunctionArgs& fa) {
    cmd->add_option("--fn", fa.name, "registered function name");
    cmd->add_option("--fn-json", fa.stem_json, "stem expression as JSON");
    cmd->add_option("--bbox", fa.bbox, "sampling box amin,amax,bmax");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    out << text << "\n";
}

json fiber_to_json(const FiberReport& rep) {
    json j;
    j["value"] = to_json(rep.value);
    j["whole_domain"] = rep.whole_domain;
    j["real_points"] = rep.real_points;
    j["spheres"] = json::array();
    for (const SphereRecord& s : rep.spheres) j["spheres"].push_back({s.alpha, s.beta});
    j["isolated"] = json::array();
    for (const Quaternion& p : rep.isolated) j["isolated"].push_back(to_json(p));
    j["is_wing"] = rep.wing.has_value();
    return j;
}

const char* wing_kind_name(WingSetKind k) {
    switch (k) {
        case WingSetKind::Empty: return "empty";
        case WingSetKind::One: return "one";
        case WingSetKind::Two: return "two";
        case WingSetKind::Circle: return "circle";
        case WingSetKind::WholeDomain: return "whole-domain";
    }
    return "?";
}

json wings_to_json(const WingSetReport& rep) {
    json j;
    j["kind"] = wing_kind_name(rep.kind);
    j["values"] = json::array();
    for (const Quaternion& c : rep.values) j["values"].push_back(to_json(c));
    if (rep.circle) {
        j["circle"] = {{"center", to_json(rep.circle->center)},
                       {"radius", rep.circle->radius},
                       {"u", to_json(rep.circle->u)},
                       {"v", to_json(rep.circle->v)}};
    }
    return j;
}

int run_table(const std::string& out_path, std::uint64_t seed, bool csv) {
    std::ostringstream out;
    bool mismatch = false;
    json rows = json::array();
    if (csv) out << "row,name,d,w,m,n,expected_d,expected_w,expected_m,expected_n,match\n";
    for (const RegistryEntry& e : registry()) {
        if (e.table_row == 0) continue;
        const DimensionTriple t = dimension_triple(e.fn, seed);
        const DimensionTriple& x = *e.expected;
        const int tn = std::max({t.d, t.w, t.m});
        const int xn = std::max({x.d, x.w, x.m});
        const bool ok = t.d == x.d && t.w == x.w && t.m == x.m &&
                        admissible_triple(t, e.fn.domain().kind());
        mismatch = mismatch || !ok;
        if (csv) {
            out << e.table_row << "," << e.name << "," << t.d << "," << t.w << "," << t.m << ","
                << tn << "," << x.d << "," << x.w << "," << x.m << "," << xn << ","
                << (ok ? "yes" : "no") << "\n";
        } else {
            rows.push_back({{"row", e.table_row},
                            {"name", e.name},
                            {"d", t.d},
                            {"w", t.w},
                            {"m", t.m},
                            {"n", tn},
                            {"match", ok}});
        }
    }
    emit(csv ? out.str() : json(rows).dump(2), out_path);
    return mismatch ? kExitMismatch : 0;
}

// Sampled point clouds of the three parts of the singular set, one CSV row per
// point with the Jacobian determinant at that point.
int run_point_cloud(const SliceFunction& f, const std::string& out_path, std::uint64_t seed) {
    std::ostringstream out;
    out.precision(12);
    out << "x0,x1,x2,x3,det,set\n";
    auto row = [&](const Quaternion& p, const char* set) {
        out << p.w << "," << p.x << "," << p.y << "," << p.z << "," << jacobian_det(f, p) << ","
            << set << "\n";
    };
    auto ring = [&](double alpha, double beta, int n, const char* set) {
        for (int m = 0; m < n; ++m) {
            const double th = 2.0 * M_PI * m / n;
            const Quaternion J = Quaternion::i() * std::cos(th) + Quaternion::j() * std::sin(th);
            row(Quaternion(alpha) + J * beta, set);
        }
    };

    const DegenerateSet deg = degenerate_set(f, 200, seed);
    for (const SphereRecord& s : deg.spheres) ring(s.alpha, s.beta, 16, "Df");
    for (Complex z : deg.curve_points) ring(z.real(), z.imag(), 4, "Df");

    const WingSetReport wings = find_wings(f, seed);
    std::vector<Quaternion> wing_values = wings.values;
    if (wings.kind == WingSetKind::Circle && wings.circle) {
        wing_values.clear();
        const WingCircle& c = *wings.circle;
        for (int m = 0; m < 8; ++m) {
            const double th = 2.0 * M_PI * m / 8;
            wing_values.push_back(c.center + (c.u * std::cos(th) + c.v * std::sin(th)) * c.radius);
        }
    }
    if (wings.kind != WingSetKind::WholeDomain) {
        for (const Quaternion& c : wing_values) {
            for (Complex z : f.domain().sample_d_plus(64, seed)) {
                try {
                    row(wing_point(f, c, z), "Wf");
                } catch (const std::exception&) {
                }
            }
        }
    }

    const ExtraSingularReport extra = extra_singular_dimension(f, deg, wings, seed);
    if (extra.witness) row(*extra.witness, "Nf_extra");

    emit(out.str(), out_path);
    return 0;
}

// Univalence demo for f(x) = x - x^-1 on U = {1/3 < |x| < 4}: f identifies the
// two interior points 2 and -1/2, is injective on each boundary shell (the
// image of |x| = r on a slice is the ellipse (r - 1/r) cos t + I (r + 1/r)
// sin t), the shells map to separated ellipses (|f| <= 10/3 inside, >= 15/4
// outside), and the differential is invertible at 3 even though 3 maps to the
// boundary of f(U).
int run_univalence(const std::string& out_path) {
    const SliceFunction& f = find_function("xminv")->fn;
    json j;
    const Quaternion f2 = f.eval(Quaternion(2.0));
    const Quaternion fneg = f.eval(Quaternion(-0.5));
    const double det3 = jacobian_det(f, Quaternion(3.0));
    j["f(2)"] = to_json(f2);
    j["f(-1/2)"] = to_json(fneg);
    j["det_at_3"] = det3;

    const Quaternion I = Quaternion::i();
    auto shell = [&](double r) {
        std::vector<Quaternion> vals;
        vals.reserve(1000);
        for (int n = 0; n < 1000; ++n) {
            const double t = 2.0 * M_PI * n / 1000.0;
            vals.push_back(f.eval(Quaternion(r * std::cos(t)) + I * (r * std::sin(t))));
        }
        return vals;
    };
    auto min_pair_gap = [](const std::vector<Quaternion>& vals) {
        double gap = 1e300;
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = a + 1; b < vals.size(); ++b)
                gap = std::min(gap, (vals[a] - vals[b]).norm());
        return gap;
    };
    const std::vector<Quaternion> inner = shell(1.0 / 3.0), outer = shell(4.0);
    double inner_max = 0.0, outer_min = 1e300;
    for (const Quaternion& v : inner) inner_max = std::max(inner_max, v.norm());
    for (const Quaternion& v : outer) outer_min = std::min(outer_min, v.norm());
    const double inner_gap = min_pair_gap(inner), outer_gap = min_pair_gap(outer);
    j["inner_max"] = inner_max;    // <= 10/3
    j["outer_min"] = outer_min;    // >= 15/4
    j["inner_min_gap"] = inner_gap;
    j["outer_min_gap"] = outer_gap;

    // The singular set is exactly the unit sphere.
    bool singular_on_sphere = true;
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    for (int n = 0; n < 100; ++n) {
        Quaternion v{0.0, gauss(rng), gauss(rng), gauss(rng)};
        if (v.norm() < 1e-6) continue;
        singular_on_sphere = singular_on_sphere && in_singular_set(f, v / v.norm());
    }
    j["singular_on_unit_sphere"] = singular_on_sphere;

    const bool ok = f2 == fneg && det3 > 0.0 && inner_max <= 10.0 / 3.0 + 1e-9 &&
                    outer_min >= 15.0 / 4.0 - 1e-9 && inner_gap > 1e-6 && outer_gap > 1e-6 &&
                    singular_on_sphere;
    j["separated"] = ok;
    emit(j.dump(2), out_path);
    return ok ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slice regular function toolbox"};
    app.require_subcommand(1);

    std::string out_path;
    std::uint64_t seed = 42;
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    app.add_option("--seed", seed, "random seed for all sampling");

    FunctionArgs fa;
    std::string x_text, c_text;
    std::size_t grid = 400;
    double tol = 1e-8;
    double alpha = 0.0, beta = 1.0;
    bool csv = false;

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate f at a point");
    attach_function_options(eval_cmd, fa);
    eval_cmd->add_option("--x", x_text, "point w,x,y,z")->required();

    CLI::App* jac_cmd = app.add_subcommand("jacobian", "differential of f at a point");
    attach_function_options(jac_cmd, fa);
    jac_cmd->add_option("--x", x_text, "point w,x,y,z")->required();

    CLI::App* fiber_cmd = app.add_subcommand("fiber", "solve f(x) = c");
    attach_function_options(fiber_cmd, fa);
    fiber_cmd->add_option("--c", c_text, "value w,x,y,z")->required();
    fiber_cmd->add_option("--grid", grid, "seeding grid resolution");

    bool wings_csv = false;
    CLI::App* wings_cmd = app.add_subcommand("wings", "wing values of f");
    attach_function_options(wings_cmd, fa);
    wings_cmd->add_flag("--csv", wings_csv, "emit a wing point cloud (alpha, beta, phi) as CSV");

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "structure class and dimension triple of f");
    attach_function_options(classify_cmd, fa);

    CLI::App* sphere_cmd = app.add_subcommand(
        "sample-singular",
        "singular set: point-cloud CSV, or its section on one sphere via --alpha/--beta");
    attach_function_options(sphere_cmd, fa);
    CLI::Option* alpha_opt = sphere_cmd->add_option("--alpha", alpha, "real part of the sphere");
    CLI::Option* beta_opt = sphere_cmd->add_option("--beta", beta, "imaginary radius (> 0)");
    sphere_cmd->add_option("--tol", tol, "classification tolerance");
    beta_opt->needs(alpha_opt);
    alpha_opt->needs(beta_opt);

    CLI::App* table_cmd =
        app.add_subcommand("table", "dimension triples (d, w, m) of the example functions");
    table_cmd->add_flag("--csv", csv, "CSV output instead of JSON");

    CLI::App* uni_cmd = app.add_subcommand("univalence", "boundary-separation demo for x - x^-1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) {
            const SliceFunction f = fa.resolve();
            const Quaternion x = parse_quaternion(x_text);
            json j{{"x", to_json(x)}, {"value", to_json(f.eval(x))}};
            emit(j.dump(2), out_path);
        } else if (jac_cmd->parsed()) {
            const SliceFunction f = fa.resolve();
            const Quaternion x = parse_quaternion(x_text);
            const JacobianMatrix jm = jacobian_matrix(f, x);
            json m = json::array();
            for (int r = 0; r < 4; ++r)
                m.push_back({jm.m(r, 0), jm.m(r, 1), jm.m(r, 2), jm.m(r, 3)});
            json basis = json::array();
            for (const Quaternion& b : jm.basis) basis.push_back(to_json(b));
            json j{{"matrix", m},
                   {"basis", basis},
                   {"det", jacobian_det(f, x)},
                   {"det_direct", jm.m.determinant()},
                   {"rank", jacobian_rank(f, x)}};
            emit(j.dump(2), out_path);
        } else if (fiber_cmd->parsed()) {
            const SliceFunction f = fa.resolve();
            emit(fiber_to_json(solve_fiber(f, parse_quaternion(c_text), grid, seed)).dump(2),
                 out_path);
        } else if (wings_cmd->parsed()) {
            const SliceFunction f = fa.resolve();
            const WingSetReport rep = find_wings(f, seed);
            if (!wings_csv) {
                emit(wings_to_json(rep).dump(2), out_path);
            } else {
                std::ostringstream out;
                out.precision(12);
                out << "wing,alpha,beta,phi_x,phi_y,phi_z\n";
                int idx = 0;
                for (const Quaternion& c : rep.values) {
                    for (Complex z : f.domain().sample_d_plus(128, seed)) {
                        try {
                            const Quaternion& phi = wing_phi(f, c, z).value();
                            out << idx << "," << z.real() << "," << z.imag() << "," << phi.x
                                << "," << phi.y << "," << phi.z << "\n";
                        } catch (const std::exception&) {
                        }
                    }
                    ++idx;
                }
                emit(out.str(), out_path);
            }
        } else if (classify_cmd->parsed()) {
            const SliceFunction f = fa.resolve();
            const FunctionClass& c = f.classify(seed);
            json j{{"constant", c.constant},
                   {"slice_constant", c.slice_constant},
                   {"slice_preserving", c.slice_preserving},
                   {"one_slice_preserving", c.one_slice_preserving},
                   {"tilde_r", c.tilde_r},
                   {"tilde_c", c.tilde_c}};
            if (c.preserved_slice) j["preserved_slice"] = to_json(c.preserved_slice->value());
            if (c.tilde_c) {
                j["witness_a"] = to_json(c.witness_a);
                j["witness_b"] = to_json(c.witness_b);
            }
            if (!c.slice_constant) {
                const DimensionTriple t = dimension_triple(f, seed);
                j["d"] = t.d;
                j["w"] = t.w;
                j["m"] = t.m;
                j["n"] = std::max({t.d, t.w, t.m});
            }
            emit(j.dump(2), out_path);
        } else if (sphere_cmd->parsed()) {
            if (alpha_opt->count() == 0) return run_point_cloud(fa.resolve(), out_path, seed);
            const SphereSection s = sphere_section(fa.resolve(), alpha, beta, tol);
            json j;
            switch (s.kind) {
                case SphereSectionKind::Empty: j["kind"] = "empty"; break;
                case SphereSectionKind::OnePoint: j["kind"] = "one-point"; break;
                case SphereSectionKind::TwoPoints: j["kind"] = "two-points"; break;
                case SphereSectionKind::Circle: j["kind"] = "circle"; break;
                case SphereSectionKind::WholeSphere: j["kind"] = "whole-sphere"; break;
            }
            json units = json::array();
            for (const Quaternion& u : s.units) units.push_back(to_json(u));
            j["units"] = units;
            if (s.kind == SphereSectionKind::Circle) {
                j["circle_axis"] = to_json(s.circle_axis);
                j["circle_offset"] = s.circle_offset;
            }
            emit(j.dump(2), out_path);
        } else if (table_cmd->parsed()) {
            return run_table(out_path, seed, csv);
        } else if (uni_cmd->parsed()) {
            return run_univalence(out_path);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return 0;
}
