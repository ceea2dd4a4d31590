#include "slicereg/registry.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "slicereg/fibers.hpp"

namespace slicereg {

namespace {

using nlohmann::json;

Complex g_exp(Complex z) { return std::exp(z * z - 2.0 * z * Complex(0.0, 1.0)); }
Complex dg_exp(Complex z) { return (2.0 * z - Complex(0.0, 2.0)) * g_exp(z); }

SymmetricDomain boxed_product(double a, double b) {
    SymmetricDomain d = SymmetricDomain::quaternions_minus_reals();
    d.set_bbox({-a, a, 0.0, b});
    return d;
}

std::vector<RegistryEntry> build_registry() {
    const Quaternion I = Quaternion::i(), J = Quaternion::j();
    const SymmetricDomain HmR = SymmetricDomain::quaternions_minus_reals();

    const StemPtr eta = make_eta();
    const StemPtr quad = make_polynomial({Quaternion(3.0), I * -2.0, Quaternion(1.0)});
    const StemPtr f5_stem =
        stem_mul(make_polynomial({Quaternion(), J, Quaternion(1.0)}), eta);

    std::vector<RegistryEntry> reg;

    auto add = [&](std::string name, std::string desc, SliceFunction fn, int row,
                   std::optional<DimensionTriple> expected,
                   std::optional<Quaternion> witness) {
        reg.push_back({std::move(name), std::move(desc), std::move(fn), row, expected, witness});
    };

    add("x", "identity", SliceFunction(make_polynomial({Quaternion(), Quaternion(1.0)}), HmR), 1,
        DimensionTriple{-1, -1, -1}, std::nullopt);
    add("f1", "x^2 - 2xi",
        SliceFunction(make_polynomial({Quaternion(), I * -2.0, Quaternion(1.0)}), HmR), 2,
        DimensionTriple{-1, -1, 2}, I);
    add("f2", "x eta(x)",
        SliceFunction(stem_mul(make_polynomial({Quaternion(), Quaternion(1.0)}), eta), HmR), 3,
        DimensionTriple{-1, 2, -1}, std::nullopt);
    add("eta_exp", "eta(x) exp(x^2 - 2xi)",
        SliceFunction(make_two_slices(g_exp, [](Complex) { return Complex(); }, dg_exp,
                                      [](Complex) { return Complex(); }),
                      boxed_product(2.0, 2.0)),
        4, DimensionTriple{-1, 2, 2}, I);
    add("f3", "unit-normal function built from g(z) = z",
        schwarz_wing_function([](Complex z) { return z; }, [](Complex) { return Complex(1.0); },
                              boxed_product(3.0, 3.0)),
        5, DimensionTriple{-1, 3, -1}, std::nullopt);
    add("schwarz_exp", "unit-normal function built from g(z) = exp(z^2 - 2zi)",
        schwarz_wing_function(g_exp, dg_exp, boxed_product(2.0, 2.0)), 6,
        DimensionTriple{-1, 3, 2}, I);
    add("f7", "(x^2 + 4)(x^2 - 2xi - 1)",
        SliceFunction(make_polynomial({Quaternion(-4.0), I * -8.0, Quaternion(3.0), I * -2.0,
                                       Quaternion(1.0)}),
                      HmR),
        7, DimensionTriple{2, -1, 2}, I);
    add("f2star", "(x^2 + 1) eta(x)",
        SliceFunction(stem_mul(make_polynomial({Quaternion(1.0), Quaternion(), Quaternion(1.0)}),
                               eta),
                      HmR),
        8, DimensionTriple{2, 2, -1}, std::nullopt);
    add("eta_quad", "eta(x)(x^2 - 2xi + 3)", SliceFunction(stem_mul(eta, quad), HmR), 9,
        DimensionTriple{2, 2, 2}, I);
    add("x2", "x^2",
        SliceFunction(make_polynomial({Quaternion(), Quaternion(), Quaternion(1.0)}), HmR), 10,
        DimensionTriple{3, -1, -1}, std::nullopt);
    add("x3p3x", "x^3 + 3x",
        SliceFunction(make_polynomial({Quaternion(), Quaternion(3.0), Quaternion(),
                                       Quaternion(1.0)}),
                      HmR),
        11, DimensionTriple{3, -1, 2}, I);

    // Further examples outside the table.
    add("eta", "slice constant eta(x) = (1 - I_x i)/2", SliceFunction(eta, HmR), 0, std::nullopt,
        std::nullopt);
    add("f4", "x^3 + x^2 i + x j",
        SliceFunction(make_polynomial({Quaternion(), J, I, Quaternion(1.0)}), HmR), 0,
        std::nullopt, std::nullopt);
    add("f5", "(x^2 + xj) eta(x)", SliceFunction(f5_stem, HmR), 0, std::nullopt, std::nullopt);
    add("f5star", "(x^2 + 1)(x^2 + xj) eta(x)",
        SliceFunction(stem_mul(make_polynomial({Quaternion(1.0), Quaternion(), Quaternion(1.0)}),
                               f5_stem),
                      HmR),
        0, std::nullopt, std::nullopt);
    add("f6", "(x + j) eta(x)",
        SliceFunction(stem_mul(make_polynomial({J, Quaternion(1.0)}), eta), HmR), 0, std::nullopt,
        std::nullopt);
    add("xminv", "x - x^-1 on H \\ {0}",
        SliceFunction(make_real_holomorphic([](Complex z) { return z - 1.0 / z; },
                                            [](Complex z) { return 1.0 + 1.0 / (z * z); },
                                            [](Complex z) { return -2.0 / (z * z * z); }),
                      SymmetricDomain::quaternions_minus_origin()),
        0, std::nullopt, std::nullopt);

    return reg;
}

Quaternion quat_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("stem_from_json: quaternion must be [w,x,y,z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

StemPtr stem_from_node(const json& j) {
    if (!j.is_object() || !j.contains("op"))
        throw std::invalid_argument("stem_from_json: node must be an object with \"op\"");
    const std::string op = j.at("op").get<std::string>();
    if (op == "poly") {
        std::vector<Quaternion> coeffs;
        for (const json& c : j.at("coeffs")) coeffs.push_back(quat_from_json(c));
        return make_polynomial(std::move(coeffs));
    }
    if (op == "eta") return make_eta();
    if (op == "const")
        return make_slice_constant(quat_from_json(j.at("c1")), quat_from_json(j.at("c2")));
    if (op == "add" || op == "sub" || op == "mul") {
        const json& args = j.at("args");
        if (!args.is_array() || args.size() != 2)
            throw std::invalid_argument("stem_from_json: " + op + " needs two args");
        StemPtr a = stem_from_node(args[0]), b = stem_from_node(args[1]);
        if (op == "add") return stem_add(a, b);
        if (op == "sub") return stem_sub(a, b);
        return stem_mul(a, b);
    }
    if (op == "rscale") return stem_rscale(stem_from_node(j.at("arg")), quat_from_json(j.at("q")));
    if (op == "recip") return stem_reciprocal(stem_from_node(j.at("arg")));
    if (op == "derivative") return stem_from_node(j.at("arg"))->derivative();
    throw std::invalid_argument("stem_from_json: unknown op \"" + op + "\"");
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
    static const std::vector<RegistryEntry> reg = build_registry();
    return reg;
}

const RegistryEntry* find_function(const std::string& name) {
    for (const RegistryEntry& e : registry())
        if (e.name == name) return &e;
    return nullptr;
}

StemPtr stem_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("stem_from_json: ") + e.what());
    }
    return stem_from_node(j);
}

}  // namespace slicereg
