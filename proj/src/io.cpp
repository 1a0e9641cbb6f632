#include "rokhlin/io.hpp"

#include <map>
#include <stdexcept>

namespace rokhlin::io {

namespace {

const json& need(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw std::invalid_argument(std::string("JSON is missing \"") + key + "\"");
    }
    return j.at(key);
}

template <class E>
json system_json(const TowerSystem<E>& sys, const char* prefix, json (*encode)(const E&))
{
    json colors = json::array();
    json elements = json::object();
    int next = 0;
    for (const auto& c : sys.colors) {
        json towers = json::array();
        for (const auto& t : c.towers) {
            json refs = json::array();
            for (const auto& e : t) {
                const std::string ref = prefix + std::to_string(next++);
                elements[ref] = encode(e);
                refs.push_back(ref);
            }
            towers.push_back(std::move(refs));
        }
        colors.push_back({{"towers", std::move(towers)}});
    }
    return {{"mode", sys.mode == TowerMode::z ? "Z" : "group"},
            {"epsilon", sys.epsilon},
            {"colors", std::move(colors)},
            {"elements", std::move(elements)}};
}

json encode_pl(const PLFunction& f)
{
    json j = to_json(f);
    j["type"] = "pl";
    return j;
}

json encode_vector(const FiniteFunction& f) { return {{"type", "vector"}, {"values", f}}; }

json complex_matrix(const CMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            rows.push_back({m(i, k).real(), m(i, k).imag()});
        }
    }
    return rows;
}

CMatrix complex_matrix_from(const json& j, int dim)
{
    if (!j.is_array() || static_cast<int>(j.size()) != dim * dim) {
        throw std::invalid_argument("matrix has the wrong number of entries");
    }
    CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int k = 0; k < dim; ++k) {
            const auto& z = j[i * dim + k];
            m(i, k) = {z.at(0).get<double>(), z.at(1).get<double>()};
        }
    }
    return m;
}

}  // namespace

json to_json(const PLFunction& f) { return {{"breakpoints", f.breakpoints()}, {"values", f.values()}}; }

PLFunction pl_from_json(const json& j)
{
    return PLFunction(need(j, "breakpoints").get<std::vector<double>>(), need(j, "values").get<std::vector<double>>());
}

json to_json(const TowerSystem<PLFunction>& sys) { return system_json<PLFunction>(sys, "f", &encode_pl); }

json to_json(const TowerSystem<FiniteFunction>& sys) { return system_json<FiniteFunction>(sys, "v", &encode_vector); }

json to_json(const AnySystem& sys)
{
    return std::visit([](const auto& s) { return to_json(s); }, sys);
}

AnySystem system_from_json(const json& j)
{
    const std::string mode = need(j, "mode").get<std::string>();
    if (mode != "Z" && mode != "group") {
        throw std::invalid_argument("mode must be \"Z\" or \"group\"");
    }
    const json& elements = need(j, "elements");
    const json& colors = need(j, "colors");
    if (!colors.is_array() || colors.empty()) {
        throw std::invalid_argument("system needs a nonempty color list");
    }
    std::string kind;
    for (const auto& [ref, e] : elements.items()) {
        const std::string t = need(e, "type").get<std::string>();
        if (t != "pl" && t != "vector") {
            throw std::invalid_argument("unknown element type '" + t + "'");
        }
        if (!kind.empty() && kind != t) {
            throw std::invalid_argument("system mixes element types");
        }
        kind = t;
    }
    auto fill = [&](auto& sys, auto decode) {
        sys.mode = mode == "Z" ? TowerMode::z : TowerMode::group;
        sys.epsilon = j.value("epsilon", 0.0);
        for (const auto& c : colors) {
            typename std::remove_reference_t<decltype(sys.colors)>::value_type color;
            for (const auto& refs : need(c, "towers")) {
                typename decltype(color.towers)::value_type tower;
                for (const auto& ref : refs) {
                    const std::string key = ref.get<std::string>();
                    if (!elements.contains(key)) {
                        throw std::invalid_argument("unknown element reference '" + key + "'");
                    }
                    tower.push_back(decode(elements.at(key)));
                }
                color.towers.push_back(std::move(tower));
            }
            sys.colors.push_back(std::move(color));
        }
    };
    if (kind == "pl") {
        TowerSystem<PLFunction> sys;
        fill(sys, [](const json& e) { return pl_from_json(e); });
        return sys;
    }
    TowerSystem<FiniteFunction> sys;
    fill(sys, [](const json& e) { return need(e, "values").get<FiniteFunction>(); });
    return sys;
}

json to_json(const FiniteAction& action)
{
    json group;
    if (action.group().cyclic_order() > 0) {
        group = {{"type", "cyclic"}, {"q", action.group().cyclic_order()}};
    } else {
        group = {{"table", action.group().table()}};
    }
    return {{"group", group}, {"X", action.size()}, {"act", action.table()}};
}

json rotation_action_json(const ParsedReal& theta)
{
    return {{"rotation", {{"theta", theta.text}, {"parse_error_bound", theta.parse_error_bound}}}};
}

ActionSpec action_from_json(const json& j)
{
    ActionSpec spec;
    if (j.contains("rotation")) {
        const json& r = j.at("rotation");
        const json& t = need(r, "theta");
        spec.rotation = parse_real(t.is_string() ? t.get<std::string>() : t.dump());
        return spec;
    }
    if (j.contains("permutation")) {
        spec.permutation = j.at("permutation").get<std::vector<int>>();
        return spec;
    }
    const json& g = need(j, "group");
    const int size = need(j, "X").get<int>();
    std::optional<FiniteGroup> group;
    if (g.contains("table")) {
        group = FiniteGroup::from_table(g.at("table").get<std::vector<std::vector<int>>>());
    } else if (g.value("type", std::string()) == "cyclic") {
        group = FiniteGroup::cyclic(need(g, "q").get<int>());
    } else {
        throw std::invalid_argument("group must be {\"type\":\"cyclic\",\"q\":...} or {\"table\":...}");
    }
    spec.finite = FiniteAction(*group, size, need(j, "act").get<std::vector<std::vector<int>>>());
    return spec;
}

json to_json(const CertifiedBound& b)
{
    return {{"estimate", b.estimate}, {"slack", b.slack}, {"certified", b.certified}};
}

json to_json(const RotationCertificate& c)
{
    return {{"p", c.p},
            {"m", c.m},
            {"n", c.n},
            {"lipschitz_bound", c.lipschitz_bound},
            {"analytic_shift_bound", c.analytic_shift_bound},
            {"approximation_bound", c.approximation_bound},
            {"exact_shift_error", c.exact_shift_error},
            {"grid_step", c.grid_step},
            {"measured_shift_bound", to_json(c.measured_shift_bound)},
            {"tiling_error", c.tiling_error},
            {"max_overlap", c.max_overlap},
            {"gamma_equivariance_error", c.gamma_equivariance_error}};
}

json to_json(const RokhlinReport& r)
{
    return {{"cond1_max_overlap", r.cond1_max_overlap},
            {"cond2_sum_deviation", r.cond2_sum_deviation},
            {"cond2prime_min_value", r.cond2prime_min_value},
            {"cond3_max_shift_error", r.cond3_max_shift_error},
            {"cond4_wrap_error", r.cond4_wrap_error},
            {"cond5_max_commutator", r.cond5_max_commutator},
            {"commuting_towers_max", r.commuting_towers_max},
            {"epsilon", r.epsilon},
            {"pass", r.pass}};
}

json to_json(const SpliceMap& mu)
{
    return {{"k", mu.k}, {"r", mu.r}, {"Lbar", mu.Lbar}, {"L", mu.L}, {"s", mu.s}, {"delta", mu.delta}, {"weights", mu.weights}};
}

SpliceMap splice_from_json(const json& j)
{
    SpliceMap mu;
    mu.k = need(j, "k").get<int>();
    mu.r = need(j, "r").get<int>();
    mu.Lbar = need(j, "Lbar").get<int>();
    mu.L = need(j, "L").get<int>();
    mu.s = j.value("s", mu.k * mu.Lbar);
    mu.delta = j.value("delta", 1.0 / mu.Lbar);
    mu.weights = need(j, "weights").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(mu.weights.size()) != mu.k) {
        throw std::invalid_argument("splice weights need k rows");
    }
    for (const auto& row : mu.weights) {
        if (static_cast<int>(row.size()) != mu.r) {
            throw std::invalid_argument("splice weight rows need r entries");
        }
    }
    return mu;
}

json to_json(const ElementaryPolynomial& e)
{
    json terms = json::array();
    for (const auto& t : e.terms) {
        json factors = json::array();
        for (const auto& f : t) {
            factors.push_back({{"q", f.index}, {"complement", f.complement}});
        }
        terms.push_back(std::move(factors));
    }
    return {{"terms", std::move(terms)}};
}

json to_json(const ReturnDecomposition& dec)
{
    json pieces = json::array();
    for (const auto& pc : dec.pieces) {
        json ivs = json::array();
        for (const auto& iv : pc.intervals) {
            ivs.push_back({iv.a, iv.b});
        }
        pieces.push_back({{"m", pc.m}, {"intervals", std::move(ivs)}, {"length", pc.length()}});
    }
    return {{"theta", dec.theta}, {"Z", {dec.z0, dec.z1}}, {"pieces", std::move(pieces)}};
}

ReturnDecomposition decomposition_from_json(const json& j)
{
    ReturnDecomposition dec;
    dec.theta = need(j, "theta").get<double>();
    const auto z = need(j, "Z").get<std::vector<double>>();
    if (z.size() != 2) {
        throw std::invalid_argument("Z must be [z0, z1]");
    }
    dec.z0 = z[0];
    dec.z1 = z[1];
    for (const auto& pc : need(j, "pieces")) {
        ReturnPiece piece;
        piece.m = need(pc, "m").get<int>();
        for (const auto& iv : need(pc, "intervals")) {
            piece.intervals.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
        }
        dec.pieces.push_back(std::move(piece));
    }
    return dec;
}

json to_json(const DimDropPath& path)
{
    json u = json::array();
    json f = json::array();
    json g = json::array();
    for (std::size_t k = 0; k < path.grid.size(); ++k) {
        u.push_back(complex_matrix(path.u[k]));
        json fk = json::array();
        for (const auto& m : path.f[k]) {
            fk.push_back(complex_matrix(m));
        }
        json gk = json::array();
        for (const auto& m : path.g[k]) {
            gk.push_back(complex_matrix(m));
        }
        f.push_back(std::move(fk));
        g.push_back(std::move(gk));
    }
    return {{"p", path.p}, {"grid", path.grid}, {"h", path.h}, {"u", u}, {"f", f}, {"g", g}};
}

DimDropPath path_from_json(const json& j)
{
    DimDropPath path;
    path.p = need(j, "p").get<int>();
    if (path.p < 2) {
        throw std::invalid_argument("path needs p >= 2");
    }
    const int dim = path.p * (path.p + 1);
    path.grid = need(j, "grid").get<std::vector<double>>();
    path.h = j.value("h", std::vector<double>{});
    for (const auto& m : need(j, "u")) {
        path.u.push_back(complex_matrix_from(m, dim));
    }
    for (const auto& fk : need(j, "f")) {
        std::vector<CMatrix> row;
        for (const auto& m : fk) {
            row.push_back(complex_matrix_from(m, dim));
        }
        path.f.push_back(std::move(row));
    }
    for (const auto& gk : need(j, "g")) {
        std::vector<CMatrix> row;
        for (const auto& m : gk) {
            row.push_back(complex_matrix_from(m, dim));
        }
        path.g.push_back(std::move(row));
    }
    return path;
}

}  // namespace rokhlin::io
