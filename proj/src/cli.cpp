#include "rokhlin/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rokhlin/crossed_fd.hpp"
#include "rokhlin/dimension_drop.hpp"
#include "rokhlin/io.hpp"
#include "rokhlin/matrix_models.hpp"
#include "rokhlin/models.hpp"
#include "rokhlin/return_times.hpp"
#include "rokhlin/rotation_towers.hpp"
#include "rokhlin/towers.hpp"

namespace rokhlin::cli {

using nlohmann::json;

void Report::add(std::string name, double measured, double bound, bool ok)
{
    checks.push_back({std::move(name), measured, bound, ok});
}

void Report::at_most(std::string name, double measured, double bound)
{
    add(std::move(name), measured, bound, measured <= bound);
}

void Report::below(std::string name, double measured, double bound)
{
    add(std::move(name), measured, bound, measured < bound);
}

void Report::holds(std::string name, bool ok) { add(std::move(name), ok ? 1.0 : 0.0, 1.0, ok); }

bool Report::pass() const
{
    for (const auto& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

json Report::to_json(double wall_time_s) const
{
    std::vector<Check> sorted = checks;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    json cs = json::array();
    for (const auto& c : sorted) {
        cs.push_back({{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"pass", c.pass}});
    }
    return {{"command", command},   {"args", args},      {"input_hashes", input_hashes}, {"checks", cs},
            {"pass", pass()},       {"wall_time_s", wall_time_s}, {"data", data}};
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

// Tolerance used when a system declares epsilon = 0 (exact towers).
constexpr double kExactTolerance = 1e-12;

json load_json(const std::string& path, Report& rep)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    rep.input_hashes[path] = fnv1a_hex(text);
    return json::parse(text);
}

// Reports hold their payload under "data".
const json& payload(const json& j) { return j.contains("data") && j.contains("command") ? j.at("data") : j; }

template <class E>
double max_lipschitz(const TowerSystem<E>& sys)
{
    double m = 0.0;
    for (const auto& c : sys.colors) {
        for (const auto& t : c.towers) {
            for (const auto& e : t) {
                m = std::max(m, e.lipschitz());
            }
        }
    }
    return m;
}

void add_rokhlin_checks(Report& rep, const RokhlinReport& r, double eps, const std::string& prefix = "")
{
    rep.below(prefix + "cond1_max_overlap", r.cond1_max_overlap, eps);
    rep.below(prefix + "cond2_sum_deviation", r.cond2_sum_deviation, eps);
    rep.add(prefix + "cond2prime_min_value", r.cond2prime_min_value, 1.0 - eps, r.cond2prime_min_value > 1.0 - eps);
    rep.below(prefix + "cond3_max_shift_error", r.cond3_max_shift_error, eps);
    rep.below(prefix + "cond4_wrap_error", r.cond4_wrap_error, eps);
    rep.below(prefix + "cond5_max_commutator", r.cond5_max_commutator, eps);
    rep.below(prefix + "commuting_towers_max", r.commuting_towers_max, eps);
}

template <class E, class M>
bool all_positive(const TowerSystem<E>& sys, const M& model)
{
    for (const auto& c : sys.colors) {
        for (const auto& t : c.towers) {
            for (const auto& e : t) {
                if (!model.is_positive_contraction(e)) {
                    return false;
                }
            }
        }
    }
    return true;
}

PermutationModel z_model(const io::ActionSpec& spec)
{
    if (spec.permutation) {
        return PermutationModel(*spec.permutation);
    }
    if (spec.finite && spec.finite->group().cyclic_order() > 1) {
        return PermutationModel(spec.finite->table()[1]);
    }
    if (spec.finite && spec.finite->group().cyclic_order() == 1) {
        return PermutationModel(spec.finite->table()[0]);
    }
    throw std::invalid_argument("a Z-mode system over a finite set needs a permutation or a cyclic action");
}

// Verifies a tower system against its action and appends the checks.
void verify_system(Report& rep, const io::AnySystem& any, const io::ActionSpec& spec, std::optional<double> eps_override,
                   double grid_step)
{
    const double declared = std::visit([](const auto& s) { return s.epsilon; }, any);
    const double eps = eps_override ? *eps_override : (declared > 0.0 ? declared : kExactTolerance);
    rep.data["epsilon_used"] = eps;
    RokhlinReport r;
    if (const auto* pl = std::get_if<TowerSystem<PLFunction>>(&any)) {
        if (!spec.rotation) {
            throw std::invalid_argument("a system of PL functions needs a rotation action");
        }
        if (pl->mode != TowerMode::z) {
            throw std::invalid_argument("PL systems are verified in Z mode");
        }
        const CircleRotationModel model(spec.rotation->value, grid_step);
        const bool positive = all_positive(*pl, model);
        rep.holds("positive_contractions", positive);
        if (!positive) {
            return;
        }
        r = verify_z_towers(*pl, model);
    } else {
        const auto& sys = std::get<TowerSystem<FiniteFunction>>(any);
        if (sys.mode == TowerMode::z) {
            const PermutationModel model = z_model(spec);
            const bool positive = all_positive(sys, model);
            rep.holds("positive_contractions", positive);
            if (!positive) {
                return;
            }
            r = verify_z_towers(sys, model);
        } else {
            if (!spec.finite) {
                throw std::invalid_argument("a group-mode system needs a finite group action");
            }
            const GroupFunctionModel model(*spec.finite);
            const bool positive = all_positive(sys, model);
            rep.holds("positive_contractions", positive);
            if (!positive) {
                return;
            }
            r = verify_finite_group_towers(sys, model);
        }
    }
    r.epsilon = eps;
    r.pass = r.meets(eps);
    rep.data["rokhlin"] = io::to_json(r);
    add_rokhlin_checks(rep, r, eps);
}

void rotation_command(Report& rep, const std::string& theta_text, int p, double eps)
{
    const ParsedReal theta = parse_real(theta_text);
    const RotationTowers rt = build_rotation_towers(theta.value, p, eps);
    const auto& cert = rt.certificate;
    const RokhlinReport r = verify_z_towers(rt.system, CircleRotationModel(theta.value));

    rep.at_most("orthogonality", r.cond1_max_overlap, 1e-12);
    rep.at_most("sum_deviation", r.cond2_sum_deviation, 1e-12);
    rep.at_most("shift_error_certified", cert.measured_shift_bound.certified, cert.analytic_shift_bound);
    rep.at_most("shift_error_vs_approximation", cert.measured_shift_bound.certified,
                cert.approximation_bound + cert.measured_shift_bound.slack + 1e-12);
    rep.at_most("shift_error_exact", std::max(r.cond3_max_shift_error, r.cond4_wrap_error), cert.approximation_bound + 1e-12);
    rep.below("analytic_bound_vs_eps", cert.analytic_shift_bound, eps);
    rep.at_most("gamma_equivariance", cert.gamma_equivariance_error, 1e-12);
    const double lip = max_lipschitz(rt.system);
    rep.add("lipschitz", lip, cert.lipschitz_bound, std::abs(lip - cert.lipschitz_bound) <= 1e-9 * cert.lipschitz_bound);
    rep.holds("rokhlin_conditions", r.pass);

    rep.data["theta"] = {{"text", theta.text}, {"value", theta.value}, {"parse_error_bound", theta.parse_error_bound}};
    rep.data["certificate"] = io::to_json(cert);
    rep.data["rokhlin"] = io::to_json(r);
    rep.data["system"] = io::to_json(rt.system);
    rep.data["action"] = io::rotation_action_json(theta);
}

void add_splice_checks(Report& rep, const SpliceMap& mu, double delta, std::uint64_t seed)
{
    const SpliceReport s = verify_splice(mu, delta, seed);
    rep.holds("order_zero", s.order_zero);
    rep.holds("image_shiftable", s.shiftable);
    rep.at_most("max_shift_error", s.basis_shift_error, delta + 1e-12);
    rep.at_most("interior_shift_error", s.interior_shift_error, 1e-12);
    rep.add("wrap_shift_error", s.wrap_shift_error, 1.0 / mu.Lbar, std::abs(s.wrap_shift_error - 1.0 / mu.Lbar) <= 1e-12);
    rep.at_most("unit_ball_shift_error", s.unit_ball_shift_error, delta + 1e-12);
    rep.add("unit_ball_matches_basis", s.unit_ball_shift_error, s.basis_shift_error,
            std::abs(s.unit_ball_shift_error - s.basis_shift_error) <= 1e-12);
    rep.at_most("random_shift_ratio", s.random_shift_ratio, delta + 1e-12);
    rep.add("coverage_min", s.coverage_min, 1.0, s.coverage_min >= 1.0 - 1e-12);
    rep.data["max_shift_error"] = s.basis_shift_error;
    rep.data["coverage"] = s.coverage;
    rep.data["unit_image"] = mu.unit_image();
}

void add_dimdrop_checks(Report& rep, const DimDropPath& path)
{
    const DimDropReport d = verify_dimension_drop(path);
    rep.at_most("f_products", d.f_products, kDimDropTolerance);
    rep.at_most("g_products", d.g_products, kDimDropTolerance);
    rep.at_most("fg_commutators", d.fg_commutators, kDimDropTolerance);
    rep.at_most("sum_deviation", d.sum_deviation, kDimDropTolerance);
    rep.at_most("f_conjugation", d.f_conjugation, kDimDropTolerance);
    rep.at_most("g_conjugation", d.g_conjugation, kDimDropTolerance);
    rep.at_most("positivity_defect", d.positivity_defect, kDimDropTolerance);
    rep.at_most("unitarity", d.unitarity, kUnitarityTolerance);
    rep.at_most("boundary", d.boundary, kBoundaryTolerance);
    rep.data["continuity_constant"] = d.continuity_constant;
}

void add_partition_checks(Report& rep, const ReturnDecomposition& dec, int samples, std::uint64_t seed)
{
    const PartitionReport pr = verify_partition(dec, samples, seed);
    rep.add("total_measure", pr.total_measure, 1.0, pr.measure_error <= 1e-9);
    rep.at_most("length_deficit", pr.length_deficit, 1e-9);
    rep.at_most("multiplicity_violations", pr.bad_samples, 0.0);
    rep.holds("return_times_increasing", pr.times_increasing);
    rep.holds("pieces_disjoint", pr.pieces_disjoint);
    rep.at_most("distinct_return_times", static_cast<double>(dec.pieces.size()), 3.0);
}

void return_times_command(Report& rep, const std::string& theta_text, double z0, double z1, int max_time, int samples,
                          std::uint64_t seed)
{
    const ParsedReal theta = parse_real(theta_text);
    if (max_time <= 0) {
        max_time = default_max_time(z0, z1);
    }
    const ReturnDecomposition dec = decompose_returns(theta.value, z0, z1, max_time);
    add_partition_checks(rep, dec, samples, seed);

    // direct iteration against the piece lookup
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> unif(z0, z1);
    int mismatches = 0;
    for (int s = 0; s < 1000; ++s) {
        const double t = unif(rng);
        const int direct = first_return_time(theta.value, z0, z1, t, max_time);
        int tabulated = 0;
        for (const auto& pc : dec.pieces) {
            for (const auto& iv : pc.intervals) {
                if (iv.contains(t)) {
                    tabulated = pc.m;
                }
            }
        }
        mismatches += direct == tabulated ? 0 : 1;
    }
    rep.at_most("orbit_consistency_mismatches", mismatches, 0.0);
    rep.data["theta"] = {{"text", theta.text}, {"value", theta.value}, {"parse_error_bound", theta.parse_error_bound}};
    rep.data["max_time"] = max_time;
    rep.data["decomposition"] = io::to_json(dec);
}

FiniteFunction random_function(int size, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    FiniteFunction a(size);
    for (double& v : a) {
        v = unif(rng);
    }
    return a;
}

void crossed_command(Report& rep, const io::ActionSpec& spec, bool free_towers, bool rho_demo,
                     const std::vector<double>& etas, std::uint64_t seed)
{
    if (!spec.finite) {
        throw std::invalid_argument("crossed needs a finite group action");
    }
    const FiniteAction& action = *spec.finite;
    const auto& G = action.group();
    const int n = G.order();
    std::mt19937_64 rng(seed);

    double covariance = 0.0;
    double unit_error = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const FiniteFunction a = random_function(action.size(), rng);
        for (int h = 0; h < n; ++h) {
            const CPBlockMatrix lam = embed_unitary(action, h);
            const CPBlockMatrix lhs = lam * embed_function(action, a) * lam.adjoint();
            covariance = std::max(covariance, (lhs - embed_function(action, action.apply(h, a))).op_norm());
        }
    }
    double group_law = 0.0;
    for (int g = 0; g < n; ++g) {
        const CPBlockMatrix lam = embed_unitary(action, g);
        unit_error = std::max(unit_error, (embed_function(action, FiniteFunction(action.size(), 1.0)) * lam - lam).op_norm());
        for (int h = 0; h < n; ++h) {
            group_law =
                std::max(group_law, (lam * embed_unitary(action, h) - embed_unitary(action, G.multiply(g, h))).op_norm());
        }
    }
    rep.at_most("covariance_identity", covariance, 1e-12);
    rep.at_most("unitary_group_law", group_law, 1e-12);
    rep.at_most("unit_times_unitary", unit_error, 1e-12);
    rep.data["free"] = action.is_free();
    rep.data["action"] = io::to_json(action);

    if (!free_towers && !rho_demo) {
        return;
    }
    const TowerSystem<FiniteFunction> towers = free_action_towers(action);
    if (free_towers) {
        const RokhlinReport r = verify_finite_group_towers(towers, GroupFunctionModel(action));
        rep.data["system"] = io::to_json(towers);
        rep.data["rokhlin"] = io::to_json(r);
        add_rokhlin_checks(rep, r, kExactTolerance, "towers_");
    }
    if (rho_demo) {
        std::vector<FiniteFunction> tests;
        for (int t = 0; t < 4; ++t) {
            tests.push_back(random_function(action.size(), rng));
        }
        tests.push_back(FiniteFunction(action.size(), 1.0));
        const RhoReport exact = rho_check(action, towers, tests, seed);
        rep.at_most("rho_identity_exact", exact.identity_error, 1e-12);
        rep.at_most("rho_unit", exact.unit_defect, 1e-12);
        rep.at_most("rho_positivity_defect", exact.positivity_defect, 1e-12);
        json perturbed = json::array();
        for (double eta : etas) {
            const TowerSystem<FiniteFunction> noisy = perturb_towers(towers, eta, seed);
            const RhoReport rr = rho_check(action, noisy, tests, seed);
            std::ostringstream name;
            name << "rho_perturbed_eta_" << eta;
            rep.at_most(name.str(), rr.identity_error, rr.bound);
            rep.at_most(name.str() + "_positivity_defect", rr.positivity_defect, 1e-12);
            const int d = static_cast<int>(noisy.colors.size()) - 1;
            perturbed.push_back({{"eta_nominal", eta},
                                 {"eta_measured", rr.eta},
                                 {"bound_measured", rr.bound},
                                 {"bound_nominal", (2.0 * (d + 1) * n + 1.0) * eta},
                                 {"identity_error", rr.identity_error}});
        }
        rep.data["rho_perturbed"] = perturbed;
    }
}

io::ActionSpec resolve_action(const std::string& action_path, const json& body, Report& rep, json& action_json)
{
    if (!action_path.empty()) {
        action_json = load_json(action_path, rep);
    } else if (body.contains("action")) {
        action_json = body.at("action");
    } else {
        return {};
    }
    return io::action_from_json(action_json);
}

bool has_action(const io::ActionSpec& s) { return s.finite || s.rotation || s.permutation; }

struct TransformOptions {
    bool double_to_single = false;
    int multi_to_double = 0;
    int fold = 0;
    std::string second_family = "all";
    std::optional<double> target_eps;
};

void transform_command(Report& rep, const std::string& in_path, const std::string& action_path,
                       const TransformOptions& opt, double grid_step)
{
    const json root = load_json(in_path, rep);
    const json& body = payload(root);
    const io::AnySystem input = io::system_from_json(body.contains("system") ? body.at("system") : body);
    json action_json;
    const io::ActionSpec spec = resolve_action(action_path, body, rep, action_json);
    if (opt.second_family != "all" && opt.second_family != "skip-first") {
        throw std::invalid_argument("--second-family must be all or skip-first");
    }
    const SecondFamilyColors family =
        opt.second_family == "skip-first" ? SecondFamilyColors::skip_first : SecondFamilyColors::all;

    const io::AnySystem output = std::visit(
        [&](const auto& sys) -> io::AnySystem {
            using S = std::decay_t<decltype(sys)>;
            using E = typename S::element_type;
            if (opt.double_to_single) {
                return double_to_single(pad_to_double(sys), family, opt.target_eps);
            }
            if (opt.multi_to_double > 0) {
                std::vector<std::vector<Tower<E>>> colors;
                for (const auto& c : sys.colors) {
                    colors.push_back(c.towers);
                }
                return multi_to_double(colors, opt.multi_to_double, sys.epsilon);
            }
            return fold(sys, opt.fold);
        },
        input);

    rep.data["transform"] = opt.double_to_single ? "double-to-single" : (opt.multi_to_double > 0 ? "multi-to-double" : "fold");
    rep.data["input_epsilon"] = std::visit([](const auto& s) { return s.epsilon; }, input);
    rep.data["output_epsilon"] = std::visit([](const auto& s) { return s.epsilon; }, output);
    rep.data["system"] = io::to_json(output);
    if (has_action(spec)) {
        rep.data["action"] = action_json;
        verify_system(rep, output, spec, std::nullopt, grid_step);
    }
}

void verify_command(Report& rep, const std::string& in_path, const std::string& action_path,
                    std::optional<double> eps, double grid_step, int samples, std::uint64_t seed)
{
    const json root = load_json(in_path, rep);
    const json& body = payload(root);
    if (body.contains("system") || body.contains("mode")) {
        const io::AnySystem sys = io::system_from_json(body.contains("system") ? body.at("system") : body);
        json action_json;
        const io::ActionSpec spec = resolve_action(action_path, body, rep, action_json);
        if (!has_action(spec)) {
            throw std::invalid_argument("verify needs an action: pass --action or use a report that records one");
        }
        rep.data["kind"] = "towers";
        verify_system(rep, sys, spec, eps, grid_step);
        return;
    }
    if (body.contains("splice")) {
        const SpliceMap mu = io::splice_from_json(body.at("splice"));
        rep.data["kind"] = "splice";
        add_splice_checks(rep, mu, eps ? *eps : mu.delta, seed);
        return;
    }
    if (body.contains("decomposition")) {
        rep.data["kind"] = "decomposition";
        add_partition_checks(rep, io::decomposition_from_json(body.at("decomposition")), samples, seed);
        return;
    }
    if (body.contains("path")) {
        rep.data["kind"] = "dimdrop";
        add_dimdrop_checks(rep, io::path_from_json(body.at("path")));
        return;
    }
    if (body.contains("p") && body.contains("grid") && root.value("command", std::string()) == "dimdrop") {
        // reports without the sampled path record only the parameters
        rep.data["kind"] = "dimdrop";
        rep.data["rebuilt"] = true;
        add_dimdrop_checks(rep, build_dimension_drop(body.at("p").get<int>(), body.at("grid").get<int>()));
        return;
    }
    throw std::invalid_argument("nothing to verify in " + in_path);
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_real(item).value);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list");
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rokhlin tower constructions and their verifiers"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    std::uint64_t seed = 0;
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

    std::string theta_text;
    int p = 0;
    double eps = 0.0;
    auto* rot = app.add_subcommand("rotation-towers", "single towers for an irrational rotation");
    rot->add_option("--theta", theta_text, "rotation angle in turns, as decimal text")->required();
    rot->add_option("--p", p, "prime tower height")->required();
    rot->add_option("--eps", eps, "target tolerance")->required();

    int k = 0;
    double delta = 0.0;
    int r = 0;
    auto* splice = app.add_subcommand("splice", "order zero splice map into the diagonal of M_r");
    splice->add_option("--k", k)->required();
    splice->add_option("--delta", delta)->required();
    splice->add_option("--r", r)->required();

    int grid = 0;
    bool emit_path = false;
    auto* dimdrop = app.add_subcommand("dimdrop", "unitary path and towers in the dimension drop algebra");
    dimdrop->add_option("--p", p)->required();
    dimdrop->add_option("--grid", grid, "number of grid intervals, a multiple of 3")->required();
    dimdrop->add_flag("--emit-path", emit_path, "include the sampled matrices in the report");

    double z0 = 0.0;
    double z1 = 1.0;
    int max_time = 0;
    int samples = 10000;
    auto* ret = app.add_subcommand("return-times", "first return times of a rotation to [z0, z1)");
    ret->add_option("--theta", theta_text)->required();
    ret->add_option("--z0", z0)->required();
    ret->add_option("--z1", z1)->required();
    ret->add_option("--max-time", max_time, "default 10 * ceil(1 / (z1 - z0))");
    ret->add_option("--samples", samples)->capture_default_str();

    std::string action_path;
    bool free_towers = false;
    bool rho_demo = false;
    std::string etas_text = "0.001,0.01";
    auto* crossed = app.add_subcommand("crossed", "crossed product of a finite action as block matrices");
    crossed->add_option("--action", action_path)->required();
    crossed->add_flag("--free-towers", free_towers);
    crossed->add_flag("--rho-demo", rho_demo);
    crossed->add_option("--eta", etas_text, "comma separated perturbation sizes")->capture_default_str();

    std::string in_path;
    TransformOptions topt;
    double target_eps = 0.0;
    double grid_step = 0.0;
    auto* transform = app.add_subcommand("transform", "rearrange a tower system");
    transform->add_option("--in", in_path)->required();
    transform->add_option("--action", action_path, "verify the output against this action");
    auto* d2s = transform->add_flag("--double-to-single", topt.double_to_single);
    auto* m2d = transform->add_option("--multi-to-double", topt.multi_to_double, "target p");
    auto* fld = transform->add_option("--fold", topt.fold, "target p");
    d2s->excludes(m2d)->excludes(fld);
    m2d->excludes(fld);
    transform->add_option("--second-family", topt.second_family, "all or skip-first")->capture_default_str();
    auto* teps = transform->add_option("--target-eps", target_eps, "refuse heights too small for this tolerance");
    transform->add_option("--grid-step", grid_step, "certified grid step for PL distances (0: exact)");

    double verify_eps = 0.0;
    auto* verify = app.add_subcommand("verify", "check a tower system or a report");
    verify->add_option("--in", in_path)->required();
    verify->add_option("--action", action_path);
    auto* veps = verify->add_option("--eps", verify_eps, "tolerance (default: the system's epsilon)");
    verify->add_option("--grid-step", grid_step, "certified grid step for PL distances (0: exact)");
    verify->add_option("--samples", samples)->capture_default_str();

    std::vector<std::string> argv_store = {"rokhlin"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Report rep;
    rep.args = args;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (*rot) {
            rep.command = "rotation-towers";
            rotation_command(rep, theta_text, p, eps);
        } else if (*splice) {
            rep.command = "splice";
            const SpliceMap mu = build_splice(k, delta, r);
            add_splice_checks(rep, mu, delta, seed);
            rep.data["splice"] = io::to_json(mu);
        } else if (*dimdrop) {
            rep.command = "dimdrop";
            const DimDropPath path = build_dimension_drop(p, grid);
            add_dimdrop_checks(rep, path);
            rep.data["p"] = p;
            rep.data["grid"] = grid;
            rep.data["h"] = path.h;
            if (emit_path) {
                rep.data["path"] = io::to_json(path);
            }
        } else if (*ret) {
            rep.command = "return-times";
            return_times_command(rep, theta_text, z0, z1, max_time, samples, seed);
        } else if (*crossed) {
            rep.command = "crossed";
            const io::ActionSpec spec = io::action_from_json(load_json(action_path, rep));
            crossed_command(rep, spec, free_towers, rho_demo, parse_list(etas_text), seed);
        } else if (*transform) {
            rep.command = "transform";
            if (!topt.double_to_single && topt.multi_to_double <= 0 && topt.fold <= 0) {
                throw std::invalid_argument("transform needs --double-to-single, --multi-to-double P or --fold P");
            }
            if (teps->count() > 0) {
                topt.target_eps = target_eps;
            }
            transform_command(rep, in_path, action_path, topt, grid_step);
        } else if (*verify) {
            rep.command = "verify";
            std::optional<double> e;
            if (veps->count() > 0) {
                e = verify_eps;
            }
            verify_command(rep, in_path, action_path, e, grid_step, samples, seed);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << "\n";
        return 1;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.data["seed"] = seed;
    const json j = rep.to_json(wall);
    if (out_path.empty()) {
        out << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) {
            err << "error: cannot write " << out_path << "\n";
            return 2;
        }
        f << j.dump(2) << "\n";
    }
    for (const auto& c : rep.checks) {
        if (!c.pass) {
            err << "check failed: " << c.name << " measured " << c.measured << " bound " << c.bound << "\n";
        }
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace rokhlin::cli
