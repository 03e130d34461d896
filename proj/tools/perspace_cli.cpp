// perspace_cli: persistence spaces of multi-filtered complexes from the command line.
//
// Exit codes: 0 pass, 1 a checked property failed, 2 bad input.

#include "perspace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace perspace;

namespace {

struct Globals {
    std::uint32_t field = 2;
    std::uint64_t seed = 0;
    std::vector<int> degrees;
    std::string output;
    bool csv = false;
};

void emit(const Globals& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw InputError("cannot write '" + g.output + "'");
    out << text;
}

void emit(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

// Requested degrees, or 0..dim when none were given.
std::vector<int> degrees_for(const Globals& g, const MultiFilteredComplex& K) {
    if (!g.degrees.empty()) {
        for (int k : g.degrees)
            if (k < 0) throw PreconditionError("degree must be non-negative");
        return g.degrees;
    }
    std::vector<int> out;
    for (int k = 0; k <= std::max(K.dimension(), 0); ++k) out.push_back(k);
    return out;
}

Grade grade_arg(const std::string& text, const MultiFilteredComplex& K) {
    Grade g = parse_grade(text);
    if (g.size() != K.parameter_count())
        throw DimensionMismatch("grade '" + text + "' has " + std::to_string(g.size()) + " coordinates, complex has " +
                                std::to_string(K.parameter_count()));
    return g;
}

int cmd_compute(const Globals& g, const std::string& path) {
    auto K = load_complex(path);
    PbnEvaluator beta(K, FieldPrime(g.field));
    auto rays = default_ray_family(K);
    std::vector<Cornerpoint> all;
    Json out{{"complex", path}, {"parameters", K.parameter_count()}, {"field", g.field},
             {"rays", {{"family", "diagonal grid and midpoints"}, {"count", rays.size()}}},
             {"degrees", Json::array()}};
    for (int k : degrees_for(g, K)) {
        auto pts = sample_space(beta, k, rays);
        out["degrees"].push_back(sample_to_json(k, pts));
        all.insert(all.end(), pts.begin(), pts.end());
    }
    if (g.csv) emit(g, cornerpoints_csv(all));
    else emit(g, out);
    return 0;
}

int cmd_pbn(const Globals& g, const std::string& path, const std::string& u_text, const std::string& v_text) {
    auto K = load_complex(path);
    Grade u = grade_arg(u_text, K), v = grade_arg(v_text, K);
    PbnEvaluator beta(K, FieldPrime(g.field));
    if (!weakly_below(u, v)) throw PreconditionError("pbn needs u ⪯ v");
    Json out = Json::array();
    for (int k : degrees_for(g, K))
        out.push_back({{"degree", k}, {"u", to_json(u)}, {"v", to_json(v)}, {"value", beta(k, u, v)}});
    emit(g, out);
    return 0;
}

int cmd_mu(const Globals& g, const std::string& path, const std::string& u_text, const std::string& v_text) {
    auto K = load_complex(path);
    Grade u = grade_arg(u_text, K);
    std::optional<Grade> v;
    if (!v_text.empty()) v = grade_arg(v_text, K);
    PbnEvaluator beta(K, FieldPrime(g.field));
    Json out = Json::array();
    for (int k : degrees_for(g, K)) {
        Json row{{"degree", k}, {"u", to_json(u)}};
        if (v) {
            row["v"] = to_json(*v);
            row["epsilon"] = to_string(stabilization_radius(K, u, *v).epsilon);
            row["multiplicity"] = mu_proper(beta, k, u, *v);
        } else {
            row["v"] = "inf";
            row["epsilon"] = to_string(stabilization_radius(K, std::vector<Grade>{u}).epsilon);
            row["multiplicity"] = mu_infinity(beta, k, u);
        }
        out.push_back(row);
    }
    emit(g, out);
    return 0;
}

int cmd_window(const Globals& g, const std::string& path, const std::string& u_text, const std::string& v_text,
               const std::string& e_text) {
    auto K = load_complex(path);
    Grade u = grade_arg(u_text, K), e = grade_arg(e_text, K);
    std::optional<Grade> v;
    if (!v_text.empty()) v = grade_arg(v_text, K);
    PbnEvaluator beta(K, FieldPrime(g.field));
    Json out = Json::array();
    for (int k : degrees_for(g, K)) {
        Json row{{"degree", k}, {"u", to_json(u)}, {"e", to_json(e)}};
        row["v"] = v ? to_json(*v) : Json("inf");
        row["count"] = v ? window_count_proper(beta, k, u, *v, e) : window_count_infinity(beta, k, u, e);
        out.push_back(row);
    }
    emit(g, out);
    return 0;
}

struct ReconstructOptions {
    std::string path;
    std::size_t trials = 20;
    RandomComplexSpec spec;
};

int cmd_reconstruct(const Globals& g, const ReconstructOptions& o) {
    Sampler rng(g.seed);
    std::size_t checks = 0, mismatches = 0, diagram_checks = 0, diagram_mismatches = 0;
    Json failures = Json::array();
    std::optional<MultiFilteredComplex> fixed;
    if (!o.path.empty()) fixed = load_complex(o.path);
    FieldPrime field(g.field);

    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        auto K = fixed ? *fixed : random_complex(o.spec, g.seed * 1000003 + trial);
        PbnEvaluator beta(K, field);
        auto [u, v] = random_proper_pair(rng, K.grid());
        auto e = random_direction(rng, K.parameter_count());
        for (int k : degrees_for(g, K)) {
            auto section = ray_section(beta, k, u, v, e);
            auto expected = beta(k, u, v);
            auto got = reconstruct_pbn(section);
            ++checks;
            if (got != expected) {
                ++mismatches;
                failures.push_back({{"trial", trial}, {"degree", k}, {"u", to_json(u)}, {"v", to_json(v)},
                                    {"e", to_json(e)}, {"pbn", expected}, {"reconstructed", got}});
            }
            if (K.parameter_count() == 1) {
                std::map<std::pair<Rational, std::optional<Rational>>, std::size_t> a, b;
                for (const auto& c : sample_space(beta, k))
                    a[{c.u[0], c.v ? std::optional<Rational>((*c.v)[0]) : std::nullopt}] += c.multiplicity;
                for (const auto& p : diagram_1d(K, k, field)) b[{p.birth, p.death}] += 1;
                ++diagram_checks;
                if (a != b) {
                    ++diagram_mismatches;
                    failures.push_back({{"trial", trial}, {"degree", k}, {"diagram_mismatch", true}});
                }
            }
        }
    }
    bool pass = mismatches == 0 && diagram_mismatches == 0;
    Json out{{"trials", o.trials}, {"checks", checks}, {"matches", checks - mismatches}, {"pass", pass},
             {"failures", failures}};
    if (diagram_checks) out["diagram_checks"] = diagram_checks;
    emit(g, out);
    return pass ? 0 : 1;
}

struct StabilityArgs {
    std::string f_path, g_path, perturb, margin;
    std::size_t path_steps = 0;
};

int cmd_stability(const Globals& g, const StabilityArgs& a) {
    auto f = load_complex(a.f_path);
    MultiFilteredComplex other = f;
    if (!a.g_path.empty() && !a.perturb.empty()) throw PreconditionError("give a second complex or --perturb, not both");
    if (!a.g_path.empty()) other = load_complex(a.g_path);
    else if (!a.perturb.empty()) {
        auto bound = parse_rational(a.perturb);
        if (bound < 0) throw PreconditionError("perturbation bound must be non-negative");
        other = perturb(f, bound, g.seed);
    } else throw PreconditionError("stability-check needs a second complex or --perturb");

    StabilityOptions options;
    options.field = FieldPrime(g.field);
    if (!a.margin.empty()) options.margin = parse_rational(a.margin);

    auto degrees = g.degrees.empty() ? std::vector<int>{0} : degrees_for(g, f);
    bool pass = true;
    Json reports = Json::array(), path = Json::array();
    std::vector<Cornerpoint> csv_points;
    for (int k : degrees) {
        auto r = stability_check(f, other, k, options);
        pass = pass && r.pass;
        reports.push_back(to_json(r));
        for (const auto& v : r.direction_fg) csv_points.push_back(v.point);
    }
    for (std::size_t step = 0; step < a.path_steps; ++step) {
        auto lo = interpolate(f, other, Rational(step, a.path_steps));
        auto hi = interpolate(f, other, Rational(step + 1, a.path_steps));
        for (int k : degrees) {
            auto r = stability_check(lo, hi, k, options);
            pass = pass && r.pass;
            Json j = to_json(r);
            j["step"] = step;
            path.push_back(j);
        }
    }
    if (g.csv) {
        emit(g, cornerpoints_csv(csv_points));
    } else {
        Json out{{"epsilon", to_string(sup_norm_distance(f, other))}, {"reports", reports}, {"pass", pass}};
        if (a.path_steps) out["path"] = path;
        emit(g, out);
    }
    return pass ? 0 : 1;
}

int cmd_diagram(const Globals& g, const std::string& path) {
    auto K = load_complex(path);
    if (K.parameter_count() != 1) throw PreconditionError("diagram needs a one-parameter complex");
    Json out = Json::array();
    for (int k : degrees_for(g, K)) {
        Json pairs = Json::array();
        for (const auto& p : diagram_1d(K, k, FieldPrime(g.field)))
            pairs.push_back({{"birth", to_string(p.birth)}, {"death", p.death ? to_string(*p.death) : "inf"}});
        out.push_back({{"degree", k}, {"pairs", pairs}});
    }
    emit(g, out);
    return 0;
}

struct CriticalArgs {
    std::string path;
    std::vector<std::string> at;
    std::size_t probes = 50;
};

int cmd_critical(const Globals& g, const CriticalArgs& a) {
    auto K = load_complex(a.path);
    PbnEvaluator beta(K, FieldPrime(g.field));
    bool pass = true;
    Json out{{"degrees", Json::array()}};
    Sampler rng(g.seed);
    for (int k : degrees_for(g, K)) {
        Json cornerpoints = Json::array(), probes = Json::array(), explicit_probes = Json::array();
        for (const auto& c : sample_space(beta, k)) {
            auto r = check_cornerpoint_critical(beta, c);
            pass = pass && r.pass;
            cornerpoints.push_back(to_json(r));
        }
        // Regular-value property: points off every grid line are never critical.
        std::size_t regular = 0;
        for (std::size_t t = 0; t < a.probes && !K.empty(); ++t) {
            Grade u = random_grade(rng, K.grid());
            for (std::size_t ax = 0; ax < u.size(); ++ax)
                while (K.grid().on_grid(ax, u[ax])) u[ax] += Rational(1, 7);
            auto w = is_homological_critical(beta, k, u);
            if (w) {
                pass = false;
                probes.push_back(to_json(*w));
            } else {
                ++regular;
            }
        }
        for (const auto& text : a.at) {
            Grade u = grade_arg(text, K);
            auto w = is_homological_critical(beta, k, u);
            explicit_probes.push_back({{"u", to_json(u)}, {"critical", w.has_value()},
                                       {"witness", w ? to_json(*w) : Json(nullptr)}});
        }
        Json row{{"degree", k}, {"cornerpoints", cornerpoints},
                 {"off_grid_probes", {{"count", K.empty() ? 0 : a.probes}, {"regular", regular}, {"failures", probes}}}};
        if (!a.at.empty()) row["probes"] = explicit_probes;
        out["degrees"].push_back(row);
    }
    out["pass"] = pass;
    emit(g, out);
    return pass ? 0 : 1;
}

int cmd_random(const Globals& g, const RandomComplexSpec& spec) {
    if (spec.vertices == 0 || spec.parameters == 0 || spec.grid_size == 0 || spec.max_simplices == 0 ||
        spec.dimension < 0 || spec.grid_step <= 0)
        throw PreconditionError("random-complex sizes must be positive");
    auto K = random_complex(spec, g.seed);
    auto report = validate(K);
    if (!report.ok()) {
        std::cerr << "generated complex failed validation: " << report.summary() << "\n";
        return 1;
    }
    emit(g, write_complex(K));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence spaces of multi-filtered simplicial complexes"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--field", g.field, "prime field F_p for homology")->default_val(2);
    app.add_option("--seed", g.seed, "random seed")->default_val(0);
    app.add_option("--degree", g.degrees, "homology degrees (list)")->delimiter(',');
    app.add_option("--output", g.output, "write output to this path");
    app.add_flag("--csv", g.csv, "emit cornerpoint CSV instead of JSON");

    std::string path, u_text, v_text, e_text;
    std::function<int()> run;

    auto* compute = app.add_subcommand("compute", "sample the persistence space on the default ray family");
    compute->add_option("complex", path)->required();
    compute->callback([&] { run = [&] { return cmd_compute(g, path); }; });

    auto* pbn_cmd = app.add_subcommand("pbn", "persistent Betti number β(u, v)");
    pbn_cmd->add_option("complex", path)->required();
    pbn_cmd->add_option("-u,--u", u_text, "grade u, comma separated")->required();
    pbn_cmd->add_option("-v,--v", v_text, "grade v, comma separated")->required();
    pbn_cmd->callback([&] { run = [&] { return cmd_pbn(g, path, u_text, v_text); }; });

    auto* mu_cmd = app.add_subcommand("mu", "multiplicity of (u, v), or of (u, inf) without --v");
    mu_cmd->add_option("complex", path)->required();
    mu_cmd->add_option("-u,--u", u_text)->required();
    mu_cmd->add_option("-v,--v", v_text);
    mu_cmd->callback([&] { run = [&] { return cmd_mu(g, path, u_text, v_text); }; });

    auto* window = app.add_subcommand("window-count", "cornerpoints in the diagonal window of (u, v) or (u, inf)");
    window->add_option("complex", path)->required();
    window->add_option("-u,--u", u_text)->required();
    window->add_option("-v,--v", v_text);
    window->add_option("-e,--e", e_text, "window direction e ≻ 0")->required();
    window->callback([&] { run = [&] { return cmd_window(g, path, u_text, v_text, e_text); }; });

    ReconstructOptions rec;
    std::string grid_step = "1/2";
    auto* reconstruct = app.add_subcommand("reconstruct-check", "compare ray-section reconstructions with pbn");
    reconstruct->add_option("complex", rec.path, "use this complex instead of random ones");
    reconstruct->add_option("--trials", rec.trials)->default_val(20);
    reconstruct->add_option("--parameters", rec.spec.parameters)->default_val(2);
    reconstruct->add_option("--vertices", rec.spec.vertices)->default_val(8);
    reconstruct->add_option("--max-simplices", rec.spec.max_simplices)->default_val(40);
    reconstruct->callback([&] { run = [&] { return cmd_reconstruct(g, rec); }; });

    StabilityArgs stab;
    auto* stability = app.add_subcommand("stability-check", "verify the Hausdorff stability bound");
    stability->add_option("f", stab.f_path)->required();
    stability->add_option("g", stab.g_path);
    stability->add_option("--perturb", stab.perturb, "generate g by seeded noise of at most this size");
    stability->add_option("--path-steps", stab.path_steps, "also check consecutive interpolates");
    stability->add_option("--margin", stab.margin, "window margin beyond epsilon");
    stability->callback([&] { run = [&] { return cmd_stability(g, stab); }; });

    auto* diagram = app.add_subcommand("diagram", "persistence diagram of a one-parameter complex");
    diagram->add_option("complex", path)->required();
    diagram->callback([&] { run = [&] { return cmd_diagram(g, path); }; });

    CriticalArgs crit;
    auto* critical = app.add_subcommand("critical-check", "cornerpoint coordinates are homological critical values");
    critical->add_option("complex", crit.path)->required();
    critical->add_option("--at", crit.at, "also report on these grades");
    critical->add_option("--probes", crit.probes, "random off-grid probes per degree")->default_val(50);
    critical->callback([&] { run = [&] { return cmd_critical(g, crit); }; });

    RandomComplexSpec spec;
    auto* random = app.add_subcommand("random-complex", "write a seeded random multi-filtered complex");
    random->add_option("--vertices,--size", spec.vertices)->default_val(8);
    random->add_option("-n,--parameters", spec.parameters)->default_val(2);
    random->add_option("--grid-size", spec.grid_size)->default_val(5);
    random->add_option("--grid-step", grid_step)->default_val("1/2");
    random->add_option("--dimension", spec.dimension)->default_val(2);
    random->add_option("--max-simplices", spec.max_simplices)->default_val(40);
    random->add_option("--edge-percent", spec.edge_percent)->default_val(50);
    random->callback([&] {
        run = [&] {
            spec.grid_step = parse_rational(grid_step);
            return cmd_random(g, spec);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        FieldPrime check(g.field);
        (void)check;
        return run();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
