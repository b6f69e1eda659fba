#include "qns/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qns/duhamel.hpp"
#include "qns/field_gen.hpp"
#include "qns/field_io.hpp"
#include "qns/norms.hpp"
#include "qns/solver.hpp"
#include "qns/spectral.hpp"

namespace qns {

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct Workspace {
    Grid grid;
    BallFamily family;
    TimeMesh mesh;
    std::vector<std::pair<std::string, ScalarField>> corpus;
};

Workspace make_workspace(const ExperimentConfig& cfg) {
    Grid grid(cfg.dims, {cfg.resolution, cfg.resolution, cfg.resolution}, cfg.box_length);
    return Workspace{grid, BallFamily::dyadic(grid, cfg.radius_levels, cfg.stride_factor),
                     TimeMesh(cfg.effective_t_cap(), cfg.ratio, cfg.levels),
                     scalar_corpus(grid)};
}

std::string alpha_label(double a) { return format_g17(a); }

ScalarField drop_mean(const ScalarField& f) {
    auto spec = f.fourier();
    spec[0] = 0.0;
    return ScalarField::from_fourier(f.grid(), std::move(spec));
}

// Seeded scalar trajectories for the lemma checks: two random spatial
// profiles blended by smooth functions of log t.
Trajectory lemma_trajectory(const Grid& grid, const TimeMesh& mesh, std::uint64_t seed) {
    FieldSpec sa, sb;
    sa.kind = FieldKind::random_smooth;
    sa.seed = seed * 2 + 1;
    sa.spectral_decay = 3.0;
    sb.kind = FieldKind::random_smooth;
    sb.seed = seed * 2 + 2;
    sb.spectral_decay = 2.5;
    ScalarField ga = generate_scalar(grid, sa);
    ScalarField gb = generate_scalar(grid, sb);
    std::vector<ScalarField> nodes;
    for (int k = 0; k < mesh.levels(); ++k) {
        double u = std::log(mesh.sample(k) / mesh.t_cap());
        nodes.push_back(ga * std::cos(0.35 * u) + gb * (0.5 * std::sin(0.21 * u)));
    }
    return Trajectory(mesh, std::move(nodes));
}

void run_norms(const ExperimentConfig& cfg, const Workspace& ws, RunResult& out) {
    ResultTable table;
    table.name = "norms";
    table.columns = norm_record_columns(cfg.dims);
    const double T = ws.mesh.t_cap();

    for (const auto& [name, f] : ws.corpus) {
        for (double a : cfg.alphas) {
            table.add_row(norm_record_row(name, "q_alpha", alpha_label(a), T,
                                          q_alpha_seminorm(f, a, ws.family), cfg.dims,
                                          cfg.seed));
            table.add_row(norm_record_row(name, "campanato", alpha_label(a), T,
                                          campanato_seminorm(f, a, ws.family), cfg.dims,
                                          cfg.seed));
            table.add_row(norm_record_row(name, "q_inverse", alpha_label(a), T,
                                          q_inverse_norm(f, a, T, ws.family, ws.mesh),
                                          cfg.dims, cfg.seed));
        }
        table.add_row(norm_record_row(name, "bmo", alpha_label(0.0), T,
                                      bmo_seminorm(f, ws.family), cfg.dims, cfg.seed));
        table.add_row(norm_record_row(name, "besov", alpha_label(0.0), T,
                                      besov_norm(f, ws.mesh), cfg.dims, cfg.seed));
        // alpha -> 1 limit column realized by the Morrey norms
        table.add_row(norm_record_row(name, "morrey2", "1(limit)", T,
                                      morrey_norm(f, 2, ws.family), cfg.dims, cfg.seed));
        table.add_row(norm_record_row(name, "morrey4", "1(limit)", T,
                                      morrey_norm(f, 4, ws.family), cfg.dims, cfg.seed));
    }
    out.tables.push_back(std::move(table));
}

void run_equiv(const ExperimentConfig& cfg, const Workspace& ws, RunResult& out) {
    const TentChoice choices[] = {TentChoice::poisson_dt, TentChoice::poisson_grad,
                                  TentChoice::heat_dt, TentChoice::heat_grad};
    // Dilation scales live on (0, L/8]: the largest ball radius.
    TimeMesh dilation(ws.grid.box() / 8.0, cfg.ratio, cfg.levels);

    ResultTable values;
    values.name = "tent_values";
    values.columns = {"field", "alpha", "choice", "value"};
    ResultTable ratios;
    ratios.name = "tent_ratios";
    ratios.columns = {"field", "alpha", "choice_a", "choice_b", "ratio"};

    for (const auto& [name, f] : ws.corpus) {
        for (double a : cfg.alphas) {
            double v[4];
            for (int c = 0; c < 4; ++c) {
                v[c] = tent_characterization(f, a, choices[c], ws.family, dilation).value;
                values.add_row({name, alpha_label(a), tent_choice_label(choices[c]),
                                format_g17(v[c])});
            }
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    double r = v[j] > 0.0 ? v[i] / v[j]
                                          : std::numeric_limits<double>::quiet_NaN();
                    ratios.add_row({name, alpha_label(a), tent_choice_label(choices[i]),
                                    tent_choice_label(choices[j]), format_g17(r)});
                }
        }
    }
    out.tables.push_back(std::move(values));
    out.tables.push_back(std::move(ratios));
}

void run_inclusions(const ExperimentConfig& cfg, const Workspace& ws, RunResult& out) {
    const double T = ws.mesh.t_cap();

    ResultTable morrey_dom;
    morrey_dom.name = "morrey_domination";
    morrey_dom.columns = {"field", "alpha", "q_inverse", "morrey2", "ratio"};
    ResultTable ordering;
    ordering.name = "alpha_ordering";
    ordering.columns = {"field", "alpha_lo", "alpha_hi", "value_lo", "value_hi", "ratio"};
    ResultTable heat_bound;
    heat_bound.name = "heat_morrey_bound";
    heat_bound.columns = {"field", "t", "morrey2_heat", "morrey2", "ratio"};
    ResultTable besov_dom;
    besov_dom.name = "besov_domination";
    besov_dom.columns = {"field", "besov", "q_inverse_alpha0", "ratio"};

    for (const auto& [name, f] : ws.corpus) {
        double m2 = morrey_norm(f, 2, ws.family).value;
        std::vector<double> qv;
        for (double a : cfg.alphas) {
            double q = q_inverse_norm(f, a, std::numeric_limits<double>::infinity(),
                                      ws.family, ws.mesh)
                           .value;
            qv.push_back(q);
            morrey_dom.add_row({name, alpha_label(a), format_g17(q), format_g17(m2),
                                format_g17(m2 > 0.0 ? q / m2 : 0.0)});
        }
        for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
            for (std::size_t j = i + 1; j < cfg.alphas.size(); ++j)
                ordering.add_row({name, alpha_label(cfg.alphas[i]), alpha_label(cfg.alphas[j]),
                                  format_g17(qv[i]), format_g17(qv[j]),
                                  format_g17(qv[j] > 0.0 ? qv[i] / qv[j] : 0.0)});
        for (int k = 0; k < ws.mesh.levels(); k += 4) {
            double t = ws.mesh.sample(k);
            double mh = morrey_norm(heat_semigroup(f, t), 2, ws.family).value;
            heat_bound.add_row({name, format_g17(t), format_g17(mh), format_g17(m2),
                                format_g17(m2 > 0.0 ? mh / m2 : 0.0)});
        }
        double bz = besov_norm(f, ws.mesh).value;
        double q0 = q_inverse_norm(f, 0.0, T, ws.family, ws.mesh).value;
        besov_dom.add_row({name, format_g17(bz), format_g17(q0),
                           format_g17(q0 > 0.0 ? bz / q0 : 0.0)});
    }
    out.tables.push_back(std::move(morrey_dom));
    out.tables.push_back(std::move(ordering));
    out.tables.push_back(std::move(heat_bound));
    out.tables.push_back(std::move(besov_dom));
}

void run_lemmas(const ExperimentConfig& cfg, const Workspace& ws, RunResult& out) {
    ResultTable schur;
    schur.name = "schur";
    schur.columns = {"alpha", "zeta", "sup_row", "sup_col"};
    const std::vector<double> zetas{1.0, 4.0, 16.0, 64.0};
    const std::vector<double> t_grid{0.25, 1.0, 4.0};
    for (double a : cfg.alphas)
        for (const auto& e : schur_kernel_integrals(a, zetas, t_grid))
            schur.add_row({alpha_label(a), format_g17(e.zeta), format_g17(e.sup_row),
                           format_g17(e.sup_col)});

    // Lemma checks run on a unit horizon, per their statement.
    TimeMesh unit_mesh(1.0, cfg.ratio, cfg.levels);
    ResultTable l23;
    l23.name = "lemma23";
    l23.columns = {"trajectory", "alpha", "lhs", "rhs", "ratio", "ratio_refined"};
    ResultTable l24;
    l24.name = "lemma24";
    l24.columns = {"trajectory", "alpha", "lhs", "J", "L1part", "ratio", "ratio_refined"};

    for (int i = 0; i < cfg.n_trajectories; ++i) {
        std::uint64_t seed = cfg.seed + 31ULL * i;
        Trajectory traj = lemma_trajectory(ws.grid, unit_mesh, seed);
        Trajectory fine = lemma_trajectory(ws.grid, unit_mesh.refined(), seed);
        for (double a : {0.0, 0.5}) {
            auto r = lemma23_check(traj, a, 1.0);
            auto rf = lemma23_check(fine, a, 1.0);
            l23.add_row({std::to_string(i), alpha_label(a), format_g17(r.lhs),
                         format_g17(r.rhs), format_g17(r.ratio), format_g17(rf.ratio)});
            auto q = lemma24_check(traj, a, ws.family);
            auto qf = lemma24_check(fine, a, ws.family);
            l24.add_row({std::to_string(i), alpha_label(a), format_g17(q.lhs),
                         format_g17(q.J), format_g17(q.L1part), format_g17(q.ratio),
                         format_g17(qf.ratio)});
        }
    }
    out.tables.push_back(std::move(schur));
    out.tables.push_back(std::move(l23));
    out.tables.push_back(std::move(l24));
}

void run_divrep(const ExperimentConfig& cfg, const Workspace& ws, RunResult& out) {
    ResultTable table;
    table.name = "divrep";
    table.columns = {"field", "alpha", "residual", "component", "q_component", "q_inverse",
                     "ratio"};
    for (const auto& [name, f] : ws.corpus) {
        ScalarField f0 = drop_mean(f);
        for (double a : cfg.alphas) {
            auto rep = div_representation(f0, a, ws.family);
            double qi = q_inverse_norm(f0, a, std::numeric_limits<double>::infinity(),
                                       ws.family, ws.mesh)
                            .value;
            for (std::size_t c = 0; c < rep.component_q_estimates.size(); ++c)
                table.add_row({name, alpha_label(a), format_g17(rep.reconstruction_residual),
                               std::to_string(c), format_g17(rep.component_q_estimates[c]),
                               format_g17(qi),
                               format_g17(qi > 0.0 ? rep.component_q_estimates[c] / qi : 0.0)});
        }
    }
    out.tables.push_back(std::move(table));
}

void run_solve(const ExperimentConfig& cfg, const Workspace& ws, RunResult& out) {
    FieldSpec ispec = parse_field_spec(cfg.initial);
    if (ispec.kind != FieldKind::taylor_green && ispec.kind != FieldKind::random_div_free)
        throw std::invalid_argument("solve: initial data must be a vector field kind");
    if (ispec.kind == FieldKind::random_div_free && ispec.seed == 1) ispec.seed = cfg.seed;
    VectorField a = generate_vector(ws.grid, ispec);

    SolverConfig sc;
    sc.alpha = cfg.alpha;
    sc.T = cfg.effective_t_cap();
    sc.picard_iterations = cfg.picard_iterations;
    sc.mesh_ratio = cfg.ratio;
    sc.mesh_levels = cfg.levels;
    sc.duhamel_cells = cfg.duhamel_cells;
    sc.smallness_threshold = cfg.smallness_threshold;
    sc.ball_radius_levels = cfg.radius_levels;
    sc.ball_stride_factor = cfg.stride_factor;
    sc.seed = cfg.seed;

    auto [u, diag] = picard_solve(a, sc);
    if (diag.status == "diverged")
        throw std::runtime_error("solve: blow-up guard tripped (diverged)");
    if (!diag.small_data_mode)
        out.warnings.push_back("initial data above smallness threshold; no contraction claim");

    ResultTable dtab;
    dtab.name = "diagnostics";
    dtab.columns = {"iter", "X_alpha", "X_2n2", "X_42", "d_j", "contraction_flag"};
    for (std::size_t j = 0; j < diag.difference_decay.size(); ++j)
        dtab.add_row({std::to_string(j), format_g17(diag.x_alpha[j]),
                      format_g17(diag.x_morrey2[j]), format_g17(diag.x_morrey4[j]),
                      format_g17(diag.difference_decay[j]),
                      diag.contraction_flags[j] ? "true" : "false"});
    out.tables.push_back(std::move(dtab));

    ResultTable rtab;
    rtab.name = "residual";
    rtab.columns = {"probe_t", "mild_residual"};
    const TimeMesh& mesh = u.mesh();
    std::vector<double> probes{mesh.sample(mesh.levels() - 1),
                               mesh.sample(mesh.levels() / 2), mesh.sample(0)};
    for (double t : probes)
        rtab.add_row({format_g17(t), format_g17(mild_residual(u, a, {t}, cfg.duhamel_cells))});
    out.tables.push_back(std::move(rtab));

    ResultTable xtab;
    xtab.name = "cross_check";
    xtab.columns = {"time_steps", "max_discrepancy"};
    double disc = cross_check_timestepper(a, sc, cfg.cross_check_steps);
    xtab.add_row({std::to_string(cfg.cross_check_steps), format_g17(disc)});
    out.tables.push_back(std::move(xtab));

    ResultTable gate;
    gate.name = "gate";
    gate.columns = {"initial_morrey2", "threshold", "small_data_mode", "status"};
    gate.add_row({format_g17(diag.initial_morrey_norm), format_g17(diag.threshold),
                  diag.small_data_mode ? "true" : "false", diag.status});
    out.tables.push_back(std::move(gate));

    if (cfg.write_fields) {
        std::ostringstream os;
        write_trajectory(os, u);
        out.artifacts.emplace_back("solution.qnst", os.str());
    }
}

void run_vanish(const ExperimentConfig& cfg, const Workspace& ws, RunResult& out) {
    ResultTable table;
    table.name = "vanish";
    table.columns = {"field", "alpha", "T", "value"};
    std::vector<double> T_list;
    for (int j = 0; j <= 6; ++j) T_list.push_back(ws.mesh.t_cap() * std::pow(2.0, -j));
    for (const auto& [name, f] : ws.corpus)
        for (double a : cfg.alphas)
            for (auto [T, v] : vanishing_profile(f, a, T_list, ws.family, ws.mesh))
                table.add_row({name, alpha_label(a), format_g17(T), format_g17(v)});
    out.tables.push_back(std::move(table));
}

void run_gen(const ExperimentConfig& cfg, const Workspace& ws, const RunFlags& flags,
             RunResult& out) {
    auto emit_scalar = [&](const std::string& name, const ScalarField& f) {
        std::ostringstream os;
        write_field(os, f);
        out.artifacts.emplace_back(name + ".qnsf", os.str());
    };
    if (!flags.gen_spec.empty()) {
        FieldSpec spec = parse_field_spec(flags.gen_spec);
        if (spec.kind == FieldKind::taylor_green || spec.kind == FieldKind::random_div_free) {
            std::ostringstream os;
            write_field(os, generate_vector(ws.grid, spec));
            out.artifacts.emplace_back(field_kind_name(spec.kind) + ".qnsf", os.str());
        } else {
            emit_scalar(field_kind_name(spec.kind), generate_scalar(ws.grid, spec));
        }
    } else {
        for (const auto& [name, f] : ws.corpus) emit_scalar(name, f);
    }
    ResultTable table;
    table.name = "gen";
    table.columns = {"artifact", "max_abs"};
    for (const auto& [name, content] : out.artifacts) {
        std::istringstream is(content);
        auto any = read_field(is);
        double m = std::holds_alternative<ScalarField>(any)
                       ? std::get<ScalarField>(any).max_abs()
                       : std::get<VectorField>(any).max_abs();
        table.add_row({name, format_g17(m)});
    }
    out.tables.push_back(std::move(table));
    (void)cfg;
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", std::gmtime(&t));
    return buf;
}

ordered_json manifest_json(const std::string& subcommand, const ExperimentConfig& cfg,
                           const RunResult& result, const std::string& stamp) {
    ordered_json m;
    m["subcommand"] = subcommand;
    m["version"] = kVersion;
    m["config_hash"] = cfg.config_hash();
    m["seed"] = cfg.seed;
    m["timestamp"] = stamp;
    m["config_text"] = cfg.materialize();
    ordered_json tables = ordered_json::object();
    for (const auto& t : result.tables) {
        ordered_json jt;
        jt["columns"] = t.columns;
        jt["rows"] = t.rows;
        tables[t.name] = jt;
    }
    m["tables"] = tables;
    ordered_json artifacts = ordered_json::object();
    for (const auto& [name, content] : result.artifacts) artifacts[name] = hash_hex(content);
    m["artifacts"] = artifacts;
    m["warnings"] = result.warnings;
    return m;
}

}  // namespace

const std::vector<std::string>& known_subcommands() {
    static const std::vector<std::string> subs{"gen",    "norms",  "equiv", "inclusions",
                                               "lemmas", "divrep", "solve", "vanish"};
    return subs;
}

RunResult execute(const std::string& subcommand, const ExperimentConfig& cfg,
                  const RunFlags& flags) {
    Workspace ws = make_workspace(cfg);
    RunResult out;
    if (subcommand == "norms") run_norms(cfg, ws, out);
    else if (subcommand == "equiv") run_equiv(cfg, ws, out);
    else if (subcommand == "inclusions") run_inclusions(cfg, ws, out);
    else if (subcommand == "lemmas") run_lemmas(cfg, ws, out);
    else if (subcommand == "divrep") run_divrep(cfg, ws, out);
    else if (subcommand == "solve") run_solve(cfg, ws, out);
    else if (subcommand == "vanish") run_vanish(cfg, ws, out);
    else if (subcommand == "gen") run_gen(cfg, ws, flags, out);
    else throw std::invalid_argument("unknown subcommand: " + subcommand);
    return out;
}

int run(const std::string& subcommand, const ExperimentConfig& cfg, const RunFlags& flags) {
    RunResult result;
    try {
        result = execute(subcommand, cfg, flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical guard: " << e.what() << '\n';
        return kExitNumericGuard;
    }

    namespace fs = std::filesystem;
    std::string root = flags.out_root;
    if (root.empty()) {
        const char* env = std::getenv("QNS_OUT");
        root = env ? env : "qns-out";
    }
    const std::string hash8 = cfg.config_hash().substr(0, 8);
    const std::string stamp = timestamp_utc();
    fs::path dir = fs::path(root) / (subcommand + "-" + hash8 + "-" + stamp);

    try {
        fs::create_directories(dir);
        for (const auto& t : result.tables) {
            std::ofstream os(dir / (t.name + "_" + hash8 + ".csv"));
            if (!os) throw std::runtime_error("cannot write table " + t.name);
            os << t.to_csv();
        }
        for (const auto& [name, content] : result.artifacts) {
            std::ofstream os(dir / name);
            if (!os) throw std::runtime_error("cannot write artifact " + name);
            os << content;
        }
        std::ofstream ms(dir / "manifest.json");
        if (!ms) throw std::runtime_error("cannot write manifest");
        ms << manifest_json(subcommand, cfg, result, stamp).dump(2) << '\n';
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    }

    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << dir.string() << '\n';
    return kExitOk;
}

int run_check(const std::string& manifest_path) {
    ordered_json m;
    try {
        std::ifstream is(manifest_path);
        if (!is) throw std::runtime_error("cannot open manifest: " + manifest_path);
        is >> m;
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    }

    ExperimentConfig cfg;
    std::string subcommand;
    try {
        subcommand = m.at("subcommand").get<std::string>();
        cfg = ExperimentConfig::parse(m.at("config_text").get<std::string>());
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    RunResult fresh;
    try {
        fresh = execute(subcommand, cfg, RunFlags{});
    } catch (const std::exception& e) {
        std::cerr << "numerical guard: " << e.what() << '\n';
        return kExitNumericGuard;
    }

    auto mismatch = [](const std::string& where) {
        std::cerr << "check failed: " << where << '\n';
        return kExitNumericGuard;
    };

    const auto& stored_tables = m.at("tables");
    for (const auto& t : fresh.tables) {
        if (!stored_tables.contains(t.name)) return mismatch("missing table " + t.name);
        const auto& st = stored_tables.at(t.name);
        const auto& rows = st.at("rows");
        if (rows.size() != t.rows.size()) return mismatch("row count of " + t.name);
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
                std::string a = rows[r][c].get<std::string>();
                const std::string& b = t.rows[r][c];
                char* end_a = nullptr;
                char* end_b = nullptr;
                double va = std::strtod(a.c_str(), &end_a);
                double vb = std::strtod(b.c_str(), &end_b);
                bool numeric = end_a && *end_a == '\0' && end_b && *end_b == '\0' &&
                               !a.empty() && !b.empty();
                if (numeric) {
                    if (std::abs(va - vb) > 1e-12 * std::max({1.0, std::abs(va), std::abs(vb)}))
                        return mismatch(t.name + " row " + std::to_string(r) + " col " +
                                        std::to_string(c));
                } else if (a != b) {
                    return mismatch(t.name + " row " + std::to_string(r) + " col " +
                                    std::to_string(c));
                }
            }
    }
    for (const auto& [name, content] : fresh.artifacts) {
        if (!m.at("artifacts").contains(name)) return mismatch("missing artifact " + name);
        if (m.at("artifacts").at(name).get<std::string>() != hash_hex(content))
            return mismatch("artifact " + name);
    }
    std::cout << "check ok: " << manifest_path << '\n';
    return kExitOk;
}

}  // namespace qns
