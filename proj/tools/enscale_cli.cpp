// enscale: energy-scaling, cone-geometry, allometry, network-metric and
// entropy-dating computations as CLI subcommands with deterministic
// JSON/CSV output.
//
// Exit codes: 0 success, 1 domain/range error (structured error object on
// stdout), 2 usage error, 3 I/O failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "enscale/enscale.hpp"

namespace {

using enscale::Errc;
using enscale::Error;
using enscale::report::Envelope;
using enscale::report::Field;
using enscale::report::format_double;
using enscale::report::integer_field;
using enscale::report::number_field;
using enscale::report::ratio_field;
using enscale::report::Table;
using enscale::report::text_field;

struct OutputOptions {
    std::string format = "json";
    bool quiet = false;
};

/// Argument-shape problems CLI11's option rules cannot express (exit 2).
struct UsageError {
    std::string message;
};

void emit(const Envelope& envelope, const OutputOptions& opts) {
    if (opts.format == "csv")
        std::cout << enscale::report::to_csv(envelope, opts.quiet);
    else
        std::cout << enscale::report::to_json(envelope, opts.quiet);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open file: " + path, "file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(Errc::io, "cannot read file: " + path, "file");
    return buffer.str();
}

// --- subcommand handlers ---------------------------------------------------

Envelope run_scale(double S, int h, double epsilon, bool epsilon_given) {
    enscale::scaling::ScalingModel model;
    model.S = S;
    model.h = h;
    // default epsilon = ln(S): the unit model, where cluster counts are S^k
    model.epsilon = epsilon_given ? epsilon : std::log(S);
    model.validate();

    Envelope e;
    e.command = "scale";
    e.inputs = {number_field("S", model.S), integer_field("h", model.h),
                number_field("epsilon", model.epsilon)};

    Table table;
    table.name = "generations";
    table.columns = {"k", "cluster_count", "energy_per_cluster", "generation_total"};
    for (const auto& row : enscale::scaling::generation_table(model))
        table.rows.push_back({std::to_string(row.k), format_double(row.cluster_count),
                              format_double(row.energy_per_cluster),
                              format_double(row.generation_total)});
    e.results.emplace_back(std::move(table));
    e.results.emplace_back(number_field("node_count", model.node_count()));
    e.results.emplace_back(
        number_field("nested_sum_check", enscale::scaling::nested_sum_check(model.S, model.h)));
    return e;
}

Envelope run_sum(double epsilon, int h) {
    const double G = enscale::scaling::geometric_sum_G(epsilon, h);
    const double mean = enscale::scaling::mean_energy_per_source(epsilon, h);
    const double oscillator = enscale::scaling::oscillator_mean(epsilon, 1.0);

    Envelope e;
    e.command = "sum";
    e.inputs = {number_field("epsilon", epsilon), integer_field("h", h)};
    e.results.emplace_back(number_field("geometric_sum_G", G));
    e.results.emplace_back(number_field("mean_energy_per_source", mean));
    e.results.emplace_back(number_field("oscillator_mean_kT1", oscillator));
    e.results.emplace_back(number_field("mean_vs_oscillator_gap", oscillator - mean));
    return e;
}

Envelope run_base() {
    const double base = enscale::scaling::solve_optimal_base();
    Envelope e;
    e.command = "base";
    e.results.emplace_back(number_field("optimal_base", base));
    e.results.emplace_back(number_field("balance_residual", std::log(base) - 1.0));
    return e;
}

Envelope run_cone(double S, int k, double D1, double L1, double theta1) {
    enscale::cone::ConeGeometry geom;
    geom.S = S;
    geom.D1 = D1;
    geom.L1 = L1;
    geom.theta1 = theta1;

    const auto section = enscale::cone::section_report(geom, k);
    const auto ratio = enscale::cone::entropy_ratio(S, k);

    Envelope e;
    e.command = "cone";
    e.inputs = {number_field("S", S), integer_field("k", k), number_field("D1", D1),
                number_field("L1", L1), number_field("theta1", theta1)};
    e.results.emplace_back(number_field("absorbing_volume", section.absorbing_volume));
    e.results.emplace_back(
        number_field("transmitting_volume_ratio", section.transmitting_volume_ratio));
    e.results.emplace_back(number_field("length_ratio", section.length_ratio));
    e.results.emplace_back(number_field("diameter_ratio", section.diameter_ratio));
    e.results.emplace_back(ratio_field("entropy_ratio", ratio));
    e.results.emplace_back(number_field("entropy_ratio_decimal", ratio.value()));
    e.results.emplace_back(
        number_field("fractal_dimension", enscale::cone::fractal_dimension(S, k)));
    return e;
}

Envelope run_stefan(double E, double T, double dE, double dv, double v) {
    const double rate = enscale::cone::stefan_entropy_density_rate(E, T);
    const auto heat = enscale::cone::heat_decomposition(E, dE, v, dv);

    Envelope e;
    e.command = "stefan";
    e.inputs = {number_field("E", E), number_field("T", T), number_field("dE", dE),
                number_field("dv", dv), number_field("v", v)};
    e.results.emplace_back(number_field("entropy_density_rate", rate));
    e.results.emplace_back(number_field("dQ", heat.dQ));
    e.results.emplace_back(number_field("internal_part", heat.internal_part));
    e.results.emplace_back(number_field("emergent_part", heat.emergent_part));
    return e;
}

Envelope run_allometry(double S, int h_min, int h_max, double rc, double lc, double thetac) {
    if (h_max < h_min)
        throw Error(Errc::parameter_domain, "--h-max must be >= --h-min", "h-max");

    enscale::allometry::AllometryScenario scen;
    scen.S = S;
    scen.r_c = rc;
    scen.l_c = lc;
    scen.theta_c = thetac;
    for (int h = h_min; h <= h_max; ++h) scen.h_range.push_back(h);
    scen.validate();

    Envelope e;
    e.command = "allometry";
    e.inputs = {number_field("S", S),       integer_field("h_min", h_min),
                integer_field("h_max", h_max), number_field("rc", rc),
                number_field("lc", lc),     number_field("thetac", thetac)};

    Table table;
    table.name = "organisms";
    table.columns = {"h", "V_Y", "theta_M"};
    for (int h : scen.h_range) {
        const auto vol = enscale::allometry::organism_volumes(scen, h);
        table.rows.push_back(
            {std::to_string(h), format_double(vol.V_Y), format_double(vol.theta_M)});
    }
    e.results.emplace_back(std::move(table));

    e.results.emplace_back(
        number_field("closed_form_exponent", enscale::allometry::closed_form_exponent(S)));
    const auto fit = enscale::allometry::fit_exponent(scen);
    e.results.emplace_back(number_field("fitted_exponent", fit.a_hat));
    e.results.emplace_back(number_field("fit_residual", fit.residual));
    e.results.emplace_back(number_field(
        "capillary_invariance", enscale::allometry::capillary_invariance_check(scen, h_min)));
    return e;
}

void append_network_report(Envelope& e, const enscale::net::NetworkReport& report) {
    e.results.emplace_back(number_field("n", report.n));
    e.results.emplace_back(number_field("path_length", report.path_length));
    e.results.emplace_back(number_field("clustering", report.clustering));
    e.results.emplace_back(number_field("entropy", report.entropy));
    e.results.emplace_back(number_field("e_gap", report.e_gap));
}

Envelope run_net_edges(const std::string& path, bool largest) {
    const auto ingest = enscale::net::ingest_edge_list(read_file(path));

    Envelope e;
    e.command = "net";
    e.inputs = {text_field("edges", path),
                Field{"largest_component", largest ? "true" : "false", false}};
    if (ingest.stats.self_loops_dropped > 0)
        e.warnings.push_back("dropped " + std::to_string(ingest.stats.self_loops_dropped) +
                             " self-loop(s)");
    if (ingest.stats.duplicate_edges_dropped > 0)
        e.warnings.push_back("dropped " + std::to_string(ingest.stats.duplicate_edges_dropped) +
                             " duplicate edge(s)");

    const auto report = enscale::net::network_entropy(ingest.graph, largest);
    e.results.emplace_back(integer_field("nodes_ingested", ingest.graph.node_count()));
    e.results.emplace_back(
        integer_field("edges_ingested", static_cast<long long>(ingest.graph.edge_count())));
    append_network_report(e, report);
    return e;
}

Envelope run_net_direct(double L, double C, double n) {
    Envelope e;
    e.command = "net";
    e.inputs = {number_field("L", L), number_field("C", C), number_field("n", n)};
    append_network_report(e, enscale::net::network_entropy_direct(L, C, n));
    return e;
}

Envelope run_mfp(double x, double l) {
    Envelope e;
    e.command = "mfp";
    e.inputs = {number_field("x", x), number_field("l", l)};
    e.results.emplace_back(
        number_field("survival_probability", enscale::net::mean_free_path_survival(x, l)));
    return e;
}

Envelope run_date(const enscale::chronometry::DatingScenario& scen) {
    const double age = enscale::chronometry::solve_age(scen);

    Envelope e;
    e.command = "date";
    e.inputs = {number_field("H_prime", scen.H_prime), number_field("m", scen.m),
                text_field("time_unit", scen.time_unit)};
    e.results.emplace_back(number_field("age", age));
    e.results.emplace_back(text_field("time_unit", scen.time_unit));
    e.results.emplace_back(number_field("round_trip_H_prime", std::exp(scen.m * age)));
    return e;
}

Envelope run_glotto(double divergence) {
    Envelope e;
    e.command = "glotto";
    e.inputs = {number_field("divergence", divergence)};
    e.results.emplace_back(
        number_field("growth_rate", enscale::chronometry::glottochronology_check(divergence)));
    return e;
}

Envelope run_value(const enscale::chronometry::ValueDelta& delta) {
    Envelope e;
    e.command = "value";
    e.inputs = {number_field("m", delta.m), number_field("C", delta.C),
                number_field("L", delta.L), integer_field("n1", delta.n1),
                integer_field("A", delta.A)};
    e.results.emplace_back(number_field("delta_H", delta.delta_H));
    return e;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"energy-scaling model computations"};
    app.require_subcommand(1);
    // several subcommands take an --h option, so help is --help only
    app.set_help_flag("--help", "print help and exit");

    const auto add_subcommand = [&app](const std::string& name, const std::string& description) {
        auto* cmd = app.add_subcommand(name, description);
        cmd->set_help_flag("--help", "print help and exit");
        cmd->fallthrough();  // lets --format/--quiet appear after the subcommand
        return cmd;
    };

    OutputOptions out;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--quiet", out.quiet, "emit results only, no envelope metadata");

    // scale
    double scale_S = 0.0, scale_eps = 0.0;
    int scale_h = 0;
    auto* scale = add_subcommand("scale", "cluster-generation energy table");
    scale->add_option("--S", scale_S, "scaling factor (> 1)")->required();
    scale->add_option("--h", scale_h, "generation count")->required();
    auto* scale_eps_opt =
        scale->add_option("--epsilon", scale_eps, "energy unit (default ln S, the unit model)");

    // sum
    double sum_eps = 0.0;
    int sum_h = 0;
    auto* sum = add_subcommand("sum", "geometric energy sum and mean energy per source");
    sum->add_option("--epsilon", sum_eps, "energy unit (> 0)")->required();
    sum->add_option("--h", sum_h, "generation count")->required();

    // base
    auto* base = add_subcommand("base", "solve the optimal scaling base");

    // cone
    double cone_S = 0.0, cone_D1 = 1.0, cone_L1 = 1.0, cone_theta1 = 1.0;
    int cone_k = 0;
    auto* cone = add_subcommand("cone", "cone-section scaling report");
    cone->add_option("--S", cone_S, "scaling factor (> 1)")->required();
    cone->add_option("--k", cone_k, "section index (>= 1)")->required();
    cone->add_option("--D1", cone_D1, "first-section diameter");
    cone->add_option("--L1", cone_L1, "first-section length");
    cone->add_option("--theta1", cone_theta1, "first absorbing volume");

    // stefan
    double stefan_E = 0.0, stefan_T = 0.0, stefan_dE = 0.0, stefan_dv = 0.0, stefan_v = 1.0;
    auto* stefan = add_subcommand("stefan", "entropy-density rate and heat decomposition");
    stefan->add_option("--E", stefan_E, "energy density (>= 0)")->required();
    stefan->add_option("--T", stefan_T, "absolute temperature (> 0)")->required();
    stefan->add_option("--dE", stefan_dE, "energy density change");
    stefan->add_option("--dv", stefan_dv, "volume change");
    stefan->add_option("--v", stefan_v, "volume (> 0)");

    // allometry
    double allo_S = 0.0, allo_rc = 1.0, allo_lc = 1.0, allo_thetac = 1.0;
    int allo_hmin = 0, allo_hmax = 0;
    auto* allo = add_subcommand("allometry", "organism volumes and allometric exponent");
    allo->add_option("--S", allo_S, "scaling factor (> 1)")->required();
    allo->add_option("--h-min", allo_hmin, "smallest generation count (>= 2)")->required();
    allo->add_option("--h-max", allo_hmax, "largest generation count")->required();
    allo->add_option("--rc", allo_rc, "capillary radius");
    allo->add_option("--lc", allo_lc, "capillary length");
    allo->add_option("--thetac", allo_thetac, "capillary-irrigated volume");

    // net
    std::string net_edges;
    bool net_largest = false, net_direct = false;
    double net_L = 0.0, net_C = 0.0, net_n = 0.0;
    auto* net = add_subcommand("net", "network path length, clustering and entropy");
    auto* net_edges_opt = net->add_option("--edges", net_edges, "edge-list file");
    net->add_flag("--largest-component", net_largest,
                  "measure the largest connected component of a disconnected input");
    auto* net_direct_flag =
        net->add_flag("--direct", net_direct, "compute from explicit L, C, n scalars");
    auto* net_L_opt = net->add_option("--L", net_L, "measured path length");
    auto* net_C_opt = net->add_option("--C", net_C, "measured clustering coefficient");
    auto* net_n_opt = net->add_option("--n", net_n, "node count");
    net_direct_flag->needs(net_L_opt)->needs(net_C_opt)->needs(net_n_opt);
    net_edges_opt->excludes(net_direct_flag)
        ->excludes(net_L_opt)
        ->excludes(net_C_opt)
        ->excludes(net_n_opt);

    // mfp
    double mfp_x = 0.0, mfp_l = 0.0;
    auto* mfp = add_subcommand("mfp", "mean-free-path survival probability");
    mfp->add_option("--x", mfp_x, "distance (>= 0)")->required();
    mfp->add_option("--l", mfp_l, "mean free path (> 0)")->required();

    // date
    std::string date_scenario;
    double date_Hprime = 0.0, date_m = 0.0;
    std::string date_unit = "ky";
    auto* date = add_subcommand("date", "entropy dating: solve e^(m t) = H'");
    auto* date_file_opt = date->add_option("--scenario", date_scenario, "scenario file");
    auto* date_H_opt = date->add_option("--Hprime", date_Hprime, "current entropy rate (> 1)");
    auto* date_m_opt = date->add_option("--m", date_m, "entropy growth rate (> 0)");
    auto* date_unit_opt = date->add_option("--time-unit", date_unit, "time unit label");
    date_file_opt->excludes(date_H_opt)->excludes(date_m_opt)->excludes(date_unit_opt);
    date_H_opt->needs(date_m_opt);

    // glotto
    double glotto_div = 0.0;
    auto* glotto = add_subcommand("glotto", "growth rate implied by a divergence rate");
    glotto->add_option("--divergence", glotto_div, "lexical divergence rate (> 0)")->required();

    // value
    std::string value_scenario;
    double value_m = 0.0, value_C = 0.0, value_L = 0.0;
    std::int64_t value_n1 = 0, value_A = 0;
    auto* value = add_subcommand("value", "entropy gain from added customers");
    auto* value_file_opt = value->add_option("--scenario", value_scenario, "scenario file");
    auto* value_m_opt = value->add_option("--m", value_m, "rate m (> 0)");
    auto* value_C_opt = value->add_option("--C", value_C, "clustering coefficient in (0, 1]");
    auto* value_L_opt = value->add_option("--L", value_L, "path length (> 1)");
    auto* value_n1_opt = value->add_option("--n1", value_n1, "initial customer count (>= 1)");
    auto* value_A_opt = value->add_option("--A", value_A, "added customers (>= 0)");
    value_file_opt->excludes(value_m_opt)
        ->excludes(value_C_opt)
        ->excludes(value_L_opt)
        ->excludes(value_n1_opt)
        ->excludes(value_A_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);  // prints help, exit 0
    } catch (const CLI::ParseError& err) {
        std::cerr << app.help() << std::endl;
        std::cerr << "error: " << err.what() << std::endl;
        return 2;
    }

    try {
        Envelope envelope;
        if (scale->parsed()) {
            envelope = run_scale(scale_S, scale_h, scale_eps, scale_eps_opt->count() > 0);
        } else if (sum->parsed()) {
            envelope = run_sum(sum_eps, sum_h);
        } else if (base->parsed()) {
            envelope = run_base();
        } else if (cone->parsed()) {
            envelope = run_cone(cone_S, cone_k, cone_D1, cone_L1, cone_theta1);
        } else if (stefan->parsed()) {
            envelope = run_stefan(stefan_E, stefan_T, stefan_dE, stefan_dv, stefan_v);
        } else if (allo->parsed()) {
            envelope = run_allometry(allo_S, allo_hmin, allo_hmax, allo_rc, allo_lc, allo_thetac);
        } else if (net->parsed()) {
            if (net_direct)
                envelope = run_net_direct(net_L, net_C, net_n);
            else if (net_edges_opt->count() > 0)
                envelope = run_net_edges(net_edges, net_largest);
            else
                throw UsageError{"net requires --edges FILE or --direct --L --C --n"};
        } else if (mfp->parsed()) {
            envelope = run_mfp(mfp_x, mfp_l);
        } else if (date->parsed()) {
            enscale::chronometry::DatingScenario scen;
            if (date_file_opt->count() > 0) {
                scen = enscale::chronometry::dating_scenario_from_text(read_file(date_scenario));
            } else if (date_H_opt->count() > 0) {
                scen.H_prime = date_Hprime;
                scen.m = date_m;
                scen.time_unit = date_unit;
            } else {
                throw UsageError{"date requires --scenario FILE or --Hprime together with --m"};
            }
            envelope = run_date(scen);
        } else if (glotto->parsed()) {
            envelope = run_glotto(glotto_div);
        } else if (value->parsed()) {
            enscale::chronometry::ValueDelta delta;
            if (value_file_opt->count() > 0)
                delta = enscale::chronometry::value_delta_from_text(read_file(value_scenario));
            else
                delta = enscale::chronometry::network_value_delta(value_n1, value_A, value_m,
                                                                  value_C, value_L);
            envelope = run_value(delta);
        }
        emit(envelope, out);
        return 0;
    } catch (const UsageError& err) {
        std::cerr << app.help() << std::endl;
        std::cerr << "error: " << err.message << std::endl;
        return 2;
    } catch (const Error& err) {
        if (out.format == "csv")
            std::cout << enscale::report::error_to_csv(err);
        else
            std::cout << enscale::report::error_to_json(err);
        return err.code() == Errc::io ? 3 : 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return 1;
    }
}
