#include "optvol/cli.hpp"

#include "optvol/coloring.hpp"
#include "optvol/io.hpp"
#include "optvol/potential.hpp"
#include "optvol/transport.hpp"
#include "optvol/volume.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace optvol {

namespace {

struct CommonOpts {
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
    std::string format = "kv";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tolerance", o.tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "kv"}));
}

Config make_config(const CommonOpts& o) {
    Config cfg;
    cfg.tolerance = o.tolerance;
    cfg.seed = o.seed;
    return cfg;
}

LinkDiagram load_diagram(const std::string& path) {
    LinkDiagram d = LinkDiagram::parse(read_file(path));
    d.compute_regions();
    return d;
}

SolutionVector load_solution(const LinkDiagram& d, const std::string& path, double tol) {
    return make_solution(d, read_solution(read_file(path)), tol);
}

int cmd_parse(const std::string& diagram_path, const CommonOpts& o, std::ostream& out) {
    const LinkDiagram d = load_diagram(diagram_path);
    if (o.format == "text") {
        out << d.describe();
        return 0;
    }
    out << "crossings " << d.crossings().size() << "\n";
    out << "arcs " << d.arcs().size() << "\n";
    out << "regions " << d.regions().size() << "\n";
    out << "components " << d.component_count() << "\n";
    for (const auto& r : d.regions()) {
        out << "region " << r.id << " corners " << r.corners.size() << " at";
        for (const auto& cr : r.corners)
            out << " " << cr.crossing;
        out << "\n";
    }
    return 0;
}

void print_verify(const VerifyReport& rep, std::ostream& out) {
    for (const auto& [id, res] : rep.residuals)
        out << "region " << id << ": residual " << fmt17(res) << "\n";
    out << "max-residual " << fmt17(rep.max_residual) << "\n";
}

int cmd_solve(const std::string& diagram_path, const std::string& colors_path,
              const std::string& plan_path, const std::string& out_coloring,
              const std::string& out_solution, const CommonOpts& o, std::ostream& out) {
    const Config cfg = make_config(o);
    const LinkDiagram d = load_diagram(diagram_path);
    const ColoringFile cf = read_coloring(read_file(colors_path));

    std::vector<MoveDescriptor> plan;
    if (!plan_path.empty())
        plan = read_plan(read_file(plan_path));

    const ShadowColoring sc =
        select_generic(d, cf.arcs, plan, cfg, cf.seed, cf.p);
    const SolutionVector w = construct_solution(d, sc, cfg.tolerance);
    const auto pot = build_potential(d);
    const VerifyReport rep = verify_solution(pot, d, w, cfg.tolerance);

    out << "seed " << o.seed << "\n";
    out << "essential " << (w.essential ? "true" : "false") << "\n";
    for (const auto& [id, v] : w.values)
        out << "w " << id << " " << fmt17(v) << "\n";
    print_verify(rep, out);
    if (!out_coloring.empty())
        write_file(out_coloring, "# seed " + std::to_string(o.seed) + "\n" + format_coloring(sc));
    if (!out_solution.empty())
        write_file(out_solution, "# seed " + std::to_string(o.seed) + "\n" + format_solution(w));
    return rep.verified && w.essential ? 0 : 3;
}

int cmd_verify(const std::string& diagram_path, const std::string& solution_path,
               const CommonOpts& o, std::ostream& out) {
    const Config cfg = make_config(o);
    const LinkDiagram d = load_diagram(diagram_path);
    const SolutionVector w = load_solution(d, solution_path, cfg.tolerance);
    const auto pot = build_potential(d);
    const VerifyReport rep = verify_solution(pot, d, w, cfg.tolerance);
    print_verify(rep, out);
    return rep.verified ? 0 : 3;
}

int cmd_volume(const std::string& diagram_path, const std::string& solution_path,
               const CommonOpts& o, std::ostream& out) {
    const Config cfg = make_config(o);
    const LinkDiagram d = load_diagram(diagram_path);
    const SolutionVector w = load_solution(d, solution_path, cfg.tolerance);
    const auto pot = build_potential(d);
    const ComplexVolume cv = eval_W0(pot, d, w, cfg);
    out << "vol " << fmt17(cv.vol) << "  cs " << fmt17(cv.cs) << "  W0 " << fmt17(cv.W0)
        << "  verified " << (cv.verified ? "true" : "false") << "\n";
    return 0;
}

int cmd_move(const std::string& diagram_path, const std::string& solution_path,
             const std::string& plan_path, const std::string& out_diagram,
             const std::string& out_solution, const std::string& audit_path,
             const CommonOpts& o, std::ostream& out) {
    const Config cfg = make_config(o);
    const LinkDiagram d = load_diagram(diagram_path);
    const SolutionVector w = load_solution(d, solution_path, cfg.tolerance);
    const auto plan = read_plan(read_file(plan_path));

    const auto pot0 = build_potential(d);
    const VerifyReport rep0 = verify_solution(pot0, d, w, cfg.tolerance);
    if (!rep0.verified)
        throw numeric_error("input solution does not verify (max residual " +
                            std::to_string(rep0.max_residual) + ")");

    const TransportOutcome res = transport_sequence(d, w, plan, cfg);

    std::ostringstream audit;
    audit << "seed " << o.seed << "\n";
    audit << "steps " << res.steps.size() << "\n";
    int i = 0;
    for (const auto& st : res.steps) {
        ++i;
        audit << "step " << i << " " << format_move(st.move) << "\n";
        for (const auto& [id, role] : st.corr.created)
            audit << "step " << i << " created " << id << " " << role << "\n";
        for (int id : st.corr.deleted)
            audit << "step " << i << " deleted " << id << "\n";
        for (const auto& [from, to] : st.corr.merged)
            audit << "step " << i << " merged " << from << " into " << to << "\n";
        for (const auto& [id, v] : st.created_values)
            audit << "step " << i << " value " << id << " " << fmt17(v) << "\n";
        audit << "step " << i << " max-residual " << fmt17(st.max_residual) << "\n";
        audit << "step " << i << " essential " << (st.essential ? "true" : "false") << "\n";
        audit << "step " << i << " W0 " << fmt17(st.volume.W0) << "\n";
        audit << "step " << i << " vol " << fmt17(st.volume.vol) << " cs "
              << fmt17(st.volume.cs) << "\n";
    }
    out << audit.str();
    for (const auto& [id, v] : res.solution.values)
        out << "w " << id << " " << fmt17(v) << "\n";
    if (!audit_path.empty())
        write_file(audit_path, audit.str());
    if (!out_diagram.empty())
        write_file(out_diagram, format_diagram(res.diagram));
    if (!out_solution.empty()) {
        // the written diagram gets canonical region ids on re-parse, so the
        // written solution is reindexed to match it
        const auto remap = res.diagram.canonical_region_ids();
        SolutionVector reindexed;
        reindexed.essential = res.solution.essential;
        for (const auto& [id, v] : res.solution.values)
            reindexed.values[remap.at(id)] = v;
        write_file(out_solution, format_solution(reindexed));
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"optimistic-limit complex volume of link diagrams"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string diagram_path, colors_path, solution_path, plan_path;
    std::string out_coloring, out_solution, out_diagram, audit_path;

    auto* parse_cmd = app.add_subcommand("parse", "parse and validate a diagram");
    parse_cmd->add_option("diagram", diagram_path)->required();
    add_common(parse_cmd, o);

    auto* solve_cmd = app.add_subcommand("solve", "build a solution from arc colors");
    solve_cmd->add_option("diagram", diagram_path)->required();
    solve_cmd->add_option("arccolors", colors_path)->required();
    solve_cmd->add_option("--plan", plan_path, "move plan for lookahead genericity");
    solve_cmd->add_option("--out-coloring", out_coloring);
    solve_cmd->add_option("--out-solution", out_solution);
    add_common(solve_cmd, o);

    auto* verify_cmd = app.add_subcommand("verify", "check the region equations");
    verify_cmd->add_option("diagram", diagram_path)->required();
    verify_cmd->add_option("solution", solution_path)->required();
    add_common(verify_cmd, o);

    auto* volume_cmd = app.add_subcommand("volume", "evaluate the complex volume");
    volume_cmd->add_option("diagram", diagram_path)->required();
    volume_cmd->add_option("solution", solution_path)->required();
    add_common(volume_cmd, o);

    auto* move_cmd = app.add_subcommand("move", "transport a solution across moves");
    move_cmd->add_option("diagram", diagram_path)->required();
    move_cmd->add_option("solution", solution_path)->required();
    move_cmd->add_option("plan", plan_path)->required();
    move_cmd->add_option("--out-diagram", out_diagram);
    move_cmd->add_option("--out-solution", out_solution);
    move_cmd->add_option("--audit", audit_path);
    add_common(move_cmd, o);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (parse_cmd->parsed())
            return cmd_parse(diagram_path, o, out);
        if (solve_cmd->parsed())
            return cmd_solve(diagram_path, colors_path, plan_path, out_coloring, out_solution, o,
                             out);
        if (verify_cmd->parsed())
            return cmd_verify(diagram_path, solution_path, o, out);
        if (volume_cmd->parsed())
            return cmd_volume(diagram_path, solution_path, o, out);
        if (move_cmd->parsed())
            return cmd_move(diagram_path, solution_path, plan_path, out_diagram, out_solution,
                            audit_path, o, out);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "no subcommand\n";
    return 1;
}

} // namespace optvol
